//! Hasse diagram of the dominance order on partitions of n.

use serde_json::json;

use super::Partition;

/// Nodes in reverse-lexicographic order; edges run from the covered to the covering partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hasse {
    pub nodes: Vec<Partition>,
    pub edges: Vec<(Partition, Partition)>,
}

pub fn hasse(n: usize) -> Hasse {
    let nodes = Partition::all(n);
    let index = |q: &Partition| nodes.iter().position(|x| x == q).expect("node");
    let mut idx_edges: Vec<(usize, usize)> = nodes
        .iter()
        .enumerate()
        .flat_map(|(li, lambda)| lambda.covered().into_iter().map(move |(mu, _)| (mu, li)))
        .map(|(mu, li)| (index(&mu), li))
        .collect();
    idx_edges.sort_unstable();
    let edges = idx_edges
        .into_iter()
        .map(|(a, b)| (nodes[a].clone(), nodes[b].clone()))
        .collect();
    Hasse { nodes, edges }
}

fn node_id(p: &Partition) -> String {
    format!("p{}", p.label())
}

impl Hasse {
    pub fn to_dot(&self) -> String {
        let n = self.nodes.first().map_or(0, Partition::n);
        let mut out = String::new();
        out.push_str(&format!("// dominance order on partitions of {n}\n"));
        out.push_str("// edge mu -> lambda: lambda covers mu (covered to covering)\n");
        out.push_str("digraph hasse {\n    rankdir=BT;\n");
        for p in &self.nodes {
            out.push_str(&format!("    \"{}\" [label=\"{}\"];\n", node_id(p), p.label()));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("    \"{}\" -> \"{}\";\n", node_id(a), node_id(b)));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "nodes": self.nodes,
            "edges": self.edges.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diagrams() {
        let h1 = hasse(1);
        assert_eq!((h1.nodes.len(), h1.edges.len()), (1, 0));
        let h4 = hasse(4);
        assert_eq!(h4.edges.len(), 4);
    }

    #[test]
    fn dot_ids() {
        let dot = hasse(3).to_dot();
        assert!(dot.contains("\"p2+1\" [label=\"2+1\"]"));
        assert!(dot.contains("\"p1+1+1\" -> \"p2+1\""));
    }

    #[test]
    fn json_shape() {
        let j = hasse(2).to_json();
        assert_eq!(j.to_string(), r#"{"edges":[[[1,1],[2]]],"nodes":[[2],[1,1]]}"#);
    }
}
