//! The sl4 subregular example: slice chart, reduced-space section, both bracket tables and φ.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::section::SectionChart;
use super::BracketTable;
use crate::error::{Error, Result};
use crate::exact::lie::centralizer_sl;
use crate::exact::{int, Mat, Subspace};
use crate::partitions::Partition;
use crate::poly::{ambient_vars, Polynomial, Vars};
use crate::stages::stage_data;
use crate::triple::{jordan_triple, SliceChart, Sl2Triple};

const SL4_JSON: &str = include_str!("../../fixtures/sl4_subregular.json");

#[derive(Deserialize)]
struct RawBracket {
    pair: [String; 2],
    value: String,
}

#[derive(Deserialize)]
struct RawSlice {
    vars: Vec<String>,
    entries: Vec<Vec<String>>,
    weights: Vec<i64>,
    coordinates: Vec<String>,
}

#[derive(Deserialize)]
struct RawSection {
    vars: Vec<String>,
    entries: Vec<Vec<String>>,
    weights: Vec<i64>,
    extraction: Vec<String>,
}

#[derive(Deserialize)]
struct RawFixture {
    slice: RawSlice,
    slice_brackets: Vec<RawBracket>,
    section: RawSection,
    reduced_brackets: Vec<RawBracket>,
    reduced_brackets_corrected: Vec<RawBracket>,
    phi: BTreeMap<String, String>,
    phi_inverse: BTreeMap<String, String>,
    derived: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Sl4Fixture {
    pub slice_vars: Vars,
    pub slice_entries: Vec<Polynomial>,
    pub slice_weights: Vec<i64>,
    pub slice_coordinates: Vec<Polynomial>,
    pub slice_table: BracketTable,
    pub section_vars: Vars,
    pub section_entries: Vec<Polynomial>,
    pub section_weights: Vec<i64>,
    pub extraction: Vec<Polynomial>,
    /// The reduced-space table as printed.
    pub reduced_table: BracketTable,
    /// The printed table with the entries of `reduced_brackets_corrected` replacing their pairs.
    pub reduced_table_corrected: BracketTable,
    /// `φ(g)` over the section variables, one per slice variable.
    pub phi: Vec<Polynomial>,
    /// `φ⁻¹(r)` over the slice variables, one per section variable.
    pub phi_inverse: Vec<Polynomial>,
    /// Keys of entries that were computed rather than transcribed.
    pub derived: Vec<String>,
}

fn to_vars(names: &[String]) -> Vars {
    std::sync::Arc::new(names.to_vec())
}

fn parse_matrix(vars: &Vars, rows: &[Vec<String>], n: usize) -> Result<Vec<Polynomial>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Fixture(format!("expected a {n}x{n} matrix")));
    }
    rows.iter()
        .flatten()
        .map(|s| Polynomial::parse(vars, s))
        .collect()
}

fn parse_table(vars: &Vars, raw: &[RawBracket]) -> Result<BracketTable> {
    let mut t = BracketTable::new(vars);
    extend_table(&mut t, raw)?;
    Ok(t)
}

fn extend_table(t: &mut BracketTable, raw: &[RawBracket]) -> Result<()> {
    let vars = t.vars.clone();
    for b in raw {
        t.set(&b.pair[0], &b.pair[1], Polynomial::parse(&vars, &b.value)?)?;
    }
    Ok(())
}

fn parse_map(
    map: &BTreeMap<String, String>,
    domain: &Vars,
    target: &Vars,
) -> Result<Vec<Polynomial>> {
    domain
        .iter()
        .map(|g| {
            let s = map
                .get(g)
                .ok_or_else(|| Error::Fixture(format!("map has no image for {g}")))?;
            Polynomial::parse(target, s)
        })
        .collect()
}

pub fn sl4_fixture() -> Result<Sl4Fixture> {
    parse_fixture(SL4_JSON)
}

pub fn parse_fixture(json: &str) -> Result<Sl4Fixture> {
    let raw: RawFixture = serde_json::from_str(json).map_err(|e| Error::Fixture(e.to_string()))?;
    let n = 4;
    let ambient = ambient_vars(n);
    let slice_vars = to_vars(&raw.slice.vars);
    let section_vars = to_vars(&raw.section.vars);
    let check_len = |what: &str, got: usize, want: usize| {
        if got == want {
            Ok(())
        } else {
            Err(Error::Fixture(format!("{what}: {got} entries, expected {want}")))
        }
    };
    check_len("slice.weights", raw.slice.weights.len(), slice_vars.len())?;
    check_len("slice.coordinates", raw.slice.coordinates.len(), slice_vars.len())?;
    check_len("section.weights", raw.section.weights.len(), section_vars.len())?;
    check_len("section.extraction", raw.section.extraction.len(), section_vars.len())?;

    let slice_coordinates = raw
        .slice
        .coordinates
        .iter()
        .map(|s| Polynomial::parse(&ambient, s))
        .collect::<Result<_>>()?;
    let extraction = raw
        .section
        .extraction
        .iter()
        .map(|s| Polynomial::parse(&ambient, s))
        .collect::<Result<_>>()?;
    let reduced_table = parse_table(&section_vars, &raw.reduced_brackets)?;
    let mut reduced_table_corrected = reduced_table.clone();
    extend_table(&mut reduced_table_corrected, &raw.reduced_brackets_corrected)?;
    Ok(Sl4Fixture {
        slice_entries: parse_matrix(&slice_vars, &raw.slice.entries, n)?,
        slice_weights: raw.slice.weights,
        slice_coordinates,
        slice_table: parse_table(&slice_vars, &raw.slice_brackets)?,
        section_entries: parse_matrix(&section_vars, &raw.section.entries, n)?,
        section_weights: raw.section.weights,
        extraction,
        reduced_table,
        reduced_table_corrected,
        phi: parse_map(&raw.phi, &slice_vars, &section_vars)?,
        phi_inverse: parse_map(&raw.phi_inverse, &section_vars, &slice_vars)?,
        derived: raw.derived,
        slice_vars,
        section_vars,
    })
}

impl Sl4Fixture {
    /// The Jordan triple of type (3,1), whose `e` is the base point of the slice.
    pub fn triple(&self) -> Sl2Triple {
        jordan_triple(&Partition::new(vec![3, 1]).expect("valid"))
    }

    /// The stored chart, checked to parametrize `e + 𝔷(f)`.
    pub fn slice_chart(&self) -> Result<SliceChart> {
        let t = self.triple();
        let n = t.n();
        let zero = vec![int(0); self.slice_vars.len()];
        let base = Mat::from_flat(n, self.slice_entries.iter().map(|p| p.eval(&zero)).collect());
        if base != t.e {
            return Err(Error::Fixture("slice chart does not pass through e".into()));
        }
        let linear: Vec<Mat> = (0..self.slice_vars.len())
            .map(|k| {
                Mat::from_flat(
                    n,
                    self.slice_entries
                        .iter()
                        .map(|p| p.partial(k).eval(&zero))
                        .collect(),
                )
            })
            .collect();
        let directions = Subspace::span(n, linear);
        let zf = centralizer_sl(&t.f);
        if !directions.same_span(&zf) {
            return Err(Error::Fixture("slice chart directions differ from z(f)".into()));
        }
        let chart = SliceChart {
            base: t.e.clone(),
            directions,
            vars: self.slice_vars.clone(),
            embedding: self.slice_entries.clone(),
            weights: self.slice_weights.clone(),
            coordinate_polys: Some(self.slice_coordinates.clone()),
        };
        // every chart point lies in e + z(f); the entries are polynomial in the chart variables
        let symbolic = Mat::from_flat(n, self.slice_entries.clone());
        let zf_poly = t.f.map(|x| Polynomial::constant_in(&self.slice_vars, x.clone()));
        let base_poly = t.e.map(|x| Polynomial::constant_in(&self.slice_vars, x.clone()));
        if !(&symbolic - &base_poly).commutator(&zf_poly).is_zero() {
            return Err(Error::Fixture("slice chart leaves e + z(f)".into()));
        }
        Ok(chart)
    }

    /// The reduced-space section for the cover (3,1) > (2,2).
    pub fn section_chart(&self) -> Result<SectionChart> {
        let p = |v: &[usize]| Partition::new(v.to_vec()).expect("valid");
        let rd = stage_data(&p(&[3, 1]), &p(&[2, 2]))?;
        SectionChart::new(
            rd.e2,
            rd.m2,
            self.section_vars.clone(),
            self.section_entries.clone(),
            self.extraction.clone(),
            self.section_weights.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_and_charts_are_consistent() {
        let fx = sl4_fixture().unwrap();
        let chart = fx.slice_chart().unwrap();
        let c: Vec<_> = [1, -2, 3, 5, -1].iter().map(|&x| int(x)).collect();
        assert!(chart.round_trips(&c));
        assert_eq!(fx.slice_table.pairs().len(), 5);
        fx.section_chart().unwrap();
        // φ⁻¹ ∘ φ = id
        for (k, g) in fx.phi.iter().enumerate() {
            let back = g.compose(&fx.phi_inverse);
            assert_eq!(back, Polynomial::var(&fx.slice_vars, k));
        }
    }
}
