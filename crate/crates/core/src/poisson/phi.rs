//! Symbolic check that a ring map between two bracket tables is Poisson.

use num_traits::Zero;

use super::{sl4_fixture, BracketTable};
use crate::poly::Polynomial;
use crate::report::Report;

/// For each stored pair `(g₁, g₂)` of `source`, compares `φ({g₁,g₂})` with `{φ(g₁), φ(g₂)}`.
///
/// Failing pairs carry `RHS − LHS` in their detail.
pub fn phi_check(source: &BracketTable, target: &BracketTable, phi: &[Polynomial]) -> Report {
    let mut r = Report::new();
    for (i, j) in source.pairs() {
        let name = format!("phi({},{})", source.vars[i], source.vars[j]);
        let lhs = source.get(i, j).compose(phi);
        let rhs = target.bracket(&phi[i], &phi[j]);
        match rhs {
            Ok(rhs) => {
                let diff = &rhs - &lhs.with_vars(&target.vars).unwrap_or(lhs);
                if diff.is_zero() {
                    r.push_detail(name, true, format!("both sides {rhs}"));
                } else {
                    r.push_detail(name, false, format!("RHS - LHS = {diff}"));
                }
            }
            Err(e) => r.push_detail(name, false, e.to_string()),
        }
    }
    r
}

/// The check on the sl4 fixture with the reduced-space table as printed.
pub fn phi_check_sl4() -> Report {
    let fx = sl4_fixture().expect("embedded fixture parses");
    phi_check(&fx.slice_table, &fx.reduced_table, &fx.phi)
}

/// The same check with `{u,v}` replaced by the corrected entry.
pub fn phi_check_sl4_corrected() -> Report {
    let fx = sl4_fixture().expect("embedded fixture parses");
    phi_check(&fx.slice_table, &fx.reduced_table_corrected, &fx.phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_table_fails_only_on_df() {
        let r = phi_check_sl4();
        for p in ["phi(a,d)", "phi(a,f)", "phi(c,d)", "phi(c,f)"] {
            assert_eq!(r.get(p), Some(true), "{p}");
        }
        assert_eq!(r.get("phi(d,f)"), Some(false));
        let detail = &r.checks.iter().find(|c| c.name == "phi(d,f)").unwrap().detail;
        let fx = sl4_fixture().unwrap();
        let expected = Polynomial::parse(&fx.section_vars, "1/4*y*(x - u - v)").unwrap();
        assert_eq!(detail, &format!("RHS - LHS = {expected}"));
        assert!(phi_check_sl4_corrected().all_pass());
    }
}
