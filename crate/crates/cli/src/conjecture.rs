//! Scan of eigenfunction numerators, in canonical form, for unimodality.

use hecke_core::eigen::eigen_search;
use hecke_core::{CycNum, Error, Poly, RatFun, Result};

use crate::canonical::{canonical_form, unimodality_check};

/// Largest denominator degree accepted by the scan.
pub const MAX_SCAN_DEGREE: usize = 12;

pub const CANONICAL_RULE: &str = "denominator prod (1 - x^m_j): repeatedly take the largest pole order m \
not yet covered and use (1 - x^m)^e, where e is its pole multiplicity; factors cover every pole order \
dividing m; the numerator absorbs the completion";

#[derive(Clone, Debug, serde::Serialize)]
pub struct ScanEntry {
    pub f: RatFun,
    pub lambda: CycNum,
    pub canonical_num: Poly,
    pub den_exponents: Vec<u64>,
    /// Dimension of the eigenspace the function was drawn from; when it is 1 the
    /// function is determined up to scale and the verdict does not depend on a basis.
    pub eigenspace_dim: usize,
}

impl ScanEntry {
    pub fn constant_term_zero(&self) -> bool {
        self.f.num().coeff(0).is_zero()
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ConjectureReport {
    pub p: u64,
    pub max_degree: usize,
    pub rule: &'static str,
    pub denominators: usize,
    pub eigenfunctions: usize,
    pub counterexamples: Vec<ScanEntry>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Every basis eigenfunction of `U_p` with nonzero eigenvalue over each admissible
/// denominator of degree at most `max_degree`, canonicalised and tested. Functions
/// reached from several denominators are counted once.
pub fn conjecture_scan(p: u64, max_degree: usize) -> Result<ConjectureReport> {
    if p < 2 {
        return Err(Error::IndexOutOfRange { index: p, range: ">= 2".into() });
    }
    if max_degree > MAX_SCAN_DEGREE {
        return Err(Error::InvalidArgument(format!("max degree is capped at {MAX_SCAN_DEGREE}")));
    }
    let reports = eigen_search(p, max_degree)?;
    let mut seen: Vec<RatFun> = Vec::new();
    let mut counterexamples = Vec::new();
    for r in &reports {
        for pair in &r.pairs {
            if seen.contains(&pair.f) {
                continue;
            }
            seen.push(pair.f.clone());
            let cf = canonical_form(&pair.f)?;
            if !unimodality_check(&cf.num) {
                counterexamples.push(ScanEntry {
                    f: pair.f.clone(),
                    lambda: pair.lambda.clone(),
                    canonical_num: cf.num,
                    den_exponents: cf.den_exponents,
                    eigenspace_dim: r.pairs.iter().filter(|q| q.lambda == pair.lambda).count(),
                });
            }
        }
    }
    let eigenfunctions = seen.len();
    Ok(ConjectureReport {
        p,
        max_degree,
        rule: CANONICAL_RULE,
        denominators: reports.len(),
        eigenfunctions,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_is_vacuous() {
        let r = conjecture_scan(2, 1).unwrap();
        assert_eq!((r.denominators, r.eigenfunctions), (1, 1));
        assert!(r.passed());
    }

    #[test]
    fn three_up_to_four() {
        let r = conjecture_scan(3, 4).unwrap();
        assert!(r.eigenfunctions > 0);
        assert_eq!(r.counterexamples.len(), 1);
        let e = &r.counterexamples[0];
        let f: RatFun = "(4+x-x^2+x^3-x^4)/(1+x^5)".parse().unwrap();
        assert_eq!(e.f, f);
        assert!(e.lambda.is_one());
        assert_eq!(e.den_exponents, vec![10]);
        assert_eq!(e.eigenspace_dim, 1);
    }

    #[test]
    fn triple_pole_at_level_three_fails() {
        let r = conjecture_scan(2, 6).unwrap();
        let e = r.counterexamples.iter().find(|e| e.den_exponents == vec![3, 3, 3]).unwrap();
        assert_eq!(e.eigenspace_dim, 1);
        assert!(e.constant_term_zero());
        assert_eq!(e.canonical_num, Poly::from_i64(&[0, 1, 4, -18, 13, 13, -18, 4, 1]));
    }
}
