use crate::error::Result;
use crate::exactnum::CycNum;
use crate::ratfun::{Poly, RatFun};

use super::admissible::{admissible_denominator_data, AdmissibleDen};
use super::matrix::{eigenspace, matrix_b, matrix_spectrum, MatrixSpectrum};

/// An eigenfunction found for a given denominator, reduced to lowest terms.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EigenPair {
    pub p: u64,
    pub lambda: CycNum,
    pub f: RatFun,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DenominatorReport {
    pub den: Poly,
    pub level: u64,
    pub spectrum: MatrixSpectrum,
    pub pairs: Vec<EigenPair>,
}

/// Spectrum of 𝔅 for `b` and a basis of eigenfunctions for each nonzero root of the
/// form `±p^k`.
pub fn search_denominator(b: &Poly, level: u64, p: u64) -> Result<DenominatorReport> {
    let spectrum = matrix_spectrum(&matrix_b(b, p)?, p);
    let mut pairs = Vec::new();
    for (lambda, _) in &spectrum.roots {
        for a in eigenspace(b, p, lambda, false)? {
            let f = RatFun::new(a, b.clone())?.reduce().primitive();
            pairs.push(EigenPair { p, lambda: lambda.clone(), f });
        }
    }
    Ok(DenominatorReport { den: b.clone(), level, spectrum, pairs })
}

/// [`search_denominator`] over every admissible denominator of degree at most `max_degree`.
pub fn eigen_search(p: u64, max_degree: usize) -> Result<Vec<DenominatorReport>> {
    admissible_denominator_data(p, max_degree)
        .iter()
        .map(|d: &AdmissibleDen| search_denominator(&d.poly, d.level, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_for_two() {
        let reports = eigen_search(2, 2).unwrap();
        assert_eq!(reports.len(), 3);
        let lambdas: Vec<i64> = reports.iter().flat_map(|r| r.pairs.iter().map(|e| e.lambda.to_i64().unwrap())).collect();
        assert!(lambdas.contains(&2) && lambdas.contains(&-1) && lambdas.contains(&1));
        assert!(reports.iter().all(|r| r.spectrum.only_allowed_values()));
    }
}
