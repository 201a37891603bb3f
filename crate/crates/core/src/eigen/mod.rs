//! Eigenfunctions of `U_p`: the matrix 𝔅, admissible denominators, eigenspaces,
//! weight, level and character data, the spaces `S_{κ,L}` and `V_{κ,L}`, and
//! classification of simultaneous eigenfunctions.

mod admissible;
mod character;
mod classify;
mod eulerian;
mod matrix;
mod search;
mod spaces;

pub use admissible::{
    admissible_denominator_data, admissible_denominators, involution_identity, orbit_blocks,
    AdmissibleDen, OrbitBlock,
};
pub use character::{all_characters, char_eigenfunction, quadratic_character, DirichletChar};
pub use classify::{
    classify_multiplicative, simultaneous_classify, Certificate, MultiplicativeReport,
    SimultaneousReport,
};
pub use eulerian::{eulerian_poly, phi_k, stirling2};
pub use matrix::{
    appendix_matrix_p2, candidate_eigenvalues, constant_free_minor, eigenspace, is_admissible,
    matrix_b, matrix_b_expanded, matrix_spectrum, pole_multiplicities, uniform_weight,
    MatrixSpectrum,
};
pub use search::{eigen_search, search_denominator, DenominatorReport, EigenPair};
pub use spaces::{space_basis, SpaceBasis};

use crate::error::{Error, Result};
use crate::exactnum::intmath::lcm;
use crate::exactnum::CycNum;
use crate::hecke;
use crate::ratfun::{closed_form, poles, ClosedForm, RatFun};

/// An eigenpair of `U_p` with its weight, level and sign.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EigenData {
    pub f: RatFun,
    pub p: u64,
    pub lambda: CycNum,
    pub kappa: usize,
    pub level: u64,
    pub chi_p: i8,
}

fn sign_of(lambda: &CycNum) -> Result<i8> {
    if lambda.is_zero() {
        return Ok(0);
    }
    let r = lambda.to_rational().ok_or(Error::StructureViolated)?;
    Ok(if r > num_rational::BigRational::from_integer(0.into()) { 1 } else { -1 })
}

fn magnitude_matches(lambda: &CycNum, p: u64, kappa: usize) -> bool {
    let mag = CycNum::from_int(p as i64).pow(kappa as i64 - 1).expect("nonnegative power");
    *lambda == mag || *lambda == -&mag
}

/// Eigen data for `f` under `U_p`, with `f` reduced to lowest terms. For kernel
/// elements `kappa` is the largest pole multiplicity.
pub fn eigen_data(f: &RatFun, p: u64) -> Result<EigenData> {
    let lambda = hecke::eigenvalue(f, p)?.ok_or(Error::NotAnEigenfunction { p })?;
    let f = f.reduce();
    let level = level_of(&f)?;
    let chi_p = sign_of(&lambda)?;
    let kappa = if lambda.is_zero() {
        pole_multiplicities(f.den())?.into_iter().max().unwrap_or(0)
    } else {
        let k = uniform_weight(f.den())?;
        if !magnitude_matches(&lambda, p, k) {
            return Err(Error::StructureViolated);
        }
        k
    };
    Ok(EigenData { f, p, lambda, kappa, level, chi_p })
}

/// Least common multiple of the orders of the poles of `f`.
pub fn level_of(f: &RatFun) -> Result<u64> {
    let f = f.reduce();
    if f.is_zero() {
        return Ok(1);
    }
    Ok(poles(f.den())?.iter().fold(1, |acc, p| lcm(acc, p.order)))
}

fn nonzero_eigenvalue(f: &RatFun, p: u64) -> Result<CycNum> {
    match hecke::eigenvalue(f, p)? {
        Some(l) if !l.is_zero() => Ok(l),
        _ => Err(Error::NotAnEigenfunction { p }),
    }
}

/// The common pole multiplicity of an eigenfunction of `U_p` with nonzero eigenvalue.
pub fn weight_of(f: &RatFun, p: u64) -> Result<usize> {
    let lambda = nonzero_eigenvalue(f, p)?;
    if !hecke::p_section_check(f, p, &lambda) {
        return Err(Error::InternalMismatch(format!("p-section identity fails for {f}")));
    }
    let k = uniform_weight(f.reduce().den())?;
    if !magnitude_matches(&lambda, p, k) {
        return Err(Error::StructureViolated);
    }
    Ok(k)
}

pub fn chi_value(f: &RatFun, p: u64) -> Result<i8> {
    let lambda = hecke::eigenvalue(f, p)?.ok_or(Error::NotAnEigenfunction { p })?;
    sign_of(&lambda)
}

/// Closed form `a_n = n^{κ−1} Σ C_j ζ_L^{ℓ_j n}` of an eigenfunction, checked to use a
/// single power of `n` and to reproduce the first 51 coefficients.
pub fn structure_closed_form(f: &RatFun, p: u64) -> Result<ClosedForm> {
    let kappa = weight_of(f, p)?;
    let cf = closed_form(f)?;
    if cf.powers() != vec![kappa as u32] {
        return Err(Error::StructureViolated);
    }
    let a = f.series(51);
    if (0..51).any(|n| cf.evaluate(n as u64) != a[n]) {
        return Err(Error::InternalMismatch(format!("closed form disagrees with series of {f}")));
    }
    Ok(cf)
}

/// Whether `U_{p+mL} f = χ_f(p)·(p+mL)^{κ−1} f` for `1 ≤ m ≤ m_max`.
pub fn periodicity_check(f: &RatFun, p: u64, m_max: u64) -> Result<bool> {
    let lambda = hecke::eigenvalue(f, p)?.ok_or(Error::NotAnEigenfunction { p })?;
    let chi = sign_of(&lambda)?;
    let level = level_of(f)?;
    let kappa = if chi == 0 {
        1
    } else {
        uniform_weight(f.reduce().den())?
    };
    for m in 1..=m_max {
        let q = p + m * level;
        let mag = CycNum::from_int(q as i64).pow(kappa as i64 - 1)?;
        if hecke::apply(f, q)? != f.scale(&mag.mul_int(chi as i64)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn kernel_membership(f: &RatFun, p: u64) -> Result<bool> {
    Ok(hecke::apply(f, p)?.is_zero())
}

/// For `f = x^m g` with `g(0) ≠ 0`: whether `p ∤ m`.
pub fn valuation_coprime(f: &RatFun, p: u64) -> bool {
    match f.num().valuation() {
        Some(m) => !(m as u64).is_multiple_of(p),
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::Poly;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn levels() {
        assert_eq!(level_of(&rf("(x+x^2+x^4)/(1-x^7)")).unwrap(), 7);
        assert_eq!(level_of(&rf("1/(1-x)")).unwrap(), 1);
        let b = &Poly::cyclotomic(4) * &Poly::cyclotomic(5);
        assert_eq!(level_of(&RatFun::new(Poly::x(), b).unwrap()).unwrap(), 20);
        assert!(matches!(level_of(&rf("1/(1-2*x)")), Err(Error::PoleNotRootOfUnity { .. })));
    }

    #[test]
    fn weights_and_signs() {
        assert_eq!(weight_of(&rf("(x+4*x^2+x^3)/(1-x)^4"), 2).unwrap(), 4);
        assert_eq!(weight_of(&rf("x/(1+x+x^2)"), 2).unwrap(), 1);
        assert_eq!(chi_value(&rf("x/(1+x+x^2)"), 2).unwrap(), -1);
        assert_eq!(chi_value(&rf("(x+x^2+x^4)/(1-x^7)"), 2).unwrap(), 1);
        assert_eq!(chi_value(&rf("x/(1-x^2)"), 2).unwrap(), 0);
        assert!(matches!(weight_of(&rf("x/(1-x^2)"), 2), Err(Error::NotAnEigenfunction { p: 2 })));
        let d = eigen_data(&rf("(x-x^3)/(1+x+x^2)^2"), 2).unwrap();
        assert_eq!((d.kappa, d.level, d.chi_p), (2, 3, -1));
        assert_eq!(d.lambda, CycNum::from_int(-2));
    }

    #[test]
    fn closed_forms() {
        let cf = structure_closed_form(&rf("x/(1-x)^2"), 2).unwrap();
        assert_eq!(cf.terms.len(), 1);
        assert_eq!(cf.powers(), vec![2]);
        let cf = structure_closed_form(&rf("x/(1+x+x^2)"), 2).unwrap();
        assert_eq!(cf.terms.len(), 2);
        let z = CycNum::zeta(7, 1);
        let c = &z + &z.inv().unwrap();
        let f = RatFun::new(
            Poly::new(vec![CycNum::from_int(2), -&c]),
            Poly::new(vec![CycNum::one(), -&c, CycNum::one()]),
        )
        .unwrap();
        let cf = structure_closed_form(&f, 6).unwrap();
        for n in 0..20 {
            assert_eq!(cf.evaluate(n), &z.pow(n as i64).unwrap() + &z.pow(-(n as i64)).unwrap());
        }
    }

    #[test]
    fn periodicity() {
        assert!(periodicity_check(&rf("x/(1+x+x^2)"), 2, 2).unwrap());
        assert!(periodicity_check(&rf("(x+x^2+x^4)/(1-x^7)"), 2, 2).unwrap());
        assert!(periodicity_check(&rf("1/(1-x)"), 2, 3).unwrap());
    }

    #[test]
    fn kernels() {
        let f = rf("x/(1+x+x^2)");
        assert!(kernel_membership(&f, 3).unwrap());
        assert!(kernel_membership(&f, 6).unwrap());
        assert!(!kernel_membership(&rf("1/(1-x)"), 5).unwrap());
        assert!(valuation_coprime(&f, 2));
        assert!(!valuation_coprime(&rf("x^2/(1-x)^3"), 2));
    }
}
