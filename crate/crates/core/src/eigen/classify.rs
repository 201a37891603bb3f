use crate::error::Result;
use crate::exactnum::CycNum;
use crate::hecke;
use crate::ratfun::{poles, RatFun};

use super::character::{char_eigenfunction, DirichletChar};
use super::eulerian::phi_k;
use super::level_of;

/// A certified closed description of a simultaneous eigenfunction.
#[derive(Clone, Debug, serde::Serialize)]
pub enum Certificate {
    /// `f = scale·φ_k`.
    Phi { k: usize, scale: CycNum },
    /// `f = a1·Σ χ(n) n^{κ−1} xⁿ`.
    Character { chi: DirichletChar, kappa: usize, a1: CycNum },
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SimultaneousReport {
    pub level: u64,
    /// `(p, eigenvalue)` for every tested index; `None` when `f` is not an eigenfunction.
    pub eigenvalues: Vec<(u64, Option<CycNum>)>,
    pub certificate: Option<Certificate>,
}

impl SimultaneousReport {
    /// Indices with a nonzero eigenvalue.
    pub fn eigen_indices(&self) -> Vec<u64> {
        self.eigenvalues
            .iter()
            .filter(|(_, l)| l.as_ref().is_some_and(|l| !l.is_zero()))
            .map(|(p, _)| *p)
            .collect()
    }

    pub fn is_simultaneous(&self) -> bool {
        self.eigenvalues.iter().all(|(_, l)| l.is_some())
    }
}

fn uniform_multiplicity(f: &RatFun) -> Result<Option<usize>> {
    let ms: Vec<usize> = poles(f.den())?.iter().map(|p| p.multiplicity).collect();
    Ok(ms.first().copied().filter(|&k| ms.iter().all(|&m| m == k)))
}

/// Match `f` against `a1·Σ χ(n) n^{κ−1} xⁿ` (or a multiple of `φ_{κ−1}` at level 1).
fn certify(f: &RatFun, level: u64, kappa: usize) -> Result<Option<Certificate>> {
    if level == 1 {
        let phi = phi_k(kappa - 1);
        return Ok(f.ratio_to(&phi).map(|scale| Certificate::Phi { k: kappa - 1, scale }));
    }
    let a = f.series(level as usize + 1);
    let a1 = a[1].clone();
    if a1.is_zero() {
        return Ok(None);
    }
    let mut values = Vec::with_capacity(level as usize);
    for j in 0..level {
        let w = CycNum::from_int(j as i64).pow(kappa as i64 - 1)?;
        let denom = &a1 * &w;
        values.push(if denom.is_zero() { CycNum::zero() } else { a[j as usize].checked_div(&denom)? });
    }
    let Ok(chi) = DirichletChar::new(level, values) else {
        return Ok(None);
    };
    let g = char_eigenfunction(&chi, kappa)?;
    Ok((*f == g.scale(&a1)).then_some(Certificate::Character { chi, kappa, a1 }))
}

/// Test `U_p f = λ_p f` for `2 ≤ p ≤ max(L, p_max)` and, when `f` is an eigenfunction
/// of all of them with nonzero eigenvalues off the level, certify its closed shape.
pub fn simultaneous_classify(f: &RatFun, p_max: u64) -> Result<SimultaneousReport> {
    let f = f.reduce();
    let level = level_of(&f)?;
    let top = p_max.max(level);
    let mut eigenvalues = Vec::new();
    for p in 2..=top {
        eigenvalues.push((p, hecke::eigenvalue(&f, p)?));
    }
    let mut report = SimultaneousReport { level, eigenvalues, certificate: None };
    let coprime_nonzero = report.eigenvalues.iter().all(|(p, l)| match l {
        Some(l) => crate::exactnum::intmath::gcd(*p, level) != 1 || !l.is_zero(),
        None => false,
    });
    if f.is_zero() || !coprime_nonzero {
        return Ok(report);
    }
    if let Some(kappa) = uniform_multiplicity(&f)? {
        report.certificate = certify(&f, level, kappa)?;
    }
    Ok(report)
}

#[derive(Clone, Debug, serde::Serialize)]
pub enum MultiplicativeReport {
    /// `a_{mn} ≠ a_m a_n` at the first pair found.
    Violation { m: u64, n: u64 },
    /// `f = a1·(x∂x)^{κ−1}(Σ χ(j) x^j / (1 − x^L))`.
    CharacterForm { kappa: usize, level: u64, chi: DirichletChar, a1: CycNum },
    /// `f = a0/(1 − x)`.
    Geometric { a0: CycNum },
    /// Multiplicative up to the bound but of neither shape.
    Unmatched,
}

/// Check `a_{mn} = a_m a_n` for positive `m, n` with `mn ≤ bound` and identify the shape.
pub fn classify_multiplicative(f: &RatFun, bound: u64) -> Result<MultiplicativeReport> {
    let f = f.reduce();
    let level = level_of(&f)?;
    let a = f.series(bound as usize + 1);
    for m in 2..=bound {
        for n in m..=bound / m {
            if a[(m * n) as usize] != &a[m as usize] * &a[n as usize] {
                return Ok(MultiplicativeReport::Violation { m, n });
            }
        }
    }
    if !a[0].is_zero() {
        let g = RatFun::geometric(a[0].clone(), 1);
        return Ok(if f == g {
            MultiplicativeReport::Geometric { a0: a[0].clone() }
        } else {
            MultiplicativeReport::Unmatched
        });
    }
    if let Some(kappa) = uniform_multiplicity(&f)? {
        match certify(&f, level, kappa)? {
            Some(Certificate::Character { chi, kappa, a1 }) => {
                return Ok(MultiplicativeReport::CharacterForm { kappa, level, chi, a1 });
            }
            Some(Certificate::Phi { k, scale }) => {
                return Ok(MultiplicativeReport::CharacterForm {
                    kappa: k + 1,
                    level: 1,
                    chi: DirichletChar::principal(1),
                    a1: scale,
                });
            }
            None => {}
        }
    }
    Ok(MultiplicativeReport::Unmatched)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn simultaneous() {
        let r = simultaneous_classify(&rf("3*(x+x^2)/(1-x)^3"), 7).unwrap();
        assert!(matches!(r.certificate, Some(Certificate::Phi { k: 2, ref scale }) if *scale == CycNum::from_int(3)));
        let r = simultaneous_classify(&rf("(x+x^2+x^4)/(1-x^7)"), 7).unwrap();
        assert_eq!(r.eigen_indices(), vec![2, 4]);
        assert!(r.certificate.is_none());
        let r = simultaneous_classify(&rf("x/(1+x+x^2)"), 7).unwrap();
        assert!(r.is_simultaneous());
        match r.certificate {
            Some(Certificate::Character { chi, kappa: 1, .. }) => {
                assert_eq!(chi, crate::eigen::quadratic_character(3).unwrap())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn multiplicative() {
        assert!(matches!(
            classify_multiplicative(&rf("1/(1-x)"), 60).unwrap(),
            MultiplicativeReport::Geometric { ref a0 } if a0.is_one()
        ));
        match classify_multiplicative(&rf("x/(1+x+x^2)"), 60).unwrap() {
            MultiplicativeReport::CharacterForm { kappa: 1, level: 3, chi, .. } => assert!(chi.is_real()),
            other => panic!("unexpected {other:?}"),
        }
        match classify_multiplicative(&rf("x/(1-x)^2"), 60).unwrap() {
            MultiplicativeReport::CharacterForm { kappa: 2, level: 1, chi, .. } => assert!(chi.is_principal()),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            classify_multiplicative(&rf("x/(1-x)^3"), 60).unwrap(),
            MultiplicativeReport::Violation { .. }
        ));
        match classify_multiplicative(&rf("x/(1-x^2)"), 60).unwrap() {
            MultiplicativeReport::CharacterForm { kappa: 1, level: 2, chi, .. } => assert!(chi.is_principal()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
