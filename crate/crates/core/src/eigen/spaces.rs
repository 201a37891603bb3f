use crate::error::{Error, Result};
use crate::exactnum::intmath::{factorize, gcd};
use crate::exactnum::CycNum;
use crate::hecke;
use crate::linalg::Matrix;
use crate::ratfun::{Poly, RatFun};

use super::matrix::{constant_free_minor, matrix_b};
use super::level_of;

/// A basis of `S_{κ,L}` (constant term zero) or `V_{κ,L}` for a list of operators.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SpaceBasis {
    pub kappa: usize,
    pub level: u64,
    pub operators: Vec<u64>,
    pub basis: Vec<RatFun>,
    pub constant_term_zero: bool,
}

impl SpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `f` lies in the span of the basis.
    pub fn contains(&self, f: &RatFun) -> bool {
        let n = self.kappa * self.level as usize + f.degree() + 1;
        let rows: Vec<Vec<CycNum>> = self.basis.iter().map(|g| g.series(n)).collect();
        let base = Matrix::from_rows(rows.clone()).rank();
        let mut all = rows;
        all.push(f.series(n));
        Matrix::from_rows(all).rank() == base
    }
}

/// Numerator coefficient vectors over `(1 − x^L)^κ` spanning the simultaneous
/// eigenspace for each sign pattern of `±p^{κ−1}` across `ps`.
fn eigen_numerators(kappa: usize, level: u64, ps: &[u64], c0_zero: bool) -> Result<Vec<Vec<Vec<CycNum>>>> {
    let den = Poly::one_minus_x_pow(level as usize).pow(kappa);
    let offset = usize::from(c0_zero);
    let mut blocks = Vec::new();
    for &p in ps {
        let m = matrix_b(&den, p)?;
        blocks.push(if c0_zero { constant_free_minor(&m) } else { m });
    }
    let mut out = Vec::new();
    for pattern in 0..(1usize << ps.len()) {
        let mut stacked: Option<Matrix> = None;
        for (i, (&p, m)) in ps.iter().zip(&blocks).enumerate() {
            let sign = if pattern >> i & 1 == 1 { -1 } else { 1 };
            let lambda = CycNum::from_int(p as i64).pow(kappa as i64 - 1)?.mul_int(sign);
            let shifted = m.sub_scalar(&lambda);
            stacked = Some(match stacked {
                None => shifted,
                Some(s) => s.stack(&shifted),
            });
        }
        let Some(stacked) = stacked else {
            continue;
        };
        let vectors = stacked
            .nullspace()
            .into_iter()
            .map(|v| {
                let mut c = vec![CycNum::zero(); offset];
                c.extend(v);
                c
            })
            .collect();
        out.push(vectors);
    }
    Ok(out)
}

/// Whether the numerator `v` over `(1 − x^L)^κ` describes a function of level exactly `L`.
fn has_exact_level(v: &[CycNum], kappa: usize, level: u64) -> bool {
    let a = Poly::new(v.to_vec());
    if a.is_zero() {
        return false;
    }
    let den = Poly::one_minus_x_pow(level as usize).pow(kappa);
    factorize(level).into_iter().all(|(q, _)| {
        let sub = Poly::one_minus_x_pow((level / q) as usize).pow(kappa);
        !den.exact_div(&sub).expect("divides").divides(&a)
    })
}

fn combine(vs: &[Vec<CycNum>], weights: &[i64]) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(); vs[0].len()];
    for (v, &w) in vs.iter().zip(weights) {
        for (o, c) in out.iter_mut().zip(v) {
            *o = &*o + &c.mul_int(w);
        }
    }
    out
}

/// A basis of the sign-pattern eigenspace made of vectors of exact level, if the space
/// contains any such vector.
fn exact_level_basis(vs: &[Vec<CycNum>], kappa: usize, level: u64) -> Option<Vec<Vec<CycNum>>> {
    let n = vs.len();
    let anchor = (0..n)
        .map(|i| vs[i].clone())
        .chain((0..=n as u32 + 2).map(|t| {
            let weights: Vec<i64> = (0..n).map(|j| (j as i64 + 1).pow(t)).collect();
            combine(vs, &weights)
        }))
        .find(|v| has_exact_level(v, kappa, level))?;
    let mut chosen: Vec<Vec<CycNum>> = Vec::new();
    let consider = |v: Vec<CycNum>, chosen: &mut Vec<Vec<CycNum>>| {
        if chosen.len() == n || !has_exact_level(&v, kappa, level) {
            return;
        }
        chosen.push(v);
        if Matrix::from_rows(chosen.clone()).rank() < chosen.len() {
            chosen.pop();
        }
    };
    for v in vs {
        consider(v.clone(), &mut chosen);
    }
    consider(anchor.clone(), &mut chosen);
    let mut k = 1;
    while chosen.len() < n {
        for v in vs {
            let shifted: Vec<CycNum> = v.iter().zip(&anchor).map(|(a, b)| a + &b.mul_int(k)).collect();
            consider(shifted, &mut chosen);
        }
        k += 1;
        assert!(k < 64, "could not complete a basis of exact level");
    }
    Some(chosen)
}

fn sort_key(a: &RatFun, b: &RatFun) -> std::cmp::Ordering {
    a.den().cmp_key(b.den()).then_with(|| a.num().cmp_key(b.num()))
}

/// Basis of the span of eigenfunctions with weight `kappa` and level exactly `level`
/// for every operator in `ps`. The span can contain functions of smaller level.
/// Operators sharing a factor with the level leave the space empty.
pub fn space_basis(kappa: usize, level: u64, ps: &[u64], constant_term_zero: bool) -> Result<SpaceBasis> {
    if kappa == 0 || level == 0 || ps.iter().any(|&p| p < 2) {
        return Err(Error::InvalidArgument("need kappa >= 1, L >= 1 and every p >= 2".into()));
    }
    let mut result = SpaceBasis {
        kappa,
        level,
        operators: ps.to_vec(),
        basis: Vec::new(),
        constant_term_zero,
    };
    if ps.iter().any(|&p| gcd(p, level) != 1) {
        return Ok(result);
    }
    let den = Poly::one_minus_x_pow(level as usize).pow(kappa);
    for vs in eigen_numerators(kappa, level, ps, constant_term_zero)? {
        if vs.is_empty() {
            continue;
        }
        for v in exact_level_basis(&vs, kappa, level).unwrap_or_default() {
            let f = RatFun::new(Poly::new(v), den.clone())?.reduce().primitive();
            result.basis.push(f);
        }
    }
    result.basis.sort_by(sort_key);
    verify(&result)?;
    Ok(result)
}

fn verify(s: &SpaceBasis) -> Result<()> {
    for f in &s.basis {
        if level_of(f)? != s.level {
            return Err(Error::InternalMismatch(format!("{f} does not have level {}", s.level)));
        }
        for &p in &s.operators {
            let mag = CycNum::from_int(p as i64).pow(s.kappa as i64 - 1)?;
            let g = hecke::apply(f, p)?;
            if g != f.scale(&mag) && g != f.scale(&-mag) {
                return Err(Error::InternalMismatch(format!("{f} is not an eigenfunction of U_{p}")));
            }
        }
    }
    let n = s.kappa * s.level as usize + 1;
    let rows: Vec<Vec<CycNum>> = s.basis.iter().map(|f| f.series(n)).collect();
    if !rows.is_empty() && Matrix::from_rows(rows).rank() != s.basis.len() {
        return Err(Error::InternalMismatch("basis is linearly dependent".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn dims_for_two() {
        assert_eq!(space_basis(1, 1, &[2], true).unwrap().dim(), 0);
        assert_eq!(space_basis(1, 1, &[2], false).unwrap().dim(), 1);
        for k in 2..=6 {
            assert_eq!(space_basis(k, 1, &[2], true).unwrap().dim(), 1, "kappa = {k}");
        }
        assert_eq!(space_basis(1, 3, &[2], true).unwrap().dim(), 2);
        assert_eq!(space_basis(2, 3, &[2], true).unwrap().dim(), 3);
        assert_eq!(space_basis(1, 5, &[2], true).unwrap().dim(), 2);
        assert_eq!(space_basis(1, 2, &[2], true).unwrap().dim(), 0);
    }

    #[test]
    fn level_seven() {
        let s = space_basis(1, 7, &[2], true).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&rf("(x+x^2+x^4)/(1-x^7)")));
        assert!(s.contains(&rf("(x^3+x^5+x^6)/(1-x^7)")));
        assert!(!s.contains(&rf("x/(1-x^7)")));
    }

    #[test]
    fn members() {
        let s = space_basis(2, 3, &[2], true).unwrap();
        assert!(s.contains(&rf("(x-x^3)/(1+x+x^2)^2")));
        let s = space_basis(1, 3, &[2, 5], true).unwrap();
        assert!(s.contains(&rf("x/(1+x+x^2)")));
    }
}
