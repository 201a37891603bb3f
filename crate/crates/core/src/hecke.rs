//! The operators `U_p : Σ aₙxⁿ ↦ Σ a_{pn}xⁿ` on rational functions.

use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::ratfun::{Poly, RatFun};

/// Index of a Hecke operator; `U_1` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct HeckeIndex(u64);

impl HeckeIndex {
    pub fn new(p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("Hecke index must be at least 1".into()));
        }
        Ok(HeckeIndex(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// `U_p f`. The denominator is the image of `f.den()` under the power map
/// γ ↦ γ^p; the numerator is fitted to the first `deg` sifted coefficients and
/// checked against the next `2·deg`.
pub fn hecke_apply(f: &RatFun, p: HeckeIndex) -> Result<RatFun> {
    let p = p.get() as usize;
    if p == 1 || f.is_zero() {
        return Ok(f.clone());
    }
    let d = f.degree();
    let bp = denominator_power_map(f.den(), p as u64);
    let a = f.series(p * (3 * d - 1) + 1);
    let sifted: Vec<CycNum> = (0..3 * d).map(|n| a[p * n].clone()).collect();
    let num = (&bp * &Poly::new(sifted[..d].to_vec())).truncate(d);
    let g = RatFun::new(num, bp)?;
    if g.series(3 * d) != sifted {
        return Err(Error::InternalMismatch(format!("U_{p} of {f}: sifted series disagree")));
    }
    Ok(g)
}

/// Convenience wrapper taking a plain integer index.
pub fn apply(f: &RatFun, p: u64) -> Result<RatFun> {
    hecke_apply(f, HeckeIndex::new(p)?)
}

/// The polynomial ∏ (1 − γ_j^p x) for B = ∏ (1 − γ_j x), via Newton power sums.
pub fn denominator_power_map(b: &Poly, p: u64) -> Poly {
    let c0 = b.coeff(0);
    assert!(!c0.is_zero(), "B(0) must be nonzero");
    let b = if c0.is_one() { b.clone() } else { b.scale(&c0.inv().expect("nonzero")) };
    let d = b.deg();
    let p = p as usize;
    let alpha = |i: usize| if i <= d { b.coeff(i) } else { CycNum::zero() };
    let top = p * d;
    let mut s: Vec<CycNum> = vec![CycNum::zero(); top + 1];
    for k in 1..=top {
        let mut v = if k <= d { alpha(k).mul_int(k as i64) } else { CycNum::zero() };
        for i in 1..k.min(d + 1) {
            let a = alpha(i);
            if !a.is_zero() && !s[k - i].is_zero() {
                v = &v + &(&a * &s[k - i]);
            }
        }
        s[k] = -v;
    }
    let t: Vec<&CycNum> = (0..=d).map(|k| &s[p * k]).collect();
    let mut beta: Vec<CycNum> = vec![CycNum::one()];
    for k in 1..=d {
        let mut v = t[k].clone();
        for i in 1..k {
            if !beta[i].is_zero() && !t[k - i].is_zero() {
                v = &v + &(&beta[i] * t[k - i]);
            }
        }
        beta.push(-v.div_int(k as i64));
    }
    Poly::new(beta)
}

/// ∏_{j=0}^{p−1} B(ζ_p^j x), conductor-reduced.
pub fn norm_product(b: &Poly, p: u64) -> Poly {
    let mut acc = b.clone();
    for j in 1..p {
        acc = &acc * &b.scale_var(&CycNum::zeta(p, j as i64));
    }
    Poly::new(acc.into_coeffs().into_iter().map(|c| c.conductor_reduce()).collect())
}

/// Whether `λ·f(x^p) = (1/p)·Σ_j f(ζ_p^j x)` holds identically.
pub fn p_section_check(f: &RatFun, p: u64, lambda: &CycNum) -> bool {
    let pairs: Vec<(CycNum, RatFun)> = (0..p)
        .map(|j| {
            let z = CycNum::zeta(p, j as i64);
            let g = RatFun::new(f.num().scale_var(&z), f.den().scale_var(&z)).expect("valid");
            (CycNum::from_frac(1, p as i64), g)
        })
        .collect();
    let rhs = RatFun::linear_combine(&pairs);
    rhs == f.substitute_power(p as usize).scale(lambda)
}

/// `x^j g(x^p)`, an element of the kernel of `U_p`.
pub fn kernel_element(g: &RatFun, p: u64, j: u64) -> Result<RatFun> {
    if j == 0 || j >= p {
        return Err(Error::IndexOutOfRange { index: j, range: format!("1..{p}") });
    }
    if g.is_zero() {
        return Ok(RatFun::zero());
    }
    let sp = g.substitute_power(p as usize);
    RatFun::new(sp.num().shift(j as usize), sp.den().clone())
}

/// Whether `U_m U_n f = U_{mn} f = U_n U_m f`.
pub fn hecke_compose_check(f: &RatFun, m: u64, n: u64) -> Result<bool> {
    let mn = apply(f, m * n)?;
    let a = apply(&apply(f, n)?, m)?;
    let b = apply(&apply(f, m)?, n)?;
    Ok(a == mn && b == mn)
}

/// The eigenvalue of `U_p` on `f`, if `f` is an eigenfunction. The zero function
/// reports eigenvalue 0.
pub fn eigenvalue(f: &RatFun, p: u64) -> Result<Option<CycNum>> {
    let g = apply(f, p)?;
    if f.is_zero() {
        return Ok(Some(CycNum::zero()));
    }
    let n = f.degree() + 1;
    let a = f.series(n);
    let k = a.iter().position(|c| !c.is_zero()).expect("nonzero f has a nonzero coefficient");
    let lambda = g.series(k + 1)[k].checked_div(&a[k])?;
    Ok((g == f.scale(&lambda)).then_some(lambda))
}
