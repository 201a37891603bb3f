//! Canonical form `A / ∏(1 − x^{m_j})` of a rational function with poles at roots of
//! unity, and the unimodality test on its numerator.

use std::collections::BTreeMap;

use num_traits::Signed;

use hecke_core::exactnum::intmath::divisors;
use hecke_core::ratfun::poles;
use hecke_core::{Error, Poly, RatFun, Result};

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CanonicalForm {
    pub num: Poly,
    /// The multiset `{m_j}`, ascending.
    pub den_exponents: Vec<u64>,
}

impl CanonicalForm {
    pub fn den(&self) -> Poly {
        self.den_exponents
            .iter()
            .fold(Poly::one(), |acc, &m| &acc * &Poly::one_minus_x_pow(m as usize))
    }

    pub fn to_ratfun(&self) -> Result<RatFun> {
        RatFun::new(self.num.clone(), self.den())
    }
}

/// Greedy completion: repeatedly take the largest pole order `m` still uncovered and
/// use `(1 − x^m)^e`, which covers every pole whose order divides `m`. The numerator
/// absorbs the surplus factors.
pub fn canonical_form(f: &RatFun) -> Result<CanonicalForm> {
    let f = f.reduce();
    let mut need: BTreeMap<u64, usize> = BTreeMap::new();
    for pole in poles(f.den())? {
        let e = need.entry(pole.order).or_insert(0);
        *e = (*e).max(pole.multiplicity);
    }
    let mut den_exponents = Vec::new();
    while let Some((&m, &e)) = need.iter().rev().find(|(_, &e)| e > 0) {
        den_exponents.extend(std::iter::repeat_n(m, e));
        for d in divisors(m) {
            if let Some(r) = need.get_mut(&d) {
                *r = r.saturating_sub(e);
            }
        }
    }
    den_exponents.sort_unstable();
    let mut cf = CanonicalForm { num: Poly::zero(), den_exponents };
    let cofactor = cf
        .den()
        .exact_div(f.den())
        .ok_or_else(|| Error::InternalMismatch(format!("{} does not divide the completed denominator", f.den())))?;
    cf.num = f.num() * &cofactor;
    if cf.to_ratfun()? != f {
        return Err(Error::InternalMismatch(format!("canonical form of {f} changes the function")));
    }
    Ok(cf)
}

fn magnitudes(a: &Poly) -> Vec<f64> {
    a.coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| {
            let (re, im) = c.approx();
            re.hypot(im)
        })
        .collect()
}

/// Whether `|c|` over the nonzero coefficients of `a`, in degree order, weakly increases
/// and then weakly decreases. Rational coefficients are compared exactly.
pub fn unimodality_check(a: &Poly) -> bool {
    let nonzero: Vec<_> = a.coeffs().iter().filter(|c| !c.is_zero()).collect();
    if nonzero.iter().all(|c| c.is_rational()) {
        let abs: Vec<_> = nonzero.iter().map(|c| c.to_rational().expect("rational").abs()).collect();
        return is_unimodal(&abs, |x, y| x.cmp(y));
    }
    let m = magnitudes(a);
    is_unimodal(&m, |x, y| {
        if (x - y).abs() <= 1e-9 * x.abs().max(y.abs()) {
            std::cmp::Ordering::Equal
        } else {
            x.total_cmp(y)
        }
    })
}

fn is_unimodal<T>(v: &[T], cmp: impl Fn(&T, &T) -> std::cmp::Ordering) -> bool {
    use std::cmp::Ordering::*;
    let mut falling = false;
    for w in v.windows(2) {
        match cmp(&w[0], &w[1]) {
            Less if falling => return false,
            Greater => falling = true,
            _ => {}
        }
    }
    true
}
