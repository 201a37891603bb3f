//! Spectral zeta functions of `U_p` and of tensor operators `U_S = ⊗_{p∈S} U_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::eigen::phi_k;
use crate::error::{Error, Result};
use crate::exactnum::intmath::{is_prime, primes_up_to};
use crate::exactnum::CycNum;
use crate::hecke;
use crate::ratfun::RatFun;

/// Eigenvalues `p^0, …, p^{k_max}` of `U_p` on the span of the `φ_k`.
pub fn spectrum_up(p: u64, k_max: u32) -> Vec<u64> {
    assert!(p >= 2, "p must be at least 2");
    (0..=k_max).map(|k| p.pow(k)).collect()
}

/// `φ_k`, checked to satisfy `U_p φ_k = p^k φ_k`.
pub fn spectrum_witness(p: u64, k: usize) -> Result<RatFun> {
    let f = phi_k(k);
    let lambda = CycNum::from_int(p as i64).pow(k as i64)?;
    if hecke::apply(&f, p)? != f.scale(&lambda) {
        return Err(Error::InternalMismatch(format!("phi_{k} is not an eigenfunction of U_{p}")));
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SpectrumEnum {
    pub primes: Vec<u64>,
    pub bound: u64,
    /// `(eigenvalue, multiplicity)`, ascending.
    pub eigenvalues: Vec<(u64, usize)>,
}

impl SpectrumEnum {
    pub fn values(&self) -> Vec<u64> {
        self.eigenvalues.iter().map(|(v, _)| *v).collect()
    }
}

fn check_primes(primes: &[u64]) -> Result<()> {
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if primes[..i].contains(&p) {
            return Err(Error::DuplicatePrime(p));
        }
    }
    Ok(())
}

/// The `S`-smooth integers up to `bound`, each a product `∏ p_i^{k_i}` counted once per
/// exponent vector.
pub fn tensor_spectrum(primes: &[u64], bound: u64) -> Result<SpectrumEnum> {
    check_primes(primes)?;
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    let mut values = vec![1u64];
    for &p in primes {
        let mut next = Vec::with_capacity(values.len() * 2);
        for &v in &values {
            let mut w = v;
            loop {
                next.push(w);
                match w.checked_mul(p) {
                    Some(x) if x <= bound => w = x,
                    _ => break,
                }
            }
        }
        values = next;
    }
    values.sort_unstable();
    let mut eigenvalues: Vec<(u64, usize)> = Vec::new();
    for v in values {
        match eigenvalues.last_mut() {
            Some((w, m)) if *w == v => *m += 1,
            _ => eigenvalues.push((v, 1)),
        }
    }
    Ok(SpectrumEnum { primes: primes.to_vec(), bound, eigenvalues })
}

/// Compensated summation, adding terms in the given order.
fn neumaier_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            c += (sum - s) + t;
        } else {
            c += (t - s) + sum;
        }
        sum = s;
    }
    sum + c
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ZetaValue {
    pub s: f64,
    pub bound: u64,
    /// `Σ λ^{−s}` over the eigenvalues `λ ≤ bound`, with multiplicity.
    pub partial_sum: f64,
    /// The value of the full series.
    pub closed_form: f64,
}

fn check_s(s: f64) -> Result<()> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::SBelowAbscissa(s));
    }
    Ok(())
}

/// Truncation of `ζ_{U_S}(s) = ∏_{p∈S} 1/(1 − p^{−s})`.
pub fn zeta_us(primes: &[u64], s: f64, bound: u64) -> Result<ZetaValue> {
    check_s(s)?;
    let spec = tensor_spectrum(primes, bound)?;
    let partial_sum = neumaier_sum(
        spec.eigenvalues.iter().map(|&(v, m)| m as f64 * (v as f64).powf(-s)),
    );
    let closed_form = primes.iter().map(|&p| 1.0 / (1.0 - (p as f64).powf(-s))).product();
    Ok(ZetaValue { s, bound, partial_sum, closed_form })
}

const BERNOULLI_EVEN: [(i64, i64); 10] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
];

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin summation.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    check_s(s)?;
    let n = 20u32;
    let nf = f64::from(n);
    let head = neumaier_sum((1..n).map(|k| f64::from(k).powf(-s)));
    let mut tail = nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    let mut rising = s;
    let mut fact = 2.0;
    let mut power = nf.powf(-s - 1.0);
    for (j, &(a, b)) in BERNOULLI_EVEN.iter().enumerate() {
        let k = 2 * (j + 1);
        tail += (a as f64 / b as f64) / fact * rising * power;
        rising *= (s + k as f64 - 1.0) * (s + k as f64);
        fact *= ((k + 1) * (k + 2)) as f64;
        power /= nf * nf;
    }
    Ok(head + tail)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TruncatedZeta {
    pub value: ZetaValue,
    /// Whether the spectrum enumerated from all primes up to the bound is `{1, …, bound}`.
    pub enumeration_complete: bool,
    /// `Σ_{n ≤ bound} n^{−s}` summed directly.
    pub direct_sum: f64,
}

/// Truncation of `ζ_U(s)` for `U = ⊗_p U_p` over all primes, compared with the
/// Riemann zeta function.
pub fn zeta_u_truncated(s: f64, bound: u64) -> Result<TruncatedZeta> {
    check_s(s)?;
    let primes = primes_up_to(bound);
    let spec = tensor_spectrum(&primes, bound)?;
    let enumeration_complete = spec.eigenvalues.len() as u64 == bound
        && spec.eigenvalues.iter().zip(1..).all(|(&(v, m), n)| v == n && m == 1);
    let partial_sum = neumaier_sum(
        spec.eigenvalues.iter().map(|&(v, m)| m as f64 * (v as f64).powf(-s)),
    );
    let direct_sum = neumaier_sum((1..=bound).map(|n| (n as f64).powf(-s)));
    Ok(TruncatedZeta {
        value: ZetaValue { s, bound, partial_sum, closed_form: riemann_zeta(s)? },
        enumeration_complete,
        direct_sum,
    })
}

/// `Σ_{n ≤ bound} n^{−s}` as an exact rational, for integer `s ≥ 2`.
pub fn zeta_partial_exact(s: u32, bound: u64) -> Result<BigRational> {
    if s < 2 {
        return Err(Error::SBelowAbscissa(f64::from(s)));
    }
    let mut acc = BigRational::zero();
    for n in 1..=bound {
        acc += BigRational::new(BigInt::one(), BigInt::from(n).pow(s));
    }
    Ok(acc)
}

/// A decomposable tensor `f_1 ⊗ ⋯ ⊗ f_n`; missing trailing factors stand for `1`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct TensorElement {
    pub factors: Vec<RatFun>,
}

/// `U_S` applied factor by factor.
pub fn tensor_apply(primes: &[u64], t: &TensorElement) -> Result<TensorElement> {
    check_primes(primes)?;
    if primes.len() != t.factors.len() {
        return Err(Error::InvalidArgument(format!(
            "{} operators for {} factors",
            primes.len(),
            t.factors.len()
        )));
    }
    let factors = primes
        .iter()
        .zip(&t.factors)
        .map(|(&p, f)| hecke::apply(f, p))
        .collect::<Result<_>>()?;
    Ok(TensorElement { factors })
}

/// The eigenvalue of `U_S` on `t`, when every factor is an eigenfunction of its operator.
pub fn tensor_eigenvalue(primes: &[u64], t: &TensorElement) -> Result<Option<CycNum>> {
    let image = tensor_apply(primes, t)?;
    let mut lambda = CycNum::one();
    for ((&p, f), g) in primes.iter().zip(&t.factors).zip(&image.factors) {
        match hecke::eigenvalue(f, p)? {
            Some(l) if *g == f.scale(&l) => lambda = &lambda * &l,
            _ => return Ok(None),
        }
    }
    Ok(Some(lambda))
}

/// `φ_{k_1} ⊗ ⋯ ⊗ φ_{k_n}`, an eigenfunction of `U_S` with eigenvalue `∏ p_i^{k_i}`.
pub fn tensor_witness(exponents: &[usize]) -> TensorElement {
    TensorElement { factors: exponents.iter().map(|&k| phi_k(k)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectra() {
        assert_eq!(spectrum_up(2, 4), vec![1, 2, 4, 8, 16]);
        assert_eq!(spectrum_up(3, 2), vec![1, 3, 9]);
        assert_eq!(spectrum_up(2, 0), vec![1]);
        assert!(spectrum_witness(3, 4).is_ok());
        assert_eq!(tensor_spectrum(&[2, 3], 12).unwrap().values(), vec![1, 2, 3, 4, 6, 8, 9, 12]);
        assert_eq!(tensor_spectrum(&[2], 10).unwrap().values(), vec![1, 2, 4, 8]);
        assert_eq!(tensor_spectrum(&[], 10).unwrap().values(), vec![1]);
        assert!(matches!(tensor_spectrum(&[2, 2], 10), Err(Error::DuplicatePrime(2))));
        assert!(matches!(tensor_spectrum(&[4], 10), Err(Error::NotPrime(4))));
    }

    #[test]
    fn euler_products() {
        let z = zeta_us(&[2], 2.0, 1 << 20).unwrap();
        assert!((z.closed_form - 4.0 / 3.0).abs() < 1e-15);
        assert!((z.partial_sum - 4.0 / 3.0).abs() < 1e-10);
        let z = zeta_us(&[2, 3], 2.0, 1_000_000).unwrap();
        assert!((z.partial_sum - 1.5).abs() < 1e-8);
        assert_eq!(zeta_us(&[], 2.0, 10).unwrap().partial_sum, 1.0);
        assert!(matches!(zeta_us(&[2], 1.0, 10), Err(Error::SBelowAbscissa(_))));
    }

    #[test]
    fn riemann() {
        let pi2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((riemann_zeta(2.0).unwrap() - pi2).abs() < 1e-14);
        assert!((riemann_zeta(4.0).unwrap() - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((riemann_zeta(1.5).unwrap() - 2.612_375_348_685_488).abs() < 1e-12);
        let t = zeta_u_truncated(3.0, 100).unwrap();
        assert!(t.enumeration_complete);
        assert!((t.value.partial_sum - t.direct_sum).abs() < 1e-15);
    }

    #[test]
    fn exact_partial() {
        let r = zeta_partial_exact(2, 10).unwrap();
        assert_eq!(r, BigRational::new(1968329.into(), 1270080.into()));
    }

    #[test]
    fn tensors() {
        let t = tensor_witness(&[2, 1]);
        assert_eq!(tensor_eigenvalue(&[2, 3], &t).unwrap(), Some(CycNum::from_int(12)));
        let bad = TensorElement { factors: vec![phi_k(1), "x/(1-x)^3".parse().unwrap()] };
        assert_eq!(tensor_eigenvalue(&[2, 3], &bad).unwrap(), None);
    }
}
