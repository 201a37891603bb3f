use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{BigRat, CycNum};

/// Dense univariate polynomial over `CycNum`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<CycNum>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(CycNum::one())
    }

    pub fn x() -> Self {
        Self::monomial(CycNum::one(), 1)
    }

    pub fn constant(c: CycNum) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: CycNum, k: usize) -> Self {
        let mut v = vec![CycNum::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn new(mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| CycNum::from_int(v)).collect())
    }

    pub fn from_rats(c: &[BigRat]) -> Self {
        Self::new(c.iter().map(|v| CycNum::from_rat(v.clone())).collect())
    }

    /// `1 - x^m`.
    pub fn one_minus_x_pow(m: usize) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let mut v = vec![CycNum::zero(); m + 1];
        v[0] = CycNum::one();
        v[m] = CycNum::from_int(-1);
        Self::new(v)
    }

    /// Φ_m with the sign chosen so that the constant term is 1.
    pub fn cyclotomic(m: u64) -> Self {
        let c = crate::exactnum::cyclotomic_poly(m);
        let p = Self::from_i64(&c);
        if m == 1 {
            -p
        } else {
            p
        }
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<CycNum> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CycNum {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> CycNum {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        self.coeffs
            .iter()
            .rev()
            .fold(CycNum::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![CycNum::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Reduce modulo `x^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `P(x^p)`.
    pub fn compose_power(&self, p: usize) -> Poly {
        assert!(p >= 1, "power must be positive");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![CycNum::zero(); (self.coeffs.len() - 1) * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * p] = c.clone();
        }
        Poly { coeffs: v }
    }

    /// `P(c·x)`.
    pub fn scale_var(&self, c: &CycNum) -> Poly {
        let mut pw = CycNum::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &pw);
            pw = &pw * c;
        }
        Poly::new(v)
    }

    /// `x^d · P(1/x)`; requires `d ≥ deg P`.
    pub fn reverse(&self, d: usize) -> Poly {
        assert!(self.is_zero() || self.deg() <= d, "reversal degree too small");
        let mut v = vec![CycNum::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[d - i] = c.clone();
        }
        Poly::new(v)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivByZero);
        }
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = d.lead().inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![CycNum::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    if !di.is_zero() {
                        r[k + i] = &r[k + i] - &(&c * di);
                    }
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_div(self).is_some()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().inv().expect("nonzero lead"))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Scalar multiple with coprime integer coefficients and positive lowest nonzero
    /// coefficient; non-rational polynomials are scaled so that coefficient is 1.
    pub fn primitive(&self) -> Poly {
        let Some(v) = self.valuation() else {
            return Poly::zero();
        };
        if !self.is_rational() {
            return self.scale(&self.coeffs[v].inv().expect("nonzero"));
        }
        let rats: Vec<BigRat> = self.coeffs.iter().map(|c| c.to_rational().unwrap()).collect();
        let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        let g = ints
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints[v].is_negative() { -BigInt::one() } else { BigInt::one() };
        let scale = &g * sign;
        Poly::new(ints.into_iter().map(|c| CycNum::from_bigint(c / &scale)).collect())
    }

    /// Product of the distinct Galois conjugates of this polynomial; rational coefficients.
    pub fn galois_norm(&self) -> Poly {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.coeffs.iter().fold(1, |acc, c| crate::exactnum::intmath::lcm(acc, c.conductor()));
        let mut conjugates: Vec<Poly> = vec![self.clone()];
        for k in 2..n {
            if crate::exactnum::intmath::gcd(k, n) != 1 {
                continue;
            }
            let c = Poly::new(self.coeffs.iter().map(|a| a.embed(n).galois(k as i64)).collect());
            if !conjugates.contains(&c) {
                conjugates.push(c);
            }
        }
        let norm = conjugates.iter().fold(Poly::one(), |acc, c| &acc * c);
        Poly::new(norm.coeffs.into_iter().map(|c| c.conductor_reduce()).collect())
    }

    /// Number of distinct real roots of a polynomial with rational coefficients, by a
    /// Sturm sequence. `None` for irrational coefficients.
    pub fn real_root_count(&self) -> Option<usize> {
        if !self.is_rational() {
            return None;
        }
        if self.deg() == 0 {
            return Some(0);
        }
        let sign = |c: &CycNum| c.to_rational().map_or(0, |r| if r.is_positive() { 1 } else if r.is_negative() { -1 } else { 0 });
        let g = self.gcd(&self.derivative());
        let f = self.exact_div(&g).expect("gcd divides");
        let mut seq = vec![f.clone(), f.derivative()];
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].divmod(&seq[n - 1]).expect("nonzero");
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        let changes = |at_plus: bool| {
            let signs: Vec<i32> = seq
                .iter()
                .map(|q| {
                    let s = sign(&q.lead());
                    if !at_plus && q.deg() % 2 == 1 { -s } else { s }
                })
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        Some(changes(false) - changes(true))
    }

    /// Deterministic ordering key: coefficients lowest degree first.
    pub fn cmp_key(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(other.coeffs.iter()) {
                    let o = cmp_coeff(a, b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }

    pub(crate) fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            match c.to_rational() {
                Some(q) => {
                    let neg = q.is_negative();
                    let a = q.abs();
                    let body = if i == 0 {
                        a.to_string()
                    } else if a.is_one() {
                        mono
                    } else {
                        format!("{a}*{mono}")
                    };
                    if neg {
                        out.push('-');
                    } else if !out.is_empty() {
                        out.push('+');
                    }
                    out.push_str(&body);
                }
                None => {
                    if !out.is_empty() {
                        out.push('+');
                    }
                    out.push('{');
                    out.push_str(&c.to_string());
                    out.push('}');
                    if i > 0 {
                        out.push('*');
                        out.push_str(&mono);
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn cmp_coeff(a: &CycNum, b: &CycNum) -> Ordering {
    match (a.to_rational(), b.to_rational()) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => {
            let (na, ca) = a.sort_key();
            let (nb, cb) = b.sort_key();
            na.cmp(&nb).then_with(|| ca.cmp(&cb))
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![CycNum::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = &v[i + j] + &(a * b);
                }
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
