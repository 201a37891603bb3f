use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::{data, CycData};
use super::intmath::{factorize, gcd, lcm, rem_euclid, totient};
use crate::error::{Error, Result};

/// An element of the cyclotomic field Q(ζ_N) in the power basis modulo Φ_N.
///
/// Internally the coefficients share one positive integer denominator. Conductors
/// congruent to 2 mod 4 are folded to N/2, and rational values always carry conductor 1.
#[derive(Clone, Debug)]
pub struct CycNum {
    n: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { n: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        CycNum { n: 1, num: vec![v], den: BigInt::one() }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rat(r: BigRational) -> Self {
        let (p, q) = (r.numer().clone(), r.denom().clone());
        CycNum { n: 1, num: vec![p], den: q }
    }

    /// ζ_n^k for any integer exponent.
    pub fn zeta(n: u64, k: i64) -> Self {
        Self::from_terms(n, [(rem_euclid(k, n), BigRational::one())])
    }

    /// Σ coeffs[i]·ζ_n^i; the list may be longer than φ(n).
    pub fn from_coeffs(n: u64, coeffs: &[BigRational]) -> Self {
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u64, c.clone())),
        )
    }

    fn from_terms<I: IntoIterator<Item = (u64, BigRational)>>(n: u64, terms: I) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let mut terms: Vec<(u64, BigRational)> = terms.into_iter().collect();
        let mut n = n;
        if n % 4 == 2 {
            let m = n / 2;
            terms = terms
                .into_iter()
                .map(|(k, c)| {
                    let c = if k % 2 == 1 { -c } else { c };
                    let e = if m == 1 { 0 } else { (k % n) * m.div_ceil(2) % m };
                    (e, c)
                })
                .collect();
            n = m;
        }
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut v = vec![BigInt::zero(); n as usize];
        for (k, c) in terms {
            let scaled = c.numer() * (&den / c.denom());
            v[(k % n) as usize] += scaled;
        }
        let cd = data(n);
        Self::normalize(n, reduce_big(&cd, v), den)
    }

    fn normalize(n: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return Self::zero();
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in num.iter() {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                den = &den / &g;
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
            }
        }
        if n > 1 && num[1..].iter().all(|c| c.is_zero()) {
            num.truncate(1);
            return CycNum { n: 1, num, den };
        }
        CycNum { n, num, den }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Power-basis coefficients as rationals, length φ(conductor).
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.num[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.n == 1 {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.n == 1 && self.den.is_one() {
            self.num[0].to_i64()
        } else {
            None
        }
    }

    /// Embed into Q(ζ_m) for a multiple `m` of the conductor.
    pub fn embed(&self, m: u64) -> CycNum {
        assert!(m.is_multiple_of(self.n), "conductor {} does not divide {}", self.n, m);
        let m = if m % 4 == 2 { m / 2 } else { m };
        if m == self.n || self.n == 1 {
            let mut c = self.clone();
            c.n = m;
            if self.n == 1 && m != 1 {
                let mut num = vec![BigInt::zero(); totient(m) as usize];
                num[0] = self.num[0].clone();
                c.num = num;
            }
            return c;
        }
        let t = (m / self.n) as usize;
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[i * t] = c.clone();
        }
        let cd = data(m);
        CycNum { n: m, num: reduce_big(&cd, v), den: self.den.clone() }
    }

    fn unify(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let m = lcm(a.n, b.n);
        (a.embed(m), b.embed(m))
    }

    fn scale(&self, p: &BigInt, q: &BigInt) -> CycNum {
        if p.is_zero() {
            return Self::zero();
        }
        let num = self.num.iter().map(|c| c * p).collect();
        Self::normalize(self.n, num, &self.den * q)
    }

    pub fn mul_int(&self, k: i64) -> CycNum {
        self.scale(&BigInt::from(k), &BigInt::one())
    }

    pub fn div_int(&self, k: i64) -> CycNum {
        assert!(k != 0, "division by zero");
        self.scale(&BigInt::one(), &BigInt::from(k))
    }

    pub fn mul_rat(&self, r: &BigRational) -> CycNum {
        self.scale(r.numer(), r.denom())
    }

    fn add_impl(&self, other: &CycNum, negate: bool) -> CycNum {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let (a, b) = if self.n == other.n {
            (self.clone(), other.clone())
        } else {
            Self::unify(self, other)
        };
        let sign = if negate { -BigInt::one() } else { BigInt::one() };
        if a.den == b.den {
            let num = a
                .num
                .iter()
                .zip(b.num.iter())
                .map(|(x, y)| if negate { x - y } else { x + y })
                .collect();
            return Self::normalize(a.n, num, a.den);
        }
        let l = a.den.lcm(&b.den);
        let fa = &l / &a.den;
        let fb = &l / &b.den * sign;
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| x * &fa + y * &fb)
            .collect();
        Self::normalize(a.n, num, l)
    }

    fn mul_impl(&self, other: &CycNum) -> CycNum {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.n == 1 {
            return other.scale(&self.num[0], &self.den);
        }
        if other.n == 1 {
            return self.scale(&other.num[0], &other.den);
        }
        let (a, b) = if self.n == other.n {
            (self.clone(), other.clone())
        } else {
            Self::unify(self, other)
        };
        let cd = data(a.n);
        let den = &a.den * &b.den;
        if let Some(v) = mul_small(&cd, &a.num, &b.num) {
            return Self::normalize(a.n, v.into_iter().map(BigInt::from).collect(), den);
        }
        let phi = cd.phi;
        let mut v = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Self::normalize(a.n, reduce_big(&cd, v), den)
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivByZero);
        }
        if self.n == 1 {
            return Ok(Self::normalize(1, vec![self.den.clone()], self.num[0].clone()));
        }
        let mut conjugates: Vec<CycNum> = vec![self.clone()];
        for k in 2..self.n {
            if gcd(k, self.n) == 1 {
                let c = self.galois(k as i64);
                if !conjugates.contains(&c) {
                    conjugates.push(c);
                }
            }
        }
        let cofactor = conjugates[1..].iter().fold(Self::one(), |acc, c| &acc * c);
        let norm = self * &cofactor;
        match norm.to_rational() {
            Some(r) => Ok(cofactor.mul_rat(&r.recip())),
            None => Ok(self.inv_euclid()),
        }
    }

    fn inv_euclid(&self) -> CycNum {
        let cd = data(self.n);
        let phi_poly: Vec<BigRational> = cd
            .poly
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a_poly: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let s = rat_poly_inverse_mod(&a_poly, &phi_poly);
        Self::from_coeffs(self.n, &s).scale(&self.den, &BigInt::one())
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<CycNum> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// The Galois automorphism ζ ↦ ζ^k; `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> CycNum {
        if self.n == 1 {
            return self.clone();
        }
        let k = rem_euclid(k, self.n);
        assert_eq!(gcd(k, self.n), 1, "exponent must be a unit");
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[((i as u64 * k) % self.n) as usize] = c.clone();
        }
        let cd = data(self.n);
        Self::normalize(self.n, reduce_big(&cd, v), self.den.clone())
    }

    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.n == 1 || self.conj() == *self
    }

    /// Double-precision value `(re, im)`.
    pub fn approx(&self) -> (f64, f64) {
        if self.n == 1 {
            return (rat_to_f64(&self.num[0], &self.den), 0.0);
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rat_to_f64(c, &self.den);
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (self.n as f64);
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }

    /// The same value expressed over the smallest possible conductor.
    pub fn conductor_reduce(&self) -> CycNum {
        let mut cur = self.clone();
        'outer: loop {
            if cur.n == 1 {
                return cur;
            }
            for (q, _) in factorize(cur.n) {
                let mut m = cur.n / q;
                if m % 4 == 2 {
                    m /= 2;
                }
                if let Some(r) = cur.restrict(m) {
                    cur = r;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    fn restrict(&self, m: u64) -> Option<CycNum> {
        let t = self.n / m;
        let simple = factorize(t).iter().all(|(q, _)| m.is_multiple_of(*q));
        if simple {
            let t = t as usize;
            if self
                .num
                .iter()
                .enumerate()
                .any(|(i, c)| i % t != 0 && !c.is_zero())
            {
                return None;
            }
            let num: Vec<BigInt> = self.num.iter().step_by(t).cloned().collect();
            return Some(Self::normalize(m, num, self.den.clone()));
        }
        let sol = embedding_solver(self.n, m);
        let rhs: Vec<BigRational> = sol
            .rows
            .iter()
            .map(|&r| BigRational::from_integer(self.num[r].clone()))
            .collect();
        let y: Vec<BigRational> = sol
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(rhs.iter())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        let cand = Self::from_coeffs(m, &y).scale(&BigInt::one(), &self.den);
        if cand.embed(self.n) == *self {
            Some(cand)
        } else {
            None
        }
    }

    /// Key for deterministic ordering: conductor and coefficients after reduction.
    pub fn sort_key(&self) -> (u64, Vec<BigRational>) {
        let r = self.conductor_reduce();
        (r.n, r.coeffs())
    }
}

fn rat_to_f64(p: &BigInt, q: &BigInt) -> f64 {
    BigRational::new(p.clone(), q.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

fn reduce_big(cd: &CycData, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let n = cd.n as usize;
    if v.len() > n {
        for k in (n..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if !c.is_zero() {
                v[k % n] += c;
            }
        }
        v.truncate(n);
    }
    let phi = cd.phi;
    for k in (phi..v.len()).rev() {
        let c = std::mem::take(&mut v[k]);
        if c.is_zero() {
            continue;
        }
        for &(i, ci) in cd.sparse.iter() {
            v[k - phi + i] -= &c * ci;
        }
    }
    v.resize(phi, BigInt::zero());
    v
}

fn to_small(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|c| c.to_i64()).collect()
}

fn mul_small(cd: &CycData, a: &[BigInt], b: &[BigInt]) -> Option<Vec<i128>> {
    let a = to_small(a)?;
    let b = to_small(b)?;
    let phi = cd.phi;
    let n = cd.n as usize;
    let mut v = vec![0i128; (2 * phi - 1).max(n)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                let k = i + j;
                v[k] = v[k].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    for k in (n..v.len()).rev() {
        let c = std::mem::take(&mut v[k]);
        if c != 0 {
            v[k % n] = v[k % n].checked_add(c)?;
        }
    }
    v.truncate(n);
    for k in (phi..n).rev() {
        let c = std::mem::take(&mut v[k]);
        if c == 0 {
            continue;
        }
        for &(i, ci) in cd.sparse.iter() {
            let d = c.checked_mul(ci as i128)?;
            v[k - phi + i] = v[k - phi + i].checked_sub(d)?;
        }
    }
    v.truncate(phi);
    Some(v)
}

fn trim_rat(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rat_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim_rat(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                r[k + i] = &r[k + i] - &c * bi;
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    trim_rat(&mut r);
    (q, r)
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] = &v[i + j] + x * y;
        }
    }
    v
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut v = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        v[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        v[i] = &v[i] - y;
    }
    trim_rat(&mut v);
    v
}

/// Inverse of `a` modulo the irreducible `m` by the extended Euclidean algorithm.
fn rat_poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim_rat(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r) = rat_divmod(&r0, &r1);
        let s2 = rat_sub(&s0, &rat_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let c = r1[0].clone();
    s1.iter().map(|x| x / &c).collect()
}

struct EmbeddingSolver {
    rows: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
}

type SolverCache = Mutex<HashMap<(u64, u64), Arc<EmbeddingSolver>>>;

fn embedding_solver(n: u64, m: u64) -> Arc<EmbeddingSolver> {
    static CACHE: OnceLock<SolverCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&(n, m)) {
        return s.clone();
    }
    let cd = data(n);
    let phi_m = totient(m) as usize;
    let t = (n / m) as usize;
    // columns: images of ζ_m^i
    let cols: Vec<Vec<BigInt>> = (0..phi_m)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n as usize];
            v[(i * t) % n as usize] = BigInt::one();
            reduce_big(&cd, v)
        })
        .collect();
    // greedily choose independent rows
    let mut rows = Vec::new();
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in 0..cd.phi {
        let mut row: Vec<BigRational> = cols
            .iter()
            .map(|c| BigRational::from_integer(c[r].clone()))
            .collect();
        for (b, &pc) in basis.iter().zip(pivots.iter()) {
            if !row[pc].is_zero() {
                let f = row[pc].clone() / &b[pc];
                for (x, y) in row.iter_mut().zip(b.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
        if let Some(pc) = row.iter().position(|x| !x.is_zero()) {
            rows.push(r);
            basis.push(row);
            pivots.push(pc);
            if rows.len() == phi_m {
                break;
            }
        }
    }
    let mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|c| BigRational::from_integer(c[r].clone()))
                .collect()
        })
        .collect();
    let inverse = invert_rat_matrix(mat);
    let solver = Arc::new(EmbeddingSolver { rows, inverse });
    cache
        .lock()
        .unwrap()
        .entry((n, m))
        .or_insert(solver)
        .clone()
}

fn invert_rat_matrix(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let k = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero()).expect("singular embedding");
        a.swap(col, piv);
        inv.swap(col, piv);
        let pv = a[col][col].clone();
        for j in 0..k {
            a[col][j] = &a[col][j] / &pv;
            inv[col][j] = &inv[col][j] / &pv;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..k {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    inv
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        if self.n == 1 || other.n == 1 {
            return false;
        }
        let (a, b) = Self::unify(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for CycNum {
    fn from(r: BigRational) -> Self {
        Self::from_rat(r)
    }
}

impl From<BigInt> for CycNum {
    fn from(v: BigInt) -> Self {
        Self::from_bigint(v)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { n: self.n, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.conductor_reduce();
        if let Some(q) = r.to_rational() {
            return write!(f, "{q}");
        }
        write!(f, "Q(zeta {}): ", r.n)?;
        let mut first = true;
        for (i, c) in r.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let body = if i == 0 {
                a.to_string()
            } else if a.is_one() {
                mono
            } else {
                format!("{a}*{mono}")
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl std::str::FromStr for CycNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("Q(zeta") {
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("missing ')' in {s:?}")))?;
            let n: u64 = rest[..close]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad conductor in {s:?}")))?;
            if n == 0 || n > super::cyclotomic::MAX_CONDUCTOR {
                return Err(Error::Parse(format!("conductor {n} out of range")));
            }
            let body = rest[close + 1..]
                .trim_start()
                .strip_prefix(':')
                .ok_or_else(|| Error::Parse(format!("missing ':' in {s:?}")))?;
            let terms = parse_z_terms(body)?;
            return Ok(Self::from_terms(n, terms));
        }
        parse_rational(s).map(Self::from_rat)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_z_terms(body: &str) -> Result<Vec<(u64, BigRational)>> {
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty cyclotomic expression".into()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {body:?}")));
    }
    pieces.push((neg, cur));
    let mut out = Vec::new();
    for (neg, term) in pieces {
        let (coef, mono) = match term.find('z') {
            None => (term.as_str(), ""),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                (c, &term[pos..])
            }
        };
        let mut c = if coef.is_empty() {
            BigRational::one()
        } else {
            parse_rational(coef)?
        };
        if neg {
            c = -c;
        }
        let e = if mono.is_empty() {
            0
        } else if mono == "z" {
            1
        } else {
            mono.strip_prefix("z^")
                .and_then(|e| e.parse::<u64>().ok())
                .ok_or_else(|| Error::Parse(format!("bad monomial {mono:?}")))?
        };
        out.push((e, c));
    }
    Ok(out)
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycNum {
        CycNum::zeta(n, k)
    }

    #[test]
    fn roots_of_unity_relations() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNum::from_int(-1));
        assert_eq!(&z(3, 1) + &z(3, 2), CycNum::from_int(-1));
        assert_eq!(CycNum::one().checked_div(&z(5, 1)).unwrap(), z(5, 4));
        assert_eq!(z(5, 1).conj(), z(5, 4));
        assert_eq!(CycNum::from_frac(3, 2).conj(), CycNum::from_frac(3, 2));
        assert_eq!((&z(3, 1) - &z(3, 2)).conj(), &z(3, 2) - &z(3, 1));
    }

    #[test]
    fn reality() {
        assert!((&z(5, 1) + &z(5, 4)).is_real());
        assert!(!z(5, 1).is_real());
        assert!(CycNum::zero().is_real());
    }

    #[test]
    fn approximations() {
        let (re, im) = z(4, 1).approx();
        assert!(re.abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
        let (re, im) = z(3, 1).approx();
        assert!((re + 0.5).abs() < 1e-15 && (im - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(CycNum::from_frac(7, 4).approx(), (1.75, 0.0));
    }

    #[test]
    fn conductor_reduction() {
        let a = z(6, 3);
        assert_eq!(a.conductor_reduce().conductor(), 1);
        assert_eq!(a, CycNum::from_int(-1));
        let b = z(4, 1).conductor_reduce();
        assert_eq!(b.conductor(), 4);
        let c = z(8, 2).conductor_reduce();
        assert_eq!(c.conductor(), 4);
        assert_eq!(c, z(4, 1));
        let d = (&z(15, 5) + &z(15, 10)).conductor_reduce();
        assert_eq!(d, CycNum::from_int(-1));
        let e = z(60, 12).embed(60).conductor_reduce();
        assert_eq!(e.conductor(), 5);
        let f = (&z(63, 9) * &z(63, 7)).conductor_reduce();
        assert_eq!(f, z(63, 16));
        assert_eq!(z(12, 4).conductor_reduce().conductor(), 3);
    }

    #[test]
    fn cyclotomic_sums() {
        for n in 1..=30u64 {
            assert!(z(n, n as i64).is_one(), "zeta_{n}^{n}");
            let s = (0..n).fold(CycNum::zero(), |acc, j| acc + z(n, j as i64));
            if n == 1 {
                assert!(s.is_one());
            } else {
                assert!(s.is_zero(), "sum of {n}-th roots");
            }
        }
    }

    #[test]
    fn inverse_large_conductor() {
        let a = &(&z(124, 1) + &z(124, 7)) + &CycNum::from_frac(2, 3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn text_round_trip() {
        let a = &(&CycNum::one() + &z(5, 1)) - &z(5, 3);
        assert_eq!(a.to_string(), "Q(zeta 5): 1 + z - z^3");
        let b: CycNum = "Q(zeta 5): 1 + z - z^3".parse().unwrap();
        assert_eq!(a, b);
        let c: CycNum = "-3/4".parse().unwrap();
        assert_eq!(c.to_string(), "-3/4");
        let d: CycNum = "Q(zeta 12): 1/2*z^2 - z^5".parse().unwrap();
        assert_eq!(d.to_string().parse::<CycNum>().unwrap(), d);
    }

    #[test]
    fn twice_odd_conductor_folds() {
        assert_eq!(z(10, 1).conductor(), 5);
        assert_eq!(z(2, 1), CycNum::from_int(-1));
        let w = z(10, 1);
        assert!(w.pow(10).unwrap().is_one());
        assert!(!w.pow(5).unwrap().is_one());
    }
}
