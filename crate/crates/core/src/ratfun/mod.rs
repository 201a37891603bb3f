//! Rational functions A/B with deg A < deg B and B(0) ≠ 0, viewed as power series.

mod closed_form;
mod parse;
mod poly;

use std::fmt;

pub use closed_form::{
    closed_form, poles, qp_assemble, qp_decompose, ClosedForm, ClosedTerm, Pole, QpTerm, M_MAX,
};
pub use parse::parse_ratfun;
pub use poly::Poly;

use crate::error::{Error, Result};
use crate::exactnum::CycNum;

#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    /// α_1..α_d of `a_{n+d} + α_1 a_{n+d-1} + … + α_d a_n = 0`.
    pub alphas: Vec<CycNum>,
    /// a_0..a_{d-1}.
    pub initial: Vec<CycNum>,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.alphas.len()
    }
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(Error::DenVanishesAtZero);
        }
        if !num.is_zero() && num.deg() >= den.deg() {
            return Err(Error::DegreeViolation { num: num.deg(), den: den.deg() });
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let c0 = den.coeff(0);
        if c0.is_one() {
            return RatFun { num, den };
        }
        let inv = c0.inv().expect("nonzero constant term");
        RatFun { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    /// `c/(1 - x^m)`.
    pub fn geometric(c: CycNum, m: usize) -> Self {
        Self::new(Poly::constant(c), Poly::one_minus_x_pow(m)).expect("valid")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Degree of the stored denominator.
    pub fn degree(&self) -> usize {
        self.den.deg()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational() && self.den.is_rational()
    }

    /// Taylor coefficients a_0..a_{n-1}.
    pub fn series(&self, n: usize) -> Vec<CycNum> {
        let d = self.den.deg();
        let alphas = self.den.coeffs();
        let mut a: Vec<CycNum> = Vec::with_capacity(n);
        for k in 0..n {
            let mut v = self.num.coeff(k);
            for i in 1..=k.min(d) {
                let al = &alphas[i];
                if al.is_zero() {
                    continue;
                }
                let prev = &a[k - i];
                if !prev.is_zero() {
                    v = &v - &(al * prev);
                }
            }
            a.push(v);
        }
        a
    }

    pub fn to_recurrence(&self) -> Recurrence {
        let d = self.den.deg();
        Recurrence {
            alphas: (1..=d).map(|i| self.den.coeff(i)).collect(),
            initial: self.series(d),
        }
    }

    pub fn from_recurrence(r: &Recurrence) -> Result<Self> {
        let d = r.order();
        if r.initial.len() != d {
            return Err(Error::InvalidArgument(format!(
                "recurrence of order {d} needs {d} initial values"
            )));
        }
        if d == 0 {
            return Ok(Self::zero());
        }
        if r.alphas[d - 1].is_zero() {
            return Err(Error::InvalidArgument("alpha_d must be nonzero".into()));
        }
        let mut den = vec![CycNum::one()];
        den.extend(r.alphas.iter().cloned());
        let den = Poly::new(den);
        let num = (&den * &Poly::new(r.initial.clone())).truncate(d);
        Self::new(num, den)
    }

    /// `x·f'(x)`, acting on coefficients as `a_n ↦ n·a_n`.
    pub fn weight_raise(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let b = &self.den;
        let db = b.derivative();
        let g = b.gcd(&db);
        let bq = b.exact_div(&g).expect("gcd divides");
        let bp = db.exact_div(&g).expect("gcd divides");
        let num = (&(&self.num.derivative() * &bq) - &(&self.num * &bp)).shift(1);
        let den = b * &bq;
        Self::new(num, den).expect("x f' stays in the space")
    }

    /// `f(x^p)`.
    pub fn substitute_power(&self, p: usize) -> Self {
        assert!(p >= 1, "p must be positive");
        if self.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.compose_power(p), den: self.den.compose_power(p) }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn linear_combine(pairs: &[(CycNum, RatFun)]) -> Self {
        let mut num = Poly::zero();
        let mut den = Poly::one();
        for (c, f) in pairs {
            if c.is_zero() || f.is_zero() {
                continue;
            }
            let g = den.gcd(&f.den);
            let bg = f.den.exact_div(&g).expect("gcd divides");
            let dg = den.exact_div(&g).expect("gcd divides");
            num = &(&num * &bg) + &(&f.num * &dg).scale(c);
            den = &den * &bg;
        }
        if num.is_zero() {
            return Self::zero();
        }
        Self::new(num, den).expect("combination stays in the space")
    }

    /// `f(1/x)` as an element of the space; requires `f(0) = 0`.
    pub fn invert_x(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if !self.num.coeff(0).is_zero() {
            return Err(Error::NotInSpace(
                "constant term is nonzero, so f(1/x) does not vanish at infinity".into(),
            ));
        }
        let d = self.den.deg();
        Self::new(self.num.reverse(d), self.den.reverse(d))
    }

    /// Cancel the greatest common divisor of numerator and denominator.
    pub fn reduce(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.num.gcd(&self.den);
        if g.deg() == 0 {
            return self.clone();
        }
        let num = self.num.exact_div(&g).expect("gcd divides");
        let den = self.den.exact_div(&g).expect("gcd divides");
        Self::normalized(num, den)
    }

    /// Scalar `c` with `self = c·other`, if one exists.
    pub fn ratio_to(&self, other: &RatFun) -> Option<CycNum> {
        if other.is_zero() {
            return self.is_zero().then(CycNum::zero);
        }
        let n = self.degree() + other.degree() + 1;
        let a = self.series(n);
        let b = other.series(n);
        let k = b.iter().position(|c| !c.is_zero())?;
        let c = a[k].checked_div(&b[k]).ok()?;
        (*self == other.scale(&c)).then_some(c)
    }

    /// Scale so that the numerator is a primitive integer polynomial with positive
    /// lowest coefficient (rational case) or has lowest coefficient 1.
    pub fn primitive(&self) -> Self {
        let Some(v) = self.num.valuation() else {
            return Self::zero();
        };
        let p = self.num.primitive();
        let c = p.coeff(v).checked_div(&self.num.coeff(v)).expect("nonzero");
        self.scale(&c)
    }

    /// The stored form with the denominator written as a product of `(1 - x^m)` factors
    /// when it has that shape.
    fn den_text(&self) -> String {
        if let Some(ms) = closed_form::one_minus_power_factors(&self.den) {
            let mut parts: Vec<String> = Vec::new();
            let mut i = 0;
            while i < ms.len() {
                let m = ms[i];
                let e = ms[i..].iter().take_while(|&&x| x == m).count();
                let base = if m == 1 { "(1-x)".to_string() } else { format!("(1-x^{m})") };
                parts.push(if e == 1 { base } else { format!("{base}^{e}") });
                i += e;
            }
            if parts.len() == 1 {
                return parts.pop().unwrap();
            }
            return format!("({})", parts.join("*"));
        }
        format!("({})", self.den)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFun {}

impl std::ops::Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::linear_combine(&[(CycNum::one(), self.clone()), (CycNum::one(), rhs.clone())])
    }
}

impl std::ops::Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::linear_combine(&[(CycNum::one(), self.clone()), (CycNum::from_int(-1), rhs.clone())])
    }
}

impl std::ops::Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        self.scale(&CycNum::from_int(-1))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "({})/{}", self.num, self.den_text())
    }
}

impl std::str::FromStr for RatFun {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_ratfun(s)
    }
}

impl serde::Serialize for RatFun {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn ratfun_new(num: Poly, den: Poly) -> Result<RatFun> {
    RatFun::new(num, den)
}

pub fn series(f: &RatFun, n_terms: usize) -> Vec<CycNum> {
    f.series(n_terms)
}

pub fn from_recurrence(r: &Recurrence) -> Result<RatFun> {
    RatFun::from_recurrence(r)
}

pub fn weight_raise(f: &RatFun) -> RatFun {
    f.weight_raise()
}

pub fn substitute_power(f: &RatFun, p: usize) -> RatFun {
    f.substitute_power(p)
}

pub fn linear_combine(pairs: &[(CycNum, RatFun)]) -> RatFun {
    RatFun::linear_combine(pairs)
}

pub fn invert_x(f: &RatFun) -> Result<RatFun> {
    f.invert_x()
}
