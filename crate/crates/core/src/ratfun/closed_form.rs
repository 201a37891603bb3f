use num_complex::Complex64;

use super::{Poly, RatFun};
use crate::error::{Error, Result};
use crate::exactnum::intmath::{gcd, lcm, mobius, rem_euclid, totient};
use crate::exactnum::CycNum;
use crate::linalg::Matrix;

/// Largest root-of-unity order searched when factoring denominators.
pub const M_MAX: u64 = 210;

/// A pole γ = ζ_order^ell of a rational function, meaning a factor `(1 - γx)` of the
/// denominator with the given multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pole {
    pub order: u64,
    pub ell: u64,
    pub multiplicity: usize,
}

impl Pole {
    pub fn value(&self) -> CycNum {
        CycNum::zeta(self.order, self.ell as i64)
    }
}

/// `C · n^{m-1} · ζ_L^{ℓ n}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClosedTerm {
    pub coeff: CycNum,
    pub ell: u64,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClosedForm {
    pub level: u64,
    pub terms: Vec<ClosedTerm>,
}

impl ClosedForm {
    pub fn evaluate(&self, n: u64) -> CycNum {
        self.terms.iter().fold(CycNum::zero(), |acc, t| {
            let nn = CycNum::from_int(n as i64);
            let pw = nn.pow((t.m - 1) as i64).expect("nonnegative power");
            let z = CycNum::zeta(self.level, ((t.ell * (n % self.level)) % self.level) as i64);
            acc + &(&t.coeff * &pw) * &z
        })
    }

    /// Distinct values of `m` appearing in the terms, ascending.
    pub fn powers(&self) -> Vec<u32> {
        let mut ms: Vec<u32> = self.terms.iter().map(|t| t.m).collect();
        ms.sort_unstable();
        ms.dedup();
        ms
    }

    /// For each pole ζ_L^ℓ with a nonzero coefficient, the largest `m` attached to it;
    /// this is the multiplicity of the pole in the reduced rational function.
    pub fn reduced_multiplicities(&self) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|(l, _)| *l == t.ell) {
                Some(e) => e.1 = e.1.max(t.m),
                None => out.push((t.ell, t.m)),
            }
        }
        out.sort_unstable();
        out
    }
}

/// Factor a rational denominator as ∏ Φ_m^{e_m} (with Φ_1 = 1 − x) by trial division
/// over `m ≤ M_MAX`. Returns `(m, e_m)` pairs, or `None` when some factor is not
/// cyclotomic or a coefficient is irrational.
pub fn cyclotomic_factorization(den: &Poly) -> Option<Vec<(u64, usize)>> {
    if !den.is_rational() || den.is_zero() {
        return None;
    }
    let mut rem = den.clone();
    let mut out = Vec::new();
    for m in 1..=M_MAX {
        if rem.deg() == 0 {
            break;
        }
        if totient(m) as usize > rem.deg() {
            continue;
        }
        let phi = Poly::cyclotomic(m);
        let mut e = 0;
        while let Some(q) = rem.exact_div(&phi) {
            rem = q;
            e += 1;
        }
        if e > 0 {
            out.push((m, e));
        }
    }
    (rem.deg() == 0).then_some(out)
}

/// Express a rational denominator as ∏ (1 − x^{m_j}) when possible; the multiset is
/// returned sorted ascending.
pub(crate) fn one_minus_power_factors(den: &Poly) -> Option<Vec<usize>> {
    if den.deg() == 0 {
        return None;
    }
    let fac = cyclotomic_factorization(den)?;
    if !den.coeff(0).is_one() {
        return None;
    }
    let top = fac.iter().map(|&(m, _)| m).max()?;
    let e = |k: u64| fac.iter().find(|&&(m, _)| m == k).map_or(0i64, |&(_, e)| e as i64);
    let mut out = Vec::new();
    for m in 1..=top {
        let c: i64 = (1..=top / m).map(|j| mobius(j) * e(m * j)).sum();
        if c < 0 {
            return None;
        }
        out.extend(std::iter::repeat_n(m as usize, c as usize));
    }
    Some(out)
}

/// Poles of `den` (which must satisfy den(0) ≠ 0), sorted by `(order, ell)`.
pub fn poles(den: &Poly) -> Result<Vec<Pole>> {
    let fail = Err(Error::PoleNotRootOfUnity { max_order: M_MAX });
    if den.coeff(0).is_zero() {
        return Err(Error::DenVanishesAtZero);
    }
    if den.is_rational() {
        let Some(fac) = cyclotomic_factorization(den) else {
            return fail;
        };
        let mut out = Vec::new();
        for (m, e) in fac {
            for ell in (0..m).filter(|&l| gcd(l, m) == 1) {
                out.push(Pole { order: m, ell, multiplicity: e });
            }
        }
        out.sort_by_key(|p| (p.order, p.ell));
        return Ok(out);
    }
    let sqfree = den.exact_div(&den.gcd(&den.derivative())).expect("gcd divides");
    let Some(roots) = numeric_roots(&sqfree) else {
        return fail;
    };
    let mut out: Vec<Pole> = Vec::new();
    let mut total = 0;
    for r in roots {
        if (r.norm() - 1.0).abs() > 1e-6 {
            return fail;
        }
        let t = -r.arg() / (2.0 * std::f64::consts::PI);
        let Some((order, ell)) = (1..=M_MAX).find_map(|m| {
            let k = (t * m as f64).round();
            ((t * m as f64 - k).abs() < 1e-7).then(|| {
                let ell = rem_euclid(k as i64, m);
                let g = gcd(ell, m);
                (m / g, ell / g)
            })
        }) else {
            return fail;
        };
        if out.iter().any(|p| p.order == order && p.ell == ell) {
            return fail;
        }
        let x0 = CycNum::zeta(order, -(ell as i64));
        let mut q = den.clone();
        let mut mult = 0;
        while q.deg() > 0 {
            let (quot, rem) = synthetic_div(&q, &x0);
            if !rem.is_zero() {
                break;
            }
            q = quot;
            mult += 1;
        }
        if mult == 0 {
            return fail;
        }
        total += mult;
        out.push(Pole { order, ell, multiplicity: mult });
    }
    if total != den.deg() {
        return fail;
    }
    out.sort_by_key(|p| (p.order, p.ell));
    Ok(out)
}

fn synthetic_div(p: &Poly, x0: &CycNum) -> (Poly, CycNum) {
    let c = p.coeffs();
    let n = c.len();
    let mut q = vec![CycNum::zero(); n - 1];
    let mut acc = CycNum::zero();
    for k in (0..n).rev() {
        acc = &(&acc * x0) + &c[k];
        if k > 0 {
            q[k - 1] = acc.clone();
        }
    }
    (Poly::new(q), acc)
}

fn numeric_roots(p: &Poly) -> Option<Vec<Complex64>> {
    let d = p.deg();
    let lead = p.lead().approx();
    let lead = Complex64::new(lead.0, lead.1);
    let c: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|a| {
            let (re, im) = a.approx();
            Complex64::new(re, im) / lead
        })
        .collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(1.0, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                return None;
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    Some(z)
}

pub fn closed_form(f: &RatFun) -> Result<ClosedForm> {
    if f.is_zero() {
        return Ok(ClosedForm { level: 1, terms: Vec::new() });
    }
    let ps = poles(f.den())?;
    let big = ps.iter().fold(1, |acc, p| lcm(acc, p.order));
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for (j, p) in ps.iter().enumerate() {
        for s in 0..p.multiplicity {
            unknowns.push((j, s));
        }
    }
    let d = unknowns.len();
    let mut rows = Vec::with_capacity(d);
    for n in 0..d {
        let row = unknowns
            .iter()
            .map(|&(j, s)| {
                let p = &ps[j];
                let e = (p.ell * (big / p.order) * n as u64) % big;
                let z = CycNum::zeta(big, e as i64);
                if s == 0 {
                    z
                } else {
                    z.mul_int((n as i64).pow(s as u32))
                }
            })
            .collect();
        rows.push(row);
    }
    let sol = Matrix::from_rows(rows).solve(&f.series(d))?;
    let level = unknowns
        .iter()
        .zip(sol.iter())
        .filter(|(_, c)| !c.is_zero())
        .fold(1, |acc, (&(j, _), _)| lcm(acc, ps[j].order));
    let mut terms: Vec<ClosedTerm> = unknowns
        .iter()
        .zip(sol)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(j, s), c)| ClosedTerm {
            coeff: c.conductor_reduce(),
            ell: ps[j].ell * (level / ps[j].order),
            m: s as u32 + 1,
        })
        .collect();
    terms.sort_by_key(|t| (t.ell, t.m));
    Ok(ClosedForm { level, terms })
}

/// One summand `coeff · (x∂x)^k (x^j / (1 − x^L))`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct QpTerm {
    pub coeff: CycNum,
    pub k: u32,
    pub j: u64,
    pub level: u64,
}

pub fn qp_decompose(f: &RatFun) -> Result<Vec<QpTerm>> {
    let cf = closed_form(f)?;
    let l = cf.level;
    let mut out = Vec::new();
    for m in cf.powers() {
        for j in 0..l {
            let b = cf
                .terms
                .iter()
                .filter(|t| t.m == m)
                .fold(CycNum::zero(), |acc, t| {
                    acc + &t.coeff * &CycNum::zeta(l, ((t.ell * j) % l) as i64)
                });
            if !b.is_zero() {
                out.push(QpTerm { coeff: b.conductor_reduce(), k: m - 1, j, level: l });
            }
        }
    }
    Ok(out)
}

pub fn qp_assemble(terms: &[QpTerm]) -> RatFun {
    let pairs: Vec<(CycNum, RatFun)> = terms
        .iter()
        .map(|t| {
            let mut g = RatFun::new(
                Poly::monomial(CycNum::one(), t.j as usize),
                Poly::one_minus_x_pow(t.level as usize),
            )
            .expect("j < L");
            for _ in 0..t.k {
                g = g.weight_raise();
            }
            (t.coeff.clone(), g)
        })
        .collect();
    RatFun::linear_combine(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    fn check_against_series(f: &RatFun, n: usize) {
        let cf = closed_form(f).unwrap();
        let s = f.series(n);
        for (k, a) in s.iter().enumerate() {
            assert_eq!(&cf.evaluate(k as u64), a, "coefficient {k} of {f}");
        }
    }

    #[test]
    fn geometric_series() {
        let cf = closed_form(&rf("1/(1-x)")).unwrap();
        assert_eq!(cf.level, 1);
        assert_eq!(cf.terms, vec![ClosedTerm { coeff: CycNum::one(), ell: 0, m: 1 }]);
    }

    #[test]
    fn period_three() {
        let f = rf("x/(1+x+x^2)");
        let cf = closed_form(&f).unwrap();
        assert_eq!(cf.level, 3);
        assert_eq!(cf.powers(), vec![1]);
        check_against_series(&f, 40);
    }

    #[test]
    fn cosine_denominator() {
        let l = 7u64;
        let c = &CycNum::zeta(l, 1) + &CycNum::zeta(l, -1);
        let den = Poly::new(vec![CycNum::one(), -&c, CycNum::one()]);
        let f = RatFun::new(Poly::from_i64(&[2]), den).unwrap();
        let num = Poly::new(vec![CycNum::from_int(2), -&c]);
        let g = RatFun::new(num, f.den().clone()).unwrap();
        let cf = closed_form(&g).unwrap();
        assert_eq!(cf.level, l);
        for n in 0..30u64 {
            let expect = &CycNum::zeta(l, n as i64) + &CycNum::zeta(l, -(n as i64));
            assert_eq!(cf.evaluate(n), expect);
        }
    }

    #[test]
    fn non_reduced_input_drops_cancelled_poles() {
        let f = rf("(x-x^2)/(1-x^3)");
        assert_eq!(closed_form(&f).unwrap().level, 3);
        let g = rf("(1-x)/(1-x^2)");
        let cf = closed_form(&g).unwrap();
        assert_eq!(cf.level, 2);
        check_against_series(&g, 20);
    }

    #[test]
    fn rejects_other_poles() {
        assert!(matches!(
            closed_form(&rf("1/(1-2*x)")),
            Err(Error::PoleNotRootOfUnity { .. })
        ));
    }

    #[test]
    fn qp_examples() {
        let t = qp_decompose(&rf("x/(1-x)^2")).unwrap();
        assert_eq!(t, vec![QpTerm { coeff: CycNum::one(), k: 1, j: 0, level: 1 }]);
        let t = qp_decompose(&rf("(x+x^2)/(1-x^3)")).unwrap();
        assert_eq!(
            t,
            vec![
                QpTerm { coeff: CycNum::one(), k: 0, j: 1, level: 3 },
                QpTerm { coeff: CycNum::one(), k: 0, j: 2, level: 3 },
            ]
        );
        assert!(qp_decompose(&RatFun::zero()).unwrap().is_empty());
        let f = rf("(x+11*x^2+11*x^3+x^4)/(1-x)^5");
        assert_eq!(qp_assemble(&qp_decompose(&f).unwrap()), f);
    }

    #[test]
    fn one_minus_power_shapes() {
        assert_eq!(one_minus_power_factors(&Poly::from_i64(&[1, -1])), Some(vec![1]));
        let d = &Poly::one_minus_x_pow(7) * &Poly::one_minus_x_pow(2);
        assert_eq!(one_minus_power_factors(&d), Some(vec![2, 7]));
        assert_eq!(one_minus_power_factors(&Poly::from_i64(&[1, 1, 1])), None);
    }
}
