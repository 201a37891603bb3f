use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::hecke::{self, denominator_power_map};
use crate::linalg::Matrix;
use crate::ratfun::{poles, Poly, RatFun};

fn normalized(b: &Poly) -> Result<Poly> {
    let c0 = b.coeff(0);
    if c0.is_zero() {
        return Err(Error::DenVanishesAtZero);
    }
    Ok(if c0.is_one() { b.clone() } else { b.scale(&c0.inv()?) })
}

/// Whether `B(x^p) = ∏_j B(ζ_p^j x)`. The right side always equals `B_p(x^p)` where
/// `B_p` is the power-mapped denominator, so the test compares `B_p` with `B`.
pub fn is_admissible(b: &Poly, p: u64) -> bool {
    match normalized(b) {
        Ok(b) => b.deg() > 0 && denominator_power_map(&b, p) == b,
        Err(_) => false,
    }
}

fn extract(q: &Poly, d: usize, p: u64) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    let qd = q.deg() as i64;
    for k in 0..d {
        for j in 0..d {
            let idx = p as i64 * k as i64 - j as i64;
            if (0..=qd).contains(&idx) {
                m.set(k, j, q.coeff(idx as usize).conductor_reduce());
            }
        }
    }
    m
}

/// The matrix 𝔅 with `λc = 𝔅c` for eigenfunctions `Σ c_k x^k / B`: its entry
/// `(k, m)` is the coefficient of `x^{pk−m}` in `B(x^p)/B(x)`.
pub fn matrix_b(b: &Poly, p: u64) -> Result<Matrix> {
    let b = normalized(b)?;
    if !is_admissible(&b, p) {
        return Err(Error::AdmissibilityFailed { p });
    }
    let q = b
        .compose_power(p as usize)
        .exact_div(&b)
        .ok_or(Error::AdmissibilityFailed { p })?;
    Ok(extract(&q, b.deg(), p))
}

/// Same matrix, built from the product `∏_{ℓ=1}^{p−1} B(ζ_p^ℓ x)` expanded over Q(ζ_p).
pub fn matrix_b_expanded(b: &Poly, p: u64) -> Result<Matrix> {
    let b = normalized(b)?;
    if hecke::norm_product(&b, p) != b.compose_power(p as usize) {
        return Err(Error::AdmissibilityFailed { p });
    }
    let mut q = Poly::one();
    for l in 1..p {
        q = &q * &b.scale_var(&CycNum::zeta(p, l as i64));
    }
    Ok(extract(&q, b.deg(), p))
}

/// The (d−1)×(d−1) matrix `((−1)^k α_{2j−k})_{j,k=1..d−1}` acting on `c_1..c_{d−1}`.
pub fn appendix_matrix_p2(b: &Poly) -> Result<Matrix> {
    let b = normalized(b)?;
    let d = b.deg();
    let alpha = |i: i64| {
        if (0..=d as i64).contains(&i) {
            b.coeff(i as usize)
        } else {
            CycNum::zero()
        }
    };
    for l in 1..=d as i64 {
        let s = (0..=2 * l).fold(CycNum::zero(), |acc, j| {
            let t = &alpha(j) * &alpha(2 * l - j);
            if j % 2 == 0 {
                acc + t
            } else {
                acc - t
            }
        });
        if s != alpha(l) {
            return Err(Error::AdmissibilityFailed { p: 2 });
        }
    }
    let sign = if d % 2 == 0 { 1 } else { -1 };
    for j in 0..=d as i64 {
        if alpha(j) != alpha(d as i64 - j).mul_int(sign) {
            return Err(Error::AdmissibilityFailed { p: 2 });
        }
    }
    let n = d.saturating_sub(1);
    let mut m = Matrix::zeros(n, n);
    for j in 1..=n as i64 {
        for k in 1..=n as i64 {
            let v = alpha(2 * j - k);
            m.set((j - 1) as usize, (k - 1) as usize, if k % 2 == 0 { v } else { -v });
        }
    }
    Ok(m)
}

/// The minor of 𝔅 on indices `1..d`, i.e. the action on numerators with `c_0 = 0`.
pub fn constant_free_minor(m: &Matrix) -> Matrix {
    let idx: Vec<usize> = (1..m.rows()).collect();
    m.submatrix(&idx, &idx)
}

/// Pole multiplicities of `b`, one entry per distinct pole.
pub fn pole_multiplicities(b: &Poly) -> Result<Vec<usize>> {
    Ok(poles(b)?.into_iter().map(|p| p.multiplicity).collect())
}

/// The common pole multiplicity of `b`.
pub fn uniform_weight(b: &Poly) -> Result<usize> {
    let ms = pole_multiplicities(b)?;
    let k = ms[0];
    if ms.iter().all(|&m| m == k) {
        Ok(k)
    } else {
        Err(Error::NonUniformMultiplicity(ms))
    }
}

pub fn candidate_eigenvalues(p: u64, b: &Poly) -> Result<Vec<CycNum>> {
    if !is_admissible(b, p) {
        return Err(Error::AdmissibilityFailed { p });
    }
    let kappa = uniform_weight(b)?;
    let mag = CycNum::from_bigint(num_bigint::BigInt::from(p).pow(kappa as u32 - 1));
    Ok(vec![mag.clone(), -mag])
}

fn scaled_basis(vectors: Vec<Vec<CycNum>>, offset: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = vectors
        .into_iter()
        .map(|v| {
            let mut c = vec![CycNum::zero(); offset];
            c.extend(v);
            Poly::new(c).primitive()
        })
        .collect();
    out.sort_by(|a, b| a.cmp_key(b));
    out
}

/// Basis of numerators `A` with `U_p(A/B) = λ·A/B`.
pub fn eigenspace(b: &Poly, p: u64, lambda: &CycNum, constant_term_zero: bool) -> Result<Vec<Poly>> {
    if lambda.is_zero() {
        return Err(Error::InvalidArgument("eigenvalue must be nonzero".into()));
    }
    let b = normalized(b)?;
    let full = matrix_b(&b, p)?;
    let (m, offset) = if constant_term_zero { (constant_free_minor(&full), 1) } else { (full, 0) };
    let basis = scaled_basis(m.sub_scalar(lambda).nullspace(), offset);
    for a in &basis {
        let f = RatFun::new(a.clone(), b.clone())?;
        if hecke::apply(&f, p)? != f.scale(lambda) {
            return Err(Error::InternalMismatch(format!("{f} fails U_{p} f = {lambda} f")));
        }
    }
    Ok(basis)
}

/// Root structure of the characteristic polynomial of 𝔅 with respect to the values
/// 0 and ±p^k allowed for eigenvalues.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MatrixSpectrum {
    pub charpoly: Poly,
    /// `(λ, algebraic multiplicity)` for nonzero roots of the form ±p^k.
    pub roots: Vec<(CycNum, usize)>,
    pub zero_multiplicity: usize,
    /// Factor of the characteristic polynomial left after removing those roots;
    /// constant exactly when no other eigenvalue occurs.
    pub residual: Poly,
    /// Distinct real roots of the Galois norm of `residual`; zero rules out any other
    /// real eigenvalue.
    pub residual_real_roots: usize,
}

impl MatrixSpectrum {
    pub fn only_allowed_values(&self) -> bool {
        self.residual.deg() == 0
    }

    /// No real eigenvalue other than 0 and ±p^k.
    pub fn only_allowed_real_values(&self) -> bool {
        self.residual_real_roots == 0
    }
}

fn divide_root(p: &Poly, r: &CycNum) -> Option<Poly> {
    if !p.eval(r).is_zero() {
        return None;
    }
    p.exact_div(&Poly::new(vec![-r, CycNum::one()]))
}

pub fn matrix_spectrum(m: &Matrix, p: u64) -> MatrixSpectrum {
    let charpoly = Poly::new(m.charpoly());
    let mut rest = charpoly.clone();
    let mut zero_multiplicity = 0;
    while let Some(q) = divide_root(&rest, &CycNum::zero()) {
        rest = q;
        zero_multiplicity += 1;
    }
    let mut roots = Vec::new();
    let mut mag = CycNum::one();
    for _ in 0..=m.rows() {
        for sign in [1i64, -1] {
            let r = mag.mul_int(sign);
            let mut e = 0;
            while let Some(q) = divide_root(&rest, &r) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                roots.push((r, e));
            }
        }
        mag = mag.mul_int(p as i64);
    }
    let residual_real_roots = rest.galois_norm().real_root_count().expect("norm is rational");
    MatrixSpectrum { charpoly, roots, zero_multiplicity, residual: rest, residual_real_roots }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn product_route_agrees() {
        for (b, q) in [
            (p(&[1, -1]), 2),
            (p(&[1, -2, 1]), 2),
            (p(&[1, 1, 1]), 2),
            (&p(&[1, 1, 1]) * &p(&[1, -2, 1]), 2),
            (p(&[1, 0, 0, -1]), 2),
            (p(&[1, 1, 1]).pow(2), 5),
            (p(&[1, 0, 1]), 3),
        ] {
            assert_eq!(matrix_b(&b, q).unwrap(), matrix_b_expanded(&b, q).unwrap());
        }
    }

    #[test]
    fn degree_two_double_pole() {
        let m = matrix_b(&p(&[1, -2, 1]), 2).unwrap();
        let sp = matrix_spectrum(&m, 2);
        assert!(sp.roots.iter().any(|(r, _)| *r == CycNum::from_int(2)));
        let e = eigenspace(&p(&[1, -2, 1]), 2, &CycNum::from_int(2), false).unwrap();
        assert_eq!(e, vec![p(&[0, 1])]);
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(matches!(matrix_b(&p(&[1, 1]), 2), Err(Error::AdmissibilityFailed { p: 2 })));
        assert!(is_admissible(&p(&[1, 1]), 3));
    }

    #[test]
    fn appendix_forms_match_minor() {
        for b in [
            p(&[1, 0, 0, -1]),
            &p(&[1, -1]) * &p(&[1, 1, 1]),
            p(&[1, 1, 1]).pow(2),
            p(&[1, -1]).pow(5),
            (&p(&[1, -1]) * &p(&[1, 1, 1])).pow(2),
            p(&[1, 0, 0, 1, 0, 0, 1]),
        ] {
            let minor = constant_free_minor(&matrix_b(&b, 2).unwrap());
            assert_eq!(appendix_matrix_p2(&b).unwrap(), minor, "B = {b}");
        }
    }

    #[test]
    fn candidates() {
        let b = p(&[1, -1]).pow(4);
        assert_eq!(candidate_eigenvalues(2, &b).unwrap(), vec![CycNum::from_int(8), CycNum::from_int(-8)]);
        assert_eq!(
            candidate_eigenvalues(2, &p(&[1, 1, 1])).unwrap(),
            vec![CycNum::one(), CycNum::from_int(-1)]
        );
        assert_eq!(
            candidate_eigenvalues(3, &p(&[1, -2, 1])).unwrap(),
            vec![CycNum::from_int(3), CycNum::from_int(-3)]
        );
        let mixed = &p(&[1, -1]) * &p(&[1, 1, 1]).pow(2);
        assert!(matches!(candidate_eigenvalues(2, &mixed), Err(Error::NonUniformMultiplicity(_))));
    }

    #[test]
    fn eigenspace_examples() {
        let e = eigenspace(&p(&[1, -1]).pow(4), 2, &CycNum::from_int(8), true).unwrap();
        assert_eq!(e, vec![p(&[0, 1, 4, 1])]);
        let e = eigenspace(&p(&[1, 1, 1]).pow(2), 2, &CycNum::from_int(-2), true).unwrap();
        assert_eq!(e, vec![p(&[0, 1, 0, -1])]);
        let b = &p(&[1, -1]).pow(2) * &p(&[1, 1, 1]).pow(2);
        let e = eigenspace(&b, 2, &CycNum::from_int(2), true).unwrap();
        assert_eq!(e.len(), 2);
        let span_has = |target: &Poly| {
            let rows: Vec<Vec<CycNum>> = e
                .iter()
                .chain(std::iter::once(target))
                .map(|q| (0..6).map(|i| q.coeff(i)).collect())
                .collect();
            Matrix::from_rows(rows).rank() == 2
        };
        assert!(span_has(&p(&[0, 0, 0, 1])));
        assert!(span_has(&p(&[0, 1, 2, 0, 2, 1])));
    }
}
