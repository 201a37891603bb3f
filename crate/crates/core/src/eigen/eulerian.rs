use num_bigint::BigInt;
use num_traits::One;

use crate::exactnum::CycNum;
use crate::ratfun::{Poly, RatFun};

/// Stirling number of the second kind `S(k, l)`.
pub fn stirling2(k: usize, l: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for n in 1..=k {
        let mut next = vec![BigInt::from(0); n + 1];
        for j in 1..=n {
            let keep = if j < n { &row[j] * BigInt::from(j) } else { BigInt::from(0) };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row.get(l).cloned().unwrap_or_default()
}

/// `A_k(x) = Σ_l S(k,l)·l!·x^l·(1−x)^{k−l}`; `A_0 = 1`.
pub fn eulerian_poly(k: usize) -> Poly {
    let mut acc = Poly::zero();
    let mut fact = BigInt::one();
    for l in 0..=k {
        if l > 0 {
            fact *= BigInt::from(l);
        }
        let c = stirling2(k, l) * &fact;
        if c == BigInt::from(0) {
            continue;
        }
        let term = &Poly::monomial(CycNum::from_bigint(c), l) * &Poly::one_minus_x_pow(1).pow(k - l);
        acc = &acc + &term;
    }
    acc
}

/// `(x∂x)^k (1/(1−x))`, written over `(1−x)^{k+1}`.
pub fn phi_k(k: usize) -> RatFun {
    let mut f = RatFun::new(Poly::one(), Poly::one_minus_x_pow(1)).expect("valid");
    for _ in 0..k {
        f = f.weight_raise();
    }
    let den = Poly::one_minus_x_pow(1).pow(k + 1);
    let factor = den.exact_div(f.den()).expect("denominator is a power of 1 - x");
    RatFun::new(f.num() * &factor, den).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        assert_eq!(stirling2(0, 0), BigInt::from(1));
        assert_eq!(stirling2(3, 0), BigInt::from(0));
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian_poly(1), Poly::from_i64(&[0, 1]));
        assert_eq!(eulerian_poly(3), Poly::from_i64(&[0, 1, 4, 1]));
        assert_eq!(eulerian_poly(5), Poly::from_i64(&[0, 1, 26, 66, 26, 1]));
        for k in 0..9 {
            assert_eq!(phi_k(k).num(), &eulerian_poly(k), "k = {k}");
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_k(0), "1/(1-x)".parse().unwrap());
        assert_eq!(phi_k(4).num(), &Poly::from_i64(&[0, 1, 11, 11, 1]));
        assert_eq!(phi_k(6).num(), &Poly::from_i64(&[0, 1, 57, 302, 302, 57, 1]));
    }
}
