use crate::exactnum::intmath::{divisors, gcd, lcm};
use crate::exactnum::CycNum;
use crate::ratfun::{Poly, M_MAX};

use super::matrix::is_admissible;

/// An orbit of `z ↦ z^p` together with complex conjugation on the primitive
/// `order`-th roots of unity `ζ^ℓ`, and the polynomial `∏ (1 − ζ^ℓ x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitBlock {
    pub order: u64,
    pub exponents: Vec<u64>,
    pub poly: Poly,
}

impl OrbitBlock {
    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_rational(&self) -> bool {
        self.poly.is_rational()
    }
}

/// An admissible denominator with its decomposition into orbit blocks.
#[derive(Clone, Debug)]
pub struct AdmissibleDen {
    pub poly: Poly,
    pub blocks: Vec<(OrbitBlock, usize)>,
    pub level: u64,
}

impl AdmissibleDen {
    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    /// The common multiplicity of all poles, if there is one.
    pub fn uniform_multiplicity(&self) -> Option<usize> {
        let k = self.blocks[0].1;
        self.blocks.iter().all(|(_, m)| *m == k).then_some(k)
    }

    pub fn is_rational(&self) -> bool {
        self.poly.is_rational()
    }

    /// Whether `x^d B(1/x) = (−1)^d B(x)`.
    pub fn satisfies_involution(&self) -> bool {
        involution_identity(&self.poly)
    }
}

pub fn involution_identity(b: &Poly) -> bool {
    let d = b.deg();
    let r = b.reverse(d);
    if d.is_multiple_of(2) {
        r == *b
    } else {
        r == -b
    }
}

fn orbit_blocks_of_order(p: u64, o: u64, max_size: usize) -> Vec<OrbitBlock> {
    let mut seen = vec![false; o as usize];
    let mut out = Vec::new();
    for l in 0..o {
        if gcd(l, o) != 1 || seen[l as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stack = vec![l % o];
        while let Some(e) = stack.pop() {
            if seen[e as usize] {
                continue;
            }
            seen[e as usize] = true;
            orbit.push(e);
            stack.push(e * p % o);
            stack.push((o - e) % o);
        }
        orbit.sort_unstable();
        if orbit.len() > max_size {
            continue;
        }
        let poly = if orbit.len() as u64 == crate::exactnum::intmath::totient(o) {
            Poly::cyclotomic(o)
        } else {
            let mut acc = Poly::one();
            for &e in &orbit {
                acc = &acc * &Poly::new(vec![CycNum::one(), -CycNum::zeta(o, e as i64)]);
            }
            Poly::new(acc.into_coeffs().into_iter().map(|c| c.conductor_reduce()).collect())
        };
        out.push(OrbitBlock { order: o, exponents: orbit, poly });
    }
    out
}

/// All orbit blocks for `p` of size at most `max_degree`, ordered by pole order.
/// Pole orders are limited to `M_MAX`.
pub fn orbit_blocks(p: u64, max_degree: usize) -> Vec<OrbitBlock> {
    let mut orders: Vec<u64> = Vec::new();
    let mut pk: u64 = 1;
    for _ in 1..=max_degree {
        pk = match pk.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
        for o in divisors(pk - 1) {
            if o <= M_MAX {
                orders.push(o);
            }
        }
    }
    orders.sort_unstable();
    orders.dedup();
    orders.into_iter().flat_map(|o| orbit_blocks_of_order(p, o, max_degree)).collect()
}

/// Admissible denominators for `U_p` of degree at most `max_degree`: products of orbit
/// blocks, each block carrying its own multiplicity. Sorted by degree, then coefficients.
pub fn admissible_denominator_data(p: u64, max_degree: usize) -> Vec<AdmissibleDen> {
    assert!(p >= 2, "p must be at least 2");
    let blocks = orbit_blocks(p, max_degree);
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    collect(&blocks, 0, max_degree, &mut chosen, &mut out);
    for d in &out {
        assert!(is_admissible(&d.poly, p), "orbit product {} fails the B-identity", d.poly);
    }
    out.sort_by(|a, b| a.poly.cmp_key(&b.poly));
    out
}

fn collect(
    blocks: &[OrbitBlock],
    start: usize,
    budget: usize,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<AdmissibleDen>,
) {
    if !chosen.is_empty() {
        let mut poly = Poly::one();
        let mut level = 1;
        for &(i, m) in chosen.iter() {
            poly = &poly * &blocks[i].poly.pow(m);
            level = lcm(level, blocks[i].order);
        }
        let blocks = chosen.iter().map(|&(i, m)| (blocks[i].clone(), m)).collect();
        out.push(AdmissibleDen { poly, blocks, level });
    }
    for i in start..blocks.len() {
        let s = blocks[i].size();
        for m in 1..=budget / s {
            chosen.push((i, m));
            collect(blocks, i + 1, budget - m * s, chosen, out);
            chosen.pop();
        }
    }
}

pub fn admissible_denominators(p: u64, max_degree: usize) -> Vec<Poly> {
    admissible_denominator_data(p, max_degree).into_iter().map(|d| d.poly).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let ds = admissible_denominators(2, 2);
        assert_eq!(
            ds,
            vec![Poly::from_i64(&[1, -1]), Poly::from_i64(&[1, -2, 1]), Poly::from_i64(&[1, 1, 1])]
        );
        assert!(!ds.contains(&Poly::from_i64(&[1, 1])));
    }

    #[test]
    fn counts() {
        assert_eq!(admissible_denominators(2, 6).len(), 21);
        assert_eq!(admissible_denominators(3, 6).len(), 78);
        let d = admissible_denominator_data(2, 8);
        assert_eq!(d.len(), 45);
        assert_eq!(d.iter().filter(|x| !x.is_rational()).count(), 2);
    }

    #[test]
    fn no_even_order_poles_for_two() {
        for d in admissible_denominator_data(2, 8) {
            assert!(d.blocks.iter().all(|(b, _)| b.order % 2 == 1));
            assert!(d.satisfies_involution());
        }
    }

    #[test]
    fn odd_multiplicity_at_minus_one() {
        let d = admissible_denominator_data(3, 2);
        let plus = d.iter().find(|x| x.poly == Poly::from_i64(&[1, 1])).unwrap();
        assert!(!plus.satisfies_involution());
    }
}
