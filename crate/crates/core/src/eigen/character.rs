use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactnum::intmath::{gcd, lcm, multiplicative_order};
use crate::exactnum::CycNum;
use crate::hecke;
use crate::ratfun::{Poly, RatFun};

/// A Dirichlet character, stored by its values on `0..modulus`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DirichletChar {
    modulus: u64,
    values: Vec<CycNum>,
}

impl DirichletChar {
    pub fn new(modulus: u64, values: Vec<CycNum>) -> Result<Self> {
        if modulus == 0 || values.len() != modulus as usize {
            return Err(Error::NotACharacter(format!(
                "expected {modulus} values, got {}",
                values.len()
            )));
        }
        let l = modulus;
        for j in 0..l {
            let unit = gcd(j, l) == 1;
            if unit == values[j as usize].is_zero() {
                return Err(Error::NotACharacter(format!("value at {j} inconsistent with gcd")));
            }
        }
        if !values[(1 % l) as usize].is_one() {
            return Err(Error::NotACharacter("value at 1 is not 1".into()));
        }
        for a in 0..l {
            for b in a..l {
                let ab = (a * b % l) as usize;
                if values[ab] != &values[a as usize] * &values[b as usize] {
                    return Err(Error::NotACharacter(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(DirichletChar { modulus, values })
    }

    pub fn principal(modulus: u64) -> Self {
        let values = (0..modulus)
            .map(|j| if gcd(j, modulus) == 1 { CycNum::one() } else { CycNum::zero() })
            .collect();
        DirichletChar { modulus, values }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value(&self, n: u64) -> CycNum {
        self.values[(n % self.modulus) as usize].clone()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.is_rational())
    }

    pub fn is_principal(&self) -> bool {
        *self == Self::principal(self.modulus)
    }
}

fn units(l: u64) -> Vec<u64> {
    (0..l).filter(|&j| gcd(j, l) == 1).collect()
}

/// The character `a ↦ ±1` according to whether `a` is a square unit mod `l`, when the
/// squares form a subgroup of index two.
pub fn quadratic_character(l: u64) -> Option<DirichletChar> {
    let us = units(l);
    let mut squares: Vec<u64> = us.iter().map(|&a| a * a % l).collect();
    squares.sort_unstable();
    squares.dedup();
    if squares.len() * 2 != us.len() {
        return None;
    }
    let values = (0..l)
        .map(|j| {
            if gcd(j, l) != 1 {
                CycNum::zero()
            } else if squares.binary_search(&(j % l)).is_ok() {
                CycNum::one()
            } else {
                CycNum::from_int(-1)
            }
        })
        .collect();
    DirichletChar::new(l, values).ok()
}

/// Every Dirichlet character mod `l`, principal first.
pub fn all_characters(l: u64) -> Vec<DirichletChar> {
    if l == 1 {
        return vec![DirichletChar::principal(1)];
    }
    let us = units(l);
    let exponent = us.iter().fold(1, |acc, &a| lcm(acc, multiplicative_order(a, l).unwrap_or(1)));
    let mut gens: Vec<u64> = Vec::new();
    let mut span: Vec<u64> = vec![1 % l];
    for &a in &us {
        if span.contains(&a) {
            continue;
        }
        gens.push(a);
        let mut frontier = span.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = x * g % l;
                if !span.contains(&y) {
                    span.push(y);
                    frontier.push(y);
                }
            }
        }
    }
    let mut out = Vec::new();
    let total = (exponent as usize).pow(gens.len() as u32);
    for code in 0..total {
        let mut c = code;
        let exps: Vec<u64> = gens
            .iter()
            .map(|_| {
                let e = (c % exponent as usize) as u64;
                c /= exponent as usize;
                e
            })
            .collect();
        let mut table: HashMap<u64, u64> = HashMap::from([(1 % l, 0)]);
        let mut frontier = vec![1 % l];
        let mut ok = true;
        while let Some(x) = frontier.pop() {
            for (g, e) in gens.iter().zip(&exps) {
                let y = x * g % l;
                let v = (table[&x] + e) % exponent;
                match table.get(&y) {
                    Some(&w) if w != v => ok = false,
                    Some(_) => {}
                    None => {
                        table.insert(y, v);
                        frontier.push(y);
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let values = (0..l)
            .map(|j| match table.get(&j) {
                Some(&e) => CycNum::zeta(exponent, e as i64),
                None => CycNum::zero(),
            })
            .collect();
        if let Ok(chi) = DirichletChar::new(l, values) {
            out.push(chi);
        }
    }
    out
}

/// `Σ χ(n) n^{κ−1} xⁿ` as a rational function over `1 − x^L`.
pub fn char_eigenfunction(chi: &DirichletChar, kappa: usize) -> Result<RatFun> {
    if kappa == 0 {
        return Err(Error::InvalidArgument("kappa must be positive".into()));
    }
    let l = chi.modulus() as usize;
    let mut f = RatFun::new(Poly::new(chi.values().to_vec()), Poly::one_minus_x_pow(l))?;
    for _ in 1..kappa {
        f = f.weight_raise();
    }
    for p in 2..=chi.modulus() + 2 {
        let mag = CycNum::from_int(p as i64).pow(kappa as i64 - 1)?;
        let expected = f.scale(&(&chi.value(p) * &mag));
        if hecke::apply(&f, p)? != expected {
            return Err(Error::InternalMismatch(format!("U_{p} fails on character eigenfunction {f}")));
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic() {
        let chi = quadratic_character(3).unwrap();
        assert_eq!(chi.value(2), CycNum::from_int(-1));
        assert_eq!(chi.value(4), CycNum::one());
        assert!(quadratic_character(8).is_none());
        let chi7 = quadratic_character(7).unwrap();
        let sq: Vec<u64> = (1..7).filter(|&j| chi7.value(j).is_one()).collect();
        assert_eq!(sq, vec![1, 2, 4]);
    }

    #[test]
    fn character_counts() {
        for l in [1u64, 3, 4, 5, 7, 8, 9, 12, 15] {
            let chars = all_characters(l);
            assert_eq!(chars.len() as u64, crate::exactnum::intmath::totient(l), "mod {l}");
            assert!(chars[0].is_principal());
        }
        assert_eq!(all_characters(5).iter().filter(|c| c.is_real()).count(), 2);
    }

    #[test]
    fn rejects_non_characters() {
        let v = vec![CycNum::zero(), CycNum::one(), CycNum::one(), CycNum::from_int(-1)];
        assert!(DirichletChar::new(4, v).is_err());
    }

    #[test]
    fn eigenfunctions() {
        assert_eq!(char_eigenfunction(&DirichletChar::principal(1), 1).unwrap(), rf("1/(1-x)"));
        let chi = quadratic_character(3).unwrap();
        assert_eq!(char_eigenfunction(&chi, 1).unwrap(), rf("x/(1+x+x^2)"));
        let g = char_eigenfunction(&chi, 2).unwrap();
        assert!(g.ratio_to(&rf("(x-x^3)/(1+x+x^2)^2")).is_some());
    }
}
