use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::intmath::divisors;

/// Largest conductor accepted by the cyclotomic arithmetic.
pub const MAX_CONDUCTOR: u64 = 5040;

#[derive(Debug)]
pub(crate) struct CycData {
    pub n: u64,
    pub phi: usize,
    /// Coefficients of Φ_n, lowest degree first, length `phi + 1`.
    pub poly: Vec<i64>,
    /// Nonzero `(index, coefficient)` pairs of Φ_n below the leading term.
    pub sparse: Vec<(usize, i64)>,
}

fn table() -> &'static Mutex<HashMap<u64, Arc<CycData>>> {
    static TABLE: OnceLock<Mutex<HashMap<u64, Arc<CycData>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn data(n: u64) -> Arc<CycData> {
    assert!(
        (1..=MAX_CONDUCTOR).contains(&n),
        "conductor {n} outside 1..={MAX_CONDUCTOR}"
    );
    if let Some(d) = table().lock().unwrap().get(&n) {
        return d.clone();
    }
    let poly = compute(n);
    let phi = poly.len() - 1;
    let sparse = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let entry = Arc::new(CycData { n, phi, poly, sparse });
    table()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(entry)
        .clone()
}

fn compute(n: u64) -> Vec<i64> {
    let n_us = n as usize;
    let mut rem: Vec<i128> = vec![0; n_us + 1];
    rem[0] = -1;
    rem[n_us] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = data(d);
        rem = exact_monic_div(&rem, &phi_d.poly);
    }
    rem.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

fn exact_monic_div(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut r = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = r[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, &di) in den.iter().enumerate() {
                r[k + i] -= c * di as i128;
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    data(n).poly.clone()
}
