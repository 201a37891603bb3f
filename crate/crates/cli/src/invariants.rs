//! A fixed, deterministic invariant suite over a small corpus of functions.

use hecke_core::eigen::phi_k;
use hecke_core::{hecke, zeta, CycNum, RatFun};

use crate::appendix::CheckItem;
use crate::canonical::canonical_form;

const CORPUS: [&str; 8] = [
    "1/(1-x)",
    "x/(1-x)^2",
    "(1+2*x)/(1+x+x^2)",
    "(3-x^2)/(1-x^4)",
    "x^2/((1+x)^2*(1-x))",
    "(2+x-x^3)/(1-x^5)",
    "(x+x^2+x^4)/(1-x^7)",
    "(1-x+5*x^3)/((1-x^3)*(1+x^2))",
];

fn item(name: String, pass: bool) -> CheckItem {
    CheckItem { name, pass, detail: String::new() }
}

fn check<F: Fn(&RatFun, u64, u64) -> hecke_core::Result<bool>>(name: &str, test: F) -> CheckItem {
    let mut failures = Vec::new();
    for s in CORPUS {
        let f: RatFun = s.parse().expect("corpus parses");
        for p in 2..=5 {
            for q in 2..=5 {
                if !test(&f, p, q).unwrap_or(false) {
                    failures.push(format!("{s} (p={p}, q={q})"));
                }
            }
        }
    }
    let pass = failures.is_empty();
    CheckItem { name: name.into(), pass, detail: failures.into_iter().take(3).collect::<Vec<_>>().join("; ") }
}

/// Operator identities on a fixed corpus, eigen witnesses and spectrum multiplicity.
pub fn seed_check() -> Vec<CheckItem> {
    let mut items = vec![
        check("U_p f(x^p) = f", |f, p, _| Ok(hecke::apply(&f.substitute_power(p as usize), p)? == *f)),
        check("U_p U_q = U_pq = U_q U_p", |f, p, q| {
            let pq = hecke::apply(&hecke::apply(f, q)?, p)?;
            let qp = hecke::apply(&hecke::apply(f, p)?, q)?;
            Ok(pq == qp && pq == hecke::apply(f, p * q)?)
        }),
        check("U_p x d/dx = p x d/dx U_p", |f, p, _| {
            let lhs = hecke::apply(&f.weight_raise(), p)?;
            let rhs = hecke::apply(f, p)?.weight_raise().scale(&CycNum::from_int(p as i64));
            Ok(lhs == rhs)
        }),
        check("sifting agrees with series", |f, p, _| {
            let a = f.series(30 * p as usize);
            let b = hecke::apply(f, p)?.series(30);
            Ok((0..30).all(|n| b[n] == a[p as usize * n]))
        }),
        check("canonical form preserves f", |f, _, _| Ok(canonical_form(f)?.to_ratfun()? == *f)),
    ];
    for p in 2..=5u64 {
        let ok = (0..=6).all(|k| zeta::spectrum_witness(p, k).is_ok());
        items.push(item(format!("phi_k eigen for U_{p}, k <= 6"), ok));
    }
    let spec = zeta::tensor_spectrum(&[2, 3, 5, 7], 10_000);
    items.push(item(
        "tensor spectrum multiplicity one".into(),
        spec.is_ok_and(|s| s.eigenvalues.iter().all(|&(_, m)| m == 1)),
    ));
    let t = zeta::tensor_witness(&[1, 2]);
    items.push(item(
        "phi_1 (x) phi_2 eigen for U_2 (x) U_3".into(),
        zeta::tensor_eigenvalue(&[2, 3], &t).is_ok_and(|l| l == Some(CycNum::from_int(18))),
    ));
    items.push(item("phi_0 = 1/(1-x)".into(), phi_k(0) == "1/(1-x)".parse().expect("parses")));
    items
}
