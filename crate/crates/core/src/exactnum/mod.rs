//! Exact coefficient arithmetic: rationals and cyclotomic fields Q(ζ_N).

pub mod cyclotomic;
mod cycnum;
pub mod intmath;

pub use cyclotomic::{cyclotomic_poly, MAX_CONDUCTOR};
pub use cycnum::CycNum;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(op: ArithOp, a: &CycNum, b: &CycNum) -> Result<CycNum> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div if b.is_zero() => Err(Error::DivByZero),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn cyc_conj(a: &CycNum) -> CycNum {
    a.conj()
}

pub fn cyc_is_real(a: &CycNum) -> bool {
    a.is_real()
}

/// Floating approximation. Values are computed in IEEE double precision, so requests
/// above 53 bits are answered at 53 bits.
pub fn cyc_approx(a: &CycNum, precision_bits: u32) -> Result<(f64, f64)> {
    if precision_bits < 53 {
        return Err(Error::InvalidArgument(format!(
            "precision_bits = {precision_bits} is below 53"
        )));
    }
    Ok(a.approx())
}

pub fn conductor_reduce(a: &CycNum) -> CycNum {
    a.conductor_reduce()
}
