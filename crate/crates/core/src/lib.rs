//! Hecke operators `U_p f = Σ a_{pn} xⁿ` acting on rational power series with
//! exact cyclotomic coefficients.

pub mod error;
pub mod eigen;
pub mod exactnum;
pub mod hecke;
pub mod linalg;
pub mod ratfun;
pub mod zeta;

pub use error::{Error, Result};
pub use exactnum::{BigRat, CycNum};
pub use ratfun::{Poly, RatFun};
