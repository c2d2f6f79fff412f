//! Exact commutative algebra for symbolic powers, monomial multiplier and
//! test ideals, and blowups.

pub mod asymptotic;
pub mod blowup;
pub mod budget;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod poly;
pub mod script;
pub mod snc;
pub mod sympow;
pub mod verify;

pub use error::{Error, Result};
