//! Certified numerics for explicit bounds on zeta and its logarithmic derivative
//! on the line Re s = 1.

pub mod bounds;
pub mod explicit_formula;
pub mod precision;
pub mod primes;
pub mod zeros;
pub mod zeta;
