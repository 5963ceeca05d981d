//! Midpoint-radius ("ball") arithmetic over MPFR.
//!
//! Every operation returns a ball that contains the exact image of its
//! inputs. Midpoints carry the working precision; radii are 64-bit floats
//! rounded upward.

mod complex;
mod decimal;
mod elementary;
pub(crate) mod mag;
mod real;

pub use complex::BallComplex;
pub use decimal::ball_from_decimal;
pub use elementary::{ball_elementary, BallValue, ElementaryOp};
pub use real::BallReal;

pub const DEFAULT_PREC: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BallError {
    #[error("{op}: argument ball meets the excluded domain")]
    Domain { op: &'static str },
    #[error("malformed decimal numeral {0:?}")]
    Parse(String),
    #[error("{op}: expected {expected} arguments, got {got}")]
    Arity { op: &'static str, expected: usize, got: usize },
}
