//! Upward/downward rounded helpers for ball radii.
//!
//! Radii live in a fixed 64-bit MPFR float so that tiny or huge magnitudes
//! never underflow or overflow the way an `f64` radius would.

use rug::float::{Round, Special};
use rug::Float;
use std::cmp::Ordering;

pub(crate) const RAD_PREC: u32 = 64;

pub(crate) fn zero() -> Float {
    Float::new(RAD_PREC)
}

pub(crate) fn infinity() -> Float {
    Float::with_val(RAD_PREC, Special::Infinity)
}

fn fix_nan(x: Float) -> Float {
    if x.is_nan() {
        infinity()
    } else {
        x
    }
}

pub(crate) fn abs_up(x: &Float) -> Float {
    Float::with_val_round(RAD_PREC, &*x.as_abs(), Round::Up).0
}

pub(crate) fn abs_down(x: &Float) -> Float {
    Float::with_val_round(RAD_PREC, &*x.as_abs(), Round::Down).0
}

pub(crate) fn add_up(a: &Float, b: &Float) -> Float {
    fix_nan(Float::with_val_round(RAD_PREC, a + b, Round::Up).0)
}

pub(crate) fn sub_down(a: &Float, b: &Float) -> Float {
    Float::with_val_round(RAD_PREC, a - b, Round::Down).0
}

pub(crate) fn mul_up(a: &Float, b: &Float) -> Float {
    if a.is_zero() || b.is_zero() {
        return zero();
    }
    fix_nan(Float::with_val_round(RAD_PREC, a * b, Round::Up).0)
}

/// a / b rounded up; b must be a lower bound and positive.
pub(crate) fn div_up(a: &Float, b: &Float) -> Float {
    if a.is_zero() {
        return zero();
    }
    if *b <= 0 {
        return infinity();
    }
    fix_nan(Float::with_val_round(RAD_PREC, a / b, Round::Up).0)
}

pub(crate) fn sqrt_down(a: &Float) -> Float {
    if *a <= 0 {
        return zero();
    }
    Float::with_val_round(RAD_PREC, a.sqrt_ref(), Round::Down).0
}

pub(crate) fn expm1_up(a: &Float) -> Float {
    fix_nan(Float::with_val_round(RAD_PREC, a.exp_m1_ref(), Round::Up).0)
}

pub(crate) fn from_f64_up(x: f64) -> Float {
    Float::with_val_round(RAD_PREC, x, Round::Up).0
}

/// Bound on the rounding error committed when an exact result was rounded
/// to `mid`: |mid| 2^(1-p), or zero when MPFR reports an exact result.
pub(crate) fn rounding(mid: &Float, ord: Ordering) -> Float {
    if ord == Ordering::Equal || mid.is_zero() {
        return zero();
    }
    let mut r = abs_up(mid);
    r >>= mid.prec() - 1;
    r
}

/// 2^(1-p) as a radius-precision float.
pub(crate) fn unit(prec: u32) -> Float {
    let mut u = Float::with_val(RAD_PREC, 1);
    u >>= prec - 1;
    u
}
