use super::mag::{self, RAD_PREC};
use super::BallError;
use rug::float::{Constant, Round};
use rug::{Float, Rational};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A real number known to lie in `[mid - rad, mid + rad]`.
///
/// `mid` carries the working precision; `rad` is a 64-bit upper bound.
#[derive(Clone, PartialEq)]
pub struct BallReal {
    mid: Float,
    rad: Float,
}

impl fmt::Debug for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {:.3e}]", self.mid.to_f64(), self.rad.to_f64())
    }
}

impl fmt::Display for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize;
        let digits = digits.clamp(3, 40);
        write!(
            f,
            "{} +/- {:.3e}",
            self.mid.to_string_radix(10, Some(digits)),
            self.rad.to_f64_round(Round::Up)
        )
    }
}

fn rounded<T>(prec: u32, value: T) -> (Float, Float)
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let (mid, ord) = Float::with_val_round(prec, value, Round::Nearest);
    let err = mag::rounding(&mid, ord);
    (mid, err)
}

impl BallReal {
    /// Ball from an explicit midpoint and radius; the radius is rounded up
    /// and its sign is discarded.
    pub fn new(mid: Float, rad: &Float) -> Self {
        Self { mid, rad: mag::abs_up(rad) }
    }

    pub fn exact(mid: Float) -> Self {
        Self { mid, rad: mag::zero() }
    }

    /// Ball covering the whole real line.
    pub fn indeterminate(prec: u32) -> Self {
        Self { mid: Float::new(prec), rad: mag::infinity() }
    }

    /// Ball from an `f64` midpoint (exact when prec >= 53) and radius.
    pub fn from_f64_mid_rad(mid: f64, rad: f64, prec: u32) -> Self {
        let (m, err) = rounded(prec, mid);
        Self { mid: m, rad: mag::add_up(&mag::from_f64_up(rad.abs()), &err) }
    }

    /// Nearest `f64` midpoint and an `f64` radius that still covers the ball.
    pub fn to_f64_mid_rad(&self) -> (f64, f64) {
        let m = self.mid.to_f64();
        let shift = Float::with_val(self.mid.prec().max(64), &self.mid - m);
        let rad = mag::add_up(&self.rad, &mag::abs_up(&shift));
        (m, rad.to_f64_round(Round::Up))
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(Float::with_val(prec, 1))
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        let (mid, rad) = rounded(prec, x);
        Self { mid, rad }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        let (mid, rad) = rounded(prec, n);
        Self { mid, rad }
    }

    pub fn from_u64(n: u64, prec: u32) -> Self {
        let (mid, rad) = rounded(prec, n);
        Self { mid, rad }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (mid, rad) = rounded(prec, q);
        Self { mid, rad }
    }

    /// Ball containing the interval `[lo, hi]`.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, lo + hi, Round::Nearest);
        let mid = mid / 2u32;
        let _ = ord;
        let a = Float::with_val_round(RAD_PREC, &mid - lo, Round::Up).0;
        let b = Float::with_val_round(RAD_PREC, hi - &mid, Round::Up).0;
        let rad = if a > b { a } else { b };
        Self { mid, rad: mag::abs_up(&rad) }
    }

    pub fn from_f64_endpoints(lo: f64, hi: f64, prec: u32) -> Self {
        let lo = Float::with_val(53, lo);
        let hi = Float::with_val(53, hi);
        Self::from_endpoints(&lo, &hi, prec)
    }

    /// Euler's constant via MPFR.
    pub fn euler_gamma(prec: u32) -> Self {
        let (mid, rad) = rounded(prec, Constant::Euler);
        Self { mid, rad }
    }

    pub fn ln2(prec: u32) -> Self {
        let (mid, rad) = rounded(prec, Constant::Log2);
        Self { mid, rad }
    }

    /// pi, obtained as the principal argument of -1.
    pub fn pi(prec: u32) -> Self {
        let y = Self::zero(prec);
        let x = Self::from_i64(-1, prec);
        Self::atan2(&y, &x).expect("atan2(0, -1) is on the principal branch")
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64_round(Round::Up)
    }

    pub fn lower(&self) -> Float {
        Float::with_val_round(self.prec().max(RAD_PREC), &self.mid - &self.rad, Round::Down).0
    }

    pub fn upper(&self) -> Float {
        Float::with_val_round(self.prec().max(RAD_PREC), &self.mid + &self.rad, Round::Up).0
    }

    pub fn lower_f64(&self) -> f64 {
        self.lower().to_f64_round(Round::Down)
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper().to_f64_round(Round::Up)
    }

    /// Upper bound on |x| over the ball.
    pub fn mag_upper(&self) -> Float {
        mag::add_up(&mag::abs_up(&self.mid), &self.rad)
    }

    /// Lower bound on |x| over the ball (zero if the ball meets zero).
    pub fn mag_lower(&self) -> Float {
        let m = mag::sub_down(&mag::abs_down(&self.mid), &self.rad);
        if m < 0 {
            mag::zero()
        } else {
            m
        }
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.is_finite() && self.mid > 0 && self.lower() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.is_finite() && self.mid < 0 && self.upper() < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.is_finite() && self.lower() >= 0
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        self.is_finite() && self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.contains_float(&Float::with_val(53, x))
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        if !self.is_finite() {
            return false;
        }
        let lo = self.lower().to_rational().expect("finite");
        let hi = self.upper().to_rational().expect("finite");
        lo <= *q && *q <= hi
    }

    /// True when `other` lies inside `self`.
    pub fn contains(&self, other: &BallReal) -> bool {
        self.is_finite() && other.is_finite() && self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &BallReal) -> bool {
        self.is_finite() && other.is_finite() && self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    pub fn intersect(&self, other: &BallReal) -> Option<BallReal> {
        if !self.overlaps(other) {
            return None;
        }
        let lo = {
            let (a, b) = (self.lower(), other.lower());
            if a > b { a } else { b }
        };
        let hi = {
            let (a, b) = (self.upper(), other.upper());
            if a < b { a } else { b }
        };
        let prec = self.prec().max(other.prec());
        Some(Self::from_endpoints(&lo, &hi, prec))
    }

    /// Smallest ball containing both.
    pub fn union(&self, other: &BallReal) -> BallReal {
        let lo = {
            let (a, b) = (self.lower(), other.lower());
            if a < b { a } else { b }
        };
        let hi = {
            let (a, b) = (self.upper(), other.upper());
            if a > b { a } else { b }
        };
        Self::from_endpoints(&lo, &hi, self.prec().max(other.prec()))
    }

    pub fn with_prec(&self, prec: u32) -> BallReal {
        let (mid, err) = rounded(prec, &self.mid);
        Self { mid, rad: mag::add_up(&self.rad, &err) }
    }

    /// Widen the radius by `err` (absolute value is used).
    pub fn add_error(&self, err: &Float) -> BallReal {
        Self { mid: self.mid.clone(), rad: mag::add_up(&self.rad, &mag::abs_up(err)) }
    }

    pub fn add_error_f64(&self, err: f64) -> BallReal {
        self.add_error(&mag::from_f64_up(err.abs()))
    }

    /// Multiply by 2^k exactly.
    pub fn mul_2exp(&self, k: i32) -> BallReal {
        let mut mid = self.mid.clone();
        let mut rad = self.rad.clone();
        mid <<= k;
        rad <<= k;
        Self { mid, rad }
    }

    pub fn neg(&self) -> BallReal {
        Self { mid: Float::with_val(self.prec(), -&self.mid), rad: self.rad.clone() }
    }

    pub fn add(&self, other: &BallReal) -> BallReal {
        let prec = self.prec().max(other.prec());
        let (mid, err) = rounded(prec, &self.mid + &other.mid);
        let rad = mag::add_up(&mag::add_up(&self.rad, &other.rad), &err);
        Self { mid, rad }
    }

    pub fn sub(&self, other: &BallReal) -> BallReal {
        let prec = self.prec().max(other.prec());
        let (mid, err) = rounded(prec, &self.mid - &other.mid);
        let rad = mag::add_up(&mag::add_up(&self.rad, &other.rad), &err);
        Self { mid, rad }
    }

    pub fn mul(&self, other: &BallReal) -> BallReal {
        let prec = self.prec().max(other.prec());
        let (mid, err) = rounded(prec, &self.mid * &other.mid);
        let a = mag::mul_up(&mag::abs_up(&self.mid), &other.rad);
        let b = mag::mul_up(&mag::abs_up(&other.mid), &self.rad);
        let c = mag::mul_up(&self.rad, &other.rad);
        let rad = mag::add_up(&mag::add_up(&a, &b), &mag::add_up(&c, &err));
        Self { mid, rad }
    }

    pub fn mul_f64(&self, x: f64) -> BallReal {
        self.mul(&Self::from_f64(x, self.prec().max(53)))
    }

    pub fn add_f64(&self, x: f64) -> BallReal {
        self.add(&Self::from_f64(x, self.prec().max(53)))
    }

    pub fn mul_u64(&self, n: u64) -> BallReal {
        self.mul(&Self::from_u64(n, self.prec()))
    }

    pub fn div_u64(&self, n: u64) -> BallReal {
        self.div(&Self::from_u64(n, self.prec().max(64)))
            .expect("positive integer divisor")
    }

    pub fn sqr(&self) -> BallReal {
        let (mid, err) = rounded(self.prec(), self.mid.square_ref());
        let a = mag::mul_up(&mag::abs_up(&self.mid), &self.rad);
        let a = mag::add_up(&a, &a);
        let c = mag::mul_up(&self.rad, &self.rad);
        let rad = mag::add_up(&mag::add_up(&a, &c), &err);
        Self { mid, rad }
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Result<BallReal, BallError> {
        if n < 0 {
            return self.powi(-n)?.recip_named("pow");
        }
        let mut result = Self::one(self.prec());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        Ok(result)
    }

    fn recip_named(&self, op: &'static str) -> Result<BallReal, BallError> {
        Self::one(self.prec()).div_named(self, op)
    }

    pub fn recip(&self) -> Result<BallReal, BallError> {
        self.recip_named("div")
    }

    fn div_named(&self, other: &BallReal, op: &'static str) -> Result<BallReal, BallError> {
        let den = other.mag_lower();
        if den.is_zero() || !self.is_finite() || !other.is_finite() {
            return Err(BallError::Domain { op });
        }
        let prec = self.prec().max(other.prec());
        let (mid, err) = rounded(prec, &self.mid / &other.mid);
        // |a/b - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
        let q = mag::div_up(&mag::abs_up(&self.mid), &mag::abs_down(&other.mid));
        let num = mag::add_up(&self.rad, &mag::mul_up(&q, &other.rad));
        let rad = mag::add_up(&mag::div_up(&num, &den), &err);
        Ok(Self { mid, rad })
    }

    pub fn div(&self, other: &BallReal) -> Result<BallReal, BallError> {
        self.div_named(other, "div")
    }

    pub fn abs(&self) -> BallReal {
        if !self.contains_zero() {
            return Self { mid: Float::with_val(self.prec(), &*self.mid.as_abs()), rad: self.rad.clone() };
        }
        let hi = self.mag_upper();
        let (mid, err) = rounded(self.prec(), &hi >> 1u32);
        let half = {
            let mut h = hi.clone();
            h >>= 1;
            h
        };
        Self { mid, rad: mag::add_up(&half, &err) }
    }

    pub fn sqrt(&self) -> Result<BallReal, BallError> {
        if !self.is_finite() || self.lower() < 0 {
            return Err(BallError::Domain { op: "sqrt" });
        }
        let (mid, err) = rounded(self.prec(), self.mid.sqrt_ref());
        // |sqrt(x) - sqrt(m)| <= r / sqrt(m)
        let rad = if self.rad.is_zero() {
            err
        } else {
            // also <= sqrt(r)
            let s = mag::sqrt_down(&mag::abs_down(&self.mid));
            let alt = Float::with_val_round(RAD_PREC, self.rad.sqrt_ref(), Round::Up).0;
            let bound = if s.is_zero() { alt } else { let b = mag::div_up(&self.rad, &s); if alt < b { alt } else { b } };
            mag::add_up(&bound, &err)
        };
        Ok(Self { mid, rad })
    }

    pub fn exp(&self) -> BallReal {
        let (mid, err) = rounded(self.prec(), self.mid.exp_ref());
        if self.rad.is_zero() {
            return Self { mid, rad: err };
        }
        // |e^(m+d) - e^m| <= e^m (e^r - 1)
        let em = mag::mul_up(&mag::abs_up(&mid), &mag::add_up(&Float::with_val(RAD_PREC, 1), &mag::unit(self.prec())));
        let rad = mag::add_up(&mag::mul_up(&em, &mag::expm1_up(&self.rad)), &err);
        Self { mid, rad }
    }

    pub fn ln(&self) -> Result<BallReal, BallError> {
        let lo = mag::sub_down(&Float::with_val_round(RAD_PREC, &self.mid, Round::Down).0, &self.rad);
        if !self.is_finite() || lo <= 0 {
            return Err(BallError::Domain { op: "log" });
        }
        let (mid, err) = rounded(self.prec(), self.mid.ln_ref());
        let rad = mag::add_up(&mag::div_up(&self.rad, &lo), &err);
        Ok(Self { mid, rad })
    }

    pub fn sin(&self) -> BallReal {
        let (mid, err) = rounded(self.prec(), self.mid.sin_ref());
        Self { mid, rad: mag::add_up(&self.rad, &err) }
    }

    pub fn cos(&self) -> BallReal {
        let (mid, err) = rounded(self.prec(), self.mid.cos_ref());
        Self { mid, rad: mag::add_up(&self.rad, &err) }
    }

    pub fn atan(&self) -> BallReal {
        let (mid, err) = rounded(self.prec(), self.mid.atan_ref());
        Self { mid, rad: mag::add_up(&self.rad, &err) }
    }

    /// Principal argument of x + iy, in (-pi, pi].
    pub fn atan2(y: &BallReal, x: &BallReal) -> Result<BallReal, BallError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(BallError::Domain { op: "atan2" });
        }
        let prec = x.prec().max(y.prec());
        if y.is_exact() && y.mid.is_zero() {
            if x.is_positive() {
                return Ok(Self::zero(prec));
            }
            if x.is_negative() {
                let (mid, err) = rounded(prec, Constant::Pi);
                return Ok(Self { mid, rad: err });
            }
            return Err(BallError::Domain { op: "atan2" });
        }
        if y.contains_zero() && !x.is_positive() {
            return Err(BallError::Domain { op: "atan2" });
        }
        let dx = x.mag_lower();
        let dy = y.mag_lower();
        let dx2 = Float::with_val_round(RAD_PREC, dx.square_ref(), Round::Down).0;
        let dy2 = Float::with_val_round(RAD_PREC, dy.square_ref(), Round::Down).0;
        let dmin = mag::sqrt_down(&Float::with_val_round(RAD_PREC, &dx2 + &dy2, Round::Down).0);
        let (mid, err) = rounded(prec, y.mid.atan2_ref(&x.mid));
        let rad = mag::add_up(&mag::div_up(&mag::add_up(&x.rad, &y.rad), &dmin), &err);
        Ok(Self { mid, rad })
    }

    /// x^y for x > 0 (integer y accepted for any x via repeated squaring).
    pub fn pow(&self, y: &BallReal) -> Result<BallReal, BallError> {
        if y.is_exact() && y.mid.is_integer() {
            if let Some(n) = y.mid.to_integer().and_then(|n| n.to_i64()) {
                if n.unsigned_abs() <= 1 << 20 {
                    return self.powi(n);
                }
            }
        }
        if !self.is_positive() {
            return Err(BallError::Domain { op: "pow" });
        }
        Ok(y.mul(&self.ln()?).exp())
    }

    pub fn min(&self, other: &BallReal) -> BallReal {
        let lo = {
            let (a, b) = (self.lower(), other.lower());
            if a < b { a } else { b }
        };
        let hi = {
            let (a, b) = (self.upper(), other.upper());
            if a < b { a } else { b }
        };
        Self::from_endpoints(&lo, &hi, self.prec().max(other.prec()))
    }

    pub fn max(&self, other: &BallReal) -> BallReal {
        let lo = {
            let (a, b) = (self.lower(), other.lower());
            if a > b { a } else { b }
        };
        let hi = {
            let (a, b) = (self.upper(), other.upper());
            if a > b { a } else { b }
        };
        Self::from_endpoints(&lo, &hi, self.prec().max(other.prec()))
    }
}

impl<'a> Add<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn add(self, rhs: &'a BallReal) -> BallReal {
        BallReal::add(self, rhs)
    }
}

impl<'a> Sub<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn sub(self, rhs: &'a BallReal) -> BallReal {
        BallReal::sub(self, rhs)
    }
}

impl<'a> Mul<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn mul(self, rhs: &'a BallReal) -> BallReal {
        BallReal::mul(self, rhs)
    }
}

impl Neg for &BallReal {
    type Output = BallReal;
    fn neg(self) -> BallReal {
        BallReal::neg(self)
    }
}
