use super::mag;
use super::{BallError, BallReal};
use rug::Float;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Rectangular complex ball: independent real and imaginary enclosures.
#[derive(Clone, PartialEq)]
pub struct BallComplex {
    pub re: BallReal,
    pub im: BallReal,
}

impl fmt::Debug for BallComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + i{:?})", self.re, self.im)
    }
}

impl fmt::Display for BallComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i({})", self.re, self.im)
    }
}

impl BallComplex {
    pub fn new(re: BallReal, im: BallReal) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BallReal) -> Self {
        let prec = re.prec();
        Self { re, im: BallReal::zero(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self { re: BallReal::from_f64(re, prec), im: BallReal::from_f64(im, prec) }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_real(BallReal::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(BallReal::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains(&self, other: &BallComplex) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }

    pub fn contains_f64(&self, re: f64, im: f64) -> bool {
        self.re.contains_f64(re) && self.im.contains_f64(im)
    }

    pub fn overlaps(&self, other: &BallComplex) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn intersect(&self, other: &BallComplex) -> Option<BallComplex> {
        Some(Self { re: self.re.intersect(&other.re)?, im: self.im.intersect(&other.im)? })
    }

    pub fn with_prec(&self, prec: u32) -> BallComplex {
        Self { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    /// Widen both parts by `err`.
    pub fn add_error(&self, err: &Float) -> BallComplex {
        Self { re: self.re.add_error(err), im: self.im.add_error(err) }
    }

    pub fn conj(&self) -> BallComplex {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> BallComplex {
        Self { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, o: &BallComplex) -> BallComplex {
        Self { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &BallComplex) -> BallComplex {
        Self { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &BallComplex) -> BallComplex {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Self { re, im }
    }

    pub fn mul_real(&self, x: &BallReal) -> BallComplex {
        Self { re: self.re.mul(x), im: self.im.mul(x) }
    }

    pub fn mul_i(&self) -> BallComplex {
        Self { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn sqr(&self) -> BallComplex {
        let re = self.re.sqr().sub(&self.im.sqr());
        let im = self.re.mul(&self.im).mul_2exp(1);
        Self { re, im }
    }

    /// |z|^2 as a real ball.
    pub fn norm_sqr(&self) -> BallReal {
        self.re.sqr().add(&self.im.sqr())
    }

    /// |z|; Lipschitz bound on the rectangle.
    pub fn abs(&self) -> BallReal {
        let prec = self.prec();
        let (mid, ord) = Float::with_val_round(prec, self.re.mid().hypot_ref(self.im.mid()), rug::float::Round::Nearest);
        let err = mag::rounding(&mid, ord);
        let rad = mag::add_up(&mag::add_up(self.re.rad(), self.im.rad()), &err);
        let whole = BallReal::new(mid, &rad);
        // never report a lower end below zero
        if whole.lower() < 0 {
            let hi = whole.upper();
            BallReal::from_endpoints(&Float::new(prec), &hi, prec)
        } else {
            whole
        }
    }

    fn div_named(&self, o: &BallComplex, op: &'static str) -> Result<BallComplex, BallError> {
        let den = o.norm_sqr();
        if !den.is_positive() {
            return Err(BallError::Domain { op });
        }
        let num = self.mul(&o.conj());
        Ok(Self {
            re: num.re.div(&den).map_err(|_| BallError::Domain { op })?,
            im: num.im.div(&den).map_err(|_| BallError::Domain { op })?,
        })
    }

    pub fn div(&self, o: &BallComplex) -> Result<BallComplex, BallError> {
        self.div_named(o, "div")
    }

    pub fn recip(&self) -> Result<BallComplex, BallError> {
        Self::one(self.prec()).div(self)
    }

    pub fn div_real(&self, x: &BallReal) -> Result<BallComplex, BallError> {
        Ok(Self { re: self.re.div(x)?, im: self.im.div(x)? })
    }

    pub fn exp(&self) -> BallComplex {
        let r = self.re.exp();
        Self { re: r.mul(&self.im.cos()), im: r.mul(&self.im.sin()) }
    }

    /// Principal logarithm, imaginary part in (-pi, pi].
    pub fn ln(&self) -> Result<BallComplex, BallError> {
        let n = self.norm_sqr();
        if !n.is_positive() {
            return Err(BallError::Domain { op: "log" });
        }
        let re = n.ln().map_err(|_| BallError::Domain { op: "log" })?.mul_2exp(-1);
        let im = BallReal::atan2(&self.im, &self.re).map_err(|_| BallError::Domain { op: "log" })?;
        Ok(Self { re, im })
    }

    /// Principal power exp(w log z).
    pub fn pow(&self, w: &BallComplex) -> Result<BallComplex, BallError> {
        let l = self.ln().map_err(|_| BallError::Domain { op: "pow" })?;
        Ok(w.mul(&l).exp())
    }

    /// x^(-s) for real x > 0.
    pub fn real_pow_neg(x: &BallReal, s: &BallComplex) -> Result<BallComplex, BallError> {
        let l = x.ln().map_err(|_| BallError::Domain { op: "pow" })?;
        Ok(s.neg().mul_real(&l).exp())
    }
}

impl<'a> Add<&'a BallComplex> for &'a BallComplex {
    type Output = BallComplex;
    fn add(self, rhs: &'a BallComplex) -> BallComplex {
        BallComplex::add(self, rhs)
    }
}

impl<'a> Sub<&'a BallComplex> for &'a BallComplex {
    type Output = BallComplex;
    fn sub(self, rhs: &'a BallComplex) -> BallComplex {
        BallComplex::sub(self, rhs)
    }
}

impl<'a> Mul<&'a BallComplex> for &'a BallComplex {
    type Output = BallComplex;
    fn mul(self, rhs: &'a BallComplex) -> BallComplex {
        BallComplex::mul(self, rhs)
    }
}

impl Neg for &BallComplex {
    type Output = BallComplex;
    fn neg(self) -> BallComplex {
        BallComplex::neg(self)
    }
}
