//! Taylor model of zeta on a disk: truncated series with ball coefficients
//! plus a sup bound that controls the discarded orders.

use crate::precision::{BallComplex, BallReal};
use rug::Float;

#[derive(Clone, Debug)]
pub(crate) struct TaylorModel {
    pub coeffs: Vec<BallComplex>,
    pub radius: f64,
    pub sup: Float,
}

impl TaylorModel {
    /// Enclosures of zeta(s_c + h) and zeta'(s_c + h). `None` if h is not
    /// strictly inside the disk.
    pub fn eval(&self, h: &BallComplex) -> Option<(BallComplex, BallComplex)> {
        let r_h = h.abs().upper();
        let q = BallReal::exact(Float::with_val(64, &r_h / self.radius));
        let q = BallReal::exact(q.upper());
        if q.upper() >= 1 {
            return None;
        }
        let k = self.coeffs.len() - 1;
        let one = BallReal::one(64);
        let one_minus_q = one.sub(&q);
        let m = BallReal::exact(self.sup.clone());
        let qk = q.powi(k as i64).ok()?;
        let trunc0 = m.mul(&qk).mul(&q).div(&one_minus_q).ok()?;
        let trunc1 = m
            .mul(&qk)
            .mul(&BallReal::from_u64(k as u64 + 1, 64).sub(&q.mul_u64(k as u64)))
            .div(&one_minus_q.sqr())
            .ok()?
            .div(&BallReal::from_f64(self.radius, 64))
            .ok()?;
        let mut p = self.coeffs[k].clone();
        for c in self.coeffs[..k].iter().rev() {
            p = p.mul(h).add(c);
        }
        let prec = p.prec();
        let mut d = self.coeffs[k].mul_real(&BallReal::from_u64(k as u64, prec));
        for j in (1..k).rev() {
            d = d.mul(h).add(&self.coeffs[j].mul_real(&BallReal::from_u64(j as u64, prec)));
        }
        Some((p.add_error(&trunc0.upper()), d.add_error(&trunc1.upper())))
    }
}
