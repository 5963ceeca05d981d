use super::ZetaError;
use crate::precision::{BallComplex, BallReal};

/// psi(z) via the upward recurrence to |w| >= 8, Re w >= 0, and
/// psi(w) = log w - 1/(2w) + E with |E| <= 1/(4|w|^2).
pub fn digamma(z: &BallComplex) -> Result<BallComplex, ZetaError> {
    if !z.is_finite() {
        return Err(ZetaError::Domain("digamma: non-finite argument".into()));
    }
    if z.im.contains_zero() {
        let lo = z.re.lower_f64().ceil();
        let hi = z.re.upper_f64().floor();
        if lo <= hi && lo <= 0.0 {
            return Err(ZetaError::Pole("digamma at a non-positive integer".into()));
        }
    }
    let prec = z.prec();
    let mut shift = BallComplex::zero(prec);
    let mut w = z.clone();
    let mut steps = 0u32;
    while !(w.re.is_nonnegative() && w.abs().lower() >= 8) {
        let inv = w.recip().map_err(|_| ZetaError::Pole("digamma at a non-positive integer".into()))?;
        shift = shift.add(&inv);
        w = w.add(&BallComplex::one(prec));
        steps += 1;
        if steps > 1_000_000 {
            return Err(ZetaError::Domain("digamma: argument too far left".into()));
        }
    }
    let log_w = w.ln().map_err(|e| ZetaError::Domain(e.to_string()))?;
    let half_inv = w.recip().map_err(|e| ZetaError::Domain(e.to_string()))?.mul_real(&BallReal::from_f64(0.5, prec));
    let abs_lo = BallReal::exact(w.abs().lower());
    let err = abs_lo.sqr().mul_u64(4).recip().map_err(|e| ZetaError::Domain(e.to_string()))?;
    Ok(log_w.sub(&half_inv).sub(&shift).add_error(&err.upper()))
}
