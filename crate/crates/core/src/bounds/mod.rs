//! Closed-form bounds on the 1-line, their ingredients, and an audit of the
//! packaged decimal constants.

mod audit;

pub use audit::{audit_constants, default_audit_grid, AuditReport, AuditStep, StepStatus};

use crate::precision::{ball_from_decimal, BallComplex, BallReal};
use crate::primes::{weighted_sum, PrimeError, PrimeTable};
use crate::zeta::{zeta_with_derivative, EvalConfig};
use rug::Float;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("argument: {0}")]
    Argument(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error(transparent)]
    Prime(#[from] PrimeError),
}

pub(crate) fn dec(s: &str, prec: u32) -> BallReal {
    ball_from_decimal(s, prec).expect("decimal literal")
}

/// Height T up to which RH is assumed, the gap delta, and E_delta(T).
/// `limit` marks the E = 0 surrogate for T -> infinity.
#[derive(Debug, Clone)]
pub struct BoundParams {
    pub height: f64,
    pub delta: f64,
    pub e_delta: BallReal,
    pub limit: bool,
}

impl BoundParams {
    pub fn new(height: f64, delta: f64, prec: u32) -> Result<Self, BoundsError> {
        if !(height >= 1e9) {
            return Err(BoundsError::Argument(format!("T = {height:e} must be at least 10^9")));
        }
        Ok(Self { height, delta, e_delta: e_delta(height, delta, prec)?, limit: false })
    }

    /// T = 3 * 10^12, delta = 10^-5.
    pub fn platt_trudgian(prec: u32) -> Self {
        Self::new(3e12, 1e-5, prec).expect("valid")
    }

    /// E_delta = 0; bounds computed with these parameters are limits, not certified.
    pub fn limit(prec: u32) -> Self {
        Self { height: f64::INFINITY, delta: 0.5, e_delta: BallReal::zero(prec), limit: true }
    }

    /// Largest t covered: (1 - delta) T.
    pub fn t_max(&self) -> f64 {
        (1.0 - self.delta) * self.height
    }

    fn check_range(&self, t: f64) -> Result<(), BoundsError> {
        if !(t >= 1e6) || (!self.limit && t > self.t_max()) {
            return Err(BoundsError::Argument(format!(
                "t = {t:e} outside the hypotheses 10^6 <= t <= (1 - delta) T = {:e}",
                self.t_max()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Constants {
    pub prec: u32,
    pub lambda0: BallReal,
    pub a0: BallReal,
    pub euler_gamma: BallReal,
    pub log_zeta_32: BallReal,
}

fn lambda_residual(l: &BallReal) -> BallReal {
    l.exp().mul(&l.add_f64(-1.0)).add_f64(-1.0)
}

/// lambda0 solving e^l (l - 1) = 1 by Newton from 1.25, certified by a sign
/// change, and A0 = (1 + e^lambda0)/lambda0.
pub fn solve_lambda0(prec: u32) -> (BallReal, BallReal) {
    let wp = prec + 16;
    let mut x = Float::with_val(wp, 1.25);
    for _ in 0..(wp as usize).ilog2() as usize + 8 {
        // f'(l) = l e^l
        let e = Float::with_val(wp, x.exp_ref());
        let f = Float::with_val(wp, &e * Float::with_val(wp, &x - 1u32)) - 1u32;
        let d = Float::with_val(wp, &e * &x);
        x -= f / d;
    }
    let mut eps = Float::with_val(64, 1);
    eps >>= prec - 2;
    let lo = BallReal::exact(Float::with_val(wp, &x - &eps));
    let hi = BallReal::exact(Float::with_val(wp, &x + &eps));
    let bracket = lambda_residual(&lo).is_negative() && lambda_residual(&hi).is_positive();
    let (lo, hi) = if bracket {
        (lo, hi)
    } else {
        // f(1) = -1 < 0 < f(2) = e^2 - 1
        (BallReal::from_u64(1, wp), BallReal::from_u64(2, wp))
    };
    assert!(lambda_residual(&lo).is_negative() && lambda_residual(&hi).is_positive());
    let l = BallReal::from_endpoints(&lo.lower(), &hi.upper(), wp);
    let a0 = l.exp().add_f64(1.0).div(&l).expect("lambda0 > 1");
    (l.with_prec(prec), a0.with_prec(prec))
}

/// lambda0, A0, Euler's constant and log zeta(3/2).
pub fn constants(prec: u32) -> Constants {
    let (lambda0, a0) = solve_lambda0(prec);
    let s = BallComplex::from_f64(1.5, 0.0, prec);
    let (z, _) = zeta_with_derivative(&s, &EvalConfig::with_prec(prec)).expect("zeta(3/2)");
    let log_zeta_32 = z.re.ln().expect("zeta(3/2) > 1");
    Constants { prec, lambda0, a0, euler_gamma: BallReal::euler_gamma(prec), log_zeta_32 }
}

/// E_delta(T) = (1/delta^2 + 1) log T / (2 pi T).
pub fn e_delta(height: f64, delta: f64, prec: u32) -> Result<BallReal, BoundsError> {
    if !(height > 1.0) || !height.is_finite() {
        return Err(BoundsError::Argument(format!("T = {height} must exceed 1")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(BoundsError::Argument(format!("delta = {delta} must lie in (0, 1)")));
    }
    let t = BallReal::from_f64(height, prec);
    let d = BallReal::from_f64(delta, prec);
    let factor = d.sqr().recip().expect("delta > 0").add_f64(1.0);
    let two_pi_t = BallReal::pi(prec).mul_2exp(1).mul(&t);
    Ok(factor.mul(&t.ln().expect("T > 1")).div(&two_pi_t).expect("T > 0"))
}

fn log_t(t: f64, prec: u32) -> Result<BallReal, BoundsError> {
    if !(t > 1.0) {
        return Err(BoundsError::Argument(format!("t = {t} must exceed 1")));
    }
    Ok(BallReal::from_f64(t, prec).ln().expect("t > 0"))
}

/// Coefficient A0 (log t)^(1 - 2 alpha) of the zero sum; below 1 in the theorem range.
pub fn rho_coefficient(alpha: f64, t: f64, consts: &Constants) -> Result<BallReal, BoundsError> {
    let prec = consts.prec;
    let lt = log_t(t, prec)?;
    let e = BallReal::from_f64(1.0 - 2.0 * alpha, prec);
    Ok(consts.a0.mul(&lt.pow(&e).map_err(|e| BoundsError::Argument(e.to_string()))?))
}

/// eps(alpha, t) = 1 / (A0^-1 (log t)^(2 alpha - 1) - 1).
pub fn epsilon_factor(alpha: f64, t: f64, consts: &Constants) -> Result<BallReal, BoundsError> {
    if !(1.0..=1.5).contains(&alpha) {
        return Err(BoundsError::Argument(format!("alpha = {alpha} outside [1, 3/2]")));
    }
    let prec = consts.prec;
    let lt = log_t(t, prec)?;
    let p = lt.pow(&BallReal::from_f64(2.0 * alpha - 1.0, prec)).map_err(|e| BoundsError::Argument(e.to_string()))?;
    let den = p.div(&consts.a0).expect("A0 > 0").add_f64(-1.0);
    if !den.is_positive() {
        return Err(BoundsError::Undecided(format!(
            "A0^-1 (log t)^(2 alpha - 1) - 1 is not certified positive at t = {t}"
        )));
    }
    Ok(den.recip().expect("positive"))
}

/// (1 + eps)[A0/2 (log t)^(2-2 alpha) + sum_{n <= log^2 t} Lambda(n)/n^alpha
///  + (2 alpha - 1)/lambda0 E_delta + 3.2/t^2], an upper bound for |zeta'/zeta(alpha + it)|.
pub fn general_alpha_bound(
    alpha: f64,
    t: f64,
    params: &BoundParams,
    consts: &Constants,
    primes: &PrimeTable,
) -> Result<BallReal, BoundsError> {
    params.check_range(t)?;
    let prec = consts.prec;
    let eps = epsilon_factor(alpha, t, consts)?;
    let lt = log_t(t, prec)?;
    let first = consts
        .a0
        .mul_2exp(-1)
        .mul(&lt.pow(&BallReal::from_f64(2.0 - 2.0 * alpha, prec)).map_err(|e| BoundsError::Argument(e.to_string()))?);
    let x = lt.sqr().lower_f64();
    let x_hi = lt.sqr().upper_f64();
    if x.floor() != x_hi.floor() {
        return Err(BoundsError::Undecided(format!("log^2 t = {x} sits on an integer")));
    }
    let sum = weighted_sum(primes, x, alpha, 0, prec)?;
    let third = BallReal::from_f64(2.0 * alpha - 1.0, prec).div(&consts.lambda0).expect("lambda0 > 0").mul(&params.e_delta);
    let fourth = dec("3.2", prec).div(&BallReal::from_f64(t, prec).sqr()).expect("t > 0");
    Ok(eps.add_f64(1.0).mul(&first.add(&sum).add(&third).add(&fourth)))
}

/// The four packaged 1-line bounds.
#[derive(Debug, Clone)]
pub struct TheoremBounds {
    pub logderiv: BallReal,
    pub log_zeta: BallReal,
    pub inv_zeta: BallReal,
    pub zeta: BallReal,
    /// Computed with E_delta = 0; a limit, not a certified bound.
    pub limit: bool,
}

pub fn theorem_bounds(t: f64, params: &BoundParams, consts: &Constants) -> Result<TheoremBounds, BoundsError> {
    params.check_range(t)?;
    packaged(t, params, consts)
}

/// The same formulas for 16 <= t <= (1 - delta) T, outside the proven range
/// when t < 10^6; results there are observational.
pub fn theorem_bounds_relaxed(t: f64, params: &BoundParams, consts: &Constants) -> Result<TheoremBounds, BoundsError> {
    if !(t >= 16.0) || (!params.limit && t > params.t_max()) {
        return Err(BoundsError::Argument(format!("t = {t:e} outside 16 <= t <= (1 - delta) T")));
    }
    packaged(t, params, consts)
}

fn packaged(t: f64, params: &BoundParams, consts: &Constants) -> Result<TheoremBounds, BoundsError> {
    let prec = consts.prec;
    let ll = log_t(t, prec)?.ln().expect("log t > 1");
    let lll = ll.ln().expect("log log t > 1");
    let e = &params.e_delta;
    let logderiv = ll
        .mul_2exp(1)
        .add(&dec("1.219", prec))
        .add(&dec("16.108", prec).div(&ll.sqr()).expect("positive"))
        .add(&dec("1.057", prec).mul(e));
    let two_e_gamma = consts.euler_gamma.exp().mul_2exp(1);
    let log_zeta = lll
        .add(&two_e_gamma.ln().expect("positive"))
        .add(&dec("3.404", prec).div(&ll).expect("positive"))
        .add(&dec("0.793", prec).mul(e));
    let inv_zeta = two_e_gamma
        .mul(&ll.add(&dec("3.404", prec)).add(&dec("9.378", prec).div(&ll).expect("positive")))
        .mul(&dec("0.793", prec).mul(e).exp());
    Ok(TheoremBounds { logderiv, log_zeta, zeta: inv_zeta.clone(), inv_zeta, limit: params.limit })
}

/// Which 1-line quantity a comparison bound controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    LogDeriv,
    InvZeta,
    Zeta,
}

#[derive(Debug, Clone)]
pub struct ComparisonBound {
    pub name: &'static str,
    pub quantity: Quantity,
    pub value: BallReal,
    pub valid_from: f64,
    pub valid_to: f64,
    /// Whether t lies in the stated window.
    pub in_window: bool,
}

/// Literature and corollary bounds at t, each flagged with its validity window.
pub fn comparison_bounds(t: f64, prec: u32) -> Result<Vec<ComparisonBound>, BoundsError> {
    let lt = log_t(t, prec)?;
    let ll = lt.ln().map_err(|_| BoundsError::Argument(format!("log log t undefined at t = {t}")))?;
    let gamma = BallReal::euler_gamma(prec);
    let pi2 = BallReal::pi(prec).sqr();
    let mk = |name, quantity, value: BallReal, from: f64, to: f64| ComparisonBound {
        name,
        quantity,
        value,
        valid_from: from,
        valid_to: to,
        in_window: t >= from && t <= to,
    };
    let patel = lt
        .clone()
        .min(&lt.mul_2exp(-1).add(&dec("1.93", prec)))
        .min(&lt.div_u64(5).add(&dec("44.02", prec)));
    let lls = gamma
        .exp()
        .mul_u64(12)
        .div(&pi2)
        .expect("positive")
        .mul(
            &ll.sub(&BallReal::ln2(prec))
                .add_f64(0.5)
                .add(&ll.recip().map_err(|e| BoundsError::Argument(e.to_string()))?)
                .add(&ll.mul_u64(14).div(&lt).expect("positive")),
        );
    let csv = ll
        .mul_2exp(1)
        .sub(&dec("0.4989", prec))
        .add(&dec("5.35", prec).mul(&ll.sqr()).div(&lt).expect("positive"));
    let inf = f64::INFINITY;
    Ok(vec![
        mk("cchm_inv_zeta", Quantity::InvZeta, dec("42.9", prec).mul(&lt), 133.0, inf),
        mk("trudgian_logderiv", Quantity::LogDeriv, dec("40.14", prec).mul(&lt), 133.0, inf),
        mk("patel_zeta", Quantity::Zeta, patel, 3.0, inf),
        mk("corollary_logderiv", Quantity::LogDeriv, dec("0.639", prec).mul(&lt), 1e6, 2.99997e12),
        mk("corollary_inv_zeta", Quantity::InvZeta, dec("2.506", prec).mul(&lt), 1e6, 2.99997e12),
        mk("lls_inv_zeta", Quantity::InvZeta, lls, 1e10, inf),
        mk("csv_logderiv", Quantity::LogDeriv, csv, 1e30, inf),
    ])
}
