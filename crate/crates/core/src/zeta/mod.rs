//! Rigorous evaluation of zeta, zeta'/zeta, log zeta on the 1-line, and digamma.
//!
//! Values come from an Euler-Maclaurin expansion with a bounded remainder.
//! On the 1-line, log zeta(1 + it) is obtained from log zeta(3/2 + it) minus
//! a certified Gauss-Legendre integral of zeta'/zeta along [1, 3/2]; both are
//! read off one Taylor model of zeta around 5/4 + it.

mod bernoulli;
mod digamma;
mod euler_maclaurin;
mod kernel;
mod quadrature;
mod taylor;

use crate::precision::{BallComplex, BallReal, DEFAULT_PREC};
use crate::primes::{sieve_mangoldt, PrimeTable};
use euler_maclaurin::Region;
use kernel::Channel;
use rug::Float;
use std::sync::OnceLock;
use taylor::TaylorModel;

pub use digamma::digamma;

/// Largest |Im s| accepted by the evaluator.
pub const T_CEILING: f64 = 1e7;

const SEG_SIGMA: f64 = 1.25;
const SEG_RADIUS: f64 = 2.0;
const SEG_ORDER: usize = 32;
const SEG_PREC_MAX: u32 = 128;
const DIRICHLET_X: u64 = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig {
    /// Working precision in bits.
    pub prec: u32,
    /// Number of direct terms N; `None` picks N from the height.
    pub em_terms: Option<u64>,
    /// Number of Bernoulli corrections M; `None` picks the smallest M that
    /// reaches the working precision.
    pub em_order: Option<usize>,
    /// Gauss-Legendre panels on [1, 3/2].
    pub quad_nodes: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { prec: DEFAULT_PREC, em_terms: None, em_order: None, quad_nodes: 32 }
    }
}

impl EvalConfig {
    pub fn with_prec(prec: u32) -> Self {
        Self { prec, ..Self::default() }
    }

    fn check(&self, s_abs_hi: f64, t_abs_hi: f64) -> Result<(), ZetaError> {
        if self.prec < 2 {
            return Err(ZetaError::Config(format!("precision {} too small", self.prec)));
        }
        if !(t_abs_hi <= T_CEILING) {
            return Err(ZetaError::Config(format!("|Im s| = {t_abs_hi:e} exceeds the ceiling {T_CEILING:e}")));
        }
        if let Some(n) = self.em_terms {
            let need = s_abs_hi.ceil();
            if (n as f64) < need {
                return Err(ZetaError::Config(format!("em_terms = {n} is below ceil|s| = {need}")));
            }
        }
        if self.em_order == Some(0) {
            return Err(ZetaError::Config("em_order must be at least 1".into()));
        }
        if self.quad_nodes == 0 {
            return Err(ZetaError::Config("quad_nodes must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ZetaError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("domain: {0}")]
    Domain(String),
}

/// zeta, zeta' and log zeta at 1 + it from one pass over the Dirichlet sum.
#[derive(Clone, Debug)]
pub struct OneLine {
    pub t: BallReal,
    pub zeta: BallComplex,
    pub zeta_prime: BallComplex,
    pub log_zeta: Result<BallComplex, ZetaError>,
}

impl OneLine {
    pub fn log_deriv(&self) -> Result<BallComplex, ZetaError> {
        ratio(&self.zeta_prime, &self.zeta)
    }
}

fn ratio(num: &BallComplex, den: &BallComplex) -> Result<BallComplex, ZetaError> {
    if den.contains_zero() || !den.is_finite() {
        return Err(ZetaError::Undecided("zeta enclosure contains 0".into()));
    }
    num.div(den).map_err(|_| ZetaError::Undecided("zeta enclosure contains 0".into()))
}

struct Plan {
    n: u64,
    orders: Vec<usize>,
}

fn plan(cfg: &EvalConfig, regions: &[(&Region, f64)], t_abs: f64) -> Result<Plan, ZetaError> {
    let r_max = regions.iter().map(|(r, _)| r.sigma_hi - r.sigma_lo).fold(0.0, f64::max);
    let mut n = cfg.em_terms.unwrap_or_else(|| euler_maclaurin::default_terms(t_abs + r_max));
    for _ in 0..60 {
        let mut orders = Vec::with_capacity(regions.len());
        let mut ok = true;
        for (region, target) in regions {
            let m = match cfg.em_order {
                Some(m) => m,
                None => match region.choose_order(n, *target) {
                    Some(m) => m,
                    None if cfg.em_terms.is_some() => region.best_order(n),
                    None => {
                        ok = false;
                        break;
                    }
                },
            };
            orders.push(m);
        }
        if ok {
            return Ok(Plan { n, orders });
        }
        n = ((n as f64) * 1.2).ceil() as u64;
    }
    Err(ZetaError::Config("no Euler-Maclaurin truncation reaches the requested precision".into()))
}

fn target_ln(prec: u32) -> f64 {
    -((prec as f64) + 8.0) * std::f64::consts::LN_2
}

fn remainder(region: &Region, n: u64, m: usize, b: &[BallReal]) -> Result<(Float, Float), ZetaError> {
    region
        .remainder_bounds(n, m, &b[m])
        .ok_or_else(|| ZetaError::Config(format!("Euler-Maclaurin remainder is unbounded for N = {n}, M = {m}")))
}

/// zeta(s) and zeta'(s).
pub fn zeta_with_derivative(s: &BallComplex, cfg: &EvalConfig) -> Result<(BallComplex, BallComplex), ZetaError> {
    if !s.is_finite() {
        return Err(ZetaError::Domain("non-finite argument".into()));
    }
    if s.re.contains_f64(1.0) && s.im.contains_zero() {
        return Err(ZetaError::Pole("argument ball contains s = 1".into()));
    }
    let region = Region::around(s, 0.0);
    let s_abs_hi = s.abs().upper_f64();
    cfg.check(s_abs_hi, region.t_abs_hi)?;
    let prec = cfg.prec;
    let plan = plan(cfg, &[(&region, target_ln(prec))], region.t_abs_hi)?;
    let (n, m) = (plan.n, plan.orders[0]);
    let sums = if s.re.is_exact() && s.im.is_exact() {
        let ch = Channel { sigma: s.re.mid().clone(), order: 1, prec };
        kernel::dirichlet_sums(s.im.mid(), n, &[ch]).pop().expect("one channel")
    } else {
        kernel::dirichlet_sums_ball(&s.with_prec(prec), n, 1, prec)
    };
    let b = bernoulli::coefficients(m, prec);
    let (t0, t1) = euler_maclaurin::tail_point(&s.with_prec(prec), n, m, &b, prec)
        .ok_or_else(|| ZetaError::Pole("argument too close to s = 1".into()))?;
    let (e0, e1) = remainder(&region, n, m, &b)?;
    Ok((sums[0].add(&t0).add_error(&e0), sums[1].add(&t1).add_error(&e1)))
}

/// zeta'(s) / zeta(s); undecided when the zeta enclosure meets 0.
pub fn log_deriv(s: &BallComplex, cfg: &EvalConfig) -> Result<BallComplex, ZetaError> {
    let (z, zd) = zeta_with_derivative(s, cfg)?;
    ratio(&zd, &z)
}

/// log zeta(1 + it) on the branch continuous from +infinity; t >= 10.
pub fn log_zeta_one_line(t: &BallReal, cfg: &EvalConfig) -> Result<BallComplex, ZetaError> {
    line_eval(t, cfg, false)?.log_zeta
}

/// zeta(1+it), zeta'(1+it) and log zeta(1+it) sharing one kernel pass.
pub fn one_line(t: &BallReal, cfg: &EvalConfig) -> Result<OneLine, ZetaError> {
    line_eval(t, cfg, true)
}

fn line_eval(t: &BallReal, cfg: &EvalConfig, want_point: bool) -> Result<OneLine, ZetaError> {
    if !t.is_finite() || t.lower() < 10 {
        return Err(ZetaError::Domain("the 1-line evaluator needs t >= 10".into()));
    }
    let t_hi = t.upper_f64();
    cfg.check(t_hi + 1.0, t_hi)?;
    let prec = cfg.prec;
    let seg_prec = prec.min(SEG_PREC_MAX);
    let t_mid = t.mid().clone();
    let delta = t.rad().clone();
    let seg_center = BallComplex::new(
        BallReal::from_f64(SEG_SIGMA, seg_prec),
        BallReal::exact(Float::with_val(t_mid.prec().max(seg_prec), &t_mid)),
    );
    let seg_region = Region::around(&seg_center, SEG_RADIUS);
    let point_exact = want_point && t.is_exact();
    let point = BallComplex::new(BallReal::one(prec), BallReal::exact(t_mid.clone()));
    let point_region = Region::around(&point, 0.0);
    let mut regions = vec![(&seg_region, target_ln(seg_prec))];
    if point_exact {
        regions.push((&point_region, target_ln(prec)));
    }
    let plan = plan(cfg, &regions, t_hi)?;
    let n = plan.n;
    let mut channels = vec![Channel { sigma: Float::with_val(64, SEG_SIGMA), order: SEG_ORDER, prec: seg_prec }];
    if point_exact {
        channels.push(Channel { sigma: Float::with_val(64, 1), order: 1, prec });
    }
    let mut sums = kernel::dirichlet_sums(&t_mid, n, &channels);

    let m_seg = plan.orders[0];
    let b_seg = bernoulli::coefficients(m_seg, seg_prec);
    let tail = euler_maclaurin::tail_series(&seg_center, n, m_seg, SEG_ORDER, &b_seg, seg_prec)
        .ok_or_else(|| ZetaError::Domain("tail series failed".into()))?;
    let (eps, _) = remainder(&seg_region, n, m_seg, &b_seg)?;
    let r_ball = BallReal::from_f64(SEG_RADIUS, 64);
    let mut coeffs = Vec::with_capacity(SEG_ORDER + 1);
    let mut scale = BallReal::exact(eps.clone());
    for (k, (a, b)) in sums[0].iter().zip(&tail).enumerate() {
        if k > 0 {
            scale = scale.div(&r_ball).expect("R > 0");
        }
        coeffs.push(a.add(b).add_error(&scale.upper()));
    }
    let dist = t.lower_f64() - delta.to_f64() - SEG_RADIUS;
    let sup = euler_maclaurin::sup_bound(&seg_region, dist, n, m_seg, &b_seg, &eps)
        .ok_or_else(|| ZetaError::Domain("sup bound failed".into()))?;
    let tm = TaylorModel { coeffs, radius: SEG_RADIUS, sup };

    let im_delta = BallReal::new(Float::new(seg_prec), &delta);
    let at = |re: f64| BallComplex::new(BallReal::from_f64(re - SEG_SIGMA, seg_prec), im_delta.clone());

    let (zeta, zeta_prime) = if point_exact {
        let pt = sums.pop().expect("point channel");
        let m = plan.orders[1];
        let b = bernoulli::coefficients(m, prec);
        let (t0, t1) = euler_maclaurin::tail_point(&point, n, m, &b, prec)
            .ok_or_else(|| ZetaError::Domain("tail failed".into()))?;
        let (e0, e1) = remainder(&point_region, n, m, &b)?;
        (pt[0].add(&t0).add_error(&e0), pt[1].add(&t1).add_error(&e1))
    } else {
        tm.eval(&at(1.0)).ok_or_else(|| ZetaError::Undecided("Taylor model evaluation failed".into()))?
    };

    let log_zeta = log_from_model(&tm, t, &at, cfg.quad_nodes, seg_prec);
    Ok(OneLine { t: t.clone(), zeta, zeta_prime, log_zeta })
}

fn dirichlet_table() -> &'static PrimeTable {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    TABLE.get_or_init(|| sieve_mangoldt(DIRICHLET_X).expect("limit >= 2"))
}

/// sum_{n <= X} Lambda(n)/log n * n^-s at s = 3/2 + it; the tail is at most
/// sum_{n > X} n^-3/2 <= 2 / sqrt(X).
fn log_zeta_three_halves_series(t: &BallReal, prec: u32) -> BallComplex {
    let table = dirichlet_table();
    let s = BallComplex::new(BallReal::from_f64(1.5, prec), t.with_prec(prec));
    let mut acc = BallComplex::zero(prec);
    for (n, _p, k) in table.prime_powers(DIRICHLET_X) {
        let v = BallComplex::real_pow_neg(&BallReal::from_u64(n, prec), &s).expect("n >= 2");
        acc = acc.add(&v.div_real(&BallReal::from_u64(k as u64, prec)).expect("k >= 1"));
    }
    let tail = BallReal::from_u64(DIRICHLET_X, 64).sqrt().expect("X > 0").recip().expect("X > 0").mul_u64(2);
    acc.add_error(&tail.upper())
}

fn log_from_model(
    tm: &TaylorModel,
    t: &BallReal,
    at: &dyn Fn(f64) -> BallComplex,
    panels: usize,
    prec: u32,
) -> Result<BallComplex, ZetaError> {
    let (z32, _) = tm
        .eval(&at(1.5))
        .ok_or_else(|| ZetaError::Undecided("Taylor model evaluation failed".into()))?;
    let principal = z32.ln().map_err(|_| ZetaError::Undecided("zeta(3/2+it) enclosure contains 0".into()))?;
    let series = log_zeta_three_halves_series(t, prec);
    let l32 = principal
        .intersect(&series)
        .ok_or_else(|| ZetaError::Domain("log zeta(3/2+it): Taylor model and Dirichlet series disagree".into()))?;
    let integral = integrate_log_deriv(tm, t, panels, prec)?;
    Ok(l32.sub(&integral))
}

/// sup |zeta'/zeta| over the rectangle [1 - rho, 3/2 + rho] x [t - rho - delta, t + rho + delta],
/// from a grid of boxes; `None` if some box may contain a zero.
fn ratio_sup(tm: &TaylorModel, rho: f64, delta: &Float, prec: u32) -> Option<Float> {
    let cell = rho / 4.0;
    let re_lo = 1.0 - rho - SEG_SIGMA;
    let re_hi = 1.5 + rho - SEG_SIGMA;
    let half_im = BallReal::from_f64(rho, 64).add(&BallReal::exact(delta.clone())).upper();
    let nx = ((re_hi - re_lo) / cell).ceil() as usize;
    let ny = ((2.0 * half_im.to_f64() + 1e-300) / cell).ceil().max(1.0) as usize;
    let dy = Float::with_val(64, &half_im * 2u32) / ny as u32;
    let mut sup = Float::new(64);
    for i in 0..nx {
        let a = re_lo + cell * i as f64;
        let b = (a + cell).min(re_hi);
        let re = BallReal::from_f64_endpoints(a, b, prec);
        for j in 0..ny {
            let lo = Float::with_val(64, -&half_im) + Float::with_val(64, &dy * j as u32);
            let hi = Float::with_val(64, &lo + &dy);
            let lo = lo.min(&half_im);
            let hi = hi.min(&half_im);
            let im = BallReal::from_endpoints(&lo, &hi, prec);
            let (z, zd) = tm.eval(&BallComplex::new(re.clone(), im))?;
            let zl = z.abs().lower();
            if zl <= 0 {
                return None;
            }
            let q = BallReal::exact(zd.abs().upper()).div(&BallReal::exact(zl)).ok()?;
            let u = q.upper();
            if u > sup {
                sup = Float::with_val(64, u);
            }
        }
    }
    Some(sup)
}

/// Certified integral of zeta'/zeta(alpha + it) over alpha in [1, 3/2].
fn integrate_log_deriv(tm: &TaylorModel, t: &BallReal, panels: usize, prec: u32) -> Result<BallComplex, ZetaError> {
    let delta = t.rad().clone();
    let mut rho = 0.25;
    let sup = loop {
        if let Some(s) = ratio_sup(tm, rho, &delta, prec) {
            break s;
        }
        rho /= 2.0;
        if rho < 2.0 / panels as f64 {
            return Err(ZetaError::Undecided("cannot bound zeta'/zeta near the segment".into()));
        }
    };
    let rule = quadrature::rule(prec);
    let im_delta = BallReal::new(Float::new(prec), &delta);
    let width = 0.5 / panels as f64;
    let hp = BallReal::from_f64(width, prec).mul_2exp(-1);
    let mut total = BallComplex::zero(prec);
    for j in 0..panels {
        let c = BallReal::from_f64(1.0 - SEG_SIGMA, prec).add(&hp.mul_u64(2 * j as u64 + 1));
        let mut acc = BallComplex::zero(prec);
        for (x, w) in &rule {
            let h = BallComplex::new(c.add(&hp.mul(x)), im_delta.clone());
            let (z, zd) = tm
                .eval(&h)
                .ok_or_else(|| ZetaError::Undecided("Taylor model evaluation failed".into()))?;
            acc = acc.add(&ratio(&zd, &z)?.mul_real(w));
        }
        total = total.add(&acc.mul_real(&hp));
    }
    let two_hp = BallReal::from_f64(width, 64);
    let r = BallReal::from_f64(rho, 64).sub(&two_hp.mul_2exp(-1));
    let ratio_pow = two_hp.div(&r).expect("r > 0").powi(2 * quadrature::NODES as i64).expect("finite");
    let per_panel = quadrature::error_constant().mul(&two_hp).mul(&ratio_pow).mul(&BallReal::exact(sup));
    let err = per_panel.mul_u64(panels as u64);
    Ok(total.add_error(&err.upper()))
}
