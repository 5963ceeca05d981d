//! Tables of zero ordinates and the zero sums built from them.
//!
//! Only positive ordinates are stored; every sum adds the mirror term for -gamma.

use crate::precision::{ball_from_decimal, BallComplex, BallReal};
use crate::zeta::{log_deriv, EvalConfig, ZetaError};
use rug::Float;
use std::f64::consts::{E, PI};
use std::path::Path;
use std::str::FromStr;

/// Precision at which ordinates are stored.
pub const ORDINATE_PREC: u32 = 96;
/// Default accuracy radius for tabulated ordinates.
pub const DEFAULT_ACCURACY: f64 = 1e-9;
/// E(t, T) refuses t closer than this to an ordinate.
pub const PROXIMITY: f64 = 1e-3;
/// Lower end of the range where the closed-form tail bound is applied without override.
pub const TAIL_GATE: f64 = 1e9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ZeroError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("coverage: {0}")]
    Coverage(String),
    #[error("t = {t} is within {PROXIMITY} of the ordinate {gamma}")]
    Proximity { t: f64, gamma: f64 },
    #[error("argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroFormat {
    Plain,
    Commented,
}

impl FromStr for ZeroFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Self::Plain),
            "commented" => Ok(Self::Commented),
            _ => Err(format!("unknown zero file format {s:?} (plain | commented)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ZeroTable {
    ordinates: Vec<BallReal>,
    mids: Vec<f64>,
    pub gamma_max: f64,
    pub source: String,
    pub claimed_complete_to: f64,
    pub accuracy: f64,
}

/// Main term of the zero counting function, (H/2pi) log(H/2pi e) + 7/8.
pub fn rvm_main_term(h: f64) -> f64 {
    h / (2.0 * PI) * (h / (2.0 * PI * E)).ln() + 0.875
}

/// Slack allowed between the count and the main term.
pub fn rvm_slack(h: f64) -> f64 {
    0.15 * h.ln() + 3.0
}

impl ZeroTable {
    /// Table from decimal strings; checks ordering and the first-ordinate bound.
    pub fn from_decimals<S: AsRef<str>>(
        values: &[(usize, S)],
        source: &str,
        complete_to: Option<f64>,
        accuracy: f64,
    ) -> Result<Self, ZeroError> {
        let mut ordinates = Vec::with_capacity(values.len());
        let mut mids: Vec<f64> = Vec::with_capacity(values.len());
        let acc = Float::with_val(64, accuracy);
        for (line, v) in values {
            let b = ball_from_decimal(v.as_ref().trim(), ORDINATE_PREC)
                .map_err(|e| ZeroError::Format { line: *line, msg: e.to_string() })?;
            let m = b.mid_f64();
            if !(m > 14.0) {
                return Err(ZeroError::Format { line: *line, msg: format!("ordinate {m} is not above 14") });
            }
            if let Some(&prev) = mids.last() {
                if !(m > prev) {
                    return Err(ZeroError::Format { line: *line, msg: format!("ordinate {m} does not exceed {prev}") });
                }
            }
            ordinates.push(b.add_error(&acc));
            mids.push(m);
        }
        let Some(&gamma_max) = mids.last() else {
            return Err(ZeroError::Format { line: values.len().max(1), msg: "no ordinates".into() });
        };
        let claimed = complete_to.unwrap_or(gamma_max);
        if claimed > gamma_max {
            return Err(ZeroError::Format {
                line: 0,
                msg: format!("complete_to {claimed} exceeds the last ordinate {gamma_max}"),
            });
        }
        Ok(Self { ordinates, mids, gamma_max, source: source.to_string(), claimed_complete_to: claimed, accuracy })
    }

    /// Table from f64 ordinates (exact binary values plus `accuracy`).
    pub fn from_f64(values: &[f64], source: &str, accuracy: f64) -> Result<Self, ZeroError> {
        let strs: Vec<(usize, String)> = values.iter().enumerate().map(|(i, v)| (i + 1, format!("{v:e}"))).collect();
        Self::from_decimals(&strs, source, None, accuracy)
    }

    pub fn len(&self) -> usize {
        self.mids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mids.is_empty()
    }

    pub fn ordinates(&self) -> &[BallReal] {
        &self.ordinates
    }

    pub fn ordinates_f64(&self) -> &[f64] {
        &self.mids
    }

    /// Number of stored ordinates <= h.
    pub fn count_below(&self, h: f64) -> usize {
        self.mids.partition_point(|&g| g <= h)
    }

    /// Largest |N(H) - main term| over a log grid of H up to the completeness height,
    /// paired with the H where it occurs.
    pub fn rvm_deviation(&self, points: usize) -> (f64, f64) {
        let lo = 15f64;
        let hi = self.claimed_complete_to.max(lo);
        let mut worst = (0.0, lo);
        for i in 0..points.max(2) {
            let h = lo * (hi / lo).powf(i as f64 / (points.max(2) - 1) as f64);
            let d = (self.count_below(h) as f64 - rvm_main_term(h)).abs() - rvm_slack(h);
            if i == 0 || d > worst.0 {
                worst = (d, h);
            }
        }
        (worst.0, worst.1)
    }

    /// Counting sanity check against the Riemann-von Mangoldt main term.
    pub fn check_counts(&self) -> Result<(), ZeroError> {
        let (excess, h) = self.rvm_deviation(200);
        if excess > 0.0 {
            return Err(ZeroError::Format {
                line: 0,
                msg: format!(
                    "count of ordinates <= {h:.3} is {} but the main term is {:.3} (slack {:.3})",
                    self.count_below(h),
                    rvm_main_term(h),
                    rvm_slack(h)
                ),
            });
        }
        Ok(())
    }

    fn check_cover(&self, big_t: f64) -> Result<(), ZeroError> {
        if big_t > self.claimed_complete_to {
            return Err(ZeroError::Coverage(format!(
                "T = {big_t} exceeds the completeness height {} of the table",
                self.claimed_complete_to
            )));
        }
        Ok(())
    }

    /// Ordinates with lo < gamma <= hi.
    pub(crate) fn range(&self, lo: f64, hi: f64) -> &[BallReal] {
        let a = self.mids.partition_point(|&g| g <= lo);
        let b = self.mids.partition_point(|&g| g <= hi);
        &self.ordinates[a..b.max(a)]
    }
}

/// Parses a zero file held in memory.
pub fn parse_zeros(text: &str, format: ZeroFormat) -> Result<ZeroTable, ZeroError> {
    let mut source = String::from("unspecified");
    let mut complete_to = None;
    let mut accuracy = DEFAULT_ACCURACY;
    let mut values: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix('#') {
            if format == ZeroFormat::Plain {
                return Err(ZeroError::Format { line, msg: "header line in a plain zero file".into() });
            }
            if !values.is_empty() {
                return Err(ZeroError::Format { line, msg: "header line after the first ordinate".into() });
            }
            let rest = rest.trim();
            if let Some((key, val)) = rest.split_once(':') {
                let val = val.trim();
                let num = || {
                    val.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite() && *v > 0.0)
                        .ok_or_else(|| ZeroError::Format { line, msg: format!("bad {} value {val:?}", key.trim()) })
                };
                match key.trim() {
                    "source" => source = val.to_string(),
                    "complete_to" => complete_to = Some(num()?),
                    "accuracy" => accuracy = num()?,
                    _ => {}
                }
            }
            continue;
        }
        values.push((line, l));
    }
    let table = ZeroTable::from_decimals(&values, &source, complete_to, accuracy)?;
    table.check_counts()?;
    Ok(table)
}

/// Reads and validates a zero file.
pub fn load_zeros(path: &Path, format: ZeroFormat) -> Result<ZeroTable, ZeroError> {
    let text = std::fs::read_to_string(path).map_err(|e| ZeroError::Io(format!("{}: {e}", path.display())))?;
    parse_zeros(&text, format)
}

fn term(a: &BallReal, a2: &BallReal, d: &BallReal) -> BallReal {
    a.div(&a2.add(&d.sqr())).expect("a^2 > 0")
}

/// sum over |gamma| <= T of (alpha - 1/2) / ((alpha - 1/2)^2 + (t - gamma)^2).
pub fn partial_zero_sum(table: &ZeroTable, alpha: f64, t: f64, big_t: f64, prec: u32) -> Result<BallReal, ZeroError> {
    if !(1.0..=1.5).contains(&alpha) {
        return Err(ZeroError::Argument(format!("alpha = {alpha} outside [1, 3/2]")));
    }
    if !(t >= 0.0) {
        return Err(ZeroError::Argument(format!("t = {t} must be non-negative")));
    }
    table.check_cover(big_t)?;
    let a = BallReal::from_f64(alpha, prec).add_f64(-0.5);
    let a2 = a.sqr();
    let tb = BallReal::from_f64(t, prec);
    let mut acc = BallReal::zero(prec);
    for g in table.range(f64::NEG_INFINITY, big_t) {
        acc = acc.add(&term(&a, &a2, &tb.sub(g))).add(&term(&a, &a2, &tb.add(g)));
    }
    Ok(acc)
}

pub(crate) fn tail_closed_form(big_t: f64, prec: u32) -> Result<BallReal, ZeroError> {
    if !(big_t > 0.0) || !big_t.is_finite() {
        return Err(ZeroError::Argument(format!("T = {big_t} must be positive")));
    }
    let tb = BallReal::from_f64(big_t, prec);
    let two_pi = BallReal::pi(prec).mul_2exp(1);
    let log_t = tb.ln().expect("T > 0");
    let first = log_t.sub(&two_pi.ln().expect("2pi > 0")).add_f64(1.0).div(&two_pi.mul(&tb)).expect("T > 0");
    let c056 = ball_from_decimal("0.56", prec).expect("literal");
    let c014 = ball_from_decimal("0.14", prec).expect("literal");
    let second = c056.mul(&log_t).add(&c014).div(&tb.sqr()).expect("T > 0");
    Ok(first.add(&second))
}

/// Upper bound (log(T/2pi) + 1)/(2pi T) + (0.14 + 0.56 log T)/T^2 for sum_{gamma > T} 1/gamma^2.
/// Refuses T < 10^9 unless `override_gate` is set.
pub fn tail_square_bound(big_t: f64, override_gate: bool, prec: u32) -> Result<BallReal, ZeroError> {
    if big_t > 0.0 && big_t < TAIL_GATE && !override_gate {
        return Err(ZeroError::Argument(format!(
            "T = {big_t:e} is below {TAIL_GATE:e}; the closed-form tail bound is gated (override to use it)"
        )));
    }
    tail_closed_form(big_t, prec)
}

/// Two-sided enclosure of E(t, T) = sum_{|gamma| > T} 1/(gamma - t)^2.
#[derive(Debug, Clone)]
pub struct EEnclosure {
    pub lower: BallReal,
    pub upper: BallReal,
}

/// Lower: data sum over T < gamma <= gamma_max. Upper: data sum up to the
/// completeness height C plus (1/delta^2 + 1) times the tail bound at
/// K = max(T, C), delta = 1 - t/K.
pub fn e_enclosure(table: &ZeroTable, t: f64, big_t: f64, prec: u32) -> Result<EEnclosure, ZeroError> {
    if !(t >= 0.0) {
        return Err(ZeroError::Argument(format!("t = {t} must be non-negative")));
    }
    if t >= table.gamma_max || t >= table.claimed_complete_to.max(big_t) {
        return Err(ZeroError::Coverage(format!(
            "t = {t} is not below the table height {}",
            table.claimed_complete_to.min(table.gamma_max)
        )));
    }
    let i = table.mids.partition_point(|&g| g < t);
    for j in [i.wrapping_sub(1), i] {
        if let Some(&g) = table.mids.get(j) {
            if (g - t).abs() < PROXIMITY {
                return Err(ZeroError::Proximity { t, gamma: g });
            }
        }
    }
    let tb = BallReal::from_f64(t, prec);
    let one = BallReal::one(prec);
    let pair = |g: &BallReal| -> BallReal {
        let a = g.sub(&tb).sqr();
        let b = g.add(&tb).sqr();
        one.div(&a).expect("away from t").add(&one.div(&b).expect("gamma > 0"))
    };
    let cutoff = big_t.max(table.claimed_complete_to);
    let mut complete = BallReal::zero(prec);
    for g in table.range(big_t, cutoff) {
        complete = complete.add(&pair(g));
    }
    let mut lower = complete.clone();
    for g in table.range(cutoff, table.gamma_max) {
        lower = lower.add(&pair(g));
    }
    let delta = one.sub(&tb.div(&BallReal::from_f64(cutoff, prec)).expect("cutoff > 0"));
    let factor = delta.sqr().recip().map_err(|_| ZeroError::Coverage("t too close to the cutoff".into()))?.add(&one);
    let envelope = factor.mul(&tail_closed_form(cutoff, prec)?);
    let upper = complete.add(&envelope);
    Ok(EEnclosure { lower, upper })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma21Mode {
    /// Requires t >= 10^6.
    Certified,
    /// Any t >= 10; the result is observational.
    Relaxed,
}

#[derive(Debug, Clone)]
pub struct Lemma21Result {
    pub margin: BallReal,
    pub observational: bool,
}

/// margin = Re zeta'/zeta(alpha + it) + (log t)/2 - partial_zero_sum(alpha, t, T).
pub fn lemma21_check(
    table: &ZeroTable,
    alpha: f64,
    t: f64,
    big_t: f64,
    cfg: &EvalConfig,
    mode: Lemma21Mode,
) -> Result<Lemma21Result, ZeroError> {
    if mode == Lemma21Mode::Certified && t < 1e6 {
        return Err(ZeroError::Argument(format!("t = {t} is below 10^6; use the relaxed mode")));
    }
    let prec = cfg.prec;
    let zsum = partial_zero_sum(table, alpha, t, big_t, prec)?;
    let s = BallComplex::from_f64(alpha, t, prec);
    let ld = log_deriv(&s, cfg)?;
    let half_log = BallReal::from_f64(t, prec).ln().map_err(|_| ZeroError::Argument("t > 0".into()))?.mul_2exp(-1);
    let margin = ld.re.add(&half_log).sub(&zsum);
    Ok(Lemma21Result { margin, observational: mode == Lemma21Mode::Relaxed })
}
