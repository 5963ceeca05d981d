//! Verification scans: evaluate the 1-line quantities on a grid of heights
//! and compare them with the packaged bounds.

use rayon::prelude::*;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use zetabound::bounds::{constants, theorem_bounds, theorem_bounds_relaxed, BoundParams, Constants, TheoremBounds};
use zetabound::precision::BallReal;
use zetabound::zeros::{load_zeros, ZeroFormat};
use zetabound::zeta::{one_line, EvalConfig, OneLine};

/// Lowest height covered by the proven range.
pub const T_PROVEN: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("config: {0}")]
    Config(String),
    #[error("zeros: {0}")]
    Zeros(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Logderiv,
    InvZeta,
    Zeta,
    LogZeta,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Quantity::Logderiv, Quantity::InvZeta, Quantity::Zeta, Quantity::LogZeta];

    pub fn name(self) -> &'static str {
        match self {
            Self::Logderiv => "logderiv",
            Self::InvZeta => "inv_zeta",
            Self::Zeta => "zeta",
            Self::LogZeta => "log_zeta",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "logderiv" => Ok(Self::Logderiv),
            "inv_zeta" | "invzeta" => Ok(Self::InvZeta),
            "zeta" => Ok(Self::Zeta),
            "log_zeta" | "logzeta" => Ok(Self::LogZeta),
            _ => Err(format!("unknown quantity {s:?} (logderiv, invzeta, zeta, logzeta)")),
        }
    }
}

/// Parses "all" or a comma-separated list.
pub fn parse_quantities(s: &str) -> Result<Vec<Quantity>, String> {
    if s == "all" {
        return Ok(Quantity::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let q: Quantity = part.trim().parse()?;
        if !out.contains(&q) {
            out.push(q);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedOk,
    CertifiedViolation,
    Undecided,
}

impl Verdict {
    pub fn from_margin(margin: &BallReal) -> Self {
        if margin.is_positive() {
            Self::CertifiedOk
        } else if margin.is_negative() {
            Self::CertifiedViolation
        } else {
            Self::Undecided
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::CertifiedOk => "certified_ok",
            Self::CertifiedViolation => "certified_violation",
            Self::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Verdict {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "certified_ok" => Ok(Self::CertifiedOk),
            "certified_violation" => Ok(Self::CertifiedViolation),
            "undecided" => Ok(Self::Undecided),
            _ => Err(format!("unknown verdict {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationRecord {
    pub t: f64,
    pub quantity: Quantity,
    /// |.| of the computed enclosure.
    pub computed: BallReal,
    pub bound: BallReal,
    /// bound - computed
    pub margin: BallReal,
    pub verdict: Verdict,
    /// Why the record is undecided, or a note for observational points.
    pub reason: Option<String>,
}

impl VerificationRecord {
    pub fn new(t: f64, quantity: Quantity, computed: BallReal, bound: BallReal, reason: Option<String>) -> Self {
        let margin = bound.sub(&computed);
        let verdict = Verdict::from_margin(&margin);
        Self { t, quantity, computed, bound, margin, verdict, reason }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
    pub spacing: Spacing,
    /// Height T up to which RH is assumed.
    pub height: f64,
    pub delta: f64,
    pub prec: u32,
    pub zeros_path: Option<PathBuf>,
    pub quantities: Vec<Quantity>,
    /// Allows t below 10^6; such records are observational.
    pub relaxed: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            t_min: 1e6,
            t_max: 1e7,
            steps: 50,
            spacing: Spacing::Log,
            height: 3e12,
            delta: 1e-5,
            prec: 192,
            zeros_path: None,
            quantities: Quantity::ALL.to_vec(),
            relaxed: false,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), ScanError> {
        let bad = |m: String| Err(ScanError::Config(m));
        if !(self.t_min.is_finite() && self.t_max.is_finite() && self.t_min > 0.0) {
            return bad(format!("t range [{}, {}] is not finite and positive", self.t_min, self.t_max));
        }
        if self.t_min > self.t_max {
            return bad(format!("t_min = {} exceeds t_max = {}", self.t_min, self.t_max));
        }
        if self.steps == 0 {
            return bad("steps must be at least 1".into());
        }
        if self.steps > 1 && self.t_min == self.t_max {
            return bad("several steps over an empty range".into());
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta = {} outside (0, 1)", self.delta));
        }
        if !(self.height >= 1e9) {
            return bad(format!("T = {:e} must be at least 10^9", self.height));
        }
        if self.t_min < T_PROVEN && !self.relaxed {
            return bad(format!("t_min = {:e} is below 10^6; pass --relaxed for an observational scan", self.t_min));
        }
        if self.t_min < 16.0 {
            return bad(format!("t_min = {} is below 16", self.t_min));
        }
        if self.t_max > (1.0 - self.delta) * self.height {
            return bad(format!("t_max = {:e} exceeds (1 - delta) T = {:e}", self.t_max, (1.0 - self.delta) * self.height));
        }
        if self.t_max > zetabound::zeta::T_CEILING {
            return bad(format!("t_max = {:e} is above the evaluator ceiling {:e}", self.t_max, zetabound::zeta::T_CEILING));
        }
        if !(16..=4096).contains(&self.prec) {
            return bad(format!("prec = {} outside [16, 4096]", self.prec));
        }
        if self.quantities.is_empty() {
            return bad("no quantities selected".into());
        }
        Ok(())
    }

    /// Grid points, computed exactly (linear) or at 256 bits (log) before rounding to f64.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps;
        if n == 1 {
            return vec![self.t_min];
        }
        let last = (n - 1) as u32;
        (0..n as u32)
            .map(|i| {
                if i == 0 {
                    return self.t_min;
                }
                if i == last {
                    return self.t_max;
                }
                match self.spacing {
                    Spacing::Linear => {
                        let a = Rational::from_f64(self.t_min).expect("finite");
                        let b = Rational::from_f64(self.t_max).expect("finite");
                        let t = a.clone() + (b - a) * Rational::from((i, last));
                        t.to_f64()
                    }
                    Spacing::Log => {
                        let a = Float::with_val(256, self.t_min);
                        let r = Float::with_val(256, self.t_max / &a).ln() * i / last;
                        (a * r.exp()).to_f64()
                    }
                }
            })
            .collect()
    }
}

fn abs_or_err<E: fmt::Display>(v: Result<zetabound::precision::BallComplex, E>) -> Result<BallReal, String> {
    v.map(|z| z.abs()).map_err(|e| e.to_string())
}

fn computed(line: &OneLine, q: Quantity) -> Result<BallReal, String> {
    match q {
        Quantity::Logderiv => abs_or_err(line.log_deriv()),
        Quantity::Zeta => Ok(line.zeta.abs()),
        Quantity::InvZeta => line.zeta.abs().recip().map_err(|_| "zeta enclosure contains 0".to_string()),
        Quantity::LogZeta => abs_or_err(line.log_zeta.clone()),
    }
}

fn bound_for(b: &TheoremBounds, q: Quantity) -> BallReal {
    match q {
        Quantity::Logderiv => b.logderiv.clone(),
        Quantity::InvZeta => b.inv_zeta.clone(),
        Quantity::Zeta => b.zeta.clone(),
        Quantity::LogZeta => b.log_zeta.clone(),
    }
}

/// Records for one height; failures become undecided records with a reason.
pub fn scan_point(
    t: f64,
    quantities: &[Quantity],
    params: &BoundParams,
    consts: &Constants,
    eval: &EvalConfig,
) -> Vec<VerificationRecord> {
    let prec = eval.prec;
    let observational = t < T_PROVEN;
    let bounds = if observational {
        theorem_bounds_relaxed(t, params, consts)
    } else {
        theorem_bounds(t, params, consts)
    }
    .map_err(|e| e.to_string());
    let line = one_line(&BallReal::from_f64(t, prec), eval).map_err(|e| e.to_string());
    quantities
        .iter()
        .map(|&q| {
            let mut reasons = Vec::new();
            if observational {
                reasons.push("observational: t below 10^6".to_string());
            }
            let bound = bounds.as_ref().map(|b| bound_for(b, q)).unwrap_or_else(|e| {
                reasons.push(format!("bound: {e}"));
                BallReal::indeterminate(prec)
            });
            let value = line.as_ref().map_err(|e| e.clone()).and_then(|l| computed(l, q)).unwrap_or_else(|e| {
                reasons.push(format!("evaluation: {e}"));
                BallReal::indeterminate(prec)
            });
            let mut rec = VerificationRecord::new(t, q, value, bound, None);
            if rec.verdict == Verdict::Undecided && reasons.is_empty() {
                reasons.push(format!("margin straddles 0 at {prec} bits; raise --prec"));
            }
            if !reasons.is_empty() {
                rec.reason = Some(reasons.join("; "));
            }
            rec
        })
        .collect()
}

/// One record per (t, quantity) in grid order.
pub fn run_scan(cfg: &ScanConfig) -> Result<Vec<VerificationRecord>, ScanError> {
    cfg.validate()?;
    if let Some(path) = &cfg.zeros_path {
        // the bounds use the closed-form tail; the table is validated so that
        // a scan is never reported against a broken data file
        load_zeros(path, ZeroFormat::Commented).map_err(|e| ScanError::Zeros(e.to_string()))?;
    }
    let consts = constants(cfg.prec);
    let params = BoundParams::new(cfg.height, cfg.delta, cfg.prec).map_err(|e| ScanError::Config(e.to_string()))?;
    let eval = EvalConfig::with_prec(cfg.prec);
    let grid = cfg.grid();
    let per_point: Vec<Vec<VerificationRecord>> =
        grid.par_iter().map(|&t| scan_point(t, &cfg.quantities, &params, &consts, &eval)).collect();
    Ok(per_point.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub ok: usize,
    pub violation: usize,
    pub undecided: usize,
}

impl Tally {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let mut t = Tally::default();
        for r in records {
            match r.verdict {
                Verdict::CertifiedOk => t.ok += 1,
                Verdict::CertifiedViolation => t.violation += 1,
                Verdict::Undecided => t.undecided += 1,
            }
        }
        t
    }

    /// 0 all ok, 2 any undecided, 3 any violation.
    pub fn exit_code(&self) -> u8 {
        if self.violation > 0 {
            3
        } else if self.undecided > 0 {
            2
        } else {
            0
        }
    }
}
