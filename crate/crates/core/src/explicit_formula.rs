//! The smoothed explicit formula for zeta'/zeta with a log-linear weight,
//! evaluated term by term.
//!
//! For x, y >= 2 and w(n) = min(1, log(xy/n)/log y) on n <= xy,
//!
//! ```text
//! zeta'/zeta(s) = - sum_rho ((xy)^(rho-s) - x^(rho-s)) / ((rho-s)^2 log y)
//!                 - sum_k ((xy)^(-2k-s) - x^(-2k-s)) / ((2k+s)^2 log y)
//!                 + ((xy)^(1-s) - x^(1-s)) / ((1-s)^2 log y)
//!                 - sum_{n <= xy} Lambda(n) w(n) n^(-s)
//! ```

use crate::precision::{BallComplex, BallReal};
use crate::primes::PrimeTable;
use crate::zeros::{tail_closed_form, ZeroError, ZeroTable, PROXIMITY};
use crate::zeta::{log_deriv, EvalConfig, ZetaError};
use rayon::prelude::*;
use rug::Float;

/// Smallest admissible Im s.
pub const MIN_HEIGHT: f64 = 10.0;

const CHUNK: usize = 2048;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormulaError {
    #[error("argument: {0}")]
    Argument(String),
    #[error("coverage: {0}")]
    Coverage(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error(transparent)]
    Zeros(#[from] ZeroError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

#[derive(Debug, Clone)]
pub struct FormulaParams {
    pub x: f64,
    pub y: f64,
    pub s: BallComplex,
}

impl FormulaParams {
    pub fn new(x: f64, y: f64, s: BallComplex) -> Result<Self, FormulaError> {
        if !(x >= 2.0 && x.is_finite()) || !(y >= 2.0 && y.is_finite()) {
            return Err(FormulaError::Argument(format!("x = {x}, y = {y}; both must be >= 2")));
        }
        if !(s.re.lower() >= 1 && s.re.upper() <= 1.5) {
            return Err(FormulaError::Argument(format!("Re s = {} outside [1, 3/2]", s.re.mid_f64())));
        }
        Ok(Self { x, y, s })
    }

    pub fn at(x: f64, y: f64, alpha: f64, t: f64, prec: u32) -> Result<Self, FormulaError> {
        Self::new(x, y, BallComplex::from_f64(alpha, t, prec))
    }

    /// y = exp(lambda0/(alpha - 1/2)), x = max(log^2 t / y, 2).
    pub fn balanced(alpha: f64, t: f64, lambda0: &BallReal, prec: u32) -> Result<Self, FormulaError> {
        if !(1.0..=1.5).contains(&alpha) || !(t > 1.0) {
            return Err(FormulaError::Argument(format!("alpha = {alpha}, t = {t}")));
        }
        let y = (lambda0.mid_f64() / (alpha - 0.5)).exp();
        let lt = t.ln();
        let x = (lt * lt / y).max(2.0);
        Self::at(x, y, alpha, t, prec)
    }

    pub fn alpha(&self) -> f64 {
        self.s.re.mid_f64()
    }

    pub fn t(&self) -> f64 {
        self.s.im.mid_f64()
    }

    fn prec(&self) -> u32 {
        self.s.prec()
    }

    fn logs(&self) -> (BallReal, BallReal, BallReal) {
        let prec = self.prec();
        let lx = BallReal::from_f64(self.x, prec).ln().expect("x >= 2");
        let ly = BallReal::from_f64(self.y, prec).ln().expect("y >= 2");
        let lxy = lx.add(&ly);
        (lx, ly, lxy)
    }

    fn xy(&self) -> BallReal {
        let prec = self.prec();
        BallReal::from_f64(self.x, prec).mul(&BallReal::from_f64(self.y, prec))
    }

    /// Largest integer that may lie in [2, xy].
    pub fn n_max(&self) -> u64 {
        self.xy().upper_f64().floor() as u64
    }
}

/// w(n) = 1 for n <= x, log(xy/n)/log y for x < n <= xy.
pub fn weight_w(n: u64, p: &FormulaParams) -> Result<BallReal, FormulaError> {
    let prec = p.prec();
    let xy = p.xy();
    if n < 2 || (n as f64) > xy.upper_f64() {
        return Err(FormulaError::Argument(format!("n = {n} outside [2, xy]")));
    }
    if (n as f64) <= p.x {
        return Ok(BallReal::one(prec));
    }
    let (_, ly, lxy) = p.logs();
    let ln = BallReal::from_u64(n, prec).ln().expect("n >= 2");
    let w = lxy.sub(&ln).div(&ly).expect("log y > 0");
    let unit = BallReal::from_f64_endpoints(0.0, 1.0, prec);
    let w = w.intersect(&unit).unwrap_or_else(|| BallReal::zero(prec));
    // n may sit just above xy, where the term is absent
    if (n as f64) > xy.lower_f64() {
        Ok(w.union(&BallReal::zero(prec)))
    } else {
        Ok(w)
    }
}

#[derive(Debug, Clone)]
pub struct FormulaSides {
    pub lhs: BallComplex,
    pub zero_term: BallComplex,
    pub trivial_term: BallComplex,
    pub pole_term: BallComplex,
    pub prime_term: BallComplex,
    pub zero_tail_budget: BallReal,
}

impl FormulaSides {
    /// -zero - trivial + pole - prime.
    pub fn rhs(&self) -> BallComplex {
        self.pole_term.sub(&self.zero_term).sub(&self.trivial_term).sub(&self.prime_term)
    }

    pub fn residual(&self) -> BallReal {
        self.lhs.sub(&self.rhs()).abs()
    }

    pub fn margin(&self) -> BallReal {
        self.zero_tail_budget.sub(&self.residual())
    }
}

/// z^(-s) style power exp(w L) for complex w and real L.
fn cexp_times(w: &BallComplex, l: &BallReal) -> BallComplex {
    w.mul_real(l).exp()
}

fn zero_sum(p: &FormulaParams, table: &ZeroTable, cutoff: f64) -> BallComplex {
    let prec = p.prec();
    let (lx, ly, lxy) = p.logs();
    let half = BallReal::from_f64(0.5, prec);
    let shift = BallComplex::new(half, BallReal::zero(prec)).sub(&p.s);
    // (xy)^(1/2 - s) and x^(1/2 - s)
    let a = cexp_times(&shift, &lxy);
    let b = cexp_times(&shift, &lx);
    let re = shift.re.clone();
    let t = p.s.im.clone();
    let ords = table.range(f64::NEG_INFINITY, cutoff);
    let partial: Vec<BallComplex> = ords
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = BallComplex::zero(prec);
            for g in chunk {
                let g1 = g.mul(&lxy);
                let g2 = g.mul(&lx);
                let e1 = BallComplex::new(g1.cos(), g1.sin());
                let e2 = BallComplex::new(g2.cos(), g2.sin());
                let plus = a.mul(&e1).sub(&b.mul(&e2));
                let minus = a.mul(&e1.conj()).sub(&b.mul(&e2.conj()));
                let dp = BallComplex::new(re.clone(), g.sub(&t)).sqr();
                let dm = BallComplex::new(re.clone(), g.neg().sub(&t)).sqr();
                acc = acc.add(&plus.div(&dp).expect("Re(rho - s) < 0")).add(&minus.div(&dm).expect("Re(rho - s) < 0"));
            }
            acc
        })
        .collect();
    // fixed chunking and a sequential reduction keep the result independent of the thread count
    let total = partial.iter().fold(BallComplex::zero(prec), |acc, z| acc.add(z));
    total.div_real(&ly).expect("log y > 0")
}

fn trivial_sum(p: &FormulaParams) -> BallComplex {
    let prec = p.prec();
    let (lx, ly, lxy) = p.logs();
    let target = {
        let mut u = Float::with_val(64, 1);
        u >>= prec;
        u
    };
    let t2 = p.s.im.sqr();
    let xb = BallReal::from_f64(p.x, prec);
    let alpha = p.s.re.clone();
    // |k-th term| <= 2 x^(-2k-alpha) / (t^2 log y), ratio at most x^(-2)
    let bound = |k: u64| -> BallReal {
        let e = alpha.add(&BallReal::from_u64(2 * k, prec)).neg();
        xb.pow(&e).expect("x > 0").mul_2exp(1).div(&t2.mul(&ly)).expect("t^2 log y > 0")
    };
    let ratio = BallReal::one(prec).sub(&xb.sqr().recip().expect("x > 0")).recip().expect("x >= 2");
    let mut acc = BallComplex::zero(prec);
    let mut k = 1u64;
    loop {
        let b = bound(k);
        if b.upper() < target {
            let tail = b.mul(&ratio).upper();
            return acc.add_error(&tail);
        }
        let w = p.s.add(&BallComplex::from_real(BallReal::from_u64(2 * k, prec))).neg();
        let num = cexp_times(&w, &lxy).sub(&cexp_times(&w, &lx));
        let den = w.sqr().mul_real(&ly);
        acc = acc.add(&num.div(&den).expect("|2k + s| > 0"));
        k += 1;
    }
}

fn pole_term(p: &FormulaParams) -> BallComplex {
    let prec = p.prec();
    let (lx, ly, lxy) = p.logs();
    let w = BallComplex::one(prec).sub(&p.s);
    let num = cexp_times(&w, &lxy).sub(&cexp_times(&w, &lx));
    num.div(&w.sqr().mul_real(&ly)).expect("s != 1")
}

fn prime_sum(p: &FormulaParams, primes: &PrimeTable) -> Result<BallComplex, FormulaError> {
    let prec = p.prec();
    let mut acc = BallComplex::zero(prec);
    for (n, q, _) in primes.prime_powers(p.n_max()) {
        let w = weight_w(n, p)?;
        let lam = BallReal::from_u64(q, prec).ln().expect("p >= 2");
        let ln = BallReal::from_u64(n, prec).ln().expect("n >= 2");
        let term = cexp_times(&p.s.neg(), &ln).mul_real(&lam.mul(&w));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Bound for the omitted zeros with |gamma| above the completeness height C:
/// x^(1-alpha) (y^(1-alpha) + 1)/log y * (1/delta^2 + 1) * tail(C), delta = 1 - t/C.
fn tail_budget(p: &FormulaParams, cutoff: f64) -> Result<BallReal, FormulaError> {
    let prec = p.prec();
    let (_, ly, _) = p.logs();
    let one = BallReal::one(prec);
    let e = one.sub(&p.s.re);
    let xb = BallReal::from_f64(p.x, prec);
    let yb = BallReal::from_f64(p.y, prec);
    let coeff = xb.pow(&e).expect("x > 0").mul(&yb.pow(&e).expect("y > 0").add(&one)).div(&ly).expect("log y > 0");
    let delta = one.sub(&p.s.im.div(&BallReal::from_f64(cutoff, prec)).expect("C > 0"));
    let factor = delta
        .sqr()
        .recip()
        .map_err(|_| FormulaError::Coverage("t too close to the completeness height".into()))?
        .add(&one);
    Ok(coeff.mul(&factor).mul(&tail_closed_form(cutoff, prec)?))
}

/// Every term of the identity as an enclosure.
pub fn formula_sides(
    p: &FormulaParams,
    table: &ZeroTable,
    primes: &PrimeTable,
    cfg: &EvalConfig,
) -> Result<FormulaSides, FormulaError> {
    let t = p.t();
    if !(p.s.im.lower() >= MIN_HEIGHT) {
        return Err(FormulaError::Argument(format!("Im s = {t} below {MIN_HEIGHT}")));
    }
    if p.n_max() > primes.limit() {
        return Err(FormulaError::Coverage(format!("sieve limit {} below xy = {}", primes.limit(), p.n_max())));
    }
    let cutoff = table.claimed_complete_to.min(table.gamma_max);
    if !(p.s.im.upper_f64() < cutoff) {
        return Err(FormulaError::Coverage(format!("t = {t} is not below the complete part of the table ({cutoff})")));
    }
    let mids = table.ordinates_f64();
    let i = mids.partition_point(|&g| g < t);
    for j in [i.wrapping_sub(1), i] {
        if let Some(&g) = mids.get(j) {
            if (g - t).abs() < PROXIMITY {
                return Err(ZeroError::Proximity { t, gamma: g }.into());
            }
        }
    }
    let lhs = log_deriv(&p.s.with_prec(cfg.prec), cfg)?.with_prec(p.prec());
    Ok(FormulaSides {
        lhs,
        zero_term: zero_sum(p, table, cutoff),
        trivial_term: trivial_sum(p),
        pole_term: pole_term(p),
        prime_term: prime_sum(p, primes)?,
        zero_tail_budget: tail_budget(p, cutoff)?,
    })
}

/// zero_tail_budget - |lhs - rhs|. A ball straddling zero is reported as undecided.
pub fn residual_check(
    p: &FormulaParams,
    table: &ZeroTable,
    primes: &PrimeTable,
    cfg: &EvalConfig,
) -> Result<BallReal, FormulaError> {
    let sides = formula_sides(p, table, primes, cfg)?;
    let margin = sides.margin();
    if margin.contains_zero() {
        return Err(FormulaError::Undecided(format!(
            "margin {margin} straddles 0; use a larger zero table or more precision"
        )));
    }
    Ok(margin)
}
