//! Von Mangoldt sieve and the weighted prime sums built on it.

use crate::precision::{ball_from_decimal, BallError, BallReal};
use rug::Float;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PrimeError {
    #[error("sieve limit must be at least 2, got {0}")]
    Argument(u64),
    #[error("cutoff {x} exceeds the sieve limit {limit}; sieve to at least {required}")]
    Coverage { x: f64, limit: u64, required: u64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("margin {margin:?} does not have a certified sign; raise the precision")]
    Undecided { margin: BallReal },
    #[error(transparent)]
    Ball(#[from] BallError),
}

/// Smallest-prime-factor table for `0..=limit` (entries 0 and 1 are 0).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            if let Some(start) = i.checked_mul(i) {
                let mut j = start;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
    }
    spf
}

/// Exact von Mangoldt data: every prime power `p^k <= limit` as `(p, k)`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    spf: Vec<u32>,
    // k for n = p^k, 0 otherwise
    exponent: Vec<u8>,
}

pub fn sieve_mangoldt(limit: u64) -> Result<PrimeTable, PrimeError> {
    if limit < 2 {
        return Err(PrimeError::Argument(limit));
    }
    let spf = smallest_prime_factors(limit as usize);
    let mut exponent = vec![0u8; limit as usize + 1];
    for n in 2..=limit as usize {
        let p = spf[n] as usize;
        let m = n / p;
        exponent[n] = if m == 1 {
            1
        } else if spf[m] as usize == p && exponent[m] > 0 {
            exponent[m] + 1
        } else {
            0
        };
    }
    Ok(PrimeTable { limit, spf, exponent })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn smallest_prime_factor(&self, n: u64) -> u32 {
        self.spf[n as usize]
    }

    /// `(p, k)` when `n = p^k`, otherwise `None`.
    pub fn prime_power(&self, n: u64) -> Option<(u64, u32)> {
        if n < 2 || n > self.limit {
            return None;
        }
        match self.exponent[n as usize] {
            0 => None,
            k => Some((self.spf[n as usize] as u64, k as u32)),
        }
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf[n as usize] as u64 == n
    }

    /// Lambda(n) as a ball at `prec` bits.
    pub fn mangoldt(&self, n: u64, prec: u32) -> BallReal {
        match self.prime_power(n) {
            Some((p, _)) => BallReal::from_u64(p, prec).ln().expect("p >= 2"),
            None => BallReal::zero(prec),
        }
    }

    /// Prime powers `n <= x` in increasing order.
    pub fn prime_powers(&self, x: u64) -> impl Iterator<Item = (u64, u64, u32)> + '_ {
        let end = x.min(self.limit) as usize;
        (2..=end).filter_map(move |n| match self.exponent[n] {
            0 => None,
            k => Some((n as u64, self.spf[n] as u64, k as u32)),
        })
    }

    /// Chebyshev psi(x) = sum of Lambda(n) for n <= x.
    pub fn chebyshev_psi(&self, x: u64, prec: u32) -> Result<BallReal, PrimeError> {
        self.check_cover(x as f64)?;
        let mut acc = BallReal::zero(prec);
        for (_, p, _) in self.prime_powers(x) {
            acc = acc.add(&BallReal::from_u64(p, prec).ln()?);
        }
        Ok(acc)
    }

    fn check_cover(&self, x: f64) -> Result<u64, PrimeError> {
        if !x.is_finite() || x < 0.0 {
            return Err(PrimeError::Invalid(format!("cutoff {x}")));
        }
        let n = x.floor();
        if n > self.limit as f64 {
            return Err(PrimeError::Coverage { x, limit: self.limit, required: n as u64 });
        }
        Ok(n as u64)
    }
}

/// Lambda(n) / (n^alpha (log n)^beta) as a ball, for n = p^k.
fn term(n: u64, p: u64, k: u32, alpha: &BallReal, alpha_kind: AlphaKind, beta: u8, prec: u32) -> Result<BallReal, BallError> {
    let nb = BallReal::from_u64(n, prec);
    let n_alpha = match alpha_kind {
        AlphaKind::One => nb.clone(),
        AlphaKind::ThreeHalves => nb.mul(&nb.sqrt()?),
        AlphaKind::General => alpha.mul(&nb.ln()?).exp(),
    };
    if beta == 1 {
        // Lambda(p^k) / log(p^k) = 1/k
        return BallReal::one(prec).div(&n_alpha.mul_u64(k as u64));
    }
    BallReal::from_u64(p, prec).ln()?.div(&n_alpha)
}

#[derive(Clone, Copy)]
enum AlphaKind {
    One,
    ThreeHalves,
    General,
}

/// Sum over n <= x of Lambda(n) / (n^alpha (log n)^beta), one enclosure per
/// cutoff, computed in a single pass. `cutoffs` need not be sorted.
pub fn weighted_sums(
    table: &PrimeTable,
    cutoffs: &[f64],
    alpha: f64,
    beta: u8,
    prec: u32,
) -> Result<Vec<BallReal>, PrimeError> {
    if beta > 1 {
        return Err(PrimeError::Invalid(format!("beta must be 0 or 1, got {beta}")));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(PrimeError::Invalid(format!("alpha {alpha}")));
    }
    let mut order: Vec<(u64, usize)> = Vec::with_capacity(cutoffs.len());
    for (i, &x) in cutoffs.iter().enumerate() {
        order.push((table.check_cover(x)?, i));
    }
    order.sort_unstable();
    let kind = if alpha == 1.0 {
        AlphaKind::One
    } else if alpha == 1.5 {
        AlphaKind::ThreeHalves
    } else {
        AlphaKind::General
    };
    let alpha_ball = BallReal::from_f64(alpha, prec.max(53));
    let mut out = vec![BallReal::zero(prec); cutoffs.len()];
    let mut acc = BallReal::zero(prec);
    let mut next = 0;
    let last = order.last().map(|o| o.0).unwrap_or(0);
    for (n, p, k) in table.prime_powers(last) {
        while next < order.len() && order[next].0 < n {
            out[order[next].1] = acc.clone();
            next += 1;
        }
        acc = acc.add(&term(n, p, k, &alpha_ball, kind, beta, prec)?);
    }
    while next < order.len() {
        out[order[next].1] = acc.clone();
        next += 1;
    }
    Ok(out)
}

pub fn weighted_sum(table: &PrimeTable, x: f64, alpha: f64, beta: u8, prec: u32) -> Result<BallReal, PrimeError> {
    Ok(weighted_sums(table, &[x], alpha, beta, prec)?.remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceInequality {
    /// sum Lambda(n)/n <= log X - gamma + 1.3 / log^2 X
    Ramare,
    /// sum Lambda(n)/(n log n) <= log log x + gamma + 1 / log^2 x
    Rosser,
}

impl std::str::FromStr for ReferenceInequality {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ramare" => Ok(Self::Ramare),
            "rosser" => Ok(Self::Rosser),
            other => Err(format!("unknown inequality {other:?} (expected ramare or rosser)")),
        }
    }
}

/// Literature bound at x for the given inequality.
pub fn reference_bound(x: f64, which: ReferenceInequality, prec: u32) -> Result<BallReal, PrimeError> {
    if !(x > 1.0) {
        return Err(PrimeError::Invalid(format!("x must exceed 1, got {x}")));
    }
    let lx = BallReal::exact(Float::with_val(prec.max(53), x)).ln()?;
    let gamma = BallReal::euler_gamma(prec);
    let inv_sq = BallReal::one(prec).div(&lx.sqr())?;
    Ok(match which {
        ReferenceInequality::Ramare => lx.sub(&gamma).add(&inv_sq.mul(&ball_from_decimal("1.3", prec)?)),
        ReferenceInequality::Rosser => lx.ln()?.add(&gamma).add(&inv_sq),
    })
}

/// Margins (bound minus sum) at several cutoffs; no sign requirement.
pub fn reference_margins(
    table: &PrimeTable,
    xs: &[f64],
    which: ReferenceInequality,
    prec: u32,
) -> Result<Vec<BallReal>, PrimeError> {
    let beta = match which {
        ReferenceInequality::Ramare => 0,
        ReferenceInequality::Rosser => 1,
    };
    let sums = weighted_sums(table, xs, 1.0, beta, prec)?;
    xs.iter()
        .zip(sums)
        .map(|(&x, s)| Ok(reference_bound(x, which, prec)?.sub(&s)))
        .collect()
}

/// Certified margin of the chosen reference inequality at x; an uncertain
/// sign is reported as `Undecided`.
pub fn reference_inequality_check(
    table: &PrimeTable,
    x: f64,
    which: ReferenceInequality,
    prec: u32,
) -> Result<BallReal, PrimeError> {
    let margin = reference_margins(table, &[x], which, prec)?.remove(0);
    if margin.contains_zero() {
        return Err(PrimeError::Undecided { margin });
    }
    Ok(margin)
}
