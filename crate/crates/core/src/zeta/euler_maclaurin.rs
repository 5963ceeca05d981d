//! Euler-Maclaurin tail of zeta(s) and its truncation bounds.
//!
//! zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
//!         + sum_{j=1}^{M} b_j (s)_{2j-1} N^(-s-2j+1) + R_M(s),
//! |R_M(s)| <= |b_M| |(s)_{2M}| N^(1-sigma-2M) / (sigma+2M-1).

use super::bernoulli;
use crate::precision::{BallComplex, BallReal};
use rug::Float;

const RAD_BITS: u32 = 64;
const M_MAX: usize = 6000;

/// Region of the s-plane: a center ball widened by a disk of radius `r`.
#[derive(Clone, Debug)]
pub(crate) struct Region {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_abs_hi: f64,
}

impl Region {
    pub fn around(s: &BallComplex, r: f64) -> Region {
        Region {
            sigma_lo: s.re.lower_f64() - r,
            sigma_hi: s.re.upper_f64() + r,
            t_abs_hi: s.im.mag_upper().to_f64_round(rug::float::Round::Up) + r,
        }
    }

    /// Upper bound for |s + i| over the region, as a 64-bit ball.
    fn shifted_abs_hi(&self, i: usize) -> BallReal {
        let a = BallReal::from_f64(self.sigma_lo, RAD_BITS).add_f64(i as f64).abs();
        let b = BallReal::from_f64(self.sigma_hi, RAD_BITS).add_f64(i as f64).abs();
        let re = a.max(&b);
        let t = BallReal::from_f64(self.t_abs_hi, RAD_BITS);
        let hi = re.sqr().add(&t.sqr()).sqrt().expect("non-negative");
        BallReal::exact(hi.upper())
    }

    /// Lower bound for |s + i| over the region.
    fn shifted_abs_lo(&self, i: usize, t_abs_lo: f64) -> f64 {
        let re_lo = if self.sigma_lo + i as f64 > 0.0 { self.sigma_lo + i as f64 } else { 0.0 };
        let v = re_lo.max(t_abs_lo);
        v * (1.0 - 1e-12)
    }

    /// f64 estimate of ln |R_M| used to pick M.
    fn ln_remainder_estimate(&self, n: u64, m: usize, ln_prod: f64) -> f64 {
        let a = self.sigma_lo + 2.0 * m as f64 - 1.0;
        if a <= 0.0 {
            return f64::INFINITY;
        }
        bernoulli::ln_abs_estimate(m) + ln_prod + (1.0 - self.sigma_lo - 2.0 * m as f64) * (n as f64).ln() - a.ln()
    }

    fn ln_shifted_abs_estimate(&self, i: usize) -> f64 {
        let re = (self.sigma_lo + i as f64).abs().max((self.sigma_hi + i as f64).abs());
        (re * re + self.t_abs_hi * self.t_abs_hi).sqrt().ln()
    }

    /// Smallest M whose remainder estimate is below `target_ln`, or `None`
    /// when the bound bottoms out above the target for this N.
    pub fn choose_order(&self, n: u64, target_ln: f64) -> Option<usize> {
        let mut ln_prod = 0.0;
        let mut best = f64::INFINITY;
        let mut rising = 0;
        for m in 1..=M_MAX {
            ln_prod += self.ln_shifted_abs_estimate(2 * m - 2) + self.ln_shifted_abs_estimate(2 * m - 1);
            let e = self.ln_remainder_estimate(n, m, ln_prod);
            if e < target_ln {
                return Some(m);
            }
            if e < best {
                best = e;
                rising = 0;
            } else if e.is_finite() {
                rising += 1;
                if rising > 8 {
                    return None;
                }
            }
        }
        None
    }

    /// M minimising the remainder estimate for this N.
    pub fn best_order(&self, n: u64) -> usize {
        let mut ln_prod = 0.0;
        let (mut best, mut best_m) = (f64::INFINITY, 1);
        for m in 1..=M_MAX {
            ln_prod += self.ln_shifted_abs_estimate(2 * m - 2) + self.ln_shifted_abs_estimate(2 * m - 1);
            let e = self.ln_remainder_estimate(n, m, ln_prod);
            if e < best {
                best = e;
                best_m = m;
            } else if e.is_finite() && m > best_m + 8 {
                break;
            }
        }
        best_m
    }

    /// Rigorous bounds (eps, eps') on |R_M| and |R_M'| over the region.
    /// `None` if the bound is not finite (sigma + 2M - 1 <= 0).
    pub fn remainder_bounds(&self, n: u64, m: usize, b_m: &BallReal) -> Option<(Float, Float)> {
        let a_minus_1 = BallReal::from_f64(self.sigma_lo, RAD_BITS).add_f64(2.0 * m as f64 - 1.0);
        if !a_minus_1.is_positive() {
            return None;
        }
        let mut prod = BallReal::one(RAD_BITS);
        let mut inv_sum = BallReal::zero(RAD_BITS);
        let t_abs_lo = 0.0f64.max(self.t_abs_hi - (self.sigma_hi - self.sigma_lo) - 1e-9).min(self.t_abs_hi);
        let t_abs_lo = if self.t_abs_hi > 0.0 { t_abs_lo } else { 0.0 };
        for i in 0..2 * m {
            prod = prod.mul(&self.shifted_abs_hi(i));
            let lo = self.shifted_abs_lo(i, t_abs_lo);
            if lo <= 0.0 {
                inv_sum = inv_sum.add_f64(f64::INFINITY);
            } else {
                inv_sum = inv_sum.add(&BallReal::from_f64(1.0 / lo, RAD_BITS).mul_f64(1.0 + 1e-12));
            }
        }
        let ln_n = BallReal::from_u64(n, RAD_BITS).ln().ok()?;
        // N^(1 - sigma - 2M) = N^(-(a-1))
        let n_pow = a_minus_1.neg().mul(&ln_n).exp();
        let base = b_m.abs().with_prec(RAD_BITS).mul(&prod).mul(&n_pow);
        let eps = base.div(&a_minus_1).ok()?;
        let dfac = ln_n
            .div(&a_minus_1)
            .ok()?
            .add(&a_minus_1.sqr().recip().ok()?)
            .add(&inv_sum);
        let eps_d = base.mul(&dfac);
        Some((eps.upper(), eps_d.upper()))
    }
}

/// Default number of direct terms for a region of imaginary height `t_abs`.
pub(crate) fn default_terms(t_abs: f64) -> u64 {
    (0.2 * t_abs).ceil().max(16.0) as u64
}

/// Tail T(s) and T'(s) in ball arithmetic at a (possibly wide) point s.
pub(crate) fn tail_point(s: &BallComplex, n: u64, m: usize, b: &[BallReal], prec: u32) -> Option<(BallComplex, BallComplex)> {
    let nb = BallReal::from_u64(n, prec);
    let ln_n = nb.ln().ok()?;
    let inv_n = nb.recip().ok()?;
    let inv_n2 = inv_n.sqr();
    let one = BallComplex::one(prec);
    let s_minus_1 = s.sub(&one);
    let inv_sm1 = s_minus_1.recip().ok()?;
    // G = N/(s-1) + 1/2 + sum b_j P_j,   G' = -N/(s-1)^2 + sum b_j P_j'
    let mut g = inv_sm1.mul_real(&nb);
    g.re = g.re.add(&BallReal::from_f64(0.5, prec));
    let mut gd = inv_sm1.sqr().mul_real(&nb).neg();
    let mut p = s.mul_real(&inv_n);
    let mut pd = BallComplex::from_real(inv_n.clone());
    for (j, bj) in b.iter().enumerate().take(m + 1).skip(1) {
        if j > 1 {
            let a1 = s.add(&BallComplex::from_real(BallReal::from_u64(2 * j as u64 - 3, prec)));
            let a2 = s.add(&BallComplex::from_real(BallReal::from_u64(2 * j as u64 - 2, prec)));
            let prod = a1.mul(&a2);
            let dprod = a1.add(&a2);
            let new_pd = pd.mul(&prod).add(&p.mul(&dprod)).mul_real(&inv_n2);
            p = p.mul(&prod).mul_real(&inv_n2);
            pd = new_pd;
        }
        g = g.add(&p.mul_real(bj));
        gd = gd.add(&pd.mul_real(bj));
    }
    let n_pow = BallComplex::real_pow_neg(&nb, s).ok()?;
    let t = n_pow.mul(&g);
    let td = n_pow.mul(&gd.sub(&g.mul_real(&ln_n)));
    Some((t, td))
}

/// Taylor coefficients in h (orders 0..=order) of the tail at s_c + h,
/// excluding the remainder R_M.
pub(crate) fn tail_series(s_c: &BallComplex, n: u64, m: usize, order: usize, b: &[BallReal], prec: u32) -> Option<Vec<BallComplex>> {
    let nb = BallReal::from_u64(n, prec);
    let ln_n = nb.ln().ok()?;
    let inv_n = nb.recip().ok()?;
    let inv_n2 = inv_n.sqr();
    let c = s_c.sub(&BallComplex::one(prec));
    let inv_c = c.recip().ok()?;
    // N / (c + h) = sum_k N (-1)^k c^-(k+1) h^k
    let mut g = Vec::with_capacity(order + 1);
    let mut pw = inv_c.mul_real(&nb);
    for k in 0..=order {
        g.push(if k % 2 == 0 { pw.clone() } else { pw.neg() });
        pw = pw.mul(&inv_c);
    }
    g[0].re = g[0].re.add(&BallReal::from_f64(0.5, prec));
    let mut p = vec![BallComplex::zero(prec); order + 1];
    p[0] = s_c.mul_real(&inv_n);
    if order >= 1 {
        p[1] = BallComplex::from_real(inv_n.clone());
    }
    let mul_linear = |p: &mut Vec<BallComplex>, a: &BallComplex| {
        for k in (0..p.len()).rev() {
            let mut v = p[k].mul(a);
            if k > 0 {
                v = v.add(&p[k - 1]);
            }
            p[k] = v;
        }
    };
    for (j, bj) in b.iter().enumerate().take(m + 1).skip(1) {
        if j > 1 {
            let a1 = s_c.add(&BallComplex::from_real(BallReal::from_u64(2 * j as u64 - 3, prec)));
            let a2 = s_c.add(&BallComplex::from_real(BallReal::from_u64(2 * j as u64 - 2, prec)));
            mul_linear(&mut p, &a1);
            mul_linear(&mut p, &a2);
            for v in p.iter_mut() {
                *v = v.mul_real(&inv_n2);
            }
        }
        for k in 0..=order {
            g[k] = g[k].add(&p[k].mul_real(bj));
        }
    }
    // e^{-h log N}
    let mut e = Vec::with_capacity(order + 1);
    let mut term = BallReal::one(prec);
    for k in 0..=order {
        if k > 0 {
            term = term.mul(&ln_n).neg().div_u64(k as u64);
        }
        e.push(term.clone());
    }
    let n_pow = BallComplex::real_pow_neg(&nb, s_c).ok()?;
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = BallComplex::zero(prec);
        for i in 0..=k {
            acc = acc.add(&g[k - i].mul_real(&e[i]));
        }
        out.push(acc.mul(&n_pow));
    }
    Some(out)
}

/// Upper bound for sup |zeta| over the region using the same expansion.
pub(crate) fn sup_bound(region: &Region, center_minus_one_abs_lo: f64, n: u64, m: usize, b: &[BallReal], eps: &Float) -> Option<Float> {
    let sig = BallReal::from_f64(region.sigma_lo, RAD_BITS);
    let nb = BallReal::from_u64(n, RAD_BITS);
    let ln_n = nb.ln().ok()?;
    let one = BallReal::one(RAD_BITS);
    // sum_{n<N} n^-sigma <= N^max(0,-sigma) + int_1^N x^-sigma dx
    let one_minus = one.sub(&sig);
    let integral = if one_minus.contains_zero() {
        ln_n.add_f64(1.0)
    } else {
        one_minus.mul(&ln_n).exp().sub(&one).div(&one_minus).ok()?
    };
    let lead = if region.sigma_lo < 0.0 { sig.neg().mul(&ln_n).exp() } else { one.clone() };
    let mut total = lead.add(&integral);
    let n_sig = sig.neg().mul(&ln_n).exp();
    let dist = BallReal::from_f64(center_minus_one_abs_lo, RAD_BITS);
    if !dist.is_positive() {
        return None;
    }
    total = total.add(&n_sig.mul(&nb).div(&dist).ok()?);
    total = total.add(&n_sig.mul_f64(0.5));
    let mut prod = BallReal::one(RAD_BITS);
    let inv_n = nb.recip().ok()?;
    let mut n_pow = n_sig.clone();
    for (j, bj) in b.iter().enumerate().take(m + 1).skip(1) {
        // |b_j| prod_{i<2j-1} |s+i| N^(-sigma-2j+1)
        let lo = if j == 1 { 0 } else { 2 * j - 3 };
        for i in lo..2 * j - 1 {
            prod = prod.mul(&region.shifted_abs_hi(i));
        }
        n_pow = n_pow.mul(&inv_n);
        if j > 1 {
            n_pow = n_pow.mul(&inv_n);
        }
        total = total.add(&bj.abs().with_prec(RAD_BITS).mul(&prod).mul(&n_pow));
    }
    let total = total.add_error(eps);
    Some(total.upper())
}
