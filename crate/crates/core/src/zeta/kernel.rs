//! Hot loop: partial Dirichlet sums sum_{n<N} n^{-sigma-it} (-log n)^k / k!.
//!
//! Transcendentals are evaluated at primes only; a composite n = p m reuses
//! the stored values of p and m. Midpoints are accumulated without radii and
//! an a priori rounding bound is attached at the end.

use crate::precision::{mag, BallComplex, BallReal};
use crate::primes::smallest_prime_factors;
use rug::ops::NegAssign;
use rug::{Assign, Float};

#[derive(Clone, Debug)]
pub(crate) struct Channel {
    pub sigma: Float,
    pub order: usize,
    pub prec: u32,
}

struct ChannelState {
    unit_sigma: bool,
    sigma_f64: f64,
    table: Vec<Float>,
    a: Float,
    w_re: Float,
    w_im: Float,
    acc_re: Vec<Float>,
    acc_im: Vec<Float>,
    abs_sum: Vec<f64>,
}

/// For each channel, coefficients k = 0..=order of the Taylor expansion in h
/// of sum_{n<N} n^{-(sigma + it + h)}.
pub(crate) fn dirichlet_sums(t: &Float, n_terms: u64, channels: &[Channel]) -> Vec<Vec<BallComplex>> {
    let n_terms = n_terms.max(2);
    let half = ((n_terms - 1) / 2) as usize;
    let pc_max = channels.iter().map(|c| c.prec).max().unwrap_or(64);
    let pw = pc_max + 32;
    let spf = smallest_prime_factors(n_terms as usize);

    let mut tab_l: Vec<Float> = Vec::with_capacity(half + 1);
    let mut tab_c: Vec<Float> = Vec::with_capacity(half + 1);
    let mut tab_s: Vec<Float> = Vec::with_capacity(half + 1);
    let mut states: Vec<ChannelState> = channels
        .iter()
        .map(|ch| {
            let unit_sigma = ch.sigma == 1;
            ChannelState {
                unit_sigma,
                sigma_f64: ch.sigma.to_f64(),
                table: if unit_sigma { Vec::new() } else { Vec::with_capacity(half + 1) },
                a: Float::new(pw),
                w_re: Float::new(ch.prec),
                w_im: Float::new(ch.prec),
                acc_re: (0..=ch.order).map(|_| Float::new(ch.prec)).collect(),
                acc_im: (0..=ch.order).map(|_| Float::new(ch.prec)).collect(),
                abs_sum: vec![0.0; ch.order + 1],
            }
        })
        .collect();
    for _ in 0..2 {
        tab_l.push(Float::new(pw));
        tab_c.push(Float::with_val(pw, 1));
        tab_s.push(Float::new(pw));
        for st in states.iter_mut().filter(|s| !s.unit_sigma) {
            st.table.push(Float::with_val(pw, 1));
        }
    }

    let mut l = Float::new(pw);
    let mut c = Float::new(pw);
    let mut s = Float::new(pw);
    let mut tmp = Float::new(pw);
    let mut theta = Float::new(pw);
    for n in 1..n_terms as usize {
        if n == 1 {
            l.assign(0);
            c.assign(1);
            s.assign(0);
            for st in states.iter_mut() {
                st.a.assign(1);
            }
        } else if spf[n] as usize == n {
            l.assign(n as u32);
            l.ln_mut();
            theta.assign(t * &l);
            s.assign(&theta);
            c.assign(&theta);
            s.sin_mut();
            c.cos_mut();
            for (st, ch) in states.iter_mut().zip(channels) {
                if !st.unit_sigma {
                    st.a.assign(&ch.sigma * &l);
                    st.a.neg_assign();
                    st.a.exp_mut();
                }
            }
        } else {
            let p = spf[n] as usize;
            let m = n / p;
            l.assign(&tab_l[p] + &tab_l[m]);
            c.assign(&tab_c[p] * &tab_c[m]);
            tmp.assign(&tab_s[p] * &tab_s[m]);
            c -= &tmp;
            s.assign(&tab_s[p] * &tab_c[m]);
            tmp.assign(&tab_c[p] * &tab_s[m]);
            s += &tmp;
            for st in states.iter_mut().filter(|s| !s.unit_sigma) {
                st.a.assign(&st.table[p] * &st.table[m]);
            }
        }
        if n >= 2 && n <= half {
            tab_l.push(l.clone());
            tab_c.push(c.clone());
            tab_s.push(s.clone());
            for st in states.iter_mut().filter(|s| !s.unit_sigma) {
                st.table.push(st.a.clone());
            }
        }

        let lf = if n == 1 { 0.0 } else { (n as f64).ln() };
        for st in states.iter_mut() {
            // w = n^-sigma e^{-it log n} = a (c - i s)
            let af;
            if st.unit_sigma {
                st.w_re.assign(&c / n as u32);
                st.w_im.assign(&s / n as u32);
                af = 1.0 / n as f64;
            } else {
                st.w_re.assign(&c * &st.a);
                st.w_im.assign(&s * &st.a);
                af = (-st.sigma_f64 * lf).exp();
            }
            st.w_im.neg_assign();
            st.acc_re[0] += &st.w_re;
            st.acc_im[0] += &st.w_im;
            st.abs_sum[0] += af;
            let mut pw_l = af;
            for k in 1..st.acc_re.len() {
                st.w_re *= &l;
                st.w_im *= &l;
                st.acc_re[k] += &st.w_re;
                st.acc_im[k] += &st.w_im;
                pw_l *= lf;
                st.abs_sum[k] += pw_l;
            }
        }
    }

    let n_f = n_terms as f64;
    let log2n = n_f.log2();
    let l_max = n_f.ln();
    let uw = 2f64.powi(1 - pw as i32);
    let t_abs = t.to_f64().abs();
    states
        .into_iter()
        .zip(channels)
        .map(|(st, ch)| {
            let uc = 2f64.powi(1 - ch.prec as i32);
            let sigma_abs = st.sigma_f64.abs();
            let mut out = Vec::with_capacity(ch.order + 1);
            let mut fact = BallReal::one(ch.prec);
            for k in 0..=ch.order {
                if k > 0 {
                    fact = fact.mul_u64(k as u64);
                }
                let kf = k as f64;
                let rel = uw * (3.0 * t_abs * l_max + 3.0 * sigma_abs * l_max + 10.0 * log2n + 8.0 + kf * (2.0 + log2n))
                    + uc * (2.0 + 2.0 * kf);
                let bound = 1.01 * st.abs_sum[k] * (1.0 + 1e-6) * (rel * rel.exp() + uc * n_f);
                let rad = mag::from_f64_up(bound);
                let re = BallReal::new(st.acc_re[k].clone(), &rad);
                let im = BallReal::new(st.acc_im[k].clone(), &rad);
                let mut z = BallComplex::new(re, im).div_real(&fact).expect("k! > 0");
                if k % 2 == 1 {
                    z = z.neg();
                }
                out.push(z);
            }
            out
        })
        .collect()
}

/// Same sums evaluated term by term in ball arithmetic (no shared tables).
/// Slower, used for non-point arguments and as an independent route.
pub(crate) fn dirichlet_sums_ball(s: &BallComplex, n_terms: u64, order: usize, prec: u32) -> Vec<BallComplex> {
    let mut out = vec![BallComplex::zero(prec); order + 1];
    out[0] = BallComplex::one(prec);
    for n in 2..n_terms {
        let ln = BallReal::from_u64(n, prec).ln().expect("n >= 2");
        let mut v = BallComplex::real_pow_neg(&BallReal::from_u64(n, prec), s).expect("n >= 2");
        out[0] = out[0].add(&v);
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            v = v.mul_real(&ln).neg().div_real(&BallReal::from_u64(k as u64, prec)).expect("k > 0");
            *slot = slot.add(&v);
        }
    }
    out
}
