//! Coefficients b_j = B_{2j} / (2j)! of the Euler-Maclaurin corrections.

use crate::precision::BallReal;
use rug::{Integer, Rational};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

const EXACT_MAX_J: usize = 30;

fn exact_table() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let m_max = 2 * EXACT_MAX_J;
        // B_m from sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut b: Vec<Rational> = vec![Rational::from(1)];
        for m in 1..=m_max {
            let mut acc = Rational::new();
            for (k, bk) in b.iter().enumerate() {
                acc += Rational::from(Integer::from(Integer::binomial_u(m as u32 + 1, k as u32))) * bk;
            }
            b.push(-acc / Rational::from(m as u32 + 1));
        }
        let mut out = vec![Rational::new()];
        let mut fact = Integer::from(1);
        for j in 1..=EXACT_MAX_J {
            fact *= (2 * j - 1) as u32;
            fact *= (2 * j) as u32;
            out.push(Rational::from(&b[2 * j] / Rational::from(fact.clone())));
        }
        out
    })
}

/// Exact rational B_{2j}/(2j)! for small j.
pub fn exact(j: usize) -> Option<Rational> {
    if j == 0 || j > EXACT_MAX_J {
        return None;
    }
    Some(exact_table()[j].clone())
}

/// (-1)^(j+1) 2 zeta(2j) / (2 pi)^(2j), with zeta(2j) enclosed by a partial
/// sum and its integral tail.
fn from_zeta(j: usize, prec: u32, two_pi: &BallReal) -> BallReal {
    let e = 2 * j as i64;
    let bits = prec as f64 + 8.0;
    let m = (2f64.powf(bits / (e as f64 - 1.0))).ceil().max(2.0) as u64;
    let mut z = BallReal::one(prec);
    for n in 2..=m {
        z = z.add(&BallReal::from_u64(n, prec).powi(-e).expect("n >= 2"));
    }
    // sum_{n>m} n^-e <= m^(1-e) / (e-1)
    let tail = BallReal::from_u64(m, 64)
        .powi(1 - e)
        .expect("m >= 2")
        .div_u64(e as u64 - 1);
    let half = tail.upper();
    let mut half = half;
    half >>= 1;
    let z = z.add(&BallReal::new(half.clone(), &half));
    let v = z.mul_2exp(1).div(&two_pi.powi(e).expect("2 pi > 0")).expect("nonzero");
    if j % 2 == 1 {
        v
    } else {
        v.neg()
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Vec<BallReal>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BallReal>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// b_1 ..= b_m as balls at `prec` bits (index 0 unused).
pub fn coefficients(m: usize, prec: u32) -> Vec<BallReal> {
    {
        let guard = cache().lock().unwrap();
        if let Some(v) = guard.get(&prec) {
            if v.len() > m {
                return v[..=m].to_vec();
            }
        }
    }
    let mut v = vec![BallReal::zero(prec)];
    let two_pi = BallReal::pi(prec + 16).mul_2exp(1);
    let target = m.max(64);
    for j in 1..=target {
        v.push(match exact(j) {
            Some(q) => BallReal::from_rational(&q, prec),
            None => from_zeta(j, prec, &two_pi).with_prec(prec),
        });
    }
    let out = v[..=m].to_vec();
    let mut guard = cache().lock().unwrap();
    let entry = guard.entry(prec).or_default();
    if entry.len() < v.len() {
        *entry = v;
    }
    out
}

/// log |b_j| estimate in f64, used only for choosing truncation orders.
pub fn ln_abs_estimate(j: usize) -> f64 {
    // |b_j| = 2 zeta(2j) / (2 pi)^(2j), and 1 < zeta(2j) <= 1.65
    std::f64::consts::LN_2 + (1.0 + 2f64.powi(-(2 * j as i32)) * 3.0).ln()
        - 2.0 * j as f64 * (2.0 * std::f64::consts::PI).ln()
}
