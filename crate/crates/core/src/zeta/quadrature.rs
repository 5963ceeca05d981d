//! Certified Gauss-Legendre rule on [-1, 1].

use crate::precision::BallReal;
use rug::Float;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub(crate) const NODES: usize = 8;

fn legendre(n: usize, x: &BallReal) -> (BallReal, BallReal) {
    let prec = x.prec();
    let mut p0 = BallReal::one(prec);
    let mut p1 = x.clone();
    for k in 1..n {
        let p2 = x
            .mul(&p1)
            .mul_u64(2 * k as u64 + 1)
            .sub(&p0.mul_u64(k as u64))
            .div_u64(k as u64 + 1);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn legendre_f64(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Nodes and weights, each a ball certified by a sign change of P_n.
fn compute(prec: u32) -> Vec<(BallReal, BallReal)> {
    let n = NODES;
    let wp = prec + 32;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..20 {
            let (p, q) = legendre_f64(n, x);
            let d = n as f64 * (x * p - q) / (x * x - 1.0);
            x -= p / d;
        }
        let mut xm = Float::with_val(wp, x);
        for _ in 0..12 {
            let xb = BallReal::exact(xm.clone());
            let (p, q) = legendre(n, &xb);
            let x2m1 = xb.sqr().add_f64(-1.0);
            let d = xb.mul(&p).sub(&q).mul_u64(n as u64).div(&x2m1).expect("interior node");
            let step = p.div(&d).expect("simple root");
            xm -= step.mid();
        }
        let mut eps = Float::with_val(wp, 1);
        eps >>= prec + 4;
        let lo = BallReal::exact(Float::with_val(wp, &xm - &eps));
        let hi = BallReal::exact(Float::with_val(wp, &xm + &eps));
        let (pl, _) = legendre(n, &lo);
        let (ph, _) = legendre(n, &hi);
        assert!(
            (pl.is_positive() && ph.is_negative()) || (pl.is_negative() && ph.is_positive()),
            "Gauss node {i} not isolated"
        );
        let node = BallReal::from_endpoints(&lo.lower(), &hi.upper(), wp);
        let (p, q) = legendre(n, &node);
        let x2m1 = node.sqr().add_f64(-1.0);
        let dp = node.mul(&p).sub(&q).mul_u64(n as u64).div(&x2m1).expect("interior node");
        let weight = BallReal::from_u64(2, wp)
            .div(&x2m1.neg().mul(&dp.sqr()))
            .expect("nonzero derivative");
        out.push((node.with_prec(prec), weight.with_prec(prec)));
    }
    out
}

pub(crate) fn rule(prec: u32) -> Vec<(BallReal, BallReal)> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<(BallReal, BallReal)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let v = compute(prec);
    cache.lock().unwrap().insert(prec, v.clone());
    v
}

/// Error constant (n!)^4 / ((2n+1) ((2n)!)^2) for the n-point rule, so that
/// the error over a panel of half-width hp is at most
/// C (2 hp)^(2n+1) sup|f| / r^(2n) with f analytic within distance r.
pub(crate) fn error_constant() -> BallReal {
    let n = NODES as u64;
    let mut nf = rug::Integer::from(1);
    for k in 1..=n {
        nf *= k;
    }
    let mut n2f = rug::Integer::from(1);
    for k in 1..=2 * n {
        n2f *= k;
    }
    let num = rug::Integer::from(&nf * &nf) * rug::Integer::from(&nf * &nf);
    let den = rug::Integer::from(2 * n + 1) * rug::Integer::from(&n2f * &n2f);
    BallReal::from_rational(&rug::Rational::from((num, den)), 64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let r = rule(128);
        let w: BallReal = r.iter().fold(BallReal::zero(128), |a, (_, w)| a.add(w));
        assert!(w.contains_f64(2.0) && w.rad_f64() < 1e-30);
        // int x^14 = 2/15
        let m: BallReal = r
            .iter()
            .fold(BallReal::zero(128), |a, (x, w)| a.add(&w.mul(&x.powi(14).unwrap())));
        let q = rug::Rational::from((2, 15));
        assert!(m.contains_rational(&q));
        assert!(m.rad_f64() < 1e-30);
    }
}
