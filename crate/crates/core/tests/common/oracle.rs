//! Alternating-series oracle for zeta, independent of the Euler-Maclaurin evaluator.

use rug::{Integer, Rational};
use zetabound::precision::{BallComplex, BallReal};

pub fn bernoulli(n_max: usize) -> Vec<Rational> {
    let mut b = vec![Rational::from(1)];
    for m in 1..=n_max {
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from(Integer::binomial_u(m as u32 + 1, k as u32)) * bk;
        }
        b.push(-acc / Rational::from(m as u32 + 1));
    }
    b
}

/// eta(s) = sum (-1)^(n-1) n^-s: direct sum to N-1 plus Boole summation of
/// the tail with Euler-number corrections E_k(0) and a remainder bound
/// 3 |(s)_m| / (pi^m (sigma+m-1) N^(sigma+m-1)).
pub fn eta_oracle(s: &BallComplex, prec: u32) -> BallComplex {
    let m = 80usize;
    let n = (s.abs().upper_f64().ceil() as u64 + 200) & !1;
    let mut acc = BallComplex::zero(prec);
    for k in 1..n {
        let v = BallComplex::real_pow_neg(&BallReal::from_u64(k, prec), s).unwrap();
        acc = if k % 2 == 1 { acc.add(&v) } else { acc.sub(&v) };
    }
    let b = bernoulli(m + 1);
    let nb = BallReal::from_u64(n, prec);
    let n_pow = BallComplex::real_pow_neg(&nb, s).unwrap();
    // f^(k)(N) = (-1)^k (s)_k N^(-s-k)
    let mut poch = BallComplex::one(prec);
    let mut inv_nk = BallReal::one(prec);
    let mut fact = BallReal::one(prec);
    let mut tail = BallComplex::zero(prec);
    for k in 0..m {
        if k > 0 {
            poch = poch.mul(&s.add(&BallComplex::from_real(BallReal::from_u64(k as u64 - 1, prec))));
            inv_nk = inv_nk.div(&nb).unwrap();
            fact = fact.mul_u64(k as u64);
        }
        let e_k = if k == 0 {
            Rational::from(1)
        } else {
            let two_pow = Rational::from(Integer::from(1) << (k as u32 + 1));
            Rational::from(2) * (Rational::from(1) - two_pow) * &b[k + 1] / Rational::from(k as u32 + 1)
        };
        if e_k == 0 {
            continue;
        }
        let mut term = poch.mul(&n_pow).mul_real(&inv_nk).mul_real(&BallReal::from_rational(&e_k, prec));
        term = term.div_real(&fact).unwrap();
        if k % 2 == 1 {
            term = term.neg();
        }
        tail = tail.add(&term);
    }
    tail = tail.mul_real(&BallReal::from_f64(0.5, prec));
    // sum_{j >= N} (-1)^j f(j) with N even; eta picks up -(that sum)
    let sigma = s.re.lower_f64();
    let mut poch_m = BallReal::one(64);
    for i in 0..m {
        poch_m = poch_m.mul(&BallReal::exact(s.add(&BallComplex::from_real(BallReal::from_u64(i as u64, prec))).abs().upper()));
    }
    let a = sigma + m as f64 - 1.0;
    let pi_m = BallReal::pi(64).powi(m as i64).unwrap();
    let n_a = BallReal::from_u64(n, 64).pow(&BallReal::from_f64(a, 64)).unwrap();
    let rem = poch_m.mul_u64(3).div(&pi_m.mul(&n_a).mul_f64(a * (1.0 - 1e-15))).unwrap();
    acc.sub(&tail).add_error(&rem.upper())
}

pub fn zeta_oracle(s: &BallComplex, prec: u32) -> BallComplex {
    let two = BallReal::from_u64(2, prec);
    let one = BallComplex::one(prec);
    let factor = one.sub(&BallComplex::real_pow_neg(&two, &s.sub(&one)).unwrap());
    eta_oracle(s, prec).div(&factor).unwrap()
}
