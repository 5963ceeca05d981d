use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use zetabound::precision::{ball_from_decimal, BallComplex, BallReal};
use zetabound::zeta::{
    digamma, log_deriv, log_zeta_one_line, one_line, zeta_with_derivative, EvalConfig, ZetaError,
};

const EULER_GAMMA: &str = "0.57721566490153286060651209008240243104215933593992359880576723";

#[path = "common/oracle.rs"]
mod oracle;
use oracle::{bernoulli, eta_oracle, zeta_oracle};

fn c(re: f64, im: f64, prec: u32) -> BallComplex {
    BallComplex::from_f64(re, im, prec)
}

#[test]
fn oracle_reproduces_eta_two() {
    let e = eta_oracle(&c(2.0, 0.0, 128), 128);
    let pi = BallReal::pi(128);
    let want = pi.sqr().div_u64(12);
    assert!(e.re.overlaps(&want), "{e:?}");
    assert!(e.re.rad_f64() < 1e-30);
}

#[test]
fn zeta_two_is_pi_squared_over_six() {
    for prec in [64u32, 128, 256] {
        let cfg = EvalConfig::with_prec(prec);
        let (z, _) = zeta_with_derivative(&c(2.0, 0.0, prec), &cfg).unwrap();
        let want = BallReal::pi(prec + 32).sqr().div_u64(6);
        assert!(z.re.overlaps(&want), "prec {prec}: {z:?}");
        assert!(z.im.contains_zero());
        assert!(z.re.rad_f64() < 2f64.powi(12 - prec as i32), "prec {prec}: {}", z.re.rad_f64());
    }
}

#[test]
fn zeta_matches_alternating_series_at_three_halves_and_one_plus_100i() {
    for (re, im) in [(1.5, 0.0), (1.0, 100.0)] {
        let s = c(re, im, 128);
        let (z, _) = zeta_with_derivative(&s, &EvalConfig::default()).unwrap();
        let o = zeta_oracle(&s, 160);
        assert!(o.contains(&z) || z.overlaps(&o), "s = {re}+{im}i: {z:?} vs {o:?}");
        assert!(z.re.rad_f64() < 1e-30 && o.re.rad_f64() < 1e-30);
        assert!(z.overlaps(&o));
    }
}

#[test]
fn derivative_matches_difference_quotient() {
    let prec = 192;
    let cfg = EvalConfig::with_prec(prec);
    let s = c(1.25, 37.0, prec);
    let h = BallComplex::new(BallReal::exact(rug::Float::with_val(prec, 1) >> 40u32), BallReal::zero(prec));
    let (_, zd) = zeta_with_derivative(&s, &cfg).unwrap();
    let (zp, _) = zeta_with_derivative(&s.add(&h), &cfg).unwrap();
    let (zm, _) = zeta_with_derivative(&s.sub(&h), &cfg).unwrap();
    let dq = zp.sub(&zm).div(&h.mul_real(&BallReal::from_u64(2, prec))).unwrap();
    // central difference error is O(h^2) ~ 1e-24
    assert!((dq.re.mid_f64() - zd.re.mid_f64()).abs() < 1e-18);
    assert!((dq.im.mid_f64() - zd.im.mid_f64()).abs() < 1e-18);
}

#[test]
fn point_and_ball_routes_agree() {
    let prec = 128;
    let cfg = EvalConfig::default();
    for (re, im) in [(1.0, 250.0), (1.5, 1234.5), (2.0, 10.0), (-1.5, 3.0)] {
        let exact = c(re, im, prec);
        let wide = exact.add_error(&rug::Float::with_val(64, 1e-25));
        let (z0, d0) = zeta_with_derivative(&exact, &cfg).unwrap();
        let (z1, d1) = zeta_with_derivative(&wide, &cfg).unwrap();
        assert!(z1.contains(&z0) || z1.overlaps(&z0), "{re}+{im}i");
        assert!(z1.overlaps(&z0) && d1.overlaps(&d0));
        assert!(z1.re.rad_f64() < 1e-20);
    }
}

#[test]
fn pole_is_rejected() {
    let cfg = EvalConfig::default();
    let e = zeta_with_derivative(&c(1.0, 0.0, 128), &cfg).unwrap_err();
    assert!(matches!(e, ZetaError::Pole(_)));
    let around = c(1.0, 0.0, 128).add_error(&rug::Float::with_val(64, 1e-3));
    assert!(matches!(zeta_with_derivative(&around, &cfg), Err(ZetaError::Pole(_))));
    // near but not containing 1 is fine
    assert!(zeta_with_derivative(&c(1.001, 0.0, 128), &cfg).is_ok());
}

#[test]
fn config_validation() {
    let s = c(1.0, 1000.0, 128);
    let cfg = EvalConfig { em_terms: Some(500), ..EvalConfig::default() };
    assert!(matches!(zeta_with_derivative(&s, &cfg), Err(ZetaError::Config(_))));
    let cfg = EvalConfig { em_terms: Some(1001), em_order: Some(12), ..EvalConfig::default() };
    let (z, _) = zeta_with_derivative(&s, &cfg).unwrap();
    let (z2, _) = zeta_with_derivative(&s, &EvalConfig::default()).unwrap();
    assert!(z.overlaps(&z2));
    let high = c(1.0, 2e7, 64);
    assert!(matches!(zeta_with_derivative(&high, &EvalConfig::default()), Err(ZetaError::Config(_))));
}

/// -sum Lambda(n) n^-s over n <= X, with tail in [0, 1.04 s X^(1-s)/(s-1)]
/// from psi(u) <= 1.04 u.
fn log_deriv_oracle(s: u32, x: usize, prec: u32) -> BallReal {
    let mut spf = vec![0u32; x + 1];
    let mut acc = BallReal::zero(prec);
    for n in 2..=x {
        if spf[n] == 0 {
            let mut m = n;
            while m <= x {
                if spf[m] == 0 {
                    spf[m] = n as u32;
                }
                m += n;
            }
        }
        let p = spf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            let lam = BallReal::from_u64(p as u64, prec).ln().unwrap();
            acc = acc.add(&lam.div(&BallReal::from_u64(n as u64, prec).powi(s as i64).unwrap()).unwrap());
        }
    }
    let tail = 1.04 * s as f64 * (x as f64).powi(1 - s as i32) / (s as f64 - 1.0) * (1.0 + 1e-12);
    let half = BallReal::from_f64(tail / 2.0, 64);
    acc.add(&half).add_error(&half.upper()).neg()
}

#[test]
fn log_deriv_matches_dirichlet_series() {
    for (s, x) in [(2u32, 2_000_000usize), (3, 100_000)] {
        let oracle = log_deriv_oracle(s, x, 128);
        let v = log_deriv(&c(s as f64, 0.0, 128), &EvalConfig::default()).unwrap();
        assert!(oracle.contains(&v.re), "s = {s}: {v:?} vs {oracle:?}");
        assert!(v.im.contains_zero());
    }
}

#[test]
fn log_deriv_is_undecided_near_a_zero_at_low_precision() {
    let cfg = EvalConfig::with_prec(8);
    let s = BallComplex::new(ball_from_decimal("0.5", 8).unwrap(), ball_from_decimal("14.1347", 8).unwrap());
    assert!(matches!(log_deriv(&s, &cfg), Err(ZetaError::Undecided(_))));
}

#[test]
fn log_deriv_at_three_halves_is_bounded_by_the_prime_constant() {
    // sum Lambda(n) n^-3/2 over n <= 10^6 plus tail 3 * 1.04 / 10^3
    let prec = 96;
    let mut spf = vec![0u32; 1_000_001];
    let mut acc = 0.0f64;
    for n in 2..=1_000_000usize {
        if spf[n] == 0 {
            let mut m = n;
            while m <= 1_000_000 {
                if spf[m] == 0 {
                    spf[m] = n as u32;
                }
                m += n;
            }
        }
        let p = spf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            acc += (p as f64).ln() / (n as f64).powf(1.5);
        }
    }
    assert!((acc - 1.5055).abs() < 5e-3, "{acc}");
    let cap = acc * (1.0 + 1e-9) + 3.0 * 1.04 / 1000.0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let t: f64 = rng.gen_range(10.0..1e4);
        let v = log_deriv(&c(1.5, t, prec), &EvalConfig::with_prec(prec)).unwrap();
        assert!(v.abs().upper_f64() <= cap, "t = {t}");
    }
}

#[test]
fn random_points_match_alternating_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = EvalConfig::default();
    for _ in 0..200 {
        let re: f64 = rng.gen_range(1.0..1.5);
        let im: f64 = rng.gen_range(10.0..1e4);
        let s = c(re, im, 128);
        let (z, _) = zeta_with_derivative(&s, &cfg).unwrap();
        let o = zeta_oracle(&s, 128);
        assert!(z.overlaps(&o), "s = {re}+{im}i: {z:?} vs {o:?}");
    }
}

#[test]
fn log_zeta_on_the_one_line() {
    let cfg = EvalConfig::default();
    for t in [100.0, 1e6] {
        let tb = BallReal::from_f64(t, 128);
        let l = log_zeta_one_line(&tb, &cfg).unwrap();
        assert!(l.im.mag_lower() <= l.abs().upper());
        let (z, _) = zeta_with_derivative(&c(1.0, t, 128), &cfg).unwrap();
        let e = l.exp();
        assert!(e.contains(&z), "t = {t}: exp(log) = {e:?}, zeta = {z:?}");
        assert!(l.re.rad_f64() < 1e-12, "t = {t}: {}", l.re.rad_f64());
    }
}

#[test]
fn log_zeta_rejects_small_t() {
    let e = log_zeta_one_line(&BallReal::from_f64(5.0, 128), &EvalConfig::default()).unwrap_err();
    assert!(matches!(e, ZetaError::Domain(_)));
}

#[test]
fn one_line_shares_the_kernel_pass() {
    let cfg = EvalConfig::with_prec(192);
    let t = BallReal::from_f64(12345.0, 192);
    let ol = one_line(&t, &cfg).unwrap();
    let (z, zd) = zeta_with_derivative(&c(1.0, 12345.0, 192), &cfg).unwrap();
    assert!(ol.zeta.overlaps(&z) && ol.zeta_prime.overlaps(&zd));
    assert!(ol.zeta.re.rad_f64() < 1e-50);
    assert!(ol.log_zeta.unwrap().exp().contains(&z));
    let lw = one_line(&t.add_error_f64(1e-20), &EvalConfig::default()).unwrap();
    assert!(lw.zeta.overlaps(&z));
}

#[test]
fn random_heights_log_zeta_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cfg = EvalConfig::default();
    for _ in 0..50 {
        let t = 10f64.powf(rng.gen_range(2.0..6.0));
        let ol = one_line(&BallReal::from_f64(t, 128), &cfg).unwrap();
        let l = ol.log_zeta.unwrap();
        assert!(l.exp().overlaps(&ol.zeta), "t = {t}");
    }
}

fn psi_asymptotic(w: &BallComplex, prec: u32) -> BallComplex {
    // log w - 1/(2w) - sum_{k<=10} B_2k/(2k w^2k), remainder <= 2 |B_22|/(22 |w|^22)
    let b = bernoulli(22);
    let mut acc = w.ln().unwrap().sub(&w.recip().unwrap().mul_real(&BallReal::from_f64(0.5, prec)));
    let w2 = w.sqr();
    let mut pw = BallComplex::one(prec);
    for k in 1..=10usize {
        pw = pw.mul(&w2);
        let coef = BallReal::from_rational(&Rational::from(&b[2 * k] / Rational::from(2 * k as u32)), prec);
        acc = acc.sub(&pw.recip().unwrap().mul_real(&coef));
    }
    let wl = w.abs().lower_f64();
    let b22 = b[22].to_f64().abs();
    acc.add_error(&rug::Float::with_val(64, 2.0 * b22 / 22.0 / wl.powi(22) * (1.0 + 1e-9)))
}

fn psi_oracle(z: &BallComplex, prec: u32) -> BallComplex {
    let shift = 20u64;
    let mut w = z.clone();
    let mut sum = BallComplex::zero(prec);
    for _ in 0..shift {
        sum = sum.add(&w.recip().unwrap());
        w = w.add(&BallComplex::one(prec));
    }
    psi_asymptotic(&w, prec).sub(&sum)
}

#[test]
fn digamma_values() {
    let prec = 128;
    let g = ball_from_decimal(EULER_GAMMA, prec).unwrap();
    let p1 = digamma(&c(1.0, 0.0, prec)).unwrap();
    assert!(p1.re.overlaps(&g.neg()) && p1.re.rad_f64() < 0.01);
    let p2 = digamma(&c(2.0, 0.0, prec)).unwrap();
    assert!(p2.re.overlaps(&g.neg().add_f64(1.0)));
    let z = c(1.0, 1.0, prec);
    let o = psi_oracle(&z, prec);
    let d = digamma(&z).unwrap();
    assert!(d.contains(&o) || d.overlaps(&o), "{d:?} vs {o:?}");
    assert!(matches!(digamma(&c(0.0, 0.0, prec)), Err(ZetaError::Pole(_))));
    assert!(matches!(digamma(&c(-3.0, 0.0, prec)), Err(ZetaError::Pole(_))));
    assert!(digamma(&c(-2.5, 0.0, prec)).is_ok());
}

#[test]
fn digamma_remainder_bound_holds() {
    let prec = 128;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let r: f64 = rng.gen_range(8.0..200.0);
        let th: f64 = rng.gen_range(-std::f64::consts::FRAC_PI_2..std::f64::consts::FRAC_PI_2);
        let z = c(r * th.cos(), r * th.sin(), prec);
        let psi = psi_oracle(&z, prec);
        let approx = z.ln().unwrap().sub(&z.recip().unwrap().mul_real(&BallReal::from_f64(0.5, prec)));
        let diff = psi.sub(&approx).abs();
        let bound = z.norm_sqr().mul_u64(4).recip().unwrap();
        assert!(diff.upper() <= bound.lower(), "z = {z:?}");
        let d = digamma(&z).unwrap();
        assert!(d.overlaps(&psi));
    }
}
