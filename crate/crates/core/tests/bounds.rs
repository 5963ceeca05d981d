use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use zetabound::bounds::{
    audit_constants, comparison_bounds, constants, default_audit_grid, e_delta, epsilon_factor,
    general_alpha_bound, rho_coefficient, solve_lambda0, theorem_bounds, BoundParams, BoundsError, Constants,
    Quantity, StepStatus,
};
use zetabound::primes::{sieve_mangoldt, weighted_sum, PrimeTable};

fn consts() -> &'static Constants {
    static C: OnceLock<Constants> = OnceLock::new();
    C.get_or_init(|| constants(128))
}

fn primes() -> &'static PrimeTable {
    static P: OnceLock<PrimeTable> = OnceLock::new();
    P.get_or_init(|| sieve_mangoldt(1_000_000).unwrap())
}

#[test]
fn lambda0_and_a0() {
    let (l, a) = solve_lambda0(128);
    assert!(l.lower_f64() >= 1.2784 && l.upper_f64() < 1.2785, "{l:?}");
    assert!(a.lower_f64() >= 3.5911 && a.upper_f64() < 3.5912, "{a:?}");
    assert!(l.rad_f64() < 1e-35);
    let res = l.exp().mul(&l.add_f64(-1.0)).add_f64(-1.0);
    assert!(res.contains_zero());
    let a_again = l.exp().add_f64(1.0).div(&l).unwrap();
    assert!(a_again.overlaps(&a));
}

#[test]
fn log_zeta_three_halves() {
    let c = consts();
    assert!((c.log_zeta_32.mid_f64() - 0.960).abs() < 1e-3, "{:?}", c.log_zeta_32);
    let x = 1e6;
    let partial = weighted_sum(primes(), x, 1.5, 1, 128).unwrap();
    // 0 <= tail <= sum_{n > x} n^-3/2 <= 2/sqrt(x)
    assert!(c.log_zeta_32.lower() >= partial.lower());
    assert!(c.log_zeta_32.upper_f64() <= partial.upper_f64() + 2.0 / x.sqrt());
    assert!(c.euler_gamma.contains_f64(0.5772156649015329) || (c.euler_gamma.mid_f64() - 0.5772156649015329).abs() < 1e-16);
}

#[test]
fn e_delta_values() {
    let v = e_delta(3e12, 1e-5, 128).unwrap();
    let direct = (1e10 + 1.0) * (3e12f64).ln() / (2.0 * std::f64::consts::PI * 3e12);
    assert!((v.mid_f64() / direct - 1.0).abs() < 1e-12);
    assert!((v.mid_f64() - 0.01524).abs() < 1e-5);
    let e = std::f64::consts::E;
    let near_one = e_delta(e, 1.0 - 1e-12, 128).unwrap();
    assert!((near_one.mid_f64() - 2.0 / (2.0 * std::f64::consts::PI * e)).abs() < 1e-9);
    assert!(e_delta(1e10, 0.1, 128).unwrap().upper() < e_delta(1e9, 0.1, 128).unwrap().lower());
    assert!(e_delta(1e10, 0.2, 128).unwrap().upper() < e_delta(1e10, 0.1, 128).unwrap().lower());
    assert!(matches!(e_delta(0.5, 0.1, 128), Err(BoundsError::Argument(_))));
    assert!(matches!(e_delta(1e9, 1.0, 128), Err(BoundsError::Argument(_))));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let t1: f64 = 10f64.powf(rng.gen_range(0.5..13.0));
        let t2 = t1 * rng.gen_range(1.001..10.0);
        let d: f64 = rng.gen_range(1e-6..0.99);
        assert!(e_delta(t2, d, 128).unwrap().upper() < e_delta(t1, d, 128).unwrap().lower());
        let d2 = d + (1.0 - d) * rng.gen_range(0.01..0.99);
        assert!(e_delta(t1, d2, 128).unwrap().upper() < e_delta(t1, d, 128).unwrap().lower());
    }
}

#[test]
fn epsilon_values() {
    let c = consts();
    let l6 = (1e6f64).ln();
    let a0 = 3.591121;
    let oracle = |alpha: f64| 1.0 / (l6.powf(2.0 * alpha - 1.0) / a0 - 1.0);
    let e1 = epsilon_factor(1.0, 1e6, c).unwrap();
    let e15 = epsilon_factor(1.5, 1e6, c).unwrap();
    assert!((e1.mid_f64() - 0.3512).abs() < 1e-4 && (e1.mid_f64() - oracle(1.0)).abs() < 1e-5);
    assert!((e15.mid_f64() - 0.0192).abs() < 1e-4 && (e15.mid_f64() - oracle(1.5)).abs() < 1e-5);
    assert!(epsilon_factor(1.0, 1e12, c).unwrap().upper() < e1.lower());
    assert!(rho_coefficient(1.0, 1e6, c).unwrap().upper() < 1);
    assert!(matches!(epsilon_factor(1.0, 10.0, c), Err(BoundsError::Undecided(_))));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let alpha = rng.gen_range(1.0..=1.5);
        let t = 10f64.powf(rng.gen_range(6.0..12.5));
        let ea = epsilon_factor(alpha, t, c).unwrap();
        let e1 = epsilon_factor(1.0, t, c).unwrap();
        assert!(ea.upper() <= e1.upper());
        assert!(rho_coefficient(alpha, t, c).unwrap().upper() < 1);
    }
}

fn mangoldt(n: u64) -> f64 {
    for p in 2..=n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
    }
    0.0
}

#[test]
fn general_alpha_bound_terms() {
    let c = consts();
    let params = BoundParams::platt_trudgian(128);
    let t = 1e6;
    let l6 = (t as f64).ln();
    let x = l6 * l6;
    let lam = c.lambda0.mid_f64();
    let a0 = c.a0.mid_f64();
    let e = params.e_delta.mid_f64();
    for alpha in [1.0f64, 1.5] {
        let v = general_alpha_bound(alpha, t, &params, c, primes()).unwrap();
        let eps = 1.0 / (l6.powf(2.0 * alpha - 1.0) / a0 - 1.0);
        let sum: f64 = (2..=x.floor() as u64).map(|n| mangoldt(n) / (n as f64).powf(alpha)).sum();
        let oracle = (1.0 + eps) * (a0 / 2.0 * l6.powf(2.0 - 2.0 * alpha) + sum + (2.0 * alpha - 1.0) / lam * e + 3.2 / (t * t));
        assert!((v.mid_f64() - oracle).abs() < 1e-10 * oracle, "alpha = {alpha}: {v:?} vs {oracle}");
    }
    let bigger = BoundParams::new(3e12, 1e-6, 128).unwrap();
    let v1 = general_alpha_bound(1.2, t, &params, c, primes()).unwrap();
    let v2 = general_alpha_bound(1.2, t, &bigger, c, primes()).unwrap();
    assert!(v2.lower() > v1.upper());
    assert!(matches!(general_alpha_bound(1.0, 1e5, &params, c, primes()), Err(BoundsError::Argument(_))));
    assert!(matches!(general_alpha_bound(1.0, 2.99999e12, &params, c, primes()), Err(BoundsError::Argument(_))));
}

#[test]
fn theorem_bounds_at_one_million() {
    let c = consts();
    let params = BoundParams::platt_trudgian(128);
    let b = theorem_bounds(1e6, &params, c).unwrap();
    let l = (1e6f64).ln();
    assert!((b.logderiv.mid_f64() - 8.823).abs() < 1e-3, "{:?}", b.logderiv);
    assert!(b.logderiv.upper_f64() <= 0.639 * l);
    assert!((b.inv_zeta.mid_f64() - 34.62).abs() < 5e-3);
    assert!(b.inv_zeta.upper_f64() <= 2.506 * l);
    assert_eq!(b.inv_zeta, b.zeta);
    assert!(!b.limit);
    let lim = theorem_bounds(1e6, &BoundParams::limit(128), c).unwrap();
    let ll = l.ln();
    assert!(lim.limit);
    assert!((lim.logderiv.mid_f64() - (2.0 * ll + 1.219 + 16.108 / (ll * ll))).abs() < 1e-12);
    assert!(matches!(theorem_bounds(5e5, &params, c), Err(BoundsError::Argument(_))));
}

#[test]
fn logderiv_bound_is_nondecreasing() {
    let c = consts();
    let params = BoundParams::platt_trudgian(128);
    let mut prev: Option<zetabound::precision::BallReal> = None;
    for i in 0..2000 {
        let t = 10f64.powf(6.0 + 6.4 * i as f64 / 1999.0);
        let b = theorem_bounds(t, &params, c).unwrap().logderiv;
        if let Some(p) = prev {
            assert!(b.upper() >= p.lower(), "t = {t}");
            assert!(b.mid_f64() >= p.mid_f64());
        }
        prev = Some(b);
    }
}

#[test]
fn comparison_values() {
    let v = comparison_bounds(1e6, 128).unwrap();
    let get = |n: &str| v.iter().find(|b| b.name == n).unwrap();
    // min{13.8155, 6.9078 + 1.93, 2.7631 + 44.02}
    assert!((get("patel_zeta").value.mid_f64() - 8.8378).abs() < 1e-4);
    assert!((get("trudgian_logderiv").value.mid_f64() - 554.6).abs() < 0.05);
    assert_eq!(get("patel_zeta").quantity, Quantity::Zeta);
    assert!(!get("lls_inv_zeta").in_window && !get("csv_logderiv").in_window);
    assert!(get("corollary_logderiv").in_window);
    let edge = comparison_bounds(133.0, 128).unwrap();
    assert!(edge.iter().find(|b| b.name == "cchm_inv_zeta").unwrap().in_window);
    assert!(edge.iter().all(|b| b.value.is_finite()));
}

#[test]
fn audit_passes_on_the_default_grid() {
    let c = consts();
    let params = BoundParams::platt_trudgian(128);
    let report = audit_constants(&params, &default_audit_grid(200), c).unwrap();
    for s in &report.steps {
        assert_eq!(s.status, StepStatus::Pass, "{s:?}");
    }
    assert!(report.passed() && report.failure().is_none());
    let coeff = report.steps.iter().find(|s| s.name == "coefficients").unwrap();
    assert!(coeff.detail.contains("1.0569") && coeff.detail.contains("0.7926"), "{}", coeff.detail);
    assert!((0.8093f64 * 3.404 * 3.404 - 9.3776).abs() < 1e-4);
}
