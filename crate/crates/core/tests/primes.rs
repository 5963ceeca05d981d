use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;
use std::sync::OnceLock;
use zetabound::precision::{BallComplex, BallReal};
use zetabound::primes::{
    reference_bound, reference_inequality_check, reference_margins, sieve_mangoldt, weighted_sum, weighted_sums,
    PrimeError, PrimeTable, ReferenceInequality,
};

#[path = "common/oracle.rs"]
mod oracle;

const PREC: u32 = 128;

fn big() -> &'static PrimeTable {
    static T: OnceLock<PrimeTable> = OnceLock::new();
    T.get_or_init(|| sieve_mangoldt(10_000_000).unwrap())
}

// trial division: Some(p) when n = p^k
fn prime_base(n: u64) -> Option<u64> {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return (m == 1).then_some(p);
        }
        p += 1;
    }
    (n >= 2).then_some(n)
}

fn log_grid() -> Vec<f64> {
    (2..=14).map(|k| 10f64.powf(k as f64 / 2.0)).collect()
}

#[test]
fn sieve_to_ten() {
    let t = sieve_mangoldt(10).unwrap();
    let nonzero: Vec<u64> = (1..=10).filter(|&n| !t.mangoldt(n, PREC).contains_zero()).collect();
    assert_eq!(nonzero, vec![2, 3, 4, 5, 7, 8, 9]);
    assert!(t.mangoldt(8, PREC).overlaps(&BallReal::ln2(PREC)));
    assert!(t.mangoldt(6, PREC).is_exact() && t.mangoldt(6, PREC).contains_f64(0.0));
    assert_eq!(t.prime_power(9), Some((3, 2)));
    assert_eq!(t.prime_power(11), None);
    assert!(matches!(sieve_mangoldt(1), Err(PrimeError::Argument(1))));
    assert!(matches!(sieve_mangoldt(0), Err(PrimeError::Argument(0))));
}

#[test]
fn sieve_matches_trial_division() {
    let t = sieve_mangoldt(20_000).unwrap();
    for n in 2..=20_000u64 {
        assert_eq!(t.prime_power(n).map(|(p, _)| p), prime_base(n), "n = {n}");
    }
}

#[test]
fn sum_to_ten_by_enumeration() {
    let t = sieve_mangoldt(100).unwrap();
    let mut want = Float::with_val(256, 0);
    for n in 2..=10u64 {
        if let Some(p) = prime_base(n) {
            want += Float::with_val(256, p).ln() / n;
        }
    }
    let s = weighted_sum(&t, 10.0, 1.0, 0, PREC).unwrap();
    assert!(s.contains_float(&want), "{s:?}");
    assert!((s.mid_f64() - 1.6947).abs() < 1e-4);
    assert!(s.rad_f64() < 1e-30);
    assert_eq!(weighted_sum(&t, 10.9, 1.0, 0, PREC).unwrap(), s);
}

#[test]
fn single_term_sum_is_one_half() {
    let t = sieve_mangoldt(10).unwrap();
    let s = weighted_sum(&t, 2.0, 1.0, 1, PREC).unwrap();
    assert!(s.contains_f64(0.5));
    assert!(s.rad_f64() < 1e-35);
}

#[test]
fn three_halves_sum_approaches_log_zeta() {
    let s = weighted_sum(big(), 1e6, 1.5, 1, PREC).unwrap();
    let z = oracle::zeta_oracle(&BallComplex::from_f64(1.5, 0.0, PREC), PREC);
    let log_zeta = z.re.ln().unwrap();
    assert!((log_zeta.mid_f64() - 0.960).abs() < 1e-3);
    let gap = log_zeta.sub(&s);
    // tail below 2 / (sqrt(x) log x)
    assert!(gap.is_positive() && gap.upper_f64() < 2.0 / (1e3 * 1e6f64.ln()));
    assert!(gap.upper_f64() < 1e-3);
}

#[test]
fn general_alpha_matches_special_paths() {
    let t = sieve_mangoldt(1000).unwrap();
    for (a, b) in [(1.0, 0u8), (1.5, 1)] {
        let fast = weighted_sum(&t, 1000.0, a, b, PREC).unwrap();
        let nudged = weighted_sum(&t, 1000.0, a + 1e-12, b, PREC).unwrap();
        assert!((fast.mid_f64() - nudged.mid_f64()).abs() < 1e-9);
    }
    let s = weighted_sum(&t, 1000.0, 1.25, 0, PREC).unwrap();
    let mut want = Float::with_val(256, 0);
    for n in 2..=1000u64 {
        if let Some(p) = prime_base(n) {
            want += Float::with_val(256, p).ln() / Float::with_val(256, n).pow(1.25);
        }
    }
    assert!(s.contains_float(&want));
}

#[test]
fn argument_and_coverage_errors() {
    let t = sieve_mangoldt(1000).unwrap();
    match weighted_sum(&t, 5000.0, 1.0, 0, PREC) {
        Err(e @ PrimeError::Coverage { required: 5000, .. }) => assert!(e.to_string().contains("5000")),
        other => panic!("{other:?}"),
    }
    assert!(matches!(weighted_sum(&t, 100.0, 1.0, 2, PREC), Err(PrimeError::Invalid(_))));
    assert!(matches!(weighted_sum(&t, f64::NAN, 1.0, 0, PREC), Err(PrimeError::Invalid(_))));
    assert!(matches!(t.chebyshev_psi(1001, PREC), Err(PrimeError::Coverage { .. })));
    assert!(reference_bound(1.0, ReferenceInequality::Ramare, PREC).is_err());
    assert!(matches!(
        reference_inequality_check(&t, 2000.0, ReferenceInequality::Rosser, PREC),
        Err(PrimeError::Coverage { .. })
    ));
}

#[test]
fn reference_inequalities_at_examples() {
    let small = sieve_mangoldt(100).unwrap();
    for which in [ReferenceInequality::Ramare, ReferenceInequality::Rosser] {
        let m = reference_inequality_check(&small, 100.0, which, PREC).unwrap();
        assert!(m.is_positive());
    }
    // direct enumeration at 100
    let g = Float::with_val(256, rug::float::Constant::Euler);
    let l = Float::with_val(256, 100).ln();
    let (mut ram, mut ros) = (Float::with_val(256, 0), Float::with_val(256, 0));
    for n in 2..=100u64 {
        if let Some(p) = prime_base(n) {
            let lp = Float::with_val(256, p).ln();
            ram += lp.clone() / n;
            ros += lp / (Float::with_val(256, n).ln() * n);
        }
    }
    let inv_sq = Float::with_val(256, 1) / l.clone().square();
    let ram_margin = l.clone() - &g + inv_sq.clone() * 13 / 10 - ram;
    let ros_margin = l.ln() + &g + inv_sq - ros;
    let m = reference_margins(&small, &[100.0], ReferenceInequality::Ramare, PREC).unwrap();
    assert!(m[0].contains_float(&ram_margin));
    let m = reference_margins(&small, &[100.0], ReferenceInequality::Rosser, PREC).unwrap();
    assert!(m[0].contains_float(&ros_margin));

    let m = reference_inequality_check(big(), 1e7, ReferenceInequality::Ramare, PREC).unwrap();
    assert!(m.is_positive());
}

#[test]
fn reference_inequalities_on_log_grid() {
    let xs = log_grid();
    for which in [ReferenceInequality::Ramare, ReferenceInequality::Rosser] {
        let margins = reference_margins(big(), &xs, which, PREC).unwrap();
        for (x, m) in xs.iter().zip(&margins) {
            assert!(m.is_positive(), "{which:?} at {x}: {m:?}");
        }
    }
}

#[test]
fn sums_are_nondecreasing() {
    let xs: Vec<f64> = (0..60).map(|i| 2.0 + 1.37f64.powi(i)).filter(|&x| x <= 1e7).collect();
    for (a, b) in [(1.0, 0u8), (1.0, 1), (1.5, 1), (1.2, 0)] {
        let sums = weighted_sums(big(), &xs, a, b, PREC).unwrap();
        for w in sums.windows(2) {
            assert!(w[1].upper() >= w[0].lower());
            assert!(w[1].mid_f64() >= w[0].mid_f64());
        }
        // unsorted cutoffs give the same values
        let rev: Vec<f64> = xs.iter().rev().copied().collect();
        let back = weighted_sums(big(), &rev, a, b, PREC).unwrap();
        assert!(sums.iter().eq(back.iter().rev()));
    }
}

#[test]
fn prime_power_rearrangement() {
    let t = sieve_mangoldt(1000).unwrap();
    for x in [2u64, 3, 10, 30, 97, 128, 500, 729, 1000] {
        let s = weighted_sum(&t, x as f64, 1.0, 1, PREC).unwrap();
        // sum over p <= x of sum_{k: p^k <= x} 1/(k p^k)
        let mut exact = rug::Rational::new();
        // log prod (1 - 1/p)^{-1} minus the k-truncation deficit
        let mut euler = BallReal::zero(PREC);
        for p in (2..=x).filter(|&n| t.is_prime(n)) {
            let mut pk = p;
            let mut k = 1u64;
            while pk <= x {
                exact += rug::Rational::from((1, k * pk));
                pk *= p;
                k += 1;
            }
            let pb = BallReal::from_u64(p, PREC);
            let factor = BallReal::one(PREC).sub(&pb.recip().unwrap());
            euler = euler.sub(&factor.ln().unwrap());
            // deficit: sum_{j >= k} 1/(j p^j), between its first term and first / (1 - 1/p)
            let first = BallReal::from_rational(&rug::Rational::from((1, k)), PREC).div(&pb.powi(k as i64).unwrap()).unwrap();
            let deficit = BallReal::from_endpoints(&first.lower(), &first.div(&factor).unwrap().upper(), PREC);
            euler = euler.sub(&deficit);
        }
        assert!(s.contains_rational(&exact), "x = {x}");
        assert!(euler.overlaps(&s), "x = {x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_is_nondecreasing(a in 2u64..20_000, b in 2u64..20_000) {
        let t = sieve_mangoldt(20_000).unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        let p_lo = t.chebyshev_psi(lo, 96).unwrap();
        let p_hi = t.chebyshev_psi(hi, 96).unwrap();
        prop_assert!(p_hi.upper() >= p_lo.lower());
        prop_assert!(p_hi.mid_f64() >= p_lo.mid_f64());
    }

    #[test]
    fn mangoldt_nonzero_iff_prime_power(n in 2u64..1_000_000) {
        let t = big();
        let l = t.mangoldt(n, 64);
        match prime_base(n) {
            Some(p) => prop_assert!(l.overlaps(&BallReal::from_u64(p, 64).ln().unwrap()) && l.is_positive()),
            None => prop_assert!(l.is_exact() && l.contains_f64(0.0)),
        }
    }
}
