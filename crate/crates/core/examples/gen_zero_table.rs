//! Regenerates the zero-ordinate fixture used by the test suites.
//!
//! Brackets sign changes of Hardy's Z function between good Gram points with a
//! Riemann-Siegel main sum, then refines every bracket with an Euler-Maclaurin
//! evaluation of zeta(1/2 + it) whose phases are carried in double-double.
//!
//! ```text
//! cargo run --release -p zetabound --example gen_zero_table -- 100000 out.txt
//! ```

use rug::Float;
use std::f64::consts::PI;
use std::io::{BufWriter, Write};

const TWO_PI_HI: f64 = 6.283_185_307_179_586;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

struct LogTable {
    hi: Vec<f64>,
    lo: Vec<f64>,
}

impl LogTable {
    fn new(n_max: usize) -> Self {
        let mut hi = vec![0.0; n_max + 1];
        let mut lo = vec![0.0; n_max + 1];
        for n in 1..=n_max {
            let l = Float::with_val(160, n).ln();
            let h = l.to_f64();
            hi[n] = h;
            lo[n] = (l - h).to_f64();
        }
        Self { hi, lo }
    }

    /// t * ln(n) reduced to [-pi, pi].
    fn phase(&self, t: f64, n: usize) -> f64 {
        let p = t * self.hi[n];
        let e = t.mul_add(self.hi[n], -p) + t * self.lo[n];
        let k = (p / TWO_PI_HI).round();
        let r = (-k).mul_add(TWO_PI_HI, p);
        r - k * TWO_PI_LO + e
    }
}

fn theta(t: f64) -> f64 {
    let t2 = t * t;
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
}

fn theta_prime(t: f64) -> f64 {
    0.5 * (t / (2.0 * PI)).ln()
}

fn gram_point(n: i64, guess: f64) -> f64 {
    let target = n as f64 * PI;
    let mut g = guess;
    for _ in 0..50 {
        let step = (theta(g) - target) / theta_prime(g);
        g -= step;
        if step.abs() < 1e-13 * g {
            break;
        }
    }
    g
}

/// Riemann-Siegel main sum with the first correction term.
fn z_fast(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let m = a.floor() as usize;
    let th = theta(t);
    let mut s = 0.0;
    for n in 1..=m {
        s += (th - t * (n as f64).ln()).cos() / (n as f64).sqrt();
    }
    let mut p = a - m as f64;
    if ((2.0 * PI * p).cos()).abs() < 1e-9 {
        p += 1e-9;
    }
    let c0 = (2.0 * PI * (p * p - p - 1.0 / 16.0)).cos() / (2.0 * PI * p).cos();
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * s + sign * (t / (2.0 * PI)).powf(-0.25) * c0
}

/// Z(t) from an Euler-Maclaurin evaluation of zeta(1/2 + it).
fn z_precise(t: f64, logs: &LogTable) -> f64 {
    let n_terms = (t / PI).ceil() as usize + 10;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let (mut cre, mut cim) = (0.0f64, 0.0f64);
    for n in 1..n_terms {
        let w = 1.0 / (n as f64).sqrt();
        let ph = logs.phase(t, n);
        let (sn, cs) = ph.sin_cos();
        // Neumaier summation on both components.
        let x = w * cs;
        let y = re + x;
        cre += if re.abs() >= x.abs() { (re - y) + x } else { (x - y) + re };
        re = y;
        let x = -w * sn;
        let y = im + x;
        cim += if im.abs() >= x.abs() { (im - y) + x } else { (x - y) + im };
        im = y;
    }
    re += cre;
    im += cim;
    let nf = n_terms as f64;
    let ph = logs.phase(t, n_terms);
    let (sn, cs) = ph.sin_cos();
    // N^{-s} = N^{-1/2} e^{-i t ln N}
    let w = 1.0 / nf.sqrt();
    let (pr, pi) = (w * cs, -w * sn);
    // N^{1-s}/(s-1) with s - 1 = -1/2 + it
    let (dr, di) = (-0.5, t);
    let den = dr * dr + di * di;
    let (qr, qi) = (nf * (pr * dr + pi * di) / den, nf * (pi * dr - pr * di) / den);
    re += qr + 0.5 * pr;
    im += qi + 0.5 * pi;
    // Bernoulli corrections B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
    let b: [f64; 14] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
        854513.0 / 138.0,
        -236364091.0 / 2730.0,
        8553103.0 / 6.0,
        -23749461029.0 / 870.0,
    ];
    // running (s)_{2k-1} N^{-2k+1} / (2k)!
    let (mut ur, mut ui) = (0.5 / nf, t / nf);
    let mut fact = 2.0;
    for (k, bk) in b.iter().enumerate() {
        let k = k + 1;
        if k > 1 {
            for j in [2 * k - 3, 2 * k - 2] {
                let (ar, ai) = (0.5 + j as f64, t);
                let nr = (ur * ar - ui * ai) / nf;
                let ni = (ur * ai + ui * ar) / nf;
                ur = nr;
                ui = ni;
            }
            fact *= ((2 * k - 1) * (2 * k)) as f64;
        }
        let (cr, ci) = (bk / fact * ur, bk / fact * ui);
        re += cr * pr - ci * pi;
        im += cr * pi + ci * pr;
    }
    let th = theta(t);
    let (s, c) = th.sin_cos();
    c * re - s * im
}

fn refine(mut a: f64, mut b: f64, logs: &LogTable) -> f64 {
    let mut fa = z_precise(a, logs);
    let mut fb = z_precise(b, logs);
    // The bracketing sum is slightly less accurate; widen until the precise sign change shows.
    let mut d = (b - a).max(1e-6);
    let mut tries = 0;
    while fa * fb > 0.0 {
        assert!(tries < 12, "bracket lost sign change at {a}");
        a -= d;
        b += d;
        d *= 2.0;
        tries += 1;
        fa = z_precise(a, logs);
        fb = z_precise(b, logs);
    }
    let mut side = 0;
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 * b {
            break;
        }
        let c = (a * fb - b * fa) / (fb - fa);
        let c = if c <= a || c >= b { 0.5 * (a + b) } else { c };
        let fc = z_precise(c, logs);
        if fc == 0.0 {
            return c;
        }
        if fc * fb < 0.0 {
            a = b;
            fa = fb;
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (a + b)
}

fn sign_changes(lo: f64, hi: f64, steps: usize, logs: &LogTable, precise: bool) -> Vec<(f64, f64)> {
    let eval = |t: f64| if precise { z_precise(t, logs) } else { z_fast(t) };
    let mut out = Vec::new();
    let h = (hi - lo) / steps as f64;
    let mut prev_t = lo;
    let mut prev = eval(lo);
    for i in 1..=steps {
        let t = if i == steps { hi } else { lo + h * i as f64 };
        let v = eval(t);
        if prev * v < 0.0 {
            out.push((prev_t, t));
        }
        prev = v;
        prev_t = t;
    }
    out
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let count: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(100_000);
    let out_path = args.get(2).cloned().unwrap_or_else(|| "zeros.txt".into());
    let mut height_guess = count as f64 + 100.0;
    for _ in 0..50 {
        height_guess = 2.0 * PI * count as f64 / (height_guess / (2.0 * PI * std::f64::consts::E)).ln().max(1.0);
    }
    let height_guess = height_guess * 1.05 + 100.0;
    let logs = LogTable::new((height_guess / PI) as usize + 64);

    let mut zeros: Vec<f64> = Vec::with_capacity(count + 16);
    let mut n: i64 = -1;
    let mut g_prev = gram_point(-1, 9.67);
    let z_at = |t: f64| if t < 1000.0 { z_precise(t, &logs) } else { z_fast(t) };
    // Gram block bookkeeping: start at a good Gram point.
    let mut block_start = (n, g_prev);
    while zeros.len() < count {
        n += 1;
        let g = gram_point(n, g_prev + PI / theta_prime(g_prev).max(0.5));
        g_prev = g;
        let good = ((n % 2 == 0) as i32 * 2 - 1) as f64 * z_at(g) > 0.0;
        if !good {
            continue;
        }
        let (n0, g0) = block_start;
        let expected = (n - n0) as usize;
        let mut found = Vec::new();
        let mut refinement = 16usize;
        let precise = g < 1000.0;
        for attempt in 0..6 {
            let steps = expected * refinement;
            found = sign_changes(g0, g, steps, &logs, precise || attempt >= 2);
            if found.len() >= expected {
                break;
            }
            refinement *= 8;
        }
        if found.len() != expected {
            eprintln!(
                "warning: block [{g0}, {g}] (gram {n0}..{n}) has {} sign changes, expected {expected}",
                found.len()
            );
        }
        for (a, b) in found {
            zeros.push(refine(a, b, &logs));
        }
        block_start = (n, g);
        if n % 5000 == 0 {
            eprintln!("gram index {n}, height {g:.1}, zeros {}", zeros.len());
        }
    }
    zeros.truncate(count);
    for w in zeros.windows(2) {
        assert!(w[1] - w[0] > 1e-6, "duplicate or unordered zeros near {}", w[0]);
    }
    let file = std::fs::File::create(&out_path).expect("create output");
    let mut w = BufWriter::new(file);
    writeln!(w, "# source: Riemann-Siegel bracketing + Euler-Maclaurin refinement (gen_zero_table)").unwrap();
    writeln!(w, "# complete_to: {:.10}", zeros[zeros.len() - 1]).unwrap();
    writeln!(w, "# accuracy: 1e-8").unwrap();
    for z in &zeros {
        writeln!(w, "{z:.10}").unwrap();
    }
}
