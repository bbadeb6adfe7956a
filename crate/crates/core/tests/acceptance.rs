//! Acceptance suite: one pass/fail line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::{LN_2, PI, SQRT_2, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use szf_core::geodesics::matrix::Mat2;
use szf_core::geodesics::{build_spectrum, GroupPresentation, LengthSpectrum};
use szf_core::specfun::{big_f, gamma2, li2, x_factor};
use szf_core::verify::{verify_involution, verify_t1p, InvolutionGrid};
use szf_core::zeta::{ContourSpec, ZetaEvaluator};
use szf_core::{ComplexPoint, Execution};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

struct Suite {
    failures: usize,
}

impl Suite {
    fn run(&mut self, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed <= limit, o.detail),
            Err(_) => (false, "panicked".to_string()),
        };
        if !passed {
            self.failures += 1;
        }
        let status = if passed { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {name}: {detail}; runtime {:.3} s (limit {} s)",
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        );
    }
}

fn pt(s: f64, t: f64) -> ComplexPoint {
    ComplexPoint::new(s, t).unwrap()
}

fn f64_relation_residual(g: &GroupPresentation) -> f64 {
    let m = &g.generators;
    let comm = |a: &Mat2, b: &Mat2| {
        let (ai, bi) = (a.unimodular_inverse(), b.unimodular_inverse());
        *a * *b * ai * bi
    };
    let mut prod = Mat2::IDENTITY;
    for pair in m.chunks(2) {
        prod = prod * comm(&pair[0], &pair[1]);
    }
    let plus = prod.max_abs_diff(&Mat2::IDENTITY);
    let minus = prod.max_abs_diff(&Mat2::new(-1.0, 0.0, 0.0, -1.0));
    plus.min(minus)
}

fn same_classes(short: &LengthSpectrum, long: &LengthSpectrum) -> bool {
    let below: Vec<_> = long.classes_below(short.completeness_radius).collect();
    below.len() == short.classes.len()
        && below.iter().zip(&short.classes).all(|(a, b)| {
            a.word == b.word
                && a.primitive == b.primitive
                && a.multiplicity == b.multiplicity
                && (a.length - b.length).abs() <= 1e-9
        })
}

fn main() {
    let mut suite = Suite { failures: 0 };
    let group = GroupPresentation::bolza();
    let z = ZetaEvaluator::new(build_spectrum(&group, 10).expect("spectrum"), 2).unwrap();

    suite.run("involution X(s)X(1-s) = 1 on 20x20 grid", Duration::from_secs(5), || {
        let r = verify_involution(&InvolutionGrid::default(), 2, Execution::default()).unwrap();
        let max = r.observed["max_deviation"];
        outcome(r.samples == 400 && max < 1e-9, format!("max deviation {max:.3e} < 1e-9"))
    });

    suite.run("X(1/2) = 1", Duration::from_millis(100), || {
        let v = x_factor(pt(0.5, 0.0), 2).unwrap().value;
        let d = (v - 1.0).norm();
        outcome(d < 1e-12, format!("|X(1/2) - 1| = {d:.3e} < 1e-12"))
    });

    suite.run("X asymptotic error decays like exp(-2 pi t)", Duration::from_secs(5), || {
        let ts: Vec<f64> = (0..7).map(|i| 1.0 + 0.5 * i as f64).collect();
        let logs: Vec<f64> = ts
            .iter()
            .map(|&t| {
                let f = big_f(pt(0.0, t), 2).unwrap().value;
                let w = Complex64::new(0.0, t);
                let main = Complex64::i() * (TAU * w * w + PI / 6.0);
                (f - main).norm().ln()
            })
            .collect();
        let n = ts.len() as f64;
        let (mt, ml) = (ts.iter().sum::<f64>() / n, logs.iter().sum::<f64>() / n);
        let slope = ts.iter().zip(&logs).map(|(t, l)| (t - mt) * (l - ml)).sum::<f64>()
            / ts.iter().map(|t| (t - mt) * (t - mt)).sum::<f64>();
        let decreasing = logs.windows(2).all(|w| w[1] < w[0]);
        let in_band = (slope / -TAU - 1.0).abs() <= 0.15;
        outcome(
            decreasing && in_band,
            format!("slope {slope:.4} vs -2pi = {:.4} (15% band), strictly decreasing: {decreasing}", -TAU),
        )
    });

    suite.run("t + log|1 - exp(2 pi i s)|/pi on |s| = 1/2", Duration::from_secs(5), || {
        let r = verify_t1p(100_000, Execution::default()).unwrap();
        let (g, a3, a2) = (
            r.observed["min_global"],
            r.observed["min_arc_pi3_pi2"],
            r.observed["min_arc_pi4_pi3"],
        );
        // The minimum sits at s = ±1/2, where |1 - e^{2πis}| = 2.
        let endpoint_ok = (g - LN_2 / PI).abs() < 1e-12;
        outcome(
            g > 0.007 && a3 > 0.41 && a2 > SQRT_2 / 4.0 && endpoint_ok && r.samples == 100_000,
            format!(
                "min {g:.5} > 0.007, arc [pi/3, pi/2] min {a3:.5} > 0.41, arc [pi/4, pi/3] min {a2:.5} > {:.5}",
                SQRT_2 / 4.0
            ),
        )
    });

    suite.run("trivial zeros of order 6, 10, 14 at s = -1, -2, -3", Duration::from_secs(60), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for (n, want) in [(1, 6), (2, 10), (3, 14)] {
            let c = ContourSpec::new(ComplexPoint::real(-f64::from(n)), 0.5).unwrap();
            match z.winding_number(&c) {
                Ok(r) => {
                    ok &= r.winding == want && (r.turns * TAU - r.winding as f64 * TAU).abs() < 0.05 * TAU;
                    parts.push(format!("n={n}: {} (residual {:.1e})", r.winding, r.residual()));
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("n={n}: {e}"));
                }
            }
        }
        outcome(ok, parts.join(", "))
    });

    suite.run("|Z(sigma) - 1| <= 4 N0^-sigma for sigma = 3..10", Duration::from_secs(5), || {
        let n0 = z.spectrum().min_norm;
        let mut worst: f64 = 0.0;
        for sigma in 3..=10 {
            let sigma = f64::from(sigma);
            let l = z.z_product(ComplexPoint::real(sigma)).unwrap().log().unwrap();
            // Z is real here; Z - 1 = expm1(Re log Z).
            let dev = l.re.exp_m1().abs() + l.im.abs();
            worst = worst.max(dev / (4.0 * n0.powf(-sigma)));
        }
        outcome(worst <= 1.0, format!("max |Z - 1| / (4 N0^-sigma) = {worst:.4} <= 1, N0 = {n0:.6}"))
    });

    suite.run("log|Z| grows along rays 2pi/3, 3pi/4, 4pi/3", Duration::from_secs(10), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for a in [2.0 * PI / 3.0, 3.0 * PI / 4.0, 4.0 * PI / 3.0] {
            let v: Vec<f64> = [5.0, 10.0, 15.0]
                .iter()
                .map(|&r: &f64| z.z_anywhere(pt(r * a.cos(), r * a.sin())).unwrap().log_modulus())
                .collect();
            ok &= v[0] < v[1] && v[1] < v[2] && v[2] > 100.0;
            parts.push(format!("arg {a:.4}: {:.1}, {:.1}, {:.1}", v[0], v[1], v[2]));
        }
        outcome(ok, parts.join("; "))
    });

    suite.run("spectrum stable between word-length cutoffs 10 and 12", Duration::from_secs(120), || {
        let residual = f64_relation_residual(&group);
        let s10 = build_spectrum(&group, 10).unwrap();
        let s12 = build_spectrum(&group, 12).unwrap();
        let (l10, l12) = (s10.systole(), s12.systole());
        let exact = 2.0 * (1.0 + SQRT_2).acosh();
        let stable = (l10 - l12).abs() < 1e-9 && (l10 - exact).abs() < 1e-9;
        let same = same_classes(&s10, &s12);
        let detail = format!(
            "systole {l10:.10} vs {l12:.10} (2 arccosh(1+sqrt2) = {exact:.10}), relation residual {residual:.2e} < 1e-9, \
             {} classes below radius {:.3} identical: {same}",
            s10.classes.len(),
            s10.completeness_radius
        );
        outcome(stable && same && residual < 1e-9, detail)
    });

    suite.run("Z(conj s) = conj Z(s) at 20 random points", Duration::from_secs(2), || {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let sigma = if i % 2 == 0 { rng.gen_range(1.1..6.0) } else { rng.gen_range(-3.0..-0.1) };
            let t = rng.gen_range(-5.0..5.0);
            let a = z.z_anywhere(pt(sigma, t)).unwrap();
            let b = z.z_anywhere(pt(sigma, -t)).unwrap();
            let d = if a.log_form || b.log_form {
                (a.log().unwrap().conj() - b.log().unwrap()).norm()
            } else {
                (a.value.conj() - b.value).norm()
            };
            worst = worst.max(d);
        }
        outcome(worst < 1e-12, format!("max |Z(conj s) - conj Z(s)| = {worst:.3e} < 1e-12"))
    });

    suite.run("special values of Li2 and Gamma2", Duration::from_secs(1), || {
        let m1 = (li2(Complex64::new(-1.0, 0.0)).unwrap().value + PI * PI / 12.0).norm();
        let zero = li2(Complex64::new(0.0, 0.0)).unwrap().value;
        let g1 = (gamma2(ComplexPoint::real(1.0), 100_000).unwrap().value - 1.0).norm();
        let oracle: f64 = (1..=200).map(|n| 0.5f64.powi(n) / f64::from(n * n)).sum();
        let half = (li2(Complex64::new(0.5, 0.0)).unwrap().value - oracle).norm();
        outcome(
            m1 < 1e-12 && zero == Complex64::new(0.0, 0.0) && g1 < 1e-10 && half < 1e-12,
            format!(
                "|Li2(-1) + pi^2/12| = {m1:.1e}, Li2(0) = {zero}, |Gamma2(1) - 1| = {g1:.1e}, \
                 |Li2(1/2) - series| = {half:.1e}"
            ),
        )
    });

    println!("acceptance: {} of 10 criteria passed", 10 - suite.failures);
    if suite.failures > 0 {
        std::process::exit(1);
    }
}
