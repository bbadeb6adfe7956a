use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI, SQRT_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::VerificationReport;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::specfun::{big_f, x_asymptotic_log_bound, x_factor, ComplexPoint};
use crate::zeta::{ContourSpec, ZetaEvaluator};

/// Half-width `ε` of the excluded sectors around the real and imaginary
/// axes in the left-growth region.
pub const GROWTH_EPSILON: f64 = 0.2;

const T1P_DELTA: f64 = 0.007;
const SLOPE_BAND: f64 = 0.15;
const HEJHAL_SAFETY: f64 = 4.0;
const LEFT_FLOOR: f64 = 100.0;
const INVOLUTION_TOL: f64 = 1e-9;
const WINDING_TOL: f64 = 0.05;
const ZERO_CONTOUR_SAMPLES: usize = 256;

fn pass_flag(ok: bool) -> f64 {
    if ok {
        1.0
    } else {
        0.0
    }
}

/// `t + (1/π) log|1 - e^{2πis}|` on the half circle `|s| = 1/2`, `t >= 0`.
pub fn verify_t1p(grid_size: usize, exec: Execution) -> Result<VerificationReport> {
    if grid_size < 1000 {
        return Err(Error::InvalidArgument(format!("t1p grid needs at least 1000 points, got {grid_size}")));
    }
    let arcs = [
        ("arc_0_pi4", 0.0, FRAC_PI_4, 0.008),
        ("arc_pi4_pi3", FRAC_PI_4, FRAC_PI_3, SQRT_2 / 4.0),
        ("arc_pi3_pi2", FRAC_PI_3, FRAC_PI_2, 0.41),
        ("arc_pi2_pi", FRAC_PI_2, PI, 0.008),
    ];
    let step = PI / (grid_size - 1) as f64;
    let values = exec.map_range(grid_size, |j| {
        let theta = if j == grid_size - 1 { PI } else { j as f64 * step };
        let s = Complex64::from_polar(0.5, theta);
        let q = (Complex64::i() * TAU * s).exp();
        (theta, s.im + (1.0 - q).norm().ln() / PI)
    });

    let mut r = VerificationReport::new("t1p");
    r.samples = grid_size as u64;
    let (arg_min, global) = values
        .iter()
        .copied()
        .fold((0.0, f64::INFINITY), |acc, (th, v)| if v < acc.1 { (th, v) } else { acc });
    r.observe("min_global", global);
    r.observe("argmin_global", arg_min);
    r.threshold("delta", T1P_DELTA);
    let mut passed = global > T1P_DELTA;
    for (name, lo, hi, bound) in arcs {
        let m = values
            .iter()
            .filter(|(th, _)| *th >= lo && *th <= hi)
            .map(|&(_, v)| v)
            .fold(f64::INFINITY, f64::min);
        r.observe(format!("min_{name}"), m);
        r.threshold(format!("min_{name}"), bound);
        passed &= m > bound;
    }
    r.passed = passed;
    Ok(r)
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Residual `|log X(s) - main term|` against `t` at each fixed `σ`.
pub fn verify_x_asymptotic(t_values: &[f64], sigma_values: &[f64], genus: u32) -> Result<VerificationReport> {
    if let Some(t) = t_values.iter().find(|&&t| !(t >= 1.0)) {
        return Err(Error::OutsideAsymptoticRange(*t));
    }
    if t_values.len() < 2 || sigma_values.is_empty() {
        return Err(Error::InvalidArgument("asymptotic check needs two t values and one sigma".into()));
    }
    let mut ts = t_values.to_vec();
    ts.sort_by(f64::total_cmp);
    let g1 = f64::from(genus) - 1.0;

    let mut r = VerificationReport::new("asymptotic");
    let target = -TAU;
    r.threshold("slope_min", target * (1.0 + SLOPE_BAND));
    r.threshold("slope_max", target * (1.0 - SLOPE_BAND));
    r.threshold("residual_over_bound_max", 1.0);
    let mut passed = true;
    let mut skipped = 0u64;
    let mut worst_ratio: f64 = 0.0;
    for &sigma in sigma_values {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &t in &ts {
            let s = ComplexPoint::new(sigma, t)?;
            let f = big_f(ComplexPoint::new(sigma - 0.5, t)?, genus)?.value;
            let w = Complex64::new(sigma - 0.5, t);
            let main = Complex64::i() * (TAU * g1 * w * w + PI * g1 / 6.0);
            let res = (f - main).norm();
            r.samples += 1;
            if !(res > 0.0 && res.is_finite()) {
                skipped += 1;
                continue;
            }
            worst_ratio = worst_ratio.max(res / x_asymptotic_log_bound(s, genus));
            xs.push(t);
            ys.push(res.ln());
        }
        let decreasing = ys.windows(2).all(|w| w[1] < w[0]);
        let slope = if xs.len() >= 2 { least_squares_slope(&xs, &ys) } else { f64::NAN };
        r.observe(format!("slope.sigma={sigma}"), slope);
        r.observe(format!("decreasing.sigma={sigma}"), pass_flag(decreasing));
        if let Some(&first) = ys.first() {
            r.observe(format!("residual.sigma={sigma}.t={}", xs[0]), first.exp());
        }
        passed &= decreasing
            && slope >= target * (1.0 + SLOPE_BAND)
            && slope <= target * (1.0 - SLOPE_BAND);
    }
    r.observe("residual_over_bound_max", worst_ratio);
    r.observe("skipped_samples", skipped as f64);
    r.passed = passed && worst_ratio <= 1.0;
    Ok(r)
}

/// Normalized angle in `[0, 2π)` lies in `π/2+ε ≤ θ ≤ π−ε` or `π+ε ≤ θ ≤ 3π/2−ε`.
fn in_growth_sector(angle: f64) -> bool {
    let a = angle.rem_euclid(TAU);
    let e = GROWTH_EPSILON;
    (FRAC_PI_2 + e..=PI - e).contains(&a) || (PI + e..=1.5 * PI - e).contains(&a)
}

/// `Z(s) - 1` from `log Z` without cancellation for small logs.
fn exp_m1(l: Complex64) -> Complex64 {
    let (sin, cos) = l.im.sin_cos();
    let half = (0.5 * l.im).sin();
    Complex64::new(l.re.exp_m1() * cos - 2.0 * half * half, l.re.exp() * sin)
}

/// Right: `|Z(σ) - 1| <= 4 N₀^{-σ}`. Left: `log|Z|` increasing along rays
/// in the sector region and above 100 at the largest radius.
pub fn verify_growth(
    z: &ZetaEvaluator,
    sigma_list: &[f64],
    ray_angles: &[f64],
    radii: &[f64],
) -> Result<VerificationReport> {
    for &a in ray_angles {
        if !in_growth_sector(a) {
            return Err(Error::Configuration(format!(
                "ray angle {a} is outside the growth region (ε = {GROWTH_EPSILON})"
            )));
        }
        for &rad in radii {
            if !z.in_continued_region(rad * a.cos()) {
                return Err(Error::Configuration(format!(
                    "ray angle {a} at radius {rad} falls in the non-computable strip"
                )));
            }
        }
    }
    let mut radii = radii.to_vec();
    radii.sort_by(f64::total_cmp);

    let mut r = VerificationReport::new("growth");
    r.threshold("right_ratio_max", 1.0);
    r.threshold("left_log_modulus_min", LEFT_FLOOR);
    r.threshold("hejhal_safety", HEJHAL_SAFETY);
    let n0 = z.spectrum().min_norm;
    let mut passed = true;
    let mut worst: f64 = 0.0;
    for &sigma in sigma_list {
        let v = z.z_product(ComplexPoint::real(sigma))?;
        let dev = exp_m1(v.log().expect("product is nonzero")).norm();
        let ratio = dev / (HEJHAL_SAFETY * n0.powf(-sigma));
        r.observe(format!("right.sigma={sigma}.ratio"), ratio);
        worst = worst.max(ratio);
        r.samples += 1;
    }
    r.observe("right_ratio_max", worst);
    passed &= worst <= 1.0;

    let points: Vec<(f64, f64)> = ray_angles
        .iter()
        .flat_map(|&a| radii.iter().map(move |&rad| (a, rad)))
        .collect();
    let values = z.execution().map(&points, |&(a, rad)| {
        let s = ComplexPoint::new(rad * a.cos(), rad * a.sin())?;
        Ok(z.z_continued(s)?.log_modulus())
    });
    let values: Vec<f64> = values.into_iter().collect::<Result<_>>()?;
    let mut left_min = f64::INFINITY;
    for (i, &a) in ray_angles.iter().enumerate() {
        let ray = &values[i * radii.len()..(i + 1) * radii.len()];
        for (rad, v) in radii.iter().zip(ray) {
            r.observe(format!("left.arg={a:.4}.r={rad}"), *v);
        }
        let increasing = ray.windows(2).all(|w| w[1] > w[0]);
        r.observe(format!("left.arg={a:.4}.increasing"), pass_flag(increasing));
        let last = *ray.last().unwrap_or(&f64::NEG_INFINITY);
        left_min = left_min.min(last);
        passed &= increasing && last > LEFT_FLOOR;
    }
    r.observe("left_log_modulus_min", left_min);
    r.samples += points.len() as u64;
    r.passed = passed;
    Ok(r)
}

/// Winding on `|s + n| = 1/2` against `(2g-2)(2n+1)` with `g = genus`.
pub fn verify_trivial_zeros(z: &ZetaEvaluator, n_list: &[u32], genus: u32) -> Result<VerificationReport> {
    if let Some(n) = n_list.iter().find(|&&n| n < 1) {
        return Err(Error::InvalidArgument(format!("trivial zero order must be at least 1, got {n}")));
    }
    let contours = n_list
        .iter()
        .map(|&n| ContourSpec::with_samples(ComplexPoint::real(-f64::from(n)), 0.5, ZERO_CONTOUR_SAMPLES))
        .collect::<Result<Vec<_>>>()?;
    let reports = z
        .winding_numbers(&contours)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut r = VerificationReport::new("zeros");
    r.threshold("turns_residual_max", WINDING_TOL);
    r.observe("genus", f64::from(genus));
    let mut passed = true;
    for (&n, w) in n_list.iter().zip(&reports) {
        let predicted = (2 * i64::from(genus) - 2) * (2 * i64::from(n) + 1);
        r.observe(format!("winding.n={n}"), w.winding as f64);
        r.threshold(format!("winding.n={n}"), predicted as f64);
        r.observe(format!("turns_residual.n={n}"), w.residual());
        r.observe(format!("max_phase_step.n={n}"), w.max_phase_step);
        r.samples += w.samples_used as u64;
        passed &= w.winding == predicted && w.residual() < WINDING_TOL;
    }
    r.passed = passed;
    Ok(r)
}

/// Rectangle `[σ_min, σ_max] × [t_min, t_max]` sampled on an evenly spaced
/// `n_sigma × n_t` grid including the edges.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutionGrid {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub n_sigma: usize,
    pub n_t: usize,
}

impl Default for InvolutionGrid {
    fn default() -> Self {
        InvolutionGrid {
            sigma_min: -3.0,
            sigma_max: 4.0,
            t_min: 0.1,
            t_max: 5.0,
            n_sigma: 20,
            n_t: 20,
        }
    }
}

impl InvolutionGrid {
    fn axis(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    }

    pub fn points(&self) -> Vec<ComplexPoint> {
        (0..self.n_sigma)
            .flat_map(|i| {
                (0..self.n_t).map(move |j| ComplexPoint {
                    sigma: Self::axis(self.sigma_min, self.sigma_max, self.n_sigma, i),
                    t: Self::axis(self.t_min, self.t_max, self.n_t, j),
                })
            })
            .collect()
    }
}

/// `max |X(s) X(1-s) - 1|` over the grid.
pub fn verify_involution(grid: &InvolutionGrid, genus: u32, exec: Execution) -> Result<VerificationReport> {
    if grid.n_sigma == 0 || grid.n_t == 0 {
        return Err(Error::InvalidArgument("involution grid is empty".into()));
    }
    let points = grid.points();
    for p in &points {
        if !(p.sigma.is_finite() && p.t.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite grid point {p}")));
        }
        if p.t == 0.0 && p.sigma == p.sigma.round() {
            return Err(Error::InvalidArgument(format!("grid point {p} is a singularity of X")));
        }
    }
    let devs = exec.map(&points, |&s| -> Result<f64> {
        let a = x_factor(s, genus)?;
        let b = x_factor(ComplexPoint::new(1.0 - s.sigma, -s.t)?, genus)?;
        let prod = if a.log_form || b.log_form {
            (a.log().expect("nonzero") + b.log().expect("nonzero")).exp()
        } else {
            a.value * b.value
        };
        Ok((prod - 1.0).norm())
    });
    let devs: Vec<f64> = devs.into_iter().collect::<Result<_>>()?;
    let (imax, max) = devs
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc });

    let mut r = VerificationReport::new("involution");
    r.samples = points.len() as u64;
    r.observe("max_deviation", max);
    r.observe("argmax_sigma", points[imax].sigma);
    r.observe("argmax_t", points[imax].t);
    r.threshold("max_deviation", INVOLUTION_TOL);
    r.passed = max < INVOLUTION_TOL;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::{build_spectrum, GroupPresentation};

    fn evaluator() -> ZetaEvaluator {
        let s = build_spectrum(&GroupPresentation::bolza(), 8).unwrap();
        ZetaEvaluator::new(s, 2).unwrap()
    }

    #[test]
    fn t1p_value_at_half() {
        let r = verify_t1p(1001, Execution::Sequential).unwrap();
        assert!(r.passed);
        assert!((r.observed["min_arc_0_pi4"] - 2f64.ln() / PI).abs() < 1e-12);
        assert!(verify_t1p(10, Execution::Sequential).is_err());
    }

    #[test]
    fn slope_of_a_line() {
        assert!((least_squares_slope(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_rejects_small_t() {
        assert!(matches!(
            verify_x_asymptotic(&[0.5, 1.0], &[0.5], 2),
            Err(Error::OutsideAsymptoticRange(_))
        ));
    }

    #[test]
    fn sector_membership() {
        assert!(in_growth_sector(3.0 * PI / 4.0));
        assert!(in_growth_sector(4.0 * PI / 3.0));
        assert!(!in_growth_sector(PI));
        assert!(!in_growth_sector(FRAC_PI_2));
        assert!(in_growth_sector(-2.0 * PI / 3.0));
    }

    #[test]
    fn growth_rejects_negative_real_axis() {
        let z = evaluator();
        let e = verify_growth(&z, &[3.0], &[PI], &[5.0]).unwrap_err();
        assert!(matches!(e, Error::Configuration(_)));
    }

    #[test]
    fn exp_m1_small_arguments() {
        let l = Complex64::new(1e-12, 2e-12);
        let d = exp_m1(l) - l;
        assert!(d.norm() < 1e-23);
    }

    #[test]
    fn involution_small_grid() {
        let g = InvolutionGrid {
            n_sigma: 4,
            n_t: 3,
            ..InvolutionGrid::default()
        };
        let r = verify_involution(&g, 2, Execution::Sequential).unwrap();
        assert!(r.passed);
        assert_eq!(r.samples, 12);
        let half = InvolutionGrid {
            sigma_min: 0.5,
            sigma_max: 0.5,
            t_min: 0.0,
            t_max: 0.0,
            n_sigma: 1,
            n_t: 1,
        };
        assert_eq!(verify_involution(&half, 2, Execution::Sequential).unwrap().observed["max_deviation"], 0.0);
        let bad = InvolutionGrid {
            sigma_min: 1.0,
            sigma_max: 1.0,
            t_min: 0.0,
            t_max: 0.0,
            n_sigma: 1,
            n_t: 1,
        };
        assert!(verify_involution(&bad, 2, Execution::Sequential).is_err());
    }
}
