//! Complex dilogarithm `Li₂(z) = Σ zⁿ/n²`, continued to `ℂ \ [1, ∞)`.
//!
//! Inside `|z| <= 1/2` the power series is summed directly. Elsewhere the
//! argument is moved into that disc by `z -> 1 - z` or `z -> z/(z-1)`, or
//! into the unit disc by `z -> 1/z`. Points near `e^{±iπ/3}`, which no
//! transformation brings inside `|w| <= 1/2`, use the Bernoulli series in
//! `u = -log(1 - z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{EvalResult, Method};
use crate::error::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

/// `B_{2k} / (2k+1)!` for `k = 1..`.
const BERNOULLI_COEFFS: [f64; 22] = [
    0.027777777777777776,
    -0.0002777777777777778,
    4.72411186696901e-06,
    -9.185773074661964e-08,
    1.8978869988971e-09,
    -4.0647616451442256e-11,
    8.921691020456452e-13,
    -1.9939295860721074e-14,
    4.518980029619918e-16,
    -1.0356517612181247e-17,
    2.395218621026187e-19,
    -5.581785874325009e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.315975652702203e-26,
    -1.740845657234001e-27,
    4.1576356446139e-29,
    -9.962148488284622e-31,
    2.3940344248961652e-32,
    -5.76834735536739e-34,
    1.393179479647008e-35,
    -3.3721219654850894e-37,
];

pub fn li2(z: Complex64) -> Result<EvalResult> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("li2 of non-finite {z}")));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::OnBranchCut(z.re));
    }
    Ok(li2_unchecked(z))
}

fn li2_unchecked(z: Complex64) -> EvalResult {
    if z.norm() <= 0.5 {
        let (v, e) = series(z);
        return EvalResult::direct(v, e, Method::Series);
    }
    let one = Complex64::new(1.0, 0.0);
    let w = one - z;
    if w.norm() <= 0.5 {
        // Li₂(z) = π²/6 - log z log(1-z) - Li₂(1-z)
        let (v, e) = series(w);
        let logs = z.ln() * w.ln();
        let val = Complex64::new(PI2_6, 0.0) - logs - v;
        return EvalResult::direct(val, e + rounding(&[PI2_6, logs.norm(), v.norm()]), Method::Reflection);
    }
    let landen = z / (z - one);
    if landen.norm() <= 0.5 {
        // Li₂(z) = -Li₂(z/(z-1)) - log²(1-z)/2
        let (v, e) = series(landen);
        let l = w.ln();
        let half_sq = 0.5 * l * l;
        return EvalResult::direct(-v - half_sq, e + rounding(&[v.norm(), half_sq.norm()]), Method::Reflection);
    }
    if z.norm() > 1.0 {
        // Li₂(z) = -π²/6 - log²(-z)/2 - Li₂(1/z)
        let inner = li2_unchecked(one / z);
        let l = (-z).ln();
        let half_sq = 0.5 * l * l;
        let val = Complex64::new(-PI2_6, 0.0) - half_sq - inner.value;
        let err = inner.abs_error_bound + rounding(&[PI2_6, half_sq.norm(), inner.value.norm()]);
        return EvalResult::direct(val, err, Method::Continuation);
    }
    let (v, e) = bernoulli_series(-w.ln());
    EvalResult::direct(v, e, Method::Continuation)
}

fn rounding(magnitudes: &[f64]) -> f64 {
    8.0 * f64::EPSILON * magnitudes.iter().sum::<f64>()
}

/// `Σ zⁿ/n²` for `|z| <= 1/2`; error is twice the first omitted term plus
/// rounding.
fn series(z: Complex64) -> (Complex64, f64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut pow = z;
    let mut n = 1.0f64;
    loop {
        let term = pow / (n * n);
        sum += term;
        abs_sum += term.norm();
        n += 1.0;
        pow *= z;
        let next = pow.norm() / (n * n);
        if next <= 1e-17 * sum.norm() || next == 0.0 || n > 200.0 {
            return (sum, 2.0 * next + rounding(&[abs_sum]));
        }
    }
}

/// `Li₂ = u - u²/4 + Σ B_{2k} u^{2k+1}/(2k+1)!` with `u = -log(1-z)`,
/// valid for `|u| < 2π`.
fn bernoulli_series(u: Complex64) -> (Complex64, f64) {
    let u2 = u * u;
    let mut sum = u - 0.25 * u2;
    let mut abs_sum = u.norm() + 0.25 * u2.norm();
    let mut pow = u * u2;
    for (k, &c) in BERNOULLI_COEFFS.iter().enumerate() {
        let term = c * pow;
        sum += term;
        abs_sum += term.norm();
        pow *= u2;
        let next = BERNOULLI_COEFFS
            .get(k + 1)
            .map_or(f64::INFINITY, |c| c.abs() * pow.norm());
        if next <= 1e-17 * sum.norm() {
            return (sum, 2.0 * next + rounding(&[abs_sum]));
        }
    }
    (sum, abs_sum * 1e-10)
}
