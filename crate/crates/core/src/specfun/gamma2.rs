use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ComplexPoint, EvalResult, Method};
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub const DEFAULT_GAMMA2_TERMS: usize = 100_000;

/// Double gamma `Γ₂(s)` from the product
/// `1/Γ₂(u+1) = (2π)^{u/2} exp(-((γ+1)/2)u² - u/2) ∏ (1+u/n)ⁿ exp(u²/(2n) - u)`,
/// with `u = s - 1`, `terms` factors and an Euler–Maclaurin tail for the
/// log-sum. The result is checked against the same evaluation at `2·terms`.
pub fn gamma2(s: ComplexPoint, terms: usize) -> Result<EvalResult> {
    if terms < 10 {
        return Err(Error::InvalidArgument(format!("gamma2 needs at least 10 terms, got {terms}")));
    }
    if s.t == 0.0 && s.sigma <= 0.0 && s.sigma == s.sigma.round() {
        return Err(Error::InvalidArgument(format!("gamma2 has a pole at {}", s.sigma)));
    }
    let u = Complex64::new(s.sigma - 1.0, s.t);
    let (a, ea) = log_inverse(u, terms);
    let (b, eb) = log_inverse(u, 2 * terms);
    let diff = (a - b).norm();
    if diff > ea + eb {
        return Err(Error::NonConverged(format!(
            "gamma2({s}): {terms} and {} terms differ by {diff:e}, bound {:e}",
            2 * terms,
            ea + eb
        )));
    }
    Ok(EvalResult::from_log(-a, ea, Method::Product))
}

/// `log(1/Γ₂(u+1))` up to multiples of `2πi`, with an error bound.
fn log_inverse(u: Complex64, terms: usize) -> (Complex64, f64) {
    let u2 = u * u;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for n in 1..=terms {
        let nf = n as f64;
        let x = u / nf;
        let term = if x.norm() < 0.25 {
            nf * x * x * x * cubic_tail(x)
        } else {
            nf * (1.0 + x).ln() - u + u2 / (2.0 * nf)
        };
        sum += term;
        abs_sum += term.norm();
    }
    let (tail, tail_err) = tail_sum(u, terms as f64);
    let head = 0.5 * u * (2.0 * PI).ln() - 0.5 * (EULER_GAMMA + 1.0) * u2 - 0.5 * u;
    let rounding = 4.0 * f64::EPSILON * (abs_sum + head.norm() + (terms as f64).sqrt() * abs_sum.max(1.0));
    (head + sum + tail, tail_err + rounding)
}

/// `Σ_{k>=3} (-1)^{k+1} x^{k-3}/k`, so that `n log(1+x) - nx + nx²/2 = n x³ ·` this.
fn cubic_tail(x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    let mut k = 3.0f64;
    let mut sign = 1.0;
    loop {
        let term = sign * pow / k;
        acc += term;
        if term.norm() < 1e-18 {
            return acc;
        }
        pow *= x;
        k += 1.0;
        sign = -sign;
    }
}

/// `Σ_{n>N} n^{-p}` by Euler–Maclaurin, with the first omitted correction
/// as error.
fn power_tail(p: f64, n: f64) -> (f64, f64) {
    let v = n.powf(1.0 - p) / (p - 1.0) - 0.5 * n.powf(-p) + p * n.powf(-p - 1.0) / 12.0
        - p * (p + 1.0) * (p + 2.0) * n.powf(-p - 3.0) / 720.0;
    let err = p * (p + 1.0) * (p + 2.0) * (p + 3.0) * (p + 4.0) * n.powf(-p - 5.0) / 30_240.0;
    (v, err)
}

/// `Σ_{n>N} [n log(1+u/n) - u + u²/(2n)] = Σ_{k>=3} (-1)^{k+1} (u^k/k) S_{k-1}(N)`.
fn tail_sum(u: Complex64, n: f64) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut pow = u * u * u;
    let mut k = 3.0f64;
    let mut sign = 1.0;
    loop {
        let (s, e) = power_tail(k - 1.0, n);
        let term = sign * pow * (s / k);
        acc += term;
        err += pow.norm() * e / k;
        if term.norm() < 1e-20 * (1.0 + acc.norm()) || k > 60.0 {
            err += term.norm();
            return (acc, err);
        }
        pow *= u;
        k += 1.0;
        sign = -sign;
    }
}
