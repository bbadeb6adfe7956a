use std::f64::consts::PI;

use num_complex::Complex64;

use super::{li2, ComplexPoint, EvalResult, Method};
use crate::error::{Error, Result};

/// Constant `C` in the log-error bound of [`x_asymptotic`]:
/// `C (g-1) (t + (σ-1/2)² + |σ-1/2| t) e^{-2πt}`.
///
/// With `w = s - 1/2` and `q = e^{2πiw}`, the neglected part of `log X` is
/// `4π(g-1) (-(w/π) log(1+q) + (i/2π²) Li₂(-q))`. Using
/// `|log(1+q)| <= |q|/(1-|q|)`, `|Li₂(-q)| <= π²|q|/6` and `t >= 1` it is
/// at most `5.06 (g-1)(t + |σ-1/2| t) e^{-2πt}`.
pub const X_ASYMPTOTIC_CONSTANT: f64 = 6.0;

const TAIL_NUDGE: f64 = 1e-300;

fn prefactor(genus: u32) -> f64 {
    4.0 * PI * (f64::from(genus) - 1.0)
}

/// True when `x` is a half-integer `k + 1/2`.
fn is_half_integer(x: f64) -> bool {
    let y = x - 0.5;
    y == y.round()
}

/// `e^{2πiz}` with the real part reduced mod 1 first.
fn exp_2pi_i(z: Complex64) -> Complex64 {
    let frac = z.re - z.re.round();
    let (sin, cos) = (2.0 * PI * frac).sin_cos();
    Complex64::new(cos, sin) * (-2.0 * PI * z.im).exp()
}

/// `log(1 + q)` accurate for small `|q|`.
fn ln_1p(q: Complex64) -> Complex64 {
    if q.norm() < 1e-4 {
        // q - q²/2 + q³/3 - q⁴/4
        let q2 = q * q;
        q - q2 * (0.5 - q / 3.0 + q2 * 0.25)
    } else {
        (1.0 + q).ln()
    }
}

/// `F(s) = 4π(g-1) ∫_0^s v tan(πv) dv` along the segment from 0.
///
/// Upper half-plane: the closed form
/// `4π(g-1) (is²/2 - (s/π) log(1+e^{2πis}) + (i/2π²) Li₂(-e^{2πis}) + i/24)`
/// with principal logarithms. Lower half-plane: `F(s̄) = conj F(s)`. On the
/// real axis: the limit from above.
pub fn big_f(s: ComplexPoint, genus: u32) -> Result<EvalResult> {
    if s.t == 0.0 && is_half_integer(s.sigma) {
        return Err(Error::PoleOfTan(s.sigma));
    }
    if s.sigma == 0.0 && s.t == 0.0 {
        return Ok(EvalResult::zero(Method::Continuation));
    }
    if s.t < 0.0 {
        let up = upper(Complex64::new(s.sigma, -s.t), genus)?;
        return Ok(EvalResult::direct(up.value.conj(), up.abs_error_bound, Method::Reflection));
    }
    let t = if s.t == 0.0 { TAIL_NUDGE } else { s.t };
    upper(Complex64::new(s.sigma, t), genus)
}

fn upper(s: Complex64, genus: u32) -> Result<EvalResult> {
    let a = prefactor(genus);
    let i = Complex64::i();
    let q = exp_2pi_i(s);
    let l = ln_1p(q);
    if !(l.re.is_finite() && l.im.is_finite()) {
        return Err(Error::PoleOfTan(s.re));
    }
    let dilog = li2(-q)?;
    let t1 = i * s * s * 0.5;
    let t2 = -s * l / PI;
    let t3 = i * dilog.value / (2.0 * PI * PI);
    let value = a * (t1 + t2 + t3 + i / 24.0);
    let scale = t1.norm() + t2.norm() + t3.norm() + 1.0 / 24.0;
    let err = a * (dilog.abs_error_bound / (2.0 * PI * PI) + 16.0 * f64::EPSILON * scale);
    Ok(EvalResult::direct(value, err, Method::Continuation))
}

/// `X(s) = exp F(s - 1/2)`. Exact zeros at `s = 0, -1, -2, …` are returned
/// as zero; the poles at `s = 1, 2, …` are errors.
pub fn x_factor(s: ComplexPoint, genus: u32) -> Result<EvalResult> {
    if s.t == 0.0 && s.sigma == s.sigma.round() && s.sigma <= 0.0 {
        return Ok(EvalResult::zero(Method::Continuation));
    }
    let v = ComplexPoint::new(s.sigma - 0.5, s.t)?;
    let f = big_f(v, genus)?;
    Ok(EvalResult::from_log(f.value, f.abs_error_bound, f.method))
}

/// Bound on `|log X(s) - main term|` for `t >= 1`.
pub fn x_asymptotic_log_bound(s: ComplexPoint, genus: u32) -> f64 {
    let d = s.sigma - 0.5;
    X_ASYMPTOTIC_CONSTANT
        * (f64::from(genus) - 1.0)
        * (s.t + d * d + d.abs() * s.t)
        * (-2.0 * PI * s.t).exp()
}

/// `exp(2πi(g-1)(s-1/2)² + πi(g-1)/6)`, valid for `t >= 1`.
pub fn x_asymptotic(s: ComplexPoint, genus: u32) -> Result<EvalResult> {
    if !(s.t >= 1.0) {
        return Err(Error::OutsideAsymptoticRange(s.t));
    }
    let g1 = f64::from(genus) - 1.0;
    let w = Complex64::new(s.sigma - 0.5, s.t);
    let i = Complex64::i();
    let main = 2.0 * PI * i * g1 * w * w + PI * i * g1 / 6.0;
    Ok(EvalResult::from_log(main, x_asymptotic_log_bound(s, genus), Method::Asymptotic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(s: f64, t: f64) -> ComplexPoint {
        ComplexPoint::new(s, t).unwrap()
    }

    /// Composite Gauss–Legendre (8 points) of `4π(g-1) v tan(πv)` along the
    /// segment `[0, s]`.
    fn quadrature(s: Complex64, genus: u32) -> Complex64 {
        const X: [f64; 4] = [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
        const W: [f64; 4] = [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];
        let panels = 400;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let (a, b) = (p as f64 / panels as f64, (p + 1) as f64 / panels as f64);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            for k in 0..4 {
                for sign in [-1.0, 1.0] {
                    let u = mid + sign * half * X[k];
                    let v = s * u;
                    acc += W[k] * half * v * (PI * v).tan();
                }
            }
        }
        prefactor(genus) * acc * s
    }

    #[test]
    fn f_vanishes_at_origin() {
        for g in 2..5 {
            assert_eq!(big_f(pt(0.0, 0.0), g).unwrap().value, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn f_matches_quadrature() {
        for (s, g) in [(Complex64::new(0.0, 1.0), 2), (Complex64::new(0.3, 0.7), 2), (Complex64::new(-1.2, 0.4), 3)] {
            let f = big_f(ComplexPoint::try_from(s).unwrap(), g).unwrap();
            let q = quadrature(s, g);
            assert!((f.value - q).norm() < 1e-10, "{s}: {} vs {q}", f.value);
        }
    }

    #[test]
    fn f_at_i_closed_form() {
        // ∫_0^i v tan(πv) dv = -i ∫_0^1 y tanh(πy) dy
        let n = 20_000;
        let h = 1.0 / n as f64;
        let simpson: f64 = (0..=n)
            .map(|k| {
                let y = k as f64 * h;
                let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
                w * y * (PI * y).tanh()
            })
            .sum::<f64>()
            * h
            / 3.0;
        let f = big_f(pt(0.0, 1.0), 2).unwrap().value;
        assert!((f - Complex64::new(0.0, -4.0 * PI * simpson)).norm() < 1e-10);
    }

    #[test]
    fn poles_rejected() {
        for x in [0.5, -0.5, 1.5, -2.5] {
            assert!(matches!(big_f(pt(x, 0.0), 2), Err(Error::PoleOfTan(_))));
        }
        assert!(matches!(x_factor(pt(1.0, 0.0), 2), Err(Error::PoleOfTan(_))));
        assert!(x_factor(pt(-2.0, 0.0), 2).unwrap().is_zero());
    }

    #[test]
    fn x_at_half_is_one() {
        for g in 2..6 {
            assert_eq!(x_factor(pt(0.5, 0.0), g).unwrap().value, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn involution_pair() {
        let a = x_factor(pt(0.3, 2.0), 2).unwrap().value;
        let b = x_factor(pt(0.7, -2.0), 2).unwrap().value;
        assert!((a * b - 1.0).norm() < 1e-10);
    }

    #[test]
    fn asymptotic_on_critical_line() {
        let x = x_asymptotic(pt(0.5, 2.0), 2).unwrap();
        assert!((x.value.norm() - 1.0).abs() < 1e-14);
        let want = Complex64::new(0.0, PI / 6.0).exp();
        assert!((x.value - want).norm() < 1e-12);
        assert!(matches!(x_asymptotic(pt(0.5, 0.5), 2), Err(Error::OutsideAsymptoticRange(_))));
    }

    #[test]
    fn modulus_close_to_main_term() {
        let s = pt(0.5, 3.0);
        let exact = x_factor(s, 2).unwrap().value;
        let main = x_asymptotic(s, 2).unwrap().value;
        assert!((exact.norm() / main.norm() - 1.0).abs() <= 50.0 * (-2.0 * PI * 3.0).exp());
        assert!((exact / main - 1.0).norm() <= 50.0 * (-2.0 * PI * 3.0).exp() * 3.0);
    }

    #[test]
    fn asymptotic_bound_holds() {
        for (sigma, t) in [(0.5, 1.0), (3.0, 1.5), (-2.0, 2.0), (0.0, 1.0), (6.0, 1.2)] {
            let s = pt(sigma, t);
            let f = big_f(pt(sigma - 0.5, t), 2).unwrap().value;
            let w = Complex64::new(sigma - 0.5, t);
            let main = 2.0 * PI * Complex64::i() * w * w + Complex64::new(0.0, PI / 6.0);
            assert!((f - main).norm() <= x_asymptotic_log_bound(s, 2), "{sigma} {t}");
        }
    }

    #[test]
    fn on_axis_is_limit_from_above() {
        let on = big_f(pt(0.2, 0.0), 2).unwrap().value;
        let near = big_f(pt(0.2, 1e-9), 2).unwrap().value;
        assert!((on - near).norm() < 1e-7);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn derivative_is_integrand(sigma in -3.0f64..3.0, t in 0.05f64..3.0) {
            let s = Complex64::new(sigma, t);
            let h = 1e-5;
            let f = |z: Complex64| big_f(ComplexPoint::try_from(z).unwrap(), 2).unwrap().value;
            let d = (f(s + h) - f(s - h)) / (2.0 * h);
            let want = prefactor(2) * s * (PI * s).tan();
            prop_assert!((d - want).norm() <= 1e-6 * (1.0 + want.norm()), "{} vs {}", d, want);
        }

        #[test]
        fn reflection_and_modulus(sigma in -4.0f64..4.0, t in 0.01f64..5.0) {
            let f = big_f(pt(sigma, t), 2).unwrap().value;
            let fc = big_f(pt(sigma, -t), 2).unwrap().value;
            prop_assert_eq!(f.conj(), fc);
            let x = x_factor(pt(sigma + 0.5, t), 2).unwrap();
            prop_assert!((x.value.norm().ln() - f.re).abs() < 1e-12 * (1.0 + f.re.abs()));
        }
    }
}
