//! Special functions behind `Z(s)`: the dilogarithm, the antiderivative
//! `F(s) = 4π(g-1) ∫_0^s v tan(πv) dv`, the functional-equation factor
//! `X(s) = exp F(s - 1/2)` with its large-`t` main term, and the double
//! gamma function `Γ₂`.

mod dilog;
mod gamma2;
mod xfactor;

pub use dilog::li2;
pub use gamma2::{gamma2, DEFAULT_GAMMA2_TERMS, EULER_GAMMA};
pub use xfactor::{big_f, x_asymptotic, x_asymptotic_log_bound, x_factor, X_ASYMPTOTIC_CONSTANT};

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Threshold on `|Re log|` beyond which results are kept in log form only.
pub const LOG_FORM_THRESHOLD: f64 = 700.0;

/// A point `s = σ + it`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(sigma.is_finite() && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite point {sigma} + {t}i")));
        }
        Ok(ComplexPoint { sigma, t })
    }

    pub fn real(sigma: f64) -> Self {
        ComplexPoint { sigma, t: 0.0 }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn conj(self) -> Self {
        ComplexPoint {
            sigma: self.sigma,
            t: -self.t,
        }
    }
}

impl TryFrom<Complex64> for ComplexPoint {
    type Error = Error;

    fn try_from(z: Complex64) -> Result<Self> {
        ComplexPoint::new(z.re, z.im)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_sign_negative() {
            write!(f, "{}-{}i", self.sigma, -self.t)
        } else {
            write!(f, "{}+{}i", self.sigma, self.t)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Continuation,
    Reflection,
    Asymptotic,
    Product,
    Quadrature,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Series => "series",
            Method::Continuation => "continuation",
            Method::Reflection => "reflection",
            Method::Asymptotic => "asymptotic",
            Method::Product => "product",
            Method::Quadrature => "quadrature",
        };
        f.write_str(s)
    }
}

/// A value with an error estimate.
///
/// When `log_form` is set the value itself is not representable (`value` is
/// NaN), `log_value` holds a logarithm of it, and `abs_error_bound` bounds
/// the error of that logarithm. Otherwise `abs_error_bound` bounds the error
/// of `value`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub log_value: Option<Complex64>,
    pub abs_error_bound: f64,
    pub log_form: bool,
    pub method: Method,
}

impl EvalResult {
    pub fn direct(value: Complex64, abs_error_bound: f64, method: Method) -> Self {
        EvalResult {
            value,
            log_value: None,
            abs_error_bound,
            log_form: false,
            method,
        }
    }

    pub fn zero(method: Method) -> Self {
        Self::direct(Complex64::new(0.0, 0.0), 0.0, method)
    }

    /// `exp(log)` given an error bound on `log`.
    pub fn from_log(log: Complex64, log_error: f64, method: Method) -> Self {
        if log.re.abs() > LOG_FORM_THRESHOLD {
            EvalResult {
                value: Complex64::new(f64::NAN, f64::NAN),
                log_value: Some(log),
                abs_error_bound: log_error,
                log_form: true,
                method,
            }
        } else {
            let value = log.exp();
            EvalResult {
                value,
                log_value: Some(log),
                abs_error_bound: value.norm() * log_error.exp_m1(),
                log_form: false,
                method,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.log_form && self.value == Complex64::new(0.0, 0.0)
    }

    /// A logarithm of the value, `None` at zeros.
    pub fn log(&self) -> Option<Complex64> {
        if let Some(l) = self.log_value {
            return Some(l);
        }
        if self.is_zero() {
            None
        } else {
            Some(self.value.ln())
        }
    }

    /// Bound on the error of [`Self::log`].
    pub fn log_error(&self) -> f64 {
        if self.log_form {
            self.abs_error_bound
        } else {
            let m = self.value.norm();
            if m > 0.0 && self.abs_error_bound < m {
                -(1.0 - self.abs_error_bound / m).ln()
            } else {
                f64::INFINITY
            }
        }
    }

    pub fn log_modulus(&self) -> f64 {
        self.log().map_or(f64::NEG_INFINITY, |l| l.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_form_switch() {
        let big = EvalResult::from_log(Complex64::new(800.0, 1.0), 1e-12, Method::Product);
        assert!(big.log_form && big.value.re.is_nan());
        assert_eq!(big.log_modulus(), 800.0);
        let small = EvalResult::from_log(Complex64::new(1.0, 0.5), 1e-12, Method::Product);
        assert!(!small.log_form);
        assert!((small.value - Complex64::new(1.0, 0.5).exp()).norm() < 1e-15);
    }

    #[test]
    fn point_rejects_non_finite() {
        assert!(ComplexPoint::new(f64::NAN, 0.0).is_err());
        assert!(ComplexPoint::new(0.0, f64::INFINITY).is_err());
        assert_eq!(ComplexPoint::new(2.0, -3.0).unwrap().to_string(), "2-3i");
    }
}
