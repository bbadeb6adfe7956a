//! `Z(s) = ∏_{P₀} ∏_{k>=0} (1 - N(P₀)^{-s-k})`.
//!
//! The truncated product is used for `σ >= 1 + margin`, the functional
//! equation `Z(s) = X(s) Z(1-s)` for `σ <= -margin`. The strip in between
//! is not computable here and every entry point says so.

mod winding;

pub use winding::{ContourSpec, WindingReport, MIN_CONTOUR_SAMPLES, WINDING_SAMPLE_CAP};

use std::f64::consts::{LN_10, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geodesics::LengthSpectrum;
use crate::specfun::{big_f, gamma2, ComplexPoint, EvalResult, Method, DEFAULT_GAMMA2_TERMS};

pub const DEFAULT_MARGIN: f64 = 0.05;

/// Width of the length window whose class count drives the outer tail.
pub const TAIL_WINDOW: f64 = 1.0;

const TAIL_SAFETY: f64 = 2.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationMode {
    /// `{P₀}` and `{P₀⁻¹}` both contribute.
    #[default]
    Oriented,
    /// Each geodesic counted once: multiplicities halved.
    Unoriented,
}

impl fmt::Display for OrientationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrientationMode::Oriented => "oriented",
            OrientationMode::Unoriented => "unoriented",
        })
    }
}

impl FromStr for OrientationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oriented" => Ok(OrientationMode::Oriented),
            "unoriented" => Ok(OrientationMode::Unoriented),
            other => Err(Error::InvalidArgument(format!(
                "orientation must be oriented or unoriented, got {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Factor {
    log_norm: f64,
    weight: f64,
}

/// Immutable evaluator of `Z(s)` for one spectrum.
#[derive(Clone, Debug)]
pub struct ZetaEvaluator {
    spectrum: LengthSpectrum,
    genus: u32,
    k_cutoff: usize,
    orientation_mode: OrientationMode,
    margin: f64,
    gamma2_terms: usize,
    exec: Execution,
    factors: Vec<Factor>,
    /// Weighted count of primitive classes in the last length window.
    last_window_count: f64,
}

/// Smallest `K` with `N_min^{-K} < 1e-17`.
pub fn default_k_cutoff(min_norm: f64) -> usize {
    ((17.0 * LN_10) / min_norm.ln()).ceil().max(1.0) as usize
}

/// `λ = 1/4 + t²` for a zero at `s = 1/2 + it`.
pub fn eigenvalue_from_zero(t: f64) -> f64 {
    0.25 + t * t
}

impl ZetaEvaluator {
    /// The genus is not stored in the spectrum; callers pass the genus of
    /// the group that produced it.
    pub fn new(spectrum: LengthSpectrum, genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::GenusBelowTwo(genus));
        }
        let k_cutoff = default_k_cutoff(spectrum.min_norm);
        let mut z = ZetaEvaluator {
            spectrum,
            genus,
            k_cutoff,
            orientation_mode: OrientationMode::Oriented,
            margin: DEFAULT_MARGIN,
            gamma2_terms: DEFAULT_GAMMA2_TERMS,
            exec: Execution::default(),
            factors: Vec::new(),
            last_window_count: 0.0,
        };
        z.rebuild();
        Ok(z)
    }

    pub fn with_k_cutoff(mut self, k_cutoff: usize) -> Result<Self> {
        if k_cutoff < 1 {
            return Err(Error::InvalidArgument("k_cutoff must be at least 1".into()));
        }
        self.k_cutoff = k_cutoff;
        Ok(self)
    }

    pub fn with_margin(mut self, margin: f64) -> Result<Self> {
        if !(margin > 0.0 && margin.is_finite()) {
            return Err(Error::InvalidArgument(format!("margin must be positive, got {margin}")));
        }
        self.margin = margin;
        Ok(self)
    }

    pub fn with_orientation(mut self, mode: OrientationMode) -> Self {
        self.orientation_mode = mode;
        self.rebuild();
        self
    }

    pub fn with_gamma2_terms(mut self, terms: usize) -> Self {
        self.gamma2_terms = terms;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    fn rebuild(&mut self) {
        let scale = match self.orientation_mode {
            OrientationMode::Oriented => 1.0,
            OrientationMode::Unoriented => 0.5,
        };
        self.factors = self
            .spectrum
            .primitive_classes()
            .map(|c| Factor {
                log_norm: c.norm.ln(),
                weight: scale * f64::from(c.multiplicity),
            })
            .collect();
        let top = self.spectrum.completeness_radius;
        self.last_window_count = self
            .spectrum
            .primitive_classes()
            .filter(|c| c.length > top - TAIL_WINDOW)
            .map(|c| scale * f64::from(c.multiplicity))
            .sum();
    }

    pub fn spectrum(&self) -> &LengthSpectrum {
        &self.spectrum
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn k_cutoff(&self) -> usize {
        self.k_cutoff
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn orientation_mode(&self) -> OrientationMode {
        self.orientation_mode
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn in_product_region(&self, sigma: f64) -> bool {
        sigma >= 1.0 + self.margin
    }

    pub fn in_continued_region(&self, sigma: f64) -> bool {
        sigma <= -self.margin
    }

    /// `log Z(s)` from the truncated product, with a bound on its error.
    fn log_product(&self, s: Complex64) -> (Complex64, f64) {
        let sigma = s.re;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        let mut inner_tail = 0.0;
        for f in &self.factors {
            for k in 0..=self.k_cutoff {
                let x = (-(s + k as f64) * f.log_norm).exp();
                let term = f.weight * ln_1m(x);
                sum += term;
                abs_sum += term.norm();
            }
            // Σ_{k>K} |log(1 - N^{-s-k})| <= |x_{K+1}| / ((1 - 1/N)(1 - |x_{K+1}|))
            let next = (-(sigma + (self.k_cutoff + 1) as f64) * f.log_norm).exp();
            let ratio = (-f.log_norm).exp();
            inner_tail += f.weight * next / ((1.0 - ratio) * (1.0 - next));
        }
        let outer = self.outer_tail(sigma);
        let rounding = 4.0 * f64::EPSILON * (abs_sum + sum.norm());
        (sum, inner_tail + outer + rounding)
    }

    /// Classes beyond the completeness radius, modelled as twice the density
    /// of the last window growing like `e^L`, times a safety factor.
    fn outer_tail(&self, sigma: f64) -> f64 {
        let lc = self.spectrum.completeness_radius;
        let density = 2.0 * self.last_window_count.max(1.0) / TAIL_WINDOW;
        let per_class = 1.0 / (1.0 - (-lc).exp()).powi(2);
        TAIL_SAFETY * density * per_class * (-sigma * lc).exp() / (sigma - 1.0)
    }

    pub fn z_product(&self, s: ComplexPoint) -> Result<EvalResult> {
        if !self.in_product_region(s.sigma) {
            return Err(Error::OutsideConvergenceRegion {
                sigma: s.sigma,
                min: 1.0 + self.margin,
            });
        }
        let (log, err) = self.log_product(s.to_complex());
        Ok(EvalResult::from_log(log, err, Method::Product))
    }

    /// `X(s) Z(1-s)` in log form.
    pub fn z_continued(&self, s: ComplexPoint) -> Result<EvalResult> {
        if !self.in_continued_region(s.sigma) {
            return Err(Error::OutsideContinuedRegion {
                sigma: s.sigma,
                max: -self.margin,
            });
        }
        if s.t == 0.0 && s.sigma == s.sigma.round() {
            return Ok(EvalResult::zero(Method::Continuation));
        }
        let f = big_f(ComplexPoint::new(s.sigma - 0.5, s.t)?, self.genus)?;
        let (log_z, err_z) = self.log_product(Complex64::new(1.0 - s.sigma, -s.t));
        Ok(EvalResult::from_log(
            f.value + log_z,
            f.abs_error_bound + err_z,
            Method::Continuation,
        ))
    }

    pub fn z_anywhere(&self, s: ComplexPoint) -> Result<EvalResult> {
        if self.in_product_region(s.sigma) {
            self.z_product(s)
        } else if self.in_continued_region(s.sigma) {
            self.z_continued(s)
        } else {
            Err(Error::StripNotComputable(s.sigma))
        }
    }

    /// [`Self::z_anywhere`] at many points, in input order.
    pub fn z_many(&self, points: &[ComplexPoint]) -> Vec<Result<EvalResult>> {
        self.exec.map(points, |&s| self.z_anywhere(s))
    }

    /// `Ξ(s) = ((2π)^s Γ₂(s) Γ₂(s+1))^{2g-2} Z(s)` for `σ >= 1 + margin`.
    pub fn xi_completed(&self, s: ComplexPoint) -> Result<EvalResult> {
        let z = self.z_product(s)?;
        let (g_s, g_s1) = self.exec.join(
            || gamma2(s, self.gamma2_terms),
            || gamma2(ComplexPoint::new(s.sigma + 1.0, s.t)?, self.gamma2_terms),
        );
        let (g_s, g_s1) = (g_s?, g_s1?);
        let power = 2.0 * f64::from(self.genus) - 2.0;
        let log_g = |r: &EvalResult| r.log().expect("gamma2 has no zeros");
        let log = power * (s.to_complex() * (2.0 * PI).ln() + log_g(&g_s) + log_g(&g_s1))
            + z.log().expect("product is nonzero");
        let err = power * (g_s.log_error() + g_s1.log_error()) + z.log_error();
        Ok(EvalResult::from_log(log, err, Method::Product))
    }
}

/// `log(1 - x)` accurate for small `|x|`.
fn ln_1m(x: Complex64) -> Complex64 {
    if x.norm() < 1e-4 {
        let x2 = x * x;
        -(x + x2 * (0.5 + x / 3.0 + x2 * 0.25))
    } else {
        (1.0 - x).ln()
    }
}
