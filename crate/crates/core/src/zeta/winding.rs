use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ZetaEvaluator;
use crate::error::{Error, Result};
use crate::specfun::ComplexPoint;

pub const MIN_CONTOUR_SAMPLES: usize = 64;

/// Hard cap on phase samples per contour.
pub const WINDING_SAMPLE_CAP: usize = 1 << 18;

const INTEGRALITY_TOL: f64 = 0.05;

/// The circle `|s - center| = radius`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub center: ComplexPoint,
    pub radius: f64,
    pub initial_samples: usize,
}

impl ContourSpec {
    pub fn new(center: ComplexPoint, radius: f64) -> Result<Self> {
        Self::with_samples(center, radius, 256)
    }

    pub fn with_samples(center: ComplexPoint, radius: f64, initial_samples: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("contour radius must be positive, got {radius}")));
        }
        if initial_samples < MIN_CONTOUR_SAMPLES {
            return Err(Error::InvalidArgument(format!(
                "contour needs at least {MIN_CONTOUR_SAMPLES} samples, got {initial_samples}"
            )));
        }
        Ok(ContourSpec {
            center,
            radius,
            initial_samples,
        })
    }

    pub fn point(&self, theta: f64) -> ComplexPoint {
        let (sin, cos) = theta.sin_cos();
        ComplexPoint {
            sigma: self.center.sigma + self.radius * cos,
            t: self.center.t + self.radius * sin,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingReport {
    pub winding: i64,
    /// Total phase change divided by 2π.
    pub turns: f64,
    pub max_phase_step: f64,
    pub samples_used: usize,
    /// Zeros of `Z` inside the contour implied by the trivial-zero law.
    pub predicted: Option<i64>,
}

impl WindingReport {
    pub fn residual(&self) -> f64 {
        (self.turns - self.winding as f64).abs()
    }
}

fn wrap(d: f64) -> f64 {
    let r = d.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

impl ZetaEvaluator {
    /// Zero count of `Z` inside the contour by the argument principle.
    pub fn winding_number(&self, contour: &ContourSpec) -> Result<WindingReport> {
        let predicted = self.predicted_zeros(contour)?;
        let phase = |theta: f64| -> Result<f64> {
            let s = contour.point(theta);
            let z = self.z_anywhere(s)?;
            z.log()
                .map(|l| l.im)
                .ok_or_else(|| Error::NonConverged(format!("contour passes through a zero at {s}")))
        };

        let n = contour.initial_samples;
        let thetas: Vec<f64> = (0..=n).map(|j| TAU * j as f64 / n as f64).collect();
        let phases: Vec<f64> = self
            .exec
            .map(&thetas, |&th| phase(th))
            .into_iter()
            .collect::<Result<_>>()?;

        let mut samples = n;
        let mut total = 0.0;
        let mut max_step: f64 = 0.0;
        let mut stack = Vec::new();
        for j in 0..n {
            stack.push((thetas[j], phases[j], thetas[j + 1], phases[j + 1]));
            while let Some((ta, pa, tb, pb)) = stack.pop() {
                let step = wrap(pb - pa);
                if step.abs() < FRAC_PI_2 {
                    total += step;
                    max_step = max_step.max(step.abs());
                    continue;
                }
                if samples >= WINDING_SAMPLE_CAP {
                    return Err(Error::NonConverged(format!(
                        "phase step {step:.3} persists after {samples} samples"
                    )));
                }
                let tm = 0.5 * (ta + tb);
                let pm = phase(tm)?;
                samples += 1;
                stack.push((tm, pm, tb, pb));
                stack.push((ta, pa, tm, pm));
            }
        }

        let turns = total / TAU;
        let winding = turns.round();
        if (turns - winding).abs() >= INTEGRALITY_TOL {
            return Err(Error::NonConverged(format!("winding {turns:.4} is not close to an integer")));
        }
        Ok(WindingReport {
            winding: winding as i64,
            turns,
            max_phase_step: max_step,
            samples_used: samples,
            predicted,
        })
    }

    /// Contours run in parallel; results in input order.
    pub fn winding_numbers(&self, contours: &[ContourSpec]) -> Vec<Result<WindingReport>> {
        self.exec.map(contours, |c| self.winding_number(c))
    }

    fn predicted_zeros(&self, c: &ContourSpec) -> Result<Option<i64>> {
        let (lo, hi) = (c.center.sigma - c.radius, c.center.sigma + c.radius);
        if self.in_product_region(lo) {
            return Ok(Some(0));
        }
        if !self.in_continued_region(hi) {
            let bad = if lo > -self.margin { lo } else { hi.min(1.0 + self.margin) };
            return Err(Error::StripNotComputable(bad));
        }
        let g = i64::from(self.genus);
        let mut count = 0;
        let center = c.center.to_complex();
        for n in 1..=(-lo).ceil() as i64 {
            let d = (Complex64::new(-n as f64, 0.0) - center).norm();
            if d == c.radius {
                return Err(Error::NonConverged(format!("trivial zero -{n} lies on the contour")));
            }
            if d < c.radius {
                count += (2 * g - 2) * (2 * n + 1);
            }
        }
        Ok(Some(count))
    }
}
