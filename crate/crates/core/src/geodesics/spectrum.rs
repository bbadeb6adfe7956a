use std::cmp::Ordering;

use serde::Serialize;

use super::enumerate::{necklace_candidates, Candidate};
use super::group::GroupPresentation;
use super::matrix::Mat2Dd;
use super::word::Word;
use super::{norm_from_trace, trace_for_length, TOL_HYPERBOLIC, TOL_TRACE};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// One trace cluster of oriented closed geodesics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicClass {
    /// Shortest (then lexicographically least) cyclic word in the cluster.
    pub word: Word,
    pub trace: f64,
    pub norm: f64,
    pub length: f64,
    pub primitive: bool,
    /// Orientations `{P}`, `{P⁻¹}` represented by the cluster.
    pub multiplicity: u32,
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LengthSpectrum {
    /// Sorted by norm, ties broken by word.
    pub classes: Vec<GeodesicClass>,
    pub min_norm: f64,
    pub max_word_length: usize,
    pub group_name: String,
    /// Classes up to this length are taken to be complete.
    pub completeness_radius: f64,
}

impl LengthSpectrum {
    /// Sorts `classes` and fills in `min_norm`.
    pub fn new(
        mut classes: Vec<GeodesicClass>,
        max_word_length: usize,
        group_name: String,
        completeness_radius: f64,
    ) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        classes.sort_by(class_order);
        Ok(LengthSpectrum {
            min_norm: classes[0].norm,
            classes,
            max_word_length,
            group_name,
            completeness_radius,
        })
    }

    pub fn primitive_classes(&self) -> impl Iterator<Item = &GeodesicClass> {
        self.classes.iter().filter(|c| c.primitive)
    }

    pub fn classes_below(&self, length: f64) -> impl Iterator<Item = &GeodesicClass> {
        self.classes.iter().filter(move |c| c.length <= length)
    }

    pub fn systole(&self) -> f64 {
        self.min_norm.ln()
    }

    pub fn max_length(&self) -> f64 {
        self.classes.last().map_or(0.0, |c| c.length)
    }
}

pub(crate) fn class_order(a: &GeodesicClass, b: &GeodesicClass) -> Ordering {
    a.norm
        .partial_cmp(&b.norm)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.word.cmp(&b.word))
}

/// `cutoff · (shortest generator translation) · margin`.
pub fn completeness_radius(group: &GroupPresentation, max_word_length: usize, margin: f64) -> f64 {
    max_word_length as f64 * group.min_generator_translation() * margin
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    pub tol_trace: f64,
    /// Safety factor applied to `cutoff · min translation length`.
    pub completeness_margin: f64,
    /// Words longer than this get their trace recomputed in double-double.
    /// Long words that collapse through the relation lose most of their f64
    /// digits to cancellation.
    pub compensate_above: usize,
    pub exec: Execution,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            tol_trace: TOL_TRACE,
            completeness_margin: 0.5,
            compensate_above: 2,
            exec: Execution::default(),
        }
    }
}

pub fn build_spectrum(group: &GroupPresentation, max_word_length: usize) -> Result<LengthSpectrum> {
    build_spectrum_with(group, max_word_length, &SpectrumOptions::default())
}

/// Enumerates necklaces up to `max_word_length`, keeps those below the
/// completeness radius, clusters them by trace and marks primitivity.
pub fn build_spectrum_with(
    group: &GroupPresentation,
    max_word_length: usize,
    opts: &SpectrumOptions,
) -> Result<LengthSpectrum> {
    let radius = completeness_radius(group, max_word_length, opts.completeness_margin);
    let max_trace = trace_for_length(radius) * (1.0 + 1e-6);
    let mut candidates =
        necklace_candidates(group, max_word_length, 2.0 + TOL_HYPERBOLIC, max_trace, opts.exec);

    if candidates.iter().any(|c| c.word.len() > opts.compensate_above) {
        let letters = group.letter_matrices_dd();
        for c in candidates.iter_mut().filter(|c| c.word.len() > opts.compensate_above) {
            let m = c
                .word
                .letters()
                .iter()
                .fold(Mat2Dd::IDENTITY, |acc, &l| acc * letters[l as usize]);
            c.trace = m.trace().abs().to_f64();
        }
    }

    candidates.sort_by(|a, b| {
        a.trace
            .partial_cmp(&b.trace)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.word.cmp(&b.word))
    });

    let mut classes: Vec<GeodesicClass> = Vec::new();
    for cluster in clusters(&candidates, opts.tol_trace) {
        let rep = cluster.iter().min_by(|a, b| a.word.cmp(&b.word)).expect("non-empty");
        let nd = norm_from_trace(rep.trace)?;
        if nd.length > radius {
            continue;
        }
        let inverse = rep.word.inverse().canonical_rotation();
        let has_inverse = inverse != rep.word && cluster.iter().any(|c| c.word == inverse);
        classes.push(GeodesicClass {
            word: rep.word.clone(),
            trace: nd.trace,
            norm: nd.norm,
            length: nd.length,
            primitive: cluster.iter().any(|c| c.lyndon),
            multiplicity: 1 + u32::from(has_inverse),
        });
    }
    mark_powers(&mut classes, opts.tol_trace);
    LengthSpectrum::new(classes, max_word_length, group.name.clone(), radius)
}

/// Splits trace-sorted candidates wherever consecutive traces differ by more
/// than `tol` relative.
fn clusters(sorted: &[Candidate], tol: f64) -> Vec<&[Candidate]> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        let split = i == sorted.len() || sorted[i].trace - sorted[i - 1].trace > tol * sorted[i].trace.max(1.0);
        if split {
            out.push(&sorted[start..i]);
            start = i;
        }
    }
    if sorted.is_empty() {
        out.clear();
    }
    out
}

/// Clears `primitive` on classes whose norm is a k-th power (k >= 2) of a
/// shorter class norm.
fn mark_powers(classes: &mut [GeodesicClass], tol: f64) {
    classes.sort_by(class_order);
    for i in 0..classes.len() {
        let (shorter, rest) = classes.split_at_mut(i);
        let c = &mut rest[0];
        if !c.primitive {
            continue;
        }
        let is_power = shorter.iter().any(|m| {
            let k = (c.length / m.length).round();
            k >= 2.0 && ((k * m.length) - c.length).abs() <= tol * c.length.max(1.0)
        });
        if is_power {
            c.primitive = false;
        }
    }
}
