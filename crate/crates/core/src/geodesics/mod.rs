//! Length spectra of cocompact Fuchsian groups.
//!
//! Conjugacy classes are found by enumerating cyclic words (necklaces) in the
//! generators and their inverses, then clustering by trace. Clustering is
//! approximate: two non-conjugate classes with the same trace fall into one
//! record, whose `multiplicity` counts the orientations `{P}` and `{P⁻¹}`
//! seen for it. Exact conjugacy in the group is not attempted.

mod enumerate;
mod group;
mod io;
pub mod matrix;
mod spectrum;
mod word;

pub use enumerate::{enumerate_elements, enumerate_elements_with, reduced_word_count, ELEMENT_BUDGET};
pub use group::{load_group, GroupPresentation, PRESENTATION_TOL};
pub use io::{load_spectrum, read_spectrum, save_spectrum, write_spectrum};
pub use matrix::Mat2;
pub use spectrum::{
    build_spectrum, build_spectrum_with, completeness_radius, GeodesicClass, LengthSpectrum,
    SpectrumOptions,
};
pub use word::{inverse_letter, Letter, Word};

use crate::error::{Error, Result};

/// Traces in `(2, 2 + TOL_HYPERBOLIC]` are rejected as numerically unsafe.
pub const TOL_HYPERBOLIC: f64 = 1e-9;

/// Relative tolerance for merging traces into one class.
pub const TOL_TRACE: f64 = 1e-9;

/// Trace, norm and length of a hyperbolic element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormData {
    /// Absolute value of the trace (elements live in PSL(2,R)).
    pub trace: f64,
    pub norm: f64,
    pub length: f64,
}

/// `N(P) = α²` where `α > 1` is the larger eigenvalue modulus.
pub fn norm_of(m: &Mat2) -> Result<NormData> {
    norm_from_trace(m.trace())
}

pub fn norm_from_trace(trace: f64) -> Result<NormData> {
    let tr = trace.abs();
    if !(tr > 2.0 + TOL_HYPERBOLIC) {
        return Err(Error::NonHyperbolic { trace: tr });
    }
    let alpha = 0.5 * (tr + ((tr - 2.0) * (tr + 2.0)).sqrt());
    Ok(NormData {
        trace: tr,
        norm: alpha * alpha,
        length: 2.0 * alpha.ln(),
    })
}

/// Largest `|trace|` whose translation length is at most `length`.
pub fn trace_for_length(length: f64) -> f64 {
    2.0 * (0.5 * length).cosh()
}
