use std::path::Path;

use serde::Deserialize;

use super::matrix::{Dd, Mat2, Mat2Dd};
use super::norm_of;
use super::word::MAX_GENERATORS;
use crate::error::{Error, Result};

/// Tolerance on `|det - 1|` and on the surface relation residual.
pub const PRESENTATION_TOL: f64 = 1e-9;

const BOLZA_JSON: &str = include_str!("../../data/bolza.json");

/// Generators `a_1, b_1, ..., a_g, b_g` of a cocompact surface group.
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub name: String,
    pub genus: u32,
    pub generators: Vec<Mat2>,
    /// Same generators carried in double-double precision.
    pub generators_dd: Vec<Mat2Dd>,
    pub determinant_residuals: Vec<f64>,
    /// Entrywise distance of `∏ [a_i, b_i]` from `±I`.
    pub relation_residual: f64,
}

#[derive(Deserialize)]
struct GroupFile {
    name: String,
    genus: i64,
    generators: Vec<[[serde_json::Value; 2]; 2]>,
}

fn entry(v: &serde_json::Value) -> Result<Dd> {
    match v {
        serde_json::Value::String(s) => Dd::parse_decimal(s),
        serde_json::Value::Number(n) => Dd::parse_decimal(&n.to_string()),
        other => Err(Error::Parse(format!("matrix entry {other} is not a decimal"))),
    }
}

pub fn load_group(path: impl AsRef<Path>) -> Result<GroupPresentation> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    GroupPresentation::from_json(&text)
}

impl GroupPresentation {
    /// The genus-2 Bolza surface: all four generators have trace `2 + 2√2`.
    pub fn bolza() -> Self {
        Self::from_json(BOLZA_JSON).expect("bundled Bolza group is valid")
    }

    pub fn bundled_json() -> &'static str {
        BOLZA_JSON
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("group file: {e}")))?;
        if file.genus < 2 {
            return Err(Error::GenusBelowTwo(file.genus.max(0) as u32));
        }
        let genus = u32::try_from(file.genus)
            .map_err(|_| Error::Parse(format!("genus {} out of range", file.genus)))?;
        let expected = 2 * genus as usize;
        if file.generators.len() != expected || expected > MAX_GENERATORS {
            return Err(Error::GeneratorCount {
                genus,
                expected,
                found: file.generators.len(),
            });
        }
        let generators_dd = file
            .generators
            .iter()
            .map(|m| {
                Ok(Mat2Dd {
                    a: entry(&m[0][0])?,
                    b: entry(&m[0][1])?,
                    c: entry(&m[1][0])?,
                    d: entry(&m[1][1])?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrices(file.name, genus, generators_dd)
    }

    pub fn from_matrices(name: String, genus: u32, generators_dd: Vec<Mat2Dd>) -> Result<Self> {
        if genus < 2 {
            return Err(Error::GenusBelowTwo(genus));
        }
        let mut determinant_residuals = Vec::with_capacity(generators_dd.len());
        for (index, m) in generators_dd.iter().enumerate() {
            let residual = (m.det() - Dd::ONE).abs().to_f64();
            if !(residual < PRESENTATION_TOL) {
                return Err(Error::DeterminantResidual { index, residual });
            }
            determinant_residuals.push(residual);
        }
        let relation = surface_relation(&generators_dd);
        let relation_residual = relation.distance_to_pm_identity();
        if !(relation_residual < PRESENTATION_TOL) {
            return Err(Error::RelationResidual(relation_residual));
        }
        Ok(GroupPresentation {
            name,
            genus,
            generators: generators_dd.iter().map(Mat2Dd::to_f64).collect(),
            generators_dd,
            determinant_residuals,
            relation_residual,
        })
    }

    /// Generator matrices followed by inverses, indexed by letter.
    pub fn letter_matrices(&self) -> Vec<Mat2> {
        self.generators
            .iter()
            .flat_map(|m| [*m, m.unimodular_inverse()])
            .collect()
    }

    pub fn letter_matrices_dd(&self) -> Vec<Mat2Dd> {
        self.generators_dd
            .iter()
            .flat_map(|m| [*m, m.unimodular_inverse()])
            .collect()
    }

    pub fn alphabet_size(&self) -> usize {
        2 * self.generators.len()
    }

    /// Shortest translation length among the generators.
    pub fn min_generator_translation(&self) -> f64 {
        self.generators
            .iter()
            .filter_map(|m| norm_of(m).ok())
            .map(|n| n.length)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `[a_1, b_1] ⋯ [a_g, b_g]` with `[a, b] = a b a⁻¹ b⁻¹`.
fn surface_relation(gens: &[Mat2Dd]) -> Mat2Dd {
    gens.chunks(2).fold(Mat2Dd::IDENTITY, |acc, pair| {
        let (a, b) = (pair[0], pair[1]);
        acc * a * b * a.unimodular_inverse() * b.unimodular_inverse()
    })
}
