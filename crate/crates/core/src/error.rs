use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse failure: {0}")]
    Parse(String),

    #[error("generator {index}: determinant residual {residual:e} exceeds tolerance")]
    DeterminantResidual { index: usize, residual: f64 },

    #[error("surface relation residual {0:e} exceeds tolerance")]
    RelationResidual(f64),

    #[error("genus below 2 (got {0})")]
    GenusBelowTwo(u32),

    #[error("genus {genus} needs {expected} generators, found {found}")]
    GeneratorCount {
        genus: u32,
        expected: usize,
        found: usize,
    },

    #[error("non-hyperbolic element (|trace| = {trace})")]
    NonHyperbolic { trace: f64 },

    #[error("resource limit: {requested} elements requested, budget is {budget}")]
    ResourceLimit { requested: u128, budget: usize },

    #[error("empty spectrum")]
    EmptySpectrum,

    #[error("malformed spectrum row {line}: {reason}")]
    MalformedRow { line: u64, reason: String },

    #[error("argument {0} is on branch cut [1, inf)")]
    OnBranchCut(f64),

    #[error("pole of tan at {0}")]
    PoleOfTan(f64),

    #[error("outside asymptotic range: t = {0} < 1")]
    OutsideAsymptoticRange(f64),

    #[error("non-converged: {0}")]
    NonConverged(String),

    #[error("outside convergence region: sigma = {sigma} < {min}")]
    OutsideConvergenceRegion { sigma: f64, min: f64 },

    #[error("outside continued region: sigma = {sigma} > {max}")]
    OutsideContinuedRegion { sigma: f64, max: f64 },

    #[error("strip not computable: sigma = {0} lies between the product and continuation regions")]
    StripNotComputable(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("check {name}: {source}")]
    Check {
        name: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
