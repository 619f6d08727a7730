//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VarSetMismatch(Vec<String>, Vec<String>),

    #[error("elements live over different forms")]
    FormMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("matrix is not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),

    #[error("homomorphism incompatible: H Q' H^T != Q")]
    IncompatibleHom,

    #[error("operation undefined on the zero element")]
    ZeroElement,

    #[error("element is not q-proportional to its reflection")]
    NotReflectionProportional,

    #[error("q-ratio is an odd half power; normalization would need q^(1/4)")]
    QuarterPower,

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("edge `{0}` is not an interior edge")]
    NotInteriorEdge(String),

    #[error("membership violated: {0}")]
    Membership(String),

    #[error("invalid DT datum: {0}")]
    InvalidDatum(String),

    #[error("surface ({0},{1}) is excluded; see the exceptional presentations instead")]
    ExcludedSurface(u32, u32),

    #[error("tag `{0}` is not legal on a type-{1} face")]
    IllegalTag(String, u8),

    #[error("family is not matched at curve `{0}`")]
    Unmatched(String),

    #[error("element leaves the diamond subalgebra (unequal lift degrees)")]
    NotDiamond,

    #[error("twist index {0} has zero intersection with the diagram")]
    ZeroIntersection(usize),

    #[error("surface data inconsistent: |edges|+|hats| = {0} but invariants give {1}")]
    InconsistentSurface(usize, i64),

    #[error("bad input: {0}")]
    BadInput(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VarSetMismatch(..) => "varset-mismatch",
            Error::FormMismatch => "form-mismatch",
            Error::UnknownGenerator(_) => "unknown-generator",
            Error::NotAntisymmetric(..) => "not-antisymmetric",
            Error::IncompatibleHom => "incompatible-hom",
            Error::ZeroElement => "zero-element",
            Error::NotReflectionProportional => "not-reflection-proportional",
            Error::QuarterPower => "quarter-power",
            Error::InvalidTriangulation(_) => "invalid-triangulation",
            Error::NotInteriorEdge(_) => "not-interior-edge",
            Error::Membership(_) => "membership",
            Error::InvalidDatum(_) => "invalid-datum",
            Error::ExcludedSurface(..) => "excluded-surface",
            Error::IllegalTag(..) => "illegal-tag",
            Error::Unmatched(_) => "unmatched-family",
            Error::NotDiamond => "not-diamond",
            Error::ZeroIntersection(_) => "zero-intersection",
            Error::InconsistentSurface(..) => "inconsistent-surface",
            Error::BadInput(_) => "bad-input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
