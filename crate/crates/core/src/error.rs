use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not associative: (e{0} e{1}) e{2} != e{0} (e{1} e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    UnitLaw(usize),
    #[error("not an algebra morphism: {0}")]
    NotAMorphism(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not normal: {0}")]
    NotNormal(String),
    #[error("not a two-sided ideal")]
    NotAnIdeal,
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid quasibase: {0}")]
    InvalidQuasibase(String),
    #[error("not a splitting: {0}")]
    NotASplitting(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
