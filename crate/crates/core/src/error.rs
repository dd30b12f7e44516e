//! Error type shared by the library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not finite type: closure exceeded {0} roots")]
    NotFiniteType(usize),
    #[error("non-integral pairing {form} at z0 = {z0}")]
    NonIntegral { form: String, z0: String },
    #[error("operator not holomorphic: word {word} has valuation {valuation}")]
    NotHolomorphic { word: String, valuation: i32 },
    #[error("denominator vanishes at prime power {0}")]
    DenominatorVanishes(String),
    #[error("rank not q-uniform")]
    RankNotUniform,
    #[error("not scalar on complement")]
    NotScalar,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("non-rational coefficient ratio; residual symbols: {0}")]
    NonRationalRatio(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
