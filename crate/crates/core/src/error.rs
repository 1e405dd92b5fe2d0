use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot compose {g} after {f}: codomain of {f} is {cod}, domain of {g} is {dom}")]
    DomainMismatch {
        g: String,
        f: String,
        cod: String,
        dom: String,
    },

    #[error("morphisms {f} and {g} are not parallel")]
    NotParallel { f: String, g: String },

    #[error("transpose shape mismatch: expected {expected}, found {found}")]
    TransposeShape { expected: String, found: String },

    #[error("category mismatch: {0}")]
    CategoryMismatch(String),

    #[error("invalid {what}:\n{report}")]
    Invalid {
        what: String,
        report: ValidationReport,
    },

    /// The algebra category lacks a coequalizer the envelope needs. The
    /// construction assumes both algebra categories have reflexive
    /// coequalizers and refuses to run otherwise.
    #[error(
        "no coequalizer of the reflexive pair ({u}, {v}) in {category}; \
         the envelope requires the algebra categories to contain reflexive coequalizers"
    )]
    MissingCoequalizer {
        category: String,
        u: String,
        v: String,
    },

    #[error("unique factorization failed: {0}")]
    Factorization(String),

    #[error("split coequalizer relation {relation} fails: {detail}")]
    SplitRelation {
        relation: &'static str,
        detail: String,
    },

    #[error("size bound exceeded: {what} needs {needed} elements, bound is {bound}")]
    SizeBound {
        what: String,
        needed: String,
        bound: usize,
    },

    #[error("unknown catalogue monad `{0}`")]
    UnknownMonad(String),

    #[error("unknown catalogue morphism `{0}`")]
    UnknownMorphism(String),

    #[error("malformed group table: {0}")]
    MalformedGroup(String),

    #[error("instance file: {0}")]
    Instance(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(what: impl Into<String>, report: ValidationReport) -> Self {
        Error::Invalid {
            what: what.into(),
            report,
        }
    }
}
