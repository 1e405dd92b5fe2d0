//! Finite verification engine for monads, Eilenberg-Moore algebras,
//! enveloping functors along an adjunction, and the freeness criterion for
//! the PBW property.
//!
//! The [`fincat`] backend represents every structure as explicit tables
//! and decides properties by exhaustive search. The [`finset`] backend
//! works with a catalogue of locally finite monads on finite sets, where
//! algebra categories are too large to materialize and coequalizers are
//! computed by congruence closure.

pub mod corpus;
pub mod envelope;
pub mod error;
pub mod fincat;
pub mod finset;
pub mod instance;
pub mod monad;
pub mod psimorph;
pub mod report;
pub mod tmodule;

pub use error::{Error, Result};
pub use report::{ValidationReport, Violation, ViolationKind};
