//! Catalogue monads on finite sets. Algebras are represented by their
//! structure maps and coequalizers are computed by congruence closure.

pub mod algebra;
pub mod congruence;
pub mod envelope;
pub mod map;
pub mod monads;
pub mod oracle;

pub use algebra::{
    check_algebra, enumerate_algebras, is_algebra_map, operations, FinAlgebra, Op, Structure,
};
pub use congruence::{congruence_closure, congruence_coequalizer, quotient, Partition};
pub use envelope::{
    envelope_finset, free_envelope_sizes, morphism, pbw_probe, registry, split_relations,
    AlgebraSummary, CatalogueMorphism, FinEnvelope, MorphismKind, ProbeReport, ProbeVerdict,
};
pub use map::FinSetMap;
pub use monads::{
    catalogue, instantiate, monad_law_spotcheck, monad_morphism_spotcheck, CatalogueMonad,
    FiniteMonad, Group,
};
