//! Finite categories, functors, natural transformations and adjunctions as
//! explicit tables, together with the enumeration routines the rest of the
//! crate searches with.

pub mod adjunction;
pub mod category;
pub mod coequalizer;
pub mod functor;
pub mod nat;
pub mod search;

pub use adjunction::{check_hom_bijection, validate_adjunction, AdjunctionData, Direction};
pub use category::{
    same_category, validate_category, validate_category_tables, CategoryBuilder, CategoryTables,
    FinCategory, Mor, Obj,
};
pub use coequalizer::{
    cocones, coequalizer, common_section, factorizations, is_coequalizer,
    missing_reflexive_coequalizer, unique_factorization,
};
pub use functor::{
    enumerate_functors, validate_functor, FunctorData, FunctorSearch, FunctorTables,
};
pub use nat::{
    enumerate_nat_trans, inverse_nat_trans, natural_iso_search, validate_nat_trans,
    ComponentFilter, NatTransData,
};
