//! Relative cell complexes over finite delta complexes and the free
//! factorization they generate.
//!
//! The generating maps are the boundary inclusions `∂Δᵏ -> Δᵏ`. Everything is
//! finite and computed exactly, so categorical laws are checked as literal
//! equalities of simplicial maps.

pub mod cellcx;
pub mod corpus;
pub mod deltacx;
pub mod error;
pub mod json;
pub mod lifting;
pub mod soa;
pub mod strata;

pub use cellcx::{CellComplex, CellComplexMorphism};
pub use deltacx::{ArrowSquare, DeltaComplex, Filtration, SimplexId, SimplicialMap};
pub use error::{Error, Result};
pub use lifting::{FillerTable, GeneratingSquare};
pub use soa::{FactorResult, KCellKey};
pub use strata::{Cell, Stratum, StrataMorphism};
