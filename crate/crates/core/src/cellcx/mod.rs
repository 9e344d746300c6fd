//! Proper connected sequences of strata and their morphisms.

mod complex;
mod morphism;
mod ops;

pub use complex::{complex_from_tagged, normalize, CellComplex};
pub(crate) use complex::normalize_complex;
pub use morphism::{is_isomorphism, CellComplexMorphism};
pub use ops::{cellcx_colimit, cellcx_equaliser, compose_complexes, find_isomorphism, horizontal_compose, pushforward_complex, CellDiagram};

/// `U` of a complex.
pub fn u_of_complex(c: &CellComplex) -> crate::deltacx::SimplicialMap {
    c.underlying()
}

pub fn height(c: &CellComplex) -> usize {
    c.height()
}
