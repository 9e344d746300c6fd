//! Finite truncated semisimplicial sets ("delta complexes"), their maps, hom
//! enumeration, and the (co)limits every other module is built from.

mod colimit;
mod complex;
mod filtration;
mod homs;
mod id;
mod map;

pub use colimit::{coequaliser, colimit, coproduct, equaliser, is_pullback, pullback, pushout, tagged, UnionFind};
pub use complex::{
    boundary_complex, facet_name, standard_simplex, top_simplex_name, vertex_set_name, DeltaComplex,
    DeltaComplexBuilder,
};
pub(crate) use complex::subsets_of_size;
pub use filtration::Filtration;
pub use homs::{boundary_map, characteristic_map, enumerate_homs, shared_boundary, shared_simplex, HomConstraint, HomSearch};
pub use id::{fresh_id, SimplexId};
pub use map::{same_complex, ArrowSquare, SimplicialMap};
