//! The free factorization: the right adjoint `K` to the underlying-map
//! functor, its unit and counit, the monad `E` and comonad `UK`, and exact
//! checks of the laws tying them together.

mod adjunction;
mod free;
mod laws;

pub use adjunction::{coalgebra_structure, counit, decode, k_map, k_morphism, transpose, transposes_by_search, unit};
pub use free::{free_complex, k1_step, FactorResult, KCellKey, DEFAULT_CAP};
pub use laws::{
    check_awfs_laws, comonad_comult, composite_left_map, monad_mult, monad_unit, pushforward_left_map, random_squares, Factorizer, LawReport,
    LawResult, Witness, LAWS,
};
