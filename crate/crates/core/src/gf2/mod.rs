//! Linear algebra and module arithmetic over GF(2).

pub mod echelon;
pub mod io;
pub mod matrix;
pub mod meataxe;
pub mod poly;
pub mod rep;
pub mod spin;

pub use echelon::{inverse, nullspace, rank, rref, solve, Subspace};
pub use matrix::BitMatrix;
pub use poly::{charpoly, irreducible_factors, small_irreducible_factors, Poly};
pub use meataxe::{absolute_factors, chop, find_submodule, is_irreducible, is_absolutely_irreducible, iso, iso_map, iso_map_irreducible, split_over_gf4, NortonCertificate, Verdict};
pub use rep::{GroupTag, Rep, RepLabel, Sign};
pub use spin::{endo_dim, hom_basis, hom_dim, spin_up, SubmoduleBasis};
