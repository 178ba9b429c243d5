//! Characteristic-2 representation theory of symmetric and alternating
//! groups: partition and crystal combinatorics, spin character values,
//! GF(2) module arithmetic with a certifying meataxe, concrete irreducible
//! modules, and the verification suites built on them.

pub mod crystal;
pub mod error;
pub mod gf2;
pub mod modrep;
pub mod partition;
pub mod perm;
pub mod spin_chars;
pub mod verify;

pub use error::{Error, Result};
pub use partition::Partition;
