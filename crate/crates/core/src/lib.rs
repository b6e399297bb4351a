//! Prime spectra, prime radicals, localizations and the structure sheaf of
//! finitely generated modules over `Z` and `Z/n`.

pub mod arith;
pub mod caps;
pub mod corpus;
pub mod error;
pub mod lattice;
pub mod localization;
pub mod module;
pub mod sheaf;
pub mod spectrum;
pub mod verify;

pub use caps::Caps;
pub use arith::{Ideal, Int, RingDesc};
pub use error::{Error, Result};
pub use module::{FgModule, ModElement, Submodule};
