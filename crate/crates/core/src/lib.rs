//! Exact symbolic computation in the equivariant and ordinary Grothendieck
//! rings of regular compactifications of reductive groups.
//!
//! The crate is organized bottom-up:
//! - [`weight`], [`laurent`]: exact Laurent arithmetic over weight lattices;
//! - [`linalg`]: fraction-free elimination and Smith normal form;
//! - [`root`]: root systems, Weyl groups, coset combinatorics;
//! - [`steinberg`]: the Steinberg basis, expansions, structure constants and
//!   the induced model of the flag-variety K-ring;
//! - [`fan`]: cones and fans over the cocharacter lattice, ample piecewise
//!   linear functions, the moment ordering and GIT invariants;
//! - [`toric`]: the localized model of torus-equivariant K-theory of a
//!   smooth toric variety with its orbit-class basis;
//! - [`kring`]: membership, the two multiplication routes in the equivariant
//!   K-ring of a compactification, the ordinary K-ring and its two-path
//!   cross-check, and the presentation checks over the wonderful case;
//! - [`instance`]: the JSON instance format and the shipped instances.

pub mod fan;
pub mod instance;
pub mod kring;
pub mod laurent;
pub mod linalg;
pub mod root;
pub mod steinberg;
pub mod tensor;
pub mod toric;
pub mod weight;

/// Library-level errors. Validation problems are schema or precondition
/// failures of user input; internal inconsistencies signal broken theorems
/// and are kept separate so callers can exit differently on them.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("division by the zero element")]
    ZeroDivisor,
    #[error("validation error: {0}")]
    Validation(String),
    #[error("non-generic direction: {0}")]
    NonGeneric(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub use laurent::{LaurentElement, TensorElement};
pub use root::{RootSystem, WeylElement, WeylGroup};
pub use weight::{BiWeight, Weight};
