//! Level-rank duality for `sl_n` at level `m` and `sl_m` at level `n`.
//!
//! The crate computes, exactly where possible, the branching of the level-one
//! simples of `(sl_{nm})_1` under `(sl_n)_m ⊕ (sl_m)_n`, quantum dimensions
//! in cyclotomic fields, Kac–Walton fusion rules, and the Kac–Peterson
//! S-matrix, and bundles checks of the identities that tie them together.

pub mod branching;
pub mod cyclotomic;
pub mod decomposition;
pub mod error;
pub mod fusion;
pub mod partitions;
pub mod qdim;
pub mod real;
pub mod smatrix;
pub mod symfunc;
pub mod verify;
pub mod weights;

pub use branching::{branch, mirror_transport, transport, BranchingTable};
pub use cyclotomic::Cyclotomic;
pub use decomposition::Decomposition;
pub use error::{Error, Result};
pub use fusion::{fuse, FusionRing};
pub use partitions::Partition;
pub use qdim::{category_dim, graded_dim, qdim};
pub use smatrix::{central_charge, conformal_weight, s_matrix, SMatrixData};
pub use weights::LevelWeight;
