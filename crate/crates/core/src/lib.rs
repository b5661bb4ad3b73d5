//! Simulation and spectral analysis of one-dimensional discrete-time quantum
//! walks in rational electric fields.
//!
//! The crate covers both standard walk families — the shift-coin walk
//! U = S C and the split-step walk W = S+ C1 S- C2 — together with the
//! diagonal field operators that electrify them, and computes their exactly
//! known transport quantities: regrouped momentum symbols and dispersion
//! relations, maximal group velocities, revival defects, spectral bands,
//! the even/odd sieving decomposition of U^2, and the correspondence with
//! generalized extended CMV matrices.

pub mod banded;
pub mod cmv;
pub mod coin;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod floquet;
pub mod linalg;
pub mod sieve;
pub mod state;
pub mod walk;

pub use coin::{CoinSequence, SU2Coin, UnitaryCoin};
pub use error::{Error, Result};
pub use field::{FieldVariant, RationalField};
pub use state::{PositionMoments, Spin, WaveFunction};
pub use walk::{Layer, WalkKind, WalkSpec};
pub mod parallel;
