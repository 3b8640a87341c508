//! Finite-dimensional Bohrification of a holonomy-flux Weyl algebra.
//!
//! The crate builds, for a finite graph with finite-group holonomies, the
//! algebra generated by configuration (multiplication) operators and Weyl
//! (translation) operators, the poset of commutative contexts inside it, the
//! external Gelfand spectrum over that poset, and the intuitionistic logic of
//! daseinised projections. Symmetry checks cover graph automorphisms and
//! gauge transformations.
//!
//! Module map:
//!
//! - [`algebra`]: dense complex matrices, `*`-algebra generation, joint
//!   diagonalisation of commutative algebras.
//! - [`group`], [`graph`], [`holonomy`]: the finite configuration space and
//!   the operators acting on `L²` of it.
//! - [`context`]: the inclusion-ordered family of commutative subalgebras.
//! - [`spectrum`]: characters, the external spectrum and its topology,
//!   sobriety, and the truncated ascending-chain construction.
//! - [`symmetry`]: automorphisms and gauge transformations acting on the
//!   model and on the context poset.
//! - [`logic`]: daseinisation and the Heyting algebra of clopen subobjects.
//! - [`exec`]: sequential / data-parallel execution switch.

pub mod algebra;
pub mod context;
pub mod error;
pub mod exec;
pub mod graph;
pub mod group;
pub mod holonomy;
pub mod logic;
pub mod spectrum;
pub mod symmetry;

pub use algebra::{ComplexMatrix, StarAlgebra, C64, DEFAULT_TOL};
pub use error::{Error, Result};
pub use exec::Exec;
