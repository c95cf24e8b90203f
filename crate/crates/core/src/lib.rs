//! Exact computation of the normalization of irreducible Puiseux
//! hypersurfaces.
//!
//! Given a Puiseux series `ξ` with finite support, the forward pipeline
//! selects distinguished exponents, builds the affine semigroup they generate
//! together with `(Z≥0)^n`, saturates it (Hilbert basis of `M ∩ (Q≥0)^n`),
//! decides smoothness, presents the normalization by toric binomials and
//! expands the minimal polynomial of `ξ`. The converse pipeline in [`hj`]
//! starts from a sublattice `L ⊆ Z^n` and produces a Puiseux series whose
//! hypersurface has the given Hirzebruch-Jung normalization.

pub mod expvec;
pub mod hj;
pub mod lattice;
pub mod minpoly;
pub mod puiseux;
pub mod semigroup;
pub mod toric;

pub use expvec::{ExpVec, Rational};
pub use lattice::{FracLattice, IntMatrix, Lattice, LatticeError};

pub use minpoly::{CycloNumber, PolyY};
pub use puiseux::{MonomialOrder, PuiseuxSeries};
pub use semigroup::{AffineSemigroup, SaturatedSemigroup};
pub use toric::ToricPresentation;
