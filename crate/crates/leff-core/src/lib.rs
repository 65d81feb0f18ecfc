//! Effective one-dimensional models for N-electron atoms in very strong
//! magnetic fields, projected onto the lowest Landau band.
//!
//! The crate is split into:
//! * [`specialfn`] — Lambert W, the field coupling α(B), Macdonald K₀, Γ/ψ;
//! * [`landau`] — lowest Landau modes, the partition set Σ(M) and its
//!   symmetric-group orbit structure, fermionization combinatorics;
//! * [`potentials`] — operator-valued effective potentials on F_M and the
//!   quadrature-derived constants attached to them;
//! * [`solvers`] — grid spectral solvers for the δ-model, the Coulomb model
//!   and the projected model, plus resolvent comparisons;
//! * [`bounds`] — the explicit constants ledger and admissible spectral
//!   windows;
//! * [`fermion`] — averaged potentials and the block decomposition of the
//!   fermionic models.
//!
//! `no_std` compatible (requires `alloc`); enable the default `std` feature
//! for use alongside std-based tooling.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bounds;
pub mod cache;
pub mod error;
pub mod fermion;
pub mod landau;
pub mod linalg;
pub mod potentials;
pub mod quad;
pub mod solvers;
pub mod specialfn;

pub use error::{Error, Result};
