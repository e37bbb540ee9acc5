//! Exact spectra, eigenstates and entanglement of two-qubit Hamiltonians
//! written in the SU(2)⊗SU(2) Pauli basis.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod fuzz;
pub mod graphene;
pub mod hamiltonian;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod pauli;
pub mod quartic;
pub mod solver;
pub mod thermo;
pub mod verify;

pub use error::{Error, Result};
