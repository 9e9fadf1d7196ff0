//! Simulation of entanglement transfer through disordered two-leg ladder
//! qubit chains.
//!
//! The ladder carries a single excitation over `2N` sites. Site energies on
//! the two legs are correlated so that the antisymmetric combination of the
//! legs (the `-` branch) only sees the small detuning `Δ`, while the
//! symmetric combination (the `+` branch) sees the full disorder `W`. A Bell
//! pair encoded as `|1,->` is sent down engineered perfect-transfer couplings
//! and its arrival is measured through the end-cell concurrence.
//!
//! Module map:
//!
//! - [`model`]: parameters, coupling profiles and correlated disorder sampling
//! - [`hamiltonian`]: physical and `±`-basis Hamiltonians and basis changes
//! - [`spectral`]: exact diagonalization and spectral time evolution
//! - [`observables`]: concurrence, branch/leg occupations, transfer time
//! - [`dimer`]: closed-form dimer solution for uniform ladders
//! - [`ensemble`]: seeded, parallel disorder ensembles
//! - [`experiments`]: sweep and trace drivers, ordered baseline, oracle check
//! - [`output`]: CSV and manifest serialization used by the CLI

pub mod cli;
pub mod dimer;
pub mod ensemble;
pub mod error;
pub mod experiments;
pub mod hamiltonian;
pub mod model;
pub mod observables;
pub mod output;
pub mod spectral;
pub mod stats;

pub use error::{Error, Result};
pub use hamiltonian::{Basis, HermitianOperator, StateVector};
pub use model::{CouplingScheme, DisorderRealization, LadderParams};
pub use spectral::EigenSystem;

/// Complex amplitude type used throughout.
pub type Complex = num_complex::Complex64;
