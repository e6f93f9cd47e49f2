//! Simulation of entanglement extraction from spin chains by collisions
//! with probe qubits.
//!
//! Module map:
//! - [`qcore`]: dense complex linear algebra, Jacobi eigensolver, partial traces
//! - [`states`]: chain pair states, W states, probe states, exact diagonalization
//! - [`gates`]: collision Hamiltonians and closed-form unitaries
//! - [`measures`]: concurrence, fidelity, trace distance
//! - [`protocol`]: single and repeated collisions, fixed points, thresholds
//! - [`record`]: flat result rows for sweeps
//! - [`cli`]: the `entx` command-line front end

pub mod cli;
pub mod error;
pub mod gates;
pub mod measures;
pub mod protocol;
pub mod qcore;
pub mod record;
pub mod states;

pub use error::{Error, Result};
