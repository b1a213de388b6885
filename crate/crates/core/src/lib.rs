//! Truncated Fock-space simulation of entanglement concentration on split
//! single-mode squeezed vacuum, with photon subtraction enhanced by coherent
//! displacements.
//!
//! The crate is organized along the pipeline:
//!
//! * [`fock`] — truncated-space states, mode operators, beam splitter;
//! * [`states`] — the specific input and target states;
//! * [`subtraction`] — ideal displaced-annihilation filters and the
//!   realistic tap-off + on/off-detector model with heralded branches;
//! * [`entanglement`] — entropy of entanglement and logarithmic negativity;
//! * [`sweep`] — parameter sweeps and scalar optimizers over displacement
//!   and splitter settings.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so concurrent use needs no synchronization.

pub mod entanglement;
pub mod error;
pub mod fock;
mod math;
pub mod states;
pub mod subtraction;
pub mod sweep;

pub use error::{FockError, Result};
pub use num_complex::Complex64;
