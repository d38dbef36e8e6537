//! Two Hamiltonians for one dissipative oscillator.
//!
//! The equation of motion `m ẍ = −U'(x)(1 − α ẋ²)` admits two constants of
//! motion that both reduce to the mechanical energy as `α → 0`. Each yields
//! a Lagrangian and a Hamiltonian generating the same classical flow. This
//! crate integrates those flows, checks the Legendre identities linking
//! them, extracts their small-`α` expansions, and quantizes the first-order
//! Hamiltonians in a truncated oscillator basis to measure how far apart the
//! resulting spectra are.
//!
//! * [`model`]: system parameters, potentials, constants of motion.
//! * [`dynamics`]: Newtonian and Hamiltonian flows, RK4/RK45, drift checks.
//! * [`legendre`]: Lagrangians, momentum maps, α-series audit.
//! * [`fock`]: number-basis operators and first-order perturbation theory.
//! * [`selftest`]: the invariant suite behind `ambiquant selftest`.

pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod fock;
pub mod legendre;
pub mod model;
pub mod selftest;

pub use dynamics::{
    conservation_drift, eom_rhs, flow_equivalence, integrate, ConstantOfMotion, EquivalenceReport,
    FlowVariant, Integrator, Trajectory,
};
pub use error::{Error, Result};
pub use fock::{exact_diag, FockOperator, PerturbationResult};
pub use legendre::{SeriesInAlpha, SeriesReport};
pub use model::{Chart, PhaseState, Potential, SystemConfig, Variant};
