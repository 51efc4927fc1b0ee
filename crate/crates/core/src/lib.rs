//! Optimal Bayesian and minimax discrimination of two qubit Pauli channels.
//!
//! The exact side of the crate works in rational arithmetic: breakpoints,
//! risk curves, worst-case priors and the entanglement-necessity case
//! analysis are all decided without rounding. The [`oracle`] module is an
//! independent floating-point path that builds the actual output density
//! matrices and computes trace norms by eigen-decomposition, used to check
//! every closed form.

pub mod error;
pub mod exactnum;
pub mod io;
pub mod minimax;
pub mod oracle;
pub mod pauli;
pub mod pwa;
pub mod risk;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::Rational;
pub use minimax::{
    classify, full_report, minimax_entangled, minimax_no_ancilla, optimal_input_no_ancilla, CaseLabel, CaseTag,
    DiscriminationReport, InputConstruction, OptimalInputs,
};
pub use pauli::{BreakpointEntry, ChannelPair, PauliChannel};
pub use pwa::{Affine, Knot, MaxPoint, PwaFunction};
pub use risk::{
    bayes_entanglement_needed, bayes_risk_bloch, bayes_risk_eigenstate, bayes_risk_entangled, bayes_risk_no_ancilla,
    AbcdCoefficients, Axis, BlochVector,
};
