//! Floating-point verification path built on explicit density matrices.
//!
//! Nothing here uses the closed-form risk curves.

pub mod channel;
pub mod helstrom;
pub mod linalg;
pub mod unitary;

pub use channel::{apply_channel, bell_output, density_from_bloch, pauli};
pub use helstrom::{check_density, helstrom_povm, helstrom_risk, matrix_pairs, minimax_states, MinimaxStates, Povm2};
pub use linalg::{eigh, Eigen, HermitianMatrix, C64};
pub use unitary::{origin_distance, unitary_bayes_risk};
