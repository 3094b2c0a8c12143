//! Exact arithmetic in the Gaussian integers and the Lipschitz quaternions,
//! together with the finite combinatorics of Hindman-type configurations:
//! finite sums and products, sum subsystems, divisible-block extraction,
//! a decidable algebra of candidate large sets, and greedy builders that
//! produce sum subsystems whose sums and products stay inside such a set.

pub mod builder;
pub mod configs;
pub mod error;
pub mod extract;
pub mod gaussian;
pub mod harness;
pub mod quaternion;
pub mod ring;
pub mod sets;
mod text;

pub use configs::{BlockSystem, IndexSet, SequenceSource};
pub use error::{Error, Result};
pub use gaussian::GaussianInt;
pub use quaternion::LipschitzQuat;
pub use ring::Ring;
pub use sets::SetDescription;
