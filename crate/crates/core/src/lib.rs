//! Minimum-description-length measures of analogical transfer between
//! string-transformation cases, and an analogy solver built on them.
//!
//! All description lengths are exact integer bit counts under the fixed
//! reference code in [`coding`].

pub mod coding;
pub mod error;
pub mod inference;
pub mod model_space;
pub mod morphology;
pub mod reusability;
pub mod solver;
pub mod synthetic;
pub mod transferability;

pub use coding::{Alphabet, BitLength, Case};
pub use error::{Error, Result};
pub use inference::{compatible_models, optimal_models, MdlResult, ModelScore};
pub use model_space::{ModelSpace, SearchBounds, Variant};
pub use morphology::{parse_model, Model, MorphModel, MorphologySpace, Representation};
pub use reusability::{reusability, rho_strong, rho_weak, ReusabilityReport};
pub use solver::{Solution, Solver};
pub use synthetic::{load_synthetic, SyntheticSpace};
pub use transferability::{tau_avg, tau_max, transfer_report, TransferReport};
