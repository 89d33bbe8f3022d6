//! Brute-force reference computations for testing `braidchi`.
//!
//! Nothing here reuses the cube-complex or Garside code of the main crate:
//! configurations are handled as actual values and positivity is decided by
//! subword reversing, so a shared mistake is unlikely.

mod artin;
mod grid;
mod reversing;

use thiserror::Error;

pub use artin::{free_group_images, words_equal};
pub use grid::{brute_force_components, OracleComponent};
pub use reversing::{brute_force_inf, is_positive_element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance exceeds the oracle caps: {0}")]
    Cap(String),
    #[error("diagram is not augmented")]
    NotAugmented,
}
