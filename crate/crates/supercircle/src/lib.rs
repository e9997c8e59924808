//! Concrete arithmetic for the supergroup family `(C^{1|1})^x_k` and its
//! compact real form `S^{1|1}`: Grassmann-valued group laws, SUSY structure
//! checks, real-structure classification, SHCP representation decomposition
//! and a truncated super Peter-Weyl expansion.

pub mod error;
pub mod grassmann;
pub mod group;
pub mod laurent;
pub mod linalg;
pub mod literal;
pub mod peter_weyl;
pub mod real_forms;
pub mod reps;
pub mod scalar;
pub mod sections;
pub mod suites;

pub use error::{Error, Result};
