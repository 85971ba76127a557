pub mod calculus;
pub mod classes;
pub mod cli;
pub mod context;
pub mod error;
pub mod exterior;
pub mod expr;
pub mod gla;
pub mod hopf;
pub mod presets;
pub mod report;
pub mod scalar;
pub mod universal;

pub use context::Context;
pub use error::{Error, Result};
pub use scalar::{Param, Scalar};
