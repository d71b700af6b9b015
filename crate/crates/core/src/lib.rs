pub mod acceptance;
pub mod bridge;
pub mod error;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod orthopoly;
pub mod poly;
pub mod rational;
pub mod series;
pub mod special;
pub mod spectrum;

pub use error::{Error, Result};
pub use matrix::{ExactMatrix, UniPoly};
pub use poly::MultiPoly;
pub use rational::{BigRational, PiScaled};
pub use series::TruncatedSeries;
