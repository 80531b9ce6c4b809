pub mod cli;
pub mod diag;
mod error;
pub mod hata;
pub mod ifs;
pub mod numeric;
pub mod quasi;
pub mod render;
pub mod shift;

pub use error::{Error, Result};
