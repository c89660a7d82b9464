pub mod cli;
pub mod derived;
pub mod element;
pub mod embed;
pub mod error;
pub mod extended;
pub mod fq;
pub mod hall;
pub mod periodic;
pub mod repcat;
pub mod scalar;
pub mod suites;

pub use error::{HallError, Result};
