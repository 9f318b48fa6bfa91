pub mod dsl;
pub mod normalform;
pub mod par;
pub mod error;
pub mod freealg;
pub mod hopf;
pub mod connection;
pub mod presentations;
pub mod report;
pub mod scalars;
pub mod suite;

pub use error::{Error, Result};
