pub mod cat;
pub mod comparison;
pub mod corpus;
pub mod dsl;
pub mod error;
pub mod ind;
pub mod linalg;
pub mod localise;
pub mod orbit;
pub mod periodic;
pub mod spectra;
pub mod stabilise;

pub use dsl::SCHEMA_VERSION;
pub use error::{Error, Result};
