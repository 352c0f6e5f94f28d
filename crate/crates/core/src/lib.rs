pub mod cli;
pub mod closed_form;
pub mod composition;
pub mod error;
pub mod formulas;
pub mod geometric;
pub mod numeric;
pub mod quad;
pub mod report;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
