pub mod ask;
pub mod bps;
pub mod config;
pub mod conformal;
pub mod error;
pub mod forms;
pub mod hk;
pub mod quad;
pub mod specfn;
pub mod twistor;

pub use config::Budget;
pub use error::{Error, Result};
pub use num_complex::Complex64;
