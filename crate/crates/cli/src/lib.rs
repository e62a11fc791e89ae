//! Command-line front end for `conifold-hk`: point and grid evaluation with
//! stable CSV/JSON output, and the `verify-all` suites.

pub mod commands;
pub mod settings;
pub mod table;
pub mod verify;

pub use settings::{parse_complex, Grid, Settings, CONFIG_ENV};
pub use table::{Format, Table};
