//! Analysis, scanning and verification front end over `lehmer-core`.

pub mod config;
pub mod enumerate;
pub mod error;
pub mod oracle;
pub mod record;
pub mod scan;
pub mod summary;
pub mod thresholds;
pub mod verify;

pub use config::ScanConfig;
pub use error::{CliError, CliResult};
