//! Pipeline CLI and HTTP service built on `semlift-core`.

pub mod api;
pub mod cli;
pub mod config;
pub mod error;
pub mod pipeline;
pub mod snapshot;

pub use config::PipelineConfig;
pub use error::CliError;
