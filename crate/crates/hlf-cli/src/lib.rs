//! Support library for the `hlf` command-line tool: suite configuration,
//! the property-suite runner, and the acceptance criteria.

pub mod config;
pub mod criteria;
pub mod props;
