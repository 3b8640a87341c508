//! Model loading, analysis commands, reports and diagrams for the `bohrify` tool.

pub mod commands;
pub mod dot;
pub mod model;
pub mod report;
pub mod verify;
