//! Support library for the `twochild` binary: config and names-file parsing
//! plus the SVG figure emitter. Kept as a library so the pieces with
//! testable geometry and grammar get unit tests of their own.

pub mod config;
pub mod figure;
