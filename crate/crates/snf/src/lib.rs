//! File formats, SVG rendering and the command-line frontend for
//! [`snf_core`].

pub mod cli;
pub mod format;
pub mod render;

pub use snf_core as core;
