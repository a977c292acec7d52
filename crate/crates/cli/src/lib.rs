//! Command-line plumbing for idforge: building and loading algebra files
//! and the scripted reproduction of reference results.

pub mod io;
pub mod properties;
pub mod reproduce;
