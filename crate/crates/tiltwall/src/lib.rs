//! Command-line front end, file formats and plotting for `tiltwall-core`.

pub mod cli;
pub mod error;
pub mod json;
pub mod parse;
pub mod preset;
pub mod svg;
