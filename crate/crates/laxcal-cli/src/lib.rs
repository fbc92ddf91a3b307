//! Surface syntax and file formats for the lax calculi workbench: term,
//! type, context, and formula parsers, plus the plain-text frame/model
//! format. The binary in this crate wires these to the `laxcal` library.

pub mod frames;
pub mod parse;
