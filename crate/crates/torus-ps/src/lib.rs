//! Optimal encoding of toroidal triangulations.
//!
//! The pipeline orients a triangulation as its minimal HTC Schnyder wood,
//! walks the angle graph to obtain a unicellular map with stems, cuts that map
//! into a plane tree with two stems per vertex and ranks the resulting binary
//! word. Decoding reverses every step and closes stems back into triangles.

pub mod build;
pub mod cli;
pub mod closure;
pub mod codec;
pub mod error;
pub mod lattice;
pub mod map;
pub mod oracle;
pub mod orient;
pub mod ps;

pub use error::{Error, Stage, StageError};
pub use map::{twin, Angle, AngleStep, Dart, TorusMap, Walk};
