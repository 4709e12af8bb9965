//! Large induced forests in triangle-free planar graphs.

#![no_std]
extern crate alloc;

pub mod accounting;
pub mod embed;
pub mod extend;
pub mod gen;
pub mod graph;
pub mod lpcert;
pub mod oracle;
pub mod pattern;
pub mod reducer;
pub mod rules;
pub mod textio;

pub use graph::{Edge, Face, GraphError, PlanarGraph, VertexId};
