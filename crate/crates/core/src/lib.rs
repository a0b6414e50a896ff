//! Shortest paths on a graph glued from two pieces, computed from the
//! all-pairs shortest paths of the pieces.
//!
//! Weighted graphs are square matrices over the min-plus semiring
//! ([`semiring`]). Two graphs glued along a shared boundary
//! ([`graph_io::GluingDiagram`]) have their closures precompiled into
//! blocks ([`compose::precompile`]); single queries then evaluate a small
//! symbolic expression over those blocks ([`symbols`]) whose size depends
//! only on the boundary.

pub mod bench;
pub mod cli;
pub mod compose;
pub mod error;
pub mod graph_io;
pub mod oracle;
pub mod semiring;
pub mod symbols;

pub use compose::{compose_full, precompile, query, PrecompiledComponent, PrecompiledPair, QueryResult};
pub use error::{Error, Result};
pub use graph_io::{build_glued_space, pushout, GluedSpace, GluingDiagram, VertexMap};
pub use semiring::{SquareMatrix, Weight};
pub use symbols::{generate_symbols, render_symbols, SymbolMatrix};
