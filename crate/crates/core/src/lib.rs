//! Matching width and pathwidth of graphs, the constructive conversions
//! between vertex orderings and path decompositions, graph-based CNF
//! families, and exact small-scale checks of size lower bounds for
//! nondeterministic semantic `c`-OBDDs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: graphs, orderings, prefix cuts, bipartite matching and König covers
//! - [`width`]: matching width, pathwidth and settled vertex-cover chains
//! - [`decomposition`]: tree/path decompositions, validation and conversions
//! - [`instances`]: `T_r`, `CT_{r,k}`, `CNF(G)`, `F_{r,k}` and test graph generators
//! - [`branching`]: nondeterministic branching programs and the semantic `c`-OBDD check
//! - [`obdd`]: reduced OBDD construction and exact minimum size over variable orders
//! - [`lbound`]: witness cuts, assignment families, separation vectors and size bounds
//! - [`dimacs`], [`pace`]: file formats
//! - [`cli`]: the command line front end

pub mod branching;
pub mod cli;
pub mod decomposition;
pub mod dimacs;
pub mod error;
pub mod graph;
pub mod instances;
pub mod lbound;
pub mod obdd;
pub mod pace;
pub mod width;

pub use error::{Error, Result};
pub use graph::{CutGraph, Graph, Matching, VertexCover, VertexOrdering};
