//! Spanning-tree counts of complements of regular graphs through closed-walk
//! series, closed-form complexity bounds, the triangle-sparse `g(k, l)`
//! family, and threshold-spreading synchrony measures.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod graph;
mod interval;
pub mod series;
pub mod synchrony;

pub use error::{Error, Result};
pub use graph::{parse_arc_list, parse_edge_list, parse_graph6, Graph, RegularityCertificate};
