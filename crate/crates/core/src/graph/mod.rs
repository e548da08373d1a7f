//! Sparse graph representations and connectivity analysis.
//!
//! Two immutable graph types live here: [`BipartiteGraph`] for the sampled
//! object G(n1, n2, p) and [`SimpleGraph`] for general graphs (the 2-centre H
//! and G(n, q) comparison samples). Both are constructed once and then shared
//! read-only across trial workers.
//!
//! Vertices are dense integers per side. Where a single flat index space is
//! needed, an N2 vertex `w` is addressed as `n1 + w`.

mod bipartite;
mod components;
mod io;
mod simple;

pub use bipartite::{build_bipartite, BipartiteGraph};
pub use components::{
    connected_components_bipartite, connected_components_simple, ComponentClass, ComponentSummary,
    Components,
};
pub use io::{
    decode, encode_bipartite, encode_simple, flatten_bipartite, read_graph, write_graph, GraphFile,
};
pub use simple::SimpleGraph;
