//! Vertex-minor calculus with replayable traces, exact solvers and
//! constructive certificates for the tree, cover and frame lemmas behind
//! χ-boundedness of vertex-minor-closed classes.

// Index loops mirror the role-indexed notation (x_k, z_{i,j}) of the constructions.
#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod bloated;
pub mod chi;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod multicover;
pub mod oracle;
pub mod ramsey;
pub mod random;
pub mod shrink;
pub mod solve;
pub mod suite;
pub mod trace;
pub mod universal;

pub use error::{Error, Result};
pub use graph::{edge, vset, Edge, Graph, Vertex, VertexSet};
pub use trace::{Step, Trace};
