//! Extremal graph computations for vertex-disjoint even fans.
//!
//! A fan is the join of a single vertex (the center) with a path; this crate
//! works with even fans on 2k+1 vertices and the graphs that maximize edge
//! count or adjacency spectral radius while avoiding t vertex-disjoint copies.
//!
//! The crate is organized around five concerns:
//!
//! - [`graph`] — immutable bitset-backed graphs, standard constructors, and a
//!   bit-exact graph6 codec;
//! - [`detect`] — exact subgraph decisions: long paths, single fans, and
//!   vertex-disjoint fan packings with verified witnesses;
//! - [`family`] — the closed-form edge counts, the optimal split of the two
//!   vertex classes, and construction/verification of the extremal family
//!   members (a clique joined to a near-regular augmented complete bipartite
//!   graph);
//! - [`spectral`] — in-crate eigensolvers (cyclic Jacobi, shifted power
//!   iteration), equitable partitions and quotient matrices, and the 2x2/3x3
//!   quotient matrices with their characteristic polynomials in exact rational
//!   arithmetic;
//! - [`oracle`] — ground truth at small order: isomorph-free enumeration,
//!   exhaustive edge/spectral maxima with witnesses, blossom matching, and
//!   brute-force counterparts of the fast routines.

pub mod detect;
pub mod family;
pub mod graph;
pub mod oracle;
pub mod ratio;
pub mod spectral;

pub use detect::{FanParams, FanWitness, PackingOutcome};
pub use family::FamilySpec;
pub use graph::{Graph, VertexSet};
pub use ratio::Rat;
pub use spectral::{QuotientSpec, SpectralResult};
