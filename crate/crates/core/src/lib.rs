//! Random block constructions over the Hermitian unital.
//!
//! The crate builds the secant-line / point incidence graph `F` of the
//! Hermitian unital in `PG(2, q²)`, places random complete `s`-partite
//! graphs inside every point neighbourhood to obtain a `K_{s+2}`-free graph
//! `H`, and measures how large `K_s`-free subsets of (sparsified) `H` can be.
//! Every structural claim is backed by an exact combinatorial check:
//!
//! - [`geometry`]: finite fields, the unital, its secant lines and the
//!   incidence graph, plus size / degree / `C4` / O'Nan verification.
//! - [`graph`]: dense bit-matrix graphs, fixed-size clique search, exact and
//!   greedy `alpha_s`, triangle and bipartite 6-cycle counts.
//! - [`blocks`]: seeded block partitions, the graph `H` with per-edge
//!   provenance, the clique-partition witness and its exhaustive check.
//! - [`containers`]: codegrees, scale selection, the container step and its
//!   iteration, and the resulting upper bound on `K_s`-free `t`-sets.
//! - [`harness`]: sparsification, the end-to-end pipeline, scaling fits,
//!   CSV / JSON / SVG output and the command implementations behind the CLI.

pub mod blocks;
pub mod containers;
mod error;
pub mod geometry;
pub mod graph;
pub mod harness;

pub use error::{Error, Result};
