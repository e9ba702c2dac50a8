//! Dense graph kernel: bit-matrix graphs, clique search, `alpha_s`, and
//! triangle / 6-cycle counts.

pub mod alpha;
pub mod bits;
pub mod clique;
pub mod counting;
pub mod dense;

pub use alpha::{alpha_s_exact, alpha_s_greedy, is_ks_free, AlphaResult};
pub use bits::BitSet;
pub use clique::{enumerate_ks, enumerate_ks_in, find_clique_in, has_clique};
pub use counting::{count_c6_bipartite, count_triangles};
pub use dense::{BlockHints, DenseGraph};
