use crate::blocks::BlockGraph;
use crate::graph::{count_c6_bipartite, count_triangles};
use serde::{Deserialize, Serialize};

/// Triangles in `H` and hexagons in `F` against density-matched random
/// graphs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub n: usize,
    pub edges: usize,
    pub triangles: u64,
    /// `C(n,3) · (2e / n(n−1))³`.
    pub random_triangles: f64,
    pub triangle_ratio: f64,
    pub hexagons: Option<u64>,
    /// `(a)₃ (b)₃ / 6 · d⁶` for the bipartite density `d`.
    pub random_hexagons: Option<f64>,
    pub hexagon_ratio: Option<f64>,
}

fn falling3(n: f64) -> f64 {
    n * (n - 1.0) * (n - 2.0)
}

fn ratio(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else {
        0.0
    }
}

pub fn triangle_diagnostic(h: &BlockGraph, with_hexagons: bool) -> TriangleReport {
    let n = h.n();
    let e = h.graph.edge_count();
    let triangles = count_triangles(&h.graph);
    let nf = n as f64;
    let density = if n > 1 { 2.0 * e as f64 / (nf * (nf - 1.0)) } else { 0.0 };
    let random_triangles = falling3(nf) / 6.0 * density.powi(3);
    let (hexagons, random_hexagons, hexagon_ratio) = if with_hexagons {
        let f = &h.incidence;
        let (a, b) = (f.x_count() as f64, f.y_count() as f64);
        let d = f.edge_count() as f64 / (a * b);
        let c6 = count_c6_bipartite(f);
        let expect = falling3(a) * falling3(b) / 6.0 * d.powi(6);
        (Some(c6), Some(expect), Some(ratio(c6 as f64, expect)))
    } else {
        (None, None, None)
    };
    TriangleReport {
        n,
        edges: e,
        triangles,
        random_triangles,
        triangle_ratio: ratio(triangles as f64, random_triangles),
        hexagons,
        random_hexagons,
        hexagon_ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{build_h, random_blocks, BlockPartition};
    use crate::geometry::{unital_incidence, BipartiteIncidence};
    use std::sync::Arc;

    #[test]
    fn empty_h_has_ratio_zero() {
        let f = Arc::new(unital_incidence(2).unwrap().incidence);
        let labels = (0..f.y_count()).map(|y| vec![0u8; f.y_neighbors(y).len()]).collect();
        let h = build_h(f, BlockPartition::from_labels(2, 0, labels).unwrap()).unwrap();
        let r = triangle_diagnostic(&h, true);
        assert_eq!((r.triangles, r.triangle_ratio), (0, 0.0));
        assert!(r.hexagons.unwrap() > 0);
    }

    #[test]
    fn single_k4_block() {
        // One y whose block is K_4 split into singletons.
        let f = Arc::new(BipartiteIncidence::from_x_lists(1, vec![vec![0]; 4]).unwrap());
        let h = build_h(f, BlockPartition::from_labels(4, 0, vec![vec![0, 1, 2, 3]]).unwrap()).unwrap();
        assert_eq!(triangle_diagnostic(&h, false).triangles, 4);
    }

    #[test]
    fn brute_force_triangle_recount() {
        let f = Arc::new(unital_incidence(3).unwrap().incidence);
        let h = build_h(f.clone(), random_blocks(&f, 2, 0).unwrap()).unwrap();
        let g = &h.graph;
        let mut brute = 0;
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                for c in b + 1..g.n() {
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(triangle_diagnostic(&h, false).triangles, brute);
    }
}
