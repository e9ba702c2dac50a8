//! Triangle counts in dense graphs and 6-cycle counts in bipartite graphs.

use super::bits::{and_count, BitSet};
use super::dense::DenseGraph;
use crate::geometry::BipartiteIncidence;
use rayon::prelude::*;

pub fn count_triangles(g: &DenseGraph) -> u64 {
    (0..g.n())
        .into_par_iter()
        .map(|u| {
            let mut up = g.neighbors(u);
            up.retain_from(u + 1);
            let mut total = 0u64;
            for v in up.iter() {
                let mut common = up.clone();
                common.retain_from(v + 1);
                total += and_count(common.words(), g.row(v)) as u64;
            }
            total
        })
        .sum()
}

/// Number of 6-cycles `x1 y1 x2 y2 x3 y3` in a bipartite graph.
///
/// Each cycle is determined by its three `X`-vertices `{a, b, c}` and a
/// choice of distinct common neighbours for the pairs `ab`, `bc`, `ca`, so
/// the count per triple is `c_ab·c_bc·c_ca − t·(c_ab + c_bc + c_ca) + 2t`,
/// where `t` is the number of common neighbours of all three.
pub fn count_c6_bipartite(f: &BipartiteIncidence) -> u64 {
    let n = f.x_count();
    let meet: Vec<BitSet> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = BitSet::new(n);
            for &y in f.x_neighbors(a) {
                row.union_with(f.y_row(y as usize));
            }
            row.remove(a);
            row
        })
        .collect();
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut ma = meet[a].clone();
            ma.retain_from(a + 1);
            let ra = f.x_row(a);
            let mut total = 0u64;
            for b in ma.iter() {
                let rb = f.x_row(b);
                let c_ab = ra.intersection_count(rb) as u64;
                let mut ab = ra.clone();
                ab.intersect_with(rb);
                let mut cand = ma.clone();
                cand.retain_from(b + 1);
                cand.intersect_with(&meet[b]);
                for c in cand.iter() {
                    let rc = f.x_row(c);
                    let c_bc = rb.intersection_count(rc) as u64;
                    let c_ca = rc.intersection_count(ra) as u64;
                    let t = ab.intersection_count(rc) as u64;
                    total += c_ab * c_bc * c_ca + 2 * t - t * (c_ab + c_bc + c_ca);
                }
            }
            total
        })
        .sum()
}
