use super::partition::BlockPartition;
use crate::geometry::BipartiteIncidence;
use crate::graph::{BlockHints, DenseGraph};
use crate::{Error, Result};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::sync::Arc;

/// The graph `H` on `X`: for every `y`, a complete `s`-partite graph on the
/// parts of `N_F(y)`. Every edge remembers the `y` that created it.
#[derive(Clone, Debug)]
pub struct BlockGraph {
    pub s: usize,
    pub graph: DenseGraph,
    /// `(u, v, y)` with `u < v`, sorted by `(u, v)`.
    provenance: Vec<(u32, u32, u32)>,
    pub incidence: Arc<BipartiteIncidence>,
    pub partition: BlockPartition,
}

pub fn build_h(f: Arc<BipartiteIncidence>, partition: BlockPartition) -> Result<BlockGraph> {
    partition.check_matches(&f)?;
    let per_y: Vec<Vec<(u32, u32, u32)>> = (0..f.y_count())
        .into_par_iter()
        .map(|y| {
            let nb = f.y_neighbors(y);
            let lab = &partition.labels[y];
            let mut out = Vec::new();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    if lab[i] != lab[j] {
                        out.push((nb[i], nb[j], y as u32));
                    }
                }
            }
            out
        })
        .collect();
    let mut provenance: Vec<(u32, u32, u32)> = per_y.into_iter().flatten().collect();
    provenance.par_sort_unstable();
    if let Some(w) = provenance.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
        return Err(Error::C4Violation {
            u: w[0].0 as usize,
            v: w[0].1 as usize,
            y1: w[0].2 as usize,
            y2: w[1].2 as usize,
        });
    }
    let mut graph = DenseGraph::new(f.x_count());
    for &(u, v, _) in &provenance {
        graph.add_edge(u as usize, v as usize);
    }
    Ok(BlockGraph { s: partition.s, graph, provenance, incidence: f, partition })
}

impl BlockGraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.provenance.len()
    }

    /// Order `q` of the underlying geometry, read off as the largest
    /// `X`-degree of `F` minus one.
    pub fn q(&self) -> u64 {
        let d = (0..self.incidence.x_count()).map(|x| self.incidence.x_neighbors(x).len()).max().unwrap_or(0);
        d.saturating_sub(1).max(1) as u64
    }

    pub fn provenance(&self) -> &[(u32, u32, u32)] {
        &self.provenance
    }

    /// The `y` that created edge `uv`, or `None` for non-edges and injected
    /// edges.
    pub fn provenance_of(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v) as u32, u.max(v) as u32);
        self.provenance
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
            .ok()
            .map(|i| self.provenance[i].2 as usize)
    }

    /// Parts `A_1(y), ..., A_s(y)`.
    pub fn parts(&self, y: usize) -> Vec<Vec<u32>> {
        self.partition.parts(&self.incidence, y)
    }

    /// Nonempty parts of every block with at least two of them.
    pub fn block_hints(&self) -> BlockHints {
        (0..self.incidence.y_count())
            .map(|y| self.parts(y).into_iter().filter(|p| !p.is_empty()).collect::<Vec<_>>())
            .filter(|parts| parts.len() >= 2)
            .collect()
    }

    /// `H` as a plain graph carrying its block hints.
    pub fn hinted_graph(&self) -> DenseGraph {
        self.graph.clone().with_block_hints(self.block_hints()).expect("blocks of H are complete multipartite")
    }

    /// Copy with an extra edge that has no provenance.
    pub fn with_injected_edge(&self, u: usize, v: usize) -> BlockGraph {
        let mut h = self.clone();
        h.graph.add_edge(u, v);
        h
    }

    /// True if no part `A_i(y)` contains an edge of the graph.
    pub fn parts_are_independent(&self) -> bool {
        (0..self.incidence.y_count()).all(|y| {
            self.parts(y).iter().all(|p| {
                p.iter().enumerate().all(|(i, &a)| p[i + 1..].iter().all(|&b| !self.graph.has_edge(a as usize, b as usize)))
            })
        })
    }

    /// Graph format followed by `provenance m=<m>` and `u v y` lines.
    pub fn to_text(&self) -> String {
        let mut s = self.graph.to_text();
        let _ = writeln!(s, "provenance m={}", self.provenance.len());
        for &(u, v, y) in &self.provenance {
            let _ = writeln!(s, "{u} {v} {y}");
        }
        s
    }

    /// Exact double count `Σ_y Σ_{i<j} |A_i(y)|·|A_j(y)|`.
    pub fn expected_edge_count(&self) -> usize {
        (0..self.incidence.y_count())
            .map(|y| {
                let sizes: Vec<usize> = self.parts(y).iter().map(Vec::len).collect();
                let total: usize = sizes.iter().sum();
                (total * total - sizes.iter().map(|k| k * k).sum::<usize>()) / 2
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::random_blocks;

    #[test]
    fn single_block() {
        let f = Arc::new(BipartiteIncidence::from_x_lists(1, vec![vec![0]; 3]).unwrap());
        let p = BlockPartition::from_labels(2, 0, vec![vec![0, 0, 1]]).unwrap();
        let h = build_h(f, p).unwrap();
        assert_eq!(h.graph.edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(h.provenance_of(2, 0), Some(0));
        assert_eq!(h.provenance_of(0, 1), None);
    }

    #[test]
    fn equal_labels_give_empty_graph() {
        let f = Arc::new(crate::geometry::unital_incidence(2).unwrap().incidence);
        let labels = (0..f.y_count()).map(|y| vec![1u8; f.y_neighbors(y).len()]).collect();
        let h = build_h(f, BlockPartition::from_labels(2, 0, labels).unwrap()).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.graph.edge_count(), 0);
    }

    #[test]
    fn shared_pair_is_a_c4_violation() {
        // x0, x1 both adjacent to y0 and y1
        let f = Arc::new(BipartiteIncidence::from_x_lists(2, vec![vec![0, 1], vec![0, 1]]).unwrap());
        let p = BlockPartition::from_labels(2, 0, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(matches!(build_h(f, p), Err(Error::C4Violation { u: 0, v: 1, .. })));
    }

    #[test]
    fn edges_match_triple_enumeration_and_double_count() {
        let f = Arc::new(crate::geometry::unital_incidence(2).unwrap().incidence);
        let p = random_blocks(&f, 2, 0).unwrap();
        let h = build_h(f.clone(), p.clone()).unwrap();
        // independent recount over all (y, u, v) triples
        let mut brute = std::collections::BTreeSet::new();
        for y in 0..f.y_count() {
            for u in 0..f.x_count() {
                for v in u + 1..f.x_count() {
                    let lu = f.y_neighbors(y).iter().position(|&x| x as usize == u);
                    let lv = f.y_neighbors(y).iter().position(|&x| x as usize == v);
                    if let (Some(a), Some(b)) = (lu, lv) {
                        if p.labels[y][a] != p.labels[y][b] {
                            brute.insert((u, v));
                        }
                    }
                }
            }
        }
        assert_eq!(h.graph.edges(), brute.into_iter().collect::<Vec<_>>());
        assert_eq!(h.edge_count(), h.expected_edge_count());
        assert!(h.parts_are_independent());
    }
}
