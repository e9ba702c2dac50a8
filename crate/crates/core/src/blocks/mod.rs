//! Random block construction of `H` from `F`, its `K_{s+2}`-freeness check,
//! and the certificate chain that turns a hypothetical `K_{s+2}` into an
//! O'Nan configuration of `F`.

mod block_graph;
pub mod lemma22;
mod partition;

pub use block_graph::{build_h, BlockGraph};
pub use lemma22::{lemma22_exhaustive, lemma22_witness, witness_is_valid, Lemma22Mode, Lemma22Report};
pub use partition::{random_blocks, BlockPartition};

use crate::graph::has_clique;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Four `X`-vertices and the distinct common neighbours of their six pairs,
/// in pair order (01, 02, 03, 12, 13, 23).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnanWitness {
    pub x: [usize; 4],
    pub y: [usize; 6],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub s: usize,
    pub clique_size: usize,
    pub free: bool,
    pub clique: Option<Vec<usize>>,
    pub witness: Option<OnanWitness>,
    pub extraction_error: Option<String>,
}

/// Searches `H` for a `K_{s+2}`; if one exists, also tries to extract the
/// O'Nan configuration it implies.
pub fn verify_ks2_free(h: &BlockGraph) -> FreenessReport {
    let k = h.s + 2;
    let clique = has_clique(&h.graph, k);
    let (witness, extraction_error) = match &clique {
        None => (None, None),
        Some(c) => match extract_onan_witness(h, c) {
            Ok(w) => (Some(w), None),
            Err(e) => (None, Some(e.to_string())),
        },
    };
    FreenessReport { s: h.s, clique_size: k, free: clique.is_none(), clique, witness, extraction_error }
}

/// Splits the edges of the clique `clique` by provenance, applies the
/// four-vertex lemma to that clique partition, and returns the resulting
/// subdivided `K_4` of `F`.
pub fn extract_onan_witness(h: &BlockGraph, clique: &[usize]) -> Result<OnanWitness> {
    let k = h.s + 2;
    let mut verts = clique.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != k {
        return Err(Error::InvalidInput(format!("expected {k} distinct vertices, got {}", verts.len())));
    }
    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..k {
        for j in i + 1..k {
            let (u, v) = (verts[i], verts[j]);
            if !h.graph.has_edge(u, v) {
                return Err(Error::InvalidInput(format!("{u}-{v} is not an edge; not a clique")));
            }
            let y = h.provenance_of(u, v).ok_or(Error::EdgeWithoutProvenance(u, v))?;
            groups.entry(y).or_default().push((i, j));
        }
    }
    let mut cliques = Vec::with_capacity(groups.len());
    for (y, pairs) in &groups {
        let mut members: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        members.sort_unstable();
        members.dedup();
        if pairs.len() != members.len() * (members.len() - 1) / 2 {
            return Err(Error::InvalidInput(format!("edges from y={y} do not form a clique")));
        }
        cliques.push(members);
    }
    let four = lemma22_witness(h.s, &cliques)?;
    let x = four.map(|i| verts[i]);
    let mut y = [0usize; 6];
    let mut idx = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            y[idx] = h.provenance_of(x[i], x[j]).expect("checked above");
            idx += 1;
        }
    }
    Ok(OnanWitness { x, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BipartiteIncidence;
    use std::sync::Arc;

    /// Four X-vertices pairwise joined through six private Y-vertices,
    /// labelled so that every pair becomes an edge: H = K_4 for s = 2.
    fn planted() -> BlockGraph {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut lists = vec![Vec::new(); 4];
        for (y, &(a, b)) in pairs.iter().enumerate() {
            lists[a].push(y as u32);
            lists[b].push(y as u32);
        }
        let f = Arc::new(BipartiteIncidence::from_x_lists(6, lists).unwrap());
        let p = BlockPartition::from_labels(2, 0, vec![vec![0, 1]; 6]).unwrap();
        build_h(f, p).unwrap()
    }

    #[test]
    fn planted_configuration_is_extracted() {
        let h = planted();
        let r = verify_ks2_free(&h);
        assert!(!r.free);
        assert_eq!(r.clique, Some(vec![0, 1, 2, 3]));
        assert_eq!(r.witness, Some(OnanWitness { x: [0, 1, 2, 3], y: [0, 1, 2, 3, 4, 5] }));
    }

    #[test]
    fn bad_extraction_inputs() {
        let h = planted();
        let mut cut = h.clone();
        cut.graph.remove_edge(0, 1);
        assert!(matches!(extract_onan_witness(&cut, &[0, 1, 2, 3]), Err(Error::InvalidInput(_))));
        assert!(extract_onan_witness(&h, &[0, 1, 2]).is_err());
    }

    #[test]
    fn injected_edge_has_no_provenance() {
        let f = Arc::new(BipartiteIncidence::from_x_lists(3, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![]]).unwrap());
        let p = BlockPartition::from_labels(2, 0, vec![vec![0, 1]; 3]).unwrap();
        let h = build_h(f, p).unwrap();
        assert!(verify_ks2_free(&h).free);
        let h = h.with_injected_edge(0, 3).with_injected_edge(1, 3).with_injected_edge(2, 3);
        let r = verify_ks2_free(&h);
        assert!(!r.free);
        assert!(r.extraction_error.unwrap().contains("without provenance"));
    }
}
