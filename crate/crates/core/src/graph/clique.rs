//! Fixed-size clique detection and enumeration.

use super::bits::BitSet;
use super::dense::DenseGraph;
use rayon::prelude::*;

/// Grows `clique` by `need` more vertices drawn from `cand`, trying
/// candidates in increasing order. `cand` holds only vertices adjacent to
/// everything in `clique`.
fn extend(g: &DenseGraph, clique: &mut Vec<usize>, cand: &BitSet, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if cand.count() < need {
        return false;
    }
    for u in cand.iter() {
        let mut next = cand.clone();
        next.retain_from(u + 1);
        next.intersect_with_words(g.row(u));
        clique.push(u);
        if extend(g, clique, &next, need - 1) {
            return true;
        }
        clique.pop();
    }
    false
}

/// Lexicographically least `k`-clique inside the vertex set `within`.
pub fn find_clique_in(g: &DenseGraph, within: &BitSet, k: usize) -> Option<Vec<usize>> {
    let mut clique = Vec::with_capacity(k);
    extend(g, &mut clique, within, k).then_some(clique)
}

/// Lexicographically least `k`-clique of `g`, if any. Root vertices are
/// searched in parallel; the result equals the sequential one.
pub fn has_clique(g: &DenseGraph, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    (0..g.n()).into_par_iter().find_map_first(|v| {
        let mut cand = g.neighbors(v);
        cand.retain_from(v + 1);
        let mut clique = vec![v];
        extend(g, &mut clique, &cand, k - 1).then_some(clique)
    })
}

fn collect(g: &DenseGraph, clique: &mut Vec<usize>, cand: &BitSet, need: usize, out: &mut Vec<Vec<usize>>) {
    if need == 0 {
        out.push(clique.clone());
        return;
    }
    if cand.count() < need {
        return;
    }
    for u in cand.iter() {
        let mut next = cand.clone();
        next.retain_from(u + 1);
        next.intersect_with_words(g.row(u));
        clique.push(u);
        collect(g, clique, &next, need - 1, out);
        clique.pop();
    }
}

/// All `s`-cliques as sorted vertex lists, in lexicographic order.
pub fn enumerate_ks(g: &DenseGraph, s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return vec![Vec::new()];
    }
    let per_root: Vec<Vec<Vec<usize>>> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let mut cand = g.neighbors(v);
            cand.retain_from(v + 1);
            let mut out = Vec::new();
            collect(g, &mut vec![v], &cand, s - 1, &mut out);
            out
        })
        .collect();
    per_root.into_iter().flatten().collect()
}

/// `s`-cliques inside `within` only.
pub fn enumerate_ks_in(g: &DenseGraph, within: &BitSet, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    collect(g, &mut Vec::new(), within, s, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(has_clique(&DenseGraph::complete(4), 4), Some(vec![0, 1, 2, 3]));
        assert_eq!(has_clique(&DenseGraph::cycle(5), 3), None);
        assert_eq!(has_clique(&DenseGraph::petersen(), 3), None);
        assert_eq!(has_clique(&DenseGraph::petersen(), 2), Some(vec![0, 1]));
        assert_eq!(enumerate_ks(&DenseGraph::complete(4), 3).len(), 4);
        assert!(enumerate_ks(&DenseGraph::cycle(5), 3).is_empty());
    }

    #[test]
    fn complete_graph_counts() {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for n in 2..=8 {
            for s in 2..=n {
                let all = enumerate_ks(&DenseGraph::complete(n), s);
                assert_eq!(all.len(), binom(n, s));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}
