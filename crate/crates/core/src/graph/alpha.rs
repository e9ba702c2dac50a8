//! Largest `K_s`-free induced subsets (`alpha_s`).

use super::bits::BitSet;
use super::clique::find_clique_in;
use super::dense::DenseGraph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub value: usize,
    pub witness: Vec<usize>,
    pub exact: bool,
    pub nodes_explored: u64,
}

/// True if `set` spans no `K_s`.
pub fn is_ks_free(g: &DenseGraph, set: &[usize], s: usize) -> bool {
    let within = BitSet::from_indices(g.n(), set.iter().copied());
    find_clique_in(g, &within, s).is_none()
}

fn checked(g: &DenseGraph, s: usize, mut witness: Vec<usize>, exact: bool, nodes: u64) -> AlphaResult {
    witness.sort_unstable();
    assert!(is_ks_free(g, &witness, s), "alpha witness spans a K_{s}");
    AlphaResult { value: witness.len(), witness, exact, nodes_explored: nodes }
}

/// Whether `v` can join the `K_s`-free set `chosen` without creating a `K_s`.
fn can_add(g: &DenseGraph, chosen: &BitSet, v: usize, s: usize) -> bool {
    let mut nb = chosen.clone();
    nb.intersect_with_words(g.row(v));
    find_clique_in(g, &nb, s - 1).is_none()
}

/// Best of `trials` randomized greedy passes. Each pass scans a seeded random
/// vertex order and keeps every vertex that does not close a `K_s`.
pub fn alpha_s_greedy(g: &DenseGraph, s: usize, trials: usize, seed: u64) -> AlphaResult {
    let n = g.n();
    if s <= 1 {
        return checked(g, s.max(1), Vec::new(), false, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Vec<usize> = Vec::new();
    for _ in 0..trials.max(1) {
        order.shuffle(&mut rng);
        let mut chosen = BitSet::new(n);
        let mut list = Vec::new();
        for &v in &order {
            if can_add(g, &chosen, v, s) {
                chosen.insert(v);
                list.push(v);
            }
        }
        if list.len() > best.len() {
            best = list;
        }
    }
    checked(g, s, best, false, trials as u64)
}

/// Search state for the branch-and-bound, on a degree-sorted copy of the
/// input graph.
struct Search<'a> {
    g: &'a DenseGraph,
    s: usize,
    /// Block parts as bit sets (only used for `s >= 3`).
    blocks: Vec<Vec<BitSet>>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    /// Upper bound on the largest `K_s`-free subset of `cand`: disjoint
    /// complete multipartite blocks lose at least their smallest part, and a
    /// greedy clique cover of what is left contributes at most `s - 1` per
    /// clique.
    fn cover_bound(&self, cand: &BitSet) -> usize {
        let mut rest = cand.clone();
        let mut bound = 0;
        for parts in &self.blocks {
            let sizes: Vec<usize> = parts.iter().map(|p| p.intersection_count(&rest)).collect();
            if sizes.iter().all(|&k| k > 0) {
                bound += sizes.iter().sum::<usize>() - sizes.iter().min().unwrap();
                for p in parts {
                    rest.difference_with(p);
                }
            }
        }
        while let Some(v) = rest.first() {
            let mut clique = 1;
            rest.remove(v);
            let mut pool = rest.clone();
            pool.intersect_with_words(self.g.row(v));
            while let Some(u) = pool.first() {
                clique += 1;
                rest.remove(u);
                pool.remove(u);
                pool.intersect_with_words(self.g.row(u));
            }
            bound += clique.min(self.s - 1);
        }
        bound
    }

    /// `v` is free when no `K_{s-1}` sits in its neighbourhood inside
    /// `chosen ∪ cand`, so it can join any solution.
    fn is_free(&self, chosen: &BitSet, cand: &BitSet, v: usize) -> bool {
        let mut pool = chosen.clone();
        pool.union_with(cand);
        pool.intersect_with_words(self.g.row(v));
        if self.s == 2 {
            return pool.is_empty();
        }
        find_clique_in(self.g, &pool, self.s - 1).is_none()
    }

    fn expand(&mut self, chosen: &mut BitSet, list: &mut Vec<usize>, mut cand: BitSet) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        // forced inclusions
        let mut forced = Vec::new();
        loop {
            let pick = cand.iter().find(|&v| {
                if self.s == 2 {
                    // degree <= 1 inside the candidate set
                    let mut nb = cand.clone();
                    nb.intersect_with_words(self.g.row(v));
                    nb.count() <= 1
                } else {
                    self.is_free(chosen, &cand, v)
                }
            });
            let Some(v) = pick else { break };
            cand = self.include(chosen, &cand, v);
            list.push(v);
            forced.push(v);
        }
        if list.len() > self.best.len() {
            self.best = list.clone();
        }
        if !cand.is_empty() && list.len() + self.cover_bound(&cand) > self.best.len() {
            // branch on the vertex with most candidate neighbours
            let v = cand
                .iter()
                .max_by_key(|&v| {
                    let mut nb = cand.clone();
                    nb.intersect_with_words(self.g.row(v));
                    (nb.count(), std::cmp::Reverse(v))
                })
                .unwrap();
            let with_v = self.include(chosen, &cand, v);
            list.push(v);
            self.expand(chosen, list, with_v);
            list.pop();
            chosen.remove(v);
            cand.remove(v);
            self.expand(chosen, list, cand);
        }
        for v in forced {
            chosen.remove(v);
            list.pop();
        }
    }

    /// Adds `v` to `chosen` and returns the candidates still compatible.
    fn include(&self, chosen: &mut BitSet, cand: &BitSet, v: usize) -> BitSet {
        let mut next = cand.clone();
        next.remove(v);
        let mut nb = next.clone();
        nb.intersect_with_words(self.g.row(v));
        if self.s == 2 {
            next.difference_with(&nb);
        } else {
            let mut common = chosen.clone();
            common.intersect_with_words(self.g.row(v));
            for w in nb.iter() {
                let mut pool = common.clone();
                pool.intersect_with_words(self.g.row(w));
                if find_clique_in(self.g, &pool, self.s - 2).is_some() {
                    next.remove(w);
                }
            }
        }
        chosen.insert(v);
        next
    }
}

/// Exact `alpha_s` by branch and bound with a node budget. On exhaustion the
/// best set found so far is returned with `exact = false`.
pub fn alpha_s_exact(g: &DenseGraph, s: usize, budget: u64) -> AlphaResult {
    let n = g.n();
    if s <= 1 {
        return checked(g, 1, Vec::new(), true, 0);
    }
    // descending degree, ties by id
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let sorted = g.induced(&order);

    let blocks = match (s >= 3, sorted.block_hints()) {
        (true, Some(hints)) => hints
            .iter()
            .filter(|parts| parts.len() == s)
            .map(|parts| {
                parts.iter().map(|p| BitSet::from_indices(n, p.iter().map(|&v| v as usize))).collect()
            })
            .collect(),
        _ => Vec::new(),
    };

    // incumbent: greedy pass in the sorted order
    let mut seed = BitSet::new(n);
    let mut incumbent = Vec::new();
    for v in 0..n {
        if can_add(&sorted, &seed, v, s) {
            seed.insert(v);
            incumbent.push(v);
        }
    }

    let mut search = Search { g: &sorted, s, blocks, best: incumbent, nodes: 0, budget, aborted: false };
    search.expand(&mut BitSet::new(n), &mut Vec::new(), BitSet::full(n));
    let witness = search.best.iter().map(|&v| order[v]).collect();
    checked(g, s, witness, !search.aborted, search.nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest K_s-free subset by enumerating all 2^n subsets.
    fn brute(g: &DenseGraph, s: usize) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|mask| {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                is_ks_free(g, &set, s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn named_graphs() {
        assert_eq!(alpha_s_exact(&DenseGraph::cycle(5), 2, u64::MAX).value, 2);
        assert_eq!(alpha_s_exact(&DenseGraph::complete(4), 3, u64::MAX).value, 2);
        assert_eq!(brute(&DenseGraph::petersen(), 2), 4);
        let r = alpha_s_exact(&DenseGraph::petersen(), 2, u64::MAX);
        assert_eq!(r.value, 4);
        assert!(r.exact);
        assert_eq!(alpha_s_exact(&DenseGraph::new(6), 3, u64::MAX).value, 6);
    }

    #[test]
    fn greedy_on_petersen() {
        let g = DenseGraph::petersen();
        let a = alpha_s_greedy(&g, 2, 100, 7);
        assert_eq!(a.value, 4);
        assert!(!a.exact);
        assert_eq!(a, alpha_s_greedy(&g, 2, 100, 7));
        assert_eq!(alpha_s_greedy(&DenseGraph::new(9), 3, 1, 0).value, 9);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let g = DenseGraph::petersen();
        let r = alpha_s_exact(&g, 2, 1);
        assert!(!r.exact);
        assert!(r.value <= 4 && r.value >= 1);
    }

    #[test]
    fn block_hints_keep_exactness() {
        // K_{2,2,2} is one complete 3-partite block; alpha_3 = 4
        let mut g = DenseGraph::new(6);
        let parts = [[0, 1], [2, 3], [4, 5]];
        for (i, p) in parts.iter().enumerate() {
            for q in &parts[i + 1..] {
                for &u in p {
                    for &v in q {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        let plain = alpha_s_exact(&g, 3, u64::MAX);
        let hinted = g
            .clone()
            .with_block_hints(vec![parts.iter().map(|p| p.iter().map(|&v| v as u32).collect()).collect()])
            .unwrap();
        let with = alpha_s_exact(&hinted, 3, u64::MAX);
        assert_eq!(plain.value, 4);
        assert_eq!(with.value, 4);
        assert_eq!(brute(&g, 3), 4);
    }
}
