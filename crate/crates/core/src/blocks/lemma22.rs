//! Clique partitions of `E(K_{s+2})` and the four-vertex witness whose six
//! edges lie in six different cliques.

use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// For each edge `(a, b)` of `K_n`, the index of the clique covering it.
fn edge_owner(n: usize, cliques: &[Vec<usize>]) -> Result<Vec<Vec<Option<usize>>>> {
    let mut owner = vec![vec![None; n]; n];
    for (k, c) in cliques.iter().enumerate() {
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                if a >= n || b >= n || a == b {
                    return Err(Error::InvalidInput(format!("clique {k} has bad vertex pair {a},{b}")));
                }
                if owner[a][b].is_some() {
                    return Err(Error::InvalidInput(format!("edge {a}-{b} covered twice")));
                }
                owner[a][b] = Some(k);
                owner[b][a] = Some(k);
            }
        }
    }
    Ok(owner)
}

/// True if the six edges among `four` lie in six distinct cliques.
pub fn witness_is_valid(n: usize, cliques: &[Vec<usize>], four: [usize; 4]) -> bool {
    let Ok(owner) = edge_owner(n, cliques) else { return false };
    let mut seen = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            match owner[four[i]][four[j]] {
                Some(k) if !seen.contains(&k) => seen.push(k),
                _ => return false,
            }
        }
    }
    true
}

/// Given cliques of size at most `s` that partition the edges of `K_{s+2}`
/// on `0..s+2`, returns four vertices whose six edges lie in six different
/// cliques.
pub fn lemma22_witness(s: usize, cliques: &[Vec<usize>]) -> Result<[usize; 4]> {
    let n = s + 2;
    if s < 2 {
        return Err(Error::InvalidParameter(format!("s must be at least 2, got {s}")));
    }
    for (k, c) in cliques.iter().enumerate() {
        if c.len() < 2 || c.len() > s {
            return Err(Error::InvalidInput(format!("clique {k} has {} vertices (allowed 2..={s})", c.len())));
        }
    }
    let owner = edge_owner(n, cliques)?;
    for a in 0..n {
        for b in a + 1..n {
            if owner[a][b].is_none() {
                return Err(Error::InvalidInput(format!("edge {a}-{b} not covered")));
            }
        }
    }

    let Some(first) = cliques.iter().find(|c| c.len() >= 3) else {
        return Ok([0, 1, 2, 3]);
    };
    let mut outside = (0..n).filter(|v| !first.contains(v));
    let (u, v) = (outside.next().unwrap(), outside.next().unwrap());
    // the clique through uv meets `first` in at most one vertex
    let through = &cliques[owner[u][v].unwrap()];
    let mut inside = first.iter().copied().filter(|w| !through.contains(w));
    let (x, y) = (inside.next().unwrap(), inside.next().unwrap());
    let mut four = [x, y, u, v];
    four.sort_unstable();
    if !witness_is_valid(n, cliques, four) {
        return Err(Error::InvalidInput(format!("no valid witness at {four:?}")));
    }
    Ok(four)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma22Mode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma22Report {
    pub s: usize,
    pub mode: Lemma22Mode,
    pub partitions_checked: u64,
    pub failures: u64,
    /// False when the budget stopped the enumeration early.
    pub complete: bool,
    pub first_failure: Option<Vec<Vec<usize>>>,
}

struct Enumerator {
    n: usize,
    s: usize,
    covered: Vec<Vec<bool>>,
    cliques: Vec<Vec<usize>>,
}

impl Enumerator {
    fn new(s: usize) -> Self {
        let n = s + 2;
        Enumerator { n, s, covered: vec![vec![false; n]; n], cliques: Vec::new() }
    }

    fn first_uncovered(&self) -> Option<(usize, usize)> {
        (0..self.n).flat_map(|a| (a + 1..self.n).map(move |b| (a, b))).find(|&(a, b)| !self.covered[a][b])
    }

    /// Every clique of size `<= s` through edge `ab` whose edges are all
    /// still uncovered.
    fn options(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let pool: Vec<usize> =
            (0..self.n).filter(|&c| c != a && c != b && !self.covered[a][c] && !self.covered[b][c]).collect();
        fn grow(e: &Enumerator, cur: &mut Vec<usize>, pool: &[usize], from: usize, out: &mut Vec<Vec<usize>>) {
            let mut sorted = cur.clone();
            sorted.sort_unstable();
            out.push(sorted);
            if cur.len() == e.s {
                return;
            }
            for i in from..pool.len() {
                let c = pool[i];
                if cur.iter().all(|&w| !e.covered[w][c]) {
                    cur.push(c);
                    grow(e, cur, pool, i + 1, out);
                    cur.pop();
                }
            }
        }
        grow(self, &mut vec![a, b], &pool, 0, &mut out);
        out
    }

    fn set(&mut self, clique: &[usize], value: bool) {
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                self.covered[a][b] = value;
                self.covered[b][a] = value;
            }
        }
    }

    /// Visits every partition; returns false if `visit` asked to stop.
    fn walk(&mut self, visit: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> bool {
        let Some((a, b)) = self.first_uncovered() else {
            return visit(&self.cliques);
        };
        for c in self.options(a, b) {
            self.set(&c, true);
            self.cliques.push(c);
            let go_on = self.walk(visit);
            let c = self.cliques.pop().unwrap();
            self.set(&c, false);
            if !go_on {
                return false;
            }
        }
        true
    }

    fn sample(&mut self, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
        while let Some((a, b)) = self.first_uncovered() {
            let c = self.options(a, b).choose(rng).unwrap().clone();
            self.set(&c, true);
            self.cliques.push(c);
        }
        let out = std::mem::take(&mut self.cliques);
        for c in &out {
            self.set(c, false);
        }
        out
    }
}

/// Checks the witness on clique partitions of `E(K_{s+2})`: all of them in
/// exhaustive mode (stopping after `budget` partitions), or seeded random
/// ones in sampled mode.
pub fn lemma22_exhaustive(s: usize, mode: Lemma22Mode, budget: u64) -> Result<Lemma22Report> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("s must be at least 2, got {s}")));
    }
    let mut report =
        Lemma22Report { s, mode, partitions_checked: 0, failures: 0, complete: true, first_failure: None };
    let check = |cliques: &[Vec<usize>], report: &mut Lemma22Report| {
        report.partitions_checked += 1;
        if lemma22_witness(s, cliques).is_err() {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some(cliques.to_vec());
            }
        }
    };
    let mut e = Enumerator::new(s);
    match mode {
        Lemma22Mode::Exhaustive => {
            let finished = e.walk(&mut |cliques| {
                if report.partitions_checked >= budget {
                    return false;
                }
                check(cliques, &mut report);
                true
            });
            report.complete = finished;
        }
        Lemma22Mode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples.min(budget) {
                let p = e.sample(&mut rng);
                check(&p, &mut report);
            }
            report.complete = samples <= budget;
        }
    }
    Ok(report)
}

/// Every clique partition of `E(K_{s+2})` into cliques of size `<= s`.
pub fn clique_partitions(s: usize) -> Vec<Vec<Vec<usize>>> {
    let mut all = Vec::new();
    Enumerator::new(s).walk(&mut |c| {
        all.push(c.to_vec());
        true
    });
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singletons(n: usize) -> Vec<Vec<usize>> {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| vec![a, b])).collect()
    }

    #[test]
    fn all_singletons_k4() {
        assert_eq!(lemma22_witness(2, &singletons(4)).unwrap(), [0, 1, 2, 3]);
        assert_eq!(clique_partitions(2), vec![singletons(4)]);
    }

    #[test]
    fn k5_with_one_triangle() {
        let mut cliques = vec![vec![0, 1, 2]];
        cliques.extend(singletons(5).into_iter().filter(|e| !(e[0] < 3 && e[1] < 3)));
        assert_eq!(cliques.len(), 8);
        let w = lemma22_witness(3, &cliques).unwrap();
        assert_eq!(w, [0, 1, 3, 4]);
        assert!(witness_is_valid(5, &cliques, w));
    }

    #[test]
    fn malformed_inputs() {
        let mut missing = singletons(4);
        missing.pop();
        assert!(matches!(lemma22_witness(2, &missing), Err(Error::InvalidInput(_))));
        let mut twice = singletons(4);
        twice.push(vec![0, 1]);
        assert!(lemma22_witness(2, &twice).is_err());
        let big = vec![vec![0, 1, 2], vec![0, 3], vec![1, 3], vec![2, 3]];
        assert!(lemma22_witness(2, &big).is_err());
    }

    #[test]
    fn k5_partition_count_matches_triangle_packings() {
        // partitions of E(K5) into cliques of size <= 3 are exactly the sets
        // of pairwise edge-disjoint triangles
        let tris: Vec<[usize; 3]> = (0..5)
            .flat_map(|a| (a + 1..5).flat_map(move |b| (b + 1..5).map(move |c| [a, b, c])))
            .collect();
        let shares_edge = |x: &[usize; 3], y: &[usize; 3]| x.iter().filter(|v| y.contains(v)).count() >= 2;
        let packings = (0u32..1 << tris.len())
            .filter(|m| {
                let chosen: Vec<_> = (0..tris.len()).filter(|i| m >> i & 1 == 1).collect();
                chosen.iter().enumerate().all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !shares_edge(&tris[a], &tris[b])))
            })
            .count();
        assert_eq!(packings, 26);
        assert_eq!(clique_partitions(3).len(), packings);
    }

    #[test]
    fn budget_and_sampling() {
        let r = lemma22_exhaustive(3, Lemma22Mode::Exhaustive, 5).unwrap();
        assert!(!r.complete);
        assert_eq!(r.partitions_checked, 5);
        let r = lemma22_exhaustive(4, Lemma22Mode::Sampled { samples: 200, seed: 1 }, u64::MAX).unwrap();
        assert_eq!((r.partitions_checked, r.failures), (200, 0));
    }
}
