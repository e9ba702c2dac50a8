use crate::graph::{enumerate_ks, DenseGraph};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

/// `s`-uniform hypergraph on local vertices `0..n`. `ground[i]` is the id of
/// local vertex `i` in the surrounding vertex set (e.g. `X`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformHypergraph {
    pub s: usize,
    pub n: usize,
    pub edges: Vec<Vec<u32>>,
    pub ground: Vec<usize>,
}

impl UniformHypergraph {
    /// Sorts every edge and the edge list, removing duplicates.
    pub fn new(s: usize, n: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        Self::with_ground(s, (0..n).collect(), edges)
    }

    pub fn with_ground(s: usize, ground: Vec<usize>, mut edges: Vec<Vec<u32>>) -> Result<Self> {
        let n = ground.len();
        if s == 0 {
            return Err(Error::InvalidParameter("uniformity must be positive".into()));
        }
        for e in edges.iter_mut() {
            e.sort_unstable();
            let distinct = e.windows(2).all(|w| w[0] != w[1]);
            if e.len() != s || !distinct || e.iter().any(|&v| v as usize >= n) {
                return Err(Error::InvalidInput(format!("edge {e:?} is not an {s}-set of 0..{n}")));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(UniformHypergraph { s, n, edges, ground })
    }

    /// The hypergraph of `s`-cliques of `g`.
    pub fn of_cliques(g: &DenseGraph, s: usize) -> Self {
        let edges = enumerate_ks(g, s).into_iter().map(|c| c.into_iter().map(|v| v as u32).collect()).collect();
        UniformHypergraph { s, n: g.n(), edges, ground: (0..g.n()).collect() }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True if no edge lies inside `set` (local ids).
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.n];
        for &v in set {
            mark[v] = true;
        }
        !self.edges.iter().any(|e| e.iter().all(|&v| mark[v as usize]))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "hypergraph s={} n={} m={}", self.s, self.n, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        use crate::harness::io::{field, header_fields};
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let fields = header_fields(header, "hypergraph", 1)?;
        let s = field(&fields, "s", 1)? as usize;
        let n = field(&fields, "n", 1)? as usize;
        let m = field(&fields, "m", 1)? as usize;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines {
            let e = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse { line: i + 1, msg: "bad vertex".into() }))
                .collect::<Result<Vec<_>>>()?;
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::Parse { line: 1, msg: format!("header says m={m}, found {}", edges.len()) });
        }
        Self::new(s, n, edges)
    }
}

fn for_each_subset(e: &[u32], ell: usize, f: &mut impl FnMut(&[u32])) {
    fn go(e: &[u32], ell: usize, start: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == ell {
            f(cur);
            return;
        }
        for i in start..e.len() {
            if e.len() - i < ell - cur.len() {
                break;
            }
            cur.push(e[i]);
            go(e, ell, i + 1, cur, f);
            cur.pop();
        }
    }
    go(e, ell, 0, &mut Vec::with_capacity(ell), f);
}

/// Maximum number of edges containing a common `ell`-set (`0` for an empty
/// hypergraph).
pub fn delta_ell(hg: &UniformHypergraph, ell: usize) -> Result<u64> {
    if ell == 0 || ell > hg.s {
        return Err(Error::InvalidParameter(format!("ell must be in 1..={}, got {ell}", hg.s)));
    }
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for e in &hg.edges {
        for_each_subset(e, ell, &mut |sub| *counts.entry(sub.to_vec()).or_insert(0) += 1);
    }
    Ok(counts.values().copied().max().unwrap_or(0))
}
