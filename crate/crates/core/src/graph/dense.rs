use super::bits::{words_for, BitSet};
use crate::{Error, Result};
use std::fmt::Write as _;

/// Blocks known to induce complete multipartite graphs: `blocks[b][i]` is
/// part `i` of block `b`. Used only as a search hint.
pub type BlockHints = Vec<Vec<Vec<u32>>>;

/// Simple undirected graph with one adjacency bit row per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
    labels: Option<Vec<usize>>,
    hints: Option<BlockHints>,
}

impl std::fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseGraph(n={}, m={})", self.n, self.edge_count())
    }
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        DenseGraph { n, stride, adj: vec![0; n * stride], labels: None, hints: None }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = DenseGraph::new(n);
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidInput(format!("bad edge {u}-{v} for n={n}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = DenseGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = DenseGraph::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = DenseGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u * self.stride + (v >> 6)] |= 1u64 << (v & 63);
        self.adj[v * self.stride + (u >> 6)] |= 1u64 << (u & 63);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.stride + (v >> 6)] &= !(1u64 << (v & 63));
        self.adj[v * self.stride + (u >> 6)] &= !(1u64 << (u & 63));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u * self.stride + (v >> 6)] >> (v & 63)) & 1 == 1
    }

    /// Adjacency row of `v` as raw words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    pub fn neighbors(&self, v: usize) -> BitSet {
        BitSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut row = self.neighbors(u);
            row.retain_from(u + 1);
            out.extend(row.iter().map(|v| (u, v)));
        }
        out
    }

    /// Optional original ids of the vertices (set by [`DenseGraph::induced`]).
    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels.as_ref().map_or(v, |l| l[v])
    }

    pub fn block_hints(&self) -> Option<&BlockHints> {
        self.hints.as_ref()
    }

    /// Attaches block hints after checking that every block really is
    /// complete multipartite in this graph.
    pub fn with_block_hints(mut self, hints: BlockHints) -> Result<Self> {
        for (b, parts) in hints.iter().enumerate() {
            for (i, pi) in parts.iter().enumerate() {
                for pj in &parts[i + 1..] {
                    for &u in pi {
                        for &v in pj {
                            if !self.has_edge(u as usize, v as usize) {
                                return Err(Error::InvalidInput(format!("block {b}: missing edge {u}-{v}")));
                            }
                        }
                    }
                }
            }
        }
        self.hints = Some(hints);
        Ok(self)
    }

    /// Induced subgraph on `vertices` (kept in the given order). Labels map
    /// back to this graph's labels; block hints are restricted.
    pub fn induced(&self, vertices: &[usize]) -> DenseGraph {
        let mut g = DenseGraph::new(vertices.len());
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = Some(vertices.iter().map(|&v| self.label(v)).collect());
        g.hints = self.hints.as_ref().map(|blocks| {
            blocks
                .iter()
                .map(|parts| {
                    parts
                        .iter()
                        .map(|p| p.iter().filter(|&&v| pos[v as usize] != usize::MAX).map(|&v| pos[v as usize] as u32).collect::<Vec<_>>())
                        .filter(|p: &Vec<u32>| !p.is_empty())
                        .collect::<Vec<_>>()
                })
                .filter(|parts: &Vec<Vec<u32>>| parts.len() >= 2)
                .collect()
        });
        g
    }

    /// Copy with vertex `v` deleted.
    pub fn without_vertex(&self, v: usize) -> DenseGraph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// `graph n=<n> m=<m>` followed by sorted `u v` lines.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = String::new();
        let _ = writeln!(s, "graph n={} m={}", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<DenseGraph> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let fields = crate::harness::io::header_fields(header, "graph", 1)?;
        let n = crate::harness::io::field(&fields, "n", 1)? as usize;
        let m = crate::harness::io::field(&fields, "m", 1)? as usize;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines {
            let mut it = line.split_whitespace();
            let mut next = || -> Result<usize> {
                it.next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(Error::Parse { line: i + 1, msg: "expected 'u v'".into() })
            };
            let (u, v) = (next()?, next()?);
            if u >= v || v >= n {
                return Err(Error::Parse { line: i + 1, msg: format!("edge {u} {v} must satisfy u<v<n") });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse { line: 1, msg: format!("header says m={m}, found {}", edges.len()) });
        }
        DenseGraph::from_edges(n, edges)
    }
}
