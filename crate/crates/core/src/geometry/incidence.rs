use crate::graph::BitSet;
use crate::{Error, Result};

/// Bipartite graph between an `X` side and a `Y` side, stored as sorted
/// neighbour lists and bit rows in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteIncidence {
    x_adj: Vec<Vec<u32>>,
    y_adj: Vec<Vec<u32>>,
    x_bits: Vec<BitSet>,
    y_bits: Vec<BitSet>,
}

impl BipartiteIncidence {
    /// Builds the incidence from the neighbour list of every `X`-vertex.
    /// Lists are sorted and deduplicated.
    pub fn from_x_lists(y_count: usize, lists: Vec<Vec<u32>>) -> Result<Self> {
        let x_count = lists.len();
        let mut x_adj = lists;
        let mut y_adj = vec![Vec::new(); y_count];
        for (x, list) in x_adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &y in list.iter() {
                if y as usize >= y_count {
                    return Err(Error::InvalidInput(format!("x={x} lists y={y} >= {y_count}")));
                }
                y_adj[y as usize].push(x as u32);
            }
        }
        let x_bits = x_adj
            .iter()
            .map(|l| BitSet::from_indices(y_count, l.iter().map(|&y| y as usize)))
            .collect();
        let y_bits = y_adj
            .iter()
            .map(|l| BitSet::from_indices(x_count, l.iter().map(|&x| x as usize)))
            .collect();
        Ok(BipartiteIncidence { x_adj, y_adj, x_bits, y_bits })
    }

    pub fn x_count(&self) -> usize {
        self.x_adj.len()
    }

    pub fn y_count(&self) -> usize {
        self.y_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.x_adj.iter().map(Vec::len).sum()
    }

    pub fn x_neighbors(&self, x: usize) -> &[u32] {
        &self.x_adj[x]
    }

    pub fn y_neighbors(&self, y: usize) -> &[u32] {
        &self.y_adj[y]
    }

    pub fn x_row(&self, x: usize) -> &BitSet {
        &self.x_bits[x]
    }

    pub fn y_row(&self, y: usize) -> &BitSet {
        &self.y_bits[y]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.x_bits[x].contains(y)
    }

    pub fn x_lists(&self) -> &[Vec<u32>] {
        &self.x_adj
    }

    /// Common `Y`-neighbours of two `X`-vertices.
    pub fn common_y(&self, a: usize, b: usize) -> Vec<u32> {
        intersect_sorted(&self.x_adj[a], &self.x_adj[b])
    }

    /// Copy with the edge `x–y` removed.
    pub fn without_edge(&self, x: usize, y: usize) -> Result<Self> {
        let mut lists = self.x_adj.clone();
        let before = lists[x].len();
        lists[x].retain(|&v| v as usize != y);
        if lists[x].len() == before {
            return Err(Error::InvalidInput(format!("no edge {x}-{y}")));
        }
        Self::from_x_lists(self.y_count(), lists)
    }

    /// Copy with the edge `x–y` added.
    pub fn with_edge(&self, x: usize, y: usize) -> Result<Self> {
        let mut lists = self.x_adj.clone();
        lists[x].push(y as u32);
        Self::from_x_lists(self.y_count(), lists)
    }
}

pub(crate) fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
