use crate::geometry::BipartiteIncidence;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Labels in `0..s` for every neighbour of every `y`: `labels[y][k]` belongs
/// to the `k`-th smallest neighbour of `y`. Part `A_{i+1}(y)` is the set of
/// neighbours labelled `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub s: usize,
    pub seed: u64,
    pub labels: Vec<Vec<u8>>,
}

/// The label stream of `y`: ChaCha8 keyed by `seed`, stream id `y`, drawn in
/// neighbour-rank order. Independent of iteration order and thread count.
fn labels_for(seed: u64, y: usize, degree: usize, s: usize) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(y as u64);
    (0..degree).map(|_| rng.gen_range(0..s) as u8).collect()
}

pub fn random_blocks(f: &BipartiteIncidence, s: usize, seed: u64) -> Result<BlockPartition> {
    if !(2..=255).contains(&s) {
        return Err(Error::InvalidParameter(format!("s must be in 2..=255, got {s}")));
    }
    let labels = (0..f.y_count())
        .into_par_iter()
        .map(|y| labels_for(seed, y, f.y_neighbors(y).len(), s))
        .collect();
    Ok(BlockPartition { s, seed, labels })
}

impl BlockPartition {
    pub fn from_labels(s: usize, seed: u64, labels: Vec<Vec<u8>>) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidParameter(format!("s must be at least 2, got {s}")));
        }
        if let Some(y) = labels.iter().position(|l| l.iter().any(|&c| c as usize >= s)) {
            return Err(Error::InvalidInput(format!("y={y} has a label >= s={s}")));
        }
        Ok(BlockPartition { s, seed, labels })
    }

    pub fn check_matches(&self, f: &BipartiteIncidence) -> Result<()> {
        if self.labels.len() != f.y_count() {
            return Err(Error::InvalidInput(format!(
                "partition covers {} y-vertices, F has {}",
                self.labels.len(),
                f.y_count()
            )));
        }
        for (y, l) in self.labels.iter().enumerate() {
            if l.len() != f.y_neighbors(y).len() {
                return Err(Error::InvalidInput(format!("y={y}: {} labels for degree {}", l.len(), f.y_neighbors(y).len())));
            }
        }
        Ok(())
    }

    /// Parts `A_1(y), ..., A_s(y)` as sorted `X`-ids (possibly empty).
    pub fn parts(&self, f: &BipartiteIncidence, y: usize) -> Vec<Vec<u32>> {
        let mut parts = vec![Vec::new(); self.s];
        for (&x, &c) in f.y_neighbors(y).iter().zip(&self.labels[y]) {
            parts[c as usize].push(x);
        }
        parts
    }

    pub fn to_text(&self, f: &BipartiteIncidence) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "partition s={} seed={} Y={}", self.s, self.seed, self.labels.len());
        for (y, l) in self.labels.iter().enumerate() {
            let _ = write!(out, "{y}:");
            for (&x, &c) in f.y_neighbors(y).iter().zip(l) {
                let _ = write!(out, " {x}={c}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str, f: &BipartiteIncidence) -> Result<Self> {
        use crate::harness::io::{field, header_fields};
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let fields = header_fields(header, "partition", 1)?;
        let s = field(&fields, "s", 1)? as usize;
        let seed = field(&fields, "seed", 1)?;
        let mut labels = Vec::new();
        for (i, line) in lines {
            let err = |m: &str| Error::Parse { line: i + 1, msg: m.to_string() };
            let (y, rest) = line.split_once(':').ok_or_else(|| err("expected '<y>:'"))?;
            let y: usize = y.trim().parse().map_err(|_| err("bad y"))?;
            if y != labels.len() {
                return Err(err("y ids must be consecutive"));
            }
            let mut row = Vec::new();
            for (k, tok) in rest.split_whitespace().enumerate() {
                let (x, c) = tok.split_once('=').ok_or_else(|| err("expected x=label"))?;
                let x: u32 = x.parse().map_err(|_| err("bad x"))?;
                if f.y_neighbors(y).get(k) != Some(&x) {
                    return Err(err("x does not match N_F(y) order"));
                }
                row.push(c.parse::<u8>().map_err(|_| err("bad label"))?);
            }
            labels.push(row);
        }
        let p = BlockPartition::from_labels(s, seed, labels)?;
        p.check_matches(f)?;
        Ok(p)
    }
}
