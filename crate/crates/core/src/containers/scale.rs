use super::hypergraph::UniformHypergraph;
use crate::blocks::BlockGraph;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BucketStat {
    pub index: u32,
    pub members: usize,
    pub mass: u64,
}

/// Dyadic scale for a vertex set `U ⊆ X` and the `y` whose blocks meet `U`
/// in balanced parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleSelection {
    pub u: Vec<usize>,
    pub q: u64,
    pub s: usize,
    /// `e_F(U, Y)`.
    pub incidences: u64,
    pub bucket: u32,
    /// `γ = gamma_num / gamma_den`.
    pub gamma_num: u128,
    pub gamma_den: u128,
    pub gamma: f64,
    pub buckets: Vec<BucketStat>,
    /// Largest bucket index reachable in the proof, `⌊2 log₂ q⌋`.
    pub max_bucket: u32,
    pub good_y: Vec<usize>,
    /// `|U| q / (8 log₂ q · γ)`.
    pub target: f64,
    pub meets_target: bool,
    /// `γ ≥ |U| / q²`.
    pub gamma_floor_ok: bool,
}

impl ScaleSelection {
    pub fn margin(&self) -> f64 {
        self.good_y.len() as f64 - self.target
    }
}

fn membership(n: usize, u: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &x in u {
        if x >= n {
            return Err(Error::InvalidInput(format!("vertex {x} not in X (|X| = {n})")));
        }
        m[x] = true;
    }
    Ok(m)
}

/// Buckets `Y₀ = {y : d ≤ ē}` and `Y_i = {y : 2^{i-1}ē < d ≤ 2^i ē}` where
/// `d = |N_F(y) ∩ U|` and `ē = e_F(U,Y)/(2|Y|)`; picks the heaviest bucket
/// with `i ≥ 1` (ties to the smaller index) and filters balanced `y`.
pub fn select_scale(h: &BlockGraph, u: &[usize]) -> Result<ScaleSelection> {
    let f = &h.incidence;
    let s = h.s;
    let q = h.q();
    let mut u: Vec<usize> = u.to_vec();
    u.sort_unstable();
    u.dedup();
    if u.is_empty() {
        return Err(Error::Degenerate("U is empty".into()));
    }
    let inside = membership(f.x_count(), &u)?;
    let y_count = f.y_count();
    let part_sizes: Vec<Vec<u64>> = (0..y_count)
        .into_par_iter()
        .map(|y| {
            let mut sizes = vec![0u64; s];
            for (&x, &c) in f.y_neighbors(y).iter().zip(&h.partition.labels[y]) {
                if inside[x as usize] {
                    sizes[c as usize] += 1;
                }
            }
            sizes
        })
        .collect();
    let degrees: Vec<u64> = part_sizes.iter().map(|p| p.iter().sum()).collect();
    let e: u64 = degrees.iter().sum();
    if e == 0 {
        return Err(Error::Degenerate("U has no F-neighbours".into()));
    }
    let two_y = 2 * y_count as u128;
    let e128 = e as u128;
    let bucket_of = |d: u64| -> u32 {
        let mut i = 0;
        while two_y * d as u128 > (e128 << i) {
            i += 1;
        }
        i
    };
    let mut buckets: Vec<BucketStat> = Vec::new();
    let idx: Vec<u32> = degrees.iter().map(|&d| bucket_of(d)).collect();
    for (&i, &d) in idx.iter().zip(&degrees) {
        while buckets.len() <= i as usize {
            buckets.push(BucketStat { index: buckets.len() as u32, members: 0, mass: 0 });
        }
        buckets[i as usize].members += 1;
        buckets[i as usize].mass += d;
    }
    let best = buckets
        .iter()
        .skip(1)
        .filter(|b| b.mass > 0)
        .max_by(|a, b| a.mass.cmp(&b.mass).then(b.index.cmp(&a.index)))
        .ok_or_else(|| Error::Degenerate("no bucket with positive mass".into()))?
        .index;
    let gamma_num = e128 << best;
    let gamma_den = two_y;
    let gamma = gamma_num as f64 / gamma_den as f64;
    let lo = 10 * s as u128 * gamma_den;
    let good_y: Vec<usize> = (0..y_count)
        .filter(|&y| {
            part_sizes[y].iter().all(|&a| {
                let a = a as u128;
                a * lo >= gamma_num && a * gamma_den <= gamma_num
            })
        })
        .collect();
    let log_q = (q as f64).log2();
    let target = u.len() as f64 * q as f64 / (8.0 * log_q * gamma);
    let gamma_floor_ok = gamma_num * (q as u128 * q as u128) >= u.len() as u128 * gamma_den;
    Ok(ScaleSelection {
        q,
        s,
        incidences: e,
        bucket: best,
        gamma_num,
        gamma_den,
        gamma,
        buckets,
        max_bucket: (2.0 * log_q).floor() as u32,
        meets_target: good_y.len() as f64 >= target,
        good_y,
        target,
        gamma_floor_ok,
        u,
    })
}

/// All `s`-sets of `U` with one vertex in each part `A_i(y) ∩ U` of some
/// good `y`, on local ids with `ground = U`.
pub fn build_scaled_subhypergraph(h: &BlockGraph, scale: &ScaleSelection) -> UniformHypergraph {
    let u = &scale.u;
    let local = |x: u32| u.binary_search(&(x as usize)).ok().map(|i| i as u32);
    let mut edges: Vec<Vec<u32>> = scale
        .good_y
        .par_iter()
        .flat_map_iter(|&y| {
            let parts: Vec<Vec<u32>> =
                h.parts(y).into_iter().map(|p| p.into_iter().filter_map(local).collect()).collect();
            let mut out: Vec<Vec<u32>> = vec![Vec::new()];
            for part in &parts {
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        part.iter().map(move |&x| {
                            let mut e = prefix.clone();
                            e.push(x);
                            e
                        })
                    })
                    .collect();
            }
            out.into_iter().map(|mut e| {
                e.sort_unstable();
                e
            })
        })
        .collect();
    edges.par_sort_unstable();
    edges.dedup();
    UniformHypergraph { s: h.s, n: u.len(), edges, ground: u.clone() }
}
