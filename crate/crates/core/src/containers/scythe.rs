use super::codegree::{check_codegree, CodegreeCheck};
use super::hypergraph::UniformHypergraph;
use crate::{Error, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default cap on the number of process states visited when enumerating a
/// family.
pub const DEFAULT_FAMILY_BUDGET: u64 = 1 << 20;

/// Integer parameters of one container step, with the rounding trail when
/// they came from real `(p, λ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainerParams {
    pub s: usize,
    pub v: usize,
    pub b: u64,
    pub r: u64,
    pub p: Option<f64>,
    pub lambda: Option<f64>,
    /// `b / v`, the ratio actually used.
    pub p_effective: f64,
    /// `v / r`, the ratio actually used.
    pub lambda_effective: f64,
    pub notes: Vec<String>,
}

impl ContainerParams {
    pub fn integral(s: usize, v: usize, b: u64, r: u64) -> Result<Self> {
        if b == 0 || r == 0 {
            return Err(Error::InvalidParameter(format!("b and r must be positive (b={b}, r={r})")));
        }
        Ok(ContainerParams {
            s,
            v,
            b,
            r,
            p: None,
            lambda: None,
            p_effective: b as f64 / v.max(1) as f64,
            lambda_effective: v as f64 / r as f64,
            notes: Vec::new(),
        })
    }

    /// `b = ⌈p·v⌉`, `r = ⌊v/λ⌋`, both clamped to at least 1.
    pub fn from_ratios(s: usize, v: usize, p: f64, lambda: f64) -> Result<Self> {
        if v < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 vertices, got {v}")));
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        let delta = delta_f64(s);
        if lambda < delta {
            return Err(Error::InvalidParameter(format!(
                "lambda = {lambda} is below delta = {delta}, so 1 - delta/lambda < 0"
            )));
        }
        let mut notes = Vec::new();
        let pv = p * v as f64;
        let mut b = (pv - 1e-9).ceil().max(0.0) as u64;
        if pv < 1.0 {
            notes.push(format!("p*v = {pv:.6} < 1; b rounded up to 1"));
        }
        if b == 0 {
            b = 1;
        }
        let ratio = v as f64 / lambda;
        let mut r = (ratio + 1e-9).floor() as u64;
        if r == 0 {
            notes.push(format!("v/lambda = {ratio:.6} < 1; r clamped to 1"));
            r = 1;
        }
        Ok(ContainerParams {
            s,
            v,
            b,
            r,
            p: Some(p),
            lambda: Some(lambda),
            p_effective: b as f64 / v as f64,
            lambda_effective: v as f64 / r as f64,
            notes,
        })
    }

    pub fn fingerprint_cap(&self) -> usize {
        self.s * self.b as usize
    }

    /// Largest container size allowed: `⌊v − δ·r⌋` with `δ = 2^{−s(s+1)}`.
    pub fn size_bound(&self) -> usize {
        let shift = (self.s * (self.s + 1)) as u32;
        let scale = BigUint::from(1u8) << shift;
        let total = BigUint::from(self.v) * &scale;
        let r = BigUint::from(self.r);
        if r > total {
            return 0;
        }
        let bound = (total - r) / scale;
        usize::try_from(bound).unwrap_or(usize::MAX)
    }
}

pub fn delta_f64(s: usize) -> f64 {
    (-((s * (s + 1)) as f64)).exp2()
}

#[derive(Clone, Debug)]
struct State {
    alive: Vec<bool>,
    fingerprint: Vec<usize>,
    residual: Vec<Vec<u32>>,
    live: Vec<bool>,
    live_count: usize,
}

/// Greedy fingerprint process on a fixed hypergraph. Repeatedly picks the
/// vertex with the most live residual edges (comparing counts of the
/// smallest residual size first, ties by id). A picked vertex in the
/// target set joins the fingerprint and shrinks its edges; any edge reduced
/// to one vertex deletes that vertex. A picked vertex outside the target is
/// deleted. Stops at `s·b` fingerprint vertices or when no edge is left.
pub struct ContainerStep<'a> {
    hg: &'a UniformHypergraph,
    params: ContainerParams,
    codegree: CodegreeCheck,
    vertex_edges: Vec<Vec<u32>>,
}

impl<'a> ContainerStep<'a> {
    /// Refuses to run unless the codegree condition holds.
    pub fn new(hg: &'a UniformHypergraph, params: ContainerParams) -> Result<Self> {
        let codegree = check_codegree(hg, params.b, params.r)?;
        if let Some(ell) = codegree.first_failure() {
            return Err(Error::CodegreeFailure(ell));
        }
        let mut vertex_edges = vec![Vec::new(); hg.n];
        for (i, e) in hg.edges.iter().enumerate() {
            for &v in e {
                vertex_edges[v as usize].push(i as u32);
            }
        }
        Ok(ContainerStep { hg, params, codegree, vertex_edges })
    }

    pub fn params(&self) -> &ContainerParams {
        &self.params
    }

    pub fn codegree(&self) -> &CodegreeCheck {
        &self.codegree
    }

    fn start(&self) -> State {
        State {
            alive: vec![true; self.hg.n],
            fingerprint: Vec::new(),
            residual: self.hg.edges.clone(),
            live: vec![true; self.hg.edges.len()],
            live_count: self.hg.edges.len(),
        }
    }

    fn next_vertex(&self, st: &State) -> Option<usize> {
        if st.live_count == 0 || st.fingerprint.len() >= self.params.fingerprint_cap() {
            return None;
        }
        let width = self.hg.s - 1;
        let mut counts = vec![0u32; self.hg.n * width];
        for (i, e) in st.residual.iter().enumerate() {
            if !st.live[i] {
                continue;
            }
            let slot = e.len() - 2;
            for &v in e {
                counts[v as usize * width + slot] += 1;
            }
        }
        let mut best: Option<usize> = None;
        for v in 0..self.hg.n {
            let key = &counts[v * width..(v + 1) * width];
            if !st.alive[v] || key.iter().all(|&c| c == 0) {
                continue;
            }
            match best {
                Some(b) if counts[b * width..(b + 1) * width] >= *key => {}
                _ => best = Some(v),
            }
        }
        best
    }

    fn delete(&self, st: &mut State, v: usize) {
        st.alive[v] = false;
        for &e in &self.vertex_edges[v] {
            if st.live[e as usize] {
                st.live[e as usize] = false;
                st.live_count -= 1;
            }
        }
    }

    fn apply(&self, st: &mut State, v: usize, take: bool) {
        if !take {
            self.delete(st, v);
            return;
        }
        st.alive[v] = false;
        st.fingerprint.push(v);
        for &e in &self.vertex_edges[v] {
            let e = e as usize;
            if !st.live[e] {
                continue;
            }
            st.residual[e].retain(|&w| w as usize != v);
            if st.residual[e].len() == 1 {
                let w = st.residual[e][0] as usize;
                st.live[e] = false;
                st.live_count -= 1;
                if st.alive[w] {
                    self.delete(st, w);
                }
            }
        }
    }

    fn container_of(st: &State) -> Vec<usize> {
        let mut c: Vec<usize> = st.alive.iter().enumerate().filter(|(_, &a)| a).map(|(v, _)| v).collect();
        c.extend_from_slice(&st.fingerprint);
        c.sort_unstable();
        c
    }

    fn run(&self, member: &[bool]) -> State {
        let mut st = self.start();
        while let Some(v) = self.next_vertex(&st) {
            self.apply(&mut st, v, member[v]);
        }
        st
    }

    fn membership(&self, set: &[usize]) -> Result<Vec<bool>> {
        let mut m = vec![false; self.hg.n];
        for &v in set {
            if v >= self.hg.n {
                return Err(Error::InvalidInput(format!("vertex {v} out of range 0..{}", self.hg.n)));
            }
            m[v] = true;
        }
        Ok(m)
    }

    /// Fingerprint `g(I)` of an independent set, sorted.
    pub fn fingerprint(&self, independent: &[usize]) -> Result<Vec<usize>> {
        let m = self.membership(independent)?;
        if !self.hg.is_independent(independent) {
            return Err(Error::InvalidInput("set contains an edge".into()));
        }
        let mut s = self.run(&m).fingerprint;
        s.sort_unstable();
        Ok(s)
    }

    /// Container `f(S)`; `S` must be a fingerprint the process reproduces.
    pub fn container(&self, fingerprint: &[usize]) -> Result<Vec<usize>> {
        let m = self.membership(fingerprint)?;
        let st = self.run(&m);
        let mut got = st.fingerprint.clone();
        got.sort_unstable();
        let mut want = fingerprint.to_vec();
        want.sort_unstable();
        want.dedup();
        if got != want {
            return Err(Error::InvalidInput(format!("{want:?} is not a fingerprint")));
        }
        Ok(Self::container_of(&st))
    }

    /// Every `(fingerprint, container)` pair reachable by the process,
    /// deduplicated by container (keeping the least fingerprint).
    pub fn enumerate(&self, budget: u64) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
        let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        let mut nodes = 0u64;
        let mut stack = vec![self.start()];
        while let Some(mut st) = stack.pop() {
            nodes += 1;
            if nodes > budget {
                return Err(Error::BudgetExhausted(format!("container search exceeds {budget} nodes")));
            }
            match self.next_vertex(&st) {
                None => {
                    let mut fp = st.fingerprint.clone();
                    fp.sort_unstable();
                    let c = Self::container_of(&st);
                    match out.get_mut(&c) {
                        Some(existing) if *existing <= fp => {}
                        Some(existing) => *existing = fp,
                        None => {
                            out.insert(c, fp);
                        }
                    }
                }
                Some(v) => {
                    let mut other = st.clone();
                    self.apply(&mut other, v, false);
                    self.apply(&mut st, v, true);
                    stack.push(other);
                    stack.push(st);
                }
            }
        }
        Ok(out.into_iter().map(|(c, fp)| (fp, c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn independent_sets(hg: &UniformHypergraph) -> Vec<Vec<usize>> {
        (0u32..1 << hg.n)
            .map(|m| (0..hg.n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|set| hg.is_independent(set))
            .collect()
    }

    fn covered(hg: &UniformHypergraph, step: &ContainerStep) -> bool {
        let family = step.enumerate(DEFAULT_FAMILY_BUDGET).unwrap();
        independent_sets(hg).iter().all(|i| {
            let fp = step.fingerprint(i).unwrap();
            let c = step.container(&fp).unwrap();
            fp.len() <= step.params().fingerprint_cap()
                && i.iter().all(|v| c.binary_search(v).is_ok())
                && family.iter().any(|(_, c)| i.iter().all(|v| c.binary_search(v).is_ok()))
        })
    }

    fn triangle() -> UniformHypergraph {
        UniformHypergraph::new(2, 3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn triangle_containers_have_at_most_two_vertices() {
        let hg = triangle();
        let step = ContainerStep::new(&hg, ContainerParams::integral(2, 3, 1, 1).unwrap()).unwrap();
        assert!(covered(&hg, &step));
        let family = step.enumerate(100).unwrap();
        assert!(family.iter().all(|(_, c)| c.len() <= 2));
        assert_eq!(step.params().size_bound(), 2);
    }

    #[test]
    fn single_edge_covers_all_six_independent_sets() {
        let hg = UniformHypergraph::new(2, 3, vec![vec![0, 1]]).unwrap();
        assert_eq!(independent_sets(&hg).len(), 6);
        let step = ContainerStep::new(&hg, ContainerParams::integral(2, 3, 3, 1).unwrap()).unwrap();
        assert!(covered(&hg, &step));
    }

    #[test]
    fn isolated_vertex_is_in_every_container() {
        let hg = UniformHypergraph::new(2, 4, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let step = ContainerStep::new(&hg, ContainerParams::integral(2, 4, 2, 1).unwrap()).unwrap();
        let family = step.enumerate(100).unwrap();
        assert!(family.iter().all(|(_, c)| c.contains(&3)));
    }

    #[test]
    fn refuses_when_codegree_fails() {
        let hg = triangle();
        let params = ContainerParams::integral(2, 3, 1, 4).unwrap();
        assert!(matches!(ContainerStep::new(&hg, params), Err(Error::CodegreeFailure(1))));
    }

    #[test]
    fn ratio_rounding() {
        let p = ContainerParams::from_ratios(2, 3, 1.0 / 3.0, 1.0).unwrap();
        assert_eq!((p.b, p.r), (1, 3));
        let small = ContainerParams::from_ratios(2, 10, 0.01, 2.0).unwrap();
        assert_eq!(small.b, 1);
        assert_eq!(small.notes.len(), 1);
        let clamp = ContainerParams::from_ratios(2, 10, 0.5, 50.0).unwrap();
        assert_eq!(clamp.r, 1);
        assert!(ContainerParams::from_ratios(2, 10, 0.5, 1e-3).is_err());
        assert!(ContainerParams::from_ratios(2, 1, 0.5, 1.0).is_err());
    }

    #[test]
    fn three_uniform_coverage() {
        let hg = UniformHypergraph::new(3, 6, vec![vec![0, 1, 2], vec![2, 3, 4], vec![1, 3, 5], vec![0, 4, 5]]).unwrap();
        let step = ContainerStep::new(&hg, ContainerParams::integral(3, 6, 3, 1).unwrap()).unwrap();
        assert!(covered(&hg, &step));
    }

    #[test]
    fn non_fingerprints_are_rejected() {
        let hg = triangle();
        let step = ContainerStep::new(&hg, ContainerParams::integral(2, 3, 1, 1).unwrap()).unwrap();
        assert!(step.container(&[2]).is_err());
        assert!(step.fingerprint(&[0, 1]).is_err());
    }
}
