//! Exact checks of the four structural properties of `F`.

use super::incidence::BipartiteIncidence;
use super::unital::{check_degrees, expected_x_count, expected_y_count};
use crate::graph::BitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// Limits for the O'Nan configuration search. A node is one examined
/// quadruple (exhaustive mode) or one examined triple (pruned mode).
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(n: u64) -> Self {
        SearchBudget { max_nodes: Some(n), max_time: None }
    }

    pub fn time(d: Duration) -> Self {
        SearchBudget { max_nodes: None, max_time: Some(d) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OnanStatus {
    Verified,
    BudgetExhausted,
    Violated,
    /// The pruned search relies on unique meets; not run when `F` has a `C4`.
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OnanMethod {
    Exhaustive,
    Pruned,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnanOutcome {
    pub status: OnanStatus,
    pub method: OnanMethod,
    pub nodes: u64,
    /// Lexicographically least configuration found: four `X`-vertices and the
    /// six `Y`-vertices for pairs (01, 02, 03, 12, 13, 23).
    pub witness: Option<([usize; 4], [usize; 6])>,
}

/// Flat key/value verification report for `F`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub q: u32,
    pub x_count: usize,
    pub y_count: usize,
    pub sizes_ok: bool,
    pub degrees_ok: bool,
    pub degree_detail: Option<String>,
    pub c4_free: bool,
    pub c4_free_dual: bool,
    pub onan_free: bool,
    pub onan_status: OnanStatus,
    pub onan_method: OnanMethod,
    pub onan_nodes: u64,
    pub onan_witness: Option<String>,
    pub all_pass: bool,
}

/// Runs all four checks. Corrupted inputs produce a failing report rather
/// than an error.
pub fn verify_unital(q: u32, f: &BipartiteIncidence, budget: SearchBudget) -> VerificationReport {
    let sizes_ok = f.x_count() as u64 == expected_x_count(q as u64)
        && f.y_count() as u64 == expected_y_count(q as u64);
    let degrees = check_degrees(q as usize, f);
    let degrees_ok = degrees.is_ok();
    let c4_free = first_c4_x_side(f).is_none();
    let c4_free_dual = first_c4_y_side(f).is_none();
    let onan = if q <= 3 {
        onan_exhaustive(f, budget)
    } else if c4_free {
        onan_pruned(f, budget)
    } else {
        OnanOutcome { status: OnanStatus::Skipped, method: OnanMethod::Pruned, nodes: 0, witness: None }
    };
    let onan_free = onan.status == OnanStatus::Verified;
    let budget_ok = onan.status == OnanStatus::BudgetExhausted;
    VerificationReport {
        q,
        x_count: f.x_count(),
        y_count: f.y_count(),
        sizes_ok,
        degrees_ok,
        degree_detail: degrees.err(),
        c4_free,
        c4_free_dual,
        onan_free,
        onan_status: onan.status,
        onan_method: onan.method,
        onan_nodes: onan.nodes,
        onan_witness: onan.witness.map(|(xs, ys)| format!("x={xs:?} y={ys:?}")),
        all_pass: sizes_ok && degrees_ok && c4_free && c4_free_dual && (onan_free || budget_ok),
    }
}

/// First pair of `X`-vertices sharing two `Y`-neighbours, if any.
pub fn first_c4_x_side(f: &BipartiteIncidence) -> Option<(usize, usize)> {
    let n = f.x_count();
    (0..n).into_par_iter().find_map_first(|a| {
        let mut count = vec![0u32; n];
        for &y in f.x_neighbors(a) {
            for &b in f.y_neighbors(y as usize) {
                let b = b as usize;
                if b > a {
                    count[b] += 1;
                    if count[b] > 1 {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    })
}

/// First pair of `Y`-vertices sharing two `X`-neighbours, if any.
pub fn first_c4_y_side(f: &BipartiteIncidence) -> Option<(usize, usize)> {
    let n = f.y_count();
    (0..n).into_par_iter().find_map_first(|a| {
        let mut count = vec![0u32; n];
        for &x in f.y_neighbors(a) {
            for &b in f.x_neighbors(x as usize) {
                let b = b as usize;
                if b > a {
                    count[b] += 1;
                    if count[b] > 1 {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    })
}

struct Limits {
    budget: SearchBudget,
    start: Instant,
    nodes: AtomicU64,
    stop: AtomicBool,
}

impl Limits {
    fn new(budget: SearchBudget) -> Self {
        Limits { budget, start: Instant::now(), nodes: AtomicU64::new(0), stop: AtomicBool::new(false) }
    }

    /// Charges `n` nodes; returns false once the budget is gone.
    fn charge(&self, n: u64) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let total = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| total > m);
        let over_time = self.budget.max_time.is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Picks six distinct representatives for the pair-meet sets of a
/// quadruple, if possible.
fn distinct_meets(meets: &[Vec<u32>; 6]) -> Option<[usize; 6]> {
    fn go(meets: &[Vec<u32>; 6], k: usize, chosen: &mut [usize; 6]) -> bool {
        if k == 6 {
            return true;
        }
        for &y in &meets[k] {
            if !chosen[..k].contains(&(y as usize)) {
                chosen[k] = y as usize;
                if go(meets, k + 1, chosen) {
                    return true;
                }
            }
        }
        false
    }
    let mut chosen = [0usize; 6];
    go(meets, 0, &mut chosen).then_some(chosen)
}

/// Checks every quadruple of `X`-vertices.
pub fn onan_exhaustive(f: &BipartiteIncidence, budget: SearchBudget) -> OnanOutcome {
    let n = f.x_count();
    let limits = Limits::new(budget);
    let found: Vec<Option<([usize; 4], [usize; 6])>> = (0..n)
        .into_par_iter()
        .map(|a| {
            for b in a + 1..n {
                let ab = f.common_y(a, b);
                if ab.is_empty() {
                    if !limits.charge(((n - b - 1) * (n - b).saturating_sub(2) / 2) as u64) {
                        return None;
                    }
                    continue;
                }
                for c in b + 1..n {
                    let (ac, bc) = (f.common_y(a, c), f.common_y(b, c));
                    for d in c + 1..n {
                        if !limits.charge(1) {
                            return None;
                        }
                        if ac.is_empty() || bc.is_empty() {
                            continue;
                        }
                        let meets = [ab.clone(), ac.clone(), f.common_y(a, d), bc.clone(), f.common_y(b, d), f.common_y(c, d)];
                        if let Some(ys) = distinct_meets(&meets) {
                            return Some(([a, b, c, d], ys));
                        }
                    }
                }
            }
            None
        })
        .collect();
    finish(found, &limits, OnanMethod::Exhaustive)
}

fn finish(found: Vec<Option<([usize; 4], [usize; 6])>>, limits: &Limits, method: OnanMethod) -> OnanOutcome {
    let witness = found.into_iter().flatten().min();
    let nodes = limits.nodes.load(Ordering::Relaxed);
    let status = match (&witness, limits.stop.load(Ordering::Relaxed)) {
        (Some(_), _) => OnanStatus::Violated,
        (None, true) => OnanStatus::BudgetExhausted,
        (None, false) => OnanStatus::Verified,
    };
    OnanOutcome { status, method, nodes, witness }
}

/// Triangle-extension search; requires `F` to be `C4`-free so that any two
/// `X`-vertices meet in at most one `Y`-vertex.
pub fn onan_pruned(f: &BipartiteIncidence, budget: SearchBudget) -> OnanOutcome {
    let n = f.x_count();
    // meet[a] = X-vertices sharing a Y-neighbour with a
    let meet: Vec<BitSet> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = BitSet::new(n);
            for &y in f.x_neighbors(a) {
                row.union_with(f.y_row(y as usize));
            }
            row.remove(a);
            row
        })
        .collect();
    let meet_of = |a: usize, b: usize| f.common_y(a, b)[0] as usize;
    let limits = Limits::new(budget);

    let found: Vec<Option<([usize; 4], [usize; 6])>> = (0..n)
        .into_par_iter()
        .map(|x1| {
            let mut m1 = meet[x1].clone();
            m1.retain_from(x1 + 1);
            for x2 in m1.iter() {
                let y12 = meet_of(x1, x2);
                let mut base = m1.clone();
                base.intersect_with(&meet[x2]);
                base.difference_with(f.y_row(y12));
                base.retain_from(x2 + 1);
                for x3 in base.iter() {
                    if !limits.charge(1) {
                        return None;
                    }
                    let (y13, y23) = (meet_of(x1, x3), meet_of(x2, x3));
                    let mut cand = base.clone();
                    cand.retain_from(x3 + 1);
                    cand.intersect_with(&meet[x3]);
                    cand.difference_with(f.y_row(y13));
                    cand.difference_with(f.y_row(y23));
                    if let Some(x4) = cand.first() {
                        let ys = [y12, y13, meet_of(x1, x4), y23, meet_of(x2, x4), meet_of(x3, x4)];
                        return Some(([x1, x2, x3, x4], ys));
                    }
                }
            }
            None
        })
        .collect();
    finish(found, &limits, OnanMethod::Pruned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::build_field;
    use crate::geometry::unital::build_incidence;

    fn planted() -> BipartiteIncidence {
        // four lines pairwise meeting in six distinct points
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut lists = vec![Vec::new(); 4];
        for (y, &(a, b)) in pairs.iter().enumerate() {
            lists[a].push(y as u32);
            lists[b].push(y as u32);
        }
        BipartiteIncidence::from_x_lists(6, lists).unwrap()
    }

    #[test]
    fn q2_passes_everything() {
        let f = build_incidence(&build_field(2).unwrap()).unwrap();
        let r = verify_unital(2, &f.incidence, SearchBudget::unlimited());
        assert!(r.all_pass, "{r:?}");
        assert_eq!(r.onan_method, OnanMethod::Exhaustive);
        assert_eq!(r.onan_nodes, 495);
    }

    #[test]
    fn planted_configuration_is_found_by_both_searches() {
        let f = planted();
        let a = onan_exhaustive(&f, SearchBudget::unlimited());
        let b = onan_pruned(&f, SearchBudget::unlimited());
        assert_eq!(a.status, OnanStatus::Violated);
        assert_eq!(b.status, OnanStatus::Violated);
        assert_eq!(a.witness.unwrap().0, [0, 1, 2, 3]);
        assert_eq!(b.witness, Some(([0, 1, 2, 3], [0, 1, 2, 3, 4, 5])));
    }

    #[test]
    fn deleted_edge_fails_degrees() {
        let f = build_incidence(&build_field(2).unwrap()).unwrap();
        let bad = f.incidence.without_edge(0, f.incidence.x_neighbors(0)[0] as usize).unwrap();
        let r = verify_unital(2, &bad, SearchBudget::unlimited());
        assert!(!r.degrees_ok);
        assert!(!r.all_pass);
        assert!(r.degree_detail.unwrap().contains("x=0"));
    }

    #[test]
    fn pruned_budget_is_flagged() {
        let f = build_incidence(&build_field(5).unwrap()).unwrap();
        let r = onan_pruned(&f.incidence, SearchBudget::nodes(10));
        assert_eq!(r.status, OnanStatus::BudgetExhausted);
    }

    #[test]
    fn extra_edge_creates_c4() {
        let f = build_incidence(&build_field(2).unwrap()).unwrap();
        // x=0 and any line meeting it at y share y; add a second common point
        let y0 = f.incidence.x_neighbors(0)[0] as usize;
        let other = f.incidence.y_neighbors(y0).iter().map(|&x| x as usize).find(|&x| x != 0).unwrap();
        let y_new = (0..9).find(|&y| !f.incidence.has_edge(0, y) && f.incidence.has_edge(other, y)).unwrap();
        let bad = f.incidence.with_edge(0, y_new).unwrap();
        assert!(first_c4_x_side(&bad).is_some());
        assert!(first_c4_y_side(&bad).is_some());
    }
}
