use super::hypergraph::{delta_ell, UniformHypergraph};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// One row of the codegree test `Δ_ℓ ≤ (b/v)^{ℓ-1} · e / r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodegreeLine {
    pub ell: usize,
    pub delta: u64,
    /// Exact right-hand side as `num/den`.
    pub bound: String,
    pub bound_f64: f64,
    /// `bound - delta`; negative means the line fails.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodegreeCheck {
    pub b: u64,
    pub r: u64,
    pub lines: Vec<CodegreeLine>,
    pub pass: bool,
}

impl CodegreeCheck {
    pub fn first_failure(&self) -> Option<usize> {
        self.lines.iter().find(|l| !l.pass).map(|l| l.ell)
    }
}

/// Evaluates the codegree hypothesis of the container step for every
/// `ℓ ∈ [s]` in exact rational arithmetic.
pub fn check_codegree(hg: &UniformHypergraph, b: u64, r: u64) -> Result<CodegreeCheck> {
    if hg.edges.is_empty() {
        return Err(Error::EmptyHypergraph);
    }
    if b == 0 || r == 0 {
        return Err(Error::InvalidParameter(format!("b and r must be positive (b={b}, r={r})")));
    }
    let v = BigInt::from(hg.n);
    let e = BigInt::from(hg.edges.len());
    let mut lines = Vec::with_capacity(hg.s);
    for ell in 1..=hg.s {
        let delta = delta_ell(hg, ell)?;
        let k = (ell - 1) as u32;
        let bound = BigRational::new(BigInt::from(b).pow(k) * &e, v.pow(k) * BigInt::from(r));
        let d = BigRational::from_integer(BigInt::from(delta));
        let pass = d <= bound;
        let margin = (&bound - &d).to_f64().unwrap_or(f64::NAN);
        lines.push(CodegreeLine {
            ell,
            delta,
            bound: format!("{}/{}", bound.numer(), bound.denom()),
            bound_f64: bound.to_f64().unwrap_or(f64::NAN),
            margin,
            pass,
        });
    }
    let pass = lines.iter().all(|l| l.pass);
    Ok(CodegreeCheck { b, r, lines, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> UniformHypergraph {
        UniformHypergraph::new(2, 3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn triangle_b1_r1_passes_tightly() {
        let c = check_codegree(&triangle(), 1, 1).unwrap();
        assert!(c.pass);
        assert_eq!((c.lines[0].delta, c.lines[0].bound.as_str()), (2, "3/1"));
        assert_eq!((c.lines[1].delta, c.lines[1].bound.as_str()), (1, "1/1"));
        assert_eq!(c.lines[1].margin, 0.0);
    }

    #[test]
    fn triangle_r4_fails_at_ell_1() {
        let c = check_codegree(&triangle(), 1, 4).unwrap();
        assert!(!c.pass);
        assert_eq!(c.first_failure(), Some(1));
        assert_eq!(c.lines[0].bound, "3/4");
    }

    #[test]
    fn empty_is_rejected() {
        let hg = UniformHypergraph::new(2, 3, vec![]).unwrap();
        assert!(matches!(check_codegree(&hg, 1, 1), Err(Error::EmptyHypergraph)));
    }
}
