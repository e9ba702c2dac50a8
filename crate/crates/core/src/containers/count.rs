use super::family::ContainerFamily;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `C(n, k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountBound {
    pub t: usize,
    pub threshold: usize,
    pub containers: usize,
    /// `Σ_C C(min(|C|, threshold), t)`.
    pub bound: BigUint,
    /// `|family| · C(threshold, t)`.
    pub coarse: BigUint,
    pub bound_log2: f64,
    /// `t · log₂ q / (s − 1)`, the log of `(q^{1/(s−1)})^t`.
    pub target_log2: Option<f64>,
}

/// Upper bound on the number of `K_s`-free `t`-sets: each lies in some
/// container, so it suffices to add up the `t`-subsets of each.
pub fn count_ksfree_bound(family: &ContainerFamily, t: i64) -> Result<CountBound> {
    if t < 0 {
        return Err(Error::InvalidParameter(format!("t must be non-negative, got {t}")));
    }
    let t = t as usize;
    let threshold = family.threshold.unwrap_or_else(|| family.max_container());
    if family.abort.is_some() || family.max_container() > threshold {
        return Err(Error::InvalidInput("family did not terminate below its threshold".into()));
    }
    let bound = family.containers().map(|c| binomial(c.len().min(threshold), t)).sum::<BigUint>();
    let coarse = BigUint::from(family.len()) * binomial(threshold, t);
    let target_log2 = family.q.map(|q| t as f64 * (q as f64).log2() / (family.s as f64 - 1.0));
    Ok(CountBound {
        t,
        threshold,
        containers: family.len(),
        bound_log2: log2_big(&bound),
        bound,
        coarse,
        target_log2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containers::family::{FamilyEntry, Origin};
    use crate::containers::scythe::ContainerParams;

    fn family(sizes: &[usize], threshold: usize) -> ContainerFamily {
        let entries = sizes
            .iter()
            .map(|&k| FamilyEntry { fingerprint: vec![], container: (0..k).collect(), origin: 0, size_bound: k })
            .collect();
        let origin = Origin {
            depth: 0,
            parent: None,
            u_size: 10,
            gamma: None,
            edges: 0,
            params: ContainerParams::integral(2, 10, 1, 1).unwrap(),
            containers: sizes.len(),
        };
        let mut f = ContainerFamily::single(2, origin, entries, vec![]);
        f.threshold = Some(threshold);
        f
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn single_container_of_ten() {
        let b = count_ksfree_bound(&family(&[10], 10), 3).unwrap();
        assert_eq!(b.bound, BigUint::from(120u32));
        assert_eq!(b.coarse, BigUint::from(120u32));
        assert!((b.bound_log2 - 120f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn large_t_gives_zero_not_error() {
        let b = count_ksfree_bound(&family(&[4, 5], 5), 7).unwrap();
        assert!(b.bound.is_zero());
    }

    #[test]
    fn negative_t_and_oversized_families_are_rejected() {
        assert!(count_ksfree_bound(&family(&[4], 5), -1).is_err());
        assert!(count_ksfree_bound(&family(&[6], 5), 2).is_err());
    }
}
