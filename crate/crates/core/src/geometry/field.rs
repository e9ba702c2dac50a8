//! Prime fields `GF(q)` and their quadratic extensions `GF(q²)`.
//!
//! An element of `GF(q²)` is the pair `a + b·ω` with `a, b ∈ GF(q)`, packed
//! into the integer `a + b·q`. The base field sits inside as the elements with
//! `b = 0`, so `0` and `1` keep their usual encodings.

use crate::{Error, Result};

/// Packed element of `GF(q²)`.
pub type Elem = u32;

pub const DEFAULT_MAX_ORDER: u64 = 37;

/// Minimal polynomial of `ω` over `GF(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// `ω² = ω + 1` (only used for `q = 2`).
    XSquaredPlusXPlusOne,
    /// `ω² = n` with `n` the smallest quadratic non-residue mod `q`.
    XSquaredMinus(u32),
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    q: u32,
    reduction: Reduction,
    /// `exp[i] = g^i` for a fixed primitive element `g` of `GF(q²)`.
    exp: Vec<Elem>,
    /// Discrete log base `g`; `log[0]` is unused.
    log: Vec<u32>,
    base_inv: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn build_field(q: u64) -> Result<FieldCtx> {
    build_field_with_ceiling(q, DEFAULT_MAX_ORDER)
}

pub fn build_field_with_ceiling(q: u64, ceiling: u64) -> Result<FieldCtx> {
    // q² must fit the packed encoding with room for the exp table.
    let ceiling = ceiling.min(251);
    if !is_prime(q) || q > ceiling {
        return Err(Error::UnsupportedOrder(q, ceiling));
    }
    let q = q as u32;
    let reduction = if q == 2 {
        Reduction::XSquaredPlusXPlusOne
    } else {
        let n = (2..q)
            .find(|&n| pow_mod(n as u64, ((q - 1) / 2) as u64, q as u64) == (q - 1) as u64)
            .expect("odd prime has a non-residue");
        Reduction::XSquaredMinus(n)
    };

    let mut base_inv = vec![0u32; q as usize];
    for a in 1..q {
        base_inv[a as usize] = pow_mod(a as u64, (q - 2) as u64, q as u64) as u32;
    }

    let order = q * q;
    let group = order - 1;
    let slow = |a: Elem, b: Elem| slow_mul(q, reduction, a, b);
    let generator = (2..order)
        .find(|&g| {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = slow(x, g);
                k += 1;
            }
            k == group
        })
        .ok_or_else(|| Error::InvalidParameter("no primitive element".into()))?;

    let mut exp = Vec::with_capacity(group as usize);
    let mut log = vec![0u32; order as usize];
    let mut x: Elem = 1;
    for i in 0..group {
        exp.push(x);
        log[x as usize] = i;
        x = slow(x, generator);
    }
    debug_assert_eq!(x, 1);

    Ok(FieldCtx { q, reduction, exp, log, base_inv })
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn slow_mul(q: u32, reduction: Reduction, a: Elem, b: Elem) -> Elem {
    let (a0, a1) = (a % q, a / q);
    let (b0, b1) = (b % q, b / q);
    let hi = a1 * b1 % q;
    let (c0, c1) = match reduction {
        Reduction::XSquaredPlusXPlusOne => ((a0 * b0 + hi) % q, (a0 * b1 + a1 * b0 + hi) % q),
        Reduction::XSquaredMinus(n) => ((a0 * b0 + n * hi) % q, (a0 * b1 + a1 * b0) % q),
    };
    c0 + q * c1
}

impl FieldCtx {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn reduction(&self) -> Reduction {
        self.reduction
    }

    /// Number of elements of `GF(q²)`.
    pub fn order(&self) -> u32 {
        self.q * self.q
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// The adjoined root `ω`.
    pub fn omega(&self) -> Elem {
        self.q
    }

    pub fn from_parts(&self, a: u32, b: u32) -> Elem {
        (a % self.q) + self.q * (b % self.q)
    }

    pub fn parts(&self, x: Elem) -> (u32, u32) {
        (x % self.q, x / self.q)
    }

    /// Returns the base-field value if `x ∈ GF(q)`.
    pub fn base_value(&self, x: Elem) -> Option<u32> {
        (x < self.q).then_some(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let q = self.q;
        (a % q + b % q) % q + q * ((a / q + b / q) % q)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let q = self.q;
        (q - a % q) % q + q * ((q - a / q) % q)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let group = self.exp.len();
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % group]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let group = self.exp.len() as u32;
        Some(self.exp[((group - self.log[a as usize]) % group) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = self.exp.len() as u64;
        self.exp[((self.log[a as usize] as u64 * (e % group)) % group) as usize]
    }

    /// Frobenius conjugate `a^q`.
    pub fn conj(&self, a: Elem) -> Elem {
        self.pow(a, self.q as u64)
    }

    /// `a^{q+1}`, which always lies in the base field.
    pub fn hermitian_norm(&self, a: Elem) -> u32 {
        let n = self.pow(a, self.q as u64 + 1);
        self.base_value(n).expect("norm lies in the base field")
    }

    pub fn base_inv(&self, a: u32) -> Option<u32> {
        (a % self.q != 0).then(|| self.base_inv[(a % self.q) as usize])
    }
}

/// `a^{q+1}` for `a ∈ GF(q²)`, as an element of `GF(q)`.
pub fn hermitian_norm(a: Elem, ctx: &FieldCtx) -> u32 {
    ctx.hermitian_norm(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(ctx: &FieldCtx) {
        let els: Vec<Elem> = ctx.elements().collect();
        for &a in &els {
            assert_eq!(ctx.add(a, 0), a);
            assert_eq!(ctx.mul(a, 1), a);
            assert_eq!(ctx.add(a, ctx.neg(a)), 0);
            if a != 0 {
                assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), 1);
            }
            for &b in &els {
                assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                assert_eq!(ctx.mul(a, b), slow_mul(ctx.q, ctx.reduction, a, b));
                for &c in &els {
                    assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
                    assert_eq!(ctx.mul(a, ctx.mul(b, c)), ctx.mul(ctx.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn gf4_table() {
        let ctx = build_field(2).unwrap();
        assert_eq!(ctx.reduction(), Reduction::XSquaredPlusXPlusOne);
        let w = ctx.omega();
        let w1 = ctx.add(w, 1);
        assert_eq!(ctx.mul(w, w), w1);
        assert_eq!(ctx.mul(1, w), w);
        // 0, 1, w, w+1
        let expected = [[0, 0, 0, 0], [0, 1, w, w1], [0, w, w1, 1], [0, w1, 1, w]];
        let order = [0, 1, w, w1];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                assert_eq!(ctx.mul(a, b), expected[i][j]);
            }
        }
        check_axioms(&ctx);
    }

    #[test]
    fn small_odd_fields_satisfy_axioms() {
        for q in [3, 5] {
            let ctx = build_field(q).unwrap();
            assert_eq!(ctx.order() as u64, q * q);
            check_axioms(&ctx);
        }
        assert_eq!(build_field(3).unwrap().reduction(), Reduction::XSquaredMinus(2));
        assert_eq!(build_field(7).unwrap().reduction(), Reduction::XSquaredMinus(3));
    }

    #[test]
    fn rejects_prime_powers_and_composites() {
        for q in [0, 1, 4, 8, 9, 25, 41] {
            assert!(matches!(build_field(q), Err(Error::UnsupportedOrder(..))), "q={q}");
        }
        assert!(build_field_with_ceiling(41, 50).is_ok());
    }

    #[test]
    fn norm_values() {
        let ctx = build_field(2).unwrap();
        // w^3 = 1
        assert_eq!(ctx.mul(ctx.mul(ctx.omega(), ctx.omega()), ctx.omega()), 1);
        assert_eq!(hermitian_norm(ctx.omega(), &ctx), 1);
        for q in [2, 3, 5, 7, 11] {
            let ctx = build_field(q).unwrap();
            assert_eq!(ctx.hermitian_norm(0), 0);
            assert_eq!(ctx.hermitian_norm(1), 1);
            for a in ctx.elements() {
                // multiplicativity and conjugate form
                assert_eq!(ctx.pow(a, q + 1), ctx.mul(a, ctx.conj(a)));
                ctx.hermitian_norm(a);
            }
        }
    }
}
