//! Points and lines of `PG(2, q²)` in canonical homogeneous coordinates.

use super::field::{Elem, FieldCtx};
use serde::{Deserialize, Serialize};

pub type Triple = [Elem; 3];

/// Scales `t` so that its first nonzero coordinate is `1`.
pub fn normalize(ctx: &FieldCtx, t: Triple) -> Option<Triple> {
    let lead = t.iter().copied().find(|&c| c != 0)?;
    let inv = ctx.inv(lead)?;
    Some([ctx.mul(t[0], inv), ctx.mul(t[1], inv), ctx.mul(t[2], inv)])
}

/// Every canonical triple, in lexicographic order.
pub fn canonical_triples(ctx: &FieldCtx) -> Vec<Triple> {
    let n = ctx.order();
    let mut out = Vec::with_capacity((n * n + n + 1) as usize);
    out.push([0, 0, 1]);
    for z in 0..n {
        out.push([0, 1, z]);
    }
    for y in 0..n {
        for z in 0..n {
            out.push([1, y, z]);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjPoint(pub Triple);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjLine(pub Triple);

impl ProjPoint {
    pub fn new(ctx: &FieldCtx, t: Triple) -> Option<Self> {
        normalize(ctx, t).map(ProjPoint)
    }
}

impl ProjLine {
    pub fn new(ctx: &FieldCtx, t: Triple) -> Option<Self> {
        normalize(ctx, t).map(ProjLine)
    }

    /// The line through two distinct points.
    pub fn through(ctx: &FieldCtx, a: ProjPoint, b: ProjPoint) -> Option<Self> {
        let [a0, a1, a2] = a.0;
        let [b0, b1, b2] = b.0;
        let cross = [
            ctx.sub(ctx.mul(a1, b2), ctx.mul(a2, b1)),
            ctx.sub(ctx.mul(a2, b0), ctx.mul(a0, b2)),
            ctx.sub(ctx.mul(a0, b1), ctx.mul(a1, b0)),
        ];
        Self::new(ctx, cross)
    }
}

#[inline]
pub fn dot(ctx: &FieldCtx, a: &Triple, b: &Triple) -> Elem {
    ctx.add(ctx.add(ctx.mul(a[0], b[0]), ctx.mul(a[1], b[1])), ctx.mul(a[2], b[2]))
}

pub fn incident(ctx: &FieldCtx, p: &ProjPoint, l: &ProjLine) -> bool {
    dot(ctx, &p.0, &l.0) == 0
}
