//! The Hermitian unital, its secant lines, and the incidence graph `F`.

use super::field::FieldCtx;
use super::incidence::BipartiteIncidence;
use super::plane::{canonical_triples, dot, ProjLine, ProjPoint};
use crate::{Error, Result};
use rayon::prelude::*;
use std::fmt::Write as _;

/// Points `[x:y:z]` with `x^{q+1} + y^{q+1} + z^{q+1} = 0`, sorted.
pub fn hermitian_points(ctx: &FieldCtx) -> Vec<ProjPoint> {
    let q = ctx.q();
    canonical_triples(ctx)
        .into_iter()
        .filter(|t| t.iter().map(|&c| ctx.hermitian_norm(c)).sum::<u32>() % q == 0)
        .map(ProjPoint)
        .collect()
}

/// Lines of `PG(2, q²)` split by how they meet the unital.
#[derive(Clone, Debug)]
pub struct LineClassification {
    pub secants: Vec<ProjLine>,
    /// Indices into the point list for each secant, ascending.
    pub secant_points: Vec<Vec<u32>>,
    pub tangents: Vec<ProjLine>,
}

/// Classifies every line against `points`; fails if some line meets the set
/// in a number of points other than `1` or `q + 1`.
pub fn secant_lines(ctx: &FieldCtx, points: &[ProjPoint]) -> Result<LineClassification> {
    let q = ctx.q() as usize;
    let lines = canonical_triples(ctx);
    let hits: Vec<Vec<u32>> = lines
        .par_iter()
        .map(|l| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(ctx, &p.0, l) == 0)
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    let mut out = LineClassification { secants: Vec::new(), secant_points: Vec::new(), tangents: Vec::new() };
    for (l, on) in lines.into_iter().zip(hits) {
        match on.len() {
            1 => out.tangents.push(ProjLine(l)),
            k if k == q + 1 => {
                out.secants.push(ProjLine(l));
                out.secant_points.push(on);
            }
            k => {
                return Err(Error::NotAUnital(format!("line {l:?} meets the point set in {k} points")));
            }
        }
    }
    Ok(out)
}

/// The incidence graph `F`: `X` = secant lines, `Y` = unital points.
#[derive(Clone, Debug)]
pub struct UnitalIncidence {
    pub q: u32,
    pub lines: Vec<ProjLine>,
    pub points: Vec<ProjPoint>,
    pub incidence: BipartiteIncidence,
}

pub fn expected_x_count(q: u64) -> u64 {
    q.pow(4) - q.pow(3) + q * q
}

pub fn expected_y_count(q: u64) -> u64 {
    q.pow(3) + 1
}

pub fn build_incidence(ctx: &FieldCtx) -> Result<UnitalIncidence> {
    let q = ctx.q();
    let points = hermitian_points(ctx);
    let classes = secant_lines(ctx, &points)?;
    let incidence = BipartiteIncidence::from_x_lists(points.len(), classes.secant_points)?;
    check_degrees(q as usize, &incidence).map_err(Error::DegreeViolation)?;
    Ok(UnitalIncidence { q, lines: classes.secants, points, incidence })
}

/// `Ok` iff every `X`-degree is `q + 1` and every `Y`-degree is `q²`.
pub(crate) fn check_degrees(q: usize, f: &BipartiteIncidence) -> std::result::Result<(), String> {
    if let Some(x) = (0..f.x_count()).find(|&x| f.x_neighbors(x).len() != q + 1) {
        return Err(format!("x={x} has degree {} (expected {})", f.x_neighbors(x).len(), q + 1));
    }
    if let Some(y) = (0..f.y_count()).find(|&y| f.y_neighbors(y).len() != q * q) {
        return Err(format!("y={y} has degree {} (expected {})", f.y_neighbors(y).len(), q * q));
    }
    Ok(())
}

impl UnitalIncidence {
    pub fn x_count(&self) -> usize {
        self.incidence.x_count()
    }

    pub fn y_count(&self) -> usize {
        self.incidence.y_count()
    }

    pub fn to_text(&self) -> String {
        write_incidence_text(self.q, &self.incidence)
    }
}

/// `unital q=<q> X=<|X|> Y=<|Y|>` followed by `<x>: <y> <y> ...` lines.
pub fn write_incidence_text(q: u32, f: &BipartiteIncidence) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "unital q={} X={} Y={}", q, f.x_count(), f.y_count());
    for x in 0..f.x_count() {
        let _ = write!(s, "{x}:");
        for y in f.x_neighbors(x) {
            let _ = write!(s, " {y}");
        }
        s.push('\n');
    }
    s
}

pub fn parse_incidence_text(text: &str) -> Result<(u32, BipartiteIncidence)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let fields = super::super::harness::io::header_fields(header, "unital", 1)?;
    let get = |k: &str| {
        fields
            .iter()
            .find(|(key, _)| key == k)
            .map(|(_, v)| *v)
            .ok_or(Error::Parse { line: 1, msg: format!("missing {k}") })
    };
    let (q, xn, yn) = (get("q")?, get("X")?, get("Y")?);
    let mut lists = Vec::with_capacity(xn as usize);
    for (i, line) in lines {
        let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
        let (id, rest) = line.split_once(':').ok_or_else(|| err("expected '<x>:'"))?;
        let id: usize = id.trim().parse().map_err(|_| err("bad x id"))?;
        if id != lists.len() {
            return Err(err("x ids must be consecutive"));
        }
        let ys = rest
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| err("bad y id")))
            .collect::<Result<Vec<_>>>()?;
        lists.push(ys);
    }
    if lists.len() as u64 != xn {
        return Err(Error::Parse { line: 1, msg: format!("header says X={xn}, found {}", lists.len()) });
    }
    Ok((q as u32, BipartiteIncidence::from_x_lists(yn as usize, lists)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::build_field;
    use crate::geometry::plane::canonical_triples;

    #[test]
    fn point_counts() {
        assert_eq!(hermitian_points(&build_field(2).unwrap()).len(), 9);
        assert_eq!(hermitian_points(&build_field(3).unwrap()).len(), 28);
        assert_eq!(hermitian_points(&build_field(5).unwrap()).len(), 126);
    }

    #[test]
    fn point_011_on_curve_for_q2() {
        let ctx = build_field(2).unwrap();
        assert!(hermitian_points(&ctx).contains(&ProjPoint([0, 1, 1])));
    }

    #[test]
    fn q2_line_classification() {
        let ctx = build_field(2).unwrap();
        let pts = hermitian_points(&ctx);
        assert_eq!(canonical_triples(&ctx).len(), 21);
        let c = secant_lines(&ctx, &pts).unwrap();
        assert_eq!(c.secants.len(), 12);
        assert_eq!(c.tangents.len(), 9);
    }

    #[test]
    fn non_unital_point_set_is_rejected() {
        let ctx = build_field(2).unwrap();
        let mut pts = hermitian_points(&ctx);
        pts.pop();
        assert!(matches!(secant_lines(&ctx, &pts), Err(Error::NotAUnital(_))));
    }

    #[test]
    fn edge_counts() {
        let f2 = build_incidence(&build_field(2).unwrap()).unwrap();
        assert_eq!(f2.incidence.edge_count(), 36);
        assert!((0..9).all(|y| f2.incidence.y_neighbors(y).len() == 4));
        let f3 = build_incidence(&build_field(3).unwrap()).unwrap();
        assert_eq!(f3.incidence.edge_count(), 252);
    }

    #[test]
    fn rebuild_is_bit_exact_and_text_roundtrips() {
        let ctx = build_field(3).unwrap();
        let a = build_incidence(&ctx).unwrap();
        let b = build_incidence(&build_field(3).unwrap()).unwrap();
        assert_eq!(a.lines, b.lines);
        assert_eq!(a.points, b.points);
        assert_eq!(a.to_text(), b.to_text());
        let (q, parsed) = parse_incidence_text(&a.to_text()).unwrap();
        assert_eq!(q, 3);
        assert_eq!(parsed, a.incidence);
        assert!(a.to_text().starts_with("unital q=3 X=63 Y=28\n0: "));
    }
}
