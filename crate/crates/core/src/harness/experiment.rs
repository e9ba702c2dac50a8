use super::io::write_file;
use super::pipeline::{onan_budget, pipeline_theorem, target_exponent, verified_geometry, ExperimentRecord, PipelineConfig};
use crate::geometry::VerificationReport;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const CSV_HEADER: &str = "q,s,seed,n_H,e_H,p_keep,n_G0,alpha_method,alpha_value,exact,seconds";

/// Least-squares slope of `ln α` against `ln n` over per-`q` medians.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub s: usize,
    /// `(q, median n_G0, median α)`.
    pub medians: Vec<(u64, f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub target_exponent: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentOutcome {
    pub records: Vec<ExperimentRecord>,
    pub verifications: Vec<VerificationReport>,
    pub fit: Option<ScalingFit>,
    /// Why no fit was produced.
    pub fit_note: Option<String>,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Ordinary least squares `y = a + b·x`; returns `(b, a)`.
pub fn least_squares(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if points.len() < 2 || sxx == 0.0 {
        return Err(Error::Degenerate("need at least two distinct x values".into()));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let b = sxy / sxx;
    Ok((b, my - b * mx))
}

/// Refuses with fewer than three distinct `q`.
pub fn fit_scaling(records: &[ExperimentRecord]) -> Result<ScalingFit> {
    let s = records.first().map(|r| r.s).ok_or_else(|| Error::InvalidInput("no records".into()))?;
    let mut by_q: BTreeMap<u64, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in records {
        let e = by_q.entry(r.q).or_default();
        e.0.push(r.n_g0 as f64);
        e.1.push(r.alpha_value as f64);
    }
    if by_q.len() < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 distinct q values to fit, got {}", by_q.len())));
    }
    let medians: Vec<(u64, f64, f64)> =
        by_q.into_iter().map(|(q, (mut n, mut a))| (q, median(&mut n), median(&mut a))).collect();
    if medians.iter().any(|m| m.1 <= 0.0 || m.2 <= 0.0) {
        return Err(Error::Degenerate("a median is zero; log-log fit undefined".into()));
    }
    let points: Vec<(f64, f64)> = medians.iter().map(|m| (m.1.ln(), m.2.ln())).collect();
    let (slope, intercept) = least_squares(&points)?;
    Ok(ScalingFit { s, medians, slope, intercept, target_exponent: target_exponent(s) })
}

/// Runs the pipeline for every `(q, seed)`; records come out sorted by
/// `(q, seed)` whatever the thread count.
pub fn scaling_experiment(cfg: &PipelineConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let mut qs = cfg.qs.clone();
    qs.sort_unstable();
    qs.dedup();
    let budget = onan_budget(cfg);
    let geoms = qs.iter().map(|&q| verified_geometry(q, budget)).collect::<Result<Vec<_>>>()?;
    let seeds = cfg.seeds();
    let jobs: Vec<(usize, u64)> = (0..geoms.len()).flat_map(|i| seeds.iter().map(move |&s| (i, s))).collect();
    let mut records =
        jobs.par_iter().map(|&(i, seed)| pipeline_theorem(&geoms[i], cfg, seed)).collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| (r.q, r.seed));
    let (fit, fit_note) = match fit_scaling(&records) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let verifications = geoms.into_iter().map(|g| g.report).collect();
    Ok(ExperimentOutcome { records, verifications, fit, fit_note })
}

pub fn records_csv(records: &[ExperimentRecord], timings: bool) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in records {
        let secs = if timings { format!("{:.3}", r.wall_seconds) } else { String::new() };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.9},{},{},{},{},{}",
            r.q, r.s, r.seed, r.n_h, r.e_h, r.p_keep, r.n_g0, r.alpha_method, r.alpha_value, r.exact, secs
        );
    }
    out
}

fn json_sans_time(outcome: &ExperimentOutcome, timings: bool) -> Result<String> {
    let mut value = serde_json::to_value(outcome)?;
    if !timings {
        for r in value["records"].as_array_mut().into_iter().flatten() {
            r.as_object_mut().map(|o| o.remove("wall_seconds"));
        }
        for v in value["verifications"].as_array_mut().into_iter().flatten() {
            v.as_object_mut().map(|o| o.remove("onan_nodes"));
        }
    }
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

/// Log-log plot (base 2) of `α` against `n_G0`: every record, the per-`q`
/// medians, the fitted line, and a reference line of the target slope
/// through the medians' centroid.
pub fn scaling_svg(records: &[ExperimentRecord], fit: Option<&ScalingFit>) -> String {
    let (w, h, pad) = (640.0, 480.0, 60.0);
    let pts: Vec<(f64, f64)> =
        records.iter().map(|r| ((r.n_g0.max(1) as f64).log2(), (r.alpha_value.max(1) as f64).log2())).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    x0 = x0.floor();
    y0 = y0.floor().min(0.0);
    x1 = x1.ceil().max(x0 + 1.0);
    y1 = y1.ceil().max(y0 + 1.0);
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1"><line x1="{pad}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{pad}" y1="{pad}" x2="{pad}" y2="{b}"/></g>"#,
        b = h - pad,
        r = w - pad
    );
    for k in (x0 as i64)..=(x1 as i64) {
        let x = sx(k as f64);
        let _ = writeln!(svg, r#"<text x="{x:.1}" y="{:.1}" font-size="11" text-anchor="middle">2^{k}</text>"#, h - pad + 16.0);
    }
    for k in (y0 as i64)..=(y1 as i64) {
        let y = sy(k as f64);
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">2^{k}</text>"#, pad - 6.0, y + 4.0);
    }
    let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="13" text-anchor="middle">n (sparsified vertices)</text>"#, w / 2.0, h - 16.0);
    let _ = writeln!(svg, r#"<text x="16" y="{:.1}" font-size="13" transform="rotate(-90 16 {:.1})" text-anchor="middle">alpha_s</text>"#, h / 2.0, h / 2.0);
    for &(x, y) in &pts {
        let _ = writeln!(svg, r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#9db4d0"/>"##, sx(x), sy(y));
    }
    if let Some(fit) = fit {
        let l2 = std::f64::consts::LN_2;
        let med: Vec<(f64, f64)> = fit.medians.iter().map(|m| (m.1.log2(), m.2.log2())).collect();
        for &(x, y) in &med {
            let _ = writeln!(svg, r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="#1f4e89"/>"##, sx(x), sy(y));
        }
        // ln α = a + b ln n  ⇒  log₂ α = a/ln2 + b log₂ n.
        let line = |slope: f64, icpt: f64, color: &str, dash: &str| {
            let (ya, yb) = (icpt + slope * x0, icpt + slope * x1);
            format!(
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2" {dash}/>"#,
                sx(x0),
                sy(ya),
                sx(x1),
                sy(yb)
            )
        };
        let _ = writeln!(svg, "{}", line(fit.slope, fit.intercept / l2, "#1f4e89", ""));
        let cx = med.iter().map(|m| m.0).sum::<f64>() / med.len() as f64;
        let cy = med.iter().map(|m| m.1).sum::<f64>() / med.len() as f64;
        let t = fit.target_exponent;
        let _ = writeln!(svg, "{}", line(t, cy - t * cx, "#c0392b", r#"stroke-dasharray="6 4""#));
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" font-size="12" fill="#1f4e89">fit slope {:.4}</text>"##,
            pad + 10.0,
            pad + 4.0,
            fit.slope
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" font-size="12" fill="#c0392b">reference slope {:.4}</text>"##,
            pad + 10.0,
            pad + 20.0,
            t
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes `records.csv`, `report.json` and `scaling.svg` into `dir` (plus
/// `timings.csv` when `timings` is set).
pub fn emit_outputs(outcome: &ExperimentOutcome, dir: &Path, timings: bool) -> Result<Vec<PathBuf>> {
    if outcome.records.is_empty() {
        return Err(Error::InvalidInput("no records to emit".into()));
    }
    let mut written = Vec::new();
    let mut put = |name: &str, body: String| -> Result<()> {
        let path = dir.join(name);
        write_file(&path, &body)?;
        written.push(path);
        Ok(())
    };
    put("records.csv", records_csv(&outcome.records, timings))?;
    put("report.json", json_sans_time(outcome, timings)?)?;
    put("scaling.svg", scaling_svg(&outcome.records, outcome.fit.as_ref()))?;
    if timings {
        let mut t = String::from("q,seed,seconds\n");
        for r in &outcome.records {
            let _ = writeln!(t, "{},{},{:.3}", r.q, r.seed, r.wall_seconds);
        }
        put("timings.csv", t)?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn synthetic(points: &[(u64, usize, usize)]) -> Vec<ExperimentRecord> {
        points
            .iter()
            .map(|&(q, n, a)| ExperimentRecord {
                q,
                s: 2,
                seed: 0,
                n_h: n * 2,
                e_h: 0,
                p_keep: 0.5,
                n_g0: n,
                alpha_method: "exact".into(),
                alpha_value: a,
                exact: true,
                wall_seconds: 0.25,
                target_exponent: 1.0 / 3.0,
                t_value: 0.0,
                t_rounded: 0,
            })
            .collect()
    }

    #[test]
    fn constant_alpha_has_zero_slope() {
        let fit = fit_scaling(&synthetic(&[(3, 10, 4), (5, 40, 4), (7, 90, 4)])).unwrap();
        assert!(fit.slope.abs() < 1e-12);
    }

    #[test]
    fn cube_root_alpha_has_slope_one_third() {
        let fit = fit_scaling(&synthetic(&[(3, 8, 2), (5, 64, 4), (7, 512, 8), (11, 4096, 16)])).unwrap();
        assert!((fit.slope - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn fewer_than_three_q_is_refused() {
        assert!(fit_scaling(&synthetic(&[(3, 8, 2), (5, 64, 4)])).is_err());
    }

    #[test]
    fn medians_average_the_middle_pair() {
        assert_eq!(median(&mut [4.0, 1.0, 3.0, 2.0]), 2.5);
        assert_eq!(median(&mut [5.0, 1.0, 3.0]), 3.0);
    }

    #[test]
    fn csv_shape_and_seconds_column() {
        let recs = synthetic(&[(3, 8, 2)]);
        let csv = records_csv(&recs, false);
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        assert!(csv.lines().nth(1).unwrap().ends_with("true,"));
        assert!(records_csv(&recs, true).lines().nth(1).unwrap().ends_with(",0.250"));
    }

    #[test]
    fn emit_rejects_empty_and_writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let empty = ExperimentOutcome { records: vec![], verifications: vec![], fit: None, fit_note: None };
        assert!(emit_outputs(&empty, dir.path(), false).is_err());
        let recs = synthetic(&[(3, 8, 2), (5, 64, 4), (7, 512, 8)]);
        let fit = fit_scaling(&recs).ok();
        let out = ExperimentOutcome { records: recs, verifications: vec![], fit, fit_note: None };
        let files = emit_outputs(&out, dir.path(), false).unwrap();
        assert_eq!(files.len(), 3);
        let svg = std::fs::read_to_string(dir.path().join("scaling.svg")).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("reference slope 0.3333"));
    }
}
