//! Small scaling run: records for several `q`, the log-log fit against the
//! reference exponent, and the CSV/JSON/SVG outputs.
//!
//! `cargo run --release --example experiment -- out/`

use erdos_rogers::harness::{emit_outputs, scaling_experiment, PipelineConfig};
use std::path::PathBuf;

fn main() -> erdos_rogers::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("erdos-rogers"));
    let cfg = PipelineConfig { qs: vec![2, 3, 5], s: 2, trials: 3, ..Default::default() };
    let outcome = scaling_experiment(&cfg)?;
    for r in &outcome.records {
        println!("q={} seed={} n_G0={} alpha={} ({})", r.q, r.seed, r.n_g0, r.alpha_value, r.alpha_method);
    }
    if let Some(fit) = &outcome.fit {
        println!("slope {:.4} against reference {:.4}", fit.slope, fit.target_exponent);
    }
    for path in emit_outputs(&outcome, &dir, false)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
