//! Builds the secant/point incidence graph of the Hermitian unital and runs
//! every structural check on it.
//!
//! `cargo run --release --example unital -- 5`

use erdos_rogers::geometry::{unital_incidence, verify_unital, SearchBudget};
use std::time::Duration;

fn main() -> erdos_rogers::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let u = unital_incidence(q)?;
    println!("q = {q}: {} secant lines, {} unital points", u.x_count(), u.y_count());
    println!("first points: {:?}", &u.points[..3.min(u.points.len())]);

    let report = verify_unital(u.q, &u.incidence, SearchBudget::time(Duration::from_secs(30)));
    println!("degrees ok: {}, C4-free: {}", report.degrees_ok, report.c4_free && report.c4_free_dual);
    println!("O'Nan search ({:?}): {:?} after {} nodes", report.onan_method, report.onan_status, report.onan_nodes);
    println!("all checks pass: {}", report.all_pass);
    Ok(())
}
