//! Random block graph on top of the unital: build it, confirm it has no
//! `K_{s+2}`, and compare its triangle count with a random graph of the
//! same density.
//!
//! `cargo run --release --example block_graph -- 3 2 7`

use erdos_rogers::blocks::{build_h, random_blocks, verify_ks2_free};
use erdos_rogers::geometry::unital_incidence;
use erdos_rogers::harness::triangle_diagnostic;
use std::sync::Arc;

fn main() -> erdos_rogers::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (q, s, seed) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(2) as usize, args.get(2).copied().unwrap_or(0));

    let f = Arc::new(unital_incidence(q)?.incidence);
    let h = build_h(f.clone(), random_blocks(&f, s, seed)?)?;
    println!("H: {} vertices, {} edges (double count {})", h.n(), h.edge_count(), h.expected_edge_count());

    let (u, v, y) = h.provenance()[0];
    println!("edge {u}-{v} comes from block y = {y} with parts {:?}", h.parts(y as usize));

    let free = verify_ks2_free(&h);
    println!("K_{} present: {}", s + 2, !free.free);

    let tri = triangle_diagnostic(&h, q <= 5);
    println!(
        "triangles {} vs {:.1} in a random graph (ratio {:.3})",
        tri.triangles, tri.random_triangles, tri.triangle_ratio
    );
    if let (Some(c6), Some(ratio)) = (tri.hexagons, tri.hexagon_ratio) {
        println!("hexagons in F: {c6} (ratio to random bipartite {ratio:.3})");
    }
    Ok(())
}
