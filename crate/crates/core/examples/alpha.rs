//! Exact and greedy `α_s` on small named graphs and on a sparsified block
//! graph.
//!
//! `cargo run --release --example alpha`

use erdos_rogers::graph::{alpha_s_exact, alpha_s_greedy, DenseGraph};
use erdos_rogers::harness::{keep_probability, sparsify, verified_block_graph, verified_geometry};
use erdos_rogers::geometry::SearchBudget;

fn main() -> erdos_rogers::Result<()> {
    for (name, g) in [("C5", DenseGraph::cycle(5)), ("Petersen", DenseGraph::petersen()), ("K6", DenseGraph::complete(6))] {
        for s in 2..=3 {
            let a = alpha_s_exact(&g, s, u64::MAX);
            println!("{name:>8}  alpha_{s} = {}  witness {:?}", a.value, a.witness);
        }
    }

    let geom = verified_geometry(5, SearchBudget::nodes(1_000_000))?;
    let h = verified_block_graph(&geom, 2, 1)?;
    let g0 = sparsify(&h, keep_probability(5, 2), 1)?;
    let exact = alpha_s_exact(&g0, 2, 50_000_000);
    let greedy = alpha_s_greedy(&g0, 2, 200, 1);
    println!(
        "sparsified H (q=5): {} vertices, exact {} ({} nodes, proven: {}), greedy {}",
        g0.n(),
        exact.value,
        exact.nodes_explored,
        exact.exact,
        greedy.value
    );
    Ok(())
}
