//! Container machinery: one container step on a small hypergraph, then the
//! iterated refinement on a block graph with a small threshold and the
//! resulting bound on `K_s`-free `t`-sets.
//!
//! `cargo run --release --example containers`

use erdos_rogers::blocks::{build_h, random_blocks};
use erdos_rogers::containers::{
    check_codegree, container_step, count_ksfree_bound, iterate_containers, ContainerParams, ContainerStep,
    IterateConfig, UniformHypergraph,
};
use erdos_rogers::geometry::unital_incidence;
use std::sync::Arc;

fn main() -> erdos_rogers::Result<()> {
    let cycle = UniformHypergraph::new(2, 5, (0..5).map(|i| vec![i, (i + 1) % 5]).collect())?;
    let params = ContainerParams::integral(2, 5, 3, 1)?;
    for line in check_codegree(&cycle, params.b, params.r)?.lines {
        println!("l={}: delta {} <= {} ({})", line.ell, line.delta, line.bound, line.pass);
    }
    let step = ContainerStep::new(&cycle, params.clone())?;
    let fp = step.fingerprint(&[0, 2])?;
    println!("fingerprint of {{0,2}}: {fp:?}, container {:?}", step.container(&fp)?);
    let fam = container_step(&cycle, params, 1 << 16)?;
    println!("C5 family: {} containers, largest {}", fam.len(), fam.max_container());

    let f = Arc::new(unital_incidence(2)?.incidence);
    let h = build_h(f.clone(), random_blocks(&f, 2, 3)?)?;
    let cfg = IterateConfig { threshold: Some(6), ..Default::default() };
    let (family, trace) = iterate_containers(&h, &cfg)?;
    println!("iteration: depth {}, {} containers, {} scale selections", family.depth, family.len(), trace.scales.len());
    for stat in &family.depth_stats {
        println!("  depth {}: {} containers, sizes {}..={}", stat.depth, stat.containers, stat.min_size, stat.max_size);
    }
    match &family.abort {
        Some(a) => println!("stopped at depth {} on |U| = {}: {}", a.depth, a.u.len(), a.cause),
        None => {
            let bound = count_ksfree_bound(&family, 3)?;
            println!("independent 3-sets of H: at most {}", bound.bound);
        }
    }
    Ok(())
}
