//! Clique partitions of `E(K_{s+2})` always admit four vertices spanning
//! six distinct cliques: exhaustive for small `s`, sampled for `s = 4`.
//!
//! `cargo run --release --example lemma22`

use erdos_rogers::blocks::{lemma22_exhaustive, lemma22_witness, Lemma22Mode};

fn main() -> erdos_rogers::Result<()> {
    let partition = vec![vec![0, 1, 2], vec![0, 3], vec![0, 4], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]];
    println!("witness for {partition:?}: {:?}", lemma22_witness(3, &partition)?);

    for s in 2..=3 {
        let r = lemma22_exhaustive(s, Lemma22Mode::Exhaustive, u64::MAX)?;
        println!("s = {s}: {} partitions, {} failures", r.partitions_checked, r.failures);
    }
    let r = lemma22_exhaustive(4, Lemma22Mode::Sampled { samples: 10_000, seed: 0 }, u64::MAX)?;
    println!("s = 4: {} sampled partitions, {} failures", r.partitions_checked, r.failures);
    Ok(())
}
