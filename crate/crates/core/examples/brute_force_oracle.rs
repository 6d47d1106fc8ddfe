//! Exhaustive optimum of a small random instance next to a GA run on it.
//!
//! ```text
//! cargo run --release --example brute_force_oracle -- [cubes] [bits_per_gene] [seed]
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use neoseg::ga::{run_on_cubes, RunConfig};
use neoseg::oracle::{brute_force_min_j, cross_check_j};
use neoseg::quantize::Cube;

fn main() -> neoseg::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map(|a| a.parse().expect("cubes")).unwrap_or(6);
    let b: u32 = args.next().map(|a| a.parse().expect("bits_per_gene")).unwrap_or(2);
    let seed: u64 = args.next().map(|a| a.parse().expect("seed")).unwrap_or(1);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cubes: Vec<Cube> = (0..m)
        .map(|_| Cube::new([0; 3].map(|_: u8| rng.gen_range(0.0..255.0)), rng.gen_range(1..100)))
        .collect();

    let oracle = brute_force_min_j(&cubes, b)?;
    println!(
        "oracle: J = {:.4} over {} labellings, labels {:?}",
        oracle.best_j,
        oracle.evaluated_count,
        oracle.best_labels.labels()
    );

    let cfg = RunConfig { seed, population: 50, generations: 200, bits_per_gene: b, ..RunConfig::default() };
    let ga = run_on_cubes(&cubes, &cfg)?;
    let labels = ga.best.chromosome.decode();
    let cc = cross_check_j(&cubes, &labels);
    println!(
        "GA:     J = {:.4} at generation {}, labels {:?} (engine/reference rel err {:.1e})",
        cc.engine_j,
        ga.best_generation,
        labels.labels(),
        cc.relative_error
    );
    Ok(())
}
