//! Fitness statistics of generation 0 across seeds.
//!
//! ```text
//! cargo run --example init_population_report -- [seed...]
//! ```

use neoseg::ga::{ImageSource, RunConfig};
use neoseg::harness::init_pop_report;
use neoseg::quantize::quantize;

fn main() -> neoseg::Result<()> {
    let mut seeds: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("seed")).collect();
    if seeds.is_empty() {
        seeds = vec![9, 14, 27, 917, 7445];
    }
    let cfg = RunConfig::default();
    let cubes = quantize(&ImageSource::default().load()?, cfg.bins_per_axis)?;
    print!("{}", init_pop_report(&seeds, &cfg, cubes.cubes())?);
    Ok(())
}
