//! Linear decay with and without neotenic reinjection, same seed.
//!
//! ```text
//! cargo run --release --example neoteny_run -- [seed] [E]
//! ```

use neoseg::ga::{run_on_cubes, ImageSource, RunConfig};
use neoseg::neoteny::{NeotenyConfig, Window};
use neoseg::quantize::quantize;

fn main() -> neoseg::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map(|a| a.parse().expect("seed")).unwrap_or(9);
    let e: f64 = args.next().map(|a| a.parse().expect("E")).unwrap_or(1.0);

    let cubes = quantize(&ImageSource::default().load()?, 8)?;
    let base = RunConfig { seed, generations: 1500, ..RunConfig::default() };
    let neo = NeotenyConfig::new(Window::new(1, 100)?, Window::new(750, 1500)?, e)?;

    println!("variant,final_best,best_generation,injected,archive");
    for (name, neoteny) in [
        ("LD", None),
        ("LD/N", Some(neo)),
        ("LD/N+R", Some(neo.with_companion(true))),
    ] {
        let r = run_on_cubes(cubes.cubes(), &RunConfig { neoteny, ..base.clone() })?;
        let injected: usize = r.stats.iter().map(|s| s.injected).sum();
        println!(
            "{name},{:.3},{},{injected},{}",
            r.final_best(),
            r.best_generation,
            r.archive.len()
        );
    }
    Ok(())
}
