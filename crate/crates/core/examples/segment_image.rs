//! Segment one image with a single GA run and write the result.
//!
//! ```text
//! cargo run --release --example segment_image -- [input.ppm] [output.ppm] [generations]
//! ```
//!
//! Without an input the synthetic six-stripe image is used.

use std::fs;
use std::path::PathBuf;

use neoseg::ga::{run, ImageSource, RunConfig};
use neoseg::raster::write_ppm;

fn main() -> neoseg::Result<()> {
    let mut args = std::env::args().skip(1);
    let image = args.next().map(|p| ImageSource::File(PathBuf::from(p))).unwrap_or_default();
    let output = args.next().unwrap_or_else(|| "segmented.ppm".into());
    let generations = args.next().map(|a| a.parse().expect("generations")).unwrap_or(1500);

    let cfg = RunConfig { image, generations, ..RunConfig::default() };
    let r = run(&cfg)?;
    let labels = r.result.best.chromosome.decode();
    let mut used = labels.labels().to_vec();
    used.sort_unstable();
    used.dedup();

    println!(
        "{} cubes, best J {:.1} (fitness {:.3}) at generation {}, {} clusters used, {} colours rendered",
        r.cubes.len(),
        r.result.best.j,
        r.result.best.fitness,
        r.result.best_generation,
        used.len(),
        r.segmented.distinct_colors()
    );
    println!("{:.3} ms per generation", 1e3 * r.result.seconds_per_generation());
    fs::write(&output, write_ppm(&r.segmented, true))?;
    println!("wrote {output}");
    Ok(())
}
