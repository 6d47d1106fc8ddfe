//! Colour-cube histogram of a PPM file (or the default synthetic image).
//!
//! ```text
//! cargo run --example quantize_image -- [image.ppm] [bins_per_axis]
//! ```

use std::fs;

use neoseg::quantize::{bin_bounds, quantize};
use neoseg::raster::read_ppm;
use neoseg::synth::synth_image;

fn main() -> neoseg::Result<()> {
    let mut args = std::env::args().skip(1);
    let img = match args.next() {
        Some(path) => read_ppm(&fs::read(path)?)?,
        None => synth_image(128, 128, 6, 12, 9)?,
    };
    let bins: u16 = args.next().map(|a| a.parse().expect("bins_per_axis")).unwrap_or(8);

    let cubes = quantize(&img, bins)?;
    println!(
        "{}x{} image, {} distinct colours, {} occupied cubes of {}",
        img.width(),
        img.height(),
        img.distinct_colors(),
        cubes.len(),
        (bins as usize).pow(3)
    );
    println!("bin,range_r,range_g,range_b,weight,mean_r,mean_g,mean_b");
    for c in cubes.cubes() {
        let r = c.bin_index.map(|k| bin_bounds(k, bins));
        println!(
            "{:?},{}-{},{}-{},{}-{},{},{:.2},{:.2},{:.2}",
            c.bin_index,
            r[0].0,
            r[0].1,
            r[1].0,
            r[1].1,
            r[2].0,
            r[2].1,
            c.weight,
            c.mean_color[0],
            c.mean_color[1],
            c.mean_color[2]
        );
    }
    Ok(())
}
