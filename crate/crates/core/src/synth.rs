//! Seeded synthetic test images with a known number of prominent colours.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::raster::{RasterImage, Rgb};

const LO: u8 = 64;
const HI: u8 = 192;

/// Vertices of the `{64, 192}³` cube, antipodal pairs adjacent. The levels sit
/// on bin boundaries for every power-of-two `bins_per_axis` up to 128, so
/// noise splits each region across several colour cubes.
pub const PALETTE: [Rgb; 8] = [
    [LO, LO, LO],
    [HI, HI, HI],
    [HI, LO, LO],
    [LO, HI, HI],
    [LO, HI, LO],
    [HI, LO, HI],
    [LO, LO, HI],
    [HI, HI, LO],
];

/// Splits the image into `k_colors` vertical stripes of near-equal width,
/// each painted with a palette colour plus independent per-channel uniform
/// integer noise in `[-noise_amplitude, noise_amplitude]`.
pub fn synth_image(
    width: usize,
    height: usize,
    k_colors: usize,
    noise_amplitude: u8,
    seed: u64,
) -> Result<RasterImage> {
    if !(2..=8).contains(&k_colors) {
        return Err(Error::InvalidArgument(format!(
            "k_colors {k_colors} not in [2,8]"
        )));
    }
    if noise_amplitude > 64 {
        return Err(Error::InvalidArgument(format!(
            "noise_amplitude {noise_amplitude} not in [0,64]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amp = noise_amplitude as i16;
    let mut pixels = Vec::with_capacity(width * height);
    for _ in 0..height {
        for x in 0..width {
            let base = PALETTE[x * k_colors / width];
            let px = if amp == 0 {
                base
            } else {
                base.map(|c| (c as i16 + rng.gen_range(-amp..=amp)).clamp(0, 255) as u8)
            };
            pixels.push(px);
        }
    }
    RasterImage::new(width, height, pixels)
}
