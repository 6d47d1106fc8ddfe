//! Uniform colour-cube quantization.
//!
//! RGB space is split into `bins_per_axis³` axis-aligned bins; the bin of a
//! channel value `c` is `floor(c · bins_per_axis / 256)`. Only non-empty bins
//! become cubes, and cubes are ordered by bin index (lexicographic, red
//! first), which fixes the gene → cube mapping for chromosomes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::raster::{RasterImage, Rgb};

/// A non-empty colour bin: the weighted mean colour of its pixels and how
/// many pixels fell into it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cube {
    pub mean_color: [f64; 3],
    pub weight: u64,
    pub bin_index: [u16; 3],
}

impl Cube {
    /// A free-standing cube, used for hand-built and randomly generated
    /// instances that do not come from an image.
    pub fn new(mean_color: [f64; 3], weight: u64) -> Self {
        Self {
            mean_color,
            weight,
            bin_index: [0; 3],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubeSet {
    bins_per_axis: u16,
    cubes: Vec<Cube>,
    pixel_to_cube: Vec<u32>,
}

pub fn bin_of(color: Rgb, bins_per_axis: u16) -> [u16; 3] {
    color.map(|c| ((c as u32 * bins_per_axis as u32) / 256) as u16)
}

/// Inclusive channel range `[lo, hi]` covered by bin `k`.
pub fn bin_bounds(k: u16, bins_per_axis: u16) -> (u8, u8) {
    let b = bins_per_axis as u32;
    let lo = (k as u32 * 256).div_ceil(b);
    let hi = ((k as u32 + 1) * 256).div_ceil(b) - 1;
    (lo as u8, hi.min(255) as u8)
}

pub fn quantize(img: &RasterImage, bins_per_axis: u16) -> Result<CubeSet> {
    if !(1..=256).contains(&bins_per_axis) {
        return Err(Error::InvalidArgument(format!(
            "bins_per_axis {bins_per_axis} not in [1,256]"
        )));
    }
    if img.pixels().is_empty() {
        return Err(Error::EmptyImage);
    }

    let mut acc: BTreeMap<[u16; 3], ([u64; 3], u64)> = BTreeMap::new();
    for &px in img.pixels() {
        let e = acc.entry(bin_of(px, bins_per_axis)).or_default();
        for (sum, c) in e.0.iter_mut().zip(px) {
            *sum += c as u64;
        }
        e.1 += 1;
    }

    let mut slot = BTreeMap::new();
    let cubes: Vec<Cube> = acc
        .into_iter()
        .enumerate()
        .map(|(i, (bin, (sum, n)))| {
            slot.insert(bin, i as u32);
            Cube {
                mean_color: sum.map(|s| s as f64 / n as f64),
                weight: n,
                bin_index: bin,
            }
        })
        .collect();
    let pixel_to_cube = img
        .pixels()
        .iter()
        .map(|&px| slot[&bin_of(px, bins_per_axis)])
        .collect();

    Ok(CubeSet {
        bins_per_axis,
        cubes,
        pixel_to_cube,
    })
}

impl CubeSet {
    pub fn bins_per_axis(&self) -> u16 {
        self.bins_per_axis
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// Number of cubes, i.e. the gene count `m`.
    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn pixel_to_cube(&self) -> &[u32] {
        &self.pixel_to_cube
    }

    pub fn total_weight(&self) -> u64 {
        self.cubes.iter().map(|c| c.weight).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_color() {
        let img = RasterImage::filled(4, 4, [200, 17, 90]);
        let cs = quantize(&img, 8).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.cubes()[0].weight, 16);
        assert_eq!(cs.cubes()[0].mean_color, [200.0, 17.0, 90.0]);
    }

    #[test]
    fn opposite_corners() {
        let img = RasterImage::new(2, 1, vec![[0, 0, 0], [255, 255, 255]]).unwrap();
        let cs = quantize(&img, 2).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs.cubes()[0].weight, 1);
        assert_eq!(cs.cubes()[1].weight, 1);
        assert_eq!(cs.cubes()[0].bin_index, [0, 0, 0]);
        assert_eq!(cs.cubes()[1].bin_index, [1, 1, 1]);
        assert_eq!(cs.pixel_to_cube(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_args() {
        let img = RasterImage::filled(1, 1, [0; 3]);
        assert!(quantize(&img, 0).is_err());
        assert!(quantize(&img, 257).is_err());
        let empty = RasterImage::new(0, 0, vec![]).unwrap();
        assert!(matches!(quantize(&empty, 8), Err(Error::EmptyImage)));
    }

    #[test]
    fn bounds_cover_axis() {
        for bins in [1u16, 3, 7, 8, 100, 256] {
            let mut next = 0u32;
            for k in 0..bins {
                let (lo, hi) = bin_bounds(k, bins);
                assert_eq!(lo as u32, next);
                assert!(lo <= hi);
                for c in [lo, hi] {
                    assert_eq!(bin_of([c, 0, 0], bins)[0], k);
                }
                next = hi as u32 + 1;
            }
            assert_eq!(next, 256);
        }
    }

    #[test]
    fn cubes_sorted_by_bin() {
        let img = RasterImage::new(
            3,
            1,
            vec![[250, 0, 0], [0, 0, 250], [0, 250, 0]],
        )
        .unwrap();
        let cs = quantize(&img, 4).unwrap();
        let bins: Vec<_> = cs.cubes().iter().map(|c| c.bin_index).collect();
        let mut sorted = bins.clone();
        sorted.sort();
        assert_eq!(bins, sorted);
    }

    proptest! {
        #[test]
        fn conservation_and_consistency(
            px in proptest::collection::vec(any::<[u8; 3]>(), 1..64),
            bins in 1u16..=256,
        ) {
            let n = px.len();
            let img = RasterImage::new(n, 1, px.clone()).unwrap();
            let cs = quantize(&img, bins).unwrap();
            prop_assert_eq!(cs.total_weight(), n as u64);
            for (p, &ci) in px.iter().zip(cs.pixel_to_cube()) {
                prop_assert!((ci as usize) < cs.len());
                // independent re-binning
                let expect = [
                    (p[0] as usize * bins as usize / 256) as u16,
                    (p[1] as usize * bins as usize / 256) as u16,
                    (p[2] as usize * bins as usize / 256) as u16,
                ];
                prop_assert_eq!(cs.cubes()[ci as usize].bin_index, expect);
            }
            for c in cs.cubes() {
                prop_assert!(c.weight >= 1);
                for ch in 0..3 {
                    let (lo, hi) = bin_bounds(c.bin_index[ch], bins);
                    prop_assert!(c.mean_color[ch] >= lo as f64 && c.mean_color[ch] <= hi as f64);
                }
            }
        }
    }
}
