//! Pixel-weighted K-means squared-error criterion over colour cubes.
//!
//! `J = Σ_i w_i · ‖c_i − μ_{a_i}‖²` where `c_i`, `w_i` are the cube mean colour
//! and pixel count and `μ_ℓ` is the weighted centroid of cluster `ℓ`. Fitness
//! is `10⁹ / max(J, J_MIN)`. Sums always run in cube order so that any caller
//! gets bit-identical values.

use crate::genome::LabelAssignment;
use crate::quantize::{Cube, CubeSet};
use crate::raster::{RasterImage, Rgb};

pub const J_MIN: f64 = 1e-6;
pub const FITNESS_SCALE: f64 = 1e9;

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    /// One entry per representable label; meaningless where weight is 0.
    pub centroids: Vec<[f64; 3]>,
    pub member_weight: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessReport {
    pub j: f64,
    pub fitness: f64,
}

impl ClusterModel {
    pub fn non_empty(&self) -> impl Iterator<Item = usize> + '_ {
        self.member_weight
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(l, _)| l)
    }
}

pub fn build_model(cubes: &[Cube], a: &LabelAssignment) -> ClusterModel {
    assert_eq!(cubes.len(), a.len(), "assignment length must equal cube count");
    let k = a.label_space();
    let mut sums = vec![[0.0f64; 3]; k];
    let mut member_weight = vec![0u64; k];
    for (cube, &label) in cubes.iter().zip(a.labels()) {
        let l = label as usize;
        let w = cube.weight as f64;
        for (sum, c) in sums[l].iter_mut().zip(cube.mean_color) {
            *sum += w * c;
        }
        member_weight[l] += cube.weight;
    }
    let centroids = sums
        .iter()
        .zip(&member_weight)
        .map(|(s, &w)| {
            if w == 0 {
                [0.0; 3]
            } else {
                s.map(|v| v / w as f64)
            }
        })
        .collect();
    ClusterModel {
        centroids,
        member_weight,
    }
}

pub fn objective_j(cubes: &[Cube], a: &LabelAssignment) -> f64 {
    let model = build_model(cubes, a);
    cubes
        .iter()
        .zip(a.labels())
        .map(|(cube, &label)| {
            let mu = model.centroids[label as usize];
            let d2: f64 = (0..3).map(|ch| (cube.mean_color[ch] - mu[ch]).powi(2)).sum();
            cube.weight as f64 * d2
        })
        .sum()
}

pub fn fitness(j: f64) -> f64 {
    FITNESS_SCALE / j.max(J_MIN)
}

pub fn evaluate(cubes: &[Cube], a: &LabelAssignment) -> FitnessReport {
    let j = objective_j(cubes, a);
    FitnessReport {
        j,
        fitness: fitness(j),
    }
}

fn round_channel(v: f64) -> u8 {
    (v + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Paints each pixel with its cluster's centroid, rounded half-up per channel.
pub fn render_segmentation(img: &RasterImage, cubes: &CubeSet, a: &LabelAssignment) -> RasterImage {
    assert_eq!(
        img.pixels().len(),
        cubes.pixel_to_cube().len(),
        "cube set was not built from this image"
    );
    let model = build_model(cubes.cubes(), a);
    let palette: Vec<Rgb> = model
        .centroids
        .iter()
        .map(|c| c.map(round_channel))
        .collect();
    let pixels = cubes
        .pixel_to_cube()
        .iter()
        .map(|&ci| palette[a.labels()[ci as usize] as usize])
        .collect();
    RasterImage::new(img.width(), img.height(), pixels).expect("dimensions preserved")
}
