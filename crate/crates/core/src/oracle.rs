//! Exhaustive reference solver for tiny clustering instances.
//!
//! Nothing here calls into `objective`: the squared error is recomputed with
//! a plain per-cluster two-pass loop so the two routes can check each other.

use crate::error::{Error, Result};
use crate::genome::LabelAssignment;
use crate::objective;
use crate::quantize::Cube;

pub const MAX_ASSIGNMENTS: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_labels: LabelAssignment,
    pub best_j: f64,
    pub evaluated_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheck {
    pub oracle_j: f64,
    pub engine_j: f64,
    pub relative_error: f64,
}

/// Squared error recomputed from scratch, cluster by cluster.
pub fn reference_j(cubes: &[Cube], labels: &[u32], clusters: usize) -> f64 {
    let mut total = 0.0;
    for k in 0..clusters as u32 {
        let mut weight = 0.0;
        let mut sum = [0.0; 3];
        for (c, _) in cubes.iter().zip(labels).filter(|(_, &l)| l == k) {
            weight += c.weight as f64;
            sum[0] += c.weight as f64 * c.mean_color[0];
            sum[1] += c.weight as f64 * c.mean_color[1];
            sum[2] += c.weight as f64 * c.mean_color[2];
        }
        if weight == 0.0 {
            continue;
        }
        let centre = [sum[0] / weight, sum[1] / weight, sum[2] / weight];
        for (c, _) in cubes.iter().zip(labels).filter(|(_, &l)| l == k) {
            let dr = c.mean_color[0] - centre[0];
            let dg = c.mean_color[1] - centre[1];
            let db = c.mean_color[2] - centre[2];
            total += c.weight as f64 * (dr * dr + dg * dg + db * db);
        }
    }
    total
}

/// Enumerates every labelling in mixed-radix order, gene 0 fastest; the
/// first minimiser found wins ties.
pub fn brute_force_min_j(cubes: &[Cube], bits_per_gene: u32) -> Result<OracleResult> {
    if cubes.is_empty() {
        return Err(Error::InvalidArgument("no cubes".into()));
    }
    let radix = 1u32 << bits_per_gene;
    let total = (radix as u128)
        .checked_pow(cubes.len() as u32)
        .filter(|&t| t <= MAX_ASSIGNMENTS)
        .ok_or(Error::InstanceTooLarge(
            (radix as u128).saturating_pow(cubes.len() as u32),
        ))?;

    let mut labels = vec![0u32; cubes.len()];
    let mut best = (f64::INFINITY, labels.clone());
    for _ in 0..total {
        let j = reference_j(cubes, &labels, radix as usize);
        if j < best.0 {
            best = (j, labels.clone());
        }
        for digit in labels.iter_mut() {
            *digit += 1;
            if *digit < radix {
                break;
            }
            *digit = 0;
        }
    }
    Ok(OracleResult {
        best_labels: LabelAssignment::new(best.1, bits_per_gene)?,
        best_j: best.0,
        evaluated_count: total as u64,
    })
}

pub fn cross_check_j(cubes: &[Cube], a: &LabelAssignment) -> CrossCheck {
    let oracle_j = reference_j(cubes, a.labels(), a.label_space());
    let engine_j = objective::objective_j(cubes, a);
    let scale = oracle_j.abs().max(engine_j.abs());
    let relative_error = if scale == 0.0 {
        0.0
    } else {
        (oracle_j - engine_j).abs() / scale
    };
    CrossCheck {
        oracle_j,
        engine_j,
        relative_error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_cube() {
        let r = brute_force_min_j(&[Cube::new([9.0, 9.0, 9.0], 4)], 3).unwrap();
        assert_eq!(r.best_j, 0.0);
        assert_eq!(r.evaluated_count, 8);
    }

    #[test]
    fn duplicate_colors() {
        let cubes = [Cube::new([5.0, 1.0, 2.0], 1), Cube::new([5.0, 1.0, 2.0], 3)];
        assert_eq!(brute_force_min_j(&cubes, 1).unwrap().best_j, 0.0);
    }

    #[test]
    fn four_points_two_clusters() {
        let cubes: Vec<Cube> = [0.0, 1.0, 10.0, 11.0]
            .iter()
            .map(|&x| Cube::new([x, 0.0, 0.0], 1))
            .collect();
        let r = brute_force_min_j(&cubes, 1).unwrap();
        assert_eq!(r.evaluated_count, 16);
        // each point sits 0.5 from its centroid: 4 × 0.25
        assert_eq!(r.best_j, 1.0);
        let l = r.best_labels.labels();
        assert_eq!(l[0], l[1]);
        assert_eq!(l[2], l[3]);
        assert_ne!(l[0], l[2]);
        // gene-0-fastest order reaches [1,1,0,0] before [0,0,1,1]
        assert_eq!(l, &[1, 1, 0, 0]);
    }

    #[test]
    fn guard_on_size() {
        let cubes = vec![Cube::new([0.0; 3], 1); 12];
        assert!(matches!(
            brute_force_min_j(&cubes, 3),
            Err(Error::InstanceTooLarge(_))
        ));
    }

    #[test]
    fn cross_check_examples() {
        let cubes = [Cube::new([0.0; 3], 3), Cube::new([4.0, 0.0, 0.0], 1)];
        let same = LabelAssignment::new(vec![1, 1], 1).unwrap();
        let cc = cross_check_j(&cubes, &same);
        assert_eq!((cc.oracle_j, cc.engine_j), (12.0, 12.0));
        assert_eq!(cc.relative_error, 0.0);

        let split = LabelAssignment::new(vec![0, 1], 1).unwrap();
        let cc = cross_check_j(&cubes, &split);
        assert_eq!((cc.oracle_j, cc.engine_j), (0.0, 0.0));
    }
}
