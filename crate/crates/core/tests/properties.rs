use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use neoseg::ga::{run_on_cubes, RunConfig};
use neoseg::genome::{random_chromosome, LabelAssignment};
use neoseg::neoteny::{NeotenyConfig, Window};
use neoseg::objective::{evaluate, objective_j};
use neoseg::oracle::reference_j;
use neoseg::quantize::quantize;
use neoseg::raster::{read_ppm, write_ppm, RasterImage};
use neoseg::schedule::MutationSchedule;

fn image() -> impl Strategy<Value = RasterImage> {
    (1usize..12, 1usize..12).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<[u8; 3]>(), w * h)
            .prop_map(move |px| RasterImage::new(w, h, px).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_cluster_error_is_pixel_spread(img in image(), bins in 1u16..=16) {
        // one label for every cube: J is the spread of cube means around the pixel mean
        let cubes = quantize(&img, bins).unwrap();
        let a = LabelAssignment::new(vec![0; cubes.len()], 1).unwrap();
        let n = img.pixels().len() as f64;
        let mean: Vec<f64> = (0..3)
            .map(|ch| img.pixels().iter().map(|p| p[ch] as f64).sum::<f64>() / n)
            .collect();
        let spread: f64 = cubes
            .cubes()
            .iter()
            .map(|c| {
                c.weight as f64
                    * (0..3).map(|ch| (c.mean_color[ch] - mean[ch]).powi(2)).sum::<f64>()
            })
            .sum();
        let j = objective_j(cubes.cubes(), &a);
        prop_assert!((j - spread).abs() <= 1e-9 * spread.max(1.0));
    }

    #[test]
    fn distinct_labels_give_zero_error(img in image()) {
        let cubes = quantize(&img, 2).unwrap();
        // at most 8 cubes with 2 bins per axis, so three bits label each one apart
        let a = LabelAssignment::new((0..cubes.len() as u32).collect(), 3).unwrap();
        let r = evaluate(cubes.cubes(), &a);
        prop_assert_eq!(r.j, 0.0);
        prop_assert_eq!(r.fitness, 1e15);
    }

    #[test]
    fn engine_and_reference_agree_on_images(img in image(), seed in any::<u64>()) {
        let cubes = quantize(&img, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_chromosome(&mut rng, cubes.len() * 3, 3).unwrap();
        let a = c.decode();
        let engine = objective_j(cubes.cubes(), &a);
        let reference = reference_j(cubes.cubes(), a.labels(), 8);
        prop_assert!((engine - reference).abs() <= 1e-9 * engine.max(reference).max(1.0));
    }

    #[test]
    fn ppm_survives_quantization_roundtrip(img in image(), binary in any::<bool>()) {
        let back = read_ppm(&write_ppm(&img, binary)).unwrap();
        let (a, b) = (quantize(&back, 8).unwrap(), quantize(&img, 8).unwrap());
        prop_assert_eq!(a.cubes(), b.cubes());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn run_invariants(img in image(), seed in any::<u64>(), e in 0.0f64..3.0, companion in any::<bool>()) {
        let cubes = quantize(&img, 4).unwrap();
        let cfg = RunConfig {
            seed,
            population: 8,
            generations: 30,
            schedule: MutationSchedule::quadratic(),
            neoteny: Some(
                NeotenyConfig::new(Window::new(1, 5).unwrap(), Window::new(10, 29).unwrap(), e)
                    .unwrap()
                    .with_companion(companion),
            ),
            ..RunConfig::default()
        };
        let r = run_on_cubes(cubes.cubes(), &cfg).unwrap();
        prop_assert_eq!(r.stats.len(), 30);
        prop_assert_eq!(r.archive.len(), 5);
        for s in &r.stats {
            prop_assert!(s.injected <= 8);
            prop_assert!(s.mean_fitness <= s.best_fitness);
            if s.g < 10 {
                prop_assert_eq!(s.injected, 0);
            }
        }
        let j = objective_j(cubes.cubes(), &r.best.chromosome.decode());
        prop_assert_eq!(r.best.j, j);
        prop_assert_eq!(r.best.fitness, r.final_best());
    }
}
