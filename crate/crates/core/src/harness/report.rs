use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ga::{init_population, summarize, PopulationSummary, RunConfig};
use crate::quantize::Cube;
use crate::schedule::MutationSchedule;

pub const INIT_REPORT_HEADER: &str = "seed,best,worst,mean,stddev,sum";

/// Fitness summary of the generation-0 population for each seed. Uses the
/// same RNG stream as a run, so rows match generation 0 of the traces.
pub fn init_pop_rows(
    seeds: &[u64],
    cfg: &RunConfig,
    cubes: &[Cube],
) -> Result<Vec<(u64, PopulationSummary)>> {
    seeds
        .iter()
        .map(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pop = init_population(&mut rng, cfg.population, cfg.bits_per_gene, cubes)?;
            Ok((seed, summarize(&pop)))
        })
        .collect()
}

pub fn init_pop_report(seeds: &[u64], cfg: &RunConfig, cubes: &[Cube]) -> Result<String> {
    let mut out = format!("{INIT_REPORT_HEADER}\n");
    for (seed, s) in init_pop_rows(seeds, cfg, cubes)? {
        writeln!(out, "{seed},{},{},{},{},{}", s.best, s.worst, s.mean, s.stddev, s.sum).unwrap();
    }
    Ok(out)
}

/// The four curves of the schedule comparison: hyperbolic from ½ and from
/// 0.15, `1/g` and `1/g²`.
pub fn comparison_schedules(genome_len: usize, horizon: usize) -> Vec<(String, MutationSchedule)> {
    vec![
        ("BACK(0.5)".into(), MutationSchedule::hyperbolic(0.5, genome_len, horizon)),
        ("BACK(0.15)".into(), MutationSchedule::hyperbolic(0.15, genome_len, horizon)),
        ("LD".into(), MutationSchedule::linear()),
        ("QD".into(), MutationSchedule::quadratic()),
    ]
}

/// `g` plus one column per schedule, for `g` in `0..=g_max`.
pub fn emit_schedule_curves(schedules: &[(String, MutationSchedule)], g_max: usize) -> Result<String> {
    for (_, s) in schedules {
        s.validate()?;
    }
    let mut out = String::from("g");
    for (name, _) in schedules {
        write!(out, ",{name}").unwrap();
    }
    out.push('\n');
    for g in 0..=g_max {
        write!(out, "{g}").unwrap();
        for (_, s) in schedules {
            write!(out, ",{}", s.rate(g)?).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(csv: &str, name: &str) -> Vec<f64> {
        let mut lines = csv.lines();
        let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
        lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
    }

    #[test]
    fn schedule_curve_values() {
        let csv = emit_schedule_curves(&comparison_schedules(531, 3000), 200).unwrap();
        assert_eq!(csv.lines().count(), 202);
        assert!(csv.starts_with("g,BACK(0.5),BACK(0.15),LD,QD\n"));
        let ld = column(&csv, "LD");
        let qd = column(&csv, "QD");
        let b = column(&csv, "BACK(0.5)");
        assert_eq!(ld[100], MutationSchedule::linear().rate(100).unwrap());
        assert!((ld[100] - 0.0015).abs() < 1e-15);
        assert_eq!(b[0], 0.5);
        for g in 1..=200 {
            assert!(qd[g] <= ld[g]);
        }
    }

    #[test]
    fn schedule_curves_reject_bad_schedule() {
        let bad = vec![("x".to_string(), MutationSchedule::hyperbolic(0.5, 531, 100))];
        assert!(emit_schedule_curves(&bad, 200).is_err());
    }

    #[test]
    fn init_report_rows() {
        let cubes: Vec<Cube> = (0..20).map(|i| Cube::new([i as f64 * 12.0, 0.0, 5.0], 3)).collect();
        let cfg = RunConfig::default();
        let rows = init_pop_rows(&[9], &cfg, &cubes).unwrap();
        assert_eq!(rows.len(), 1);
        let s = rows[0].1;
        assert!(((s.sum - 100.0 * s.mean) / s.sum).abs() < 1e-6);
        let a = init_pop_report(&[9, 9], &cfg, &cubes).unwrap();
        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines[0], INIT_REPORT_HEADER);
        assert_eq!(lines[1], lines[2]);
    }
}
