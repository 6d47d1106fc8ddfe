//! Executes an [`ExperimentSpec`] and writes its result files.
//!
//! Layout under the output directory:
//!
//! ```text
//! summary.csv               one row per run
//! timing.csv                wall-clock seconds per generation (not deterministic)
//! traces/<id>.csv           per-generation statistics
//! segmented/<id>.ppm        best assignment rendered (P6)
//! archive/<id>.bits         captured chromosomes, one per line (neoteny only)
//! archive/<id>.csv          capture_generation,fitness (neoteny only)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ga::{run_on_cubes, write_trace_csv, RunConfig, RunResult};
use crate::harness::config::ExperimentSpec;
use crate::objective::render_segmentation;
use crate::quantize::quantize;
use crate::raster::{write_ppm, RasterImage};
use crate::schedule::MutationSchedule;

pub const SUMMARY_HEADER: &str = "test_id,seed,T,pc,schedule,E,capture,throw,final_best_fitness";

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub test_id: String,
    pub seed: u64,
    pub generations: usize,
    pub crossover: f64,
    pub schedule: String,
    /// Mean injections; `0` without neoteny, `+R` suffix with a random companion.
    pub injections: String,
    pub capture: String,
    pub throw: String,
    pub final_best_fitness: f64,
}

impl SummaryRow {
    pub fn new(test_id: &str, cfg: &RunConfig, final_best_fitness: f64) -> Self {
        let schedule = match cfg.schedule {
            MutationSchedule::Hyperbolic { p0, .. } => format!("B[{p0}]"),
            s => s.kind().to_string(),
        };
        let (injections, capture, throw) = match &cfg.neoteny {
            Some(n) => (
                format!(
                    "{}{}",
                    n.mean_injections,
                    if n.with_random_companion { "+R" } else { "" }
                ),
                n.capture.to_string(),
                n.throw.to_string(),
            ),
            None => ("0".into(), "-".into(), "-".into()),
        };
        Self {
            test_id: test_id.into(),
            seed: cfg.seed,
            generations: cfg.generations,
            crossover: cfg.crossover,
            schedule,
            injections,
            capture,
            throw,
            final_best_fitness,
        }
    }

    /// Schedule, `/N` with neoteny and `+R` with a random companion.
    pub fn strategy(&self) -> String {
        let mut s = self.schedule.clone();
        if self.capture != "-" {
            s.push_str("/N");
        }
        if self.injections.ends_with("+R") {
            s.push_str("+R");
        }
        s
    }

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.test_id,
            self.seed,
            self.generations,
            self.crossover,
            self.schedule,
            self.injections,
            self.capture,
            self.throw,
            self.final_best_fitness
        )
    }
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{SUMMARY_HEADER}").unwrap();
    for r in rows {
        writeln!(out, "{}", r.to_csv_line()).unwrap();
    }
    out
}

pub fn parse_summary_csv(text: &str) -> Result<Vec<SummaryRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == SUMMARY_HEADER => {}
        _ => return Err(Error::Aggregate(format!("summary must start with {SUMMARY_HEADER:?}"))),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let bad = |what: &str| Error::Aggregate(format!("line {}: bad {what}", i + 1));
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 9 {
                return Err(bad("column count"));
            }
            Ok(SummaryRow {
                test_id: f[0].into(),
                seed: f[1].parse().map_err(|_| bad("seed"))?,
                generations: f[2].parse().map_err(|_| bad("T"))?,
                crossover: f[3].parse().map_err(|_| bad("pc"))?,
                schedule: f[4].into(),
                injections: f[5].into(),
                capture: f[6].into(),
                throw: f[7].into(),
                final_best_fitness: f[8].parse().map_err(|_| bad("fitness"))?,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub id: String,
    pub config: RunConfig,
    pub result: RunResult,
    pub segmented: RasterImage,
}

#[derive(Debug, Clone)]
pub struct MatrixOutput {
    pub runs: Vec<RunOutput>,
    pub summaries: Vec<SummaryRow>,
}

/// Runs every configuration (in parallel) on the spec's shared cube set.
pub fn execute(spec: &ExperimentSpec) -> Result<MatrixOutput> {
    let image = spec.image().load()?;
    let cubes = quantize(&image, spec.bins_per_axis())?;
    let runs = spec
        .runs
        .par_iter()
        .map(|(id, cfg)| {
            let result = run_on_cubes(cubes.cubes(), cfg)?;
            let segmented = render_segmentation(&image, &cubes, &result.best.chromosome.decode());
            Ok(RunOutput {
                id: id.clone(),
                config: cfg.clone(),
                result,
                segmented,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summaries = runs
        .iter()
        .map(|r| SummaryRow::new(&r.id, &r.config, r.result.final_best()))
        .collect();
    Ok(MatrixOutput { runs, summaries })
}

pub fn write_outputs(out: &MatrixOutput, dir: &Path) -> Result<()> {
    for sub in ["traces", "segmented"] {
        fs::create_dir_all(dir.join(sub))?;
    }
    fs::write(dir.join("summary.csv"), summary_csv(&out.summaries))?;

    let mut timing = String::from("test_id,generations,cubes,seconds_per_generation\n");
    for r in &out.runs {
        let mut trace = Vec::new();
        write_trace_csv(&r.result.stats, &mut trace)?;
        fs::write(dir.join("traces").join(format!("{}.csv", r.id)), trace)?;
        fs::write(
            dir.join("segmented").join(format!("{}.ppm", r.id)),
            write_ppm(&r.segmented, true),
        )?;
        if r.config.neoteny.is_some() {
            fs::create_dir_all(dir.join("archive"))?;
            let mut bits = Vec::new();
            r.result.archive.write_chromosomes(&mut bits)?;
            fs::write(dir.join("archive").join(format!("{}.bits", r.id)), bits)?;
            let mut idx = Vec::new();
            r.result.archive.write_index_csv(&mut idx)?;
            fs::write(dir.join("archive").join(format!("{}.csv", r.id)), idx)?;
        }
        writeln!(
            timing,
            "{},{},{},{:.6}",
            r.id,
            r.result.stats.len(),
            r.result.cube_count,
            r.result.seconds_per_generation()
        )
        .unwrap();
    }
    fs::write(dir.join("timing.csv"), timing)?;
    Ok(())
}

pub fn run_matrix(spec: &ExperimentSpec, dir: &Path) -> Result<MatrixOutput> {
    let out = execute(spec)?;
    write_outputs(&out, dir)?;
    Ok(out)
}
