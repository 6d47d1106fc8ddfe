use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use neoseg::harness::{self, config, Grouping};
use neoseg::quantize::quantize;
use neoseg::raster::write_ppm;
use neoseg::synth::synth_image;
use neoseg::{Error, Result};

#[derive(Parser)]
#[command(name = "neoseg", version, about = "GA colour segmentation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixPreset {
    /// the 38-run study, generations and windows multiplied by --scale
    Table1,
    /// every strategy × the five study seeds at --generations
    Table2,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single configuration.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Config keys as `key=value` or `--key=value`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        settings: Vec<String>,
    },
    /// Run every section of a spec file (or a built-in matrix).
    Matrix {
        #[arg(long, conflicts_with = "preset")]
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        preset: Option<MatrixPreset>,
        #[arg(long, default_value_t = 0.1)]
        scale: f64,
        #[arg(long, default_value_t = 1500)]
        generations: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        settings: Vec<String>,
    },
    /// Strategy × seed table from one or more summary.csv files.
    Aggregate {
        #[arg(required = true)]
        summaries: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "strategy")]
        by: By,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fitness statistics of the initial population for each seed.
    InitReport {
        #[arg(long, value_delimiter = ',', default_value = "9,14,27,917,7445")]
        seeds: Vec<u64>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        settings: Vec<String>,
    },
    /// Mutation-rate curves (hyperbolic ½ and 0.15, LD, QD) as CSV.
    Schedules {
        #[arg(long, default_value_t = 200)]
        g_max: usize,
        #[arg(long, default_value_t = 531)]
        genome_len: usize,
        #[arg(long, default_value_t = 3000)]
        horizon: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic test image.
    Synth {
        #[arg(long, default_value_t = 128)]
        width: usize,
        #[arg(long, default_value_t = 128)]
        height: usize,
        #[arg(long, default_value_t = 6)]
        colors: usize,
        #[arg(long, default_value_t = 12)]
        noise: u8,
        #[arg(long, default_value_t = 9)]
        seed: u64,
        /// Write P3 instead of P6.
        #[arg(long)]
        ascii: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum By {
    Strategy,
    Schedule,
}

fn overrides(settings: &[String]) -> Result<Vec<(String, String)>> {
    settings
        .iter()
        .map(|s| {
            config::split_assignment(s)
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got {s:?}")))
        })
        .collect()
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn print_summaries(out: &harness::matrix::MatrixOutput) {
    print!("{}", harness::summary_csv(&out.summaries));
}

fn main_inner(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            config,
            preset,
            out,
            settings,
        } => {
            let mut text = match &config {
                Some(p) => fs::read_to_string(p)?,
                None => String::new(),
            };
            if let Some(p) = preset {
                text = format!("preset = {p}\n{text}");
            }
            let spec = harness::parse_config_with(&text, &overrides(&settings)?)?;
            if spec.runs.len() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "run expects one configuration, found {}; use matrix",
                    spec.runs.len()
                )));
            }
            let result = harness::run_matrix(&spec, &out)?;
            print_summaries(&result);
        }
        Command::Matrix {
            spec,
            preset,
            scale,
            generations,
            out,
            settings,
        } => {
            let text = match (spec, preset) {
                (Some(p), _) => fs::read_to_string(p)?,
                (None, Some(MatrixPreset::Table1)) => config::table1_spec_text(scale),
                (None, Some(MatrixPreset::Table2)) => {
                    config::table2_spec_text(generations, &[], &config::TABLE2_SEEDS)
                }
                (None, None) => {
                    return Err(Error::InvalidArgument("matrix needs --spec or --preset".into()))
                }
            };
            let spec = harness::parse_config_with(&text, &overrides(&settings)?)?;
            let result = harness::run_matrix(&spec, &out)?;
            print_summaries(&result);
        }
        Command::Aggregate { summaries, by, out } => {
            let mut rows = Vec::new();
            for p in &summaries {
                rows.extend(harness::parse_summary_csv(&fs::read_to_string(p)?)?);
            }
            let grouping = match by {
                By::Strategy => Grouping::Strategy,
                By::Schedule => Grouping::Schedule,
            };
            emit(&harness::aggregate_strategies(&rows, grouping)?.to_csv(), out.as_ref())?;
        }
        Command::InitReport {
            seeds,
            config,
            out,
            settings,
        } => {
            let text = match &config {
                Some(p) => fs::read_to_string(p)?,
                None => String::new(),
            };
            let spec = harness::parse_config_with(&text, &overrides(&settings)?)?;
            let cfg = &spec.runs[0].1;
            let cubes = quantize(&cfg.image.load()?, cfg.bins_per_axis)?;
            emit(&harness::init_pop_report(&seeds, cfg, cubes.cubes())?, out.as_ref())?;
        }
        Command::Schedules {
            g_max,
            genome_len,
            horizon,
            out,
        } => {
            let curves = harness::comparison_schedules(genome_len, horizon);
            emit(&harness::emit_schedule_curves(&curves, g_max)?, out.as_ref())?;
        }
        Command::Synth {
            width,
            height,
            colors,
            noise,
            seed,
            ascii,
            out,
        } => {
            let img = synth_image(width, height, colors, noise, seed)?;
            fs::write(&out, write_ppm(&img, !ascii))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("neoseg: {e}");
            ExitCode::FAILURE
        }
    }
}
