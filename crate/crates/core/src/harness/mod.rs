//! Experiment plumbing: configs and presets, run matrices, strategy tables,
//! initial-population reports and schedule curves.

pub mod aggregate;
pub mod config;
pub mod matrix;
pub mod report;

pub use aggregate::{aggregate_strategies, Grouping, StrategyTable};
pub use config::{parse_config, parse_config_with, preset, ExperimentSpec};
pub use matrix::{execute, parse_summary_csv, run_matrix, summary_csv, SummaryRow};
pub use report::{comparison_schedules, emit_schedule_curves, init_pop_report};
