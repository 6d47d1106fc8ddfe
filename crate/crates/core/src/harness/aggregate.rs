//! Strategy × seed tables with row and column means.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::harness::matrix::SummaryRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Grouping {
    /// Schedule plus `/N` and `+R` markers.
    #[default]
    Strategy,
    /// Schedule only.
    Schedule,
}

impl Grouping {
    fn key(&self, row: &SummaryRow) -> String {
        match self {
            Self::Strategy => row.strategy(),
            Self::Schedule => row.schedule.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyTable {
    pub strategies: Vec<String>,
    pub seeds: Vec<u64>,
    /// `cells[strategy][seed]`
    pub cells: Vec<Vec<f64>>,
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    sum / n as f64
}

impl StrategyTable {
    pub fn strategy_mean(&self, i: usize) -> f64 {
        mean(self.cells[i].iter().copied())
    }

    pub fn seed_mean(&self, j: usize) -> f64 {
        mean(self.cells.iter().map(|row| row[j]))
    }

    pub fn overall_mean(&self) -> f64 {
        mean(self.cells.iter().flatten().copied())
    }

    pub fn mean_of(&self, strategy: &str) -> Option<f64> {
        let i = self.strategies.iter().position(|s| s == strategy)?;
        Some(self.strategy_mean(i))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("strategy");
        for s in &self.seeds {
            write!(out, ",R={s}").unwrap();
        }
        out.push_str(",average\n");
        for (i, name) in self.strategies.iter().enumerate() {
            out.push_str(name);
            for v in &self.cells[i] {
                write!(out, ",{v}").unwrap();
            }
            writeln!(out, ",{}", self.strategy_mean(i)).unwrap();
        }
        out.push_str("average");
        for j in 0..self.seeds.len() {
            write!(out, ",{}", self.seed_mean(j)).unwrap();
        }
        writeln!(out, ",{}", self.overall_mean()).unwrap();
        out
    }
}

/// Groups final best fitness by strategy (rows, first-appearance order) and
/// seed (columns). Every cell must be filled exactly once.
pub fn aggregate_strategies(rows: &[SummaryRow], grouping: Grouping) -> Result<StrategyTable> {
    let mut strategies: Vec<String> = Vec::new();
    let mut seeds: Vec<u64> = Vec::new();
    for r in rows {
        let k = grouping.key(r);
        if !strategies.contains(&k) {
            strategies.push(k);
        }
        if !seeds.contains(&r.seed) {
            seeds.push(r.seed);
        }
    }
    if strategies.is_empty() {
        return Err(Error::Aggregate("no rows".into()));
    }
    let mut cells = vec![vec![None; seeds.len()]; strategies.len()];
    for r in rows {
        let k = grouping.key(r);
        let i = strategies.iter().position(|s| *s == k).unwrap();
        let j = seeds.iter().position(|&s| s == r.seed).unwrap();
        if cells[i][j].replace(r.final_best_fitness).is_some() {
            return Err(Error::Aggregate(format!(
                "more than one run for strategy {k} and seed {}",
                r.seed
            )));
        }
    }
    let cells = cells
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, c)| {
                    c.ok_or_else(|| {
                        Error::Aggregate(format!(
                            "missing cell: strategy {} seed {}",
                            strategies[i], seeds[j]
                        ))
                    })
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StrategyTable {
        strategies,
        seeds,
        cells,
    })
}
