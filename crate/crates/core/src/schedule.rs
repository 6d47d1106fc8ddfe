//! Per-generation mutation probability schedules.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_P0: f64 = 0.15;
pub const DEFAULT_SWITCH_G: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MutationSchedule {
    /// `p0` at every generation.
    Constant { p0: f64 },
    /// `p0` at g = 0, `p0 / g` up to `switch_g`, then frozen at `p0 / switch_g`.
    LinearDecay { p0: f64, switch_g: usize },
    /// `p0` at g = 0, `p0 / g²` up to `switch_g`, then frozen at `p0 / switch_g²`.
    QuadraticDecay { p0: f64, switch_g: usize },
    /// Hyperbolic decay `1 / (a + b·g)` from `p0` at g = 0 to `1 / genome_len`
    /// at g = `horizon − 1`, with `a = 1/p0` and `b = (genome_len − a) / (horizon − 1)`.
    Hyperbolic {
        p0: f64,
        genome_len: usize,
        horizon: usize,
    },
}

impl MutationSchedule {
    pub fn constant() -> Self {
        Self::Constant { p0: DEFAULT_P0 }
    }

    pub fn linear() -> Self {
        Self::LinearDecay {
            p0: DEFAULT_P0,
            switch_g: DEFAULT_SWITCH_G,
        }
    }

    pub fn quadratic() -> Self {
        Self::QuadraticDecay {
            p0: DEFAULT_P0,
            switch_g: DEFAULT_SWITCH_G,
        }
    }

    pub fn hyperbolic(p0: f64, genome_len: usize, horizon: usize) -> Self {
        Self::Hyperbolic {
            p0,
            genome_len,
            horizon,
        }
    }

    pub fn p0(&self) -> f64 {
        match *self {
            Self::Constant { p0 }
            | Self::LinearDecay { p0, .. }
            | Self::QuadraticDecay { p0, .. }
            | Self::Hyperbolic { p0, .. } => p0,
        }
    }

    /// Short family tag: `C`, `LD`, `QD` or `BACK`.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Constant { .. } => "C",
            Self::LinearDecay { .. } => "LD",
            Self::QuadraticDecay { .. } => "QD",
            Self::Hyperbolic { .. } => "BACK",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p0 = self.p0();
        if !(p0 > 0.0 && p0 <= 1.0) {
            return Err(Error::Schedule(format!("p0 = {p0} not in (0,1]")));
        }
        match *self {
            Self::Constant { .. } => {}
            Self::LinearDecay { switch_g, .. } | Self::QuadraticDecay { switch_g, .. } => {
                if switch_g == 0 {
                    return Err(Error::Schedule("switch_g must be at least 1".into()));
                }
            }
            Self::Hyperbolic {
                genome_len,
                horizon,
                ..
            } => {
                if horizon < 2 {
                    return Err(Error::Schedule(format!(
                        "horizon T = {horizon} must be at least 2"
                    )));
                }
                if 1.0 / p0 > genome_len as f64 {
                    return Err(Error::Schedule(format!(
                        "1/p0 = {} exceeds genome length {genome_len}",
                        1.0 / p0
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rate(&self, g: usize) -> Result<f64> {
        if self.p0() <= 0.0 {
            return Err(Error::Schedule(format!("p0 = {} must be positive", self.p0())));
        }
        Ok(match *self {
            Self::Constant { p0 } => p0,
            Self::LinearDecay { p0, switch_g } => match g {
                0 => p0,
                g => p0 / g.min(switch_g) as f64,
            },
            Self::QuadraticDecay { p0, switch_g } => match g {
                0 => p0,
                g => {
                    let g = g.min(switch_g) as f64;
                    p0 / (g * g)
                }
            },
            Self::Hyperbolic {
                p0,
                genome_len,
                horizon,
            } => {
                if g >= horizon {
                    return Err(Error::GenerationOutOfRange { g, horizon });
                }
                let a = 1.0 / p0;
                let b = (genome_len as f64 - a) / (horizon - 1) as f64;
                1.0 / (a + b * g as f64)
            }
        })
    }
}

impl fmt::Display for MutationSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hyperbolic { p0, .. } => write!(f, "BACK[{p0}]"),
            other => f.write_str(other.kind()),
        }
    }
}
