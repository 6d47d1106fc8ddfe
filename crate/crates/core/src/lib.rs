//! Genetic-algorithm colour image segmentation.
//!
//! An image is quantized into colour cubes; a chromosome assigns every cube a
//! cluster label with `b` bits per gene, and fitness is `10⁹ / J` for the
//! pixel-weighted K-means squared error `J`. The GA uses roulette selection on
//! window-scaled fitness, one-point crossover and bit-flip mutation whose rate
//! follows a constant, `1/g`, `1/g²` or hyperbolic schedule. Optionally, the
//! best individual of each early generation is archived and thrown back into
//! late generations (neotenic reinjection).
//!
//! ```
//! use neoseg::{ga, schedule::MutationSchedule};
//!
//! let cfg = ga::RunConfig {
//!     population: 20,
//!     generations: 30,
//!     schedule: MutationSchedule::linear(),
//!     ..Default::default()
//! };
//! let run = ga::run(&cfg).unwrap();
//! assert_eq!(run.result.stats.len(), 30);
//! ```

pub mod error;
pub mod ga;
pub mod genome;
pub mod harness;
pub mod neoteny;
pub mod objective;
pub mod oracle;
pub mod quantize;
pub mod raster;
pub mod schedule;
pub mod synth;

pub use error::{Error, Result};
