//! Neotenic reinjection: the best individual of each early generation is
//! archived, and archived genotypes are later thrown back into the offspring
//! population in place of randomly chosen members.

use std::io::Write;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ga::Individual;
use crate::genome::{random_chromosome, Chromosome};

/// Inclusive generation interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub end: usize,
}

impl Window {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start > end {
            return Err(Error::InvalidArgument(format!(
                "window [{start},{end}] is empty"
            )));
        }
        Ok(Self { start, end })
    }

    pub fn contains(&self, g: usize) -> bool {
        (self.start..=self.end).contains(&g)
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{};{}]", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeotenyConfig {
    pub capture: Window,
    pub throw: Window,
    /// Average number of archived individuals thrown in per throw generation.
    pub mean_injections: f64,
    /// Pair every neotenic injection with a freshly randomised individual.
    pub with_random_companion: bool,
    /// Never overwrite slot 0 (where a carried-over elite lives).
    pub protect_best: bool,
}

impl NeotenyConfig {
    pub fn new(capture: Window, throw: Window, mean_injections: f64) -> Result<Self> {
        let cfg = Self {
            capture,
            throw,
            mean_injections,
            with_random_companion: false,
            protect_best: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_companion(mut self, on: bool) -> Self {
        self.with_random_companion = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.capture.start > self.capture.end || self.throw.start > self.throw.end {
            return Err(Error::InvalidArgument("empty neoteny window".into()));
        }
        if self.capture.end >= self.throw.start {
            return Err(Error::InvalidArgument(format!(
                "capture window {} must end before throw window {} starts",
                self.capture, self.throw
            )));
        }
        if !(self.mean_injections >= 0.0 && self.mean_injections.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "mean injections E = {} must be finite and non-negative",
                self.mean_injections
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub chromosome: Chromosome,
    pub generation: usize,
    pub fitness: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Archive {
    entries: Vec<ArchiveEntry>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Injection {
    pub neotenic: usize,
    pub random: usize,
}

impl Injection {
    pub fn total(&self) -> usize {
        self.neotenic + self.random
    }
}

impl Archive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Archives a copy of the fittest member (lowest index on ties) when `g`
    /// is inside the capture window. Returns whether anything was stored.
    pub fn maybe_capture(&mut self, g: usize, window: Window, population: &[Individual]) -> bool {
        if !window.contains(g) || self.entries.last().is_some_and(|e| e.generation == g) {
            return false;
        }
        let Some(best) = population
            .iter()
            .reduce(|best, x| if x.fitness > best.fitness { x } else { best })
        else {
            return false;
        };
        self.entries.push(ArchiveEntry {
            chromosome: best.chromosome.clone(),
            generation: g,
            fitness: best.fitness,
        });
        true
    }

    /// One chromosome bit string per line.
    pub fn write_chromosomes<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for e in &self.entries {
            writeln!(w, "{}", e.chromosome)?;
        }
        Ok(())
    }

    /// Sidecar CSV with `capture_generation,fitness` rows.
    pub fn write_index_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "capture_generation,fitness")?;
        for e in &self.entries {
            writeln!(w, "{},{}", e.generation, e.fitness)?;
        }
        Ok(())
    }
}

/// `floor(E)` plus one more with probability `E − floor(E)`.
pub fn injection_count<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> usize {
    let whole = mean.floor();
    let frac = mean - whole;
    whole as usize + usize::from(frac > 0.0 && rng.gen_bool(frac))
}

/// Overwrites offspring slots with archived (and optionally random)
/// chromosomes. Slots are drawn without replacement inside one call; archive
/// entries are drawn with replacement. If the population cannot absorb all
/// `k` injections the count is truncated to what fits.
pub fn inject<R: Rng + ?Sized>(
    rng: &mut R,
    offspring: &mut [Chromosome],
    archive: &Archive,
    g: usize,
    config: &NeotenyConfig,
) -> Result<Injection> {
    if archive.is_empty() {
        return Err(Error::EmptyArchive(g));
    }
    let first_free = usize::from(config.protect_best);
    let mut free: Vec<usize> = (first_free..offspring.len()).collect();
    let per_injection = 1 + usize::from(config.with_random_companion);
    let k = injection_count(rng, config.mean_injections).min(free.len() / per_injection);

    let mut done = Injection::default();
    for _ in 0..k {
        let entry = &archive.entries[rng.gen_range(0..archive.len())];
        let slot = free.swap_remove(rng.gen_range(0..free.len()));
        offspring[slot] = entry.chromosome.clone();
        done.neotenic += 1;
        if config.with_random_companion {
            let slot = free.swap_remove(rng.gen_range(0..free.len()));
            let c = &entry.chromosome;
            offspring[slot] = random_chromosome(rng, c.len(), c.bits_per_gene())?;
            done.random += 1;
        }
    }
    Ok(done)
}
