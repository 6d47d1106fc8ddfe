//! Generational GA over cube-labelling chromosomes.
//!
//! Each generation: record statistics, let the neoteny archive capture, breed
//! `P/2` pairs by roulette selection on window-scaled fitness, one-point
//! crossover and bit-flip mutation, optionally carry the elite, throw in
//! archived individuals, then evaluate and replace the whole population.
//!
//! All randomness comes from one ChaCha8 stream seeded with the run seed and
//! is consumed in a fixed order: initial population bits; then per
//! generation the selection draws, crossover coin and cut point, and mutation
//! coins of child A then child B for each pair; then injection count, archive
//! pick, slot pick and companion bits for each injection.

use std::collections::VecDeque;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::genome::{random_chromosome, Chromosome};
use crate::neoteny::{inject, Archive, Injection, NeotenyConfig};
use crate::objective::{evaluate, render_segmentation};
use crate::quantize::{quantize, Cube, CubeSet};
use crate::raster::{read_ppm, RasterImage};
use crate::schedule::MutationSchedule;
use crate::synth::synth_image;

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub fitness: f64,
    pub j: f64,
}

impl Individual {
    pub fn evaluated(chromosome: Chromosome, cubes: &[Cube]) -> Self {
        let report = evaluate(cubes, &chromosome.decode());
        Self {
            chromosome,
            fitness: report.fitness,
            j: report.j,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationStats {
    pub g: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    /// Population standard deviation (divisor `P`).
    pub stddev_fitness: f64,
    pub pm: f64,
    pub injected: usize,
}

pub const TRACE_HEADER: &str = "generation,best_fitness,mean_fitness,stddev_fitness,pm,injected";

pub fn write_trace_csv<W: Write>(stats: &[GenerationStats], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for s in stats {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            s.g, s.best_fitness, s.mean_fitness, s.stddev_fitness, s.pm, s.injected
        )?;
    }
    Ok(())
}

/// Best / worst / mean / standard deviation / sum of a population's fitness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationSummary {
    pub best: f64,
    pub worst: f64,
    pub mean: f64,
    pub stddev: f64,
    pub sum: f64,
}

pub fn summarize(population: &[Individual]) -> PopulationSummary {
    let n = population.len() as f64;
    let (mut best, mut worst, mut sum) = (f64::NEG_INFINITY, f64::INFINITY, 0.0);
    for ind in population {
        best = best.max(ind.fitness);
        worst = worst.min(ind.fitness);
        sum += ind.fitness;
    }
    let mean = (sum / n).clamp(worst, best);
    let var = population
        .iter()
        .map(|i| (i.fitness - mean).powi(2))
        .sum::<f64>()
        / n;
    PopulationSummary {
        best,
        worst,
        mean,
        stddev: var.sqrt(),
        sum,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ImageSource {
    Synthetic {
        width: usize,
        height: usize,
        colors: usize,
        noise: u8,
        seed: u64,
    },
    File(PathBuf),
}

impl Default for ImageSource {
    fn default() -> Self {
        Self::Synthetic {
            width: 128,
            height: 128,
            colors: 6,
            noise: 12,
            seed: 9,
        }
    }
}

impl ImageSource {
    pub fn load(&self) -> Result<RasterImage> {
        match self {
            Self::Synthetic {
                width,
                height,
                colors,
                noise,
                seed,
            } => synth_image(*width, *height, *colors, *noise, *seed),
            Self::File(path) => read_ppm(&std::fs::read(path)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub population: usize,
    pub generations: usize,
    pub crossover: f64,
    /// For `Hyperbolic`, `genome_len == 0` means the instance's `m·b` and
    /// `horizon == 0` means `generations`.
    pub schedule: MutationSchedule,
    pub neoteny: Option<NeotenyConfig>,
    pub image: ImageSource,
    pub bins_per_axis: u16,
    pub bits_per_gene: u32,
    /// Number of generations whose minimum fitness feeds the scaling window.
    pub window: usize,
    /// Copy the current best unchanged into offspring slot 0.
    pub elitism: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 9,
            population: 100,
            generations: 3000,
            crossover: 0.8,
            schedule: MutationSchedule::linear(),
            neoteny: None,
            image: ImageSource::default(),
            bins_per_axis: 8,
            bits_per_gene: 3,
            window: 1,
            elitism: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.population < 2 || !self.population.is_multiple_of(2) {
            return bad(format!("population {} must be even and ≥ 2", self.population));
        }
        if self.generations == 0 {
            return bad("generations must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.crossover) {
            return bad(format!("crossover probability {} not in [0,1]", self.crossover));
        }
        if self.window == 0 {
            return bad("scaling window must be at least 1".into());
        }
        if !(1..=16).contains(&self.bits_per_gene) {
            return bad(format!("bits_per_gene {} not in [1,16]", self.bits_per_gene));
        }
        if let Some(n) = &self.neoteny {
            n.validate()?;
        }
        match self.schedule {
            // placeholders are only resolved once the instance is known
            MutationSchedule::Hyperbolic {
                p0,
                genome_len: 0,
                ..
            } if !(p0 > 0.0 && p0 <= 1.0) => {
                Err(Error::Schedule(format!("p0 = {p0} not in (0,1]")))
            }
            MutationSchedule::Hyperbolic { genome_len: 0, .. } => Ok(()),
            _ => self.resolve_schedule(0).validate(),
        }
    }

    pub fn resolve_schedule(&self, genome_len: usize) -> MutationSchedule {
        match self.schedule {
            MutationSchedule::Hyperbolic {
                p0,
                genome_len: n,
                horizon,
            } => MutationSchedule::Hyperbolic {
                p0,
                genome_len: if n == 0 { genome_len } else { n },
                horizon: if horizon == 0 { self.generations } else { horizon },
            },
            s => s,
        }
    }
}

/// `f_i − window_min`, floored at zero.
pub fn window_scale(fitnesses: &[f64], window_min: f64) -> Vec<f64> {
    fitnesses.iter().map(|&f| (f - window_min).max(0.0)).collect()
}

/// Selection probabilities implied by roulette weights; uniform when the
/// weights sum to zero.
pub fn selection_probabilities(weights: &[f64]) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    if total > 0.0 && total.is_finite() {
        weights.iter().map(|w| w / total).collect()
    } else {
        vec![1.0 / weights.len() as f64; weights.len()]
    }
}

/// Cumulative roulette wheel.
#[derive(Debug, Clone)]
pub struct Roulette {
    cumulative: Vec<f64>,
}

impl Roulette {
    pub fn new(weights: &[f64]) -> Self {
        let mut acc = 0.0;
        let cumulative = weights
            .iter()
            .map(|&w| {
                acc += w.max(0.0);
                acc
            })
            .collect();
        Self { cumulative }
    }

    pub fn spin<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let n = self.cumulative.len();
        let total = *self.cumulative.last().expect("empty roulette");
        if !(total > 0.0 && total.is_finite()) {
            return rng.gen_range(0..n);
        }
        let r = rng.gen::<f64>() * total;
        self.cumulative.partition_point(|&c| c <= r).min(n - 1)
    }
}

/// Two independent roulette draws; the same index may come up twice.
pub fn select_pair<R: Rng + ?Sized>(rng: &mut R, wheel: &Roulette) -> (usize, usize) {
    let a = wheel.spin(rng);
    let b = wheel.spin(rng);
    (a, b)
}

/// Children `a[..k] + b[k..]` and `b[..k] + a[..k]`.
pub fn crossover_at(a: &Chromosome, b: &Chromosome, k: usize) -> (Chromosome, Chromosome) {
    let mut x = a.clone();
    let mut y = b.clone();
    x.bits_mut()[k..].copy_from_slice(&b.bits()[k..]);
    y.bits_mut()[k..].copy_from_slice(&a.bits()[k..]);
    (x, y)
}

/// With probability `p_c` cuts both parents at a uniform point in `[1, n−1]`
/// and swaps tails; otherwise returns copies. Strings shorter than two bits
/// have no cut point and are always copied.
pub fn one_point_crossover<R: Rng + ?Sized>(
    rng: &mut R,
    a: &Chromosome,
    b: &Chromosome,
    p_c: f64,
) -> Result<(Chromosome, Chromosome)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if rng.gen_bool(p_c) && a.len() >= 2 {
        let k = rng.gen_range(1..a.len());
        Ok(crossover_at(a, b, k))
    } else {
        Ok((a.clone(), b.clone()))
    }
}

/// Flips each bit independently with probability `pm`.
pub fn mutate<R: Rng + ?Sized>(rng: &mut R, c: &mut Chromosome, pm: f64) {
    for bit in c.bits_mut() {
        if rng.gen::<f64>() < pm {
            *bit = !*bit;
        }
    }
}

pub fn init_population<R: Rng + ?Sized>(
    rng: &mut R,
    size: usize,
    bits_per_gene: u32,
    cubes: &[Cube],
) -> Result<Vec<Individual>> {
    let n = cubes.len() * bits_per_gene as usize;
    (0..size)
        .map(|_| Ok(Individual::evaluated(random_chromosome(rng, n, bits_per_gene)?, cubes)))
        .collect()
}

/// A GA run in progress over a fixed set of cubes.
pub struct Engine<'a> {
    cubes: &'a [Cube],
    cfg: RunConfig,
    schedule: MutationSchedule,
    rng: ChaCha8Rng,
    population: Vec<Individual>,
    archive: Archive,
    recent_minima: VecDeque<f64>,
    g: usize,
}

impl<'a> Engine<'a> {
    pub fn new(cubes: &'a [Cube], cfg: &RunConfig) -> Result<Self> {
        cfg.validate()?;
        if cubes.is_empty() {
            return Err(Error::InvalidArgument("no cubes to cluster".into()));
        }
        let schedule = cfg.resolve_schedule(cubes.len() * cfg.bits_per_gene as usize);
        schedule.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let population = init_population(&mut rng, cfg.population, cfg.bits_per_gene, cubes)?;
        Ok(Self {
            cubes,
            cfg: cfg.clone(),
            schedule,
            rng,
            population,
            archive: Archive::new(),
            recent_minima: VecDeque::with_capacity(cfg.window),
            g: 0,
        })
    }

    pub fn generation(&self) -> usize {
        self.g
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    pub fn schedule(&self) -> MutationSchedule {
        self.schedule
    }

    fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, ind) in self.population.iter().enumerate() {
            if ind.fitness > self.population[best].fitness {
                best = i;
            }
        }
        best
    }

    /// Records statistics for the current population and breeds its
    /// successor.
    pub fn step(&mut self) -> Result<GenerationStats> {
        let g = self.g;
        let pm = self.schedule.rate(g)?;
        let summary = summarize(&self.population);

        if let Some(n) = &self.cfg.neoteny {
            self.archive.maybe_capture(g, n.capture, &self.population);
        }

        if self.recent_minima.len() == self.cfg.window {
            self.recent_minima.pop_front();
        }
        self.recent_minima.push_back(summary.worst);
        let window_min = self.recent_minima.iter().copied().fold(f64::INFINITY, f64::min);
        let fitnesses: Vec<f64> = self.population.iter().map(|i| i.fitness).collect();
        let wheel = Roulette::new(&window_scale(&fitnesses, window_min));

        let mut offspring = Vec::with_capacity(self.cfg.population);
        for _ in 0..self.cfg.population / 2 {
            let (i, j) = select_pair(&mut self.rng, &wheel);
            let (mut a, mut b) = one_point_crossover(
                &mut self.rng,
                &self.population[i].chromosome,
                &self.population[j].chromosome,
                self.cfg.crossover,
            )?;
            mutate(&mut self.rng, &mut a, pm);
            mutate(&mut self.rng, &mut b, pm);
            offspring.push(a);
            offspring.push(b);
        }

        if self.cfg.elitism {
            offspring[0] = self.population[self.best_index()].chromosome.clone();
        }

        let mut injected = Injection::default();
        if let Some(n) = &self.cfg.neoteny {
            if n.throw.contains(g) {
                injected = inject(&mut self.rng, &mut offspring, &self.archive, g, n)?;
            }
        }

        self.population = offspring
            .into_iter()
            .map(|c| Individual::evaluated(c, self.cubes))
            .collect();
        #[cfg(debug_assertions)]
        self.spot_check();
        self.g += 1;

        Ok(GenerationStats {
            g,
            best_fitness: summary.best,
            mean_fitness: summary.mean,
            stddev_fitness: summary.stddev,
            pm,
            injected: injected.total(),
        })
    }

    #[cfg(debug_assertions)]
    fn spot_check(&self) {
        let ind = &self.population[self.g % self.population.len()];
        let a = ind.chromosome.decode();
        let j = crate::oracle::reference_j(self.cubes, a.labels(), a.label_space());
        let scale = j.abs().max(ind.j.abs());
        assert!(
            scale == 0.0 || (j - ind.j).abs() <= 1e-9 * scale,
            "stored J {} disagrees with recomputation {j}",
            ind.j
        );
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub stats: Vec<GenerationStats>,
    pub best: Individual,
    pub best_generation: usize,
    pub archive: Archive,
    pub cube_count: usize,
    pub elapsed: Duration,
}

impl RunResult {
    pub fn final_best(&self) -> f64 {
        self.best.fitness
    }

    pub fn seconds_per_generation(&self) -> f64 {
        self.elapsed.as_secs_f64() / self.stats.len().max(1) as f64
    }
}

/// Runs `generations` steps, tracking the first individual to attain the
/// highest recorded fitness.
pub fn run_on_cubes(cubes: &[Cube], cfg: &RunConfig) -> Result<RunResult> {
    let start = Instant::now();
    let mut engine = Engine::new(cubes, cfg)?;
    let mut stats = Vec::with_capacity(cfg.generations);
    let mut best: Option<(Individual, usize)> = None;
    for _ in 0..cfg.generations {
        let idx = engine.best_index();
        if best.as_ref().is_none_or(|(b, _)| engine.population[idx].fitness > b.fitness) {
            best = Some((engine.population[idx].clone(), engine.generation()));
        }
        stats.push(engine.step()?);
    }
    let (best, best_generation) = best.expect("at least one generation");
    Ok(RunResult {
        stats,
        best,
        best_generation,
        archive: engine.archive,
        cube_count: cubes.len(),
        elapsed: start.elapsed(),
    })
}

/// A finished run together with the image it segmented.
#[derive(Debug, Clone)]
pub struct ImageRun {
    pub result: RunResult,
    pub image: RasterImage,
    pub cubes: CubeSet,
    pub segmented: RasterImage,
}

pub fn run(cfg: &RunConfig) -> Result<ImageRun> {
    cfg.validate()?;
    let image = cfg.image.load()?;
    let cubes = quantize(&image, cfg.bins_per_axis)?;
    let result = run_on_cubes(cubes.cubes(), cfg)?;
    let segmented = render_segmentation(&image, &cubes, &result.best.chromosome.decode());
    Ok(ImageRun {
        result,
        image,
        cubes,
        segmented,
    })
}
