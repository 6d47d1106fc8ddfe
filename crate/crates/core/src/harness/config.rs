//! Plain-text experiment configuration.
//!
//! ```text
//! # shared settings
//! generations = 1500
//! synth_noise = 12
//!
//! [run LD-9]
//! schedule = LD
//! seed = 9
//!
//! [run LDN-9]
//! preset = paper-test-6
//! generations = 1500
//! throw = [750,1500]
//! ```
//!
//! Keys before the first `[run <id>]` header are shared by every run; keys in
//! a section override them. `preset = <name>` expands in place, so later keys
//! win. A file without sections describes a single run with id `run`.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::ga::{ImageSource, RunConfig};
use crate::neoteny::{NeotenyConfig, Window};
use crate::schedule::{MutationSchedule, DEFAULT_P0, DEFAULT_SWITCH_G};

pub const KEYS: &[&str] = &[
    "seed",
    "generations",
    "pc",
    "pop",
    "schedule",
    "p0",
    "switch_g",
    "back_n",
    "back_T",
    "neoteny",
    "E",
    "capture",
    "throw",
    "companion",
    "protect_best",
    "image",
    "synth_width",
    "synth_height",
    "synth_colors",
    "synth_noise",
    "synth_seed",
    "bins_per_axis",
    "bits_per_gene",
    "window",
    "elitism",
    "preset",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub runs: Vec<(String, RunConfig)>,
}

impl ExperimentSpec {
    pub fn image(&self) -> &ImageSource {
        &self.runs[0].1.image
    }

    pub fn bins_per_axis(&self) -> u16 {
        self.runs[0].1.bins_per_axis
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    C,
    Ld,
    Qd,
    Back,
}

#[derive(Debug, Clone)]
struct Draft {
    base: RunConfig,
    kind: Kind,
    p0: f64,
    switch_g: usize,
    back_n: usize,
    back_t: usize,
    neoteny: bool,
    mean_injections: f64,
    capture: (usize, usize),
    throw: (usize, usize),
    companion: bool,
    protect_best: bool,
    image: Option<PathBuf>,
    synth: (usize, usize, usize, u8, u64),
}

impl Default for Draft {
    fn default() -> Self {
        Self {
            base: RunConfig::default(),
            kind: Kind::Ld,
            p0: DEFAULT_P0,
            switch_g: DEFAULT_SWITCH_G,
            back_n: 0,
            back_t: 0,
            neoteny: false,
            mean_injections: 1.0,
            capture: (1, 100),
            throw: (1000, 3000),
            companion: false,
            protect_best: false,
            image: None,
            synth: (128, 128, 6, 12, 9),
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> std::result::Result<T, String> {
    v.parse()
        .map_err(|_| format!("cannot parse {v:?} as a value for {key}"))
}

fn flag(key: &str, v: &str) -> std::result::Result<bool, String> {
    match v.to_ascii_lowercase().as_str() {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        _ => Err(format!("cannot parse {v:?} as a flag for {key}")),
    }
}

fn interval(key: &str, v: &str) -> std::result::Result<(usize, usize), String> {
    let inner = v.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = inner.split([',', ';']).map(str::trim).collect();
    match parts[..] {
        [a, b] => Ok((num(key, a)?, num(key, b)?)),
        _ => Err(format!("{key} expects an interval like [1,100], got {v:?}")),
    }
}

impl Draft {
    fn set(&mut self, key: &str, v: &str, depth: usize) -> std::result::Result<(), String> {
        match key {
            "seed" => self.base.seed = num(key, v)?,
            "generations" => self.base.generations = num(key, v)?,
            "pc" => self.base.crossover = num(key, v)?,
            "pop" => self.base.population = num(key, v)?,
            "schedule" => {
                self.kind = match v.to_ascii_uppercase().as_str() {
                    "C" => Kind::C,
                    "LD" => Kind::Ld,
                    "QD" => Kind::Qd,
                    "BACK" | "B" => Kind::Back,
                    _ => return Err(format!("unknown schedule {v:?} (C, LD, QD, BACK)")),
                }
            }
            "p0" => self.p0 = num(key, v)?,
            "switch_g" => self.switch_g = num(key, v)?,
            "back_n" => self.back_n = num(key, v)?,
            "back_T" => self.back_t = num(key, v)?,
            "neoteny" => self.neoteny = flag(key, v)?,
            "E" => self.mean_injections = num(key, v)?,
            "capture" => self.capture = interval(key, v)?,
            "throw" => self.throw = interval(key, v)?,
            "companion" => self.companion = flag(key, v)?,
            "protect_best" => self.protect_best = flag(key, v)?,
            "image" => self.image = Some(PathBuf::from(v)),
            "synth_width" => self.synth.0 = num(key, v)?,
            "synth_height" => self.synth.1 = num(key, v)?,
            "synth_colors" => self.synth.2 = num(key, v)?,
            "synth_noise" => self.synth.3 = num(key, v)?,
            "synth_seed" => self.synth.4 = num(key, v)?,
            "bins_per_axis" => self.base.bins_per_axis = num(key, v)?,
            "bits_per_gene" => self.base.bits_per_gene = num(key, v)?,
            "window" => self.base.window = num(key, v)?,
            "elitism" => self.base.elitism = flag(key, v)?,
            "preset" => {
                if depth > 4 {
                    return Err("presets nested too deeply".into());
                }
                let pairs = preset(v).ok_or_else(|| format!("unknown preset {v:?}"))?;
                for (k, val) in pairs {
                    self.set(k, &val, depth + 1)?;
                }
            }
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    fn build(&self) -> std::result::Result<RunConfig, String> {
        let schedule = match self.kind {
            Kind::C => MutationSchedule::Constant { p0: self.p0 },
            Kind::Ld => MutationSchedule::LinearDecay {
                p0: self.p0,
                switch_g: self.switch_g,
            },
            Kind::Qd => MutationSchedule::QuadraticDecay {
                p0: self.p0,
                switch_g: self.switch_g,
            },
            Kind::Back => MutationSchedule::hyperbolic(self.p0, self.back_n, self.back_t),
        };
        let neoteny = if self.neoteny {
            let w = |(a, b): (usize, usize)| Window::new(a, b).map_err(|e| e.to_string());
            let mut n = NeotenyConfig::new(w(self.capture)?, w(self.throw)?, self.mean_injections)
                .map_err(|e| e.to_string())?
                .with_companion(self.companion);
            n.protect_best = self.protect_best;
            Some(n)
        } else {
            None
        };
        let image = match &self.image {
            Some(p) => ImageSource::File(p.clone()),
            None => {
                let (width, height, colors, noise, seed) = self.synth;
                if !(2..=8).contains(&colors) || noise > 64 || width == 0 || height == 0 {
                    return Err(format!("invalid synthetic image parameters {:?}", self.synth));
                }
                ImageSource::Synthetic {
                    width,
                    height,
                    colors,
                    noise,
                    seed,
                }
            }
        };
        if !(1..=256).contains(&self.base.bins_per_axis) {
            return Err(format!("bins_per_axis {} not in [1,256]", self.base.bins_per_axis));
        }
        let cfg = RunConfig {
            schedule,
            neoteny,
            image,
            ..self.base.clone()
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '+'))
}

/// Splits `key=value` (an optional leading `--` is ignored).
pub fn split_assignment(text: &str) -> Option<(&str, &str)> {
    let (k, v) = text.trim().trim_start_matches("--").split_once('=')?;
    Some((k.trim(), v.trim()))
}

pub fn parse_config(text: &str) -> Result<ExperimentSpec> {
    parse_config_with(text, &[])
}

/// Like [`parse_config`], with `overrides` applied last to every run.
pub fn parse_config_with(text: &str, overrides: &[(String, String)]) -> Result<ExperimentSpec> {
    let mut shared = Draft::default();
    let mut sections: Vec<(usize, String, Draft)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let id = header
                .strip_prefix("run")
                .map(str::trim)
                .filter(|id| valid_id(id))
                .ok_or_else(|| {
                    Error::config(line_no, format!("expected [run <id>] with id of [A-Za-z0-9_.+-], got {line:?}"))
                })?;
            if sections.iter().any(|(_, other, _)| other == id) {
                return Err(Error::config(line_no, format!("duplicate run id {id:?}")));
            }
            sections.push((line_no, id.to_string(), shared.clone()));
            continue;
        }
        let (key, value) = split_assignment(line)
            .ok_or_else(|| Error::config(line_no, format!("expected key = value, got {line:?}")))?;
        let target = match sections.last_mut() {
            Some((_, _, d)) => d,
            None => &mut shared,
        };
        target
            .set(key, value, 0)
            .map_err(|m| Error::config(line_no, m))?;
    }

    if sections.is_empty() {
        sections.push((0, "run".into(), shared));
    }
    let mut runs = Vec::with_capacity(sections.len());
    for (line_no, id, mut draft) in sections {
        for (k, v) in overrides {
            draft
                .set(k, v, 0)
                .map_err(|m| Error::config(0, format!("override {k}={v}: {m}")))?;
        }
        let cfg = draft
            .build()
            .map_err(|m| Error::config(line_no, format!("run {id}: {m}")))?;
        runs.push((id, cfg));
    }

    let spec = ExperimentSpec { runs };
    let first = &spec.runs[0].1;
    if let Some((id, _)) = spec
        .runs
        .iter()
        .find(|(_, c)| c.image != first.image || c.bins_per_axis != first.bins_per_axis)
    {
        return Err(Error::config(
            0,
            format!("run {id} uses a different image or bins_per_axis; all runs must share one cube set"),
        ));
    }
    Ok(spec)
}

/// One row of the 38-run study: seed, generations, schedule, mean
/// injections, capture, throw, random companion.
type PresetRow = (u64, usize, &'static str, f64, Option<(usize, usize)>, Option<(usize, usize)>, bool);

const CAP: Option<(usize, usize)> = Some((1, 100));
const T1000: Option<(usize, usize)> = Some((1000, 3000));

fn throw_from(start: usize) -> Option<(usize, usize)> {
    Some((start, 3000))
}

fn preset_rows() -> [PresetRow; 38] {
    [
        (9, 3000, "C", 0.0, None, None, false),
        (9, 3000, "LD", 0.0, None, None, false),
        (9, 3000, "QD", 0.0, None, None, false),
        (9, 3000, "B0.15", 0.0, None, None, false),
        (9, 3000, "B0.50", 0.0, None, None, false),
        (9, 3000, "LD", 1.0, CAP, T1000, false),
        (9, 3000, "QD", 1.0, CAP, T1000, false),
        (9, 3000, "B0.15", 1.0, CAP, T1000, false),
        (9, 6000, "LD", 0.0, None, None, false),
        (7445, 3000, "C", 0.0, None, None, false),
        (7445, 3000, "LD", 0.0, None, None, false),
        (7445, 3000, "QD", 0.0, None, None, false),
        (7445, 3000, "LD", 1.0, CAP, T1000, false),
        (7445, 3000, "QD", 1.0, CAP, T1000, false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(500), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(350), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(320), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(300), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(285), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(280), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(279), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(277), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(275), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(200), false),
        (7445, 3000, "QD", 1.0, CAP, throw_from(150), false),
        (9, 3000, "LD", 2.0, CAP, T1000, false),
        (7445, 3000, "QD", 1.5, CAP, throw_from(280), false),
        (7445, 3000, "QD", 2.0, CAP, throw_from(280), false),
        (7445, 3000, "QD", 3.0, CAP, throw_from(280), false),
        (7445, 3000, "QD", 5.0, CAP, throw_from(280), false),
        (7445, 3000, "QD", 1.0, Some((100, 200)), T1000, false),
        (7445, 3000, "QD", 1.0, Some((100, 200)), throw_from(280), false),
        (7445, 3000, "QD", 1.0, Some((1, 50)), throw_from(280), false),
        (7445, 3000, "QD", 1.0, Some((1, 30)), throw_from(280), false),
        // "2*": one archived plus one random individual per throw generation
        (9, 3000, "LD", 1.0, CAP, T1000, true),
        (9, 3000, "QD", 1.0, CAP, T1000, true),
        (7445, 3000, "LD", 1.0, CAP, T1000, true),
        (7445, 3000, "QD", 1.0, CAP, T1000, true),
    ]
}

fn row_pairs(row: &PresetRow) -> Vec<(&'static str, String)> {
    let (seed, t, sched, e, capture, throw, companion) = *row;
    let mut kv = vec![
        ("seed", seed.to_string()),
        ("generations", t.to_string()),
        ("pc", "0.8".to_string()),
    ];
    match sched {
        "B0.15" | "B0.50" => {
            kv.push(("schedule", "BACK".into()));
            kv.push(("p0", if sched == "B0.15" { "0.15" } else { "0.5" }.into()));
        }
        s => {
            kv.push(("schedule", s.into()));
            kv.push(("p0", "0.15".into()));
        }
    }
    match (capture, throw) {
        (Some((c0, c1)), Some((t0, t1))) => {
            kv.push(("neoteny", "on".into()));
            kv.push(("E", e.to_string()));
            kv.push(("capture", format!("[{c0},{c1}]")));
            kv.push(("throw", format!("[{t0},{t1}]")));
            kv.push(("companion", if companion { "on" } else { "off" }.into()));
        }
        _ => kv.push(("neoteny", "off".into())),
    }
    kv
}

/// Named run presets: `paper-test-1` … `paper-test-38` reproduce the
/// settings (seed, generations, crossover, schedule, neoteny) of the 38-run
/// study. Absolute fitness values depend on the image and will differ.
pub fn preset(name: &str) -> Option<Vec<(&'static str, String)>> {
    let n: usize = name.strip_prefix("paper-test-")?.parse().ok()?;
    let rows = preset_rows();
    rows.get(n.checked_sub(1)?).map(row_pairs)
}

pub fn preset_names() -> Vec<String> {
    (1..=38).map(|i| format!("paper-test-{i}")).collect()
}

fn scaled(x: usize, scale: f64) -> usize {
    ((x as f64 * scale).round() as usize).max(1)
}

/// The 38-run study with generation counts and windows multiplied by
/// `scale`, as config text (one section per test number).
pub fn table1_spec_text(scale: f64) -> String {
    let mut out = String::from("# 38-run study, generations and windows scaled\n");
    for (i, row) in preset_rows().iter().enumerate() {
        let (_, t, _, _, capture, throw, _) = *row;
        out.push_str(&format!("\n[run {}]\npreset = paper-test-{}\n", i + 1, i + 1));
        out.push_str(&format!("generations = {}\n", scaled(t, scale)));
        if let (Some((c0, c1)), Some((t0, t1))) = (capture, throw) {
            out.push_str(&format!("capture = [{},{}]\n", scaled(c0, scale), scaled(c1, scale)));
            out.push_str(&format!("throw = [{},{}]\n", scaled(t0, scale), scaled(t1, scale)));
        }
    }
    out
}

pub const TABLE2_SEEDS: [u64; 5] = [9, 7445, 917, 14, 27];

/// Strategy label → config lines, in the order of the strategy table.
pub const TABLE2_STRATEGIES: [(&str, &str); 7] = [
    ("C", "schedule = C\nneoteny = off\n"),
    ("LD", "schedule = LD\nneoteny = off\n"),
    ("QD", "schedule = QD\nneoteny = off\n"),
    ("LDN", "schedule = LD\nneoteny = on\nE = 1\ncompanion = off\n"),
    ("QDN", "schedule = QD\nneoteny = on\nE = 1\ncompanion = off\n"),
    ("LDNR", "schedule = LD\nneoteny = on\nE = 1\ncompanion = on\n"),
    ("QDNR", "schedule = QD\nneoteny = on\nE = 1\ncompanion = on\n"),
];

/// Every strategy × seed at `generations`, capturing in `[1, min(100, T/4)]`
/// and throwing in `[T/2, T]`.
pub fn table2_spec_text(generations: usize, strategies: &[&str], seeds: &[u64]) -> String {
    let c1 = (generations / 4).clamp(1, 100);
    let t0 = (generations / 2).max(c1 + 1);
    let mut out = format!(
        "generations = {generations}\npc = 0.8\np0 = 0.15\ncapture = [1,{c1}]\nthrow = [{t0},{generations}]\n"
    );
    for (label, lines) in TABLE2_STRATEGIES {
        if !strategies.is_empty() && !strategies.contains(&label) {
            continue;
        }
        for seed in seeds {
            out.push_str(&format!("\n[run {label}-{seed}]\nseed = {seed}\n{lines}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(text: &str) -> RunConfig {
        let spec = parse_config(text).unwrap();
        assert_eq!(spec.runs.len(), 1);
        spec.runs[0].1.clone()
    }

    #[test]
    fn preset_test_2() {
        let c = single("preset = paper-test-2");
        assert_eq!(c.seed, 9);
        assert_eq!(c.generations, 3000);
        assert_eq!(c.crossover, 0.8);
        assert_eq!(c.schedule, MutationSchedule::linear());
        assert!(c.neoteny.is_none());
    }

    #[test]
    fn preset_test_6() {
        let c = single("preset = paper-test-6");
        assert_eq!(c.schedule, MutationSchedule::linear());
        let n = c.neoteny.unwrap();
        assert_eq!(n.mean_injections, 1.0);
        assert_eq!(n.capture, Window::new(1, 100).unwrap());
        assert_eq!(n.throw, Window::new(1000, 3000).unwrap());
        assert!(!n.with_random_companion);
    }

    #[test]
    fn back_and_companion_presets() {
        let c = single("preset = paper-test-5");
        assert_eq!(c.schedule, MutationSchedule::hyperbolic(0.5, 0, 0));
        let c = single("preset = paper-test-38");
        assert_eq!(c.seed, 7445);
        assert!(c.neoteny.unwrap().with_random_companion);
        assert_eq!(single("preset = paper-test-9").generations, 6000);
        assert_eq!(single("preset = paper-test-27").neoteny.unwrap().mean_injections, 1.5);
        assert!(preset("paper-test-0").is_none());
        assert!(preset("paper-test-39").is_none());
        assert_eq!(preset_names().len(), 38);
    }

    #[test]
    fn rejects_overlapping_windows() {
        let err = parse_config("neoteny = on\ncapture = [1,100]\nthrow = [50,3000]\n").unwrap_err();
        assert!(err.to_string().contains("capture"), "{err}");
    }

    #[test]
    fn rejects_unknown_and_bad_values() {
        assert!(parse_config("colour = red").unwrap_err().to_string().contains("unknown key"));
        assert!(parse_config("seed = nine").is_err());
        assert!(parse_config("schedule = XD").is_err());
        assert!(parse_config("pop = 11").is_err());
        assert!(parse_config("just words").is_err());
        assert!(parse_config("[run a]\n[run a]\n").is_err());
        assert!(parse_config("[run a/b]\n").is_err());
        assert!(parse_config("preset = nope").is_err());
    }

    #[test]
    fn sections_inherit_and_override() {
        let spec = parse_config(
            "generations = 40\nseed = 1\n[run a]\n[run b]\nseed = 2\nschedule = QD\n",
        )
        .unwrap();
        assert_eq!(spec.runs.len(), 2);
        assert_eq!(spec.runs[0].0, "a");
        assert_eq!(spec.runs[0].1.generations, 40);
        assert_eq!(spec.runs[0].1.seed, 1);
        assert_eq!(spec.runs[1].1.seed, 2);
        assert_eq!(spec.runs[1].1.schedule, MutationSchedule::quadratic());
    }

    #[test]
    fn overrides_win() {
        let spec = parse_config_with(
            "[run a]\npreset = paper-test-2\n",
            &[("generations".into(), "10".into())],
        )
        .unwrap();
        assert_eq!(spec.runs[0].1.generations, 10);
    }

    #[test]
    fn runs_must_share_image() {
        assert!(parse_config("[run a]\n[run b]\nsynth_seed = 3\n").is_err());
        assert!(parse_config("[run a]\n[run b]\nbins_per_axis = 4\n").is_err());
    }

    #[test]
    fn image_path_and_synth_keys() {
        let c = single("image = /tmp/x.ppm");
        assert_eq!(c.image, ImageSource::File("/tmp/x.ppm".into()));
        let c = single("synth_width = 10\nsynth_colors = 3\nsynth_noise = 0");
        assert_eq!(
            c.image,
            ImageSource::Synthetic { width: 10, height: 128, colors: 3, noise: 0, seed: 9 }
        );
    }

    #[test]
    fn table1_text_parses() {
        let spec = parse_config(&table1_spec_text(0.1)).unwrap();
        assert_eq!(spec.runs.len(), 38);
        assert_eq!(spec.runs[0].1.generations, 300);
        assert_eq!(spec.runs[8].1.generations, 600);
        let n = spec.runs[30].1.neoteny.unwrap();
        assert_eq!((n.capture.start, n.capture.end, n.throw.start), (10, 20, 100));
        let full = parse_config(&table1_spec_text(1.0)).unwrap();
        assert_eq!(full.runs[5].1, single("preset = paper-test-6"));
    }

    #[test]
    fn table2_text_parses() {
        let spec = parse_config(&table2_spec_text(1500, &[], &TABLE2_SEEDS)).unwrap();
        assert_eq!(spec.runs.len(), 35);
        let (id, c) = &spec.runs[15];
        assert_eq!(id, "LDN-9");
        let n = c.neoteny.unwrap();
        assert_eq!((n.capture.end, n.throw.start, n.throw.end), (100, 750, 1500));
        let only = parse_config(&table2_spec_text(200, &["C", "LD"], &[1, 2])).unwrap();
        assert_eq!(only.runs.len(), 4);
    }

    #[test]
    fn assignment_split() {
        assert_eq!(split_assignment("--seed=4"), Some(("seed", "4")));
        assert_eq!(split_assignment(" E = 1.5 "), Some(("E", "1.5")));
        assert_eq!(split_assignment("seed"), None);
    }
}
