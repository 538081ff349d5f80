//! Experiment settings: command-line flags layered over an optional config
//! file, then resolved against per-command defaults.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use wjump_core::{Sampler, StartPolicy};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum SamplerKind {
    Srw,
    Rwe,
    Md,
    Gmd,
    Wjrw,
}

impl SamplerKind {
    pub fn uses_c(self) -> bool {
        matches!(self, SamplerKind::Gmd | SamplerKind::Wjrw)
    }

    pub fn bind(self, c: usize, alpha: f64) -> Sampler {
        match self {
            SamplerKind::Srw => Sampler::Srw,
            SamplerKind::Rwe => Sampler::Rwe { alpha },
            SamplerKind::Md => Sampler::Md,
            SamplerKind::Gmd => Sampler::Gmd { c },
            SamplerKind::Wjrw => Sampler::Wjrw { c },
        }
    }
}

/// Which stationary law the estimator uses as inclusion weights.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum WeightMode {
    /// Closed-form weights for each sampler.
    #[default]
    Closed,
    /// The numerically solved stationary law.
    Oracle,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum StartMode {
    #[default]
    Uniform,
    Degree,
}

impl From<StartMode> for StartPolicy {
    fn from(mode: StartMode) -> Self {
        match mode {
            StartMode::Uniform => StartPolicy::Uniform,
            StartMode::Degree => StartPolicy::DegreeProportional,
        }
    }
}

/// Every setting as given by the user, before defaults. Doubles as the clap
/// argument set shared by all subcommands.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct Overrides {
    /// Edge-list file (whitespace-separated pairs, `#` comments).
    #[arg(long, value_name = "PATH")]
    pub dataset: Option<PathBuf>,

    /// Sampler to run; repeat for several.
    #[arg(long = "sampler", value_enum, value_name = "KIND")]
    pub samplers: Vec<SamplerKind>,

    /// Walk budget; repeat for several.
    #[arg(long = "budget", value_name = "N")]
    pub budgets: Vec<usize>,

    /// Threshold C for GMD and WJRW; repeat for a C sweep.
    #[arg(long = "c", value_name = "N")]
    pub c: Vec<usize>,

    /// Threshold as a fraction of d_max; repeat for a C sweep.
    #[arg(long = "c-frac", value_name = "F")]
    pub c_frac: Vec<f64>,

    /// Escaping weight for RWE (default: average degree).
    #[arg(long, value_name = "F")]
    pub alpha: Option<f64>,

    /// Repetitions per configuration.
    #[arg(long, value_name = "N")]
    pub reps: Option<usize>,

    /// Base seed; repetition r uses a seed derived from (seed, r).
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,

    #[arg(long, value_enum)]
    pub weights: Option<WeightMode>,

    /// Output file (default: standard output).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,

    /// Worker threads (default: available cores).
    #[arg(long, value_name = "N")]
    pub parallel: Option<usize>,

    /// Steps discarded before recording.
    #[arg(long = "burn-in", value_name = "N")]
    pub burn_in: Option<usize>,

    #[arg(long, value_enum)]
    pub start: Option<StartMode>,

    /// Fill the wall_millis column (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,

    /// Flat `key = value` file with the same keys as the flags.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

impl Overrides {
    /// `self` with every setting present in `over` replaced.
    pub fn layered(self, over: Overrides) -> Overrides {
        fn pick<T>(base: Vec<T>, over: Vec<T>) -> Vec<T> {
            if over.is_empty() {
                base
            } else {
                over
            }
        }
        Overrides {
            dataset: over.dataset.or(self.dataset),
            samplers: pick(self.samplers, over.samplers),
            budgets: pick(self.budgets, over.budgets),
            c: pick(self.c, over.c),
            c_frac: pick(self.c_frac, over.c_frac),
            alpha: over.alpha.or(self.alpha),
            reps: over.reps.or(self.reps),
            seed: over.seed.or(self.seed),
            weights: over.weights.or(self.weights),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            parallel: over.parallel.or(self.parallel),
            burn_in: over.burn_in.or(self.burn_in),
            start: over.start.or(self.start),
            timing: self.timing || over.timing,
            config: over.config.or(self.config),
        }
    }

    /// Loads the file named by `--config`, if any, and layers the flags on top.
    pub fn with_config_file(self) -> Result<Overrides> {
        match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
                Ok(parse_config(path, &text)?.layered(self))
            }
            None => Ok(self),
        }
    }
}

/// Parses `key = value` lines. List-valued keys take comma-separated values
/// and may repeat. Keys use the flag spelling; `_` and `-` are interchangeable.
pub fn parse_config(path: &Path, text: &str) -> Result<Overrides> {
    let mut out = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| HarnessError::Parse { path: path.to_path_buf(), line: i + 1, message };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        let items = || value.split(',').map(str::trim).filter(|s| !s.is_empty());
        match key.as_str() {
            "dataset" => out.dataset = Some(PathBuf::from(value)),
            "sampler" | "samplers" => {
                for item in items() {
                    out.samplers.push(parse_enum(item).map_err(err)?);
                }
            }
            "budget" | "budgets" => {
                for item in items() {
                    out.budgets.push(parse_num(item).map_err(err)?);
                }
            }
            "c" => {
                for item in items() {
                    out.c.push(parse_num(item).map_err(err)?);
                }
            }
            "c-frac" => {
                for item in items() {
                    out.c_frac.push(parse_num(item).map_err(err)?);
                }
            }
            "alpha" => out.alpha = Some(parse_num(value).map_err(err)?),
            "reps" => out.reps = Some(parse_num(value).map_err(err)?),
            "seed" => out.seed = Some(parse_num(value).map_err(err)?),
            "weights" => out.weights = Some(parse_enum(value).map_err(err)?),
            "out" => out.out = Some(PathBuf::from(value)),
            "format" => out.format = Some(parse_enum(value).map_err(err)?),
            "parallel" => out.parallel = Some(parse_num(value).map_err(err)?),
            "burn-in" => out.burn_in = Some(parse_num(value).map_err(err)?),
            "start" => out.start = Some(parse_enum(value).map_err(err)?),
            "timing" => out.timing = parse_num(value).map_err(err)?,
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|_| format!("invalid value `{s}`"))
}

fn parse_enum<T: ValueEnum>(s: &str) -> std::result::Result<T, String> {
    T::from_str(s, true).map_err(|_| {
        let choices: Vec<String> = T::value_variants()
            .iter()
            .filter_map(|v| v.to_possible_value())
            .map(|p| p.get_name().to_string())
            .collect();
        format!("invalid value `{s}` (expected one of: {})", choices.join(", "))
    })
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset_path: PathBuf,
    pub samplers: Vec<SamplerKind>,
    pub budgets: Vec<usize>,
    pub c_values: Vec<usize>,
    pub c_fractions: Vec<f64>,
    pub alpha: Option<f64>,
    pub repetitions: usize,
    pub base_seed: u64,
    pub weight_mode: WeightMode,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub parallel: Option<usize>,
    pub burn_in: usize,
    pub start: StartMode,
    pub timing: bool,
}

pub const DEFAULT_REPETITIONS: usize = 100;
pub const DEFAULT_SEED: u64 = 0;

impl ExperimentConfig {
    pub fn resolve(o: Overrides) -> Result<ExperimentConfig> {
        let dataset_path = o.dataset.ok_or_else(|| HarnessError::usage("--dataset is required"))?;
        let repetitions = o.reps.unwrap_or(DEFAULT_REPETITIONS);
        if repetitions == 0 {
            return Err(HarnessError::usage("--reps must be at least 1"));
        }
        if o.budgets.contains(&0) {
            return Err(HarnessError::usage("--budget must be at least 1"));
        }
        if o.c.contains(&0) {
            return Err(HarnessError::usage("--c must be at least 1"));
        }
        if let Some(&f) = o.c_frac.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
            return Err(HarnessError::usage(format!("--c-frac must lie in (0, 1], got {f}")));
        }
        if !o.c.is_empty() && !o.c_frac.is_empty() {
            return Err(HarnessError::usage("give either --c or --c-frac, not both"));
        }
        if let Some(a) = o.alpha {
            if !(a.is_finite() && a >= 0.0) {
                return Err(HarnessError::usage(format!("--alpha must be finite and nonnegative, got {a}")));
            }
        }
        if o.parallel == Some(0) {
            return Err(HarnessError::usage("--parallel must be at least 1"));
        }
        Ok(ExperimentConfig {
            dataset_path,
            samplers: o.samplers,
            budgets: o.budgets,
            c_values: o.c,
            c_fractions: o.c_frac,
            alpha: o.alpha,
            repetitions,
            base_seed: o.seed.unwrap_or(DEFAULT_SEED),
            weight_mode: o.weights.unwrap_or_default(),
            output_path: o.out,
            output_format: o.format.unwrap_or_default(),
            parallel: o.parallel,
            burn_in: o.burn_in.unwrap_or(0),
            start: o.start.unwrap_or_default(),
            timing: o.timing,
        })
    }
}

/// `max(1, round(fraction · d_max))`.
pub fn c_from_fraction(fraction: f64, d_max: usize) -> usize {
    ((fraction * d_max as f64).round() as usize).max(1)
}

/// `max(1, ⌊d_max / 2⌋)`.
pub fn default_c(d_max: usize) -> usize {
    (d_max / 2).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = parse_config(
            Path::new("x.conf"),
            "# comment\ndataset = a.txt\nsampler = srw, wjrw\nbudget = 1000\nbudget = 2000\nreps = 7\nburn_in = 3\n",
        )
        .unwrap();
        assert_eq!(file.samplers, vec![SamplerKind::Srw, SamplerKind::Wjrw]);
        assert_eq!(file.budgets, vec![1000, 2000]);
        assert_eq!(file.burn_in, Some(3));
        let flags = Overrides { reps: Some(2), samplers: vec![SamplerKind::Gmd], ..Default::default() };
        let merged = file.layered(flags);
        assert_eq!(merged.reps, Some(2));
        assert_eq!(merged.samplers, vec![SamplerKind::Gmd]);
        assert_eq!(merged.budgets, vec![1000, 2000]);
        assert_eq!(merged.dataset, Some(PathBuf::from("a.txt")));
    }

    #[test]
    fn config_errors_name_the_line() {
        let err = parse_config(Path::new("x.conf"), "reps = 3\nsampler = foo\n").unwrap_err();
        assert!(err.to_string().starts_with("x.conf:2:"), "{err}");
        let err = parse_config(Path::new("x.conf"), "colour = red\n").unwrap_err();
        assert!(err.to_string().contains("unknown key"));
    }

    #[test]
    fn resolve_validates() {
        let base = Overrides { dataset: Some("g.txt".into()), ..Default::default() };
        let cfg = ExperimentConfig::resolve(base.clone()).unwrap();
        assert_eq!(cfg.repetitions, DEFAULT_REPETITIONS);
        assert_eq!(cfg.weight_mode, WeightMode::Closed);
        assert!(ExperimentConfig::resolve(Overrides { reps: Some(0), ..base.clone() }).is_err());
        assert!(ExperimentConfig::resolve(Overrides { c_frac: vec![1.5], ..base.clone() }).is_err());
        assert!(ExperimentConfig::resolve(Overrides { dataset: None, ..base }).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(c_from_fraction(0.1, 4), 1);
        assert_eq!(c_from_fraction(0.5, 3547), 1774);
        assert_eq!(c_from_fraction(1.0, 3547), 3547);
        assert_eq!(default_c(3547), 1773);
        assert_eq!(default_c(1), 1);
    }
}
