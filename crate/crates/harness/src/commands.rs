use std::fmt::Write as _;

use serde::Serialize;
use wjump_core::seeds::RNG_ALGORITHM;
use wjump_core::spectral::DEFAULT_DENSE_CAP;
use wjump_core::{
    dense_transition_matrix, expected_repeat_probability, reversibility_residual, spectrum, Chain, Error, IngestReport,
    NumericOptions, SpectrumReport,
};

use crate::config::{c_from_fraction, default_c, ExperimentConfig, OutputFormat, SamplerKind};
use crate::error::{HarnessError, Result};
use crate::experiment::{aggregate, run_groups, Aggregate, Dataset, Group, ReportRow};
use crate::format::{format_float, format_opt, format_opt_float};

pub const CSV_HEADER: &str = "dataset,sampler,C,alpha,budget,repetition,seed,kl,log10_kl,unique_nodes,wall_millis";
pub const STATS_HEADER: &str = "dataset,n,m,d_max,avg_degree,tvd_srw_vs_uniform,lcc_n,lcc_m";

pub const DEFAULT_BUDGET: usize = 5000;
pub const DEFAULT_SWEEP_BUDGETS: [usize; 5] = [1000, 2000, 3000, 4000, 5000];
pub const DEFAULT_SWEEP_SAMPLERS: [SamplerKind; 4] =
    [SamplerKind::Srw, SamplerKind::Rwe, SamplerKind::Gmd, SamplerKind::Wjrw];
pub const DEFAULT_C_SAMPLERS: [SamplerKind; 2] = [SamplerKind::Gmd, SamplerKind::Wjrw];
pub const DEFAULT_C_FRACTIONS: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];
pub const DEFAULT_ANALYZE_SAMPLERS: [SamplerKind; 3] = [SamplerKind::Srw, SamplerKind::Gmd, SamplerKind::Wjrw];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsRecord {
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    pub d_max: usize,
    pub avg_degree: f64,
    pub tvd_srw_vs_uniform: f64,
    pub lcc_n: usize,
    pub lcc_m: usize,
    pub ingest: IngestReport,
}

pub fn stats_record(dataset: &Dataset) -> StatsRecord {
    let stats = dataset.graph.stats();
    StatsRecord {
        dataset: dataset.name.clone(),
        n: stats.n,
        m: stats.m,
        d_max: stats.d_max,
        avg_degree: dataset.graph.average_degree(),
        tvd_srw_vs_uniform: stats.tvd_srw_vs_uniform,
        lcc_n: dataset.lcc.node_count(),
        lcc_m: dataset.lcc.edge_count(),
        ingest: dataset.ingest,
    }
}

pub fn cmd_stats(config: &ExperimentConfig) -> Result<String> {
    let record = stats_record(&Dataset::load(&config.dataset_path)?);
    Ok(match config.output_format {
        OutputFormat::Csv => format!(
            "{STATS_HEADER}\n{},{},{},{},{},{},{},{}\n",
            record.dataset,
            record.n,
            record.m,
            record.d_max,
            format_float(record.avg_degree),
            format_float(record.tvd_srw_vs_uniform),
            record.lcc_n,
            record.lcc_m
        ),
        OutputFormat::Json => serde_json::to_string_pretty(&record)? + "\n",
    })
}

/// Threshold for commands that take a single C.
fn single_c(config: &ExperimentConfig, dataset: &Dataset) -> Result<usize> {
    match (config.c_values.as_slice(), config.c_fractions.as_slice()) {
        ([], []) => Ok(default_c(dataset.d_max())),
        ([c], []) => Ok(*c),
        ([], [f]) => Ok(c_from_fraction(*f, dataset.d_max())),
        _ => Err(HarnessError::usage("this command takes a single --c or --c-frac; use sweep-c to vary C")),
    }
}

fn alpha(config: &ExperimentConfig, dataset: &Dataset) -> f64 {
    config.alpha.unwrap_or_else(|| dataset.default_alpha())
}

fn samplers_or(config: &ExperimentConfig, default: &[SamplerKind]) -> Vec<SamplerKind> {
    if config.samplers.is_empty() {
        default.to_vec()
    } else {
        config.samplers.clone()
    }
}

fn single_budget(config: &ExperimentConfig) -> Result<usize> {
    match config.budgets.as_slice() {
        [] => Ok(DEFAULT_BUDGET),
        [b] => Ok(*b),
        _ => Err(HarnessError::usage("this command takes a single --budget; use sweep-budget to vary it")),
    }
}

/// Rows of one `run`: each sampler at one budget.
pub fn run_rows(config: &ExperimentConfig, dataset: &Dataset) -> Result<Vec<ReportRow>> {
    if config.samplers.is_empty() {
        return Err(HarnessError::usage("run needs at least one --sampler"));
    }
    let budget = single_budget(config)?;
    let (c, alpha) = (single_c(config, dataset)?, alpha(config, dataset));
    let groups = config
        .samplers
        .iter()
        .map(|k| Group::new(dataset, k.bind(c, alpha), budget, config.weight_mode))
        .collect::<Result<Vec<_>>>()?;
    run_groups(dataset, &groups, config)
}

pub fn sweep_budget_rows(config: &ExperimentConfig, dataset: &Dataset) -> Result<Vec<ReportRow>> {
    let budgets = if config.budgets.is_empty() { DEFAULT_SWEEP_BUDGETS.to_vec() } else { config.budgets.clone() };
    let (c, alpha) = (single_c(config, dataset)?, alpha(config, dataset));
    let mut groups = Vec::new();
    for kind in samplers_or(config, &DEFAULT_SWEEP_SAMPLERS) {
        for &budget in &budgets {
            groups.push(Group::new(dataset, kind.bind(c, alpha), budget, config.weight_mode)?);
        }
    }
    run_groups(dataset, &groups, config)
}

/// Threshold values of a C sweep: `--c` as given, else `--c-frac` (default
/// 0.1, 0.2, …, 1.0) mapped through `max(1, round(f · d_max))`.
pub fn sweep_c_values(config: &ExperimentConfig, d_max: usize) -> Vec<usize> {
    if !config.c_values.is_empty() {
        return config.c_values.clone();
    }
    let fractions = if config.c_fractions.is_empty() { &DEFAULT_C_FRACTIONS[..] } else { &config.c_fractions[..] };
    fractions.iter().map(|&f| c_from_fraction(f, d_max)).collect()
}

pub fn sweep_c_rows(config: &ExperimentConfig, dataset: &Dataset) -> Result<Vec<ReportRow>> {
    let samplers = samplers_or(config, &DEFAULT_C_SAMPLERS);
    if let Some(k) = samplers.iter().find(|k| !k.uses_c()) {
        return Err(HarnessError::usage(format!(
            "sweep-c varies the threshold of gmd and wjrw only, got {}",
            format!("{k:?}").to_lowercase()
        )));
    }
    let budget = single_budget(config)?;
    let values = sweep_c_values(config, dataset.d_max());
    let mut groups = Vec::new();
    for kind in samplers {
        for &c in &values {
            groups.push(Group::new(dataset, kind.bind(c, 0.0), budget, config.weight_mode)?);
        }
    }
    run_groups(dataset, &groups, config)
}

/// Settings echoed into JSON reports.
#[derive(Debug, Serialize)]
struct RunInfo<'a> {
    dataset_path: String,
    repetitions: usize,
    base_seed: u64,
    weights: String,
    burn_in: usize,
    rng: &'a str,
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    config: RunInfo<'a>,
    rows: &'a [ReportRow],
    aggregates: Vec<Aggregate>,
}

fn csv_line(out: &mut String, row: &ReportRow) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{}",
        row.dataset,
        row.sampler,
        format_opt(row.c),
        format_opt_float(row.alpha),
        row.budget,
        row.repetition,
        row.seed,
        format_float(row.kl),
        format_float(row.log10_kl),
        row.unique_nodes,
        format_opt_float(row.wall_millis)
    );
}

fn aggregate_csv_line(out: &mut String, agg: &Aggregate) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},mean,,{},{},{},{}",
        agg.dataset,
        agg.sampler,
        format_opt(agg.c),
        format_opt_float(agg.alpha),
        agg.budget,
        format_float(agg.mean_kl),
        format_float(agg.log10_mean_kl),
        format_float(agg.mean_unique_nodes),
        format_opt_float(agg.mean_wall_millis)
    );
}

/// Renders rows; `aggregate_rows` appends one `mean` row per group to CSV
/// output. JSON output always carries aggregates, with standard deviations.
pub fn render_rows(config: &ExperimentConfig, rows: &[ReportRow], aggregate_rows: bool) -> Result<String> {
    let aggregates = aggregate(rows, config.repetitions);
    match config.output_format {
        OutputFormat::Csv => {
            let mut out = String::with_capacity(64 * (rows.len() + 1));
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in rows {
                csv_line(&mut out, row);
            }
            if aggregate_rows {
                for agg in &aggregates {
                    aggregate_csv_line(&mut out, agg);
                }
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let report = JsonReport {
                config: RunInfo {
                    dataset_path: config.dataset_path.display().to_string(),
                    repetitions: config.repetitions,
                    base_seed: config.base_seed,
                    weights: format!("{:?}", config.weight_mode).to_lowercase(),
                    burn_in: config.burn_in,
                    rng: RNG_ALGORITHM,
                },
                rows,
                aggregates,
            };
            Ok(serde_json::to_string_pretty(&report)? + "\n")
        }
    }
}

pub fn cmd_run(config: &ExperimentConfig) -> Result<String> {
    let dataset = Dataset::load(&config.dataset_path)?;
    render_rows(config, &run_rows(config, &dataset)?, false)
}

pub fn cmd_sweep_budget(config: &ExperimentConfig) -> Result<String> {
    let dataset = Dataset::load(&config.dataset_path)?;
    render_rows(config, &sweep_budget_rows(config, &dataset)?, true)
}

pub fn cmd_sweep_c(config: &ExperimentConfig) -> Result<String> {
    let dataset = Dataset::load(&config.dataset_path)?;
    render_rows(config, &sweep_c_rows(config, &dataset)?, false)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplerAnalysis {
    pub sampler: String,
    #[serde(rename = "C")]
    pub c: Option<usize>,
    pub alpha: Option<f64>,
    pub spectrum: SpectrumReport,
    pub stationary_closed_form: Vec<f64>,
    pub stationary_numeric: Vec<f64>,
    /// ℓ1 distance between the two laws above.
    pub stationary_gap: f64,
    pub expected_repeat_closed_form: f64,
    pub expected_repeat_numeric: f64,
    pub reversibility_residual_closed_form: f64,
    pub reversibility_residual_numeric: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    /// External node ids, in the order used by every vector below.
    pub labels: Vec<u64>,
    pub samplers: Vec<SamplerAnalysis>,
}

pub fn analyze(config: &ExperimentConfig, dataset: &Dataset) -> Result<AnalysisReport> {
    let g = &dataset.lcc;
    let (c, alpha) = (single_c(config, dataset)?, alpha(config, dataset));
    let mut samplers = Vec::new();
    for kind in samplers_or(config, &DEFAULT_ANALYZE_SAMPLERS) {
        let sampler = kind.bind(c, alpha);
        let matrix = dense_transition_matrix(g, sampler).map_err(|e| match e {
            Error::DenseCapExceeded { n, cap } => HarnessError::usage(format!(
                "analyze builds a dense {n}×{n} matrix but is limited to {cap} nodes \
                 (default {DEFAULT_DENSE_CAP}); run it on a smaller graph"
            )),
            other => other.into(),
        })?;
        let chain = Chain::new(g, sampler)?;
        let closed = chain.stationary_closed_form();
        let numeric = chain.stationary_numeric(NumericOptions::default())?;
        samplers.push(SamplerAnalysis {
            sampler: sampler.name().to_string(),
            c: chain.c(),
            alpha: sampler.alpha(),
            spectrum: spectrum(&matrix)?,
            stationary_gap: closed.l1_distance(&numeric),
            expected_repeat_closed_form: expected_repeat_probability(&chain, &closed),
            expected_repeat_numeric: expected_repeat_probability(&chain, &numeric),
            reversibility_residual_closed_form: reversibility_residual(&matrix, &closed),
            reversibility_residual_numeric: reversibility_residual(&matrix, &numeric),
            stationary_closed_form: closed.masses().to_vec(),
            stationary_numeric: numeric.masses().to_vec(),
        });
    }
    Ok(AnalysisReport {
        dataset: dataset.name.clone(),
        n: g.node_count(),
        m: g.edge_count(),
        labels: g.labels().to_vec(),
        samplers,
    })
}

pub fn cmd_analyze(config: &ExperimentConfig) -> Result<String> {
    if config.output_format != OutputFormat::Json {
        return Err(HarnessError::usage("analyze writes JSON only; pass --format json or omit --format"));
    }
    let dataset = Dataset::load(&config.dataset_path)?;
    Ok(serde_json::to_string_pretty(&analyze(config, &dataset)?)? + "\n")
}
