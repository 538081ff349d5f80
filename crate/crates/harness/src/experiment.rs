//! Seeded repetitions of walk + degree-distribution estimation.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use wjump_core::seeds::repetition_seed;
use wjump_core::{
    degree_distribution_estimate, kl_divergence, parse_edge_list, run_walk, unique_count, Chain, Distribution, Graph,
    IngestReport, NumericOptions, Sampler, WalkConfig,
};

use crate::config::{ExperimentConfig, WeightMode};
use crate::error::{HarnessError, Result};

/// A loaded edge list and its largest connected component, on which all
/// walks run.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub graph: Graph,
    pub lcc: Graph,
    pub ingest: IngestReport,
    lcc_degrees: Distribution,
}

impl Dataset {
    pub fn load(path: &Path) -> Result<Dataset> {
        let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
        let (graph, ingest) = parse_edge_list(BufReader::new(file)).map_err(|e| match e {
            wjump_core::Error::Parse { line, message } => {
                HarnessError::Parse { path: path.to_path_buf(), line, message }
            }
            wjump_core::Error::Io(e) => HarnessError::io(path, e),
            other => HarnessError::Dataset { path: path.to_path_buf(), source: other },
        })?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Ok(Dataset::new(name, graph, ingest))
    }

    pub fn new(name: String, graph: Graph, ingest: IngestReport) -> Dataset {
        let lcc = graph.largest_connected_component();
        let lcc_degrees = Distribution::degree_distribution(&lcc);
        Dataset { name, graph, lcc, ingest, lcc_degrees }
    }

    pub fn d_max(&self) -> usize {
        self.lcc.max_degree()
    }

    /// Average degree of the component, the default RWE escaping weight.
    pub fn default_alpha(&self) -> f64 {
        self.lcc.average_degree()
    }
}

/// One (sampler, budget) configuration with its estimation weights.
#[derive(Debug, Clone)]
pub struct Group {
    pub sampler: Sampler,
    /// Bound threshold, `d_max` for MD.
    pub c: Option<usize>,
    pub budget: usize,
    weights: Vec<f64>,
}

impl Group {
    pub fn new(dataset: &Dataset, sampler: Sampler, budget: usize, mode: WeightMode) -> Result<Group> {
        let chain = Chain::new(&dataset.lcc, sampler)?;
        let weights = match mode {
            WeightMode::Closed => chain.closed_form_weights(),
            WeightMode::Oracle => chain.stationary_numeric(NumericOptions::default())?.masses().to_vec(),
        };
        Ok(Group { sampler, c: chain.c(), budget, weights })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub dataset: String,
    pub sampler: String,
    #[serde(rename = "C")]
    pub c: Option<usize>,
    pub alpha: Option<f64>,
    pub budget: usize,
    pub repetition: usize,
    pub seed: u64,
    pub kl: f64,
    pub log10_kl: f64,
    pub unique_nodes: usize,
    pub wall_millis: Option<f64>,
}

/// Mean and sample standard deviation over the repetitions of one group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub dataset: String,
    pub sampler: String,
    #[serde(rename = "C")]
    pub c: Option<usize>,
    pub alpha: Option<f64>,
    pub budget: usize,
    pub repetitions: usize,
    pub mean_kl: f64,
    pub sd_kl: f64,
    pub log10_mean_kl: f64,
    pub mean_unique_nodes: f64,
    pub sd_unique_nodes: f64,
    pub mean_wall_millis: Option<f64>,
}

fn run_one(dataset: &Dataset, group: &Group, config: &ExperimentConfig, repetition: usize) -> Result<ReportRow> {
    let started = Instant::now();
    let seed = repetition_seed(config.base_seed, repetition as u64);
    let walk =
        WalkConfig::new(group.sampler, group.budget, seed).with_start(config.start.into()).with_burn_in(config.burn_in);
    let trace = run_walk(&dataset.lcc, &walk)?;
    let estimate = degree_distribution_estimate(trace.nodes(), |v| group.weights[v], &dataset.lcc)?;
    let kl = kl_divergence(&dataset.lcc_degrees, &estimate);
    let unique_nodes = unique_count(trace.nodes());
    let wall_millis = config.timing.then(|| started.elapsed().as_secs_f64() * 1e3);
    Ok(ReportRow {
        dataset: dataset.name.clone(),
        sampler: group.sampler.name().to_string(),
        c: group.c,
        alpha: group.sampler.alpha(),
        budget: group.budget,
        repetition,
        seed,
        kl,
        log10_kl: kl.log10(),
        unique_nodes,
        wall_millis,
    })
}

/// Runs every repetition of every group. Rows come back ordered by group,
/// then repetition, whatever the thread count.
pub fn run_groups(dataset: &Dataset, groups: &[Group], config: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let tasks: Vec<(usize, usize)> =
        (0..groups.len()).flat_map(|g| (0..config.repetitions).map(move |r| (g, r))).collect();
    let run = || tasks.par_iter().map(|&(g, r)| run_one(dataset, &groups[g], config, r)).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = config.parallel {
        builder = builder.num_threads(threads);
    }
    builder.build()?.install(run)
}

fn mean_sd(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let sd = if n > 1.0 { (values.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt() } else { 0.0 };
    (mean, sd)
}

/// One aggregate per consecutive block of `repetitions` rows, which is one
/// group in the output of [`run_groups`].
pub fn aggregate(rows: &[ReportRow], repetitions: usize) -> Vec<Aggregate> {
    rows.chunks(repetitions.max(1))
        .map(|chunk| {
            let first = &chunk[0];
            let (mean_kl, sd_kl) = mean_sd(chunk.iter().map(|r| r.kl));
            let (mean_unique_nodes, sd_unique_nodes) = mean_sd(chunk.iter().map(|r| r.unique_nodes as f64));
            let mean_wall_millis =
                chunk.iter().map(|r| r.wall_millis).sum::<Option<f64>>().map(|total| total / chunk.len() as f64);
            Aggregate {
                dataset: first.dataset.clone(),
                sampler: first.sampler.clone(),
                c: first.c,
                alpha: first.alpha,
                budget: first.budget,
                repetitions: chunk.len(),
                mean_kl,
                sd_kl,
                log10_mean_kl: mean_kl.log10(),
                mean_unique_nodes,
                sd_unique_nodes,
                mean_wall_millis,
            }
        })
        .collect()
}
