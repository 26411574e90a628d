//! The comparison protocol: spatial networks are simulated, sampled by
//! sensor arrays of several sizes, turned into functional networks and
//! compared metric by metric against small spatial networks of the same
//! density.
//!
//! Seeds follow `master / <density label> / realization:<r> / <stage>` for
//! the large networks and `master / <density label> / size:<n> /
//! reference:<r>` for the references, so any condition can be rerun alone.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::funcnet::{build_functional, correlation_matrix, CorrelationMatrix, FuncWarning};
use crate::io;
use crate::lif::{
    simulate, NeuronParams, PoissonDrive, SimConfig, SimWarning, SynapseConfig, SynapseTable,
};
use crate::metrics::{measure_all, MeasureOptions, MeasurementReport, Metric};
use crate::rng::SeedTree;
use crate::sensor::{place_sensors, record};
use crate::spatial::{generate, generate_matched_reference, solve_beta, GenerationSpec};
use crate::stats::{mean, sample_sd, t_test, TTestKind};

/// One density condition, given either as `beta` or as a target density
/// that is converted to `beta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityLevel {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_density: Option<f64>,
}

impl DensityLevel {
    pub fn beta(label: &str, beta: f64) -> Self {
        DensityLevel {
            label: label.to_string(),
            beta: Some(beta),
            target_density: None,
        }
    }

    pub fn resolve_beta(&self, alpha: f64) -> Result<f64> {
        match (self.beta, self.target_density) {
            (Some(b), None) => Ok(b),
            (None, Some(d)) => solve_beta(d, alpha),
            _ => Err(Error::Config(format!(
                "density `{}` needs exactly one of `beta` and `target_density`",
                self.label
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub n_neurons: usize,
    pub alpha: f64,
    /// Decay used for the small reference networks.
    pub reference_alpha: f64,
    pub realizations: usize,
    pub sizes: Vec<usize>,
    pub densities: Vec<DensityLevel>,
    pub max_lag_ms: f64,
    pub t_test: TTestKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
    pub neuron: NeuronParams,
    pub synapses: SynapseConfig,
    pub drive: PoissonDrive,
    pub simulation: SimConfig,
    pub measure: MeasureOptions,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Preset::Paper.config()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Paper,
    Desk,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Preset::Paper),
            "desk" => Ok(Preset::Desk),
            other => Err(Error::Config(format!(
                "unknown preset `{other}` (paper, desk)"
            ))),
        }
    }
}

impl Preset {
    pub fn config(self) -> ExperimentConfig {
        let paper = ExperimentConfig {
            master_seed: 1,
            n_neurons: 2000,
            alpha: 2.0,
            reference_alpha: 2.0,
            realizations: 20,
            sizes: (40..=100).step_by(10).collect(),
            densities: vec![
                DensityLevel::beta("low", 0.3),
                DensityLevel::beta("intermediate", 0.4),
                DensityLevel::beta("high", 0.5),
            ],
            max_lag_ms: 50.0,
            t_test: TTestKind::Welch,
            cache_dir: None,
            neuron: NeuronParams::default(),
            synapses: SynapseConfig::default(),
            drive: PoissonDrive::default(),
            simulation: SimConfig::default(),
            measure: MeasureOptions::default(),
        };
        match self {
            Preset::Paper => paper,
            Preset::Desk => ExperimentConfig {
                n_neurons: 500,
                realizations: 5,
                sizes: vec![40, 70, 100],
                simulation: SimConfig {
                    duration_ms: 1500.0,
                    ..paper.simulation
                },
                ..paper
            },
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.realizations < 2 {
            return Err(Error::Config(
                "realizations must be >= 2 for a t-test".into(),
            ));
        }
        if self.sizes.is_empty() || self.sizes.iter().any(|&s| s < 2) {
            return Err(Error::Config(
                "sizes must be non-empty and each >= 2".into(),
            ));
        }
        if self.n_neurons < 2 {
            return Err(Error::Config("n_neurons must be >= 2".into()));
        }
        if self.densities.is_empty() {
            return Err(Error::Config("at least one density is required".into()));
        }
        for (k, d) in self.densities.iter().enumerate() {
            let safe = !d.label.is_empty()
                && d.label
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
            if !safe {
                return Err(Error::Config(format!(
                    "density label `{}` must be non-empty ASCII alphanumerics, `-` or `_`",
                    d.label
                )));
            }
            if self.densities[..k].iter().any(|o| o.label == d.label) {
                return Err(Error::Config(format!(
                    "duplicate density label `{}`",
                    d.label
                )));
            }
            let beta = d.resolve_beta(self.alpha)?;
            GenerationSpec {
                n: self.n_neurons,
                alpha: self.alpha,
                beta,
                seed: 0,
            }
            .validate()?;
        }
        if !(self.reference_alpha > 0.0 && self.reference_alpha.is_finite()) {
            return Err(Error::Config("reference_alpha must be > 0".into()));
        }
        self.neuron.validate()?;
        self.synapses.validate()?;
        self.drive.validate()?;
        self.simulation.validate()?;
        let steps = self.max_lag_ms / self.simulation.dt_ms;
        if !(self.max_lag_ms >= 0.0) || (steps - steps.round()).abs() > 1e-9 {
            return Err(Error::Config(
                "max_lag_ms must be a non-negative multiple of dt".into(),
            ));
        }
        if steps.round() as usize + 2 > self.simulation.recorded_steps() {
            return Err(Error::Config(
                "lag window exceeds the recorded signal".into(),
            ));
        }
        Ok(())
    }

    fn density_seeds(&self, density: usize) -> SeedTree {
        SeedTree::new(self.master_seed).child(&self.densities[density].label)
    }

    pub fn realization_seeds(&self, density: usize, realization: usize) -> SeedTree {
        self.density_seeds(density)
            .child_indexed("realization", realization as u64)
    }

    pub fn reference_seed(&self, density: usize, size: usize, realization: usize) -> u64 {
        self.density_seeds(density)
            .child_indexed("size", size as u64)
            .child_indexed("reference", realization as u64)
            .as_u64()
    }
}

/// Everything about one large-network realization that the later stages need.
#[derive(Clone, Debug)]
pub struct RealizationOutcome {
    pub spatial_edges: usize,
    pub spatial_density: f64,
    pub mean_rate_hz: f64,
    pub warnings: Vec<SimWarning>,
    /// Correlation matrices keyed by sensor count.
    pub matrices: BTreeMap<usize, CorrelationMatrix>,
}

#[derive(Serialize)]
struct StageKey<'a> {
    n_neurons: usize,
    alpha: f64,
    beta: f64,
    seed: String,
    neuron: &'a NeuronParams,
    synapses: &'a SynapseConfig,
    drive: &'a PoissonDrive,
    simulation: &'a SimConfig,
    max_lag_ms: f64,
}

#[derive(Serialize, Deserialize)]
struct CachedMeta {
    spatial_edges: usize,
    spatial_density: f64,
    mean_rate_hz: f64,
    warnings: Vec<SimWarning>,
}

fn stage_hash(cfg: &ExperimentConfig, beta: f64, seeds: &SeedTree) -> String {
    let key = StageKey {
        n_neurons: cfg.n_neurons,
        alpha: cfg.alpha,
        beta,
        seed: format!("{:016x}", seeds.as_u64()),
        neuron: &cfg.neuron,
        synapses: &cfg.synapses,
        drive: &cfg.drive,
        simulation: &cfg.simulation,
        max_lag_ms: cfg.max_lag_ms,
    };
    let bytes = serde_json::to_vec(&key).expect("stage key serializes");
    hex::encode(Sha256::digest(&bytes))
}

fn load_cached(dir: &Path, sizes: &[usize], max_lag_ms: f64) -> Option<RealizationOutcome> {
    let meta: CachedMeta = serde_json::from_slice(&fs::read(dir.join("meta.json")).ok()?).ok()?;
    let mut matrices = BTreeMap::new();
    for &s in sizes {
        let m = io::load_correlation_csv(&dir.join(format!("corr_{s}.csv")), max_lag_ms).ok()?;
        matrices.insert(s, m);
    }
    Some(RealizationOutcome {
        spatial_edges: meta.spatial_edges,
        spatial_density: meta.spatial_density,
        mean_rate_hz: meta.mean_rate_hz,
        warnings: meta.warnings,
        matrices,
    })
}

fn store_cached(dir: &Path, out: &RealizationOutcome) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (s, m) in &out.matrices {
        io::save_correlation_csv(&dir.join(format!("corr_{s}.csv")), m)?;
    }
    let meta = CachedMeta {
        spatial_edges: out.spatial_edges,
        spatial_density: out.spatial_density,
        mean_rate_hz: out.mean_rate_hz,
        warnings: out.warnings.clone(),
    };
    let path = dir.join("meta.json");
    fs::write(
        &path,
        serde_json::to_vec_pretty(&meta).expect("meta serializes"),
    )
    .map_err(|e| Error::io(&path, e))
}

/// Generates, simulates and records one large network for every size in
/// `sizes`. Results do not depend on which sizes are requested.
pub fn run_realization(
    cfg: &ExperimentConfig,
    density: usize,
    realization: usize,
    sizes: &[usize],
) -> Result<RealizationOutcome> {
    let beta = cfg.densities[density].resolve_beta(cfg.alpha)?;
    let seeds = cfg.realization_seeds(density, realization);
    let cache = cfg
        .cache_dir
        .as_ref()
        .map(|d| d.join(stage_hash(cfg, beta, &seeds)));
    if let Some(dir) = &cache {
        if let Some(hit) = load_cached(dir, sizes, cfg.max_lag_ms) {
            return Ok(hit);
        }
    }
    let net = generate(GenerationSpec {
        n: cfg.n_neurons,
        alpha: cfg.alpha,
        beta,
        seed: seeds.child("spatial").as_u64(),
    })?;
    let synapses = SynapseTable::build(&net.graph, &cfg.synapses, &seeds.child("synapses"))?;
    let trace = simulate(
        &net.graph,
        &cfg.neuron,
        &synapses,
        Some(&cfg.drive),
        &cfg.simulation,
        &seeds.child("simulation"),
    )?;
    let mut matrices = BTreeMap::new();
    for &s in sizes {
        let array = place_sensors(s)?;
        let rec = record(&trace, &net.positions, &array)?;
        matrices.insert(s, correlation_matrix(&rec, cfg.max_lag_ms, trace.dt)?);
    }
    let out = RealizationOutcome {
        spatial_edges: net.graph.edge_count(),
        spatial_density: net.graph.density()?,
        mean_rate_hz: trace.mean_rate_hz(),
        warnings: trace.warnings.clone(),
        matrices,
    };
    if let Some(dir) = &cache {
        store_cached(dir, &out)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Issue {
    Simulation(SimWarning),
    Functional(FuncWarning),
    Failure(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IssueRecord {
    pub density: String,
    pub size: Option<usize>,
    pub family: Family,
    pub realization: usize,
    pub issue: Issue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Functional,
    Spatial,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Functional => "functional",
            Family::Spatial => "spatial",
        }
    }
}

/// Reports for one (density, size) condition, indexed by realization.
/// `None` marks a realization that failed.
#[derive(Clone, Debug)]
pub struct ConditionResult {
    pub density: String,
    pub size: usize,
    pub target_density: f64,
    pub functional: Vec<Option<MeasurementReport>>,
    pub spatial: Vec<Option<MeasurementReport>>,
    /// Undirected edge count of each functional network.
    pub functional_edges: Vec<Option<usize>>,
}

fn functional_reports(
    cfg: &ExperimentConfig,
    density: usize,
    size: usize,
    outcomes: &[std::result::Result<RealizationOutcome, String>],
    issues: &mut Vec<IssueRecord>,
) -> (Vec<Option<MeasurementReport>>, Vec<Option<usize>>) {
    let label = &cfg.densities[density].label;
    let built: Vec<_> = outcomes
        .par_iter()
        .enumerate()
        .map(|(r, o)| -> std::result::Result<_, String> {
            let o = o.as_ref().map_err(|_| String::new())?;
            let w = &o.matrices[&size];
            let f = build_functional(w, o.spatial_density).map_err(|e| e.to_string())?;
            let id = format!("functional/{label}/n{size}/r{r}");
            let rep = measure_all(&f.graph, &id, &cfg.measure).map_err(|e| e.to_string())?;
            Ok((rep, f.edge_pairs, f.warnings))
        })
        .collect();
    let mut reports = Vec::new();
    let mut edges = Vec::new();
    for (r, b) in built.into_iter().enumerate() {
        let rec = |issue| IssueRecord {
            density: label.clone(),
            size: Some(size),
            family: Family::Functional,
            realization: r,
            issue,
        };
        match b {
            Ok((rep, k, warns)) => {
                issues.extend(warns.into_iter().map(|w| rec(Issue::Functional(w))));
                reports.push(Some(rep));
                edges.push(Some(k));
            }
            Err(msg) => {
                // an empty message means the realization itself failed and is already logged
                if !msg.is_empty() {
                    issues.push(rec(Issue::Failure(msg)));
                }
                reports.push(None);
                edges.push(None);
            }
        }
    }
    (reports, edges)
}

fn spatial_reports(
    cfg: &ExperimentConfig,
    density: usize,
    size: usize,
    target: f64,
    issues: &mut Vec<IssueRecord>,
) -> Vec<Option<MeasurementReport>> {
    let label = &cfg.densities[density].label;
    let built: Vec<Result<MeasurementReport>> = (0..cfg.realizations)
        .into_par_iter()
        .map(|r| {
            let seed = cfg.reference_seed(density, size, r);
            let net = generate_matched_reference(size, target, cfg.reference_alpha, seed)?;
            measure_all(
                &net.graph,
                &format!("spatial/{label}/n{size}/r{r}"),
                &cfg.measure,
            )
        })
        .collect();
    built
        .into_iter()
        .enumerate()
        .map(|(r, b)| match b {
            Ok(rep) => Some(rep),
            Err(e) => {
                issues.push(IssueRecord {
                    density: label.clone(),
                    size: Some(size),
                    family: Family::Spatial,
                    realization: r,
                    issue: Issue::Failure(e.to_string()),
                });
                None
            }
        })
        .collect()
}

fn run_realizations(
    cfg: &ExperimentConfig,
    density: usize,
    sizes: &[usize],
    issues: &mut Vec<IssueRecord>,
) -> Vec<std::result::Result<RealizationOutcome, String>> {
    let outcomes: Vec<_> = (0..cfg.realizations)
        .into_par_iter()
        .map(|r| run_realization(cfg, density, r, sizes).map_err(|e| e.to_string()))
        .collect();
    log_realizations(cfg, density, &outcomes, issues);
    outcomes
}

fn log_realizations(
    cfg: &ExperimentConfig,
    density: usize,
    outcomes: &[std::result::Result<RealizationOutcome, String>],
    issues: &mut Vec<IssueRecord>,
) {
    for (r, o) in outcomes.iter().enumerate() {
        let rec = |issue| IssueRecord {
            density: cfg.densities[density].label.clone(),
            size: None,
            family: Family::Functional,
            realization: r,
            issue,
        };
        match o {
            Ok(o) => issues.extend(o.warnings.iter().map(|&w| rec(Issue::Simulation(w)))),
            Err(msg) => issues.push(rec(Issue::Failure(msg.clone()))),
        }
    }
}

/// Mean realized density of the successful large networks.
fn reference_target(outcomes: &[std::result::Result<RealizationOutcome, String>]) -> Option<f64> {
    let ds: Vec<f64> = outcomes
        .iter()
        .filter_map(|o| o.as_ref().ok())
        .map(|o| o.spatial_density)
        .collect();
    (!ds.is_empty()).then(|| mean(&ds))
}

fn condition(
    cfg: &ExperimentConfig,
    density: usize,
    size: usize,
    outcomes: &[std::result::Result<RealizationOutcome, String>],
    issues: &mut Vec<IssueRecord>,
) -> ConditionResult {
    let (functional, functional_edges) = functional_reports(cfg, density, size, outcomes, issues);
    let (target, spatial) = match reference_target(outcomes) {
        Some(t) => (t, spatial_reports(cfg, density, size, t, issues)),
        None => (f64::NAN, vec![None; cfg.realizations]),
    };
    ConditionResult {
        density: cfg.densities[density].label.clone(),
        size,
        target_density: target,
        functional,
        spatial,
        functional_edges,
    }
}

/// Runs a single (density, size) condition from scratch.
pub fn run_condition(
    cfg: &ExperimentConfig,
    density: usize,
    size: usize,
) -> Result<(ConditionResult, Vec<IssueRecord>)> {
    cfg.validate()?;
    if density >= cfg.densities.len() {
        return Err(Error::Config(format!(
            "density index {density} out of range"
        )));
    }
    let mut issues = Vec::new();
    let outcomes = run_realizations(cfg, density, &[size], &mut issues);
    let c = condition(cfg, density, size, &outcomes, &mut issues);
    Ok((c, issues))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub metric: Metric,
    pub density: String,
    pub size: usize,
    pub n_functional: usize,
    pub n_spatial: usize,
    pub mean_functional: f64,
    pub sd_functional: f64,
    pub mean_spatial: f64,
    pub sd_spatial: f64,
    pub t_statistic: f64,
    pub p_value: f64,
    pub matches: bool,
    /// Realizations whose value was undefined and left out of the averages.
    pub undefined_functional: usize,
    pub undefined_spatial: usize,
    /// Failed realizations in either family.
    pub failed: usize,
}

fn summary(x: &[f64]) -> (f64, f64) {
    match x.len() {
        0 => (f64::NAN, f64::NAN),
        1 => (x[0], f64::NAN),
        _ => (mean(x), sample_sd(x)),
    }
}

/// One row per catalog metric for a condition.
pub fn compare(c: &ConditionResult, kind: TTestKind) -> Vec<ComparisonRow> {
    let failed = c
        .functional
        .iter()
        .chain(&c.spatial)
        .filter(|r| r.is_none())
        .count();
    Metric::catalog()
        .into_iter()
        .map(|metric| {
            let collect = |reports: &[Option<MeasurementReport>]| {
                let mut vals = Vec::new();
                let mut undefined = 0;
                for r in reports.iter().flatten() {
                    match r.get(metric) {
                        Some(v) => vals.push(v),
                        None => undefined += 1,
                    }
                }
                (vals, undefined)
            };
            let (f, uf) = collect(&c.functional);
            let (s, us) = collect(&c.spatial);
            let (mf, sf) = summary(&f);
            let (ms, ss) = summary(&s);
            let (t, p) = match t_test(&f, &s, kind) {
                Ok(r) => (r.t, r.p),
                Err(_) => (f64::NAN, f64::NAN),
            };
            ComparisonRow {
                metric,
                density: c.density.clone(),
                size: c.size,
                n_functional: f.len(),
                n_spatial: s.len(),
                mean_functional: mf,
                sd_functional: sf,
                mean_spatial: ms,
                sd_spatial: ss,
                t_statistic: t,
                p_value: p,
                matches: p >= crate::stats::ALPHA,
                undefined_functional: uf,
                undefined_spatial: us,
                failed,
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub conditions: Vec<ConditionResult>,
    pub rows: Vec<ComparisonRow>,
    pub issues: Vec<IssueRecord>,
}

/// The full protocol: every density, size and catalog metric.
pub fn sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let mut issues = Vec::new();
    let mut conditions = Vec::new();
    for d in 0..cfg.densities.len() {
        let outcomes = run_realizations(cfg, d, &cfg.sizes, &mut issues);
        for &size in &cfg.sizes {
            conditions.push(condition(cfg, d, size, &outcomes, &mut issues));
        }
    }
    let rows = conditions
        .iter()
        .flat_map(|c| compare(c, cfg.t_test))
        .collect();
    Ok(SweepResult {
        conditions,
        rows,
        issues,
    })
}

pub const COMPARISON_HEADER: &str = "metric,density,size,n_functional,n_spatial,mean_functional,sd_functional,mean_spatial,sd_spatial,t_statistic,p_value,match,undefined_functional,undefined_spatial,failed";

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut s = String::new();
    writeln!(s, "{COMPARISON_HEADER}").unwrap();
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.metric,
            r.density,
            r.size,
            r.n_functional,
            r.n_spatial,
            r.mean_functional,
            r.sd_functional,
            r.mean_spatial,
            r.sd_spatial,
            r.t_statistic,
            r.p_value,
            r.matches,
            r.undefined_functional,
            r.undefined_spatial,
            r.failed
        )
        .unwrap();
    }
    s
}

fn samples_csv(conditions: &[ConditionResult]) -> String {
    let mut s = String::from("density,size,family,realization,metric,value\n");
    for c in conditions {
        for (family, reports) in [
            (Family::Functional, &c.functional),
            (Family::Spatial, &c.spatial),
        ] {
            for (r, rep) in reports.iter().enumerate() {
                let Some(rep) = rep else { continue };
                for v in &rep.values {
                    let value = v.value.unwrap_or(f64::NAN);
                    writeln!(
                        s,
                        "{},{},{},{r},{},{value}",
                        c.density,
                        c.size,
                        family.name(),
                        v.metric
                    )
                    .unwrap();
                }
            }
        }
    }
    s
}

fn issues_csv(issues: &[IssueRecord]) -> String {
    let mut s = String::from("density,size,family,realization,kind,detail\n");
    for i in issues {
        let size = i.size.map_or(String::new(), |n| n.to_string());
        let (kind, detail) = match &i.issue {
            Issue::Simulation(SimWarning::SubActivity) => ("sub_activity", String::new()),
            Issue::Simulation(SimWarning::OverExcitability { mean_rate_hz }) => {
                ("over_excitability", format!("mean rate {mean_rate_hz} Hz"))
            }
            Issue::Functional(FuncWarning::EmptyNetwork) => ("empty_network", String::new()),
            Issue::Failure(msg) => ("failure", msg.replace([',', '\n'], ";")),
        };
        writeln!(
            s,
            "{},{size},{},{},{kind},{detail}",
            i.density,
            i.family.name(),
            i.realization
        )
        .unwrap();
    }
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes `comparison.csv`, `samples.csv`, `issues.csv` and one
/// `series_<metric>_<density>.csv` per metric and density.
pub fn write_outputs(dir: &Path, result: &SweepResult) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_file(&dir.join("comparison.csv"), &comparison_csv(&result.rows))?;
    write_file(&dir.join("samples.csv"), &samples_csv(&result.conditions))?;
    write_file(&dir.join("issues.csv"), &issues_csv(&result.issues))?;
    let mut series: BTreeMap<(String, String), String> = BTreeMap::new();
    for r in &result.rows {
        let body = series
            .entry((r.metric.name(), r.density.clone()))
            .or_insert_with(|| String::from("size,mean_f,sd_f,mean_s,sd_s,p,match\n"));
        writeln!(
            body,
            "{},{},{},{},{},{},{}",
            r.size,
            r.mean_functional,
            r.sd_functional,
            r.mean_spatial,
            r.sd_spatial,
            r.p_value,
            r.matches
        )
        .unwrap();
    }
    for ((metric, density), body) in series {
        write_file(&dir.join(format!("series_{metric}_{density}.csv")), &body)?;
    }
    Ok(())
}
