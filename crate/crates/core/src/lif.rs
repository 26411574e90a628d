//! Leaky integrate-and-fire dynamics on a spatial network.
//!
//! Membrane potentials follow `tau_m dV/dt = -(V - V_rest) + R I(t)`,
//! integrated with forward Euler. Synaptic input is a sum of alpha-function
//! shaped currents, one per presynaptic spike. Units: mV, ms, nF, nA, MΩ.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::rng::SeedTree;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NeuronParams {
    pub v_rest: f64,
    pub v_reset: f64,
    pub theta: f64,
    /// Membrane capacitance (nF).
    pub c_m: f64,
    pub tau_m: f64,
    pub t_ref: f64,
    /// Alpha-function rise time (ms).
    pub mu: f64,
}

impl Default for NeuronParams {
    fn default() -> Self {
        NeuronParams {
            v_rest: -70.0,
            v_reset: -75.0,
            theta: -55.0,
            c_m: 0.5,
            tau_m: 15.0,
            t_ref: 15.0,
            mu: 5.0,
        }
    }
}

impl NeuronParams {
    /// Membrane resistance in MΩ, `tau_m / C`.
    pub fn r_m(&self) -> f64 {
        self.tau_m / self.c_m
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v_reset < self.v_rest && self.v_rest < self.theta) {
            return Err(Error::Validation(
                "neuron potentials must satisfy v_reset < v_rest < theta".into(),
            ));
        }
        if !(self.c_m > 0.0 && self.tau_m > 0.0 && self.t_ref > 0.0 && self.mu > 0.0) {
            return Err(Error::Validation(
                "capacitance and time constants must be positive".into(),
            ));
        }
        Ok(())
    }

    fn refractory_steps(&self, dt: f64) -> u32 {
        (self.t_ref / dt).round() as u32
    }
}

/// `(x / mu) exp(1 - x / mu)` for `x >= 0`, zero before the spike.
pub fn alpha_kernel(x: f64, mu: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let r = x / mu;
    r * (1.0 - r).exp()
}

/// How inhibitory synapses are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InhibitionMode {
    /// A fraction of neurons is inhibitory; all their outgoing synapses are.
    PerNeuron,
    /// A fraction of all synapses is inhibitory, regardless of source.
    PerSynapse,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynapseConfig {
    pub excitatory_mean: f64,
    pub excitatory_sd: f64,
    pub inhibitory_mean: f64,
    pub inhibitory_sd: f64,
    pub inhibitory_fraction: f64,
    pub inhibition_mode: InhibitionMode,
}

impl Default for SynapseConfig {
    fn default() -> Self {
        SynapseConfig {
            excitatory_mean: 1.0,
            excitatory_sd: 0.1,
            inhibitory_mean: -5.0,
            inhibitory_sd: 0.5,
            inhibitory_fraction: 0.2,
            inhibition_mode: InhibitionMode::PerNeuron,
        }
    }
}

impl SynapseConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.inhibitory_fraction) {
            return Err(Error::Validation(
                "inhibitory_fraction must lie in [0, 1]".into(),
            ));
        }
        if !(self.excitatory_mean > 0.0 && self.inhibitory_mean < 0.0) {
            return Err(Error::Validation(
                "excitatory mean must be > 0 and inhibitory mean < 0".into(),
            ));
        }
        if !(self.excitatory_sd >= 0.0 && self.inhibitory_sd >= 0.0) {
            return Err(Error::Validation(
                "weight standard deviations must be >= 0".into(),
            ));
        }
        Ok(())
    }

    fn excitatory(&self) -> SignedNormal {
        SignedNormal::new(self.excitatory_mean, self.excitatory_sd)
    }

    fn inhibitory(&self) -> SignedNormal {
        SignedNormal::new(self.inhibitory_mean, self.inhibitory_sd)
    }
}

/// Normal draws resampled until they carry the sign of the mean.
struct SignedNormal {
    normal: Normal<f64>,
    positive: bool,
}

impl SignedNormal {
    fn new(mean: f64, sd: f64) -> Self {
        SignedNormal {
            normal: Normal::new(mean, sd).expect("validated sd"),
            positive: mean > 0.0,
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let w = self.normal.sample(rng);
            if (w > 0.0) == self.positive && w != 0.0 {
                return w;
            }
        }
    }
}

/// Synaptic weights aligned with the graph's out-lists.
#[derive(Clone, Debug, PartialEq)]
pub struct SynapseTable {
    /// Per-neuron inhibitory flag. All false in per-synapse mode.
    pub inhibitory: Vec<bool>,
    /// `weights[i][k]` belongs to edge `(i, graph.out_neighbors(i)[k])`.
    pub weights: Vec<Vec<f64>>,
    pub mode: InhibitionMode,
}

impl SynapseTable {
    pub fn build(graph: &DirectedGraph, cfg: &SynapseConfig, seeds: &SeedTree) -> Result<Self> {
        cfg.validate()?;
        let n = graph.node_count();
        let exc = cfg.excitatory();
        let inh = cfg.inhibitory();
        let mut rng = seeds.child("weights").rng();
        let (inhibitory, weights) = match cfg.inhibition_mode {
            InhibitionMode::PerNeuron => {
                let count = (cfg.inhibitory_fraction * n as f64).round() as usize;
                let mut flags = vec![false; n];
                for i in index::sample(&mut seeds.child("inhibitory").rng(), n, count) {
                    flags[i] = true;
                }
                let weights = (0..n)
                    .map(|i| {
                        let dist = if flags[i] { &inh } else { &exc };
                        (0..graph.out_degree(i))
                            .map(|_| dist.sample(&mut rng))
                            .collect()
                    })
                    .collect();
                (flags, weights)
            }
            InhibitionMode::PerSynapse => {
                let m = graph.edge_count();
                let count = (cfg.inhibitory_fraction * m as f64).round() as usize;
                let mut syn_flags = vec![false; m];
                for e in index::sample(&mut seeds.child("inhibitory").rng(), m, count) {
                    syn_flags[e] = true;
                }
                let mut e = 0;
                let weights = (0..n)
                    .map(|i| {
                        (0..graph.out_degree(i))
                            .map(|_| {
                                let dist = if syn_flags[e] { &inh } else { &exc };
                                e += 1;
                                dist.sample(&mut rng)
                            })
                            .collect()
                    })
                    .collect();
                (vec![false; n], weights)
            }
        };
        Ok(SynapseTable {
            inhibitory,
            weights,
            mode: cfg.inhibition_mode,
        })
    }

    /// Weight of edge `(i, j)`, if present.
    pub fn weight(&self, graph: &DirectedGraph, i: usize, j: usize) -> Option<f64> {
        graph
            .out_neighbors(i)
            .binary_search(&j)
            .ok()
            .map(|k| self.weights[i][k])
    }

    pub fn inhibitory_synapse_fraction(&self) -> f64 {
        let (neg, total) = self
            .weights
            .iter()
            .flatten()
            .fold((0usize, 0usize), |(n, t), &w| {
                (n + (w < 0.0) as usize, t + 1)
            });
        if total == 0 {
            0.0
        } else {
            neg as f64 / total as f64
        }
    }
}

/// External Poisson input: one generator per driven neuron.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PoissonDrive {
    pub driven_fraction: f64,
    pub rate_hz: f64,
    /// Generator-to-neuron weights, drawn like excitatory synapses.
    pub weight_mean: f64,
    pub weight_sd: f64,
}

impl Default for PoissonDrive {
    fn default() -> Self {
        PoissonDrive {
            driven_fraction: 0.02,
            rate_hz: 20.0,
            weight_mean: 1.0,
            weight_sd: 0.1,
        }
    }
}

impl PoissonDrive {
    pub fn validate(&self) -> Result<()> {
        if !(self.driven_fraction > 0.0 && self.driven_fraction <= 1.0) {
            return Err(Error::Validation(
                "driven_fraction must lie in (0, 1]".into(),
            ));
        }
        if !(self.rate_hz > 0.0 && self.rate_hz.is_finite()) {
            return Err(Error::Validation("drive rate must be > 0".into()));
        }
        if !(self.weight_mean > 0.0 && self.weight_sd >= 0.0) {
            return Err(Error::Validation("drive weights must be excitatory".into()));
        }
        Ok(())
    }

    pub fn driven_count(&self, n: usize) -> usize {
        ((self.driven_fraction * n as f64).round() as usize).clamp(1, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub duration_ms: f64,
    pub dt_ms: f64,
    pub transient_ms: f64,
    /// Alpha contributions older than `kernel_cutoff_mu * mu` are dropped.
    pub kernel_cutoff_mu: f64,
    /// Mean firing rate above which the trace is flagged over-excited.
    pub max_mean_rate_hz: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            duration_ms: 3000.0,
            dt_ms: 1.0,
            transient_ms: 100.0,
            kernel_cutoff_mu: 10.0,
            max_mean_rate_hz: 40.0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt_ms > 0.0) {
            return Err(Error::Validation("dt must be > 0".into()));
        }
        if !(self.transient_ms >= 0.0 && self.kernel_cutoff_mu > 0.0) {
            return Err(Error::Validation(
                "transient and kernel cutoff must be non-negative".into(),
            ));
        }
        if self.total_steps() <= self.transient_steps() {
            return Err(Error::Validation(format!(
                "nothing left to record: duration {} ms, transient {} ms",
                self.duration_ms, self.transient_ms
            )));
        }
        Ok(())
    }

    pub fn total_steps(&self) -> usize {
        (self.duration_ms / self.dt_ms).round() as usize
    }

    pub fn transient_steps(&self) -> usize {
        (self.transient_ms / self.dt_ms).round() as usize
    }

    pub fn recorded_steps(&self) -> usize {
        self.total_steps().saturating_sub(self.transient_steps())
    }
}

/// One external input event delivered to a neuron.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveEvent {
    pub neuron: usize,
    pub time_ms: f64,
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimWarning {
    /// No neuron fired during the whole run.
    SubActivity,
    OverExcitability {
        mean_rate_hz: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationTrace {
    pub dt: f64,
    pub duration: f64,
    pub transient_cut: f64,
    pub n_neurons: usize,
    pub n_samples: usize,
    /// Row-major `[neuron][sample]`, post-transient only.
    pub v: Vec<f64>,
    /// Spike times (ms) per neuron over the full run.
    pub spikes: Vec<Vec<f64>>,
    pub drive_events: Vec<DriveEvent>,
    pub warnings: Vec<SimWarning>,
}

impl SimulationTrace {
    pub fn potential(&self, neuron: usize) -> &[f64] {
        &self.v[neuron * self.n_samples..(neuron + 1) * self.n_samples]
    }

    pub fn spike_count(&self) -> usize {
        self.spikes.iter().map(Vec::len).sum()
    }

    pub fn mean_rate_hz(&self) -> f64 {
        if self.n_neurons == 0 || self.duration <= 0.0 {
            return 0.0;
        }
        self.spike_count() as f64 / self.n_neurons as f64 / (self.duration / 1000.0)
    }
}

/// Synaptic current into `neuron` at time `t`, evaluated directly from spike
/// lists. Contributions older than `cutoff` ms are dropped.
pub fn total_current(
    neuron: usize,
    t: f64,
    spikes: &[Vec<f64>],
    graph: &DirectedGraph,
    synapses: &SynapseTable,
    mu: f64,
    cutoff: f64,
) -> f64 {
    graph
        .in_neighbors(neuron)
        .iter()
        .map(|&j| {
            let w = synapses.weight(graph, j, neuron).unwrap_or(0.0);
            spikes[j]
                .iter()
                .filter(|&&s| s <= t && t - s <= cutoff)
                .map(|&s| w * alpha_kernel(t - s, mu))
                .sum::<f64>()
        })
        .sum()
}

/// Current delivered to `neuron` at time `t` by external drive events.
pub fn drive_current(neuron: usize, t: f64, events: &[DriveEvent], mu: f64, cutoff: f64) -> f64 {
    events
        .iter()
        .filter(|e| e.neuron == neuron && e.time_ms <= t && t - e.time_ms <= cutoff)
        .map(|e| e.weight * alpha_kernel(t - e.time_ms, mu))
        .sum()
}

/// Membrane state of a population.
#[derive(Clone, Debug, PartialEq)]
pub struct LifState {
    pub v: Vec<f64>,
    /// Remaining clamped steps per neuron.
    pub refractory: Vec<u32>,
}

impl LifState {
    pub fn at_rest(n: usize, params: &NeuronParams) -> Self {
        LifState {
            v: vec![params.v_rest; n],
            refractory: vec![0; n],
        }
    }

    /// One forward-Euler step. Neurons reaching `theta` are reset and
    /// clamped at `v_reset` for the next `t_ref / dt` steps. Returns the
    /// indices of neurons that spiked.
    pub fn step(&mut self, params: &NeuronParams, current: &[f64], dt: f64) -> Result<Vec<usize>> {
        let mut fired = Vec::new();
        self.step_into(params, current, dt, 0, &mut fired)?;
        Ok(fired)
    }

    fn step_into(
        &mut self,
        params: &NeuronParams,
        current: &[f64],
        dt: f64,
        step_index: usize,
        fired: &mut Vec<usize>,
    ) -> Result<()> {
        let r = params.r_m();
        let gain = dt / params.tau_m;
        let ref_steps = params.refractory_steps(dt);
        for (i, (v, refr)) in self
            .v
            .iter_mut()
            .zip(self.refractory.iter_mut())
            .enumerate()
        {
            if *refr > 0 {
                *refr -= 1;
                *v = params.v_reset;
                continue;
            }
            let next = *v + gain * (-(*v - params.v_rest) + r * current[i]);
            if !next.is_finite() {
                return Err(Error::NumericalDivergence {
                    neuron: i,
                    step: step_index,
                });
            }
            if next >= params.theta {
                *v = params.v_reset;
                *refr = ref_steps;
                fired.push(i);
            } else {
                *v = next;
            }
        }
        Ok(())
    }
}

/// Runs the network from rest. Deterministic in `seeds`.
pub fn simulate(
    graph: &DirectedGraph,
    params: &NeuronParams,
    synapses: &SynapseTable,
    drive: Option<&PoissonDrive>,
    sim: &SimConfig,
    seeds: &SeedTree,
) -> Result<SimulationTrace> {
    params.validate()?;
    if let Some(d) = drive {
        d.validate()?;
    }
    sim.validate()?;
    let n = graph.node_count();
    if synapses.weights.len() != n {
        return Err(Error::Validation(
            "synapse table does not match the graph".into(),
        ));
    }
    let dt = sim.dt_ms;
    let total = sim.total_steps();
    let cut = sim.transient_steps();
    let n_samples = total - cut;

    let window = (sim.kernel_cutoff_mu * params.mu / dt).floor() as usize;
    let kernel: Vec<f64> = (0..=window)
        .map(|m| alpha_kernel(m as f64 * dt, params.mu))
        .collect();
    let slots = window + 1;
    // arrivals[slot * n + i]: summed weight of events reaching i at that step
    let mut arrivals = vec![0.0f64; slots * n];

    let mut drive_rng = seeds.child("drive").rng();
    let (driven, poisson, drive_weights) = match drive {
        Some(d) => {
            let mut driven = index::sample(&mut drive_rng, n, d.driven_count(n)).into_vec();
            driven.sort_unstable();
            let poisson = Poisson::new(d.rate_hz * dt / 1000.0)
                .map_err(|e| Error::Validation(format!("poisson rate: {e}")))?;
            (
                driven,
                Some(poisson),
                Some(SignedNormal::new(d.weight_mean, d.weight_sd)),
            )
        }
        None => (Vec::new(), None, None),
    };

    let mut state = LifState::at_rest(n, params);
    let mut v_out = vec![0.0f64; n * n_samples];
    let mut spikes: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut drive_events = Vec::new();
    let mut current = vec![0.0f64; n];
    let mut fired = Vec::new();
    let mut weight_rng = seeds.child("drive-weights").rng();

    for k in 0..total {
        if k >= cut {
            let col = k - cut;
            for (i, &v) in state.v.iter().enumerate() {
                v_out[i * n_samples + col] = v;
            }
        }
        if k + 1 == total {
            break;
        }

        current.fill(0.0);
        for (m, &kv) in kernel.iter().enumerate().skip(1) {
            if m > k {
                break;
            }
            let slot = (k - m) % slots;
            let row = &arrivals[slot * n..(slot + 1) * n];
            for (c, &a) in current.iter_mut().zip(row) {
                *c += kv * a;
            }
        }

        let next = k + 1;
        let slot = next % slots;
        arrivals[slot * n..(slot + 1) * n].fill(0.0);

        fired.clear();
        state.step_into(params, &current, dt, next, &mut fired)?;
        let t_next = next as f64 * dt;
        for &j in &fired {
            spikes[j].push(t_next);
            for (&target, &w) in graph.out_neighbors(j).iter().zip(&synapses.weights[j]) {
                arrivals[slot * n + target] += w;
            }
        }
        if let (Some(poisson), Some(weights)) = (&poisson, &drive_weights) {
            for &i in &driven {
                let count = poisson.sample(&mut drive_rng) as usize;
                for _ in 0..count {
                    let w = weights.sample(&mut weight_rng);
                    arrivals[slot * n + i] += w;
                    drive_events.push(DriveEvent {
                        neuron: i,
                        time_ms: t_next,
                        weight: w,
                    });
                }
            }
        }
    }

    let mut trace = SimulationTrace {
        dt,
        duration: sim.duration_ms,
        transient_cut: sim.transient_ms,
        n_neurons: n,
        n_samples,
        v: v_out,
        spikes,
        drive_events,
        warnings: Vec::new(),
    };
    if trace.spike_count() == 0 {
        trace.warnings.push(SimWarning::SubActivity);
    }
    let rate = trace.mean_rate_hz();
    if rate > sim.max_mean_rate_hz {
        trace
            .warnings
            .push(SimWarning::OverExcitability { mean_rate_hz: rate });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> NeuronParams {
        NeuronParams::default()
    }

    #[test]
    fn alpha_kernel_examples() {
        assert_eq!(alpha_kernel(5.0, 5.0), 1.0);
        assert_eq!(alpha_kernel(0.0, 5.0), 0.0);
        assert_eq!(alpha_kernel(-1.0, 5.0), 0.0);
        assert!((alpha_kernel(10.0, 5.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((alpha_kernel(10.0, 5.0) - 0.7358).abs() < 1e-4);
    }

    #[test]
    fn resistance_follows_time_constant() {
        assert_eq!(params().r_m(), 30.0);
        let bad = NeuronParams {
            v_reset: -60.0,
            ..params()
        };
        assert!(bad.validate().is_err());
    }

    fn pair_graph() -> (DirectedGraph, SynapseTable) {
        let g = DirectedGraph::from_edges(2, [(0, 1)]).unwrap();
        let table = SynapseTable {
            inhibitory: vec![false; 2],
            weights: vec![vec![1.0], vec![]],
            mode: InhibitionMode::PerNeuron,
        };
        (g, table)
    }

    #[test]
    fn total_current_examples() {
        let (g, table) = pair_graph();
        let mu = 5.0;
        let none = vec![vec![], vec![]];
        assert_eq!(total_current(1, 100.0, &none, &g, &table, mu, 50.0), 0.0);
        let one = vec![vec![95.0], vec![]];
        assert!((total_current(1, 100.0, &one, &g, &table, mu, 50.0) - 1.0).abs() < 1e-12);
        let two = vec![vec![90.0, 95.0], vec![]];
        let expected = 1.0 + 2.0 * (-1.0f64).exp();
        assert!((total_current(1, 100.0, &two, &g, &table, mu, 50.0) - expected).abs() < 1e-12);
        assert!((expected - 1.7358).abs() < 1e-4);
        // beyond the cutoff
        let old = vec![vec![40.0], vec![]];
        assert_eq!(total_current(1, 100.0, &old, &g, &table, mu, 50.0), 0.0);
    }

    #[test]
    fn euler_step_examples() {
        let p = params();
        let mut s = LifState::at_rest(1, &p);
        assert!(s.step(&p, &[0.0], 1.0).unwrap().is_empty());
        assert_eq!(s.v[0], p.v_rest);

        let mut s = LifState {
            v: vec![p.v_rest + 10.0],
            refractory: vec![0],
        };
        s.step(&p, &[0.0], 1.0).unwrap();
        assert!((s.v[0] - (p.v_rest + 10.0 - 10.0 / 15.0)).abs() < 1e-12);
    }

    #[test]
    fn divergence_is_reported() {
        let p = params();
        let mut s = LifState::at_rest(2, &p);
        let err = s.step(&p, &[0.0, f64::NAN], 1.0).unwrap_err();
        assert!(matches!(err, Error::NumericalDivergence { neuron: 1, .. }));
    }

    #[test]
    fn spike_then_exact_refractory_clamp() {
        let p = params();
        let current = (p.theta - p.v_rest) / p.r_m() + 0.5;
        let mut s = LifState::at_rest(1, &p);
        let mut history = Vec::new();
        let mut spike_steps = Vec::new();
        for k in 1..=200 {
            if !s.step(&p, &[current], 1.0).unwrap().is_empty() {
                spike_steps.push(k);
            }
            history.push(s.v[0]);
        }
        let first = spike_steps[0];
        // the spike step itself and the next t_ref steps sit at v_reset
        for k in first..=first + 15 {
            assert_eq!(history[k - 1], p.v_reset, "step {k}");
        }
        assert!(history[first + 16 - 1] > p.v_reset);
        for w in spike_steps.windows(2) {
            assert!((w[1] - w[0]) as f64 >= p.t_ref);
        }
    }

    /// Interval between the second and third spike under constant current.
    fn euler_period(p: &NeuronParams, current: f64, dt: f64) -> f64 {
        let mut s = LifState::at_rest(1, p);
        let mut times = Vec::new();
        let mut k = 0usize;
        while times.len() < 3 {
            k += 1;
            if !s.step(p, &[current], dt).unwrap().is_empty() {
                times.push(k as f64 * dt);
            }
        }
        times[2] - times[1]
    }

    fn analytic_period(p: &NeuronParams, current: f64) -> f64 {
        let ri = p.r_m() * current;
        p.t_ref + p.tau_m * ((ri + p.v_rest - p.v_reset) / (ri + p.v_rest - p.theta)).ln()
    }

    #[test]
    fn firing_period_converges_to_closed_form() {
        let p = params();
        for ri in [16.0, 20.0, 30.0, 60.0] {
            let i0 = ri / p.r_m();
            let exact = analytic_period(&p, i0);
            let fine = euler_period(&p, i0, 0.1);
            let coarse = euler_period(&p, i0, 1.0);
            assert!(
                (fine - exact).abs() / exact < 0.05,
                "dt=0.1 ri={ri}: {fine} vs {exact}"
            );
            assert!(
                (coarse - exact).abs() / exact < 0.15,
                "dt=1 ri={ri}: {coarse} vs {exact}"
            );
        }
    }

    #[test]
    fn per_neuron_inhibition_fraction_and_signs() {
        let net = crate::spatial::generate(crate::spatial::GenerationSpec {
            n: 300,
            alpha: 2.0,
            beta: 0.4,
            seed: 2,
        })
        .unwrap();
        let table =
            SynapseTable::build(&net.graph, &SynapseConfig::default(), &SeedTree::new(1)).unwrap();
        assert_eq!(table.inhibitory.iter().filter(|&&b| b).count(), 60);
        for (i, ws) in table.weights.iter().enumerate() {
            assert_eq!(ws.len(), net.graph.out_degree(i));
            assert!(ws.iter().all(|&w| (w < 0.0) == table.inhibitory[i]));
        }

        let cfg = SynapseConfig {
            inhibition_mode: InhibitionMode::PerSynapse,
            ..Default::default()
        };
        let table = SynapseTable::build(&net.graph, &cfg, &SeedTree::new(1)).unwrap();
        let expected =
            (0.2 * net.graph.edge_count() as f64).round() / net.graph.edge_count() as f64;
        assert!((table.inhibitory_synapse_fraction() - expected).abs() < 1e-12);
    }

    #[test]
    fn rejects_empty_recording_window() {
        let g = DirectedGraph::empty(1);
        let table = SynapseTable {
            inhibitory: vec![false],
            weights: vec![vec![]],
            mode: InhibitionMode::PerNeuron,
        };
        let sim = SimConfig {
            duration_ms: 100.0,
            transient_ms: 100.0,
            ..Default::default()
        };
        assert!(simulate(&g, &params(), &table, None, &sim, &SeedTree::new(0)).is_err());
    }

    #[test]
    fn lone_neuron_without_drive_stays_at_rest() {
        let g = DirectedGraph::empty(1);
        let table = SynapseTable {
            inhibitory: vec![false],
            weights: vec![vec![]],
            mode: InhibitionMode::PerNeuron,
        };
        let sim = SimConfig {
            duration_ms: 500.0,
            ..Default::default()
        };
        let trace = simulate(&g, &params(), &table, None, &sim, &SeedTree::new(0)).unwrap();
        assert_eq!(trace.n_samples, 400);
        assert!(trace.v.iter().all(|&v| v == -70.0));
        assert_eq!(trace.warnings, vec![SimWarning::SubActivity]);
    }

    fn small_network(seed: u64) -> (DirectedGraph, SynapseTable) {
        let net = crate::spatial::generate(crate::spatial::GenerationSpec {
            n: 120,
            alpha: 2.0,
            beta: 0.4,
            seed,
        })
        .unwrap();
        let table =
            SynapseTable::build(&net.graph, &SynapseConfig::default(), &SeedTree::new(seed))
                .unwrap();
        (net.graph, table)
    }

    #[test]
    fn engine_matches_direct_current_replay() {
        let p = params();
        let (g, table) = small_network(4);
        let drive = PoissonDrive {
            driven_fraction: 0.1,
            ..Default::default()
        };
        let sim = SimConfig {
            duration_ms: 400.0,
            transient_ms: 0.0,
            ..Default::default()
        };
        let trace = simulate(&g, &p, &table, Some(&drive), &sim, &SeedTree::new(8)).unwrap();
        assert!(trace.spike_count() > 0);

        let cutoff = sim.kernel_cutoff_mu * p.mu;
        let mut state = LifState::at_rest(g.node_count(), &p);
        for k in 0..trace.n_samples - 1 {
            for i in 0..g.node_count() {
                assert!(
                    (state.v[i] - trace.potential(i)[k]).abs() < 1e-9,
                    "neuron {i} step {k}"
                );
            }
            let t = k as f64;
            let current: Vec<f64> = (0..g.node_count())
                .map(|i| {
                    total_current(i, t, &trace.spikes, &g, &table, p.mu, cutoff)
                        + drive_current(i, t, &trace.drive_events, p.mu, cutoff)
                })
                .collect();
            let before = state.v.clone();
            for i in state.step(&p, &current, 1.0).unwrap() {
                assert!(
                    trace.spikes[i].contains(&(t + 1.0)),
                    "neuron {i} t {t} v {} I {}",
                    before[i],
                    current[i]
                );
            }
        }
    }

    #[test]
    fn simulation_is_deterministic() {
        let p = params();
        let (g, table) = small_network(5);
        let sim = SimConfig {
            duration_ms: 300.0,
            ..Default::default()
        };
        let drive = PoissonDrive {
            driven_fraction: 0.1,
            ..Default::default()
        };
        let a = simulate(&g, &p, &table, Some(&drive), &sim, &SeedTree::new(3)).unwrap();
        let b = simulate(&g, &p, &table, Some(&drive), &sim, &SeedTree::new(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn default_parameters_give_moderate_activity() {
        let net = crate::spatial::generate(crate::spatial::GenerationSpec {
            n: 500,
            alpha: 2.0,
            beta: 0.4,
            seed: 1,
        })
        .unwrap();
        let table =
            SynapseTable::build(&net.graph, &SynapseConfig::default(), &SeedTree::new(1)).unwrap();
        let sim = SimConfig {
            duration_ms: 1500.0,
            ..Default::default()
        };
        let trace = simulate(
            &net.graph,
            &params(),
            &table,
            Some(&PoissonDrive::default()),
            &sim,
            &SeedTree::new(1),
        )
        .unwrap();
        let rate = trace.mean_rate_hz();
        assert!(
            trace.warnings.is_empty(),
            "warnings {:?}, rate {rate}",
            trace.warnings
        );
        assert!(rate > 0.0 && rate < sim.max_mean_rate_hz);
        let mut isi_ok = true;
        for s in &trace.spikes {
            isi_ok &= s.windows(2).all(|w| w[1] - w[0] >= params().t_ref);
        }
        assert!(isi_ok);
        assert!(trace.v.iter().all(|&v| v <= params().theta));
    }

    proptest! {
        #[test]
        fn current_is_linear_in_spike_sets(
            a in proptest::collection::vec(0.0f64..100.0, 0..12),
            b in proptest::collection::vec(0.0f64..100.0, 0..12),
        ) {
            let (g, table) = pair_graph();
            let t = 100.0;
            let eval = |s: &Vec<f64>| total_current(1, t, &[s.clone(), vec![]], &g, &table, 5.0, 50.0);
            let mut merged = a.clone();
            merged.extend(&b);
            prop_assert!((eval(&merged) - eval(&a) - eval(&b)).abs() < 1e-9);
        }
    }
}
