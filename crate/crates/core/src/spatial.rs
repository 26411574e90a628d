//! Spatial network generation.
//!
//! Neurons sit uniformly inside the unit semi-sphere (`z >= 0`). Each ordered
//! pair `(i, j)` is wired independently with probability
//! `beta * exp(-alpha * d(i, j))`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::rng::SeedTree;

pub type Point = [f64; 3];

/// Pair samples used to estimate `E[exp(-alpha d)]`.
pub const ATTENUATION_SAMPLES: usize = 2_000_000;

pub fn distance(a: &Point, b: &Point) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationSpec {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
}

impl GenerationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Validation(format!("n must be >= 2, got {}", self.n)));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Validation(format!(
                "alpha must be > 0, got {}",
                self.alpha
            )));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::Validation(format!(
                "beta must lie in (0, 1], got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpatialNetwork {
    pub graph: DirectedGraph,
    pub positions: Vec<Point>,
    pub params: GenerationSpec,
}

/// `n` points i.i.d. uniform by volume in the unit semi-sphere, by rejection
/// from the enclosing box `[-1, 1]^2 x [0, 1]`.
pub fn sample_positions<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Point> {
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p = [
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(0.0..=1.0),
        ];
        if p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= 1.0 {
            points.push(p);
        }
    }
    points
}

/// Wires every ordered pair with an independent Bernoulli draw. Rows are
/// drawn in parallel, each from its own stream under `seeds`.
pub fn connect(
    positions: Vec<Point>,
    spec: GenerationSpec,
    seeds: &SeedTree,
) -> Result<SpatialNetwork> {
    spec.validate()?;
    if positions.len() != spec.n {
        return Err(Error::Validation(format!(
            "{} positions for a network of {} nodes",
            positions.len(),
            spec.n
        )));
    }
    let out_lists: Vec<Vec<usize>> = (0..spec.n)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeds.child_indexed("row", i as u64).rng();
            let pi = &positions[i];
            (0..spec.n)
                .filter(|&j| {
                    if j == i {
                        return false;
                    }
                    let p = spec.beta * (-spec.alpha * distance(pi, &positions[j])).exp();
                    rng.random::<f64>() < p
                })
                .collect()
        })
        .collect();
    Ok(SpatialNetwork {
        graph: DirectedGraph::from_out_lists(out_lists),
        positions,
        params: spec,
    })
}

/// Positions then edges, each from a fixed branch of `spec.seed`.
pub fn generate(spec: GenerationSpec) -> Result<SpatialNetwork> {
    spec.validate()?;
    let seeds = SeedTree::new(spec.seed);
    let positions = sample_positions(spec.n, &mut seeds.child("positions").rng());
    connect(positions, spec, &seeds.child("edges"))
}

/// Monte Carlo estimate of `E[exp(-alpha d)]` over pairs of independent
/// uniform points in the semi-sphere. Results are cached per `alpha`.
pub fn mean_pair_attenuation(alpha: f64) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&m) = cache.lock().unwrap().get(&alpha.to_bits()) {
        return m;
    }
    const CHUNKS: usize = 64;
    let root = SeedTree::new(0x5eed_a77e).child(&format!("alpha:{:016x}", alpha.to_bits()));
    let per_chunk = ATTENUATION_SAMPLES / CHUNKS;
    let total: f64 = (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let mut rng = root.child_indexed("chunk", c as u64).rng();
            let a = sample_positions(per_chunk, &mut rng);
            let b = sample_positions(per_chunk, &mut rng);
            a.iter()
                .zip(&b)
                .map(|(p, q)| (-alpha * distance(p, q)).exp())
                .sum::<f64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let m = total / (per_chunk * CHUNKS) as f64;
    cache.lock().unwrap().insert(alpha.to_bits(), m);
    m
}

/// `beta` whose expected density at this `alpha` equals `target_density`.
pub fn solve_beta(target_density: f64, alpha: f64) -> Result<f64> {
    if !(target_density > 0.0 && target_density < 1.0) {
        return Err(Error::Validation(format!(
            "target density must lie in (0, 1), got {target_density}"
        )));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Validation(format!("alpha must be > 0, got {alpha}")));
    }
    // expected density is linear in beta
    let beta = target_density / mean_pair_attenuation(alpha);
    if beta > 1.0 {
        return Err(Error::InfeasibleDensity {
            target: target_density,
            beta,
        });
    }
    Ok(beta)
}

/// Small spatial network whose expected density equals `target_density`.
pub fn generate_matched_reference(
    n: usize,
    target_density: f64,
    alpha: f64,
    seed: u64,
) -> Result<SpatialNetwork> {
    if n < 2 {
        return Err(Error::Validation(format!("n must be >= 2, got {n}")));
    }
    let beta = solve_beta(target_density, alpha)?;
    generate(GenerationSpec {
        n,
        alpha,
        beta,
        seed,
    })
}
