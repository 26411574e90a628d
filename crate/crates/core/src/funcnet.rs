//! Functional networks from lagged cross-correlation of sensor signals.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::sensor::SensorRecord;

/// `(1 / (Ns - tau)) * sum_k a[k + tau] * b[k]` for a non-negative lag.
pub fn cross_correlation(a: &[f64], b: &[f64], tau: usize) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Validation(format!(
            "series lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let overlap = a.len().saturating_sub(tau);
    if overlap < 2 {
        return Err(Error::InsufficientData(format!(
            "lag {tau} leaves {overlap} overlapping samples of {}",
            a.len()
        )));
    }
    let sum: f64 = a[tau..].iter().zip(&b[..overlap]).map(|(x, y)| x * y).sum();
    Ok(sum / overlap as f64)
}

/// Cross-correlation at a signed lag; negative lags swap the roles of the
/// two series.
pub fn lagged_correlation(a: &[f64], b: &[f64], tau: i64) -> Result<f64> {
    if tau >= 0 {
        cross_correlation(a, b, tau as usize)
    } else {
        cross_correlation(b, a, tau.unsigned_abs() as usize)
    }
}

/// Largest absolute cross-correlation over lags `-max_lag..=max_lag`.
pub fn max_abs_correlation(a: &[f64], b: &[f64], max_lag: usize) -> Result<f64> {
    let mut best = 0.0f64;
    for tau in 0..=max_lag {
        best = best.max(cross_correlation(a, b, tau)?.abs());
        if tau > 0 {
            best = best.max(cross_correlation(b, a, tau)?.abs());
        }
    }
    Ok(best)
}

/// Symmetric matrix of peak absolute lagged correlations. The diagonal is
/// left unset (NaN).
#[derive(Clone, Debug)]
pub struct CorrelationMatrix {
    pub n: usize,
    pub max_lag_ms: f64,
    values: Vec<f64>,
}

impl CorrelationMatrix {
    pub fn from_values(n: usize, max_lag_ms: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::Validation(format!(
                "{} values for a {n}x{n} matrix",
                values.len()
            )));
        }
        let mut m = CorrelationMatrix {
            n,
            max_lag_ms,
            values,
        };
        for i in 0..n {
            m.values[i * n + i] = f64::NAN;
            for j in 0..i {
                if m.values[i * n + j] != m.values[j * n + i] {
                    return Err(Error::Validation(format!(
                        "matrix not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Off-diagonal pairs `i < j` with their weights, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.get(i, j))))
    }
}

pub fn correlation_matrix(
    rec: &SensorRecord,
    max_lag_ms: f64,
    dt: f64,
) -> Result<CorrelationMatrix> {
    if !(dt > 0.0 && max_lag_ms >= 0.0) {
        return Err(Error::Validation(
            "lag window and dt must be non-negative".into(),
        ));
    }
    let steps = max_lag_ms / dt;
    if (steps - steps.round()).abs() > 1e-9 {
        return Err(Error::Validation(format!(
            "max lag {max_lag_ms} ms is not a multiple of dt {dt} ms"
        )));
    }
    let max_lag = steps.round() as usize;
    let n = rec.n_sensors;
    for s in 0..n {
        let x = rec.signal(s);
        if x.iter().all(|&v| v == x[0]) {
            return Err(Error::ConstantSignal { index: s });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let peaks: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| max_abs_correlation(rec.signal(i), rec.signal(j), max_lag))
        .collect::<Result<_>>()?;
    let mut values = vec![f64::NAN; n * n];
    for (&(i, j), &w) in pairs.iter().zip(&peaks) {
        values[i * n + j] = w;
        values[j * n + i] = w;
    }
    Ok(CorrelationMatrix {
        n,
        max_lag_ms,
        values,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum FuncWarning {
    /// The density target rounds to zero edges.
    EmptyNetwork,
}

#[derive(Clone, Debug)]
pub struct FunctionalNetwork {
    /// Symmetric directed representation of the undirected network.
    pub graph: DirectedGraph,
    /// Weight of the weakest selected pair (NaN when no edge was selected).
    pub threshold: f64,
    pub edge_pairs: usize,
    pub realized_density: f64,
    pub warnings: Vec<FuncWarning>,
}

/// Number of undirected pairs matching `density` on `n` nodes.
pub fn target_pair_count(n: usize, density: f64) -> usize {
    (density * (n * (n - 1) / 2) as f64).round() as usize
}

/// Keeps the `round(density * n(n-1)/2)` strongest pairs. Ties at the cut
/// go to the lexicographically smaller pair.
pub fn build_functional(w: &CorrelationMatrix, target_density: f64) -> Result<FunctionalNetwork> {
    if !(target_density > 0.0 && target_density <= 1.0) {
        return Err(Error::Validation(format!(
            "target density must lie in (0, 1], got {target_density}"
        )));
    }
    if w.n < 2 {
        return Err(Error::DegenerateGraph(
            "functional network needs 2 sensors".into(),
        ));
    }
    let k = target_pair_count(w.n, target_density);
    let mut ranked: Vec<(usize, usize, f64)> = w.pairs().collect();
    ranked.sort_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    ranked.truncate(k);
    let threshold = ranked.last().map_or(f64::NAN, |p| p.2);
    let graph =
        DirectedGraph::from_undirected_edge_list(w.n, ranked.iter().map(|&(i, j, _)| (i, j)))?;
    Ok(FunctionalNetwork {
        realized_density: k as f64 / (w.n * (w.n - 1) / 2) as f64,
        graph,
        threshold,
        edge_pairs: k,
        warnings: if k == 0 {
            vec![FuncWarning::EmptyNetwork]
        } else {
            vec![]
        },
    })
}
