//! Distance-based measurements: mean shortest path, global efficiency and
//! closeness vitality. Unreachable pairs count as distance `N`.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeMask, UNREACHED};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathStats {
    pub mean_distance: f64,
    pub efficiency: f64,
}

/// Row-major all-pairs BFS distances; [`UNREACHED`] for missing paths.
pub fn distance_matrix(g: &DirectedGraph) -> Vec<u32> {
    let n = g.node_count();
    let mut out = vec![UNREACHED; n * n];
    out.par_chunks_mut(n.max(1))
        .enumerate()
        .for_each_init(VecDeque::new, |queue, (s, row)| {
            g.bfs_distances_with(s, None, row, queue);
        });
    out
}

pub fn shortest_path_stats(g: &DirectedGraph) -> Result<PathStats> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::DegenerateGraph(format!(
            "path statistics need at least 2 nodes, got {n}"
        )));
    }
    let dist = distance_matrix(g);
    let mut total: u64 = 0;
    let mut inverse = 0.0;
    for s in 0..n {
        let row = &dist[s * n..(s + 1) * n];
        let mut row_inv = 0.0;
        for (t, &d) in row.iter().enumerate() {
            if t == s {
                continue;
            }
            if d == UNREACHED {
                total += n as u64;
            } else {
                total += d as u64;
                row_inv += 1.0 / d as f64;
            }
        }
        inverse += row_inv;
    }
    let pairs = (n * (n - 1)) as f64;
    Ok(PathStats {
        mean_distance: total as f64 / pairs,
        efficiency: inverse / pairs,
    })
}

/// Distance assigned to unreachable pairs once a node has been removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VitalityDisconnection {
    /// Use the node count of the graph being summed (`N`, then `N - 1`).
    #[default]
    CurrentSize,
    /// Always use the original `N`.
    OriginalSize,
}

/// Sum of distances over ordered pairs of visible nodes, unreachable pairs
/// contributing `unreachable`.
pub fn distance_sum(g: &DirectedGraph, mask: Option<&NodeMask>, unreachable: u64) -> u64 {
    let n = g.node_count();
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    let mut total = 0u64;
    for s in 0..n {
        if mask.is_some_and(|m| m.is_removed(s)) {
            continue;
        }
        g.bfs_distances_with(s, mask, &mut dist, &mut queue);
        for (t, &d) in dist.iter().enumerate() {
            if t == s || mask.is_some_and(|m| m.is_removed(t)) {
                continue;
            }
            total += if d == UNREACHED {
                unreachable
            } else {
                d as u64
            };
        }
    }
    total
}

/// `V(i) = mu_i - mu` for every node, where `mu` sums all pairwise
/// distances and `mu_i` repeats the sum with `i` removed.
pub fn closeness_vitalities(g: &DirectedGraph, mode: VitalityDisconnection) -> Vec<f64> {
    let n = g.node_count();
    let base = distance_sum(g, None, n as u64) as f64;
    let after = match mode {
        VitalityDisconnection::CurrentSize => n.saturating_sub(1) as u64,
        VitalityDisconnection::OriginalSize => n as u64,
    };
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mask = NodeMask::single(n, i);
            distance_sum(g, Some(&mask), after) as f64 - base
        })
        .collect()
}

pub fn closeness_vitality(g: &DirectedGraph, mode: VitalityDisconnection) -> f64 {
    let v = closeness_vitalities(g, mode);
    if v.is_empty() {
        return 0.0;
    }
    v.iter().sum::<f64>() / v.len() as f64
}
