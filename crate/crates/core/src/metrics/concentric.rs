//! Concentric (hierarchical) measurements on BFS rings around a center,
//! with edge directions ignored when forming the rings.

use crate::graph::{DirectedGraph, UndirectedView};

/// Deepest ring the catalog uses.
pub const MAX_LEVEL: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LevelRecord {
    /// Nodes in the ring.
    pub nodes: usize,
    /// Edges from ring `h` into ring `h - 1`.
    pub in_degree: usize,
    /// Edges from ring `h - 1` into ring `h`.
    pub out_degree: usize,
    /// Mean full-graph in-degree of ring members (0 for an empty ring).
    pub neighbor_in_degree: f64,
    pub neighbor_out_degree: f64,
    /// Directed edges inside the ring over `n_h (n_h - 1)`; 0 below two nodes.
    pub clustering: f64,
}

/// Records for rings `1..=h_max` around `center`; index 0 holds ring 1.
pub fn concentric_suite(
    view: &UndirectedView<'_>,
    center: usize,
    h_max: usize,
) -> Vec<LevelRecord> {
    let mut level_of = vec![usize::MAX; view.node_count()];
    concentric_with(view, center, h_max, &mut level_of)
}

fn concentric_with(
    view: &UndirectedView<'_>,
    center: usize,
    h_max: usize,
    level_of: &mut [usize],
) -> Vec<LevelRecord> {
    let g = view.graph();
    let levels = view.bfs_levels_upto(center, h_max);
    for (h, ring) in levels.iter().enumerate() {
        for &v in ring {
            level_of[v] = h;
        }
    }
    let mut out = vec![LevelRecord::default(); h_max];
    for h in 1..=h_max {
        let Some(ring) = levels.get(h) else { break };
        let rec = &mut out[h - 1];
        rec.nodes = ring.len();
        let mut inside = 0usize;
        let (mut sum_in, mut sum_out) = (0usize, 0usize);
        for &u in ring {
            sum_in += g.in_degree(u);
            sum_out += g.out_degree(u);
            for &v in g.out_neighbors(u) {
                if level_of[v] == h - 1 {
                    rec.in_degree += 1;
                } else if level_of[v] == h {
                    inside += 1;
                }
            }
        }
        for &u in &levels[h - 1] {
            rec.out_degree += g
                .out_neighbors(u)
                .iter()
                .filter(|&&v| level_of[v] == h)
                .count();
        }
        let k = ring.len() as f64;
        rec.neighbor_in_degree = sum_in as f64 / k;
        rec.neighbor_out_degree = sum_out as f64 / k;
        if ring.len() >= 2 {
            rec.clustering = inside as f64 / (k * (k - 1.0));
        }
    }
    for ring in &levels {
        for &v in ring {
            level_of[v] = usize::MAX;
        }
    }
    out
}

/// Node-averaged concentric records for rings `1..=h_max`.
pub fn concentric_means(g: &DirectedGraph, h_max: usize) -> Vec<LevelRecordMean> {
    let view = g.undirected();
    let n = g.node_count();
    let mut level_of = vec![usize::MAX; n];
    let mut sums = vec![LevelRecordMean::default(); h_max];
    for c in 0..n {
        for (acc, rec) in sums
            .iter_mut()
            .zip(concentric_with(&view, c, h_max, &mut level_of))
        {
            acc.nodes += rec.nodes as f64;
            acc.in_degree += rec.in_degree as f64;
            acc.out_degree += rec.out_degree as f64;
            acc.neighbor_in_degree += rec.neighbor_in_degree;
            acc.neighbor_out_degree += rec.neighbor_out_degree;
            acc.clustering += rec.clustering;
        }
    }
    if n > 0 {
        let k = n as f64;
        for acc in &mut sums {
            acc.nodes /= k;
            acc.in_degree /= k;
            acc.out_degree /= k;
            acc.neighbor_in_degree /= k;
            acc.neighbor_out_degree /= k;
            acc.clustering /= k;
        }
    }
    sums
}

/// [`LevelRecord`] averaged over all centers.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LevelRecordMean {
    pub nodes: f64,
    pub in_degree: f64,
    pub out_degree: f64,
    pub neighbor_in_degree: f64,
    pub neighbor_out_degree: f64,
    pub clustering: f64,
}
