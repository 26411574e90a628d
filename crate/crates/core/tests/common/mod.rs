//! Brute-force reference implementations of the metric catalog, written
//! against an adjacency matrix and sharing no code with the library.

#![allow(dead_code, clippy::needless_range_loop)]

use funcsample::graph::DirectedGraph;
use funcsample::metrics::{measure_all, AssortativityMode, ConcentricKind, MeasureOptions, Metric};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: usize = usize::MAX / 4;

pub struct Adj {
    pub n: usize,
    pub a: Vec<Vec<bool>>,
}

impl Adj {
    pub fn from_graph(g: &DirectedGraph) -> Self {
        let n = g.node_count();
        let mut a = vec![vec![false; n]; n];
        for (i, j) in g.edges() {
            a[i][j] = true;
        }
        Adj { n, a }
    }

    fn k_in(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.a[u][v]).count()
    }

    fn k_out(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.a[v][u]).count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.a[i][j] {
                    e.push((i, j));
                }
            }
        }
        e
    }
}

/// Floyd-Warshall over the nodes not in `removed`.
fn floyd(adj: &Adj, removed: Option<usize>, undirected: bool) -> Vec<Vec<usize>> {
    let n = adj.n;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if i != j
                && (adj.a[i][j] || (undirected && adj.a[j][i]))
                && Some(i) != removed
                && Some(j) != removed
            {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        if Some(k) == removed {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn distance_total(adj: &Adj, removed: Option<usize>, unreachable: usize) -> usize {
    let d = floyd(adj, removed, false);
    let mut total = 0;
    for i in 0..adj.n {
        for j in 0..adj.n {
            if i == j || Some(i) == removed || Some(j) == removed {
                continue;
            }
            total += if d[i][j] >= INF { unreachable } else { d[i][j] };
        }
    }
    total
}

/// Every shortest path from `a` to `b`, as node sequences.
fn shortest_paths(adj: &Adj, dist: &[Vec<usize>], a: usize, b: usize) -> Vec<Vec<usize>> {
    fn walk(
        adj: &Adj,
        dist: &[Vec<usize>],
        b: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        if v == b {
            out.push(path.clone());
            return;
        }
        for w in 0..adj.n {
            if adj.a[v][w] && dist[w][b] < INF && dist[w][b] + 1 == dist[v][b] {
                path.push(w);
                walk(adj, dist, b, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if dist[a][b] < INF {
        walk(adj, dist, b, &mut vec![a], &mut out);
    }
    out
}

fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 || xs.iter().all(|&x| x == xs[0]) || ys.iter().all(|&y| y == ys[0]) {
        return None;
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    Some(cov / (vx * vy).sqrt())
}

/// Catalog values for `g`, computed by definition.
pub fn oracle(g: &DirectedGraph) -> Vec<(Metric, Option<f64>)> {
    let adj = Adj::from_graph(g);
    let n = adj.n;
    let edges = adj.edges();
    let dist = floyd(&adj, None, false);
    let udist = floyd(&adj, None, true);
    let mut out = Vec::new();

    out.push((
        Metric::MaxInDegree,
        Some((0..n).map(|v| adj.k_in(v)).max().unwrap_or(0) as f64),
    ));
    out.push((
        Metric::MaxOutDegree,
        Some((0..n).map(|v| adj.k_out(v)).max().unwrap_or(0) as f64),
    ));

    let local_c = |i: usize| {
        let nb: Vec<usize> = (0..n)
            .filter(|&u| u != i && (adj.a[i][u] || adj.a[u][i]))
            .collect();
        if nb.len() < 2 {
            return 0.0;
        }
        let mut e = 0;
        for &u in &nb {
            for &v in &nb {
                if adj.a[u][v] {
                    e += 1;
                }
            }
        }
        e as f64 / (nb.len() * (nb.len() - 1)) as f64
    };
    out.push((
        Metric::Clustering,
        Some((0..n).map(local_c).sum::<f64>() / n as f64),
    ));

    for mode in AssortativityMode::ALL {
        let (src_in, dst_in) = match mode {
            AssortativityMode::InIn => (true, true),
            AssortativityMode::OutOut => (false, false),
            AssortativityMode::InOut => (true, false),
            AssortativityMode::OutIn => (false, true),
        };
        let deg = |v, incoming: bool| if incoming { adj.k_in(v) } else { adj.k_out(v) } as f64;
        let xs: Vec<f64> = edges.iter().map(|&(i, _)| deg(i, src_in)).collect();
        let ys: Vec<f64> = edges.iter().map(|&(_, j)| deg(j, dst_in)).collect();
        out.push((Metric::Assortativity(mode), pearson(&xs, &ys)));
    }

    let pairs = (n * (n - 1)) as f64;
    let mut dsum = 0.0;
    let mut esum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                if dist[i][j] >= INF {
                    dsum += n as f64;
                } else {
                    dsum += dist[i][j] as f64;
                    esum += 1.0 / dist[i][j] as f64;
                }
            }
        }
    }
    out.push((Metric::ShortestPathLength, Some(dsum / pairs)));
    out.push((Metric::GlobalEfficiency, Some(esum / pairs)));

    let mut node_b = vec![0.0; n];
    let mut edge_b = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let paths = shortest_paths(&adj, &dist, a, b);
            if paths.is_empty() {
                continue;
            }
            let share = 1.0 / paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    node_b[v] += share;
                }
                for w in p.windows(2) {
                    edge_b[w[0]][w[1]] += share;
                }
            }
        }
    }
    out.push((
        Metric::NodeBetweenness,
        Some(node_b.iter().sum::<f64>() / n as f64),
    ));
    let eb = if edges.is_empty() {
        0.0
    } else {
        edges.iter().map(|&(i, j)| edge_b[i][j]).sum::<f64>() / edges.len() as f64
    };
    out.push((Metric::EdgeBetweenness, Some(eb)));

    let base = distance_total(&adj, None, n) as f64;
    let vit: f64 = (0..n)
        .map(|i| distance_total(&adj, Some(i), n - 1) as f64 - base)
        .sum();
    out.push((Metric::ClosenessVitality, Some(vit / n as f64)));

    // per center, per level: [nodes, k_in, k_out, kn_in, kn_out, C]
    let mut level_sums = vec![[0.0f64; 6]; 5];
    for c in 0..n {
        for h in 1..=4usize {
            let ring: Vec<usize> = (0..n).filter(|&v| udist[c][v] == h).collect();
            let prev: Vec<usize> = (0..n).filter(|&v| udist[c][v] == h - 1).collect();
            let k_in = ring
                .iter()
                .flat_map(|&u| prev.iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| adj.a[u][v])
                .count();
            let k_out = prev
                .iter()
                .flat_map(|&u| ring.iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| adj.a[u][v])
                .count();
            let (kn_in, kn_out) = if ring.is_empty() {
                (0.0, 0.0)
            } else {
                let m = ring.len() as f64;
                (
                    ring.iter().map(|&v| adj.k_in(v)).sum::<usize>() as f64 / m,
                    ring.iter().map(|&v| adj.k_out(v)).sum::<usize>() as f64 / m,
                )
            };
            let inside = ring
                .iter()
                .flat_map(|&u| ring.iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| adj.a[u][v])
                .count();
            let c_h = if ring.len() < 2 {
                0.0
            } else {
                inside as f64 / (ring.len() * (ring.len() - 1)) as f64
            };
            let s = &mut level_sums[h];
            s[0] += ring.len() as f64;
            s[1] += k_in as f64;
            s[2] += k_out as f64;
            s[3] += kn_in;
            s[4] += kn_out;
            s[5] += c_h;
        }
    }
    for metric in Metric::catalog() {
        if let Metric::Concentric(kind, h) = metric {
            let k = match kind {
                ConcentricKind::Nodes => 0,
                ConcentricKind::InDegree => 1,
                ConcentricKind::OutDegree => 2,
                ConcentricKind::NeighborInDegree => 3,
                ConcentricKind::NeighborOutDegree => 4,
                ConcentricKind::Clustering => 5,
            };
            out.push((metric, Some(level_sums[h as usize][k] / n as f64)));
        }
    }
    out
}

fn is_integer_metric(m: Metric) -> bool {
    matches!(m, Metric::MaxInDegree | Metric::MaxOutDegree)
}

/// Mismatches between the library and the oracle, one line each.
pub fn check_against_oracle(g: &DirectedGraph) -> Vec<String> {
    let report = measure_all(g, "oracle", &MeasureOptions::default()).expect("measurable graph");
    let expected = oracle(g);
    let mut bad = Vec::new();
    if report.values.len() != expected.len() {
        bad.push(format!(
            "catalog size {} vs {}",
            report.values.len(),
            expected.len()
        ));
    }
    for (metric, want) in expected {
        let got = report.get(metric);
        let ok = match (got, want) {
            (None, None) => report.values.iter().any(|v| v.metric == metric),
            (Some(x), Some(y)) if is_integer_metric(metric) => x == y,
            (Some(x), Some(y)) => (x - y).abs() <= 1e-9 * y.abs().max(1.0),
            _ => false,
        };
        if !ok {
            bad.push(format!("{metric}: library {got:?}, oracle {want:?}"));
        }
    }
    bad
}

/// Random directed graph with 2..=6 nodes and a per-graph edge probability.
pub fn random_small_graph(rng: &mut ChaCha8Rng) -> DirectedGraph {
    let n = rng.random_range(2..=6);
    let p: f64 = rng.random();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    DirectedGraph::from_edges(n, edges).unwrap()
}

pub fn small_graph_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
