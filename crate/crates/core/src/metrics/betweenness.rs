//! Node and edge betweenness by Brandes accumulation on unweighted directed
//! graphs. Values are raw sums of path fractions (no normalization) and
//! exclude path endpoints for nodes.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::DirectedGraph;

/// Sources processed per work unit. Partial sums are merged in a fixed
/// order so results do not depend on the thread count.
const SOURCE_CHUNK: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct Betweenness {
    pub node: Vec<f64>,
    /// Indexed like [`DirectedGraph::edges`].
    pub edge: Vec<f64>,
}

impl Betweenness {
    pub fn mean_node(&self) -> f64 {
        mean(&self.node)
    }

    pub fn mean_edge(&self) -> f64 {
        mean(&self.edge)
    }
}

fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        v.iter().sum::<f64>() / v.len() as f64
    }
}

struct Scratch {
    stack: Vec<usize>,
    queue: VecDeque<usize>,
    dist: Vec<i64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    preds: Vec<Vec<(usize, usize)>>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            stack: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
        }
    }
}

fn accumulate_source(
    g: &DirectedGraph,
    offsets: &[usize],
    s: usize,
    sc: &mut Scratch,
    node: &mut [f64],
    edge: &mut [f64],
) {
    sc.stack.clear();
    sc.queue.clear();
    sc.dist.fill(-1);
    sc.sigma.fill(0.0);
    sc.delta.fill(0.0);
    for p in sc.preds.iter_mut() {
        p.clear();
    }
    sc.dist[s] = 0;
    sc.sigma[s] = 1.0;
    sc.queue.push_back(s);
    while let Some(v) = sc.queue.pop_front() {
        sc.stack.push(v);
        for (k, &w) in g.out_neighbors(v).iter().enumerate() {
            if sc.dist[w] < 0 {
                sc.dist[w] = sc.dist[v] + 1;
                sc.queue.push_back(w);
            }
            if sc.dist[w] == sc.dist[v] + 1 {
                sc.sigma[w] += sc.sigma[v];
                sc.preds[w].push((v, offsets[v] + k));
            }
        }
    }
    while let Some(w) = sc.stack.pop() {
        let coeff = (1.0 + sc.delta[w]) / sc.sigma[w];
        for &(v, e) in &sc.preds[w] {
            let c = sc.sigma[v] * coeff;
            edge[e] += c;
            sc.delta[v] += c;
        }
        if w != s {
            node[w] += sc.delta[w];
        }
    }
}

pub fn betweenness(g: &DirectedGraph) -> Betweenness {
    let n = g.node_count();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut acc = 0;
    for i in 0..n {
        offsets.push(acc);
        acc += g.out_degree(i);
    }
    let m = g.edge_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<(Vec<f64>, Vec<f64>)> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut sc = Scratch::new(n);
            let mut node = vec![0.0; n];
            let mut edge = vec![0.0; m];
            for &s in chunk {
                accumulate_source(g, &offsets, s, &mut sc, &mut node, &mut edge);
            }
            (node, edge)
        })
        .collect();
    let mut node = vec![0.0; n];
    let mut edge = vec![0.0; m];
    for (pn, pe) in partials {
        node.iter_mut().zip(&pn).for_each(|(a, b)| *a += b);
        edge.iter_mut().zip(&pe).for_each(|(a, b)| *a += b);
    }
    Betweenness { node, edge }
}
