//! Directed graph representation and traversal primitives.
//!
//! Nodes are dense indices `0..n`. Adjacency is kept as sorted out-lists and
//! in-lists; a graph never changes after construction. Node removal is
//! expressed with a [`NodeMask`] passed to the traversal routines.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Marker for "not reached" in BFS distance buffers.
pub const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl DirectedGraph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        DirectedGraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from ordered pairs. Duplicate pairs collapse into one
    /// edge; self-loops and out-of-range indices are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Validation(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            if i == j {
                return Err(Error::Validation(format!("self-loop on node {i}")));
            }
            out_adj[i].push(j);
        }
        Ok(Self::from_out_lists(out_adj))
    }

    /// Builds a graph from per-node out-lists that are already known to be
    /// in range and loop-free.
    pub(crate) fn from_out_lists(mut out_adj: Vec<Vec<usize>>) -> Self {
        let n = out_adj.len();
        let mut in_adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (i, list) in out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
            for &j in list.iter() {
                in_adj[j].push(i);
            }
        }
        // in-lists are filled in increasing source order, so already sorted
        DirectedGraph {
            out_adj,
            in_adj,
            edge_count,
        }
    }

    /// Each unordered pair `{i, j}` becomes the two directed edges `(i, j)`
    /// and `(j, i)`.
    pub fn from_undirected_edge_list<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let doubled: Vec<(usize, usize)> = pairs
            .into_iter()
            .flat_map(|(i, j)| [(i, j), (j, i)])
            .collect();
        Self::from_edges(n, doubled)
    }

    pub fn node_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.out_adj[i]
    }

    pub fn in_neighbors(&self, i: usize) -> &[usize] {
        &self.in_adj[i]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.out_adj[i].len()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.in_adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.out_adj[i].binary_search(&j).is_ok()
    }

    /// All edges in lexicographic `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().map(move |&j| (i, j)))
    }

    /// Directed density `|E| / (N (N - 1))`.
    pub fn density(&self) -> Result<f64> {
        let n = self.node_count();
        if n < 2 {
            return Err(Error::DegenerateGraph(format!(
                "density needs at least 2 nodes, got {n}"
            )));
        }
        Ok(self.edge_count as f64 / (n * (n - 1)) as f64)
    }

    /// True when every edge has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(i, j)| self.has_edge(j, i))
    }

    /// Relabels nodes: node `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Validation("not a permutation".into()));
        }
        Self::from_edges(n, self.edges().map(|(i, j)| (perm[i], perm[j])))
    }

    pub fn undirected(&self) -> UndirectedView<'_> {
        UndirectedView::new(self)
    }

    /// Unweighted BFS distances from `source` following edge direction.
    /// Unreached nodes (and masked ones) are left at [`UNREACHED`].
    pub fn bfs_distances(&self, source: usize, mask: Option<&NodeMask>, dist: &mut [u32]) {
        let mut queue = VecDeque::new();
        self.bfs_distances_with(source, mask, dist, &mut queue);
    }

    pub(crate) fn bfs_distances_with(
        &self,
        source: usize,
        mask: Option<&NodeMask>,
        dist: &mut [u32],
        queue: &mut VecDeque<usize>,
    ) {
        dist.fill(UNREACHED);
        queue.clear();
        if mask.is_some_and(|m| m.is_removed(source)) {
            return;
        }
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let next = dist[v] + 1;
            for &w in &self.out_adj[v] {
                if dist[w] == UNREACHED && !mask.is_some_and(|m| m.is_removed(w)) {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
    }
}

/// Set of nodes hidden from traversal.
#[derive(Clone, Debug)]
pub struct NodeMask {
    removed: Vec<bool>,
    removed_count: usize,
}

impl NodeMask {
    pub fn none(n: usize) -> Self {
        NodeMask {
            removed: vec![false; n],
            removed_count: 0,
        }
    }

    pub fn single(n: usize, node: usize) -> Self {
        let mut mask = Self::none(n);
        mask.remove(node);
        mask
    }

    pub fn remove(&mut self, node: usize) {
        if !std::mem::replace(&mut self.removed[node], true) {
            self.removed_count += 1;
        }
    }

    pub fn restore(&mut self, node: usize) {
        if std::mem::replace(&mut self.removed[node], false) {
            self.removed_count -= 1;
        }
    }

    pub fn is_removed(&self, node: usize) -> bool {
        self.removed[node]
    }

    /// Number of nodes still visible.
    pub fn active_count(&self) -> usize {
        self.removed.len() - self.removed_count
    }
}

/// A directed graph with edge directions ignored.
#[derive(Clone, Debug)]
pub struct UndirectedView<'a> {
    graph: &'a DirectedGraph,
    adj: Vec<Vec<usize>>,
}

impl<'a> UndirectedView<'a> {
    pub fn new(graph: &'a DirectedGraph) -> Self {
        let adj = (0..graph.node_count())
            .map(|i| merge_sorted(graph.out_neighbors(i), graph.in_neighbors(i)))
            .collect();
        UndirectedView { graph, adj }
    }

    pub fn graph(&self) -> &'a DirectedGraph {
        self.graph
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Neighbors of `i` regardless of direction, sorted and unique.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    /// Concentric levels around `center`: level 0 is the center itself and
    /// level `h` holds the nodes first reached after `h` undirected hops.
    /// Each level is sorted. Unreachable nodes belong to no level.
    pub fn bfs_levels(&self, center: usize) -> Vec<Vec<usize>> {
        self.bfs_levels_upto(center, usize::MAX)
    }

    /// Same as [`bfs_levels`](Self::bfs_levels) but stops after level `h_max`.
    pub fn bfs_levels_upto(&self, center: usize, h_max: usize) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.node_count()];
        visited[center] = true;
        let mut levels = vec![vec![center]];
        while levels.len() <= h_max {
            let mut next = Vec::new();
            for &v in levels.last().unwrap() {
                for &w in &self.adj[v] {
                    if !visited[w] {
                        visited[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            levels.push(next);
        }
        levels
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => {
                out.push(a[x]);
                x += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[y]);
                y += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out.extend_from_slice(&a[x..]);
    out.extend_from_slice(&b[y..]);
    out
}
