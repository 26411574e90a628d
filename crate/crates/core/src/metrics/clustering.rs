use crate::graph::{DirectedGraph, UndirectedView};

/// Per-node clustering: directed edges among the undirected neighbors of
/// `i`, over `n(i) (n(i) - 1)`. Nodes with fewer than two neighbors get 0.
pub fn local_clustering(view: &UndirectedView<'_>) -> Vec<f64> {
    let g = view.graph();
    let n = g.node_count();
    let mut mark = vec![usize::MAX; n];
    (0..n)
        .map(|i| {
            let nbrs = view.neighbors(i);
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            for &u in nbrs {
                mark[u] = i;
            }
            let links: usize = nbrs
                .iter()
                .map(|&u| g.out_neighbors(u).iter().filter(|&&v| mark[v] == i).count())
                .sum();
            links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

/// Mean clustering coefficient over all nodes (0 for an empty graph).
pub fn clustering(g: &DirectedGraph) -> f64 {
    let local = local_clustering(&g.undirected());
    if local.is_empty() {
        return 0.0;
    }
    local.iter().sum::<f64>() / local.len() as f64
}
