use crate::graph::DirectedGraph;

/// Largest in-degree and largest out-degree.
pub fn max_degree(g: &DirectedGraph) -> (usize, usize) {
    let n = g.node_count();
    let max_in = (0..n).map(|i| g.in_degree(i)).max().unwrap_or(0);
    let max_out = (0..n).map(|i| g.out_degree(i)).max().unwrap_or(0);
    (max_in, max_out)
}
