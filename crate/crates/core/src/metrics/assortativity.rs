use serde::{Deserialize, Serialize};

use crate::graph::DirectedGraph;

/// Which degree is read at the source and at the target of each edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AssortativityMode {
    InIn,
    OutOut,
    InOut,
    OutIn,
}

impl AssortativityMode {
    pub const ALL: [AssortativityMode; 4] = [
        AssortativityMode::InIn,
        AssortativityMode::OutOut,
        AssortativityMode::InOut,
        AssortativityMode::OutIn,
    ];
}

/// Pearson correlation over all directed edges `(i, j)` between the
/// mode's degree of `i` and of `j`. `None` when fewer than two edges exist
/// or either degree sequence has zero variance.
pub fn assortativity(g: &DirectedGraph, mode: AssortativityMode) -> Option<f64> {
    let (src_in, dst_in) = match mode {
        AssortativityMode::InIn => (true, true),
        AssortativityMode::OutOut => (false, false),
        AssortativityMode::InOut => (true, false),
        AssortativityMode::OutIn => (false, true),
    };
    let deg = |v: usize, incoming: bool| {
        if incoming {
            g.in_degree(v)
        } else {
            g.out_degree(v)
        }
    };
    let m = g.edge_count() as i128;
    if m < 2 {
        return None;
    }
    // integer moments keep the zero-variance test exact
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0i128, 0i128, 0i128, 0i128, 0i128);
    for (i, j) in g.edges() {
        let x = deg(i, src_in) as i128;
        let y = deg(j, dst_in) as i128;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    let var_x = m * sxx - sx * sx;
    let var_y = m * syy - sy * sy;
    if var_x == 0 || var_y == 0 {
        return None;
    }
    let cov = m * sxy - sx * sy;
    Some(cov as f64 / ((var_x as f64).sqrt() * (var_y as f64).sqrt()))
}
