//! Network measurements on directed graphs.
//!
//! Undirected (functional) networks enter as symmetric directed graphs.
//! [`measure_all`] evaluates the whole [`Metric`] catalog and returns a
//! [`MeasurementReport`].

pub mod assortativity;
pub mod betweenness;
pub mod clustering;
pub mod concentric;
pub mod degree;
pub mod paths;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use assortativity::{assortativity, AssortativityMode};
pub use betweenness::{betweenness, Betweenness};
pub use clustering::{clustering, local_clustering};
pub use concentric::{concentric_means, concentric_suite, LevelRecord, MAX_LEVEL};
pub use degree::max_degree;
pub use paths::{
    closeness_vitalities, closeness_vitality, shortest_path_stats, PathStats, VitalityDisconnection,
};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Concentric quantities that are reported per ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConcentricKind {
    Nodes,
    InDegree,
    OutDegree,
    NeighborInDegree,
    NeighborOutDegree,
    Clustering,
}

/// The fixed measurement catalog. Names returned by [`Metric::name`] are a
/// stable file-format contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    MaxInDegree,
    MaxOutDegree,
    Clustering,
    Assortativity(AssortativityMode),
    ShortestPathLength,
    GlobalEfficiency,
    NodeBetweenness,
    EdgeBetweenness,
    ClosenessVitality,
    Concentric(ConcentricKind, u8),
}

impl Metric {
    /// Every catalog entry in report order.
    pub fn catalog() -> Vec<Metric> {
        use AssortativityMode as A;
        use ConcentricKind as C;
        let mut all = vec![
            Metric::MaxInDegree,
            Metric::MaxOutDegree,
            Metric::Clustering,
            Metric::Assortativity(A::InIn),
            Metric::Assortativity(A::OutOut),
            Metric::Assortativity(A::InOut),
            Metric::Assortativity(A::OutIn),
            Metric::ShortestPathLength,
            Metric::GlobalEfficiency,
            Metric::NodeBetweenness,
            Metric::EdgeBetweenness,
            Metric::ClosenessVitality,
        ];
        for h in 2..=4 {
            all.push(Metric::Concentric(C::Nodes, h));
        }
        for kind in [C::InDegree, C::OutDegree] {
            for h in 2..=4 {
                all.push(Metric::Concentric(kind, h));
            }
        }
        for kind in [C::NeighborInDegree, C::NeighborOutDegree] {
            for h in 1..=4 {
                all.push(Metric::Concentric(kind, h));
            }
        }
        for h in 2..=4 {
            all.push(Metric::Concentric(C::Clustering, h));
        }
        all
    }

    pub fn name(&self) -> String {
        match self {
            Metric::MaxInDegree => "max_in_degree".into(),
            Metric::MaxOutDegree => "max_out_degree".into(),
            Metric::Clustering => "clustering".into(),
            Metric::Assortativity(m) => format!(
                "assortativity_{}",
                match m {
                    AssortativityMode::InIn => "in_in",
                    AssortativityMode::OutOut => "out_out",
                    AssortativityMode::InOut => "in_out",
                    AssortativityMode::OutIn => "out_in",
                }
            ),
            Metric::ShortestPathLength => "shortest_path_length".into(),
            Metric::GlobalEfficiency => "global_efficiency".into(),
            Metric::NodeBetweenness => "node_betweenness".into(),
            Metric::EdgeBetweenness => "edge_betweenness".into(),
            Metric::ClosenessVitality => "closeness_vitality".into(),
            Metric::Concentric(kind, h) => {
                let stem = match kind {
                    ConcentricKind::Nodes => "concentric_nodes",
                    ConcentricKind::InDegree => "concentric_in_degree",
                    ConcentricKind::OutDegree => "concentric_out_degree",
                    ConcentricKind::NeighborInDegree => "concentric_neighbor_in_degree",
                    ConcentricKind::NeighborOutDegree => "concentric_neighbor_out_degree",
                    ConcentricKind::Clustering => "concentric_clustering",
                };
                format!("{stem}_h{h}")
            }
        }
    }

    /// Whether the metric can be flagged undefined.
    pub fn may_be_undefined(&self) -> bool {
        matches!(self, Metric::Assortativity(_))
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::catalog()
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown metric `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeasureOptions {
    pub vitality_disconnection: VitalityDisconnection,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricValue {
    pub metric: Metric,
    /// `None` marks an undefined value (e.g. zero-variance assortativity).
    pub value: Option<f64>,
    /// Time spent on the group of metrics this value was computed with.
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementReport {
    pub graph_id: String,
    pub node_count: usize,
    pub density: f64,
    pub values: Vec<MetricValue>,
}

impl MeasurementReport {
    pub fn get(&self, metric: Metric) -> Option<f64> {
        self.values
            .iter()
            .find(|v| v.metric == metric)
            .and_then(|v| v.value)
    }

    pub fn undefined(&self) -> impl Iterator<Item = Metric> + '_ {
        self.values
            .iter()
            .filter(|v| v.value.is_none())
            .map(|v| v.metric)
    }
}

/// Evaluates the full catalog on `g`.
pub fn measure_all(
    g: &DirectedGraph,
    graph_id: &str,
    opts: &MeasureOptions,
) -> Result<MeasurementReport> {
    let density = g.density()?;
    let mut values = Vec::with_capacity(Metric::catalog().len());
    let mut push = |metric: Metric, value: Option<f64>, elapsed: Duration| {
        values.push(MetricValue {
            metric,
            value,
            elapsed,
        });
    };

    let t = Instant::now();
    let (max_in, max_out) = max_degree(g);
    let el = t.elapsed();
    push(Metric::MaxInDegree, Some(max_in as f64), el);
    push(Metric::MaxOutDegree, Some(max_out as f64), el);

    let t = Instant::now();
    let c = clustering(g);
    push(Metric::Clustering, Some(c), t.elapsed());

    for key in AssortativityMode::ALL {
        let t = Instant::now();
        let r = assortativity(g, key);
        push(Metric::Assortativity(key), r, t.elapsed());
    }

    let t = Instant::now();
    let ps = shortest_path_stats(g)?;
    let el = t.elapsed();
    push(Metric::ShortestPathLength, Some(ps.mean_distance), el);
    push(Metric::GlobalEfficiency, Some(ps.efficiency), el);

    let t = Instant::now();
    let b = betweenness(g);
    let el = t.elapsed();
    push(Metric::NodeBetweenness, Some(b.mean_node()), el);
    push(Metric::EdgeBetweenness, Some(b.mean_edge()), el);

    let t = Instant::now();
    let v = closeness_vitality(g, opts.vitality_disconnection);
    push(Metric::ClosenessVitality, Some(v), t.elapsed());

    let t = Instant::now();
    let rings = concentric_means(g, MAX_LEVEL);
    let el = t.elapsed();
    for metric in Metric::catalog() {
        if let Metric::Concentric(kind, h) = metric {
            let r = &rings[h as usize - 1];
            let value = match kind {
                ConcentricKind::Nodes => r.nodes,
                ConcentricKind::InDegree => r.in_degree,
                ConcentricKind::OutDegree => r.out_degree,
                ConcentricKind::NeighborInDegree => r.neighbor_in_degree,
                ConcentricKind::NeighborOutDegree => r.neighbor_out_degree,
                ConcentricKind::Clustering => r.clustering,
            };
            push(metric, Some(value), el);
        }
    }

    Ok(MeasurementReport {
        graph_id: graph_id.to_string(),
        node_count: g.node_count(),
        density,
        values,
    })
}
