//! On-disk formats: graph edge lists, binary matrices, spike lists, signal
//! and correlation CSVs, and measurement reports.
//!
//! Graph text format:
//!
//! ```text
//! N <node_count> DIRECTED|UNDIRECTED
//! <i> <j>
//! ...
//! COORDS
//! <i> <x> <y> <z>
//! ```
//!
//! Undirected files list each pair once; reading expands it into two
//! directed edges. Blank lines and `#` comments are ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::funcnet::CorrelationMatrix;
use crate::graph::DirectedGraph;
use crate::metrics::{MeasurementReport, Metric};
use crate::sensor::SensorRecord;
use crate::spatial::Point;

pub const MATRIX_MAGIC: &[u8; 8] = b"FSMATRX1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Directed,
    Undirected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphFile {
    pub graph: DirectedGraph,
    pub kind: GraphKind,
    pub coords: Option<Vec<Point>>,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

fn parse_err(what: &'static str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        what,
        line,
        msg: msg.into(),
    }
}

pub fn write_graph<W: Write>(
    mut w: W,
    graph: &DirectedGraph,
    kind: GraphKind,
    coords: Option<&[Point]>,
) -> std::io::Result<()> {
    let tag = match kind {
        GraphKind::Directed => "DIRECTED",
        GraphKind::Undirected => "UNDIRECTED",
    };
    writeln!(w, "N {} {tag}", graph.node_count())?;
    for (i, j) in graph.edges() {
        if kind == GraphKind::Undirected && i > j {
            continue;
        }
        writeln!(w, "{i} {j}")?;
    }
    if let Some(coords) = coords {
        writeln!(w, "COORDS")?;
        for (i, p) in coords.iter().enumerate() {
            writeln!(w, "{i} {} {} {}", p[0], p[1], p[2])?;
        }
    }
    w.flush()
}

pub fn read_graph<R: BufRead>(r: R) -> Result<GraphFile> {
    const WHAT: &str = "graph file";
    let mut lines = r
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| {
            l.as_ref().map_or(true, |s| {
                !s.trim().is_empty() && !s.trim_start().starts_with('#')
            })
        });
    let (ln, header) = lines
        .next()
        .ok_or_else(|| parse_err(WHAT, 1, "empty file"))?;
    let header = header.map_err(|e| parse_err(WHAT, ln, e.to_string()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let (n, kind) = match parts.as_slice() {
        ["N", n, tag] => {
            let n: usize = n
                .parse()
                .map_err(|_| parse_err(WHAT, ln, "bad node count"))?;
            let kind = match *tag {
                "DIRECTED" => GraphKind::Directed,
                "UNDIRECTED" => GraphKind::Undirected,
                other => return Err(parse_err(WHAT, ln, format!("unknown graph kind {other}"))),
            };
            (n, kind)
        }
        _ => {
            return Err(parse_err(
                WHAT,
                ln,
                "expected `N <count> DIRECTED|UNDIRECTED`",
            ))
        }
    };
    let mut edges = Vec::new();
    let mut coords: Option<Vec<Option<Point>>> = None;
    for (ln, line) in lines {
        let line = line.map_err(|e| parse_err(WHAT, ln, e.to_string()))?;
        let line = line.trim();
        if line == "COORDS" {
            coords = Some(vec![None; n]);
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match &mut coords {
            None => {
                let [i, j] = fields.as_slice() else {
                    return Err(parse_err(WHAT, ln, "expected `<i> <j>`"));
                };
                let i: usize = i
                    .parse()
                    .map_err(|_| parse_err(WHAT, ln, "bad node index"))?;
                let j: usize = j
                    .parse()
                    .map_err(|_| parse_err(WHAT, ln, "bad node index"))?;
                edges.push((i, j));
            }
            Some(slots) => {
                let [i, x, y, z] = fields.as_slice() else {
                    return Err(parse_err(WHAT, ln, "expected `<i> <x> <y> <z>`"));
                };
                let i: usize = i
                    .parse()
                    .map_err(|_| parse_err(WHAT, ln, "bad node index"))?;
                let mut p = [0.0; 3];
                for (c, s) in p.iter_mut().zip([x, y, z]) {
                    *c = s
                        .parse()
                        .map_err(|_| parse_err(WHAT, ln, "bad coordinate"))?;
                }
                let slot = slots
                    .get_mut(i)
                    .ok_or_else(|| parse_err(WHAT, ln, "node index out of range"))?;
                *slot = Some(p);
            }
        }
    }
    let graph = match kind {
        GraphKind::Directed => DirectedGraph::from_edges(n, edges)?,
        GraphKind::Undirected => DirectedGraph::from_undirected_edge_list(n, edges)?,
    };
    let coords = match coords {
        None => None,
        Some(slots) => Some(
            slots
                .into_iter()
                .enumerate()
                .map(|(i, p)| {
                    p.ok_or_else(|| parse_err(WHAT, 0, format!("missing coordinates for node {i}")))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(GraphFile {
        graph,
        kind,
        coords,
    })
}

pub fn save_graph(
    path: &Path,
    graph: &DirectedGraph,
    kind: GraphKind,
    coords: Option<&[Point]>,
) -> Result<()> {
    write_graph(create(path)?, graph, kind, coords).map_err(|e| Error::io(path, e))
}

pub fn load_graph(path: &Path) -> Result<GraphFile> {
    read_graph(open(path)?)
}

/// Row-major `f64` matrix with the time axis along columns.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeMatrix {
    pub rows: usize,
    pub cols: usize,
    pub dt: f64,
    /// Time of the first column (ms).
    pub t0: f64,
    pub data: Vec<f64>,
}

impl TimeMatrix {
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Binary layout, little-endian: magic, `u64` rows, `u64` cols, `f64` dt,
/// `f64` t0, then `rows * cols` `f64` values.
pub fn write_matrix<W: Write>(mut w: W, m: &TimeMatrix) -> std::io::Result<()> {
    w.write_all(MATRIX_MAGIC)?;
    w.write_all(&(m.rows as u64).to_le_bytes())?;
    w.write_all(&(m.cols as u64).to_le_bytes())?;
    w.write_all(&m.dt.to_le_bytes())?;
    w.write_all(&m.t0.to_le_bytes())?;
    for v in &m.data {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()
}

pub fn read_matrix<R: Read>(mut r: R) -> Result<TimeMatrix> {
    const WHAT: &str = "matrix file";
    let mut buf8 = [0u8; 8];
    let mut next = |r: &mut R| -> Result<[u8; 8]> {
        r.read_exact(&mut buf8)
            .map_err(|e| parse_err(WHAT, 0, e.to_string()))?;
        Ok(buf8)
    };
    if &next(&mut r)? != MATRIX_MAGIC {
        return Err(parse_err(WHAT, 0, "bad magic"));
    }
    let rows = u64::from_le_bytes(next(&mut r)?) as usize;
    let cols = u64::from_le_bytes(next(&mut r)?) as usize;
    let dt = f64::from_le_bytes(next(&mut r)?);
    let t0 = f64::from_le_bytes(next(&mut r)?);
    let len = rows
        .checked_mul(cols)
        .ok_or_else(|| parse_err(WHAT, 0, "dimensions overflow"))?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)
        .map_err(|e| parse_err(WHAT, 0, e.to_string()))?;
    if bytes.len() != len * 8 {
        return Err(parse_err(
            WHAT,
            0,
            format!("expected {} data bytes, found {}", len * 8, bytes.len()),
        ));
    }
    let data = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(TimeMatrix {
        rows,
        cols,
        dt,
        t0,
        data,
    })
}

pub fn save_matrix(path: &Path, m: &TimeMatrix) -> Result<()> {
    write_matrix(create(path)?, m).map_err(|e| Error::io(path, e))
}

pub fn load_matrix(path: &Path) -> Result<TimeMatrix> {
    read_matrix(open(path)?)
}

/// One `<neuron> <time_ms>` line per spike, ordered by neuron then time.
pub fn write_spikes<W: Write>(mut w: W, spikes: &[Vec<f64>]) -> std::io::Result<()> {
    for (i, times) in spikes.iter().enumerate() {
        for t in times {
            writeln!(w, "{i} {t}")?;
        }
    }
    w.flush()
}

pub fn read_spikes<R: BufRead>(r: R, n: usize) -> Result<Vec<Vec<f64>>> {
    const WHAT: &str = "spike file";
    let mut out = vec![Vec::new(); n];
    for (k, line) in r.lines().enumerate() {
        let line = line.map_err(|e| parse_err(WHAT, k + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(i), Some(t), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(WHAT, k + 1, "expected `<neuron> <time_ms>`"));
        };
        let i: usize = i
            .parse()
            .map_err(|_| parse_err(WHAT, k + 1, "bad neuron index"))?;
        let t: f64 = t.parse().map_err(|_| parse_err(WHAT, k + 1, "bad time"))?;
        out.get_mut(i)
            .ok_or_else(|| parse_err(WHAT, k + 1, "neuron index out of range"))?
            .push(t);
    }
    Ok(out)
}

pub fn save_spikes(path: &Path, spikes: &[Vec<f64>]) -> Result<()> {
    write_spikes(create(path)?, spikes).map_err(|e| Error::io(path, e))
}

pub fn load_spikes(path: &Path, n: usize) -> Result<Vec<Vec<f64>>> {
    read_spikes(open(path)?, n)
}

/// Header `t_ms,s0,s1,...`, then one row per sample.
pub fn write_signals_csv<W: Write>(mut w: W, rec: &SensorRecord) -> std::io::Result<()> {
    write!(w, "t_ms")?;
    for s in 0..rec.n_sensors {
        write!(w, ",s{s}")?;
    }
    writeln!(w)?;
    for k in 0..rec.n_samples {
        write!(w, "{}", rec.t0 + k as f64 * rec.dt)?;
        for s in 0..rec.n_sensors {
            write!(w, ",{}", rec.signals[s * rec.n_samples + k])?;
        }
        writeln!(w)?;
    }
    w.flush()
}

pub fn read_signals_csv<R: BufRead>(r: R) -> Result<SensorRecord> {
    const WHAT: &str = "signal csv";
    let mut lines = r.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => l.map_err(|e| parse_err(WHAT, 1, e.to_string()))?,
        None => return Err(parse_err(WHAT, 1, "empty file")),
    };
    let n_sensors = header.split(',').count().saturating_sub(1);
    if !header.starts_with("t_ms") || n_sensors == 0 {
        return Err(parse_err(WHAT, 1, "expected header `t_ms,s0,...`"));
    }
    let mut times = Vec::new();
    let mut rows: Vec<Vec<f64>> = vec![Vec::new(); n_sensors];
    for (k, line) in lines {
        let line = line.map_err(|e| parse_err(WHAT, k + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(WHAT, k + 1, "bad number"))?;
        if vals.len() != n_sensors + 1 {
            return Err(parse_err(WHAT, k + 1, "wrong column count"));
        }
        times.push(vals[0]);
        for (row, v) in rows.iter_mut().zip(&vals[1..]) {
            row.push(*v);
        }
    }
    let t0 = times.first().copied().unwrap_or(0.0);
    let dt = if times.len() >= 2 {
        times[1] - times[0]
    } else {
        1.0
    };
    SensorRecord::from_signals(rows, dt, t0)
}

pub fn save_signals_csv(path: &Path, rec: &SensorRecord) -> Result<()> {
    write_signals_csv(create(path)?, rec).map_err(|e| Error::io(path, e))
}

pub fn load_signals_csv(path: &Path) -> Result<SensorRecord> {
    read_signals_csv(open(path)?)
}

/// `n x n` values; the diagonal is written as 1.0.
pub fn write_correlation_csv<W: Write>(mut w: W, m: &CorrelationMatrix) -> std::io::Result<()> {
    writeln!(
        w,
        "# peak |cross-correlation| over lags within +/-{} ms; diagonal unset, written as 1.0",
        m.max_lag_ms
    )?;
    for i in 0..m.n {
        let row: Vec<String> = (0..m.n)
            .map(|j| {
                if i == j {
                    "1".to_string()
                } else {
                    m.get(i, j).to_string()
                }
            })
            .collect();
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()
}

pub fn read_correlation_csv<R: BufRead>(r: R, max_lag_ms: f64) -> Result<CorrelationMatrix> {
    const WHAT: &str = "correlation csv";
    let mut values = Vec::new();
    let mut n = None;
    for (k, line) in r.lines().enumerate() {
        let line = line.map_err(|e| parse_err(WHAT, k + 1, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(WHAT, k + 1, "bad number"))?;
        if *n.get_or_insert(row.len()) != row.len() {
            return Err(parse_err(WHAT, k + 1, "ragged row"));
        }
        values.extend(row);
    }
    let n = n.unwrap_or(0);
    if values.len() != n * n {
        return Err(parse_err(WHAT, 0, "matrix is not square"));
    }
    CorrelationMatrix::from_values(n, max_lag_ms, values)
}

pub fn save_correlation_csv(path: &Path, m: &CorrelationMatrix) -> Result<()> {
    write_correlation_csv(create(path)?, m).map_err(|e| Error::io(path, e))
}

pub fn load_correlation_csv(path: &Path, max_lag_ms: f64) -> Result<CorrelationMatrix> {
    read_correlation_csv(open(path)?, max_lag_ms)
}

fn fmt_value(v: Option<f64>) -> String {
    v.map_or_else(|| "NaN".to_string(), |x| x.to_string())
}

/// Long format: `graph_id,metric,value`, undefined values as `NaN`.
pub fn write_report_long<W: Write>(mut w: W, reports: &[MeasurementReport]) -> std::io::Result<()> {
    writeln!(w, "graph_id,metric,value")?;
    for r in reports {
        for v in &r.values {
            writeln!(w, "{},{},{}", r.graph_id, v.metric, fmt_value(v.value))?;
        }
    }
    w.flush()
}

/// Wide format: one row per graph, one column per catalog metric.
pub fn write_report_wide<W: Write>(mut w: W, reports: &[MeasurementReport]) -> std::io::Result<()> {
    let catalog = Metric::catalog();
    let names: Vec<String> = catalog.iter().map(Metric::name).collect();
    writeln!(w, "graph_id,{}", names.join(","))?;
    for r in reports {
        let vals: Vec<String> = catalog.iter().map(|&m| fmt_value(r.get(m))).collect();
        writeln!(w, "{},{}", r.graph_id, vals.join(","))?;
    }
    w.flush()
}

/// Reads the long format back into `(graph_id, metric, value)` rows.
pub fn read_report_long<R: BufRead>(r: R) -> Result<Vec<(String, Metric, Option<f64>)>> {
    const WHAT: &str = "report csv";
    let mut out = Vec::new();
    for (k, line) in r.lines().enumerate() {
        let line = line.map_err(|e| parse_err(WHAT, k + 1, e.to_string()))?;
        if k == 0 || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.rsplitn(3, ',').collect();
        let [value, metric, id] = fields.as_slice() else {
            return Err(parse_err(WHAT, k + 1, "expected `graph_id,metric,value`"));
        };
        let metric: Metric = metric.parse()?;
        let value: f64 = value
            .parse()
            .map_err(|_| parse_err(WHAT, k + 1, "bad value"))?;
        out.push((id.to_string(), metric, (!value.is_nan()).then_some(value)));
    }
    Ok(out)
}

pub fn save_reports(dir_or_file: &Path, reports: &[MeasurementReport], wide: bool) -> Result<()> {
    let w = create(dir_or_file)?;
    if wide {
        write_report_wide(w, reports)
    } else {
        write_report_long(w, reports)
    }
    .map_err(|e| Error::io(dir_or_file, e))
}

pub fn load_report_long(path: &Path) -> Result<Vec<(String, Metric, Option<f64>)>> {
    read_report_long(open(path)?)
}
