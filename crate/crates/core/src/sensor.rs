//! Surface sensors and pseudo-EEG synthesis.
//!
//! Sensors lie on the curved surface of the semi-sphere, scaled to a radius
//! of 200 mm. Each sensor sees the mean membrane potential of all neurons
//! weighted by the inverse squared distance, then the signal is z-scored.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lif::SimulationTrace;
use crate::spatial::{distance, Point};

pub const HEAD_RADIUS_MM: f64 = 200.0;

#[derive(Clone, Debug, PartialEq)]
pub struct SensorArray {
    /// Sensor coordinates in mm.
    pub positions: Vec<Point>,
    pub radius_mm: f64,
}

impl SensorArray {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Smallest and largest pairwise chord distance (mm).
    pub fn pairwise_extent(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for (a, p) in self.positions.iter().enumerate() {
            for q in &self.positions[a + 1..] {
                let d = distance(p, q);
                lo = lo.min(d);
                hi = hi.max(d);
            }
        }
        (lo, hi)
    }
}

/// Spherical Fibonacci lattice on the upper hemisphere: `z` steps evenly
/// through `(0, 1)` (equal-area bands) and the azimuth advances by the
/// golden angle.
pub fn place_sensors(n_f: usize) -> Result<SensorArray> {
    if n_f < 2 {
        return Err(Error::Validation(format!(
            "need at least 2 sensors, got {n_f}"
        )));
    }
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let positions = (0..n_f)
        .map(|k| {
            let z = 1.0 - (k as f64 + 0.5) / n_f as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = 2.0 * std::f64::consts::PI * k as f64 / golden;
            [
                HEAD_RADIUS_MM * r * phi.cos(),
                HEAD_RADIUS_MM * r * phi.sin(),
                HEAD_RADIUS_MM * z,
            ]
        })
        .collect();
    Ok(SensorArray {
        positions,
        radius_mm: HEAD_RADIUS_MM,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensorRecord {
    pub n_sensors: usize,
    pub n_samples: usize,
    pub dt: f64,
    /// Time of the first sample (ms).
    pub t0: f64,
    /// z-scored signals, row-major `[sensor][sample]`.
    pub signals: Vec<f64>,
    /// Signals before normalization (mV / mm^2).
    pub raw: Vec<f64>,
}

impl SensorRecord {
    pub fn signal(&self, sensor: usize) -> &[f64] {
        &self.signals[sensor * self.n_samples..(sensor + 1) * self.n_samples]
    }

    pub fn raw_signal(&self, sensor: usize) -> &[f64] {
        &self.raw[sensor * self.n_samples..(sensor + 1) * self.n_samples]
    }

    /// Builds a record from already z-scored rows (e.g. read back from disk).
    pub fn from_signals(signals: Vec<Vec<f64>>, dt: f64, t0: f64) -> Result<Self> {
        let n_samples = signals.first().map_or(0, Vec::len);
        if signals.iter().any(|s| s.len() != n_samples) {
            return Err(Error::Validation("signals have different lengths".into()));
        }
        let flat: Vec<f64> = signals.into_iter().flatten().collect();
        Ok(SensorRecord {
            n_sensors: flat.len().checked_div(n_samples).unwrap_or(0),
            n_samples,
            dt,
            t0,
            raw: flat.clone(),
            signals: flat,
        })
    }
}

/// Inverse-square weighted sum of membrane potentials, without normalization.
/// `neuron_positions` are in unit semi-sphere coordinates and get scaled by
/// the array radius. Returns row-major `[sensor][sample]`.
pub fn raw_signals(
    trace: &SimulationTrace,
    neuron_positions: &[Point],
    array: &SensorArray,
) -> Result<Vec<f64>> {
    let n = trace.n_neurons;
    if neuron_positions.len() != n {
        return Err(Error::Validation(format!(
            "trace has {n} neurons but {} positions were given",
            neuron_positions.len()
        )));
    }
    let scaled: Vec<Point> = neuron_positions
        .iter()
        .map(|p| p.map(|c| c * array.radius_mm))
        .collect();
    let ns = trace.n_samples;
    let rows: Vec<Result<Vec<f64>>> = array
        .positions
        .par_iter()
        .enumerate()
        .map(|(s, sp)| {
            let mut row = vec![0.0; ns];
            for (i, np) in scaled.iter().enumerate() {
                let d2 = distance(sp, np).powi(2);
                if d2 == 0.0 {
                    return Err(Error::Singularity {
                        sensor: s,
                        neuron: i,
                    });
                }
                let w = 1.0 / (n as f64 * d2);
                for (r, &v) in row.iter_mut().zip(trace.potential(i)) {
                    *r += w * v;
                }
            }
            Ok(row)
        })
        .collect();
    let mut out = Vec::with_capacity(array.len() * ns);
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

/// Subtracts the mean and divides by the population standard deviation.
pub fn zscore(series: &[f64]) -> Option<Vec<f64>> {
    let n = series.len() as f64;
    if series.is_empty() {
        return None;
    }
    let mean = series.iter().sum::<f64>() / n;
    let var = series.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    if !(sd > 1e-12 * mean.abs().max(f64::MIN_POSITIVE)) {
        return None;
    }
    Some(series.iter().map(|x| (x - mean) / sd).collect())
}

/// Pseudo-EEG recording of a simulation by `array`.
pub fn record(
    trace: &SimulationTrace,
    neuron_positions: &[Point],
    array: &SensorArray,
) -> Result<SensorRecord> {
    let raw = raw_signals(trace, neuron_positions, array)?;
    let ns = trace.n_samples;
    let mut signals = Vec::with_capacity(raw.len());
    for (s, row) in raw.chunks(ns.max(1)).enumerate() {
        signals.extend(zscore(row).ok_or(Error::ConstantSignal { index: s })?);
    }
    Ok(SensorRecord {
        n_sensors: array.len(),
        n_samples: ns,
        dt: trace.dt,
        t0: trace.transient_cut,
        signals,
        raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace_from(rows: Vec<Vec<f64>>) -> SimulationTrace {
        let n_samples = rows[0].len();
        SimulationTrace {
            dt: 1.0,
            duration: n_samples as f64,
            transient_cut: 0.0,
            n_neurons: rows.len(),
            n_samples,
            v: rows.into_iter().flatten().collect(),
            spikes: vec![],
            drive_events: vec![],
            warnings: vec![],
        }
    }

    #[test]
    fn sensors_on_surface_and_distinct() {
        let array = place_sensors(100).unwrap();
        for p in &array.positions {
            assert!((distance(p, &[0.0; 3]) - 200.0).abs() < 1e-9);
            assert!(p[2] >= 0.0);
        }
        assert!(array.pairwise_extent().0 > 0.0);
        assert_eq!(place_sensors(37).unwrap(), place_sensors(37).unwrap());
        assert!(place_sensors(1).is_err());
    }

    #[test]
    fn two_sensor_spacing_near_lattice_spacing() {
        let array = place_sensors(2).unwrap();
        let [p, q] = [array.positions[0], array.positions[1]];
        let dot = (p[0] * q[0] + p[1] * q[1] + p[2] * q[2]) / (200.0 * 200.0);
        let angle = dot.acos();
        // area per point on a unit hemisphere is 2 pi / n
        let spacing = (2.0 * std::f64::consts::PI / 2.0).sqrt();
        assert!(
            (angle - spacing).abs() / spacing < 0.1,
            "{angle} vs {spacing}"
        );
    }

    #[test]
    fn min_spacing_shrinks_with_sensor_count() {
        let mins: Vec<f64> = (40..=100)
            .step_by(10)
            .map(|n| place_sensors(n).unwrap().pairwise_extent().0)
            .collect();
        assert!(mins.windows(2).all(|w| w[1] <= w[0]), "{mins:?}");
    }

    #[test]
    fn single_neuron_signal_is_attenuated_copy() {
        let v = vec![-70.0, -60.0, -65.0, -72.0];
        let trace = trace_from(vec![v.clone()]);
        let array = SensorArray {
            positions: vec![[0.0, 0.0, 200.0], [200.0, 0.0, 0.0]],
            radius_mm: 200.0,
        };
        let pos = [[0.0, 0.0, 0.5]];
        let raw = raw_signals(&trace, &pos, &array).unwrap();
        let d = 100.0;
        for (k, &x) in v.iter().enumerate() {
            assert!((raw[k] - x / (d * d)).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_sensors_see_identical_raw_signals() {
        let trace = trace_from(vec![vec![-70.0, -50.0, -80.0]]);
        let array = SensorArray {
            positions: vec![[200.0, 0.0, 0.0], [-200.0, 0.0, 0.0]],
            radius_mm: 200.0,
        };
        let raw = raw_signals(&trace, &[[0.0, 0.0, 0.3]], &array).unwrap();
        assert_eq!(&raw[0..3], &raw[3..6]);
    }

    #[test]
    fn constant_potentials_cannot_be_normalized() {
        let trace = trace_from(vec![vec![-70.0; 50], vec![-70.0; 50]]);
        let array = place_sensors(3).unwrap();
        let err = record(&trace, &[[0.0, 0.0, 0.1], [0.2, 0.1, 0.3]], &array).unwrap_err();
        assert!(matches!(err, Error::ConstantSignal { .. }));
    }

    #[test]
    fn coincident_sensor_is_a_singularity() {
        let trace = trace_from(vec![vec![-70.0, -60.0]]);
        let array = SensorArray {
            positions: vec![[0.0, 0.0, 200.0], [0.0, 200.0, 0.0]],
            radius_mm: 200.0,
        };
        let err = raw_signals(&trace, &[[0.0, 0.0, 1.0]], &array).unwrap_err();
        assert!(matches!(
            err,
            Error::Singularity {
                sensor: 0,
                neuron: 0
            }
        ));
    }

    #[test]
    fn zscore_tolerances() {
        let series: Vec<f64> = (0..1000)
            .map(|k| (k as f64 * 0.37).sin() * 3.0 - 60.0)
            .collect();
        let z = zscore(&series).unwrap();
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        let sd = (z.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / z.len() as f64).sqrt();
        assert!(mean.abs() < 1e-9);
        assert!((sd - 1.0).abs() < 1e-9);
    }
}
