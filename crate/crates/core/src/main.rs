use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use funcsample::experiment::{self, ExperimentConfig, Preset};
use funcsample::funcnet::{build_functional, correlation_matrix};
use funcsample::io::{self as fio, GraphKind, TimeMatrix};
use funcsample::lif::{simulate, SimulationTrace, SynapseTable};
use funcsample::metrics::{measure_all, Metric};
use funcsample::rng::SeedTree;
use funcsample::sensor::{place_sensors, record};
use funcsample::spatial::{generate, solve_beta, GenerationSpec};
use funcsample::stats::{mean, sample_sd, t_test};
use funcsample::{Error, Result};

#[derive(Parser)]
#[command(
    name = "funcsample",
    version,
    about = "Functional sampling of simulated spatial spiking networks"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// TOML experiment config; takes precedence over --preset.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    #[arg(long, global = true, default_value = "paper")]
    preset: Preset,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a spatial network with node coordinates.
    Generate {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, conflicts_with = "target_density")]
        beta: Option<f64>,
        #[arg(long)]
        target_density: Option<f64>,
        #[arg(long, default_value = "spatial.graph")]
        output: PathBuf,
    },
    /// Simulate LIF dynamics on a generated network.
    Simulate {
        #[arg(long)]
        graph: PathBuf,
        /// Membrane potentials after the transient, binary matrix format.
        #[arg(long, default_value = "trace.bin")]
        output: PathBuf,
        #[arg(long, default_value = "spikes.txt")]
        spikes: PathBuf,
    },
    /// Record pseudo-EEG signals from a simulation trace.
    Record {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        sensors: usize,
        #[arg(long, default_value = "signals.csv")]
        output: PathBuf,
    },
    /// Correlate signals and optionally threshold them into a functional network.
    Correlate {
        #[arg(long)]
        signals: PathBuf,
        #[arg(long, default_value = "correlation.csv")]
        output: PathBuf,
        /// Keep this fraction of sensor pairs and write the functional network.
        #[arg(long)]
        density: Option<f64>,
        #[arg(long, default_value = "functional.graph")]
        network: PathBuf,
    },
    /// Measure graph files.
    Measure {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long, default_value = "report.csv")]
        output: PathBuf,
        /// One row per graph instead of one row per value.
        #[arg(long)]
        wide: bool,
    },
    /// Compare two long-format reports metric by metric.
    Compare {
        #[arg(long)]
        functional: PathBuf,
        #[arg(long)]
        spatial: PathBuf,
        #[arg(long, default_value = "comparison.csv")]
        output: PathBuf,
    },
    /// Run the full protocol.
    Sweep,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn config(g: &Global) -> Result<ExperimentConfig> {
    let mut cfg = match &g.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => g.preset.config(),
    };
    if let Some(seed) = g.seed {
        cfg.master_seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn out(g: &Global, name: &Path) -> PathBuf {
    if name.is_absolute() {
        name.to_path_buf()
    } else {
        g.out_dir.join(name)
    }
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    if let Some(jobs) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    let cfg = config(g)?;
    let seeds = SeedTree::new(cfg.master_seed);
    match cli.command {
        Command::Generate {
            n,
            alpha,
            beta,
            target_density,
            output,
        } => {
            let n = n.unwrap_or(cfg.n_neurons);
            let alpha = alpha.unwrap_or(cfg.alpha);
            let beta = match (beta, target_density) {
                (Some(b), _) => b,
                (None, Some(d)) => solve_beta(d, alpha)?,
                (None, None) => cfg.densities[0].resolve_beta(alpha)?,
            };
            let net = generate(GenerationSpec {
                n,
                alpha,
                beta,
                seed: seeds.child("spatial").as_u64(),
            })?;
            let path = out(g, &output);
            fio::save_graph(&path, &net.graph, GraphKind::Directed, Some(&net.positions))?;
            println!(
                "{}: {n} nodes, {} edges, density {:.4}",
                path.display(),
                net.graph.edge_count(),
                net.graph.density()?
            );
        }
        Command::Simulate {
            graph,
            output,
            spikes,
        } => {
            let f = fio::load_graph(&graph)?;
            let syn = SynapseTable::build(&f.graph, &cfg.synapses, &seeds.child("synapses"))?;
            let trace = simulate(
                &f.graph,
                &cfg.neuron,
                &syn,
                Some(&cfg.drive),
                &cfg.simulation,
                &seeds.child("simulation"),
            )?;
            let m = TimeMatrix {
                rows: trace.n_neurons,
                cols: trace.n_samples,
                dt: trace.dt,
                t0: trace.transient_cut,
                data: trace.v.clone(),
            };
            fio::save_matrix(&out(g, &output), &m)?;
            fio::save_spikes(&out(g, &spikes), &trace.spikes)?;
            println!(
                "{} spikes, mean rate {:.2} Hz{}",
                trace.spike_count(),
                trace.mean_rate_hz(),
                trace
                    .warnings
                    .iter()
                    .map(|w| format!(", warning: {w:?}"))
                    .collect::<String>()
            );
        }
        Command::Record {
            graph,
            trace,
            sensors,
            output,
        } => {
            let f = fio::load_graph(&graph)?;
            let coords = f.coords.ok_or_else(|| {
                Error::Validation(format!("{} has no COORDS block", graph.display()))
            })?;
            let m = fio::load_matrix(&trace)?;
            if m.rows != coords.len() {
                return Err(Error::Validation("trace and graph sizes differ".into()));
            }
            let trace = SimulationTrace {
                dt: m.dt,
                duration: m.t0 + m.cols as f64 * m.dt,
                transient_cut: m.t0,
                n_neurons: m.rows,
                n_samples: m.cols,
                v: m.data,
                spikes: vec![Vec::new(); m.rows],
                drive_events: Vec::new(),
                warnings: Vec::new(),
            };
            let rec = record(&trace, &coords, &place_sensors(sensors)?)?;
            fio::save_signals_csv(&out(g, &output), &rec)?;
        }
        Command::Correlate {
            signals,
            output,
            density,
            network,
        } => {
            let rec = fio::load_signals_csv(&signals)?;
            let w = correlation_matrix(&rec, cfg.max_lag_ms, rec.dt)?;
            fio::save_correlation_csv(&out(g, &output), &w)?;
            if let Some(d) = density {
                let f = build_functional(&w, d)?;
                fio::save_graph(&out(g, &network), &f.graph, GraphKind::Undirected, None)?;
                println!("{} edges, threshold {}", f.edge_pairs, f.threshold);
            }
        }
        Command::Measure {
            graphs,
            output,
            wide,
        } => {
            let mut reports = Vec::new();
            for path in &graphs {
                let f = fio::load_graph(path)?;
                reports.push(measure_all(
                    &f.graph,
                    &path.display().to_string(),
                    &cfg.measure,
                )?);
            }
            fio::save_reports(&out(g, &output), &reports, wide)?;
        }
        Command::Compare {
            functional,
            spatial,
            output,
        } => {
            let f = fio::load_report_long(&functional)?;
            let s = fio::load_report_long(&spatial)?;
            let path = out(g, &output);
            let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
            write_comparison(BufWriter::new(file), &f, &s, &cfg)
                .map_err(|e| Error::io(&path, e))?;
        }
        Command::Sweep => {
            std::fs::create_dir_all(&g.out_dir).map_err(|e| Error::io(&g.out_dir, e))?;
            let cfg_path = g.out_dir.join("config.toml");
            std::fs::write(&cfg_path, cfg.to_toml_string()?)
                .map_err(|e| Error::io(&cfg_path, e))?;
            let result = experiment::sweep(&cfg)?;
            experiment::write_outputs(&g.out_dir, &result)?;
            let matches = result.rows.iter().filter(|r| r.matches).count();
            println!(
                "{} rows ({matches} matching), {} issues, written to {}",
                result.rows.len(),
                result.issues.len(),
                g.out_dir.display()
            );
        }
    }
    Ok(())
}

type Samples = [(String, Metric, Option<f64>)];

fn write_comparison<W: std::io::Write>(
    mut w: W,
    f: &Samples,
    s: &Samples,
    cfg: &ExperimentConfig,
) -> std::io::Result<()> {
    writeln!(w, "metric,n_functional,n_spatial,mean_functional,sd_functional,mean_spatial,sd_spatial,t_statistic,p_value,match")?;
    let pick = |rows: &Samples, m: Metric| -> Vec<f64> {
        rows.iter()
            .filter(|r| r.1 == m)
            .filter_map(|r| r.2)
            .collect()
    };
    for m in Metric::catalog() {
        let (a, b) = (pick(f, m), pick(s, m));
        let (t, p) = t_test(&a, &b, cfg.t_test).map_or((f64::NAN, f64::NAN), |r| (r.t, r.p));
        let stat = |x: &[f64]| {
            if x.len() >= 2 {
                (mean(x), sample_sd(x))
            } else {
                (f64::NAN, f64::NAN)
            }
        };
        let ((mf, sf), (ms, ss)) = (stat(&a), stat(&b));
        writeln!(
            w,
            "{m},{},{},{mf},{sf},{ms},{ss},{t},{p},{}",
            a.len(),
            b.len(),
            p >= funcsample::stats::ALPHA
        )?;
    }
    w.flush()
}
