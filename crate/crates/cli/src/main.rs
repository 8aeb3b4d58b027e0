//! `fsosim`: run single links, preset sweeps, eye dumps and charts.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use fso_core::sweep::{
    emit_csv, emit_svg_plot, parse_config, read_csv, run_seed, run_sweep_with, run_with_trials,
    trace_link, CsvRow, Execution, PlotLabels, Preset, RunResult, RunSpec, Series, SweepAxis,
    SweepSpec,
};
use fso_core::ModulationFormat;

#[derive(Parser, Debug)]
#[command(name = "fsosim", version, about = "Free-space optical link simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one link and write a one-row results CSV.
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        /// Noise realizations; more than one adds q_mean/q_std columns.
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a preset or configured sweep; writes results.csv and two charts.
    Sweep {
        #[arg(long, value_parser = parse_preset, conflicts_with = "config", required_unless_present = "config")]
        preset: Option<Preset>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Override the number of noise trials per point.
        #[arg(long)]
        trials: Option<u32>,
        /// Override the master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Run points one after another instead of in parallel.
        #[arg(long)]
        serial: bool,
    },
    /// Dump the filtered photocurrent as eye-diagram samples.
    Eye {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chart two columns of a results CSV, one line per format.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        /// Column name, or a sweep axis (bit_rate, range, power, alpha).
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "q_factor")]
        y: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        title: Option<String>,
    },
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: fso_core::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ModulationFormat, String> {
    s.parse().map_err(|e: fso_core::Error| e.to_string())
}

/// Link parameters. Anything left unset keeps the reference-system default.
#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, value_parser = parse_format, default_value = "nrz")]
    format: ModulationFormat,
    #[arg(long)]
    bitrate_gbps: Option<f64>,
    #[arg(long)]
    range_km: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    power_dbm: Option<f64>,
    #[arg(long)]
    alpha_db_per_km: Option<f64>,
    #[arg(long)]
    theta_mrad: Option<f64>,
    #[arg(long)]
    d_tx_cm: Option<f64>,
    #[arg(long)]
    d_rx_cm: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    edfa_gain_db: Option<f64>,
    #[arg(long)]
    apd_gain_m: Option<f64>,
    #[arg(long)]
    apd_responsivity: Option<f64>,
    #[arg(long)]
    apd_ionization_ratio: Option<f64>,
    #[arg(long)]
    apd_dark_current_na: Option<f64>,
    #[arg(long)]
    apd_thermal_psd: Option<f64>,
    #[arg(long)]
    filter_cutoff_ratio: Option<f64>,
    #[arg(long)]
    filter_depth_db: Option<f64>,
    #[arg(long)]
    samples_per_bit: Option<usize>,
    #[arg(long)]
    sequence_length: Option<usize>,
    #[arg(long)]
    rz_duty: Option<f64>,
    #[arg(long)]
    csrz_duty: Option<f64>,
    #[arg(long)]
    prbs_order: Option<u32>,
    #[arg(long)]
    prbs_seed: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    no_noise: bool,
}

impl RunArgs {
    fn to_spec(&self) -> RunSpec {
        let mut s = RunSpec {
            format: self.format,
            ..RunSpec::default()
        };
        let set = |dst: &mut f64, v: Option<f64>, scale: f64| {
            if let Some(v) = v {
                *dst = v * scale;
            }
        };
        set(&mut s.tx.bit_rate, self.bitrate_gbps, 1e9);
        set(&mut s.channel.range_m, self.range_km, 1e3);
        set(&mut s.tx.avg_power_dbm, self.power_dbm, 1.0);
        set(&mut s.channel.alpha_db_per_km, self.alpha_db_per_km, 1.0);
        set(&mut s.channel.theta_rad, self.theta_mrad, 1e-3);
        set(&mut s.channel.d_tx_m, self.d_tx_cm, 1e-2);
        set(&mut s.channel.d_rx_m, self.d_rx_cm, 1e-2);
        set(&mut s.tx.edfa_gain_db, self.edfa_gain_db, 1.0);
        set(&mut s.apd.gain_m, self.apd_gain_m, 1.0);
        set(&mut s.apd.responsivity, self.apd_responsivity, 1.0);
        set(
            &mut s.apd.ionization_ratio_k,
            self.apd_ionization_ratio,
            1.0,
        );
        set(&mut s.apd.dark_current, self.apd_dark_current_na, 1e-9);
        set(&mut s.apd.thermal_psd, self.apd_thermal_psd, 1.0);
        set(&mut s.filter.cutoff_ratio, self.filter_cutoff_ratio, 1.0);
        set(&mut s.filter.depth_db, self.filter_depth_db, 1.0);
        set(&mut s.tx.rz_duty, self.rz_duty, 1.0);
        set(&mut s.tx.csrz_duty, self.csrz_duty, 1.0);
        if let Some(v) = self.samples_per_bit {
            s.tx.samples_per_bit = v;
        }
        if let Some(v) = self.sequence_length {
            s.tx.sequence_length = v;
        }
        if let Some(v) = self.prbs_order {
            s.tx.prbs_order = v;
        }
        if let Some(v) = self.prbs_seed {
            s.tx.prbs_seed = v;
        }
        if let Some(v) = self.seed {
            s.master_seed = v;
        }
        s.apd.noise_enabled = !self.no_noise;
        s
    }
}

type ColumnFn = dyn Fn(&CsvRow) -> Option<f64>;

/// Exit status 1 for bad input, 2 for failures while running.
enum Failure {
    Input(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<fso_core::Error> for Failure {
    fn from(e: fso_core::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.into())
        } else {
            Failure::Runtime(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing to stdout"),
    }
}

fn grouped_series(
    rows: &[CsvRow],
    x: impl Fn(&CsvRow) -> Option<f64>,
    y: &str,
) -> Result<Vec<Series>, Failure> {
    let mut series: Vec<Series> = Vec::new();
    for r in rows {
        let xv = x(r).ok_or_else(|| Failure::Input(anyhow::anyhow!("unknown x column")))?;
        let yv = r
            .column(y)
            .ok_or_else(|| Failure::Input(anyhow::anyhow!("unknown y column `{y}`")))?;
        let name = r.format.tag();
        match series.iter_mut().find(|s| s.name == name) {
            Some(s) => s.points.push((xv, yv)),
            None => series.push(Series::new(name, vec![(xv, yv)])),
        }
    }
    Ok(series)
}

fn sweep_charts(spec: &SweepSpec, results: &[RunResult], dir: &Path) -> Result<(), Failure> {
    let rows: Vec<CsvRow> = results.iter().map(CsvRow::from).collect();
    let axis = spec.axis;
    let x = |r: &CsvRow| r.column(axis.csv_column()).map(|v| axis.to_display(v));
    for (y, file, label) in [
        ("q_factor", "q_vs_axis.svg", "Q-factor"),
        (
            "rx_power_dbm",
            "rxpower_vs_axis.svg",
            "Received power (dBm)",
        ),
    ] {
        let series = grouped_series(&rows, x, y)?;
        let labels = PlotLabels {
            title: format!("{label} vs. {}", axis.label()),
            x: axis.label(),
            y: label.to_string(),
        };
        let svg = emit_svg_plot(&series, &labels)?;
        let path = dir.join(file);
        fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate { run, trials, out } => {
            let spec = run.to_spec();
            spec.validate()?;
            let result = run_with_trials(&spec, trials.max(1))?;
            write_output(out.as_deref(), &emit_csv(&[result])?)?;
        }
        Command::Sweep {
            preset,
            config,
            out,
            trials,
            seed,
            serial,
        } => {
            let mut spec = match (preset, config) {
                (Some(p), _) => p.sweep(1),
                (None, Some(path)) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))
                        .map_err(Failure::Input)?;
                    parse_config(&text)?
                }
                (None, None) => unreachable!("clap requires --preset or --config"),
            };
            if let Some(t) = trials {
                spec.trials = t;
            }
            if let Some(s) = seed {
                spec.base.master_seed = s;
            }
            spec.validate()?;
            let exec = if serial {
                Execution::Serial
            } else {
                Execution::Parallel
            };
            let results = run_sweep_with(&spec, exec)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let csv_path = out.join("results.csv");
            fs::write(&csv_path, emit_csv(&results)?)
                .with_context(|| format!("writing {}", csv_path.display()))?;
            sweep_charts(&spec, &results, &out)?;
            eprintln!("wrote {} rows to {}", results.len(), out.display());
        }
        Command::Eye { run, out } => {
            let spec = run.to_spec();
            let trace = trace_link(&spec, run_seed(&spec, 0))?;
            let sps = spec.tx.samples_per_bit;
            let mut text = String::from("phase_sample,current_a,bit\n");
            for (n, i) in trace.photocurrent.samples().iter().enumerate() {
                text.push_str(&format!(
                    "{},{:e},{}\n",
                    n % sps,
                    i,
                    trace.bits.bits()[n / sps]
                ));
            }
            write_output(out.as_deref(), &text)?;
        }
        Command::Plot {
            input,
            x,
            y,
            out,
            title,
        } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))
                .map_err(Failure::Input)?;
            let rows = read_csv(&text)?;
            if rows.is_empty() {
                return Err(Failure::Input(anyhow::anyhow!(
                    "{} has no rows",
                    input.display()
                )));
            }
            let (xs, x_label): (Box<ColumnFn>, String) = match x.parse::<SweepAxis>() {
                Ok(axis) => (
                    Box::new(move |r: &CsvRow| {
                        r.column(axis.csv_column()).map(|v| axis.to_display(v))
                    }),
                    axis.label(),
                ),
                Err(_) => {
                    let col = x.clone();
                    if rows[0].column(&col).is_none() {
                        return Err(Failure::Input(anyhow::anyhow!("unknown x column `{col}`")));
                    }
                    (Box::new(move |r: &CsvRow| r.column(&col)), x.clone())
                }
            };
            let series = grouped_series(&rows, xs, &y)?;
            let labels = PlotLabels {
                title: title.unwrap_or_else(|| format!("{y} vs. {x_label}")),
                x: x_label,
                y: y.clone(),
            };
            let svg = emit_svg_plot(&series, &labels)?;
            fs::write(&out, svg).with_context(|| format!("writing {}", out.display()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
