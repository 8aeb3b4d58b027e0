//! Pipeline composition, parameter sweeps and their file formats.

mod config;
mod csv;
mod pipeline;
mod spec;
mod svg;

pub use config::parse_config;
pub use csv::{emit_csv, read_csv, write_rows, CsvRow};
pub use pipeline::{
    run_seed, run_single, run_sweep, run_sweep_with, run_trial, run_with_trials, trace_link,
    Execution, LinkTrace, RunResult, TrialStats,
};
pub use spec::{FilterSpec, Preset, RunSpec, SweepAxis, SweepSpec, MAX_BIT_RATE, MIN_BIT_RATE};
pub use svg::{emit_svg_plot, PlotLabels, Series};
