//! End-to-end link runs and sweeps.

use rayon::prelude::*;

use crate::channel::apply_channel;
use crate::error::{Error, Result};
use crate::metrics::{
    count_errors, estimate_q, measure_power_dbm, q_to_ber, EyeStats, DEFAULT_GUARD, LINK_FAILED_Q,
};
use crate::rx::{apd_detect, bessel_lowpass};
use crate::signal::{BitSequence, OpticalField, SampledSignal};
use crate::sweep::spec::{RunSpec, SweepSpec};
use crate::tx::{transmit, ModulationFormat};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialStats {
    pub trials: u32,
    pub q_mean: f64,
    pub q_std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub format: ModulationFormat,
    pub bit_rate_bps: f64,
    pub range_m: f64,
    pub alpha_db_per_km: f64,
    pub power_dbm: f64,
    /// Noise seed actually used for this run.
    pub seed: u64,
    pub q_factor: f64,
    pub ber: f64,
    pub rx_power_dbm: f64,
    pub phase: usize,
    pub threshold_a: f64,
    /// Decision errors counted at the reported phase and threshold.
    pub bit_errors: usize,
    pub eye: EyeStats,
    pub trials: Option<TrialStats>,
}

impl RunResult {
    pub fn link_failed(&self) -> bool {
        self.q_factor < LINK_FAILED_Q
    }
}

/// Intermediate signals of one run, for eye dumps and diagnostics.
#[derive(Debug, Clone)]
pub struct LinkTrace {
    pub bits: BitSequence,
    pub tx_field: OpticalField,
    pub rx_field: OpticalField,
    /// Filtered photocurrent, amperes.
    pub photocurrent: SampledSignal,
    pub seed: u64,
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(hash: u64, bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(hash, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

/// Noise seed for `spec` and trial index: an FNV-1a hash over the master
/// seed, the format tag and every sweepable value. Independent of run order.
pub fn run_seed(spec: &RunSpec, trial: u32) -> u64 {
    let mut h = fnv1a(FNV_OFFSET, &spec.master_seed.to_le_bytes());
    h = fnv1a(h, spec.format.tag().as_bytes());
    for v in [
        spec.tx.bit_rate,
        spec.channel.range_m,
        spec.channel.alpha_db_per_km,
        spec.tx.avg_power_dbm,
    ] {
        h = fnv1a(h, &v.to_bits().to_le_bytes());
    }
    fnv1a(h, &trial.to_le_bytes())
}

pub fn trace_link(spec: &RunSpec, seed: u64) -> Result<LinkTrace> {
    spec.validate()?;
    let (bits, tx_field) = transmit(spec.format, &spec.tx)?;
    let rx_field = apply_channel(&tx_field, &spec.channel)?;
    let raw = apd_detect(&rx_field, &spec.apd, seed)?;
    let photocurrent = bessel_lowpass(&raw, &spec.filter.params(spec.tx.bit_rate))?;
    Ok(LinkTrace {
        bits,
        tx_field,
        rx_field,
        photocurrent,
        seed,
    })
}

/// One noise realization of `spec`.
pub fn run_trial(spec: &RunSpec, trial: u32) -> Result<RunResult> {
    let seed = run_seed(spec, trial);
    let trace = trace_link(spec, seed)?;
    let sps = spec.tx.samples_per_bit;
    let (q, eye) = estimate_q(&trace.photocurrent, &trace.bits, sps, DEFAULT_GUARD)?;
    let threshold = eye.threshold();
    Ok(RunResult {
        format: spec.format,
        bit_rate_bps: spec.tx.bit_rate,
        range_m: spec.channel.range_m,
        alpha_db_per_km: spec.channel.alpha_db_per_km,
        power_dbm: spec.tx.avg_power_dbm,
        seed,
        q_factor: q,
        ber: q_to_ber(q),
        rx_power_dbm: measure_power_dbm(&trace.rx_field),
        phase: eye.phase,
        threshold_a: threshold,
        bit_errors: count_errors(&trace.photocurrent, &trace.bits, sps, eye.phase, threshold),
        eye,
        trials: None,
    })
}

pub fn run_single(spec: &RunSpec) -> Result<RunResult> {
    run_trial(spec, 0)
}

/// Trial 0 is reported in full; with `trials > 1` the Q mean and
/// (population) standard deviation over all trials are attached.
pub fn run_with_trials(spec: &RunSpec, trials: u32) -> Result<RunResult> {
    let mut first = run_trial(spec, 0)?;
    if trials > 1 {
        let mut qs = vec![first.q_factor];
        for t in 1..trials {
            qs.push(run_trial(spec, t)?.q_factor);
        }
        let n = qs.len() as f64;
        let mean = qs.iter().sum::<f64>() / n;
        let var = qs.iter().map(|q| (q - mean).powi(2)).sum::<f64>() / n;
        first.trials = Some(TrialStats {
            trials,
            q_mean: mean,
            q_std: var.sqrt(),
        });
    }
    Ok(first)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<RunResult>> {
    run_sweep_with(spec, Execution::Parallel)
}

pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<Vec<RunResult>> {
    spec.validate()?;
    let points = spec.points();
    let run = |p: &RunSpec| {
        run_with_trials(p, spec.trials).map_err(|e| Error::Run {
            format: p.format,
            value: spec.axis.value(p),
            source: Box::new(e),
        })
    };
    match exec {
        Execution::Serial => points.iter().map(run).collect(),
        Execution::Parallel => points.par_iter().map(run).collect(),
    }
}
