//! Received power, eye statistics, Q-factor and BER.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::signal::{BitSequence, OpticalField, SampledSignal};
use crate::units::{watts_to_dbm, POWER_FLOOR_DBM};

/// Upper bound on reported Q; also the value for a noise-free eye.
pub const Q_CAP: f64 = 1000.0;

/// Runs with Q below this are flagged as failed links.
pub const LINK_FAILED_Q: f64 = 2.0;

pub const DEFAULT_GUARD: f64 = 0.2;

const MIN_CLASS_SAMPLES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EyeStats {
    pub mu1: f64,
    pub mu0: f64,
    pub sigma1: f64,
    pub sigma0: f64,
    /// Sampling offset within the bit slot, in samples.
    pub phase: usize,
}

impl EyeStats {
    /// Decision threshold that equalizes the normalized distances to both
    /// rails.
    pub fn threshold(&self) -> f64 {
        let s = self.sigma0 + self.sigma1;
        if s > 0.0 {
            (self.sigma0 * self.mu1 + self.sigma1 * self.mu0) / s
        } else {
            0.5 * (self.mu0 + self.mu1)
        }
    }

    pub fn q(&self) -> f64 {
        let opening = self.mu1 - self.mu0;
        if opening <= 0.0 {
            return 0.0;
        }
        let spread = self.sigma1 + self.sigma0;
        if spread < 1e-15 * opening {
            return Q_CAP;
        }
        (opening / spread).min(Q_CAP)
    }
}

pub fn measure_power_dbm(field: &OpticalField) -> f64 {
    let p = field.average_power();
    if p > 0.0 {
        watts_to_dbm(p).unwrap_or(POWER_FLOOR_DBM)
    } else {
        POWER_FLOOR_DBM
    }
}

fn mean_std(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Eye statistics at one sampling phase, classified by the known bits.
pub fn eye_at_phase(
    samples: &[f64],
    bits: &BitSequence,
    sps: usize,
    phase: usize,
) -> Result<EyeStats> {
    let mut marks = Vec::with_capacity(bits.ones());
    let mut spaces = Vec::with_capacity(bits.zeros());
    for (k, &b) in bits.bits().iter().enumerate() {
        let v = samples[k * sps + phase];
        if b == 1 {
            marks.push(v);
        } else {
            spaces.push(v);
        }
    }
    if marks.len() < MIN_CLASS_SAMPLES || spaces.len() < MIN_CLASS_SAMPLES {
        return Err(Error::InsufficientData {
            marks: marks.len(),
            spaces: spaces.len(),
        });
    }
    let (mu1, sigma1) = mean_std(&marks);
    let (mu0, sigma0) = mean_std(&spaces);
    Ok(EyeStats {
        mu1,
        mu0,
        sigma1,
        sigma0,
        phase,
    })
}

/// Candidate sampling phases: the central `1 - 2·guard` of the slot.
fn candidate_phases(sps: usize, guard: f64) -> std::ops::RangeInclusive<usize> {
    let lo = (guard * sps as f64).ceil() as usize;
    let hi = (((1.0 - guard) * sps as f64).floor() as usize).min(sps - 1);
    if lo > hi {
        let mid = sps / 2;
        mid..=mid
    } else {
        lo..=hi
    }
}

/// Best Q over the central sampling phases. Ties keep the earliest phase.
pub fn estimate_q(
    photocurrent: &SampledSignal,
    bits: &BitSequence,
    sps: usize,
    guard: f64,
) -> Result<(f64, EyeStats)> {
    if sps == 0 {
        return Err(Error::invalid("samples per bit must be at least 1"));
    }
    if !(0.0..0.5).contains(&guard) {
        return Err(Error::invalid(format!("guard {guard} outside [0, 0.5)")));
    }
    if photocurrent.len() != bits.len() * sps {
        return Err(Error::invalid(format!(
            "photocurrent has {} samples, expected {} bits x {sps}",
            photocurrent.len(),
            bits.len()
        )));
    }
    let samples = photocurrent.samples();
    let mut best: Option<(f64, EyeStats)> = None;
    for phase in candidate_phases(sps, guard) {
        let eye = eye_at_phase(samples, bits, sps, phase)?;
        let q = eye.q();
        if best.is_none_or(|(bq, _)| q > bq) {
            best = Some((q, eye));
        }
    }
    // candidate_phases is never empty
    Ok(best.expect("at least one sampling phase"))
}

/// Decided bits that disagree with `bits` at the given phase and threshold.
pub fn count_errors(
    photocurrent: &SampledSignal,
    bits: &BitSequence,
    sps: usize,
    phase: usize,
    threshold: f64,
) -> usize {
    bits.bits()
        .iter()
        .enumerate()
        .filter(|&(k, &b)| {
            let decided = photocurrent.samples()[k * sps + phase] > threshold;
            decided != (b == 1)
        })
        .count()
}

/// Gaussian-noise BER for a given Q: `0.5·erfc(Q/√2)`.
pub fn q_to_ber(q: f64) -> f64 {
    0.5 * erfc(q / std::f64::consts::SQRT_2)
}
