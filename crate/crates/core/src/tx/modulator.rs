//! Ideal external modulation and flat optical gain.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{BitSequence, OpticalField};
use crate::tx::line_code::{line_code, ModulationFormat};
use crate::tx::prbs::{prbs_generate, MAX_ORDER, MIN_ORDER};
use crate::units::{db_to_linear, dbm_to_watts};

#[derive(Debug, Clone, PartialEq)]
pub struct TxParams {
    /// Average launch power after modulation, dBm.
    pub avg_power_dbm: f64,
    pub bit_rate: f64,
    pub samples_per_bit: usize,
    pub sequence_length: usize,
    pub rz_duty: f64,
    pub csrz_duty: f64,
    pub edfa_gain_db: f64,
    pub prbs_order: u32,
    pub prbs_seed: u64,
}

impl Default for TxParams {
    fn default() -> Self {
        Self {
            avg_power_dbm: 10.0,
            bit_rate: 10e9,
            samples_per_bit: 64,
            sequence_length: 128,
            rz_duty: 0.5,
            csrz_duty: 0.66,
            edfa_gain_db: 10.0,
            prbs_order: 7,
            prbs_seed: 0x7f,
        }
    }
}

impl TxParams {
    pub fn sample_rate(&self) -> f64 {
        self.samples_per_bit as f64 * self.bit_rate
    }

    pub fn validate(&self) -> Result<()> {
        if !self.avg_power_dbm.is_finite() {
            return Err(Error::invalid("launch power must be finite"));
        }
        if !(self.bit_rate.is_finite() && self.bit_rate > 0.0) {
            return Err(Error::invalid(format!(
                "bit rate {} must be positive",
                self.bit_rate
            )));
        }
        if self.samples_per_bit < 8 {
            return Err(Error::invalid(format!(
                "samples per bit {} below the minimum of 8",
                self.samples_per_bit
            )));
        }
        if self.sequence_length < 8 {
            return Err(Error::invalid(format!(
                "sequence length {} below the minimum of 8",
                self.sequence_length
            )));
        }
        for (name, duty) in [("rz_duty", self.rz_duty), ("csrz_duty", self.csrz_duty)] {
            if !(duty > 0.0 && duty <= 1.0) {
                return Err(Error::invalid(format!("{name} {duty} outside (0, 1]")));
            }
        }
        if !self.edfa_gain_db.is_finite() {
            return Err(Error::invalid("EDFA gain must be finite"));
        }
        if !(MIN_ORDER..=MAX_ORDER).contains(&self.prbs_order) {
            return Err(Error::invalid(format!(
                "PRBS order {} outside {MIN_ORDER}..={MAX_ORDER}",
                self.prbs_order
            )));
        }
        if self.prbs_seed == 0 || self.prbs_seed >= 1u64 << self.prbs_order {
            return Err(Error::InvalidSeed {
                order: self.prbs_order,
                seed: self.prbs_seed,
            });
        }
        Ok(())
    }

    pub fn bits(&self) -> Result<BitSequence> {
        prbs_generate(self.prbs_order, self.prbs_seed, self.sequence_length)
    }
}

/// Scales `amplitudes` into a field whose mean power is exactly the
/// requested launch power. Signs are kept as optical phase.
pub fn synthesize_field(
    amplitudes: &[f64],
    avg_power_dbm: f64,
    sample_rate: f64,
) -> Result<OpticalField> {
    let target = dbm_to_watts(avg_power_dbm)?;
    if amplitudes.iter().any(|a| !a.is_finite()) {
        return Err(Error::invalid("amplitudes must be finite"));
    }
    let mean_sq = amplitudes.iter().map(|a| a * a).sum::<f64>() / amplitudes.len().max(1) as f64;
    if mean_sq == 0.0 {
        return Err(Error::DegenerateSignal("all-zero drive amplitudes"));
    }
    let scale = (target / mean_sq).sqrt();
    OpticalField::new(
        amplitudes
            .iter()
            .map(|&a| Complex64::new(scale * a, 0.0))
            .collect(),
        sample_rate,
    )
}

/// Noiseless flat gain.
pub fn edfa_amplify(field: &OpticalField, gain_db: f64) -> Result<OpticalField> {
    let gain = db_to_linear(gain_db)?;
    Ok(field.scaled(gain.sqrt()))
}

/// PRBS, line code, modulator and booster for one format.
pub fn transmit(format: ModulationFormat, tx: &TxParams) -> Result<(BitSequence, OpticalField)> {
    tx.validate()?;
    let bits = tx.bits()?;
    let drive = line_code(format, &bits, tx.samples_per_bit, tx.rz_duty, tx.csrz_duty)?;
    let field = synthesize_field(&drive, tx.avg_power_dbm, tx.sample_rate())?;
    let field = edfa_amplify(&field, tx.edfa_gain_db)?;
    Ok((bits, field))
}
