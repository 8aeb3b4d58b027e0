//! Power and ratio conversions.
//!
//! Everything inside the pipeline is watts and linear ratios; dB and dBm
//! only appear at configuration and reporting boundaries.

use crate::error::{Error, Result};

/// Reported power for a field that carries no energy at all.
pub const POWER_FLOOR_DBM: f64 = -200.0;

pub fn dbm_to_watts(p_dbm: f64) -> Result<f64> {
    if !p_dbm.is_finite() {
        return Err(Error::invalid(format!("power {p_dbm} dBm is not finite")));
    }
    Ok(10f64.powf(p_dbm / 10.0) * 1e-3)
}

pub fn watts_to_dbm(watts: f64) -> Result<f64> {
    if !(watts.is_finite() && watts > 0.0) {
        return Err(Error::invalid(format!(
            "power {watts} W must be positive and finite"
        )));
    }
    Ok(10.0 * (watts / 1e-3).log10())
}

pub fn db_to_linear(x_db: f64) -> Result<f64> {
    if !x_db.is_finite() {
        return Err(Error::invalid(format!("ratio {x_db} dB is not finite")));
    }
    Ok(10f64.powf(x_db / 10.0))
}

pub fn linear_to_db(ratio: f64) -> Result<f64> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::invalid(format!(
            "ratio {ratio} must be positive and finite"
        )));
    }
    Ok(10.0 * ratio.log10())
}
