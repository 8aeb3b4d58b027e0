//! Free-space channel: beam-divergence capture loss plus clear-air attenuation.

use crate::error::{Error, Result};
use crate::signal::OpticalField;
use crate::units::db_to_linear;

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelParams {
    pub range_m: f64,
    pub alpha_db_per_km: f64,
    /// Full divergence angle, radians.
    pub theta_rad: f64,
    pub d_tx_m: f64,
    pub d_rx_m: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            range_m: 2000.0,
            alpha_db_per_km: 10.0,
            theta_rad: 2e-3,
            d_tx_m: 0.10,
            d_rx_m: 1.50,
        }
    }
}

impl ChannelParams {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("range_m", self.range_m, self.range_m >= 0.0),
            (
                "alpha_db_per_km",
                self.alpha_db_per_km,
                self.alpha_db_per_km >= 0.0,
            ),
            ("theta_rad", self.theta_rad, self.theta_rad > 0.0),
            ("d_tx_m", self.d_tx_m, self.d_tx_m > 0.0),
            ("d_rx_m", self.d_rx_m, self.d_rx_m > 0.0),
        ];
        for (name, value, ok) in checks {
            if !(ok && value.is_finite()) {
                return Err(Error::invalid(format!(
                    "channel {name} = {value} out of range"
                )));
            }
        }
        Ok(())
    }
}

/// Fraction of the diverged beam caught by the receive aperture, as a loss
/// in dB. The capture ratio is clamped at one.
pub fn geometric_loss_db(params: &ChannelParams) -> f64 {
    let spread = params.d_tx_m + params.theta_rad * params.range_m;
    let capture = (params.d_rx_m / spread).powi(2).min(1.0);
    -10.0 * capture.log10()
}

pub fn atmospheric_loss_db(alpha_db_per_km: f64, range_m: f64) -> f64 {
    alpha_db_per_km * (range_m / 1000.0)
}

pub fn total_loss_db(params: &ChannelParams) -> f64 {
    geometric_loss_db(params) + atmospheric_loss_db(params.alpha_db_per_km, params.range_m)
}

/// Memoryless: the output envelope is the input times a positive constant.
pub fn apply_channel(field: &OpticalField, params: &ChannelParams) -> Result<OpticalField> {
    params.validate()?;
    let transmittance = db_to_linear(-total_loss_db(params))?;
    Ok(field.scaled(transmittance.sqrt()))
}
