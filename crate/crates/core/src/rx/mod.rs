//! Receiver front end: APD detection followed by the Bessel filter.

mod apd;
mod bessel;

pub use apd::{apd_detect, excess_noise_factor, ApdParams, ELECTRON_CHARGE};
pub use bessel::{
    bessel_lowpass, prototype_cutoff_omega, prototype_response, response, FilterParams,
};
