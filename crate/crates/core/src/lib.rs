//! Deterministic physical-layer simulator for free-space optical links.
//!
//! The pipeline mirrors a lab bench: PRBS source, line coder and ideal
//! Mach-Zehnder modulator, EDFA booster, a divergence/attenuation channel,
//! an APD receiver with a fourth-order Bessel filter, and an eye-diagram
//! analyzer reporting Q, BER and received power.
//!
//! - [`tx`]: bit source, five modulation formats, field synthesis
//! - [`channel`]: geometric and atmospheric loss
//! - [`rx`]: APD detection and receiver filtering
//! - [`metrics`]: power meter, eye statistics, Q/BER
//! - [`sweep`]: end-to-end runs, parameter sweeps, config/CSV/SVG I/O

pub mod channel;
pub mod error;
pub mod metrics;
pub mod rx;
pub mod signal;
pub mod sweep;
pub mod tx;
pub mod units;

pub use error::{Error, Result};
pub use signal::{BitSequence, OpticalField, SampledSignal};
pub use tx::ModulationFormat;
