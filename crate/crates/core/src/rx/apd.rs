//! Avalanche photodiode with Gaussian shot, dark and thermal noise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::signal::{OpticalField, SampledSignal};

/// Elementary charge, C.
pub const ELECTRON_CHARGE: f64 = 1.602176634e-19;

#[derive(Debug, Clone, PartialEq)]
pub struct ApdParams {
    /// Avalanche multiplication M.
    pub gain_m: f64,
    /// A/W.
    pub responsivity: f64,
    pub ionization_ratio_k: f64,
    /// Bulk (unmultiplied) dark current, A.
    pub dark_current: f64,
    /// One-sided thermal noise current PSD, A²/Hz.
    pub thermal_psd: f64,
    pub noise_enabled: bool,
}

impl Default for ApdParams {
    fn default() -> Self {
        Self {
            gain_m: 2.0,
            responsivity: 1.0,
            ionization_ratio_k: 0.9,
            dark_current: 10e-9,
            thermal_psd: 1.0e-22,
            noise_enabled: true,
        }
    }
}

impl ApdParams {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("gain_m", self.gain_m, self.gain_m >= 1.0),
            ("responsivity", self.responsivity, self.responsivity > 0.0),
            (
                "ionization_ratio_k",
                self.ionization_ratio_k,
                (0.0..=1.0).contains(&self.ionization_ratio_k),
            ),
            ("dark_current", self.dark_current, self.dark_current >= 0.0),
            ("thermal_psd", self.thermal_psd, self.thermal_psd >= 0.0),
        ];
        for (name, value, ok) in checks {
            if !(ok && value.is_finite()) {
                return Err(Error::invalid(format!("APD {name} = {value} out of range")));
            }
        }
        Ok(())
    }

    pub fn excess_noise_factor(&self) -> f64 {
        excess_noise_factor(self.gain_m, self.ionization_ratio_k)
    }

    /// One-sided noise current PSD (A²/Hz) at optical power `power_w`.
    pub fn noise_psd(&self, power_w: f64) -> f64 {
        let m = self.gain_m;
        let shot = 2.0
            * ELECTRON_CHARGE
            * m
            * m
            * self.excess_noise_factor()
            * self.responsivity
            * power_w;
        let dark = 2.0 * ELECTRON_CHARGE * self.dark_current;
        shot + dark + self.thermal_psd
    }
}

/// McIntyre excess noise factor `F = kM + (1 - k)(2 - 1/M)`.
pub fn excess_noise_factor(gain_m: f64, k: f64) -> f64 {
    k * gain_m + (1.0 - k) * (2.0 - 1.0 / gain_m)
}

/// Square-law detection of `field`.
///
/// Each sample carries white noise over the simulation bandwidth, i.e.
/// variance `psd * fs / 2`. The noise stream depends only on `rng_seed`.
pub fn apd_detect(field: &OpticalField, apd: &ApdParams, rng_seed: u64) -> Result<SampledSignal> {
    apd.validate()?;
    let fs = field.sample_rate();
    let gain = apd.gain_m * apd.responsivity;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);

    let current = field
        .power()
        .map(|p| {
            let mean = gain * p + apd.dark_current;
            if apd.noise_enabled {
                let sigma = (apd.noise_psd(p) * fs / 2.0).sqrt();
                let z: f64 = StandardNormal.sample(&mut rng);
                mean + sigma * z
            } else {
                mean
            }
        })
        .collect();
    SampledSignal::new(current, fs)
}
