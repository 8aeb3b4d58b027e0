//! Fourth-order Bessel low-pass receiver filter, applied in the frequency
//! domain over the whole (periodic) record.

use std::sync::OnceLock;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::signal::SampledSignal;

/// Denominator of `105 / (s⁴ + 10s³ + 45s² + 105s + 105)`, lowest power first.
const PROTOTYPE_DEN: [f64; 5] = [105.0, 105.0, 45.0, 10.0, 1.0];

/// Group delay of the prototype at DC, in normalized seconds.
const PROTOTYPE_DELAY: f64 = PROTOTYPE_DEN[1] / PROTOTYPE_DEN[0];

#[derive(Debug, Clone, PartialEq)]
pub struct FilterParams {
    pub order: u32,
    pub cutoff_hz: f64,
    /// Stopband floor, dB below passband.
    pub depth_db: f64,
}

impl FilterParams {
    pub fn new(cutoff_hz: f64, depth_db: f64) -> Self {
        Self {
            order: 4,
            cutoff_hz,
            depth_db,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order != 4 {
            return Err(Error::invalid(format!(
                "only 4th-order Bessel filters are supported (got {})",
                self.order
            )));
        }
        if !(self.cutoff_hz.is_finite() && self.cutoff_hz > 0.0) {
            return Err(Error::invalid(format!(
                "filter cutoff {} Hz must be positive",
                self.cutoff_hz
            )));
        }
        if !(self.depth_db.is_finite() && self.depth_db > 0.0) {
            return Err(Error::invalid(format!(
                "filter depth {} dB must be positive",
                self.depth_db
            )));
        }
        Ok(())
    }
}

/// Prototype response at `s = jω`.
pub fn prototype_response(omega: f64) -> Complex64 {
    let s = Complex64::new(0.0, omega);
    let den = PROTOTYPE_DEN
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c);
    PROTOTYPE_DEN[0] / den
}

/// The prototype's -3 dB angular frequency (≈ 2.1139), found by bisection
/// on `|H(jω)|² = 1/2`.
pub fn prototype_cutoff_omega() -> f64 {
    static OMEGA: OnceLock<f64> = OnceLock::new();
    *OMEGA.get_or_init(|| {
        let (mut lo, mut hi) = (1.0f64, 4.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if prototype_response(mid).norm_sqr() > 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// Response of the scaled filter at frequency `f_hz` (may be negative).
///
/// The bulk group delay is removed so the eye stays centred in the bit slot;
/// the magnitude is floored at `-depth_db`.
pub fn response(filt: &FilterParams, f_hz: f64) -> Complex64 {
    let omega = prototype_cutoff_omega() * f_hz / filt.cutoff_hz;
    let h = prototype_response(omega) * Complex64::from_polar(1.0, omega * PROTOTYPE_DELAY);
    let floor = 10f64.powf(-filt.depth_db / 20.0);
    let mag = h.norm();
    if mag < floor {
        h * (floor / mag)
    } else {
        h
    }
}

pub fn bessel_lowpass(signal: &SampledSignal, filt: &FilterParams) -> Result<SampledSignal> {
    filt.validate()?;
    let n = signal.len();
    if n < 2 {
        return Err(Error::invalid("filter input needs at least 2 samples"));
    }
    let fs = signal.sample_rate();
    if filt.cutoff_hz >= fs / 2.0 {
        return Err(Error::InvalidCutoff {
            cutoff_hz: filt.cutoff_hz,
            nyquist_hz: fs / 2.0,
        });
    }

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);

    let mut buf: Vec<Complex64> = signal
        .samples()
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    forward.process(&mut buf);
    for (k, bin) in buf.iter_mut().enumerate() {
        let idx = if k <= n / 2 {
            k as f64
        } else {
            k as f64 - n as f64
        };
        *bin *= response(filt, idx * fs / n as f64);
    }
    inverse.process(&mut buf);

    let scale = 1.0 / n as f64;
    SampledSignal::new(buf.into_iter().map(|c| c.re * scale).collect(), fs)
}
