//! Sampled containers passed between pipeline stages.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check_rate(sample_rate: f64) -> Result<()> {
    if sample_rate.is_finite() && sample_rate > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "sample rate {sample_rate} Hz must be positive and finite"
        )))
    }
}

/// Real-valued samples (photocurrent in amperes, or dimensionless drive).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    samples: Vec<f64>,
    sample_rate: f64,
}

impl SampledSignal {
    pub fn new(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        check_rate(sample_rate)?;
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }
}

/// Complex baseband envelope of the optical carrier, in √W.
///
/// `|e[n]|²` is the instantaneous optical power in watts. The carrier itself
/// is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalField {
    envelope: Vec<Complex64>,
    sample_rate: f64,
}

impl OpticalField {
    pub fn new(envelope: Vec<Complex64>, sample_rate: f64) -> Result<Self> {
        check_rate(sample_rate)?;
        if envelope
            .iter()
            .any(|e| !(e.re.is_finite() && e.im.is_finite()))
        {
            return Err(Error::invalid(
                "optical envelope contains non-finite samples",
            ));
        }
        Ok(Self {
            envelope,
            sample_rate,
        })
    }

    pub fn envelope(&self) -> &[Complex64] {
        &self.envelope
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.envelope.len()
    }

    pub fn is_empty(&self) -> bool {
        self.envelope.is_empty()
    }

    /// Instantaneous power per sample, in watts.
    pub fn power(&self) -> impl Iterator<Item = f64> + '_ {
        self.envelope.iter().map(|e| e.norm_sqr())
    }

    /// Mean of `|e[n]|²` in watts; zero for an empty field.
    pub fn average_power(&self) -> f64 {
        if self.envelope.is_empty() {
            return 0.0;
        }
        self.power().sum::<f64>() / self.envelope.len() as f64
    }

    /// Multiplies the envelope by a real amplitude factor.
    pub(crate) fn scaled(&self, amplitude: f64) -> Self {
        Self {
            envelope: self.envelope.iter().map(|e| e * amplitude).collect(),
            sample_rate: self.sample_rate,
        }
    }
}

/// Transmitted binary pattern; the ground truth for eye classification.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSequence {
    bits: Vec<u8>,
}

impl BitSequence {
    /// Builds a sequence from 0/1 values. Any nonzero byte counts as a one.
    pub fn new(bits: impl IntoIterator<Item = u8>) -> Self {
        Self {
            bits: bits.into_iter().map(|b| u8::from(b != 0)).collect(),
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }
}

impl FromIterator<u8> for BitSequence {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        Self::new(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sample_rate() {
        assert!(SampledSignal::new(vec![0.0], 0.0).is_err());
        assert!(SampledSignal::new(vec![0.0], f64::NAN).is_err());
        assert!(OpticalField::new(vec![Complex64::new(1.0, 0.0)], -1.0).is_err());
    }

    #[test]
    fn field_average_power() {
        let f = OpticalField::new(
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 0.0),
            ],
            1.0,
        )
        .unwrap();
        assert!((f.average_power() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn bits_normalized() {
        let b = BitSequence::new([0, 3, 1, 0]);
        assert_eq!(b.bits(), &[0, 1, 1, 0]);
        assert_eq!(b.ones(), 2);
        assert_eq!(b.zeros(), 2);
    }
}
