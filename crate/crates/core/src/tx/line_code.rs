//! Pulse shaping for the five supported modulation formats.
//!
//! The output is a per-sample field amplitude in [-1, 1]; its sign is the
//! optical phase (0 or π).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::signal::BitSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModulationFormat {
    Nrz,
    Rz,
    Csrz,
    /// Modified duobinary, NRZ-shaped.
    Modb,
    /// Modified duobinary with an RZ pulse carver.
    Mdrz,
}

impl ModulationFormat {
    pub const ALL: [ModulationFormat; 5] = [
        ModulationFormat::Nrz,
        ModulationFormat::Rz,
        ModulationFormat::Csrz,
        ModulationFormat::Modb,
        ModulationFormat::Mdrz,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ModulationFormat::Nrz => "NRZ",
            ModulationFormat::Rz => "RZ",
            ModulationFormat::Csrz => "CSRZ",
            ModulationFormat::Modb => "MODB",
            ModulationFormat::Mdrz => "MDRZ",
        }
    }
}

impl fmt::Display for ModulationFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ModulationFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        ModulationFormat::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidFormat(s.to_string()))
    }
}

/// Modified-duobinary precoder: `p[k] = b[k] XOR p[k-2]` with zero history.
pub fn precode_modified_duobinary(bits: &BitSequence) -> BitSequence {
    let b = bits.bits();
    let mut p = vec![0u8; b.len()];
    for k in 0..b.len() {
        let prev = if k >= 2 { p[k - 2] } else { 0 };
        p[k] = b[k] ^ prev;
    }
    BitSequence::new(p)
}

/// Three-level symbols `c[k] = p[k] - p[k-2]` of the (1 - D²) code.
/// Square-law detection of `c` gives back the source bits.
pub fn modified_duobinary_symbols(bits: &BitSequence) -> Vec<i8> {
    let p = precode_modified_duobinary(bits);
    let p = p.bits();
    (0..p.len())
        .map(|k| {
            let prev = if k >= 2 { p[k - 2] } else { 0 };
            p[k] as i8 - prev as i8
        })
        .collect()
}

/// Number of "on" samples of a carved pulse occupying `duty` of the slot.
fn carved_width(duty: f64, sps: usize) -> usize {
    ((duty * sps as f64).round() as usize).clamp(1, sps)
}

fn check_duty(name: &str, duty: f64) -> Result<()> {
    if duty > 0.0 && duty <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} {duty} outside (0, 1]")))
    }
}

/// Expands `bits` into per-sample field amplitudes for `format`.
///
/// `rz_duty` gates RZ and MDRZ, `csrz_duty` gates CSRZ.
pub fn line_code(
    format: ModulationFormat,
    bits: &BitSequence,
    sps: usize,
    rz_duty: f64,
    csrz_duty: f64,
) -> Result<Vec<f64>> {
    if bits.is_empty() {
        return Err(Error::invalid("cannot line-code an empty bit sequence"));
    }
    if sps == 0 {
        return Err(Error::invalid("samples per bit must be at least 1"));
    }
    check_duty("rz_duty", rz_duty)?;
    check_duty("csrz_duty", csrz_duty)?;

    // (symbol per slot, number of leading "on" samples in the slot)
    let (symbols, width): (Vec<f64>, usize) = match format {
        ModulationFormat::Nrz => (bits.bits().iter().map(|&b| b as f64).collect(), sps),
        ModulationFormat::Rz => (
            bits.bits().iter().map(|&b| b as f64).collect(),
            carved_width(rz_duty, sps),
        ),
        ModulationFormat::Csrz => (
            bits.bits()
                .iter()
                .enumerate()
                .map(|(k, &b)| if k % 2 == 0 { b as f64 } else { -(b as f64) })
                .collect(),
            carved_width(csrz_duty, sps),
        ),
        ModulationFormat::Modb => (
            modified_duobinary_symbols(bits)
                .into_iter()
                .map(f64::from)
                .collect(),
            sps,
        ),
        ModulationFormat::Mdrz => (
            modified_duobinary_symbols(bits)
                .into_iter()
                .map(f64::from)
                .collect(),
            carved_width(rz_duty, sps),
        ),
    };

    let mut out = Vec::with_capacity(symbols.len() * sps);
    for sym in symbols {
        out.extend(std::iter::repeat_n(sym, width));
        out.extend(std::iter::repeat_n(0.0, sps - width));
    }
    Ok(out)
}
