//! Run and sweep descriptions, plus the four built-in experiment presets.

use std::fmt;
use std::str::FromStr;

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::rx::{ApdParams, FilterParams};
use crate::tx::{ModulationFormat, TxParams};

pub const MIN_BIT_RATE: f64 = 1e8;
pub const MAX_BIT_RATE: f64 = 1e11;

/// Receiver filter settings that follow the bit rate.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterSpec {
    /// Cutoff as a fraction of the bit rate.
    pub cutoff_ratio: f64,
    pub depth_db: f64,
}

impl Default for FilterSpec {
    fn default() -> Self {
        Self {
            cutoff_ratio: 0.75,
            depth_db: 100.0,
        }
    }
}

impl FilterSpec {
    pub fn params(&self, bit_rate: f64) -> FilterParams {
        FilterParams::new(self.cutoff_ratio * bit_rate, self.depth_db)
    }
}

/// Everything needed for one simulated link.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub format: ModulationFormat,
    pub tx: TxParams,
    pub channel: ChannelParams,
    pub apd: ApdParams,
    pub filter: FilterSpec,
    pub master_seed: u64,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            format: ModulationFormat::Nrz,
            tx: TxParams::default(),
            channel: ChannelParams::default(),
            apd: ApdParams::default(),
            filter: FilterSpec::default(),
            master_seed: 1,
        }
    }
}

impl RunSpec {
    pub fn validate(&self) -> Result<()> {
        self.tx.validate()?;
        let rate = self.tx.bit_rate;
        if !(MIN_BIT_RATE..=MAX_BIT_RATE).contains(&rate) {
            return Err(Error::invalid(format!(
                "bit rate {rate} b/s outside [{MIN_BIT_RATE:e}, {MAX_BIT_RATE:e}]"
            )));
        }
        self.channel.validate()?;
        self.apd.validate()?;
        let filt = self.filter.params(rate);
        filt.validate()?;
        let nyquist = self.tx.sample_rate() / 2.0;
        if filt.cutoff_hz >= nyquist {
            return Err(Error::InvalidCutoff {
                cutoff_hz: filt.cutoff_hz,
                nyquist_hz: nyquist,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    BitRate,
    Range,
    Power,
    Alpha,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::BitRate => "bit_rate",
            SweepAxis::Range => "range",
            SweepAxis::Power => "power",
            SweepAxis::Alpha => "alpha",
        }
    }

    /// Human-facing unit used in config files and chart axes.
    pub fn unit(self) -> &'static str {
        match self {
            SweepAxis::BitRate => "Gbps",
            SweepAxis::Range => "km",
            SweepAxis::Power => "dBm",
            SweepAxis::Alpha => "dB/km",
        }
    }

    pub fn label(self) -> String {
        let what = match self {
            SweepAxis::BitRate => "Data rate",
            SweepAxis::Range => "Link range",
            SweepAxis::Power => "Transmit power",
            SweepAxis::Alpha => "Attenuation",
        };
        format!("{what} ({})", self.unit())
    }

    /// Converts a value in display units (Gbps, km, dBm, dB/km) to the
    /// internal SI-ish unit (b/s, m, dBm, dB/km).
    pub fn from_display(self, v: f64) -> f64 {
        match self {
            SweepAxis::BitRate => v * 1e9,
            SweepAxis::Range => v * 1e3,
            SweepAxis::Power | SweepAxis::Alpha => v,
        }
    }

    pub fn to_display(self, v: f64) -> f64 {
        match self {
            SweepAxis::BitRate => v / 1e9,
            SweepAxis::Range => v / 1e3,
            SweepAxis::Power | SweepAxis::Alpha => v,
        }
    }

    /// The CSV column that carries this axis.
    pub fn csv_column(self) -> &'static str {
        match self {
            SweepAxis::BitRate => "bitrate_bps",
            SweepAxis::Range => "range_m",
            SweepAxis::Power => "power_dbm",
            SweepAxis::Alpha => "alpha_db_per_km",
        }
    }

    pub fn apply(self, spec: &mut RunSpec, value: f64) {
        match self {
            SweepAxis::BitRate => spec.tx.bit_rate = value,
            SweepAxis::Range => spec.channel.range_m = value,
            SweepAxis::Power => spec.tx.avg_power_dbm = value,
            SweepAxis::Alpha => spec.channel.alpha_db_per_km = value,
        }
    }

    pub fn value(self, spec: &RunSpec) -> f64 {
        match self {
            SweepAxis::BitRate => spec.tx.bit_rate,
            SweepAxis::Range => spec.channel.range_m,
            SweepAxis::Power => spec.tx.avg_power_dbm,
            SweepAxis::Alpha => spec.channel.alpha_db_per_km,
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "bit_rate" => Ok(SweepAxis::BitRate),
            "range" => Ok(SweepAxis::Range),
            "power" => Ok(SweepAxis::Power),
            "alpha" => Ok(SweepAxis::Alpha),
            other => Err(Error::invalid(format!(
                "unknown sweep axis `{other}` (expected bit_rate, range, power or alpha)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: RunSpec,
    pub axis: SweepAxis,
    /// Axis values in internal units, strictly increasing.
    pub values: Vec<f64>,
    pub formats: Vec<ModulationFormat>,
    /// Noise realizations per point; more than one adds mean/std columns.
    pub trials: u32,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::invalid("sweep needs at least one value"));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("sweep values must be finite"));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("sweep values must be strictly increasing"));
        }
        if self.formats.is_empty() {
            return Err(Error::invalid("sweep needs at least one format"));
        }
        for (i, f) in self.formats.iter().enumerate() {
            if self.formats[..i].contains(f) {
                return Err(Error::invalid(format!("format {f} listed twice")));
            }
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        for point in self.points() {
            point.validate()?;
        }
        Ok(())
    }

    /// One run per (format, value), ordered by format then value.
    pub fn points(&self) -> Vec<RunSpec> {
        self.formats
            .iter()
            .flat_map(|&format| {
                self.values.iter().map(move |&v| {
                    let mut spec = RunSpec {
                        format,
                        ..self.base.clone()
                    };
                    self.axis.apply(&mut spec, v);
                    spec
                })
            })
            .collect()
    }
}

/// The four experiments: data rate, link range, transmit power, attenuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    A,
    B,
    C,
    D,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::A, Preset::B, Preset::C, Preset::D];

    pub fn sweep(self, master_seed: u64) -> SweepSpec {
        let base = RunSpec {
            master_seed,
            ..RunSpec::default()
        };
        let (base, axis, values) = match self {
            // 1..10 Gbps over 2 km at 10 dB/km
            Preset::A => {
                let mut b = base;
                b.channel.range_m = 2000.0;
                b.channel.alpha_db_per_km = 10.0;
                (
                    b,
                    SweepAxis::BitRate,
                    (1..=10).map(|g| g as f64 * 1e9).collect(),
                )
            }
            // 1..10 km, 10 dBm, 2 dB/km, 3 mrad
            Preset::B => {
                let mut b = base;
                b.tx.avg_power_dbm = 10.0;
                b.channel.alpha_db_per_km = 2.0;
                b.channel.theta_rad = 3e-3;
                (
                    b,
                    SweepAxis::Range,
                    (1..=10).map(|k| k as f64 * 1e3).collect(),
                )
            }
            // -3..5 dBm at 10 Gbps, 2 km, 10 dB/km
            Preset::C => {
                let mut b = base;
                b.tx.bit_rate = 10e9;
                b.channel.range_m = 2000.0;
                b.channel.alpha_db_per_km = 10.0;
                (b, SweepAxis::Power, (-3..=5).map(f64::from).collect())
            }
            // 1..10 dB/km at 10 Gbps, 3 km, 10 dBm, 3 mrad
            Preset::D => {
                let mut b = base;
                b.tx.bit_rate = 10e9;
                b.tx.avg_power_dbm = 10.0;
                b.channel.range_m = 3000.0;
                b.channel.theta_rad = 3e-3;
                b.apd = ApdParams::default();
                (b, SweepAxis::Alpha, vec![1.0, 2.0, 3.0, 5.0, 7.0, 10.0])
            }
        };
        SweepSpec {
            base,
            axis,
            values,
            formats: ModulationFormat::ALL.to_vec(),
            trials: 1,
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Preset::A),
            "B" => Ok(Preset::B),
            "C" => Ok(Preset::C),
            "D" => Ok(Preset::D),
            other => Err(Error::invalid(format!(
                "unknown preset `{other}` (expected A, B, C or D)"
            ))),
        }
    }
}
