//! Line-oriented `key = value` sweep configuration.
//!
//! ```text
//! # attenuation study
//! formats = nrz, rz
//! axis = alpha
//! values = 1, 2, 3, 5, 7, 10
//! theta_mrad = 3
//! ```
//!
//! Axis values use the axis display unit: Gbps for `bit_rate`, km for
//! `range`, dBm for `power`, dB/km for `alpha`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sweep::spec::{RunSpec, SweepAxis, SweepSpec};
use crate::tx::ModulationFormat;

fn number(line: usize, key: &str, raw: &str) -> Result<f64> {
    let v: f64 = raw
        .parse()
        .map_err(|_| Error::parse(line, format!("`{key}`: cannot parse `{raw}` as a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("`{key}` must be finite")));
    }
    Ok(v)
}

fn integer(line: usize, key: &str, raw: &str) -> Result<u64> {
    let parsed = match raw.strip_prefix("0x").or_else(|| raw.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => raw.parse(),
    };
    parsed.map_err(|_| Error::parse(line, format!("`{key}`: cannot parse `{raw}` as an integer")))
}

fn check(line: usize, key: &str, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::parse(line, format!("`{key}` must be {what}")))
    }
}

fn boolean(line: usize, key: &str, raw: &str) -> Result<bool> {
    match raw.to_ascii_lowercase().as_str() {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(Error::parse(
            line,
            format!("`{key}`: expected true/false, got `{raw}`"),
        )),
    }
}

pub fn parse_config(text: &str) -> Result<SweepSpec> {
    let mut spec = RunSpec::default();
    let mut axis: Option<(usize, SweepAxis)> = None;
    let mut values: Option<(usize, Vec<f64>)> = None;
    let mut formats: Option<Vec<ModulationFormat>> = None;
    let mut trials = 1u32;
    let mut seen: HashMap<String, usize> = HashMap::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| {
            Error::parse(line, format!("expected `key = value`, got `{content}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(Error::parse(line, format!("`{key}` has no value")));
        }
        if let Some(first) = seen.insert(key.to_string(), line) {
            return Err(Error::parse(
                line,
                format!("`{key}` already set on line {first}"),
            ));
        }

        let num = || number(line, key, value);
        match key {
            "formats" | "format" => {
                let list = value
                    .split(',')
                    .map(|s| {
                        s.parse::<ModulationFormat>()
                            .map_err(|e| Error::parse(line, e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                formats = Some(list);
            }
            "bitrate_gbps" => {
                let v = num()?;
                check(line, key, v > 0.0, "positive")?;
                spec.tx.bit_rate = v * 1e9;
            }
            "range_km" => {
                let v = num()?;
                check(line, key, v >= 0.0, "non-negative")?;
                spec.channel.range_m = v * 1e3;
            }
            "power_dbm" => spec.tx.avg_power_dbm = num()?,
            "alpha_db_per_km" => {
                let v = num()?;
                check(line, key, v >= 0.0, "non-negative")?;
                spec.channel.alpha_db_per_km = v;
            }
            "theta_mrad" => {
                let v = num()?;
                check(line, key, v > 0.0, "positive")?;
                spec.channel.theta_rad = v * 1e-3;
            }
            "d_tx_cm" => {
                let v = num()?;
                check(line, key, v > 0.0, "positive")?;
                spec.channel.d_tx_m = v * 1e-2;
            }
            "d_rx_cm" => {
                let v = num()?;
                check(line, key, v > 0.0, "positive")?;
                spec.channel.d_rx_m = v * 1e-2;
            }
            "edfa_gain_db" => spec.tx.edfa_gain_db = num()?,
            "apd.gain_m" => {
                let v = num()?;
                check(line, key, v >= 1.0, "at least 1")?;
                spec.apd.gain_m = v;
            }
            "apd.responsivity" => {
                let v = num()?;
                check(line, key, v > 0.0, "positive")?;
                spec.apd.responsivity = v;
            }
            "apd.ionization_ratio" => {
                let v = num()?;
                check(line, key, (0.0..=1.0).contains(&v), "in [0, 1]")?;
                spec.apd.ionization_ratio_k = v;
            }
            "apd.dark_current_na" => {
                let v = num()?;
                check(line, key, v >= 0.0, "non-negative")?;
                spec.apd.dark_current = v * 1e-9;
            }
            "apd.thermal_psd" => {
                let v = num()?;
                check(line, key, v >= 0.0, "non-negative")?;
                spec.apd.thermal_psd = v;
            }
            "filter.order" => {
                check(line, key, integer(line, key, value)? == 4, "4")?;
            }
            "filter.cutoff_ratio" => {
                let v = num()?;
                check(line, key, v > 0.0, "positive")?;
                spec.filter.cutoff_ratio = v;
            }
            "filter.depth_db" => {
                let v = num()?;
                check(line, key, v > 0.0, "positive")?;
                spec.filter.depth_db = v;
            }
            "tx.samples_per_bit" => {
                let v = integer(line, key, value)?;
                check(line, key, v >= 8, "at least 8")?;
                spec.tx.samples_per_bit = v as usize;
            }
            "tx.sequence_length" => {
                let v = integer(line, key, value)?;
                check(line, key, v >= 8, "at least 8")?;
                spec.tx.sequence_length = v as usize;
            }
            "tx.rz_duty" | "tx.csrz_duty" => {
                let v = num()?;
                check(line, key, v > 0.0 && v <= 1.0, "in (0, 1]")?;
                if key == "tx.rz_duty" {
                    spec.tx.rz_duty = v;
                } else {
                    spec.tx.csrz_duty = v;
                }
            }
            "tx.prbs_order" => {
                let v = integer(line, key, value)?;
                check(line, key, (3..=31).contains(&v), "in 3..=31")?;
                spec.tx.prbs_order = v as u32;
            }
            "tx.prbs_seed" => {
                let v = integer(line, key, value)?;
                check(line, key, v != 0, "nonzero")?;
                spec.tx.prbs_seed = v;
            }
            "axis" => {
                let a = value
                    .parse::<SweepAxis>()
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                axis = Some((line, a));
            }
            "values" => {
                let list = value
                    .split(',')
                    .map(|s| number(line, key, s.trim()))
                    .collect::<Result<Vec<_>>>()?;
                if list.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::parse(line, "`values` must be strictly increasing"));
                }
                values = Some((line, list));
            }
            "seed" => spec.master_seed = integer(line, key, value)?,
            "noise" => spec.apd.noise_enabled = boolean(line, key, value)?,
            "trials" => {
                let v = integer(line, key, value)?;
                check(
                    line,
                    key,
                    (1..=u32::MAX as u64).contains(&v),
                    "a positive integer",
                )?;
                trials = v as u32;
            }
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }

    let end = text.lines().count() + 1;
    let (_, axis) = axis.ok_or_else(|| Error::parse(end, "missing required key `axis`"))?;
    let (values_line, values) =
        values.ok_or_else(|| Error::parse(end, "missing required key `values`"))?;
    let formats = formats.unwrap_or_else(|| ModulationFormat::ALL.to_vec());
    spec.format = formats[0];

    let sweep = SweepSpec {
        base: spec,
        axis,
        values: values.into_iter().map(|v| axis.from_display(v)).collect(),
        formats,
        trials,
    };
    sweep
        .validate()
        .map_err(|e| Error::parse(values_line, format!("invalid sweep: {e}")))?;
    Ok(sweep)
}
