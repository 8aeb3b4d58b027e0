//! Results table.
//!
//! Numbers are written with Rust's shortest round-trip scientific notation,
//! so reading a file back and writing it again reproduces it byte for byte.
//! A zero BER is written as `log10_ber = -inf`.

use crate::error::{Error, Result};
use crate::sweep::pipeline::RunResult;
use crate::tx::ModulationFormat;

pub const CSV_HEADER: &str = "format,bitrate_bps,range_m,alpha_db_per_km,power_dbm,seed,q_factor,log10_ber,rx_power_dbm,phase,threshold_a,link_failed";
pub const CSV_TRIAL_COLUMNS: &str = "q_mean,q_std";

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub format: ModulationFormat,
    pub bitrate_bps: f64,
    pub range_m: f64,
    pub alpha_db_per_km: f64,
    pub power_dbm: f64,
    pub seed: u64,
    pub q_factor: f64,
    pub log10_ber: f64,
    pub rx_power_dbm: f64,
    pub phase: usize,
    pub threshold_a: f64,
    pub link_failed: bool,
    /// `(q_mean, q_std)` when the sweep ran several trials.
    pub trials: Option<(f64, f64)>,
}

impl From<&RunResult> for CsvRow {
    fn from(r: &RunResult) -> Self {
        Self {
            format: r.format,
            bitrate_bps: r.bit_rate_bps,
            range_m: r.range_m,
            alpha_db_per_km: r.alpha_db_per_km,
            power_dbm: r.power_dbm,
            seed: r.seed,
            q_factor: r.q_factor,
            log10_ber: r.ber.log10(),
            rx_power_dbm: r.rx_power_dbm,
            phase: r.phase,
            threshold_a: r.threshold_a,
            link_failed: r.link_failed(),
            trials: r.trials.map(|t| (t.q_mean, t.q_std)),
        }
    }
}

impl CsvRow {
    /// Numeric value of a column by header name.
    pub fn column(&self, name: &str) -> Option<f64> {
        Some(match name {
            "bitrate_bps" => self.bitrate_bps,
            "range_m" => self.range_m,
            "alpha_db_per_km" => self.alpha_db_per_km,
            "power_dbm" => self.power_dbm,
            "seed" => self.seed as f64,
            "q_factor" => self.q_factor,
            "log10_ber" => self.log10_ber,
            "rx_power_dbm" => self.rx_power_dbm,
            "phase" => self.phase as f64,
            "threshold_a" => self.threshold_a,
            "link_failed" => f64::from(u8::from(self.link_failed)),
            "q_mean" => self.trials?.0,
            "q_std" => self.trials?.1,
            _ => return None,
        })
    }
}

pub fn emit_csv(results: &[RunResult]) -> Result<String> {
    let rows: Vec<CsvRow> = results.iter().map(CsvRow::from).collect();
    write_rows(&rows)
}

pub fn write_rows(rows: &[CsvRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyOutput);
    }
    let with_trials = rows[0].trials.is_some();
    if rows.iter().any(|r| r.trials.is_some() != with_trials) {
        return Err(Error::invalid("rows disagree on trial statistics columns"));
    }
    let mut out = String::from(CSV_HEADER);
    if with_trials {
        out.push(',');
        out.push_str(CSV_TRIAL_COLUMNS);
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{:e},{:e},{:e},{:e},{},{:e},{:e},{:e},{},{:e},{}",
            r.format.tag(),
            r.bitrate_bps,
            r.range_m,
            r.alpha_db_per_km,
            r.power_dbm,
            r.seed,
            r.q_factor,
            r.log10_ber,
            r.rx_power_dbm,
            r.phase,
            r.threshold_a,
            r.link_failed,
        ));
        if let Some((mean, std)) = r.trials {
            out.push_str(&format!(",{mean:e},{std:e}"));
        }
        out.push('\n');
    }
    Ok(out)
}

fn float(line: usize, s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("cannot parse `{s}` as a number")))
}

pub fn read_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty CSV"))?;
    let with_trials = if header == CSV_HEADER {
        false
    } else if header == format!("{CSV_HEADER},{CSV_TRIAL_COLUMNS}") {
        true
    } else {
        return Err(Error::parse(1, "unrecognized CSV header"));
    };
    let width = if with_trials { 14 } else { 12 };

    let mut rows = Vec::new();
    for (idx, line) in lines {
        let n = idx + 1;
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != width {
            return Err(Error::parse(
                n,
                format!("expected {width} fields, found {}", f.len()),
            ));
        }
        let int = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::parse(n, format!("cannot parse `{s}` as an integer")))
        };
        rows.push(CsvRow {
            format: f[0]
                .parse()
                .map_err(|e: Error| Error::parse(n, e.to_string()))?,
            bitrate_bps: float(n, f[1])?,
            range_m: float(n, f[2])?,
            alpha_db_per_km: float(n, f[3])?,
            power_dbm: float(n, f[4])?,
            seed: int(f[5])?,
            q_factor: float(n, f[6])?,
            log10_ber: float(n, f[7])?,
            rx_power_dbm: float(n, f[8])?,
            phase: int(f[9])? as usize,
            threshold_a: float(n, f[10])?,
            link_failed: f[11]
                .parse()
                .map_err(|_| Error::parse(n, format!("cannot parse `{}` as a flag", f[11])))?,
            trials: if with_trials {
                Some((float(n, f[12])?, float(n, f[13])?))
            } else {
                None
            },
        });
    }
    Ok(rows)
}
