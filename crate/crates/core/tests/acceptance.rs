//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p fso-core --test acceptance -- --nocapture` to see them.

use std::time::Instant;

use fso_core::metrics::{q_to_ber, LINK_FAILED_Q};
use fso_core::rx::{
    apd_detect, bessel_lowpass, excess_noise_factor, ApdParams, FilterParams, ELECTRON_CHARGE,
};
use fso_core::sweep::{
    emit_csv, run_single, run_sweep, run_sweep_with, Execution, Preset, RunResult, RunSpec,
    SweepSpec,
};
use fso_core::tx::modified_duobinary_symbols;
use fso_core::{BitSequence, ModulationFormat, OpticalField, SampledSignal};
use num_complex::Complex64;

fn report(id: &str, what: &str, pass: bool, detail: String) {
    println!(
        "[{}] {id}: {what} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{id} failed: {detail}");
}

/// Closed-form link budget, written out independently of the channel module.
fn budget_dbm(spec: &RunSpec) -> f64 {
    let c = &spec.channel;
    let spread = c.d_tx_m + c.theta_rad * c.range_m;
    let capture = f64::min(1.0, (c.d_rx_m / spread) * (c.d_rx_m / spread));
    spec.tx.avg_power_dbm + spec.tx.edfa_gain_db + 10.0 * capture.log10()
        - c.alpha_db_per_km * c.range_m / 1000.0
}

fn rows_for(results: &[RunResult], format: ModulationFormat) -> Vec<&RunResult> {
    results.iter().filter(|r| r.format == format).collect()
}

#[test]
fn c01_q_to_ber_matches_reported_pairs() {
    let b1 = q_to_ber(6.52);
    let b2 = q_to_ber(6.23);
    let r1 = b1 / 3.48e-11;
    let r2 = b2 / 2.72e-10;
    let pass = (r1 - 1.0).abs() <= 0.15 && (0.5..=2.0).contains(&r2);
    report(
        "C1",
        "Q-to-BER oracle vs reported pairs",
        pass,
        format!("BER(6.52)={b1:.4e} ratio {r1:.3}; BER(6.23)={b2:.4e} ratio {r2:.3}"),
    );
}

#[test]
fn c02_link_budget_is_exact() {
    let mut worst: f64 = 0.0;
    for preset in Preset::ALL {
        let sweep = preset.sweep(1);
        let results = run_sweep(&sweep).unwrap();
        for (spec, r) in sweep.points().iter().zip(&results) {
            worst = worst.max((r.rx_power_dbm - budget_dbm(spec)).abs());
        }
    }
    // anchor points from an independent calculator
    let d = Preset::D.sweep(1);
    let d10 = d
        .points()
        .into_iter()
        .find(|p| p.channel.alpha_db_per_km == 10.0)
        .unwrap();
    let rx_d = run_single(&d10).unwrap().rx_power_dbm;
    let mut b2 = Preset::B.sweep(1).base;
    b2.channel.range_m = 2000.0;
    let rx_b = run_single(&b2).unwrap().rx_power_dbm;
    let pass = worst <= 0.01 && (rx_d + 25.66).abs() <= 0.01 && (rx_b - 3.815).abs() <= 0.01;
    report(
        "C2",
        "received power equals closed-form budget",
        pass,
        format!("max deviation {worst:.2e} dB; D@10dB/km {rx_d:.4} dBm; B@2km {rx_b:.4} dBm"),
    );
}

#[test]
fn c03_transmit_power_slope() {
    let mut sweep = Preset::C.sweep(1);
    sweep.values = vec![3.0, 4.0, 5.0];
    let results = run_sweep(&sweep).unwrap();
    let mut worst: f64 = 0.0;
    for f in ModulationFormat::ALL {
        let rows = rows_for(&results, f);
        for w in rows.windows(2) {
            worst = worst.max((w[1].rx_power_dbm - w[0].rx_power_dbm - 1.0).abs());
        }
    }
    report(
        "C3",
        "+1 dB launch gives +1 dB received, all formats",
        worst <= 0.01,
        format!("max slope error {worst:.2e} dB"),
    );
}

#[test]
fn c04_attenuation_slope_and_q_ordering() {
    let mut sweep = Preset::D.sweep(1);
    sweep.trials = 3;
    let results = run_sweep(&sweep).unwrap();
    let mut span_err: f64 = 0.0;
    let mut monotone = true;
    let mut detail = Vec::new();
    for f in ModulationFormat::ALL {
        let rows = rows_for(&results, f);
        let span = rows[0].rx_power_dbm - rows[rows.len() - 1].rx_power_dbm;
        span_err = span_err.max((span - 27.0).abs());
        let q: Vec<f64> = rows.iter().map(|r| r.trials.unwrap().q_mean).collect();
        if q.windows(2).any(|w| w[1] >= w[0]) {
            monotone = false;
        }
        detail.push(format!("{f}: {:.1}->{:.2}", q[0], q[q.len() - 1]));
    }
    report(
        "C4",
        "27 dB span over 1..10 dB/km and strictly falling Q",
        span_err <= 0.01 && monotone,
        format!("span error {span_err:.2e} dB; {}", detail.join(", ")),
    );
}

struct TrendCheck {
    violations: Vec<String>,
}

/// Mean and population stddev of Q per (format, value) over `seeds`.
fn q_stats(preset: Preset, seeds: &[u64]) -> Vec<(ModulationFormat, Vec<(f64, f64)>)> {
    let runs: Vec<Vec<RunResult>> = seeds
        .iter()
        .map(|&s| run_sweep(&preset.sweep(s)).unwrap())
        .collect();
    let n_values = preset.sweep(1).values.len();
    ModulationFormat::ALL
        .iter()
        .enumerate()
        .map(|(fi, &f)| {
            let stats = (0..n_values)
                .map(|vi| {
                    let qs: Vec<f64> = runs
                        .iter()
                        .map(|r| r[fi * n_values + vi].q_factor)
                        .collect();
                    let mean = qs.iter().sum::<f64>() / qs.len() as f64;
                    let var = qs.iter().map(|q| (q - mean).powi(2)).sum::<f64>() / qs.len() as f64;
                    (mean, var.sqrt())
                })
                .collect();
            (f, stats)
        })
        .collect()
}

fn check_trend(preset: Preset, increasing: bool, seeds: &[u64]) -> TrendCheck {
    let mut violations = Vec::new();
    for (f, stats) in q_stats(preset, seeds) {
        for (i, w) in stats.windows(2).enumerate() {
            let (m0, s0) = w[0];
            let (m1, s1) = w[1];
            let wrong_way = if increasing { m0 - m1 } else { m1 - m0 };
            if wrong_way > s0.max(s1) {
                violations.push(format!("{preset:?}/{f} step {i}: {m0:.2}->{m1:.2}"));
            }
        }
    }
    TrendCheck { violations }
}

#[test]
fn c05_trends_in_rate_range_and_power() {
    let seeds = [1, 2, 3, 4, 5];
    let start = Instant::now();
    let a = check_trend(Preset::A, false, &seeds);
    let b = check_trend(Preset::B, false, &seeds);
    let c = check_trend(Preset::C, true, &seeds);
    let elapsed = start.elapsed().as_secs_f64();
    // single pass over all four presets, the runtime budget target
    let t0 = Instant::now();
    for p in Preset::ALL {
        run_sweep(&p.sweep(1)).unwrap();
    }
    let suite = t0.elapsed().as_secs_f64();
    let all: Vec<String> = [a, b, c].into_iter().flat_map(|t| t.violations).collect();
    report(
        "C5",
        "Q trends vs bit rate, range and launch power (5 seeds)",
        all.is_empty() && suite < 10.0,
        format!(
            "violations: {}; four-preset pass {suite:.2} s; 5-seed trend checks {elapsed:.2} s",
            if all.is_empty() {
                "none".to_string()
            } else {
                all.join("; ")
            }
        ),
    );
}

/// First bit rate (Gbps) at which Q falls below the link-failed threshold.
fn failure_points(results: &[RunResult]) -> Vec<(ModulationFormat, Option<f64>)> {
    ModulationFormat::ALL
        .iter()
        .map(|&f| {
            let first = rows_for(results, f)
                .into_iter()
                .find(|r| r.q_factor < LINK_FAILED_Q)
                .map(|r| r.bit_rate_bps / 1e9);
            (f, first)
        })
        .collect()
}

fn show(points: &[(ModulationFormat, Option<f64>)]) -> String {
    points
        .iter()
        .map(|(f, p)| match p {
            Some(g) => format!("{f}@{g}G"),
            None => format!("{f}:none"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[test]
fn c06_duobinary_formats_fail_first() {
    let results = run_sweep(&Preset::A.sweep(1)).unwrap();
    let points = failure_points(&results);
    let at = |f: ModulationFormat| {
        points
            .iter()
            .find(|(g, _)| *g == f)
            .and_then(|(_, p)| *p)
            .unwrap_or(f64::INFINITY)
    };
    let others = [
        ModulationFormat::Nrz,
        ModulationFormat::Rz,
        ModulationFormat::Csrz,
    ]
    .into_iter()
    .map(at)
    .fold(f64::INFINITY, f64::min);
    let ordered = at(ModulationFormat::Modb) <= at(ModulationFormat::Mdrz)
        && at(ModulationFormat::Mdrz) <= others;

    // informational: the same sweep with 25 dB less launch power
    let mut weak = Preset::A.sweep(1);
    weak.base.tx.avg_power_dbm -= 25.0;
    let weak_points = failure_points(&run_sweep(&weak).unwrap());

    report(
        "C6",
        "failure ordering MODB <= MDRZ <= min(NRZ, RZ, CSRZ) in preset A",
        ordered,
        format!(
            "preset A: {}; at -15 dBm launch (not asserted): {}",
            show(&points),
            show(&weak_points)
        ),
    );
}

#[test]
fn c07_noiseless_loopback_and_duobinary_decodability() {
    let mut errors = 0;
    let mut points = 0;
    for preset in Preset::ALL {
        let mut sweep: SweepSpec = preset.sweep(1);
        sweep.base.apd.noise_enabled = false;
        for r in run_sweep(&sweep).unwrap() {
            errors += r.bit_errors;
            points += 1;
        }
    }
    let mut bad_patterns = 0;
    for word in 0u32..1 << 10 {
        let bits = BitSequence::new((0..10).map(|i| ((word >> i) & 1) as u8));
        let c = modified_duobinary_symbols(&bits);
        if c.iter()
            .zip(bits.bits())
            .any(|(ck, &b)| ck.unsigned_abs() != b)
        {
            bad_patterns += 1;
        }
    }
    report(
        "C7",
        "noiseless loopback error-free; |c[k]| = bits[k]",
        errors == 0 && bad_patterns == 0,
        format!("{errors} errors over {points} preset points; {bad_patterns}/1024 bad duobinary patterns"),
    );
}

#[test]
fn c08_apd_noise_variance() {
    let apd = ApdParams::default();
    let fs = 6.4e11;
    let power: f64 = 1e-4;
    let n = 1_000_000;
    let field = OpticalField::new(vec![Complex64::new(power.sqrt(), 0.0); n], fs).unwrap();
    let out = apd_detect(&field, &apd, 2024).unwrap();
    let x = out.samples();
    let mean = x.iter().sum::<f64>() / n as f64;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;

    let m = apd.gain_m;
    let f = m * apd.ionization_ratio_k + (1.0 - apd.ionization_ratio_k) * (2.0 - 1.0 / m);
    let expected = (2.0 * ELECTRON_CHARGE * m * m * f * apd.responsivity * power
        + 2.0 * ELECTRON_CHARGE * apd.dark_current
        + apd.thermal_psd)
        * fs
        / 2.0;
    let rel = (var / expected - 1.0).abs();
    let unity = (0..=10).all(|i| excess_noise_factor(1.0, i as f64 / 10.0) == 1.0);
    report(
        "C8",
        "APD Monte-Carlo variance and F(1, k) = 1",
        rel <= 0.02 && unity,
        format!(
            "variance {var:.4e} vs {expected:.4e} A^2 (rel {rel:.2e}); F(1,k)=1 for 11 k: {unity}"
        ),
    );
}

#[test]
fn c09_bessel_filter_contract() {
    let fs = 8192.0;
    let n = 8192;
    let cutoff = 256.0;
    let filt = FilterParams::new(cutoff, 100.0);
    let power = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
    let tone = |f: f64| {
        SampledSignal::new(
            (0..n)
                .map(|k| (2.0 * std::f64::consts::PI * f * k as f64 / fs).cos())
                .collect(),
            fs,
        )
        .unwrap()
    };

    let dc = bessel_lowpass(&SampledSignal::new(vec![1.0; n], fs).unwrap(), &filt).unwrap();
    let dc_err = dc
        .samples()
        .iter()
        .map(|v| (v - 1.0).abs())
        .fold(0.0, f64::max);
    let at_cut = power(bessel_lowpass(&tone(cutoff), &filt).unwrap().samples())
        / power(tone(cutoff).samples());
    let at_ten = power(
        bessel_lowpass(&tone(10.0 * cutoff), &filt)
            .unwrap()
            .samples(),
    ) / power(tone(10.0 * cutoff).samples());
    let atten = -10.0 * at_ten.log10();
    report(
        "C9",
        "Bessel DC gain, -3 dB point and stopband",
        dc_err <= 1e-9 && (at_cut - 0.5).abs() <= 0.01 && atten >= 60.0,
        format!(
            "DC error {dc_err:.1e}; power ratio at cutoff {at_cut:.4}; {atten:.1} dB at 10x cutoff"
        ),
    );
}

#[test]
fn c10_determinism_and_order_independence() {
    let mut identical = true;
    let mut same_rows = true;
    for preset in Preset::ALL {
        let sweep = preset.sweep(77);
        let a = emit_csv(&run_sweep(&sweep).unwrap()).unwrap();
        let b = emit_csv(&run_sweep(&sweep).unwrap()).unwrap();
        identical &= a == b;
        same_rows &= run_sweep_with(&sweep, Execution::Serial).unwrap()
            == run_sweep_with(&sweep, Execution::Parallel).unwrap();
    }
    report(
        "C10",
        "byte-identical CSV and serial == parallel",
        identical && same_rows,
        format!("csv identical: {identical}; serial == parallel: {same_rows}"),
    );
}
