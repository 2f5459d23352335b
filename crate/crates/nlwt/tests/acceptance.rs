//! Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exits non-zero if
//! any criterion fails.
//!
//! The optional real-record check runs only when `NLWT_MITBIH_DIR` points at a
//! directory of CSV exports named `100.csv`, `103.csv`, ... .

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use nlwt::bench::{run_benchmark_on, RowKind};
use nlwt::io::read_csv;
use nlwt::{run_benchmark, BenchmarkPlan, RecordFile};
use nlwt_core::block_match::reference_schedule;
use nlwt_core::nlm::denoise_nlm_samples;
use nlwt_core::signal_model::{mse, normalize, power, prd, snr_improvement, synth_ecg, GaussianNoise};
use nlwt_core::wavelet::{dwt2_forward, dwt2_inverse, dwt2_max_levels};
use nlwt_core::{denoise_nlwt, Method, NlmParams, NlwtParams, WaveletFilter, WaveletName};

const ROUND_TRIP_TOL: f64 = 1e-10;
const ROUND_TRIP_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_TOL: f64 = 1e-10;
const ORACLE_TRIALS: usize = 500;
const SCHEDULE_CASES: usize = 10_000;
const IDENTITY_SIGMA: f64 = 1e-12;
const IDENTITY_TOL: f64 = 1e-8;
const FLOOR_DB: f64 = 3.0;
const FLOOR_BUDGET: Duration = Duration::from_secs(120);
const REAL_RECORDS: [&str; 7] = ["100", "103", "104", "105", "106", "115", "215"];
const REAL_RECORD_SLACK_DB: f64 = 1.5;
const REAL_RECORD_SECONDS: f64 = 60.0;
const METRIC_CASES: usize = 10_000;
const PRD_MSE_REL_TOL: f64 = 1e-12;
const CONVEX_SAMPLES: usize = 10_000;

type Criterion = (&'static str, fn() -> Outcome);

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

/// SplitMix64 stream for fuzz inputs.
struct Fuzz(u64);

impl Fuzz {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next() % (hi - lo + 1) as u64) as usize
    }

    fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn ac1_round_trip() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for name in WaveletName::ALL {
        let f = WaveletFilter::new(name);
        for rows in 2..=64 {
            for cols in 1..=64 {
                let x = common::random_matrix(rows, cols, (rows * 64 + cols) as u64);
                for levels in 1..=dwt2_max_levels(rows, cols) {
                    let y = dwt2_inverse(&dwt2_forward(&x, &f, levels).unwrap(), &f).unwrap();
                    worst = worst.max(x.max_abs_diff(&y));
                    cases += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    let msg = format!("wavelet round-trip: {cases} cases, max err {worst:.2e} (tol {ROUND_TRIP_TOL:e}), {t:.2?} (budget {ROUND_TRIP_BUDGET:?})");
    if worst <= ROUND_TRIP_TOL && t < ROUND_TRIP_BUDGET { Outcome::Pass(msg) } else { Outcome::Fail(msg) }
}

fn ac2_oracle() -> Outcome {
    let mut rng = Fuzz(2);
    let mut worst: f64 = 0.0;
    for trial in 0..ORACLE_TRIALS {
        let (rows, cols) = (rng.range(2, 8), rng.range(1, 8));
        let name = WaveletName::ALL[trial % WaveletName::ALL.len()];
        let levels = rng.range(1, dwt2_max_levels(rows, cols));
        let f = WaveletFilter::new(name);
        let x = common::random_matrix(rows, cols, rng.next());
        let coeffs = dwt2_forward(&x, &f, levels).unwrap();
        let mut current = common::to_dense(&x);
        for level in &coeffs.levels {
            let o = common::oracle_level(&current, f.lowpass());
            worst = worst
                .max(common::max_diff(&o.lh, &level.lh))
                .max(common::max_diff(&o.hl, &level.hl))
                .max(common::max_diff(&o.hh, &level.hh));
            current = o.ll;
        }
        worst = worst.max(common::max_diff(&current, &coeffs.approx));
    }
    let msg = format!("Kronecker oracle: {ORACLE_TRIALS} trials (shapes <= 8x8), max err {worst:.2e} (tol {ORACLE_TOL:e})");
    if worst <= ORACLE_TOL { Outcome::Pass(msg) } else { Outcome::Fail(msg) }
}

fn ac3_schedule_count() -> Outcome {
    let mut rng = Fuzz(3);
    for _ in 0..SCHEDULE_CASES {
        let n = rng.range(3, 1_000_000);
        let l = rng.range(1, ((n - 1) / 2).min(500));
        let k = rng.range(1, 2 * l);
        let s = reference_schedule(n, l, k).unwrap();
        let expected = 1 + (n - (2 * l + 1)) / k;
        if s.arithmetic_count() != expected {
            return Outcome::Fail(format!("SDM count: N={n} L={l} k={k} gave {} want {expected}", s.arithmetic_count()));
        }
    }
    Outcome::Pass(format!("SDM count: {SCHEDULE_CASES} fuzzed (N, L, k) match 1 + floor((N - (2L+1)) / k) exactly"))
}

fn ac4_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..5 {
        let clean = normalize(&synth_ecg(30, 360.0, 72.0, seed).unwrap()).unwrap();
        let out = denoise_nlwt(&clean, IDENTITY_SIGMA, &NlwtParams::default()).unwrap();
        let err = out.samples().iter().zip(clean.samples()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst = worst.max(err);
    }
    let msg = format!("identity limit: sigma={IDENTITY_SIGMA:e}, 5 seeds, max err {worst:.2e} (tol {IDENTITY_TOL:e})");
    if worst <= IDENTITY_TOL { Outcome::Pass(msg) } else { Outcome::Fail(msg) }
}

fn mean_rows(rows: &[nlwt::BenchRow], method: Method) -> Vec<(f64, f64)> {
    rows.iter()
        .filter(|r| r.kind == RowKind::Mean && r.method == method)
        .map(|r| (r.snr_in_db, r.snr_imp_db.unwrap_or(f64::INFINITY)))
        .collect()
}

/// The floor applies to the NLWT denoiser; the NLM baseline enters only
/// through the ordering check.
fn ac5_floor() -> Outcome {
    let start = Instant::now();
    let rows = run_benchmark(&BenchmarkPlan::default()).unwrap();
    let t = start.elapsed();
    let (nlwt, nlm) = (mean_rows(&rows, Method::Nlwt), mean_rows(&rows, Method::Nlm));
    let table: Vec<String> = nlwt
        .iter()
        .zip(&nlm)
        .map(|((snr, a), (_, b))| format!("{snr} dB: nlwt {a:.2} / nlm {b:.2}"))
        .collect();
    let ok = nlwt.len() == 4
        && nlwt.iter().zip(&nlm).all(|((_, a), (_, b))| *a > FLOOR_DB && a >= b)
        && t < FLOOR_BUDGET;
    let msg = format!("denoising floor (nlwt > {FLOOR_DB} dB, nlwt >= nlm): {}; {t:.1?} (budget {FLOOR_BUDGET:?})", table.join(", "));
    if ok { Outcome::Pass(msg) } else { Outcome::Fail(msg) }
}

fn ac6_real_records() -> Outcome {
    let Some(dir) = std::env::var_os("NLWT_MITBIH_DIR").map(PathBuf::from) else {
        return Outcome::Skip("real records: set NLWT_MITBIH_DIR to a directory of 100.csv, 103.csv, ... exports".into());
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for name in REAL_RECORDS {
        let path = dir.join(format!("{name}.csv"));
        if !path.exists() {
            lines.push(format!("{name}: missing"));
            continue;
        }
        let rec = match read_csv(&path, None) {
            Ok(r) => r,
            Err(e) => return Outcome::Fail(format!("real records: {e}")),
        };
        let keep = ((REAL_RECORD_SECONDS * rec.sample_rate_hz) as usize).min(rec.len());
        let ch = rec.channel("MLII").unwrap_or(&rec.channels[0]);
        let trimmed = nlwt::Channel { name: ch.name.clone(), samples: ch.samples[..keep].to_vec() };
        let rec = RecordFile::new(vec![trimmed], rec.sample_rate_hz, &path).unwrap();
        let plan = BenchmarkPlan { snrs_db: vec![20.0], ..BenchmarkPlan::default() };
        let rows = run_benchmark_on(std::slice::from_ref(&rec), &plan).unwrap();
        let (a, b) = (mean_rows(&rows, Method::Nlwt)[0].1, mean_rows(&rows, Method::Nlm)[0].1);
        ok &= a >= b - REAL_RECORD_SLACK_DB;
        lines.push(format!("{name}: nlwt {a:.2} / nlm {b:.2}"));
    }
    let msg = format!("real records at 20 dB (nlwt >= nlm - {REAL_RECORD_SLACK_DB} dB): {}", lines.join(", "));
    if ok { Outcome::Pass(msg) } else { Outcome::Fail(msg) }
}

fn ac7_metrics() -> Outcome {
    let mut rng = Fuzz(7);
    let mut worst: f64 = 0.0;
    for case in 0..METRIC_CASES {
        let n = rng.range(1, 64);
        let scale = 10f64.powf(rng.unit() * 12.0 - 6.0);
        let mut g = GaussianNoise::new(case as u64);
        let clean: Vec<f64> = (0..n).map(|_| scale * g.next().unwrap()).collect();
        let noisy: Vec<f64> = clean.iter().map(|u| u + scale * rng.unit()).collect();
        let den: Vec<f64> = clean.iter().zip(&noisy).map(|(u, v)| u + 0.3 * (v - u)).collect();
        if noisy != clean && snr_improvement(&clean, &noisy, &noisy) != Ok(0.0) {
            return Outcome::Fail(format!("metric identities: case {case}: SNR_imp(noisy, noisy) != 0"));
        }
        if power(&clean) == 0.0 || den == clean {
            continue;
        }
        let (m, p) = (mse(&clean, &den).unwrap(), prd(&clean, &den).unwrap());
        worst = worst.max((p * p * power(&clean) / 1e4 - m).abs() / m);
    }
    let msg = format!("metric identities: {METRIC_CASES} cases, SNR_imp(noisy)=0 exactly, PRD/MSE rel err {worst:.2e} (tol {PRD_MSE_REL_TOL:e})");
    if worst <= PRD_MSE_REL_TOL { Outcome::Pass(msg) } else { Outcome::Fail(msg) }
}

fn ac8_workers() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "8"] {
        let out = dir.path().join(format!("w{workers}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_nlwt"))
            .args(["benchmark", "--workers", workers, "-o"])
            .arg(&out)
            .output()
            .unwrap();
        if !status.status.success() {
            return Outcome::Fail(format!("determinism: --workers {workers} failed: {}", String::from_utf8_lossy(&status.stderr)));
        }
        outputs.push(std::fs::read(&out).unwrap());
    }
    let msg = format!("determinism: default plan, --workers 1 vs 8, {} report bytes", outputs[0].len());
    if outputs[0] == outputs[1] { Outcome::Pass(msg + " identical") } else { Outcome::Fail(msg + " differ") }
}

fn ac9_nlm() -> Outcome {
    let mut rng = Fuzz(9);
    let mut checked = 0;
    while checked < CONVEX_SAMPLES {
        let (h, s) = (rng.range(1, 6), rng.range(1, 20));
        let n = rng.range(2 * (h + s) + 1, 200);
        let p = NlmParams { patch_half_width: h, search_half_width: s, mu: 0.01 + 3.0 * rng.unit(), exclude_center: rng.next().is_multiple_of(2) };
        let v: Vec<f64> = GaussianNoise::new(rng.next()).take(n).collect();
        let out = denoise_nlm_samples(&v, &p).unwrap();
        for (i, u) in out.iter().enumerate() {
            let w = &v[i.saturating_sub(s)..=(i + s).min(n - 1)];
            let (lo, hi) = w.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(*x), b.max(*x)));
            if !(lo <= *u && *u <= hi) {
                return Outcome::Fail(format!("NLM convex bound: sample {i} = {u} outside [{lo}, {hi}]"));
            }
        }
        checked += n;
        let c = vec![rng.unit() * 10.0 - 5.0; n];
        if denoise_nlm_samples(&c, &p).unwrap() != c {
            return Outcome::Fail("NLM constant fixed point not exact".into());
        }
    }
    Outcome::Pass(format!("NLM convex bound on {checked} fuzzed samples; constant fixed point exact"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", ac1_round_trip),
        ("AC2", ac2_oracle),
        ("AC3", ac3_schedule_count),
        ("AC4", ac4_identity),
        ("AC5", ac5_floor),
        ("AC6", ac6_real_records),
        ("AC7", ac7_metrics),
        ("AC8", ac8_workers),
        ("AC9", ac9_nlm),
    ];
    let mut failed = 0;
    for (id, check) in criteria {
        let (tag, msg) = match check() {
            Outcome::Pass(m) => ("PASS", m),
            Outcome::Fail(m) => {
                failed += 1;
                ("FAIL", m)
            }
            Outcome::Skip(m) => ("SKIP", m),
        };
        println!("{id} {tag} {msg}");
    }
    println!("acceptance: {} of 9 criteria failed", failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
