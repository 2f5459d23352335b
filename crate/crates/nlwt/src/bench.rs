//! Benchmark harness: noise realizations at several input SNRs, both
//! denoisers, per-run metrics and averages.

use std::path::PathBuf;
use std::time::Instant;

use nlwt_core::nlm::denoise_nlm_samples;
use nlwt_core::nlwt::denoise_nlwt_samples;
use nlwt_core::signal_model::{add_awgn, estimate_sigma, normalize, synth_ecg};
use nlwt_core::{
    DenoiseReport, Method, MethodParams, NoiseSpec, Signal, SnrImprovement, WaveletFilter, WaveletName,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{read_csv, Channel, RecordFile};
use crate::params::{NlmOverrides, NlwtOverrides};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Record name of the cross-record average rows.
pub const ALL_RECORDS: &str = "ALL";
/// Channel name of average rows.
pub const ALL_CHANNELS: &str = "ALL";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthSpec {
    pub beats: usize,
    pub sample_rate_hz: f64,
    pub heart_rate_bpm: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    /// 30 beats at 360 Hz and 72 bpm (about 9000 samples).
    fn default() -> Self {
        Self { beats: 30, sample_rate_hz: 360.0, heart_rate_bpm: 72.0, seed: 0 }
    }
}

impl SynthSpec {
    pub fn record(&self) -> Result<RecordFile> {
        let s = synth_ecg(self.beats, self.sample_rate_hz, self.heart_rate_bpm, self.seed)?;
        let fs = s.sample_rate_hz();
        let channel = Channel { name: "synth".into(), samples: s.into_samples() };
        RecordFile::new(vec![channel], fs, "synth_ecg")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordSource {
    Synth(SynthSpec),
    Csv {
        path: PathBuf,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fs: Option<f64>,
    },
}

impl RecordSource {
    pub fn load(&self) -> Result<RecordFile> {
        match self {
            RecordSource::Synth(spec) => spec.record(),
            RecordSource::Csv { path, fs } => read_csv(path, *fs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkPlan {
    pub records: Vec<RecordSource>,
    pub methods: Vec<Method>,
    pub snrs_db: Vec<f64>,
    pub realizations: usize,
    pub base_seed: u64,
    pub nlwt: NlwtOverrides,
    pub nlm: NlmOverrides,
    /// Use the MAD estimate from the noisy signal instead of the injected sigma.
    pub estimate_sigma: bool,
    /// Record wall-clock `runtime_ms` per run. Off by default because timings
    /// make reports non-reproducible.
    pub timing: bool,
}

impl Default for BenchmarkPlan {
    fn default() -> Self {
        Self {
            records: vec![RecordSource::Synth(SynthSpec::default())],
            methods: vec![Method::Nlm, Method::Nlwt],
            snrs_db: vec![6.0, 10.0, 15.0, 20.0],
            realizations: 5,
            base_seed: 0,
            nlwt: NlwtOverrides::default(),
            nlm: NlmOverrides::default(),
            estimate_sigma: false,
            timing: false,
        }
    }
}

impl BenchmarkPlan {
    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be >= 1".into()));
        }
        if self.snrs_db.is_empty() {
            return Err(Error::Config("at least one SNR level is required".into()));
        }
        if let Some(s) = self.snrs_db.iter().find(|s| !s.is_finite()) {
            return Err(Error::Config(format!("invalid SNR level {s}")));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("at least one method is required".into()));
        }
        if self.records.is_empty() {
            return Err(Error::Config("at least one record is required".into()));
        }
        Ok(())
    }
}

/// Noise seed of one cell: FNV-1a over the record name, a 0xFF separator, the
/// channel name, 0xFF, the SNR's IEEE bits, the realization and the base seed
/// (integers little-endian), finished with the SplitMix64 mixer.
pub fn derive_seed(base_seed: u64, record: &str, channel: &str, snr_db: f64, realization: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for b in bytes {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(record.as_bytes());
    eat(&[0xff]);
    eat(channel.as_bytes());
    eat(&[0xff]);
    eat(&snr_db.to_bits().to_le_bytes());
    eat(&(realization as u64).to_le_bytes());
    eat(&base_seed.to_le_bytes());
    let mut z = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Run,
    Mean,
}

/// One report row: a single run, or the mean over runs sharing
/// `(record, method, snr)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub schema_version: u32,
    pub kind: RowKind,
    pub record: String,
    pub channel: String,
    pub method: Method,
    pub snr_in_db: f64,
    pub realization: Option<usize>,
    pub seed: Option<u64>,
    /// `None` when the reconstruction was perfect (see `perfect`).
    pub snr_imp_db: Option<f64>,
    pub perfect: bool,
    pub mse: f64,
    pub prd_percent: f64,
    pub clean_power: f64,
    pub sigma: f64,
    /// Number of runs behind the row (1 for run rows).
    pub runs: usize,
    /// Resolved parameters of a run; `None` on mean rows.
    pub params: Option<MethodParams>,
    pub runtime_ms: Option<f64>,
}

impl BenchRow {
    fn from_report(r: &DenoiseReport, record: &str, channel: &str, realization: usize, runtime_ms: Option<f64>) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            kind: RowKind::Run,
            record: record.to_owned(),
            channel: channel.to_owned(),
            method: r.method,
            snr_in_db: r.target_snr_db,
            realization: Some(realization),
            seed: Some(r.seed),
            snr_imp_db: r.snr_imp.db(),
            perfect: r.snr_imp == SnrImprovement::Perfect,
            mse: r.mse,
            prd_percent: r.prd_percent,
            clean_power: r.clean_power,
            sigma: r.sigma,
            runs: 1,
            params: Some(r.params.clone()),
            runtime_ms,
        }
    }

    fn mean_of(rows: &[&BenchRow], record: &str) -> Self {
        let n = rows.len() as f64;
        let mean = |f: fn(&BenchRow) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / n;
        let perfect = rows.iter().any(|r| r.perfect);
        let runtime_ms = rows.iter().map(|r| r.runtime_ms).sum::<Option<f64>>().map(|t| t / n);
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            kind: RowKind::Mean,
            record: record.to_owned(),
            channel: ALL_CHANNELS.to_owned(),
            method: rows[0].method,
            snr_in_db: rows[0].snr_in_db,
            realization: None,
            seed: None,
            snr_imp_db: if perfect { None } else { Some(mean(|r| r.snr_imp_db.unwrap_or(f64::NAN))) },
            perfect,
            mse: mean(|r| r.mse),
            prd_percent: mean(|r| r.prd_percent),
            clean_power: mean(|r| r.clean_power),
            sigma: mean(|r| r.sigma),
            runs: rows.len(),
            params: None,
            runtime_ms,
        }
    }
}

struct Cell<'a> {
    record_index: usize,
    record_name: String,
    channel_index: usize,
    channel: &'a Channel,
    sample_rate_hz: f64,
    snr_index: usize,
    realization: usize,
}

/// Loads every record of the plan and runs it. See [`run_benchmark_on`].
pub fn run_benchmark(plan: &BenchmarkPlan) -> Result<Vec<BenchRow>> {
    plan.validate()?;
    let records = plan.records.iter().map(RecordSource::load).collect::<Result<Vec<_>>>()?;
    run_benchmark_on(&records, plan)
}

/// Runs every `(record, channel, snr, realization)` cell, each method on the
/// same noisy realization. Each channel is normalized to unit peak first.
///
/// Rows come back sorted by record, channel, method, SNR and realization in
/// plan order, followed by mean rows per `(record, method, snr)` and, with
/// several records, per `(method, snr)` across all of them. Cells run on the
/// current rayon pool; the output does not depend on its size.
pub fn run_benchmark_on(records: &[RecordFile], plan: &BenchmarkPlan) -> Result<Vec<BenchRow>> {
    plan.validate()?;
    let mut cells = Vec::new();
    for (record_index, record) in records.iter().enumerate() {
        for (channel_index, channel) in record.channels.iter().enumerate() {
            for snr_index in 0..plan.snrs_db.len() {
                for realization in 0..plan.realizations {
                    cells.push(Cell {
                        record_index,
                        record_name: record.name(),
                        channel_index,
                        channel,
                        sample_rate_hz: record.sample_rate_hz,
                        snr_index,
                        realization,
                    });
                }
            }
        }
    }
    let results: Vec<Vec<BenchRow>> = cells
        .par_iter()
        .map(|cell| evaluate_cell(cell, plan))
        .collect::<Result<_>>()?;

    let method_rank = |m: Method| plan.methods.iter().position(|x| *x == m).unwrap_or(usize::MAX);
    let mut runs: Vec<(&Cell<'_>, BenchRow)> = cells
        .iter()
        .zip(results)
        .flat_map(|(cell, rows)| rows.into_iter().map(move |r| (cell, r)))
        .collect();
    runs.sort_by_key(|(c, r)| (c.record_index, c.channel_index, method_rank(r.method), c.snr_index, c.realization));

    let mut out: Vec<BenchRow> = runs.iter().map(|(_, r)| r.clone()).collect();
    let mut means = Vec::new();
    let mut push_means = |label: &str, filter: &dyn Fn(&Cell<'_>) -> bool| {
        for method in &plan.methods {
            for snr_index in 0..plan.snrs_db.len() {
                let group: Vec<&BenchRow> = runs
                    .iter()
                    .filter(|(c, r)| r.method == *method && c.snr_index == snr_index && filter(c))
                    .map(|(_, r)| r)
                    .collect();
                if !group.is_empty() {
                    means.push(BenchRow::mean_of(&group, label));
                }
            }
        }
    };
    for (i, record) in records.iter().enumerate() {
        push_means(&record.name(), &|c: &Cell<'_>| c.record_index == i);
    }
    if records.len() > 1 {
        push_means(ALL_RECORDS, &|_: &Cell<'_>| true);
    }
    out.extend(means);
    Ok(out)
}

fn evaluate_cell(cell: &Cell<'_>, plan: &BenchmarkPlan) -> Result<Vec<BenchRow>> {
    let snr = plan.snrs_db[cell.snr_index];
    let clean = normalize(&Signal::new(cell.channel.samples.clone(), cell.sample_rate_hz)?)?;
    let seed = derive_seed(plan.base_seed, &cell.record_name, &cell.channel.name, snr, cell.realization);
    let (noisy, true_sigma) = add_awgn(&clean, &NoiseSpec::new(snr, seed))?;
    let sigma = if plan.estimate_sigma {
        estimate_sigma(noisy.samples(), &WaveletFilter::new(WaveletName::Haar))?
    } else {
        true_sigma
    };
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::Config(format!("noise level estimate is {sigma}")));
    }

    let mut rows = Vec::with_capacity(plan.methods.len());
    for &method in &plan.methods {
        let start = Instant::now();
        let (denoised, params) = match method {
            Method::Nlwt => {
                let p = plan.nlwt.resolve(cell.sample_rate_hz);
                (denoise_nlwt_samples(noisy.samples(), sigma, &p)?, MethodParams::Nlwt(p))
            }
            Method::Nlm => {
                let p = plan.nlm.resolve(sigma);
                (denoise_nlm_samples(noisy.samples(), &p)?, MethodParams::Nlm(p))
            }
        };
        let runtime_ms = plan.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        let report = DenoiseReport::evaluate(
            clean.samples(),
            noisy.samples(),
            &denoised,
            method,
            params,
            seed,
            snr,
            sigma,
        )?;
        rows.push(BenchRow::from_report(&report, &cell.record_name, &cell.channel.name, cell.realization, runtime_ms));
    }
    Ok(rows)
}

/// Runs the plan on a dedicated pool of `workers` threads.
pub fn run_benchmark_with_workers(plan: &BenchmarkPlan, workers: usize) -> Result<Vec<BenchRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| run_benchmark(plan))
}
