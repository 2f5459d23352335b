//! `nlwt` subcommands. Exit codes: 0 success, 1 runtime or data error,
//! 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nlwt_core::nlm::denoise_nlm_samples;
use nlwt_core::nlwt::denoise_nlwt_samples;
use nlwt_core::signal_model::{add_awgn, estimate_sigma, SynthEcg};
use nlwt_core::{
    Method, MethodParams, NoiseSpec, ProjectorKind, Signal, ThresholdPolicy, WaveletFilter, WaveletName,
};
use serde_json::json;

use crate::bench::{run_benchmark_on, BenchmarkPlan, RecordSource};
use crate::config::FileConfig;
use crate::error::{Error, Result};
use crate::io::{read_csv, write_csv, Channel, RecordFile};
use crate::params::{NlmOverrides, NlwtOverrides};
use crate::report::{write_report, ReportFormat};

#[derive(Debug, Parser)]
#[command(name = "nlwt", version, about = "Nonlocal wavelet-domain ECG denoising")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Denoise every channel of a CSV record.
    Denoise(DenoiseArgs),
    /// Add white Gaussian noise at a target SNR.
    AddNoise(AddNoiseArgs),
    /// Run the noise-realization benchmark and write a report.
    Benchmark(BenchmarkArgs),
    /// Write a synthetic ECG record.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct NlwtFlags {
    /// Block half-width L (block length 2L+1).
    #[arg(long = "L", value_name = "L")]
    pub l: Option<usize>,
    /// Search half-width M.
    #[arg(long = "M", value_name = "M")]
    pub big_m: Option<usize>,
    /// Maximum blocks per similarity matrix m.
    #[arg(long = "m", value_name = "m")]
    pub m: Option<usize>,
    /// Matching threshold tau.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Reference shift k.
    #[arg(long = "k", value_name = "k")]
    pub k: Option<usize>,
    /// Shrinkage coefficient c (threshold c*sigma).
    #[arg(long = "c", value_name = "c")]
    pub c: Option<f64>,
    #[arg(long)]
    pub wavelet: Option<WaveletName>,
    #[arg(long)]
    pub projector: Option<ProjectorKind>,
    #[arg(long)]
    pub n_components: Option<usize>,
    /// Decomposition depth of each similarity matrix.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Reuse one learned projection for this many consecutive references.
    #[arg(long)]
    pub refit_every: Option<usize>,
    /// fixed (c*sigma) or visu (sqrt(2 ln N) * sigma).
    #[arg(long = "threshold")]
    pub threshold_policy: Option<ThresholdPolicy>,
}

impl NlwtFlags {
    fn overrides(&self) -> NlwtOverrides {
        NlwtOverrides {
            L: self.l,
            M: self.big_m,
            m: self.m,
            tau: self.tau,
            k: self.k,
            c: self.c,
            wavelet: self.wavelet,
            projector: self.projector,
            n_components: self.n_components,
            levels: self.levels,
            refit_every: self.refit_every,
            threshold_policy: self.threshold_policy,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct NlmFlags {
    /// NLM neighborhood half-width.
    #[arg(long = "patch")]
    pub patch_half_width: Option<usize>,
    /// NLM search half-width.
    #[arg(long = "search")]
    pub search_half_width: Option<usize>,
    /// NLM bandwidth (absolute).
    #[arg(long)]
    pub mu: Option<f64>,
    /// NLM bandwidth as a multiple of sigma.
    #[arg(long)]
    pub mu_factor: Option<f64>,
    /// Give the center sample the largest weight among its neighbors instead of 1.
    #[arg(long)]
    pub exclude_center: bool,
}

impl NlmFlags {
    fn overrides(&self) -> NlmOverrides {
        NlmOverrides {
            patch_half_width: self.patch_half_width,
            search_half_width: self.search_half_width,
            mu: self.mu,
            mu_factor: self.mu_factor,
            exclude_center: self.exclude_center.then_some(true),
        }
    }
}

#[derive(Debug, Args)]
pub struct DenoiseArgs {
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub method: Option<Method>,
    /// Noise standard deviation in the units of the input.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Estimate sigma per channel from the finest Haar details.
    #[arg(long)]
    pub estimate_sigma: bool,
    /// Sample rate, overriding the file's `# fs=` line.
    #[arg(long)]
    pub fs: Option<f64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub nlwt: NlwtFlags,
    #[command(flatten)]
    pub nlm: NlmFlags,
}

#[derive(Debug, Args)]
pub struct AddNoiseArgs {
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Target SNR in dB.
    #[arg(long)]
    pub snr: Option<f64>,
    /// Channel i uses seed + i.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub fs: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    /// CSV records to benchmark (repeatable). Defaults to a synthetic ECG.
    #[arg(short, long)]
    pub input: Vec<PathBuf>,
    /// Report path; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Comma-separated subset of nlm,nlwt.
    #[arg(long, alias = "method", value_delimiter = ',')]
    pub methods: Vec<Method>,
    /// Comma-separated input SNR levels in dB.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub snr: Vec<f64>,
    #[arg(long)]
    pub realizations: Option<usize>,
    /// Base seed of the noise realizations.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub format: Option<ReportFormat>,
    /// Sample rate of CSV inputs (overrides `# fs=`) or of the synthetic record.
    #[arg(long)]
    pub fs: Option<f64>,
    /// Beats of the synthetic record.
    #[arg(long)]
    pub beats: Option<usize>,
    /// Heart rate of the synthetic record.
    #[arg(long)]
    pub bpm: Option<f64>,
    #[arg(long)]
    pub estimate_sigma: bool,
    /// Include wall-clock runtimes (the report is then not reproducible).
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub nlwt: NlwtFlags,
    #[command(flatten)]
    pub nlm: NlmFlags,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 30)]
    pub beats: usize,
    #[arg(long, default_value_t = 360.0)]
    pub fs: f64,
    #[arg(long, default_value_t = 72.0)]
    pub bpm: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative beat-period jitter (at most 0.02).
    #[arg(long, default_value_t = 0.02)]
    pub jitter: f64,
    #[arg(long, default_value = "synth")]
    pub channel: String,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<nlwt_core::Error> for Failure {
    fn from(e: nlwt_core::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the subcommand. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Denoise(a) => denoise(a),
        Command::AddNoise(a) => add_noise(a),
        Command::Benchmark(a) => benchmark(a),
        Command::Synth(a) => synth(a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig> {
    path.as_ref().map_or_else(|| Ok(FileConfig::default()), FileConfig::load)
}

fn required(flag: Option<PathBuf>, file: Option<PathBuf>, name: &str) -> std::result::Result<PathBuf, Failure> {
    flag.or(file).ok_or_else(|| Failure::Usage(format!("--{name} is required")))
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn print_summary(value: serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{value}").map_err(|e| Error::io("<stdout>", e))
}

fn denoise(a: DenoiseArgs) -> CmdResult {
    let cfg = load_config(&a.config)?;
    let input = required(a.input, cfg.input.clone(), "input")?;
    let output = required(a.output, cfg.output.clone(), "output")?;
    let method = a.method.or(cfg.method).unwrap_or(Method::Nlwt);
    let sigma = a.sigma.or(cfg.sigma);
    let estimate = a.estimate_sigma || cfg.estimate_sigma.unwrap_or(false);
    if sigma.is_none() && !estimate {
        return Err(Failure::Usage("one of --sigma or --estimate-sigma is required".into()));
    }
    let nlwt = cfg.nlwt.layered(&a.nlwt.overrides());
    let nlm = cfg.nlm.layered(&a.nlm.overrides());

    let record = read_csv(&input, a.fs.or(cfg.fs))?;
    let nlwt_params = nlwt.resolve(record.sample_rate_hz);
    // validate up front; NLM's bandwidth is checked per channel once sigma is known
    match method {
        Method::Nlwt => nlwt_params.validate()?,
        Method::Nlm => nlm.resolve(1.0).validate()?,
    }
    if let Some(s) = sigma {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Config(format!("--sigma must be finite and > 0, got {s}")).into());
        }
    }

    let haar = WaveletFilter::new(WaveletName::Haar);
    let mut channels = Vec::with_capacity(record.channels.len());
    let mut summary = Vec::new();
    for ch in &record.channels {
        let s = match sigma {
            Some(s) => s,
            None => estimate_sigma(&ch.samples, &haar)?,
        };
        let (samples, params) = with_workers(a.workers.or(cfg.workers), || -> Result<_> {
            Ok(match method {
                Method::Nlwt => (denoise_nlwt_samples(&ch.samples, s, &nlwt_params)?, MethodParams::Nlwt(nlwt_params.clone())),
                Method::Nlm => {
                    let p = nlm.resolve(s);
                    (denoise_nlm_samples(&ch.samples, &p)?, MethodParams::Nlm(p))
                }
            })
        })??;
        summary.push(json!({ "name": ch.name, "sigma": s, "params": params }));
        channels.push(Channel { name: ch.name.clone(), samples });
    }
    let out = RecordFile::new(channels, record.sample_rate_hz, &output)?;
    write_csv(&output, &out)?;
    print_summary(json!({
        "command": "denoise",
        "method": method,
        "input": input,
        "output": output,
        "samples": out.len(),
        "sample_rate_hz": out.sample_rate_hz,
        "estimate_sigma": estimate,
        "channels": summary,
    }))?;
    Ok(())
}

fn add_noise(a: AddNoiseArgs) -> CmdResult {
    let cfg = load_config(&a.config)?;
    let input = required(a.input, cfg.input.clone(), "input")?;
    let output = required(a.output, cfg.output.clone(), "output")?;
    let snr = match (a.snr, &cfg.snr) {
        (Some(s), _) => s,
        (None, Some(list)) => match list.to_vec().as_slice() {
            [s] => *s,
            _ => return Err(Failure::Usage("add-noise takes a single --snr".into())),
        },
        (None, None) => return Err(Failure::Usage("--snr is required".into())),
    };
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let record = read_csv(&input, a.fs.or(cfg.fs))?;

    let mut channels = Vec::with_capacity(record.channels.len());
    let mut summary = Vec::new();
    for (i, ch) in record.channels.iter().enumerate() {
        let channel_seed = seed.wrapping_add(i as u64);
        let clean = Signal::new(ch.samples.clone(), record.sample_rate_hz)?;
        let (noisy, sigma) = add_awgn(&clean, &NoiseSpec::new(snr, channel_seed))?;
        summary.push(json!({ "name": ch.name, "sigma": sigma, "seed": channel_seed }));
        channels.push(Channel { name: ch.name.clone(), samples: noisy.into_samples() });
    }
    write_csv(&output, &RecordFile::new(channels, record.sample_rate_hz, &output)?)?;
    print_summary(json!({
        "command": "add-noise",
        "input": input,
        "output": output,
        "snr_db": snr,
        "seed": seed,
        "channels": summary,
    }))?;
    Ok(())
}

/// Builds the benchmark plan from defaults, the config file and flags.
pub fn benchmark_plan(a: &BenchmarkArgs, cfg: &FileConfig) -> BenchmarkPlan {
    let defaults = BenchmarkPlan::default();
    let fs = a.fs.or(cfg.fs);
    let inputs: Vec<PathBuf> = if a.input.is_empty() { cfg.records.clone().unwrap_or_default() } else { a.input.clone() };
    let records = if inputs.is_empty() {
        let mut spec = cfg.synth.clone().unwrap_or_default();
        if let Some(fs) = fs {
            spec.sample_rate_hz = fs;
        }
        if let Some(b) = a.beats {
            spec.beats = b;
        }
        if let Some(b) = a.bpm {
            spec.heart_rate_bpm = b;
        }
        vec![RecordSource::Synth(spec)]
    } else {
        inputs.into_iter().map(|path| RecordSource::Csv { path, fs }).collect()
    };
    let methods = if !a.methods.is_empty() {
        a.methods.clone()
    } else {
        cfg.methods.clone().or_else(|| cfg.method.map(|m| vec![m])).unwrap_or(defaults.methods)
    };
    let snrs_db = if !a.snr.is_empty() { a.snr.clone() } else { cfg.snr.as_ref().map_or(defaults.snrs_db, |s| s.to_vec()) };
    BenchmarkPlan {
        records,
        methods,
        snrs_db,
        realizations: a.realizations.or(cfg.realizations).unwrap_or(defaults.realizations),
        base_seed: a.seed.or(cfg.seed).unwrap_or(defaults.base_seed),
        nlwt: cfg.nlwt.layered(&a.nlwt.overrides()),
        nlm: cfg.nlm.layered(&a.nlm.overrides()),
        estimate_sigma: a.estimate_sigma || cfg.estimate_sigma.unwrap_or(false),
        timing: a.timing || cfg.timing.unwrap_or(false),
    }
}

fn benchmark(a: BenchmarkArgs) -> CmdResult {
    let cfg = load_config(&a.config)?;
    let format = match (a.format, &cfg.format) {
        (Some(f), _) => f,
        (None, Some(s)) => s.parse()?,
        (None, None) => ReportFormat::default(),
    };
    let plan = benchmark_plan(&a, &cfg);
    plan.validate()?;
    let records = plan.records.iter().map(RecordSource::load).collect::<Result<Vec<_>>>()?;
    for r in &records {
        if plan.methods.contains(&Method::Nlwt) {
            plan.nlwt.resolve(r.sample_rate_hz).validate()?;
        }
    }
    if plan.methods.contains(&Method::Nlm) {
        plan.nlm.resolve(1.0).validate()?;
    }
    let workers = a.workers.or(cfg.workers);
    let rows = with_workers(workers, || run_benchmark_on(&records, &plan))??;

    match &a.output {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
            let mut w = io::BufWriter::new(file);
            write_report(&mut w, &rows, format)?;
            w.flush().map_err(|e| Error::io(path, e))?;
            print_summary(json!({
                "command": "benchmark",
                "output": path,
                "format": format.to_string(),
                "rows": rows.len(),
                "plan": plan,
            }))?;
        }
        None => write_report(io::stdout().lock(), &rows, format)?,
    }
    Ok(())
}

fn synth(a: SynthArgs) -> CmdResult {
    let signal = SynthEcg::new(a.beats, a.fs, a.bpm, a.seed).jitter(a.jitter).generate()?;
    let fs = signal.sample_rate_hz();
    let samples = signal.into_samples();
    let n = samples.len();
    let record = RecordFile::new(vec![Channel { name: a.channel.clone(), samples }], fs, &a.output)?;
    write_csv(&a.output, &record)?;
    print_summary(json!({
        "command": "synth",
        "output": a.output,
        "samples": n,
        "sample_rate_hz": fs,
        "beats": a.beats,
        "heart_rate_bpm": a.bpm,
        "seed": a.seed,
        "jitter": a.jitter,
    }))?;
    Ok(())
}
