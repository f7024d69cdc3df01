//! `adfa` — spectral analysis from the command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 verification
//! failure.

mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use adfa_core::{
    analyze_opts, bench, build_adfa_matrix, build_cqa_matrix, build_dfa_matrix, build_mdfa_matrix,
    log_power, read_wav, white_noise, write_log_power, write_matrix, write_spectrogram,
    AnalysisMatrix, CqConfig, Error, FrameConfig, MelConfig, MelFormula, MethodParams,
    Normalization, OutputFormat, Result, TailPolicy, WindowKind, DEFAULT_FLOOR_EPS,
};

#[derive(Parser)]
#[command(name = "adfa", version, about = "Matrix-based spectral analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a 16-bit PCM WAV file into a spectrogram file
    Analyze(AnalyzeArgs),
    /// Build an analysis matrix and write it to disk
    Matrix(MatrixArgs),
    /// Run the numerical verification suites and print their deviations
    Verify(VerifyArgs),
    /// Time the precomputed-matrix path against the per-term naive path
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dfa,
    Adfa,
    Mdfa,
    Cqa,
}

#[derive(Clone, Copy, ValueEnum)]
enum WindowArg {
    Blackman,
    Hann,
    Rectangular,
}

impl From<WindowArg> for WindowKind {
    fn from(w: WindowArg) -> WindowKind {
        match w {
            WindowArg::Blackman => WindowKind::Blackman,
            WindowArg::Hann => WindowKind::Hann,
            WindowArg::Rectangular => WindowKind::Rectangular,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MelFormulaArg {
    Htk,
    Slaney,
}

impl From<MelFormulaArg> for MelFormula {
    fn from(f: MelFormulaArg) -> MelFormula {
        match f {
            MelFormulaArg::Htk => MelFormula::Htk,
            MelFormulaArg::Slaney => MelFormula::Slaney,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizationArg {
    None,
    InvSqrtCols,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Normalization {
        match n {
            NormalizationArg::None => Normalization::None,
            NormalizationArg::InvSqrtCols => Normalization::InvSqrtCols,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Binary,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> OutputFormat {
        match f {
            FormatArg::Binary => OutputFormat::Binary,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Args)]
struct MethodArgs {
    /// Analysis method
    #[arg(long, value_enum, default_value_t = MethodArg::Adfa)]
    method: MethodArg,

    /// Number of output frequency bins (dfa matrices are square, so this
    /// must match the column count when given)
    #[arg(long)]
    bins: Option<usize>,

    /// Sample rate in Hz, used for the mel warp and synthetic input
    #[arg(long, default_value_t = 16000)]
    sr: u32,

    /// Mel formula for mdfa
    #[arg(long, value_enum, default_value_t = MelFormulaArg::Htk)]
    mel_formula: MelFormulaArg,

    /// Constant-Q ladder base B
    #[arg(long, default_value_t = 2.0)]
    cq_base: f64,

    /// Constant-Q bins per octave b
    #[arg(long, default_value_t = 96)]
    cq_bins_per_octave: u32,

    /// Whether entries carry the 1/sqrt(n_cols) factor
    #[arg(long, value_enum, default_value_t = NormalizationArg::None)]
    normalization: NormalizationArg,
}

impl MethodArgs {
    /// Number of bins, with per-method defaults (863 everywhere except
    /// square DFA, where the bin count is the column count).
    fn resolve_bins(&self, dfa_default: usize) -> Result<usize> {
        let bins = match self.method {
            MethodArg::Dfa => self.bins.unwrap_or(dfa_default),
            _ => self.bins.unwrap_or(863),
        };
        match self.method {
            MethodArg::Dfa | MethodArg::Cqa => {
                if bins == 0 {
                    return Err(Error::InvalidArgument("--bins must be at least 1".into()));
                }
            }
            MethodArg::Adfa | MethodArg::Mdfa => {
                if bins < 2 {
                    return Err(Error::InvalidArgument(format!(
                        "--bins must be at least 2 for --method {}, got {bins}",
                        if self.method == MethodArg::Adfa {
                            "adfa"
                        } else {
                            "mdfa"
                        }
                    )));
                }
            }
        }
        Ok(bins)
    }

    fn mel_config(&self, sample_rate: f64) -> MelConfig {
        MelConfig::new(sample_rate, self.mel_formula.into())
    }

    fn cq_config(&self) -> Result<CqConfig> {
        if !self.cq_base.is_finite() || self.cq_base <= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "--cq-base must be greater than 1, got {}",
                self.cq_base
            )));
        }
        if self.cq_bins_per_octave == 0 {
            return Err(Error::InvalidArgument(
                "--cq-bins-per-octave must be at least 1".into(),
            ));
        }
        Ok(CqConfig {
            base: self.cq_base,
            bins_per_octave: self.cq_bins_per_octave,
        })
    }

    /// Check the method flags against the builder preconditions without
    /// doing any work; `n_cols` is the column count the matrix will get.
    fn validate(&self, n_cols: usize) -> Result<()> {
        let bins = self.resolve_bins(n_cols)?;
        if self.method == MethodArg::Dfa && bins != n_cols {
            return Err(Error::InvalidArgument(format!(
                "--bins {bins} conflicts with the {n_cols}-column DFA matrix; \
                 DFA is square, omit --bins or match the frame length"
            )));
        }
        if self.method == MethodArg::Cqa {
            self.cq_config()?;
        }
        Ok(())
    }

    /// Build the matrix and its oracle parameterization for a given column
    /// count and audio sample rate.
    fn build(&self, n_cols: usize, sample_rate: f64) -> Result<(AnalysisMatrix, MethodParams)> {
        let normalization = self.normalization.into();
        match self.method {
            MethodArg::Dfa => {
                let n = self.resolve_bins(n_cols)?;
                if n != n_cols {
                    return Err(Error::InvalidArgument(format!(
                        "--bins {n} conflicts with the {n_cols}-column DFA matrix; \
                         DFA is square, omit --bins or match the frame length"
                    )));
                }
                Ok((build_dfa_matrix(n)?, MethodParams::Dfa { n }))
            }
            MethodArg::Adfa => {
                let n_bins = self.resolve_bins(0)?;
                Ok((
                    build_adfa_matrix(n_bins, n_cols, normalization)?,
                    MethodParams::Adfa { n_bins },
                ))
            }
            MethodArg::Mdfa => {
                let n_bins = self.resolve_bins(0)?;
                let config = self.mel_config(sample_rate);
                Ok((
                    build_mdfa_matrix(n_bins, n_cols, &config, normalization)?,
                    MethodParams::Mdfa { n_bins, config },
                ))
            }
            MethodArg::Cqa => {
                let n_bins = self.resolve_bins(0)?;
                let config = self.cq_config()?;
                Ok((
                    build_cqa_matrix(n_bins, n_cols, &config, normalization)?,
                    MethodParams::Cqa { n_bins, config },
                ))
            }
        }
    }

    fn name(&self) -> &'static str {
        match self.method {
            MethodArg::Dfa => "dfa",
            MethodArg::Adfa => "adfa",
            MethodArg::Mdfa => "mdfa",
            MethodArg::Cqa => "cqa",
        }
    }
}

#[derive(Args)]
struct FramingArgs {
    /// Frame length in samples
    #[arg(long, default_value_t = 1724)]
    frame_len: usize,

    /// Samples shared by consecutive frames
    #[arg(long, default_value_t = 128)]
    overlap: usize,

    /// Start-index stride; overrides --overlap (hop = frame-len - overlap)
    #[arg(long)]
    hop: Option<usize>,

    /// Analysis window
    #[arg(long, value_enum, default_value_t = WindowArg::Blackman)]
    window: WindowArg,
}

impl FramingArgs {
    fn to_config(&self) -> Result<FrameConfig> {
        if self.frame_len == 0 {
            return Err(Error::InvalidArgument(
                "--frame-len must be at least 1".into(),
            ));
        }
        let overlap = match self.hop {
            Some(hop) => {
                if hop == 0 || hop > self.frame_len {
                    return Err(Error::InvalidArgument(format!(
                        "--hop must be between 1 and --frame-len ({}), got {hop}",
                        self.frame_len
                    )));
                }
                self.frame_len - hop
            }
            None => self.overlap,
        };
        if overlap >= self.frame_len {
            return Err(Error::InvalidArgument(format!(
                "--overlap ({overlap}) must be smaller than --frame-len ({})",
                self.frame_len
            )));
        }
        Ok(FrameConfig {
            frame_len: self.frame_len,
            overlap,
            window: self.window.into(),
            tail_policy: TailPolicy::DropPartial,
        })
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input WAV file (16-bit PCM)
    input: PathBuf,

    #[command(flatten)]
    method: MethodArgs,

    #[command(flatten)]
    framing: FramingArgs,

    /// Output file path
    #[arg(long)]
    out: PathBuf,

    /// Output representation
    #[arg(long, value_enum, default_value_t = FormatArg::Binary)]
    format: FormatArg,

    /// Write the log-power spectrogram instead of the complex one
    #[arg(long)]
    log_power: bool,

    /// Power floor for --log-power
    #[arg(long, default_value_t = DEFAULT_FLOOR_EPS)]
    eps: f64,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    method: MethodArgs,

    /// Number of matrix columns; defaults to 2*(bins - 1) (the orthogonality
    /// condition) for adfa/mdfa/cqa, and to the bin count for dfa
    #[arg(long)]
    cols: Option<usize>,

    /// Output file path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Extra ADFA bin count to include in the orthogonality suite
    #[arg(long)]
    bins: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Input WAV file; omit when using --synthetic
    input: Option<PathBuf>,

    /// Generate this many seconds of seeded white noise instead of reading
    /// a file
    #[arg(long)]
    synthetic: Option<f64>,

    #[command(flatten)]
    method: MethodArgs,

    #[command(flatten)]
    framing: FramingArgs,

    /// Number of timed runs per path; the report carries the medians
    #[arg(long, default_value_t = 3)]
    repeats: usize,

    /// Worker threads, applied equally to both paths
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Verify(args) => verify::cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => 2,
        Error::Verification(_) => 3,
        _ => 1,
    }
}

/// Parallelism cap from ADFA_THREADS, if set.
fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("ADFA_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::InvalidArgument(format!(
                "ADFA_THREADS must be a positive integer, got {raw:?}"
            ))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(std::env::VarError::NotUnicode(_)) => Err(Error::InvalidArgument(
            "ADFA_THREADS must be a positive integer".into(),
        )),
    }
}

fn effective_threads(requested: Option<usize>) -> Result<usize> {
    let cap = thread_cap()?;
    let base = requested.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    Ok(cap.map_or(base, |c| base.min(c)).max(1))
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<()> {
    if !args.eps.is_finite() || args.eps <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "--eps must be positive, got {}",
            args.eps
        )));
    }
    let config = args.framing.to_config()?;
    args.method.validate(config.frame_len)?;
    let threads = effective_threads(None)?;
    let audio = read_wav(&args.input)?;
    let (matrix, _) = args
        .method
        .build(config.frame_len, audio.sample_rate() as f64)?;
    let spec = analyze_opts(&audio, &matrix, &config, threads)?;
    let (n_bins, n_frames) = (spec.n_bins, spec.n_frames);
    if args.log_power {
        let lp = log_power(&spec, args.eps)?;
        write_log_power(&lp, &args.out, args.format.into())?;
    } else {
        write_spectrogram(&spec, &args.out, args.format.into())?;
    }
    println!(
        "analyze method={} bins={} frames={} frame_len={} hop={} log_power={} out={}",
        args.method.name(),
        n_bins,
        n_frames,
        config.frame_len,
        config.hop(),
        args.log_power,
        args.out.display()
    );
    Ok(())
}

fn cmd_matrix(args: MatrixArgs) -> Result<()> {
    let (matrix, _) = match args.method.method {
        MethodArg::Dfa => {
            if args.cols.is_some() {
                return Err(Error::InvalidArgument(
                    "--cols cannot be used with --method dfa (the matrix is square)".into(),
                ));
            }
            let n = args.method.resolve_bins(1724)?;
            args.method.build(n, args.method.sr as f64)?
        }
        _ => {
            let n_bins = args.method.resolve_bins(0)?;
            let n_cols = args.cols.unwrap_or(2 * (n_bins - 1));
            if n_cols == 0 {
                return Err(Error::InvalidArgument("--cols must be at least 1".into()));
            }
            args.method.build(n_cols, args.method.sr as f64)?
        }
    };
    write_matrix(&matrix, &args.out)?;
    println!(
        "matrix method={} bins={} cols={} out={}",
        args.method.name(),
        matrix.n_bins(),
        matrix.n_cols(),
        args.out.display()
    );
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    if args.repeats == 0 {
        return Err(Error::InvalidArgument(
            "--repeats must be at least 1".into(),
        ));
    }
    let config = args.framing.to_config()?;
    args.method.validate(config.frame_len)?;
    let threads = effective_threads(Some(args.threads))?;
    let signal = match (&args.input, args.synthetic) {
        (Some(path), None) => read_wav(path)?,
        (None, Some(seconds)) => {
            if args.method.sr == 0 {
                return Err(Error::InvalidArgument("--sr must be positive".into()));
            }
            white_noise(args.method.sr, seconds)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "provide exactly one of an input WAV or --synthetic SECONDS".into(),
            ))
        }
    };
    let (matrix, params) = args
        .method
        .build(config.frame_len, signal.sample_rate() as f64)?;
    let report = bench(&matrix, &params, &signal, &config, args.repeats, threads)?;
    println!(
        "bench method={} bins={} frame_len={} hop={} n_frames={} repeats={} threads={} \
         gate_max_deviation={:e} matrix_path_seconds={:.6} naive_path_seconds={:.6} ratio={:.3}",
        args.method.name(),
        matrix.n_bins(),
        config.frame_len,
        config.hop(),
        report.n_frames,
        report.repeats,
        threads,
        report.gate_max_deviation,
        report.matrix_path_seconds,
        report.naive_path_seconds,
        report.ratio
    );
    Ok(())
}
