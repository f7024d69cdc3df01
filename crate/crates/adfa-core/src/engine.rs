//! Spectrogram computation: the precomputed-matrix path plus the slow
//! direct-summation oracle used for verification and benchmarking.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;

use crate::basis::{hz_to_mel, mel_to_hz, AnalysisMatrix, CqConfig, MelConfig, Method};
use crate::error::{Error, Result};
use crate::framing::{fill_frame, make_window, num_frames, FrameConfig};
use crate::io::AudioBuffer;

/// Default floor for log-power values; prevents -inf on silence.
pub const DEFAULT_FLOOR_EPS: f64 = 1e-30;

/// Tolerance scale for matrix-vs-oracle agreement: `1e-9 * n_cols` absolute.
pub const ORACLE_TOLERANCE_PER_COL: f64 = 1e-9;

/// Complex analysis result, one column per frame.
///
/// `data` is frame-major: frame `k` occupies `data[k*n_bins..(k+1)*n_bins]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    pub method: Method,
    pub n_bins: usize,
    pub n_frames: usize,
    pub data: Vec<Complex64>,
    pub center_freqs: Vec<f64>,
    pub sample_rate: f64,
    pub frame_len: usize,
    pub hop: usize,
}

impl Spectrogram {
    pub fn column(&self, k: usize) -> &[Complex64] {
        &self.data[k * self.n_bins..(k + 1) * self.n_bins]
    }
}

/// Log-power analysis result with the same layout as [`Spectrogram`].
#[derive(Debug, Clone, PartialEq)]
pub struct LogPowerSpectrogram {
    pub method: Method,
    pub n_bins: usize,
    pub n_frames: usize,
    pub data: Vec<f64>,
    pub center_freqs: Vec<f64>,
    pub sample_rate: f64,
    pub frame_len: usize,
    pub hop: usize,
    pub floor_eps: f64,
}

impl LogPowerSpectrogram {
    pub fn column(&self, k: usize) -> &[f64] {
        &self.data[k * self.n_bins..(k + 1) * self.n_bins]
    }
}

/// Apply the matrix to one already-windowed frame.
pub fn analyze_frame(matrix: &AnalysisMatrix, frame: &[f64]) -> Result<Vec<Complex64>> {
    if frame.len() != matrix.n_cols() {
        return Err(Error::invalid(format!(
            "frame length {} does not match matrix n_cols {}",
            frame.len(),
            matrix.n_cols()
        )));
    }
    let mut out = Vec::with_capacity(matrix.n_bins());
    for r in 0..matrix.n_bins() {
        out.push(dot(matrix.row(r), frame));
    }
    Ok(out)
}

fn dot(row: &[Complex64], frame: &[f64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (e, &x) in row.iter().zip(frame.iter()) {
        acc += e * x;
    }
    acc
}

/// Frame, window and analyze a whole signal. Equivalent to calling
/// [`analyze_frame`] on every frame; `analyze_opts` can spread frames over
/// worker threads with bit-identical output.
pub fn analyze(
    signal: &AudioBuffer,
    matrix: &AnalysisMatrix,
    config: &FrameConfig,
) -> Result<Spectrogram> {
    analyze_opts(signal, matrix, config, 1)
}

pub fn analyze_opts(
    signal: &AudioBuffer,
    matrix: &AnalysisMatrix,
    config: &FrameConfig,
    threads: usize,
) -> Result<Spectrogram> {
    config.validate()?;
    if matrix.n_cols() != config.frame_len {
        return Err(Error::invalid(format!(
            "matrix n_cols {} does not match frame_len {}",
            matrix.n_cols(),
            config.frame_len
        )));
    }
    let n_bins = matrix.n_bins();
    let data = run_frames(signal, config, threads, n_bins, |frame, out| {
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = dot(matrix.row(r), frame);
        }
    })?;
    Ok(Spectrogram {
        method: matrix.method(),
        n_bins,
        n_frames: data.len() / n_bins,
        data,
        center_freqs: matrix.center_freqs().to_vec(),
        sample_rate: signal.sample_rate() as f64,
        frame_len: config.frame_len,
        hop: config.hop(),
    })
}

/// Shared framing driver: windows each frame and lets `eval` fill its
/// output column. Frames are independent, so they may be chunked across
/// scoped threads; each worker owns a disjoint slice of the output.
fn run_frames<F>(
    signal: &AudioBuffer,
    config: &FrameConfig,
    threads: usize,
    n_bins: usize,
    eval: F,
) -> Result<Vec<Complex64>>
where
    F: Fn(&[f64], &mut [Complex64]) + Sync,
{
    let window = make_window(config.window, config.frame_len)?;
    let samples = signal.samples();
    let n_frames = num_frames(samples.len(), config);
    let mut data = vec![Complex64::new(0.0, 0.0); n_bins * n_frames];
    if n_frames == 0 {
        return Ok(data);
    }

    let workers = threads.max(1).min(n_frames);
    let frames_per_worker = n_frames.div_ceil(workers);
    if workers == 1 {
        let mut scratch = vec![0.0; config.frame_len];
        for (k, out) in data.chunks_mut(n_bins).enumerate() {
            fill_frame(samples, &window, config.hop(), k, &mut scratch);
            eval(&scratch, out);
        }
    } else {
        std::thread::scope(|scope| {
            for (chunk_idx, chunk) in data.chunks_mut(n_bins * frames_per_worker).enumerate() {
                let window = &window;
                let eval = &eval;
                scope.spawn(move || {
                    let mut scratch = vec![0.0; config.frame_len];
                    let first = chunk_idx * frames_per_worker;
                    for (i, out) in chunk.chunks_mut(n_bins).enumerate() {
                        fill_frame(samples, window, config.hop(), first + i, &mut scratch);
                        eval(&scratch, out);
                    }
                });
            }
        });
    }
    Ok(data)
}

/// Log power: `ln(max(|z|^2, floor_eps))` per cell.
pub fn log_power(spec: &Spectrogram, floor_eps: f64) -> Result<LogPowerSpectrogram> {
    if !floor_eps.is_finite() || floor_eps <= 0.0 {
        return Err(Error::invalid(format!(
            "floor_eps must be positive and finite, got {floor_eps}"
        )));
    }
    let data = spec
        .data
        .iter()
        .map(|z| z.norm_sqr().max(floor_eps).ln())
        .collect();
    Ok(LogPowerSpectrogram {
        method: spec.method,
        n_bins: spec.n_bins,
        n_frames: spec.n_frames,
        data,
        center_freqs: spec.center_freqs.clone(),
        sample_rate: spec.sample_rate,
        frame_len: spec.frame_len,
        hop: spec.hop,
        floor_eps,
    })
}

/// Row parameterization for the direct-summation oracle, independent of any
/// built matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum MethodParams {
    Dfa { n: usize },
    Adfa { n_bins: usize },
    Mdfa { n_bins: usize, config: MelConfig },
    Cqa { n_bins: usize, config: CqConfig },
}

impl MethodParams {
    pub fn method(&self) -> Method {
        match self {
            MethodParams::Dfa { .. } => Method::Dfa,
            MethodParams::Adfa { .. } => Method::Adfa,
            MethodParams::Mdfa { .. } => Method::Mdfa,
            MethodParams::Cqa { .. } => Method::Cqa,
        }
    }

    pub fn n_bins(&self) -> usize {
        match self {
            MethodParams::Dfa { n } => *n,
            MethodParams::Adfa { n_bins }
            | MethodParams::Mdfa { n_bins, .. }
            | MethodParams::Cqa { n_bins, .. } => *n_bins,
        }
    }

    /// Center frequency of `bin`, recomputed from the method formula:
    /// cycles per sample for DFA, fraction of Nyquist otherwise.
    fn center_freq(&self, bin: usize) -> f64 {
        match self {
            MethodParams::Dfa { n } => bin as f64 / *n as f64,
            MethodParams::Adfa { n_bins } => bin as f64 / (*n_bins - 1) as f64,
            MethodParams::Mdfa { n_bins, config } => {
                if bin == 0 {
                    0.0
                } else if bin == *n_bins - 1 {
                    1.0
                } else {
                    let nyquist = config.sample_rate / 2.0;
                    let mel_max = hz_to_mel(nyquist, config.formula);
                    let mel = bin as f64 / (*n_bins - 1) as f64 * mel_max;
                    mel_to_hz(mel, config.formula) / nyquist
                }
            }
            MethodParams::Cqa { n_bins, config } => {
                let a = (*n_bins - 1 - bin) as f64;
                config.base.powf(-a / config.bins_per_octave as f64)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            MethodParams::Dfa { n } => {
                if *n == 0 {
                    return Err(Error::invalid("n must be at least 1"));
                }
            }
            MethodParams::Adfa { n_bins } | MethodParams::Mdfa { n_bins, .. } => {
                if *n_bins < 2 {
                    return Err(Error::invalid("n_bins must be at least 2"));
                }
            }
            MethodParams::Cqa { n_bins, .. } => {
                if *n_bins == 0 {
                    return Err(Error::invalid("n_bins must be at least 1"));
                }
            }
        }
        Ok(())
    }
}

/// Recompute one spectrum value by direct summation, evaluating every
/// complex exponential from its angle. No precomputed matrix, no power
/// recurrence: this is the independent reference the matrix path is checked
/// against, and the baseline the benchmark times.
pub fn direct_eval_oracle(params: &MethodParams, frame: &[f64], bin: usize) -> Result<Complex64> {
    params.validate()?;
    if bin >= params.n_bins() {
        return Err(Error::invalid(format!(
            "bin {} out of range for {} bins",
            bin,
            params.n_bins()
        )));
    }
    let step = match params {
        MethodParams::Dfa { n } => -2.0 * PI * bin as f64 / *n as f64,
        _ => -PI * params.center_freq(bin),
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (t, &x) in frame.iter().enumerate() {
        let theta = step * t as f64;
        let (s, c) = theta.sin_cos();
        acc += Complex64::new(c * x, s * x);
    }
    Ok(acc)
}

/// Whole-signal spectrogram over the oracle path; same framing and layout
/// as [`analyze_opts`].
pub fn oracle_spectrogram(
    params: &MethodParams,
    signal: &AudioBuffer,
    config: &FrameConfig,
    threads: usize,
) -> Result<Spectrogram> {
    config.validate()?;
    params.validate()?;
    let n_bins = params.n_bins();
    let data = run_frames(signal, config, threads, n_bins, |frame, out| {
        for (bin, slot) in out.iter_mut().enumerate() {
            *slot = direct_eval_oracle(params, frame, bin).expect("bin in range");
        }
    })?;
    Ok(Spectrogram {
        method: params.method(),
        n_bins,
        n_frames: data.len() / n_bins,
        data,
        center_freqs: (0..n_bins).map(|b| params.center_freq(b)).collect(),
        sample_rate: signal.sample_rate() as f64,
        frame_len: config.frame_len,
        hop: config.hop(),
    })
}

/// Largest entrywise distance between two equally shaped spectrograms.
pub fn max_spectrogram_deviation(a: &Spectrogram, b: &Spectrogram) -> Result<f64> {
    if a.n_bins != b.n_bins || a.n_frames != b.n_frames {
        return Err(Error::invalid(format!(
            "shape mismatch: {}x{} vs {}x{}",
            a.n_bins, a.n_frames, b.n_bins, b.n_frames
        )));
    }
    Ok(a.data
        .iter()
        .zip(b.data.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Wall-clock comparison of the matrix path against the oracle path.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    /// Median seconds per full-signal analysis with the precomputed matrix.
    pub matrix_path_seconds: f64,
    /// Median seconds per full-signal analysis over the oracle path.
    pub naive_path_seconds: f64,
    /// naive / matrix; greater than 1 means the matrix path is faster.
    pub ratio: f64,
    pub repeats: usize,
    pub n_frames: usize,
    /// Largest disagreement found by the correctness gate.
    pub gate_max_deviation: f64,
}

/// Time both paths over identical work.
///
/// Both paths first compute the full spectrogram once and must agree within
/// `1e-9 * n_cols` absolute; timing only happens after that gate passes.
pub fn bench(
    matrix: &AnalysisMatrix,
    params: &MethodParams,
    signal: &AudioBuffer,
    config: &FrameConfig,
    repeats: usize,
    threads: usize,
) -> Result<BenchReport> {
    if repeats == 0 {
        return Err(Error::invalid("repeats must be at least 1"));
    }
    if params.method() != matrix.method() || params.n_bins() != matrix.n_bins() {
        return Err(Error::invalid(
            "oracle parameters disagree with the matrix under test",
        ));
    }

    let reference = analyze_opts(signal, matrix, config, threads)?;
    let oracle = oracle_spectrogram(params, signal, config, threads)?;
    let gate_max_deviation = max_spectrogram_deviation(&reference, &oracle)?;
    let tolerance = ORACLE_TOLERANCE_PER_COL * matrix.n_cols() as f64;
    if gate_max_deviation > tolerance {
        return Err(Error::Verification(format!(
            "matrix and oracle paths disagree: max deviation {gate_max_deviation:e} \
             exceeds tolerance {tolerance:e}"
        )));
    }
    let n_frames = reference.n_frames;
    drop(reference);
    drop(oracle);

    let matrix_path_seconds = median_seconds(repeats, || {
        std::hint::black_box(analyze_opts(signal, matrix, config, threads).expect("gated"));
    });
    let naive_path_seconds = median_seconds(repeats, || {
        std::hint::black_box(oracle_spectrogram(params, signal, config, threads).expect("gated"));
    });

    Ok(BenchReport {
        matrix_path_seconds,
        naive_path_seconds,
        ratio: naive_path_seconds / matrix_path_seconds,
        repeats,
        n_frames,
        gate_max_deviation,
    })
}

fn median_seconds(repeats: usize, mut run: impl FnMut()) -> f64 {
    let mut times: Vec<f64> = (0..repeats)
        .map(|_| {
            let start = Instant::now();
            run();
            start.elapsed().as_secs_f64()
        })
        .collect();
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        0.5 * (times[mid - 1] + times[mid])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{build_adfa_matrix, build_cqa_matrix, build_dfa_matrix, Normalization};
    use crate::framing::{TailPolicy, WindowKind};
    use crate::synth::{noise_samples, white_noise, Lcg};

    fn rect_config(frame_len: usize, overlap: usize) -> FrameConfig {
        FrameConfig {
            frame_len,
            overlap,
            window: WindowKind::Rectangular,
            tail_policy: TailPolicy::DropPartial,
        }
    }

    #[test]
    fn all_ones_frame_concentrates_in_dc_bin() {
        let m = build_adfa_matrix(5, 8, Normalization::None).unwrap();
        let out = analyze_frame(&m, &[1.0; 8]).unwrap();
        assert!((out[0] - Complex64::new(8.0, 0.0)).norm() < 1e-12);
        for (bin, z) in out.iter().enumerate().skip(1) {
            assert!(z.norm() < 1e-12, "bin {bin} = {z}");
        }
    }

    #[test]
    fn zero_frame_gives_zero_spectrum() {
        let m = build_adfa_matrix(5, 8, Normalization::None).unwrap();
        let out = analyze_frame(&m, &[0.0; 8]).unwrap();
        assert!(out.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn cosine_tone_lands_in_its_bin() {
        // frame[n] = cos(pi*k*n/4) with k = 2: |z[2]| = 4, other interior
        // bins vanish. Cross-checked against the direct oracle.
        let m = build_adfa_matrix(5, 8, Normalization::None).unwrap();
        let frame: Vec<f64> = (0..8).map(|n| (PI * 2.0 * n as f64 / 4.0).cos()).collect();
        let out = analyze_frame(&m, &frame).unwrap();
        assert!((out[2].norm() - 4.0).abs() < 1e-9);
        assert!(out[1].norm() < 1e-9);
        assert!(out[3].norm() < 1e-9);

        let params = MethodParams::Adfa { n_bins: 5 };
        for (bin, z) in out.iter().enumerate() {
            let oracle = direct_eval_oracle(&params, &frame, bin).unwrap();
            assert!((z - oracle).norm() < 1e-9 * 8.0);
        }
    }

    #[test]
    fn frame_length_mismatch_is_rejected() {
        let m = build_adfa_matrix(5, 8, Normalization::None).unwrap();
        assert!(analyze_frame(&m, &[0.0; 7]).is_err());
    }

    #[test]
    fn analyze_paper_configuration_shape() {
        let signal = white_noise(16000, 1.0).unwrap();
        let m = build_adfa_matrix(863, 1724, Normalization::None).unwrap();
        let spec = analyze(&signal, &m, &FrameConfig::default()).unwrap();
        assert_eq!(spec.n_bins, 863);
        assert_eq!(spec.n_frames, 9);
        assert_eq!(spec.data.len(), 863 * 9);
        assert_eq!(spec.hop, 1596);
    }

    #[test]
    fn empty_signal_gives_empty_spectrogram() {
        let signal = AudioBuffer::new(16000, vec![]).unwrap();
        let m = build_adfa_matrix(863, 1724, Normalization::None).unwrap();
        let spec = analyze(&signal, &m, &FrameConfig::default()).unwrap();
        assert_eq!(spec.n_bins, 863);
        assert_eq!(spec.n_frames, 0);
        assert!(spec.data.is_empty());
    }

    #[test]
    fn analyze_columns_match_analyze_frame() {
        let signal = AudioBuffer::new(8000, noise_samples(64, 3)).unwrap();
        let config = rect_config(16, 4);
        let m = build_adfa_matrix(9, 16, Normalization::None).unwrap();
        let spec = analyze(&signal, &m, &config).unwrap();
        let fs = crate::framing::frames(&signal, &config).unwrap();
        assert_eq!(spec.n_frames, fs.len());
        for (k, frame) in fs.iter().enumerate() {
            let direct = analyze_frame(&m, frame).unwrap();
            assert_eq!(spec.column(k), direct.as_slice());
        }
    }

    #[test]
    fn analyze_is_deterministic_and_thread_invariant() {
        let signal = AudioBuffer::new(8000, noise_samples(2000, 11)).unwrap();
        let config = FrameConfig {
            frame_len: 128,
            overlap: 32,
            ..FrameConfig::default()
        };
        let m = build_adfa_matrix(65, 128, Normalization::None).unwrap();
        let a = analyze_opts(&signal, &m, &config, 1).unwrap();
        let b = analyze_opts(&signal, &m, &config, 1).unwrap();
        assert_eq!(a, b);
        for threads in [2, 3, 8] {
            let c = analyze_opts(&signal, &m, &config, threads).unwrap();
            assert_eq!(a, c, "threads={threads} changed the output");
        }
    }

    #[test]
    fn analyze_frame_is_linear() {
        let m = build_adfa_matrix(9, 16, Normalization::None).unwrap();
        let mut rng = Lcg::new(21);
        let x: Vec<f64> = (0..16).map(|_| rng.next_sample()).collect();
        let y: Vec<f64> = (0..16).map(|_| rng.next_sample()).collect();
        let (alpha, beta) = (0.75, -1.25);
        let combined: Vec<f64> = x
            .iter()
            .zip(y.iter())
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let fx = analyze_frame(&m, &x).unwrap();
        let fy = analyze_frame(&m, &y).unwrap();
        let fc = analyze_frame(&m, &combined).unwrap();
        for r in 0..9 {
            let expected = alpha * fx[r] + beta * fy[r];
            let scale = expected.norm().max(1.0);
            assert!((fc[r] - expected).norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn real_frame_is_real_at_dc_and_nyquist_rows() {
        let m = build_adfa_matrix(9, 16, Normalization::None).unwrap();
        let frame = noise_samples(16, 5);
        let out = analyze_frame(&m, &frame).unwrap();
        assert_eq!(out[0].im, 0.0);
        assert_eq!(out[8].im, 0.0);
    }

    #[test]
    fn log_power_values() {
        let signal = AudioBuffer::new(8000, vec![0.0; 32]).unwrap();
        let m = build_adfa_matrix(5, 8, Normalization::None).unwrap();
        let spec = analyze(&signal, &m, &rect_config(8, 0)).unwrap();
        let lp = log_power(&spec, DEFAULT_FLOOR_EPS).unwrap();
        assert!(lp.data.iter().all(|&v| v == DEFAULT_FLOOR_EPS.ln()));

        // |z| = 1 -> 0, |z| = e -> 2.
        let mut unit = spec.clone();
        unit.data.fill(Complex64::new(0.0, 1.0));
        assert!(log_power(&unit, DEFAULT_FLOOR_EPS)
            .unwrap()
            .data
            .iter()
            .all(|&v| v == 0.0));
        let mut euler = spec;
        euler.data.fill(Complex64::new(std::f64::consts::E, 0.0));
        assert!(log_power(&euler, DEFAULT_FLOOR_EPS)
            .unwrap()
            .data
            .iter()
            .all(|&v| (v - 2.0).abs() < 1e-12));
    }

    #[test]
    fn log_power_rejects_bad_eps() {
        let signal = AudioBuffer::new(8000, vec![0.0; 8]).unwrap();
        let m = build_adfa_matrix(5, 8, Normalization::None).unwrap();
        let spec = analyze(&signal, &m, &rect_config(8, 0)).unwrap();
        assert!(log_power(&spec, 0.0).is_err());
        assert!(log_power(&spec, -1.0).is_err());
    }

    #[test]
    fn oracle_delta_input() {
        let params = MethodParams::Dfa { n: 4 };
        let frame = [1.0, 0.0, 0.0, 0.0];
        for bin in 0..4 {
            let z = direct_eval_oracle(&params, &frame, bin).unwrap();
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn oracle_agrees_with_matrix_path() {
        let mel = MelConfig::new(16000.0, crate::basis::MelFormula::Htk);
        let cq = CqConfig::default();
        let cases: Vec<(AnalysisMatrix, MethodParams)> = vec![
            (build_dfa_matrix(16).unwrap(), MethodParams::Dfa { n: 16 }),
            (
                build_adfa_matrix(9, 16, Normalization::None).unwrap(),
                MethodParams::Adfa { n_bins: 9 },
            ),
            (
                crate::basis::build_mdfa_matrix(9, 16, &mel, Normalization::None).unwrap(),
                MethodParams::Mdfa {
                    n_bins: 9,
                    config: mel,
                },
            ),
            (
                build_cqa_matrix(97, 16, &cq, Normalization::None).unwrap(),
                MethodParams::Cqa {
                    n_bins: 97,
                    config: cq,
                },
            ),
        ];
        let mut rng = Lcg::new(99);
        for (matrix, params) in &cases {
            let frame: Vec<f64> = (0..16).map(|_| rng.next_sample()).collect();
            let out = analyze_frame(matrix, &frame).unwrap();
            for (bin, z) in out.iter().enumerate() {
                let oracle = direct_eval_oracle(params, &frame, bin).unwrap();
                assert!(
                    (z - oracle).norm() <= 1e-9 * 16.0,
                    "{} bin {} differs",
                    matrix.method().name(),
                    bin
                );
            }
        }
    }

    #[test]
    fn oracle_rejects_out_of_range_bin() {
        let params = MethodParams::Adfa { n_bins: 5 };
        assert!(direct_eval_oracle(&params, &[0.0; 8], 5).is_err());
    }

    #[test]
    fn bench_reports_median_and_gates_correctness() {
        let signal = white_noise(8000, 0.25).unwrap();
        let config = rect_config(64, 16);
        let m = build_adfa_matrix(33, 64, Normalization::None).unwrap();
        let params = MethodParams::Adfa { n_bins: 33 };
        let report = bench(&m, &params, &signal, &config, 3, 1).unwrap();
        assert_eq!(report.repeats, 3);
        assert!(report.matrix_path_seconds > 0.0);
        assert!(report.naive_path_seconds > 0.0);
        assert!(report.ratio > 0.0);
        assert!(report.gate_max_deviation <= 1e-9 * 64.0);
    }

    #[test]
    fn bench_rejects_mismatched_params() {
        let signal = white_noise(8000, 0.1).unwrap();
        let config = rect_config(64, 16);
        let m = build_adfa_matrix(33, 64, Normalization::None).unwrap();
        let params = MethodParams::Adfa { n_bins: 17 };
        assert!(bench(&m, &params, &signal, &config, 1, 1).is_err());
    }
}
