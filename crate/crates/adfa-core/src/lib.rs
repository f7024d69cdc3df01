//! Matrix-based spectral analysis.
//!
//! Four transform families share one machinery: a complex analysis matrix
//! whose rows are consecutive powers of unit phasors, applied to windowed,
//! overlapping frames of audio.
//!
//! - **DFA** — the square N x N Fourier matrix.
//! - **ADFA** — an arbitrary number of output bins spaced linearly over
//!   [0, Nyquist]; the rows are orthogonal when `n_cols = 2 * (n_bins - 1)`.
//! - **MDFA** — bins spaced uniformly on the mel scale.
//! - **CQA** — bins spaced geometrically (constant Q), `bins_per_octave`
//!   per factor of `base`.
//!
//! ```
//! use adfa_core::{analyze, build_adfa_matrix, white_noise, FrameConfig, Normalization};
//!
//! let audio = white_noise(16000, 1.0).unwrap();
//! let matrix = build_adfa_matrix(863, 1724, Normalization::None).unwrap();
//! let spec = analyze(&audio, &matrix, &FrameConfig::default()).unwrap();
//! assert_eq!((spec.n_bins, spec.n_frames), (863, 9));
//! ```

pub mod basis;
pub mod engine;
pub mod error;
pub mod framing;
pub mod io;
pub mod synth;

pub use basis::{
    build_adfa_matrix, build_cqa_matrix, build_dfa_matrix, build_mdfa_matrix, hz_to_mel,
    mel_center_freqs, mel_to_hz, verify_orthogonality, AnalysisMatrix, CqConfig, MelConfig,
    MelFormula, Method, Normalization, OrthogonalityReport,
};
pub use engine::{
    analyze, analyze_frame, analyze_opts, bench, direct_eval_oracle, log_power,
    max_spectrogram_deviation, oracle_spectrogram, BenchReport, LogPowerSpectrogram, MethodParams,
    Spectrogram, DEFAULT_FLOOR_EPS, ORACLE_TOLERANCE_PER_COL,
};
pub use error::{Error, Result};
pub use framing::{frames, make_window, num_frames, FrameConfig, TailPolicy, WindowKind};
pub use io::{
    read_matrix, read_spectrogram, read_wav, write_log_power, write_matrix, write_spectrogram,
    AnySpectrogram, AudioBuffer, OutputFormat,
};
pub use synth::{white_noise, Lcg};
