//! Construction of the four analysis matrices and the frequency mappings
//! (linear, mel, constant-Q) that parameterize their rows.
//!
//! All builders are pure functions; the matrices they return are immutable
//! and safe to share across threads.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which analysis family a matrix (or spectrogram) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Square N x N Fourier matrix.
    Dfa,
    /// Arbitrary bin count, linearly spaced rows over [0, Nyquist].
    Adfa,
    /// Rows spaced uniformly on the mel scale.
    Mdfa,
    /// Rows spaced geometrically (constant Q).
    Cqa,
}

impl Method {
    /// Stable on-disk code for the binary format.
    pub fn code(self) -> u8 {
        match self {
            Method::Dfa => 0,
            Method::Adfa => 1,
            Method::Mdfa => 2,
            Method::Cqa => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Method> {
        match code {
            0 => Some(Method::Dfa),
            1 => Some(Method::Adfa),
            2 => Some(Method::Mdfa),
            3 => Some(Method::Cqa),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Dfa => "dfa",
            Method::Adfa => "adfa",
            Method::Mdfa => "mdfa",
            Method::Cqa => "cqa",
        }
    }
}

/// Whether matrix entries carry the 1/sqrt(n_cols) basis-vector factor.
/// The printed matrices omit it, so [`Normalization::None`] is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    None,
    InvSqrtCols,
}

/// Mel <-> Hz conversion convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MelFormula {
    /// m = 2595 * log10(1 + f/700)
    #[default]
    Htk,
    /// Linear below 1 kHz, logarithmic above.
    Slaney,
}

/// Parameters of the mel frequency warp used by MDFA.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MelConfig {
    /// Sample rate of the audio the matrix will analyze, in Hz.
    pub sample_rate: f64,
    pub formula: MelFormula,
}

impl MelConfig {
    pub fn new(sample_rate: f64, formula: MelFormula) -> MelConfig {
        MelConfig {
            sample_rate,
            formula,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.sample_rate.is_finite() || self.sample_rate <= 0.0 {
            return Err(Error::invalid(format!(
                "sample_rate must be positive and finite, got {}",
                self.sample_rate
            )));
        }
        Ok(())
    }
}

/// Parameters of the geometric frequency ladder used by CQA.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CqConfig {
    /// Ladder base B; adjacent bins differ by a factor B^(1/bins_per_octave).
    pub base: f64,
    /// Number of bins spanning one factor of `base` (an octave when base = 2).
    pub bins_per_octave: u32,
}

impl Default for CqConfig {
    fn default() -> CqConfig {
        CqConfig {
            base: 2.0,
            bins_per_octave: 96,
        }
    }
}

impl CqConfig {
    fn validate(&self) -> Result<()> {
        if !self.base.is_finite() || self.base <= 1.0 {
            return Err(Error::invalid(format!(
                "base must be a finite value greater than 1, got {}",
                self.base
            )));
        }
        if self.bins_per_octave == 0 {
            return Err(Error::invalid("bins_per_octave must be at least 1"));
        }
        Ok(())
    }
}

/// A complex analysis matrix together with its row parameterization.
///
/// Row `r` holds consecutive powers of a unit phasor: `entry(r, n) = w_r^n`
/// with `w_r = exp(-i*pi*center_freqs[r])` for ADFA/MDFA/CQA. For DFA,
/// `entry(m, n) = exp(-2*pi*i*m*n / n_bins)` and `center_freqs[m] = m/n_bins`
/// is in cycles per sample rather than fraction of Nyquist, since DFA rows
/// sweep the full circle instead of the half circle the other methods span.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisMatrix {
    method: Method,
    n_bins: usize,
    n_cols: usize,
    entries: Vec<Complex64>, // row-major
    center_freqs: Vec<f64>,
    normalization: Normalization,
}

impl AnalysisMatrix {
    pub fn method(&self) -> Method {
        self.method
    }

    /// Number of output frequency components (rows).
    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    /// Expected input frame length (columns).
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Per-bin center frequency, ascending. Fraction of Nyquist in [0, 1]
    /// for ADFA/MDFA/CQA; cycles per sample for DFA.
    pub fn center_freqs(&self) -> &[f64] {
        &self.center_freqs
    }

    /// Row-major entry storage.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n_cols + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.n_cols..(row + 1) * self.n_cols]
    }

    pub(crate) fn from_parts(
        method: Method,
        n_bins: usize,
        n_cols: usize,
        entries: Vec<Complex64>,
        center_freqs: Vec<f64>,
        normalization: Normalization,
    ) -> Result<AnalysisMatrix> {
        if n_bins == 0 || n_cols == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if entries.len() != n_bins * n_cols || center_freqs.len() != n_bins {
            return Err(Error::invalid("matrix buffers disagree with dimensions"));
        }
        Ok(AnalysisMatrix {
            method,
            n_bins,
            n_cols,
            entries,
            center_freqs,
            normalization,
        })
    }
}

/// `exp(-i*pi*x)`, exact at quarter-turn multiples so the +-1 and +-i entries
/// of the printed matrices come out bit-exact.
fn unit_phasor(half_turns: f64) -> Complex64 {
    let mut r = half_turns % 2.0;
    if r < 0.0 {
        r += 2.0;
    }
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if r == 0.5 {
        Complex64::new(0.0, -1.0)
    } else if r == 1.0 {
        Complex64::new(-1.0, 0.0)
    } else if r == 1.5 {
        Complex64::new(0.0, 1.0)
    } else {
        let (s, c) = (PI * r).sin_cos();
        Complex64::new(c, -s)
    }
}

fn scale_factor(normalization: Normalization, n_cols: usize) -> f64 {
    match normalization {
        Normalization::None => 1.0,
        Normalization::InvSqrtCols => 1.0 / (n_cols as f64).sqrt(),
    }
}

/// Build the square N x N Fourier matrix, `entry(m, n) = exp(-2*pi*i*m*n/N)`.
pub fn build_dfa_matrix(n: usize) -> Result<AnalysisMatrix> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let mut entries = Vec::with_capacity(n * n);
    for m in 0..n {
        for k in 0..n {
            // Reduce the phase index in exact integer arithmetic; the angle
            // then never exceeds one turn.
            let rem = (m as u64 * k as u64) % n as u64;
            entries.push(unit_phasor(2.0 * rem as f64 / n as f64));
        }
    }
    let center_freqs = (0..n).map(|m| m as f64 / n as f64).collect();
    AnalysisMatrix::from_parts(
        Method::Dfa,
        n,
        n,
        entries,
        center_freqs,
        Normalization::None,
    )
}

/// Build the N2 x N1 analysis matrix with rows `w_a^n`,
/// `w_a = exp(-i*pi*a/(n_bins-1))`.
///
/// With `n_cols = 2*(n_bins-1)` the rows form an orthogonal set; any other
/// column count is the column-truncated/extended variant of that matrix.
pub fn build_adfa_matrix(
    n_bins: usize,
    n_cols: usize,
    normalization: Normalization,
) -> Result<AnalysisMatrix> {
    if n_bins < 2 {
        return Err(Error::invalid("n_bins must be at least 2"));
    }
    if n_cols == 0 {
        return Err(Error::invalid("n_cols must be at least 1"));
    }
    let scale = scale_factor(normalization, n_cols);
    let denom = (n_bins - 1) as u64;
    let period = 2 * denom;
    let mut entries = Vec::with_capacity(n_bins * n_cols);
    for a in 0..n_bins {
        for t in 0..n_cols {
            let rem = (a as u64 * t as u64) % period;
            entries.push(scale * unit_phasor(rem as f64 / denom as f64));
        }
    }
    let center_freqs = (0..n_bins)
        .map(|a| a as f64 / (n_bins - 1) as f64)
        .collect();
    AnalysisMatrix::from_parts(
        Method::Adfa,
        n_bins,
        n_cols,
        entries,
        center_freqs,
        normalization,
    )
}

/// Convert a frequency in Hz to mel units.
pub fn hz_to_mel(hz: f64, formula: MelFormula) -> f64 {
    match formula {
        MelFormula::Htk => 2595.0 * (1.0 + hz / 700.0).log10(),
        MelFormula::Slaney => {
            let f_sp = 200.0 / 3.0;
            let min_log_hz = 1000.0;
            let min_log_mel = min_log_hz / f_sp;
            let logstep = 6.4f64.ln() / 27.0;
            if hz >= min_log_hz {
                min_log_mel + (hz / min_log_hz).ln() / logstep
            } else {
                hz / f_sp
            }
        }
    }
}

/// Convert mel units back to Hz.
pub fn mel_to_hz(mel: f64, formula: MelFormula) -> f64 {
    match formula {
        MelFormula::Htk => 700.0 * (10.0f64.powf(mel / 2595.0) - 1.0),
        MelFormula::Slaney => {
            let f_sp = 200.0 / 3.0;
            let min_log_hz = 1000.0;
            let min_log_mel = min_log_hz / f_sp;
            let logstep = 6.4f64.ln() / 27.0;
            if mel >= min_log_mel {
                min_log_hz * (logstep * (mel - min_log_mel)).exp()
            } else {
                f_sp * mel
            }
        }
    }
}

/// Per-bin center frequencies in Hz, spaced uniformly on the mel scale from
/// 0 to Nyquist. The endpoints are pinned to exactly 0 and `sample_rate / 2`.
pub fn mel_center_freqs(n_bins: usize, config: &MelConfig) -> Result<Vec<f64>> {
    if n_bins < 2 {
        return Err(Error::invalid("n_bins must be at least 2"));
    }
    config.validate()?;
    let nyquist = config.sample_rate / 2.0;
    let mel_max = hz_to_mel(nyquist, config.formula);
    let denom = (n_bins - 1) as f64;
    let mut freqs = Vec::with_capacity(n_bins);
    for a in 0..n_bins {
        let hz = if a == 0 {
            0.0
        } else if a == n_bins - 1 {
            nyquist
        } else {
            mel_to_hz(a as f64 / denom * mel_max, config.formula)
        };
        freqs.push(hz);
    }
    Ok(freqs)
}

/// Build the mel-warped analysis matrix: row `a` has
/// `w_a = exp(-i*pi*m_a/(sample_rate/2))` with `m_a` from [`mel_center_freqs`].
pub fn build_mdfa_matrix(
    n_bins: usize,
    n_cols: usize,
    config: &MelConfig,
    normalization: Normalization,
) -> Result<AnalysisMatrix> {
    if n_cols == 0 {
        return Err(Error::invalid("n_cols must be at least 1"));
    }
    let hz = mel_center_freqs(n_bins, config)?;
    let nyquist = config.sample_rate / 2.0;
    let center_freqs: Vec<f64> = hz.iter().map(|f| f / nyquist).collect();
    let entries = phasor_power_rows(&center_freqs, n_cols, normalization);
    AnalysisMatrix::from_parts(
        Method::Mdfa,
        n_bins,
        n_cols,
        entries,
        center_freqs,
        normalization,
    )
}

/// Build the constant-Q analysis matrix: bin `r` sits at center frequency
/// `base^(-(n_bins-1-r)/bins_per_octave)` of Nyquist, ascending, so the top
/// bin is pinned at Nyquist and adjacent bins keep a constant ratio.
pub fn build_cqa_matrix(
    n_bins: usize,
    n_cols: usize,
    config: &CqConfig,
    normalization: Normalization,
) -> Result<AnalysisMatrix> {
    if n_bins == 0 {
        return Err(Error::invalid("n_bins must be at least 1"));
    }
    if n_cols == 0 {
        return Err(Error::invalid("n_cols must be at least 1"));
    }
    config.validate()?;
    let b = config.bins_per_octave as f64;
    let center_freqs: Vec<f64> = (0..n_bins)
        .map(|row| {
            let a = (n_bins - 1 - row) as f64;
            config.base.powf(-a / b)
        })
        .collect();
    let entries = phasor_power_rows(&center_freqs, n_cols, normalization);
    AnalysisMatrix::from_parts(
        Method::Cqa,
        n_bins,
        n_cols,
        entries,
        center_freqs,
        normalization,
    )
}

/// Rows of consecutive phasor powers for irrational center frequencies.
/// Each entry is evaluated from its own reduced angle rather than by a
/// power recurrence, so phase error does not accumulate along a row.
fn phasor_power_rows(
    center_freqs: &[f64],
    n_cols: usize,
    normalization: Normalization,
) -> Vec<Complex64> {
    let scale = scale_factor(normalization, n_cols);
    let mut entries = Vec::with_capacity(center_freqs.len() * n_cols);
    for &f in center_freqs {
        for t in 0..n_cols {
            entries.push(scale * unit_phasor(f * t as f64));
        }
    }
    entries
}

/// Result of the Gram-matrix orthogonality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalityReport {
    /// max over (j, k) of |gram(j, k) - delta_jk|.
    pub max_deviation: f64,
    /// True when the matrix satisfies a condition under which the rows are
    /// provably orthogonal: ADFA with n_cols = 2*(n_bins-1), or square DFA.
    pub guaranteed: bool,
}

/// Measure how far the scaled row Gram matrix is from the identity.
///
/// For unnormalized matrices the Gram is `(1/n_cols) * M * M^H`; for
/// `InvSqrtCols` matrices the scaling is already inside the entries.
/// Orthogonality is only guaranteed for ADFA under the square condition
/// (and for square DFA); any other matrix is measured all the same and
/// flagged via [`OrthogonalityReport::guaranteed`].
pub fn verify_orthogonality(matrix: &AnalysisMatrix) -> OrthogonalityReport {
    let n_bins = matrix.n_bins();
    let n_cols = matrix.n_cols();
    let scale = match matrix.normalization() {
        Normalization::None => 1.0 / n_cols as f64,
        Normalization::InvSqrtCols => 1.0,
    };
    let guaranteed = match matrix.method() {
        Method::Adfa => n_cols == 2 * (n_bins - 1),
        Method::Dfa => n_cols == n_bins,
        _ => false,
    };
    let mut max_deviation = 0.0f64;
    for j in 0..n_bins {
        let row_j = matrix.row(j);
        for k in j..n_bins {
            let row_k = matrix.row(k);
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row_j.iter().zip(row_k.iter()) {
                acc += a * b.conj();
            }
            let expected = if j == k { 1.0 } else { 0.0 };
            let dev = (scale * acc - expected).norm();
            if dev > max_deviation {
                max_deviation = dev;
            }
        }
    }
    OrthogonalityReport {
        max_deviation,
        guaranteed,
    }
}
