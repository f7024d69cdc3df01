//! Audio ingestion and the `ADFA` serialization format.
//!
//! Readers and writers are independent per file and keep no shared state;
//! concurrent writes to the same path are undefined.

mod format;
mod wav;

pub use format::{
    read_matrix, read_matrix_from, read_spectrogram, read_spectrogram_from, write_log_power,
    write_log_power_to, write_matrix, write_matrix_to, write_spectrogram, write_spectrogram_to,
    AnySpectrogram, OutputFormat, FORMAT_VERSION, MAGIC,
};
pub use wav::read_wav;

use crate::error::{Error, Result};

/// Mono audio: samples in [-1, 1) at a fixed sample rate.
///
/// All constructors in this crate produce samples inside [-1, 1); 16-bit PCM
/// decodes as `raw / 32768`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    sample_rate: u32,
    samples: Vec<f64>,
}

impl AudioBuffer {
    pub fn new(sample_rate: u32, samples: Vec<f64>) -> Result<AudioBuffer> {
        if sample_rate == 0 {
            return Err(Error::invalid("sample_rate must be positive"));
        }
        if let Some(bad) = samples.iter().find(|s| !s.is_finite()) {
            return Err(Error::invalid(format!("non-finite sample value {bad}")));
        }
        Ok(AudioBuffer {
            sample_rate,
            samples,
        })
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}
