//! Overlapping frame extraction and window functions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::io::AudioBuffer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowKind {
    #[default]
    Blackman,
    Hann,
    Rectangular,
}

impl WindowKind {
    pub fn name(self) -> &'static str {
        match self {
            WindowKind::Blackman => "blackman",
            WindowKind::Hann => "hann",
            WindowKind::Rectangular => "rectangular",
        }
    }
}

/// What to do with trailing samples that do not fill a whole frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailPolicy {
    /// Drop the trailing partial frame.
    #[default]
    DropPartial,
    /// Keep it, zero-filled to full length before windowing.
    ZeroPadLast,
}

/// Framing parameters. `overlap` counts the samples shared by consecutive
/// frames; the start-index stride is `hop() = frame_len - overlap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameConfig {
    pub frame_len: usize,
    pub overlap: usize,
    pub window: WindowKind,
    pub tail_policy: TailPolicy,
}

impl Default for FrameConfig {
    fn default() -> FrameConfig {
        FrameConfig {
            frame_len: 1724,
            overlap: 128,
            window: WindowKind::Blackman,
            tail_policy: TailPolicy::DropPartial,
        }
    }
}

impl FrameConfig {
    pub fn hop(&self) -> usize {
        self.frame_len - self.overlap
    }

    pub fn validate(&self) -> Result<()> {
        if self.frame_len == 0 {
            return Err(Error::invalid("frame_len must be at least 1"));
        }
        if self.overlap >= self.frame_len {
            return Err(Error::invalid(format!(
                "overlap ({}) must be smaller than frame_len ({})",
                self.overlap, self.frame_len
            )));
        }
        Ok(())
    }
}

/// Sample a symmetric window of the given length.
///
/// Blackman uses the classic 0.42 / 0.5 / 0.08 coefficients; the terms are
/// ordered `(0.42 + 0.08*cos2) - 0.5*cos1` so the endpoints evaluate to
/// exactly 0.0 and the midpoint of an odd-length window to exactly 1.0.
/// The second half is mirrored from the first, so symmetry is exact.
pub fn make_window(kind: WindowKind, length: usize) -> Result<Vec<f64>> {
    if length == 0 {
        return Err(Error::invalid("window length must be at least 1"));
    }
    if kind == WindowKind::Rectangular {
        return Ok(vec![1.0; length]);
    }
    if length < 2 {
        return Err(Error::invalid(format!(
            "{} window needs length >= 2, got {}",
            kind.name(),
            length
        )));
    }
    let mut w = vec![0.0; length];
    let denom = (length - 1) as f64;
    for i in 0..=(length - 1) / 2 {
        let x = i as f64 / denom;
        let value = match kind {
            WindowKind::Blackman => {
                let c1 = (2.0 * PI * x).cos();
                let c2 = (4.0 * PI * x).cos();
                (0.42 + 0.08 * c2) - 0.5 * c1
            }
            WindowKind::Hann => 0.5 - 0.5 * (2.0 * PI * x).cos(),
            WindowKind::Rectangular => unreachable!(),
        };
        w[i] = value;
        w[length - 1 - i] = value;
    }
    Ok(w)
}

/// Number of frames the config extracts from a signal of the given length.
pub fn num_frames(signal_len: usize, config: &FrameConfig) -> usize {
    let hop = config.hop();
    match config.tail_policy {
        TailPolicy::DropPartial => {
            if signal_len >= config.frame_len {
                (signal_len - config.frame_len) / hop + 1
            } else {
                0
            }
        }
        TailPolicy::ZeroPadLast => {
            if signal_len > 0 {
                signal_len.saturating_sub(config.frame_len).div_ceil(hop) + 1
            } else {
                0
            }
        }
    }
}

/// Copy frame `k` (starting at `k * hop`) into `out` and apply the window.
/// Samples past the end of the signal read as zero.
pub(crate) fn fill_frame(samples: &[f64], window: &[f64], hop: usize, k: usize, out: &mut [f64]) {
    let start = k * hop;
    for (i, slot) in out.iter_mut().enumerate() {
        let s = samples.get(start + i).copied().unwrap_or(0.0);
        *slot = s * window[i];
    }
}

/// Extract all windowed frames of a signal.
pub fn frames(signal: &AudioBuffer, config: &FrameConfig) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    let window = make_window(config.window, config.frame_len)?;
    let n = num_frames(signal.samples().len(), config);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut frame = vec![0.0; config.frame_len];
        fill_frame(signal.samples(), &window, config.hop(), k, &mut frame);
        out.push(frame);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn audio(samples: Vec<f64>) -> AudioBuffer {
        AudioBuffer::new(8000, samples).unwrap()
    }

    #[test]
    fn blackman_endpoints_are_exactly_zero() {
        for len in [2usize, 5, 64, 1724] {
            let w = make_window(WindowKind::Blackman, len).unwrap();
            assert_eq!(w[0], 0.0);
            assert_eq!(w[len - 1], 0.0);
        }
    }

    #[test]
    fn blackman_odd_midpoint_is_exactly_one() {
        for len in [5usize, 33, 1723] {
            let w = make_window(WindowKind::Blackman, len).unwrap();
            assert_eq!(w[(len - 1) / 2], 1.0);
        }
    }

    #[test]
    fn windows_are_symmetric() {
        for kind in [WindowKind::Blackman, WindowKind::Hann] {
            let w = make_window(kind, 1724).unwrap();
            for i in 0..w.len() {
                assert!((w[i] - w[w.len() - 1 - i]).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn rectangular_is_all_ones() {
        let w = make_window(WindowKind::Rectangular, 7).unwrap();
        assert!(w.iter().all(|&v| v == 1.0));
        assert_eq!(make_window(WindowKind::Rectangular, 1).unwrap(), vec![1.0]);
    }

    #[test]
    fn tapering_window_needs_two_points() {
        assert!(make_window(WindowKind::Blackman, 1).is_err());
        assert!(make_window(WindowKind::Hann, 1).is_err());
        assert!(make_window(WindowKind::Rectangular, 0).is_err());
    }

    #[test]
    fn num_frames_paper_configuration() {
        let config = FrameConfig::default();
        assert_eq!(config.hop(), 1596);
        assert_eq!(num_frames(16000, &config), 9);
        assert_eq!(num_frames(1723, &config), 0);
        assert_eq!(num_frames(1724, &config), 1);
        assert_eq!(num_frames(0, &config), 0);
    }

    #[test]
    fn num_frames_zero_pad_policy() {
        let config = FrameConfig {
            tail_policy: TailPolicy::ZeroPadLast,
            ..FrameConfig::default()
        };
        assert_eq!(num_frames(0, &config), 0);
        assert_eq!(num_frames(1, &config), 1);
        assert_eq!(num_frames(1724, &config), 1);
        assert_eq!(num_frames(1725, &config), 2);
        assert_eq!(num_frames(16000, &config), 10);
    }

    #[test]
    fn constant_signal_rectangular_frames_are_ones() {
        let config = FrameConfig {
            frame_len: 4,
            overlap: 0,
            window: WindowKind::Rectangular,
            tail_policy: TailPolicy::DropPartial,
        };
        let fs = frames(&audio(vec![1.0; 12]), &config).unwrap();
        assert_eq!(fs.len(), 3);
        for f in &fs {
            assert_eq!(f, &vec![1.0; 4]);
        }
    }

    #[test]
    fn blackman_frame_starts_at_zero() {
        let config = FrameConfig {
            frame_len: 8,
            overlap: 0,
            window: WindowKind::Blackman,
            tail_policy: TailPolicy::DropPartial,
        };
        let fs = frames(&audio((0..16).map(|i| (i as f64).sin()).collect()), &config).unwrap();
        assert_eq!(fs[0][0], 0.0);
    }

    #[test]
    fn frame_starts_follow_hop() {
        let config = FrameConfig {
            frame_len: 4,
            overlap: 2,
            window: WindowKind::Rectangular,
            tail_policy: TailPolicy::DropPartial,
        };
        let signal: Vec<f64> = (0..10).map(|i| i as f64 / 16.0).collect();
        let fs = frames(&audio(signal.clone()), &config).unwrap();
        assert_eq!(fs.len(), 4);
        for (k, f) in fs.iter().enumerate() {
            let start = k * 2;
            assert_eq!(f.as_slice(), &signal[start..start + 4]);
        }
        // Consecutive frames share exactly `overlap` source samples.
        for w in fs.windows(2) {
            assert_eq!(&w[0][2..], &w[1][..2]);
        }
    }

    #[test]
    fn zero_pad_fills_final_frame() {
        let config = FrameConfig {
            frame_len: 4,
            overlap: 0,
            window: WindowKind::Rectangular,
            tail_policy: TailPolicy::ZeroPadLast,
        };
        let fs = frames(&audio(vec![1.0; 6]), &config).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[1], vec![1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let config = FrameConfig {
            frame_len: 4,
            overlap: 4,
            window: WindowKind::Rectangular,
            tail_policy: TailPolicy::DropPartial,
        };
        assert!(config.validate().is_err());
        assert!(frames(&audio(vec![0.0; 8]), &config).is_err());
    }
}
