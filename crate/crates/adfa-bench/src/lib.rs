//! Shared setup for the criterion benchmarks.

use adfa_core::{white_noise, AudioBuffer, FrameConfig, TailPolicy, WindowKind};

/// Seeded 16 kHz noise, identical across runs and machines.
pub fn demo_signal(seconds: f64) -> AudioBuffer {
    white_noise(16000, seconds).expect("valid duration")
}

/// Blackman framing with the standard 128-sample overlap.
pub fn frame_config(frame_len: usize) -> FrameConfig {
    FrameConfig {
        frame_len,
        overlap: 128.min(frame_len - 1),
        window: WindowKind::Blackman,
        tail_policy: TailPolicy::DropPartial,
    }
}

/// Raw analysis work in complex multiply-adds: bins * cols * frames.
pub fn work_elements(n_bins: usize, config: &FrameConfig, signal: &AudioBuffer) -> u64 {
    let frames = adfa_core::num_frames(signal.samples().len(), config) as u64;
    n_bins as u64 * config.frame_len as u64 * frames
}
