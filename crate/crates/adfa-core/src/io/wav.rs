//! Minimal RIFF/WAVE reader for 16-bit integer PCM.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::io::AudioBuffer;

/// Read a 16-bit PCM WAV file as mono audio.
///
/// Multi-channel input is mixed down by the arithmetic mean of the channels.
/// Anything that is not integer PCM at 16 bits per sample is rejected with
/// the offending format code.
pub fn read_wav(path: impl AsRef<Path>) -> Result<AudioBuffer> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::NotFound(path.to_path_buf())
        } else {
            Error::Io(e)
        }
    })?;
    parse_wav(&bytes)
}

struct FmtChunk {
    channels: usize,
    sample_rate: u32,
}

pub(crate) fn parse_wav(bytes: &[u8]) -> Result<AudioBuffer> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::Corrupt("not a RIFF/WAVE file".into()));
    }

    let mut fmt: Option<FmtChunk> = None;
    let mut pos = 12;
    while pos < bytes.len() {
        if pos + 8 > bytes.len() {
            return Err(Error::Corrupt("truncated chunk header".into()));
        }
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        let body_end = body_start
            .checked_add(size)
            .ok_or_else(|| Error::Corrupt("chunk size overflow".into()))?;
        if body_end > bytes.len() {
            return Err(Error::Corrupt(format!(
                "truncated {} chunk: declared {} bytes, {} available",
                String::from_utf8_lossy(id),
                size,
                bytes.len() - body_start
            )));
        }
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => fmt = Some(parse_fmt(body)?),
            b"data" => {
                let fmt =
                    fmt.ok_or_else(|| Error::Corrupt("data chunk before fmt chunk".into()))?;
                return decode_pcm16(body, &fmt);
            }
            _ => {}
        }
        // RIFF chunks are word-aligned; odd sizes carry a pad byte.
        pos = body_end + (size & 1);
    }
    Err(Error::Corrupt("no data chunk".into()))
}

fn parse_fmt(body: &[u8]) -> Result<FmtChunk> {
    if body.len() < 16 {
        return Err(Error::Corrupt("fmt chunk too short".into()));
    }
    let format_code = u16::from_le_bytes(body[0..2].try_into().unwrap());
    let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
    let sample_rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
    let bits_per_sample = u16::from_le_bytes(body[14..16].try_into().unwrap());
    if format_code != 1 {
        return Err(Error::UnsupportedFormat(format!(
            "format code {format_code} (only PCM, code 1, is supported)"
        )));
    }
    if bits_per_sample != 16 {
        return Err(Error::UnsupportedFormat(format!(
            "format code {format_code} with {bits_per_sample} bits per sample (only 16 supported)"
        )));
    }
    if channels == 0 {
        return Err(Error::Corrupt("fmt chunk declares zero channels".into()));
    }
    if sample_rate == 0 {
        return Err(Error::Corrupt("fmt chunk declares zero sample rate".into()));
    }
    Ok(FmtChunk {
        channels: channels as usize,
        sample_rate,
    })
}

fn decode_pcm16(body: &[u8], fmt: &FmtChunk) -> Result<AudioBuffer> {
    let frame_bytes = 2 * fmt.channels;
    if !body.len().is_multiple_of(frame_bytes) {
        return Err(Error::Corrupt(format!(
            "data chunk length {} is not a multiple of the {}-byte sample frame",
            body.len(),
            frame_bytes
        )));
    }
    let n_frames = body.len() / frame_bytes;
    let mut samples = Vec::with_capacity(n_frames);
    for frame in body.chunks_exact(frame_bytes) {
        let mut acc = 0.0;
        for ch in frame.chunks_exact(2) {
            let v = i16::from_le_bytes([ch[0], ch[1]]);
            acc += v as f64 / 32768.0;
        }
        samples.push(acc / fmt.channels as f64);
    }
    AudioBuffer::new(fmt.sample_rate, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hand-built PCM WAV bytes: the only fixture generator the tests need.
    pub(crate) fn wav_bytes(sample_rate: u32, channels: u16, bits: u16, frames: &[i16]) -> Vec<u8> {
        let bytes_per_sample = (bits / 8) as u32;
        let block_align = channels as u32 * bytes_per_sample;
        let data_len = frames.len() as u32 * 2;
        let mut out = Vec::new();
        out.extend_from_slice(b"RIFF");
        out.extend_from_slice(&(36 + data_len).to_le_bytes());
        out.extend_from_slice(b"WAVE");
        out.extend_from_slice(b"fmt ");
        out.extend_from_slice(&16u32.to_le_bytes());
        out.extend_from_slice(&1u16.to_le_bytes());
        out.extend_from_slice(&channels.to_le_bytes());
        out.extend_from_slice(&sample_rate.to_le_bytes());
        out.extend_from_slice(&(sample_rate * block_align).to_le_bytes());
        out.extend_from_slice(&(block_align as u16).to_le_bytes());
        out.extend_from_slice(&bits.to_le_bytes());
        out.extend_from_slice(b"data");
        out.extend_from_slice(&data_len.to_le_bytes());
        for v in frames {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    #[test]
    fn pcm16_scaling() {
        let bytes = wav_bytes(16000, 1, 16, &[0, 16384, -16384, -32768]);
        let audio = parse_wav(&bytes).unwrap();
        assert_eq!(audio.sample_rate(), 16000);
        assert_eq!(audio.samples(), &[0.0, 0.5, -0.5, -1.0]);
    }

    #[test]
    fn stereo_mixdown_is_channel_mean() {
        // Equal channels: the mean equals either channel.
        let bytes = wav_bytes(8000, 2, 16, &[32767, 32767, -16384, -16384]);
        let audio = parse_wav(&bytes).unwrap();
        assert_eq!(audio.samples(), &[32767.0 / 32768.0, -0.5]);

        let bytes = wav_bytes(8000, 2, 16, &[16384, -16384]);
        let audio = parse_wav(&bytes).unwrap();
        assert_eq!(audio.samples(), &[0.0]);
    }

    #[test]
    fn eight_bit_pcm_is_unsupported() {
        let bytes = wav_bytes(8000, 1, 8, &[0]);
        assert!(matches!(
            parse_wav(&bytes),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn non_pcm_format_code_is_reported() {
        let mut bytes = wav_bytes(8000, 1, 16, &[0]);
        bytes[20] = 3; // IEEE float
        match parse_wav(&bytes) {
            Err(Error::UnsupportedFormat(msg)) => assert!(msg.contains('3')),
            other => panic!("expected UnsupportedFormat, got {other:?}"),
        }
    }

    #[test]
    fn truncated_data_chunk_is_corrupt() {
        let mut bytes = wav_bytes(8000, 1, 16, &[1, 2, 3, 4]);
        bytes.truncate(bytes.len() - 3);
        assert!(matches!(parse_wav(&bytes), Err(Error::Corrupt(_))));
    }

    #[test]
    fn non_riff_is_corrupt() {
        assert!(matches!(
            parse_wav(b"ADFA this is not audio"),
            Err(Error::Corrupt(_))
        ));
    }

    #[test]
    fn missing_file_is_not_found() {
        assert!(matches!(
            read_wav("/nonexistent/path/audio.wav"),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn skips_unknown_chunks() {
        // Insert a LIST chunk between fmt and data.
        let tail = wav_bytes(8000, 1, 16, &[100]);
        let mut bytes = tail[..36].to_vec();
        bytes.extend_from_slice(b"LIST");
        bytes.extend_from_slice(&3u32.to_le_bytes());
        bytes.extend_from_slice(b"abc\0"); // odd size + pad byte
        bytes.extend_from_slice(&tail[36..]);
        let total = bytes.len() as u32 - 8;
        bytes[4..8].copy_from_slice(&total.to_le_bytes());
        let audio = parse_wav(&bytes).unwrap();
        assert_eq!(audio.samples().len(), 1);
    }
}
