//! The `ADFA` binary container and CSV export.
//!
//! Binary layout, all integers little-endian:
//!
//! ```text
//! offset  size        field
//! 0       4           magic bytes 'A' 'D' 'F' 'A'
//! 4       4           u32 version (currently 1)
//! 8       1           u8 method code (0=DFA, 1=ADFA, 2=MDFA, 3=CQA)
//! 9       1           u8 dtype (0 = complex as (re, im) f64 pairs, 1 = real f64)
//! 10      2           u16 reserved, must be 0
//! 12      4           u32 n_bins
//! 16      4           u32 n_frames (n_cols for matrix files)
//! 20      8           f64 sample_rate (0 for matrix files)
//! 28      4           u32 frame_len (n_cols for matrix files)
//! 32      4           u32 hop (0 for matrix files)
//! 36      8 * n_bins  f64 center frequencies
//! ...     payload     frame-major: frame 0's n_bins values, then frame 1, ...
//! ```
//!
//! Matrix files reuse the same envelope with one column per frame slot, so
//! the payload is the matrix in column-major order.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::basis::{AnalysisMatrix, Method, Normalization};
use crate::engine::{LogPowerSpectrogram, Spectrogram, DEFAULT_FLOOR_EPS};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"ADFA";
pub const FORMAT_VERSION: u32 = 1;

const DTYPE_COMPLEX: u8 = 0;
const DTYPE_REAL: u8 = 1;

/// On-disk representation choices for spectrogram output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Binary,
    Csv,
}

/// A spectrogram read back from disk: complex (dtype 0) or real (dtype 1).
#[derive(Debug, Clone, PartialEq)]
pub enum AnySpectrogram {
    Complex(Spectrogram),
    Real(LogPowerSpectrogram),
}

impl AnySpectrogram {
    pub fn method(&self) -> Method {
        match self {
            AnySpectrogram::Complex(s) => s.method,
            AnySpectrogram::Real(s) => s.method,
        }
    }

    pub fn n_bins(&self) -> usize {
        match self {
            AnySpectrogram::Complex(s) => s.n_bins,
            AnySpectrogram::Real(s) => s.n_bins,
        }
    }

    pub fn n_frames(&self) -> usize {
        match self {
            AnySpectrogram::Complex(s) => s.n_frames,
            AnySpectrogram::Real(s) => s.n_frames,
        }
    }

    pub fn as_complex(&self) -> Option<&Spectrogram> {
        match self {
            AnySpectrogram::Complex(s) => Some(s),
            AnySpectrogram::Real(_) => None,
        }
    }

    pub fn as_real(&self) -> Option<&LogPowerSpectrogram> {
        match self {
            AnySpectrogram::Real(s) => Some(s),
            AnySpectrogram::Complex(_) => None,
        }
    }
}

struct Header {
    method: Method,
    dtype: u8,
    n_bins: usize,
    n_frames: usize,
    sample_rate: f64,
    frame_len: usize,
    hop: usize,
}

fn as_u32(value: usize, what: &str) -> Result<u32> {
    u32::try_from(value)
        .map_err(|_| Error::invalid(format!("{what} = {value} is too large to serialize")))
}

fn write_header<W: Write>(w: &mut W, h: &Header) -> Result<()> {
    w.write_all(&MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&[h.method.code(), h.dtype])?;
    w.write_all(&0u16.to_le_bytes())?;
    w.write_all(&as_u32(h.n_bins, "n_bins")?.to_le_bytes())?;
    w.write_all(&as_u32(h.n_frames, "n_frames")?.to_le_bytes())?;
    w.write_all(&h.sample_rate.to_le_bytes())?;
    w.write_all(&as_u32(h.frame_len, "frame_len")?.to_le_bytes())?;
    w.write_all(&as_u32(h.hop, "hop")?.to_le_bytes())?;
    Ok(())
}

fn read_exact_or_corrupt<R: Read>(r: &mut R, buf: &mut [u8], what: &str) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::Corrupt(format!("truncated {what}"))
        } else {
            Error::Io(e)
        }
    })
}

fn read_u32<R: Read>(r: &mut R, what: &str) -> Result<u32> {
    let mut buf = [0u8; 4];
    read_exact_or_corrupt(r, &mut buf, what)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_f64<R: Read>(r: &mut R, what: &str) -> Result<f64> {
    let mut buf = [0u8; 8];
    read_exact_or_corrupt(r, &mut buf, what)?;
    Ok(f64::from_le_bytes(buf))
}

fn read_header<R: Read>(r: &mut R) -> Result<Header> {
    let mut magic = [0u8; 4];
    read_exact_or_corrupt(r, &mut magic, "magic")?;
    if magic != MAGIC {
        return Err(Error::NotAdfaFile);
    }
    let version = read_u32(r, "version")?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let mut codes = [0u8; 2];
    read_exact_or_corrupt(r, &mut codes, "method/dtype")?;
    let method = Method::from_code(codes[0])
        .ok_or_else(|| Error::Corrupt(format!("unknown method code {}", codes[0])))?;
    let dtype = codes[1];
    if dtype != DTYPE_COMPLEX && dtype != DTYPE_REAL {
        return Err(Error::Corrupt(format!("unknown dtype code {dtype}")));
    }
    let mut reserved = [0u8; 2];
    read_exact_or_corrupt(r, &mut reserved, "reserved field")?;
    if reserved != [0, 0] {
        return Err(Error::Corrupt("nonzero reserved field".into()));
    }
    let n_bins = read_u32(r, "n_bins")? as usize;
    let n_frames = read_u32(r, "n_frames")? as usize;
    let sample_rate = read_f64(r, "sample_rate")?;
    let frame_len = read_u32(r, "frame_len")? as usize;
    let hop = read_u32(r, "hop")? as usize;
    if n_bins == 0 {
        return Err(Error::Corrupt("header declares zero bins".into()));
    }
    Ok(Header {
        method,
        dtype,
        n_bins,
        n_frames,
        sample_rate,
        frame_len,
        hop,
    })
}

fn read_center_freqs<R: Read>(r: &mut R, n_bins: usize) -> Result<Vec<f64>> {
    let mut freqs = Vec::with_capacity(n_bins);
    for _ in 0..n_bins {
        freqs.push(read_f64(r, "center frequencies")?);
    }
    Ok(freqs)
}

fn expect_eof<R: Read>(r: &mut R) -> Result<()> {
    let mut probe = [0u8; 1];
    match r.read(&mut probe)? {
        0 => Ok(()),
        _ => Err(Error::Corrupt(
            "trailing bytes after declared payload".into(),
        )),
    }
}

fn payload_len(n_bins: usize, n_frames: usize) -> Result<usize> {
    n_bins
        .checked_mul(n_frames)
        .ok_or_else(|| Error::Corrupt("payload dimensions overflow".into()))
}

/// Write a complex spectrogram.
pub fn write_spectrogram(
    spec: &Spectrogram,
    path: impl AsRef<Path>,
    format: OutputFormat,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_spectrogram_to(spec, &mut w, format)?;
    w.flush()?;
    Ok(())
}

pub fn write_spectrogram_to<W: Write>(
    spec: &Spectrogram,
    w: &mut W,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Binary => {
            write_header(
                w,
                &Header {
                    method: spec.method,
                    dtype: DTYPE_COMPLEX,
                    n_bins: spec.n_bins,
                    n_frames: spec.n_frames,
                    sample_rate: spec.sample_rate,
                    frame_len: spec.frame_len,
                    hop: spec.hop,
                },
            )?;
            for f in &spec.center_freqs {
                w.write_all(&f.to_le_bytes())?;
            }
            for z in &spec.data {
                w.write_all(&z.re.to_le_bytes())?;
                w.write_all(&z.im.to_le_bytes())?;
            }
        }
        OutputFormat::Csv => {
            writeln!(w, "bin,frame,re,im")?;
            for frame in 0..spec.n_frames {
                for (bin, z) in spec.column(frame).iter().enumerate() {
                    writeln!(w, "{},{},{},{}", bin, frame, z.re, z.im)?;
                }
            }
        }
    }
    Ok(())
}

/// Write a log-power spectrogram. The floor used to compute it is process
/// metadata and is not part of the on-disk format.
pub fn write_log_power(
    spec: &LogPowerSpectrogram,
    path: impl AsRef<Path>,
    format: OutputFormat,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_log_power_to(spec, &mut w, format)?;
    w.flush()?;
    Ok(())
}

pub fn write_log_power_to<W: Write>(
    spec: &LogPowerSpectrogram,
    w: &mut W,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Binary => {
            write_header(
                w,
                &Header {
                    method: spec.method,
                    dtype: DTYPE_REAL,
                    n_bins: spec.n_bins,
                    n_frames: spec.n_frames,
                    sample_rate: spec.sample_rate,
                    frame_len: spec.frame_len,
                    hop: spec.hop,
                },
            )?;
            for f in &spec.center_freqs {
                w.write_all(&f.to_le_bytes())?;
            }
            for v in &spec.data {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        OutputFormat::Csv => {
            writeln!(w, "bin,frame,value")?;
            for frame in 0..spec.n_frames {
                for (bin, v) in spec.column(frame).iter().enumerate() {
                    writeln!(w, "{},{},{}", bin, frame, v)?;
                }
            }
        }
    }
    Ok(())
}

/// Read a binary spectrogram file of either dtype.
pub fn read_spectrogram(path: impl AsRef<Path>) -> Result<AnySpectrogram> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::NotFound(path.to_path_buf())
        } else {
            Error::Io(e)
        }
    })?;
    read_spectrogram_from(&mut BufReader::new(file))
}

pub fn read_spectrogram_from<R: Read>(r: &mut R) -> Result<AnySpectrogram> {
    let h = read_header(r)?;
    let center_freqs = read_center_freqs(r, h.n_bins)?;
    let cells = payload_len(h.n_bins, h.n_frames)?;
    let result = match h.dtype {
        DTYPE_COMPLEX => {
            let mut data = Vec::with_capacity(cells);
            for _ in 0..cells {
                let re = read_f64(r, "payload")?;
                let im = read_f64(r, "payload")?;
                data.push(Complex64::new(re, im));
            }
            AnySpectrogram::Complex(Spectrogram {
                method: h.method,
                n_bins: h.n_bins,
                n_frames: h.n_frames,
                data,
                center_freqs,
                sample_rate: h.sample_rate,
                frame_len: h.frame_len,
                hop: h.hop,
            })
        }
        _ => {
            let mut data = Vec::with_capacity(cells);
            for _ in 0..cells {
                data.push(read_f64(r, "payload")?);
            }
            // The floor is not serialized; restore the tightest floor
            // consistent with the data so the type invariant holds.
            let floor_eps = if data.is_empty() {
                DEFAULT_FLOOR_EPS
            } else {
                data.iter()
                    .copied()
                    .fold(f64::INFINITY, f64::min)
                    .exp()
                    .clamp(f64::MIN_POSITIVE, f64::MAX)
            };
            AnySpectrogram::Real(LogPowerSpectrogram {
                method: h.method,
                n_bins: h.n_bins,
                n_frames: h.n_frames,
                data,
                center_freqs,
                sample_rate: h.sample_rate,
                frame_len: h.frame_len,
                hop: h.hop,
                floor_eps,
            })
        }
    };
    expect_eof(r)?;
    Ok(result)
}

/// Write an analysis matrix in the binary envelope (dtype 0, one column per
/// frame slot).
pub fn write_matrix(matrix: &AnalysisMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix_to(matrix, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_matrix_to<W: Write>(matrix: &AnalysisMatrix, w: &mut W) -> Result<()> {
    write_header(
        w,
        &Header {
            method: matrix.method(),
            dtype: DTYPE_COMPLEX,
            n_bins: matrix.n_bins(),
            n_frames: matrix.n_cols(),
            sample_rate: 0.0,
            frame_len: matrix.n_cols(),
            hop: 0,
        },
    )?;
    for f in matrix.center_freqs() {
        w.write_all(&f.to_le_bytes())?;
    }
    for col in 0..matrix.n_cols() {
        for row in 0..matrix.n_bins() {
            let z = matrix.entry(row, col);
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Read back a matrix file written by [`write_matrix`].
pub fn read_matrix(path: impl AsRef<Path>) -> Result<AnalysisMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::NotFound(path.to_path_buf())
        } else {
            Error::Io(e)
        }
    })?;
    read_matrix_from(&mut BufReader::new(file))
}

pub fn read_matrix_from<R: Read>(r: &mut R) -> Result<AnalysisMatrix> {
    let h = read_header(r)?;
    if h.dtype != DTYPE_COMPLEX {
        return Err(Error::Corrupt(
            "matrix files must have complex dtype".into(),
        ));
    }
    let n_cols = h.n_frames;
    if n_cols == 0 {
        return Err(Error::Corrupt("matrix file declares zero columns".into()));
    }
    let center_freqs = read_center_freqs(r, h.n_bins)?;
    let cells = payload_len(h.n_bins, n_cols)?;
    let mut entries = vec![Complex64::new(0.0, 0.0); cells];
    for col in 0..n_cols {
        for row in 0..h.n_bins {
            let re = read_f64(r, "payload")?;
            let im = read_f64(r, "payload")?;
            entries[row * n_cols + col] = Complex64::new(re, im);
        }
    }
    expect_eof(r)?;
    // The envelope has no normalization flag; entry (0, 0) equals the scale
    // factor exactly for every method, so recover it from there.
    let normalization = if entries[0] == Complex64::new(1.0, 0.0) {
        Normalization::None
    } else {
        Normalization::InvSqrtCols
    };
    AnalysisMatrix::from_parts(
        h.method,
        h.n_bins,
        n_cols,
        entries,
        center_freqs,
        normalization,
    )
}
