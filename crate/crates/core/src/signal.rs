//! Audio containers, WAV I/O, resampling, and phone annotations.

use crate::{Error, Result};
use std::io::{BufRead, Write};
use std::path::Path;

/// Mono audio held as f64 samples with its rate.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

impl SampledSignal {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Self {
        Self {
            samples,
            sample_rate,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    /// Scale so the largest magnitude becomes `peak`. Silence is returned
    /// unchanged rather than divided by zero.
    pub fn normalize_peak(&mut self, peak: f64) {
        let max = self
            .samples
            .iter()
            .fold(0.0f64, |m, &v| m.max(v.abs()));
        if max > 0.0 {
            let g = peak / max;
            for v in &mut self.samples {
                *v *= g;
            }
        }
    }
}

/// Time-aligned phone label, seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct PhoneAnnotation {
    pub start_s: f64,
    pub end_s: f64,
    pub label: String,
}

/// Peak level applied when loading WAV input.
pub const LOAD_PEAK: f64 = 0.95;

/// Lowest rate the analysis accepts; the spectral bands of interest need
/// headroom above 1.5 kHz plus margin for the resampler's transition band.
pub const MIN_SAMPLE_RATE: u32 = 2000;

/// Read a WAV file as mono f64, peak-normalized to [`LOAD_PEAK`].
///
/// Multichannel input keeps channel 0 and logs a warning; int and float
/// encodings are both accepted.
pub fn load_wav(path: &Path) -> Result<SampledSignal> {
    let mut reader = hound::WavReader::open(path).map_err(|e| match e {
        hound::Error::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::UnsupportedEncoding(other.to_string()),
    })?;
    let spec = reader.spec();
    let channels = spec.channels as usize;
    if channels == 0 {
        return Err(Error::UnsupportedEncoding("zero channels".into()));
    }
    if channels > 1 {
        log::warn!(
            "{}: {} channels, keeping channel 0",
            path.display(),
            channels
        );
    }

    let take_ch0 = |iter: &mut dyn Iterator<Item = std::result::Result<f64, hound::Error>>| {
        let mut out = Vec::new();
        for (i, s) in iter.enumerate() {
            let v = s.map_err(|e| Error::UnsupportedEncoding(e.to_string()))?;
            if i % channels == 0 {
                out.push(v);
            }
        }
        Ok::<_, Error>(out)
    };

    let samples = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Float, 32) => {
            take_ch0(&mut reader.samples::<f32>().map(|s| s.map(|v| v as f64)))?
        }
        (hound::SampleFormat::Int, bits) if bits <= 32 => {
            let scale = 1.0 / f64::from(1u32 << (bits - 1).min(31));
            take_ch0(&mut reader.samples::<i32>().map(|s| s.map(|v| v as f64 * scale)))?
        }
        (fmt, bits) => {
            return Err(Error::UnsupportedEncoding(format!(
                "{bits}-bit {fmt:?} samples"
            )))
        }
    };

    if samples.is_empty() {
        return Err(Error::EmptyAudio);
    }
    let mut sig = SampledSignal::new(samples, spec.sample_rate);
    sig.normalize_peak(LOAD_PEAK);
    Ok(sig)
}

/// Write a signal as 16-bit PCM WAV. Values are clamped to [-1, 1].
pub fn write_wav(path: &Path, signal: &SampledSignal) -> Result<()> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: signal.sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let map_err = |e: hound::Error| match e {
        hound::Error::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::UnsupportedEncoding(other.to_string()),
    };
    let mut writer = hound::WavWriter::create(path, spec).map_err(map_err)?;
    for &v in &signal.samples {
        let clamped = v.clamp(-1.0, 1.0);
        let q = (clamped * 32767.0).round() as i16;
        writer.write_sample(q).map_err(map_err)?;
    }
    writer.finalize().map_err(map_err)?;
    Ok(())
}

/// Resample with a windowed-sinc kernel (Hann window, 24 zero crossings per
/// side at the lower of the two rates). Refuses target rates below
/// [`MIN_SAMPLE_RATE`].
pub fn resample(signal: &SampledSignal, target_rate: u32) -> Result<SampledSignal> {
    if target_rate < MIN_SAMPLE_RATE {
        return Err(Error::RateTooLow(target_rate));
    }
    if signal.is_empty() {
        return Err(Error::EmptyAudio);
    }
    if target_rate == signal.sample_rate {
        return Ok(signal.clone());
    }

    let src_rate = signal.sample_rate as f64;
    let dst_rate = target_rate as f64;
    let ratio = dst_rate / src_rate;
    // When downsampling the kernel also low-passes at the new Nyquist.
    let cutoff = ratio.min(1.0);
    const LOBES: f64 = 24.0;
    let half_width = LOBES / cutoff;

    let n_out = (signal.len() as f64 * ratio).round() as usize;
    let src = &signal.samples;
    let mut out = Vec::with_capacity(n_out);
    for j in 0..n_out {
        let center = j as f64 / ratio;
        let lo = (center - half_width).ceil().max(0.0) as usize;
        let hi = ((center + half_width).floor() as usize).min(src.len().saturating_sub(1));
        let mut acc = 0.0;
        for (i, &v) in src.iter().enumerate().take(hi + 1).skip(lo) {
            let t = i as f64 - center;
            let x = std::f64::consts::PI * cutoff * t;
            let sinc = if x.abs() < 1e-12 { 1.0 } else { x.sin() / x };
            let w = 0.5 + 0.5 * (std::f64::consts::PI * t / half_width).cos();
            acc += v * cutoff * sinc * w;
        }
        out.push(acc);
    }
    Ok(SampledSignal::new(out, target_rate))
}

/// Read tab-separated annotations: `start_s<TAB>end_s<TAB>label` per line.
/// Blank lines and lines starting with `#` are skipped.
pub fn read_annotations(path: &Path) -> Result<Vec<PhoneAnnotation>> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = std::io::BufReader::new(file);
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let mut parts = trimmed.split('\t');
        let (start, end, label) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => {
                return Err(Error::AnnotationParse {
                    line: lineno,
                    msg: "expected start<TAB>end<TAB>label".into(),
                })
            }
        };
        let start_s: f64 = start.trim().parse().map_err(|_| Error::AnnotationParse {
            line: lineno,
            msg: format!("bad start time {start:?}"),
        })?;
        let end_s: f64 = end.trim().parse().map_err(|_| Error::AnnotationParse {
            line: lineno,
            msg: format!("bad end time {end:?}"),
        })?;
        if !(start_s.is_finite() && end_s.is_finite()) || end_s < start_s {
            return Err(Error::AnnotationParse {
                line: lineno,
                msg: format!("invalid interval [{start_s}, {end_s}]"),
            });
        }
        out.push(PhoneAnnotation {
            start_s,
            end_s,
            label: label.trim().to_string(),
        });
    }
    Ok(out)
}

/// Write annotations in the same tab-separated format `read_annotations` expects.
pub fn write_annotations(path: &Path, annotations: &[PhoneAnnotation]) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    for a in annotations {
        writeln!(file, "{:.6}\t{:.6}\t{}", a.start_s, a.end_s, a.label).map_err(|source| {
            Error::Io {
                path: path.to_path_buf(),
                source,
            }
        })?;
    }
    Ok(())
}
