//! Data products: CSV tables, the binary spectrogram matrix, PGM heatmaps,
//! and JSON sidecars. Every table is UTF-8 with a header row and `.` as the
//! decimal separator; non-finite or absent values become empty fields.

use crate::baseline::ScatterDataset;
use crate::classify::SegmentLabel;
use crate::drf::{CycleStats, DrfPoint};
use crate::pipeline::Summary;
use crate::zff::EpochTrack;
use crate::ztw::Spectrogram;
use crate::{Error, Result};
use std::io::Write as _;
use std::path::Path;

/// Leading bytes of the binary spectrogram matrix format.
pub const SPECTROGRAM_MAGIC: &[u8; 8] = b"NZSGRAM1";

fn create(path: &Path) -> Result<std::io::BufWriter<std::fs::File>> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(std::io::BufWriter::new(file))
}

fn finish(mut w: std::io::BufWriter<std::fs::File>, path: &Path) -> Result<()> {
    w.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn field(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

fn opt_field(v: Option<f64>) -> String {
    v.map_or_else(String::new, field)
}

pub fn write_epochs_csv(path: &Path, epochs: &EpochTrack) -> Result<()> {
    let mut w = create(path)?;
    let mut text = String::from("gci_sample,gci_seconds,voiced_flag\n");
    for (&sample, &voiced) in epochs.gci_samples.iter().zip(&epochs.voiced_flags) {
        let seconds = sample as f64 / epochs.sample_rate as f64;
        text.push_str(&format!(
            "{sample},{},{}\n",
            field(seconds),
            voiced as u8
        ));
    }
    w.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(w, path)
}

pub fn write_drf_csv(path: &Path, points: &[DrfPoint]) -> Result<()> {
    let mut w = create(path)?;
    let mut text = String::from("anchor_sample,drf_hz,drf_amp,drf2_hz,drf2_amp,alpha\n");
    for p in points {
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.anchor_sample,
            field(p.drf_hz),
            field(p.drf_amp),
            opt_field(p.drf2_hz),
            opt_field(p.drf2_amp),
            opt_field(p.alpha)
        ));
    }
    w.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(w, path)
}

pub fn write_cycles_csv(path: &Path, stats: &[CycleStats], sample_rate: u32) -> Result<()> {
    let mut w = create(path)?;
    let mut text = String::from("cycle_start_s,cycle_end_s,mu_d,sigma_d,n_points\n");
    for s in stats {
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            field(s.start_s(sample_rate)),
            field(s.end_s(sample_rate)),
            field(s.mu_d),
            field(s.sigma_d),
            s.n_points
        ));
    }
    w.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(w, path)
}

pub fn write_labels_csv(path: &Path, labels: &[SegmentLabel], sample_rate: u32) -> Result<()> {
    let mut w = create(path)?;
    let mut text =
        String::from("cycle_start_s,cycle_end_s,label,extent,confidence,mu_d,sigma_d,mean_alpha\n");
    for l in labels {
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            field(l.start_s(sample_rate)),
            field(l.end_s(sample_rate)),
            l.label,
            l.extent,
            field(l.confidence),
            field(l.mu_d),
            field(l.sigma_d),
            opt_field(l.mean_alpha)
        ));
    }
    w.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(w, path)
}

pub fn write_scatter_csv(path: &Path, dataset: &ScatterDataset) -> Result<()> {
    let mut w = create(path)?;
    let mut text = String::from("a1_minus_p0_db,sigma_d_hz,label\n");
    for p in &dataset.points {
        text.push_str(&format!(
            "{},{},{}\n",
            field(p.a1_minus_p0_db),
            field(p.sigma_d_hz),
            p.label
        ));
    }
    w.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(w, path)
}

pub fn write_summary_json(path: &Path, summary: &Summary) -> Result<()> {
    let mut w = create(path)?;
    let text = serde_json::to_string_pretty(summary).expect("summary serializes");
    w.write_all(text.as_bytes())
        .and_then(|_| w.write_all(b"\n"))
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    finish(w, path)
}

pub fn write_spectrogram_csv(path: &Path, gram: &Spectrogram) -> Result<()> {
    let mut w = create(path)?;
    let n_bins = gram.config.n_bins();
    let mut text = String::from("anchor_sample");
    for k in 0..n_bins {
        text.push_str(&format!(",bin_{k}"));
    }
    text.push('\n');
    for slice in &gram.slices {
        text.push_str(&format!("{}", slice.anchor_sample));
        for &m in &slice.mags {
            text.push(',');
            text.push_str(&field(m));
        }
        text.push('\n');
    }
    w.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(w, path)
}

/// Binary matrix layout, all little-endian after the magic:
/// `NZSGRAM1` (8 bytes), sample_rate u32, hop_samples u32,
/// first_anchor_sample u64, n_slices u32, n_bins u32, bin_hz f64, then
/// n_slices * n_bins f32 magnitudes, slice-major with bins ascending.
pub fn write_spectrogram_binary(path: &Path, gram: &Spectrogram) -> Result<()> {
    let mut w = create(path)?;
    let first = gram.slices.first().map_or(0, |s| s.anchor_sample) as u64;
    let bin_hz = gram.config.bin_hz(gram.sample_rate);
    let mut bytes = Vec::new();
    bytes.extend_from_slice(SPECTROGRAM_MAGIC);
    bytes.extend_from_slice(&gram.sample_rate.to_le_bytes());
    bytes.extend_from_slice(&(gram.config.hop_samples as u32).to_le_bytes());
    bytes.extend_from_slice(&first.to_le_bytes());
    bytes.extend_from_slice(&(gram.slices.len() as u32).to_le_bytes());
    bytes.extend_from_slice(&(gram.config.n_bins() as u32).to_le_bytes());
    bytes.extend_from_slice(&bin_hz.to_le_bytes());
    for slice in &gram.slices {
        for &m in &slice.mags {
            bytes.extend_from_slice(&(m as f32).to_le_bytes());
        }
    }
    w.write_all(&bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(w, path)
}

/// Axis metadata accompanying spectrogram exports. Columns sit at
/// `first_anchor_sample + i * hop_samples` samples; bin k sits at
/// `k * bin_hz` Hz.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AxisInfo {
    pub sample_rate: u32,
    pub window_len_ms: f64,
    pub dft_size: usize,
    pub hop_samples: usize,
    pub first_anchor_sample: usize,
    pub n_slices: usize,
    pub n_bins: usize,
    pub bin_hz: f64,
}

impl AxisInfo {
    pub fn of(gram: &Spectrogram) -> Self {
        Self {
            sample_rate: gram.sample_rate,
            window_len_ms: gram.config.window_len_ms,
            dft_size: gram.config.dft_size,
            hop_samples: gram.config.hop_samples,
            first_anchor_sample: gram.slices.first().map_or(0, |s| s.anchor_sample),
            n_slices: gram.slices.len(),
            n_bins: gram.config.n_bins(),
            bin_hz: gram.config.bin_hz(gram.sample_rate),
        }
    }
}

pub fn write_axis_json(path: &Path, gram: &Spectrogram) -> Result<()> {
    let mut w = create(path)?;
    let text = serde_json::to_string_pretty(&AxisInfo::of(gram)).expect("axis info serializes");
    w.write_all(text.as_bytes())
        .and_then(|_| w.write_all(b"\n"))
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    finish(w, path)
}

/// Log-magnitude bytes for one spectrogram image, time across, frequency up
/// (row 0 holds the Nyquist bin). `per_column` rescales every slice to its
/// own range, which highlights structure in weak stretches at the cost of
/// comparability between columns.
fn heatmap_bytes(gram: &Spectrogram, per_column: bool) -> (usize, usize, Vec<u8>) {
    let n_bins = gram.config.n_bins();
    let width = gram.slices.len();
    let global_max = gram
        .slices
        .iter()
        .flat_map(|s| s.mags.iter().copied())
        .fold(0.0, f64::max);
    let floor = gram.config.epsilon * global_max;
    let log_slice = |mags: &[f64]| -> Vec<f64> {
        mags.iter().map(|&m| m.max(floor).max(f64::MIN_POSITIVE).ln()).collect()
    };
    let range = |values: &[f64]| {
        values
            .iter()
            .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    };
    let columns: Vec<Vec<f64>> = gram.slices.iter().map(|s| log_slice(&s.mags)).collect();
    let global_range = range(&columns.iter().flatten().copied().collect::<Vec<_>>());
    let mut pixels = vec![0u8; width * n_bins];
    for (x, column) in columns.iter().enumerate() {
        let (lo, hi) = if per_column { range(column) } else { global_range };
        let scale = if hi > lo { 255.0 / (hi - lo) } else { 0.0 };
        for (k, &v) in column.iter().enumerate() {
            let y = n_bins - 1 - k;
            pixels[y * width + x] = ((v - lo) * scale).round().clamp(0.0, 255.0) as u8;
        }
    }
    (width, n_bins, pixels)
}

fn write_pgm(path: &Path, width: usize, height: usize, pixels: &[u8]) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(format!("P5\n{width} {height}\n255\n").as_bytes())
        .and_then(|_| w.write_all(pixels))
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    finish(w, path)
}

pub fn write_heatmap_pgm(path: &Path, gram: &Spectrogram, per_column: bool) -> Result<()> {
    let (width, height, pixels) = heatmap_bytes(gram, per_column);
    if width == 0 {
        return Err(Error::EmptyAudio);
    }
    write_pgm(path, width, height, &pixels)
}

/// Heatmap with the dominant-resonance track burned in at full intensity.
/// Points are snapped to the nearest spectrogram column.
pub fn write_overlay_pgm(path: &Path, gram: &Spectrogram, points: &[DrfPoint]) -> Result<()> {
    let (width, height, mut pixels) = heatmap_bytes(gram, false);
    if width == 0 {
        return Err(Error::EmptyAudio);
    }
    let first = gram.slices.first().map_or(0, |s| s.anchor_sample);
    let hop = gram.config.hop_samples;
    let bin_hz = gram.config.bin_hz(gram.sample_rate);
    for p in points {
        if p.anchor_sample < first {
            continue;
        }
        let x = ((p.anchor_sample - first) as f64 / hop as f64).round() as usize;
        let k = (p.drf_hz / bin_hz).round() as usize;
        if x < width && k < height {
            pixels[(height - 1 - k) * width + x] = 255;
        }
    }
    write_pgm(path, width, height, &pixels)
}
