//! Conventional spectral baselines: a Hann-window STFT spectrogram for
//! side-by-side contrast with the instantaneous spectra, and the A1-P0
//! harmonic amplitude difference, the classic acoustic correlate of
//! nasalization.

use crate::classify::LabelClass;
use crate::drf::{ln_mag, refine_peak};
use crate::fft::fft_real;
use crate::signal::SampledSignal;
use crate::ztw::{anchors, Spectrogram, ZtwConfig};
use crate::{Error, Result};
use rayon::prelude::*;

/// Low-frequency band searched for the nasal prominence P0.
pub const P0_BAND: (f64, f64) = (150.0, 450.0);

/// Frame length for harmonic amplitude measurement.
pub const DEFAULT_FRAME_MS: f64 = 20.0;

/// A harmonic peak may sit at most this fraction of f0 away from its
/// nominal grid position.
pub const HARMONIC_TOLERANCE: f64 = 0.25;

/// Search radius around a manually supplied peak frequency.
pub const MANUAL_SEARCH_HZ: f64 = 50.0;

/// Harmonic amplitude contrast at one analysis frame. Amplitudes are in dB
/// relative to the strongest bin of the frame spectrum, so `a1_minus_p0_db`
/// is invariant to signal scaling.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct A1P0Result {
    pub frame_center_s: f64,
    pub a1_db: f64,
    pub p0_db: f64,
    pub a1_hz: f64,
    pub p0_hz: f64,
    pub a1_minus_p0_db: f64,
}

/// STFT magnitude spectrogram over the same anchors, DFT size, and bin grid
/// the instantaneous analysis would use for `config`, so the two line up
/// slice for slice. The window at anchor `a` covers samples `[a, a + N)`.
pub fn stft_spectrogram(signal: &SampledSignal, config: &ZtwConfig) -> Result<Spectrogram> {
    config.validate(signal.sample_rate)?;
    let n_len = config.window_len_samples(signal.sample_rate);
    if signal.len() < n_len {
        return Err(Error::TooShort {
            needed: n_len,
            got: signal.len(),
        });
    }
    let window = hann(n_len);
    let positions = anchors(signal.len(), n_len, config.hop_samples);
    let n_bins = config.n_bins();
    let bin_hz = config.bin_hz(signal.sample_rate);
    let slices = positions
        .par_iter()
        .map(|&a| {
            let frame: Vec<f64> = (0..n_len)
                .map(|n| signal.samples[a + n] * window[n])
                .collect();
            let spectrum = fft_real(&frame, config.dft_size);
            crate::ztw::HngdSlice {
                anchor_sample: a,
                bin_hz,
                mags: spectrum[..n_bins].iter().map(|c| c.norm()).collect(),
            }
        })
        .collect();
    Ok(Spectrogram {
        slices,
        sample_rate: signal.sample_rate,
        config: *config,
    })
}

fn hann(n_len: usize) -> Vec<f64> {
    (0..n_len)
        .map(|n| {
            let phase = 2.0 * std::f64::consts::PI * n as f64 / n_len as f64;
            0.5 * (1.0 - phase.cos())
        })
        .collect()
}

/// Width of the strongest in-band peak at the -3 dB level referenced to the
/// peak's prominence. The crossing level sits 1/sqrt(2) of the way up from
/// the peak's base to its apex, where the base is the higher of the two
/// flanking minima inside the band (a band-edge peak has one flank). On a
/// peak rising from a near-zero floor this reduces to the classic absolute
/// peak/sqrt(2) crossing; on a spectrum whose valleys sit on a raised floor,
/// as any envelope-valued spectrum does, it measures the ridge standing
/// above that floor instead of the floor's own height. Crossings are
/// linearly interpolated between bins; sides that never fall below the
/// level inside the band are cut off at the band edge, understating the
/// width. Returns (peak frequency, width in Hz); None when the band holds
/// no positive bins.
pub fn peak_width_3db(mags: &[f64], bin_hz: f64, band: (f64, f64)) -> Option<(f64, f64)> {
    let lo = (band.0 / bin_hz).ceil() as usize;
    let hi = ((band.1 / bin_hz).floor() as usize).min(mags.len().saturating_sub(1));
    if lo > hi {
        return None;
    }
    let peak = (lo..=hi).max_by(|&a, &b| mags[a].total_cmp(&mags[b]))?;
    if !(mags[peak] > 0.0) {
        return None;
    }
    let flank_min = |range: std::ops::Range<usize>| {
        range.map(|k| mags[k]).reduce(f64::min)
    };
    let base = flank_min(lo..peak)
        .into_iter()
        .chain(flank_min(peak + 1..hi + 1))
        .fold(0.0, f64::max);
    let level = base + (mags[peak] - base) / std::f64::consts::SQRT_2;
    let cross = |inner: f64, outer: f64, at: usize, dir: f64| -> f64 {
        let frac = (inner - level) / (inner - outer);
        (at as f64 + dir * frac) * bin_hz
    };
    let mut left = lo as f64 * bin_hz;
    for k in (lo..peak).rev() {
        if mags[k] < level {
            left = cross(mags[k + 1], mags[k], k + 1, -1.0);
            break;
        }
    }
    let mut right = hi as f64 * bin_hz;
    for k in peak + 1..=hi {
        if mags[k] < level {
            right = cross(mags[k - 1], mags[k], k - 1, 1.0);
            break;
        }
    }
    Some((peak as f64 * bin_hz, right - left))
}

/// One frame cut from the signal with its zero-padded magnitude spectrum.
struct FrameSpectrum {
    frame: Vec<f64>,
    mags: Vec<f64>,
    bin_hz: f64,
    sample_rate: f64,
}

impl FrameSpectrum {
    fn cut(signal: &SampledSignal, frame_center_s: f64, frame_ms: f64) -> Result<Self> {
        if !(frame_ms > 0.0 && frame_ms <= 100.0) {
            return Err(Error::InvalidConfig(format!(
                "frame length {frame_ms} ms outside (0, 100]"
            )));
        }
        let fs = signal.sample_rate as f64;
        let n_len = (frame_ms * fs / 1000.0).round() as usize;
        let start = (frame_center_s * fs).round() as i64 - n_len as i64 / 2;
        if start < 0 || start as usize + n_len > signal.len() {
            return Err(Error::InvalidConfig(format!(
                "frame of {frame_ms} ms at {frame_center_s:.3} s extends past the signal"
            )));
        }
        let start = start as usize;
        // Hann-windowed frame: leakage from strong neighbors would
        // otherwise drag weak harmonic peaks off place and bias their
        // amplitudes by more than a dB. At 20 ms the mainlobe spans
        // +-100 Hz, which keeps harmonics separated for f0 >= 100 Hz.
        let window = hann(n_len);
        let frame: Vec<f64> = signal.samples[start..start + n_len]
            .iter()
            .zip(&window)
            .map(|(&x, &w)| x * w)
            .collect();
        let dft = (4 * n_len).next_power_of_two();
        let spectrum = fft_real(&frame, dft);
        let mags: Vec<f64> = spectrum[..dft / 2 + 1].iter().map(|c| c.norm()).collect();
        Ok(Self {
            frame,
            mags,
            bin_hz: fs / dft as f64,
            sample_rate: fs,
        })
    }

    /// Magnitude of the frame's transform evaluated exactly at `f_hz`.
    /// Reading amplitudes off the continuous transform instead of the bin
    /// grid removes the scalloping the grid would add.
    fn amp_at(&self, f_hz: f64) -> f64 {
        let w = 2.0 * std::f64::consts::PI * f_hz / self.sample_rate;
        let (mut re, mut im) = (0.0, 0.0);
        for (n, &x) in self.frame.iter().enumerate() {
            let phase = w * n as f64;
            re += x * phase.cos();
            im -= x * phase.sin();
        }
        re.hypot(im)
    }

    /// Strongest strict local maximum of the grid spectrum within
    /// `[center_hz - tol_hz, center_hz + tol_hz]`, frequency-refined by
    /// quadratic interpolation, as (hz, ln amplitude at hz).
    fn local_peak_near(&self, center_hz: f64, tol_hz: f64) -> Option<(f64, f64)> {
        let mags = &self.mags;
        let lo = (((center_hz - tol_hz) / self.bin_hz).ceil() as usize).max(1);
        let hi =
            (((center_hz + tol_hz) / self.bin_hz).floor() as usize).min(mags.len().saturating_sub(2));
        let mut best: Option<(usize, f64)> = None;
        for k in lo..=hi {
            if mags[k] > mags[k - 1] && mags[k] > mags[k + 1] && best.is_none_or(|(_, a)| mags[k] > a)
            {
                best = Some((k, mags[k]));
            }
        }
        let (k, _) = best?;
        let (delta, _) = refine_peak(ln_mag(mags[k - 1]), ln_mag(mags[k]), ln_mag(mags[k + 1]));
        let hz = (k as f64 + delta) * self.bin_hz;
        Some((hz, ln_mag(self.amp_at(hz))))
    }
}

/// A1-P0 at one frame. The spectrum peaks are constrained to the harmonic
/// grid of `f0_hz` (within f0/4 of a multiple of f0): A1 is the harmonic
/// peak closest in frequency to the F1 estimate, P0 the strongest harmonic
/// peak inside the low band. Errs when the frame resolves no usable
/// harmonic peaks, which is the typical unvoiced-frame outcome.
pub fn a1_p0(
    signal: &SampledSignal,
    frame_center_s: f64,
    frame_ms: f64,
    f0_hz: f64,
    f1_est_hz: f64,
) -> Result<A1P0Result> {
    let nyquist = signal.sample_rate as f64 / 2.0;
    if !(f0_hz > 0.0 && f0_hz < nyquist) {
        return Err(Error::InvalidConfig(format!(
            "f0 {f0_hz} Hz outside (0, {nyquist})"
        )));
    }
    if !(f1_est_hz > 0.0 && f1_est_hz < nyquist) {
        return Err(Error::InvalidConfig(format!(
            "F1 estimate {f1_est_hz} Hz outside (0, {nyquist})"
        )));
    }
    let spectrum = FrameSpectrum::cut(signal, frame_center_s, frame_ms)?;
    let tol = HARMONIC_TOLERANCE * f0_hz;
    let mut harmonics = Vec::new();
    let mut m = 1;
    while m as f64 * f0_hz + tol < nyquist {
        if let Some(peak) = spectrum.local_peak_near(m as f64 * f0_hz, tol) {
            harmonics.push(peak);
        }
        m += 1;
    }
    let a1 = harmonics
        .iter()
        .min_by(|a, b| (a.0 - f1_est_hz).abs().total_cmp(&(b.0 - f1_est_hz).abs()))
        .copied();
    let p0 = harmonics
        .iter()
        .filter(|(hz, _)| (P0_BAND.0..=P0_BAND.1).contains(hz))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .copied();
    let (Some(a1), Some(p0)) = (a1, p0) else {
        return Err(Error::UnvoicedFrame {
            at_s: frame_center_s,
        });
    };
    Ok(build_result(frame_center_s, a1, p0, &spectrum.mags))
}

/// A1-P0 with caller-pinned peak frequencies instead of the harmonic grid:
/// each amplitude is read off the strongest local maximum within
/// `MANUAL_SEARCH_HZ` of the stated frequency.
pub fn a1_p0_manual(
    signal: &SampledSignal,
    frame_center_s: f64,
    frame_ms: f64,
    a1_hz: f64,
    p0_hz: f64,
) -> Result<A1P0Result> {
    let spectrum = FrameSpectrum::cut(signal, frame_center_s, frame_ms)?;
    let a1 = spectrum.local_peak_near(a1_hz, MANUAL_SEARCH_HZ);
    let p0 = spectrum.local_peak_near(p0_hz, MANUAL_SEARCH_HZ);
    let (Some(a1), Some(p0)) = (a1, p0) else {
        return Err(Error::UnvoicedFrame {
            at_s: frame_center_s,
        });
    };
    Ok(build_result(frame_center_s, a1, p0, &spectrum.mags))
}

fn build_result(
    frame_center_s: f64,
    a1: (f64, f64),
    p0: (f64, f64),
    mags: &[f64],
) -> A1P0Result {
    let ln_max = ln_mag(mags.iter().copied().fold(0.0, f64::max));
    let to_db = |ln_amp: f64| (ln_amp - ln_max) * 20.0 / std::f64::consts::LN_10;
    let (a1_db, p0_db) = (to_db(a1.1), to_db(p0.1));
    A1P0Result {
        frame_center_s,
        a1_db,
        p0_db,
        a1_hz: a1.0,
        p0_hz: p0.0,
        a1_minus_p0_db: a1_db - p0_db,
    }
}

/// One point of the A1-P0 versus cycle-scatter correlation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ScatterPoint {
    pub a1_minus_p0_db: f64,
    pub sigma_d_hz: f64,
    pub label: LabelClass,
}

/// Signed distance between the oral and nasalized clusters along each axis:
/// the gap between the class ranges when they are disjoint, negative
/// overlap depth otherwise.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClusterSeparation {
    pub gap_a1_minus_p0_db: f64,
    pub gap_sigma_d_hz: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ScatterDataset {
    pub points: Vec<ScatterPoint>,
    /// None until both the oral and nasalized classes have at least two
    /// points.
    pub separation: Option<ClusterSeparation>,
}

/// Pairs A1-P0 measurements with boundary-averaged cycle scatter by index
/// and summarizes how far apart the oral and nasalized clusters sit.
pub fn correlate_sigma(
    results: &[A1P0Result],
    sigma: &[(f64, LabelClass)],
) -> Result<ScatterDataset> {
    if results.len() != sigma.len() {
        return Err(Error::InvalidConfig(format!(
            "{} A1-P0 measurements paired with {} scatter values",
            results.len(),
            sigma.len()
        )));
    }
    let points: Vec<ScatterPoint> = results
        .iter()
        .zip(sigma)
        .map(|(r, &(sigma_d_hz, label))| ScatterPoint {
            a1_minus_p0_db: r.a1_minus_p0_db,
            sigma_d_hz,
            label,
        })
        .collect();
    let class = |want: LabelClass| -> Vec<&ScatterPoint> {
        points.iter().filter(|p| p.label == want).collect()
    };
    let (oral, nasal) = (class(LabelClass::Ov), class(LabelClass::Nv));
    let separation = (oral.len() >= 2 && nasal.len() >= 2).then(|| {
        let gap = |f: &dyn Fn(&ScatterPoint) -> f64| -> f64 {
            let range = |pts: &[&ScatterPoint]| {
                pts.iter()
                    .fold((f64::MAX, f64::MIN), |(lo, hi), p| (lo.min(f(p)), hi.max(f(p))))
            };
            let (o_lo, o_hi) = range(&oral);
            let (n_lo, n_hi) = range(&nasal);
            (n_lo - o_hi).max(o_lo - n_hi)
        };
        ClusterSeparation {
            gap_a1_minus_p0_db: gap(&|p| p.a1_minus_p0_db),
            gap_sigma_d_hz: gap(&|p| p.sigma_d_hz),
        }
    });
    Ok(ScatterDataset { points, separation })
}
