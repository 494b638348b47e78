//! Zero-time windowing: instantaneous spectra from heavily damped windows
//! anchored at single samples.
//!
//! For each anchor the signal is multiplied by a window that decays so fast
//! that the spectrum is dominated by the first few samples after the anchor.
//! The numerator of the group delay function of that segment, sharpened by a
//! second difference along frequency and smoothed by a Hilbert envelope,
//! resolves individual resonances at the anchor instant.

use crate::fft::{analytic_envelope, fft_real_pair};
use crate::signal::SampledSignal;
use crate::{Error, Result};
use rayon::prelude::*;

/// Analysis parameters shared by every slice.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ZtwConfig {
    /// Window length in milliseconds.
    pub window_len_ms: f64,
    /// DFT length; power of two, at least twice the window length in samples.
    pub dft_size: usize,
    /// Anchor step in samples.
    pub hop_samples: usize,
    /// Floor for log displays; never enters the analysis itself.
    pub epsilon: f64,
}

impl Default for ZtwConfig {
    fn default() -> Self {
        Self {
            window_len_ms: 4.0,
            dft_size: 1024,
            hop_samples: 1,
            epsilon: 1e-12,
        }
    }
}

impl ZtwConfig {
    pub fn window_len_samples(&self, sample_rate: u32) -> usize {
        (self.window_len_ms * sample_rate as f64 / 1000.0).round() as usize
    }

    /// Bins in a one-sided spectrum, 0 through Nyquist inclusive.
    pub fn n_bins(&self) -> usize {
        self.dft_size / 2 + 1
    }

    pub fn bin_hz(&self, sample_rate: u32) -> f64 {
        sample_rate as f64 / self.dft_size as f64
    }

    pub fn validate(&self, sample_rate: u32) -> Result<()> {
        if sample_rate < crate::signal::MIN_SAMPLE_RATE {
            return Err(Error::RateTooLow(sample_rate));
        }
        if !(1.0..=20.0).contains(&self.window_len_ms) {
            return Err(Error::InvalidConfig(format!(
                "window length {} ms outside 1..=20",
                self.window_len_ms
            )));
        }
        if !self.dft_size.is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "dft size {} is not a power of two",
                self.dft_size
            )));
        }
        if self.hop_samples == 0 {
            return Err(Error::InvalidConfig("hop must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        let n = self.window_len_samples(sample_rate);
        if n < 2 {
            return Err(Error::InvalidConfig(format!(
                "window of {} ms at {} Hz is under 2 samples",
                self.window_len_ms, sample_rate
            )));
        }
        if self.dft_size < 2 * n {
            return Err(Error::InvalidConfig(format!(
                "dft size {} under twice the window length ({} samples)",
                self.dft_size, n
            )));
        }
        Ok(())
    }
}

/// One instantaneous spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct HngdSlice {
    /// Sample index the window was anchored at.
    pub anchor_sample: usize,
    /// Hz per bin; bin k sits at k * bin_hz.
    pub bin_hz: f64,
    /// Envelope magnitudes per bin, 0 through Nyquist.
    pub mags: Vec<f64>,
}

impl HngdSlice {
    /// Bin center frequencies, 0 through Nyquist inclusive.
    pub fn freqs(&self) -> Vec<f64> {
        (0..self.mags.len()).map(|k| k as f64 * self.bin_hz).collect()
    }
}

/// Time-ordered slices with the parameters that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    pub slices: Vec<HngdSlice>,
    pub sample_rate: u32,
    pub config: ZtwConfig,
}

/// Window that forces near-total decay within a few samples of the anchor.
/// The first sample is pinned to zero; the rest fall off as the inverse
/// squared sine ramps away from its singularity.
pub fn heavy_decay_window(n_len: usize) -> Result<Vec<f64>> {
    if n_len < 2 {
        return Err(Error::InvalidConfig(format!(
            "window needs at least 2 samples, got {n_len}"
        )));
    }
    let mut w = Vec::with_capacity(n_len);
    w.push(0.0);
    for n in 1..n_len {
        let s = (std::f64::consts::PI * n as f64 / (2.0 * n_len as f64)).sin();
        w.push(1.0 / (4.0 * s * s));
    }
    Ok(w)
}

/// Quarter-cycle cosine taper that suppresses the truncation ripple the heavy
/// decay window leaves at the far end of the segment.
pub fn cosine_taper(n_len: usize) -> Result<Vec<f64>> {
    if n_len < 2 {
        return Err(Error::InvalidConfig(format!(
            "taper needs at least 2 samples, got {n_len}"
        )));
    }
    Ok((0..n_len)
        .map(|n| {
            let c = (std::f64::consts::PI * n as f64 / (2.0 * n_len as f64)).cos();
            4.0 * c * c
        })
        .collect())
}

/// Extract the windowed segment x[n] = s[anchor + n] · w1²[n] · w2[n].
pub fn window_segment(
    signal: &SampledSignal,
    anchor: usize,
    config: &ZtwConfig,
) -> Result<Vec<f64>> {
    let n_len = config.window_len_samples(signal.sample_rate);
    if anchor + n_len > signal.len() {
        return Err(Error::AnchorOutOfRange {
            anchor,
            window: n_len,
            len: signal.len(),
        });
    }
    let w1 = heavy_decay_window(n_len)?;
    let w2 = cosine_taper(n_len)?;
    Ok((0..n_len)
        .map(|n| signal.samples[anchor + n] * w1[n] * w1[n] * w2[n])
        .collect())
}

/// Numerator of the group delay function, one bin per frequency from 0 to
/// Nyquist: Re(X) Re(Y) + Im(X) Im(Y), where X transforms x[n] and Y
/// transforms n·x[n]. Real-valued and possibly negative.
pub fn ngd(x: &[f64], dft_size: usize) -> Vec<f64> {
    debug_assert!(x.len() <= dft_size);
    let ramped: Vec<f64> = x.iter().enumerate().map(|(n, &v)| n as f64 * v).collect();
    let (spec_x, spec_y) = fft_real_pair(x, &ramped, dft_size);
    (0..dft_size / 2 + 1)
        .map(|k| spec_x[k].re * spec_y[k].re + spec_x[k].im * spec_y[k].im)
        .collect()
}

/// Second difference along the frequency axis with even extension at both
/// edges, negated so resonances come out as maxima.
pub fn second_difference(tau: &[f64]) -> Vec<f64> {
    let k_len = tau.len();
    if k_len < 2 {
        return vec![0.0; k_len];
    }
    let at = |k: isize| -> f64 {
        // Even extension: tau[-1] = tau[1], tau[K] = tau[K-2].
        let idx = if k < 0 {
            (-k) as usize
        } else if k as usize >= k_len {
            2 * (k_len - 1) - k as usize
        } else {
            k as usize
        };
        tau[idx]
    };
    (0..k_len as isize)
        .map(|k| -(at(k + 1) - 2.0 * at(k) + at(k - 1)))
        .collect()
}

/// Instantaneous spectrum at one anchor.
///
/// The segment is first-differenced before windowing. The heavy decay window
/// acts like a double integration along frequency, so any low-frequency bias
/// in the raw signal turns into a bulge that buries sub-kilohertz resonances;
/// differencing the input removes that bias before it gets integrated.
pub fn hngd_slice(signal: &SampledSignal, anchor: usize, config: &ZtwConfig) -> Result<HngdSlice> {
    let n_len = config.window_len_samples(signal.sample_rate);
    let w = combined_window(n_len)?;
    slice_with_window(signal, anchor, config, &w)
}

/// w1²[n]·w2[n], built once and shared across slices.
pub(crate) fn combined_window(n_len: usize) -> Result<Vec<f64>> {
    let w1 = heavy_decay_window(n_len)?;
    let w2 = cosine_taper(n_len)?;
    Ok((0..n_len).map(|n| w1[n] * w1[n] * w2[n]).collect())
}

pub(crate) fn slice_with_window(
    signal: &SampledSignal,
    anchor: usize,
    config: &ZtwConfig,
    window: &[f64],
) -> Result<HngdSlice> {
    let n_len = window.len();
    if anchor + n_len > signal.len() {
        return Err(Error::AnchorOutOfRange {
            anchor,
            window: n_len,
            len: signal.len(),
        });
    }
    let s = &signal.samples;
    let x: Vec<f64> = (0..n_len)
        .map(|n| {
            let i = anchor + n;
            // The sample before index 0 is taken as silence; the window's
            // zeroed first tap makes the choice irrelevant anyway.
            let prev = if i == 0 { 0.0 } else { s[i - 1] };
            (s[i] - prev) * window[n]
        })
        .collect();
    let tau = ngd(&x, config.dft_size);
    let sharpened = second_difference(&tau);
    let mags = analytic_envelope(&sharpened);
    Ok(HngdSlice {
        anchor_sample: anchor,
        bin_hz: config.bin_hz(signal.sample_rate),
        mags,
    })
}

/// Anchor positions a config generates over a signal: every hop from 0
/// through len − N inclusive.
pub fn anchors(signal_len: usize, window_len: usize, hop: usize) -> Vec<usize> {
    if signal_len < window_len {
        return Vec::new();
    }
    (0..=signal_len - window_len).step_by(hop).collect()
}

/// Slice at every anchor. Slices are independent, so they are computed in
/// parallel; assembly is by anchor order regardless of scheduling.
pub fn hngd_spectrogram(signal: &SampledSignal, config: &ZtwConfig) -> Result<Spectrogram> {
    config.validate(signal.sample_rate)?;
    let n_len = config.window_len_samples(signal.sample_rate);
    if signal.len() < n_len {
        return Err(Error::TooShort {
            needed: n_len,
            got: signal.len(),
        });
    }
    let positions = anchors(signal.len(), n_len, config.hop_samples);
    let window = combined_window(n_len)?;
    let slices = positions
        .par_iter()
        .map(|&a| slice_with_window(signal, a, config, &window))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrogram {
        slices,
        sample_rate: signal.sample_rate,
        config: *config,
    })
}
