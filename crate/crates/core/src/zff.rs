//! Zero-frequency filtering: glottal closure instants, voicing, and pitch.
//!
//! A resonator pinned at 0 Hz integrates the impulse-like discontinuities of
//! glottal excitation into polynomial growth; removing the local mean leaves
//! an oscillation whose negative-to-positive zero crossings sit at the
//! excitation instants, independent of vocal-tract resonances.

use crate::signal::SampledSignal;
use crate::{Error, Result};

/// Pitch search range for the bootstrap estimate.
const PITCH_MIN_HZ: f64 = 50.0;
const PITCH_MAX_HZ: f64 = 500.0;

/// Autocorrelation floor below which the bootstrap falls back to a nominal
/// pitch; keeps the trend window sane on unvoiced input.
const BOOTSTRAP_MIN_CORR: f64 = 0.25;
const FALLBACK_PITCH_HZ: f64 = 125.0;

/// Voicing gate: crossing slope must reach this fraction of the utterance's
/// strongest crossing slopes (95th percentile).
const VOICING_SLOPE_FRACTION: f64 = 0.3;

/// Plausible glottal cycle bounds, seconds.
const CYCLE_MIN_S: f64 = 0.002;
const CYCLE_MAX_S: f64 = 0.020;

/// Neighboring voiced cycles may differ in length by at most this fraction.
/// Filtered noise also crosses zero with strong slopes, but erratically;
/// periodicity of the spacing is what separates it from phonation.
const GAP_REGULARITY: f64 = 0.2;

/// Slopes within a voiced run may differ by at most this factor.
const SLOPE_REGULARITY: f64 = 2.5;

/// A voiced run needs this many consecutive regular crossings. Pairs of
/// similar gaps show up in noise by chance; three in a row do not.
const RUN_CROSSINGS: usize = 4;

/// Detected excitation instants with voicing.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochTrack {
    /// Zero-crossing sample indices, strictly increasing. Includes crossings
    /// later judged unvoiced; `voiced_flags` tells them apart.
    pub gci_samples: Vec<usize>,
    /// Parallel to `gci_samples`.
    pub voiced_flags: Vec<bool>,
    /// Per-signal-sample voicing: true inside cycles whose bounding epochs
    /// are both voiced with a plausible gap.
    pub voicing: Vec<bool>,
    /// Median voiced cycle length, seconds; 0 when nothing is voiced.
    pub mean_pitch_s: f64,
    pub sample_rate: u32,
}

impl EpochTrack {
    /// Consecutive voiced epoch pairs with plausible gaps: the glottal
    /// cycles all per-cycle statistics run over.
    pub fn voiced_cycles(&self) -> Vec<(usize, usize)> {
        let rate = self.sample_rate as f64;
        let mut out = Vec::new();
        for w in 0..self.gci_samples.len().saturating_sub(1) {
            if !(self.voiced_flags[w] && self.voiced_flags[w + 1]) {
                continue;
            }
            let (a, b) = (self.gci_samples[w], self.gci_samples[w + 1]);
            let gap_s = (b - a) as f64 / rate;
            if (CYCLE_MIN_S..=CYCLE_MAX_S).contains(&gap_s) {
                out.push((a, b));
            }
        }
        out
    }

    pub fn voiced_gcis(&self) -> Vec<usize> {
        self.gci_samples
            .iter()
            .zip(&self.voiced_flags)
            .filter(|(_, &v)| v)
            .map(|(&s, _)| s)
            .collect()
    }

    pub fn is_voiced_at(&self, sample: usize) -> bool {
        self.voicing.get(sample).copied().unwrap_or(false)
    }
}

/// Autocorrelation pitch-period bootstrap over the 50–500 Hz lag range.
/// Only used to size the trend-removal window, so a coarse estimate is fine.
pub fn bootstrap_pitch_period(signal: &SampledSignal) -> usize {
    let rate = signal.sample_rate as f64;
    let fallback = (rate / FALLBACK_PITCH_HZ).round() as usize;
    let min_lag = (rate / PITCH_MAX_HZ).floor() as usize;
    let max_lag = (rate / PITCH_MIN_HZ).ceil() as usize;
    let x = &signal.samples;
    if x.len() < 2 * max_lag {
        return fallback;
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let energy: f64 = x.iter().map(|v| (v - mean) * (v - mean)).sum();
    if energy <= 0.0 {
        return fallback;
    }
    let mut best_lag = fallback;
    let mut best = f64::MIN;
    for lag in min_lag..=max_lag {
        let mut acc = 0.0;
        for i in lag..x.len() {
            acc += (x[i] - mean) * (x[i - lag] - mean);
        }
        let norm = acc / energy;
        if norm > best {
            best = norm;
            best_lag = lag;
        }
    }
    if best < BOOTSTRAP_MIN_CORR {
        fallback
    } else {
        best_lag
    }
}

fn zero_freq_resonator(x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    let (mut y1, mut y2) = (0.0f64, 0.0f64);
    for (i, &v) in x.iter().enumerate() {
        let cur = 2.0 * y1 - y2 + v;
        y2 = y1;
        y1 = cur;
        y[i] = cur;
    }
    y
}

/// Subtract the mean over a centered window of `half*2+1` samples, clamped
/// at the signal edges. Runs in O(n) via a sliding sum.
fn remove_local_mean(x: &[f64], half: usize) -> Vec<f64> {
    let n = x.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for &v in x {
        acc += v;
        prefix.push(acc);
    }
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            let mean = (prefix[hi] - prefix[lo]) / (hi - lo) as f64;
            x[i] - mean
        })
        .collect()
}

/// Run the zero-frequency filter chain: first difference, then two
/// resonator-plus-trend-removal stages.
///
/// The textbook order (resonator twice, then trend removal twice) grows as
/// n² in the signal length and runs out of f64 mantissa on multi-second
/// audio, so each integration is followed directly by its trend removal;
/// the same operations, interleaved for bounded intermediate magnitude.
pub fn zff_filter(signal: &SampledSignal) -> Result<Vec<f64>> {
    let period = bootstrap_pitch_period(signal);
    let half = ((1.5 * period as f64) / 2.0).round() as usize;
    let window = 2 * half + 1;
    if signal.len() < window.max(3 * period) {
        return Err(Error::TooShort {
            needed: window.max(3 * period),
            got: signal.len(),
        });
    }
    let x = &signal.samples;
    let mut d = Vec::with_capacity(x.len());
    d.push(x[0]);
    for i in 1..x.len() {
        d.push(x[i] - x[i - 1]);
    }
    let stage1 = remove_local_mean(&zero_freq_resonator(&d), half);
    Ok(remove_local_mean(&zero_freq_resonator(&stage1), half))
}

/// Negative-to-positive zero crossings of the filtered signal, with voicing
/// decided by crossing slope and cycle plausibility.
pub fn detect_gcis(zff_signal: &[f64], sample_rate: u32) -> EpochTrack {
    // Crossings in both directions; recording polarity decides which family
    // marks the excitation instants.
    let mut rising: Vec<(usize, f64)> = Vec::new();
    let mut falling: Vec<(usize, f64)> = Vec::new();
    for i in 1..zff_signal.len() {
        let (a, b) = (zff_signal[i - 1], zff_signal[i]);
        if a < 0.0 && b >= 0.0 {
            rising.push((i, b - a));
        } else if a > 0.0 && b <= 0.0 {
            falling.push((i, a - b));
        }
    }
    let median_slope = |v: &[(usize, f64)]| -> f64 {
        if v.is_empty() {
            return 0.0;
        }
        let mut s: Vec<f64> = v.iter().map(|&(_, sl)| sl).collect();
        s.sort_by(|a, b| a.total_cmp(b));
        s[s.len() / 2]
    };
    // Sharper crossings mark the true excitation polarity.
    let crossings = if median_slope(&falling) > median_slope(&rising) {
        falling
    } else {
        rising
    };

    if crossings.is_empty() {
        return EpochTrack {
            gci_samples: Vec::new(),
            voiced_flags: Vec::new(),
            voicing: vec![false; zff_signal.len()],
            mean_pitch_s: 0.0,
            sample_rate,
        };
    }

    let mut slopes: Vec<f64> = crossings.iter().map(|&(_, s)| s).collect();
    slopes.sort_by(|a, b| a.total_cmp(b));
    let p95 = slopes[((slopes.len() - 1) as f64 * 0.95).round() as usize];
    let threshold = VOICING_SLOPE_FRACTION * p95;

    let gci_samples: Vec<usize> = crossings.iter().map(|&(i, _)| i).collect();
    let strong: Vec<bool> = crossings.iter().map(|&(_, s)| s >= threshold).collect();

    // A strong crossing is a voiced epoch only when it sits in a run of
    // several strong crossings whose gaps are plausible cycles of nearly
    // equal length and whose slopes are comparable. Filtered noise produces
    // strong crossings too, but not several evenly spaced ones in a row.
    let rate = sample_rate as f64;
    let plausible = |a: usize, b: usize| -> bool {
        let gap = (b - a) as f64 / rate;
        (CYCLE_MIN_S..=CYCLE_MAX_S).contains(&gap)
    };
    let n = gci_samples.len();
    let mut voiced_flags = vec![false; n];
    'runs: for j in 0..n.saturating_sub(RUN_CROSSINGS - 1) {
        let run = j..j + RUN_CROSSINGS;
        if !run.clone().all(|k| strong[k]) {
            continue;
        }
        for k in run.clone().skip(1) {
            if !plausible(gci_samples[k - 1], gci_samples[k]) {
                continue 'runs;
            }
        }
        for k in run.clone().skip(2) {
            let g1 = (gci_samples[k - 1] - gci_samples[k - 2]) as f64;
            let g2 = (gci_samples[k] - gci_samples[k - 1]) as f64;
            if (g1 - g2).abs() > GAP_REGULARITY * g1.max(g2) {
                continue 'runs;
            }
        }
        let (mut lo, mut hi) = (f64::MAX, f64::MIN);
        for k in run.clone() {
            lo = lo.min(crossings[k].1);
            hi = hi.max(crossings[k].1);
        }
        if hi > SLOPE_REGULARITY * lo {
            continue;
        }
        for k in run {
            voiced_flags[k] = true;
        }
    }

    let mut voicing = vec![false; zff_signal.len()];
    let mut gaps_s: Vec<f64> = Vec::new();
    for i in 0..n.saturating_sub(1) {
        if voiced_flags[i] && voiced_flags[i + 1] && plausible(gci_samples[i], gci_samples[i + 1])
        {
            for v in voicing
                .iter_mut()
                .take(gci_samples[i + 1])
                .skip(gci_samples[i])
            {
                *v = true;
            }
            gaps_s.push((gci_samples[i + 1] - gci_samples[i]) as f64 / rate);
        }
    }
    let mean_pitch_s = if gaps_s.is_empty() {
        0.0
    } else {
        gaps_s.sort_by(|a, b| a.total_cmp(b));
        gaps_s[gaps_s.len() / 2]
    };

    EpochTrack {
        gci_samples,
        voiced_flags,
        voicing,
        mean_pitch_s,
        sample_rate,
    }
}

/// Full chain: filter then detect.
pub fn detect_epochs(signal: &SampledSignal) -> Result<EpochTrack> {
    let filtered = zff_filter(signal)?;
    Ok(detect_gcis(&filtered, signal.sample_rate))
}

/// Median voiced cycle duration, for sizing analysis windows.
pub fn mean_pitch_window(signal: &SampledSignal) -> Result<f64> {
    let track = detect_epochs(signal)?;
    if track.mean_pitch_s <= 0.0 {
        return Err(Error::NoVoicedContent);
    }
    Ok(track.mean_pitch_s)
}
