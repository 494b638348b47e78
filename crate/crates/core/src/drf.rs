//! Dominant resonance frequency extraction and per-cycle statistics.
//!
//! Each sharpened spectral slice is reduced to its strongest peak in the
//! vowel band (the DRF), the second-strongest peak at least a separation
//! away (DRF2), and the amplitude ratio between them. Per-cycle means and
//! spreads of the DRF track are the features the classifier consumes.

use crate::signal::SampledSignal;
use crate::zff::EpochTrack;
use crate::ztw::{anchors, combined_window, slice_with_window, HngdSlice, Spectrogram, ZtwConfig};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Search band for dominant resonances, in Hz. Covers the first formant
/// range of vowels plus the low nasal resonance region.
pub const DRF_BAND: (f64, f64) = (150.0, 1500.0);

/// Two reported peaks must be at least this far apart.
pub const MIN_PEAK_SEPARATION_HZ: f64 = 100.0;

/// Peak measurements of one slice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrfPoint {
    pub anchor_sample: usize,
    pub drf_hz: f64,
    pub drf_amp: f64,
    pub drf2_hz: Option<f64>,
    pub drf2_amp: Option<f64>,
    /// Relative amplitude difference |1 − a2/a1| of the two peaks: 0 when
    /// they share dominance equally, 1 when the second is negligible.
    pub alpha: Option<f64>,
}

/// Per-cycle aggregate of the DRF track.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleStats {
    pub cycle_start: usize,
    pub cycle_end: usize,
    pub mu_d: f64,
    pub sigma_d: f64,
    pub mean_alpha: Option<f64>,
    pub n_points: usize,
}

impl CycleStats {
    pub fn start_s(&self, sample_rate: u32) -> f64 {
        self.cycle_start as f64 / sample_rate as f64
    }

    pub fn end_s(&self, sample_rate: u32) -> f64 {
        self.cycle_end as f64 / sample_rate as f64
    }
}

/// Which side of a boundary to average over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundarySide {
    Before,
    After,
}

/// Quadratic interpolation through three log magnitudes around a peak bin.
/// Returns (bin offset in [−0.5, 0.5], refined amplitude).
pub(crate) fn refine_peak(la: f64, lb: f64, lc: f64) -> (f64, f64) {
    let denom = la - 2.0 * lb + lc;
    if denom >= 0.0 || !denom.is_finite() {
        return (0.0, lb.exp());
    }
    let delta = (0.5 * (la - lc) / denom).clamp(-0.5, 0.5);
    let refined = lb - 0.25 * (la - lc) * delta;
    (delta, refined.exp())
}

/// Indices of strict local maxima of `mags` whose frequency falls inside
/// the search band. Plateau edges do not count; a flat slice yields none.
fn band_maxima(mags: &[f64], bin_hz: f64) -> Vec<usize> {
    let lo = (DRF_BAND.0 / bin_hz).ceil() as usize;
    let hi = ((DRF_BAND.1 / bin_hz).floor() as usize).min(mags.len().saturating_sub(2));
    let mut out = Vec::new();
    for k in lo.max(1)..=hi {
        if mags[k] > mags[k - 1] && mags[k] > mags[k + 1] {
            out.push(k);
        }
    }
    out
}

pub(crate) fn ln_mag(v: f64) -> f64 {
    v.max(f64::MIN_POSITIVE).ln()
}

/// Strongest in-band peak of a slice with sub-bin refinement, or None for a
/// slice with no in-band local maximum.
pub fn extract_drf(slice: &HngdSlice) -> Option<(f64, f64)> {
    let peaks = band_maxima(&slice.mags, slice.bin_hz);
    let best = peaks.into_iter().max_by(|&a, &b| {
        slice.mags[a].total_cmp(&slice.mags[b])
    })?;
    let (delta, amp) = refine_peak(
        ln_mag(slice.mags[best - 1]),
        ln_mag(slice.mags[best]),
        ln_mag(slice.mags[best + 1]),
    );
    Some(((best as f64 + delta) * slice.bin_hz, amp))
}

/// Second-strongest in-band peak at least the separation away from the
/// first, refined the same way.
pub fn extract_drf2(slice: &HngdSlice, drf_hz: f64) -> Option<(f64, f64)> {
    let peaks = band_maxima(&slice.mags, slice.bin_hz);
    let second = peaks
        .into_iter()
        .filter(|&k| (k as f64 * slice.bin_hz - drf_hz).abs() >= MIN_PEAK_SEPARATION_HZ)
        .max_by(|&a, &b| slice.mags[a].total_cmp(&slice.mags[b]))?;
    let (delta, amp) = refine_peak(
        ln_mag(slice.mags[second - 1]),
        ln_mag(slice.mags[second]),
        ln_mag(slice.mags[second + 1]),
    );
    Some(((second as f64 + delta) * slice.bin_hz, amp))
}

/// Relative amplitude difference |1 − a2/a1| of the two peaks, or None when
/// the first is degenerate.
pub fn alpha(drf_amp: f64, drf2_amp: f64) -> Option<f64> {
    if drf_amp <= 0.0 || !drf_amp.is_finite() {
        return None;
    }
    Some((1.0 - drf2_amp / drf_amp).abs())
}

/// Measure one slice.
pub fn measure_slice(slice: &HngdSlice) -> Option<DrfPoint> {
    let (drf_hz, drf_amp) = extract_drf(slice)?;
    let second = extract_drf2(slice, drf_hz);
    let (drf2_hz, drf2_amp) = match second {
        Some((f, a)) => (Some(f), Some(a)),
        None => (None, None),
    };
    Some(DrfPoint {
        anchor_sample: slice.anchor_sample,
        drf_hz,
        drf_amp,
        drf2_hz,
        drf2_amp,
        alpha: drf2_amp.and_then(|a2| alpha(drf_amp, a2)),
    })
}

/// DRF track over a whole signal. Slices are computed and reduced to points
/// on the fly, so memory stays proportional to the number of points rather
/// than the number of retained spectra.
pub fn drf_track(signal: &SampledSignal, config: &ZtwConfig) -> Result<Vec<DrfPoint>> {
    config.validate(signal.sample_rate)?;
    let n_len = config.window_len_samples(signal.sample_rate);
    if signal.len() < n_len {
        return Err(Error::TooShort {
            needed: n_len,
            got: signal.len(),
        });
    }
    let window = combined_window(n_len)?;
    let positions = anchors(signal.len(), n_len, config.hop_samples);
    let points = positions
        .par_iter()
        .map(|&a| slice_with_window(signal, a, config, &window).map(|s| measure_slice(&s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(points.into_iter().flatten().collect())
}

/// DRF points for slices anchored at specific samples (typically epochs).
pub fn drf_at_anchors(
    signal: &SampledSignal,
    anchors_at: &[usize],
    config: &ZtwConfig,
) -> Result<Vec<DrfPoint>> {
    config.validate(signal.sample_rate)?;
    let n_len = config.window_len_samples(signal.sample_rate);
    let window = combined_window(n_len)?;
    let points = anchors_at
        .par_iter()
        .filter(|&&a| a + n_len <= signal.len())
        .map(|&a| slice_with_window(signal, a, config, &window).map(|s| measure_slice(&s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(points.into_iter().flatten().collect())
}

/// Measure every slice of an already-computed spectrogram.
pub fn measure_spectrogram(spectrogram: &Spectrogram) -> Vec<DrfPoint> {
    spectrogram
        .slices
        .iter()
        .filter_map(measure_slice)
        .collect()
}

/// Aggregate DRF points cycle by cycle. A point belongs to the cycle whose
/// span contains its anchor (start inclusive, end exclusive). Cycles with
/// fewer than `min_points` measurements are dropped: their statistics would
/// be noise.
pub fn cycle_stats(
    points: &[DrfPoint],
    epochs: &EpochTrack,
    min_points: usize,
) -> Vec<CycleStats> {
    let cycles = epochs.voiced_cycles();
    let mut out = Vec::with_capacity(cycles.len());
    let mut i = 0usize;
    for (start, end) in cycles {
        while i < points.len() && points[i].anchor_sample < start {
            i += 1;
        }
        let mut j = i;
        while j < points.len() && points[j].anchor_sample < end {
            j += 1;
        }
        let cycle_points = &points[i..j];
        i = j;
        if cycle_points.len() < min_points {
            continue;
        }
        let n = cycle_points.len() as f64;
        let mu = cycle_points.iter().map(|p| p.drf_hz).sum::<f64>() / n;
        let var = cycle_points
            .iter()
            .map(|p| (p.drf_hz - mu).powi(2))
            .sum::<f64>()
            / n;
        let alphas: Vec<f64> = cycle_points.iter().filter_map(|p| p.alpha).collect();
        let mean_alpha = if alphas.is_empty() {
            None
        } else {
            Some(alphas.iter().sum::<f64>() / alphas.len() as f64)
        };
        out.push(CycleStats {
            cycle_start: start,
            cycle_end: end,
            mu_d: mu,
            sigma_d: var.sqrt(),
            mean_alpha,
            n_points: cycle_points.len(),
        });
    }
    out
}

/// Cycles to average at a transition boundary unless the caller says
/// otherwise.
pub const BOUNDARY_CYCLES: usize = 5;

/// The `n_cycles` cycles immediately before or after a boundary time.
/// Errors when that side has fewer cycles than asked for.
pub fn boundary_cycles(
    stats: &[CycleStats],
    boundary_s: f64,
    n_cycles: usize,
    side: BoundarySide,
    sample_rate: u32,
) -> Result<Vec<&CycleStats>> {
    let boundary = boundary_s * sample_rate as f64;
    let picked: Vec<&CycleStats> = match side {
        BoundarySide::Before => {
            let mut v: Vec<&CycleStats> = stats
                .iter()
                .filter(|c| (c.cycle_end as f64) <= boundary + 0.5)
                .collect();
            let keep = v.len().saturating_sub(n_cycles);
            v.drain(..keep);
            v
        }
        BoundarySide::After => stats
            .iter()
            .filter(|c| (c.cycle_start as f64) >= boundary - 0.5)
            .take(n_cycles)
            .collect(),
    };
    if picked.len() < n_cycles {
        return Err(Error::InsufficientCycles {
            needed: n_cycles,
            found: picked.len(),
        });
    }
    Ok(picked)
}

/// Average (μ, σ) over the `n_cycles` cycles immediately before or after a
/// boundary time. Errors when that side has fewer cycles than asked for.
pub fn boundary_average(
    stats: &[CycleStats],
    boundary_s: f64,
    n_cycles: usize,
    side: BoundarySide,
    sample_rate: u32,
) -> Result<(f64, f64)> {
    let picked = boundary_cycles(stats, boundary_s, n_cycles, side, sample_rate)?;
    let n = picked.len() as f64;
    Ok((
        picked.iter().map(|c| c.mu_d).sum::<f64>() / n,
        picked.iter().map(|c| c.sigma_d).sum::<f64>() / n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slice_with_peaks(peaks: &[(usize, f64)], n_bins: usize, bin_hz: f64) -> HngdSlice {
        // Gaussian bumps give the refiner realistic curvature.
        let mut mags = vec![1e-6; n_bins];
        for &(center, amp) in peaks {
            for k in 0..n_bins {
                let d = k as f64 - center as f64;
                mags[k] += amp * (-d * d / 8.0).exp();
            }
        }
        HngdSlice {
            anchor_sample: 0,
            bin_hz,
            mags,
        }
    }

    #[test]
    fn drf_finds_the_strongest_in_band_peak() {
        let bin_hz = 16000.0 / 1024.0;
        let slice = slice_with_peaks(&[(40, 1.0), (70, 0.4)], 513, bin_hz);
        let (f, a) = extract_drf(&slice).unwrap();
        assert!((f - 40.0 * bin_hz).abs() < bin_hz / 2.0, "{f}");
        assert!(a > 0.9);
    }

    #[test]
    fn drf2_respects_separation() {
        let bin_hz = 16000.0 / 1024.0;
        // Second bump 3 bins away (47 Hz): too close, must be skipped for
        // the one at bin 70.
        let slice = slice_with_peaks(&[(40, 1.0), (43, 0.8), (70, 0.3)], 513, bin_hz);
        let (f1, _) = extract_drf(&slice).unwrap();
        let (f2, a2) = extract_drf2(&slice, f1).unwrap();
        assert!((f2 - f1).abs() >= MIN_PEAK_SEPARATION_HZ);
        assert!((f2 - 70.0 * bin_hz).abs() < bin_hz, "{f2}");
        assert!(a2 < 0.5);
    }

    #[test]
    fn flat_slice_has_no_drf() {
        let slice = HngdSlice {
            anchor_sample: 0,
            bin_hz: 16000.0 / 1024.0,
            mags: vec![0.5; 513],
        };
        assert!(extract_drf(&slice).is_none());
        assert!(measure_slice(&slice).is_none());
    }

    #[test]
    fn out_of_band_peak_is_ignored() {
        let bin_hz = 16000.0 / 1024.0;
        // Bin 5 is 78 Hz, below the band; bin 120 is 1875 Hz, above it.
        let slice = slice_with_peaks(&[(5, 10.0), (120, 10.0), (50, 1.0)], 513, bin_hz);
        let (f, _) = extract_drf(&slice).unwrap();
        assert!((f - 50.0 * bin_hz).abs() < bin_hz);
    }

    #[test]
    fn refinement_recovers_off_grid_peak() {
        let bin_hz = 10.0;
        let true_f = 403.7;
        let n_bins = 200;
        // Sampled Gaussian centered off-grid.
        let mags: Vec<f64> = (0..n_bins)
            .map(|k| {
                let d = k as f64 * bin_hz - true_f;
                (-d * d / 800.0).exp()
            })
            .collect();
        let slice = HngdSlice {
            anchor_sample: 0,
            bin_hz,
            mags,
        };
        let (f, _) = extract_drf(&slice).unwrap();
        // Log of a Gaussian is exactly quadratic, so refinement is exact up
        // to floating noise.
        assert!((f - true_f).abs() < 0.01, "{f}");
    }

    #[test]
    fn alpha_ranges_and_degenerate_cases() {
        // Equal strengths → 0; absent secondary → 1; half strength → 0.5.
        assert_eq!(alpha(1.0, 1.0), Some(0.0));
        assert_eq!(alpha(1.0, 0.0), Some(1.0));
        assert_eq!(alpha(2.0, 1.0), Some(0.5));
        assert_eq!(alpha(0.0, 0.5), None);
        assert_eq!(alpha(-1.0, 0.5), None);
    }

    fn point(anchor: usize, f: f64) -> DrfPoint {
        DrfPoint {
            anchor_sample: anchor,
            drf_hz: f,
            drf_amp: 1.0,
            drf2_hz: None,
            drf2_amp: None,
            alpha: None,
        }
    }

    fn track_of(gcis: &[usize], rate: u32) -> EpochTrack {
        let n = gcis.last().unwrap() + 1;
        EpochTrack {
            gci_samples: gcis.to_vec(),
            voiced_flags: vec![true; gcis.len()],
            voicing: vec![true; n],
            mean_pitch_s: 0.008,
            sample_rate: rate,
        }
    }

    #[test]
    fn cycle_stats_aggregates_per_cycle() {
        let epochs = track_of(&[0, 128, 256], 16000);
        let points: Vec<DrfPoint> = (0..256).map(|a| {
            let f = if a < 128 { 500.0 } else { 700.0 };
            point(a, f + (a % 4) as f64)
        }).collect();
        let stats = cycle_stats(&points, &epochs, 4);
        assert_eq!(stats.len(), 2);
        assert!((stats[0].mu_d - 501.5).abs() < 1e-9);
        assert!((stats[1].mu_d - 701.5).abs() < 1e-9);
        assert_eq!(stats[0].n_points, 128);
        // Population spread of {0,1,2,3} offsets.
        assert!((stats[0].sigma_d - (5.0f64 / 4.0).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn sparse_cycles_are_dropped() {
        let epochs = track_of(&[0, 128, 256], 16000);
        let points = vec![point(10, 500.0), point(40, 510.0), point(130, 700.0)];
        let stats = cycle_stats(&points, &epochs, 4);
        assert!(stats.is_empty());
        let stats = cycle_stats(&points, &epochs, 2);
        assert_eq!(stats.len(), 1);
        assert_eq!(stats[0].cycle_start, 0);
    }

    #[test]
    fn boundary_average_picks_the_right_side() {
        let epochs = track_of(&[0, 160, 320, 480, 640], 16000);
        let points: Vec<DrfPoint> = (0..640)
            .map(|a| point(a, if a < 320 { 400.0 } else { 800.0 }))
            .collect();
        let stats = cycle_stats(&points, &epochs, 4);
        assert_eq!(stats.len(), 4);
        let boundary_s = 320.0 / 16000.0;
        let (before, sig_b) =
            boundary_average(&stats, boundary_s, 2, BoundarySide::Before, 16000).unwrap();
        let (after, _) =
            boundary_average(&stats, boundary_s, 2, BoundarySide::After, 16000).unwrap();
        assert!((before - 400.0).abs() < 1e-9);
        assert!((after - 800.0).abs() < 1e-9);
        assert!(sig_b.abs() < 1e-9);
        assert!(matches!(
            boundary_average(&stats, boundary_s, 3, BoundarySide::Before, 16000),
            Err(Error::InsufficientCycles { needed: 3, found: 2 })
        ));
    }

    #[test]
    fn synthetic_resonance_lands_in_cycle_mean() {
        // End-to-end on a real slice path: one 600 Hz pole, epoch-anchored.
        let spec = crate::synth::VowelSpec {
            f0_hz: 100.0,
            duration_s: 0.3,
            formants: vec![crate::synth::Resonance {
                freq_hz: 600.0,
                bandwidth_hz: 40.0,
                gain: 1.0,
            }],
            nasal_pole: None,
            nasal_zero: None,
            coupling: 0.0,
            coupling_end: None,
            open_quotient: 0.5,
            phase_modulation: false,
        };
        let (signal, truth) = crate::synth::synth_vowel(&spec, 16000).unwrap();
        let config = ZtwConfig::default();
        let points = drf_at_anchors(&signal, &truth.gci_samples, &config).unwrap();
        assert!(points.len() >= 25);
        let mean = points.iter().map(|p| p.drf_hz).sum::<f64>() / points.len() as f64;
        assert!((mean - 600.0).abs() < 12.0, "mean {mean}");
    }
}
