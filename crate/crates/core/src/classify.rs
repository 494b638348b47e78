//! Cycle labeling from dominant-resonance statistics.
//!
//! Two frequency bands drive every decision: a low nasal band where the
//! coupled nasal resonance sits, and a vowel band covering typical first
//! oral resonances. A cycle whose measurements live in the vowel band is an
//! oral vowel; one that moved to the nasal band while a vowel resonance
//! persists as a secondary peak is a nasalized vowel; one parked in the
//! nasal band with no vowel evidence at all is a nasal consonant.

use crate::drf::{CycleStats, DrfPoint};
use crate::signal::PhoneAnnotation;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Decision bands in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandConfig {
    /// Nasal band (low dominant resonance).
    pub b_n: (f64, f64),
    /// Vowel band (oral first-resonance range).
    pub b_v: (f64, f64),
    /// Each band is widened by this much on both sides when testing
    /// membership, so borderline points do not flap between bands.
    pub hysteresis_hz: f64,
}

impl Default for BandConfig {
    fn default() -> Self {
        BandConfig {
            b_n: (300.0, 400.0),
            b_v: (450.0, 850.0),
            hysteresis_hz: 25.0,
        }
    }
}

impl BandConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::InvalidConfig(msg);
        for (name, (lo, hi)) in [("nasal band", self.b_n), ("vowel band", self.b_v)] {
            if !(0.0 < lo && lo < hi) {
                return Err(bad(format!("{name} {lo}..{hi} is not an increasing positive range")));
            }
        }
        if !(self.hysteresis_hz >= 0.0) {
            return Err(bad(format!("hysteresis {} must be >= 0", self.hysteresis_hz)));
        }
        if self.b_n.1 + self.hysteresis_hz > self.b_v.0 - self.hysteresis_hz {
            return Err(bad(format!(
                "bands overlap after widening by {} Hz: {}..{} vs {}..{}",
                self.hysteresis_hz, self.b_n.0, self.b_n.1, self.b_v.0, self.b_v.1
            )));
        }
        Ok(())
    }

    fn in_nasal(&self, f: f64) -> bool {
        f >= self.b_n.0 - self.hysteresis_hz && f <= self.b_n.1 + self.hysteresis_hz
    }

    fn in_vowel(&self, f: f64) -> bool {
        f >= self.b_v.0 - self.hysteresis_hz && f <= self.b_v.1 + self.hysteresis_hz
    }

    /// Which widened band a frequency falls in.
    pub fn band_of(&self, f: f64) -> Band {
        if self.in_nasal(f) {
            Band::Nasal
        } else if self.in_vowel(f) {
            Band::Vowel
        } else {
            Band::Neither
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Band {
    Nasal,
    Vowel,
    Neither,
}

/// Cycle class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LabelClass {
    /// Oral vowel.
    Ov,
    /// Nasalized vowel.
    Nv,
    /// Nasal consonant.
    Nc,
    Unvoiced,
}

impl fmt::Display for LabelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelClass::Ov => "OV",
            LabelClass::Nv => "NV",
            LabelClass::Nc => "NC",
            LabelClass::Unvoiced => "UNVOICED",
        })
    }
}

/// How much of the labeled span the nasalization covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extent {
    None,
    Partial,
    Full,
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extent::None => "none",
            Extent::Partial => "partial",
            Extent::Full => "full",
        })
    }
}

/// One labeled span. Voiced spans are single cycles; unvoiced filler spans
/// cover the gaps between them and carry no resonance statistics (NaN).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentLabel {
    pub cycle_start: usize,
    pub cycle_end: usize,
    pub label: LabelClass,
    pub extent: Extent,
    pub confidence: f64,
    pub mu_d: f64,
    pub sigma_d: f64,
    pub mean_alpha: Option<f64>,
}

impl SegmentLabel {
    pub fn start_s(&self, sample_rate: u32) -> f64 {
        self.cycle_start as f64 / sample_rate as f64
    }

    pub fn end_s(&self, sample_rate: u32) -> f64 {
        self.cycle_end as f64 / sample_rate as f64
    }
}

/// Band-occupancy fractions of one cycle's measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleFeatures {
    pub stats: CycleStats,
    /// Fraction of points whose dominant peak sits in the nasal band.
    pub p_nasal: f64,
    /// Fraction of points whose dominant peak sits in the vowel band.
    pub p_vowel: f64,
    /// Fraction of points whose secondary peak sits in the vowel band.
    pub p_second_vowel: f64,
}

/// Vowel phone labels from the TIMIT inventory, used to decide whether an
/// annotated stretch can host a nasalized vowel.
pub const VOWEL_PHONES: &[&str] = &[
    "aa", "ae", "ah", "ao", "aw", "ax", "axr", "ay", "eh", "er", "ey", "ih", "ix", "iy", "ow",
    "oy", "uh", "uw", "ux",
];

pub fn is_vowel_phone(label: &str) -> bool {
    VOWEL_PHONES.contains(&label.trim().to_ascii_lowercase().as_str())
}

/// Nasal consonant phone labels from the TIMIT inventory.
pub const NASAL_PHONES: &[&str] = &["m", "n", "ng", "em", "en", "eng", "nx"];

pub fn is_nasal_phone(label: &str) -> bool {
    NASAL_PHONES.contains(&label.trim().to_ascii_lowercase().as_str())
}

/// Collect a cycle's points and reduce them to band fractions.
pub fn cycle_features(stats: &CycleStats, points: &[DrfPoint], bands: &BandConfig) -> CycleFeatures {
    let inside: Vec<&DrfPoint> = points
        .iter()
        .filter(|p| p.anchor_sample >= stats.cycle_start && p.anchor_sample < stats.cycle_end)
        .collect();
    let n = inside.len().max(1) as f64;
    let p_nasal = inside.iter().filter(|p| bands.in_nasal(p.drf_hz)).count() as f64 / n;
    let p_vowel = inside.iter().filter(|p| bands.in_vowel(p.drf_hz)).count() as f64 / n;
    let with_second: Vec<f64> = inside.iter().filter_map(|p| p.drf2_hz).collect();
    let p_second_vowel = if with_second.is_empty() {
        0.0
    } else {
        with_second.iter().filter(|&&f| bands.in_vowel(f)).count() as f64 / with_second.len() as f64
    };
    CycleFeatures {
        stats: *stats,
        p_nasal,
        p_vowel,
        p_second_vowel,
    }
}

const STRONG: f64 = 0.8;
const WEAK: f64 = 0.2;

/// Label one cycle. `vowel_annotated` says whether the cycle overlaps a
/// span annotated as a vowel phone, which disambiguates a fully shifted
/// nasalized vowel from a nasal consonant.
pub fn classify_cycle(
    features: &CycleFeatures,
    bands: &BandConfig,
    vowel_annotated: bool,
) -> SegmentLabel {
    let s = &features.stats;
    let base = |label, extent, confidence| SegmentLabel {
        cycle_start: s.cycle_start,
        cycle_end: s.cycle_end,
        label,
        extent,
        confidence,
        mu_d: s.mu_d,
        sigma_d: s.sigma_d,
        mean_alpha: s.mean_alpha,
    };
    let (p_n, p_v) = (features.p_nasal, features.p_vowel);
    if p_n >= STRONG {
        // Dominant peak fully shifted down. A surviving vowel resonance as
        // the secondary peak, or an annotation saying this is a vowel,
        // makes it a fully nasalized vowel; otherwise a nasal consonant.
        if vowel_annotated || features.p_second_vowel >= 0.5 {
            return base(LabelClass::Nv, Extent::Full, p_n);
        }
        return base(LabelClass::Nc, Extent::None, p_n);
    }
    if p_v >= STRONG {
        return base(LabelClass::Ov, Extent::None, p_v);
    }
    if p_n >= WEAK && p_v >= WEAK {
        // Dominance alternates between the bands within the cycle.
        let confidence = (p_n.min(p_v) / 0.5).min(1.0);
        return base(LabelClass::Nv, Extent::Partial, confidence);
    }
    // Weak evidence: fall back to whichever band the cycle mean is closer
    // to, at reduced confidence.
    let d_n = distance_to(s.mu_d, bands.b_n);
    let d_v = distance_to(s.mu_d, bands.b_v);
    let confidence = p_n.max(p_v) * 0.5;
    if d_n < d_v {
        base(LabelClass::Nc, Extent::None, confidence)
    } else {
        base(LabelClass::Ov, Extent::None, confidence)
    }
}

fn distance_to(f: f64, (lo, hi): (f64, f64)) -> f64 {
    if f < lo {
        lo - f
    } else if f > hi {
        f - hi
    } else {
        0.0
    }
}

fn overlaps_vowel(start: usize, end: usize, annotations: &[PhoneAnnotation], rate: u32) -> bool {
    let (s, e) = (start as f64 / rate as f64, end as f64 / rate as f64);
    annotations
        .iter()
        .any(|a| is_vowel_phone(&a.label) && a.start_s < e && a.end_s > s)
}

/// Gaps shorter than this are not worth an unvoiced filler span.
const MIN_GAP_S: f64 = 0.001;

/// Label every voiced cycle and fill the gaps with unvoiced spans.
///
/// Passes, in order: per-cycle classification, regrade of annotated NC
/// cycles to fully nasalized vowels, and a three-cycle majority smooth. A
/// nasalized cycle flanked by oral cycles keeps its label when its mean
/// relative amplitude difference says the two resonances genuinely shared
/// dominance (α near 0), rather than yielding to the majority.
pub fn label_track(
    stats: &[CycleStats],
    points: &[DrfPoint],
    bands: &BandConfig,
    annotations: &[PhoneAnnotation],
    total_samples: usize,
    sample_rate: u32,
) -> Result<Vec<SegmentLabel>> {
    bands.validate()?;
    let mut labels: Vec<SegmentLabel> = stats
        .iter()
        .map(|s| {
            let features = cycle_features(s, points, bands);
            let annotated = overlaps_vowel(s.cycle_start, s.cycle_end, annotations, sample_rate);
            classify_cycle(&features, bands, annotated)
        })
        .collect();

    for l in labels.iter_mut() {
        if l.label == LabelClass::Nc
            && overlaps_vowel(l.cycle_start, l.cycle_end, annotations, sample_rate)
        {
            l.label = LabelClass::Nv;
            l.extent = Extent::Full;
        }
    }

    // Majority smoothing over cycle triples.
    if labels.len() >= 3 {
        let snapshot: Vec<LabelClass> = labels.iter().map(|l| l.label).collect();
        for i in 1..labels.len() - 1 {
            let (prev, cur, next) = (snapshot[i - 1], snapshot[i], snapshot[i + 1]);
            if prev == next && cur != prev {
                let resists = cur == LabelClass::Nv
                    && prev == LabelClass::Ov
                    && labels[i].mean_alpha.map_or(false, |a| a <= 0.5);
                if !resists {
                    labels[i].label = prev;
                    labels[i].extent = match prev {
                        LabelClass::Nv => Extent::Partial,
                        _ => Extent::None,
                    };
                    labels[i].confidence = labels[i].confidence.min(0.5);
                }
            }
        }
    }

    // Unvoiced filler spans over everything the cycles do not cover.
    let min_gap = (MIN_GAP_S * sample_rate as f64) as usize;
    let mut out = Vec::with_capacity(labels.len() + 4);
    let mut cursor = 0usize;
    let unvoiced = |start: usize, end: usize| SegmentLabel {
        cycle_start: start,
        cycle_end: end,
        label: LabelClass::Unvoiced,
        extent: Extent::None,
        confidence: 1.0,
        mu_d: f64::NAN,
        sigma_d: f64::NAN,
        mean_alpha: None,
    };
    for l in labels {
        if l.cycle_start > cursor && l.cycle_start - cursor >= min_gap {
            out.push(unvoiced(cursor, l.cycle_start));
        }
        cursor = cursor.max(l.cycle_end);
        out.push(l);
    }
    if total_samples > cursor && total_samples - cursor >= min_gap {
        out.push(unvoiced(cursor, total_samples));
    }
    Ok(out)
}

/// Dominant band of each glottal phase within one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseProfile {
    /// Majority band over the early (closed-phase) part of the cycle.
    pub closed: Band,
    /// Majority band over the late (open-phase) part of the cycle.
    pub open: Band,
}

/// Fraction of the cycle treated as the closed phase when profiling.
const CLOSED_PHASE_END: f64 = 0.3;
/// The open-phase probe window, skipping the transition region.
const OPEN_PHASE_RANGE: (f64, f64) = (0.4, 0.9);

const MIN_PROFILE_POINTS: usize = 8;

/// Which band dominates early vs late in a cycle. Needs a dense track
/// (hop well below the period) to say anything.
pub fn phase_profile(
    points: &[DrfPoint],
    cycle: (usize, usize),
    bands: &BandConfig,
) -> Result<PhaseProfile> {
    let (start, end) = cycle;
    let len = end.saturating_sub(start);
    let inside: Vec<&DrfPoint> = points
        .iter()
        .filter(|p| p.anchor_sample >= start && p.anchor_sample < end)
        .collect();
    if inside.len() < MIN_PROFILE_POINTS || len == 0 {
        return Err(Error::TooShort {
            needed: MIN_PROFILE_POINTS,
            got: inside.len(),
        });
    }
    let majority = |lo: f64, hi: f64| -> Band {
        let lo_s = start as f64 + lo * len as f64;
        let hi_s = start as f64 + hi * len as f64;
        let mut nasal = 0usize;
        let mut vowel = 0usize;
        for p in &inside {
            let a = p.anchor_sample as f64;
            if a >= lo_s && a < hi_s {
                match bands.band_of(p.drf_hz) {
                    Band::Nasal => nasal += 1,
                    Band::Vowel => vowel += 1,
                    Band::Neither => {}
                }
            }
        }
        match nasal.cmp(&vowel) {
            std::cmp::Ordering::Greater => Band::Nasal,
            std::cmp::Ordering::Less => Band::Vowel,
            std::cmp::Ordering::Equal => Band::Neither,
        }
    };
    Ok(PhaseProfile {
        closed: majority(0.0, CLOSED_PHASE_END),
        open: majority(OPEN_PHASE_RANGE.0, OPEN_PHASE_RANGE.1),
    })
}

/// Least-squares slope of the two-peak ratio across nasalized cycles, per
/// second. A growing ratio means the secondary resonance is gaining on the
/// dominant one, i.e. coupling is increasing through the span.
pub fn extent_trend(labels: &[SegmentLabel], sample_rate: u32) -> Result<f64> {
    let pts: Vec<(f64, f64)> = labels
        .iter()
        .filter(|l| l.label == LabelClass::Nv)
        .filter_map(|l| {
            l.mean_alpha.map(|a| {
                let mid = (l.cycle_start + l.cycle_end) as f64 / 2.0 / sample_rate as f64;
                (mid, a)
            })
        })
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientCycles {
            needed: 3,
            found: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mean_t = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_a = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = pts.iter().map(|p| (p.0 - mean_t) * (p.1 - mean_a)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mean_t).powi(2)).sum();
    if den == 0.0 {
        return Err(Error::InsufficientCycles {
            needed: 3,
            found: 1,
        });
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(start: usize, end: usize, mu: f64, alpha: Option<f64>) -> CycleStats {
        CycleStats {
            cycle_start: start,
            cycle_end: end,
            mu_d: mu,
            sigma_d: 10.0,
            mean_alpha: alpha,
            n_points: 100,
        }
    }

    fn points_at(start: usize, end: usize, drf: f64, drf2: Option<f64>) -> Vec<DrfPoint> {
        (start..end)
            .map(|a| DrfPoint {
                anchor_sample: a,
                drf_hz: drf,
                drf_amp: 1.0,
                drf2_hz: drf2,
                drf2_amp: drf2.map(|_| 0.6),
                alpha: drf2.map(|_| 0.6),
            })
            .collect()
    }

    #[test]
    fn band_config_validation() {
        assert!(BandConfig::default().validate().is_ok());
        let mut bad = BandConfig::default();
        bad.hysteresis_hz = 40.0;
        assert!(bad.validate().is_err());
        let mut bad = BandConfig::default();
        bad.b_n = (400.0, 300.0);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn oral_cycle_is_ov() {
        let bands = BandConfig::default();
        let s = stats(0, 160, 600.0, None);
        let f = cycle_features(&s, &points_at(0, 160, 600.0, None), &bands);
        let l = classify_cycle(&f, &bands, false);
        assert_eq!(l.label, LabelClass::Ov);
        assert_eq!(l.extent, Extent::None);
        assert!(l.confidence >= 0.8);
    }

    #[test]
    fn shifted_cycle_with_vowel_second_peak_is_nv_full() {
        let bands = BandConfig::default();
        let s = stats(0, 160, 340.0, Some(0.6));
        let f = cycle_features(&s, &points_at(0, 160, 340.0, Some(600.0)), &bands);
        let l = classify_cycle(&f, &bands, false);
        assert_eq!(l.label, LabelClass::Nv);
        assert_eq!(l.extent, Extent::Full);
    }

    #[test]
    fn shifted_cycle_without_vowel_evidence_is_nc() {
        let bands = BandConfig::default();
        let s = stats(0, 160, 340.0, None);
        let f = cycle_features(&s, &points_at(0, 160, 340.0, None), &bands);
        let l = classify_cycle(&f, &bands, false);
        assert_eq!(l.label, LabelClass::Nc);
        // With an annotation saying "vowel", the same evidence reads as a
        // fully nasalized vowel.
        let l = classify_cycle(&f, &bands, true);
        assert_eq!(l.label, LabelClass::Nv);
        assert_eq!(l.extent, Extent::Full);
    }

    #[test]
    fn alternating_cycle_is_nv_partial() {
        let bands = BandConfig::default();
        let mut pts = points_at(0, 80, 340.0, None);
        pts.extend(points_at(80, 160, 600.0, None));
        let s = stats(0, 160, 470.0, Some(0.4));
        let f = cycle_features(&s, &pts, &bands);
        assert!(f.p_nasal > 0.2 && f.p_vowel > 0.2);
        let l = classify_cycle(&f, &bands, false);
        assert_eq!(l.label, LabelClass::Nv);
        assert_eq!(l.extent, Extent::Partial);
        assert!(l.confidence >= 0.9);
    }

    #[test]
    fn off_band_cycle_falls_back_to_nearest() {
        let bands = BandConfig::default();
        let s = stats(0, 160, 1100.0, None);
        let f = cycle_features(&s, &points_at(0, 160, 1100.0, None), &bands);
        let l = classify_cycle(&f, &bands, false);
        assert_eq!(l.label, LabelClass::Ov);
        assert!(l.confidence <= 0.5);
    }

    fn full_track(
        mus: &[f64],
        alphas: &[Option<f64>],
    ) -> (Vec<CycleStats>, Vec<DrfPoint>) {
        let cycle = 160usize;
        let mut stats_v = Vec::new();
        let mut points = Vec::new();
        for (i, (&mu, &al)) in mus.iter().zip(alphas).enumerate() {
            let (s, e) = (i * cycle, (i + 1) * cycle);
            stats_v.push(stats(s, e, mu, al));
            let drf2 = if mu < 450.0 { al.map(|_| 600.0) } else { None };
            points.extend(points_at(s, e, mu, drf2));
        }
        (stats_v, points)
    }

    #[test]
    fn smoothing_flips_weak_island() {
        let bands = BandConfig::default();
        // alpha 0.9: the second peak was nearly absent, so the isolated NV
        // call has no dual-resonance support and yields to its neighbors.
        let (stats_v, points) = full_track(
            &[600.0, 600.0, 340.0, 600.0, 600.0],
            &[None, None, Some(0.9), None, None],
        );
        let labels =
            label_track(&stats_v, &points, &bands, &[], 5 * 160, 16000).unwrap();
        let voiced: Vec<_> = labels.iter().filter(|l| l.label != LabelClass::Unvoiced).collect();
        assert!(voiced.iter().all(|l| l.label == LabelClass::Ov));
        assert!(voiced[2].confidence <= 0.5);
    }

    #[test]
    fn strong_second_peak_resists_smoothing() {
        let bands = BandConfig::default();
        // alpha 0.3: the two resonances shared dominance, which is exactly
        // the nasalization signature, so the NV island survives.
        let (stats_v, points) = full_track(
            &[600.0, 600.0, 340.0, 600.0, 600.0],
            &[None, None, Some(0.3), None, None],
        );
        let annotations = vec![PhoneAnnotation {
            start_s: 0.0,
            end_s: 0.05,
            label: "aa".into(),
        }];
        let labels =
            label_track(&stats_v, &points, &bands, &annotations, 5 * 160, 16000).unwrap();
        assert_eq!(labels[2].label, LabelClass::Nv);
    }

    #[test]
    fn unvoiced_gaps_fill_the_track() {
        let bands = BandConfig::default();
        let stats_v = vec![stats(1000, 1160, 600.0, None)];
        let points = points_at(1000, 1160, 600.0, None);
        let labels = label_track(&stats_v, &points, &bands, &[], 3000, 16000).unwrap();
        assert_eq!(labels.len(), 3);
        assert_eq!(labels[0].label, LabelClass::Unvoiced);
        assert_eq!((labels[0].cycle_start, labels[0].cycle_end), (0, 1000));
        assert_eq!(labels[1].label, LabelClass::Ov);
        assert_eq!(labels[2].label, LabelClass::Unvoiced);
        assert_eq!(labels[2].cycle_end, 3000);
        assert!(labels[0].mu_d.is_nan());
    }

    #[test]
    fn phase_profile_splits_closed_and_open() {
        let bands = BandConfig::default();
        // First 30% of the cycle in the vowel band, last 60% in the nasal
        // band: the pattern a nasalized cycle shows.
        let mut pts = points_at(0, 48, 600.0, None);
        pts.extend(points_at(48, 160, 340.0, None));
        let profile = phase_profile(&pts, (0, 160), &bands).unwrap();
        assert_eq!(profile.closed, Band::Vowel);
        assert_eq!(profile.open, Band::Nasal);
        assert!(matches!(
            phase_profile(&pts[..4], (0, 160), &bands),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn extent_trend_tracks_growing_alpha() {
        let cycle = 160usize;
        let ramped: Vec<SegmentLabel> = (0..10)
            .map(|i| SegmentLabel {
                cycle_start: i * cycle,
                cycle_end: (i + 1) * cycle,
                label: LabelClass::Nv,
                extent: Extent::Partial,
                confidence: 1.0,
                mu_d: 400.0,
                sigma_d: 10.0,
                mean_alpha: Some(0.1 + 0.08 * i as f64),
            })
            .collect();
        let slope = extent_trend(&ramped, 16000).unwrap();
        assert!(slope > 0.0);
        let constant: Vec<SegmentLabel> = ramped
            .iter()
            .map(|l| SegmentLabel {
                mean_alpha: Some(0.5),
                ..*l
            })
            .collect();
        let flat = extent_trend(&constant, 16000).unwrap();
        assert!(flat.abs() < slope * 0.01);
        assert!(extent_trend(&ramped[..2], 16000).is_err());
    }

    #[test]
    fn display_strings() {
        assert_eq!(LabelClass::Ov.to_string(), "OV");
        assert_eq!(LabelClass::Unvoiced.to_string(), "UNVOICED");
        assert_eq!(Extent::Partial.to_string(), "partial");
        assert!(is_vowel_phone("AA"));
        assert!(is_vowel_phone(" iy "));
        assert!(!is_vowel_phone("n"));
    }
}
