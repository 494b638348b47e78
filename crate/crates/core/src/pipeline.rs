//! End-to-end analysis: epochs, resonance track, cycle statistics, labels,
//! and the utterance summary, in one call shared by the CLI and the C API.

use crate::classify::{extent_trend, label_track, BandConfig, Extent, LabelClass, SegmentLabel};
use crate::drf::{cycle_stats, drf_track, CycleStats, DrfPoint};
use crate::signal::{PhoneAnnotation, SampledSignal};
use crate::zff::{detect_epochs, EpochTrack};
use crate::ztw::ZtwConfig;
use crate::Result;

/// Cycles carrying fewer resonance measurements than this are dropped from
/// the statistics.
pub const MIN_CYCLE_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub ztw: ZtwConfig,
    pub bands: BandConfig,
    pub min_cycle_points: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            ztw: ZtwConfig::default(),
            bands: BandConfig::default(),
            min_cycle_points: MIN_CYCLE_POINTS,
        }
    }
}

/// Maximal stretch of consecutive equally-labeled cycles.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SegmentRun {
    pub start_s: f64,
    pub end_s: f64,
    pub label: LabelClass,
    pub extent: Extent,
    pub n_cycles: usize,
    pub mean_confidence: f64,
}

/// Per-utterance digest of the labeled track.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Summary {
    pub duration_s: f64,
    pub sample_rate: u32,
    pub n_voiced_gcis: usize,
    pub n_labeled_cycles: usize,
    pub runs: Vec<SegmentRun>,
    /// Least-squares slope of per-cycle mean alpha over time across the
    /// nasalized cycles; absent with under three such cycles.
    pub alpha_trend_per_s: Option<f64>,
}

/// Everything one utterance produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub epochs: EpochTrack,
    pub points: Vec<DrfPoint>,
    pub stats: Vec<CycleStats>,
    pub labels: Vec<SegmentLabel>,
    pub summary: Summary,
}

/// Full pipeline over one utterance. Unvoiced-only audio is a completed
/// analysis: it yields no cycles and a label track of unvoiced spans.
pub fn analyze(
    signal: &SampledSignal,
    annotations: &[PhoneAnnotation],
    config: &AnalysisConfig,
) -> Result<Analysis> {
    config.ztw.validate(signal.sample_rate)?;
    config.bands.validate()?;
    let epochs = detect_epochs(signal)?;
    let points = drf_track(signal, &config.ztw)?;
    let stats = cycle_stats(&points, &epochs, config.min_cycle_points);
    if stats.is_empty() {
        log::warn!("no voiced cycles with enough resonance measurements; labels are unvoiced only");
    }
    let labels = label_track(
        &stats,
        &points,
        &config.bands,
        annotations,
        signal.len(),
        signal.sample_rate,
    )?;
    let summary = summarize(signal, &epochs, &labels);
    Ok(Analysis {
        epochs,
        points,
        stats,
        labels,
        summary,
    })
}

fn summarize(signal: &SampledSignal, epochs: &EpochTrack, labels: &[SegmentLabel]) -> Summary {
    let rate = signal.sample_rate;
    let n_labeled_cycles = labels
        .iter()
        .filter(|l| l.label != LabelClass::Unvoiced)
        .count();
    Summary {
        duration_s: signal.duration_s(),
        sample_rate: rate,
        n_voiced_gcis: epochs.voiced_gcis().len(),
        n_labeled_cycles,
        runs: segment_runs(labels, rate),
        alpha_trend_per_s: extent_trend(labels, rate).ok(),
    }
}

/// Merges consecutive labels sharing class and extent into runs. Labels
/// separated by less than the track's own minimum-gap resolution count as
/// contiguous.
pub fn segment_runs(labels: &[SegmentLabel], sample_rate: u32) -> Vec<SegmentRun> {
    let join_tolerance = (0.001 * sample_rate as f64) as usize;
    let mut runs: Vec<SegmentRun> = Vec::new();
    let mut members: Vec<&SegmentLabel> = Vec::new();
    let flush = |members: &mut Vec<&SegmentLabel>, runs: &mut Vec<SegmentRun>| {
        let Some(first) = members.first() else { return };
        let last = members.last().unwrap();
        runs.push(SegmentRun {
            start_s: first.start_s(sample_rate),
            end_s: last.end_s(sample_rate),
            label: first.label,
            extent: first.extent,
            n_cycles: members.len(),
            mean_confidence: members.iter().map(|l| l.confidence).sum::<f64>()
                / members.len() as f64,
        });
        members.clear();
    };
    for label in labels {
        if let Some(&prev) = members.last() {
            let contiguous = label.cycle_start <= prev.cycle_end + join_tolerance;
            if !(contiguous && label.label == prev.label && label.extent == prev.extent) {
                flush(&mut members, &mut runs);
            }
        }
        members.push(label);
    }
    flush(&mut members, &mut runs);
    runs
}
