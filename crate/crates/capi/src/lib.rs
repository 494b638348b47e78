//! C ABI for the nasalyze library.
//!
//! Two opaque handle types cross the boundary: `NzSignal` (an audio buffer)
//! and `NzAnalysis` (the result of running the full pipeline over one).
//! Every fallible call returns an `NzStatus`; on anything but
//! `NzStatus_OK`, `nz_last_error_message` holds a human-readable detail
//! line for the same thread until the next failing call. Structs returned
//! through out-pointers are plain copies and stay valid after the handle
//! they came from is freed; strings returned as `const char *` are static
//! or thread-local and must not be freed by the caller.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use libc::c_char;
use nasalyze::classify::{BandConfig, Extent, LabelClass};
use nasalyze::pipeline::{analyze, Analysis, AnalysisConfig};
use nasalyze::signal::{load_wav, read_annotations, resample, SampledSignal};
use nasalyze::ztw::ZtwConfig;
use nasalyze::Error;

/// Outcome of a fallible call. Anything but `OK` leaves a detail line
/// readable through `nz_last_error_message`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NzStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A configuration or argument value is outside its valid domain.
    InvalidArgument = 2,
    /// An index was past the end of the queried sequence.
    OutOfRange = 3,
    /// The operating system reported an I/O failure.
    Io = 4,
    /// The audio is empty or not decodable.
    BadAudio = 5,
    /// No voiced stretch was found where one is required.
    NoVoicedContent = 6,
    /// Too little material for the requested statistic.
    InsufficientData = 7,
    /// An annotation or script file did not parse.
    ParseError = 8,
    /// A bug tripped an internal invariant.
    Internal = 9,
}

/// Class assigned to one labeled span.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NzLabelClass {
    /// Oral vowel.
    Ov = 0,
    /// Nasalized vowel.
    Nv = 1,
    /// Nasal consonant.
    Nc = 2,
    Unvoiced = 3,
}

/// How much of a labeled span the nasalization covers.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NzExtent {
    None = 0,
    Partial = 1,
    Full = 2,
}

/// Analysis knobs. Start from `nz_config_default`, then override fields.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NzConfig {
    /// Spectrum window length, milliseconds.
    pub window_len_ms: f64,
    /// DFT length; power of two, at least twice the window in samples.
    pub dft_size: usize,
    /// Anchor step in samples; 1 gives the densest resonance track.
    pub hop_samples: usize,
    pub nasal_band_lo_hz: f64,
    pub nasal_band_hi_hz: f64,
    pub vowel_band_lo_hz: f64,
    pub vowel_band_hi_hz: f64,
    /// Band edges are widened by this much when testing membership.
    pub hysteresis_hz: f64,
    /// Cycles with fewer resonance measurements are dropped.
    pub min_cycle_points: usize,
}

/// One glottal closure instant.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NzEpoch {
    pub sample: usize,
    pub seconds: f64,
    pub voiced: bool,
}

/// One instantaneous resonance measurement. When no secondary peak was
/// resolved, `has_second` is false and `drf2_hz`, `drf2_amp`, and `alpha`
/// are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NzDrfPoint {
    pub anchor_sample: usize,
    pub drf_hz: f64,
    pub drf_amp: f64,
    pub drf2_hz: f64,
    pub drf2_amp: f64,
    /// Relative dominance gap of the two strongest peaks in [0, 1].
    pub alpha: f64,
    pub has_second: bool,
}

/// Per-cycle aggregate of the resonance track.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NzCycleStats {
    pub start_s: f64,
    pub end_s: f64,
    /// Mean dominant-resonance frequency over the cycle, Hz.
    pub mu_d_hz: f64,
    /// Standard deviation of the same, Hz.
    pub sigma_d_hz: f64,
    /// NaN when the cycle had no two-peak measurements.
    pub mean_alpha: f64,
    pub n_points: usize,
}

/// One labeled span. Unvoiced filler spans carry NaN statistics.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NzLabel {
    pub start_s: f64,
    pub end_s: f64,
    pub label: NzLabelClass,
    pub extent: NzExtent,
    pub confidence: f64,
    pub mu_d_hz: f64,
    pub sigma_d_hz: f64,
    /// NaN when no cycle in the span had two-peak measurements.
    pub mean_alpha: f64,
}

/// Maximal stretch of consecutive equally-labeled spans.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NzRun {
    pub start_s: f64,
    pub end_s: f64,
    pub label: NzLabelClass,
    pub extent: NzExtent,
    pub n_cycles: usize,
    pub mean_confidence: f64,
}

/// Per-utterance digest.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NzSummary {
    pub duration_s: f64,
    pub sample_rate: u32,
    pub n_voiced_gcis: usize,
    pub n_labeled_cycles: usize,
    pub n_runs: usize,
    /// Median voiced cycle length, seconds; 0 when nothing is voiced.
    pub mean_pitch_s: f64,
    /// Slope of nasalization strength over time; NaN with under three
    /// nasalized cycles.
    pub alpha_trend_per_s: f64,
}

/// Opaque audio buffer.
pub struct NzSignal(SampledSignal);

/// Opaque analysis result.
pub struct NzAnalysis(Analysis);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: NzStatus, msg: &str) -> NzStatus {
    let msg = CString::new(msg).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
    status
}

fn fail_error(err: &Error) -> NzStatus {
    let status = match err {
        Error::Io { .. } => NzStatus::Io,
        Error::UnsupportedEncoding(_) | Error::EmptyAudio => NzStatus::BadAudio,
        Error::TooShort { .. } | Error::InsufficientCycles { .. } => NzStatus::InsufficientData,
        Error::InvalidConfig(_) | Error::RateTooLow(_) => NzStatus::InvalidArgument,
        Error::AnchorOutOfRange { .. } => NzStatus::OutOfRange,
        Error::NoVoicedContent | Error::UnvoicedFrame { .. } => NzStatus::NoVoicedContent,
        Error::AnnotationParse { .. } | Error::ScriptField { .. } | Error::ScriptParse(_) => {
            NzStatus::ParseError
        }
    };
    fail(status, &err.to_string())
}

fn null_arg(name: &str) -> NzStatus {
    fail(NzStatus::NullPointer, &format!("{name} must not be null"))
}

/// Converts a C path into an owned string, or reports why it cannot be.
unsafe fn path_arg(ptr: *const c_char, name: &str) -> Result<String, NzStatus> {
    if ptr.is_null() {
        return Err(null_arg(name));
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(s.to_string()),
        Err(_) => Err(fail(
            NzStatus::InvalidArgument,
            &format!("{name} is not valid UTF-8"),
        )),
    }
}

fn config_of(c: &NzConfig) -> AnalysisConfig {
    AnalysisConfig {
        ztw: ZtwConfig {
            window_len_ms: c.window_len_ms,
            dft_size: c.dft_size,
            hop_samples: c.hop_samples,
            ..ZtwConfig::default()
        },
        bands: BandConfig {
            b_n: (c.nasal_band_lo_hz, c.nasal_band_hi_hz),
            b_v: (c.vowel_band_lo_hz, c.vowel_band_hi_hz),
            hysteresis_hz: c.hysteresis_hz,
        },
        min_cycle_points: c.min_cycle_points,
    }
}

fn label_of(l: LabelClass) -> NzLabelClass {
    match l {
        LabelClass::Ov => NzLabelClass::Ov,
        LabelClass::Nv => NzLabelClass::Nv,
        LabelClass::Nc => NzLabelClass::Nc,
        LabelClass::Unvoiced => NzLabelClass::Unvoiced,
    }
}

fn extent_of(e: Extent) -> NzExtent {
    match e {
        Extent::None => NzExtent::None,
        Extent::Partial => NzExtent::Partial,
        Extent::Full => NzExtent::Full,
    }
}

/// Library version as a static NUL-terminated string. Never null; do not
/// free.
#[no_mangle]
pub extern "C" fn nz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Detail line of the current thread's most recent failure, empty before
/// any failure. The pointer stays valid until the next failing call on the
/// same thread; do not free.
#[no_mangle]
pub extern "C" fn nz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Default analysis configuration by value.
#[no_mangle]
pub extern "C" fn nz_config_default() -> NzConfig {
    let d = AnalysisConfig::default();
    NzConfig {
        window_len_ms: d.ztw.window_len_ms,
        dft_size: d.ztw.dft_size,
        hop_samples: d.ztw.hop_samples,
        nasal_band_lo_hz: d.bands.b_n.0,
        nasal_band_hi_hz: d.bands.b_n.1,
        vowel_band_lo_hz: d.bands.b_v.0,
        vowel_band_hi_hz: d.bands.b_v.1,
        hysteresis_hz: d.bands.hysteresis_hz,
        min_cycle_points: d.min_cycle_points,
    }
}

/// Stable name of a label class ("OV", "NV", "NC", "UNVOICED"). Static; do
/// not free.
#[no_mangle]
pub extern "C" fn nz_label_class_name(label: NzLabelClass) -> *const c_char {
    let name: &'static str = match label {
        NzLabelClass::Ov => "OV\0",
        NzLabelClass::Nv => "NV\0",
        NzLabelClass::Nc => "NC\0",
        NzLabelClass::Unvoiced => "UNVOICED\0",
    };
    name.as_ptr() as *const c_char
}

/// Stable name of an extent ("none", "partial", "full"). Static; do not
/// free.
#[no_mangle]
pub extern "C" fn nz_extent_name(extent: NzExtent) -> *const c_char {
    let name: &'static str = match extent {
        NzExtent::None => "none\0",
        NzExtent::Partial => "partial\0",
        NzExtent::Full => "full\0",
    };
    name.as_ptr() as *const c_char
}

/// Loads a 16-bit or float PCM WAV file (mono, or averaged to mono) and
/// peak-normalizes it. On success writes a new handle to `out`; free it
/// with `nz_signal_free`.
///
/// # Safety
/// `path` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer; both must stay valid for the duration of the
/// call.
#[no_mangle]
pub unsafe extern "C" fn nz_signal_from_wav(
    path: *const c_char,
    out: *mut *mut NzSignal,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let path = match path_arg(path, "path") {
        Ok(p) => p,
        Err(status) => return status,
    };
    match load_wav(Path::new(&path)) {
        Ok(signal) => {
            *out = Box::into_raw(Box::new(NzSignal(signal)));
            NzStatus::Ok
        }
        Err(e) => fail_error(&e),
    }
}

/// Copies `len` samples into a new handle. Samples are taken as-is (no
/// normalization); the analysis is amplitude-scale invariant. Free the
/// handle with `nz_signal_free`.
///
/// # Safety
/// `samples` must point to `len` readable doubles and `out` to writable
/// storage for one pointer; both must stay valid for the duration of the
/// call.
#[no_mangle]
pub unsafe extern "C" fn nz_signal_from_samples(
    samples: *const f64,
    len: usize,
    sample_rate: u32,
    out: *mut *mut NzSignal,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    if samples.is_null() {
        return null_arg("samples");
    }
    if len == 0 {
        return fail(NzStatus::BadAudio, "audio stream is empty");
    }
    if sample_rate < nasalyze::signal::MIN_SAMPLE_RATE {
        return fail(
            NzStatus::InvalidArgument,
            &format!(
                "sample rate {sample_rate} Hz is below the {} Hz floor",
                nasalyze::signal::MIN_SAMPLE_RATE
            ),
        );
    }
    let buf = std::slice::from_raw_parts(samples, len).to_vec();
    *out = Box::into_raw(Box::new(NzSignal(SampledSignal::new(buf, sample_rate))));
    NzStatus::Ok
}

/// Resamples to `target_rate` into a new handle; the input handle is left
/// untouched.
///
/// # Safety
/// `signal` must be a live handle from this library and `out` writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn nz_signal_resample(
    signal: *const NzSignal,
    target_rate: u32,
    out: *mut *mut NzSignal,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(signal) = signal.as_ref() else {
        return null_arg("signal");
    };
    match resample(&signal.0, target_rate) {
        Ok(resampled) => {
            *out = Box::into_raw(Box::new(NzSignal(resampled)));
            NzStatus::Ok
        }
        Err(e) => fail_error(&e),
    }
}

/// Number of samples; 0 for a null handle.
///
/// # Safety
/// `signal` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nz_signal_len(signal: *const NzSignal) -> usize {
    signal.as_ref().map_or(0, |s| s.0.len())
}

/// Sample rate in Hz; 0 for a null handle.
///
/// # Safety
/// `signal` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nz_signal_sample_rate(signal: *const NzSignal) -> u32 {
    signal.as_ref().map_or(0, |s| s.0.sample_rate)
}

/// Duration in seconds; 0 for a null handle.
///
/// # Safety
/// `signal` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nz_signal_duration_s(signal: *const NzSignal) -> f64 {
    signal.as_ref().map_or(0.0, |s| s.0.duration_s())
}

/// Frees a signal handle. Null is a no-op.
///
/// # Safety
/// `signal` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nz_signal_free(signal: *mut NzSignal) {
    if !signal.is_null() {
        drop(Box::from_raw(signal));
    }
}

unsafe fn analyze_impl(
    signal: *const NzSignal,
    config: *const NzConfig,
    phn_path: *const c_char,
    out: *mut *mut NzAnalysis,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(signal) = signal.as_ref() else {
        return null_arg("signal");
    };
    let config = match config.as_ref() {
        Some(c) => config_of(c),
        None => AnalysisConfig::default(),
    };
    let annotations = if phn_path.is_null() {
        Vec::new()
    } else {
        let path = match path_arg(phn_path, "phn_path") {
            Ok(p) => p,
            Err(status) => return status,
        };
        match read_annotations(Path::new(&path)) {
            Ok(a) => a,
            Err(e) => return fail_error(&e),
        }
    };
    // A panic must not unwind into C; surface it as a status instead.
    let result = catch_unwind(AssertUnwindSafe(|| {
        analyze(&signal.0, &annotations, &config)
    }));
    match result {
        Ok(Ok(analysis)) => {
            *out = Box::into_raw(Box::new(NzAnalysis(analysis)));
            NzStatus::Ok
        }
        Ok(Err(e)) => fail_error(&e),
        Err(_) => fail(NzStatus::Internal, "internal invariant violated"),
    }
}

/// Runs the full pipeline: epochs, resonance track, cycle statistics,
/// labels, summary. `config` may be null for defaults. On success writes a
/// new handle to `out`; free it with `nz_analysis_free`. Audio with no
/// voiced content still succeeds and yields only unvoiced spans.
///
/// # Safety
/// `signal` must be a live handle from this library, `config` null or a
/// readable `NzConfig`, and `out` writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn nz_analyze(
    signal: *const NzSignal,
    config: *const NzConfig,
    out: *mut *mut NzAnalysis,
) -> NzStatus {
    analyze_impl(signal, config, std::ptr::null(), out)
}

/// Like `nz_analyze`, but reads phone annotations (start/end/label lines)
/// from `phn_path` so annotated vowels can be separated from nasal
/// consonants.
///
/// # Safety
/// As `nz_analyze`; additionally `phn_path` must point to a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nz_analyze_with_phones(
    signal: *const NzSignal,
    config: *const NzConfig,
    phn_path: *const c_char,
    out: *mut *mut NzAnalysis,
) -> NzStatus {
    if phn_path.is_null() {
        return null_arg("phn_path");
    }
    analyze_impl(signal, config, phn_path, out)
}

/// Number of detected glottal epochs; 0 for a null handle.
///
/// # Safety
/// `analysis` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_n_epochs(analysis: *const NzAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.0.epochs.gci_samples.len())
}

/// Copies epoch `index` to `out`.
///
/// # Safety
/// `analysis` must be a live handle from this library and `out` writable
/// storage for one `NzEpoch`.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_epoch(
    analysis: *const NzAnalysis,
    index: usize,
    out: *mut NzEpoch,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(a) = analysis.as_ref() else {
        return null_arg("analysis");
    };
    let track = &a.0.epochs;
    if index >= track.gci_samples.len() {
        return fail(
            NzStatus::OutOfRange,
            &format!("epoch {index} of {}", track.gci_samples.len()),
        );
    }
    let sample = track.gci_samples[index];
    *out = NzEpoch {
        sample,
        seconds: sample as f64 / track.sample_rate as f64,
        voiced: track.voiced_flags[index],
    };
    NzStatus::Ok
}

/// Number of resonance-track points; 0 for a null handle.
///
/// # Safety
/// `analysis` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_n_points(analysis: *const NzAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.0.points.len())
}

/// Copies resonance-track point `index` to `out`.
///
/// # Safety
/// `analysis` must be a live handle from this library and `out` writable
/// storage for one `NzDrfPoint`.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_point(
    analysis: *const NzAnalysis,
    index: usize,
    out: *mut NzDrfPoint,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(a) = analysis.as_ref() else {
        return null_arg("analysis");
    };
    let points = &a.0.points;
    if index >= points.len() {
        return fail(
            NzStatus::OutOfRange,
            &format!("point {index} of {}", points.len()),
        );
    }
    let p = &points[index];
    *out = NzDrfPoint {
        anchor_sample: p.anchor_sample,
        drf_hz: p.drf_hz,
        drf_amp: p.drf_amp,
        drf2_hz: p.drf2_hz.unwrap_or(f64::NAN),
        drf2_amp: p.drf2_amp.unwrap_or(f64::NAN),
        alpha: p.alpha.unwrap_or(f64::NAN),
        has_second: p.drf2_hz.is_some(),
    };
    NzStatus::Ok
}

/// Number of per-cycle statistics rows; 0 for a null handle.
///
/// # Safety
/// `analysis` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_n_cycles(analysis: *const NzAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.0.stats.len())
}

/// Copies cycle statistics `index` to `out`.
///
/// # Safety
/// `analysis` must be a live handle from this library and `out` writable
/// storage for one `NzCycleStats`.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_cycle(
    analysis: *const NzAnalysis,
    index: usize,
    out: *mut NzCycleStats,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(a) = analysis.as_ref() else {
        return null_arg("analysis");
    };
    let stats = &a.0.stats;
    if index >= stats.len() {
        return fail(
            NzStatus::OutOfRange,
            &format!("cycle {index} of {}", stats.len()),
        );
    }
    let s = &stats[index];
    let rate = a.0.epochs.sample_rate;
    *out = NzCycleStats {
        start_s: s.start_s(rate),
        end_s: s.end_s(rate),
        mu_d_hz: s.mu_d,
        sigma_d_hz: s.sigma_d,
        mean_alpha: s.mean_alpha.unwrap_or(f64::NAN),
        n_points: s.n_points,
    };
    NzStatus::Ok
}

/// Number of labeled spans; 0 for a null handle.
///
/// # Safety
/// `analysis` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_n_labels(analysis: *const NzAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.0.labels.len())
}

/// Copies labeled span `index` to `out`.
///
/// # Safety
/// `analysis` must be a live handle from this library and `out` writable
/// storage for one `NzLabel`.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_label(
    analysis: *const NzAnalysis,
    index: usize,
    out: *mut NzLabel,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(a) = analysis.as_ref() else {
        return null_arg("analysis");
    };
    let labels = &a.0.labels;
    if index >= labels.len() {
        return fail(
            NzStatus::OutOfRange,
            &format!("label {index} of {}", labels.len()),
        );
    }
    let l = &labels[index];
    let rate = a.0.epochs.sample_rate;
    *out = NzLabel {
        start_s: l.start_s(rate),
        end_s: l.end_s(rate),
        label: label_of(l.label),
        extent: extent_of(l.extent),
        confidence: l.confidence,
        mu_d_hz: l.mu_d,
        sigma_d_hz: l.sigma_d,
        mean_alpha: l.mean_alpha.unwrap_or(f64::NAN),
    };
    NzStatus::Ok
}

/// Number of merged runs in the summary; 0 for a null handle.
///
/// # Safety
/// `analysis` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_n_runs(analysis: *const NzAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.0.summary.runs.len())
}

/// Copies merged run `index` to `out`.
///
/// # Safety
/// `analysis` must be a live handle from this library and `out` writable
/// storage for one `NzRun`.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_run(
    analysis: *const NzAnalysis,
    index: usize,
    out: *mut NzRun,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(a) = analysis.as_ref() else {
        return null_arg("analysis");
    };
    let runs = &a.0.summary.runs;
    if index >= runs.len() {
        return fail(
            NzStatus::OutOfRange,
            &format!("run {index} of {}", runs.len()),
        );
    }
    let r = &runs[index];
    *out = NzRun {
        start_s: r.start_s,
        end_s: r.end_s,
        label: label_of(r.label),
        extent: extent_of(r.extent),
        n_cycles: r.n_cycles,
        mean_confidence: r.mean_confidence,
    };
    NzStatus::Ok
}

/// Copies the utterance summary to `out`.
///
/// # Safety
/// `analysis` must be a live handle from this library and `out` writable
/// storage for one `NzSummary`.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_summary(
    analysis: *const NzAnalysis,
    out: *mut NzSummary,
) -> NzStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(a) = analysis.as_ref() else {
        return null_arg("analysis");
    };
    let s = &a.0.summary;
    *out = NzSummary {
        duration_s: s.duration_s,
        sample_rate: s.sample_rate,
        n_voiced_gcis: s.n_voiced_gcis,
        n_labeled_cycles: s.n_labeled_cycles,
        n_runs: s.runs.len(),
        mean_pitch_s: a.0.epochs.mean_pitch_s,
        alpha_trend_per_s: s.alpha_trend_per_s.unwrap_or(f64::NAN),
    };
    NzStatus::Ok
}

/// Frees an analysis handle. Null is a no-op.
///
/// # Safety
/// `analysis` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nz_analysis_free(analysis: *mut NzAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}
