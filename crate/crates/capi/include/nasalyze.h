#ifndef NASALYZE_H
#define NASALYZE_H

/* Generated by cbindgen from the nasalyze-capi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * How much of a labeled span the nasalization covers.
 */
typedef enum {
  NZ_EXTENT_NONE = 0,
  NZ_EXTENT_PARTIAL = 1,
  NZ_EXTENT_FULL = 2,
} NzExtent;

/**
 * Class assigned to one labeled span.
 */
typedef enum {
  /**
   * Oral vowel.
   */
  NZ_LABEL_CLASS_OV = 0,
  /**
   * Nasalized vowel.
   */
  NZ_LABEL_CLASS_NV = 1,
  /**
   * Nasal consonant.
   */
  NZ_LABEL_CLASS_NC = 2,
  NZ_LABEL_CLASS_UNVOICED = 3,
} NzLabelClass;

/**
 * Outcome of a fallible call. Anything but `OK` leaves a detail line
 * readable through `nz_last_error_message`.
 */
typedef enum {
  NZ_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  NZ_STATUS_NULL_POINTER = 1,
  /**
   * A configuration or argument value is outside its valid domain.
   */
  NZ_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An index was past the end of the queried sequence.
   */
  NZ_STATUS_OUT_OF_RANGE = 3,
  /**
   * The operating system reported an I/O failure.
   */
  NZ_STATUS_IO = 4,
  /**
   * The audio is empty or not decodable.
   */
  NZ_STATUS_BAD_AUDIO = 5,
  /**
   * No voiced stretch was found where one is required.
   */
  NZ_STATUS_NO_VOICED_CONTENT = 6,
  /**
   * Too little material for the requested statistic.
   */
  NZ_STATUS_INSUFFICIENT_DATA = 7,
  /**
   * An annotation or script file did not parse.
   */
  NZ_STATUS_PARSE_ERROR = 8,
  /**
   * A bug tripped an internal invariant.
   */
  NZ_STATUS_INTERNAL = 9,
} NzStatus;

/**
 * Opaque analysis result.
 */
typedef struct NzAnalysis NzAnalysis;

/**
 * Opaque audio buffer.
 */
typedef struct NzSignal NzSignal;

/**
 * Analysis knobs. Start from `nz_config_default`, then override fields.
 */
typedef struct {
  /**
   * Spectrum window length, milliseconds.
   */
  double window_len_ms;
  /**
   * DFT length; power of two, at least twice the window in samples.
   */
  size_t dft_size;
  /**
   * Anchor step in samples; 1 gives the densest resonance track.
   */
  size_t hop_samples;
  double nasal_band_lo_hz;
  double nasal_band_hi_hz;
  double vowel_band_lo_hz;
  double vowel_band_hi_hz;
  /**
   * Band edges are widened by this much when testing membership.
   */
  double hysteresis_hz;
  /**
   * Cycles with fewer resonance measurements are dropped.
   */
  size_t min_cycle_points;
} NzConfig;

/**
 * One glottal closure instant.
 */
typedef struct {
  size_t sample;
  double seconds;
  bool voiced;
} NzEpoch;

/**
 * One instantaneous resonance measurement. When no secondary peak was
 * resolved, `has_second` is false and `drf2_hz`, `drf2_amp`, and `alpha`
 * are NaN.
 */
typedef struct {
  size_t anchor_sample;
  double drf_hz;
  double drf_amp;
  double drf2_hz;
  double drf2_amp;
  /**
   * Relative dominance gap of the two strongest peaks in [0, 1].
   */
  double alpha;
  bool has_second;
} NzDrfPoint;

/**
 * Per-cycle aggregate of the resonance track.
 */
typedef struct {
  double start_s;
  double end_s;
  /**
   * Mean dominant-resonance frequency over the cycle, Hz.
   */
  double mu_d_hz;
  /**
   * Standard deviation of the same, Hz.
   */
  double sigma_d_hz;
  /**
   * NaN when the cycle had no two-peak measurements.
   */
  double mean_alpha;
  size_t n_points;
} NzCycleStats;

/**
 * One labeled span. Unvoiced filler spans carry NaN statistics.
 */
typedef struct {
  double start_s;
  double end_s;
  NzLabelClass label;
  NzExtent extent;
  double confidence;
  double mu_d_hz;
  double sigma_d_hz;
  /**
   * NaN when no cycle in the span had two-peak measurements.
   */
  double mean_alpha;
} NzLabel;

/**
 * Maximal stretch of consecutive equally-labeled spans.
 */
typedef struct {
  double start_s;
  double end_s;
  NzLabelClass label;
  NzExtent extent;
  size_t n_cycles;
  double mean_confidence;
} NzRun;

/**
 * Per-utterance digest.
 */
typedef struct {
  double duration_s;
  uint32_t sample_rate;
  size_t n_voiced_gcis;
  size_t n_labeled_cycles;
  size_t n_runs;
  /**
   * Median voiced cycle length, seconds; 0 when nothing is voiced.
   */
  double mean_pitch_s;
  /**
   * Slope of nasalization strength over time; NaN with under three
   * nasalized cycles.
   */
  double alpha_trend_per_s;
} NzSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Never null; do not
 * free.
 */
const char *nz_version(void);

/**
 * Detail line of the current thread's most recent failure, empty before
 * any failure. The pointer stays valid until the next failing call on the
 * same thread; do not free.
 */
const char *nz_last_error_message(void);

/**
 * Default analysis configuration by value.
 */
NzConfig nz_config_default(void);

/**
 * Stable name of a label class ("OV", "NV", "NC", "UNVOICED"). Static; do
 * not free.
 */
const char *nz_label_class_name(NzLabelClass label);

/**
 * Stable name of an extent ("none", "partial", "full"). Static; do not
 * free.
 */
const char *nz_extent_name(NzExtent extent);

/**
 * Loads a 16-bit or float PCM WAV file (mono, or averaged to mono) and
 * peak-normalizes it. On success writes a new handle to `out`; free it
 * with `nz_signal_free`.
 *
 * # Safety
 * `path` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer; both must stay valid for the duration of the
 * call.
 */
NzStatus nz_signal_from_wav(const char *path, NzSignal **out);

/**
 * Copies `len` samples into a new handle. Samples are taken as-is (no
 * normalization); the analysis is amplitude-scale invariant. Free the
 * handle with `nz_signal_free`.
 *
 * # Safety
 * `samples` must point to `len` readable doubles and `out` to writable
 * storage for one pointer; both must stay valid for the duration of the
 * call.
 */
NzStatus nz_signal_from_samples(const double *samples,
                                size_t len,
                                uint32_t sample_rate,
                                NzSignal **out);

/**
 * Resamples to `target_rate` into a new handle; the input handle is left
 * untouched.
 *
 * # Safety
 * `signal` must be a live handle from this library and `out` writable
 * storage for one pointer.
 */
NzStatus nz_signal_resample(const NzSignal *signal, uint32_t target_rate, NzSignal **out);

/**
 * Number of samples; 0 for a null handle.
 *
 * # Safety
 * `signal` must be null or a live handle from this library.
 */
size_t nz_signal_len(const NzSignal *signal);

/**
 * Sample rate in Hz; 0 for a null handle.
 *
 * # Safety
 * `signal` must be null or a live handle from this library.
 */
uint32_t nz_signal_sample_rate(const NzSignal *signal);

/**
 * Duration in seconds; 0 for a null handle.
 *
 * # Safety
 * `signal` must be null or a live handle from this library.
 */
double nz_signal_duration_s(const NzSignal *signal);

/**
 * Frees a signal handle. Null is a no-op.
 *
 * # Safety
 * `signal` must be null or a handle from this library not yet freed.
 */
void nz_signal_free(NzSignal *signal);

/**
 * Runs the full pipeline: epochs, resonance track, cycle statistics,
 * labels, summary. `config` may be null for defaults. On success writes a
 * new handle to `out`; free it with `nz_analysis_free`. Audio with no
 * voiced content still succeeds and yields only unvoiced spans.
 *
 * # Safety
 * `signal` must be a live handle from this library, `config` null or a
 * readable `NzConfig`, and `out` writable storage for one pointer.
 */
NzStatus nz_analyze(const NzSignal *signal, const NzConfig *config, NzAnalysis **out);

/**
 * Like `nz_analyze`, but reads phone annotations (start/end/label lines)
 * from `phn_path` so annotated vowels can be separated from nasal
 * consonants.
 *
 * # Safety
 * As `nz_analyze`; additionally `phn_path` must point to a
 * NUL-terminated string.
 */
NzStatus nz_analyze_with_phones(const NzSignal *signal,
                                const NzConfig *config,
                                const char *phn_path,
                                NzAnalysis **out);

/**
 * Number of detected glottal epochs; 0 for a null handle.
 *
 * # Safety
 * `analysis` must be null or a live handle from this library.
 */
size_t nz_analysis_n_epochs(const NzAnalysis *analysis);

/**
 * Copies epoch `index` to `out`.
 *
 * # Safety
 * `analysis` must be a live handle from this library and `out` writable
 * storage for one `NzEpoch`.
 */
NzStatus nz_analysis_epoch(const NzAnalysis *analysis, size_t index, NzEpoch *out);

/**
 * Number of resonance-track points; 0 for a null handle.
 *
 * # Safety
 * `analysis` must be null or a live handle from this library.
 */
size_t nz_analysis_n_points(const NzAnalysis *analysis);

/**
 * Copies resonance-track point `index` to `out`.
 *
 * # Safety
 * `analysis` must be a live handle from this library and `out` writable
 * storage for one `NzDrfPoint`.
 */
NzStatus nz_analysis_point(const NzAnalysis *analysis, size_t index, NzDrfPoint *out);

/**
 * Number of per-cycle statistics rows; 0 for a null handle.
 *
 * # Safety
 * `analysis` must be null or a live handle from this library.
 */
size_t nz_analysis_n_cycles(const NzAnalysis *analysis);

/**
 * Copies cycle statistics `index` to `out`.
 *
 * # Safety
 * `analysis` must be a live handle from this library and `out` writable
 * storage for one `NzCycleStats`.
 */
NzStatus nz_analysis_cycle(const NzAnalysis *analysis, size_t index, NzCycleStats *out);

/**
 * Number of labeled spans; 0 for a null handle.
 *
 * # Safety
 * `analysis` must be null or a live handle from this library.
 */
size_t nz_analysis_n_labels(const NzAnalysis *analysis);

/**
 * Copies labeled span `index` to `out`.
 *
 * # Safety
 * `analysis` must be a live handle from this library and `out` writable
 * storage for one `NzLabel`.
 */
NzStatus nz_analysis_label(const NzAnalysis *analysis, size_t index, NzLabel *out);

/**
 * Number of merged runs in the summary; 0 for a null handle.
 *
 * # Safety
 * `analysis` must be null or a live handle from this library.
 */
size_t nz_analysis_n_runs(const NzAnalysis *analysis);

/**
 * Copies merged run `index` to `out`.
 *
 * # Safety
 * `analysis` must be a live handle from this library and `out` writable
 * storage for one `NzRun`.
 */
NzStatus nz_analysis_run(const NzAnalysis *analysis, size_t index, NzRun *out);

/**
 * Copies the utterance summary to `out`.
 *
 * # Safety
 * `analysis` must be a live handle from this library and `out` writable
 * storage for one `NzSummary`.
 */
NzStatus nz_analysis_summary(const NzAnalysis *analysis, NzSummary *out);

/**
 * Frees an analysis handle. Null is a no-op.
 *
 * # Safety
 * `analysis` must be null or a handle from this library not yet freed.
 */
void nz_analysis_free(NzAnalysis *analysis);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NASALYZE_H */
