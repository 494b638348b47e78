//! Command-line front end: spectrogram export, epoch detection, the full
//! nasalization analysis, corpus boundary statistics, and fixture synthesis.
//!
//! Exit codes: 0 = analysis completed (whatever it found), 1 = input or
//! configuration problem, 2 = internal invariant violation.

use clap::{Args, Parser, Subcommand};
use nasalyze::baseline::{a1_p0, correlate_sigma, stft_spectrogram, A1P0Result, DEFAULT_FRAME_MS};
use nasalyze::classify::{is_nasal_phone, is_vowel_phone, LabelClass, SegmentLabel};
use nasalyze::drf::{boundary_cycles, BoundarySide, BOUNDARY_CYCLES};
use nasalyze::export;
use nasalyze::pipeline::{analyze, Analysis, AnalysisConfig};
use nasalyze::signal::{
    load_wav, read_annotations, resample, write_annotations, write_wav, SampledSignal, LOAD_PEAK,
};
use nasalyze::synth::{render_script, FixtureScript};
use nasalyze::zff::{detect_epochs, EpochTrack};
use nasalyze::ztw::{hngd_spectrogram, ZtwConfig};
use nasalyze::{Error, Result};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// Overlay images are decimated to at most this many columns.
const MAX_OVERLAY_COLS: usize = 2048;

/// Offset of the harmonic measurement frame from a boundary, into the vowel.
const A1P0_OFFSET_S: f64 = 0.015;

#[derive(Parser)]
#[command(
    name = "nasalyze",
    version,
    about = "Vowel nasalization analysis from instantaneous spectra"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Resample the input to this rate before analysis.
    #[arg(long, global = true)]
    sample_rate: Option<u32>,
    /// Analysis window length in milliseconds.
    #[arg(long = "l-ms", global = true)]
    l_ms: Option<f64>,
    /// DFT size (power of two).
    #[arg(long, global = true)]
    dft_size: Option<usize>,
    /// Anchor step in samples.
    #[arg(long, global = true)]
    hop: Option<usize>,
    /// Band override as "nasal_lo:nasal_hi,vowel_lo:vowel_hi" in Hz.
    #[arg(long, global = true)]
    bands: Option<String>,
    /// Directory all outputs are written into.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// TOML config file with the same keys as these flags; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Export the instantaneous spectrogram (CSV, PGM, optional binary).
    Spectrogram {
        input: PathBuf,
        /// Also export a Hann STFT spectrogram on identical axes.
        #[arg(long)]
        stft: bool,
        /// Additionally write the binary matrix form.
        #[arg(long)]
        binary: bool,
        /// Normalize each heatmap column to its own range.
        #[arg(long)]
        per_column: bool,
    },
    /// Detect glottal closure instants and write epochs.csv.
    Gci { input: PathBuf },
    /// Run the full pipeline and write every analysis product.
    Analyze {
        input: PathBuf,
        /// Tab-separated phone annotations (start, end, label).
        #[arg(long)]
        annotations: Option<PathBuf>,
    },
    /// Boundary statistics over a directory of WAV + .phn pairs.
    Corpus {
        dir: PathBuf,
        /// Phone-pair filter "vowel:consonant"; `*` matches any vowel /
        /// any nasal consonant.
        #[arg(long, default_value = "*:*")]
        pair: String,
        /// Also emit the harmonic-contrast scatter dataset.
        #[arg(long)]
        a1p0: bool,
    },
    /// Render a fixture script to WAV plus ground-truth tables.
    Synth { script: PathBuf },
}

/// Config-file counterpart of the global flags.
#[derive(Default, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
struct FileConfig {
    sample_rate: Option<u32>,
    l_ms: Option<f64>,
    dft_size: Option<usize>,
    hop: Option<usize>,
    bands: Option<String>,
    hysteresis_hz: Option<f64>,
    out_dir: Option<PathBuf>,
}

struct RunConfig {
    resample_to: Option<u32>,
    analysis: AnalysisConfig,
    out_dir: PathBuf,
}

fn parse_bands(text: &str) -> Result<((f64, f64), (f64, f64))> {
    let err = || Error::InvalidConfig(format!("bands {text:?} not in lo:hi,lo:hi form"));
    let mut pairs = text.split(',').map(|pair| {
        let mut ends = pair.split(':').map(|v| v.trim().parse::<f64>());
        match (ends.next(), ends.next(), ends.next()) {
            (Some(Ok(lo)), Some(Ok(hi)), None) => Ok((lo, hi)),
            _ => Err(err()),
        }
    });
    match (pairs.next(), pairs.next(), pairs.next()) {
        (Some(n), Some(v), None) => Ok((n?, v?)),
        _ => Err(err()),
    }
}

fn resolve_config(global: &GlobalArgs) -> Result<RunConfig> {
    let file = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            toml::from_str::<FileConfig>(&text).map_err(|e| {
                Error::InvalidConfig(format!("config {}: {e}", path.display()))
            })?
        }
        None => FileConfig::default(),
    };
    let defaults = AnalysisConfig::default();
    let mut ztw = ZtwConfig {
        window_len_ms: global.l_ms.or(file.l_ms).unwrap_or(defaults.ztw.window_len_ms),
        dft_size: global.dft_size.or(file.dft_size).unwrap_or(defaults.ztw.dft_size),
        hop_samples: global.hop.or(file.hop).unwrap_or(defaults.ztw.hop_samples),
        ..defaults.ztw
    };
    ztw.epsilon = defaults.ztw.epsilon;
    let mut bands = defaults.bands;
    if let Some(text) = global.bands.as_deref().or(file.bands.as_deref()) {
        let (b_n, b_v) = parse_bands(text)?;
        bands.b_n = b_n;
        bands.b_v = b_v;
    }
    if let Some(h) = file.hysteresis_hz {
        bands.hysteresis_hz = h;
    }
    bands.validate()?;
    let out_dir = global
        .out_dir
        .clone()
        .or(file.out_dir)
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir).map_err(|source| Error::Io {
        path: out_dir.clone(),
        source,
    })?;
    Ok(RunConfig {
        resample_to: global.sample_rate.or(file.sample_rate),
        analysis: AnalysisConfig {
            ztw,
            bands,
            ..defaults
        },
        out_dir,
    })
}

fn load_input(path: &Path, config: &RunConfig) -> Result<SampledSignal> {
    let signal = load_wav(path)?;
    match config.resample_to {
        Some(rate) if rate != signal.sample_rate => resample(&signal, rate),
        _ => Ok(signal),
    }
}

fn main() -> std::process::ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return std::process::ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return std::process::ExitCode::from(1);
        }
    };
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => std::process::ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            std::process::ExitCode::from(1)
        }
        Err(_) => {
            eprintln!("error: internal invariant violated");
            std::process::ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = resolve_config(&cli.global)?;
    match cli.command {
        Command::Spectrogram {
            input,
            stft,
            binary,
            per_column,
        } => cmd_spectrogram(&input, stft, binary, per_column, &config),
        Command::Gci { input } => cmd_gci(&input, &config),
        Command::Analyze { input, annotations } => {
            cmd_analyze(&input, annotations.as_deref(), &config)
        }
        Command::Corpus { dir, pair, a1p0 } => cmd_corpus(&dir, &pair, a1p0, &config),
        Command::Synth { script } => cmd_synth(&script, &config),
    }
}

fn cmd_spectrogram(
    input: &Path,
    stft: bool,
    binary: bool,
    per_column: bool,
    config: &RunConfig,
) -> Result<()> {
    let signal = load_input(input, config)?;
    let out = &config.out_dir;
    let gram = hngd_spectrogram(&signal, &config.analysis.ztw)?;
    export::write_spectrogram_csv(&out.join("hngd.csv"), &gram)?;
    export::write_heatmap_pgm(&out.join("hngd.pgm"), &gram, per_column)?;
    export::write_axis_json(&out.join("axes.json"), &gram)?;
    if binary {
        export::write_spectrogram_binary(&out.join("hngd.bin"), &gram)?;
    }
    let mut written = vec!["hngd.csv", "hngd.pgm", "axes.json"];
    if binary {
        written.push("hngd.bin");
    }
    if stft {
        let sgram = stft_spectrogram(&signal, &config.analysis.ztw)?;
        export::write_spectrogram_csv(&out.join("stft.csv"), &sgram)?;
        export::write_heatmap_pgm(&out.join("stft.pgm"), &sgram, per_column)?;
        written.extend(["stft.csv", "stft.pgm"]);
        if binary {
            export::write_spectrogram_binary(&out.join("stft.bin"), &sgram)?;
            written.push("stft.bin");
        }
    }
    println!(
        "{} slices x {} bins -> {}",
        gram.slices.len(),
        gram.config.n_bins(),
        written.join(", ")
    );
    Ok(())
}

fn cmd_gci(input: &Path, config: &RunConfig) -> Result<()> {
    let signal = load_input(input, config)?;
    let epochs = detect_epochs(&signal)?;
    export::write_epochs_csv(&config.out_dir.join("epochs.csv"), &epochs)?;
    println!(
        "{} epochs ({} voiced) -> epochs.csv",
        epochs.gci_samples.len(),
        epochs.voiced_gcis().len()
    );
    Ok(())
}

fn cmd_analyze(input: &Path, annotations: Option<&Path>, config: &RunConfig) -> Result<()> {
    let signal = load_input(input, config)?;
    let annotations = match annotations {
        Some(path) => read_annotations(path)?,
        None => Vec::new(),
    };
    let analysis = analyze(&signal, &annotations, &config.analysis)?;
    let out = &config.out_dir;
    export::write_epochs_csv(&out.join("epochs.csv"), &analysis.epochs)?;
    export::write_drf_csv(&out.join("drf_track.csv"), &analysis.points)?;
    export::write_cycles_csv(&out.join("cycles.csv"), &analysis.stats, signal.sample_rate)?;
    export::write_labels_csv(&out.join("labels.csv"), &analysis.labels, signal.sample_rate)?;
    export::write_summary_json(&out.join("summary.json"), &analysis.summary)?;
    write_overlay(&signal, &analysis, config)?;
    let nasalized = analysis
        .summary
        .runs
        .iter()
        .filter(|r| r.label == LabelClass::Nv)
        .count();
    println!(
        "{} labeled cycles, {} runs ({} nasalized) -> epochs.csv, drf_track.csv, cycles.csv, labels.csv, summary.json, overlay.pgm",
        analysis.summary.n_labeled_cycles,
        analysis.summary.runs.len(),
        nasalized
    );
    Ok(())
}

/// Renders the overlay heatmap at a decimated hop so the image stays a
/// sensible width whatever the analysis hop was.
fn write_overlay(signal: &SampledSignal, analysis: &Analysis, config: &RunConfig) -> Result<()> {
    let ztw = &config.analysis.ztw;
    let n_len = ztw.window_len_samples(signal.sample_rate);
    if signal.len() < n_len {
        return Err(Error::TooShort {
            needed: n_len,
            got: signal.len(),
        });
    }
    let n_anchors = (signal.len() - n_len) / ztw.hop_samples + 1;
    let factor = n_anchors.div_ceil(MAX_OVERLAY_COLS);
    let display = ZtwConfig {
        hop_samples: ztw.hop_samples * factor.max(1),
        ..*ztw
    };
    let gram = hngd_spectrogram(signal, &display)?;
    export::write_overlay_pgm(&config.out_dir.join("overlay.pgm"), &gram, &analysis.points)
}

struct BoundaryRow {
    utterance: String,
    vowel: String,
    consonant: String,
    boundary_s: f64,
    side: BoundarySide,
    mu_avg: f64,
    mu_dev: f64,
    sigma_avg: f64,
    sigma_dev: f64,
}

fn cmd_corpus(dir: &Path, pair: &str, a1p0: bool, config: &RunConfig) -> Result<()> {
    let (vowel_filter, cons_filter) = {
        let mut parts = pair.split(':');
        match (parts.next(), parts.next(), parts.next()) {
            (Some(v), Some(c), None) => (v.to_string(), c.to_string()),
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "pair filter {pair:?} not in vowel:consonant form"
                )))
            }
        }
    };
    let mut wavs: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("wav")))
        .collect();
    wavs.sort();
    let per_utterance: Vec<(Vec<BoundaryRow>, Vec<(A1P0Result, f64, LabelClass)>)> = wavs
        .par_iter()
        .map(|wav| process_utterance(wav, &vowel_filter, &cons_filter, a1p0, config))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<BoundaryRow> = per_utterance.iter().flat_map(|(r, _)| r).map(clone_row).collect();
    if rows.is_empty() {
        log::warn!("no phone pairs matched {pair:?} in {}", dir.display());
    }
    write_boundaries_csv(&config.out_dir.join("boundaries.csv"), &rows)?;
    println!("{} boundaries -> boundaries.csv", rows.len());
    if a1p0 {
        let (results, sigma): (Vec<A1P0Result>, Vec<(f64, LabelClass)>) = per_utterance
            .iter()
            .flat_map(|(_, s)| s)
            .map(|(r, sigma_d, label)| (*r, (*sigma_d, *label)))
            .unzip();
        let dataset = correlate_sigma(&results, &sigma)?;
        export::write_scatter_csv(&config.out_dir.join("scatter.csv"), &dataset)?;
        match dataset.separation {
            Some(sep) => println!(
                "{} scatter points -> scatter.csv (cluster gaps: {:.2} dB, {:.2} Hz)",
                dataset.points.len(),
                sep.gap_a1_minus_p0_db,
                sep.gap_sigma_d_hz
            ),
            None => println!(
                "{} scatter points -> scatter.csv (separation undefined)",
                dataset.points.len()
            ),
        }
    }
    Ok(())
}

fn clone_row(row: &BoundaryRow) -> BoundaryRow {
    BoundaryRow {
        utterance: row.utterance.clone(),
        vowel: row.vowel.clone(),
        consonant: row.consonant.clone(),
        ..*row
    }
}

fn matches_filter(label: &str, filter: &str, any: fn(&str) -> bool) -> bool {
    if filter == "*" {
        any(label)
    } else {
        label.eq_ignore_ascii_case(filter)
    }
}

fn process_utterance(
    wav: &Path,
    vowel_filter: &str,
    cons_filter: &str,
    a1p0: bool,
    config: &RunConfig,
) -> Result<(Vec<BoundaryRow>, Vec<(A1P0Result, f64, LabelClass)>)> {
    let annotation_path = wav.with_extension("phn");
    if !annotation_path.exists() {
        log::warn!("{} has no .phn annotations; skipped", wav.display());
        return Ok((Vec::new(), Vec::new()));
    }
    let signal = load_input(wav, config)?;
    let annotations = read_annotations(&annotation_path)?;
    let analysis = analyze(&signal, &annotations, &config.analysis)?;
    let utterance = wav
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut rows = Vec::new();
    let mut scatter = Vec::new();
    for window in annotations.windows(2) {
        let (a, b) = (&window[0], &window[1]);
        if (b.start_s - a.end_s).abs() > 0.001 {
            continue;
        }
        let matched = if matches_filter(&a.label, vowel_filter, is_vowel_phone)
            && matches_filter(&b.label, cons_filter, is_nasal_phone)
        {
            Some((a, b, BoundarySide::Before, a.end_s))
        } else if matches_filter(&a.label, cons_filter, is_nasal_phone)
            && matches_filter(&b.label, vowel_filter, is_vowel_phone)
        {
            Some((&window[1], &window[0], BoundarySide::After, b.start_s))
        } else {
            None
        };
        let Some((vowel, consonant, side, boundary_s)) = matched else {
            continue;
        };
        let picked = match boundary_cycles(
            &analysis.stats,
            boundary_s,
            BOUNDARY_CYCLES,
            side,
            signal.sample_rate,
        ) {
            Ok(picked) => picked,
            Err(e) => {
                log::warn!(
                    "{utterance}: boundary at {boundary_s:.3} s skipped ({e})"
                );
                continue;
            }
        };
        let stat = |f: &dyn Fn(&nasalyze::drf::CycleStats) -> f64| -> (f64, f64) {
            let n = picked.len() as f64;
            let mean = picked.iter().map(|c| f(c)).sum::<f64>() / n;
            let var = picked.iter().map(|c| (f(c) - mean).powi(2)).sum::<f64>() / n;
            (mean, var.sqrt())
        };
        let (mu_avg, mu_dev) = stat(&|c| c.mu_d);
        let (sigma_avg, sigma_dev) = stat(&|c| c.sigma_d);
        rows.push(BoundaryRow {
            utterance: utterance.clone(),
            vowel: vowel.label.clone(),
            consonant: consonant.label.clone(),
            boundary_s,
            side,
            mu_avg,
            mu_dev,
            sigma_avg,
            sigma_dev,
        });
        if a1p0 {
            if let Some(point) =
                scatter_point(&signal, &analysis, boundary_s, side, sigma_avg, &utterance)
            {
                scatter.push(point);
            }
        }
    }
    Ok((rows, scatter))
}

/// One harmonic-contrast measurement on the vowel side of a boundary,
/// labeled by the cycle the frame lands in.
fn scatter_point(
    signal: &SampledSignal,
    analysis: &Analysis,
    boundary_s: f64,
    side: BoundarySide,
    sigma_avg: f64,
    utterance: &str,
) -> Option<(A1P0Result, f64, LabelClass)> {
    let frame_center_s = match side {
        BoundarySide::Before => boundary_s - A1P0_OFFSET_S,
        BoundarySide::After => boundary_s + A1P0_OFFSET_S,
    };
    let pitch = analysis.epochs.mean_pitch_s;
    if !(pitch.is_finite() && pitch > 0.0) {
        log::warn!("{utterance}: no pitch estimate; harmonic contrast skipped");
        return None;
    }
    let f1_est = oral_f1_estimate(&analysis.labels);
    let at = (frame_center_s * signal.sample_rate as f64).round() as usize;
    let label = analysis
        .labels
        .iter()
        .find(|l| l.cycle_start <= at && at < l.cycle_end)
        .map(|l| l.label)?;
    if !matches!(label, LabelClass::Ov | LabelClass::Nv) {
        log::warn!(
            "{utterance}: frame at {frame_center_s:.3} s is {label}; harmonic contrast skipped"
        );
        return None;
    }
    match a1_p0(signal, frame_center_s, DEFAULT_FRAME_MS, 1.0 / pitch, f1_est) {
        Ok(result) => Some((result, sigma_avg, label)),
        Err(e) => {
            log::warn!("{utterance}: harmonic contrast at {frame_center_s:.3} s skipped ({e})");
            None
        }
    }
}

/// F1 estimate for harmonic picking: median cycle-mean resonance over the
/// oral-vowel cycles, falling back to a mid-band default when the utterance
/// has none.
fn oral_f1_estimate(labels: &[SegmentLabel]) -> f64 {
    let mut values: Vec<f64> = labels
        .iter()
        .filter(|l| l.label == LabelClass::Ov && l.mu_d.is_finite())
        .map(|l| l.mu_d)
        .collect();
    if values.is_empty() {
        return 600.0;
    }
    values.sort_by(f64::total_cmp);
    values[values.len() / 2]
}

fn write_boundaries_csv(path: &Path, rows: &[BoundaryRow]) -> Result<()> {
    use std::io::Write as _;
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut w = std::io::BufWriter::new(file);
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    writeln!(
        w,
        "utterance,vowel,consonant,boundary_s,side,mu_avg_hz,mu_dev_hz,sigma_avg_hz,sigma_dev_hz"
    )
    .map_err(io_err)?;
    for r in rows {
        let side = match r.side {
            BoundarySide::Before => "before",
            BoundarySide::After => "after",
        };
        writeln!(
            w,
            "{},{},{},{},{side},{},{},{},{}",
            r.utterance, r.vowel, r.consonant, r.boundary_s, r.mu_avg, r.mu_dev, r.sigma_avg,
            r.sigma_dev
        )
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

fn cmd_synth(script_path: &Path, config: &RunConfig) -> Result<()> {
    let script = FixtureScript::load(script_path)?;
    let rendered = render_script(&script)?;
    let stem = script_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "fixture".into());
    let out = &config.out_dir;
    let mut signal = rendered.signal;
    signal.normalize_peak(LOAD_PEAK);
    let n = rendered.truth_gcis.len();
    let mean_pitch_s = if n > 1 {
        let span = rendered.truth_gcis[n - 1] - rendered.truth_gcis[0];
        span as f64 / (n - 1) as f64 / signal.sample_rate as f64
    } else {
        f64::NAN
    };
    let truth_epochs = EpochTrack {
        gci_samples: rendered.truth_gcis,
        voiced_flags: vec![true; n],
        voicing: vec![true; signal.len()],
        mean_pitch_s,
        sample_rate: signal.sample_rate,
    };
    let truth_labels: Vec<SegmentLabel> = rendered
        .truth_labels
        .iter()
        .map(|t| SegmentLabel {
            cycle_start: (t.start_s * signal.sample_rate as f64).round() as usize,
            cycle_end: (t.end_s * signal.sample_rate as f64).round() as usize,
            label: t.label,
            extent: t.extent,
            confidence: 1.0,
            mu_d: f64::NAN,
            sigma_d: f64::NAN,
            mean_alpha: None,
        })
        .collect();
    let wav_path = out.join(format!("{stem}.wav"));
    write_wav(&wav_path, &signal)?;
    export::write_epochs_csv(&out.join(format!("{stem}.gci.csv")), &truth_epochs)?;
    export::write_labels_csv(
        &out.join(format!("{stem}.labels.csv")),
        &truth_labels,
        signal.sample_rate,
    )?;
    write_annotations(&out.join(format!("{stem}.phn")), &rendered.annotations)?;
    println!(
        "{:.3} s at {} Hz -> {stem}.wav, {stem}.gci.csv, {stem}.labels.csv, {stem}.phn",
        signal.duration_s(),
        signal.sample_rate
    );
    Ok(())
}
