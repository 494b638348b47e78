//! Synthetic speech-like fixtures with exact ground truth.
//!
//! Excitation is an impulse train, so the true excitation instants are the
//! impulse indices themselves. The vocal tract is a parallel pair of
//! branches: a cascade of second-order resonators for the oral tract, and a
//! resonator plus anti-resonator for the nasal tract, mixed by a coupling
//! gain. Open-phase weakening of the oral output is emulated by gating the
//! oral branch down in the tail fraction of each cycle.

use crate::classify::{Extent, LabelClass};
use crate::signal::{PhoneAnnotation, SampledSignal};
use crate::zff::EpochTrack;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// One pole of the synthesis filter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resonance {
    pub freq_hz: f64,
    pub bandwidth_hz: f64,
    #[serde(default = "one")]
    pub gain: f64,
}

/// One zero of the synthesis filter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntiResonance {
    pub freq_hz: f64,
    pub bandwidth_hz: f64,
}

fn one() -> f64 {
    1.0
}
fn default_open_quotient() -> f64 {
    0.5
}
fn default_true() -> bool {
    true
}
fn default_noise_level() -> f64 {
    0.05
}
fn default_rate() -> u32 {
    16000
}

/// Parameters of one steady (or coupling-ramped) vowel-like stretch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VowelSpec {
    pub f0_hz: f64,
    pub duration_s: f64,
    #[serde(default)]
    pub formants: Vec<Resonance>,
    #[serde(default)]
    pub nasal_pole: Option<Resonance>,
    #[serde(default)]
    pub nasal_zero: Option<AntiResonance>,
    /// Nasal-branch gain in [0, 1]; 0 = purely oral, 1 = full coupling.
    #[serde(default)]
    pub coupling: f64,
    /// When set, coupling ramps linearly from `coupling` to this value
    /// across the section.
    #[serde(default)]
    pub coupling_end: Option<f64>,
    /// Fraction of each cycle treated as the glottal open phase (the tail).
    #[serde(default = "default_open_quotient")]
    pub open_quotient: f64,
    /// Attenuate the oral branch by the coupling amount during the open
    /// phase, emulating the open-phase weakening of oral resonances.
    #[serde(default = "default_true")]
    pub phase_modulation: bool,
}

impl VowelSpec {
    pub fn validate(&self, sample_rate: u32) -> Result<()> {
        let nyquist = sample_rate as f64 / 2.0;
        let field = |field: &str, msg: String| Error::ScriptField {
            field: field.to_string(),
            msg,
        };
        if !(30.0..=1000.0).contains(&self.f0_hz) {
            return Err(field("f0_hz", format!("{} outside 30..=1000", self.f0_hz)));
        }
        if !(self.duration_s > 0.0) {
            return Err(field("duration_s", "must be positive".into()));
        }
        for r in self
            .formants
            .iter()
            .chain(self.nasal_pole.iter())
        {
            if !(r.freq_hz > 0.0 && r.freq_hz < nyquist) {
                return Err(field("freq_hz", format!("{} outside (0, {nyquist})", r.freq_hz)));
            }
            if !(r.bandwidth_hz > 0.0) {
                return Err(field(
                    "bandwidth_hz",
                    format!("{} must be positive", r.bandwidth_hz),
                ));
            }
            if !(r.gain >= 0.0 && r.gain.is_finite()) {
                return Err(field("gain", format!("{} must be finite and >= 0", r.gain)));
            }
        }
        if let Some(z) = &self.nasal_zero {
            if !(z.freq_hz > 0.0 && z.freq_hz < nyquist) {
                return Err(field("nasal_zero.freq_hz", format!("{} outside (0, {nyquist})", z.freq_hz)));
            }
            if !(z.bandwidth_hz > 0.0) {
                return Err(field("nasal_zero.bandwidth_hz", "must be positive".into()));
            }
        }
        for (name, c) in [("coupling", Some(self.coupling)), ("coupling_end", self.coupling_end)] {
            if let Some(c) = c {
                if !(0.0..=1.0).contains(&c) {
                    return Err(field(name, format!("{c} outside 0..=1")));
                }
            }
        }
        if !(0.0..=1.0).contains(&self.open_quotient) {
            return Err(field("open_quotient", format!("{} outside 0..=1", self.open_quotient)));
        }
        if self.coupling > 0.0 || self.coupling_end.unwrap_or(0.0) > 0.0 {
            if self.nasal_pole.is_none() {
                return Err(field("nasal_pole", "required when coupling > 0".into()));
            }
        }
        Ok(())
    }

    fn coupling_at(&self, frac: f64) -> f64 {
        match self.coupling_end {
            Some(end) => self.coupling + (end - self.coupling) * frac,
            None => self.coupling,
        }
    }
}

/// One stretch of a fixture script.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Section {
    Silence {
        duration_s: f64,
    },
    Noise {
        duration_s: f64,
        #[serde(default = "default_noise_level")]
        level: f64,
    },
    Vowel {
        #[serde(flatten)]
        spec: VowelSpec,
        /// Optional phone label emitted as a time-aligned annotation.
        #[serde(default)]
        phone: Option<String>,
    },
}

impl Section {
    pub fn duration_s(&self) -> f64 {
        match self {
            Section::Silence { duration_s } => *duration_s,
            Section::Noise { duration_s, .. } => *duration_s,
            Section::Vowel { spec, .. } => spec.duration_s,
        }
    }
}

/// A whole test signal: ordered sections plus rendering parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureScript {
    #[serde(default = "default_rate")]
    pub sample_rate: u32,
    /// Seed for noise sections; same script + seed renders bit-identically.
    #[serde(default)]
    pub seed: u64,
    pub sections: Vec<Section>,
}

impl FixtureScript {
    pub fn from_json(text: &str) -> Result<Self> {
        let script: FixtureScript =
            serde_json::from_str(text).map_err(|e| Error::ScriptParse(e.to_string()))?;
        script.validate()?;
        Ok(script)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sections.is_empty() {
            return Err(Error::ScriptParse("script has no sections".into()));
        }
        for s in &self.sections {
            if !(s.duration_s() > 0.0) {
                return Err(Error::ScriptField {
                    field: "duration_s".into(),
                    msg: "must be positive".into(),
                });
            }
            if let Section::Vowel { spec, .. } = s {
                spec.validate(self.sample_rate)?;
            }
            if let Section::Noise { level, .. } = s {
                if !(*level >= 0.0 && level.is_finite()) {
                    return Err(Error::ScriptField {
                        field: "level".into(),
                        msg: format!("{level} must be finite and >= 0"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn total_duration_s(&self) -> f64 {
        self.sections.iter().map(|s| s.duration_s()).sum()
    }
}

/// Ground-truth section label.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthSegment {
    pub start_s: f64,
    pub end_s: f64,
    pub label: LabelClass,
    pub extent: Extent,
}

/// Rendered script with every piece of ground truth the pipeline can be
/// checked against.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedFixture {
    pub signal: SampledSignal,
    /// True excitation instants (impulse indices).
    pub truth_gcis: Vec<usize>,
    /// Per-section truth labels.
    pub truth_labels: Vec<TruthSegment>,
    /// Annotations for sections that declare a phone.
    pub annotations: Vec<PhoneAnnotation>,
    /// Section boundary times including 0 and the total duration.
    pub section_bounds_s: Vec<f64>,
}

/// Second-order all-pole section, unity gain at DC.
struct TwoPole {
    b: f64,
    c: f64,
    a: f64,
    y1: f64,
    y2: f64,
}

impl TwoPole {
    fn new(freq_hz: f64, bandwidth_hz: f64, rate: f64) -> Self {
        let b = 2.0 * (-std::f64::consts::PI * bandwidth_hz / rate).exp()
            * (2.0 * std::f64::consts::PI * freq_hz / rate).cos();
        let c = -(-2.0 * std::f64::consts::PI * bandwidth_hz / rate).exp();
        TwoPole {
            b,
            c,
            a: 1.0 - b - c,
            y1: 0.0,
            y2: 0.0,
        }
    }

    fn step(&mut self, x: f64) -> f64 {
        let y = self.a * x + self.b * self.y1 + self.c * self.y2;
        self.y2 = self.y1;
        self.y1 = y;
        y
    }
}

/// Second-order all-zero section, the inverse shape of `TwoPole`.
struct TwoZero {
    a: f64,
    b: f64,
    c: f64,
    x1: f64,
    x2: f64,
}

impl TwoZero {
    fn new(freq_hz: f64, bandwidth_hz: f64, rate: f64) -> Self {
        let pole = TwoPole::new(freq_hz, bandwidth_hz, rate);
        TwoZero {
            a: 1.0 / pole.a,
            b: -pole.b / pole.a,
            c: -pole.c / pole.a,
            x1: 0.0,
            x2: 0.0,
        }
    }

    fn step(&mut self, x: f64) -> f64 {
        let y = self.a * x + self.b * self.x1 + self.c * self.x2;
        self.x2 = self.x1;
        self.x1 = x;
        y
    }
}

/// Render one vowel stretch. Returns the signal and the exact epoch track.
pub fn synth_vowel(spec: &VowelSpec, sample_rate: u32) -> Result<(SampledSignal, EpochTrack)> {
    spec.validate(sample_rate)?;
    let rate = sample_rate as f64;
    let n = (spec.duration_s * rate).round() as usize;
    let period = (rate / spec.f0_hz).round() as usize;

    let mut impulses = Vec::new();
    let mut i = 0;
    while i < n {
        impulses.push(i);
        i += period;
    }

    let mut excitation = vec![0.0; n];
    for &g in &impulses {
        excitation[g] = 1.0;
    }

    // Oral branch: cascade over formants.
    let oral: Vec<f64> = if spec.formants.is_empty() {
        vec![0.0; n]
    } else {
        let mut buf = excitation.clone();
        for f in &spec.formants {
            let mut filt = TwoPole::new(f.freq_hz, f.bandwidth_hz, rate);
            for v in buf.iter_mut() {
                *v = filt.step(*v) * f.gain;
            }
        }
        buf
    };

    let uses_nasal = spec.coupling > 0.0 || spec.coupling_end.unwrap_or(0.0) > 0.0;
    let nasal: Vec<f64> = if uses_nasal {
        let pole = spec.nasal_pole.as_ref().unwrap();
        let mut filt = TwoPole::new(pole.freq_hz, pole.bandwidth_hz, rate);
        let mut buf: Vec<f64> = excitation.iter().map(|&v| filt.step(v) * pole.gain).collect();
        if let Some(z) = &spec.nasal_zero {
            let mut anti = TwoZero::new(z.freq_hz, z.bandwidth_hz, rate);
            for v in buf.iter_mut() {
                *v = anti.step(*v);
            }
        }
        buf
    } else {
        Vec::new()
    };

    let mut out = vec![0.0; n];
    let mut cycle_idx = 0usize;
    for s in 0..n {
        // Cycle containing s; the tail after the last impulse counts as the
        // last cycle continuing.
        while cycle_idx + 1 < impulses.len() && impulses[cycle_idx + 1] <= s {
            cycle_idx += 1;
        }
        let phase = (s - impulses[cycle_idx]) as f64 / period as f64;
        let coupling = spec.coupling_at(s as f64 / n as f64);
        let open = phase >= 1.0 - spec.open_quotient;
        let oral_gain = if spec.phase_modulation && open {
            (1.0 - coupling).max(0.0)
        } else {
            1.0
        };
        // With zero coupling the nasal branch is skipped entirely, so the
        // output is the oral branch bit for bit.
        out[s] = if uses_nasal {
            oral_gain * oral[s] + coupling * nasal[s]
        } else if spec.phase_modulation && open {
            oral_gain * oral[s]
        } else {
            oral[s]
        };
    }

    let mut voicing = vec![false; n];
    for v in voicing.iter_mut().skip(impulses[0]) {
        *v = true;
    }
    let track = EpochTrack {
        voiced_flags: vec![true; impulses.len()],
        gci_samples: impulses,
        voicing,
        mean_pitch_s: period as f64 / rate,
        sample_rate,
    };
    Ok((SampledSignal::new(out, sample_rate), track))
}

fn truth_of(section: &Section) -> (LabelClass, Extent) {
    match section {
        Section::Silence { .. } | Section::Noise { .. } => (LabelClass::Unvoiced, Extent::None),
        Section::Vowel { spec, .. } => {
            let c0 = spec.coupling;
            let c1 = spec.coupling_end.unwrap_or(c0);
            if spec.formants.is_empty() {
                (LabelClass::Nc, Extent::None)
            } else if c0 == 0.0 && c1 == 0.0 {
                (LabelClass::Ov, Extent::None)
            } else if c0 >= 1.0 && c1 >= 1.0 {
                (LabelClass::Nv, Extent::Full)
            } else {
                (LabelClass::Nv, Extent::Partial)
            }
        }
    }
}

/// Junction fade length on each side of a section boundary.
const JUNCTION_FADE_S: f64 = 0.0025;

/// Render a whole script: sections butt-jointed at exact boundaries, with a
/// raised-cosine fade-out/fade-in pair spanning 5 ms across each junction.
pub fn render_script(script: &FixtureScript) -> Result<RenderedFixture> {
    script.validate()?;
    let rate = script.sample_rate;
    let mut rng = ChaCha8Rng::seed_from_u64(script.seed);

    let mut pieces: Vec<Vec<f64>> = Vec::new();
    let mut truth_gcis: Vec<usize> = Vec::new();
    let mut truth_labels: Vec<TruthSegment> = Vec::new();
    let mut annotations: Vec<PhoneAnnotation> = Vec::new();
    let mut section_bounds_s = vec![0.0];
    let mut offset = 0usize;

    for section in &script.sections {
        let piece = match section {
            Section::Silence { duration_s } => {
                vec![0.0; (duration_s * rate as f64).round() as usize]
            }
            Section::Noise { duration_s, level } => {
                let n = (duration_s * rate as f64).round() as usize;
                (0..n).map(|_| rng.gen_range(-1.0..1.0) * level).collect()
            }
            Section::Vowel { spec, .. } => {
                let (sig, track) = synth_vowel(spec, rate)?;
                truth_gcis.extend(track.gci_samples.iter().map(|&g| g + offset));
                sig.samples
            }
        };
        let start_s = offset as f64 / rate as f64;
        let end_s = (offset + piece.len()) as f64 / rate as f64;
        let (label, extent) = truth_of(section);
        truth_labels.push(TruthSegment {
            start_s,
            end_s,
            label,
            extent,
        });
        if let Section::Vowel {
            phone: Some(phone), ..
        } = section
        {
            annotations.push(PhoneAnnotation {
                start_s,
                end_s,
                label: phone.clone(),
            });
        }
        offset += piece.len();
        section_bounds_s.push(end_s);
        pieces.push(piece);
    }

    // Raised-cosine fades on each side of every junction. Sections stay
    // butt-jointed so all ground-truth times remain exact.
    let fade = (JUNCTION_FADE_S * rate as f64).round() as usize;
    for j in 0..pieces.len() - 1 {
        let left_len = pieces[j].len();
        let f_out = fade.min(left_len);
        for k in 0..f_out {
            let t = (k + 1) as f64 / (f_out + 1) as f64;
            let g = 0.5 + 0.5 * (std::f64::consts::PI * t).cos();
            pieces[j][left_len - f_out + k] *= g;
        }
        let right_len = pieces[j + 1].len();
        let f_in = fade.min(right_len);
        for k in 0..f_in {
            let t = (k + 1) as f64 / (f_in + 1) as f64;
            let g = 0.5 - 0.5 * (std::f64::consts::PI * t).cos();
            pieces[j + 1][k] *= g;
        }
    }

    let mut samples = Vec::with_capacity(offset);
    for p in pieces {
        samples.extend_from_slice(&p);
    }

    Ok(RenderedFixture {
        signal: SampledSignal::new(samples, rate),
        truth_gcis,
        truth_labels,
        annotations,
        section_bounds_s,
    })
}
