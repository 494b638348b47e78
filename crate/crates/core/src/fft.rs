//! Shared FFT plumbing: cached plans, a packed real-pair transform, and the
//! FFT-based analytic envelope.

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Process-wide plan cache. rustfft plans are `Send + Sync`, so clones of the
/// `Arc` can be used freely from worker threads.
struct PlanCache {
    forward: HashMap<usize, Arc<dyn Fft<f64>>>,
    inverse: HashMap<usize, Arc<dyn Fft<f64>>>,
}

static CACHE: Mutex<Option<PlanCache>> = Mutex::new(None);

fn with_cache<T>(f: impl FnOnce(&mut PlanCache) -> T) -> T {
    let mut guard = CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(|| PlanCache {
        forward: HashMap::new(),
        inverse: HashMap::new(),
    });
    f(cache)
}

pub fn forward_plan(len: usize) -> Arc<dyn Fft<f64>> {
    with_cache(|c| {
        c.forward
            .entry(len)
            .or_insert_with(|| FftPlanner::new().plan_fft_forward(len))
            .clone()
    })
}

pub fn inverse_plan(len: usize) -> Arc<dyn Fft<f64>> {
    with_cache(|c| {
        c.inverse
            .entry(len)
            .or_insert_with(|| FftPlanner::new().plan_fft_inverse(len))
            .clone()
    })
}

/// Transform two real sequences with a single complex FFT by packing them as
/// `a[n] + i b[n]`. Returns the spectra of `a` and `b`, each of length `len`.
///
/// `a` and `b` may be shorter than `len`; the tail is zero-padded.
pub fn fft_real_pair(a: &[f64], b: &[f64], len: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    assert!(a.len() <= len && b.len() <= len);
    let mut packed = vec![Complex64::new(0.0, 0.0); len];
    for (i, &x) in a.iter().enumerate() {
        packed[i].re = x;
    }
    for (i, &y) in b.iter().enumerate() {
        packed[i].im = y;
    }
    forward_plan(len).process(&mut packed);

    let mut spec_a = vec![Complex64::new(0.0, 0.0); len];
    let mut spec_b = vec![Complex64::new(0.0, 0.0); len];
    for k in 0..len {
        let z = packed[k];
        let zc = packed[(len - k) % len].conj();
        spec_a[k] = 0.5 * (z + zc);
        let d = z - zc;
        // (z - conj(z[-k])) / 2i
        spec_b[k] = Complex64::new(0.5 * d.im, -0.5 * d.re);
    }
    (spec_a, spec_b)
}

/// Magnitude of the analytic signal of a real sequence, computed by the
/// spectral method: forward transform, zero the negative half, double the
/// positive half, inverse transform, take per-sample magnitude.
///
/// The real part of the analytic signal equals the input exactly, so the
/// returned envelope bounds `|x[k]|` at every index.
pub fn analytic_envelope(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![x[0].abs()];
    }
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward_plan(n).process(&mut buf);

    let half = n / 2;
    if n % 2 == 0 {
        // DC and Nyquist stay, positive bins double, negative bins vanish.
        for v in buf.iter_mut().take(half).skip(1) {
            *v *= 2.0;
        }
        for v in buf.iter_mut().skip(half + 1) {
            *v = Complex64::new(0.0, 0.0);
        }
    } else {
        for v in buf.iter_mut().take(half + 1).skip(1) {
            *v *= 2.0;
        }
        for v in buf.iter_mut().skip(half + 1) {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    inverse_plan(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter().map(|c| (c * scale).norm()).collect()
}

/// Forward FFT of a real sequence zero-padded to `len`.
pub fn fft_real(x: &[f64], len: usize) -> Vec<Complex64> {
    assert!(x.len() <= len);
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for (i, &v) in x.iter().enumerate() {
        buf[i].re = v;
    }
    forward_plan(len).process(&mut buf);
    buf
}
