//! Thin wrapper over `rustfft` with the normalization used throughout:
//! `f_j = Σ_n c_n e^{i n τ_j}`, coefficients stored in DFT order.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Coefficients `c_n` of the samples, in DFT order (`n = 0, 1, …, N/2, −N/2+1, …, −1`).
pub fn forward(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    if n == 0 {
        return buf;
    }
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Inverse of [`forward`].
pub fn inverse(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let mut buf = coeffs.to_vec();
    if n == 0 {
        return buf;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf
}

/// Signed wavenumber of DFT slot `k` for an even length `n`; the Nyquist slot
/// maps to `−n/2`.
pub fn wavenumber(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Derivative with respect to τ of periodic samples, Nyquist mode dropped.
pub fn differentiate(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut c = forward(samples);
    for (k, ck) in c.iter_mut().enumerate() {
        let m = wavenumber(k, n);
        if n.is_multiple_of(2) && m == -(n as i64) / 2 {
            *ck = Complex64::new(0.0, 0.0);
        } else {
            *ck *= Complex64::new(0.0, m as f64);
        }
    }
    inverse(&c)
}
