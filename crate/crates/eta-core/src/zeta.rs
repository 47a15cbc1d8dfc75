//! Euler-Maclaurin evaluation of the Riemann zeta function.
//!
//! The workhorse is
//!
//!   zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!           + sum_{k=1..K} B_{2k}/(2k)! * (s)(s+1)...(s+2k-2) * N^{-s-2k+1} + E,
//!
//! with N = max(50, 2|t|) and K = 12 correction terms. This keeps the
//! relative error at or below 1e-12 throughout the window |t| <= 1e6,
//! sigma >= 1/2 (and remains usable down to sigma > -1). The same expansion
//! differentiated term by term in s gives zeta', which downstream code needs
//! for the logarithmic derivative.
//!
//! The module also carries the Riemann-Siegel theta function and Hardy's
//! Z(t) = exp(i theta(t)) zeta(1/2 + it), used to locate the first few
//! critical-line zeros for fixture catalogs.

use num_complex::Complex64;

use crate::error::{EtaError, Result};

/// B_{2k} / (2k)! for k = 1..=12.
const EM_COEFFS: [f64; 12] = [
    8.333333333333333e-2,    // B2/2!   = 1/12
    -1.3888888888888889e-3,  // B4/4!   = -1/720
    3.3068783068783068e-5,   // B6/6!   = 1/30240
    -8.267195767195768e-7,   // B8/8!   = -1/1209600
    2.0876756987868099e-8,   // B10/10! = 1/47900160
    -5.2841901386874932e-10, // B12/12! = -691/1307674368000
    1.3382536530684679e-11,  // B14/14!
    -3.3896802963225829e-13, // B16/16!
    8.5860620562778446e-15,  // B18/18!
    -2.1748686985580619e-16, // B20/20!
    5.5090028283602295e-18,  // B22/22!
    -1.3954464685812522e-19, // B24/24!
];

/// Number of initial terms for the truncated sum at ordinate t.
#[inline]
fn em_length(t: f64) -> usize {
    (2.0 * t.abs()).ceil().max(50.0) as usize
}

/// Riemann zeta by Euler-Maclaurin summation.
///
/// Relative error <= 1e-12 for sigma >= 1/2, |t| <= 1e6. Returns
/// `PoleAtOne` when |s - 1| < 1e-12.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(EtaError::PoleAtOne);
    }
    Ok(zeta_core(s, em_length(s.im)).0)
}

/// Zeta and its derivative from the same expansion.
pub fn zeta_with_derivative(s: Complex64) -> Result<(Complex64, Complex64)> {
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(EtaError::PoleAtOne);
    }
    Ok(zeta_core(s, em_length(s.im)))
}

/// zeta'/zeta. The callers stay away from zeros, so no pole handling beyond s = 1.
pub fn log_derivative(s: Complex64) -> Result<Complex64> {
    let (z, dz) = zeta_with_derivative(s)?;
    Ok(dz / z)
}

fn zeta_core(s: Complex64, n_terms: usize) -> (Complex64, Complex64) {
    let nf = n_terms as f64;
    let ln_n = nf.ln();

    // Main truncated sum and its s-derivative: d/ds n^{-s} = -ln n * n^{-s}.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    for n in 1..n_terms {
        let ln = (n as f64).ln();
        let term = (-s * ln).exp();
        sum += term;
        dsum -= term * ln;
    }

    // N^{1-s}/(s-1) and the midpoint term N^{-s}/2.
    let n_pow_1ms = ((1.0 - s) * ln_n).exp(); // N^{1-s}
    let sm1 = s - 1.0;
    let tail = n_pow_1ms / sm1;
    let dtail = -n_pow_1ms * ln_n / sm1 - n_pow_1ms / (sm1 * sm1);

    let n_pow_ms = (-s * ln_n).exp(); // N^{-s}
    let mid = 0.5 * n_pow_ms;
    let dmid = -0.5 * n_pow_ms * ln_n;

    // Bernoulli corrections. poch = s(s+1)...(s+2k-2); its log-derivative is
    // the harmonic-style sum over the factors.
    let mut corr = Complex64::new(0.0, 0.0);
    let mut dcorr = Complex64::new(0.0, 0.0);
    let inv_n2 = 1.0 / (nf * nf);
    let mut poch = s; // k = 1: product over j = 0..=0
    let mut dpoch = Complex64::new(1.0, 0.0);
    let mut n_factor = n_pow_ms / nf; // N^{-s-2k+1} at k = 1
    for (k, &c) in EM_COEFFS.iter().enumerate() {
        let term = c * poch * n_factor;
        corr += term;
        // d/ds [poch * N^{-s-2k+1}] = (dpoch - poch ln N) N^{-s-2k+1}
        dcorr += c * (dpoch - poch * ln_n) * n_factor;
        // Advance to k+1: multiply poch by (s+2k-1)(s+2k); product rule for dpoch.
        let j1 = s + (2 * k + 1) as f64;
        let j2 = s + (2 * k + 2) as f64;
        dpoch = dpoch * j1 * j2 + poch * (j1 + j2);
        poch = poch * j1 * j2;
        n_factor *= inv_n2;
    }

    (sum + tail + mid + corr, dsum + dtail + dmid + dcorr)
}

/// Riemann-Siegel theta: Im ln Gamma(1/4 + it/2) - (t/2) ln pi.
pub fn theta(t: f64) -> f64 {
    let z = Complex64::new(0.25, 0.5 * t);
    ln_gamma(z).im - 0.5 * t * std::f64::consts::PI.ln()
}

/// Hardy's function Z(t); real-valued, vanishes exactly at critical-line zeros.
pub fn hardy_z(t: f64) -> Result<f64> {
    let z = zeta(Complex64::new(0.5, t))?;
    let rot = Complex64::new(0.0, theta(t)).exp();
    Ok((rot * z).re)
}

/// Log-gamma via the Stirling series, shifting the argument right until
/// |z| is large enough. Valid for Re(z) > 0, which is all this crate needs.
fn ln_gamma(mut z: Complex64) -> Complex64 {
    // Stirling coefficients B_{2k} / (2k (2k-1)).
    const STIRLING: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 20.0 {
        shift += z.ln();
        z += 1.0;
    }
    let half_log_two_pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut out = (z - 0.5) * z.ln() - z + half_log_two_pi;
    let z2 = z * z;
    let mut zpow = z;
    for &c in &STIRLING {
        out += c / zpow;
        zpow *= z2;
    }
    out - shift
}

/// Bisect a sign change of Z between t_lo and t_hi down to `tol`.
pub fn refine_z_zero(mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut f_lo = hardy_z(lo)?;
    let f_hi = hardy_z(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(EtaError::Domain(format!(
            "no sign change of Z on [{lo}, {hi}]"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = hardy_z(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scan [t_from, t_to] for sign changes of Z and refine each to `tol`.
/// Used to build small fixture catalogs; not intended for large heights.
pub fn find_critical_zeros(t_from: f64, t_to: f64, scan_step: f64, tol: f64) -> Result<Vec<f64>> {
    let mut zeros = Vec::new();
    let mut t = t_from;
    let mut z_prev = hardy_z(t)?;
    while t < t_to {
        let t_next = (t + scan_step).min(t_to);
        let z_next = hardy_z(t_next)?;
        if z_prev.signum() != z_next.signum() {
            zeros.push(refine_z_zero(t, t_next, tol)?);
        }
        t = t_next;
        z_prev = z_next;
        if t >= t_to {
            break;
        }
    }
    Ok(zeros)
}
