//! The smooth cutoff and its Mellin transform.
//!
//! The cutoff is the standard smooth partition bump:
//!
//!   phi(x) = 1                             on [0, 1],
//!   phi(x) = f(2-x) / (f(2-x) + f(x-1))    on (1, 2),  f(u) = exp(-1/u),
//!   phi(x) = 0                             on [2, inf),
//!
//! infinitely differentiable, monotone on the transition, phi(1.5) = 1/2 by
//! symmetry. Its Mellin transform is evaluated through the integrated-by-parts
//! form
//!
//!   phi_hat(s) = -(1/s) * integral_1^2 phi'(x) x^s dx,
//!
//! which converges for Re(s) > -1, exhibits the simple pole at s = 0 with
//! residue phi(0) = 1, and decays faster than any power of |Im s| on vertical
//! lines.

use num_complex::Complex64;

use crate::error::{EtaError, Result};
use crate::quad;

fn f_bump(u: f64) -> f64 {
    if u > 0.0 {
        (-1.0 / u).exp()
    } else {
        0.0
    }
}

fn f_bump_deriv(u: f64) -> f64 {
    if u > 0.0 {
        (-1.0 / u).exp() / (u * u)
    } else {
        0.0
    }
}

/// The cutoff value phi(x).
pub fn phi(x: f64) -> f64 {
    if x <= 1.0 {
        if x >= 0.0 {
            1.0
        } else {
            0.0
        }
    } else if x >= 2.0 {
        0.0
    } else {
        let a = f_bump(x - 1.0);
        let b = f_bump(2.0 - x);
        b / (a + b)
    }
}

/// phi'(x); identically zero outside the open transition (1, 2).
pub fn phi_deriv(x: f64) -> f64 {
    if x <= 1.0 || x >= 2.0 {
        return 0.0;
    }
    let a = f_bump(x - 1.0);
    let b = f_bump(2.0 - x);
    let da = f_bump_deriv(x - 1.0);
    let db = f_bump_deriv(2.0 - x);
    // d/dx [b/(a+b)] with a = f(x-1), b = f(2-x): b' = -db, a' = da.
    (-db * a - b * da) / ((a + b) * (a + b))
}

/// Mellin transform phi_hat(s) for Re(s) > -1, |s| > 1e-8.
pub fn mellin_phi(s: Complex64) -> Result<Complex64> {
    if s.norm() <= 1e-8 {
        return Err(EtaError::NearPole);
    }
    if s.re <= -1.0 {
        return Err(EtaError::Domain(format!(
            "mellin transform requires Re(s) > -1, got {}",
            s.re
        )));
    }
    let (integral, _) = quad::integrate(
        &|x: f64| Complex64::new(phi_deriv(x), 0.0) * (s * x.ln()).exp(),
        1.0,
        2.0,
        1e-12,
    )?;
    Ok(-integral / s)
}

/// Truncated Mellin inversion along Re = c: returns the absolute recovery
/// error |(1/2 pi) integral_{-cutoff}^{cutoff} phi_hat(c+iu) x^{-c-iu} du - phi(x)|.
pub fn mellin_inversion_error(x: f64, c: f64, cutoff: f64) -> Result<f64> {
    if x <= 0.0 || c <= 0.0 {
        return Err(EtaError::Domain(format!(
            "inversion needs x > 0 and c > 0, got x = {x}, c = {c}"
        )));
    }
    let ln_x = x.ln();
    let integrand = |u: f64| -> Complex64 {
        let s = Complex64::new(c, u);
        // phi_hat is smooth and rapidly decaying on the contour; the quadrature
        // error inside mellin_phi is far below the recovery tolerance.
        let hat = mellin_phi(s).unwrap_or(Complex64::new(0.0, 0.0));
        hat * (-s * ln_x).exp()
    };
    let (integral, _) = quad::integrate(&integrand, -cutoff, cutoff, 1e-9)?;
    let recovered = integral / (2.0 * std::f64::consts::PI);
    Ok((recovered - Complex64::new(phi(x), 0.0)).norm())
}

/// Fit the constant of the vertical-line decay bound
/// |phi_hat(sigma + it)| <= C (1 + |t|)^{-power} over t in [t_lo, t_hi],
/// sampled at `samples` points. Returns the fitted C (the max of
/// |phi_hat| (1+t)^power over the grid).
pub fn decay_constant_fit(sigma: f64, power: i32, t_lo: f64, t_hi: f64, samples: usize) -> Result<f64> {
    let mut c_fit: f64 = 0.0;
    for i in 0..samples {
        let t = t_lo + (t_hi - t_lo) * i as f64 / (samples.max(2) - 1) as f64;
        let hat = mellin_phi(Complex64::new(sigma, t))?;
        c_fit = c_fit.max(hat.norm() * (1.0 + t.abs()).powi(power));
    }
    Ok(c_fit)
}
