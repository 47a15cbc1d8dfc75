//! Adaptive complex-valued quadrature on finite intervals.
//!
//! A 7/15 Gauss-Kronrod pair gives the local estimate and its error; panels
//! are halved until the summed error estimate meets an absolute tolerance.
//! Recursion depth is capped at 40, after which `ToleranceNotMet` is raised.

use num_complex::Complex64;

use crate::error::{EtaError, Result};

/// Kronrod abscissae on [-1, 1] (positive half; node 7 is the midpoint).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// 15-point Kronrod weights matching XGK.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// 7-point Gauss weights (the even-indexed Kronrod nodes).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

const MAX_DEPTH: u32 = 40;

/// One Gauss-Kronrod panel. Returns the Kronrod value and |K15 - G7|.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

/// Integrate `f` over [a, b] with absolute tolerance `tol`.
///
/// Returns the value and the accumulated error estimate.
pub fn integrate<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Result<(Complex64, f64)> {
    if a == b {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let (sign, lo, hi) = if a < b { (1.0, a, b) } else { (-1.0, b, a) };
    let (value, err) = refine(f, lo, hi, tol, 0)?;
    Ok((sign * value, err))
}

fn refine<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<(Complex64, f64)> {
    let (value, err) = gk15(f, a, b);
    if err <= tol || b - a < 1e-14 * (1.0 + a.abs()) {
        return Ok((value, err));
    }
    if depth >= MAX_DEPTH {
        return Err(EtaError::ToleranceNotMet { tol, best: err });
    }
    let mid = 0.5 * (a + b);
    let (left, el) = refine(f, a, mid, 0.5 * tol, depth + 1)?;
    let (right, er) = refine(f, mid, b, 0.5 * tol, depth + 1)?;
    Ok((left + right, el + er))
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    let (v, e) = integrate(&|x| Complex64::new(f(x), 0.0), a, b, tol)?;
    Ok((v.re, e))
}
