//! Analytic evaluation of the iterated integrals of log zeta.
//!
//! Two independent routes cover the strip:
//!
//! * **Series region** (sigma > 1). Termwise integration of the Dirichlet
//!   series collapses the m-fold iterated integral to a single weighted one,
//!
//!     eta_m(s) = (1/m!) integral_sigma^infty (alpha - sigma)^m
//!                (-zeta'/zeta)(alpha + it) d alpha,
//!
//!   an identity checked by integrating alpha |-> n^{-alpha} directly. The
//!   integrand is single-valued, so no branch bookkeeping is needed; the
//!   integral is truncated where the summatory bound
//!   -zeta'/zeta(alpha) <= 2 ln 2 * 2^{-alpha} certifies the tail.
//!
//! * **Continuation** (sigma > 1/2 on admissible rays). log zeta is tracked
//!   along the horizontal ray from the anchor abscissa 3, where the series
//!   branch equals the principal logarithm; higher m come from adaptive
//!   quadrature of the previous level back to the anchor value. A
//!   `RayEvaluator` caches the walk and the anchor values so repeated
//!   queries on one ray stay cheap.

use std::cell::RefCell;

use num_complex::Complex64;

use crate::error::{EtaError, Result};
use crate::quad;
use crate::zeta::{log_derivative, zeta};
use crate::zeros::ZeroCatalog;

use std::f64::consts::PI;

/// Anchor abscissa: the Dirichlet tail beyond 1e7 is below 1e-14 here and
/// the series branch of log zeta is principal.
pub const ANCHOR_SIGMA: f64 = 3.0;

/// Where the modulus bound |log zeta(sigma + it)| <= log zeta(sigma) drops
/// below pi, making the principal logarithm the series branch pointwise.
const PRINCIPAL_SAFE_SIGMA: f64 = 1.05;

/// Summatory-function decay constant: -zeta'/zeta(alpha) <= C * 2^{-alpha}
/// for alpha >= 10.
const TAIL_C: f64 = 1.3862943611198906; // 2 ln 2

/// Evaluation point for the m-th iterated integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    pub sigma: f64,
    pub t: f64,
    pub m: u32,
}

impl EvalPoint {
    pub fn new(sigma: f64, t: f64, m: u32) -> Result<Self> {
        if sigma <= 0.5 {
            return Err(EtaError::Domain(format!(
                "evaluation requires sigma > 1/2, got {sigma}"
            )));
        }
        Ok(EvalPoint { sigma, t, m })
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

/// A horizontal branch-tracking path at fixed ordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuationPath {
    pub t: f64,
    pub sigma_start: f64,
    pub sigma_end: f64,
    /// Smallest step the refinement may take before declaring a branch jump.
    pub step_control: f64,
}

impl ContinuationPath {
    pub fn new(t: f64, sigma_start: f64, sigma_end: f64, step_control: f64) -> Result<Self> {
        if sigma_start < ANCHOR_SIGMA {
            return Err(EtaError::Domain(format!(
                "continuation anchor must sit at sigma >= {ANCHOR_SIGMA}, got {sigma_start}"
            )));
        }
        if !(sigma_start > sigma_end && sigma_end > 0.5) {
            return Err(EtaError::Domain(format!(
                "path needs sigma_start > sigma_end > 1/2, got {sigma_start} > {sigma_end}"
            )));
        }
        if !(step_control > 0.0) {
            return Err(EtaError::Domain("step control must be positive".into()));
        }
        Ok(ContinuationPath {
            t,
            sigma_start,
            sigma_end,
            step_control,
        })
    }
}

/// Which evaluation route to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Series,
    Continuation,
}

fn factorial(m: u32) -> f64 {
    (1..=m as u64).map(|k| k as f64).product::<f64>().max(1.0)
}

/// Certified bound on (1/m!) integral_A^infty (alpha-sigma)^m C 2^{-alpha} d alpha,
/// which closes to (C / lambda^{m+1}) e^{-lambda A} sum_{j<=m} (lambda (A-sigma))^j / j!.
fn series_tail_bound(m: u32, sigma: f64, a: f64) -> f64 {
    let lambda = std::f64::consts::LN_2;
    let x = lambda * (a - sigma);
    let mut series = 0.0;
    let mut term = 1.0;
    for j in 0..=m {
        if j > 0 {
            term *= x / j as f64;
        }
        series += term;
    }
    TAIL_C / lambda.powi(m as i32 + 1) * (-lambda * a).exp() * series
}

/// eta_m on the series half-plane sigma > 1.
///
/// The quadrature runs at absolute tolerance 1e-12 and the analytic tail
/// beyond the truncation abscissa stays below 1e-13.
pub fn series_eta(m: u32, s: Complex64) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(EtaError::Domain(format!(
            "series evaluation requires sigma > 1, got {}",
            s.re
        )));
    }
    if m == 0 && s.re >= PRINCIPAL_SAFE_SIGMA {
        // log zeta(sigma) < pi here, so the series branch is principal.
        return Ok(zeta(s)?.ln());
    }
    let sigma = s.re;
    let t = s.im;
    let a_cut = 55.0 + 8.0 * m as f64;
    let inv_mf = 1.0 / factorial(m);
    let integrand = move |alpha: f64| -> Result<Complex64> {
        let weight = (alpha - sigma).powi(m as i32) * inv_mf;
        Ok(-weight * log_derivative(Complex64::new(alpha, t))?)
    };
    let (value, _) = quad::integrate_checked(integrand, sigma, a_cut, 1e-12)?;
    debug_assert!(series_tail_bound(m, sigma, a_cut) < 1e-12);
    Ok(value)
}

fn two_pi_align(candidate: Complex64, reference: Complex64) -> Complex64 {
    let k = ((reference.im - candidate.im) / (2.0 * PI)).round();
    Complex64::new(candidate.re, candidate.im + 2.0 * PI * k)
}

/// Validate that the horizontal ray [sigma_min, infinity) at ordinate t
/// stays inside the cut domain known to the catalog.
fn validate_ray(catalog: &ZeroCatalog, t: f64, sigma_min: f64) -> Result<()> {
    if t.abs() < 1e-9 && sigma_min <= 1.0 {
        return Err(EtaError::CutViolation(format!(
            "ray at t = {t} with sigma down to {sigma_min} meets the real-axis cut"
        )));
    }
    if sigma_min > 1.0 {
        // No zeros right of 1; nothing to check.
        return Ok(());
    }
    let abs_t = t.abs();
    if abs_t > catalog.height_bound() {
        return Err(EtaError::CatalogTooShort {
            need: abs_t,
            have: catalog.height_bound(),
        });
    }
    const GUARD: f64 = 1e-6;
    for r in catalog.records() {
        if r.gamma > abs_t + 1.0 {
            break;
        }
        if r.beta > sigma_min && (r.gamma - abs_t).abs() < GUARD {
            return Err(EtaError::CutViolation(format!(
                "ray at t = {t} passes through the cut of the zero at {} + {}i",
                r.beta, r.gamma
            )));
        }
    }
    Ok(())
}

/// Branch-tracked log zeta along a horizontal path, anchored at the
/// principal (= series) value at sigma_start.
///
/// Steps start at 0.05 and halve until consecutive samples move by less
/// than 0.5; if the floor is reached with an imaginary jump above pi/2 the
/// walk aborts with `BranchJump`. Returns (sigma, log zeta) pairs from the
/// anchor down to sigma_end inclusive.
pub fn log_zeta_tracked(path: &ContinuationPath, catalog: &ZeroCatalog) -> Result<Vec<(f64, Complex64)>> {
    validate_ray(catalog, path.t, path.sigma_end)?;
    let mut samples = Vec::new();
    let anchor = zeta(Complex64::new(path.sigma_start, path.t))?.ln();
    samples.push((path.sigma_start, anchor));

    let mut sigma = path.sigma_start;
    let mut prev = anchor;
    while sigma > path.sigma_end {
        let mut step = 0.05_f64.min(sigma - path.sigma_end);
        loop {
            let next_sigma = sigma - step;
            let candidate = zeta(Complex64::new(next_sigma, path.t))?.ln();
            let aligned = two_pi_align(candidate, prev);
            if (aligned - prev).norm() < 0.5 {
                sigma = next_sigma;
                prev = aligned;
                samples.push((sigma, aligned));
                break;
            }
            step *= 0.5;
            if step < path.step_control {
                let jump = (aligned - prev).im.abs();
                if jump > PI / 2.0 {
                    return Err(EtaError::BranchJump {
                        sigma: next_sigma,
                        t: path.t,
                        jump,
                    });
                }
                sigma = next_sigma;
                prev = aligned;
                samples.push((sigma, aligned));
                break;
            }
        }
    }
    Ok(samples)
}

/// Cached evaluator for one horizontal ray: branch-tracked log zeta plus the
/// anchor values of every level requested so far.
///
/// Not `Sync`: parallel drivers build one evaluator per ray, which is also
/// what keeps them deterministic under any thread count.
pub struct RayEvaluator<'a> {
    t: f64,
    min_sigma: f64,
    catalog: &'a ZeroCatalog,
    /// Branch-tracked samples, sorted by descending sigma, starting at the anchor.
    walk: RefCell<Vec<(f64, Complex64)>>,
    /// eta_m at the anchor, filled on demand.
    anchors: RefCell<Vec<Option<Complex64>>>,
    step_floor: f64,
}

impl<'a> RayEvaluator<'a> {
    pub fn new(t: f64, min_sigma: f64, catalog: &'a ZeroCatalog) -> Result<Self> {
        if min_sigma <= 0.5 {
            return Err(EtaError::Domain(format!(
                "continuation requires sigma > 1/2, got {min_sigma}"
            )));
        }
        validate_ray(catalog, t, min_sigma)?;
        let anchor = zeta(Complex64::new(ANCHOR_SIGMA, t))?.ln();
        Ok(RayEvaluator {
            t,
            min_sigma,
            catalog,
            walk: RefCell::new(vec![(ANCHOR_SIGMA, anchor)]),
            anchors: RefCell::new(Vec::new()),
            step_floor: 1e-7,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Branch-tracked log zeta at sigma on this ray.
    pub fn log_zeta(&self, sigma: f64) -> Result<Complex64> {
        if sigma >= ANCHOR_SIGMA {
            // Right of the anchor the modulus never reaches pi/2; principal
            // log is the tracked branch.
            return Ok(zeta(Complex64::new(sigma, self.t))?.ln());
        }
        if sigma < self.min_sigma {
            return Err(EtaError::Domain(format!(
                "sigma {sigma} lies left of this ray's validated range ({})",
                self.min_sigma
            )));
        }
        // Extend the walk downward if needed.
        loop {
            let lowest = *self.walk.borrow().last().unwrap();
            if lowest.0 <= sigma {
                break;
            }
            self.extend_down_to(sigma, lowest)?;
        }
        // Locate the closest stored sample.
        let walk = self.walk.borrow();
        let idx = walk.partition_point(|&(a, _)| a > sigma);
        // walk[idx] is the first sample with sigma_sample <= sigma (it exists).
        let below = walk[idx.min(walk.len() - 1)];
        let above = walk[idx.saturating_sub(1)];
        let near = if (sigma - below.0).abs() <= (above.0 - sigma).abs() {
            below
        } else {
            above
        };
        drop(walk);
        if (near.0 - sigma).abs() < 1e-14 {
            return Ok(near.1);
        }
        let candidate = zeta(Complex64::new(sigma, self.t))?.ln();
        let aligned = two_pi_align(candidate, near.1);
        if (aligned - near.1).norm() < 0.5 {
            return Ok(aligned);
        }
        // Rare: the gap between stored samples hides fast variation. Refine
        // the walk through this gap and retry once.
        self.refine_gap(near.0, sigma)?;
        let walk = self.walk.borrow();
        let idx = walk.partition_point(|&(a, _)| a > sigma);
        let near = walk[idx.min(walk.len() - 1)];
        drop(walk);
        let aligned = two_pi_align(candidate, near.1);
        let jump = (aligned - near.1).im.abs();
        if jump > PI / 2.0 {
            return Err(EtaError::BranchJump {
                sigma,
                t: self.t,
                jump,
            });
        }
        Ok(aligned)
    }

    fn extend_down_to(&self, sigma_target: f64, lowest: (f64, Complex64)) -> Result<()> {
        let (mut sigma, mut prev) = lowest;
        let mut new_samples = Vec::new();
        while sigma > sigma_target {
            let mut step = 0.05_f64.min(sigma - sigma_target);
            loop {
                let next_sigma = sigma - step;
                let candidate = zeta(Complex64::new(next_sigma, self.t))?.ln();
                let aligned = two_pi_align(candidate, prev);
                if (aligned - prev).norm() < 0.5 || step < self.step_floor {
                    let jump = (aligned - prev).im.abs();
                    if step < self.step_floor && jump > PI / 2.0 {
                        return Err(EtaError::BranchJump {
                            sigma: next_sigma,
                            t: self.t,
                            jump,
                        });
                    }
                    sigma = next_sigma;
                    prev = aligned;
                    new_samples.push((sigma, aligned));
                    break;
                }
                step *= 0.5;
            }
        }
        self.walk.borrow_mut().extend(new_samples);
        Ok(())
    }

    fn refine_gap(&self, from_sigma: f64, to_sigma: f64) -> Result<()> {
        // Insert intermediate tracked samples between two abscissae by
        // stepping at a quarter of the gap.
        let (lo, hi) = if from_sigma < to_sigma {
            (from_sigma, to_sigma)
        } else {
            (to_sigma, from_sigma)
        };
        let mut walk = self.walk.borrow_mut();
        let idx = walk.partition_point(|&(a, _)| a > hi);
        let (mut sigma, mut prev) = walk[idx.saturating_sub(1)];
        let step = (hi - lo) / 4.0;
        let mut inserted = Vec::new();
        while sigma - step > lo + 1e-15 {
            sigma -= step;
            let candidate = zeta(Complex64::new(sigma, self.t))?.ln();
            let aligned = two_pi_align(candidate, prev);
            prev = aligned;
            inserted.push((sigma, aligned));
        }
        for s in inserted {
            let pos = walk.partition_point(|&(a, _)| a > s.0);
            if pos == walk.len() || (walk[pos].0 - s.0).abs() > 1e-15 {
                walk.insert(pos, s);
            }
        }
        Ok(())
    }

    /// eta_m at sigma on this ray, by continuation from the anchor.
    pub fn eta(&self, m: u32, sigma: f64) -> Result<Complex64> {
        if m == 0 {
            return self.log_zeta(sigma);
        }
        let anchor = self.anchor_value(m)?;
        if (sigma - ANCHOR_SIGMA).abs() < 1e-15 {
            return Ok(anchor);
        }
        if sigma > ANCHOR_SIGMA {
            // Right of the anchor stay on the series route.
            return series_eta(m, Complex64::new(sigma, self.t));
        }
        let lower = m - 1;
        let integrand = |alpha: f64| -> Result<Complex64> { self.eta(lower, alpha) };
        let (integral, _) = quad::integrate_checked(integrand, sigma, ANCHOR_SIGMA, 1e-10)?;
        Ok(anchor + integral)
    }

    fn anchor_value(&self, m: u32) -> Result<Complex64> {
        {
            let anchors = self.anchors.borrow();
            if let Some(Some(v)) = anchors.get(m as usize) {
                return Ok(*v);
            }
        }
        let v = series_eta(m, Complex64::new(ANCHOR_SIGMA, self.t))?;
        let mut anchors = self.anchors.borrow_mut();
        if anchors.len() <= m as usize {
            anchors.resize(m as usize + 1, None);
        }
        anchors[m as usize] = Some(v);
        Ok(v)
    }
}

/// eta_m(s) by the requested route.
///
/// The series route needs sigma > 1 and no catalog; continuation walks the
/// horizontal ray from the anchor and must find it free of cuts.
pub fn eta_m(point: &EvalPoint, method: Method, catalog: &ZeroCatalog) -> Result<Complex64> {
    match method {
        Method::Series => series_eta(point.m, point.s()),
        Method::Continuation => {
            let ray = RayEvaluator::new(point.t, point.sigma.min(ANCHOR_SIGMA), catalog)?;
            ray.eta(point.m, point.sigma)
        }
    }
}

/// Derivatives 0..order-1 of eta_m at the point, by trapezoidal quadrature
/// of the Cauchy integral on a circle of radius r (64 nodes, spectral
/// accuracy for these radii).
pub fn eta_m_derivatives(
    point: &EvalPoint,
    order: u32,
    radius: f64,
    catalog: &ZeroCatalog,
) -> Result<Vec<Complex64>> {
    const NODES: usize = 64;
    if !(radius > 0.0 && radius <= 0.1) {
        return Err(EtaError::Domain(format!(
            "derivative radius must lie in (0, 0.1], got {radius}"
        )));
    }
    if order == 0 {
        return Ok(Vec::new());
    }
    validate_disk(catalog, point, radius)?;

    let use_series = point.sigma - radius > PRINCIPAL_SAFE_SIGMA;
    let mut samples = Vec::with_capacity(NODES);
    for j in 0..NODES {
        let theta = 2.0 * PI * j as f64 / NODES as f64;
        let ds = radius * Complex64::new(theta.cos(), theta.sin());
        let s = point.s() + ds;
        let value = if use_series {
            series_eta(point.m, s)?
        } else {
            let ray = RayEvaluator::new(s.im, s.re.min(ANCHOR_SIGMA), catalog)?;
            ray.eta(point.m, s.re)?
        };
        samples.push(value);
    }

    let mut out = Vec::with_capacity(order as usize);
    let mut fact = 1.0;
    for d in 0..order {
        if d > 0 {
            fact *= d as f64;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &f) in samples.iter().enumerate() {
            let theta = 2.0 * PI * (d as usize * j % NODES) as f64 / NODES as f64;
            acc += f * Complex64::new(theta.cos(), -theta.sin());
        }
        out.push(acc * fact / (NODES as f64 * radius.powi(d as i32)));
    }
    Ok(out)
}

fn validate_disk(catalog: &ZeroCatalog, point: &EvalPoint, radius: f64) -> Result<()> {
    let sigma_lo = point.sigma - radius;
    if sigma_lo <= 0.5 {
        return Err(EtaError::CutViolation(format!(
            "disk of radius {radius} at sigma = {} leaves the half-plane sigma > 1/2",
            point.sigma
        )));
    }
    if point.t.abs() <= radius && sigma_lo <= 1.0 {
        return Err(EtaError::CutViolation(
            "disk meets the real-axis cut".into(),
        ));
    }
    if sigma_lo > 1.0 {
        return Ok(());
    }
    let need = point.t.abs() + radius;
    if need > catalog.height_bound() {
        return Err(EtaError::CatalogTooShort {
            need,
            have: catalog.height_bound(),
        });
    }
    const GUARD: f64 = 1e-6;
    for r in catalog.records() {
        if r.gamma > need + 1.0 {
            break;
        }
        if r.beta > sigma_lo && (r.gamma - point.t.abs()).abs() < radius + GUARD {
            return Err(EtaError::CutViolation(format!(
                "disk ordinates meet the cut of the zero at {} + {}i",
                r.beta, r.gamma
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::KeyedStream;
    use std::f64::consts::PI;

    fn rh_catalog() -> ZeroCatalog {
        ZeroCatalog::critical_line_to_height(1e6)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_eta0_is_log_zeta_two() {
        let v = series_eta(0, c(2.0, 0.0)).unwrap();
        let expect = (PI * PI / 6.0).ln();
        assert!((v.re - expect).abs() < 1e-12, "{} vs {expect}", v.re);
        assert!(v.im.abs() < 1e-13);
    }

    #[test]
    fn series_quadrature_route_matches_log_route_for_m0() {
        // The weighted-integral route with m = 0 must agree with principal
        // log zeta wherever both apply; this is the identity that certifies
        // the quadrature machinery.
        for &(sigma, t) in &[(1.2, 3.0), (2.0, 50.0), (1.06, -20.0), (2.9, 0.0)] {
            let s = c(sigma, t);
            let inv = 1.0;
            let integrand = move |alpha: f64| -> Result<Complex64> {
                Ok(-inv * log_derivative(c(alpha, t))?)
            };
            let (quad_value, _) = quad::integrate_checked(integrand, sigma, 55.0, 1e-12).unwrap();
            let log_value = zeta(s).unwrap().ln();
            assert!(
                (quad_value - log_value).norm() < 1e-10,
                "s = {s}: {quad_value} vs {log_value}"
            );
        }
    }

    #[test]
    fn series_eta1_matches_direct_lambda_sum() {
        // Direct summation oracle: sum over n <= 1e7 of Lambda(n)/(n^2 (log n)^2)
        // plus an integral tail bound below 4e-10.
        let table = crate::primes::LambdaTable::build(10_000_000).unwrap();
        let mut oracle = 0.0;
        for e in table.entries() {
            oracle += e.lambda / ((e.n as f64) * (e.n as f64) * e.log_n * e.log_n);
        }
        let tail = 1.0 / (1e7 * 1e7_f64.ln().powi(2));
        let v = series_eta(1, c(2.0, 0.0)).unwrap();
        assert!(
            (v.re - oracle).abs() < tail + 1e-10,
            "{} vs {oracle} (tail {tail:e})",
            v.re
        );
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn series_rejects_low_sigma() {
        assert!(series_eta(0, c(1.0, 5.0)).is_err());
        assert!(series_eta(2, c(0.9, 5.0)).is_err());
    }

    #[test]
    fn tracked_log_reaches_known_values() {
        let cat = rh_catalog();
        let path = ContinuationPath::new(0.0, 3.0, 2.0, 1e-7).unwrap();
        let walk = log_zeta_tracked(&path, &cat).unwrap();
        let (sigma_end, value) = *walk.last().unwrap();
        assert_eq!(sigma_end, 2.0);
        assert!((value.re - (PI * PI / 6.0).ln()).abs() < 1e-11);
        assert!(value.im.abs() < 1e-12);

        let path = ContinuationPath::new(0.0, 3.0, 1.1, 1e-7).unwrap();
        let walk = log_zeta_tracked(&path, &cat).unwrap();
        let (_, v) = *walk.last().unwrap();
        let z = zeta(c(1.1, 0.0)).unwrap();
        assert!((v.exp() - z).norm() < 1e-10);
    }

    #[test]
    fn tracked_log_exponentiates_back_to_zeta_off_axis() {
        let cat = rh_catalog();
        for &(t, sigma_end) in &[(14.0, 0.6), (50.0, 0.75), (333.3, 0.9), (14.134725, 0.55)] {
            let path = ContinuationPath::new(t, 3.0, sigma_end, 1e-7).unwrap();
            let walk = log_zeta_tracked(&path, &cat).unwrap();
            for &(sigma, v) in &walk {
                let z = zeta(c(sigma, t)).unwrap();
                assert!(
                    (v.exp() - z).norm() <= 1e-10 * z.norm().max(1.0),
                    "t = {t}, sigma = {sigma}"
                );
            }
        }
    }

    #[test]
    fn ray_cut_validation() {
        let cat = rh_catalog();
        // Real-axis cut blocks t ~ 0 paths into sigma <= 1.
        assert!(matches!(
            RayEvaluator::new(0.0, 0.8, &cat),
            Err(EtaError::CutViolation(_))
        ));
        // Synthetic off-line zero blocks its own ordinate.
        let bad = ZeroCatalog::synthetic(
            vec![crate::zeros::ZeroRecord { beta: 0.8, gamma: 100.0 }],
            1e6,
        )
        .unwrap();
        assert!(matches!(
            RayEvaluator::new(100.0, 0.7, &bad),
            Err(EtaError::CutViolation(_))
        ));
        // But passing right of the zero is fine.
        assert!(RayEvaluator::new(100.0, 0.85, &bad).is_ok());
    }

    #[test]
    fn series_and_continuation_agree_on_overlap() {
        let cat = rh_catalog();
        let mut stream = KeyedStream::new(2024, 0);
        for _ in 0..30 {
            let sigma = stream.range(1.06, 3.0);
            let t = stream.range(-60.0, 60.0);
            let m = (stream.next_u64() % 3) as u32;
            let p = EvalPoint::new(sigma, t, m).unwrap();
            let a = eta_m(&p, Method::Series, &cat).unwrap();
            let b = eta_m(&p, Method::Continuation, &cat).unwrap();
            assert!(
                (a - b).norm() < 1e-9,
                "m = {m}, s = {sigma}+{t}i: {a} vs {b}"
            );
        }
    }

    #[test]
    fn eta_sigma_derivative_is_minus_previous_level() {
        // Central difference in sigma at h = 1e-4 against -eta_{m-1}.
        let cat = rh_catalog();
        let mut stream = KeyedStream::new(7, 1);
        for _ in 0..25 {
            let sigma = stream.range(1.5, 3.0);
            let t = stream.range(-40.0, 40.0);
            let m = 1 + (stream.next_u64() % 2) as u32;
            let h = 1e-4;
            let plus = series_eta(m, c(sigma + h, t)).unwrap();
            let minus = series_eta(m, c(sigma - h, t)).unwrap();
            let fd = (plus - minus) / (2.0 * h);
            let expect = -series_eta(m - 1, c(sigma, t)).unwrap();
            assert!(
                (fd - expect).norm() < 1e-6,
                "m = {m}, sigma = {sigma}, t = {t}"
            );
        }
    }

    #[test]
    fn cauchy_derivatives_first_entries() {
        let cat = rh_catalog();
        let p = EvalPoint::new(2.0, 0.0, 1).unwrap();
        let derivs = eta_m_derivatives(&p, 2, 0.05, &cat).unwrap();
        // Zeroth derivative = the value itself.
        let direct = series_eta(1, c(2.0, 0.0)).unwrap();
        assert!((derivs[0] - direct).norm() < 1e-10);
        // First derivative = -eta_0(2) = -log zeta(2).
        let expect = -(PI * PI / 6.0).ln();
        assert!(
            (derivs[1].re - expect).abs() < 1e-9,
            "{} vs {expect}",
            derivs[1].re
        );

        // m = 0: first derivative is zeta'/zeta(2), independently
        // -sum Lambda(n) n^{-2} with a PNT-estimated tail below 2e-8.
        let p0 = EvalPoint::new(2.0, 0.0, 0).unwrap();
        let derivs0 = eta_m_derivatives(&p0, 2, 0.05, &cat).unwrap();
        let table = crate::primes::LambdaTable::build(10_000_000).unwrap();
        let partial: f64 = table.entries().iter().map(|e| e.lambda / (e.n as f64 * e.n as f64)).sum();
        let oracle = -(partial + 1.0 / 1e7); // tail of sum Lambda(n) n^{-2} is ~ 1/y
        assert!(
            (derivs0[1].re - oracle).abs() < 1e-7,
            "{} vs {oracle}",
            derivs0[1].re
        );
    }

    #[test]
    fn derivative_disk_validation() {
        let cat = rh_catalog();
        // Disk leaving the half-plane.
        let p = EvalPoint::new(0.55, 50.0, 1).unwrap();
        assert!(eta_m_derivatives(&p, 1, 0.1, &cat).is_err());
        // Radius cap.
        let p = EvalPoint::new(2.0, 0.0, 1).unwrap();
        assert!(eta_m_derivatives(&p, 1, 0.2, &cat).is_err());
    }

    #[test]
    fn continuation_far_below_one_stays_consistent() {
        // exp(eta_0) = zeta at continuation endpoints in the strip.
        let cat = rh_catalog();
        for &(sigma, t) in &[(0.7, 21.3), (0.6, 14.0), (0.9, 77.7)] {
            let ray = RayEvaluator::new(t, sigma, &cat).unwrap();
            let v = ray.eta(0, sigma).unwrap();
            let z = zeta(c(sigma, t)).unwrap();
            assert!((v.exp() - z).norm() < 1e-10 * z.norm().max(1.0));
        }
    }
}
