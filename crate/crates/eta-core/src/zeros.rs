//! Nontrivial-zero catalogs, compact evaluation rectangles, and the shift
//! exclusion sets built from them.
//!
//! A shift tau is admissible for a rectangle K when the whole translated
//! rectangle stays inside the cut domain of log zeta. That fails only when
//! tau falls within Delta of gamma - tau0 for some zero with beta above the
//! reference abscissa, or within Delta of -tau0 (the image of the real-axis
//! cut). All the sets here are unions of such windows removed from a base
//! interval.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{EtaError, Result};
use crate::intervals::ShiftIntervalSet;

/// One nontrivial zero, beta + i*gamma. Ordinate tables carry gamma > 0;
/// the conjugate -gamma is implied and handled by the set constructors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub beta: f64,
    pub gamma: f64,
}

/// Sorted zero list with provenance and a completeness height.
///
/// Immutable after construction; every operation that consumes it is pure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroCatalog {
    records: Vec<ZeroRecord>,
    source: String,
    height_bound: f64,
    assume_rh: bool,
}

impl ZeroCatalog {
    /// Read a plain-text ordinate table: one decimal ordinate per line,
    /// strictly ascending, `#` comment lines ignored.
    ///
    /// Ordinate tables carry no real parts, so every record gets beta = 1/2;
    /// `assume_rh` records whether downstream reporting may treat the list
    /// as exhaustive on the critical line.
    pub fn ingest<P: AsRef<Path>>(path: P, assume_rh: bool) -> Result<Self> {
        let text = fs::read_to_string(&path)?;
        let source = path.as_ref().display().to_string();
        Self::parse(&text, &source, assume_rh)
    }

    /// Parse the ordinate-table format from a string.
    pub fn parse(text: &str, source: &str, assume_rh: bool) -> Result<Self> {
        let mut records = Vec::new();
        let mut prev = f64::NEG_INFINITY;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let gamma: f64 = line.parse().map_err(|_| EtaError::Parse {
                line: idx + 1,
                msg: format!("not a decimal ordinate: {line:?}"),
            })?;
            if !gamma.is_finite() {
                return Err(EtaError::Parse {
                    line: idx + 1,
                    msg: "ordinate is not finite".into(),
                });
            }
            if gamma <= prev {
                return Err(EtaError::Monotonicity {
                    line: idx + 1,
                    value: gamma,
                });
            }
            prev = gamma;
            records.push(ZeroRecord { beta: 0.5, gamma });
        }
        let height_bound = records.last().map_or(0.0, |r| r.gamma);
        Ok(ZeroCatalog {
            records,
            source: source.to_string(),
            height_bound,
            assume_rh,
        })
    }

    /// Synthetic catalog with explicit real parts and an asserted height
    /// bound. This is the injection mode that exercises exclusion logic;
    /// real tables never carry beta off the critical line.
    pub fn synthetic(mut records: Vec<ZeroRecord>, height_bound: f64) -> Result<Self> {
        records.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
        for pair in records.windows(2) {
            if pair[0].gamma >= pair[1].gamma {
                return Err(EtaError::Domain(
                    "synthetic ordinates must be strictly increasing".into(),
                ));
            }
        }
        for r in &records {
            if !(0.0 < r.beta && r.beta < 1.0) {
                return Err(EtaError::Domain(format!(
                    "beta out of range (0, 1): {}",
                    r.beta
                )));
            }
        }
        Ok(ZeroCatalog {
            records,
            source: "synthetic".into(),
            height_bound,
            assume_rh: false,
        })
    }

    /// A catalog asserting the critical-line hypothesis up to `height`:
    /// no record can generate an exclusion window for any sigma0 > 1/2.
    pub fn critical_line_to_height(height: f64) -> Self {
        ZeroCatalog {
            records: Vec::new(),
            source: "critical-line".into(),
            height_bound: height,
            assume_rh: true,
        }
    }

    pub fn records(&self) -> &[ZeroRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn height_bound(&self) -> f64 {
        self.height_bound
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn assume_rh(&self) -> bool {
        self.assume_rh
    }

    fn require_height(&self, need: f64) -> Result<()> {
        if need > self.height_bound {
            return Err(EtaError::CatalogTooShort {
                need,
                have: self.height_bound,
            });
        }
        Ok(())
    }

    /// Ordinates (and their conjugates) with beta above `beta_min` whose
    /// gamma lies in [lo, hi].
    fn qualifying_ordinates(&self, beta_min: f64, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for r in &self.records {
            if r.beta > beta_min {
                if lo <= r.gamma && r.gamma <= hi {
                    out.push(r.gamma);
                }
                if lo <= -r.gamma && -r.gamma <= hi {
                    out.push(-r.gamma);
                }
            }
        }
        out
    }
}

/// An axis-aligned compact rectangle inside the open strip
/// 1/2 < sigma < 1, with a boundary sampling resolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactRectSpec {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    /// Boundary grid size used by sup-norm evaluation.
    pub boundary_samples: usize,
}

/// The constants a rectangle determines: its ordinate width, center shift,
/// reference abscissa, and the enclosing open rectangle used by the metric.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectConstants {
    /// Ordinate extent of K.
    pub width: f64,
    /// Ordinate midpoint of K.
    pub tau0: f64,
    /// Reference abscissa: halfway between 1/2 and the left edge of K.
    pub sigma0: f64,
    /// Enclosing rectangle (sigma_lo, sigma_hi) x (t_lo, t_hi).
    pub rect: (f64, f64, f64, f64),
}

impl CompactRectSpec {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64, boundary_samples: usize) -> Result<Self> {
        if !(0.5 < sigma_min && sigma_min <= sigma_max && sigma_max < 1.0) {
            return Err(EtaError::Domain(format!(
                "rectangle abscissae must satisfy 1/2 < {sigma_min} <= {sigma_max} < 1"
            )));
        }
        if !(t_min <= t_max) {
            return Err(EtaError::Domain(format!(
                "rectangle ordinates must satisfy {t_min} <= {t_max}"
            )));
        }
        if boundary_samples < 64 {
            return Err(EtaError::Domain(format!(
                "boundary sampling must use at least 64 points, got {boundary_samples}"
            )));
        }
        Ok(CompactRectSpec {
            sigma_min,
            sigma_max,
            t_min,
            t_max,
            boundary_samples,
        })
    }

    pub fn width(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn tau0(&self) -> f64 {
        0.5 * (self.t_max + self.t_min)
    }

    pub fn sigma0(&self) -> f64 {
        0.5 * (0.5 + self.sigma_min)
    }

    /// All derived constants at once.
    pub fn constants(&self) -> RectConstants {
        let sigma0 = self.sigma0();
        let sigma_lo = 0.5 * (sigma0 + self.sigma_min);
        let sigma_hi = 0.5 * (self.sigma_max + 1.0);
        RectConstants {
            width: self.width(),
            tau0: self.tau0(),
            sigma0,
            rect: (sigma_lo, sigma_hi, self.t_min - 0.5, self.t_max + 0.5),
        }
    }

    /// Boundary grid of `boundary_samples` points, distributed over the four
    /// edges proportionally to their length. Degenerate rectangles collapse
    /// to the points they are.
    pub fn boundary_grid(&self) -> Vec<(f64, f64)> {
        let w = self.sigma_max - self.sigma_min;
        let h = self.t_max - self.t_min;
        let perimeter = 2.0 * (w + h);
        if perimeter == 0.0 {
            return vec![(self.sigma_min, self.t_min)];
        }
        let m = self.boundary_samples;
        let mut pts = Vec::with_capacity(m);
        for i in 0..m {
            let d = perimeter * i as f64 / m as f64;
            let p = if d < w {
                (self.sigma_min + d, self.t_min)
            } else if d < w + h {
                (self.sigma_max, self.t_min + (d - w))
            } else if d < 2.0 * w + h {
                (self.sigma_max - (d - w - h), self.t_max)
            } else {
                (self.sigma_min, self.t_max - (d - 2.0 * w - h))
            };
            pts.push(p);
        }
        pts
    }

    /// Uniform nx-by-ny grid covering the closed rectangle.
    pub fn uniform_grid(&self, nx: usize, ny: usize) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(nx * ny);
        for i in 0..nx {
            let fx = if nx == 1 { 0.5 } else { i as f64 / (nx - 1) as f64 };
            let sigma = self.sigma_min + fx * (self.sigma_max - self.sigma_min);
            for j in 0..ny {
                let fy = if ny == 1 { 0.5 } else { j as f64 / (ny - 1) as f64 };
                let t = self.t_min + fy * (self.t_max - self.t_min);
                pts.push((sigma, t));
            }
        }
        pts
    }

    /// Boundary plus a coarse interior grid: the evaluation set for sup norms.
    pub fn sup_grid(&self, interior: usize) -> Vec<(f64, f64)> {
        let mut pts = self.boundary_grid();
        pts.extend(self.uniform_grid(interior, interior));
        pts
    }
}

/// The admissible-shift set inside `window`: the window minus an open
/// interval of half-width `delta` around gamma - tau0 for every zero with
/// beta > sigma0 (conjugates included), minus the window around -tau0.
pub fn exclusion_set(
    catalog: &ZeroCatalog,
    sigma0: f64,
    tau0: f64,
    delta: f64,
    window: (f64, f64),
) -> Result<ShiftIntervalSet> {
    if delta <= 0.0 {
        return Err(EtaError::Domain(format!("delta must be positive, got {delta}")));
    }
    let (lo, hi) = window;
    let need = (hi + tau0).abs().max((lo + tau0).abs()) + delta;
    catalog.require_height(need)?;

    let mut cuts = vec![(-tau0 - delta, -tau0 + delta)];
    for g in catalog.qualifying_ordinates(sigma0, lo + tau0 - delta, hi + tau0 + delta) {
        cuts.push((g - tau0 - delta, g - tau0 + delta));
    }
    Ok(ShiftIntervalSet::interval(lo, hi).subtract(&ShiftIntervalSet::from_intervals(cuts)))
}

/// Admissible shifts for the rectangle itself: delta = width + 1 on [T, 2T].
pub fn valid_shift_set(catalog: &ZeroCatalog, rect: &CompactRectSpec, t_window: f64) -> Result<ShiftIntervalSet> {
    exclusion_set(
        catalog,
        rect.sigma0(),
        rect.tau0(),
        rect.width() + 1.0,
        (t_window, 2.0 * t_window),
    )
}

/// The thinner admissible set used by smoothing arguments:
/// delta = width + y_schedule + 4 on [T, 2T].
pub fn script_x_set(
    catalog: &ZeroCatalog,
    rect: &CompactRectSpec,
    t_window: f64,
    y_schedule: f64,
) -> Result<ShiftIntervalSet> {
    exclusion_set(
        catalog,
        rect.sigma0(),
        rect.tau0(),
        rect.width() + y_schedule + 4.0,
        (t_window, 2.0 * t_window),
    )
}

/// Truncation schedule (log T)^{8/(sigma0 - 1/2)}. Exposed as a pure
/// calculator: at desk scale it is astronomically large and serves only to
/// show how fast the asymptotic regime recedes.
pub fn truncation_schedule(t_window: f64, sigma0: f64) -> f64 {
    t_window.ln().powf(8.0 / (sigma0 - 0.5))
}

/// The excluded ordinate set of the truncated-sum error analysis on
/// [T/2, 5T/2]: a strip of width y + 3 around each qualifying zero plus the
/// two edge strips, clipped to the window.
pub fn ell_set(catalog: &ZeroCatalog, sigma0: f64, y: f64, t_window: f64) -> Result<ShiftIntervalSet> {
    if t_window < 2.0 * (y + 3.0) {
        return Err(EtaError::Domain(format!(
            "window too small: T = {t_window} < 2(y+3) = {}",
            2.0 * (y + 3.0)
        )));
    }
    let lo = 0.5 * t_window;
    let hi = 2.5 * t_window;
    catalog.require_height(hi)?;

    let beta_min = 0.5 * (0.5 + sigma0);
    let half = y + 3.0;
    let mut parts = vec![(lo, lo + half), (hi - half, hi)];
    for g in catalog.qualifying_ordinates(beta_min, lo, hi) {
        parts.push((g - half, g + half));
    }
    Ok(ShiftIntervalSet::from_intervals(parts).intersect(&ShiftIntervalSet::interval(lo, hi)))
}

/// Point query: is `tau` an admissible shift for the rectangle?
pub fn is_valid_shift(catalog: &ZeroCatalog, rect: &CompactRectSpec, tau: f64) -> Result<bool> {
    let delta = rect.width() + 1.0;
    let tau0 = rect.tau0();
    catalog.require_height((tau + tau0).abs() + delta)?;
    if (tau + tau0).abs() < delta {
        return Ok(false);
    }
    let sigma0 = rect.sigma0();
    let target = tau + tau0;
    // Only ordinates within delta of |target| can matter.
    let idx = catalog
        .records
        .partition_point(|r| r.gamma < target.abs() - delta);
    for r in &catalog.records[idx..] {
        if r.gamma > target.abs() + delta {
            break;
        }
        if r.beta > sigma0 && (r.gamma - target.abs()).abs() < delta {
            return Ok(false);
        }
    }
    Ok(true)
}
