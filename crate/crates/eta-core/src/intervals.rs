//! Finite unions of disjoint real intervals with exact measure arithmetic.
//!
//! Exclusion intervals are treated as open and set differences produce closed
//! remainders; measure is endpoint-insensitive, so the distinction never
//! shows up in any number this crate reports.

use serde::{Deserialize, Serialize};

/// A sorted union of pairwise-disjoint intervals (lo, hi) with lo < hi.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ShiftIntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl ShiftIntervalSet {
    pub fn empty() -> Self {
        ShiftIntervalSet { intervals: Vec::new() }
    }

    /// Single interval [lo, hi]; degenerate inputs give the empty set.
    pub fn interval(lo: f64, hi: f64) -> Self {
        if lo < hi {
            ShiftIntervalSet { intervals: vec![(lo, hi)] }
        } else {
            Self::empty()
        }
    }

    /// Normalize an arbitrary interval list: drop degenerates, sort, merge overlaps.
    pub fn from_intervals(mut raw: Vec<(f64, f64)>) -> Self {
        raw.retain(|(lo, hi)| lo < hi);
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        ShiftIntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn num_intervals(&self) -> usize {
        self.intervals.len()
    }

    /// Total length.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        // Binary search on the start points, then check the candidate.
        let idx = self.intervals.partition_point(|&(lo, _)| lo <= x);
        idx > 0 && x <= self.intervals[idx - 1].1
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        Self::from_intervals(all)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a_lo, a_hi) = self.intervals[i];
            let (b_lo, b_hi) = other.intervals[j];
            let lo = a_lo.max(b_lo);
            let hi = a_hi.min(b_hi);
            if lo < hi {
                out.push((lo, hi));
            }
            if a_hi <= b_hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        ShiftIntervalSet { intervals: out }
    }

    /// Set difference self \ other.
    pub fn subtract(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for &(lo, hi) in &self.intervals {
            let mut cursor = lo;
            for &(c_lo, c_hi) in &other.intervals {
                if c_hi <= cursor {
                    continue;
                }
                if c_lo >= hi {
                    break;
                }
                if c_lo > cursor {
                    out.push((cursor, c_lo.min(hi)));
                }
                cursor = cursor.max(c_hi);
                if cursor >= hi {
                    break;
                }
            }
            if cursor < hi {
                out.push((cursor, hi));
            }
        }
        ShiftIntervalSet { intervals: out }
    }

    /// Serialize as CSV rows `lo,hi` (15 significant digits).
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for &(lo, hi) in &self.intervals {
            s.push_str(&format!("{:.14e},{:.14e}\n", lo, hi));
        }
        s
    }
}
