//! Minimum skyline point and minimum exclusive point.
//!
//! A grid point `q` is dominated by `p` when `q.x <= p.x` and `q.y <= p.y`. The
//! primary skyline of a multiset is the set of grid points dominated by exactly
//! one of its points. Inputs are sorted by `x`, non-increasing.

use crate::opcount::{self, Counter};
use thiserror::Error;

pub const INF: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: u64,
    pub y: u64,
}

impl Point2 {
    pub fn new(x: u64, y: u64) -> Point2 {
        Point2 { x, y }
    }

    pub fn dominated_by(&self, p: &Point2) -> bool {
        self.x <= p.x && self.y <= p.y
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkylineError {
    #[error("points not sorted by x (non-increasing) at index {0}")]
    UnsortedInput(usize),
}

/// Grid points `[x_lo, x_hi] x [y_lo, y_hi]` that all qualify, found while
/// scanning one gap between consecutive distinct x values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub x_lo: u64,
    pub x_hi: u64,
    pub y_lo: u64,
    pub y_hi: u64,
    /// index of the input point holding `y_hi`
    pub dominator: usize,
}

impl Interval {
    pub fn min_sum(&self) -> u128 {
        self.x_lo as u128 + self.y_lo as u128
    }

    pub fn max_sum(&self) -> u128 {
        self.x_hi as u128 + self.y_hi as u128
    }

    /// Smallest achievable sum that is at least `floor`.
    pub fn min_sum_at_least(&self, floor: u128) -> Option<u128> {
        let s = self.min_sum().max(floor);
        (s <= self.max_sum()).then_some(s)
    }

    /// Inclusive x range of the points in the box on the diagonal `x + y = sum`.
    pub fn diagonal(&self, sum: u128) -> Option<(u64, u64)> {
        let lo = (self.x_lo as u128).max(sum.saturating_sub(self.y_hi as u128));
        let hi = (self.x_hi as u128).min(sum.checked_sub(self.y_lo as u128)?);
        (lo <= hi).then_some((lo as u64, hi as u64))
    }
}

fn check_sorted(points: &[Point2]) -> Result<(), SkylineError> {
    for i in 1..points.len() {
        if points[i].x > points[i - 1].x {
            return Err(SkylineError::UnsortedInput(i));
        }
    }
    Ok(())
}

/// All nonempty boxes of the primary skyline, from the largest x downwards.
pub fn skyline_intervals(points: &[Point2]) -> Result<Vec<Interval>, SkylineError> {
    check_sorted(points)?;
    let mut out = Vec::new();
    // two largest y values seen so far, -1 when absent
    let mut ymax: i128 = -1;
    let mut y2: i128 = -1;
    let mut dom = 0usize;
    let mut i = 0;
    while i < points.len() {
        let g = points[i].x;
        while i < points.len() && points[i].x == g {
            opcount::bump(Counter::SkylineStep);
            let y = points[i].y as i128;
            if y > ymax {
                y2 = ymax;
                ymax = y;
                dom = i;
            } else if y > y2 {
                y2 = y;
            }
            i += 1;
        }
        let x_lo = if i < points.len() { points[i].x + 1 } else { 0 };
        if y2 < ymax {
            out.push(Interval { x_lo, x_hi: g, y_lo: (y2 + 1) as u64, y_hi: ymax as u64, dominator: dom });
        }
    }
    Ok(out)
}

/// The primary-skyline point minimizing `x + y`; the largest x among ties.
pub fn min_skyline_point(points: &[Point2]) -> Result<Option<Point2>, SkylineError> {
    let mut best: Option<(u128, Point2)> = None;
    for iv in skyline_intervals(points)? {
        let s = iv.min_sum();
        if best.is_none_or(|(b, _)| s < b) {
            best = Some((s, Point2::new(iv.x_lo, iv.y_lo)));
        }
    }
    Ok(best.map(|(_, p)| p))
}

/// Smallest sum `>= floor` reached by the primary skyline, with every box attaining it.
pub fn min_skyline_sum_at_least(points: &[Point2], floor: u128) -> Result<Option<(u128, Vec<Interval>)>, SkylineError> {
    Ok(min_bounded(skyline_intervals(points)?, floor))
}

fn min_bounded(ivs: Vec<Interval>, floor: u128) -> Option<(u128, Vec<Interval>)> {
    let best = ivs.iter().filter_map(|iv| iv.min_sum_at_least(floor)).min()?;
    let hits = ivs.into_iter().filter(|iv| iv.min_sum_at_least(floor) == Some(best)).collect();
    Some((best, hits))
}

/// Boxes of grid points dominated by some point of `p1` and by none of `p2`.
/// `dominator` indexes `p1`.
pub fn exclusive_intervals(p1: &[Point2], p2: &[Point2]) -> Result<Vec<Interval>, SkylineError> {
    check_sorted(p1)?;
    check_sorted(p2)?;
    let mut out = Vec::new();
    let (mut y1, mut y2): (i128, i128) = (-1, -1);
    let mut dom = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < p1.len() || j < p2.len() {
        let g = match (p1.get(i), p2.get(j)) {
            (Some(a), Some(b)) => a.x.max(b.x),
            (Some(a), None) => a.x,
            (None, Some(b)) => b.x,
            (None, None) => unreachable!(),
        };
        while i < p1.len() && p1[i].x == g {
            opcount::bump(Counter::ExclusiveStep);
            if (p1[i].y as i128) > y1 {
                y1 = p1[i].y as i128;
                dom = i;
            }
            i += 1;
        }
        while j < p2.len() && p2[j].x == g {
            opcount::bump(Counter::ExclusiveStep);
            y2 = y2.max(p2[j].y as i128);
            j += 1;
        }
        let next = match (p1.get(i), p2.get(j)) {
            (Some(a), Some(b)) => Some(a.x.max(b.x)),
            (Some(a), None) => Some(a.x),
            (None, Some(b)) => Some(b.x),
            (None, None) => None,
        };
        let x_lo = next.map_or(0, |x| x + 1);
        if y1 > y2 {
            out.push(Interval { x_lo, x_hi: g, y_lo: (y2 + 1) as u64, y_hi: y1 as u64, dominator: dom });
        }
    }
    Ok(out)
}

/// Point dominated by a point of `p1` and by no point of `p2`, minimizing `x + y`.
pub fn min_exclusive_point(p1: &[Point2], p2: &[Point2]) -> Result<Option<Point2>, SkylineError> {
    let mut best: Option<(u128, Point2)> = None;
    for iv in exclusive_intervals(p1, p2)? {
        let s = iv.min_sum();
        if best.is_none_or(|(b, _)| s < b) {
            best = Some((s, Point2::new(iv.x_lo, iv.y_lo)));
        }
    }
    Ok(best.map(|(_, p)| p))
}

pub fn min_exclusive_sum_at_least(p1: &[Point2], p2: &[Point2], floor: u128) -> Result<Option<(u128, Vec<Interval>)>, SkylineError> {
    Ok(min_bounded(exclusive_intervals(p1, p2)?, floor))
}

/// Sorts by x, non-increasing.
pub fn sort_points(points: &mut [Point2]) {
    points.sort_by(|a, b| b.x.cmp(&a.x).then(b.y.cmp(&a.y)));
}
