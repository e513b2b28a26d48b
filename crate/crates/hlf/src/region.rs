//! Product boxes in Z^d and exact partition checking.
//!
//! A net is presented by finitely many boxes, each a product of integer
//! intervals with optionally unbounded ends. Partition checking works on the
//! grid of elementary cells cut out by all interval endpoints: a cell never
//! straddles an endpoint, so box membership is constant on it and one
//! representative point per cell decides coverage exactly.

use num_bigint::BigInt;
use num_traits::One;

use crate::index::MultiIndex;

/// An integer interval with optionally unbounded ends. `None` means the
/// interval continues to the respective infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Option<BigInt>,
    pub hi: Option<BigInt>,
}

impl Interval {
    pub fn all() -> Self {
        Interval { lo: None, hi: None }
    }

    pub fn bounded<T: Into<BigInt>>(lo: T, hi: T) -> Self {
        Interval {
            lo: Some(lo.into()),
            hi: Some(hi.into()),
        }
    }

    pub fn at_least<T: Into<BigInt>>(lo: T) -> Self {
        Interval {
            lo: Some(lo.into()),
            hi: None,
        }
    }

    pub fn at_most<T: Into<BigInt>>(hi: T) -> Self {
        Interval {
            lo: None,
            hi: Some(hi.into()),
        }
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => lo > hi,
            _ => false,
        }
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        if let Some(lo) = &self.lo {
            if v < lo {
                return false;
            }
        }
        if let Some(hi) = &self.hi {
            if v > hi {
                return false;
            }
        }
        true
    }
}

/// A product box in Z^d, one interval per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub intervals: Vec<Interval>,
}

impl Region {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Region { intervals }
    }

    pub fn all(dim: usize) -> Self {
        Region {
            intervals: vec![Interval::all(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.iter().any(Interval::is_empty)
    }

    pub fn contains(&self, a: &MultiIndex) -> bool {
        debug_assert_eq!(self.dim(), a.dim());
        self.intervals
            .iter()
            .zip(a.coords())
            .all(|(iv, c)| iv.contains(c))
    }

    /// 1-based interval access.
    pub fn interval(&self, l: usize) -> &Interval {
        &self.intervals[l - 1]
    }

    /// The reflection -R through the origin.
    pub fn negated(&self) -> Region {
        Region {
            intervals: self
                .intervals
                .iter()
                .map(|iv| Interval {
                    lo: iv.hi.as_ref().map(|h| -h),
                    hi: iv.lo.as_ref().map(|l| -l),
                })
                .collect(),
        }
    }
}

/// A defect found while checking that boxes tile Z^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionDefect {
    /// No region covers the witness point.
    Gap { witness: MultiIndex },
    /// Two regions both cover the witness point.
    Overlap {
        witness: MultiIndex,
        pieces: (usize, usize),
    },
    /// A region is structurally unusable (wrong dimension or empty interval).
    Malformed { piece: usize, reason: String },
}

impl std::fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PartitionDefect::Gap { witness } => write!(f, "gap at {witness}"),
            PartitionDefect::Overlap {
                witness,
                pieces: (a, b),
            } => {
                write!(f, "overlap of pieces {a} and {b} at {witness}")
            }
            PartitionDefect::Malformed { piece, reason } => {
                write!(f, "piece {piece} malformed: {reason}")
            }
        }
    }
}

/// Per-coordinate cell representatives for the elementary grid induced by
/// the interval endpoints of `regions`.
///
/// Cuts at `c` separate `c-1` from `c`; a box endpoint `lo` contributes a cut
/// at `lo` and an endpoint `hi` a cut at `hi + 1`. Representatives are chosen
/// inside each elementary cell: the cut value for cells with a finite lower
/// end, `first_cut - 1` for the unbounded-below cell.
fn cell_representatives(regions: &[Region], dim: usize) -> Vec<Vec<BigInt>> {
    let mut reps = Vec::with_capacity(dim);
    for m in 0..dim {
        let mut cuts: Vec<BigInt> = Vec::new();
        for r in regions {
            let iv = &r.intervals[m];
            if let Some(lo) = &iv.lo {
                cuts.push(lo.clone());
            }
            if let Some(hi) = &iv.hi {
                cuts.push(hi + BigInt::one());
            }
        }
        cuts.sort();
        cuts.dedup();
        let mut r = Vec::with_capacity(cuts.len() + 1);
        if let Some(first) = cuts.first() {
            r.push(first - BigInt::one());
        } else {
            r.push(BigInt::from(0));
        }
        r.extend(cuts);
        reps.push(r);
    }
    reps
}

/// Exhaustively checks that the non-empty `regions` tile Z^d, returning every
/// class of defect found with a concrete witness point.
pub fn check_partition(regions: &[Region], dim: usize) -> Vec<PartitionDefect> {
    let mut defects = Vec::new();
    for (i, r) in regions.iter().enumerate() {
        if r.dim() != dim {
            defects.push(PartitionDefect::Malformed {
                piece: i,
                reason: format!("box has {} intervals, expected {dim}", r.dim()),
            });
        } else if r.is_empty() {
            defects.push(PartitionDefect::Malformed {
                piece: i,
                reason: "empty interval (lo > hi)".into(),
            });
        }
    }
    if !defects.is_empty() {
        return defects;
    }

    let reps = cell_representatives(regions, dim);
    let mut idx = vec![0usize; dim];
    let mut point = vec![BigInt::from(0); dim];
    loop {
        for m in 0..dim {
            point[m] = reps[m][idx[m]].clone();
        }
        let witness = || MultiIndex::new(point.clone());
        let mut covering = None;
        for (i, r) in regions.iter().enumerate() {
            if r.intervals.iter().zip(&point).all(|(iv, c)| iv.contains(c)) {
                match covering {
                    None => covering = Some(i),
                    Some(j) => {
                        defects.push(PartitionDefect::Overlap {
                            witness: witness(),
                            pieces: (j, i),
                        });
                        break;
                    }
                }
            }
        }
        if covering.is_none() {
            defects.push(PartitionDefect::Gap { witness: witness() });
        }

        // odometer over cells
        let mut m = 0;
        loop {
            if m == dim {
                return defects;
            }
            idx[m] += 1;
            if idx[m] < reps[m].len() {
                break;
            }
            idx[m] = 0;
            m += 1;
        }
    }
}

/// A finite box used for exhaustive window enumeration. Bounds are machine
/// integers: windows are walked point by point, so anything larger could not
/// be enumerated anyway. All value arithmetic on window points stays exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len());
        assert!(
            lo.iter().zip(&hi).all(|(l, h)| l <= h),
            "window must be non-empty"
        );
        Window { lo, hi }
    }

    /// The centered cube [-w, w]^d.
    pub fn radius(dim: usize, w: i64) -> Self {
        assert!(w >= 0);
        Window {
            lo: vec![-w; dim],
            hi: vec![w; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn len(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| usize::try_from(h - l + 1).expect("window side fits usize"))
            .product()
    }

    /// Windows are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(c, (l, h))| l <= c && c <= h)
    }

    /// Row-major cell index of a window point, first coordinate fastest.
    pub fn offset(&self, point: &[i64]) -> usize {
        debug_assert!(self.contains(point));
        let mut off = 0usize;
        let mut stride = 1usize;
        for m in 0..self.dim() {
            off += usize::try_from(point[m] - self.lo[m]).unwrap() * stride;
            stride *= usize::try_from(self.hi[m] - self.lo[m] + 1).unwrap();
        }
        off
    }

    /// Iterate all points, first coordinate fastest (matching [`Self::offset`]).
    pub fn iter(&self) -> WindowIter<'_> {
        WindowIter {
            window: self,
            point: self.lo.clone(),
            done: false,
        }
    }
}

pub struct WindowIter<'a> {
    window: &'a Window,
    point: Vec<i64>,
    done: bool,
}

impl Iterator for WindowIter<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let item = self.point.clone();
        let mut m = 0;
        loop {
            if m == self.window.dim() {
                self.done = true;
                break;
            }
            self.point[m] += 1;
            if self.point[m] <= self.window.hi[m] {
                break;
            }
            self.point[m] = self.window.lo[m];
            m += 1;
        }
        Some(item)
    }
}
