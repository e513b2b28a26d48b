//! Machine-integer fast path for exhaustive window work.
//!
//! Window corroboration and pointwise identities evaluate nets at hundreds of
//! millions of lattice points. When every integer in a net fits comfortably
//! in i64 (bound `MAX_COMPACT`), evaluation runs in i128 with no possibility
//! of overflow: |coeff * coord| <= 2^80 and sums of a handful of such terms
//! stay far below i128 range. Nets with larger integers take the exact BigInt
//! path instead; results are identical either way.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::Result;
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::{NetSpec, ValueRule};
use crate::region::Window;

/// Magnitude bound under which the compact path is used. 2^40 keeps every
/// intermediate below 2^85.
pub(crate) const MAX_COMPACT: i64 = 1 << 40;

/// Compact extended value. Ordering matches [`ExtInt`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum CVal {
    NegInf,
    Fin(i128),
    PosInf,
}

impl CVal {
    pub fn to_ext(self) -> ExtInt {
        match self {
            CVal::NegInf => ExtInt::NegInf,
            CVal::PosInf => ExtInt::PosInf,
            CVal::Fin(v) => ExtInt::Fin(BigInt::from(v)),
        }
    }

    pub fn cmp_ext(&self, other: &ExtInt) -> Ordering {
        match (self, other) {
            (CVal::NegInf, ExtInt::NegInf) => Ordering::Equal,
            (CVal::NegInf, _) => Ordering::Less,
            (CVal::PosInf, ExtInt::PosInf) => Ordering::Equal,
            (CVal::PosInf, _) => Ordering::Greater,
            (CVal::Fin(_), ExtInt::NegInf) => Ordering::Greater,
            (CVal::Fin(_), ExtInt::PosInf) => Ordering::Less,
            (CVal::Fin(v), ExtInt::Fin(w)) => BigInt::from(*v).cmp(w),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum CRule {
    Const(CVal),
    Affine { coeffs: Vec<i64>, offset: i64 },
}

#[derive(Clone, Debug)]
pub(crate) struct CompiledPiece {
    pub lo: Vec<Option<i64>>,
    pub hi: Vec<Option<i64>>,
    pub rule: CRule,
}

impl CompiledPiece {
    pub fn value_at(&self, point: &[i64]) -> CVal {
        match &self.rule {
            CRule::Const(v) => *v,
            CRule::Affine { coeffs, offset } => {
                let mut acc = *offset as i128;
                for (c, p) in coeffs.iter().zip(point) {
                    acc += (*c as i128) * (*p as i128);
                }
                CVal::Fin(acc)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct CompiledNet {
    pub dim: usize,
    pub pieces: Vec<CompiledPiece>,
}

fn small(v: &BigInt) -> Option<i64> {
    let v = i64::try_from(v).ok()?;
    (v.abs() <= MAX_COMPACT).then_some(v)
}

fn small_bound(b: &Option<BigInt>) -> Option<Option<i64>> {
    match b {
        None => Some(None),
        Some(v) => small(v).map(Some),
    }
}

impl CompiledNet {
    /// Lossless i64 image of a net, or None when any integer exceeds
    /// `MAX_COMPACT` in magnitude.
    pub fn try_compile(net: &NetSpec) -> Option<CompiledNet> {
        let mut pieces = Vec::with_capacity(net.pieces().len());
        for (region, rule) in net.pieces() {
            let mut lo = Vec::with_capacity(net.dim());
            let mut hi = Vec::with_capacity(net.dim());
            for iv in &region.intervals {
                lo.push(small_bound(&iv.lo)?);
                hi.push(small_bound(&iv.hi)?);
            }
            let rule = match rule {
                ValueRule::Const(ExtInt::NegInf) => CRule::Const(CVal::NegInf),
                ValueRule::Const(ExtInt::PosInf) => CRule::Const(CVal::PosInf),
                ValueRule::Const(ExtInt::Fin(v)) => CRule::Const(CVal::Fin(small(v)? as i128)),
                ValueRule::Affine { coeffs, offset } => CRule::Affine {
                    coeffs: coeffs.iter().map(small).collect::<Option<Vec<_>>>()?,
                    offset: small(offset)?,
                },
            };
            pieces.push(CompiledPiece { lo, hi, rule });
        }
        Some(CompiledNet {
            dim: net.dim(),
            pieces,
        })
    }

    /// Fills the whole window piece by piece. Returns None when a cell is
    /// covered zero or two times (invalid partition) so the caller can fall
    /// back to the defect-reporting path.
    pub fn fill_window(&self, w: &Window) -> Option<Vec<CVal>> {
        debug_assert_eq!(w.dim(), self.dim);
        if w.lo.iter().chain(&w.hi).any(|c| c.abs() > MAX_COMPACT) {
            return None;
        }
        let mut cells: Vec<Option<CVal>> = vec![None; w.len()];
        for piece in &self.pieces {
            // clip the piece box to the window
            let mut lo = Vec::with_capacity(self.dim);
            let mut hi = Vec::with_capacity(self.dim);
            let mut empty = false;
            for m in 0..self.dim {
                let l = piece.lo[m].map_or(w.lo[m], |v| v.max(w.lo[m]));
                let h = piece.hi[m].map_or(w.hi[m], |v| v.min(w.hi[m]));
                if l > h {
                    empty = true;
                    break;
                }
                lo.push(l);
                hi.push(h);
            }
            if empty {
                continue;
            }
            // in-place odometer over the clipped box; the offset moves by
            // stride deltas so no per-cell allocation happens
            let mut point = lo.clone();
            let mut strides = Vec::with_capacity(self.dim);
            let mut stride = 1usize;
            for m in 0..self.dim {
                strides.push(stride);
                stride *= (w.hi[m] - w.lo[m] + 1) as usize;
            }
            let mut offset = 0usize;
            for m in 0..self.dim {
                offset += (lo[m] - w.lo[m]) as usize * strides[m];
            }
            'cells: loop {
                let cell = &mut cells[offset];
                if cell.is_some() {
                    return None;
                }
                *cell = Some(piece.value_at(&point));
                let mut m = 0;
                loop {
                    if m == self.dim {
                        break 'cells;
                    }
                    point[m] += 1;
                    offset += strides[m];
                    if point[m] <= hi[m] {
                        break;
                    }
                    offset -= (point[m] - lo[m]) as usize * strides[m];
                    point[m] = lo[m];
                    m += 1;
                }
            }
        }
        cells.into_iter().collect()
    }
}

/// Exact net values over a window, in [`Window::offset`] order. Uses the
/// compact representation whenever the net compiles; identical values are
/// produced by the BigInt fallback otherwise.
pub(crate) enum WindowTable {
    Fast(Vec<CVal>),
    Exact(Vec<ExtInt>),
}

impl WindowTable {
    pub fn build(net: &NetSpec, window: &Window) -> Result<WindowTable> {
        if let Some(compiled) = CompiledNet::try_compile(net) {
            if let Some(cells) = compiled.fill_window(window) {
                return Ok(WindowTable::Fast(cells));
            }
        }
        let mut cells = Vec::with_capacity(window.len());
        for point in window.iter() {
            cells.push(net.eval(&MultiIndex::from_i64(&point))?);
        }
        Ok(WindowTable::Exact(cells))
    }

    pub fn eq_cell(&self, idx: usize, other: &WindowTable, odx: usize) -> bool {
        match (self, other) {
            (WindowTable::Fast(a), WindowTable::Fast(b)) => a[idx] == b[odx],
            (WindowTable::Exact(a), WindowTable::Exact(b)) => a[idx] == b[odx],
            (WindowTable::Fast(a), WindowTable::Exact(b)) => {
                a[idx].cmp_ext(&b[odx]) == Ordering::Equal
            }
            (WindowTable::Exact(a), WindowTable::Fast(b)) => {
                b[odx].cmp_ext(&a[idx]) == Ordering::Equal
            }
        }
    }
}
