//! Window corroboration: brute-force checking of classifier output on a
//! finite window [-W, W]^d.
//!
//! A finite window can never *prove* a classification: the conditions
//! quantify over all of Z^d and any finite pattern extends to a compliant
//! net. What a window can do is refute:
//!
//! * a true verdict ships certificates (thresholds, per-piece bounds,
//!   monotonicity onsets); every certified claim is checked against direct
//!   evaluation at every window point, and any failure is returned as a
//!   counterexample refuting the verdict;
//! * a false verdict ships a witness; when the violated clause is value
//!   persistence along a ray (the window-replayable conditions), the ray is
//!   replayed inside the window and a confirming counterexample to the
//!   *condition* is returned.
//!
//! Bound and limit clauses of the {{.}} coordinates are not window-decidable;
//! when they are all that stands, the result is corroborated with
//! `window_decidable = false`.

use num_bigint::BigInt;

use crate::classify::{classify, Certificate, Monotone, NetKind, PieceBound, Threshold, Witness};
use crate::compiled::{CRule, CVal, CompiledNet, WindowTable, MAX_COMPACT};
use crate::error::Result;
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::{FieldShape, NetSpec, ValueRule};
use crate::region::Window;

/// Outcome of window corroboration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Corroboration {
    /// A window point (or slice representative) contradicting a certified
    /// claim of a true verdict, or confirming the witnessed violation of a
    /// false one.
    Counterexample {
        point: MultiIndex,
        explanation: String,
    },
    /// No contradiction found. `window_decidable` is true only when every
    /// checked condition is a threshold condition whose onset lies inside
    /// the window; limit clauses always leave it false.
    Corroborated { window_decidable: bool },
}

impl Corroboration {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Corroboration::Counterexample { .. })
    }
}

impl std::fmt::Display for Corroboration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Corroboration::Counterexample { point, explanation } => {
                write!(f, "counterexample at {point}: {explanation}")
            }
            Corroboration::Corroborated {
                window_decidable: true,
            } => write!(f, "corroborated"),
            Corroboration::Corroborated {
                window_decidable: false,
            } => {
                write!(
                    f,
                    "corroborated (window-insufficient: limit clauses not decidable)"
                )
            }
        }
    }
}

/// Value abstraction letting the checks run on compact i128 cells when the
/// net compiles and on exact BigInt cells otherwise. Both paths compute
/// identical results.
trait Val: Clone + Ord {
    fn is_neg_inf(&self) -> bool;
    fn is_pos_inf(&self) -> bool;
    fn from_ext(v: &ExtInt) -> Option<Self>;
    fn to_ext(&self) -> ExtInt;
    /// Absorbing addition; opposite infinities never meet in these checks.
    fn add(&self, other: &Self) -> Self;
}

impl Val for CVal {
    fn is_neg_inf(&self) -> bool {
        *self == CVal::NegInf
    }
    fn is_pos_inf(&self) -> bool {
        *self == CVal::PosInf
    }
    fn from_ext(v: &ExtInt) -> Option<Self> {
        match v {
            ExtInt::NegInf => Some(CVal::NegInf),
            ExtInt::PosInf => Some(CVal::PosInf),
            ExtInt::Fin(b) => i128::try_from(b).ok().map(CVal::Fin),
        }
    }
    fn to_ext(&self) -> ExtInt {
        (*self).to_ext()
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (CVal::Fin(a), CVal::Fin(b)) => CVal::Fin(a + b),
            (CVal::NegInf, x) | (x, CVal::NegInf) => {
                debug_assert!(!x.is_pos_inf());
                CVal::NegInf
            }
            _ => CVal::PosInf,
        }
    }
}

impl Val for ExtInt {
    fn is_neg_inf(&self) -> bool {
        *self == ExtInt::NegInf
    }
    fn is_pos_inf(&self) -> bool {
        *self == ExtInt::PosInf
    }
    fn from_ext(v: &ExtInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_ext(&self) -> ExtInt {
        self.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other)
            .expect("opposite infinities cannot meet here")
    }
}

/// Runs the classifier and corroborates its output on the window [-w, w]^d.
pub fn window_corroborate(
    net: &NetSpec,
    shape: &FieldShape,
    kind: NetKind,
    w: i64,
) -> Result<Corroboration> {
    assert!(w >= 1, "window radius must be >= 1");
    let verdict = classify(net, shape, kind)?;
    let window = Window::radius(net.dim(), w);

    match (&verdict.certificate, &verdict.witness) {
        (Some(cert), _) => corroborate_certificate(net, shape, cert, &window),
        (_, Some(witness)) => Ok(replay_witness(net, witness, &window, kind)?),
        _ => unreachable!("verdict carries a certificate or a witness"),
    }
}

fn corroborate_certificate(
    net: &NetSpec,
    shape: &FieldShape,
    cert: &Certificate,
    window: &Window,
) -> Result<Corroboration> {
    let compiled = CompiledNet::try_compile(net).filter(|_| {
        window
            .lo
            .iter()
            .chain(&window.hi)
            .all(|c| c.abs() <= MAX_COMPACT)
    });
    let table = WindowTable::build(net, window)?;

    let counterexample = match (&table, &compiled) {
        (WindowTable::Fast(cells), Some(cnet)) => {
            match certificate_checks::<CVal>(cells, window, cert, net, &|piece, l, tail| {
                compact_tail_part(cnet, piece, l, tail)
            }) {
                Ok(ce) => ce,
                // certificate values exceeded the compact range: redo exactly
                Err(()) => {
                    let cells = exact_cells(net, window)?;
                    certificate_checks::<ExtInt>(&cells, window, cert, net, &|piece, l, tail| {
                        exact_tail_part(net, piece, l, tail)
                    })
                    .expect("exact path is total")
                }
            }
        }
        _ => {
            let cells = exact_cells(net, window)?;
            certificate_checks::<ExtInt>(&cells, window, cert, net, &|piece, l, tail| {
                exact_tail_part(net, piece, l, tail)
            })
            .expect("exact path is total")
        }
    };

    if let Some((point, explanation)) = counterexample {
        return Ok(Corroboration::Counterexample { point, explanation });
    }

    let wbig = BigInt::from(window.hi[0]);
    let decidable = shape.r() == 0
        && cert
            .thresholds
            .iter()
            .all(|t| t.from >= -&wbig && t.from <= wbig);
    Ok(Corroboration::Corroborated {
        window_decidable: decidable,
    })
}

fn exact_cells(net: &NetSpec, window: &Window) -> Result<Vec<ExtInt>> {
    window
        .iter()
        .map(|p| net.eval(&MultiIndex::from_i64(&p)))
        .collect()
}

/// Tail contribution `sum_{m > l} c_m T_m + offset` of an affine piece.
fn compact_tail_part(cnet: &CompiledNet, piece: usize, l: usize, tail: &[i64]) -> CVal {
    match &cnet.pieces[piece].rule {
        CRule::Const(_) => unreachable!("tail parts are only taken on affine pieces"),
        CRule::Affine { coeffs, offset } => {
            let mut acc = *offset as i128;
            for (m, t) in tail.iter().enumerate() {
                acc += (coeffs[l + m] as i128) * (*t as i128);
            }
            CVal::Fin(acc)
        }
    }
}

fn exact_tail_part(net: &NetSpec, piece: usize, l: usize, tail: &[i64]) -> ExtInt {
    match &net.pieces()[piece].1 {
        ValueRule::Const(_) => unreachable!("tail parts are only taken on affine pieces"),
        ValueRule::Affine { coeffs, offset } => {
            let mut acc = offset.clone();
            for (m, t) in tail.iter().enumerate() {
                acc += &coeffs[l + m] * BigInt::from(*t);
            }
            ExtInt::Fin(acc)
        }
    }
}

/// All certificate checks over one window value table. `Err(())` signals the
/// compact value type could not hold a certificate constant.
fn certificate_checks<T: Val>(
    cells: &[T],
    window: &Window,
    cert: &Certificate,
    net: &NetSpec,
    tail_part: &dyn Fn(usize, usize, &[i64]) -> T,
) -> std::result::Result<Option<(MultiIndex, String)>, ()> {
    for threshold in &cert.thresholds {
        if let Some(ce) = check_threshold(cells, window, threshold, cert.kind) {
            return Ok(Some(ce));
        }
    }

    let dim = window.dim();
    let lens: Vec<usize> = (0..dim)
        .map(|m| (window.hi[m] - window.lo[m] + 1) as usize)
        .collect();

    // group per-tail bound checks by coordinate
    let curly: Vec<usize> = {
        let mut ls: Vec<usize> = cert.piece_bounds.iter().map(|b| b.coordinate).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    };
    let maximize = cert.kind == NetKind::OpenLattice;
    for &l in &curly {
        let bounds: Vec<&PieceBound> = cert
            .piece_bounds
            .iter()
            .filter(|b| b.coordinate == l)
            .collect();
        if let Some(ce) =
            check_tail_bounds(cells, window, &lens, l, &bounds, net, maximize, tail_part)?
        {
            return Ok(Some(ce));
        }
    }

    for monotone in &cert.monotone {
        if let Some(ce) = check_monotone(cells, window, &lens, monotone, maximize) {
            return Ok(Some(ce));
        }
    }
    Ok(None)
}

/// `v` as an i64, saturating to the respective extreme when out of range.
fn saturate(v: &BigInt) -> i64 {
    i64::try_from(v).unwrap_or(if v.sign() == num_bigint::Sign::Minus {
        i64::MIN
    } else {
        i64::MAX
    })
}

/// Beyond the threshold along its coordinate, every value must be the
/// certified infinity.
fn check_threshold<T: Val>(
    cells: &[T],
    window: &Window,
    threshold: &Threshold,
    kind: NetKind,
) -> Option<(MultiIndex, String)> {
    let l = threshold.coordinate;
    let mut sub = window.clone();
    if threshold.upward {
        let from = saturate(&threshold.from);
        if from > window.hi[l - 1] {
            return None;
        }
        sub.lo[l - 1] = from.max(window.lo[l - 1]);
    } else {
        let from = saturate(&threshold.from);
        if from < window.lo[l - 1] {
            return None;
        }
        sub.hi[l - 1] = from.min(window.hi[l - 1]);
    }
    // in-place odometer; offsets advance by stride deltas
    let dim = window.dim();
    let mut strides = Vec::with_capacity(dim);
    let mut stride = 1usize;
    for m in 0..dim {
        strides.push(stride);
        stride *= (window.hi[m] - window.lo[m] + 1) as usize;
    }
    let mut point = sub.lo.clone();
    let mut offset = 0usize;
    for m in 0..dim {
        offset += (sub.lo[m] - window.lo[m]) as usize * strides[m];
    }
    'cells: loop {
        let cell = &cells[offset];
        let ok = match kind {
            NetKind::OpenLattice => cell.is_neg_inf(),
            _ => cell.is_pos_inf(),
        };
        if !ok {
            return Some((
                MultiIndex::from_i64(&point),
                format!(
                    "certified threshold at coordinate {l} (from {}) contradicted: value {}",
                    threshold.from,
                    cell.to_ext()
                ),
            ));
        }
        let mut m = 0;
        loop {
            if m == dim {
                break 'cells;
            }
            point[m] += 1;
            offset += strides[m];
            if point[m] <= sub.hi[m] {
                break;
            }
            offset -= (point[m] - sub.lo[m]) as usize * strides[m];
            point[m] = sub.lo[m];
            m += 1;
        }
    }
    None
}

/// Extrema over contiguous chunks of `head_len` cells: with first-coordinate-
/// fastest offsets these are exactly the groups over the kept coordinates.
fn fold_chunks<T: Val>(cells: &[T], head_len: usize, maximize: bool) -> Vec<T> {
    cells
        .chunks(head_len)
        .map(|chunk| {
            let iter = chunk.iter();
            if maximize {
                iter.max().expect("chunks are non-empty").clone()
            } else {
                iter.min().expect("chunks are non-empty").clone()
            }
        })
        .collect()
}

/// For every tail, the brute-force window extremum over the slice with free
/// coordinates 1..=l must respect the certified per-piece bounds.
#[allow(clippy::too_many_arguments)]
fn check_tail_bounds<T: Val>(
    cells: &[T],
    window: &Window,
    lens: &[usize],
    l: usize,
    bounds: &[&PieceBound],
    net: &NetSpec,
    maximize: bool,
    tail_part: &dyn Fn(usize, usize, &[i64]) -> T,
) -> std::result::Result<Option<(MultiIndex, String)>, ()> {
    let head_len: usize = lens[..l].iter().product();
    let extrema = fold_chunks(cells, head_len, maximize);

    let piece_bounds: Vec<(usize, T)> = bounds
        .iter()
        .map(|b| T::from_ext(&b.bound).ok_or(()).map(|v| (b.piece, v)))
        .collect::<std::result::Result<_, _>>()?;

    let tail_window = Window::new(window.lo[l..].to_vec(), window.hi[l..].to_vec());
    for (tail_idx, tail) in tail_window.iter().enumerate() {
        // certified bound for this tail: fold over pieces meeting the tail
        let mut claimed: Option<T> = None;
        for (piece, head_bound) in &piece_bounds {
            let (region, rule) = &net.pieces()[*piece];
            let meets = region.intervals[l..]
                .iter()
                .zip(&tail)
                .all(|(iv, t)| iv.contains(&BigInt::from(*t)));
            if !meets {
                continue;
            }
            let candidate = match rule {
                ValueRule::Const(_) => head_bound.clone(),
                ValueRule::Affine { .. } => head_bound.add(&tail_part(*piece, l, &tail)),
            };
            claimed = Some(match claimed {
                None => candidate,
                Some(prev) => {
                    if maximize {
                        prev.max(candidate)
                    } else {
                        prev.min(candidate)
                    }
                }
            });
        }
        let claimed = claimed.expect("a valid partition meets every tail");
        let observed = &extrema[tail_idx];
        let violated = if maximize {
            observed > &claimed
        } else {
            observed < &claimed
        };
        if violated {
            let mut point = window.lo[..l].to_vec();
            point.extend_from_slice(&tail);
            return Ok(Some((
                MultiIndex::from_i64(&point),
                format!(
                    "per-tail bound at coordinate {l} contradicted: certified {}, observed {}",
                    claimed.to_ext(),
                    observed.to_ext()
                ),
            )));
        }
    }
    Ok(None)
}

/// Beyond the onset, per-tail slice extrema must move strictly toward the
/// vanishing infinity step by step (equal infinities allowed).
fn check_monotone<T: Val>(
    cells: &[T],
    window: &Window,
    lens: &[usize],
    monotone: &Monotone,
    maximize: bool,
) -> Option<(MultiIndex, String)> {
    let l = monotone.coordinate;
    let head_len: usize = lens[..l - 1].iter().product();
    let extrema = fold_chunks(cells, head_len, maximize);
    let len_l = lens[l - 1];
    let lo_l = window.lo[l - 1];
    let hi_l = window.hi[l - 1];

    let tail_window = Window::new(window.lo[l..].to_vec(), window.hi[l..].to_vec());
    for (tail_idx, tail) in tail_window.iter().enumerate() {
        let slice = |k: i64| &extrema[(k - lo_l) as usize + len_l * tail_idx];
        let onset = &monotone.from;
        if monotone.upward {
            let from = saturate(onset).max(lo_l);
            for k in from..hi_l {
                let (cur, next) = (slice(k), slice(k + 1));
                let ok = if maximize {
                    next < cur || (cur.is_neg_inf() && next.is_neg_inf())
                } else {
                    next > cur || (cur.is_pos_inf() && next.is_pos_inf())
                };
                if !ok {
                    let mut point = window.lo[..l - 1].to_vec();
                    point.push(k + 1);
                    point.extend_from_slice(&tail);
                    return Some((
                        MultiIndex::from_i64(&point),
                        format!(
                            "certified strict decay from {} along coordinate {l} contradicted \
                             between slices {k} and {}: {} then {}",
                            onset,
                            k + 1,
                            cur.to_ext(),
                            next.to_ext()
                        ),
                    ));
                }
            }
        } else {
            let from = saturate(onset).min(hi_l);
            for k in ((lo_l + 1)..=from).rev() {
                let (cur, prev) = (slice(k), slice(k - 1));
                let ok = if maximize {
                    prev < cur || (cur.is_neg_inf() && prev.is_neg_inf())
                } else {
                    prev > cur || (cur.is_pos_inf() && prev.is_pos_inf())
                };
                if !ok {
                    let mut point = window.lo[..l - 1].to_vec();
                    point.push(k - 1);
                    point.extend_from_slice(&tail);
                    return Some((
                        MultiIndex::from_i64(&point),
                        format!(
                            "certified strict growth below {} along coordinate {l} contradicted \
                             between slices {k} and {}: {} then {}",
                            onset,
                            k - 1,
                            cur.to_ext(),
                            prev.to_ext()
                        ),
                    ));
                }
            }
        }
    }
    None
}

/// Replays a window-replayable witness: walks the witness ray inside the
/// window and confirms the persisting non-infinite values. Limit-clause
/// witnesses are not window-decidable and corroborate vacuously.
fn replay_witness(
    net: &NetSpec,
    witness: &Witness,
    window: &Window,
    kind: NetKind,
) -> Result<Corroboration> {
    if !witness.condition.window_replayable() {
        return Ok(Corroboration::Corroborated {
            window_decidable: false,
        });
    }
    let (region, _) = &net.pieces()[witness.piece];

    // representative of piece ∩ window, biased to the start of the ray
    let mut start: Vec<i64> = Vec::with_capacity(net.dim());
    for m in 0..net.dim() {
        let iv = &region.intervals[m];
        let lo = iv
            .lo
            .as_ref()
            .map_or(window.lo[m], |v| saturate(v).max(window.lo[m]));
        let hi = iv
            .hi
            .as_ref()
            .map_or(window.hi[m], |v| saturate(v).min(window.hi[m]));
        if lo > hi {
            // piece does not meet the window
            return Ok(Corroboration::Corroborated {
                window_decidable: false,
            });
        }
        start.push(if witness.ray_direction[m] > 0 { lo } else { hi });
    }

    let mut point = start;
    loop {
        let idx = MultiIndex::from_i64(&point);
        let value = net.eval(&idx)?;
        let persists = match kind {
            NetKind::OpenLattice => value != ExtInt::NegInf,
            _ => value != ExtInt::PosInf,
        };
        if !persists {
            return Ok(Corroboration::Corroborated {
                window_decidable: false,
            });
        }
        let next: Vec<i64> = point
            .iter()
            .zip(&witness.ray_direction)
            .map(|(c, d)| c + d)
            .collect();
        if !window.contains(&next) {
            return Ok(Corroboration::Counterexample {
                explanation: format!(
                    "witnessed violation confirmed: value {value} persists to the window edge \
                     at {idx} ({})",
                    witness.condition
                ),
                point: idx,
            });
        }
        point = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extint::ExtInt;
    use crate::net::ValueRule;
    use crate::region::{Interval, Region};

    fn shape(n: usize, r: usize) -> FieldShape {
        FieldShape::new(n, r).unwrap()
    }

    #[test]
    fn bounded_full_witness_replays_downward() {
        // constant 0 fails bounded(i) for r = 0: values persist downward.
        let net = NetSpec::constant(1, ExtInt::zero());
        let c = window_corroborate(&net, &shape(2, 0), NetKind::Bounded, 10).unwrap();
        match c {
            Corroboration::Counterexample { point, .. } => {
                assert_eq!(point, MultiIndex::from_i64(&[-10]));
            }
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn oversized_nets_corroborate_on_the_exact_path() {
        use num_bigint::BigInt;
        let huge: BigInt = BigInt::from(crate::compiled::MAX_COMPACT) * 1000;
        let net = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(0)]),
                    ValueRule::Const(ExtInt::Fin(huge)),
                ),
                (
                    Region::new(vec![Interval::at_least(1)]),
                    ValueRule::Const(ExtInt::NegInf),
                ),
            ],
        );
        let c = window_corroborate(&net, &shape(2, 0), NetKind::OpenLattice, 5).unwrap();
        assert_eq!(
            c,
            Corroboration::Corroborated {
                window_decidable: true
            }
        );
        // same verdict for a curly shape: decay clause fails symbolically
        let c = window_corroborate(&net, &shape(2, 1), NetKind::OpenLattice, 5).unwrap();
        assert_eq!(
            c,
            Corroboration::Corroborated {
                window_decidable: false
            }
        );
    }

    #[test]
    fn true_verdict_corroborates_decidably_for_round_shape() {
        let net = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(0)]),
                    ValueRule::constant(ExtInt::zero()),
                ),
                (
                    Region::new(vec![Interval::at_least(1)]),
                    ValueRule::Const(ExtInt::NegInf),
                ),
            ],
        );
        let c = window_corroborate(&net, &shape(2, 0), NetKind::OpenLattice, 10).unwrap();
        assert_eq!(
            c,
            Corroboration::Corroborated {
                window_decidable: true
            }
        );
    }

    #[test]
    fn limit_clause_failure_is_window_insufficient() {
        let net = NetSpec::constant(1, ExtInt::zero());
        let c = window_corroborate(&net, &shape(2, 1), NetKind::OpenLattice, 10).unwrap();
        assert_eq!(
            c,
            Corroboration::Corroborated {
                window_decidable: false
            }
        );
    }

    #[test]
    fn replayable_false_witness_yields_counterexample() {
        // constant 0 fails lattice(i) for r = 0: values persist upward.
        let net = NetSpec::constant(1, ExtInt::zero());
        let c = window_corroborate(&net, &shape(2, 0), NetKind::OpenLattice, 10).unwrap();
        match c {
            Corroboration::Counterexample { point, .. } => {
                assert_eq!(point, MultiIndex::from_i64(&[10]));
            }
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn compactoid_true_verdict_corroborates() {
        let net = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(-1)]),
                    ValueRule::affine(vec![-1], 0),
                ),
                (
                    Region::new(vec![Interval::at_least(0)]),
                    ValueRule::affine(vec![1], 0),
                ),
            ],
        );
        let c = window_corroborate(&net, &shape(2, 1), NetKind::Compactoid, 12).unwrap();
        assert!(matches!(c, Corroboration::Corroborated { .. }));
    }

    #[test]
    fn doctored_certificate_is_refuted() {
        // Handcraft a wrong certificate for the O[[t]]-style lattice and make
        // sure the checker catches it.
        let net = NetSpec::new(
            1,
            vec![
                (
                    Region::new(vec![Interval::at_most(3)]),
                    ValueRule::constant(ExtInt::zero()),
                ),
                (
                    Region::new(vec![Interval::at_least(4)]),
                    ValueRule::Const(ExtInt::NegInf),
                ),
            ],
        );
        let cert = Certificate {
            kind: NetKind::OpenLattice,
            // wrong: claims -inf already from 0, but values are 0 up to 3
            thresholds: vec![Threshold {
                coordinate: 1,
                from: BigInt::from(0),
                upward: true,
            }],
            piece_bounds: vec![],
            monotone: vec![],
        };
        let window = Window::radius(1, 10);
        let result = corroborate_certificate(&net, &shape(2, 0), &cert, &window).unwrap();
        assert!(result.is_counterexample());
    }
}
