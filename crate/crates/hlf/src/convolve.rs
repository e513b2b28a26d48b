//! Min-plus convolution of two nets over a window.
//!
//! The product of two basic bounded submodules lies in the submodule whose
//! net is the min-plus convolution `(N1 * N2)(alpha) = inf over beta + gamma
//! = alpha of N1(beta) + N2(gamma)`. The convolution of piecewise-affine
//! nets need not be piecewise-affine-on-boxes again, so the result is
//! reported as a table over a finite window.
//!
//! Every entry is exact: for each alpha the infimum is minimized in closed
//! form per piece pair over the precise feasible box `P ∩ (alpha - Q)`, so
//! no truncation bound enters (an unbounded descent direction yields exactly
//! -inf). This subsumes any "sufficiently large enclosing box": for bounded
//! inputs the feasible boxes are bounded below in the descent directions and
//! the reported minimum is the true infimum.

use num_bigint::BigInt;

use crate::compiled::{CRule, CVal, CompiledNet, MAX_COMPACT};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::net::{NetSpec, ValueRule};
use crate::region::Window;

/// Exact table of extended integers over a window.
#[derive(Clone, Debug)]
pub struct ConvolutionTable {
    window: Window,
    values: Vec<ExtInt>,
}

impl ConvolutionTable {
    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn get(&self, point: &[i64]) -> &ExtInt {
        &self.values[self.window.offset(point)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<i64>, &ExtInt)> {
        self.window.iter().zip(self.values.iter())
    }
}

struct AffineView<'a> {
    coeffs: Option<&'a [BigInt]>,
    offset: BigInt,
}

fn affine_view(rule: &ValueRule) -> Option<AffineView<'_>> {
    match rule {
        ValueRule::Const(ExtInt::Fin(v)) => Some(AffineView {
            coeffs: None,
            offset: v.clone(),
        }),
        ValueRule::Affine { coeffs, offset } => Some(AffineView {
            coeffs: Some(coeffs),
            offset: offset.clone(),
        }),
        _ => None,
    }
}

/// `inf over beta + gamma = alpha of net1(beta) + net2(gamma)` for every
/// alpha in the window. Mixing a -inf region of one net with a +inf region
/// of the other inside a feasible box is an indeterminate sum and reported
/// with the offending piece pair.
///
/// When both nets fit the machine-integer range the minimization runs in
/// i128 (exact: every intermediate stays below 2^86); otherwise the BigInt
/// route computes the identical values.
pub fn min_plus_convolve(
    net1: &NetSpec,
    net2: &NetSpec,
    window: &Window,
) -> Result<ConvolutionTable> {
    if net1.dim() != net2.dim() {
        return Err(Error::DimensionMismatch {
            expected: net1.dim(),
            found: net2.dim(),
        });
    }
    if window.dim() != net1.dim() {
        return Err(Error::DimensionMismatch {
            expected: net1.dim(),
            found: window.dim(),
        });
    }
    if window
        .lo
        .iter()
        .chain(&window.hi)
        .all(|c| c.abs() <= MAX_COMPACT)
    {
        if let (Some(c1), Some(c2)) = (
            CompiledNet::try_compile(net1),
            CompiledNet::try_compile(net2),
        ) {
            return convolve_compact(&c1, &c2, window);
        }
    }
    convolve_exact(net1, net2, window)
}

fn convolve_compact(
    net1: &CompiledNet,
    net2: &CompiledNet,
    window: &Window,
) -> Result<ConvolutionTable> {
    let dim = net1.dim;
    let mut values = Vec::with_capacity(window.len());
    for point in window.iter() {
        let mut best = CVal::PosInf;
        for (i, p) in net1.pieces.iter().enumerate() {
            for (j, q) in net2.pieces.iter().enumerate() {
                // feasible box for beta: P ∩ (alpha - Q)
                let mut lo: Vec<Option<i128>> = Vec::with_capacity(dim);
                let mut hi: Vec<Option<i128>> = Vec::with_capacity(dim);
                let mut empty = false;
                for m in 0..dim {
                    let a = point[m] as i128;
                    let l = match (p.lo[m], q.hi[m]) {
                        (Some(x), Some(y)) => Some((x as i128).max(a - y as i128)),
                        (Some(x), None) => Some(x as i128),
                        (None, Some(y)) => Some(a - y as i128),
                        (None, None) => None,
                    };
                    let h = match (p.hi[m], q.lo[m]) {
                        (Some(x), Some(y)) => Some((x as i128).min(a - y as i128)),
                        (Some(x), None) => Some(x as i128),
                        (None, Some(y)) => Some(a - y as i128),
                        (None, None) => None,
                    };
                    if let (Some(l), Some(h)) = (l, h) {
                        if l > h {
                            empty = true;
                            break;
                        }
                    }
                    lo.push(l);
                    hi.push(h);
                }
                if empty {
                    continue;
                }
                match (&p.rule, &q.rule) {
                    (CRule::Const(CVal::PosInf), CRule::Const(CVal::NegInf))
                    | (CRule::Const(CVal::NegInf), CRule::Const(CVal::PosInf)) => {
                        return Err(Error::IndeterminateSum {
                            pieces: Some((i, j)),
                        });
                    }
                    (CRule::Const(CVal::PosInf), _) | (_, CRule::Const(CVal::PosInf)) => {
                        continue;
                    }
                    (CRule::Const(CVal::NegInf), _) | (_, CRule::Const(CVal::NegInf)) => {
                        best = CVal::NegInf;
                        continue;
                    }
                    _ => {}
                }
                let view = |rule: &CRule| -> (Option<Vec<i128>>, i128) {
                    match rule {
                        CRule::Const(CVal::Fin(v)) => (None, *v),
                        CRule::Affine { coeffs, offset } => (
                            Some(coeffs.iter().map(|c| *c as i128).collect()),
                            *offset as i128,
                        ),
                        CRule::Const(_) => unreachable!("infinite constants handled above"),
                    }
                };
                let (pc, pb) = view(&p.rule);
                let (qc, qb) = view(&q.rule);
                let mut acc = pb + qb;
                if let Some(e) = &qc {
                    for m in 0..dim {
                        acc += e[m] * point[m] as i128;
                    }
                }
                let mut unbounded = false;
                for m in 0..dim {
                    let mut coef = 0i128;
                    if let Some(c) = &pc {
                        coef += c[m];
                    }
                    if let Some(e) = &qc {
                        coef -= e[m];
                    }
                    if coef > 0 {
                        match lo[m] {
                            Some(l) => acc += coef * l,
                            None => {
                                unbounded = true;
                                break;
                            }
                        }
                    } else if coef < 0 {
                        match hi[m] {
                            Some(h) => acc += coef * h,
                            None => {
                                unbounded = true;
                                break;
                            }
                        }
                    }
                }
                let candidate = if unbounded {
                    CVal::NegInf
                } else {
                    CVal::Fin(acc)
                };
                if candidate < best {
                    best = candidate;
                }
            }
        }
        values.push(best.to_ext());
    }
    Ok(ConvolutionTable {
        window: window.clone(),
        values,
    })
}

fn convolve_exact(net1: &NetSpec, net2: &NetSpec, window: &Window) -> Result<ConvolutionTable> {
    let dim = net1.dim();
    let mut values = Vec::with_capacity(window.len());

    for point in window.iter() {
        let alpha: Vec<BigInt> = point.iter().map(|&c| BigInt::from(c)).collect();
        let mut best = ExtInt::PosInf;

        for (i, (p_region, p_rule)) in net1.pieces().iter().enumerate() {
            for (j, (q_region, q_rule)) in net2.pieces().iter().enumerate() {
                // feasible box for beta: P ∩ (alpha - Q), coordinatewise
                let mut lo: Vec<Option<BigInt>> = Vec::with_capacity(dim);
                let mut hi: Vec<Option<BigInt>> = Vec::with_capacity(dim);
                let mut empty = false;
                for m in 0..dim {
                    let p = &p_region.intervals[m];
                    let q = &q_region.intervals[m];
                    let l = match (&p.lo, &q.hi) {
                        (Some(a), Some(b)) => Some(std::cmp::max(a.clone(), &alpha[m] - b)),
                        (Some(a), None) => Some(a.clone()),
                        (None, Some(b)) => Some(&alpha[m] - b),
                        (None, None) => None,
                    };
                    let h = match (&p.hi, &q.lo) {
                        (Some(a), Some(b)) => Some(std::cmp::min(a.clone(), &alpha[m] - b)),
                        (Some(a), None) => Some(a.clone()),
                        (None, Some(b)) => Some(&alpha[m] - b),
                        (None, None) => None,
                    };
                    if let (Some(l), Some(h)) = (&l, &h) {
                        if l > h {
                            empty = true;
                            break;
                        }
                    }
                    lo.push(l);
                    hi.push(h);
                }
                if empty {
                    continue;
                }

                let opposed = matches!(
                    (p_rule, q_rule),
                    (
                        ValueRule::Const(ExtInt::PosInf),
                        ValueRule::Const(ExtInt::NegInf)
                    ) | (
                        ValueRule::Const(ExtInt::NegInf),
                        ValueRule::Const(ExtInt::PosInf)
                    )
                );
                if opposed {
                    return Err(Error::IndeterminateSum {
                        pieces: Some((i, j)),
                    });
                }
                if matches!(p_rule, ValueRule::Const(ExtInt::PosInf))
                    || matches!(q_rule, ValueRule::Const(ExtInt::PosInf))
                {
                    continue;
                }
                if matches!(p_rule, ValueRule::Const(ExtInt::NegInf))
                    || matches!(q_rule, ValueRule::Const(ExtInt::NegInf))
                {
                    best = ExtInt::NegInf;
                    continue;
                }

                let p = affine_view(p_rule).expect("finite rule");
                let q = affine_view(q_rule).expect("finite rule");
                // net1(beta) + net2(alpha - beta) =
                //   (c - e) · beta + e · alpha + b + f
                let mut acc = &p.offset + &q.offset;
                if let Some(e) = q.coeffs {
                    for m in 0..dim {
                        acc += &e[m] * &alpha[m];
                    }
                }
                let mut unbounded = false;
                for m in 0..dim {
                    let mut coef = BigInt::from(0);
                    if let Some(c) = p.coeffs {
                        coef += &c[m];
                    }
                    if let Some(e) = q.coeffs {
                        coef -= &e[m];
                    }
                    match coef.sign() {
                        num_bigint::Sign::NoSign => {}
                        num_bigint::Sign::Plus => match &lo[m] {
                            Some(l) => acc += coef * l,
                            None => {
                                unbounded = true;
                                break;
                            }
                        },
                        num_bigint::Sign::Minus => match &hi[m] {
                            Some(h) => acc += coef * h,
                            None => {
                                unbounded = true;
                                break;
                            }
                        },
                    }
                }
                let candidate = if unbounded {
                    ExtInt::NegInf
                } else {
                    ExtInt::Fin(acc)
                };
                if candidate < best {
                    best = candidate;
                }
            }
        }
        values.push(best);
    }
    Ok(ConvolutionTable {
        window: window.clone(),
        values,
    })
}
