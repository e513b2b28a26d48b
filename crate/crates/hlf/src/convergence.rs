//! Convergence of partial sums in an admissible seminorm, at window scale.
//!
//! For an element written as a power series, the net of partial sums s(a)
//! converges to it in every admissible seminorm. Limits over the full index
//! set are not machine-checkable; what is checkable is the window fragment:
//! the tail norms ||x_window - s(a)|| along a schedule are nonincreasing and
//! reach 0 once the schedule passes the window's support.

use crate::element::sub;
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::net::NetSpec;
use crate::region::Window;
use crate::seminorm::{seminorm_eval, QExp};
use crate::series::{partial_sum, window_truncation, SeriesGenerator};

/// Tail seminorms ||x_window - s(a)|| for each a in the schedule.
///
/// The net must be admissible for the ambient shape (values in Z ∪ {-inf};
/// open-lattice classification is the caller's precondition). The schedule
/// must be strictly increasing in the inverse lexicographic order.
pub fn convergence_check(
    g: &SeriesGenerator,
    net: &NetSpec,
    schedule: &[MultiIndex],
    window: &Window,
) -> Result<Vec<QExp>> {
    for (i, pair) in schedule.windows(2).enumerate() {
        if pair[0].dim() != pair[1].dim() || pair[0] >= pair[1] {
            return Err(Error::ScheduleNotMonotone { position: i + 1 });
        }
    }
    let x_window = window_truncation(g, window)?;
    let mut norms = Vec::with_capacity(schedule.len());
    for a in schedule {
        let s = partial_sum(g, a, window)?;
        let tail = sub(&x_window, &s)?;
        norms.push(seminorm_eval(net, &tail)?);
    }
    Ok(norms)
}
