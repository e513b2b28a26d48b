//! Exact arithmetic for the locally convex structure of higher local fields
//! F = Q_p{{t_1}}..{{t_r}}((t_{r+1}))..((t_{n-1})).
//!
//! Coefficients are indexed by multi-indices in Z^(n-1) under the inverse
//! lexicographic order. Nets Z^(n-1) -> Z ∪ {±inf}, finitely presented as
//! piecewise-affine rules on box tilings, cut out the open lattices, basic
//! bounded submodules and basic compactoid submodules; their classifications
//! are decided symbolically and corroborated by brute-force window checks.
//! Admissible seminorms, the gauge functional, the duality pairing, the
//! self-duality map, c-topology seminorms and pseudo-polars are all computed
//! with exact rationals and exact q-exponents: there is no floating point
//! anywhere and every test assertion is an equality.

pub mod arch;
pub mod classify;
mod compiled;
pub mod convergence;
pub mod convolve;
pub mod corroborate;
pub mod duality;
pub mod element;
pub mod error;
pub mod extint;
pub mod gen;
pub mod index;
pub mod json;
pub mod net;
pub mod region;
pub mod seminorm;
pub mod series;

pub use arch::{archimedean_seminorm, RhoSpec, RhoValue};
pub use classify::{
    classify, classify_bounded, classify_compactoid, classify_open_lattice, Certificate,
    ConditionId, NetKind, Verdict, Witness,
};
pub use convergence::convergence_check;
pub use convolve::{min_plus_convolve, ConvolutionTable};
pub use corroborate::{window_corroborate, Corroboration};
pub use duality::{
    c_seminorm, gamma, pair, polar_membership, projection, reconstruct, reconstruct_handle,
    CSeminorm, FunctionalHandle, PolarCertificate, PolarMembership,
};
pub use element::{add, mul, scalar_mul, sub, val_p, LaurentElement};
pub use error::{Error, Result};
pub use extint::{extint_add, ExtInt};
pub use index::{invlex_compare, MultiIndex, SliceSpec};
pub use net::nets_equal_on_window;
pub use net::{FieldShape, NetSpec, ValueRule};
pub use region::{Interval, PartitionDefect, Region, Window};
pub use seminorm::{
    bounded_sup_difference, gauge_eval, product_seminorm, seminorm_eval, QExp, SupDifference,
};
pub use series::{partial_sum, window_truncation, GeneratorRule, SeriesGenerator};
