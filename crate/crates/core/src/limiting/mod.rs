//! Long-time behaviour of the position distribution.
//!
//! `p_t` oscillates forever, but its Cesàro average `p̄_T` converges to a
//! limiting distribution `π`. Only eigenvalue coincidences between different
//! momenta leave a trace in `π`; without them `π` is uniform. Coincidences
//! within a family happen for even `N` with integer `α` and for odd `N` with
//! half-integer `α`.
//!
//! Three independent routes to `π` are provided and cross-checked:
//! [`limiting_distribution_closed_form`] (and its `α = 0` special case
//! [`qwc_limiting_distribution`]), the eigenspace sum
//! [`limiting_distribution_general`], and the direct time average
//! [`empirical_average_distribution`].

mod closed_form;
mod degeneracy;
mod distribution;
mod general;
mod shape;

pub use closed_form::{limiting_distribution_closed_form, qwc_limiting_distribution};
pub use degeneracy::{
    degeneracy_report, degeneracy_report_from, eigenvalue_coincidences, family_sign,
    is_degenerate_regime, is_self_paired, AlphaClass, Coincidence, DegeneracyReport,
    DegeneratePair, IndexRelation, ALPHA_CLASS_TOL, DEGENERACY_TOL,
};
pub use distribution::{Distribution, DistributionKind, Provenance};
pub use general::{empirical_average_distribution, limiting_distribution_general};
pub use shape::{classify_extrema, expected_extremum_shape, ExtremumShape};
