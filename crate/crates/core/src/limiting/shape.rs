use serde::{Deserialize, Serialize};

use crate::limiting::degeneracy::AlphaClass;
use crate::limiting::distribution::Distribution;

/// Slack when comparing neighbouring values.
const SHAPE_TOL: f64 = 1e-12;

/// Behaviour of a limiting distribution at the start node `p0` and its
/// antipode `p0 + N/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumShape {
    /// Local maxima at both `p0` and the antipode.
    TwoHills,
    /// Global maximum at `p0`, global minimum at the antipode.
    HillAndValley,
    Other,
}

/// Classifies `dist` around `p0`. Odd cycles have no antipode and always
/// classify as [`ExtremumShape::Other`].
pub fn classify_extrema(dist: &Distribution, p0: usize) -> ExtremumShape {
    let v = dist.values();
    let n = v.len();
    if n < 4 || n % 2 == 1 || p0 >= n {
        return ExtremumShape::Other;
    }
    let anti = (p0 + n / 2) % n;
    let local_max = |i: usize| {
        v[i] + SHAPE_TOL >= v[(i + 1) % n] && v[i] + SHAPE_TOL >= v[(i + n - 1) % n]
    };
    if local_max(p0) && local_max(anti) {
        return ExtremumShape::TwoHills;
    }
    let max = v.iter().cloned().fold(f64::MIN, f64::max);
    let min = v.iter().cloned().fold(f64::MAX, f64::min);
    if v[p0] + SHAPE_TOL >= max && v[anti] - SHAPE_TOL <= min {
        ExtremumShape::HillAndValley
    } else {
        ExtremumShape::Other
    }
}

/// Shape predicted for the walk started at `|0,0,p0⟩` on an even cycle with
/// integer `α`: two hills when `4 | N` and `α` is even or when `4 ∤ N` and
/// `α` is odd, hill and valley otherwise. `None` outside that regime.
pub fn expected_extremum_shape(n_nodes: usize, alpha: f64) -> Option<ExtremumShape> {
    if n_nodes % 2 == 1 || AlphaClass::of(alpha) != AlphaClass::IntegerAlpha {
        return None;
    }
    let alpha_even = (alpha.round() as i64).rem_euclid(2) == 0;
    let four_divides = n_nodes % 4 == 0;
    Some(if four_divides == alpha_even {
        ExtremumShape::TwoHills
    } else {
        ExtremumShape::HillAndValley
    })
}
