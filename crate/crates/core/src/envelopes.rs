//! Quadratic envelope constants and the bounds they induce on the raw ratios.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{limit_at_half_pi, limit_at_zero, FamilyKind, ParamInt, HALF_PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    /// `+1` for increasing, `-1` for decreasing.
    pub fn signum(self) -> f64 {
        match self {
            Direction::Increasing => 1.0,
            Direction::Decreasing => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        }
    }
}

/// Infimum and supremum of one family over `(0, π/2)` for one integer `p`.
///
/// `lower < upper` always; both are endpoint limits and neither is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeConstants {
    pub family: FamilyKind,
    pub p: ParamInt,
    pub lower: f64,
    pub upper: f64,
    pub direction: Direction,
}

/// Only the cos families flip at `p = 2`.
pub fn direction(family: FamilyKind, p: ParamInt) -> Direction {
    if family.is_cos() && p.get() == 2 {
        Direction::Increasing
    } else {
        Direction::Decreasing
    }
}

pub fn envelope_constants(family: FamilyKind, p: ParamInt) -> EnvelopeConstants {
    let at_zero = limit_at_zero(family, p);
    let at_end = limit_at_half_pi(family, p);
    let direction = direction(family, p);
    let (lower, upper) = match direction {
        Direction::Increasing => (at_zero, at_end),
        Direction::Decreasing => (at_end, at_zero),
    };
    EnvelopeConstants {
        family,
        p,
        lower,
        upper,
        direction,
    }
}

/// [`envelope_constants`] from a raw integer, rejecting `p < 2`.
pub fn envelope_constants_for(family: FamilyKind, p: u32) -> Result<EnvelopeConstants> {
    Ok(envelope_constants(family, ParamInt::new(p)?))
}

/// `lead - coeff · x²`, shared with `chebyshev::corollary_bounds` so both paths
/// round identically.
pub(crate) fn quadratic_bound(lead: f64, coeff: f64, x: f64) -> f64 {
    lead - coeff * (x * x)
}

/// Two-sided bounds `(lo, hi)` on the raw ratio at `x`.
///
/// With `f = (lead - ratio) / x²` and `lower < f < upper`, the ratio lies in
/// `(lead - upper x², lead - lower x²)` where `lead` is `1` for the cos
/// families and `p` for the sin families. Since `lower < upper` is stored
/// canonically the result never depends on the monotonicity direction.
pub fn ratio_bounds(family: FamilyKind, p: ParamInt, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && x < HALF_PI) {
        return Err(Error::Domain(format!("x must lie in (0, pi/2), got {x}")));
    }
    let env = envelope_constants(family, p);
    let lead = if family.is_cos() { 1.0 } else { p.as_f64() };
    Ok((quadratic_bound(lead, env.upper, x), quadratic_bound(lead, env.lower, x)))
}
