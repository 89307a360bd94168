//! The four normalized ratio families and their endpoint limits.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Right endpoint of the working interval `(0, π/2)`.
pub const HALF_PI: f64 = FRAC_PI_2;

/// Below this abscissa `eval_f` switches from the definition to its
/// even-power series.
pub const SMALL_X_THRESHOLD: f64 = 1e-2;

const POLE_TOL: f64 = 4.0 * f64::EPSILON;

/// Selector among the four ratio families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `(1 - cos x / cos(x/p)) / x²`
    #[serde(rename = "trig-cos")]
    TrigCos,
    /// `(p - sin x / sin(x/p)) / x²`
    #[serde(rename = "trig-sin")]
    TrigSin,
    /// `(1 - cosh x / cosh(x/p)) / x²`
    #[serde(rename = "hyp-cos")]
    HypCos,
    /// `(p - sinh x / sinh(x/p)) / x²`
    #[serde(rename = "hyp-sin")]
    HypSin,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::TrigCos,
        FamilyKind::TrigSin,
        FamilyKind::HypCos,
        FamilyKind::HypSin,
    ];

    pub fn is_trig(self) -> bool {
        matches!(self, FamilyKind::TrigCos | FamilyKind::TrigSin)
    }

    pub fn is_cos(self) -> bool {
        matches!(self, FamilyKind::TrigCos | FamilyKind::HypCos)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::TrigCos => "trig-cos",
            FamilyKind::TrigSin => "trig-sin",
            FamilyKind::HypCos => "hyp-cos",
            FamilyKind::HypSin => "hyp-sin",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trig-cos" => Ok(FamilyKind::TrigCos),
            "trig-sin" => Ok(FamilyKind::TrigSin),
            "hyp-cos" => Ok(FamilyKind::HypCos),
            "hyp-sin" => Ok(FamilyKind::HypSin),
            other => Err(Error::Parameter(format!(
                "unknown family '{other}' (expected trig-cos, trig-sin, hyp-cos or hyp-sin)"
            ))),
        }
    }
}

/// Integer parameter `p ≥ 2`, the range on which the envelope bounds hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamInt(u32);

impl ParamInt {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::Parameter(format!("p must be an integer >= 2, got {p}")));
        }
        Ok(ParamInt(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

impl TryFrom<u32> for ParamInt {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        ParamInt::new(p)
    }
}

impl fmt::Display for ParamInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_real_p(p: f64) -> Result<()> {
    if !p.is_finite() || p == 0.0 {
        return Err(Error::Parameter(format!("p must be finite and non-zero, got {p}")));
    }
    Ok(())
}

fn check_interior(x: f64) -> Result<()> {
    if !(x > 0.0 && x < HALF_PI) {
        return Err(Error::Domain(format!("x must lie in (0, pi/2), got {x}")));
    }
    Ok(())
}

/// The bare ratio `cos x / cos(x/p)`, `sin x / sin(x/p)`, or the hyperbolic
/// analogue, for `x` strictly inside `(0, π/2)`.
pub fn eval_ratio(family: FamilyKind, p: f64, x: f64) -> Result<f64> {
    check_real_p(p)?;
    check_interior(x)?;
    let u = x / p;
    let (num, den) = match family {
        FamilyKind::TrigCos => (x.cos(), u.cos()),
        FamilyKind::TrigSin => (x.sin(), u.sin()),
        FamilyKind::HypCos => (x.cosh(), u.cosh()),
        FamilyKind::HypSin => (x.sinh(), u.sinh()),
    };
    if family.is_trig() {
        check_pole(family, u, den)?;
    }
    Ok(num / den)
}

fn check_pole(family: FamilyKind, u: f64, den: f64) -> Result<()> {
    if den.abs() <= POLE_TOL {
        let which = if family.is_cos() { "cos" } else { "sin" };
        return Err(Error::Pole(format!("{which}(x/p) vanishes at x/p = {u}")));
    }
    Ok(())
}

/// Even-power Taylor coefficients `[c0, c2, c4, c6]` of the family about
/// `x = 0`, valid for any real `p != 0`.
pub fn series_coefficients(family: FamilyKind, p: f64) -> [f64; 4] {
    let p2 = p * p;
    let q = p2 - 1.0;
    match family {
        FamilyKind::TrigCos | FamilyKind::HypCos => {
            let sign = if family == FamilyKind::TrigCos { 1.0 } else { -1.0 };
            let p4 = p2 * p2;
            let c0 = q / (2.0 * p2);
            let c2 = -q * (p2 - 5.0) / (24.0 * p4);
            let c4 = q * (p4 - 14.0 * p2 + 61.0) / (720.0 * p4 * p2);
            let c6 = -q * (p4 * p2 - 27.0 * p4 + 323.0 * p2 - 1385.0) / (40320.0 * p4 * p4);
            // x -> ix maps the trig series onto the hyperbolic one up to an
            // overall sign.
            [sign * c0, c2, sign * c4, c6]
        }
        FamilyKind::TrigSin | FamilyKind::HypSin => {
            let sign = if family == FamilyKind::TrigSin { 1.0 } else { -1.0 };
            let p3 = p2 * p;
            let c0 = q / (6.0 * p);
            let c2 = -q * (3.0 * p2 - 7.0) / (360.0 * p3);
            let c4 = q * (3.0 * p2 * p2 - 18.0 * p2 + 31.0) / (15120.0 * p3 * p2);
            let c6 = -q * (5.0 * p3 * p3 - 55.0 * p2 * p2 + 239.0 * p2 - 381.0) / (1_814_400.0 * p3 * p2 * p2);
            [sign * c0, c2, sign * c4, c6]
        }
    }
}

fn eval_series(c: &[f64; 4], x: f64) -> f64 {
    let t = x * x;
    c[0] + t * (c[1] + t * (c[2] + t * c[3]))
}

/// `sin z - z` without cancellation for moderate `|z|`.
pub(crate) fn sin_minus_id(z: f64) -> f64 {
    if z.abs() >= 2.0 {
        return z.sin() - z;
    }
    odd_tail(z, 1, -1.0)
}

/// `sinh z - z` without cancellation for moderate `|z|`.
pub(crate) fn sinh_minus_id(z: f64) -> f64 {
    if z.abs() >= 2.0 {
        return z.sinh() - z;
    }
    odd_tail(z, 1, 1.0)
}

/// `Σ_{m≥skip} s^m z^{2m+1}/(2m+1)!`, i.e. the sine (`s = -1`) or sinh
/// (`s = 1`) series with its first `skip` terms removed.
pub(crate) fn odd_tail(z: f64, skip: u32, s: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    for m in 1..=skip {
        let m = f64::from(m);
        term *= s * z2 / ((2.0 * m) * (2.0 * m + 1.0));
    }
    let mut sum = term;
    let mut m = f64::from(skip) + 1.0;
    loop {
        term *= s * z2 / ((2.0 * m) * (2.0 * m + 1.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() || term == 0.0 {
            break;
        }
        m += 1.0;
    }
    sum
}

/// Evaluates the family at `x ∈ [0, π/2)`.
///
/// Above [`SMALL_X_THRESHOLD`] the numerator is rewritten so that the
/// `1 - ratio` (or `p - ratio`) cancellation never happens in floating point;
/// below it the even series through `x⁶` is used. `x = 0` returns the limit.
pub fn eval_f(family: FamilyKind, p: f64, x: f64) -> Result<f64> {
    check_real_p(p)?;
    if !(0.0..HALF_PI).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, pi/2), got {x}")));
    }
    if x == 0.0 {
        return Ok(zero_limit(family, p));
    }
    if x < SMALL_X_THRESHOLD {
        return Ok(eval_series(&series_coefficients(family, p), x));
    }
    eval_direct(family, p, x)
}

fn eval_direct(family: FamilyKind, p: f64, x: f64) -> Result<f64> {
    let u = x / p;
    let x2 = x * x;
    match family {
        FamilyKind::TrigCos => {
            let den = u.cos();
            check_pole(family, u, den)?;
            // cos u - cos x = 2 sin((x+u)/2) sin((x-u)/2)
            let num = 2.0 * (0.5 * (x + u)).sin() * (0.5 * (x - u)).sin();
            Ok(num / (den * x2))
        }
        FamilyKind::HypCos => {
            let num = -2.0 * (0.5 * (x + u)).sinh() * (0.5 * (x - u)).sinh();
            Ok(num / (u.cosh() * x2))
        }
        FamilyKind::TrigSin => {
            let den = u.sin();
            check_pole(family, u, den)?;
            // p sin(x/p) - sin x = p (sin u - u) - (sin x - x); the linear
            // parts cancel exactly, and the rounding of u only perturbs the
            // O(u³) remainder.
            let num = p * sin_minus_id(u) - sin_minus_id(x);
            Ok(num / (den * x2))
        }
        FamilyKind::HypSin => {
            let num = p * sinh_minus_id(u) - sinh_minus_id(x);
            Ok(num / (u.sinh() * x2))
        }
    }
}

fn zero_limit(family: FamilyKind, p: f64) -> f64 {
    series_coefficients(family, p)[0]
}

/// `lim_{x→0}` of the family.
pub fn limit_at_zero(family: FamilyKind, p: ParamInt) -> f64 {
    zero_limit(family, p.as_f64())
}

/// `lim_{x→π/2}` of the family.
pub fn limit_at_half_pi(family: FamilyKind, p: ParamInt) -> f64 {
    let p = p.as_f64();
    let scale = 4.0 / (PI * PI);
    let v = PI / (2.0 * p);
    match family {
        FamilyKind::TrigCos => scale,
        FamilyKind::TrigSin => scale * (p - 1.0 / v.sin()),
        FamilyKind::HypCos => scale * (1.0 - HALF_PI.cosh() / v.cosh()),
        FamilyKind::HypSin => scale * (p - HALF_PI.sinh() / v.sinh()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pi(p: u32) -> ParamInt {
        ParamInt::new(p).unwrap()
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(eval_ratio(FamilyKind::TrigSin, 1.0, 0.7).unwrap(), 1.0);
        assert_relative_eq!(
            eval_ratio(FamilyKind::TrigCos, 3.0, 1.0).unwrap(),
            0.571_774_521_553_896,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            eval_ratio(FamilyKind::HypSin, 2.0, 1.0).unwrap(),
            2.255_251_930_412_761_6,
            max_relative = 1e-15
        );
    }

    #[test]
    fn ratio_rejects_bad_inputs() {
        assert!(matches!(
            eval_ratio(FamilyKind::TrigCos, 2.0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_ratio(FamilyKind::TrigCos, 2.0, HALF_PI),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_ratio(FamilyKind::TrigCos, 0.0, 1.0),
            Err(Error::Parameter(_))
        ));
        // x/p = π/2 exactly in floating point for p = 0.5, x = π/4.
        let x = std::f64::consts::FRAC_PI_4;
        assert!(matches!(eval_ratio(FamilyKind::TrigCos, 0.5, x), Err(Error::Pole(_))));
    }

    #[test]
    fn f_examples() {
        assert_eq!(eval_f(FamilyKind::TrigCos, 2.0, 0.0).unwrap(), 0.375);
        assert_relative_eq!(
            eval_f(FamilyKind::TrigSin, 2.0, 1.0).unwrap(),
            0.244_834_876_219_254_57,
            max_relative = 1e-14
        );
        let v = eval_f(FamilyKind::TrigCos, 3.0, 1.0).unwrap();
        assert_relative_eq!(v, 0.428_225_478_446_104, max_relative = 1e-14);
        assert!(v > 4.0 / (PI * PI) && v < 4.0 / 9.0);
    }

    #[test]
    fn f_domain() {
        assert!(eval_f(FamilyKind::TrigSin, 2.0, -1e-3).is_err());
        assert!(eval_f(FamilyKind::TrigSin, 2.0, HALF_PI).is_err());
        assert!(eval_f(FamilyKind::TrigSin, 2.0, f64::NAN).is_err());
    }

    #[test]
    fn zero_limits() {
        assert_eq!(limit_at_zero(FamilyKind::TrigSin, pi(2)), 0.25);
        assert_relative_eq!(
            limit_at_zero(FamilyKind::TrigCos, pi(3)),
            4.0 / 9.0,
            max_relative = 1e-16
        );
        assert_eq!(limit_at_zero(FamilyKind::HypSin, pi(2)), -0.25);
        assert_eq!(limit_at_zero(FamilyKind::HypCos, pi(2)), -0.375);
    }

    #[test]
    fn half_pi_limits() {
        let s = 4.0 / (PI * PI);
        assert_relative_eq!(
            limit_at_half_pi(FamilyKind::TrigSin, pi(2)),
            s * (2.0 - 2f64.sqrt()),
            max_relative = 4.0 * f64::EPSILON
        );
        assert_relative_eq!(limit_at_half_pi(FamilyKind::TrigSin, pi(3)), s, max_relative = 1e-15);
        assert_relative_eq!(
            limit_at_half_pi(FamilyKind::HypSin, pi(2)),
            -0.263_118_217_152_596,
            max_relative = 1e-14
        );
        assert_eq!(limit_at_half_pi(FamilyKind::TrigCos, pi(7)), s);
    }

    #[test]
    fn param_int_rejects_small() {
        assert!(ParamInt::new(1).is_err());
        assert!(ParamInt::new(0).is_err());
        assert_eq!(ParamInt::try_from(5).unwrap().get(), 5);
    }

    #[test]
    fn family_round_trips_through_str() {
        for f in FamilyKind::ALL {
            assert_eq!(f.as_str().parse::<FamilyKind>().unwrap(), f);
        }
        assert!("cos".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn continuity_at_threshold() {
        let d = 1e-13;
        for family in FamilyKind::ALL {
            for p in 2..=12 {
                let p = f64::from(p);
                let below = eval_f(family, p, SMALL_X_THRESHOLD - d).unwrap();
                let above = eval_f(family, p, SMALL_X_THRESHOLD + d).unwrap();
                assert!((below - above).abs() < 1e-14, "{family} p={p}: {below} vs {above}");
            }
        }
    }

    #[test]
    fn limit_consistency() {
        for family in FamilyKind::ALL {
            for p in 2..=12 {
                let pp = pi(p);
                let p = f64::from(p);
                let near0 = eval_f(family, p, 1e-6).unwrap();
                assert!((near0 - limit_at_zero(family, pp)).abs() < 1e-9);
                let near_end = eval_f(family, p, HALF_PI - 1e-6).unwrap();
                assert!((near_end - limit_at_half_pi(family, pp)).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn series_is_even() {
        for family in FamilyKind::ALL {
            let c = series_coefficients(family, 3.0);
            let x = 4e-3;
            assert_eq!(eval_series(&c, x), eval_series(&c, -x));
        }
    }

    #[test]
    fn unit_p_sin_family_vanishes() {
        for x in [0.0, 1e-3, 0.3, 1.2] {
            assert_eq!(eval_f(FamilyKind::TrigSin, 1.0, x).unwrap(), 0.0);
        }
    }

    #[test]
    fn odd_tail_matches_direct_for_large_args() {
        for z in [0.5_f64, 1.0, 1.9] {
            assert_relative_eq!(sin_minus_id(z), z.sin() - z, max_relative = 1e-14);
            assert_relative_eq!(sinh_minus_id(z), z.sinh() - z, max_relative = 1e-14);
        }
    }
}
