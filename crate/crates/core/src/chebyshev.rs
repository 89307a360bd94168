//! Chebyshev polynomials of the second kind and the `U_{p-1}(cos y)` bounds.

use crate::envelopes::{envelope_constants, quadratic_bound};
use crate::error::{Error, Result};
use crate::ratio::{FamilyKind, ParamInt, HALF_PI};

/// Largest degree whose coefficients are built.
pub const MAX_DEGREE: usize = 64;

/// `U_n` in the monomial basis, `coeffs[i]` multiplying `t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebPoly {
    exact: Vec<i128>,
}

impl ChebPoly {
    pub fn degree(&self) -> usize {
        self.exact.len() - 1
    }

    pub fn exact_coeffs(&self) -> &[i128] {
        &self.exact
    }

    pub fn coeffs(&self) -> Vec<f64> {
        self.exact.iter().map(|&c| c as f64).collect()
    }

    /// Horner evaluation of the monomial form.
    pub fn eval(&self, t: f64) -> f64 {
        self.exact.iter().rev().fold(0.0, |acc, &c| acc * t + c as f64)
    }
}

/// Builds `U_n` by `U_{n+1} = 2t U_n - U_{n-1}` in exact integers.
pub fn cheb_u(n: usize) -> Result<ChebPoly> {
    if n > MAX_DEGREE {
        return Err(Error::Cap(n, MAX_DEGREE));
    }
    let mut prev: Vec<i128> = vec![1];
    if n == 0 {
        return Ok(ChebPoly { exact: prev });
    }
    let mut cur: Vec<i128> = vec![0, 2];
    for _ in 1..n {
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    Ok(ChebPoly { exact: cur })
}

/// `U_n(t)` for `|t| ≤ 1` by the value-space recurrence.
pub fn cheb_u_eval(n: usize, t: f64) -> Result<f64> {
    if t.is_nan() || t.abs() > 1.0 {
        return Err(Error::Domain(format!("t must lie in [-1, 1], got {t}")));
    }
    let (mut prev, mut cur) = (1.0, 2.0 * t);
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The pair `(lo, hi)` with `lo < U_{p-1}(cos y) < hi` for `0 < y < π/(2p)`.
///
/// This is the sine-family ratio bound at `x = p·y`, evaluated through the
/// same helper as [`crate::envelopes::ratio_bounds`].
pub fn corollary_bounds(p: ParamInt, y: f64) -> Result<(f64, f64)> {
    let pf = p.as_f64();
    let y_max = HALF_PI / pf;
    if !(y > 0.0 && y < y_max) {
        return Err(Error::Domain(format!(
            "y must lie in (0, pi/(2p)) = (0, {y_max}), got {y}"
        )));
    }
    let x = pf * y;
    if x >= HALF_PI {
        return Err(Error::Domain(format!("p*y = {x} rounds onto pi/2")));
    }
    let env = envelope_constants(FamilyKind::TrigSin, p);
    Ok((quadratic_bound(pf, env.upper, x), quadratic_bound(pf, env.lower, x)))
}

/// The coefficient of `y²` in the upper bound, `(4/π²)(p - csc(π/(2p))) p`.
pub fn corollary_upper_coefficient(p: ParamInt) -> f64 {
    envelope_constants(FamilyKind::TrigSin, p).lower * p.as_f64() * p.as_f64()
}
