//! Closed forms for `D(x) = d²/dx² (x³ f'(x))` and their cross-checks.
//!
//! The general forms hold for any real `p != 0`; the finite-sum forms are the
//! integer specializations (`p = 2k` for the sine family, `p = 2k + 1` for
//! both). The hyperbolic families have no printed closed form and are only
//! reachable through [`numeric_d`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::FiniteDifference;
use crate::ratio::{check_real_p, odd_tail, series_coefficients, FamilyKind, HALF_PI};

pub use crate::extended::FdEstimate;

/// Which printed expression of `D(x)` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivativeForm {
    GeneralCos,
    GeneralSin,
    /// `p = 2k`
    SumEvenSin,
    /// `p = 2k + 1`, alternating signs
    SumOddCos,
    /// `p = 2k + 1`
    SumOddSin,
}

/// Bracket coefficients of the general form, in the order of the sines
/// `sin(x - 3x/p)`, `sin(x + 3x/p)`, `sin(x - x/p)`, `sin(x + x/p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralCoefficients {
    pub cubic_minus: f64,
    pub cubic_plus: f64,
    pub linear_minus: f64,
    pub linear_plus: f64,
}

impl GeneralCoefficients {
    pub(crate) fn terms(&self, p: f64) -> [(f64, f64); 4] {
        [
            (self.cubic_minus, p - 3.0),
            (self.cubic_plus, p + 3.0),
            (self.linear_minus, p - 1.0),
            (self.linear_plus, p + 1.0),
        ]
    }
}

/// The coefficients of the cos (`TrigCos`) or sin (`TrigSin`) general form.
pub fn general_coefficients(family: FamilyKind, p: f64) -> Result<GeneralCoefficients> {
    let p2 = p * p;
    let p3 = p2 * p;
    let a = 3.0 * p3 + 3.0 * p2 - 15.0 * p - 23.0;
    let b = 3.0 * p3 - 3.0 * p2 - 15.0 * p + 23.0;
    let plus = (p + 1.0).powi(3);
    let minus = (p - 1.0).powi(3);
    match family {
        FamilyKind::TrigCos => Ok(GeneralCoefficients {
            cubic_minus: plus,
            cubic_plus: minus,
            linear_minus: a,
            linear_plus: b,
        }),
        FamilyKind::TrigSin => Ok(GeneralCoefficients {
            cubic_minus: plus,
            cubic_plus: -minus,
            linear_minus: -a,
            linear_plus: b,
        }),
        other => Err(Error::Parameter(format!("no closed form for the {other} family"))),
    }
}

fn check_domain(x: f64) -> Result<()> {
    if !(x > 0.0 && x < HALF_PI) {
        return Err(Error::Domain(format!("x must lie in (0, pi/2), got {x}")));
    }
    Ok(())
}

/// `Σ c_i sin(n_i x / p)`.
///
/// Written as `x S1 - x³ S3 / 6 + Σ c_i r5(n_i x / p)` with
/// `S_k = Σ c_i (n_i/p)^k` and `r5(z) = sin z - z + z³/6`. For the sine form
/// both moments vanish and the bracket is O(x⁵) while each term is O(x), so
/// summing the sines directly would lose most digits near the origin. With
/// integer `p` the moment numerators are small integers and exact in f64.
fn sine_bracket(terms: &[(f64, f64)], p: f64, x: f64) -> f64 {
    let s1: f64 = terms.iter().map(|&(c, n)| c * n).sum::<f64>() / p;
    let s3: f64 = terms.iter().map(|&(c, n)| c * n * n * n).sum::<f64>() / (p * p * p);
    let u = x / p;
    let tail: f64 = terms
        .iter()
        .map(|&(c, n)| {
            let z = n * u;
            let r5 = if z.abs() >= 4.0 {
                z.sin() - z + z * z * z / 6.0
            } else {
                odd_tail(z, 2, -1.0)
            };
            c * r5
        })
        .sum();
    let mut poly = 0.0;
    if s1 != 0.0 {
        poly += x * s1;
    }
    if s3 != 0.0 {
        poly -= x * x * x * s3 / 6.0;
    }
    poly + tail
}

/// General closed form of `D(x)` for the trigonometric families, any real
/// `p != 0`.
///
/// cos: `-x sec⁴(x/p) / (8p³) · [...]`, sin: `x csc⁴(x/p) / (8p³) · [...]`.
pub fn d_general(family: FamilyKind, p: f64, x: f64) -> Result<f64> {
    check_real_p(p)?;
    let coeffs = general_coefficients(family, p)?;
    d_general_with(family, p, x, &coeffs)
}

/// [`d_general`] with caller-supplied bracket coefficients.
pub fn d_general_with(family: FamilyKind, p: f64, x: f64, coeffs: &GeneralCoefficients) -> Result<f64> {
    check_real_p(p)?;
    check_domain(x)?;
    let u = x / p;
    let (den, sign) = match family {
        FamilyKind::TrigCos => (u.cos(), -1.0),
        FamilyKind::TrigSin => (u.sin(), 1.0),
        other => return Err(Error::Parameter(format!("no closed form for the {other} family"))),
    };
    if den.abs() <= 4.0 * f64::EPSILON {
        let which = if family == FamilyKind::TrigCos { "cos" } else { "sin" };
        return Err(Error::Pole(format!("{which}(x/p) vanishes at x/p = {u}")));
    }
    let d2 = den * den;
    let prefactor = sign * x / (8.0 * p * p * p * d2 * d2);
    Ok(prefactor * sine_bracket(&coeffs.terms(p), p, x))
}

/// Sum form for `p = 2k`:
/// `-x/(4k³) Σ_{j=0}^{k-1} (2j+1)³ sin((2j+1) x / (2k))`.
pub fn d_sum_even_sin(k: u32, x: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Parameter("k must be >= 1".into()));
    }
    check_domain(x)?;
    let kf = f64::from(k);
    let sum: f64 = (0..k)
        .map(|j| {
            let m = f64::from(2 * j + 1);
            m * m * m * (m * x / (2.0 * kf)).sin()
        })
        .sum();
    Ok(-x / (4.0 * kf * kf * kf) * sum)
}

/// Sum form for `p = 2k + 1`:
/// `-16x/(2k+1)³ Σ_{j=1}^{k} j³ sin(2j x / (2k+1))`, with the extra factor
/// `(-1)^(k-j)` for the cos family. The often-quoted `(-1)^(j-1)` agrees only
/// for odd `k` and flips the sign of the whole sum for even `k`.
pub fn d_sum_odd(family: FamilyKind, k: u32, x: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Parameter("k must be >= 1".into()));
    }
    let alternating = match family {
        FamilyKind::TrigCos => true,
        FamilyKind::TrigSin => false,
        other => return Err(Error::Parameter(format!("no sum form for the {other} family"))),
    };
    check_domain(x)?;
    let p = f64::from(2 * k + 1);
    let sum: f64 = (1..=k)
        .map(|j| {
            let jf = f64::from(j);
            let term = jf * jf * jf * (2.0 * jf * x / p).sin();
            if alternating && (k - j) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum();
    Ok(-16.0 * x / (p * p * p) * sum)
}

fn integer_p(p: f64) -> Option<u32> {
    if p.fract() == 0.0 && p >= 1.0 && p <= f64::from(u32::MAX) {
        Some(p as u32)
    } else {
        None
    }
}

/// Evaluates one of the printed forms, rejecting parameters whose parity
/// does not match a sum form.
pub fn d_form(form: DerivativeForm, p: f64, x: f64) -> Result<f64> {
    match form {
        DerivativeForm::GeneralCos => d_general(FamilyKind::TrigCos, p, x),
        DerivativeForm::GeneralSin => d_general(FamilyKind::TrigSin, p, x),
        DerivativeForm::SumEvenSin => match integer_p(p) {
            Some(n) if n % 2 == 0 => d_sum_even_sin(n / 2, x),
            _ => Err(Error::Parity(format!(
                "even sum form needs p = 2k with k >= 1, got {p}"
            ))),
        },
        DerivativeForm::SumOddCos | DerivativeForm::SumOddSin => match integer_p(p) {
            Some(n) if n % 2 == 1 && n >= 3 => {
                let family = if form == DerivativeForm::SumOddCos {
                    FamilyKind::TrigCos
                } else {
                    FamilyKind::TrigSin
                };
                d_sum_odd(family, (n - 1) / 2, x)
            }
            _ => Err(Error::Parity(format!(
                "odd sum form needs p = 2k + 1 with k >= 1, got {p}"
            ))),
        },
    }
}

/// Both sides of `Σ_{j=0}^{k-1} cos((2j+1) x / (2k)) = sin x / (2 sin(x/(2k)))`,
/// returned as `(sum_form, closed_form)`.
pub fn dirichlet_sum(k: u32, x: f64) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::Parameter("k must be >= 1".into()));
    }
    if !(x > 0.0 && x < PI) {
        return Err(Error::Domain(format!("x must lie in (0, pi), got {x}")));
    }
    let kf = f64::from(k);
    let den = (x / (2.0 * kf)).sin();
    if den == 0.0 {
        return Err(Error::Pole(format!("sin(x/(2k)) vanishes at x = {x}")));
    }
    let sum: f64 = (0..k).map(|j| (f64::from(2 * j + 1) * x / (2.0 * kf)).cos()).sum();
    Ok((sum, x.sin() / (2.0 * den)))
}

pub const MIN_STEP: f64 = 1e-5;
pub const MAX_STEP: f64 = 1e-3;

/// Finite-difference evaluator of `D(x)` for a fixed `(family, p, h)`,
/// reusable across many abscissae.
///
/// `f'` is a central difference at inner step `h/8`; `D` is the five-point
/// second difference of `x³ f'` at outer step `h`; the `h` and `h/2` results
/// are combined by one level of Richardson extrapolation. The truncation
/// error of the unextrapolated scheme is O(h²).
pub struct NumericDerivative {
    inner: FiniteDifference,
}

impl NumericDerivative {
    pub fn new(family: FamilyKind, p: f64, h: f64) -> Result<Self> {
        check_real_p(p)?;
        if !(MIN_STEP..=MAX_STEP).contains(&h) {
            return Err(Error::Parameter(format!("step h must lie in [1e-5, 1e-3], got {h}")));
        }
        Ok(NumericDerivative {
            inner: FiniteDifference::new(family, p, h),
        })
    }

    pub fn estimate(&mut self, x: f64) -> Result<FdEstimate> {
        let reach = self.inner.reach();
        if !(x - reach > 0.0 && x + reach < HALF_PI) {
            return Err(Error::Domain(format!(
                "stencil [x - {reach}, x + {reach}] around x = {x} leaves (0, pi/2)"
            )));
        }
        Ok(self.inner.eval(x))
    }
}

/// Finite-difference value of `D(x)` for any family.
pub fn numeric_d(family: FamilyKind, p: f64, x: f64, h: f64) -> Result<f64> {
    Ok(numeric_d_estimate(family, p, x, h)?.value)
}

/// [`numeric_d`] together with its Richardson error estimate.
pub fn numeric_d_estimate(family: FamilyKind, p: f64, x: f64, h: f64) -> Result<FdEstimate> {
    NumericDerivative::new(family, p, h)?.estimate(x)
}

const LIMIT_PROBES: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Extrapolated `x → 0` limits of `(x³ f')'` and `x³ f'`, returned in that
/// order, from the even series of the family sampled at 1e-2, 1e-3, 1e-4.
pub fn vanishing_limits_check(family: FamilyKind, p: f64) -> Result<(f64, f64)> {
    check_real_p(p)?;
    let [_, c2, c4, c6] = series_coefficients(family, p);
    // x³ f' = 2c2 x⁴ + 4c4 x⁶ + 6c6 x⁸
    let g = |x: f64| {
        let t = x * x;
        t * t * (2.0 * c2 + t * (4.0 * c4 + t * 6.0 * c6))
    };
    let dg = |x: f64| {
        let t = x * x;
        x * t * (8.0 * c2 + t * (24.0 * c4 + t * 48.0 * c6))
    };
    Ok((
        extrapolate_to_zero(&LIMIT_PROBES, dg),
        extrapolate_to_zero(&LIMIT_PROBES, g),
    ))
}

/// Value at 0 of the interpolating polynomial through `(x_i, f(x_i))`.
fn extrapolate_to_zero(xs: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    xs.iter()
        .enumerate()
        .map(|(i, &xi)| {
            let weight: f64 = xs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| xj / (xj - xi))
                .product();
            weight * f(xi)
        })
        .sum()
}
