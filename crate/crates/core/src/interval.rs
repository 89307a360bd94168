//! Closed intervals with outward rounding.
//!
//! Every operation computes its endpoints in round-to-nearest and then moves
//! each one ulp outward. Elementary operations are correctly rounded, so one
//! ulp always suffices for them; the transcendental endpoints use the same
//! one-ulp inflation around the platform libm result.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval bounds out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval::new(x, x)
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn mid(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn is_positive(self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0
    }

    /// Splits at the midpoint into `(left, right)`.
    pub fn bisect(self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval::new(self.lo, m), Interval::new(m, self.hi))
    }

    fn outward(lo: f64, hi: f64) -> Self {
        if lo.is_nan() || hi.is_nan() {
            return Interval::ENTIRE;
        }
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    fn hull4(a: f64, b: f64, c: f64, d: f64) -> Self {
        let lo = a.min(b).min(c.min(d));
        let hi = a.max(b).max(c.max(d));
        Interval::outward(lo, hi)
    }

    /// `1 / self`; the entire line when `self` contains zero.
    pub fn recip(self) -> Self {
        if self.contains_zero() {
            return Interval::ENTIRE;
        }
        Interval::outward(1.0 / self.hi, 1.0 / self.lo)
    }

    pub fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval::new(0.0, (-self.lo).max(self.hi))
        }
    }

    pub fn sqr(self) -> Self {
        let a = self.abs();
        let lo = if a.lo == 0.0 { 0.0 } else { (a.lo * a.lo).next_down() };
        Interval {
            lo,
            hi: (a.hi * a.hi).next_up(),
        }
    }

    pub fn pow4(self) -> Self {
        self.sqr().sqr()
    }

    pub fn sin(self) -> Self {
        // maxima at π/2 + 2kπ, minima at -π/2 + 2kπ
        periodic(self, f64::sin, FRAC_PI_2)
    }

    pub fn cos(self) -> Self {
        // maxima at 2kπ, minima at π + 2kπ
        periodic(self, f64::cos, 0.0)
    }

    pub fn sinh(self) -> Self {
        Interval::outward(self.lo.sinh(), self.hi.sinh())
    }

    pub fn cosh(self) -> Self {
        let (a, b) = (self.lo.cosh(), self.hi.cosh());
        if self.contains_zero() {
            Interval {
                lo: 1.0,
                hi: a.max(b).next_up(),
            }
        } else {
            Interval::outward(a.min(b), a.max(b))
        }
    }

    /// `1 / sin⁴(self)`.
    pub fn csc4(self) -> Self {
        self.sin().pow4().recip()
    }

    /// `1 / cos⁴(self)`.
    pub fn sec4(self) -> Self {
        self.cos().pow4().recip()
    }
}

/// Enclosure of a 2π-periodic unit-amplitude function whose maxima sit at
/// `peak + 2kπ` and minima at `peak + π + 2kπ`.
fn periodic(x: Interval, f: fn(f64) -> f64, peak: f64) -> Interval {
    if x.width().is_nan() || x.width() >= TAU {
        return Interval::new(-1.0, 1.0);
    }
    let (fa, fb) = (f(x.lo), f(x.hi));
    let mut lo = fa.min(fb).next_down();
    let mut hi = fa.max(fb).next_up();
    // Extremum indices whose location may fall inside x; the slack only ever
    // admits extra extrema, which widens the result.
    let slack = 1e-9;
    let first = ((x.lo - peak) / PI - slack).ceil() as i64;
    let last = ((x.hi - peak) / PI + slack).floor() as i64;
    for k in first..=last {
        if k.rem_euclid(2) == 0 {
            hi = 1.0;
        } else {
            lo = -1.0;
        }
    }
    Interval {
        lo: lo.max(-1.0),
        hi: hi.min(1.0),
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        Interval::hull4(self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

/// The entire line when the divisor contains zero.
impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        if rhs.contains_zero() {
            return Interval::ENTIRE;
        }
        Interval::hull4(self.lo / rhs.lo, self.lo / rhs.hi, self.hi / rhs.lo, self.hi / rhs.hi)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}
