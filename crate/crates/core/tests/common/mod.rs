//! Independent oracle: the ratio families evaluated straight from their
//! definitions at 256 bits, and `D(x)` by nested central differences at that
//! precision. Nothing here goes through the library's evaluation code.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use dsineq::FamilyKind;

const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

fn big(v: f64) -> BigFloat {
    BigFloat::from_f64(v, PREC)
}

fn to_f64(v: &BigFloat) -> f64 {
    format!("{v}").parse().expect("astro-float decimal output")
}

pub struct Oracle {
    cc: Consts,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle {
            cc: Consts::new().expect("constants cache"),
        }
    }

    fn f_big(&mut self, family: FamilyKind, p: &BigFloat, x: &BigFloat) -> BigFloat {
        let u = x.div(p, PREC, RM);
        let cc = &mut self.cc;
        let (num, den) = match family {
            FamilyKind::TrigCos => (x.cos(PREC, RM, cc), u.cos(PREC, RM, cc)),
            FamilyKind::TrigSin => (x.sin(PREC, RM, cc), u.sin(PREC, RM, cc)),
            FamilyKind::HypCos => (x.cosh(PREC, RM, cc), u.cosh(PREC, RM, cc)),
            FamilyKind::HypSin => (x.sinh(PREC, RM, cc), u.sinh(PREC, RM, cc)),
        };
        let lead = if family.is_cos() { big(1.0) } else { p.clone() };
        let ratio = num.div(&den, PREC, RM);
        lead.sub(&ratio, PREC, RM).div(&x.mul(x, PREC, RM), PREC, RM)
    }

    /// The family at `x`, correctly rounded for all practical purposes.
    pub fn f(&mut self, family: FamilyKind, p: f64, x: f64) -> f64 {
        let v = self.f_big(family, &big(p), &big(x));
        to_f64(&v)
    }

    /// The raw ratio `cos x / cos(x/p)` (or its sin, cosh, sinh analogue).
    pub fn ratio(&mut self, family: FamilyKind, p: f64, x: f64) -> f64 {
        let bx = big(x);
        let bp = big(p);
        let f = self.f_big(family, &bp, &bx);
        let lead = if family.is_cos() { big(1.0) } else { bp };
        to_f64(&lead.sub(&f.mul(&bx.mul(&bx, PREC, RM), PREC, RM), PREC, RM))
    }

    /// `D(x) = (x³ f'(x))''`: inner step 1e-20, outer step 1e-10, both
    /// central; the truncation and rounding errors sit near 1e-20.
    pub fn d(&mut self, family: FamilyKind, p: f64, x: f64) -> f64 {
        let bp = big(p);
        let bx = big(x);
        let hi = BigFloat::parse("1e-20", astro_float::Radix::Dec, PREC, RM, &mut self.cc);
        let ho = BigFloat::parse("1e-10", astro_float::Radix::Dec, PREC, RM, &mut self.cc);
        let g = |t: &BigFloat, cc: &mut Oracle| {
            let plus = cc.f_big(family, &bp, &t.add(&hi, PREC, RM));
            let minus = cc.f_big(family, &bp, &t.sub(&hi, PREC, RM));
            let slope = plus.sub(&minus, PREC, RM).div(&hi.add(&hi, PREC, RM), PREC, RM);
            t.powi(3, PREC, RM).mul(&slope, PREC, RM)
        };
        let gp = g(&bx.add(&ho, PREC, RM), self);
        let g0 = g(&bx, self);
        let gm = g(&bx.sub(&ho, PREC, RM), self);
        let second = gp.sub(&g0.add(&g0, PREC, RM), PREC, RM).add(&gm, PREC, RM);
        to_f64(&second.div(&ho.mul(&ho, PREC, RM), PREC, RM))
    }

    /// `1 / sin⁴(x)` at 256 bits.
    pub fn csc4(&mut self, x: f64) -> f64 {
        let s = big(x).sin(PREC, RM, &mut self.cc);
        to_f64(&big(1.0).div(&s.powi(4, PREC, RM), PREC, RM))
    }
}
