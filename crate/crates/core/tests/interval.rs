mod common;

use std::f64::consts::PI;

use dsineq::interval::Interval;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 10_000;

#[test]
fn primitives_contain_point_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..SAMPLES {
        let a: f64 = rng.gen_range(-10.0..10.0);
        let b: f64 = rng.gen_range(-10.0..10.0);
        let (ia, ib) = (Interval::point(a), Interval::point(b));
        assert!((ia + ib).contains(a + b), "{a} + {b}");
        assert!((ia - ib).contains(a - b), "{a} - {b}");
        assert!((ia * ib).contains(a * b), "{a} * {b}");
        assert!(ia.sin().contains(a.sin()), "sin {a}");
        assert!(ia.cos().contains(a.cos()), "cos {a}");
        assert!(ia.sinh().contains(a.sinh()), "sinh {a}");
        assert!(ia.cosh().contains(a.cosh()), "cosh {a}");
        if b != 0.0 {
            assert!((ia / ib).contains(a / b), "{a} / {b}");
        }
    }
}

#[test]
fn csc4_composite_contains_extended_value() {
    let mut oracle = common::Oracle::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..SAMPLES {
        let x: f64 = rng.gen_range(1e-3..(PI - 1e-3));
        let exact = oracle.csc4(x);
        let enc = Interval::point(x).csc4();
        assert!(enc.contains(exact), "csc4({x}) = {exact} not in {enc}");
        assert!(enc.width() <= 1e-14 * exact, "csc4({x}) too wide: {enc}");
        assert!(enc.contains(1.0 / x.sin().powi(4)));
    }
}

fn ordered() -> impl Strategy<Value = Interval> {
    (-4.0f64..4.0, 0.0f64..3.0).prop_map(|(lo, w)| Interval::new(lo, lo + w))
}

proptest! {
    #[test]
    fn arithmetic_encloses_sampled_points(a in ordered(), b in ordered(), s in 0.0f64..=1.0, t in 0.0f64..=1.0) {
        let x = a.lo() + s * a.width();
        let y = b.lo() + t * b.width();
        prop_assume!(a.contains(x) && b.contains(y));
        prop_assert!((a + b).contains(x + y));
        prop_assert!((a - b).contains(x - y));
        prop_assert!((a * b).contains(x * y));
        prop_assert!(a.sqr().contains(x * x));
        if !b.contains_zero() {
            prop_assert!((a / b).contains(x / y));
        }
    }

    #[test]
    fn transcendentals_enclose_sampled_points(a in ordered(), s in 0.0f64..=1.0) {
        let x = a.lo() + s * a.width();
        prop_assume!(a.contains(x));
        prop_assert!(a.sin().contains(x.sin()));
        prop_assert!(a.cos().contains(x.cos()));
        prop_assert!(a.sinh().contains(x.sinh()));
        prop_assert!(a.cosh().contains(x.cosh()));
        prop_assert!(a.pow4().contains(x.powi(4)));
        prop_assert!(a.sec4().contains(1.0 / x.cos().powi(4)) || a.sec4() == Interval::ENTIRE);
    }

    #[test]
    fn bisection_covers_parent(a in ordered()) {
        let (l, r) = a.bisect();
        prop_assert_eq!(l.lo(), a.lo());
        prop_assert_eq!(r.hi(), a.hi());
        prop_assert_eq!(l.hi(), r.lo());
    }
}
