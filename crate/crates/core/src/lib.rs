//! Parametric ratio functions built from `cos x / cos(x/p)` and
//! `sin x / sin(x/p)`, and their certified quadratic envelopes.
//!
//! The four ratio families are
//!
//! ```text
//! f_p^c(x) = (1 - cos x / cos(x/p)) / x²      h_p^c(x) = (1 - cosh x / cosh(x/p)) / x²
//! f_p^s(x) = (p - sin x / sin(x/p)) / x²      h_p^s(x) = (p - sinh x / sinh(x/p)) / x²
//! ```
//!
//! on `0 < x < π/2`. For integer `p ≥ 2` each family is strictly monotone,
//! so it is squeezed between its two endpoint limits. The crate evaluates the
//! families, the closed forms of `D(x) = d²/dx² (x³ f'(x))` whose sign drives
//! the monotonicity argument, the Chebyshev `U_n` consequence, and a
//! certifier that checks all of it numerically (grid sampling or outward
//! rounded interval arithmetic).

pub mod certifier;
pub mod chebyshev;
pub mod cli;
pub mod envelopes;
pub mod error;
mod extended;
pub mod interval;
pub mod lemma;
pub mod ratio;

pub use error::{Error, Result};
pub use ratio::{FamilyKind, HALF_PI};
