//! Certification campaigns over the open interval `(0, π/2)`.
//!
//! Every campaign runs on `[m, π/2 - m]` for the configured interior margin
//! `m`; the margins of the inequalities vanish at the endpoints, so nothing is
//! ever claimed there.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chebyshev::cheb_u_eval;
use crate::envelopes::{direction, envelope_constants, Direction};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::lemma::{
    d_general, d_sum_even_sin, d_sum_odd, dirichlet_sum, general_coefficients, vanishing_limits_check,
    NumericDerivative,
};
use crate::ratio::{eval_f, FamilyKind, ParamInt, HALF_PI};

/// Finite-difference step used for the hyperbolic sign claims.
pub const HYPERBOLIC_STEP: f64 = 1e-4;
/// A finite-difference value counts as resolved once it exceeds this many
/// multiples of its error estimate.
pub const RESOLUTION_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Grid,
    Rigorous,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Grid => "grid",
            Mode::Rigorous => "rigorous",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Certified,
    Falsified,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Certified => "CERTIFIED",
            Status::Falsified => "FALSIFIED",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedSign {
    Pos,
    Neg,
}

impl ExpectedSign {
    pub fn signum(self) -> f64 {
        match self {
            ExpectedSign::Pos => 1.0,
            ExpectedSign::Neg => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ExpectedSign::Pos => "pos",
            ExpectedSign::Neg => "neg",
        }
    }
}

impl From<Direction> for ExpectedSign {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Increasing => ExpectedSign::Pos,
            Direction::Decreasing => ExpectedSign::Neg,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationConfig {
    pub grid_points: usize,
    pub interior_margin: f64,
    pub mode: Mode,
    pub max_subdivisions: u32,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            grid_points: 2048,
            interior_margin: 1e-3,
            mode: Mode::Grid,
            max_subdivisions: 20,
        }
    }
}

impl VerificationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 16 {
            return Err(Error::Config(format!(
                "grid_points must be >= 16, got {}",
                self.grid_points
            )));
        }
        let m = self.interior_margin;
        if !(m > 0.0 && m < PI / 8.0) {
            return Err(Error::Config(format!("interior_margin must lie in (0, pi/8), got {m}")));
        }
        Ok(())
    }

    pub fn with_mode(self, mode: Mode) -> Self {
        VerificationConfig { mode, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub status: Status,
    /// Smallest signed margin seen; positive when the claim held everywhere.
    pub min_margin: f64,
    pub worst_x: f64,
    pub cells_checked: u64,
    pub mode: Mode,
    /// Parameter (`p` or `k`) at `worst_x` for campaigns that sweep one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_param: Option<f64>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} min_margin={:e} worst_x={} cells={} mode={}",
            self.claim_id,
            self.status,
            self.min_margin,
            self.worst_x,
            self.cells_checked,
            self.mode.as_str()
        )?;
        if let Some(p) = self.worst_param {
            write!(f, " worst_param={p}")?;
        }
        Ok(())
    }
}

/// Running minimum with the smaller abscissa winning ties.
#[derive(Debug, Clone, Copy)]
struct Worst {
    margin: f64,
    x: f64,
    param: Option<f64>,
}

impl Worst {
    fn new() -> Self {
        Worst {
            margin: f64::INFINITY,
            x: f64::INFINITY,
            param: None,
        }
    }

    fn observe(&mut self, margin: f64, x: f64, param: Option<f64>) {
        let better = margin < self.margin
            || (margin == self.margin && (x, param.unwrap_or(0.0)) < (self.x, self.param.unwrap_or(0.0)));
        if better || (margin.is_nan() && !self.margin.is_nan()) {
            *self = Worst { margin, x, param };
        }
    }

    fn seen(&self) -> bool {
        self.x.is_finite()
    }

    fn report(self, claim_id: String, status: Status, cells: u64, mode: Mode) -> VerificationReport {
        VerificationReport {
            claim_id,
            status,
            min_margin: self.margin,
            worst_x: self.x,
            cells_checked: cells,
            mode,
            worst_param: self.param,
        }
    }

    /// Certified exactly when every observed margin was positive.
    fn strict(self, claim_id: String, cells: u64) -> VerificationReport {
        let status = if self.margin > 0.0 {
            Status::Certified
        } else {
            Status::Falsified
        };
        self.report(claim_id, status, cells, Mode::Grid)
    }
}

/// `n` equally spaced points on `[m, π/2 - m]`, endpoints included.
pub fn interior_grid(n: usize, margin: f64) -> Vec<f64> {
    let a = margin;
    let b = HALF_PI - margin;
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + i as f64 * step })
        .collect()
}

/// `n` Chebyshev nodes strictly inside `(a, b)`.
fn chebyshev_nodes(n: usize, a: f64, b: f64) -> Vec<f64> {
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    let mut xs: Vec<f64> = (0..n)
        .map(|i| c - r * ((2 * i + 1) as f64 * PI / (2 * n) as f64).cos())
        .collect();
    xs.sort_by(f64::total_cmp);
    xs
}

/// `n` equally spaced points strictly inside `(0, b)`.
fn open_grid(n: usize, b: f64) -> Vec<f64> {
    (1..=n).map(|i| b * i as f64 / (n + 1) as f64).collect()
}

/// Sign of `D(x)` for one family and `p`.
///
/// Grid mode samples the closed form (trigonometric) or the finite-difference
/// value (hyperbolic; a point only counts once `|D|` clears
/// [`RESOLUTION_FACTOR`] times its error estimate). Rigorous mode bisects the
/// interior in interval arithmetic until every cell's enclosure excludes zero.
pub fn verify_sign_d(
    family: FamilyKind,
    p: ParamInt,
    expected: ExpectedSign,
    cfg: &VerificationConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let claim_id = format!("sign_d/{family}/p={p}/{}", expected.as_str());
    match cfg.mode {
        Mode::Grid if family.is_trig() => sign_grid_trig(family, p, expected, cfg, claim_id),
        Mode::Grid => sign_grid_hyperbolic(family, p, expected, cfg, claim_id),
        Mode::Rigorous if family.is_trig() => sign_rigorous(family, p, expected, cfg, claim_id),
        Mode::Rigorous => Err(Error::Mode(format!(
            "rigorous mode needs a closed form for D, which the {family} family lacks; use grid mode"
        ))),
    }
}

fn sign_grid_trig(
    family: FamilyKind,
    p: ParamInt,
    expected: ExpectedSign,
    cfg: &VerificationConfig,
    claim_id: String,
) -> Result<VerificationReport> {
    let s = expected.signum();
    let mut worst = Worst::new();
    let grid = interior_grid(cfg.grid_points, cfg.interior_margin);
    for &x in &grid {
        worst.observe(s * d_general(family, p.as_f64(), x)?, x, None);
    }
    Ok(worst.strict(claim_id, grid.len() as u64))
}

fn sign_grid_hyperbolic(
    family: FamilyKind,
    p: ParamInt,
    expected: ExpectedSign,
    cfg: &VerificationConfig,
    claim_id: String,
) -> Result<VerificationReport> {
    let s = expected.signum();
    let mut fd = NumericDerivative::new(family, p.as_f64(), HYPERBOLIC_STEP)?;
    let (mut all, mut bad, mut unresolved) = (Worst::new(), Worst::new(), Worst::new());
    let grid = interior_grid(cfg.grid_points, cfg.interior_margin);
    for &x in &grid {
        let est = fd.estimate(x)?;
        let margin = s * est.value;
        all.observe(margin, x, None);
        if est.value.abs() > RESOLUTION_FACTOR * est.error {
            if margin <= 0.0 {
                bad.observe(margin, x, None);
            }
        } else {
            unresolved.observe(margin, x, None);
        }
    }
    let cells = grid.len() as u64;
    Ok(if bad.seen() {
        bad.report(claim_id, Status::Falsified, cells, Mode::Grid)
    } else if unresolved.seen() {
        unresolved.report(claim_id, Status::Inconclusive, cells, Mode::Grid)
    } else {
        all.report(claim_id, Status::Certified, cells, Mode::Grid)
    })
}

/// Interval enclosure of `D` on a cell for the trigonometric families.
enum Enclosure {
    /// `-x sec⁴(x/p) / (8p³) · Σ c_i sin(n_i x / p)`
    General {
        p: f64,
        eight_p3: f64,
        terms: [(f64, f64); 4],
    },
    /// `-x/(4k³) Σ_{j<k} (2j+1)³ sin((2j+1) x / (2k))`
    EvenSum { k: u32 },
    /// `-16x/p³ Σ_{j=1}^{k} j³ sin(2j x / p)`
    OddSum { k: u32 },
}

impl Enclosure {
    fn for_family(family: FamilyKind, p: ParamInt) -> Result<Self> {
        let n = p.get();
        Ok(match family {
            FamilyKind::TrigCos => {
                let pf = p.as_f64();
                let coeffs = general_coefficients(family, pf)?;
                // integers below 2^53 for every p this crate accepts in practice
                Enclosure::General {
                    p: pf,
                    eight_p3: 8.0 * pf * pf * pf,
                    terms: coeffs.terms(pf),
                }
            }
            // the sine general form cancels down to O(x⁵); the sum forms have
            // positive terms only and enclose tightly
            FamilyKind::TrigSin if n.is_multiple_of(2) => Enclosure::EvenSum { k: n / 2 },
            FamilyKind::TrigSin => Enclosure::OddSum { k: (n - 1) / 2 },
            other => return Err(Error::Mode(format!("no interval enclosure for the {other} family"))),
        })
    }

    fn eval(&self, x: Interval) -> Interval {
        match *self {
            Enclosure::General { p, eight_p3, terms } => {
                let pi = Interval::point(p);
                let sec4 = (x / pi).sec4();
                let prefactor = -((x * sec4) / Interval::point(eight_p3));
                let mut bracket = Interval::point(0.0);
                for (c, n) in terms {
                    let arg = Interval::point(n) / pi * x;
                    bracket = bracket + arg.sin() * c;
                }
                prefactor * bracket
            }
            Enclosure::EvenSum { k } => {
                let two_k = Interval::point(f64::from(2 * k));
                let mut sum = Interval::point(0.0);
                for j in 0..k {
                    let m = f64::from(2 * j + 1);
                    let arg = Interval::point(m) / two_k * x;
                    sum = sum + arg.sin() * (m * m * m);
                }
                let kf = f64::from(k);
                -((x * sum) / Interval::point(4.0 * kf * kf * kf))
            }
            Enclosure::OddSum { k } => {
                let pf = f64::from(2 * k + 1);
                let pi = Interval::point(pf);
                let mut sum = Interval::point(0.0);
                for j in 1..=k {
                    let jf = f64::from(j);
                    let arg = Interval::point(2.0 * jf) / pi * x;
                    sum = sum + arg.sin() * (jf * jf * jf);
                }
                -((x * sum * 16.0) / Interval::point(pf * pf * pf))
            }
        }
    }
}

fn sign_rigorous(
    family: FamilyKind,
    p: ParamInt,
    expected: ExpectedSign,
    cfg: &VerificationConfig,
    claim_id: String,
) -> Result<VerificationReport> {
    let enclosure = Enclosure::for_family(family, p)?;
    let s = expected.signum();
    let root = Interval::new(cfg.interior_margin, HALF_PI - cfg.interior_margin);
    let mut stack = vec![(root, 0u32)];
    let mut worst = Worst::new();
    let mut cells = 0u64;
    let report = |w: Worst, status, cells| w.report(claim_id.clone(), status, cells, Mode::Rigorous);
    while let Some((cell, depth)) = stack.pop() {
        cells += 1;
        let mut enc = enclosure.eval(cell);
        if s < 0.0 {
            enc = -enc;
        }
        if enc.is_positive() {
            worst.observe(enc.lo(), cell.mid(), None);
        } else if enc.is_negative() {
            // the whole cell is on the wrong side, so its midpoint is a
            // counterexample
            let x = cell.mid();
            let margin = s * d_general(family, p.as_f64(), x)?;
            let w = Worst { margin, x, param: None };
            return Ok(report(w, Status::Falsified, cells));
        } else if depth < cfg.max_subdivisions {
            let (left, right) = cell.bisect();
            stack.push((right, depth + 1));
            stack.push((left, depth + 1));
        } else {
            let w = Worst {
                margin: enc.lo(),
                x: cell.mid(),
                param: None,
            };
            return Ok(report(w, Status::Inconclusive, cells));
        }
    }
    Ok(report(worst, Status::Certified, cells))
}

/// Strict monotonicity of `f` along the interior grid in the direction
/// predicted by [`direction`].
pub fn verify_monotonicity(family: FamilyKind, p: ParamInt, cfg: &VerificationConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let dir = direction(family, p);
    let s = dir.signum();
    let grid = interior_grid(cfg.grid_points, cfg.interior_margin);
    let values = grid
        .iter()
        .map(|&x| eval_f(family, p.as_f64(), x))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = Worst::new();
    for (i, w) in values.windows(2).enumerate() {
        worst.observe(s * (w[1] - w[0]), grid[i], None);
    }
    Ok(worst.strict(
        format!("monotonicity/{family}/p={p}/{}", dir.as_str()),
        (grid.len() - 1) as u64,
    ))
}

/// `lower < f(x) < upper` on the interior grid with the computed envelope.
pub fn verify_envelope(family: FamilyKind, p: ParamInt, cfg: &VerificationConfig) -> Result<VerificationReport> {
    let env = envelope_constants(family, p);
    let mut report = verify_bounds(family, p, env.lower, env.upper, cfg)?;
    report.claim_id = format!("envelope/{family}/p={p}");
    Ok(report)
}

/// [`verify_envelope`] with caller-supplied constants.
pub fn verify_bounds(
    family: FamilyKind,
    p: ParamInt,
    lower: f64,
    upper: f64,
    cfg: &VerificationConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let grid = interior_grid(cfg.grid_points, cfg.interior_margin);
    let mut worst = Worst::new();
    for &x in &grid {
        let f = eval_f(family, p.as_f64(), x)?;
        worst.observe((f - lower).min(upper - f), x, None);
    }
    Ok(worst.strict(format!("bounds/{family}/p={p}"), grid.len() as u64))
}

/// The sign, monotonicity and envelope claims for one `(family, p)`, with
/// the expected sign of `D` taken from the monotonicity direction.
pub fn verify_claims(family: FamilyKind, p: ParamInt, cfg: &VerificationConfig) -> Result<Vec<VerificationReport>> {
    let expected = ExpectedSign::from(direction(family, p));
    let grid_cfg = cfg.with_mode(Mode::Grid);
    Ok(vec![
        verify_sign_d(family, p, expected, cfg)?,
        verify_monotonicity(family, p, &grid_cfg)?,
        verify_envelope(family, p, &grid_cfg)?,
    ])
}

/// Parameters of the closed-form vs finite-difference check.
pub const NUMERIC_CHECK_PARAMS: [f64; 6] = [2.0, 2.5, 3.0, 4.0, 7.0, -2.0];

/// Grid size of the Dirichlet and Chebyshev identity checks.
pub const IDENTITY_POINTS: usize = 100;

/// Signature of a replacement for [`d_general`] in [`verify_identities_with`].
pub type GeneralForm<'a> = &'a dyn Fn(FamilyKind, f64, f64) -> Result<f64>;

/// The full identity suite with the library's own [`d_general`].
pub fn verify_identities(cfg: &VerificationConfig) -> Result<Vec<VerificationReport>> {
    verify_identities_with(cfg, &d_general)
}

/// The identity suite with `general` standing in for the closed form, so a
/// perturbed implementation can be checked for detection.
///
/// Reports, in order: `form_agreement_even`, `form_agreement_odd_cos`,
/// `form_agreement_odd_sin`, `general_vs_numeric`, `dirichlet_sum`,
/// `vanishing_limits`, `chebyshev_trig_identity`. The form-agreement and
/// closed-vs-numeric checks run on `grid_points` Chebyshev nodes of
/// `(0.05, π/2 - 0.05)`; the Dirichlet and Chebyshev identities on a fixed
/// [`IDENTITY_POINTS`]-point grid of `(0, π)`.
pub fn verify_identities_with(cfg: &VerificationConfig, general: GeneralForm<'_>) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let n = cfg.grid_points;
    let nodes = chebyshev_nodes(n, 0.05, HALF_PI - 0.05);
    let mut reports = Vec::with_capacity(7);

    let agreement = |name: &str,
                     family: FamilyKind,
                     p_of: fn(u32) -> f64,
                     sum: &dyn Fn(u32, f64) -> Result<f64>|
     -> Result<VerificationReport> {
        let mut worst = Worst::new();
        let mut cells = 0;
        for k in 1..=6u32 {
            for &x in &nodes {
                let s = sum(k, x)?;
                let g = general(family, p_of(k), x)?;
                worst.observe(1e-12 * s.abs() - (g - s).abs(), x, Some(f64::from(k)));
                cells += 1;
            }
        }
        Ok(worst.strict(name.to_string(), cells))
    };
    reports.push(agreement(
        "form_agreement_even",
        FamilyKind::TrigSin,
        |k| f64::from(2 * k),
        &d_sum_even_sin,
    )?);
    reports.push(agreement(
        "form_agreement_odd_cos",
        FamilyKind::TrigCos,
        |k| f64::from(2 * k + 1),
        &|k, x| d_sum_odd(FamilyKind::TrigCos, k, x),
    )?);
    reports.push(agreement(
        "form_agreement_odd_sin",
        FamilyKind::TrigSin,
        |k| f64::from(2 * k + 1),
        &|k, x| d_sum_odd(FamilyKind::TrigSin, k, x),
    )?);

    let mut worst = Worst::new();
    let mut cells = 0;
    for family in [FamilyKind::TrigCos, FamilyKind::TrigSin] {
        for p in NUMERIC_CHECK_PARAMS {
            let mut fd = NumericDerivative::new(family, p, HYPERBOLIC_STEP)?;
            for &x in &nodes {
                let diff = (general(family, p, x)? - fd.estimate(x)?.value).abs();
                worst.observe(1e-5 - diff, x, Some(p));
                cells += 1;
            }
        }
    }
    reports.push(worst.strict("general_vs_numeric".into(), cells));

    let mut worst = Worst::new();
    let mut cells = 0;
    for k in 1..=10u32 {
        for x in open_grid(IDENTITY_POINTS, PI) {
            let (sum, closed) = dirichlet_sum(k, x)?;
            worst.observe(1e-13 * closed.abs() - (sum - closed).abs(), x, Some(f64::from(k)));
            cells += 1;
        }
    }
    reports.push(worst.strict("dirichlet_sum".into(), cells));

    let mut worst = Worst::new();
    let mut cells = 0;
    for family in FamilyKind::ALL {
        for p in 2..=8u32 {
            let (dg, g) = vanishing_limits_check(family, f64::from(p))?;
            worst.observe(1e-8 - dg.abs().max(g.abs()), 0.0, Some(f64::from(p)));
            cells += 1;
        }
    }
    reports.push(worst.strict("vanishing_limits".into(), cells));

    let mut worst = Worst::new();
    let mut cells = 0;
    for deg in 0..=30usize {
        for theta in open_grid(IDENTITY_POINTS, PI) {
            let lhs = cheb_u_eval(deg, theta.cos())? * theta.sin();
            let rhs = ((deg + 1) as f64 * theta).sin();
            worst.observe(1e-11 - (lhs - rhs).abs(), theta, Some(deg as f64));
            cells += 1;
        }
    }
    reports.push(worst.strict("chebyshev_trig_identity".into(), cells));

    Ok(reports)
}
