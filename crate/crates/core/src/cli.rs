//! Command-line front end.
//!
//! Exit codes: 0 success or all claims CERTIFIED, 1 any claim FALSIFIED,
//! 2 any claim INCONCLUSIVE (and none FALSIFIED), 64 usage error, 65 domain
//! or parameter error, 74 output file error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::certifier::{verify_claims, Mode, Status, VerificationConfig, VerificationReport};
use crate::chebyshev::{cheb_u_eval, corollary_bounds};
use crate::envelopes::envelope_constants;
use crate::error::Error;
use crate::ratio::{eval_f, eval_ratio, limit_at_half_pi, limit_at_zero, FamilyKind, ParamInt, HALF_PI};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;
pub const EXIT_IO: i32 = 74;

/// Parses a plain decimal, `pi`, or `pi/N` for a nonzero integer `N`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let lower = t.to_ascii_lowercase();
    if lower == "pi" {
        return Ok(std::f64::consts::PI);
    }
    if let Some(den) = lower.strip_prefix("pi/") {
        let n: i64 = den
            .parse()
            .map_err(|_| format!("expected pi/N with integer N, got {s:?}"))?;
        if n == 0 {
            return Err("pi/0 is undefined".into());
        }
        return Ok(std::f64::consts::PI / n as f64);
    }
    let v: f64 = t
        .parse()
        .map_err(|_| format!("expected a decimal number or pi/N, got {s:?}"))?;
    if !v.is_finite() {
        return Err(format!("expected a finite number, got {s:?}"));
    }
    Ok(v)
}

#[derive(Debug, Parser)]
#[command(
    name = "dsineq",
    version,
    about = "Ratio inequalities for cos x/cos(x/p) and sin x/sin(x/p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Grid,
    Rigorous,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Grid => Mode::Grid,
            ModeArg::Rigorous => Mode::Rigorous,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate f and the raw ratio at one point.
    Eval {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
        x: f64,
    },
    /// Print the envelope constants for one family and integer p.
    Bounds {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        p: u32,
    },
    /// Certify the sign, monotonicity and envelope claims.
    Verify {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "grid")]
        mode: ModeArg,
        #[arg(long, default_value_t = 2048)]
        grid_points: usize,
        #[arg(long, value_parser = parse_number, default_value = "1e-3")]
        interior_margin: f64,
        /// Emit the reports as a JSON array.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate U_n(t), or the bounds on U_{p-1}(cos y).
    Cheb {
        #[arg(long, requires = "t", conflicts_with_all = ["p", "y"])]
        n: Option<usize>,
        #[arg(long, requires = "n", value_parser = parse_number, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long, requires = "y")]
        p: Option<u32>,
        #[arg(long, requires = "p", value_parser = parse_number, allow_hyphen_values = true)]
        y: Option<f64>,
    },
    /// Write a CSV table of f and its envelope over the interior.
    Table {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Mode(m) => Failure::Usage(m),
            Error::Config(m) => Failure::Usage(m),
            other => Failure::Domain(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Runs the CLI on `argv` (including the program name) against the process
/// standard streams.
pub fn run<S: AsRef<str>>(argv: &[S]) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output and error streams.
pub fn run_with<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{e}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "i/o error: {m}");
            EXIT_IO
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Eval { family, p, x } => {
            let f = eval_f(family, p, x)?;
            writeln!(out, "family {family}")?;
            writeln!(out, "p {p}")?;
            writeln!(out, "x {x}")?;
            writeln!(out, "f {f}")?;
            if x > 0.0 {
                writeln!(out, "ratio {}", eval_ratio(family, p, x)?)?;
            }
            if p.fract() == 0.0 && p >= 2.0 && p <= f64::from(u32::MAX) {
                let env = envelope_constants(family, ParamInt::new(p as u32)?);
                writeln!(out, "lower {}", env.lower)?;
                writeln!(out, "upper {}", env.upper)?;
            }
            Ok(EXIT_OK)
        }
        Command::Bounds { family, p } => {
            let p = ParamInt::new(p)?;
            let env = envelope_constants(family, p);
            writeln!(out, "family {family}")?;
            writeln!(out, "p {p}")?;
            writeln!(out, "lower {}", env.lower)?;
            writeln!(out, "upper {}", env.upper)?;
            writeln!(out, "direction {}", env.direction.as_str())?;
            writeln!(out, "limit_at_zero {}", limit_at_zero(family, p))?;
            writeln!(out, "limit_at_half_pi {}", limit_at_half_pi(family, p))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            family,
            p,
            mode,
            grid_points,
            interior_margin,
            json,
        } => {
            let cfg = VerificationConfig {
                grid_points,
                interior_margin,
                mode: mode.into(),
                ..VerificationConfig::default()
            };
            cfg.validate()?;
            let p = ParamInt::new(p)?;
            let reports = verify_claims(family, p, &cfg)?;
            if json {
                let text = serde_json::to_string_pretty(&reports).map_err(|e| Failure::Io(e.to_string()))?;
                writeln!(out, "{text}")?;
            } else {
                for r in &reports {
                    writeln!(out, "{r}")?;
                }
            }
            Ok(exit_code(&reports))
        }
        Command::Cheb { n, t, p, y } => match (n, t, p, y) {
            (Some(n), Some(t), None, None) => {
                writeln!(out, "U_{n}({t}) {}", cheb_u_eval(n, t)?)?;
                Ok(EXIT_OK)
            }
            (None, None, Some(p), Some(y)) => {
                let p = ParamInt::new(p)?;
                let (lo, hi) = corollary_bounds(p, y)?;
                let value = cheb_u_eval(p.get() as usize - 1, y.cos())?;
                writeln!(out, "lo {lo}")?;
                writeln!(out, "value {value}")?;
                writeln!(out, "hi {hi}")?;
                Ok(EXIT_OK)
            }
            _ => Err(Failure::Usage("cheb needs either --n and --t, or --p and --y".into())),
        },
        Command::Table {
            family,
            p,
            points,
            out: path,
        } => {
            if points < 2 {
                return Err(Failure::Usage(format!("--points must be >= 2, got {points}")));
            }
            let p = ParamInt::new(p)?;
            let rows = write_table(family, p, points, &path)?;
            writeln!(out, "wrote {rows} rows to {}", path.display())?;
            Ok(EXIT_OK)
        }
    }
}

/// 1 if any report is FALSIFIED, else 2 if any is INCONCLUSIVE, else 0.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Falsified) {
        EXIT_FALSIFIED
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

pub const TABLE_HEADER: &str = "x,f,lower,upper,margin_lower,margin_upper";

/// `x_i = (π/2) · i / (points + 1)` for `i = 1..=points`.
fn write_table(family: FamilyKind, p: ParamInt, points: usize, path: &Path) -> Result<usize, Failure> {
    let env = envelope_constants(family, p);
    let mut rows = Vec::with_capacity(points);
    for i in 1..=points {
        let x = HALF_PI * i as f64 / (points + 1) as f64;
        let f = eval_f(family, p.as_f64(), x)?;
        rows.push([x, f, env.lower, env.upper, f - env.lower, env.upper - f]);
    }
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{TABLE_HEADER}")?;
    for row in &rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    w.flush()?;
    Ok(rows.len())
}
