//! Command-line grammar.

use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finfourier::polyfamilies::Family;
use finfourier::transforms::MethodId;

pub const MIN_TOL: f64 = 1e-13;
pub const MAX_TOL: f64 = 1e-2;

#[derive(Parser, Debug)]
#[command(
    name = "finfourier",
    version,
    about = "Finite Fourier transforms of classical orthogonal polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Transform of one polynomial at one λ
    Transform(TransformArgs),
    /// Rows over a degree range and a λ-grid
    Table(TableArgs),
    /// Run the verification suites
    Verify(VerifyArgs),
    /// Parseval partial sum of the Fourier-coefficient pairing
    Parseval(ParsevalArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Legendre,
    Jacobi,
    Gegenbauer,
    ChebyshevT,
    ChebyshevU,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
}

impl FamilyArgs {
    /// The family, rejecting parameters that do not belong to it.
    pub fn family(&self) -> Result<Family, String> {
        let stray = |names: &[(&str, bool)]| -> Result<(), String> {
            match names.iter().find(|(_, given)| *given) {
                Some((name, _)) => Err(format!("--{name} does not apply to --family {}", self.family.as_str())),
                None => Ok(()),
            }
        };
        let (a, b, nu) = (self.alpha.is_some(), self.beta.is_some(), self.nu.is_some());
        match self.family {
            FamilyName::Jacobi => {
                stray(&[("nu", nu)])?;
                Ok(Family::Jacobi {
                    alpha: self.alpha.unwrap_or(0.0),
                    beta: self.beta.unwrap_or(0.0),
                })
            }
            FamilyName::Gegenbauer => {
                stray(&[("alpha", a), ("beta", b)])?;
                let nu = self.nu.ok_or("--family gegenbauer needs --nu")?;
                Ok(Family::Gegenbauer { nu })
            }
            other => {
                stray(&[("alpha", a), ("beta", b), ("nu", nu)])?;
                Ok(match other {
                    FamilyName::Legendre => Family::Legendre,
                    FamilyName::ChebyshevT => Family::ChebyshevT,
                    _ => Family::ChebyshevU,
                })
            }
        }
    }
}

impl FamilyName {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Legendre => "legendre",
            FamilyName::Jacobi => "jacobi",
            FamilyName::Gegenbauer => "gegenbauer",
            FamilyName::ChebyshevT => "chebyshev-t",
            FamilyName::ChebyshevU => "chebyshev-u",
        }
    }
}

/// `auto`, `all` or a single method id.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    All,
    One(MethodId),
}

impl FromStr for MethodChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "all" => Ok(MethodChoice::All),
            _ => s.parse::<MethodId>().map(MethodChoice::One).map_err(|_| {
                let ids: Vec<_> = MethodId::ALL.iter().map(|m| m.as_str()).collect();
                format!("unknown method `{s}` (expected auto, all or one of {})", ids.join(", "))
            }),
        }
    }
}

impl MethodChoice {
    /// Methods to evaluate for `family`; `None` stands for the dispatcher.
    pub fn expand(self, family: &Family) -> Vec<Option<MethodId>> {
        match self {
            MethodChoice::Auto => vec![None],
            MethodChoice::All => MethodId::named_forms(family).into_iter().map(Some).collect(),
            MethodChoice::One(m) => vec![Some(m)],
        }
    }
}

/// Uniform grid with inclusive endpoints.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LambdaGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl FromStr for LambdaGrid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("expected START:STOP:COUNT, got `{s}`"));
        };
        let real = |t: &str| t.trim().parse::<f64>().ok().filter(|x| x.is_finite());
        let (Some(start), Some(stop)) = (real(start), real(stop)) else {
            return Err(format!("grid endpoints must be finite reals in `{s}`"));
        };
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("grid count must be an integer in `{s}`"))?;
        if count < 2 {
            return Err("grid count must be at least 2".into());
        }
        if start >= stop {
            return Err("grid start must be below its stop".into());
        }
        Ok(LambdaGrid { start, stop, count })
    }
}

impl LambdaGrid {
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| match k {
                0 => self.start,
                _ if k == self.count - 1 => self.stop,
                _ => self.start + (self.stop - self.start) * (k as f64 / last),
            })
            .collect()
    }
}

/// A single degree `N` or an inclusive range `A..B`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub first: usize,
    pub last: usize,
}

impl FromStr for Degrees {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid degree `{t}`"));
        match s.split_once("..") {
            None => int(s).map(|n| Degrees { first: n, last: n }),
            Some((a, b)) => {
                let (first, last) = (int(a)?, int(b.trim_start_matches('='))?);
                if first > last {
                    return Err(format!("empty degree range `{s}`"));
                }
                Ok(Degrees { first, last })
            }
        }
    }
}

impl fmt::Display for Degrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.last {
            write!(f, "{}", self.first)
        } else {
            write!(f, "{}..{}", self.first, self.last)
        }
    }
}

pub fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("invalid tolerance `{s}`"))?;
    if (MIN_TOL..=MAX_TOL).contains(&t) {
        Ok(t)
    } else {
        Err(format!("tolerance must lie in [{MIN_TOL:e}, {MAX_TOL:e}]"))
    }
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Method id, `all` for the family's printed forms, or `auto`
    #[arg(long, default_value = "auto")]
    pub method: MethodChoice,
    /// Quadrature tolerance used by `--method oracle`
    #[arg(long, default_value = "1e-10", value_parser = parse_tol)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Degree `N` or inclusive range `A..B`
    #[arg(long)]
    pub n: Degrees,
    /// START:STOP:COUNT, endpoints included
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_grid: LambdaGrid,
    #[arg(long, default_value = "auto")]
    pub method: MethodChoice,
    #[arg(long, default_value = "1e-10", value_parser = parse_tol)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or `all`
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Seed for the randomized samples
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Quadrature tolerance of the oracle comparisons
    #[arg(long, default_value = "1e-10", value_parser = parse_tol)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ParsevalArgs {
    #[arg(long)]
    pub n: usize,
    /// Degree of the weighted partner; defaults to `--n`
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
    /// Truncation order J
    #[arg(long, default_value_t = 256)]
    pub jmax: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
