use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stammer_core::automata::Alignment;
use stammer_core::expansions::{Beta, ExponentSet};
use stammer_core::numeric::{is_prime, Rational};
use stammer_core::poly::IntPoly;
use stammer_core::Exponent;

use crate::JobError;

#[derive(Debug, Parser)]
#[command(name = "stammer", version, about = "Generate digit sequences and audit their repetitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; `raw` only applies to `gen`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap for precision escalation in bits.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub precision_bits: u32,
    /// Prefix length scanned for periodicity, recurrence and agreement.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub scan_limit: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of the sequence.
    Gen {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 64)]
        count: usize,
    },
    /// Factor counts p(n) for n = 1..nmax.
    Complexity {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        /// Prefix length; defaults to max(10^5, 64·nmax).
        #[arg(long)]
        window: Option<usize>,
    },
    /// One extracted witness per n.
    Stammer {
        #[command(flatten)]
        source: SourceArgs,
        /// A single n or an inclusive range `a..b`.
        #[arg(long, default_value = "1..20")]
        n: String,
        #[arg(long, default_value_t = 2)]
        kappa: usize,
    },
    /// A witness sequence from the construction matching the source.
    Witness {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Periodic approximant from the first r+s digits.
    Approx {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Height and linear-form audit of each verified witness.
    Audit {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        plan: PlanArgs,
        /// Skip witnesses with |V| below this.
        #[arg(long, default_value_t = 1)]
        min_s: usize,
    },
    /// Pisot / Salem / neither for a monic polynomial.
    Classify {
        /// Coefficients, highest degree first, e.g. `1,-1,-1`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Criterion report in JSON.
    Report {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        plan: PlanArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "b_adic")]
    BAdic,
    Beta,
    Hensel,
    Pattern,
    Lacunary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Align {
    #[default]
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    #[default]
    Auto,
    Automatic,
    Morphic,
    Hunt,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SourceArgs {
    /// k-automaton file.
    #[arg(long)]
    pub automaton: Option<PathBuf>,
    /// Index i holds a_{i-1} (`zero`) or a_i (`one`).
    #[arg(long, value_enum, default_value_t = Align::Zero)]
    pub align: Align,
    /// Morphism file; the sequence is its fixed point.
    #[arg(long)]
    pub morphism: Option<PathBuf>,
    /// Start letter overriding the file's `start` line.
    #[arg(long)]
    pub start: Option<String>,
    /// Morphism file applied to the fixed point.
    #[arg(long)]
    pub coding: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// Rational number `p/q` (the p-adic number for `hensel`).
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long)]
    pub base: Option<u64>,
    #[arg(long)]
    pub prime: Option<u64>,
    /// Digit pattern for `pattern`, e.g. `1` or `11`.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Radix in which patterns are counted.
    #[arg(long)]
    pub k: Option<u64>,
    /// `pow:B`, `squares` or a comma-separated list.
    #[arg(long)]
    pub exponents: Option<String>,
    /// `golden` or an integer.
    #[arg(long)]
    pub beta: Option<String>,
    /// Minimal polynomial of β, highest degree first.
    #[arg(long, allow_hyphen_values = true)]
    pub beta_poly: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    #[arg(long, default_value_t = 15)]
    pub count: usize,
    #[arg(long, default_value = "3/2")]
    pub wmin: String,
    #[arg(long, default_value = "4")]
    pub ratio_cap: String,
    /// Prefix length searched by the hunt.
    #[arg(long, default_value_t = 2000)]
    pub hunt_len: usize,
}

/// Where the sequence comes from.
#[derive(Debug, Clone)]
pub enum SourceSpec {
    Automaton { path: PathBuf, align: Alignment },
    Morphism { path: PathBuf, start: Option<String>, coding: Option<PathBuf> },
    BAdic { xi: Rational, base: u64 },
    Beta { xi: Rational, beta: Beta },
    Hensel { alpha: Rational, prime: u64 },
    Pattern { k: u64, pattern: Vec<u32>, base: u64 },
    Lacunary { exponents: ExponentSet, base: u64 },
}

/// The base attached to the digits when they are read as a number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumberBase {
    Integer(u64),
    Beta(Beta),
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPlan {
    pub method: Method,
    pub count: usize,
    pub w_min: Exponent,
    pub ratio_cap: Exponent,
    pub hunt_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Analysis {
    Gen { count: usize },
    Complexity { n_max: usize, window: usize },
    Stammer { n_from: usize, n_to: usize, kappa: usize },
    Witness(WitnessPlan),
    Approx { r: usize, s: usize },
    Audit { plan: WitnessPlan, min_s: usize },
    Classify { poly: IntPoly },
    Report(WitnessPlan),
}

/// One validated job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    /// `None` only for `classify`.
    pub source: Option<SourceSpec>,
    pub base: NumberBase,
    pub analysis: Analysis,
    pub format: Format,
    pub seed: u64,
    pub precision_bits: u32,
    pub scan_limit: usize,
}

fn invalid(msg: impl Into<String>) -> JobError {
    JobError::new("InvalidArgument", msg)
}

fn parse_rational(flag: &str, text: &str) -> Result<Rational, JobError> {
    Rational::from_str(text.trim()).map_err(|_| invalid(format!("--{flag}: {text:?} is not a rational p/q")))
}

fn parse_exponent(flag: &str, text: &str) -> Result<Exponent, JobError> {
    Exponent::from_str(text.trim()).map_err(|_| invalid(format!("--{flag}: {text:?} is not a rational p/q")))
}

fn parse_poly(flag: &str, text: &str) -> Result<IntPoly, JobError> {
    IntPoly::parse_high_first(text).map_err(|e| invalid(format!("--{flag}: {e}")))
}

fn parse_beta(args: &SourceArgs) -> Result<Option<Beta>, JobError> {
    match (&args.beta, &args.beta_poly) {
        (Some(_), Some(_)) => Err(invalid("give --beta or --beta-poly, not both")),
        (Some(b), None) if b == "golden" => Ok(Some(Beta::golden())),
        (Some(b), None) => {
            let n: u64 =
                b.parse().map_err(|_| invalid(format!("--beta: expected `golden` or an integer, got {b:?}")))?;
            if n < 2 {
                return Err(invalid("--beta must be at least 2"));
            }
            Ok(Some(Beta::Integer(n)))
        }
        (None, Some(p)) => {
            let poly = parse_poly("beta-poly", p)?;
            Beta::from_poly(&poly).map(Some).map_err(JobError::from)
        }
        (None, None) => Ok(None),
    }
}

fn parse_n_range(text: &str) -> Result<(usize, usize), JobError> {
    let bad = || invalid(format!("--n: expected `N` or `A..B`, got {text:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a == 0 || a > b {
        return Err(invalid(format!("--n: need 1 ≤ a ≤ b, got {a}..{b}")));
    }
    Ok((a, b))
}

fn need<T: Clone>(v: &Option<T>, flag: &str, kind: &str) -> Result<T, JobError> {
    v.clone().ok_or_else(|| invalid(format!("--kind {kind} needs --{flag}")))
}

fn check_base(b: u64, flag: &str) -> Result<u64, JobError> {
    if !(2..=u32::MAX as u64).contains(&b) {
        return Err(invalid(format!("--{flag} must be in 2..2^32, got {b}")));
    }
    Ok(b)
}

fn check_prime(p: u64) -> Result<u64, JobError> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(invalid(format!("--prime: {p} is not a prime below 2^32")));
    }
    Ok(p)
}

impl SourceArgs {
    fn source(&self) -> Result<SourceSpec, JobError> {
        let given = [self.automaton.is_some(), self.morphism.is_some(), self.kind.is_some()];
        match given.iter().filter(|&&g| g).count() {
            0 => return Err(invalid("no source: give --automaton, --morphism or --kind")),
            1 => {}
            _ => return Err(invalid("give exactly one of --automaton, --morphism, --kind")),
        }
        if self.coding.is_some() && self.morphism.is_none() {
            return Err(invalid("--coding needs --morphism"));
        }
        if self.start.is_some() && self.morphism.is_none() {
            return Err(invalid("--start needs --morphism"));
        }
        if let Some(path) = &self.automaton {
            let align = match self.align {
                Align::Zero => Alignment::FromZero,
                Align::One => Alignment::FromOne,
            };
            return Ok(SourceSpec::Automaton { path: path.clone(), align });
        }
        if let Some(path) = &self.morphism {
            return Ok(SourceSpec::Morphism {
                path: path.clone(),
                start: self.start.clone(),
                coding: self.coding.clone(),
            });
        }
        let kind = self.kind.expect("one source is present");
        Ok(match kind {
            Kind::BAdic => SourceSpec::BAdic {
                xi: parse_rational("xi", &need(&self.xi, "xi", "b_adic")?)?,
                base: check_base(self.base.unwrap_or(10), "base")?,
            },
            Kind::Beta => SourceSpec::Beta {
                xi: parse_rational("xi", &need(&self.xi, "xi", "beta")?)?,
                beta: parse_beta(self)?.ok_or_else(|| invalid("--kind beta needs --beta or --beta-poly"))?,
            },
            Kind::Hensel => SourceSpec::Hensel {
                alpha: parse_rational("xi", &need(&self.xi, "xi", "hensel")?)?,
                prime: check_prime(need(&self.prime, "prime", "hensel")?)?,
            },
            Kind::Pattern => {
                let k = check_base(self.k.unwrap_or(2), "k")?;
                let text = need(&self.pattern, "pattern", "pattern")?;
                let pattern = text
                    .chars()
                    .map(|c| c.to_digit(36).filter(|&d| (d as u64) < k))
                    .collect::<Option<Vec<u32>>>()
                    .ok_or_else(|| invalid(format!("--pattern: {text:?} is not a base-{k} digit string")))?;
                SourceSpec::Pattern { k, pattern, base: check_base(self.base.unwrap_or(2), "base")? }
            }
            Kind::Lacunary => SourceSpec::Lacunary {
                exponents: ExponentSet::parse(&need(&self.exponents, "exponents", "lacunary")?)?,
                base: check_base(self.base.unwrap_or(2), "base")?,
            },
        })
    }

    fn number_base(&self, source: &SourceSpec) -> Result<NumberBase, JobError> {
        let beta = parse_beta(self)?;
        Ok(match source {
            SourceSpec::BAdic { base, .. } | SourceSpec::Pattern { base, .. } | SourceSpec::Lacunary { base, .. } => {
                NumberBase::Integer(*base)
            }
            SourceSpec::Beta { beta, .. } => NumberBase::Beta(beta.clone()),
            SourceSpec::Hensel { prime, .. } => NumberBase::Prime(*prime),
            SourceSpec::Automaton { .. } | SourceSpec::Morphism { .. } => match (self.base, self.prime, beta) {
                (None, None, None) => NumberBase::Integer(2),
                (Some(b), None, None) => NumberBase::Integer(check_base(b, "base")?),
                (None, Some(p), None) => NumberBase::Prime(check_prime(p)?),
                (None, None, Some(b)) => NumberBase::Beta(b),
                _ => return Err(invalid("give at most one of --base, --prime, --beta, --beta-poly")),
            },
        })
    }
}

impl PlanArgs {
    fn plan(&self) -> Result<WitnessPlan, JobError> {
        let w_min = parse_exponent("wmin", &self.wmin)?;
        if w_min <= Exponent::from_integer(1) {
            return Err(invalid(format!("--wmin must exceed 1, got {w_min}")));
        }
        if self.count == 0 || self.hunt_len < 2 {
            return Err(invalid("--count must be positive and --hunt-len at least 2"));
        }
        Ok(WitnessPlan {
            method: self.method,
            count: self.count,
            w_min,
            ratio_cap: parse_exponent("ratio-cap", &self.ratio_cap)?,
            hunt_len: self.hunt_len,
        })
    }
}

impl JobConfig {
    /// Validates the parsed command line.
    pub fn from_cli(cli: &Cli) -> Result<JobConfig, JobError> {
        if cli.precision_bits < 8 {
            return Err(invalid(format!("--precision-bits must be at least 8, got {}", cli.precision_bits)));
        }
        if cli.scan_limit < 2 {
            return Err(invalid("--scan-limit must be at least 2"));
        }
        let (source_args, analysis) = match &cli.command {
            Command::Gen { source, count } => (Some(source), Analysis::Gen { count: *count }),
            Command::Complexity { source, nmax, window } => {
                if *nmax == 0 {
                    return Err(invalid("--nmax must be positive"));
                }
                let window = window.unwrap_or_else(|| stammer_core::complexity::default_window(*nmax));
                if window < 2 * nmax {
                    return Err(invalid(format!("--window must be at least 2·nmax = {}", 2 * nmax)));
                }
                (Some(source), Analysis::Complexity { n_max: *nmax, window })
            }
            Command::Stammer { source, n, kappa } => {
                let (n_from, n_to) = parse_n_range(n)?;
                if *kappa < 2 {
                    return Err(invalid(format!("--kappa must be at least 2, got {kappa}")));
                }
                (Some(source), Analysis::Stammer { n_from, n_to, kappa: *kappa })
            }
            Command::Witness { source, plan } => (Some(source), Analysis::Witness(plan.plan()?)),
            Command::Approx { source, r, s } => {
                if *s == 0 {
                    return Err(invalid("--s must be positive"));
                }
                (Some(source), Analysis::Approx { r: *r, s: *s })
            }
            Command::Audit { source, plan, min_s } => {
                (Some(source), Analysis::Audit { plan: plan.plan()?, min_s: *min_s })
            }
            Command::Classify { poly } => (None, Analysis::Classify { poly: parse_poly("poly", poly)? }),
            Command::Report { source, plan } => (Some(source), Analysis::Report(plan.plan()?)),
        };
        let (source, base) = match source_args {
            Some(a) => {
                let s = a.source()?;
                let b = a.number_base(&s)?;
                (Some(s), b)
            }
            None => (None, NumberBase::Integer(2)),
        };
        if let (Some(src), Analysis::Witness(p) | Analysis::Audit { plan: p, .. } | Analysis::Report(p)) =
            (&source, &analysis)
        {
            match (p.method, src) {
                (Method::Automatic, SourceSpec::Automaton { align: Alignment::FromZero, .. }) => {}
                (Method::Automatic, _) => {
                    return Err(invalid("--method automatic needs a zero-aligned --automaton source"))
                }
                (Method::Morphic, SourceSpec::Morphism { coding: None, .. }) => {}
                (Method::Morphic, _) => return Err(invalid("--method morphic needs --morphism without --coding")),
                _ => {}
            }
        }
        if matches!(analysis, Analysis::Audit { .. }) && !matches!(base, NumberBase::Integer(_)) {
            return Err(invalid("audit needs an integer base"));
        }
        let format = match (cli.format, &analysis) {
            (None, Analysis::Gen { .. }) => Format::Raw,
            (None, Analysis::Report(_)) => Format::Json,
            (None, _) => Format::Tsv,
            (Some(Format::Raw), Analysis::Gen { .. }) => Format::Raw,
            (Some(Format::Raw), _) => return Err(invalid("--format raw only applies to gen")),
            (Some(Format::Tsv), Analysis::Report(_)) => return Err(invalid("report is only available as json")),
            (Some(f), _) => f,
        };
        Ok(JobConfig {
            source,
            base,
            analysis,
            format,
            seed: cli.seed,
            precision_bits: cli.precision_bits,
            scan_limit: cli.scan_limit,
        })
    }

    /// Parses and validates command-line arguments (without the program name).
    pub fn from_args<I, S>(args: I) -> Result<JobConfig, JobError>
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        let argv = std::iter::once(std::ffi::OsString::from("stammer")).chain(args.into_iter().map(Into::into));
        let cli = Cli::try_parse_from(argv).map_err(|e| JobError::new("Usage", e.to_string().trim_end()))?;
        JobConfig::from_cli(&cli)
    }
}
