//! Command-line front end: argument grammar, literal parsing, dispatch and
//! output formatting.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 parse or validation
//! error, 3 precision loss or a structure too large to enumerate.

mod emit;
pub mod parse;
mod run;

pub use emit::{emit_dot, emit_text};
pub use run::{exit_code, run_args, run_command, Outcome};

use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::divisibility::{RingChoice, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::fields::ExtensionPair;
use crate::groups::{GroupDescriptor, GroupElement};
use crate::series::{SeriesRing, DEFAULT_BUDGET};

#[derive(Parser, Debug)]
#[command(name = "seriesring", version, about = "Divisibility and ideal lattices of K + XF[[X]] style series rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Describe an extension and the group of divisibility of its series ring.
    Info(InfoArgs),
    /// ψ of a quotient `num/den`.
    Psi(PsiArgs),
    /// Factor a member of the ring into a unit and atoms.
    Factor(FactorArgs),
    /// Decide whether the first series divides the second.
    Divides(DividesArgs),
    /// Ideal lattice of a truncation, predicted or brute-forced.
    Lattice(LatticeArgs),
    /// Run a property checker and print its report.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct RingArgs {
    /// Extension `F/K`, e.g. `gf(4)/gf(2)` or `q(r; r^3-2)/q`.
    pub extension: String,
    /// Exponent group: `z`, `q` or `z*z`.
    #[arg(long, default_value = "z")]
    pub group: String,
    /// Precision for series literals without an `O(t^τ)` term.
    #[arg(long, allow_hyphen_values = true)]
    pub precision: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct InfoArgs {
    #[command(flatten)]
    pub ring: RingArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct PsiArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub num: String,
    #[arg(long, allow_hyphen_values = true)]
    pub den: String,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct FactorArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    pub series: String,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct DividesArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    pub divisor: String,
    pub dividend: String,
    /// `s` for the ring with constant terms in `K`, `r` for all of `F[[Γ⁺]]`.
    #[arg(long = "ring", value_enum, default_value_t = Domain::S)]
    pub domain: Domain,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct LatticeArgs {
    /// Extension `F/K`.
    pub extension: String,
    /// Truncation depth `τ`; with `--generator`, the deepest level kept.
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    #[arg(long, value_enum, default_value_t = Mode::Predicted)]
    pub mode: Mode,
    /// Generate a sublattice from these nodes instead, e.g. `(1,<r>)`. Repeatable.
    #[arg(long = "generator")]
    pub generators: Vec<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct CheckArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, value_enum)]
    pub property: Property,
    /// Bound on exponent coordinates for exhaustive enumeration.
    #[arg(long, default_value_t = 3)]
    pub bound: i64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest order of sampled nonunits.
    #[arg(long, default_value_t = 8)]
    pub max_order: i64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Predicted,
    Brute,
    /// Compute both and require an exact match.
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    R,
    S,
}

impl From<Domain> for RingChoice {
    fn from(d: Domain) -> RingChoice {
        match d {
            Domain::R => RingChoice::R,
            Domain::S => RingChoice::S,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    #[value(alias = "pvd")]
    StronglyPrime,
    Atomic,
    #[value(alias = "hfd")]
    HalfFactorial,
    #[value(alias = "bvd")]
    Boundary,
    Psi,
    Hahn,
    Classify,
}

fn value_name<V: ValueEnum>(v: &V) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Info(_) => "info",
            Command::Psi(_) => "psi",
            Command::Factor(_) => "factor",
            Command::Divides(_) => "divides",
            Command::Lattice(_) => "lattice",
            Command::Check(_) => "check",
        }
    }
}

impl RingArgs {
    fn tokens(&self, flags: &mut Vec<String>, positional: &mut Vec<String>) {
        positional.push(self.extension.clone());
        flags.extend(["--group".into(), self.group.clone()]);
        if let Some(p) = &self.precision {
            flags.extend(["--precision".into(), p.clone()]);
        }
        if let Some(f) = &self.format {
            flags.extend(["--format".into(), value_name(f)]);
        }
    }

    pub fn extension(&self) -> Result<Arc<ExtensionPair>> {
        Ok(Arc::new(parse::parse_extension(&self.extension)?))
    }

    pub fn group(&self) -> Result<GroupDescriptor> {
        parse::parse_group(&self.group)
    }

    /// The series ring named by these arguments.
    pub fn series_ring(&self) -> Result<Arc<SeriesRing>> {
        let ext = self.extension()?;
        let group = self.group()?;
        let precision = match &self.precision {
            Some(p) => parse::parse_exponent(&group, p)?,
            None => default_precision(&group)?,
        };
        SeriesRing::new(ext, group, precision, DEFAULT_BUDGET)
    }
}

/// Precision used when `--precision` is absent: 8 over `z`, 4 over `q`,
/// and the first coordinate's default in products.
pub fn default_precision(g: &GroupDescriptor) -> Result<GroupElement> {
    match g {
        GroupDescriptor::Int => Ok(GroupElement::Int(8)),
        GroupDescriptor::Rational => Ok(GroupElement::Rational(num_rational::BigRational::from_integer(4.into()))),
        GroupDescriptor::LexPair(a, b) => Ok(GroupElement::pair(default_precision(a)?, b.zero())),
        other => Err(Error::UnsupportedGroup(other.literal())),
    }
}

/// Argument vector (without the program name) that parses back to `cmd`.
pub fn to_args(cmd: &Command) -> Vec<String> {
    let mut flags = Vec::new();
    let mut positional = Vec::new();
    match cmd {
        Command::Info(a) => a.ring.tokens(&mut flags, &mut positional),
        Command::Psi(a) => {
            a.ring.tokens(&mut flags, &mut positional);
            flags.extend(["--num".into(), a.num.clone(), "--den".into(), a.den.clone()]);
        }
        Command::Factor(a) => {
            a.ring.tokens(&mut flags, &mut positional);
            positional.push(a.series.clone());
        }
        Command::Divides(a) => {
            a.ring.tokens(&mut flags, &mut positional);
            positional.extend([a.divisor.clone(), a.dividend.clone()]);
            flags.extend(["--ring".into(), value_name(&a.domain)]);
        }
        Command::Lattice(a) => {
            positional.push(a.extension.clone());
            flags.extend(["--depth".into(), a.depth.to_string(), "--mode".into(), value_name(&a.mode)]);
            for g in &a.generators {
                flags.extend(["--generator".into(), g.clone()]);
            }
            if let Some(f) = &a.format {
                flags.extend(["--format".into(), value_name(f)]);
            }
        }
        Command::Check(a) => {
            a.ring.tokens(&mut flags, &mut positional);
            flags.extend([
                "--property".into(),
                value_name(&a.property),
                "--bound".into(),
                a.bound.to_string(),
                "--samples".into(),
                a.samples.to_string(),
                "--seed".into(),
                a.seed.to_string(),
                "--max-order".into(),
                a.max_order.to_string(),
            ]);
        }
    }
    let mut out = vec![cmd.verb().to_string()];
    out.extend(flags);
    out.push("--".into());
    out.extend(positional);
    out
}

/// Shell-quoted command line that [`parse_input`] maps back to `cmd`.
pub fn print(cmd: &Command) -> String {
    shlex::try_join(to_args(cmd).iter().map(String::as_str)).expect("arguments contain no NUL bytes")
}

fn clap_error(e: clap::Error, line: &str, args: &[String]) -> Error {
    use clap::error::{ContextKind, ContextValue};
    let mut offending = None;
    let mut expected: Vec<String> = Vec::new();
    for (kind, value) in e.context() {
        match (kind, value) {
            (ContextKind::InvalidArg | ContextKind::InvalidSubcommand, ContextValue::String(s)) => {
                offending = Some(s.clone())
            }
            (ContextKind::InvalidValue, ContextValue::String(s)) if offending.is_none() => {
                offending = Some(s.clone())
            }
            (ContextKind::ValidValue | ContextKind::ValidSubcommand | ContextKind::SuggestedArg, ContextValue::Strings(v)) => {
                expected.extend(v.iter().cloned())
            }
            (ContextKind::ValidValue | ContextKind::ValidSubcommand | ContextKind::SuggestedArg, ContextValue::String(s)) => {
                expected.push(s.clone())
            }
            _ => {}
        }
    }
    if expected.is_empty() {
        expected.push(e.kind().to_string());
    }
    let position = offending
        .and_then(|tok| {
            let tok = tok.split_whitespace().next().unwrap_or("").to_string();
            args.iter().any(|a| a.starts_with(&tok)).then(|| line.find(&tok)).flatten()
        })
        .unwrap_or(line.len());
    Error::Parse { position, expected }
}

/// Parses and validates an argument vector without the program name.
/// `line` is the text the arguments came from; error positions index into it.
pub fn parse_args(args: &[String], line: &str) -> std::result::Result<Command, ArgsError> {
    let argv = std::iter::once("seriesring".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                ArgsError::Display(e.render().to_string())
            }
            _ => ArgsError::Invalid(clap_error(e, line, args)),
        }
    })?;
    validate(&cli.command, line).map_err(ArgsError::Invalid)?;
    Ok(cli.command)
}

/// Why [`parse_args`] did not produce a command.
#[derive(Debug)]
pub enum ArgsError {
    /// Help or version text was requested.
    Display(String),
    Invalid(Error),
}

/// Parses a shell-style command line, e.g.
/// `lattice gf(4)/gf(2) --depth 3 --mode both --format dot`.
pub fn parse_input(text: &str) -> Result<Command> {
    let args = shlex::split(text).ok_or_else(|| Error::parse(text.len(), &["closing quote"]))?;
    match parse_args(&args, text) {
        Ok(cmd) => Ok(cmd),
        Err(ArgsError::Invalid(e)) => Err(e),
        Err(ArgsError::Display(_)) => Err(Error::parse(0, &["command"])),
    }
}

fn relocate(line: &str, literal: &str) -> impl Fn(Error) -> Error {
    let offset = line.find(literal);
    move |e| match (e, offset) {
        (Error::Parse { position, expected }, Some(at)) => Error::Parse {
            position: at + position,
            expected,
        },
        (e, _) => e,
    }
}

fn checked_ring(r: &RingArgs, line: &str) -> Result<Arc<SeriesRing>> {
    parse::parse_extension(&r.extension).map_err(relocate(line, &r.extension))?;
    let group = parse::parse_group(&r.group).map_err(relocate(line, &r.group))?;
    if let Some(p) = &r.precision {
        parse::parse_exponent(&group, p).map_err(relocate(line, p))?;
    }
    r.series_ring()
}

fn checked_series(ring: &Arc<SeriesRing>, literal: &str, line: &str) -> Result<()> {
    parse::parse_series(ring, literal).map(|_| ()).map_err(relocate(line, literal))
}

/// Parses every literal in `cmd` and checks flag combinations. Parse error
/// positions are offsets into `line`.
pub fn validate(cmd: &Command, line: &str) -> Result<()> {
    let format = match cmd {
        Command::Info(a) => a.ring.format,
        Command::Psi(a) => a.ring.format,
        Command::Factor(a) => a.ring.format,
        Command::Divides(a) => a.ring.format,
        Command::Check(a) => a.ring.format,
        Command::Lattice(a) => a.format,
    };
    if format == Some(Format::Dot) && !matches!(cmd, Command::Lattice(_)) {
        return Err(Error::Validation(format!("--format dot applies to lattice, not {}", cmd.verb())));
    }
    match cmd {
        Command::Info(a) => {
            checked_ring(&a.ring, line)?;
        }
        Command::Check(a) => {
            checked_ring(&a.ring, line)?;
            if a.bound < 1 || a.samples == 0 || a.max_order < 1 {
                return Err(Error::Validation("--bound, --samples and --max-order must be positive".into()));
            }
        }
        Command::Psi(a) => {
            let ring = checked_ring(&a.ring, line)?;
            checked_series(&ring, &a.num, line)?;
            checked_series(&ring, &a.den, line)?;
        }
        Command::Factor(a) => {
            let ring = checked_ring(&a.ring, line)?;
            checked_series(&ring, &a.series, line)?;
        }
        Command::Divides(a) => {
            let ring = checked_ring(&a.ring, line)?;
            checked_series(&ring, &a.divisor, line)?;
            checked_series(&ring, &a.dividend, line)?;
        }
        Command::Lattice(a) => {
            let ext = parse::parse_extension(&a.extension).map_err(relocate(line, &a.extension))?;
            if a.depth == 0 {
                return Err(Error::Validation("--depth must be at least 1".into()));
            }
            for g in &a.generators {
                parse::parse_ideal_node(&ext, g).map_err(relocate(line, g))?;
            }
            if !a.generators.is_empty() && a.mode != Mode::Predicted {
                return Err(Error::Validation("--generator works with --mode predicted only".into()));
            }
        }
    }
    Ok(())
}
