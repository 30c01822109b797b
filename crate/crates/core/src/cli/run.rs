use std::sync::Arc;

use serde_json::{json, Value};

use super::emit::{emit_dot, emit_text};
use super::parse::{parse_extension, parse_ideal_node, parse_series};
use super::{
    parse_args, ArgsError, CheckArgs, Command, DividesArgs, FactorArgs, Format, InfoArgs,
    LatticeArgs, Mode, Property, PsiArgs,
};
use crate::divisibility::{
    boundary, check_atomic, check_boundary_overring, check_hahn_specialization,
    check_half_factorial, check_psi_suite, check_strongly_prime, classify_domain, divides,
    divides_by_division, factor_atoms, psi, CheckConfig, RingChoice,
};
use crate::error::{Error, Result};
use crate::groups::Atomicity;
use crate::lattices::{all_subspaces, enumerate_ideals, predicted_ideal_lattice, quotient_ring, sublattice_generated, FinitePoset};
use crate::series::QuotientElement;

/// Result of one invocation: exit code plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionLoss(_) | Error::TooLarge { .. } | Error::WindowExhausted(_) => 3,
        Error::ZeroInversion
        | Error::InvalidField(_)
        | Error::NotAnExtension(_)
        | Error::PayloadMismatch
        | Error::UnsupportedKind(_)
        | Error::NegativeExponent(_)
        | Error::GroupMismatch
        | Error::ZeroSeries
        | Error::NotAUnit
        | Error::UnsupportedGroup(_)
        | Error::NotInRing(_)
        | Error::InfiniteLattice(_)
        | Error::NodeMismatch(_)
        | Error::DepthExceeded { .. }
        | Error::Parse { .. }
        | Error::Validation(_) => 2,
    }
}

/// Parses `args` (without the program name) and runs the command.
pub fn run_args(args: &[String]) -> Outcome {
    let line = shlex::try_join(args.iter().map(String::as_str)).unwrap_or_else(|_| args.join(" "));
    match parse_args(args, &line) {
        Ok(cmd) => run_command(&cmd),
        Err(ArgsError::Display(text)) => Outcome::ok(text),
        Err(ArgsError::Invalid(e)) => Outcome::error(&e),
    }
}

pub fn run_command(cmd: &Command) -> Outcome {
    let result = match cmd {
        Command::Info(a) => info(a),
        Command::Psi(a) => psi_cmd(a),
        Command::Factor(a) => factor(a),
        Command::Divides(a) => divides_cmd(a),
        Command::Lattice(a) => lattice(a),
        Command::Check(a) => check(a),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain JSON value");
    s.push('\n');
    s
}

/// `key: value` lines, or the same pairs as a JSON object.
fn emit_pairs(pairs: &[(&str, Value)], format: Option<Format>) -> String {
    match format {
        Some(Format::Json) => {
            let map: serde_json::Map<String, Value> = pairs.iter().map(|(k, v)| (k.replace(' ', "_"), v.clone())).collect();
            pretty(&Value::Object(map))
        }
        _ => {
            let mut out = String::new();
            for (k, v) in pairs {
                let text = match v {
                    Value::String(s) => s.clone(),
                    Value::Array(items) => items
                        .iter()
                        .map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string))
                        .collect::<Vec<_>>()
                        .join(", "),
                    Value::Bool(b) => if *b { "yes" } else { "no" }.to_string(),
                    Value::Null => "none".to_string(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {text}\n"));
            }
            out
        }
    }
}

fn order_text(n: Option<u128>) -> Value {
    Value::String(n.map_or_else(|| "infinite".to_string(), |n| n.to_string()))
}

fn info(a: &InfoArgs) -> Result<Outcome> {
    let ring = a.ring.series_ring()?;
    let ext = ring.ext();
    let f = ext.large();
    let vg = ring.value_group();
    let cosets = ext
        .coset_representatives()
        .map(|reps| json!(reps.iter().map(|x| f.format(x)).collect::<Vec<_>>()))
        .unwrap_or(Value::String("infinite".into()));
    let subspaces = all_subspaces(ext)
        .map(|s| Value::String(s.len().to_string()))
        .unwrap_or(Value::String("infinite".into()));
    let (atomic, witness) = match vg.atomicity_report()? {
        Atomicity::Atomic => (true, Value::Null),
        Atomicity::NonAtomic { witness, .. } => (false, Value::String(vg.format(&witness))),
    };
    let pairs = [
        ("extension", json!(ext.literal())),
        ("degree", json!(ext.degree().to_string())),
        ("field order", order_text(f.order())),
        ("subfield order", order_text(ext.small().order())),
        ("basis", json!(ext.basis().iter().map(|x| f.format(x)).collect::<Vec<_>>())),
        ("coset representatives", cosets),
        ("exponent group", json!(ring.group().literal())),
        ("precision", json!(ring.group().format(ring.precision()))),
        ("group of divisibility", json!(vg.literal())),
        ("atomic", json!(atomic)),
        ("atomicity witness", witness),
        ("nonzero subspaces", subspaces),
    ];
    Ok(Outcome::ok(emit_pairs(&pairs, a.ring.format)))
}

fn psi_cmd(a: &PsiArgs) -> Result<Outcome> {
    let ring = a.ring.series_ring()?;
    let num = parse_series(&ring, &a.num)?;
    let den = parse_series(&ring, &a.den)?;
    let q = QuotientElement::new(num.clone(), den.clone())?;
    let class = psi(&q)?;
    let vg = ring.value_group();
    let in_s = vg.is_positive(&class.to_group_element())?;
    let b = match boundary(&q) {
        Ok(n) => Value::String(n.to_string()),
        Err(_) => Value::Null,
    };
    let pairs = [
        ("num", json!(num.to_string())),
        ("den", json!(den.to_string())),
        ("psi", json!(class.format(&vg))),
        ("quotient in S", json!(in_s)),
        ("boundary", b),
    ];
    Ok(Outcome::ok(emit_pairs(&pairs, a.ring.format)))
}

fn factor(a: &FactorArgs) -> Result<Outcome> {
    let ring = a.ring.series_ring()?;
    let f = parse_series(&ring, &a.series)?;
    let fac = factor_atoms(&f)?;
    let atoms: Vec<String> = fac.atoms.iter().map(|x| x.format_terms()).collect();
    let pairs = [
        ("series", json!(f.to_string())),
        ("unit", json!(fac.unit.to_string())),
        ("atoms", json!(atoms)),
        ("length", json!(fac.len().to_string())),
    ];
    Ok(Outcome::ok(emit_pairs(&pairs, a.ring.format)))
}

fn divides_cmd(a: &DividesArgs) -> Result<Outcome> {
    let ring = a.ring.series_ring()?;
    let f = parse_series(&ring, &a.divisor)?;
    let g = parse_series(&ring, &a.dividend)?;
    let choice: RingChoice = a.domain.into();
    let answer = divides(&f, &g, choice)?;
    let class = psi(&QuotientElement::new(g.clone(), f.clone())?)?;
    let division = match divides_by_division(&f, &g, choice)? {
        Some(true) => "yes",
        Some(false) => "no",
        None => "inconclusive",
    };
    let pairs = [
        ("divisor", json!(f.to_string())),
        ("dividend", json!(g.to_string())),
        ("ring", json!(match choice {
            RingChoice::R => "R",
            RingChoice::S => "S",
        })),
        ("divides", json!(answer)),
        ("psi of quotient", json!(class.format(&ring.value_group()))),
        ("long division", json!(division)),
    ];
    Ok(Outcome::ok(emit_pairs(&pairs, a.ring.format)))
}

fn lattice(a: &LatticeArgs) -> Result<Outcome> {
    let ext = Arc::new(parse_extension(&a.extension)?);
    let mut stderr = String::new();
    let mut code = 0;
    let poset: FinitePoset<String> = if !a.generators.is_empty() {
        let gens = a
            .generators
            .iter()
            .map(|g| parse_ideal_node(&ext, g))
            .collect::<Result<Vec<_>>>()?;
        sublattice_generated(ext.clone(), &gens, a.depth)?.labeled()
    } else {
        match a.mode {
            Mode::Predicted => predicted_ideal_lattice(ext.clone(), a.depth)?.labeled(),
            Mode::Brute => {
                let ring = quotient_ring(ext.clone(), a.depth)?;
                enumerate_ideals(&ring)?.classified(&ring).map(|n| n.label(&ext))
            }
            Mode::Both => {
                let predicted = predicted_ideal_lattice(ext.clone(), a.depth)?;
                let ring = quotient_ring(ext.clone(), a.depth)?;
                let ideals = enumerate_ideals(&ring)?;
                let iso = ideals.poset.isomorphic(predicted.poset());
                match (iso.is_iso(), ideals.matches_lattice(&ring, &predicted)) {
                    (true, Ok(())) => stderr.push_str(&format!(
                        "brute force: {} elements, {} ideals, matches the predicted lattice\n",
                        ring.len(),
                        ideals.poset.len()
                    )),
                    (_, Err(e)) => {
                        code = 1;
                        stderr.push_str(&format!("mismatch: {e}\n"));
                    }
                    (false, Ok(())) => {
                        code = 1;
                        stderr.push_str("mismatch: brute-forced ideals are not isomorphic to the predicted lattice\n");
                    }
                }
                predicted.labeled()
            }
        }
    };
    let stdout = match a.format.unwrap_or(Format::Dot) {
        Format::Dot => emit_dot(&poset),
        Format::Text => emit_text(&poset),
        Format::Json => {
            let mut v = poset.to_json_value();
            let obj = v.as_object_mut().expect("poset JSON is an object");
            obj.insert("extension".into(), json!(ext.literal()));
            obj.insert("depth".into(), json!(a.depth));
            obj.insert("mode".into(), json!(if a.generators.is_empty() { super::value_name(&a.mode) } else { "generated".into() }));
            pretty(&v)
        }
    };
    Ok(Outcome { code, stdout, stderr })
}

fn check(a: &CheckArgs) -> Result<Outcome> {
    let ext = a.ring.extension()?;
    let group = a.ring.group()?;
    let cfg = CheckConfig {
        bound: a.bound,
        samples: a.samples,
        seed: a.seed,
        max_order: a.max_order,
        ..CheckConfig::default()
    };
    let report = match a.property {
        Property::StronglyPrime => check_strongly_prime(ext, &group, &cfg)?,
        Property::Atomic => check_atomic(ext, &group, &cfg)?,
        Property::HalfFactorial => check_half_factorial(ext, &group, &cfg)?,
        Property::Boundary => check_boundary_overring(ext, &group, &cfg)?,
        Property::Psi => check_psi_suite(ext, &group, &cfg)?,
        Property::Hahn => check_hahn_specialization(ext, &group, &cfg)?,
        Property::Classify => classify_domain(ext, &group, &cfg)?.to_report(),
    };
    let stdout = match a.ring.format {
        Some(Format::Json) => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        _ => report.to_string(),
    };
    Ok(Outcome {
        code: if report.verdict.is_failure() { 1 } else { 0 },
        stdout,
        stderr: String::new(),
    })
}
