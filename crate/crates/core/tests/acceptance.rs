//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command as Process, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use seriesring::cli::{parse_input, run_args, run_command};
use seriesring::divisibility::{
    check_atomic, check_half_factorial, check_hahn_specialization, check_psi_suite,
    check_strongly_prime, CheckConfig, CheckReport, Verdict, DEFAULT_SEED,
};
use seriesring::fields::linalg::FieldOps;
use seriesring::fields::{ExtensionPair, FieldDescriptor};
use seriesring::groups::{Atomicity, GroupDescriptor, NonAtomicReason};
use seriesring::lattices::{
    all_subspaces, enumerate_ideals, predicted_ideal_lattice, quotient_ring, sublattice_generated,
    FinitePoset, IdealNode, Subspace,
};

type Outcome = Result<String, String>;

fn ext(small: FieldDescriptor, large: FieldDescriptor) -> Arc<ExtensionPair> {
    Arc::new(ExtensionPair::new(small, large).unwrap())
}

fn gf4_gf2() -> Arc<ExtensionPair> {
    ext(FieldDescriptor::prime(2).unwrap(), FieldDescriptor::galois(2, 2).unwrap())
}

fn gf9_gf3() -> Arc<ExtensionPair> {
    ext(FieldDescriptor::prime(3).unwrap(), FieldDescriptor::galois(3, 2).unwrap())
}

fn zz() -> GroupDescriptor {
    GroupDescriptor::LexPair(Box::new(GroupDescriptor::Int), Box::new(GroupDescriptor::Int))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cover_labels(p: &FinitePoset<String>) -> BTreeSet<(String, String)> {
    p.covers()
        .into_iter()
        .map(|(lo, hi)| (p.node(hi).clone(), p.node(lo).clone()))
        .collect()
}

/// (upper, lower) covers of the depth-3 truncation over gf(4)/gf(2), written
/// out by hand: a chain R > <X>_V > <X^2>_V > <0> with the three lines of F
/// hanging between consecutive powers.
fn gf4_depth3_covers() -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    out.insert(("R".to_string(), "<X>_V".to_string()));
    for w in ["<1>", "<a>", "<a+1>"] {
        out.insert(("<X>_V".into(), format!("(1,{w})")));
        out.insert((format!("(1,{w})"), "<X^2>_V".into()));
        out.insert(("<X^2>_V".into(), format!("(2,{w})")));
        out.insert((format!("(2,{w})"), "<0>".into()));
    }
    out
}

fn label_index(p: &FinitePoset<String>, label: &str) -> Result<usize, String> {
    p.nodes().iter().position(|l| l == label).ok_or_else(|| format!("no node {label}"))
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let e = gf4_gf2();
    let ring = quotient_ring(e.clone(), 3).map_err(|x| x.to_string())?;
    ensure(ring.len() == 32, || format!("quotient has {} elements", ring.len()))?;
    let ideals = enumerate_ideals(&ring).map_err(|x| x.to_string())?;
    ensure(ideals.poset.len() == 10, || format!("{} ideals", ideals.poset.len()))?;
    let predicted = predicted_ideal_lattice(e.clone(), 3).map_err(|x| x.to_string())?;
    ensure(ideals.poset.isomorphic(predicted.poset()).is_iso(), || "not isomorphic".into())?;
    ideals.matches_lattice(&ring, &predicted).map_err(|x| x.to_string())?;

    let brute = ideals.classified(&ring).map(|n| n.label(&e));
    ensure(cover_labels(&brute) == gf4_depth3_covers(), || format!("covers {:?}", cover_labels(&brute)))?;
    ensure(cover_labels(&predicted.labeled()) == gf4_depth3_covers(), || "predicted covers differ".into())?;

    let mut identities = 0;
    for n in 1..=2u32 {
        let power = |k: u32| if k == 1 { "<X>_V".to_string() } else if k == 3 { "<0>".to_string() } else { format!("<X^{k}>_V") };
        let lines = ["<1>", "<a>", "<a+1>"].map(|w| label_index(&brute, &format!("({n},{w})")));
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let (x, y) = (lines[i].clone()?, lines[j].clone()?);
                let join = brute.join(x, y).map(|k| brute.node(k).clone());
                let meet = brute.meet(x, y).map(|k| brute.node(k).clone());
                ensure(join.as_deref() == Some(power(n).as_str()), || format!("join at level {n} is {join:?}"))?;
                ensure(meet.as_deref() == Some(power(n + 1).as_str()), || format!("meet at level {n} is {meet:?}"))?;
                identities += 2;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "32 elements, 10 ideals, isomorphic, 13 covers as expected, {identities} join/meet identities, {} ms",
        elapsed.as_millis()
    ))
}

fn second_configuration() -> Outcome {
    let e = gf9_gf3();
    let ring = quotient_ring(e.clone(), 2).map_err(|x| x.to_string())?;
    let ideals = enumerate_ideals(&ring).map_err(|x| x.to_string())?;
    let predicted = predicted_ideal_lattice(e.clone(), 2).map_err(|x| x.to_string())?;
    ensure(ideals.poset.isomorphic(predicted.poset()).is_iso(), || "not isomorphic".into())?;
    ideals.matches_lattice(&ring, &predicted).map_err(|x| x.to_string())?;
    let nonzero = all_subspaces(&e).map_err(|x| x.to_string())?;
    ensure(nonzero.len() == 5, || format!("{} nonzero subspaces", nonzero.len()))?;
    Ok(format!("{} elements, {} ideals, isomorphic; 5 nonzero subspaces", ring.len(), ideals.poset.len()))
}

fn expect_holds(r: &CheckReport, size: u64) -> Result<(), String> {
    ensure(!r.verdict.is_failure(), || format!("{}: {:?}", r.property, r.verdict))?;
    ensure(r.size == size, || format!("{}: {} cases instead of {size}", r.property, r.size))
}

fn psi_suite() -> Outcome {
    let cfg = CheckConfig {
        samples: 500,
        ..CheckConfig::default()
    };
    let mut details = Vec::new();
    for e in [gf4_gf2(), gf9_gf3()] {
        let r = check_psi_suite(e.clone(), &GroupDescriptor::Int, &cfg).map_err(|x| x.to_string())?;
        expect_holds(&r, 500)?;
        let agreement = r.notes.iter().find(|n| n.contains("conclusive")).cloned().unwrap_or_default();
        ensure(!agreement.contains("all 0 conclusive"), || "no conclusive division cases".into())?;
        details.push(format!("{}: {agreement}", e.literal()));
    }
    Ok(details.join("; "))
}

fn strongly_prime() -> Outcome {
    let cfg = CheckConfig::default();
    let mut details = Vec::new();
    for g in [GroupDescriptor::Int, zz()] {
        let r = check_strongly_prime(gf4_gf2(), &g, &cfg).map_err(|x| x.to_string())?;
        ensure(r.verdict == Verdict::Holds, || format!("{}: {:?}", g.literal(), r.verdict))?;
        details.push(format!("{}: {} cases", g.literal(), r.size));
    }
    Ok(details.join(", "))
}

fn half_factorial() -> Outcome {
    let cfg = CheckConfig {
        samples: 200,
        max_order: 8,
        ..CheckConfig::default()
    };
    let r = check_half_factorial(gf4_gf2(), &GroupDescriptor::Int, &cfg).map_err(|x| x.to_string())?;
    expect_holds(&r, 200)?;
    Ok(format!("200 nonunits of order <= 8, seed {DEFAULT_SEED}; {}", r.notes.join("; ")))
}

fn nonatomicity() -> Outcome {
    let cfg = CheckConfig::default();
    let r = check_atomic(gf4_gf2(), &zz(), &cfg).map_err(|x| x.to_string())?;
    ensure(r.verdict == Verdict::FailsWith("((1,0),K♯)".into()), || format!("z*z: {:?}", r.verdict))?;

    let vg = GroupDescriptor::value_group(gf4_gf2(), &zz()).map_err(|x| x.to_string())?;
    let atoms = vg.atom_catalog().map_err(|x| x.to_string())?;
    // every atom has leading coordinate 0, so no sum of atoms has leading coordinate 1
    for a in &atoms {
        let text = vg.format(a);
        ensure(text.starts_with("((0,"), || format!("atom {text} has nonzero leading coordinate"))?;
    }
    ensure(!atoms.is_empty(), || "empty atom catalog".into())?;

    let q = GroupDescriptor::value_group(gf4_gf2(), &GroupDescriptor::Rational).map_err(|x| x.to_string())?;
    match q.atomicity_report().map_err(|x| x.to_string())? {
        Atomicity::NonAtomic {
            reason: NonAtomicReason::NoAtoms,
            witness,
        } => Ok(format!(
            "z*z witness ((1,0),K♯) outside the sums of {} atoms; q has no atoms (witness {})",
            atoms.len(),
            q.format(&witness)
        )),
        other => Err(format!("q: {other:?}")),
    }
}

fn cube_root_fragment() -> Outcome {
    let e = Arc::new(
        ExtensionPair::new(FieldDescriptor::rationals(), FieldDescriptor::number_field("r", &[BigInt::from(-2), 0.into(), 0.into(), 1.into()]).unwrap()).unwrap(),
    );
    let f = e.large();
    let r = f.generator();
    let gens: Vec<IdealNode> = [f.one(), r.clone(), f.mul(&r, &r)]
        .into_iter()
        .map(|w| IdealNode::level(&e, 1, Subspace::span_elements(&e, &[w])))
        .collect();
    let l = sublattice_generated(e.clone(), &gens, 2).map_err(|x| x.to_string())?;
    let p = l.poset();
    ensure(p.len() == 8, || format!("{} nodes", p.len()))?;
    let dim = |i: usize| match p.node(i) {
        IdealNode::Level { n: 1, space } if !space.is_full() => Some(space.dimension()),
        _ => None,
    };
    let covers = p.covers();
    let mut planes = 0;
    for hi in (0..p.len()).filter(|&i| dim(i) == Some(2)) {
        planes += 1;
        let below: BTreeSet<usize> = covers.iter().filter(|(_, h)| *h == hi).map(|(lo, _)| *lo).collect();
        let lines: BTreeSet<usize> = (0..p.len()).filter(|&i| dim(i) == Some(1) && p.leq(i, hi)).collect();
        ensure(lines.len() == 2, || format!("{} contains {} lines", p.node(hi).label(&e), lines.len()))?;
        ensure(below == lines, || format!("{} covers {below:?}", p.node(hi).label(&e)))?;
    }
    ensure(planes == 3, || format!("{planes} two-dimensional nodes"))?;
    Ok("8 nodes; each of the 3 planes covers exactly its 2 lines".into())
}

fn hahn() -> Outcome {
    let cfg = CheckConfig {
        samples: 500,
        ..CheckConfig::default()
    };
    let gf4 = FieldDescriptor::galois(2, 2).unwrap();
    let mut details = Vec::new();
    for (e, g) in [
        (ext(gf4.clone(), gf4), GroupDescriptor::Int),
        (ext(FieldDescriptor::rationals(), FieldDescriptor::rationals()), GroupDescriptor::Int),
        (ext(FieldDescriptor::prime(3).unwrap(), FieldDescriptor::prime(3).unwrap()), zz()),
    ] {
        let r = check_hahn_specialization(e.clone(), &g, &cfg).map_err(|x| x.to_string())?;
        expect_holds(&r, 500)?;
        details.push(format!("{} over {}", e.literal(), g.literal()));
    }
    Ok(format!("500 samples each: {}", details.join(", ")))
}

const BIN: &str = env!("CARGO_BIN_EXE_seriesring");

fn determinism() -> Outcome {
    let lines: Vec<&str> = include_str!("data/commands.txt").lines().filter(|l| !l.trim().is_empty()).collect();
    for line in &lines {
        let args = shlex::split(line).ok_or_else(|| format!("cannot split {line}"))?;
        let first = Process::new(BIN).args(&args).output().map_err(|x| x.to_string())?;
        let second = Process::new(BIN).args(&args).output().map_err(|x| x.to_string())?;
        ensure(first == second, || format!("two runs differ: {line}"))?;
        let inner = run_args(&args);
        ensure(first.stdout == inner.stdout.as_bytes(), || format!("binary and library differ: {line}"))?;
        ensure(first.status.code() == Some(inner.code as i32), || format!("exit codes differ: {line}"))?;
        let cmd = parse_input(line).map_err(|x| x.to_string())?;
        ensure(run_command(&cmd) == inner, || format!("reparsed command differs: {line}"))?;
    }
    Ok(format!("{} commands, byte-identical across runs", lines.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("worked example gf(4)/gf(2) depth 3", worked_example),
        ("lattice isomorphism gf(9)/gf(3) depth 2", second_configuration),
        ("psi property suite", psi_suite),
        ("strongly prime over z and z*z", strongly_prime),
        ("atomic and half-factorial over z", half_factorial),
        ("nonatomicity over z*z and q", nonatomicity),
        ("cube root of 2 sublattice", cube_root_fragment),
        ("specialization with K = F", hahn),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
