//! Report-valued property checkers. None of them panic on a falsified
//! property; counterexamples come back as [`Verdict::FailsWith`].

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::report::{CheckReport, Verdict};
use super::{
    boundary, divides, divides_by_division, factor_atoms, is_atom, psi, random_factorization,
    realize_class, DivClass, RingChoice,
};
use crate::error::{Error, Result};
use crate::fields::linalg::FieldOps;
use crate::fields::{ExtensionPair, FieldElement};
use crate::groups::{Atomicity, GroupDescriptor, GroupElement, NonAtomicReason};
use crate::sampling::{self, SampleRng};
use crate::series::{Division, Membership, QuotientElement, Series, SeriesRing, DEFAULT_BUDGET};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 2024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    /// Bound on `|γ|` coordinates for exhaustive class enumeration.
    pub bound: i64,
    pub samples: usize,
    pub seed: u64,
    /// Largest order of sampled nonunits in the half-factorial check.
    pub max_order: i64,
    /// Number of enumerated cases re-verified with series arithmetic.
    pub cross_checks: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            bound: 3,
            samples: 200,
            seed: DEFAULT_SEED,
            max_order: 8,
            cross_checks: 200,
        }
    }
}

fn positive_multiple(g: &GroupDescriptor, n: i64) -> Result<GroupElement> {
    match g {
        GroupDescriptor::Int => Ok(GroupElement::Int(n)),
        GroupDescriptor::Rational => Ok(GroupElement::Rational(num_rational::BigRational::from_integer(n.into()))),
        GroupDescriptor::LexPair(a, b) => Ok(GroupElement::pair(positive_multiple(a, n)?, b.zero())),
        other => Err(Error::UnsupportedKind(other.literal())),
    }
}

/// A series ring whose precision leaves room for the bound and the sampled tails.
pub(crate) fn sampling_ring(ext: Arc<ExtensionPair>, group: &GroupDescriptor, cfg: &CheckConfig) -> Result<Arc<SeriesRing>> {
    let depth = match group {
        GroupDescriptor::Int => cfg.bound.max(cfg.max_order) + 4,
        _ => cfg.bound + 2,
    };
    SeriesRing::new(ext, group.clone(), positive_multiple(group, depth)?, DEFAULT_BUDGET)
}

fn require_supported(group: &GroupDescriptor) -> Result<()> {
    if !group.is_linear() || group.is_trivially_ordered() {
        return Err(Error::UnsupportedKind(format!(
            "{} is not a linearly ordered exponent group",
            group.literal()
        )));
    }
    Ok(())
}

fn add_classes(ring: &SeriesRing, a: &DivClass, b: &DivClass) -> Result<DivClass> {
    Ok(DivClass {
        gamma: ring.group().add(&a.gamma, &b.gamma)?,
        coset: ring.field().mul(&a.coset, &b.coset),
    })
}

fn same_class(ring: &SeriesRing, a: &DivClass, b: &DivClass) -> Result<bool> {
    Ok(ring.group().equal(&a.gamma, &b.gamma)? && ring.ext().same_coset(&a.coset, &b.coset))
}

/// Coset representatives: all of them when `F♯/K♯` is finite, else a seeded sample.
fn coset_sample(ext: &ExtensionPair, rng: &mut SampleRng, samples: usize) -> (Vec<FieldElement>, bool) {
    if ext.is_trivial() {
        return (vec![ext.large().one()], true);
    }
    if let Ok(reps) = ext.coset_representatives() {
        return (reps, true);
    }
    let f = ext.large();
    let mut out = vec![f.one(), f.generator()];
    for _ in 0..samples.min(10) {
        let x = sampling::nonzero_element(f, rng);
        if !out.iter().any(|y| ext.same_coset(&x, y)) {
            out.push(x);
        }
    }
    (out, false)
}

/// Whether a realized quotient lies in the maximal ideal, by long division.
fn in_m_by_division(q: &QuotientElement) -> Result<Option<bool>> {
    Ok(match q.num.long_divide(&q.den)? {
        Division::Quotient(s) => Some(s.ring().field().is_zero(&s.constant_term())),
        Division::NotInValuationRing => Some(false),
        Division::Inconclusive => None,
    })
}

/// `ab ∈ M ⇒ a ∈ M or b ∈ M` over all classes `(γ, c)` with `γ` in the window.
pub fn check_strongly_prime(ext: Arc<ExtensionPair>, group: &GroupDescriptor, cfg: &CheckConfig) -> Result<CheckReport> {
    require_supported(group)?;
    let ring = sampling_ring(ext.clone(), group, cfg)?;
    let vg = ring.value_group();
    let mut rng = sampling::rng(cfg.seed);
    let gammas = group.box_elements(cfg.bound, 200_000)?;
    let (cosets, all_cosets) = coset_sample(&ext, &mut rng, cfg.samples);
    let classes: Vec<DivClass> = gammas
        .iter()
        .flat_map(|g| {
            cosets.iter().map(move |c| DivClass {
                gamma: g.clone(),
                coset: c.clone(),
            })
        })
        .collect();

    let mut in_m = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            let ab = add_classes(&ring, a, b)?;
            if !ab.in_maximal_ideal(&ring)? {
                continue;
            }
            if !a.in_maximal_ideal(&ring)? && !b.in_maximal_ideal(&ring)? {
                return Ok(CheckReport::new(
                    "strongly-prime",
                    Verdict::FailsWith(format!("a={} b={}", a.format(&vg), b.format(&vg))),
                    (classes.len() * classes.len()) as u64,
                    Some(cfg.seed),
                ));
            }
            in_m.push((i, j));
        }
    }

    let stride = (in_m.len() / cfg.cross_checks.max(1)).max(1);
    let mut crossed = 0usize;
    for &(i, j) in in_m.iter().step_by(stride).take(cfg.cross_checks) {
        let (a, b) = (&classes[i], &classes[j]);
        let qa = realize_class(&ring, a, &mut rng)?;
        let qb = realize_class(&ring, b, &mut rng)?;
        let q = qa.mul(&qb)?;
        let expected = add_classes(&ring, a, b)?;
        let agrees = same_class(&ring, &psi(&q)?, &expected)?
            && in_m_by_division(&q)? == Some(true)
            && (in_m_by_division(&qa)? == Some(true) || in_m_by_division(&qb)? == Some(true));
        if !agrees {
            return Ok(CheckReport::new(
                "strongly-prime",
                Verdict::FailsWith(format!(
                    "series cross-check disagrees at a={} b={}",
                    a.format(&vg),
                    b.format(&vg)
                )),
                (classes.len() * classes.len()) as u64,
                Some(cfg.seed),
            ));
        }
        crossed += 1;
    }

    let exhaustive = all_cosets && !matches!(group, GroupDescriptor::Rational);
    let verdict = if exhaustive { Verdict::Holds } else { Verdict::HoldsWithinBounds };
    let coset_note = if all_cosets {
        format!("all {} cosets of F♯/K♯", cosets.len())
    } else {
        format!("{} sampled cosets of F♯/K♯", cosets.len())
    };
    Ok(CheckReport::new("strongly-prime", verdict, (classes.len() * classes.len()) as u64, Some(cfg.seed))
        .note(format!(
            "{} classes: exponents within radius {} times {}",
            classes.len(),
            cfg.bound,
            coset_note
        ))
        .note(format!("{} pairs with product in M, each with a factor in M", in_m.len()))
        .note(format!("{crossed} pairs re-verified with series arithmetic")))
}

/// Atomicity of `Γ ∘ F♯/K♯`, with a witness when it fails.
pub fn check_atomic(ext: Arc<ExtensionPair>, group: &GroupDescriptor, cfg: &CheckConfig) -> Result<CheckReport> {
    require_supported(group)?;
    let vg = GroupDescriptor::value_group(ext, group)?;
    let catalog = vg.atom_catalog().ok();
    match vg.atomicity_report()? {
        Atomicity::Atomic => {
            let mut report = CheckReport::new("atomic", Verdict::Holds, catalog.as_ref().map_or(0, |c| c.len() as u64), None);
            report = match &catalog {
                Some(c) => report.note(format!(
                    "atoms: {}",
                    c.iter().map(|a| vg.format(a)).collect::<Vec<_>>().join(" ")
                )),
                None => report.note("atoms: (1,cK♯) for every c in F♯"),
            };
            Ok(report.note("every positive (n,cK♯) is (1,cK♯) + (n-1)·(1,K♯)"))
        }
        Atomicity::NonAtomic { witness, reason } => {
            let text = vg.format(&witness);
            let mut report = CheckReport::new("atomic", Verdict::FailsWith(text), 1, None).note(reason.to_string());
            match (&reason, &catalog) {
                (NonAtomicReason::AtomsInLowerFactor, Some(atoms)) => {
                    let depth = (2 * cfg.bound).max(1) as usize;
                    if vg.reachable_by_atom_sums(atoms, &witness, depth)? {
                        return Err(Error::Validation("atomicity witness is a sum of atoms".into()));
                    }
                    report = report.note(format!(
                        "witness is not a sum of at most {depth} atoms from the {} atoms in the catalog",
                        atoms.len()
                    ));
                }
                (NonAtomicReason::NoAtoms, _) => {
                    report = report.note("the positive cone has no minimal element");
                }
                _ => {}
            }
            Ok(report)
        }
    }
}

fn nonatomic_failure(ext: Arc<ExtensionPair>, group: &GroupDescriptor, property: &str, cfg: &CheckConfig) -> Result<Option<CheckReport>> {
    let atomic = check_atomic(ext, group, cfg)?;
    Ok(match atomic.verdict {
        Verdict::FailsWith(w) => Some(
            CheckReport::new(property, Verdict::FailsWith(w), 1, None)
                .note("not atomic, so no factorization into atoms exists for the witness"),
        ),
        _ => None,
    })
}

/// A nonunit of `S` of order `n`: `c·δ_n·u` with `u(0) = 1`.
fn nonunit_of_order(ring: &Arc<SeriesRing>, n: i64, rng: &mut SampleRng) -> Result<Series> {
    let c = sampling::nonzero_element(ring.field(), rng);
    let tail = sampling::with_constant(&sampling::series(ring, rng), ring.field().one());
    Ok(tail.shift(&GroupElement::Int(n))?.scale(&c))
}

fn agrees(a: &Series, b: &Series) -> bool {
    a.agrees_below(b, &a.common_precision(b))
}

/// Every factorization of a sampled nonunit has length equal to its order.
pub fn check_half_factorial(ext: Arc<ExtensionPair>, group: &GroupDescriptor, cfg: &CheckConfig) -> Result<CheckReport> {
    require_supported(group)?;
    if let Some(r) = nonatomic_failure(ext.clone(), group, "half-factorial", cfg)? {
        return Ok(r);
    }
    if *group != GroupDescriptor::Int {
        return Err(Error::UnsupportedGroup(group.literal()));
    }
    let ring = sampling_ring(ext, group, cfg)?;
    let mut rng = sampling::rng(cfg.seed);
    let fail = |w: String| CheckReport::new("half-factorial", Verdict::FailsWith(w), cfg.samples as u64, Some(cfg.seed));
    let mut alternatives = 0usize;
    for _ in 0..cfg.samples {
        let n = rng.random_range(1..=cfg.max_order.max(1));
        let f = nonunit_of_order(&ring, n, &mut rng)?;
        let fac = factor_atoms(&f)?;
        if fac.len() as i64 != n || !fac.unit.is_member(Membership::UnitS) || !agrees(&fac.product()?, &f) {
            return Ok(fail(format!("factor_atoms mismatch for {}", f.format_terms())));
        }
        for a in &fac.atoms {
            if !is_atom(a)? {
                return Ok(fail(format!("non-atom factor {} of {}", a.format_terms(), f.format_terms())));
            }
        }
        let mut shuffled = fac.atoms.clone();
        shuffled.shuffle(&mut rng);
        let product = shuffled.iter().try_fold(fac.unit.clone(), |acc, a| acc.mul(a))?;
        if !agrees(&product, &f) {
            return Ok(fail(format!("reordered product differs for {}", f.format_terms())));
        }
        for _ in 0..2 {
            let alt = random_factorization(&f, &mut rng)?;
            if alt.len() as i64 != n || !agrees(&alt.product()?, &f) {
                return Ok(fail(format!("alternative factorization of {} has length {}", f.format_terms(), alt.len())));
            }
            for a in &alt.atoms {
                if !is_atom(a)? {
                    return Ok(fail(format!("alternative factor {} is not an atom", a.format_terms())));
                }
            }
            alternatives += 1;
        }
        let s = sampling::element_of_s(&ring, &mut rng);
        if !s.is_zero() && is_atom(&s)? != (s.min()? == GroupElement::Int(1)) {
            return Ok(fail(format!("atom test disagrees with order for {}", s.format_terms())));
        }
    }
    Ok(CheckReport::new("half-factorial", Verdict::HoldsWithinBounds, cfg.samples as u64, Some(cfg.seed))
        .note(format!("nonunits of order 1..={}", cfg.max_order))
        .note(format!("{alternatives} independent alternative factorizations, all of matching length")))
}

/// Boundary positivity of `V = F[[X]]` over `S` and the boundary-valuation membership rule.
pub fn check_boundary_overring(ext: Arc<ExtensionPair>, group: &GroupDescriptor, cfg: &CheckConfig) -> Result<CheckReport> {
    if *group != GroupDescriptor::Int {
        return Err(Error::UnsupportedGroup(format!("{} (boundary needs z)", group.literal())));
    }
    let ring = sampling_ring(ext.clone(), group, cfg)?;
    let mut rng = sampling::rng(cfg.seed);
    let fail = |w: String| CheckReport::new("boundary", Verdict::FailsWith(w), cfg.samples as u64, Some(cfg.seed));
    let (mut in_v, mut outside, mut unit_s, mut unit_v_only, mut inconclusive) = (0, 0, 0, 0, 0);
    let mut example: Option<String> = None;
    for _ in 0..cfg.samples {
        let num = nonzero_in_s(&ring, &mut rng);
        let den = nonzero_in_s(&ring, &mut rng);
        let q = QuotientElement::new(num.clone(), den.clone())?;
        let d = boundary(&q)?;
        let witness = || format!("({}) / ({})", num.format_terms(), den.format_terms());
        match num.long_divide(&den)? {
            Division::Quotient(s) => {
                in_v += 1;
                if d < 0 {
                    return Ok(fail(format!("element of V with negative boundary: {}", witness())));
                }
                if d > 0 && !s.is_member(Membership::InS) {
                    return Ok(fail(format!("positive boundary outside S: {}", witness())));
                }
                if d == 0 {
                    if s.is_member(Membership::UnitS) {
                        unit_s += 1;
                    } else {
                        unit_v_only += 1;
                        example.get_or_insert_with(witness);
                    }
                }
            }
            Division::NotInValuationRing => {
                outside += 1;
                if d >= 0 {
                    return Ok(fail(format!("nonnegative boundary outside V: {}", witness())));
                }
            }
            Division::Inconclusive => inconclusive += 1,
        }
    }
    let mut report = CheckReport::new("boundary", Verdict::HoldsWithinBounds, cfg.samples as u64, Some(cfg.seed))
        .note(format!("{in_v} quotients in V, all with boundary >= 0; {outside} outside V, all with boundary < 0"))
        .note("every quotient with positive boundary lies in S")
        .note(format!(
            "boundary 0: {unit_s} units of S, {unit_v_only} in U(V) but not U(S)"
        ));
    if let Some(e) = example {
        report = report.note(format!(
            "V is not boundary complete relative to S; e.g. {e} is a unit of V outside U(S)"
        ));
    }
    if inconclusive > 0 {
        report = report.note(format!("{inconclusive} inconclusive divisions skipped"));
    }
    Ok(report)
}

fn nonzero_in_s(ring: &Arc<SeriesRing>, rng: &mut SampleRng) -> Series {
    loop {
        let s = sampling::element_of_s(ring, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// `ψ` additivity and unit invariance, and divisibility via `ψ` against long division.
pub fn check_psi_suite(ext: Arc<ExtensionPair>, group: &GroupDescriptor, cfg: &CheckConfig) -> Result<CheckReport> {
    require_supported(group)?;
    let ring = sampling_ring(ext, group, cfg)?;
    let mut rng = sampling::rng(cfg.seed);
    let fail = |w: String| CheckReport::new("psi", Verdict::FailsWith(w), cfg.samples as u64, Some(cfg.seed));
    let (mut conclusive, mut positive) = (0usize, 0usize);
    for _ in 0..cfg.samples {
        let q1 = QuotientElement::new(nonzero_in_s(&ring, &mut rng), nonzero_in_s(&ring, &mut rng))?;
        let q2 = QuotientElement::new(nonzero_in_s(&ring, &mut rng), nonzero_in_s(&ring, &mut rng))?;
        let (p1, p2) = (psi(&q1)?, psi(&q2)?);
        let p12 = psi(&q1.mul(&q2)?)?;
        let sum = add_classes(&ring, &p1, &p2)?;
        if !ring.group().equal(&p12.gamma, &sum.gamma)? || p12.coset != sum.coset {
            return Ok(fail(format!(
                "psi not additive on ({})/({}) and ({})/({})",
                q1.num.format_terms(),
                q1.den.format_terms(),
                q2.num.format_terms(),
                q2.den.format_terms()
            )));
        }
        let u = sampling::unit_of_s(&ring, &mut rng);
        let uq = QuotientElement::new(u.mul(&q1.num)?, q1.den.clone())?;
        if !same_class(&ring, &psi(&uq)?, &p1)? {
            return Ok(fail(format!("psi moved by the unit {}", u.format_terms())));
        }
        let (a, b) = (&q1.num, &q2.num);
        let ab = a.mul(b)?;
        for (x, y) in [(a, b), (b, a), (a, &ab)] {
            let via_psi = divides(x, y, RingChoice::S)?;
            if let Some(oracle) = divides_by_division(x, y, RingChoice::S)? {
                conclusive += 1;
                positive += oracle as usize;
                if oracle != via_psi {
                    return Ok(fail(format!(
                        "divides({}, {}) is {via_psi} but long division says {oracle}",
                        x.format_terms(),
                        y.format_terms()
                    )));
                }
            }
        }
    }
    Ok(CheckReport::new("psi", Verdict::HoldsWithinBounds, cfg.samples as u64, Some(cfg.seed))
        .note("psi(q1*q2) = psi(q1) + psi(q2) exactly on every sample")
        .note("psi(u*q) = psi(q) for sampled units u of S")
        .note(format!(
            "divides via psi agrees with long division on all {conclusive} conclusive cases ({positive} divisible)"
        )))
}

/// With `K = F`, divisibility is the comparison of minimum exponents.
pub fn check_hahn_specialization(ext: Arc<ExtensionPair>, group: &GroupDescriptor, cfg: &CheckConfig) -> Result<CheckReport> {
    require_supported(group)?;
    if !ext.is_trivial() {
        return Err(Error::Validation(format!("{} is not a trivial extension", ext.literal())));
    }
    let ring = sampling_ring(ext.clone(), group, cfg)?;
    let mut rng = sampling::rng(cfg.seed);
    for _ in 0..cfg.samples {
        let f = sampling::nonzero_series(&ring, &mut rng);
        let g = sampling::nonzero_series(&ring, &mut rng);
        let by_min = group.leq(&f.min()?, &g.min()?)?;
        let class = psi(&QuotientElement::new(g.clone(), f.clone())?)?;
        if divides(&f, &g, RingChoice::S)? != by_min || !ext.contains(&class.coset) {
            return Ok(CheckReport::new(
                "hahn",
                Verdict::FailsWith(format!("f={} g={}", f.format_terms(), g.format_terms())),
                cfg.samples as u64,
                Some(cfg.seed),
            ));
        }
    }
    Ok(CheckReport::new("hahn", Verdict::HoldsWithinBounds, cfg.samples as u64, Some(cfg.seed))
        .note("divides(f, g) = (min f <= min g) on every sample")
        .note("coset coordinate of psi is trivial on every sample"))
}

/// Structural classification of `S` with sampled evidence.
#[derive(Debug, Clone)]
pub struct Classification {
    pub extension: String,
    pub group: GroupDescriptor,
    pub value_group: GroupDescriptor,
    pub pvd: bool,
    pub valuation_domain: bool,
    pub atomicity: Atomicity,
    pub hfd: bool,
    pub bvd: bool,
    pub evidence: Vec<CheckReport>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Classification {
    pub fn is_atomic(&self) -> bool {
        self.atomicity == Atomicity::Atomic
    }

    pub fn to_report(&self) -> CheckReport {
        let failed = self.evidence.iter().find(|r| r.verdict.is_failure());
        let verdict = match failed {
            Some(r) => Verdict::FailsWith(format!(
                "{}: {}",
                r.property,
                match &r.verdict {
                    Verdict::FailsWith(w) => w.as_str(),
                    _ => "",
                }
            )),
            None => Verdict::Holds,
        };
        let size = self.evidence.iter().map(|r| r.size).sum();
        let atomic = match &self.atomicity {
            Atomicity::Atomic => "yes".to_string(),
            Atomicity::NonAtomic { witness, .. } => {
                format!("no, witness {}", self.value_group.format(witness))
            }
        };
        let mut report = CheckReport::new("classification", verdict, size, self.evidence.first().and_then(|r| r.seed))
            .note(format!("ring: {} over {}", self.extension, self.group.literal()))
            .note(format!("group of divisibility: {}", self.value_group.literal()))
            .note(format!("pvd: {}", yes_no(self.pvd)))
            .note(format!("valuation domain: {}", yes_no(self.valuation_domain)))
            .note(format!("atomic: {atomic}"))
            .note(format!("hfd: {}", yes_no(self.hfd)))
            .note(format!("bvd: {}", yes_no(self.bvd)));
        for e in &self.evidence {
            report = report.note(format!("evidence {}: {} over {} cases", e.property, verdict_word(&e.verdict), e.size));
        }
        report
    }
}

fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::HoldsWithinBounds => "holds within bounds",
        Verdict::FailsWith(_) => "fails",
    }
}

pub fn classify_domain(ext: Arc<ExtensionPair>, group: &GroupDescriptor, cfg: &CheckConfig) -> Result<Classification> {
    require_supported(group)?;
    let value_group = GroupDescriptor::value_group(ext.clone(), group)?;
    let atomicity = value_group.atomicity_report()?;
    let mut evidence = vec![
        check_strongly_prime(ext.clone(), group, cfg)?,
        check_atomic(ext.clone(), group, cfg)?,
    ];
    let atomic = atomicity == Atomicity::Atomic;
    if *group == GroupDescriptor::Int {
        evidence.push(check_half_factorial(ext.clone(), group, cfg)?);
        evidence.push(check_boundary_overring(ext.clone(), group, cfg)?);
    }
    let sound = |p: &str| evidence.iter().filter(|r| r.property == p).all(|r| !r.verdict.is_failure());
    // G(S) is a lexicographic sum of a linear group and a trivially ordered one
    let pvd = sound("strongly-prime");
    let hfd = atomic && sound("half-factorial");
    let bvd = hfd && pvd && sound("boundary");
    Ok(Classification {
        extension: ext.literal(),
        group: group.clone(),
        value_group,
        pvd,
        valuation_domain: ext.is_trivial(),
        atomicity,
        hfd,
        bvd,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDescriptor;

    fn gf4() -> Arc<ExtensionPair> {
        Arc::new(ExtensionPair::new(FieldDescriptor::prime(2).unwrap(), FieldDescriptor::galois(2, 2).unwrap()).unwrap())
    }

    fn zz() -> GroupDescriptor {
        GroupDescriptor::lex_pair(GroupDescriptor::Int, GroupDescriptor::Int).unwrap()
    }

    fn small() -> CheckConfig {
        CheckConfig {
            samples: 40,
            cross_checks: 40,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn strongly_prime_exhaustive() {
        let r = check_strongly_prime(gf4(), &GroupDescriptor::Int, &small()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.size, 21 * 21);
        let r = check_strongly_prime(gf4(), &zz(), &small()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn atomic_reports() {
        let r = check_atomic(gf4(), &zz(), &small()).unwrap();
        assert_eq!(r.verdict, Verdict::FailsWith("((1,0),K♯)".into()));
        let r = check_atomic(gf4(), &GroupDescriptor::Rational, &small()).unwrap();
        assert!(r.verdict.is_failure());
        assert!(r.notes.iter().any(|n| n.contains("no minimal element")));
        assert_eq!(check_atomic(gf4(), &GroupDescriptor::Int, &small()).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn classification_examples() {
        let c = classify_domain(gf4(), &GroupDescriptor::Int, &small()).unwrap();
        assert!(c.pvd && c.is_atomic() && c.bvd && c.hfd && !c.valuation_domain);
        let c = classify_domain(gf4(), &zz(), &small()).unwrap();
        assert!(c.pvd && !c.is_atomic() && !c.hfd);
        let q = FieldDescriptor::rationals();
        let qq = Arc::new(ExtensionPair::new(q.clone(), q).unwrap());
        let c = classify_domain(qq, &GroupDescriptor::Int, &small()).unwrap();
        assert!(c.pvd && c.valuation_domain);
        assert_eq!(c.to_report().verdict, Verdict::Holds);
    }

    #[test]
    fn boundary_and_hfd() {
        let r = check_boundary_overring(gf4(), &GroupDescriptor::Int, &small()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithinBounds, "{r}");
        let r = check_half_factorial(gf4(), &GroupDescriptor::Int, &small()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithinBounds, "{r}");
        let r = check_half_factorial(gf4(), &zz(), &small()).unwrap();
        assert!(r.verdict.is_failure());
    }

    #[test]
    fn psi_and_hahn() {
        let r = check_psi_suite(gf4(), &GroupDescriptor::Int, &small()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithinBounds, "{r}");
        let f = FieldDescriptor::galois(2, 2).unwrap();
        let same = Arc::new(ExtensionPair::new(f.clone(), f).unwrap());
        let r = check_hahn_specialization(same, &GroupDescriptor::Int, &small()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithinBounds, "{r}");
        assert!(check_hahn_specialization(gf4(), &GroupDescriptor::Int, &small()).is_err());
    }
}
