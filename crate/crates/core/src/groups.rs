//! Ordered abelian groups: exponent groups and groups of divisibility.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::linalg::FieldOps;
use crate::fields::{ExtensionPair, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Int,
    Rational,
    /// Lexicographic sum of two linearly ordered groups.
    LexPair(Box<GroupDescriptor>, Box<GroupDescriptor>),
    /// `F♯/K♯`, trivially ordered.
    TrivialQuotient(Arc<ExtensionPair>),
    /// `L ∘ A` with `L` linearly ordered and `A` trivially ordered.
    LexSum(Box<GroupDescriptor>, Box<GroupDescriptor>),
}

/// Group elements. Derived equality is structural; coset representatives are
/// not canonical, so use [`GroupDescriptor::equal`] for group equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Int(i64),
    Rational(BigRational),
    Pair(Box<GroupElement>, Box<GroupElement>),
    Coset(FieldElement),
}

impl GroupElement {
    pub fn pair(a: GroupElement, b: GroupElement) -> Self {
        GroupElement::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            GroupElement::Int(n) => Some(*n),
            _ => None,
        }
    }

    /// Components of a pair.
    pub fn parts(&self) -> Option<(&GroupElement, &GroupElement)> {
        match self {
            GroupElement::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Greater => Comparison::Greater,
            Ordering::Equal => Comparison::Equal,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Less => "LT",
            Comparison::Greater => "GT",
            Comparison::Equal => "EQ",
            Comparison::Incomparable => "INCOMPARABLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonAtomicReason {
    /// The positive cone has no minimal element.
    NoAtoms,
    /// Every atom has first coordinate zero, and so does every finite sum of atoms.
    AtomsInLowerFactor,
}

impl fmt::Display for NonAtomicReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonAtomicReason::NoAtoms => {
                "no atoms: every positive element p has p/2 strictly between 0 and p"
            }
            NonAtomicReason::AtomsInLowerFactor => {
                "all atoms have leading exponent coordinate 0, so sums of atoms never reach the witness"
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atomicity {
    Atomic,
    NonAtomic {
        witness: GroupElement,
        reason: NonAtomicReason,
    },
}

/// Bounds for windowed subgroup checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    /// Coordinates (and denominators, for rationals) are bounded by this radius.
    pub radius: i64,
    /// Enumeration stops with [`Error::WindowExhausted`] past this many elements.
    pub max_elements: usize,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            radius: 3,
            max_elements: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowVerdict {
    ConvexDirected,
    FailsConvex(GroupElement),
    FailsDirected(GroupElement),
}

impl GroupDescriptor {
    pub fn lex_pair(a: GroupDescriptor, b: GroupDescriptor) -> Result<Self> {
        if !a.is_linear() || !b.is_linear() || a.is_trivially_ordered() || b.is_trivially_ordered() {
            return Err(Error::UnsupportedKind(
                "lexicographic pairs need linearly ordered components".into(),
            ));
        }
        Ok(GroupDescriptor::LexPair(Box::new(a), Box::new(b)))
    }

    pub fn lex_sum(linear: GroupDescriptor, antichain: GroupDescriptor) -> Result<Self> {
        if !linear.is_linear() || !antichain.is_trivially_ordered() {
            return Err(Error::UnsupportedKind(
                "lexicographic sums need a linear part and a trivially ordered part".into(),
            ));
        }
        Ok(GroupDescriptor::LexSum(Box::new(linear), Box::new(antichain)))
    }

    /// `Γ ∘ F♯/K♯`, the value group of the series ring over `ext`.
    pub fn value_group(ext: Arc<ExtensionPair>, exponents: &GroupDescriptor) -> Result<Self> {
        Self::lex_sum(exponents.clone(), GroupDescriptor::TrivialQuotient(ext))
    }

    pub fn is_linear(&self) -> bool {
        match self {
            GroupDescriptor::Int | GroupDescriptor::Rational => true,
            GroupDescriptor::LexPair(a, b) => a.is_linear() && b.is_linear(),
            GroupDescriptor::TrivialQuotient(ext) => ext.is_trivial(),
            GroupDescriptor::LexSum(l, a) => l.is_linear() && a.is_linear(),
        }
    }

    pub fn is_trivially_ordered(&self) -> bool {
        matches!(self, GroupDescriptor::TrivialQuotient(_))
    }

    /// Literal in the group grammar where one exists.
    pub fn literal(&self) -> String {
        match self {
            GroupDescriptor::Int => "z".into(),
            GroupDescriptor::Rational => "q".into(),
            GroupDescriptor::LexPair(a, b) => format!("{}*{}", a.literal(), b.literal()),
            GroupDescriptor::TrivialQuotient(ext) => {
                format!("{}#/{}#", ext.large().literal(), ext.small().literal())
            }
            GroupDescriptor::LexSum(l, a) => format!("{} o {}", l.literal(), a.literal()),
        }
    }

    fn mismatch<T>() -> Result<T> {
        Err(Error::PayloadMismatch)
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        match (self, x) {
            (GroupDescriptor::Int, GroupElement::Int(_)) => Ok(()),
            (GroupDescriptor::Rational, GroupElement::Rational(_)) => Ok(()),
            (GroupDescriptor::TrivialQuotient(ext), GroupElement::Coset(c)) => {
                if c.coeffs().len() != ext.large().degree() || ext.large().is_zero(c) {
                    Self::mismatch()
                } else {
                    Ok(())
                }
            }
            (GroupDescriptor::LexPair(a, b) | GroupDescriptor::LexSum(a, b), GroupElement::Pair(x, y)) => {
                a.check(x)?;
                b.check(y)
            }
            _ => Self::mismatch(),
        }
    }

    pub fn zero(&self) -> GroupElement {
        match self {
            GroupDescriptor::Int => GroupElement::Int(0),
            GroupDescriptor::Rational => GroupElement::Rational(BigRational::zero()),
            GroupDescriptor::LexPair(a, b) | GroupDescriptor::LexSum(a, b) => {
                GroupElement::pair(a.zero(), b.zero())
            }
            GroupDescriptor::TrivialQuotient(ext) => GroupElement::Coset(ext.large().one()),
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        Ok(match (self, x, y) {
            (GroupDescriptor::Int, GroupElement::Int(a), GroupElement::Int(b)) => {
                GroupElement::Int(a.checked_add(*b).ok_or(Error::PayloadMismatch)?)
            }
            (GroupDescriptor::Rational, GroupElement::Rational(a), GroupElement::Rational(b)) => {
                GroupElement::Rational(a + b)
            }
            (
                GroupDescriptor::LexPair(g, h) | GroupDescriptor::LexSum(g, h),
                GroupElement::Pair(x1, x2),
                GroupElement::Pair(y1, y2),
            ) => GroupElement::pair(g.add(x1, y1)?, h.add(x2, y2)?),
            (GroupDescriptor::TrivialQuotient(ext), GroupElement::Coset(a), GroupElement::Coset(b)) => {
                GroupElement::Coset(ext.large().mul(a, b))
            }
            _ => return Self::mismatch(),
        })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        Ok(match (self, x) {
            (GroupDescriptor::Int, GroupElement::Int(a)) => GroupElement::Int(-a),
            (GroupDescriptor::Rational, GroupElement::Rational(a)) => GroupElement::Rational(-a),
            (GroupDescriptor::LexPair(g, h) | GroupDescriptor::LexSum(g, h), GroupElement::Pair(a, b)) => {
                GroupElement::pair(g.neg(a)?, h.neg(b)?)
            }
            (GroupDescriptor::TrivialQuotient(ext), GroupElement::Coset(a)) => {
                GroupElement::Coset(ext.large().try_inv(a).map_err(|_| Error::PayloadMismatch)?)
            }
            _ => return Self::mismatch(),
        })
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(x, &self.neg(y)?)
    }

    /// Multiplies by a nonnegative integer.
    pub fn scale(&self, x: &GroupElement, n: u32) -> Result<GroupElement> {
        let mut acc = self.zero();
        for _ in 0..n {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn compare(&self, x: &GroupElement, y: &GroupElement) -> Result<Comparison> {
        Ok(match (self, x, y) {
            (GroupDescriptor::Int, GroupElement::Int(a), GroupElement::Int(b)) => a.cmp(b).into(),
            (GroupDescriptor::Rational, GroupElement::Rational(a), GroupElement::Rational(b)) => {
                a.cmp(b).into()
            }
            (
                GroupDescriptor::LexPair(g, h) | GroupDescriptor::LexSum(g, h),
                GroupElement::Pair(x1, x2),
                GroupElement::Pair(y1, y2),
            ) => match g.compare(x1, y1)? {
                Comparison::Equal => h.compare(x2, y2)?,
                other => other,
            },
            (GroupDescriptor::TrivialQuotient(ext), GroupElement::Coset(a), GroupElement::Coset(b)) => {
                if ext.same_coset(a, b) {
                    Comparison::Equal
                } else {
                    Comparison::Incomparable
                }
            }
            _ => return Self::mismatch(),
        })
    }

    pub fn equal(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        Ok(self.compare(x, y)? == Comparison::Equal)
    }

    pub fn leq(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        Ok(matches!(self.compare(x, y)?, Comparison::Less | Comparison::Equal))
    }

    pub fn is_positive(&self, x: &GroupElement) -> Result<bool> {
        self.leq(&self.zero(), x)
    }

    pub fn is_strictly_positive(&self, x: &GroupElement) -> Result<bool> {
        Ok(self.compare(&self.zero(), x)? == Comparison::Less)
    }

    /// Whether `x` is a minimal strictly positive element, decided analytically.
    pub fn is_atom(&self, x: &GroupElement) -> Result<bool> {
        self.check(x)?;
        Ok(match (self, x) {
            (GroupDescriptor::Int, GroupElement::Int(n)) => *n == 1,
            (GroupDescriptor::Rational, _) => false,
            (GroupDescriptor::TrivialQuotient(_), _) => false,
            (GroupDescriptor::LexPair(g, h), GroupElement::Pair(a, b)) => {
                g.equal(a, &g.zero())? && h.is_atom(b)?
            }
            (GroupDescriptor::LexSum(l, _), GroupElement::Pair(a, _)) => l.is_atom(a)?,
            _ => return Self::mismatch(),
        })
    }

    /// A fixed strictly positive element of a linearly ordered kind.
    fn reference_positive(&self) -> Result<GroupElement> {
        match self {
            GroupDescriptor::Int => Ok(GroupElement::Int(1)),
            GroupDescriptor::Rational => Ok(GroupElement::Rational(BigRational::one())),
            GroupDescriptor::LexPair(g, h) => Ok(GroupElement::pair(g.reference_positive()?, h.zero())),
            _ => Err(Error::UnsupportedKind(self.literal())),
        }
    }

    fn has_atoms(&self) -> bool {
        match self {
            GroupDescriptor::Int => true,
            GroupDescriptor::Rational | GroupDescriptor::TrivialQuotient(_) => false,
            GroupDescriptor::LexPair(_, h) => h.has_atoms(),
            GroupDescriptor::LexSum(l, _) => l.has_atoms(),
        }
    }

    /// Whether every positive element is a finite sum of atoms.
    pub fn atomicity_report(&self) -> Result<Atomicity> {
        match self {
            GroupDescriptor::Int | GroupDescriptor::TrivialQuotient(_) => Ok(Atomicity::Atomic),
            GroupDescriptor::Rational => Ok(Atomicity::NonAtomic {
                witness: self.reference_positive()?,
                reason: NonAtomicReason::NoAtoms,
            }),
            GroupDescriptor::LexPair(_, _) => Ok(Atomicity::NonAtomic {
                witness: self.reference_positive()?,
                reason: if self.has_atoms() {
                    NonAtomicReason::AtomsInLowerFactor
                } else {
                    NonAtomicReason::NoAtoms
                },
            }),
            GroupDescriptor::LexSum(l, a) => {
                if !l.is_linear() {
                    return Err(Error::UnsupportedKind(self.literal()));
                }
                Ok(match l.atomicity_report()? {
                    Atomicity::Atomic => Atomicity::Atomic,
                    Atomicity::NonAtomic { witness, reason } => Atomicity::NonAtomic {
                        witness: GroupElement::pair(witness, a.zero()),
                        reason,
                    },
                })
            }
        }
    }

    /// All atoms, for kinds where the atom set is finite.
    pub fn atom_catalog(&self) -> Result<Vec<GroupElement>> {
        match self {
            GroupDescriptor::Int => Ok(vec![GroupElement::Int(1)]),
            GroupDescriptor::Rational | GroupDescriptor::TrivialQuotient(_) => Ok(Vec::new()),
            GroupDescriptor::LexPair(g, h) => Ok(h
                .atom_catalog()?
                .into_iter()
                .map(|b| GroupElement::pair(g.zero(), b))
                .collect()),
            GroupDescriptor::LexSum(l, a) => {
                let cosets = a.enumerate_all()?;
                let mut out = Vec::new();
                for x in l.atom_catalog()? {
                    for c in &cosets {
                        out.push(GroupElement::pair(x.clone(), c.clone()));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Every element of a finite group (only the trivially ordered kind is finite).
    fn enumerate_all(&self) -> Result<Vec<GroupElement>> {
        match self {
            GroupDescriptor::TrivialQuotient(ext) => Ok(ext
                .coset_representatives()
                .map_err(|_| Error::UnsupportedKind("infinite coset group".into()))?
                .into_iter()
                .map(GroupElement::Coset)
                .collect()),
            _ => Err(Error::UnsupportedKind(format!("{} is infinite", self.literal()))),
        }
    }

    /// Whether `target` is a sum of between 1 and `max_terms` atoms from `atoms`.
    pub fn reachable_by_atom_sums(
        &self,
        atoms: &[GroupElement],
        target: &GroupElement,
        max_terms: usize,
    ) -> Result<bool> {
        let mut frontier: HashSet<GroupElement> = HashSet::new();
        frontier.insert(self.canonicalize(&self.zero()));
        for _ in 0..max_terms {
            let mut next = HashSet::new();
            for s in &frontier {
                for a in atoms {
                    let t = self.canonicalize(&self.add(s, a)?);
                    if self.equal(&t, target)? {
                        return Ok(true);
                    }
                    next.insert(t);
                }
            }
            frontier = next;
        }
        Ok(false)
    }

    /// Replaces coset representatives by the least element of their coset when `K` is finite.
    pub fn canonicalize(&self, x: &GroupElement) -> GroupElement {
        match (self, x) {
            (GroupDescriptor::TrivialQuotient(ext), GroupElement::Coset(c)) => {
                let f = ext.large();
                match ext.small_elements() {
                    Ok(ks) => GroupElement::Coset(
                        ks.iter()
                            .filter(|k| !f.is_zero(k))
                            .map(|k| f.mul(c, k))
                            .min()
                            .unwrap_or_else(|| c.clone()),
                    ),
                    Err(_) => x.clone(),
                }
            }
            (GroupDescriptor::LexPair(g, h) | GroupDescriptor::LexSum(g, h), GroupElement::Pair(a, b)) => {
                GroupElement::pair(g.canonicalize(a), h.canonicalize(b))
            }
            _ => x.clone(),
        }
    }

    pub fn format(&self, x: &GroupElement) -> String {
        match (self, x) {
            (_, GroupElement::Int(n)) => n.to_string(),
            (_, GroupElement::Rational(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (GroupDescriptor::LexPair(g, h) | GroupDescriptor::LexSum(g, h), GroupElement::Pair(a, b)) => {
                format!("({},{})", g.format(a), h.format(b))
            }
            (GroupDescriptor::TrivialQuotient(ext), GroupElement::Coset(c)) => {
                let c = match self.canonicalize(x) {
                    GroupElement::Coset(c) => c,
                    _ => c.clone(),
                };
                if ext.contains(&c) {
                    "K♯".into()
                } else {
                    let s = ext.large().format(&c);
                    if s.contains(['+', '-', '*']) {
                        format!("({s})K♯")
                    } else {
                        format!("{s}K♯")
                    }
                }
            }
            (_, GroupElement::Pair(a, b)) => format!("({a:?},{b:?})"),
            (_, GroupElement::Coset(c)) => format!("{c:?}"),
        }
    }

    fn in_box(&self, x: &GroupElement, radius: i64) -> bool {
        match x {
            GroupElement::Int(n) => n.abs() <= radius,
            GroupElement::Rational(r) => {
                r.abs() <= BigRational::from_integer(radius.into())
                    && *r.denom() <= radius.into()
            }
            GroupElement::Pair(a, b) => {
                let (g, h) = match self {
                    GroupDescriptor::LexPair(g, h) | GroupDescriptor::LexSum(g, h) => (g, h),
                    _ => return false,
                };
                g.in_box(a, radius) && h.in_box(b, radius)
            }
            GroupElement::Coset(_) => true,
        }
    }

    /// All elements inside the box of the given radius.
    pub fn box_elements(&self, radius: i64, max_elements: usize) -> Result<Vec<GroupElement>> {
        let out = match self {
            GroupDescriptor::Int => (-radius..=radius).map(GroupElement::Int).collect(),
            GroupDescriptor::Rational => {
                let mut set = HashSet::new();
                for den in 1..=radius {
                    for num in -radius * den..=radius * den {
                        set.insert(BigRational::new(num.into(), den.into()));
                    }
                }
                let mut v: Vec<BigRational> = set.into_iter().collect();
                v.sort();
                v.into_iter().map(GroupElement::Rational).collect()
            }
            GroupDescriptor::TrivialQuotient(_) => self.enumerate_all()?,
            GroupDescriptor::LexPair(g, h) | GroupDescriptor::LexSum(g, h) => {
                let left = g.box_elements(radius, max_elements)?;
                let right = h.box_elements(radius, max_elements)?;
                if left.len().saturating_mul(right.len()) > max_elements {
                    return Err(Error::WindowExhausted(left.len() * right.len()));
                }
                let mut v = Vec::with_capacity(left.len() * right.len());
                for a in &left {
                    for b in &right {
                        v.push(GroupElement::pair(a.clone(), b.clone()));
                    }
                }
                v
            }
        };
        if out.len() > max_elements {
            return Err(Error::WindowExhausted(out.len()));
        }
        Ok(out)
    }

    /// Closure of `generators` under `±` inside the box of the given radius.
    pub fn subgroup_in_box(
        &self,
        generators: &[GroupElement],
        radius: i64,
        max_elements: usize,
    ) -> Result<HashSet<GroupElement>> {
        for g in generators {
            self.check(g)?;
        }
        let mut steps: Vec<GroupElement> = Vec::new();
        for g in generators {
            steps.push(self.canonicalize(g));
            steps.push(self.canonicalize(&self.neg(g)?));
        }
        let start = self.canonicalize(&self.zero());
        let mut seen: HashSet<GroupElement> = HashSet::from([start.clone()]);
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for s in &steps {
                let y = self.canonicalize(&self.add(&x, s)?);
                if self.in_box(&y, radius) && seen.insert(y.clone()) {
                    if seen.len() > max_elements {
                        return Err(Error::WindowExhausted(seen.len()));
                    }
                    queue.push(y);
                }
            }
        }
        Ok(seen)
    }

    /// Bounded check that the subgroup generated by `generators` is convex and directed.
    ///
    /// Membership is decided inside a box of twice the window radius; convexity
    /// and directedness are tested for subgroup elements inside the window.
    pub fn convex_directed_window_check(
        &self,
        generators: &[GroupElement],
        window: Window,
    ) -> Result<WindowVerdict> {
        let r = window.radius;
        let members = self.subgroup_in_box(generators, 2 * r, window.max_elements)?;
        let mut inner: Vec<GroupElement> = members
            .iter()
            .filter(|x| self.in_box(x, r))
            .cloned()
            .collect();
        inner.sort_by_key(|x| format!("{x:?}"));
        let ambient = self.box_elements(r, window.max_elements)?;

        for b in &inner {
            if !self.is_positive(b)? {
                continue;
            }
            for c in &ambient {
                if self.is_positive(c)? && self.leq(c, b)? && !members.contains(&self.canonicalize(c)) {
                    return Ok(WindowVerdict::FailsConvex(c.clone()));
                }
            }
        }
        for h in &inner {
            let mut directed = false;
            for p in &members {
                if self.is_positive(p)? && self.leq(h, p)? {
                    directed = true;
                    break;
                }
            }
            if !directed {
                return Ok(WindowVerdict::FailsDirected(h.clone()));
            }
        }
        Ok(WindowVerdict::ConvexDirected)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

/// Total order on exponents of a linearly ordered kind, used to key series terms.
pub(crate) fn linear_cmp(x: &GroupElement, y: &GroupElement) -> Ordering {
    use GroupElement::*;
    match (x, y) {
        (Int(a), Int(b)) => a.cmp(b),
        (Rational(a), Rational(b)) => a.cmp(b),
        (Pair(a1, a2), Pair(b1, b2)) => linear_cmp(a1, b1).then_with(|| linear_cmp(a2, b2)),
        (Coset(a), Coset(b)) => a.cmp(b),
        _ => rank(x).cmp(&rank(y)),
    }
}

fn rank(x: &GroupElement) -> u8 {
    match x {
        GroupElement::Int(_) => 0,
        GroupElement::Rational(_) => 1,
        GroupElement::Pair(..) => 2,
        GroupElement::Coset(_) => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDescriptor;

    fn gf4_over_gf2() -> Arc<ExtensionPair> {
        Arc::new(
            ExtensionPair::new(FieldDescriptor::prime(2).unwrap(), FieldDescriptor::galois(2, 2).unwrap())
                .unwrap(),
        )
    }

    fn zz() -> GroupDescriptor {
        GroupDescriptor::lex_pair(GroupDescriptor::Int, GroupDescriptor::Int).unwrap()
    }

    fn ip(a: i64, b: i64) -> GroupElement {
        GroupElement::pair(GroupElement::Int(a), GroupElement::Int(b))
    }

    #[test]
    fn lex_pair_arithmetic_and_order() {
        let g = zz();
        assert_eq!(g.add(&ip(1, 2), &ip(0, -5)).unwrap(), ip(1, -3));
        assert_eq!(g.compare(&ip(0, 5), &ip(1, 0)).unwrap(), Comparison::Less);
        assert!(g.is_positive(&ip(1, -100)).unwrap());
        assert!(g.is_atom(&ip(0, 1)).unwrap());
        assert!(!g.is_atom(&ip(1, 0)).unwrap());
    }

    #[test]
    fn coset_arithmetic() {
        let ext = gf4_over_gf2();
        let f = ext.large();
        let a = f.generator();
        let q = GroupDescriptor::TrivialQuotient(ext.clone());
        let aa = q.add(&GroupElement::Coset(a.clone()), &GroupElement::Coset(a.clone())).unwrap();
        assert_eq!(aa, GroupElement::Coset(f.add(&a, &f.one())));
        assert_eq!(
            q.compare(&GroupElement::Coset(a.clone()), &q.zero()).unwrap(),
            Comparison::Incomparable
        );
        let v = GroupDescriptor::value_group(ext.clone(), &GroupDescriptor::Int).unwrap();
        let x = GroupElement::pair(GroupElement::Int(0), GroupElement::Coset(a.clone()));
        let y = GroupElement::pair(GroupElement::Int(1), GroupElement::Coset(f.add(&a, &f.one())));
        assert_eq!(v.compare(&x, &y).unwrap(), Comparison::Less);
        assert!(!v.is_positive(&x).unwrap());
        assert!(v.is_positive(&v.zero()).unwrap());
        assert!(v.is_atom(&GroupElement::pair(GroupElement::Int(1), GroupElement::Coset(a))).unwrap());
    }

    #[test]
    fn payload_mismatch() {
        assert_eq!(
            GroupDescriptor::Int.add(&GroupElement::Int(1), &ip(1, 1)),
            Err(Error::PayloadMismatch)
        );
        assert_eq!(zz().compare(&ip(1, 1), &GroupElement::Int(0)), Err(Error::PayloadMismatch));
    }

    #[test]
    fn atoms_of_basic_kinds() {
        assert!(GroupDescriptor::Int.is_atom(&GroupElement::Int(1)).unwrap());
        assert!(!GroupDescriptor::Int.is_atom(&GroupElement::Int(2)).unwrap());
        let half = GroupElement::Rational(BigRational::new(1.into(), 2.into()));
        assert!(!GroupDescriptor::Rational.is_atom(&half).unwrap());
    }

    #[test]
    fn atomicity_reports() {
        let ext = gf4_over_gf2();
        let over_z = GroupDescriptor::value_group(ext.clone(), &GroupDescriptor::Int).unwrap();
        assert_eq!(over_z.atomicity_report().unwrap(), Atomicity::Atomic);

        let over_zz = GroupDescriptor::value_group(ext.clone(), &zz()).unwrap();
        match over_zz.atomicity_report().unwrap() {
            Atomicity::NonAtomic { witness, reason } => {
                assert_eq!(reason, NonAtomicReason::AtomsInLowerFactor);
                assert_eq!(over_zz.format(&witness), "((1,0),K♯)");
                let atoms = over_zz.atom_catalog().unwrap();
                assert_eq!(atoms.len(), 3);
                assert!(!over_zz.reachable_by_atom_sums(&atoms, &witness, 6).unwrap());
            }
            other => panic!("expected nonatomic, got {other:?}"),
        }

        let over_q = GroupDescriptor::value_group(ext, &GroupDescriptor::Rational).unwrap();
        assert!(matches!(
            over_q.atomicity_report().unwrap(),
            Atomicity::NonAtomic { reason: NonAtomicReason::NoAtoms, .. }
        ));
    }

    #[test]
    fn window_checks() {
        let ext = gf4_over_gf2();
        let a = ext.large().generator();
        let v = GroupDescriptor::value_group(ext, &GroupDescriptor::Int).unwrap();
        let gen = GroupElement::pair(GroupElement::Int(0), GroupElement::Coset(a));
        assert!(matches!(
            v.convex_directed_window_check(&[gen], Window::default()).unwrap(),
            WindowVerdict::FailsDirected(_)
        ));
        assert_eq!(
            GroupDescriptor::Int
                .convex_directed_window_check(&[GroupElement::Int(1)], Window::default())
                .unwrap(),
            WindowVerdict::ConvexDirected
        );
        assert_eq!(
            zz().convex_directed_window_check(&[ip(0, 1)], Window::default()).unwrap(),
            WindowVerdict::ConvexDirected
        );
        assert!(matches!(
            zz().convex_directed_window_check(&[ip(1, 0)], Window::default()).unwrap(),
            WindowVerdict::FailsConvex(_)
        ));
        assert!(matches!(
            GroupDescriptor::Int
                .convex_directed_window_check(&[GroupElement::Int(2)], Window::default())
                .unwrap(),
            WindowVerdict::FailsConvex(_)
        ));
    }

    #[test]
    fn window_exhaustion() {
        let w = Window { radius: 5, max_elements: 10 };
        assert!(matches!(
            GroupDescriptor::Int.convex_directed_window_check(&[GroupElement::Int(1)], w),
            Err(Error::WindowExhausted(_))
        ));
    }
}
