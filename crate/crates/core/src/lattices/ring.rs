use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::ideals::{IdealLattice, IdealNode};
use super::poset::FinitePoset;
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::fields::linalg::FieldOps;
use crate::fields::{ExtensionPair, FieldElement};

/// Largest quotient ring enumerated by default.
pub const DEFAULT_RING_BOUND: u128 = 4096;

/// `(K + XF[[X]]) / X^τ`: tuples `(a₀, …, a_{τ-1})` with `a₀ ∈ K`, `aᵢ ∈ F`.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    ext: Arc<ExtensionPair>,
    tau: u32,
    field: Vec<FieldElement>,
    add: Vec<Vec<u16>>,
    mul: Vec<Vec<u16>>,
    elements: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
}

/// A set of ring elements as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(Vec<u64>);

impl ElementSet {
    fn empty(n: usize) -> Self {
        ElementSet(vec![0; n.div_ceil(64)])
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.0[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} elements}}", self.len())
    }
}

pub fn quotient_ring(ext: Arc<ExtensionPair>, tau: u32) -> Result<FiniteRing> {
    quotient_ring_bounded(ext, tau, DEFAULT_RING_BOUND)
}

pub fn quotient_ring_bounded(ext: Arc<ExtensionPair>, tau: u32, bound: u128) -> Result<FiniteRing> {
    if tau == 0 {
        return Err(Error::Validation("depth must be at least 1".into()));
    }
    let (Some(k), Some(q)) = (ext.small().order(), ext.large().order()) else {
        return Err(Error::InfiniteLattice(format!("{} is not a finite extension", ext.literal())));
    };
    let size = (1..tau).try_fold(k, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::TooLarge { size, bound });
    }
    let f = ext.large();
    let field = f.elements()?;
    let pos: HashMap<&FieldElement, u16> = field.iter().enumerate().map(|(i, x)| (x, i as u16)).collect();
    let table = |op: &dyn Fn(&FieldElement, &FieldElement) -> FieldElement| -> Vec<Vec<u16>> {
        field
            .iter()
            .map(|x| field.iter().map(|y| pos[&op(x, y)]).collect())
            .collect()
    };
    let add = table(&|x, y| f.add(x, y));
    let mul = table(&|x, y| f.mul(x, y));
    let in_k: Vec<u16> = field
        .iter()
        .enumerate()
        .filter(|(_, x)| ext.contains(x))
        .map(|(i, _)| i as u16)
        .collect();

    let mut elements: Vec<Vec<u16>> = in_k.iter().map(|&c| vec![c]).collect();
    for _ in 1..tau {
        elements = elements
            .into_iter()
            .flat_map(|v| {
                (0..field.len() as u16).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    let index = elements.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    Ok(FiniteRing {
        ext,
        tau,
        field,
        add,
        mul,
        elements,
        index,
    })
}

impl FiniteRing {
    pub fn ext(&self) -> &Arc<ExtensionPair> {
        &self.ext
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn zero_digit(&self) -> u16 {
        self.field.iter().position(|x| self.ext.large().is_zero(x)).unwrap() as u16
    }

    fn one_digit(&self) -> u16 {
        self.field.iter().position(|x| self.ext.large().is_one(x)).unwrap() as u16
    }

    pub fn zero(&self) -> usize {
        self.index[&vec![self.zero_digit(); self.tau as usize]]
    }

    pub fn one(&self) -> usize {
        let mut v = vec![self.zero_digit(); self.tau as usize];
        v[0] = self.one_digit();
        self.index[&v]
    }

    /// Coefficients `a₀, …, a_{τ-1}` of an element.
    pub fn coefficients(&self, i: usize) -> Vec<FieldElement> {
        self.elements[i].iter().map(|&d| self.field[d as usize].clone()).collect()
    }

    /// Index of the element with the given coefficients.
    pub fn element(&self, coeffs: &[FieldElement]) -> Option<usize> {
        let digits: Option<Vec<u16>> = coeffs
            .iter()
            .map(|c| self.field.iter().position(|x| x == c).map(|p| p as u16))
            .collect();
        self.index.get(&digits?).copied()
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.elements[i], &self.elements[j]);
        let v: Vec<u16> = a.iter().zip(b).map(|(&x, &y)| self.add[x as usize][y as usize]).collect();
        self.index[&v]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.elements[i], &self.elements[j]);
        let z = self.zero_digit();
        let mut v = vec![z; self.tau as usize];
        for (p, &x) in a.iter().enumerate() {
            if x == z {
                continue;
            }
            for (q, &y) in b.iter().enumerate().take(self.tau as usize - p) {
                let t = self.mul[x as usize][y as usize];
                v[p + q] = self.add[v[p + q] as usize][t as usize];
            }
        }
        self.index[&v]
    }

    /// First nonzero coefficient position, `None` for zero.
    pub fn order(&self, i: usize) -> Option<u32> {
        let z = self.zero_digit();
        self.elements[i].iter().position(|&d| d != z).map(|p| p as u32)
    }

    pub fn is_unit(&self, i: usize) -> bool {
        self.order(i) == Some(0)
    }

    /// Exhaustive commutative-ring axiom check.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.len();
        let (zero, one) = (self.zero(), self.one());
        let fail = |what: &str, t: &[usize]| Err(Error::Validation(format!("{what} fails at {t:?}")));
        for a in 0..n {
            if self.add(a, zero) != a || self.mul(a, one) != a {
                return fail("identity", &[a]);
            }
            if !(0..n).any(|b| self.add(a, b) == zero) {
                return fail("additive inverse", &[a]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity", &[a, b]);
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", &[a, b, c]);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("associativity", &[a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn principal(&self, r: usize) -> ElementSet {
        let mut s = ElementSet::empty(self.len());
        for x in 0..self.len() {
            s.insert(self.mul(x, r));
        }
        s
    }

    fn ideal_sum(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut s = ElementSet::empty(self.len());
        let bs: Vec<usize> = b.iter().collect();
        for x in a.iter() {
            for &y in &bs {
                s.insert(self.add(x, y));
            }
        }
        s
    }

    /// Closure of `seed ∪ {extra}` under addition and multiplication by ring elements.
    fn close_with(&self, seed: &ElementSet, extra: usize) -> ElementSet {
        let mut s = seed.clone();
        let mut members: Vec<usize> = s.iter().collect();
        let mut work = Vec::new();
        if s.insert(extra) {
            members.push(extra);
            work.push(extra);
        }
        while let Some(x) = work.pop() {
            for r in 0..self.len() {
                let y = self.mul(r, x);
                if s.insert(y) {
                    members.push(y);
                    work.push(y);
                }
            }
            let mut k = 0;
            while k < members.len() {
                let z = self.add(x, members[k]);
                if s.insert(z) {
                    members.push(z);
                    work.push(z);
                }
                k += 1;
            }
        }
        s
    }

    fn zero_ideal(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.len());
        s.insert(self.zero());
        s
    }

    /// Principal ideals, then pairwise sums to a fixpoint.
    pub fn ideals_principal_first(&self) -> BTreeSet<ElementSet> {
        let mut found: BTreeSet<ElementSet> = (0..self.len()).map(|r| self.principal(r)).collect();
        found.insert(self.zero_ideal());
        loop {
            let current: Vec<ElementSet> = found.iter().cloned().collect();
            let before = found.len();
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    found.insert(self.ideal_sum(a, b));
                }
            }
            if found.len() == before {
                return found;
            }
        }
    }

    /// Starting from the zero ideal, adjoin one element at a time and close.
    pub fn ideals_element_first(&self) -> BTreeSet<ElementSet> {
        let mut found = BTreeSet::from([self.zero_ideal()]);
        let mut queue = vec![self.zero_ideal()];
        while let Some(i) = queue.pop() {
            for r in 0..self.len() {
                if i.contains(r) {
                    continue;
                }
                let j = self.close_with(&i, r);
                if found.insert(j.clone()) {
                    queue.push(j);
                }
            }
        }
        found
    }

    pub fn is_ideal(&self, s: &ElementSet) -> bool {
        if !s.contains(self.zero()) {
            return false;
        }
        let members: Vec<usize> = s.iter().collect();
        members.iter().all(|&x| {
            members.iter().all(|&y| s.contains(self.add(x, y))) && (0..self.len()).all(|r| s.contains(self.mul(r, x)))
        })
    }

    /// Proper, and `ab ∈ I` forces `a ∈ I` or `b ∈ I`.
    pub fn is_prime_ideal(&self, s: &ElementSet) -> bool {
        if s.contains(self.one()) {
            return false;
        }
        (0..self.len()).all(|a| s.contains(a) || (0..self.len()).all(|b| !s.contains(self.mul(a, b)) || s.contains(b)))
    }

    pub fn nonunits(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.len());
        for i in (0..self.len()).filter(|&i| !self.is_unit(i)) {
            s.insert(i);
        }
        s
    }

    /// Reads an ideal as a glued node: its least order `n` and the space of
    /// order-`n` coefficients.
    pub fn classify_ideal(&self, s: &ElementSet) -> IdealNode {
        let ext = &self.ext;
        let orders: Vec<(usize, u32)> = s.iter().filter_map(|i| self.order(i).map(|o| (i, o))).collect();
        let Some(n) = orders.iter().map(|&(_, o)| o).min() else {
            return IdealNode::Zero;
        };
        if n == 0 {
            return IdealNode::Top;
        }
        let leading: Vec<FieldElement> = orders
            .iter()
            .filter(|&&(_, o)| o == n)
            .map(|&(i, _)| self.coefficients(i)[n as usize].clone())
            .collect();
        IdealNode::level(ext, n, Subspace::span_elements(ext, &leading))
    }
}

/// Result of brute-force ideal enumeration.
#[derive(Debug, Clone)]
pub struct RingIdeals {
    pub poset: FinitePoset<ElementSet>,
}

impl RingIdeals {
    /// The ideals read as glued nodes, ordered by inclusion of the underlying sets.
    pub fn classified(&self, ring: &FiniteRing) -> FinitePoset<IdealNode> {
        self.poset.map(|s| ring.classify_ideal(s))
    }

    /// Matches each ideal with a node of `lattice` by its reading, and checks
    /// that the inclusion order agrees exactly.
    pub fn matches_lattice(&self, ring: &FiniteRing, lattice: &IdealLattice) -> Result<()> {
        let classified = self.classified(ring);
        let mut image = Vec::new();
        for v in classified.nodes() {
            let v = match (v, lattice.truncation()) {
                (IdealNode::Level { n, .. }, super::ideals::Truncation::Quotient(t)) if *n >= t => IdealNode::Zero,
                _ => v.clone(),
            };
            let i = lattice
                .index_of(&v)
                .ok_or_else(|| Error::NodeMismatch(format!("ideal {} has no predicted node", v.label(ring.ext()))))?;
            image.push(i);
        }
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        if distinct.len() != image.len() || image.len() != lattice.len() {
            return Err(Error::NodeMismatch("ideal readings are not a bijection onto the predicted nodes".into()));
        }
        let p = lattice.poset();
        for i in 0..image.len() {
            for j in 0..image.len() {
                if self.poset.leq(i, j) != p.leq(image[i], image[j]) {
                    return Err(Error::NodeMismatch(format!(
                        "inclusion of {} in {} disagrees with the predicted order",
                        p.node(image[i]).label(ring.ext()),
                        p.node(image[j]).label(ring.ext())
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All ideals, found by two independent closure routes that must agree.
pub fn enumerate_ideals(ring: &FiniteRing) -> Result<RingIdeals> {
    let a = ring.ideals_principal_first();
    let b = ring.ideals_element_first();
    if a != b {
        return Err(Error::Validation(format!(
            "ideal enumeration routes disagree: {} vs {} ideals",
            a.len(),
            b.len()
        )));
    }
    for s in &a {
        if !ring.is_ideal(s) {
            return Err(Error::Validation(format!("enumerated set {s} is not an ideal")));
        }
    }
    let mut ideals: Vec<ElementSet> = a.into_iter().collect();
    ideals.sort_by_key(|s| std::cmp::Reverse(s.len()));
    Ok(RingIdeals {
        poset: FinitePoset::new(ideals, |x, y| x.is_subset(y))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDescriptor;

    fn ext(p: u64, k: u32, m: u32) -> Arc<ExtensionPair> {
        let small = if k == 1 { FieldDescriptor::prime(p).unwrap() } else { FieldDescriptor::galois(p, k).unwrap() };
        let large = if m == 1 { FieldDescriptor::prime(p).unwrap() } else { FieldDescriptor::galois(p, m).unwrap() };
        Arc::new(ExtensionPair::new(small, large).unwrap())
    }

    #[test]
    fn sizes_and_axioms() {
        let r = quotient_ring(ext(2, 1, 2), 3).unwrap();
        assert_eq!(r.len(), 32);
        r.verify_axioms().unwrap();
        assert_eq!(quotient_ring(ext(2, 1, 2), 1).unwrap().len(), 2);
        let r = quotient_ring(ext(2, 1, 1), 2).unwrap();
        assert_eq!(r.len(), 4);
        let f = r.ext().large();
        let x = r.element(&[f.zero(), f.one()]).unwrap();
        assert_eq!(r.mul(x, x), r.zero());
        r.verify_axioms().unwrap();
        assert!(matches!(
            quotient_ring(ext(2, 1, 2), 8),
            Err(Error::TooLarge { size: 32768, bound: 4096 })
        ));
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(enumerate_ideals(&quotient_ring(ext(2, 1, 2), 3).unwrap()).unwrap().poset.len(), 10);
        assert_eq!(enumerate_ideals(&quotient_ring(ext(2, 1, 1), 2).unwrap()).unwrap().poset.len(), 3);
        assert_eq!(enumerate_ideals(&quotient_ring(ext(2, 1, 2), 1).unwrap()).unwrap().poset.len(), 2);
    }

    #[test]
    fn local_and_prime_chain() {
        let r = quotient_ring(ext(2, 1, 2), 3).unwrap();
        let ideals = enumerate_ideals(&r).unwrap();
        let primes: Vec<&ElementSet> = ideals.poset.nodes().iter().filter(|s| r.is_prime_ideal(s)).collect();
        for a in &primes {
            for b in &primes {
                assert!(a.is_subset(b) || b.is_subset(a));
            }
        }
        let proper: Vec<&ElementSet> = ideals.poset.nodes().iter().filter(|s| !s.contains(r.one())).collect();
        let maximal: Vec<&&ElementSet> = proper
            .iter()
            .filter(|s| !proper.iter().any(|t| s.is_subset(t) && s != &t))
            .collect();
        assert_eq!(maximal.len(), 1);
        assert_eq!(**maximal[0], r.nonunits());
    }
}
