//! Truncated generalized power series over `F[[Γ⁺]]` and the restricted subring
//! `S = {f : f(0) ∈ K}`.
//!
//! A series stores finitely many terms and a precision `τ`: coefficients at
//! exponents below `τ` are known exactly, everything at or above `τ` is unknown.
//! Operations propagate precision honestly instead of truncating silently.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::linalg::FieldOps;
use crate::fields::{ExtensionPair, FieldDescriptor, FieldElement};
use crate::groups::{linear_cmp, GroupDescriptor, GroupElement};

/// Default cap on stored terms and on iterations of inversion and long division.
pub const DEFAULT_BUDGET: usize = 512;

/// Exponent key ordered by the (linear) exponent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(pub GroupElement);

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        linear_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The ambient ring `F[[Γ⁺]]` with its subring data `K ⊆ F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesRing {
    ext: Arc<ExtensionPair>,
    group: GroupDescriptor,
    precision: GroupElement,
    budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    InR,
    InS,
    UnitR,
    UnitS,
}

#[derive(Clone)]
pub struct Series {
    ring: Arc<SeriesRing>,
    terms: BTreeMap<Exponent, FieldElement>,
    precision: GroupElement,
}

/// `f = lead · δ_order · tail` with `tail(0) = 1`.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub lead: FieldElement,
    pub order: GroupElement,
    pub tail: Series,
}

/// Quotient of two series, `num / den` with `den ≠ 0`.
#[derive(Debug, Clone)]
pub struct QuotientElement {
    pub num: Series,
    pub den: Series,
}

/// Outcome of truncated long division `g / f`.
#[derive(Debug, Clone)]
pub enum Division {
    /// `g / f` lies in `F[[Γ⁺]]`; the quotient is known below its precision,
    /// which is positive so its constant term is determined.
    Quotient(Series),
    /// `g / f` has a negative-order term, so it is outside `F[[Γ⁺]]`.
    NotInValuationRing,
    /// Precision or budget ran out before the quotient's constant term was known.
    Inconclusive,
}

impl SeriesRing {
    /// `precision` is the default `τ` for series built from this ring.
    pub fn new(
        ext: Arc<ExtensionPair>,
        group: GroupDescriptor,
        precision: GroupElement,
        budget: usize,
    ) -> Result<Arc<Self>> {
        if !group.is_linear() || group.is_trivially_ordered() {
            return Err(Error::UnsupportedGroup(format!(
                "{} is not a linearly ordered exponent group",
                group.literal()
            )));
        }
        group.check(&precision)?;
        if !group.is_strictly_positive(&precision)? {
            return Err(Error::NegativeExponent(group.format(&precision)));
        }
        Ok(Arc::new(SeriesRing {
            ext,
            group,
            precision,
            budget,
        }))
    }

    pub fn ext(&self) -> &Arc<ExtensionPair> {
        &self.ext
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.ext.large()
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn precision(&self) -> &GroupElement {
        &self.precision
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// The value group `Γ ∘ F♯/K♯`.
    pub fn value_group(&self) -> GroupDescriptor {
        GroupDescriptor::value_group(self.ext.clone(), &self.group).expect("linear exponent group")
    }

    fn cmp(&self, x: &GroupElement, y: &GroupElement) -> Ordering {
        linear_cmp(x, y)
    }

    fn min_elem(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        if self.cmp(&x, &y) == Ordering::Greater {
            y
        } else {
            x
        }
    }
}

impl Series {
    pub fn zero(ring: &Arc<SeriesRing>) -> Self {
        Self::zero_with_precision(ring, ring.precision.clone())
    }

    pub fn zero_with_precision(ring: &Arc<SeriesRing>, precision: GroupElement) -> Self {
        Series {
            ring: ring.clone(),
            terms: BTreeMap::new(),
            precision,
        }
    }

    pub fn one(ring: &Arc<SeriesRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<SeriesRing>, c: FieldElement) -> Self {
        Self::monomial(ring, c, ring.group.zero()).expect("zero exponent is positive")
    }

    /// `δ_m` at the ring's default precision.
    pub fn delta(ring: &Arc<SeriesRing>, m: GroupElement) -> Result<Self> {
        Self::monomial(ring, ring.field().one(), m)
    }

    /// `δ_m` at precision `τ`.
    pub fn delta_with_precision(ring: &Arc<SeriesRing>, m: GroupElement, precision: GroupElement) -> Result<Self> {
        Self::from_terms(ring, [(m, ring.field().one())], precision)
    }

    pub fn monomial(ring: &Arc<SeriesRing>, c: FieldElement, m: GroupElement) -> Result<Self> {
        Self::from_terms(ring, [(m, c)], ring.precision.clone())
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated exponents are summed.
    /// Terms at or above the precision are discarded.
    pub fn from_terms(
        ring: &Arc<SeriesRing>,
        terms: impl IntoIterator<Item = (GroupElement, FieldElement)>,
        precision: GroupElement,
    ) -> Result<Self> {
        let g = &ring.group;
        g.check(&precision)?;
        let f = ring.field();
        let mut map: BTreeMap<Exponent, FieldElement> = BTreeMap::new();
        for (e, c) in terms {
            g.check(&e)?;
            if !g.is_positive(&e)? {
                return Err(Error::NegativeExponent(g.format(&e)));
            }
            if ring.cmp(&e, &precision) != Ordering::Less {
                continue;
            }
            let slot = map.entry(Exponent(e)).or_insert_with(|| f.zero());
            *slot = f.add(slot, &c);
        }
        map.retain(|_, c| !f.is_zero(c));
        Ok(Series {
            ring: ring.clone(),
            terms: map,
            precision,
        })
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn precision(&self) -> &GroupElement {
        &self.precision
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &FieldElement)> {
        self.terms.iter().map(|(e, c)| (&e.0, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No known nonzero coefficient below the precision.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `e` (zero when absent). Only meaningful below the precision.
    pub fn coeff(&self, e: &GroupElement) -> FieldElement {
        self.terms
            .get(&Exponent(e.clone()))
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// `f(0)`.
    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&self.ring.group.zero())
    }

    /// Least exponent of the support.
    pub fn min(&self) -> Result<GroupElement> {
        self.terms
            .keys()
            .next()
            .map(|e| e.0.clone())
            .ok_or(Error::ZeroSeries)
    }

    /// `f(min f)`.
    pub fn lead(&self) -> Result<FieldElement> {
        self.terms.values().next().cloned().ok_or(Error::ZeroSeries)
    }

    /// Least exponent, or the precision for a zero series.
    fn min_or_precision(&self) -> GroupElement {
        self.min().unwrap_or_else(|_| self.precision.clone())
    }

    fn same_ring(&self, other: &Series) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn with_terms(&self, terms: BTreeMap<Exponent, FieldElement>, precision: GroupElement) -> Series {
        let mut terms = terms;
        let f = self.ring.field();
        terms.retain(|e, c| !f.is_zero(c) && self.ring.cmp(&e.0, &precision) == Ordering::Less);
        Series {
            ring: self.ring.clone(),
            terms,
            precision,
        }
    }

    /// Lowers the precision to `precision` (never raises it).
    pub fn truncate(&self, precision: &GroupElement) -> Series {
        let p = self.ring.min_elem(self.precision.clone(), precision.clone());
        self.with_terms(self.terms.clone(), p)
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.same_ring(other)?;
        let f = self.ring.field();
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert_with(|| f.zero());
            *slot = f.add(slot, c);
        }
        let p = self.ring.min_elem(self.precision.clone(), other.precision.clone());
        Ok(self.with_terms(terms, p))
    }

    pub fn neg(&self) -> Series {
        let f = self.ring.field();
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect();
        self.with_terms(terms, self.precision.clone())
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Series {
        let f = self.ring.field();
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), f.mul(x, c))).collect();
        self.with_terms(terms, self.precision.clone())
    }

    /// Convolution product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.same_ring(other)?;
        let g = &self.ring.group;
        let f = self.ring.field();
        let left = g.add(&self.precision, &other.min_or_precision())?;
        let right = g.add(&other.precision, &self.min_or_precision())?;
        let precision = self.ring.min_elem(left, right);
        let mut terms: BTreeMap<Exponent, FieldElement> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = g.add(&e1.0, &e2.0)?;
                if self.ring.cmp(&e, &precision) != Ordering::Less {
                    continue;
                }
                let slot = terms.entry(Exponent(e)).or_insert_with(|| f.zero());
                *slot = f.add(slot, &f.mul(c1, c2));
            }
        }
        Ok(self.with_terms(terms, precision))
    }

    /// Multiplication by `δ_m`.
    pub fn shift(&self, m: &GroupElement) -> Result<Series> {
        let g = &self.ring.group;
        if !g.is_positive(m)? {
            return Err(Error::NegativeExponent(g.format(m)));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(Exponent(g.add(&e.0, m)?), c.clone());
        }
        Ok(self.with_terms(terms, g.add(&self.precision, m)?))
    }

    /// Division by `δ_m` for `m ≤ min(f)`.
    fn shift_down(&self, m: &GroupElement) -> Result<Series> {
        let g = &self.ring.group;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = g.sub(&e.0, m)?;
            if !g.is_positive(&d)? {
                return Err(Error::NegativeExponent(g.format(&d)));
            }
            terms.insert(Exponent(d), c.clone());
        }
        Ok(self.with_terms(terms, g.sub(&self.precision, m)?))
    }

    /// `f = f(min f) · δ_{min f} · u` with `u(0) = 1`.
    pub fn normal_form(&self) -> Result<NormalForm> {
        let order = self.min()?;
        let lead = self.lead()?;
        let inv = self.ring.field().try_inv(&lead)?;
        let tail = self.shift_down(&order)?.scale(&inv);
        Ok(NormalForm { lead, order, tail })
    }

    /// Multiplicative inverse of a unit of `F[[Γ⁺]]` via the geometric series.
    pub fn invert(&self) -> Result<Series> {
        let f = self.ring.field();
        let c = self.constant_term();
        if f.is_zero(&c) {
            return Err(Error::NotAUnit);
        }
        let c_inv = f.try_inv(&c)?;
        let tau = self.precision.clone();
        // self = c (1 - h), min(h) > 0
        let h = Series::one(&self.ring)
            .truncate(&tau)
            .sub(&self.scale(&c_inv))?;
        let mut sum = Series::one(&self.ring).truncate(&tau);
        let mut power = sum.clone();
        let mut steps = 0usize;
        loop {
            power = power.mul(&h)?.truncate(&tau);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
            steps += 1;
            if steps > self.ring.budget || sum.len() > self.ring.budget {
                return Err(Error::PrecisionLoss(format!(
                    "inverse did not reach precision {} within a budget of {}",
                    self.ring.group.format(&tau),
                    self.ring.budget
                )));
            }
        }
        Ok(sum.scale(&c_inv))
    }

    /// Truncated long division `self / divisor`, term by term from the bottom.
    pub fn long_divide(&self, divisor: &Series) -> Result<Division> {
        self.same_ring(divisor)?;
        let g = &self.ring.group;
        let f = self.ring.field();
        let base = divisor.min()?;
        let lead_inv = f.try_inv(&divisor.lead()?)?;
        let mut rem = self.clone();
        let mut quotient: BTreeMap<Exponent, FieldElement> = BTreeMap::new();
        let mut steps = 0usize;
        while let Ok(e) = rem.min() {
            let d = g.sub(&e, &base)?;
            if !g.is_positive(&d)? {
                return Ok(Division::NotInValuationRing);
            }
            let c = f.mul(&rem.coeff(&e), &lead_inv);
            let step = divisor.shift(&d)?.scale(&c);
            rem = rem.sub(&step)?;
            quotient.insert(Exponent(d), c);
            steps += 1;
            if steps > self.ring.budget {
                return Ok(Division::Inconclusive);
            }
        }
        let precision = g.sub(&rem.precision, &base)?;
        if !g.is_strictly_positive(&precision)? {
            return Ok(Division::Inconclusive);
        }
        Ok(Division::Quotient(self.with_terms(quotient, precision)))
    }

    pub fn is_member(&self, which: Membership) -> bool {
        let c = self.constant_term();
        let ext = self.ring.ext();
        let f = ext.large();
        match which {
            Membership::InR => true,
            Membership::InS => ext.contains(&c),
            Membership::UnitR => !f.is_zero(&c),
            Membership::UnitS => !f.is_zero(&c) && ext.contains(&c),
        }
    }

    /// Whether both series agree on every exponent below `bound`.
    pub fn agrees_below(&self, other: &Series, bound: &GroupElement) -> bool {
        let below = |s: &Series| -> Vec<(Exponent, FieldElement)> {
            s.terms
                .iter()
                .filter(|(e, _)| self.ring.cmp(&e.0, bound) == Ordering::Less)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect()
        };
        below(self) == below(other)
    }

    /// The smaller of the two precisions.
    pub fn common_precision(&self, other: &Series) -> GroupElement {
        self.ring.min_elem(self.precision.clone(), other.precision.clone())
    }

    /// Terms only, in the series literal grammar (`0` for no terms).
    pub fn format_terms(&self) -> String {
        let f = self.ring.field();
        let g = &self.ring.group;
        let zero = g.zero();
        let mut out = String::new();
        for (e, c) in &self.terms {
            let neg = f.neg(c);
            let neg_text = f.format(&neg);
            let negative = f.format(c).starts_with('-') && !neg_text.contains(['+', '-']);
            let (sign, c) = if negative { ('-', &neg) } else { ('+', c) };
            let coeff = f.format(c);
            let compound = coeff.contains(['+', '-', '*']);
            let mono = match &e.0 {
                GroupElement::Int(1) => "t".to_string(),
                other => format!("t^{}", format_exponent(g, other)),
            };
            let term = if g.equal(&e.0, &zero).unwrap_or(false) {
                coeff
            } else if f.is_one(c) {
                mono
            } else if compound {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            match (out.is_empty(), sign) {
                (true, '-') => out.push('-'),
                (true, _) => {}
                (false, s) => {
                    out.push(' ');
                    out.push(s);
                    out.push(' ');
                }
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

pub(crate) fn format_exponent(g: &GroupDescriptor, e: &GroupElement) -> String {
    match e {
        GroupElement::Rational(r) if !r.is_integer() => format!("({})", g.format(e)),
        _ => g.format(e),
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.ring.group;
        write!(
            f,
            "{} + O(t^{})",
            self.format_terms(),
            format_exponent(g, &self.precision)
        )
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl QuotientElement {
    pub fn new(num: Series, den: Series) -> Result<Self> {
        num.same_ring(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroSeries);
        }
        Ok(QuotientElement { num, den })
    }

    pub fn mul(&self, other: &QuotientElement) -> Result<QuotientElement> {
        QuotientElement::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    pub fn inverse(&self) -> Result<QuotientElement> {
        QuotientElement::new(self.den.clone(), self.num.clone())
    }
}
