//! The group of divisibility of `S`: the map `ψ` into `Γ ∘ F♯/K♯`,
//! divisibility decisions, atom factorizations and the boundary map.

mod checks;
mod report;

pub use checks::{
    check_atomic, check_boundary_overring, check_half_factorial, check_hahn_specialization,
    check_psi_suite, check_strongly_prime, classify_domain, CheckConfig, Classification,
    DEFAULT_SEED,
};
pub use report::{CheckReport, Verdict};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::linalg::FieldOps;
use crate::fields::FieldElement;
use crate::groups::{GroupDescriptor, GroupElement};
use crate::sampling::{self, SampleRng};
use crate::series::{Division, Membership, QuotientElement, Series, SeriesRing};

/// Image of a quotient-field class: `(min num − min den, lead num / lead den)`,
/// the second coordinate read modulo `K♯`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivClass {
    pub gamma: GroupElement,
    pub coset: FieldElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingChoice {
    /// `F[[Γ⁺]]`
    R,
    /// `K + (higher terms)`
    S,
}

impl DivClass {
    pub fn to_group_element(&self) -> GroupElement {
        GroupElement::pair(self.gamma.clone(), GroupElement::Coset(self.coset.clone()))
    }

    pub fn from_group_element(x: &GroupElement) -> Option<Self> {
        match x.parts()? {
            (gamma, GroupElement::Coset(c)) => Some(DivClass {
                gamma: gamma.clone(),
                coset: c.clone(),
            }),
            _ => None,
        }
    }

    /// The class as an element of `value_group`, in `(γ,cK♯)` notation.
    pub fn format(&self, value_group: &GroupDescriptor) -> String {
        value_group.format(&self.to_group_element())
    }

    /// Whether the class lies in the maximal ideal of `S`, i.e. `γ > 0`.
    pub fn in_maximal_ideal(&self, ring: &SeriesRing) -> Result<bool> {
        ring.group().is_strictly_positive(&self.gamma)
    }
}

/// `ψ(num/den)`, exact and independent of precision.
pub fn psi(q: &QuotientElement) -> Result<DivClass> {
    let ring = q.num.ring();
    let f = ring.field();
    let gamma = ring.group().sub(&q.num.min()?, &q.den.min()?)?;
    let coset = f.div(&q.num.lead()?, &q.den.lead()?)?;
    Ok(DivClass { gamma, coset })
}

fn require_member(f: &Series, ring: RingChoice) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroSeries);
    }
    if ring == RingChoice::S && !f.is_member(Membership::InS) {
        return Err(Error::NotInRing("S"));
    }
    Ok(())
}

/// Whether `f` divides `g` in the chosen ring, decided on `ψ(g/f)`.
pub fn divides(f: &Series, g: &Series, ring: RingChoice) -> Result<bool> {
    require_member(f, ring)?;
    require_member(g, ring)?;
    let r = f.ring();
    match ring {
        RingChoice::R => r.group().leq(&f.min()?, &g.min()?),
        RingChoice::S => {
            let class = psi(&QuotientElement::new(g.clone(), f.clone())?)?;
            r.value_group().is_positive(&class.to_group_element())
        }
    }
}

/// Truncated long division of `g` by `f`: `Some(answer)` when conclusive.
pub fn divides_by_division(f: &Series, g: &Series, ring: RingChoice) -> Result<Option<bool>> {
    require_member(f, ring)?;
    require_member(g, ring)?;
    Ok(match g.long_divide(f)? {
        Division::Quotient(q) => Some(match ring {
            RingChoice::R => true,
            RingChoice::S => q.is_member(Membership::InS),
        }),
        Division::NotInValuationRing => Some(false),
        Division::Inconclusive => None,
    })
}

fn require_int(ring: &SeriesRing) -> Result<()> {
    match ring.group() {
        GroupDescriptor::Int => Ok(()),
        g => Err(Error::UnsupportedGroup(format!(
            "{} (only z has atoms of order one)",
            g.literal()
        ))),
    }
}

/// Difference of atom counts between numerator and denominator.
pub fn boundary(q: &QuotientElement) -> Result<i64> {
    let ring = q.num.ring();
    require_int(ring)?;
    require_member(&q.num, RingChoice::S)?;
    require_member(&q.den, RingChoice::S)?;
    let order = |s: &Series| s.min().map(|m| m.as_int().expect("integer exponent"));
    Ok(order(&q.num)? - order(&q.den)?)
}

/// `f = unit · atoms[0] · atoms[1] · …`
#[derive(Debug, Clone)]
pub struct Factorization {
    pub unit: Series,
    pub atoms: Vec<Series>,
}

impl Factorization {
    pub fn product(&self) -> Result<Series> {
        self.atoms.iter().try_fold(self.unit.clone(), |acc, a| acc.mul(a))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// An irreducible element of `S`: for `Γ = ℤ`, exactly the order-one members of `S`.
pub fn is_atom(f: &Series) -> Result<bool> {
    require_member(f, RingChoice::S)?;
    let ring = f.ring();
    ring.group().is_atom(&f.min()?)
}

/// Factors a nonzero member of `S` into a unit of `S` and `min(f)` atoms.
pub fn factor_atoms(f: &Series) -> Result<Factorization> {
    let ring = f.ring().clone();
    require_int(&ring)?;
    require_member(f, RingChoice::S)?;
    let nf = f.normal_form()?;
    let n = nf.order.as_int().expect("integer exponent");
    if n == 0 {
        return Ok(Factorization {
            unit: f.clone(),
            atoms: Vec::new(),
        });
    }
    let x = Series::delta(&ring, GroupElement::Int(1))?;
    let ext = ring.ext();
    if ext.contains(&nf.lead) {
        Ok(Factorization {
            unit: nf.tail.scale(&nf.lead),
            atoms: vec![x; n as usize],
        })
    } else {
        let first = x.mul(&nf.tail)?.scale(&nf.lead);
        let mut atoms = vec![first];
        atoms.extend(std::iter::repeat_n(x, n as usize - 1));
        Ok(Factorization {
            unit: Series::one(&ring),
            atoms,
        })
    }
}

/// A factorization of `f` built independently of [`factor_atoms`]: random
/// order-one atoms with random coefficients and unit tails, the last atom
/// absorbing the remainder by series division.
pub fn random_factorization(f: &Series, rng: &mut SampleRng) -> Result<Factorization> {
    let ring = f.ring().clone();
    require_int(&ring)?;
    require_member(f, RingChoice::S)?;
    let n = f.min()?.as_int().expect("integer exponent");
    if n == 0 {
        return Ok(Factorization {
            unit: f.clone(),
            atoms: Vec::new(),
        });
    }
    let x = Series::delta(&ring, GroupElement::Int(1))?;
    let field = ring.field().clone();
    let mut atoms = Vec::new();
    let mut partial = Series::one(&ring);
    for _ in 1..n {
        let c = sampling::nonzero_element(&field, rng);
        let tail = sampling::with_constant(&sampling::series(&ring, rng), field.one());
        let atom = x.mul(&tail)?.scale(&c);
        partial = partial.mul(&atom)?;
        atoms.push(atom);
    }
    let k = sampling::nonzero_element(ring.ext().small(), rng);
    let unit = Series::constant(&ring, ring.ext().embed(&k));
    let divisor = partial.mul(&unit)?;
    let last = match f.long_divide(&divisor)? {
        Division::Quotient(q) => q,
        _ => return Err(Error::PrecisionLoss("remainder division did not resolve".into())),
    };
    atoms.push(last);
    Ok(Factorization { unit, atoms })
}

/// Realizes a class `(γ, c)` as a quotient `c·δ_{γ⁺}·u / δ_{γ⁻}` with `u` a
/// random unit of `S` whose constant term is one.
pub fn realize_class(ring: &Arc<SeriesRing>, class: &DivClass, rng: &mut SampleRng) -> Result<QuotientElement> {
    let g = ring.group();
    let zero = g.zero();
    let (up, down) = if g.is_positive(&class.gamma)? {
        (class.gamma.clone(), zero)
    } else {
        (zero, g.neg(&class.gamma)?)
    };
    let tail = sampling::with_constant(&sampling::series(ring, rng), ring.field().one());
    let num = tail.shift(&up)?.scale(&class.coset);
    let den = Series::delta(ring, down)?;
    QuotientElement::new(num, den)
}
