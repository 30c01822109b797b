//! Seeded random field elements, exponents and series.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fields::linalg::FieldOps;
use crate::fields::{BaseField, FieldDescriptor, FieldElement};
use crate::groups::{linear_cmp, GroupDescriptor, GroupElement};
use crate::series::{Series, SeriesRing};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest number of terms in a sampled series.
pub const MAX_TERMS: usize = 6;

pub fn field_element(field: &FieldDescriptor, rng: &mut SampleRng) -> FieldElement {
    let coeffs = (0..field.degree())
        .map(|_| match field.base() {
            BaseField::Prime(p) => BigRational::from_integer(BigInt::from(rng.random_range(0..*p))),
            BaseField::Rationals => BigRational::new(
                BigInt::from(rng.random_range(-9i64..=9)),
                BigInt::from(rng.random_range(1i64..=5)),
            ),
        })
        .collect();
    field.from_base_coeffs(coeffs)
}

pub fn nonzero_element(field: &FieldDescriptor, rng: &mut SampleRng) -> FieldElement {
    loop {
        let x = field_element(field, rng);
        if !field.is_zero(&x) {
            return x;
        }
    }
}

fn magnitude(x: &GroupElement) -> i64 {
    match x {
        GroupElement::Int(n) => n.abs(),
        GroupElement::Rational(r) => (r.numer() / r.denom()).try_into().unwrap_or(i64::MAX / 4).abs() + 1,
        GroupElement::Pair(a, b) => magnitude(a).max(magnitude(b)),
        GroupElement::Coset(_) => 0,
    }
}

fn in_box(group: &GroupDescriptor, radius: i64, rng: &mut SampleRng) -> GroupElement {
    match group {
        GroupDescriptor::Int => GroupElement::Int(rng.random_range(-radius..=radius)),
        GroupDescriptor::Rational => {
            let den = rng.random_range(1i64..=4);
            let num = rng.random_range(-radius * den..=radius * den);
            GroupElement::Rational(BigRational::new(num.into(), den.into()))
        }
        GroupDescriptor::LexPair(a, b) => GroupElement::pair(in_box(a, radius, rng), in_box(b, radius, rng)),
        _ => group.zero(),
    }
}

/// A positive exponent strictly below `tau`, by rejection from a box around `tau`.
pub fn exponent_below(group: &GroupDescriptor, tau: &GroupElement, rng: &mut SampleRng) -> GroupElement {
    let radius = magnitude(tau) + 3;
    for _ in 0..10_000 {
        let e = in_box(group, radius, rng);
        if group.is_positive(&e).unwrap_or(false) && linear_cmp(&e, tau) == Ordering::Less {
            return e;
        }
    }
    group.zero()
}

/// Up to [`MAX_TERMS`] terms with exponents below the ring precision and nonzero coefficients.
pub fn series(ring: &Arc<SeriesRing>, rng: &mut SampleRng) -> Series {
    let size = rng.random_range(0..=MAX_TERMS);
    let tau = ring.precision().clone();
    let terms: Vec<_> = (0..size)
        .map(|_| {
            let e = exponent_below(ring.group(), &tau, rng);
            (e, nonzero_element(ring.field(), rng))
        })
        .collect();
    Series::from_terms(ring, terms, tau).expect("sampled exponents are valid")
}

/// A nonzero series.
pub fn nonzero_series(ring: &Arc<SeriesRing>, rng: &mut SampleRng) -> Series {
    loop {
        let s = series(ring, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A series whose constant term is replaced by `c`.
pub fn with_constant(s: &Series, c: FieldElement) -> Series {
    let zero = s.ring().group().zero();
    let terms = s
        .terms()
        .filter(|(e, _)| !s.ring().group().equal(e, &zero).unwrap_or(false))
        .map(|(e, x)| (e.clone(), x.clone()))
        .chain(std::iter::once((zero.clone(), c)));
    Series::from_terms(s.ring(), terms, s.precision().clone()).expect("same exponents")
}

/// A random element of `S`: constant term in `K`.
pub fn element_of_s(ring: &Arc<SeriesRing>, rng: &mut SampleRng) -> Series {
    let s = series(ring, rng);
    let k = field_element(ring.ext().small(), rng);
    with_constant(&s, ring.ext().embed(&k))
}

/// A random unit of `F[[Γ⁺]]`.
pub fn unit_of_r(ring: &Arc<SeriesRing>, rng: &mut SampleRng) -> Series {
    let s = series(ring, rng);
    let c = nonzero_element(ring.field(), rng);
    with_constant(&s, c)
}

/// A random unit of `S`.
pub fn unit_of_s(ring: &Arc<SeriesRing>, rng: &mut SampleRng) -> Series {
    let s = series(ring, rng);
    let k = nonzero_element(ring.ext().small(), rng);
    with_constant(&s, ring.ext().embed(&k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::ExtensionPair;
    use crate::series::DEFAULT_BUDGET;

    #[test]
    fn deterministic_and_in_range() {
        let ext = ExtensionPair::new(FieldDescriptor::prime(2).unwrap(), FieldDescriptor::galois(2, 2).unwrap()).unwrap();
        let g = GroupDescriptor::lex_pair(GroupDescriptor::Int, GroupDescriptor::Int).unwrap();
        let tau = GroupElement::pair(GroupElement::Int(2), GroupElement::Int(0));
        let ring = SeriesRing::new(Arc::new(ext), g.clone(), tau.clone(), DEFAULT_BUDGET).unwrap();
        let a: Vec<String> = (0..20).map(|i| series(&ring, &mut rng(i)).to_string()).collect();
        let b: Vec<String> = (0..20).map(|i| series(&ring, &mut rng(i)).to_string()).collect();
        assert_eq!(a, b);
        let mut r = rng(7);
        for _ in 0..200 {
            let e = exponent_below(&g, &tau, &mut r);
            assert!(g.is_positive(&e).unwrap());
            assert_eq!(linear_cmp(&e, &tau), Ordering::Less);
        }
        let u = unit_of_s(&ring, &mut r);
        assert!(u.is_member(crate::series::Membership::UnitS));
    }
}
