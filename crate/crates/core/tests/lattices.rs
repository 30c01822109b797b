use std::sync::Arc;

use seriesring::divisibility::{divides, RingChoice};
use seriesring::fields::{ExtensionPair, FieldDescriptor};
use seriesring::groups::{GroupDescriptor, GroupElement};
use seriesring::lattices::{
    ag_subspaces, enumerate_ideals, predicted_ideal_lattice, quotient_ring, IdealNode,
};
use seriesring::series::{Series, SeriesRing, DEFAULT_BUDGET};

fn ext(small: FieldDescriptor, large: FieldDescriptor) -> Arc<ExtensionPair> {
    Arc::new(ExtensionPair::new(small, large).unwrap())
}

fn gf4_gf2() -> Arc<ExtensionPair> {
    ext(FieldDescriptor::prime(2).unwrap(), FieldDescriptor::galois(2, 2).unwrap())
}

fn gf9_gf3() -> Arc<ExtensionPair> {
    ext(FieldDescriptor::prime(3).unwrap(), FieldDescriptor::galois(3, 2).unwrap())
}

#[test]
fn predicted_matches_brute_force() {
    for (e, tau) in [(gf4_gf2(), 2), (gf4_gf2(), 3), (gf9_gf3(), 2)] {
        let predicted = predicted_ideal_lattice(e.clone(), tau).unwrap();
        predicted.poset().check_lattice().unwrap();
        let ring = quotient_ring(e.clone(), tau).unwrap();
        let ideals = enumerate_ideals(&ring).unwrap();
        assert_eq!(ideals.poset.len(), predicted.len(), "{} tau={tau}", e.literal());
        assert!(ideals.poset.isomorphic(predicted.poset()).is_iso());
        ideals.matches_lattice(&ring, &predicted).unwrap();
    }
}

#[test]
fn gf2_over_gf2_is_a_chain() {
    let f = FieldDescriptor::prime(2).unwrap();
    let ring = quotient_ring(ext(f.clone(), f), 2).unwrap();
    let ideals = enumerate_ideals(&ring).unwrap();
    assert_eq!(ideals.poset.len(), 3);
    assert!(ideals.poset.isomorphic(&seriesring::lattices::chain(3)).is_iso());
}

#[test]
fn ag_counts() {
    assert_eq!(ag_subspaces(&gf4_gf2()).unwrap().len(), 4);
    assert_eq!(ag_subspaces(&gf9_gf3()).unwrap().len(), 5);
    let f = FieldDescriptor::galois(3, 2).unwrap();
    assert_eq!(ag_subspaces(&ext(f.clone(), f)).unwrap().len(), 1);
}

#[test]
fn predicted_lattices_are_not_distributive() {
    let l = predicted_ideal_lattice(gf4_gf2(), 3).unwrap();
    assert!(l.poset().distributivity_witness().is_some());
}

#[test]
fn primes_form_a_chain_and_the_ring_is_local() {
    for (e, tau) in [(gf4_gf2(), 3), (gf9_gf3(), 2)] {
        let ring = quotient_ring(e, tau).unwrap();
        let ideals = enumerate_ideals(&ring).unwrap();
        let nodes = ideals.poset.nodes();
        let primes: Vec<_> = nodes.iter().filter(|s| ring.is_prime_ideal(s)).collect();
        assert!(!primes.is_empty());
        for a in &primes {
            for b in &primes {
                assert!(a.is_subset(b) || b.is_subset(a));
            }
        }
        let proper: Vec<_> = nodes.iter().filter(|s| !s.contains(ring.one())).collect();
        let maximal: Vec<_> = proper
            .iter()
            .filter(|s| !proper.iter().any(|t| s.is_subset(t) && s != &t))
            .collect();
        assert_eq!(maximal.len(), 1);
        assert_eq!(**maximal[0], ring.nonunits());
    }
}

/// `x | y` in `S` (decided on `ψ`) exactly when the principal ideal of `y`
/// sits inside that of `x` in the truncated ring.
#[test]
fn principal_order_is_dual_to_divisibility() {
    let e = gf4_gf2();
    let tau = 3;
    let ring = quotient_ring(e.clone(), tau).unwrap();
    let series_ring = SeriesRing::new(e.clone(), GroupDescriptor::Int, GroupElement::Int(8), DEFAULT_BUDGET).unwrap();
    let as_series = |i: usize| {
        let terms = ring
            .coefficients(i)
            .into_iter()
            .enumerate()
            .map(|(k, c)| (GroupElement::Int(k as i64), c));
        Series::from_terms(&series_ring, terms, GroupElement::Int(8)).unwrap()
    };
    let nonzero: Vec<usize> = (0..ring.len()).filter(|&i| i != ring.zero()).collect();
    let principal: Vec<_> = (0..ring.len()).map(|i| ring.principal(i)).collect();
    for &x in &nonzero {
        for &y in &nonzero {
            let by_psi = divides(&as_series(x), &as_series(y), RingChoice::S).unwrap();
            assert_eq!(by_psi, principal[y].is_subset(&principal[x]), "x={x} y={y}");
        }
    }
}

#[test]
fn brute_force_readings() {
    let e = gf4_gf2();
    let ring = quotient_ring(e.clone(), 3).unwrap();
    let ideals = enumerate_ideals(&ring).unwrap();
    let labels: Vec<String> = ideals.classified(&ring).nodes().iter().map(|n| n.label(&e)).collect();
    for want in ["R", "<X>_V", "<X^2>_V", "(1,<1>)", "(1,<a>)", "(1,<a+1>)", "(2,<a>)", "<0>"] {
        assert!(labels.iter().any(|l| l == want), "{want} missing from {labels:?}");
    }
    assert!(matches!(ideals.classified(&ring).nodes().last(), Some(IdealNode::Zero)));
}
