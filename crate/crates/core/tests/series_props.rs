use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use seriesring::fields::{ExtensionPair, FieldDescriptor};
use seriesring::groups::{GroupDescriptor, GroupElement};
use seriesring::sampling;
use seriesring::series::{Membership, Series, SeriesRing, DEFAULT_BUDGET};
use seriesring::Error;

fn ring(small: FieldDescriptor, large: FieldDescriptor, group: GroupDescriptor, tau: GroupElement) -> Arc<SeriesRing> {
    let ext = ExtensionPair::new(small, large).unwrap();
    SeriesRing::new(Arc::new(ext), group, tau, DEFAULT_BUDGET).unwrap()
}

fn configurations() -> Vec<Arc<SeriesRing>> {
    let gf2 = FieldDescriptor::prime(2).unwrap();
    let gf4 = FieldDescriptor::galois(2, 2).unwrap();
    let q = FieldDescriptor::rationals();
    let cube = FieldDescriptor::number_field("r", &[BigInt::from(-2), 0.into(), 0.into(), 1.into()]).unwrap();
    let zz = GroupDescriptor::lex_pair(GroupDescriptor::Int, GroupDescriptor::Int).unwrap();
    vec![
        ring(gf2.clone(), gf4.clone(), GroupDescriptor::Int, GroupElement::Int(8)),
        ring(q.clone(), cube, GroupDescriptor::Int, GroupElement::Int(6)),
        ring(q.clone(), q, GroupDescriptor::Rational, GroupElement::Rational(num_rational::BigRational::from_integer(3.into()))),
        ring(
            gf2,
            gf4,
            zz,
            GroupElement::pair(GroupElement::Int(2), GroupElement::Int(0)),
        ),
    ]
}

fn config_and_seed() -> impl Strategy<Value = (Arc<SeriesRing>, u64)> {
    (0..configurations().len(), any::<u64>()).prop_map(|(i, seed)| (configurations()[i].clone(), seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((r, seed) in config_and_seed()) {
        let mut rng = sampling::rng(seed);
        let f = sampling::series(&r, &mut rng);
        let g = sampling::series(&r, &mut rng);
        let h = sampling::series(&r, &mut rng);

        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert!(left.agrees_below(&right, &left.common_precision(&right)));

        let fg = f.mul(&g).unwrap();
        let gf = g.mul(&f).unwrap();
        prop_assert!(fg.agrees_below(&gf, &fg.common_precision(&gf)));

        let dist_l = f.mul(&g.add(&h).unwrap()).unwrap();
        let dist_r = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert!(dist_l.agrees_below(&dist_r, &dist_l.common_precision(&dist_r)));

        let sum1 = f.add(&g).unwrap().add(&h).unwrap();
        let sum2 = f.add(&g.add(&h).unwrap()).unwrap();
        prop_assert!(sum1.agrees_below(&sum2, sum1.precision()));
        prop_assert!(f.sub(&f).unwrap().is_zero());
        let one = Series::one(&r);
        prop_assert!(f.mul(&one).unwrap().agrees_below(&f, f.precision()));
    }

    #[test]
    fn inverse_round_trip((r, seed) in config_and_seed()) {
        let mut rng = sampling::rng(seed);
        let u = sampling::unit_of_r(&r, &mut rng);
        match u.invert() {
            Ok(v) => {
                let p = u.mul(&v).unwrap();
                prop_assert!(p.agrees_below(&Series::one(&r), v.precision()));
            }
            Err(Error::PrecisionLoss(_)) => {
                prop_assert!(matches!(r.group(), GroupDescriptor::LexPair(..)));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn normal_form_reassembles((r, seed) in config_and_seed()) {
        let mut rng = sampling::rng(seed);
        let f = sampling::nonzero_series(&r, &mut rng);
        let nf = f.normal_form().unwrap();
        prop_assert!(r.field().is_one(&nf.tail.constant_term()));
        let back = nf.tail.shift(&nf.order).unwrap().scale(&nf.lead);
        prop_assert!(back.agrees_below(&f, f.precision()));
        prop_assert_eq!(back.precision(), f.precision());
    }

    #[test]
    fn translation_moves_support((r, seed) in config_and_seed()) {
        let mut rng = sampling::rng(seed);
        let f = sampling::series(&r, &mut rng);
        let m = sampling::exponent_below(r.group(), r.precision(), &mut rng);
        let d = Series::delta(&r, m.clone()).unwrap();
        let shifted = d.mul(&f).unwrap();
        let g = r.group();
        let expected: Vec<_> = f
            .terms()
            .map(|(e, c)| (g.add(e, &m).unwrap(), c.clone()))
            .filter(|(e, _)| g.compare(e, shifted.precision()).unwrap() == seriesring::groups::Comparison::Less)
            .collect();
        let got: Vec<_> = shifted.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn unit_classification((r, seed) in config_and_seed()) {
        let mut rng = sampling::rng(seed);
        let mut f = sampling::series(&r, &mut rng);
        if seed % 2 == 0 {
            f = sampling::element_of_s(&r, &mut rng);
        }
        prop_assert_eq!(
            f.is_member(Membership::UnitS),
            f.is_member(Membership::UnitR) && f.is_member(Membership::InS)
        );
    }

    #[test]
    fn long_division_matches_inverse((r, seed) in config_and_seed()) {
        let mut rng = sampling::rng(seed);
        let g = sampling::series(&r, &mut rng);
        let u = sampling::unit_of_r(&r, &mut rng);
        if let Ok(inv) = u.invert() {
            let expected = g.mul(&inv).unwrap();
            if let seriesring::series::Division::Quotient(q) = g.long_divide(&u).unwrap() {
                let bound = q.common_precision(&expected);
                prop_assert!(q.agrees_below(&expected, &bound));
            }
        }
    }
}

#[test]
fn normal_form_five_hundred_per_configuration() {
    for (i, r) in configurations().iter().enumerate() {
        let mut rng = sampling::rng(1000 + i as u64);
        for _ in 0..500 {
            let f = sampling::nonzero_series(r, &mut rng);
            let nf = f.normal_form().unwrap();
            let back = nf.tail.shift(&nf.order).unwrap().scale(&nf.lead);
            assert!(back.agrees_below(&f, f.precision()), "{f}");
        }
    }
}
