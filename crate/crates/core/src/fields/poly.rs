//! Dense univariate polynomials over a base field, coefficients stored low degree first.

use super::linalg::FieldOps;
use super::{BaseField, Scalar};

pub(crate) type Poly = Vec<Scalar>;

pub(crate) fn trim(base: &BaseField, mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| base.is_zero(c)) {
        p.pop();
    }
    p
}

pub(crate) fn degree(p: &[Scalar]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn add(base: &BaseField, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let zero = base.zero();
    let out = (0..n)
        .map(|i| base.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(base, out)
}

pub(crate) fn sub(base: &BaseField, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let zero = base.zero();
    let out = (0..n)
        .map(|i| base.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(base, out)
}

pub(crate) fn mul(base: &BaseField, a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = base.add(&out[i + j], &base.mul(x, y));
        }
    }
    trim(base, out)
}

pub(crate) fn scale(base: &BaseField, a: &[Scalar], c: &Scalar) -> Poly {
    trim(base, a.iter().map(|x| base.mul(x, c)).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(base: &BaseField, a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let b = trim(base, b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead_inv = base.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = trim(base, a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![base.zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = base.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = base.sub(&rem[shift + i], &base.mul(&c, bc));
        }
        quot[shift] = c;
        rem = trim(base, rem);
    }
    (trim(base, quot), rem)
}

pub(crate) fn rem(base: &BaseField, a: &[Scalar], b: &[Scalar]) -> Poly {
    divrem(base, a, b).1
}

pub(crate) fn make_monic(base: &BaseField, a: &[Scalar]) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = base.inv(lead).expect("trimmed polynomial");
            scale(base, a, &inv)
        }
    }
}

pub(crate) fn gcd(base: &BaseField, a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut x = trim(base, a.to_vec());
    let mut y = trim(base, b.to_vec());
    while !y.is_empty() {
        let r = rem(base, &x, &y);
        x = y;
        y = r;
    }
    make_monic(base, &x)
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub(crate) fn inverse_mod(base: &BaseField, a: &[Scalar], m: &[Scalar]) -> Option<Poly> {
    let (mut r0, mut r1) = (trim(base, m.to_vec()), rem(base, a, m));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![base.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(base, &r0, &r1);
        let s = sub(base, &s0, &mul(base, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is a nonzero constant when a is invertible
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = base.inv(&r0[0])?;
    Some(rem(base, &scale(base, &s0, &c), m))
}

pub(crate) fn mulmod(base: &BaseField, a: &[Scalar], b: &[Scalar], m: &[Scalar]) -> Poly {
    rem(base, &mul(base, a, b), m)
}

pub(crate) fn powmod(base: &BaseField, a: &[Scalar], mut e: u64, m: &[Scalar]) -> Poly {
    let mut result = rem(base, &[base.one()], m);
    let mut acc = rem(base, a, m);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(base, &result, &acc, m);
        }
        acc = mulmod(base, &acc, &acc, m);
        e >>= 1;
    }
    result
}

/// Ben-Or irreducibility test over a prime field.
pub(crate) fn is_irreducible_mod_p(base: &BaseField, f: &[Scalar]) -> bool {
    let p = match base {
        BaseField::Prime(p) => *p,
        BaseField::Rationals => panic!("Ben-Or test needs a prime field"),
    };
    let f = make_monic(base, &trim(base, f.to_vec()));
    let n = match degree(&f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let x: Poly = vec![base.zero(), base.one()];
    let mut power = rem(base, &x, &f);
    for _ in 0..n / 2 {
        power = powmod(base, &power, p, &f);
        let g = gcd(base, &f, &sub(base, &power, &x));
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

pub(crate) fn eval(base: &BaseField, f: &[Scalar], x: &Scalar) -> Scalar {
    f.iter()
        .rev()
        .fold(base.zero(), |acc, c| base.add(&base.mul(&acc, x), c))
}
