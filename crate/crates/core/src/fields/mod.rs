//! Exact coefficient fields: prime fields, Galois fields, the rationals and
//! simple number fields over the rationals.
//!
//! Every field is presented as `base[x] / (modulus)` where `base` is either a
//! prime field or the rationals. Prime fields and the rationals themselves use
//! the degree-one modulus `x`, so all elements share a single representation:
//! a coefficient vector of length `degree` over the base.

mod extension;
pub mod linalg;
pub(crate) mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use extension::ExtensionPair;
use linalg::FieldOps;

/// Scalars of the base field. Prime-field scalars are integers in `[0, p)`.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseField {
    Prime(u64),
    Rationals,
}

fn mod_pow(b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let mut acc = (b % p) as u128;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * acc % m;
        }
        acc = acc * acc % m;
        e >>= 1;
    }
    r as u64
}

impl BaseField {
    fn modulus(&self) -> Option<u64> {
        match self {
            BaseField::Prime(p) => Some(*p),
            BaseField::Rationals => None,
        }
    }

    fn residue(p: u64, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
    }

    /// Maps a rational into the base field, failing when the denominator vanishes mod p.
    pub fn from_rational(&self, x: &BigRational) -> Option<Scalar> {
        match self {
            BaseField::Rationals => Some(x.clone()),
            BaseField::Prime(p) => {
                let n = Self::residue(*p, x.numer());
                let d = Self::residue(*p, x.denom());
                if d == 0 {
                    return None;
                }
                let v = (n as u128 * mod_pow(d, p - 2, *p) as u128 % *p as u128) as u64;
                Some(BigRational::from_integer(v.into()))
            }
        }
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(x.into()))
            .expect("integers always map")
    }

    fn reduce(&self, x: BigRational) -> Scalar {
        match self.modulus() {
            None => x,
            Some(p) => BigRational::from_integer(Self::residue(p, x.numer()).into()),
        }
    }
}

impl FieldOps for BaseField {
    type Elem = Scalar;
    fn zero(&self) -> Scalar {
        BigRational::zero()
    }
    fn one(&self) -> Scalar {
        BigRational::one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            BaseField::Rationals => Some(a.recip()),
            BaseField::Prime(p) => {
                let v = a.numer().to_u64()?;
                Some(BigRational::from_integer(mod_pow(v, p - 2, *p).into()))
            }
        }
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
}

impl BaseField {
    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime { p: u64 },
    Galois { p: u64, k: u32 },
    Rationals,
    NumberField,
}

/// A validated exact field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
    symbol: String,
    base: BaseField,
    /// Monic, low degree first, length `degree + 1`.
    modulus: Vec<Scalar>,
}

/// Element of a [`FieldDescriptor`]: canonical coefficients of the reduced
/// polynomial in the generator, low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<Scalar>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

const MAX_PRIME: u64 = 1 << 31;

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        let base = BaseField::Prime(p);
        Ok(FieldDescriptor {
            kind: FieldKind::Prime { p },
            symbol: "a".into(),
            modulus: vec![base.zero(), base.one()],
            base,
        })
    }

    pub fn rationals() -> Self {
        let base = BaseField::Rationals;
        FieldDescriptor {
            kind: FieldKind::Rationals,
            symbol: "a".into(),
            modulus: vec![base.zero(), base.one()],
            base,
        }
    }

    /// `gf(p^k)` with the documented default modulus: x²+x+1 for gf(4), x³+x+1
    /// for gf(8), x²+1 for gf(9), and otherwise the smallest monic irreducible
    /// polynomial ordered by its non-leading coefficients read from the top down.
    pub fn galois(p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= 1 << 24);
        if !is_prime(p) || q.is_none() {
            return Err(Error::InvalidField(format!("gf({p}^{k}) is not supported")));
        }
        let modulus: Vec<i64> = match (p, k) {
            (2, 2) => vec![1, 1, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (3, 2) => vec![1, 0, 1],
            _ => Self::smallest_irreducible(p, k),
        };
        Self::galois_with_modulus(p, &modulus, "a")
    }

    fn smallest_irreducible(p: u64, k: u32) -> Vec<i64> {
        let base = BaseField::Prime(p);
        let count = p.pow(k);
        for idx in 0..count {
            // base-p digits of idx, least significant = constant term
            let mut coeffs: Vec<i64> = (0..k).map(|i| ((idx / p.pow(i)) % p) as i64).collect();
            coeffs.push(1);
            let poly: Vec<Scalar> = coeffs.iter().map(|&c| base.from_i64(c)).collect();
            if poly::is_irreducible_mod_p(&base, &poly) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// `gf(p^k)` presented by an explicit monic modulus (low degree first).
    pub fn galois_with_modulus(p: u64, modulus: &[i64], symbol: &str) -> Result<Self> {
        let prime = Self::prime(p)?;
        let base = prime.base.clone();
        let m: Vec<Scalar> = poly::trim(&base, modulus.iter().map(|&c| base.from_i64(c)).collect());
        let k = poly::degree(&m).unwrap_or(0);
        if k < 1 || !m[k].is_one() {
            return Err(Error::InvalidField("modulus must be monic of positive degree".into()));
        }
        if !poly::is_irreducible_mod_p(&base, &m) {
            return Err(Error::InvalidField(format!(
                "modulus is reducible over gf({p})"
            )));
        }
        if k == 1 {
            return Ok(prime);
        }
        Ok(FieldDescriptor {
            kind: FieldKind::Galois { p, k: k as u32 },
            symbol: symbol.to_string(),
            base,
            modulus: m,
        })
    }

    /// `Q(symbol)` where `symbol` is a root of the monic integer polynomial `minpoly`.
    ///
    /// Irreducibility is certified by the rational root test up to degree 3 and
    /// by irreducibility modulo some prime below 200 for higher degrees.
    pub fn number_field(symbol: &str, minpoly: &[BigInt]) -> Result<Self> {
        let base = BaseField::Rationals;
        let m: Vec<Scalar> =
            poly::trim(&base, minpoly.iter().map(|c| BigRational::from_integer(c.clone())).collect());
        let n = poly::degree(&m).unwrap_or(0);
        if n < 1 || !m[n].is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        if n == 1 {
            return Ok(Self::rationals());
        }
        if !Self::certify_irreducible_over_q(&m) {
            return Err(Error::InvalidField(
                "minimal polynomial is reducible (or irreducibility could not be certified)".into(),
            ));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::NumberField,
            symbol: symbol.to_string(),
            base,
            modulus: m,
        })
    }

    fn certify_irreducible_over_q(m: &[Scalar]) -> bool {
        let n = m.len() - 1;
        if n <= 3 {
            // monic integer polynomial: rational roots are integer divisors of the constant term
            let c0 = m[0].numer().abs();
            if c0.is_zero() {
                return false;
            }
            let base = BaseField::Rationals;
            let bound = c0.to_u64().unwrap_or(u64::MAX);
            let mut d = 1u64;
            while d <= bound && d <= 1 << 20 {
                if (&c0 % BigInt::from(d)).is_zero() {
                    for s in [1i64, -1] {
                        let r = BigRational::from_integer(BigInt::from(d) * s);
                        if poly::eval(&base, m, &r).is_zero() {
                            return false;
                        }
                    }
                }
                d += 1;
            }
            return d > bound;
        }
        (2u64..200).filter(|&p| is_prime(p)).any(|p| {
            let base = BaseField::Prime(p);
            let reduced: Vec<Scalar> = m.iter().map(|c| base.from_rational(c).unwrap()).collect();
            poly::is_irreducible_mod_p(&base, &reduced)
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Scalar] {
        &self.modulus
    }

    pub fn characteristic(&self) -> u64 {
        self.base.modulus().unwrap_or(0)
    }

    /// Number of elements, `None` for infinite fields.
    pub fn order(&self) -> Option<u128> {
        self.base
            .modulus()
            .map(|p| (p as u128).pow(self.degree() as u32))
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree() == 1
    }

    /// Builds an element from base coordinates, reducing modulo the modulus.
    pub fn from_base_coeffs(&self, coeffs: Vec<Scalar>) -> FieldElement {
        let c: Vec<Scalar> = coeffs.into_iter().map(|c| self.base.reduce_any(c)).collect();
        self.from_poly(poly::trim(&self.base, c))
    }

    fn from_poly(&self, p: Vec<Scalar>) -> FieldElement {
        let mut r = poly::rem(&self.base, &p, &self.modulus);
        r.resize(self.degree(), self.base.zero());
        FieldElement { coeffs: r }
    }

    fn as_poly(&self, x: &FieldElement) -> Vec<Scalar> {
        poly::trim(&self.base, x.coeffs.clone())
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_poly(vec![self.base.from_i64(n)])
    }

    pub fn from_rational(&self, x: &BigRational) -> Result<FieldElement> {
        let s = self.base.from_rational(x).ok_or(Error::ZeroInversion)?;
        Ok(self.from_poly(vec![s]))
    }

    pub fn generator(&self) -> FieldElement {
        self.from_poly(vec![self.base.zero(), self.base.one()])
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: x.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    pub fn pow(&self, x: &FieldElement, e: u64) -> FieldElement {
        FieldElement {
            coeffs: {
                let mut r = poly::powmod(&self.base, &self.as_poly(x), e, &self.modulus);
                r.resize(self.degree(), self.base.zero());
                r
            },
        }
    }

    pub fn is_one(&self, x: &FieldElement) -> bool {
        *x == self.one()
    }

    /// Inverse, failing with [`Error::ZeroInversion`] on zero.
    pub fn try_inv(&self, x: &FieldElement) -> Result<FieldElement> {
        self.inv(x).ok_or(Error::ZeroInversion)
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.try_inv(y)?))
    }

    /// All elements of a finite field in ascending canonical order.
    pub fn elements(&self) -> Result<Vec<FieldElement>> {
        let p = self
            .base
            .modulus()
            .ok_or_else(|| Error::InfiniteLattice("field is infinite".into()))?;
        let d = self.degree();
        let total = self.order().unwrap();
        if total > 1 << 20 {
            return Err(Error::TooLarge { size: total, bound: 1 << 20 });
        }
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total as u64 {
            let mut rest = idx;
            let coeffs = (0..d)
                .map(|_| {
                    let c = rest % p;
                    rest /= p;
                    BigRational::from_integer(c.into())
                })
                .collect();
            out.push(FieldElement { coeffs });
        }
        out.sort();
        Ok(out)
    }

    pub fn nonzero_elements(&self) -> Result<Vec<FieldElement>> {
        Ok(self.elements()?.into_iter().filter(|x| !self.is_zero(x)).collect())
    }

    /// Renders an element as a polynomial in the generator, e.g. `a+1` or `r^2+2`.
    pub fn format(&self, x: &FieldElement) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in x.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            let mut term = match i {
                0 => fmt_rational(&mag),
                _ => {
                    let mono = if i == 1 {
                        self.symbol.clone()
                    } else {
                        format!("{}^{}", self.symbol, i)
                    };
                    if mag.is_one() {
                        mono
                    } else {
                        format!("{}*{}", fmt_rational(&mag), mono)
                    }
                }
            };
            if negative {
                term = format!("-{term}");
            } else if !parts.is_empty() {
                term = format!("+{term}");
            }
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.concat()
        }
    }

    /// Literal form accepted by the field grammar.
    pub fn literal(&self) -> String {
        match self.kind {
            FieldKind::Prime { p } => format!("gf({p})"),
            FieldKind::Galois { p, k } => format!("gf({p}^{k})"),
            FieldKind::Rationals => "q".into(),
            FieldKind::NumberField => {
                format!("q({}; {})", self.symbol, fmt_int_poly(&self.modulus, &self.symbol))
            }
        }
    }
}

fn fmt_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn fmt_int_poly(m: &[Scalar], sym: &str) -> String {
    let mut out = String::new();
    for (i, c) in m.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => sym.to_string(),
            _ => format!("{sym}^{i}"),
        };
        let body = if i == 0 {
            fmt_rational(&mag)
        } else if mag.is_one() {
            mono
        } else {
            format!("{}*{}", fmt_rational(&mag), mono)
        };
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&body);
    }
    out
}

impl BaseField {
    fn reduce_any(&self, x: BigRational) -> Scalar {
        match self {
            BaseField::Rationals => x,
            BaseField::Prime(_) => self.from_rational(&x).expect("denominator invertible mod p"),
        }
    }
}

impl FieldOps for FieldDescriptor {
    type Elem = FieldElement;
    fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![self.base.zero(); self.degree()],
        }
    }
    fn one(&self) -> FieldElement {
        self.from_i64(1)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.base.add(x, y))
                .collect(),
        }
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.base.sub(x, y))
                .collect(),
        }
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.degree() == 1 {
            return FieldElement {
                coeffs: vec![self.base.mul(&a.coeffs[0], &b.coeffs[0])],
            };
        }
        self.from_poly(poly::mul(&self.base, &self.as_poly(a), &self.as_poly(b)))
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(FieldElement {
                coeffs: vec![self.base.inv(&a.coeffs[0])?],
            });
        }
        let r = poly::inverse_mod(&self.base, &self.as_poly(a), &self.modulus)?;
        Some(self.from_poly(r))
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}
