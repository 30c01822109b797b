//! Recursive-descent parsers for the literal grammars: fields, extensions,
//! exponent groups, exponents, field elements, series and ideal nodes.
//! Positions in errors are byte offsets into the literal.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fields::linalg::FieldOps;
use crate::fields::{poly, BaseField, ExtensionPair, FieldDescriptor, FieldElement, FieldKind};
use crate::groups::{GroupDescriptor, GroupElement};
use crate::lattices::{IdealNode, Subspace};
use crate::series::{Series, SeriesRing};

/// Symbols that can't name a field generator.
const RESERVED: &[&str] = &["t", "O", "X", "R", "V", "gf", "q", "z"];

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn fail<T>(&mut self, expected: &[&str]) -> Result<T> {
        self.skip_ws();
        Err(Error::parse(self.pos, expected))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&[&format!("'{c}'")])
        }
    }

    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        Some(&rest[..len])
    }

    fn ident(&mut self) -> Option<&'a str> {
        let id = self.peek_ident()?;
        self.pos += id.len();
        Some(id)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.fail(&["integer"]);
        }
        self.pos += len;
        Ok(rest[..len].parse().expect("ascii digits"))
    }

    fn small_uint(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.uint()?;
        n.to_u32().ok_or_else(|| Error::parse(start, &["integer below 2^32"]))
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            self.fail(&["end of input"])
        } else {
            Ok(())
        }
    }
}

/// Arithmetic an expression is evaluated in.
trait Algebra {
    type E: Clone;
    fn number(&self, x: &BigRational) -> Option<Self::E>;
    fn symbol(&self) -> Option<(&str, Self::E)>;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;

    fn one(&self) -> Self::E {
        self.number(&BigRational::one()).expect("one is representable")
    }

    fn pow(&self, a: &Self::E, n: u32) -> Self::E {
        let (mut acc, mut base, mut n) = (self.one(), a.clone(), n);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
}

struct InField<'f>(&'f FieldDescriptor);

impl Algebra for InField<'_> {
    type E = FieldElement;

    fn number(&self, x: &BigRational) -> Option<FieldElement> {
        self.0.from_rational(x).ok()
    }

    fn symbol(&self) -> Option<(&str, FieldElement)> {
        match self.0.kind() {
            FieldKind::Galois { .. } | FieldKind::NumberField => Some((self.0.symbol(), self.0.generator())),
            FieldKind::Prime { .. } | FieldKind::Rationals => None,
        }
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldOps::add(self.0, a, b)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldOps::sub(self.0, a, b)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldOps::mul(self.0, a, b)
    }
}

/// Rational polynomials in one named variable, low degree first.
struct Polynomials<'s>(&'s str);

impl Algebra for Polynomials<'_> {
    type E = Vec<BigRational>;

    fn number(&self, x: &BigRational) -> Option<Self::E> {
        Some(vec![x.clone()])
    }

    fn symbol(&self) -> Option<(&str, Self::E)> {
        Some((self.0, vec![BigRational::zero(), BigRational::one()]))
    }

    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        poly::add(&BaseField::Rationals, a, b)
    }

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        poly::sub(&BaseField::Rationals, a, b)
    }

    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        poly::mul(&BaseField::Rationals, a, b)
    }
}

fn number(c: &mut Cursor) -> Result<BigRational> {
    let n = c.uint()?;
    if c.eat('/') {
        let at = c.pos;
        let d = c.uint()?;
        if d.is_zero() {
            return Err(Error::parse(at, &["nonzero denominator"]));
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(n))
    }
}

fn is_number_start(c: &mut Cursor) -> bool {
    c.peek().is_some_and(|ch| ch.is_ascii_digit())
}

fn factor<A: Algebra>(c: &mut Cursor, a: &A) -> Result<A::E> {
    let start = {
        c.skip_ws();
        c.pos
    };
    let base = if is_number_start(c) {
        let x = number(c)?;
        a.number(&x)
            .ok_or_else(|| Error::InvalidField(format!("{} is not defined in this field", x)))?
    } else if c.eat('(') {
        let v = expr(c, a)?;
        c.expect(')')?;
        v
    } else {
        match (c.peek_ident(), a.symbol()) {
            (Some(id), Some((sym, g))) if id == sym => {
                c.ident();
                g
            }
            (_, Some((sym, _))) => return Err(Error::parse(start, &["number", sym, "'('"])),
            (_, None) => return Err(Error::parse(start, &["number", "'('"])),
        }
    };
    if c.eat('^') {
        let n = c.small_uint()?;
        Ok(a.pow(&base, n))
    } else {
        Ok(base)
    }
}

fn product<A: Algebra>(c: &mut Cursor, a: &A) -> Result<A::E> {
    let mut acc = factor(c, a)?;
    while c.eat('*') {
        acc = a.mul(&acc, &factor(c, a)?);
    }
    Ok(acc)
}

fn expr<A: Algebra>(c: &mut Cursor, a: &A) -> Result<A::E> {
    let zero = a.sub(&a.one(), &a.one());
    let mut acc = if c.eat('-') {
        a.sub(&zero, &product(c, a)?)
    } else {
        product(c, a)?
    };
    loop {
        if c.eat('+') {
            acc = a.add(&acc, &product(c, a)?);
        } else if c.eat('-') {
            acc = a.sub(&acc, &product(c, a)?);
        } else {
            return Ok(acc);
        }
    }
}

fn prime_power(n: &BigInt, at: usize) -> Result<(u64, u32)> {
    let n = n.to_u64().ok_or_else(|| Error::parse(at, &["field order below 2^64"]))?;
    if n < 2 {
        return Err(Error::InvalidField(format!("gf({n}) is not a field")));
    }
    let p = (2..)
        .take_while(|d: &u64| d.saturating_mul(*d) <= n)
        .find(|d| n % d == 0)
        .unwrap_or(n);
    let (mut m, mut k) = (n, 0u32);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(Error::InvalidField(format!("{n} is not a prime power")));
    }
    Ok((p, k))
}

fn field(c: &mut Cursor) -> Result<FieldDescriptor> {
    c.skip_ws();
    let start = c.pos;
    match c.ident() {
        Some("gf") => {
            c.expect('(')?;
            let at = c.pos;
            let n = c.uint()?;
            let f = if c.eat('^') {
                let p = n.to_u64().ok_or_else(|| Error::parse(at, &["prime below 2^64"]))?;
                let k = c.small_uint()?;
                FieldDescriptor::galois(p, k)?
            } else {
                let (p, k) = prime_power(&n, at)?;
                FieldDescriptor::galois(p, k)?
            };
            c.expect(')')?;
            Ok(f)
        }
        Some("q") => {
            if !c.eat('(') {
                return Ok(FieldDescriptor::rationals());
            }
            c.skip_ws();
            let at = c.pos;
            let sym = c.ident().ok_or_else(|| Error::parse(at, &["generator symbol"]))?;
            if RESERVED.contains(&sym) {
                return Err(Error::Validation(format!("'{sym}' is reserved and can't name a generator")));
            }
            c.expect(';')?;
            let at = c.pos;
            let poly = expr(c, &Polynomials(sym))?;
            c.expect(')')?;
            let ints: Option<Vec<BigInt>> = poly
                .iter()
                .map(|q| q.is_integer().then(|| q.to_integer()))
                .collect();
            let ints = ints.ok_or_else(|| Error::parse(at, &["integer polynomial"]))?;
            FieldDescriptor::number_field(sym, &ints)
        }
        _ => Err(Error::parse(start, &["gf(", "q"])),
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Cursor) -> Result<T>) -> Result<T> {
    let mut c = Cursor::new(text);
    let v = f(&mut c)?;
    c.finish()?;
    Ok(v)
}

/// `gf(p)`, `gf(p^k)`, `gf(q)` for a prime power `q`, `q`, or `q(r; <monic integer polynomial in r>)`.
pub fn parse_field(text: &str) -> Result<FieldDescriptor> {
    whole(text, field)
}

/// `F/K`, e.g. `gf(4)/gf(2)` or `q(r; r^3-2)/q`.
pub fn parse_extension(text: &str) -> Result<ExtensionPair> {
    whole(text, |c| {
        let large = field(c)?;
        c.expect('/')?;
        let small = field(c)?;
        ExtensionPair::new(small, large)
    })
}

fn group(c: &mut Cursor) -> Result<GroupDescriptor> {
    c.skip_ws();
    let start = c.pos;
    let first = if c.eat('(') {
        let g = group(c)?;
        c.expect(')')?;
        g
    } else {
        match c.ident() {
            Some("z") => GroupDescriptor::Int,
            Some("q") => GroupDescriptor::Rational,
            _ => return Err(Error::parse(start, &["z", "q", "'('"])),
        }
    };
    if c.eat('*') {
        GroupDescriptor::lex_pair(first, group(c)?)
    } else {
        Ok(first)
    }
}

/// `z`, `q`, or lexicographic products such as `z*z`.
pub fn parse_group(text: &str) -> Result<GroupDescriptor> {
    whole(text, group)
}

fn signed_number(c: &mut Cursor) -> Result<BigRational> {
    if c.eat('(') {
        let r = signed_number(c)?;
        c.expect(')')?;
        return Ok(r);
    }
    let negative = c.eat('-');
    let r = number(c)?;
    Ok(if negative { -r } else { r })
}

fn exponent(c: &mut Cursor, g: &GroupDescriptor) -> Result<GroupElement> {
    c.skip_ws();
    let start = c.pos;
    match g {
        GroupDescriptor::Int => {
            let r = signed_number(c)?;
            r.is_integer()
                .then(|| r.to_integer().to_i64())
                .flatten()
                .map(GroupElement::Int)
                .ok_or_else(|| Error::parse(start, &["64-bit integer exponent"]))
        }
        GroupDescriptor::Rational => Ok(GroupElement::Rational(signed_number(c)?)),
        GroupDescriptor::LexPair(a, b) => {
            c.expect('(')?;
            let x = exponent(c, a)?;
            c.expect(',')?;
            let y = exponent(c, b)?;
            c.expect(')')?;
            Ok(GroupElement::pair(x, y))
        }
        other => Err(Error::UnsupportedGroup(other.literal())),
    }
}

/// An element of `g`: `3`, `-1/2`, `(1,-2)`.
pub fn parse_exponent(g: &GroupDescriptor, text: &str) -> Result<GroupElement> {
    whole(text, |c| exponent(c, g))
}

/// The exponent written `t` with no power: `1`, or `(1,0)` in a product.
pub fn unit_exponent(g: &GroupDescriptor) -> Result<GroupElement> {
    match g {
        GroupDescriptor::Int => Ok(GroupElement::Int(1)),
        GroupDescriptor::Rational => Ok(GroupElement::Rational(BigRational::one())),
        GroupDescriptor::LexPair(a, b) => Ok(GroupElement::pair(unit_exponent(a)?, b.zero())),
        other => Err(Error::UnsupportedGroup(other.literal())),
    }
}

/// A field element as a polynomial expression in the generator, e.g. `a+1`, `1/2`, `r^2`.
pub fn parse_element(f: &FieldDescriptor, text: &str) -> Result<FieldElement> {
    whole(text, |c| expr(c, &InField(f)))
}

enum Term {
    Monomial(GroupElement, FieldElement),
    Precision(GroupElement),
}

fn series_term(c: &mut Cursor, ring: &SeriesRing) -> Result<Term> {
    let g = ring.group();
    let alg = InField(ring.field());
    if c.peek_ident() == Some("O") {
        c.ident();
        c.expect('(')?;
        if c.ident() != Some("t") {
            return c.fail(&["t"]);
        }
        c.expect('^')?;
        let e = exponent(c, g)?;
        c.expect(')')?;
        return Ok(Term::Precision(e));
    }
    let mut coeff = alg.one();
    let mut exp: Option<GroupElement> = None;
    loop {
        c.skip_ws();
        let at = c.pos;
        if c.peek_ident() == Some("t") {
            if exp.is_some() {
                return Err(Error::parse(at, &["coefficient"]));
            }
            c.ident();
            exp = Some(if c.eat('^') { exponent(c, g)? } else { unit_exponent(g)? });
        } else {
            coeff = alg.mul(&coeff, &factor(c, &alg)?);
        }
        if !c.eat('*') {
            break;
        }
    }
    Ok(Term::Monomial(exp.unwrap_or_else(|| g.zero()), coeff))
}

/// A series literal such as `1 + a*t^2 - t^3` or `(a+1)*t + O(t^5)`.
///
/// Without an `O(t^τ)` term the ring's default precision applies.
pub fn parse_series(ring: &Arc<SeriesRing>, text: &str) -> Result<Series> {
    let f = ring.field();
    whole(text, |c| {
        let mut terms = Vec::new();
        let mut precision = None;
        let mut negative = c.eat('-');
        loop {
            c.skip_ws();
            let at = c.pos;
            match series_term(c, ring)? {
                Term::Precision(_) if negative || precision.is_some() => {
                    return Err(Error::parse(at, &["term"]));
                }
                Term::Precision(p) => precision = Some(p),
                Term::Monomial(e, coeff) => {
                    if precision.is_some() {
                        return Err(Error::parse(at, &["end of input"]));
                    }
                    terms.push((e, if negative { f.neg(&coeff) } else { coeff }));
                }
            }
            if c.eat('+') {
                negative = false;
            } else if c.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        let precision = precision.unwrap_or_else(|| ring.precision().clone());
        Series::from_terms(ring, terms, precision)
    })
}

/// `R`, `<0>`, `<X>_V`, `<X^n>_V`, or `(n,<w1,w2,...>)` with `wi` in `F`.
pub fn parse_ideal_node(ext: &ExtensionPair, text: &str) -> Result<IdealNode> {
    whole(text, |c| {
        c.skip_ws();
        let start = c.pos;
        if c.peek_ident() == Some("R") {
            c.ident();
            return Ok(IdealNode::Top);
        }
        if c.eat('<') {
            if c.eat('0') {
                c.expect('>')?;
                return Ok(IdealNode::Zero);
            }
            if c.ident() != Some("X") {
                return c.fail(&["0", "X"]);
            }
            let at = c.pos;
            let n = if c.eat('^') { c.small_uint()? } else { 1 };
            if n == 0 {
                return Err(Error::parse(at, &["positive level"]));
            }
            c.expect('>')?;
            if !c.eat_str("_V") {
                return c.fail(&["_V"]);
            }
            return Ok(IdealNode::power(ext, n));
        }
        if !c.eat('(') {
            return Err(Error::parse(start, &["R", "<0>", "<X^n>_V", "(n,<...>)"]));
        }
        let at = c.pos;
        let n = c.small_uint()?;
        if n == 0 {
            return Err(Error::parse(at, &["positive level"]));
        }
        c.expect(',')?;
        c.expect('<')?;
        let alg = InField(ext.large());
        let mut gens = vec![expr(c, &alg)?];
        while c.eat(',') {
            gens.push(expr(c, &alg)?);
        }
        c.expect('>')?;
        c.expect(')')?;
        Ok(IdealNode::level(ext, n, Subspace::span_elements(ext, &gens)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::DEFAULT_BUDGET;

    fn gf4() -> Arc<ExtensionPair> {
        Arc::new(parse_extension("gf(4)/gf(2)").unwrap())
    }

    fn ring(ext: Arc<ExtensionPair>, g: &str, tau: &str) -> Arc<SeriesRing> {
        let g = parse_group(g).unwrap();
        let tau = parse_exponent(&g, tau).unwrap();
        SeriesRing::new(ext, g, tau, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("gf(4)").unwrap().literal(), "gf(2^2)");
        assert_eq!(parse_field("gf(2^2)").unwrap(), parse_field("gf(4)").unwrap());
        assert_eq!(parse_field(" gf ( 7 ) ").unwrap().literal(), "gf(7)");
        assert_eq!(parse_field("q").unwrap().literal(), "q");
        let cube = parse_field("q(r; r^3-2)").unwrap();
        assert_eq!(cube.literal(), "q(r; r^3-2)");
        assert_eq!(parse_field(&cube.literal()).unwrap(), cube);
        assert!(matches!(parse_field("gf(6)"), Err(Error::InvalidField(_))));
        assert!(matches!(parse_field("q(r; r^2-4)"), Err(Error::InvalidField(_))));
        assert!(matches!(parse_field("q(r; 2*r^2-1)"), Err(Error::InvalidField(_))));
        assert!(matches!(parse_field("q(r; r^2/2-1)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_field("q(t; t^2-2)"), Err(Error::Validation(_))));
        assert_eq!(
            parse_field("gf[4]"),
            Err(Error::Parse { position: 2, expected: vec!["'('".into()] })
        );
        assert_eq!(
            parse_field("gf(4) x"),
            Err(Error::Parse { position: 6, expected: vec!["end of input".into()] })
        );
    }

    #[test]
    fn extensions() {
        assert_eq!(gf4().literal(), "gf(2^2)/gf(2)");
        assert!(matches!(parse_extension("gf(4)/gf(3)"), Err(Error::NotAnExtension(_))));
        assert!(parse_extension("q(r;r^3-2)/q").is_ok());
        assert!(matches!(parse_extension("gf(4)"), Err(Error::Parse { position: 5, .. })));
    }

    #[test]
    fn groups_and_exponents() {
        let zz = parse_group("z*z").unwrap();
        assert_eq!(zz.literal(), "z*z");
        assert_eq!(
            parse_exponent(&zz, "(1,-2)").unwrap(),
            GroupElement::pair(GroupElement::Int(1), GroupElement::Int(-2))
        );
        let q = parse_group("q").unwrap();
        assert_eq!(parse_exponent(&q, "(1/2)").unwrap(), parse_exponent(&q, "1/2").unwrap());
        assert!(parse_exponent(&GroupDescriptor::Int, "1/2").is_err());
        assert!(parse_group("w").is_err());
    }

    #[test]
    fn elements() {
        let e = gf4();
        let f = e.large();
        let a = f.generator();
        assert_eq!(parse_element(f, "a+1").unwrap(), FieldOps::add(f, &a, &f.one()));
        assert_eq!(parse_element(f, "a^2").unwrap(), FieldOps::add(f, &a, &f.one()));
        assert_eq!(parse_element(f, "(a+1)*a").unwrap(), f.one());
        let gf7 = parse_field("gf(7)").unwrap();
        assert_eq!(parse_element(&gf7, "1/2").unwrap(), gf7.from_i64(4));
        assert!(parse_element(&gf7, "a").is_err());
        assert!(parse_element(&gf7, "1/7").is_err());
    }

    #[test]
    fn series_literals() {
        let r = ring(gf4(), "z", "8");
        let s = parse_series(&r, "1 + a*t^2 + t^3").unwrap();
        assert_eq!(s.format_terms(), "1 + a*t^2 + t^3");
        assert_eq!(s.precision(), &GroupElement::Int(8));
        let s = parse_series(&r, "(a+1)*t - t^2 + O(t^5)").unwrap();
        assert_eq!(s.to_string(), "(a+1)*t + t^2 + O(t^5)");
        assert_eq!(parse_series(&r, "t*a").unwrap().to_string(), parse_series(&r, "a*t").unwrap().to_string());
        assert_eq!(parse_series(&r, "a + 1").unwrap().to_string(), "a+1 + O(t^8)");
        assert!(parse_series(&r, "t*t").is_err());
        assert!(matches!(parse_series(&r, "t^-1"), Err(Error::NegativeExponent(_))));
        assert!(parse_series(&r, "O(t^3) + t").is_err());
        assert!(matches!(parse_series(&r, "1 + b"), Err(Error::Parse { position: 4, .. })));

        let q = ring(Arc::new(parse_extension("q/q").unwrap()), "q", "3");
        let s = parse_series(&q, "1/2 + 3*t^(1/2) - t^5/2").unwrap();
        assert_eq!(s.format_terms(), "1/2 + 3*t^(1/2) - t^(5/2)");

        let zz = ring(gf4(), "z*z", "(2,0)");
        let s = parse_series(&zz, "t + t^(0,1)").unwrap();
        assert_eq!(s.format_terms(), "t^(0,1) + t^(1,0)");
        assert_eq!(parse_series(&zz, &s.to_string()).unwrap().to_string(), s.to_string());
    }

    #[test]
    fn ideal_nodes() {
        let e = gf4();
        assert_eq!(parse_ideal_node(&e, "R").unwrap(), IdealNode::Top);
        assert_eq!(parse_ideal_node(&e, "<0>").unwrap(), IdealNode::Zero);
        assert_eq!(parse_ideal_node(&e, "<X^2>_V").unwrap(), IdealNode::power(&e, 2));
        assert_eq!(parse_ideal_node(&e, "(1,<1,a>)").unwrap(), IdealNode::power(&e, 1));
        assert_eq!(parse_ideal_node(&e, "(1,<0>)").unwrap(), IdealNode::power(&e, 2));
        let n = parse_ideal_node(&e, "(2,<a+1>)").unwrap();
        assert_eq!(n.label(&e), "(2,<a+1>)");
        assert!(parse_ideal_node(&e, "(0,<a>)").is_err());
    }
}
