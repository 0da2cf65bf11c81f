//! Positively graded polynomial rings, monomials, orders and polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub type Exps = SmallVec<[u16; 8]>;

const MAX_DEGREE: u32 = 1 << 16;

/// A monomial with its weighted degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: SmallVec::from_elem(0, nvars), deg: 0 }
    }

    pub fn new(exps: &[u16], weights: &[u32]) -> Result<Monomial> {
        let deg: u64 = exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
        if deg >= MAX_DEGREE as u64 {
            return Err(Error::ExponentOverflow);
        }
        Ok(Monomial { exps: SmallVec::from_slice(exps), deg: deg as u32 })
    }

    pub fn var(i: usize, weights: &[u32]) -> Monomial {
        let mut m = Monomial::one(weights.len());
        m.exps[i] = 1;
        m.deg = weights[i];
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let deg = self.deg + other.deg;
        assert!(deg < MAX_DEGREE, "monomial degree overflow");
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, deg }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { exps, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { exps, deg }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent-wise `max(self - other, 0)`, the generator of `(self) : (other)`.
    pub fn colon(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a.saturating_sub(*b)).collect();
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { exps, deg }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with respect to the declared weights.
    #[default]
    GrevLex,
    Lex,
    WeightedGrevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex | MonomialOrder::WeightedGrevLex => {
                a.deg.cmp(&b.deg).then_with(|| {
                    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub fn is_degree_compatible(self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }
}

/// `k[x_1..x_n]` with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: Field, vars: Vec<(String, u32)>, order: MonomialOrder) -> Result<PolyRing> {
        let mut names = Vec::with_capacity(vars.len());
        let mut weights = Vec::with_capacity(vars.len());
        for (name, w) in vars {
            if w == 0 {
                return Err(Error::Definition(format!("variable `{name}` has weight 0")));
            }
            if names.contains(&name) {
                return Err(Error::Definition(format!("duplicate variable `{name}`")));
            }
            if name.is_empty() || !name.chars().next().unwrap().is_alphabetic() {
                return Err(Error::Definition(format!("bad variable name `{name}`")));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(PolyRing { field, names, weights, order })
    }

    /// Standard-graded ring on the given names.
    pub fn standard(field: Field, names: &[&str]) -> RingRef {
        let vars = names.iter().map(|n| (n.to_string(), 1)).collect();
        Arc::new(PolyRing::new(field, vars, MonomialOrder::GrevLex).expect("valid ring"))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Sum of the variable weights (the twist of the canonical module of `S`).
    pub fn weight_sum(&self) -> i32 {
        self.weights.iter().sum::<u32>() as i32
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// All monomials of weighted degree `d`, in no particular order.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let mut cur = vec![0u16; self.nvars()];
        self.enumerate(0, d as u32, &mut cur, &mut out);
        out
    }

    fn enumerate(&self, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if left == 0 {
                out.push(Monomial::new(cur, &self.weights).expect("bounded degree"));
            }
            return;
        }
        let w = self.weights[i];
        let mut e = 0;
        while e * w <= left {
            cur[i] = e as u16;
            self.enumerate(i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A polynomial: terms sorted strictly decreasing in the ring order, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(ring: &PolyRing, c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(ring.one_monomial(), c)] }
        }
    }

    pub fn one(ring: &PolyRing) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn var(ring: &PolyRing, i: usize) -> Poly {
        Poly { terms: vec![(Monomial::var(i, ring.weights()), ring.field().one())] }
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<(Monomial, Scalar)>) -> Poly {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Scalar)>) -> Poly {
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    /// The degree-zero coefficient.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    pub fn add(&self, other: &Poly, ring: &PolyRing) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match ring.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.1.add(&b.1);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Poly, ring: &PolyRing) -> Poly {
        self.add(&other.neg(), ring)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect() }
    }

    pub fn mul(&self, other: &Poly, ring: &PolyRing) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                terms.push((m.mul(n), c.mul(d)));
            }
        }
        Poly::from_terms(ring, terms)
    }

    pub fn pow(&self, e: u32, ring: &PolyRing) -> Poly {
        let mut acc = Poly::one(ring);
        for _ in 0..e {
            acc = acc.mul(self, ring);
        }
        acc
    }

    pub fn display<'a>(&'a self, ring: &'a PolyRing) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ring }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    ring: &'a PolyRing,
}

/// Writes `c*m` terms joined by signs; shared by polynomial and vector printing.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Scalar,
    mono: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = if neg { c.neg() } else { c.clone() };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { "-" } else { "+" })?;
    }
    if mono.is_empty() {
        return write!(f, "{abs}");
    }
    if abs.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{abs}*{mono}")
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let mono = if m.is_one() { String::new() } else { self.ring.fmt_monomial(m) };
            write_term(f, k == 0, c, &mono)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Expression parsing

/// Parsed arithmetic expression over named atoms.
#[derive(Clone, Debug)]
pub(crate) enum Expr {
    Num(BigInt, BigInt),
    Atom(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

pub(crate) struct ExprParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    pub(crate) fn parse(src: &'a str) -> Result<Expr> {
        let mut p = ExprParser { src, bytes: src.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                // implicit multiplication: `2x`, `x(y+1)`
                Some(c) if c == b'(' || c.is_ascii_alphabetic() || c == b'_' => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = self.src[start..self.pos].parse().map_err(|_| self.err("exponent too large"))?;
            if e >= MAX_DEGREE {
                return Err(Error::ExponentOverflow);
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    if !self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                        return Err(self.err("expected denominator"));
                    }
                    let d = self.number()?;
                    return Ok(Expr::Num(n, d));
                }
                Ok(Expr::Num(n, BigInt::one()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Atom(self.src[start..self.pos].to_string(), start))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub(crate) fn eval_poly(e: &Expr, ring: &PolyRing) -> Result<Poly> {
    Ok(match e {
        Expr::Num(n, d) => {
            let c = ring.field().fraction(n, d).map_err(|_| Error::Parse {
                pos: 0,
                msg: "denominator vanishes in the coefficient field".into(),
            })?;
            Poly::constant(ring, c)
        }
        Expr::Atom(name, _) => {
            let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            Poly::var(ring, i)
        }
        Expr::Add(a, b) => eval_poly(a, ring)?.add(&eval_poly(b, ring)?, ring),
        Expr::Sub(a, b) => eval_poly(a, ring)?.sub(&eval_poly(b, ring)?, ring),
        Expr::Mul(a, b) => eval_poly(a, ring)?.mul(&eval_poly(b, ring)?, ring),
        Expr::Neg(a) => eval_poly(a, ring)?.neg(),
        Expr::Pow(a, k) => {
            let base = eval_poly(a, ring)?;
            if let [(m, c)] = base.terms() {
                if m.degree() as u64 * *k as u64 >= MAX_DEGREE as u64 {
                    return Err(Error::ExponentOverflow);
                }
                let exps: Vec<u16> = m.exps().iter().map(|&x| x * *k as u16).collect();
                let mut coef = ring.field().one();
                for _ in 0..*k {
                    coef = coef.mul(c);
                }
                Poly::monomial(Monomial::new(&exps, ring.weights())?, coef)
            } else {
                base.pow(*k, ring)
            }
        }
    })
}

/// Parses a polynomial over `ring`; see the module docs for the grammar.
pub fn parse_poly(text: &str, ring: &PolyRing) -> Result<Poly> {
    let e = ExprParser::parse(text)?;
    eval_poly(&e, ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qxyz() -> RingRef {
        PolyRing::standard(Field::Rationals, &["x", "y", "z"])
    }

    #[test]
    fn difference_of_squares() {
        let r = PolyRing::standard(Field::Rationals, &["x", "y"]);
        let a = parse_poly("x + y", &r).unwrap();
        let b = parse_poly("x - y", &r).unwrap();
        assert_eq!(a.mul(&b, &r), parse_poly("x^2 - y^2", &r).unwrap());
        assert!(a.mul(&Poly::zero(), &r).is_zero());
    }

    #[test]
    fn characteristic_two_square() {
        let r = PolyRing::standard(Field::prime(2).unwrap(), &["x"]);
        let f = parse_poly("x + 1", &r).unwrap();
        assert_eq!(f.mul(&f, &r), parse_poly("x^2 + 1", &r).unwrap());
    }

    #[test]
    fn parse_examples() {
        let r = qxyz();
        assert_eq!(parse_poly("y^2 - x*z", &r).unwrap().terms().len(), 2);
        assert!(parse_poly("x*(x + 1) - x^2 - x", &r).unwrap().is_zero());
        let r2 = PolyRing::standard(Field::Rationals, &["x", "y"]);
        assert!(matches!(parse_poly("w", &r2), Err(Error::UnknownVariable(v)) if v == "w"));
        assert!(matches!(parse_poly("x + * y", &r2), Err(Error::Parse { pos: 4, .. })));
        assert!(parse_poly("x/2", &r2).is_err());
        let half = parse_poly("3/6 x", &r2).unwrap();
        assert_eq!(half.display(&r2).to_string(), "1/2*x");
    }

    #[test]
    fn orders() {
        let w = [1u32, 1, 1];
        let m = |e: &[u16]| Monomial::new(e, &w).unwrap();
        let g = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex, x*z > y^2 in lex
        assert_eq!(g.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(g.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        let weighted = [3u32, 4, 5];
        let a = Monomial::new(&[0, 2, 0], &weighted).unwrap();
        assert_eq!(a.degree(), 8);
    }

    #[test]
    fn weighted_degree() {
        let r = PolyRing::new(
            Field::Prime(32003),
            vec![("x".into(), 3), ("y".into(), 4), ("z".into(), 5)],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let f = parse_poly("y^2 - x*z", &r).unwrap();
        assert!(f.is_homogeneous());
        assert_eq!(f.degree(), Some(8));
        assert!(!parse_poly("x + y", &r).unwrap().is_homogeneous());
        assert_eq!(r.monomials_of_degree(8).len(), 2);
    }

    #[test]
    fn exponent_overflow() {
        let r = PolyRing::standard(Field::Rationals, &["x"]);
        assert!(matches!(parse_poly("x^70000", &r), Err(Error::ExponentOverflow)));
    }

    fn arb_poly(r: RingRef) -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u16..3, 3), -4i64..5, 1i64..3), 0..5)
            .prop_map(move |ts| {
                let terms = ts
                    .into_iter()
                    .map(|(e, n, d)| {
                        let c = r.field().from_i64(n).div(&r.field().from_i64(d));
                        (Monomial::new(&e, r.weights()).unwrap(), c)
                    })
                    .collect();
                Poly::from_terms(&r, terms)
            })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_poly(qxyz())) {
            let r = qxyz();
            let text = f.display(&r).to_string();
            prop_assert_eq!(parse_poly(&text, &r).unwrap(), f);
        }

        #[test]
        fn multiplication_laws(f in arb_poly(qxyz()), g in arb_poly(qxyz()), h in arb_poly(qxyz())) {
            let r = qxyz();
            prop_assert_eq!(f.mul(&g, &r), g.mul(&f, &r));
            prop_assert_eq!(f.mul(&g, &r).mul(&h, &r), f.mul(&g.mul(&h, &r), &r));
            prop_assert_eq!(f.mul(&g.add(&h, &r), &r), f.mul(&g, &r).add(&f.mul(&h, &r), &r));
        }
    }
}
