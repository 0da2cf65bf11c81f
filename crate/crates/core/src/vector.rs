//! Elements of graded free modules `⊕ S(-d_i)` and homogeneous matrices.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Scalar;
use crate::poly::{write_term, Monomial, MonomialOrder, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: usize,
    pub mon: Monomial,
    pub coef: Scalar,
}

/// Position-over-term comparison: a smaller component index dominates.
#[inline]
pub fn cmp_terms(ord: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => ord.cmp(a.1, b.1),
        o => o,
    }
}

/// A vector in a free module; terms are strictly decreasing in the
/// position-over-term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn unit(comp: usize, ring: &PolyRing) -> Vector {
        Vector { terms: vec![Term { comp, mon: ring.one_monomial(), coef: ring.field().one() }] }
    }

    pub fn from_poly(p: &Poly, comp: usize) -> Vector {
        Vector {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| Term { comp, mon: m.clone(), coef: c.clone() })
                .collect(),
        }
    }

    /// Builds a vector from terms in any order, combining duplicates.
    pub fn from_terms(ord: MonomialOrder, mut terms: Vec<Term>) -> Vector {
        terms.sort_by(|a, b| cmp_terms(ord, (b.comp, &b.mon), (a.comp, &a.mon)));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mon == t.mon {
                    last.coef = last.coef.add(&t.coef);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coef.is_zero());
        Vector { terms: out }
    }

    /// Assembles a vector from per-component polynomials.
    pub fn from_entries<'a>(entries: impl IntoIterator<Item = (usize, &'a Poly)>, ord: MonomialOrder) -> Vector {
        let mut terms = Vec::new();
        for (c, p) in entries {
            for (m, k) in p.terms() {
                terms.push(Term { comp: c, mon: m.clone(), coef: k.clone() });
            }
        }
        Vector::from_terms(ord, terms)
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Vector {
        Vector { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Degree of the leading term in the free module with the given twists.
    pub fn degree(&self, twists: &[i32]) -> Option<i64> {
        self.lead().map(|t| t.mon.degree() as i64 + twists[t.comp] as i64)
    }

    pub fn is_homogeneous(&self, twists: &[i32]) -> bool {
        match self.degree(twists) {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.mon.degree() as i64 + twists[t.comp] as i64 == d),
        }
    }

    /// The polynomial in one component.
    pub fn entry(&self, comp: usize) -> Poly {
        Poly::from_sorted_terms(
            self.terms.iter().filter(|t| t.comp == comp).map(|t| (t.mon.clone(), t.coef.clone())).collect(),
        )
    }

    /// Entries as `(component, polynomial)` pairs, in component order.
    pub fn entries(&self) -> Vec<(usize, Poly)> {
        let mut out: Vec<(usize, Vec<(Monomial, Scalar)>)> = Vec::new();
        for t in &self.terms {
            match out.last_mut() {
                Some((c, v)) if *c == t.comp => v.push((t.mon.clone(), t.coef.clone())),
                _ => out.push((t.comp, vec![(t.mon.clone(), t.coef.clone())])),
            }
        }
        out.into_iter().map(|(c, v)| (c, Poly::from_sorted_terms(v))).collect()
    }

    pub fn max_comp(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.comp).max()
    }

    pub fn add(&self, other: &Vector, ord: MonomialOrder) -> Vector {
        merge(&self.terms, other.terms.iter().cloned(), ord)
    }

    pub fn sub(&self, other: &Vector, ord: MonomialOrder) -> Vector {
        merge(&self.terms, other.terms.iter().map(|t| Term { coef: t.coef.neg(), ..t.clone() }), ord)
    }

    pub fn neg(&self) -> Vector {
        Vector { terms: self.terms.iter().map(|t| Term { coef: t.coef.neg(), ..t.clone() }).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|t| Term { coef: t.coef.mul(c), ..t.clone() }).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, mon: t.mon.mul(m), coef: t.coef.mul(c) })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly, ord: MonomialOrder) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = acc.add(&self.mul_term(m, c), ord);
        }
        acc
    }

    /// Renumbers components through `f`; `f` must be order preserving.
    pub fn map_comps_monotone(&self, f: impl Fn(usize) -> usize) -> Vector {
        Vector { terms: self.terms.iter().map(|t| Term { comp: f(t.comp), ..t.clone() }).collect() }
    }

    /// Renumbers components through an arbitrary map, re-sorting.
    pub fn map_comps(&self, f: impl Fn(usize) -> usize, ord: MonomialOrder) -> Vector {
        Vector::from_terms(ord, self.terms.iter().map(|t| Term { comp: f(t.comp), ..t.clone() }).collect())
    }

    /// Keeps only the components in `range`, shifted down by `range.start`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&t.comp))
                .map(|t| Term { comp: t.comp - range.start, ..t.clone() })
                .collect(),
        }
    }

    pub fn make_monic(&self) -> Vector {
        match self.lead() {
            None => Vector::zero(),
            Some(t) if t.coef.is_one() => self.clone(),
            Some(t) => self.scale(&t.coef.inv()),
        }
    }

    /// Sum of the terms whose monomial is `1` (the reduction modulo the
    /// maximal ideal, as a scalar vector).
    pub fn constant_part(&self) -> Vec<(usize, Scalar)> {
        self.terms.iter().filter(|t| t.mon.is_one()).map(|t| (t.comp, t.coef.clone())).collect()
    }

    pub fn display<'a>(&'a self, ring: &'a PolyRing, names: &'a [String]) -> VectorDisplay<'a> {
        VectorDisplay { v: self, ring, names }
    }
}

fn merge(a: &[Term], b: impl Iterator<Item = Term>, ord: MonomialOrder) -> Vector {
    let mut out = Vec::with_capacity(a.len());
    let mut ia = a.iter().peekable();
    let mut ib = b.peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => match cmp_terms(ord, (x.comp, &x.mon), (y.comp, &y.mon)) {
                Ordering::Greater => out.push(ia.next().unwrap().clone()),
                Ordering::Less => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let x = ia.next().unwrap();
                    let y = ib.next().unwrap();
                    let c = x.coef.add(&y.coef);
                    if !c.is_zero() {
                        out.push(Term { comp: x.comp, mon: x.mon.clone(), coef: c });
                    }
                }
            },
            (Some(_), None) => out.push(ia.next().unwrap().clone()),
            (None, Some(_)) => out.push(ib.next().unwrap()),
            (None, None) => break,
        }
    }
    Vector { terms: out }
}

pub struct VectorDisplay<'a> {
    v: &'a Vector,
    ring: &'a PolyRing,
    names: &'a [String],
}

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "0");
        }
        for (k, t) in self.v.terms.iter().enumerate() {
            let gen = &self.names[t.comp];
            let mono = if t.mon.is_one() { gen.clone() } else { format!("{}*{}", self.ring.fmt_monomial(&t.mon), gen) };
            write_term(f, k == 0, &t.coef, &mono)?;
        }
        Ok(())
    }
}

/// A homogeneous degree-zero map between graded free modules, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Vec<i32>,
    pub target: Vec<i32>,
    pub cols: Vec<Vector>,
}

impl ModuleMap {
    pub fn new(source: Vec<i32>, target: Vec<i32>, cols: Vec<Vector>) -> ModuleMap {
        debug_assert_eq!(source.len(), cols.len());
        ModuleMap { source, target, cols }
    }

    pub fn zero(source: Vec<i32>, target: Vec<i32>) -> ModuleMap {
        let cols = vec![Vector::zero(); source.len()];
        ModuleMap { source, target, cols }
    }

    pub fn identity(twists: &[i32], ring: &PolyRing) -> ModuleMap {
        let cols = (0..twists.len()).map(|i| Vector::unit(i, ring)).collect();
        ModuleMap { source: twists.to_vec(), target: twists.to_vec(), cols }
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Poly {
        self.cols[col].entry(row)
    }

    /// Image of a vector of the source module.
    pub fn apply(&self, v: &Vector, ord: MonomialOrder) -> Vector {
        let mut acc = Vector::zero();
        for (c, p) in v.entries() {
            acc = acc.add(&self.cols[c].mul_poly(&p, ord), ord);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap, ord: MonomialOrder) -> ModuleMap {
        let cols = other.cols.iter().map(|v| self.apply(v, ord)).collect();
        ModuleMap { source: other.source.clone(), target: self.target.clone(), cols }
    }

    /// Every nonzero column is homogeneous of the degree of its source twist.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().zip(&self.source).all(|(v, &d)| {
            v.is_homogeneous(&self.target) && v.degree(&self.target).is_none_or(|e| e == d as i64)
        })
    }

    /// True if no entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.cols.iter().all(|v| v.terms().iter().all(|t| !t.mon.is_one()))
    }
}
