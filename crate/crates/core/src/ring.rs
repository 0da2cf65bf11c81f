//! Graded quotient rings `R = S/I` of a weighted polynomial ring.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::hilbert::HilbertSeries;
use crate::poly::{Poly, PolyRing, RingRef};
use crate::vector::Vector;

#[derive(Debug)]
pub struct QuotientRing {
    name: String,
    ambient: RingRef,
    ideal: Ideal,
    hilbert: OnceLock<HilbertSeries>,
}

pub type QRing = Arc<QuotientRing>;

impl QuotientRing {
    /// `ambient / (relations)`; relations must be homogeneous and generate a
    /// proper ideal.
    pub fn new(name: &str, ambient: RingRef, relations: Vec<Poly>) -> Result<QRing> {
        for r in &relations {
            if !r.is_homogeneous() {
                return Err(Error::NotHomogeneous(r.display(&ambient).to_string()));
            }
        }
        let ideal = Ideal::new(ambient.clone(), relations);
        if ideal.is_unit() {
            return Err(Error::ImproperIdeal);
        }
        Ok(Arc::new(QuotientRing { name: name.to_string(), ambient, ideal, hilbert: OnceLock::new() }))
    }

    /// The ambient polynomial ring itself.
    pub fn polynomial(name: &str, ambient: RingRef) -> QRing {
        QuotientRing::new(name, ambient, Vec::new()).expect("zero ideal is proper")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &RingRef {
        &self.ambient
    }

    pub fn poly_ring(&self) -> &PolyRing {
        &self.ambient
    }

    pub fn field(&self) -> Field {
        self.ambient.field()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        self.ambient.weights()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ideal_gb(&self) -> &[Poly] {
        self.ideal.groebner_basis()
    }

    pub fn is_polynomial(&self) -> bool {
        self.ideal_gb().is_empty()
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        self.hilbert
            .get_or_init(|| HilbertSeries::of_monomial_ideal(&self.ideal.leading_monomials(), self.weights()))
    }

    pub fn dim(&self) -> i64 {
        self.hilbert_series().dimension()
    }

    /// `dim S - dim R`.
    pub fn codim(&self) -> usize {
        (self.nvars() as i64 - self.dim()) as usize
    }

    pub fn reduce_poly(&self, f: &Poly) -> Poly {
        if self.is_polynomial() {
            return f.clone();
        }
        self.ideal.normal_form(f)
    }

    /// Entrywise normal form modulo `I`.
    pub fn reduce_vector(&self, v: &Vector) -> Vector {
        if self.is_polynomial() || v.is_zero() {
            return v.clone();
        }
        let ord = self.ambient.order();
        let mut out = Vector::zero();
        for (c, p) in v.entries() {
            out = out.add(&Vector::from_poly(&self.reduce_poly(&p), c), ord);
        }
        out
    }

    /// A Gröbner basis of `I·F` for `F` of the given rank (components from
    /// `offset`).
    pub fn ideal_vectors(&self, rank: usize, offset: usize) -> Vec<Vector> {
        let gb = self.ideal_gb();
        let mut out = Vec::with_capacity(gb.len() * rank);
        for c in 0..rank {
            for g in gb {
                out.push(Vector::from_poly(g, offset + c));
            }
        }
        out
    }

    /// Same ambient and same ideal.
    pub fn same_as(&self, other: &QuotientRing) -> bool {
        std::ptr::eq(self, other) || (*self.ambient == *other.ambient && self.ideal_gb() == other.ideal_gb())
    }

    /// `R / (extra)` over the same ambient.
    pub fn quotient(&self, name: &str, extra: &[Poly]) -> Result<QRing> {
        let mut gens = self.ideal.gens().to_vec();
        gens.extend(extra.iter().cloned());
        QuotientRing::new(name, self.ambient.clone(), gens)
    }

    /// The ambient polynomial ring as a quotient ring with zero ideal.
    pub fn ambient_ring(&self) -> QRing {
        QuotientRing::polynomial(&format!("{}_ambient", self.name), self.ambient.clone())
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field())?;
        for (k, (n, w)) in self.ambient.names().iter().zip(self.weights()).enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if *w == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}:{w}")?;
            }
        }
        write!(f, "]")?;
        if !self.ideal.is_zero() {
            write!(f, "/(")?;
            for (k, g) in self.ideal.gens().iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", g.display(&self.ambient))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
