//! Isomorphism testing by invariants and randomized search for a surjection.
//!
//! Two modules with the same Hilbert series are isomorphic as soon as some
//! degree-0 homomorphism between them is surjective (graded Nakayama plus a
//! dimension count). Surjectivity onto a minimally presented target only
//! depends on the constant part of the images of the generators.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::functors::{hom, Homomorphism};
use crate::linalg::rank;
use crate::module::FPModule;
use crate::poly::PolyRing;
use crate::vector::ModuleMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoVerdict {
    ProvenIso,
    ProvenNonIso,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct IsoEvidence {
    pub verdict: IsoVerdict,
    pub witness: Option<Homomorphism>,
    pub mismatch: Option<String>,
    pub trials: usize,
}

impl IsoEvidence {
    fn non_iso(reason: impl Into<String>) -> IsoEvidence {
        IsoEvidence { verdict: IsoVerdict::ProvenNonIso, witness: None, mismatch: Some(reason.into()), trials: 0 }
    }

    fn iso(witness: Homomorphism, trials: usize) -> IsoEvidence {
        IsoEvidence { verdict: IsoVerdict::ProvenIso, witness: Some(witness), mismatch: None, trials }
    }

    pub fn is_iso(&self) -> bool {
        self.verdict == IsoVerdict::ProvenIso
    }

    pub fn is_non_iso(&self) -> bool {
        self.verdict == IsoVerdict::ProvenNonIso
    }

    /// Re-checks the certificate carried by a positive verdict.
    pub fn reverify(&self) -> bool {
        match (&self.verdict, &self.witness) {
            (IsoVerdict::ProvenIso, Some(w)) => w.is_well_defined() && w.is_isomorphism(),
            (IsoVerdict::ProvenIso, None) => false,
            _ => true,
        }
    }
}

fn sorted(v: &[i32]) -> Vec<i32> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// Constant part of a homomorphism between minimal presentations: entry
/// `(i, j)` is the constant coefficient of `e_i` in the image of `f_j`.
fn constant_matrix(h: &Homomorphism, field: Field) -> Vec<Vec<Scalar>> {
    let g = h.target.ngens();
    let mut rows = vec![vec![field.zero(); h.source.ngens()]; g];
    for (j, col) in h.map.cols.iter().enumerate() {
        for t in col.terms() {
            if t.mon.is_one() {
                rows[t.comp][j] = t.coef.clone();
            }
        }
    }
    rows
}

pub fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rationals => field.from_i64(rng.gen_range(-20..=20)),
    }
}

fn combine(basis: &[Homomorphism], coefs: &[Scalar], ring: &PolyRing) -> Homomorphism {
    let ord = ring.order();
    let first = &basis[0];
    let mut cols = vec![crate::vector::Vector::zero(); first.source.ngens()];
    for (h, c) in basis.iter().zip(coefs) {
        for (j, col) in h.map.cols.iter().enumerate() {
            cols[j] = cols[j].add(&col.scale(c), ord);
        }
    }
    let map = ModuleMap::new(first.source.gens().to_vec(), first.target.gens().to_vec(), cols);
    Homomorphism { source: first.source.clone(), target: first.target.clone(), map }
}

/// Three-valued isomorphism test; the witness maps between the minimal
/// presentations of `m` and `n`.
pub fn iso_test(m: &FPModule, n: &FPModule, trials: usize, rng: &mut ChaCha8Rng) -> Result<IsoEvidence> {
    m.check_ring(n)?;
    if m.hilbert_series() != n.hilbert_series() {
        return Ok(IsoEvidence::non_iso("hilbert series"));
    }
    let a = m.minimize();
    let b = n.minimize();
    if sorted(a.gens()) != sorted(b.gens()) {
        return Ok(IsoEvidence::non_iso("minimal generator degrees"));
    }
    if sorted(&a.rel_degrees()) != sorted(&b.rel_degrees()) {
        return Ok(IsoEvidence::non_iso("minimal relation degrees"));
    }
    if a.ngens() == 0 {
        return Ok(IsoEvidence::iso(Homomorphism::zero(&a, &b), 0));
    }
    if a.gens() == b.gens() && a.rels() == b.rels() {
        let mut id = Homomorphism::identity(&a);
        id.target = b.clone();
        return Ok(IsoEvidence::iso(id, 0));
    }
    let field = m.ring().field();
    let h = hom(&a, &b)?;
    let basis = h.degree_zero_basis();
    if basis.is_empty() {
        return Ok(IsoEvidence::non_iso("no degree-0 homomorphisms"));
    }
    let mats: Vec<Vec<Vec<Scalar>>> = basis.iter().map(|b| constant_matrix(b, field)).collect();
    // Every image of a generator lies in the span of all constant columns.
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    for mat in &mats {
        for j in 0..a.ngens() {
            span.push((0..b.ngens()).map(|i| mat[i][j].clone()).collect());
        }
    }
    if rank(&span) < b.ngens() {
        return Ok(IsoEvidence::non_iso("degree-0 homomorphisms miss a generator"));
    }
    for t in 1..=trials {
        let coefs: Vec<Scalar> = basis.iter().map(|_| random_scalar(field, rng)).collect();
        let mut total = vec![vec![field.zero(); a.ngens()]; b.ngens()];
        for (mat, c) in mats.iter().zip(&coefs) {
            for (i, row) in mat.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        total[i][j] = total[i][j].add(&x.mul(c));
                    }
                }
            }
        }
        if rank(&total) == b.ngens() {
            let w = combine(&basis, &coefs, m.ring().poly_ring());
            debug_assert!(w.is_surjective());
            return Ok(IsoEvidence::iso(w, t));
        }
    }
    Ok(IsoEvidence { verdict: IsoVerdict::Inconclusive, witness: None, mismatch: None, trials })
}

/// Tests `m ≅ n(a)` for the shift `a` aligning the lowest generator degrees.
pub fn iso_up_to_twist(
    m: &FPModule,
    n: &FPModule,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(i32, IsoEvidence)> {
    let (Some(dm), Some(dn)) = (m.hilbert_series().initial_degree(), n.hilbert_series().initial_degree())
    else {
        return Ok((0, iso_test(m, n, trials, rng)?));
    };
    let lo = |x: &FPModule| x.minimize().gens().iter().copied().min().unwrap_or(0) as i64;
    let a = if m.is_zero() || n.is_zero() { dn - dm } else { lo(n) - lo(m) };
    Ok((a as i32, iso_test(m, &n.twist(a as i32), trials, rng)?))
}
