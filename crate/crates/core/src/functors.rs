//! Hom, tensor products, Ext and Tor of finitely presented modules, and
//! homomorphisms between them.
//!
//! For free modules `F = ⊕ R(-f_j)` and `G = ⊕ R(-g_i)` the module
//! `Hom(F, G)` is laid out with component `j·rank(G) + i` holding the
//! coefficient of `e_i` in the image of `f_j`; `F ⊗ G` uses the same indexing.

use crate::error::Result;
use crate::groebner::{buchberger, kernel_generators};
use crate::module::{subquotient, FPModule, SubQuotient};
use crate::poly::MonomialOrder;
use crate::ring::QRing;
use crate::vector::{ModuleMap, Term, Vector};

/// A degree-0 homomorphism given by the images of the generators of the
/// source in the generator free module of the target.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub source: FPModule,
    pub target: FPModule,
    pub map: ModuleMap,
}

impl Homomorphism {
    pub fn identity(m: &FPModule) -> Homomorphism {
        let map = ModuleMap::identity(m.gens(), m.ring().poly_ring());
        Homomorphism { source: m.clone(), target: m.clone(), map }
    }

    pub fn zero(source: &FPModule, target: &FPModule) -> Homomorphism {
        let map = ModuleMap::zero(source.gens().to_vec(), target.gens().to_vec());
        Homomorphism { source: source.clone(), target: target.clone(), map }
    }

    fn order(&self) -> MonomialOrder {
        self.source.ring().poly_ring().order()
    }

    /// Image of an element of the source (a vector of its `F0`).
    pub fn apply(&self, v: &Vector) -> Vector {
        self.target.normal_form(&self.map.apply(v, self.order()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Homomorphism) -> Homomorphism {
        let map = self.map.compose(&other.map, self.order());
        Homomorphism { source: other.source.clone(), target: self.target.clone(), map }
    }

    /// Relations of the source go to zero.
    pub fn is_well_defined(&self) -> bool {
        let ord = self.order();
        self.source.rels().iter().all(|r| self.target.is_zero_element(&self.map.apply(r, ord)))
            && self.source.ring().ideal_gb().iter().all(|g| {
                (0..self.source.ngens()).all(|j| {
                    let v = Vector::from_poly(g, j);
                    self.target.is_zero_element(&self.map.apply(&v, ord))
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.map.cols.iter().all(|c| self.target.is_zero_element(c))
    }

    /// `target / image`.
    pub fn cokernel(&self) -> FPModule {
        let mut rels = self.target.rels().to_vec();
        rels.extend(self.map.cols.iter().filter(|c| !c.is_zero()).cloned());
        FPModule::new(self.target.ring().clone(), self.target.gens().to_vec(), rels)
            .expect("images of generators are homogeneous")
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }

    /// The image, as a submodule of the target.
    pub fn image(&self) -> SubQuotient {
        subquotient(self.target.ring(), self.target.gens(), &self.map.cols, self.target.rels())
    }

    /// Bijective: surjective with equal Hilbert series.
    pub fn is_isomorphism(&self) -> bool {
        self.source.hilbert_series() == self.target.hilbert_series() && self.is_surjective()
    }
}

/// Twists of `Hom(F, G)`.
pub fn hom_twists(f: &[i32], g: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(f.len() * g.len());
    for &fj in f {
        for &gi in g {
            out.push(gi - fj);
        }
    }
    out
}

/// Twists of `F ⊗ G`.
pub fn tensor_twists(f: &[i32], g: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(f.len() * g.len());
    for &fj in f {
        for &gi in g {
            out.push(gi + fj);
        }
    }
    out
}

/// Copies of the vectors `rels ⊆ G` in each of `blocks` blocks of width `g`.
pub fn block_relations(blocks: usize, rels: &[Vector], g: usize) -> Vec<Vector> {
    let mut out = Vec::with_capacity(blocks * rels.len());
    for j in 0..blocks {
        for r in rels {
            out.push(r.map_comps_monotone(|c| j * g + c));
        }
    }
    out
}

/// Columns of `Hom(d, G): Hom(F, G) -> Hom(F', G)` for `d: F' -> F`, `rank G = g`.
pub fn hom_induced(d: &ModuleMap, g: usize, ord: MonomialOrder) -> Vec<Vector> {
    let mut cols: Vec<Vec<Term>> = vec![Vec::new(); d.target.len() * g];
    for (a, col) in d.cols.iter().enumerate() {
        for t in col.terms() {
            for i in 0..g {
                cols[t.comp * g + i].push(Term { comp: a * g + i, mon: t.mon.clone(), coef: t.coef.clone() });
            }
        }
    }
    cols.into_iter().map(|ts| Vector::from_terms(ord, ts)).collect()
}

/// Columns of `d ⊗ G: F' ⊗ G -> F ⊗ G` for `d: F' -> F`, `rank G = g`.
pub fn tensor_induced(d: &ModuleMap, g: usize) -> Vec<Vector> {
    let mut cols = Vec::with_capacity(d.cols.len() * g);
    for col in &d.cols {
        for i in 0..g {
            cols.push(col.map_comps_monotone(|c| c * g + i));
        }
    }
    cols
}

/// `Hom(M, N)` with its generators recorded inside `Hom(F0, G0)`.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FPModule,
    /// Generators as vectors of `Hom(F0, G0)`.
    pub embedding: Vec<Vector>,
    /// Minimal presentation of the source.
    pub source: FPModule,
    /// Minimal presentation of the target.
    pub target: FPModule,
}

impl HomModule {
    pub fn h0_twists(&self) -> Vec<i32> {
        hom_twists(self.source.gens(), self.target.gens())
    }

    /// Relations of `Hom(F0, N)` inside `Hom(F0, G0)`.
    pub fn h0_relations(&self) -> Vec<Vector> {
        block_relations(self.source.ngens(), self.target.rels(), self.target.ngens())
    }

    /// Decodes a vector of `Hom(F0, G0)`.
    pub fn decode(&self, v: &Vector) -> Homomorphism {
        let g = self.target.ngens();
        let cols = (0..self.source.ngens()).map(|j| v.restrict(j * g..(j + 1) * g)).collect();
        let map = ModuleMap::new(self.source.gens().to_vec(), self.target.gens().to_vec(), cols);
        Homomorphism { source: self.source.clone(), target: self.target.clone(), map }
    }

    /// Encodes a homomorphism between the minimal presentations.
    pub fn encode(&self, h: &Homomorphism) -> Vector {
        let g = self.target.ngens();
        let ord = self.source.ring().poly_ring().order();
        let mut out = Vector::zero();
        for (j, c) in h.map.cols.iter().enumerate() {
            out = out.add(&c.map_comps_monotone(|i| j * g + i), ord);
        }
        out
    }

    /// The homomorphism represented by an element of the Hom module.
    pub fn element(&self, v: &Vector) -> Homomorphism {
        let ord = self.source.ring().poly_ring().order();
        let mut acc = Vector::zero();
        for (k, p) in v.entries() {
            acc = acc.add(&self.embedding[k].mul_poly(&p, ord), ord);
        }
        self.decode(&acc)
    }

    pub fn generator(&self, k: usize) -> Homomorphism {
        self.decode(&self.embedding[k])
    }

    /// True if `elements` (vectors of `Hom(F0, G0)`) generate the Hom module.
    pub fn generated_by(&self, elements: &[Vector]) -> bool {
        let ring = self.source.ring();
        let twists = self.h0_twists();
        let seed = ring.ideal_vectors(twists.len(), 0);
        let mut inputs: Vec<(Vector, bool)> = self.h0_relations().into_iter().map(|v| (v, true)).collect();
        inputs.extend(elements.iter().filter(|v| !v.is_zero()).map(|v| (v.clone(), false)));
        let gb = buchberger(ring.poly_ring(), &twists, &seed, &inputs, None).gb;
        self.embedding.iter().all(|v| gb.contains(v))
    }

    /// The homomorphisms spanning the degree-0 part.
    pub fn degree_zero_basis(&self) -> Vec<Homomorphism> {
        self.module.basis_in_degree(0).iter().map(|v| self.element(v)).collect()
    }
}

/// Cohomology at `F_i` of `Hom(F_•, N)` for `d_in: F_i -> F_{i-1}` and
/// `d_out: F_{i+1} -> F_i`; `n` must be minimally presented.
pub fn hom_cohomology(
    ring: &QRing,
    fi: &[i32],
    d_in: Option<&ModuleMap>,
    d_out: Option<&ModuleMap>,
    n: &FPModule,
) -> SubQuotient {
    let pr = ring.poly_ring();
    let ord = pr.order();
    let g = n.ngens();
    let twists = hom_twists(fi, n.gens());
    if twists.is_empty() {
        return SubQuotient { module: FPModule::zero(ring.clone()), embedding: Vec::new() };
    }
    let cycles: Vec<Vector> = match d_out {
        Some(d) if !d.cols.is_empty() => {
            let target = hom_twists(&d.source, n.gens());
            let map = ModuleMap::new(twists.clone(), target.clone(), hom_induced(d, g, ord));
            let seed = ring.ideal_vectors(target.len(), 0);
            let rels = block_relations(d.source.len(), n.rels(), g);
            kernel_generators(pr, &map, &seed, &rels)
        }
        _ => (0..twists.len()).map(|k| Vector::unit(k, pr)).collect(),
    };
    let mut rels = block_relations(fi.len(), n.rels(), g);
    if let Some(d) = d_in {
        rels.extend(hom_induced(d, g, ord).into_iter().filter(|v| !v.is_zero()));
    }
    subquotient(ring, &twists, &cycles, &rels)
}

/// Homology at `F_i` of `F_• ⊗ N`; `n` must be minimally presented.
pub fn tensor_homology(
    ring: &QRing,
    fi: &[i32],
    d_in: Option<&ModuleMap>,
    d_out: Option<&ModuleMap>,
    n: &FPModule,
) -> SubQuotient {
    let pr = ring.poly_ring();
    let g = n.ngens();
    let twists = tensor_twists(fi, n.gens());
    if twists.is_empty() {
        return SubQuotient { module: FPModule::zero(ring.clone()), embedding: Vec::new() };
    }
    let cycles: Vec<Vector> = match d_in {
        Some(d) if !d.target.is_empty() => {
            let target = tensor_twists(&d.target, n.gens());
            let map = ModuleMap::new(twists.clone(), target.clone(), tensor_induced(d, g));
            let seed = ring.ideal_vectors(target.len(), 0);
            let rels = block_relations(d.target.len(), n.rels(), g);
            kernel_generators(pr, &map, &seed, &rels)
        }
        _ => (0..twists.len()).map(|k| Vector::unit(k, pr)).collect(),
    };
    let mut rels = block_relations(fi.len(), n.rels(), g);
    if let Some(d) = d_out {
        rels.extend(tensor_induced(d, g).into_iter().filter(|v| !v.is_zero()));
    }
    subquotient(ring, &twists, &cycles, &rels)
}

pub fn hom(m: &FPModule, n: &FPModule) -> Result<HomModule> {
    m.check_ring(n)?;
    let source = m.minimize();
    let target = n.minimize();
    let p = source.presentation();
    let sq = hom_cohomology(m.ring(), source.gens(), None, Some(&p), &target);
    Ok(HomModule { module: sq.module, embedding: sq.embedding, source, target })
}

/// `Hom(M, R)`.
pub fn dual(m: &FPModule) -> FPModule {
    let r = FPModule::free(m.ring().clone(), vec![0]);
    hom(m, &r).expect("same ring").module
}

/// `M ⊗ N`, minimally presented, with generator `j·μ(N) + i` equal to
/// `f_j ⊗ g_i` for the minimal generators.
pub fn tensor(m: &FPModule, n: &FPModule) -> Result<FPModule> {
    Ok(tensor_unminimized(m, n)?.minimize())
}

/// `M ⊗ N` presented on the products of minimal generators.
pub fn tensor_unminimized(m: &FPModule, n: &FPModule) -> Result<FPModule> {
    m.check_ring(n)?;
    let a = m.minimize();
    let b = n.minimize();
    let g = b.ngens();
    let twists = tensor_twists(a.gens(), b.gens());
    let mut rels = tensor_induced(&a.presentation(), g);
    rels.extend(block_relations(a.ngens(), b.rels(), g));
    FPModule::new(m.ring().clone(), twists, rels)
}

/// `Ext^i(M, N)` with its generators inside `Hom(F_i, G0)`.
pub fn ext_subquotient(i: usize, m: &FPModule, n: &FPModule) -> Result<SubQuotient> {
    m.check_ring(n)?;
    let res = m.resolution(i + 1);
    let target = n.minimize();
    Ok(hom_cohomology(m.ring(), res.free_module(i), res.differential(i), res.differential(i + 1), &target))
}

pub fn ext(i: usize, m: &FPModule, n: &FPModule) -> Result<FPModule> {
    Ok(ext_subquotient(i, m, n)?.module)
}

pub fn tor(i: usize, m: &FPModule, n: &FPModule) -> Result<FPModule> {
    m.check_ring(n)?;
    let res = m.resolution(i + 1);
    let target = n.minimize();
    Ok(tensor_homology(m.ring(), res.free_module(i), res.differential(i), res.differential(i + 1), &target).module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::{parse_poly, PolyRing};
    use crate::ring::QuotientRing;

    fn ring(names: &[&str], rels: &[&str]) -> QRing {
        let s = PolyRing::standard(Field::Rationals, names);
        let rels = rels.iter().map(|g| parse_poly(g, &s).unwrap()).collect();
        QuotientRing::new("R", s, rels).unwrap()
    }

    fn cyclic(r: &QRing, gens: &[&str]) -> FPModule {
        let g: Vec<_> = gens.iter().map(|g| parse_poly(g, r.ambient()).unwrap()).collect();
        FPModule::cyclic(r.clone(), &g).unwrap()
    }

    #[test]
    fn hom_from_free() {
        let r = ring(&["x"], &["x^3"]);
        let m = cyclic(&r, &["x^2"]);
        let rr = FPModule::free(r.clone(), vec![0]);
        let h = hom(&rr, &m).unwrap();
        assert_eq!(h.module.hilbert_series(), m.hilbert_series());
        let kk = FPModule::residue_field(r);
        let h = hom(&kk, &kk).unwrap();
        assert_eq!(h.module.hilbert_series(), kk.hilbert_series());
    }

    #[test]
    fn koszul_duality() {
        let r = ring(&["x", "y"], &[]);
        let k = FPModule::residue_field(r.clone());
        let s = FPModule::free(r, vec![0]);
        assert!(ext(0, &k, &s).unwrap().is_zero());
        assert!(ext(1, &k, &s).unwrap().is_zero());
        let e2 = ext(2, &k, &s).unwrap();
        assert_eq!(e2.gens(), &[-2]);
        assert_eq!(e2.hilbert_series().hf_range(-3, 0), vec![0, 1, 0, 0]);
    }

    #[test]
    fn tor_over_truncated_ring() {
        let r = ring(&["x"], &["x^3"]);
        let k = FPModule::residue_field(r.clone());
        let t1 = tor(1, &k, &k).unwrap();
        assert_eq!(t1.hilbert_series().length(), Some(1));
        assert_eq!(t1.gens(), &[1]);
        let t2 = tor(2, &k, &k).unwrap();
        assert_eq!(t2.gens(), &[3]);
        let a = cyclic(&r, &["x^2"]);
        let b = cyclic(&r, &["x"]);
        assert_eq!(tensor(&a, &b).unwrap().hilbert_series().length(), Some(1));
    }

    #[test]
    fn homomorphism_decoding() {
        let r = ring(&["x"], &["x^3"]);
        let m = cyclic(&r, &["x^2"]);
        let k = FPModule::residue_field(r.clone());
        // Hom(k, R/(x^2)) is spanned by 1 ↦ x.
        let h = hom(&k, &m).unwrap();
        assert_eq!(h.module.gens(), &[1]);
        let phi = h.generator(0);
        assert!(phi.is_well_defined());
        assert!(!phi.is_zero());
        let x = parse_poly("x", r.ambient()).unwrap();
        assert_eq!(phi.map.cols[0].entry(0).terms().len(), 1);
        assert_eq!(phi.map.cols[0].entry(0).leading().unwrap().0, x.leading().unwrap().0);
    }
}
