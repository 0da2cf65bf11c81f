//! Finitely presented graded modules over `R = S/I`.
//!
//! A module is the cokernel of its relation vectors in `F0 = ⊕ R(-gens[i])`.
//! Relations are kept as vectors over the ambient ring `S`; the submodule
//! `I·F0` is always added implicitly.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, kernel_generators, mingens_seeded, ModuleGb};
use crate::hilbert::HilbertSeries;
use crate::poly::Poly;
use crate::resolution::Resolution;
use crate::ring::QRing;
use crate::vector::{ModuleMap, Term, Vector};

pub struct FPModule {
    ring: QRing,
    gens: Vec<i32>,
    rels: Vec<Vector>,
    minimal: bool,
    gb: OnceLock<ModuleGb>,
    hilbert: OnceLock<HilbertSeries>,
    min: OnceLock<Arc<Minimized>>,
    pub(crate) resolution: Mutex<Option<Arc<Resolution>>>,
}

/// A minimal presentation of a module together with the isomorphism to the
/// original: `forward[i]` is the image of old generator `i` in the new `F0`,
/// `backward[k]` the image of new generator `k` in the old `F0`.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub module: FPModule,
    pub forward: Vec<Vector>,
    pub backward: Vec<Vector>,
}

/// A module given by generators inside a free module modulo relations, with
/// the generators kept as `embedding` vectors of that free module.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub module: FPModule,
    pub embedding: Vec<Vector>,
}

impl Clone for FPModule {
    fn clone(&self) -> FPModule {
        FPModule {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            rels: self.rels.clone(),
            minimal: self.minimal,
            gb: self.gb.clone(),
            hilbert: self.hilbert.clone(),
            min: self.min.clone(),
            resolution: Mutex::new(self.resolution.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FPModule").field("gens", &self.gens).field("rels", &self.rels).finish()
    }
}

impl FPModule {
    fn raw(ring: QRing, gens: Vec<i32>, rels: Vec<Vector>, minimal: bool) -> FPModule {
        let rels = rels.into_iter().filter(|r| !r.is_zero()).collect();
        FPModule {
            ring,
            gens,
            rels,
            minimal,
            gb: OnceLock::new(),
            hilbert: OnceLock::new(),
            min: OnceLock::new(),
            resolution: Mutex::new(None),
        }
    }

    /// Cokernel of the relations in `⊕ R(-gens[i])`.
    pub fn new(ring: QRing, gens: Vec<i32>, rels: Vec<Vector>) -> Result<FPModule> {
        for r in &rels {
            if r.max_comp().is_some_and(|c| c >= gens.len()) {
                return Err(Error::AmbientMismatch);
            }
            if !r.is_homogeneous(&gens) {
                return Err(Error::NotHomogeneous(r.display(ring.poly_ring(), &[]).to_string()));
            }
        }
        Ok(FPModule::raw(ring, gens, rels, false))
    }

    /// Trusted constructor for presentations known to be minimal.
    pub(crate) fn new_minimal(ring: QRing, gens: Vec<i32>, rels: Vec<Vector>) -> FPModule {
        FPModule::raw(ring, gens, rels, true)
    }

    pub fn free(ring: QRing, twists: Vec<i32>) -> FPModule {
        FPModule::raw(ring, twists, Vec::new(), true)
    }

    pub fn zero(ring: QRing) -> FPModule {
        FPModule::free(ring, Vec::new())
    }

    /// `R / J` generated in degree 0.
    pub fn cyclic(ring: QRing, ideal: &[Poly]) -> Result<FPModule> {
        let rels = ideal.iter().map(|p| Vector::from_poly(p, 0)).collect();
        FPModule::new(ring, vec![0], rels)
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: QRing) -> FPModule {
        let vars: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var(ring.poly_ring(), i)).collect();
        FPModule::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    /// The homogeneous maximal ideal `m` as a module.
    pub fn maximal_ideal(ring: QRing) -> FPModule {
        let gens: Vec<Vector> =
            (0..ring.nvars()).map(|i| Vector::from_poly(&Poly::var(ring.poly_ring(), i), 0)).collect();
        subquotient(&ring, &[0], &gens, &[]).module
    }

    pub fn ring(&self) -> &QRing {
        &self.ring
    }

    /// Generator degrees.
    pub fn gens(&self) -> &[i32] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn rels(&self) -> &[Vector] {
        &self.rels
    }

    pub fn rel_degrees(&self) -> Vec<i32> {
        self.rels.iter().map(|r| r.degree(&self.gens).unwrap() as i32).collect()
    }

    /// The presentation map `F1 -> F0` (relations of `I` not included).
    pub fn presentation(&self) -> ModuleMap {
        ModuleMap::new(self.rel_degrees(), self.gens.clone(), self.rels.clone())
    }

    pub fn is_minimally_presented(&self) -> bool {
        self.minimal
    }

    /// Gröbner basis of `rels + I·F0`.
    pub fn gb(&self) -> &ModuleGb {
        self.gb.get_or_init(|| {
            let seed = self.ring.ideal_vectors(self.gens.len(), 0);
            let inputs: Vec<(Vector, bool)> = self.rels.iter().map(|r| (r.clone(), false)).collect();
            buchberger(self.ring.poly_ring(), &self.gens, &seed, &inputs, None).gb
        })
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        self.hilbert.get_or_init(|| HilbertSeries::of_quotient(self.gb(), self.ring.weights()))
    }

    pub fn is_zero(&self) -> bool {
        self.hilbert_series().is_zero()
    }

    pub fn dim(&self) -> i64 {
        self.hilbert_series().dimension()
    }

    /// Canonical representative of an element of `F0` in the module.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        self.gb().reduce(v)
    }

    /// True if `v ∈ F0` is zero in the module.
    pub fn is_zero_element(&self, v: &Vector) -> bool {
        self.gb().contains(v)
    }

    /// The minimal presentation together with the identifying maps.
    pub fn minimal(&self) -> &Minimized {
        self.min.get_or_init(|| Arc::new(self.compute_minimal()))
    }

    /// Minimal presentation of this module.
    pub fn minimize(&self) -> FPModule {
        if self.minimal {
            return self.clone();
        }
        self.minimal().module.clone()
    }

    fn compute_minimal(&self) -> Minimized {
        let ring = self.ring.poly_ring();
        let ord = ring.order();
        let n = self.gens.len();
        if self.minimal {
            let id: Vec<Vector> = (0..n).map(|i| Vector::unit(i, ring)).collect();
            return Minimized { module: self.clone(), forward: id.clone(), backward: id };
        }
        let mut rels: Vec<Vector> =
            self.rels.iter().map(|r| self.ring.reduce_vector(r)).filter(|r| !r.is_zero()).collect();
        let mut forward: Vec<Vector> = (0..n).map(|i| Vector::unit(i, ring)).collect();
        let mut alive = vec![true; n];
        loop {
            let mut pivot: Option<(usize, usize, usize)> = None;
            for (k, r) in rels.iter().enumerate() {
                for t in r.terms() {
                    if t.mon.is_one() {
                        let cand = (r.terms().len(), k, t.comp);
                        if pivot.is_none_or(|p| cand.0 < p.0) {
                            pivot = Some(cand);
                        }
                    }
                }
            }
            let Some((_, k, j)) = pivot else { break };
            let r = rels.swap_remove(k);
            let c = r.entry(j).constant_term().cloned().expect("unit pivot");
            let cinv = c.inv();
            let eliminate = |v: &Vector| -> Vector {
                let vj = v.entry(j);
                if vj.is_zero() {
                    v.clone()
                } else {
                    v.sub(&r.mul_poly(&vj.scale(&cinv), ord), ord)
                }
            };
            rels = rels.iter().map(|v| self.ring.reduce_vector(&eliminate(v))).filter(|v| !v.is_zero()).collect();
            forward = forward.iter().map(|v| self.ring.reduce_vector(&eliminate(v))).collect();
            alive[j] = false;
        }
        let mut index = vec![usize::MAX; n];
        let mut twists = Vec::new();
        let mut backward = Vec::new();
        for i in 0..n {
            if alive[i] {
                index[i] = twists.len();
                twists.push(self.gens[i]);
                backward.push(Vector::unit(i, ring));
            }
        }
        let renumber = |v: &Vector| v.map_comps_monotone(|c| index[c]);
        let rels: Vec<Vector> = rels.iter().map(renumber).collect();
        let forward = forward.iter().map(renumber).collect();
        let seed = self.ring.ideal_vectors(twists.len(), 0);
        let keep = mingens_seeded(ring, &twists, &rels, &[], &seed);
        let rels = keep.into_iter().map(|k| rels[k].clone()).collect();
        Minimized { module: FPModule::new_minimal(self.ring.clone(), twists, rels), forward, backward }
    }

    /// `M(a)`: generator degrees drop by `a`.
    pub fn twist(&self, a: i32) -> FPModule {
        let gens = self.gens.iter().map(|g| g - a).collect();
        FPModule::raw(self.ring.clone(), gens, self.rels.clone(), self.minimal)
    }

    pub fn direct_sum(&self, other: &FPModule) -> FPModule {
        let off = self.gens.len();
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let mut rels = self.rels.clone();
        rels.extend(other.rels.iter().map(|r| r.map_comps_monotone(|c| c + off)));
        FPModule::raw(self.ring.clone(), gens, rels, self.minimal && other.minimal)
    }

    /// The same presentation read over another ring with the same ambient.
    pub fn change_ring(&self, ring: QRing) -> Result<FPModule> {
        if *ring.ambient() != *self.ring.ambient() {
            return Err(Error::RingMismatch);
        }
        Ok(FPModule::raw(ring, self.gens.clone(), self.rels.clone(), false))
    }

    /// The same module viewed over the ambient polynomial ring, with the
    /// relations `I·F0` made explicit.
    pub fn over_ambient(&self) -> FPModule {
        let s = self.ring.ambient_ring();
        let mut rels = self.rels.clone();
        rels.extend(self.ring.ideal_vectors(self.gens.len(), 0));
        FPModule::raw(s, self.gens.clone(), rels, false)
    }

    /// Standard monomial basis of the degree-`d` part, as vectors of `F0`.
    pub fn basis_in_degree(&self, d: i64) -> Vec<Vector> {
        let gb = self.gb();
        let ring = self.ring.poly_ring();
        let one = ring.field().one();
        let mut out = Vec::new();
        for (c, &t) in self.gens.iter().enumerate() {
            for m in ring.monomials_of_degree(d - t as i64) {
                let reducible = gb.leads().iter().any(|(k, l)| *k == c && l.divides(&m));
                if !reducible {
                    out.push(Vector::from_sorted(vec![Term { comp: c, mon: m, coef: one.clone() }]));
                }
            }
        }
        out
    }

    /// Checks that `ring` matches; used by binary operations.
    pub fn check_ring(&self, other: &FPModule) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn resolution(&self, length: usize) -> Arc<Resolution> {
        Resolution::of(self, length)
    }

    pub fn display(&self) -> String {
        let ring = self.ring.poly_ring();
        let names: Vec<String> = (0..self.gens.len()).map(|i| format!("g{i}")).collect();
        let gens: Vec<String> = self.gens.iter().enumerate().map(|(i, d)| format!("g{i}:{d}")).collect();
        let rels: Vec<String> = self.rels.iter().map(|r| format!("\"{}\"", r.display(ring, &names))).collect();
        format!("generators = [{}]; relations = [{}]", gens.join(", "), rels.join(", "))
    }
}

/// The submodule generated by `gens` in `F / (rels + I·F)`, minimally
/// presented.
pub fn subquotient(ring: &QRing, twists: &[i32], gens: &[Vector], rels: &[Vector]) -> SubQuotient {
    let pr = ring.poly_ring();
    let seed = ring.ideal_vectors(twists.len(), 0);
    let keep = mingens_seeded(pr, twists, gens, rels, &seed);
    let kept: Vec<Vector> = keep.iter().map(|&k| gens[k].clone()).collect();
    let degs: Vec<i32> = kept.iter().map(|v| v.degree(twists).unwrap() as i32).collect();
    if kept.is_empty() {
        return SubQuotient { module: FPModule::zero(ring.clone()), embedding: Vec::new() };
    }
    let map = ModuleMap::new(degs.clone(), twists.to_vec(), kept.clone());
    let ker = kernel_generators(pr, &map, &seed, rels);
    let seed2 = ring.ideal_vectors(degs.len(), 0);
    let k2 = mingens_seeded(pr, &degs, &ker, &[], &seed2);
    let new_rels = k2.into_iter().map(|k| ring.reduce_vector(&ker[k])).collect();
    SubQuotient { module: FPModule::new_minimal(ring.clone(), degs, new_rels), embedding: kept }
}

/// The cokernel of `map` as a module: `target / (image + I·target)`.
pub fn cokernel(ring: &QRing, map: &ModuleMap) -> FPModule {
    FPModule::raw(ring.clone(), map.target.clone(), map.cols.clone(), false)
}
