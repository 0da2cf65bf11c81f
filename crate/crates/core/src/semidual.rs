//! Semidualizing modules, canonical modules, Auslander and Bass classes,
//! Bass numbers and quasi-Gorenstein ideals.
//!
//! Conditions quantified over all `i > 0` are checked for `1 ≤ i ≤ bound`
//! and the verdicts say so.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functors::{ext, hom, tensor_unminimized, tor, HomModule, Homomorphism};
use crate::groebner::kernel_generators;
use crate::hominv::{depth, ring_is_cm};
use crate::linkage::transpose_wrt;
use crate::module::FPModule;
use crate::poly::Poly;
use crate::ring::QRing;
use crate::vector::{ModuleMap, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certificate {
    CertifiedToBound { bound: usize },
    Refuted { index: usize, condition: String },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::CertifiedToBound { .. })
    }

    fn refuted(index: usize, condition: impl Into<String>) -> Certificate {
        Certificate::Refuted { index, condition: condition.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemidualizingReport {
    pub homothety_iso: bool,
    pub ext_vanishing_checked_to: usize,
    pub verdict: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassSide {
    Auslander,
    Bass,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassMembershipReport {
    pub side: ClassSide,
    pub natural_map_iso: bool,
    pub tor_vanishing_to: usize,
    pub ext_vanishing_to: usize,
    pub verdict: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiGorensteinReport {
    pub gdim_finite_evidence: Certificate,
    pub bass_numbers_r: Vec<usize>,
    pub bass_numbers_quotient: Vec<usize>,
    pub shift_match: bool,
    pub is_complete_intersection_shortcut: bool,
    pub verdict: Certificate,
}

/// `ω_R = Ext^c_S(R, S(-σ))`, `c = codim R`.
pub fn canonical_module(r: &QRing) -> Result<FPModule> {
    if !ring_is_cm(r) {
        return Err(Error::NotCohenMacaulay);
    }
    let rs = FPModule::free(r.clone(), vec![0]).over_ambient();
    let sigma = r.poly_ring().weight_sum();
    let target = FPModule::free(rs.ring().clone(), vec![sigma]);
    let w = ext(r.codim(), &rs, &target)?;
    Ok(w.change_ring(r.clone())?.minimize())
}

/// Cohen-Macaulay with a cyclic canonical module.
pub fn is_gorenstein(r: &QRing) -> bool {
    canonical_module(r).is_ok_and(|w| w.minimize().ngens() == 1)
}

/// The homothety `R -> Hom(C, C)` is bijective: the identity generates and
/// the Hilbert series agree.
pub fn homothety_is_iso(c: &FPModule) -> bool {
    let h = hom(c, c).expect("same ring");
    if h.module.hilbert_series() != c.ring().hilbert_series() {
        return false;
    }
    h.generated_by(&[h.encode(&Homomorphism::identity(&h.source))])
}

pub fn is_semidualizing(c: &FPModule, bound: usize) -> Result<SemidualizingReport> {
    if c.is_zero() {
        return Err(Error::ZeroModule);
    }
    let homothety_iso = homothety_is_iso(c);
    if !homothety_iso {
        return Ok(SemidualizingReport {
            homothety_iso,
            ext_vanishing_checked_to: 0,
            verdict: Certificate::refuted(0, "homothety R -> Hom(C, C) is not bijective"),
        });
    }
    for i in 1..=bound {
        if !ext(i, c, c)?.is_zero() {
            return Ok(SemidualizingReport {
                homothety_iso,
                ext_vanishing_checked_to: i - 1,
                verdict: Certificate::refuted(i, format!("Ext^{i}(C, C) != 0")),
            });
        }
    }
    Ok(SemidualizingReport {
        homothety_iso,
        ext_vanishing_checked_to: bound,
        verdict: Certificate::CertifiedToBound { bound },
    })
}

/// `C ⊗ Hom(C, M) -> M` is bijective.
pub fn evaluation_is_iso(c: &FPModule, m: &FPModule) -> Result<bool> {
    let h = hom(c, m)?;
    let t = tensor_unminimized(&h.source, &h.module)?;
    let g = h.module.ngens();
    let mut cols = vec![Vector::zero(); t.ngens()];
    for i in 0..g {
        let phi = h.generator(i);
        for (j, col) in phi.map.cols.iter().enumerate() {
            cols[j * g + i] = col.clone();
        }
    }
    let map = ModuleMap::new(t.gens().to_vec(), h.target.gens().to_vec(), cols);
    let ev = Homomorphism { source: t, target: h.target.clone(), map };
    Ok(ev.is_isomorphism())
}

/// `M -> Hom(C, M ⊗ C)`, `m ↦ (c ↦ m ⊗ c)`, is bijective.
pub fn coevaluation_is_iso(c: &FPModule, m: &FPModule) -> Result<bool> {
    let mm = m.minimize();
    let cc = c.minimize();
    let t = tensor_unminimized(&mm, &cc)?;
    let h: HomModule = hom(&cc, &t)?;
    if h.module.hilbert_series() != mm.hilbert_series() {
        return Ok(false);
    }
    let fwd = &t.minimal().forward;
    let g = cc.ngens();
    let images: Vec<Vector> = (0..mm.ngens())
        .map(|j| {
            let cols = (0..g).map(|i| fwd[j * g + i].clone()).collect();
            let map = ModuleMap::new(h.source.gens().to_vec(), h.target.gens().to_vec(), cols);
            h.encode(&Homomorphism { source: h.source.clone(), target: h.target.clone(), map })
        })
        .collect();
    Ok(h.generated_by(&images))
}

pub fn class_membership(side: ClassSide, c: &FPModule, m: &FPModule, bound: usize) -> Result<ClassMembershipReport> {
    m.check_ring(c)?;
    let natural_map_iso = match side {
        ClassSide::Auslander => coevaluation_is_iso(c, m)?,
        ClassSide::Bass => evaluation_is_iso(c, m)?,
    };
    let mut report = ClassMembershipReport {
        side,
        natural_map_iso,
        tor_vanishing_to: 0,
        ext_vanishing_to: 0,
        verdict: Certificate::CertifiedToBound { bound },
    };
    if !natural_map_iso {
        report.verdict = Certificate::refuted(0, "natural map is not bijective");
        return Ok(report);
    }
    // Auslander: Tor_i(M, C) and Ext^i(C, M ⊗ C); Bass: Tor_i(Hom(C, M), C) and Ext^i(C, M).
    let (tor_left, ext_right) = match side {
        ClassSide::Auslander => (m.clone(), tensor_unminimized(m, c)?),
        ClassSide::Bass => (hom(c, m)?.module, m.clone()),
    };
    for i in 1..=bound {
        if !tor(i, &tor_left, c)?.is_zero() {
            report.verdict = Certificate::refuted(i, format!("Tor_{i} does not vanish"));
            return Ok(report);
        }
        report.tor_vanishing_to = i;
    }
    for i in 1..=bound {
        if !ext(i, c, &ext_right)?.is_zero() {
            report.verdict = Certificate::refuted(i, format!("Ext^{i} does not vanish"));
            return Ok(report);
        }
        report.ext_vanishing_to = i;
    }
    Ok(report)
}

/// Totally `C`-reflexive to the bound: `Ext^i(M, C) = 0 = Ext^i(Tr_C M, C)`.
pub fn gc_dim_zero(c: &FPModule, m: &FPModule, bound: usize) -> Result<Certificate> {
    let tr = transpose_wrt(c, m)?;
    for i in 1..=bound {
        if !ext(i, m, c)?.is_zero() {
            return Ok(Certificate::refuted(i, format!("Ext^{i}(M, C) != 0")));
        }
        if !ext(i, &tr, c)?.is_zero() {
            return Ok(Certificate::refuted(i, format!("Ext^{i}(Tr_C M, C) != 0")));
        }
    }
    Ok(Certificate::CertifiedToBound { bound })
}

/// Finite Gorenstein injective dimension, through membership in the Bass
/// class of the canonical module.
pub fn gid_finite_proxy(m: &FPModule, omega: &FPModule, bound: usize) -> Result<ClassMembershipReport> {
    class_membership(ClassSide::Bass, omega, m, bound)
}

/// `μ^i(M) = dim_k Ext^i(k, M)` for `0 ≤ i ≤ bound`.
pub fn bass_numbers(m: &FPModule, bound: usize) -> Result<Vec<usize>> {
    let k = FPModule::residue_field(m.ring().clone());
    (0..=bound)
        .map(|i| {
            let e = ext(i, &k, m)?;
            Ok(e.hilbert_series().length().expect("Ext(k, -) has finite length") as usize)
        })
        .collect()
}

/// `f` is a nonzerodivisor on `A`: `HS(A/fA) = (1 - t^deg f)·HS(A)` and
/// every syzygy of `f` modulo the ideal of `A` lies in that ideal.
pub fn is_nonzerodivisor(a: &QRing, f: &Poly) -> bool {
    let Some(d) = f.degree() else { return false };
    let Ok(quot) = a.quotient("A/f", std::slice::from_ref(f)) else { return false };
    let shifted = a.hilbert_series().twist(-(d as i64));
    if *quot.hilbert_series() != a.hilbert_series().sub(&shifted) {
        return false;
    }
    let pr = a.poly_ring();
    let map = ModuleMap::new(vec![d as i32], vec![0], vec![Vector::from_poly(f, 0)]);
    let seed = a.ideal_vectors(1, 0);
    kernel_generators(pr, &map, &seed, &[]).iter().all(|v| a.reduce_vector(v).is_zero())
}

/// The generators of `ideal` form a homogeneous regular sequence on `R`.
pub fn is_regular_sequence(r: &QRing, ideal: &[Poly]) -> bool {
    let mut a = r.clone();
    for f in ideal {
        if !is_nonzerodivisor(&a, f) {
            return false;
        }
        a = a.quotient(r.name(), std::slice::from_ref(f)).expect("checked proper");
    }
    true
}

fn first_nonzero(v: &[usize]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

pub fn quasi_gorenstein_check(r: &QRing, ideal: &[Poly], bound: usize) -> Result<QuasiGorensteinReport> {
    let ideal: Vec<Poly> = ideal.iter().map(|f| r.reduce_poly(f)).filter(|f| !f.is_zero()).collect();
    let quot = r.quotient(&format!("{}_bar", r.name()), &ideal)?;
    if ideal.is_empty() || is_regular_sequence(r, &ideal) {
        return Ok(QuasiGorensteinReport {
            gdim_finite_evidence: Certificate::CertifiedToBound { bound },
            bass_numbers_r: Vec::new(),
            bass_numbers_quotient: Vec::new(),
            shift_match: true,
            is_complete_intersection_shortcut: true,
            verdict: Certificate::CertifiedToBound { bound },
        });
    }
    let rr = FPModule::free(r.clone(), vec![0]);
    let rbar = FPModule::free(quot.clone(), vec![0]);
    let bass_numbers_r = bass_numbers(&rr, bound)?;
    let bass_numbers_quotient = bass_numbers(&rbar, bound)?;
    // μ^{i + depth R}(R) = μ^{i + depth R/a}(R/a): compare from the depths on.
    let dr = depth(&rr)?;
    let dq = depth(&rbar)?;
    debug_assert!(first_nonzero(&bass_numbers_r).is_none_or(|i| i == dr));
    let tail_r = bass_numbers_r.get(dr..).unwrap_or(&[]);
    let tail_q = bass_numbers_quotient.get(dq..).unwrap_or(&[]);
    let n = tail_r.len().min(tail_q.len());
    let shift_match = tail_r[..n] == tail_q[..n];
    // G-dim R/a < ∞ iff its (depth R - depth R/a)-th syzygy is totally reflexive.
    let rbar_over_r = FPModule::cyclic(r.clone(), &ideal)?;
    let n_syz = dr.saturating_sub(dq);
    let syz = syzygy(&rbar_over_r, n_syz);
    let gdim_finite_evidence = gc_dim_zero(&rr, &syz, bound)?;
    let verdict = if !shift_match {
        let i = (0..n).find(|&i| tail_r[i] != tail_q[i]).unwrap();
        Certificate::refuted(i, "shifted Bass numbers differ")
    } else {
        gdim_finite_evidence.clone()
    };
    Ok(QuasiGorensteinReport {
        gdim_finite_evidence,
        bass_numbers_r,
        bass_numbers_quotient,
        shift_match,
        is_complete_intersection_shortcut: false,
        verdict,
    })
}

/// The `n`-th syzygy module in a minimal free resolution.
pub fn syzygy(m: &FPModule, n: usize) -> FPModule {
    if n == 0 {
        return m.minimize();
    }
    let res = m.resolution(n + 1);
    let fn_ = res.free_module(n).to_vec();
    let rels = res.differential(n + 1).map(|d| d.cols.clone()).unwrap_or_default();
    FPModule::new(m.ring().clone(), fn_, rels).expect("resolution maps are homogeneous").minimize()
}
