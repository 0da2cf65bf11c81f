//! Transposes, syzygies of transposes and the linkage operator
//! `λ_R(C, M) = Ω_C Tr_C Hom(C, M)` for a semidualizing module `C`.
//!
//! For a minimal presentation `P1 -f-> P0 -> M` the transpose `Tr_C M` is
//! the cokernel of `Hom(f, C): Hom(P0, C) -> Hom(P1, C)` and `λ_R(C, M)` is
//! the image of the same map built from `Hom(C, M)`.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functors::{block_relations, ext, hom, hom_induced, hom_twists, tor};
use crate::hilbert::HilbertSeries;
use crate::hominv::grade;
use crate::iso::{iso_test, iso_up_to_twist, IsoEvidence, IsoVerdict};
use crate::module::{subquotient, FPModule};
use crate::poly::Poly;
use crate::ring::QRing;
use crate::semidual::{canonical_module, class_membership, Certificate, ClassSide};
use crate::vector::{ModuleMap, Vector};

/// `Tr_C M = coker Hom(f, C)` for the minimal presentation `f` of `M`.
pub fn transpose_wrt(c: &FPModule, m: &FPModule) -> Result<FPModule> {
    m.check_ring(c)?;
    let mm = m.minimize();
    let cc = c.minimize();
    let f = mm.presentation();
    let g = cc.ngens();
    let twists = hom_twists(&f.source, cc.gens());
    let mut rels = block_relations(f.source.len(), cc.rels(), g);
    rels.extend(hom_induced(&f, g, m.ring().poly_ring().order()));
    Ok(FPModule::new(m.ring().clone(), twists, rels)?.minimize())
}

/// The Auslander transpose `Tr M`.
pub fn transpose(m: &FPModule) -> FPModule {
    transpose_wrt(&FPModule::free(m.ring().clone(), vec![0]), m).expect("same ring")
}

/// `Ω_C Tr_C X`: the image of `Hom(f, C)` inside `Hom(P1, C)` for the minimal
/// presentation `f` of `X`.
pub fn syzygy_of_transpose_wrt(c: &FPModule, x: &FPModule) -> Result<FPModule> {
    x.check_ring(c)?;
    let xx = x.minimize();
    let cc = c.minimize();
    let f = xx.presentation();
    let g = cc.ngens();
    let twists = hom_twists(&f.source, cc.gens());
    let gens: Vec<Vector> =
        hom_induced(&f, g, x.ring().poly_ring().order()).into_iter().filter(|v| !v.is_zero()).collect();
    let rels = block_relations(f.source.len(), cc.rels(), g);
    Ok(subquotient(x.ring(), &twists, &gens, &rels).module)
}

/// `λ_R(C, M) = Ω_C Tr_C Hom(C, M)`.
pub fn lambda_wrt(c: &FPModule, m: &FPModule) -> Result<FPModule> {
    let x = hom(c, m)?.module;
    syzygy_of_transpose_wrt(c, &x)
}

/// Classical `λM = Ω Tr M`.
pub fn lambda(m: &FPModule) -> FPModule {
    lambda_wrt(&FPModule::free(m.ring().clone(), vec![0]), m).expect("same ring")
}

/// `Ω Tr M` computed as the first syzygy in a minimal resolution of `Tr M`.
pub fn omega_transpose(m: &FPModule) -> FPModule {
    let tr = transpose(m);
    let res = tr.resolution(2);
    let f1 = res.free_module(1).to_vec();
    let rels = res.differential(2).map(|d| d.cols.clone()).unwrap_or_default();
    FPModule::new(m.ring().clone(), f1, rels).expect("resolution maps are homogeneous").minimize()
}

/// `M` has no direct summand isomorphic to `C`: no composite `C -> M -> C` of
/// generators of `Hom(C, M)` and `Hom(M, C)` is a unit of `Hom(C, C) ≅ R`.
pub fn is_c_stable(c: &FPModule, m: &FPModule) -> Result<bool> {
    let into = hom(c, m)?;
    let out = hom(m, c)?;
    for (a, &da) in out.module.gens().iter().enumerate() {
        for (b, &db) in into.module.gens().iter().enumerate() {
            if da + db != 0 {
                continue;
            }
            let alpha = out.generator(a);
            let beta = into.generator(b);
            if !alpha.compose(&beta).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The stable Hom `Hom̲(M, C) ≅ Tor_1(Tr M, C)` vanishes.
pub fn stable_hom_vanishes(m: &FPModule, c: &FPModule) -> Result<bool> {
    let tr = transpose(m);
    if tr.is_zero() {
        return Ok(true);
    }
    Ok(tor(1, &tr, c)?.is_zero())
}

/// `Ext^1(Tr_C M, C) = 0`, which makes `M` a `C`-syzygy.
pub fn is_c_syzygy(c: &FPModule, m: &FPModule) -> Result<bool> {
    let tr = transpose_wrt(c, m)?;
    Ok(tr.is_zero() || ext(1, &tr, c)?.is_zero())
}

/// `Ext^i_{P_C}(M, N) = Ext^i(Hom(C, M), Hom(C, N))`.
pub fn relative_ext(c: &FPModule, m: &FPModule, n: &FPModule, i: usize) -> Result<FPModule> {
    let mv = hom(c, m)?.module;
    let nv = hom(c, n)?.module;
    ext(i, &mv, &nv)
}

/// Hilbert series of the three terms of
/// `0 -> λ(C, M) -> Hom(P1, C) -> Tr_C(M^⋎) -> 0`.
#[derive(Clone, Debug, Serialize)]
pub struct SequenceTerms {
    pub lambda: HilbertSeries,
    pub middle: HilbertSeries,
    pub transpose: HilbertSeries,
}

impl SequenceTerms {
    pub fn balanced(&self) -> bool {
        self.lambda.add(&self.transpose) == self.middle
    }
}

pub fn linkage_sequence(c: &FPModule, m: &FPModule) -> Result<SequenceTerms> {
    let x = hom(c, m)?.module;
    let lam = syzygy_of_transpose_wrt(c, &x)?;
    let tr = transpose_wrt(c, &x)?;
    let ch = c.hilbert_series();
    let mut middle = HilbertSeries::zero(m.ring().weights());
    for &p in &x.rel_degrees() {
        middle = middle.add(&ch.twist(p as i64));
    }
    Ok(SequenceTerms {
        lambda: lam.hilbert_series().clone(),
        middle,
        transpose: tr.hilbert_series().clone(),
    })
}

/// `HS Ext^1(Tr_C M, C) - HS M + HS M^▽▽ - HS Ext^2(Tr_C M, C)`, zero by
/// exactness of `0 -> Ext^1 -> M -> M^▽▽ -> Ext^2 -> 0`, `(-)^▽ = Hom(-, C)`.
pub fn biduality_defect(c: &FPModule, m: &FPModule) -> Result<HilbertSeries> {
    let tr = transpose_wrt(c, m)?;
    let e1 = ext(1, &tr, c)?;
    let e2 = ext(2, &tr, c)?;
    let dd = hom(&hom(m, c)?.module, c)?.module;
    Ok(e1.hilbert_series().sub(m.hilbert_series()).add(dd.hilbert_series()).sub(e2.hilbert_series()))
}

#[derive(Clone, Copy, Debug)]
pub struct LinkageOptions {
    pub bound: usize,
    pub trials: usize,
    /// `C` is the canonical module, so finite injective dimension of `C` at
    /// primes of small depth holds automatically.
    pub c_is_canonical: bool,
    pub hypotheses: bool,
}

impl Default for LinkageOptions {
    fn default() -> Self {
        LinkageOptions { bound: 8, trials: 20, c_is_canonical: false, hypotheses: true }
    }
}

/// Sufficient conditions for `M` to be horizontally linked with respect to `C`.
#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    pub bass_class: Certificate,
    pub c_syzygy: bool,
    pub c_stable: bool,
    pub ext1_vanishes: bool,
    pub stable_hom_dual_vanishes: bool,
    /// `"structural"` when `C` is canonical, `"assumed"` otherwise.
    pub finite_injective_dimension_in_low_depth: &'static str,
}

impl Hypotheses {
    pub fn compute(c: &FPModule, m: &FPModule, opts: &LinkageOptions) -> Result<Hypotheses> {
        let mv = hom(c, m)?.module;
        Ok(Hypotheses {
            bass_class: class_membership(ClassSide::Bass, c, m, opts.bound)?.verdict,
            c_syzygy: is_c_syzygy(c, m)?,
            c_stable: is_c_stable(c, m)?,
            ext1_vanishes: m.is_zero() || ext(1, m, c)?.is_zero(),
            stable_hom_dual_vanishes: stable_hom_vanishes(&mv, c)?,
            finite_injective_dimension_in_low_depth: if opts.c_is_canonical { "structural" } else { "assumed" },
        })
    }

    /// Every hypothesis is certified and the low-depth condition holds for
    /// structural reasons.
    pub fn all_certified(&self) -> bool {
        self.bass_class.is_certified()
            && self.c_syzygy
            && self.c_stable
            && self.ext1_vanishes
            && self.stable_hom_dual_vanishes
            && self.finite_injective_dimension_in_low_depth == "structural"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LinkageVerdict {
    HorizontallyLinked,
    NotLinked { reason: String },
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct LinkageReport {
    pub operand: FPModule,
    pub wrt: FPModule,
    pub lambda: FPModule,
    pub lambda_squared: FPModule,
    pub iso: IsoEvidence,
    /// Set when `M ≅ λ²(M)(a)` for a nonzero shift `a` only.
    pub twist: Option<i32>,
    pub hypotheses: Option<Hypotheses>,
    pub verdict: LinkageVerdict,
}

impl LinkageReport {
    pub fn is_linked(&self) -> bool {
        self.verdict == LinkageVerdict::HorizontallyLinked
    }
}

pub fn horizontal_linkage_check(
    c: &FPModule,
    m: &FPModule,
    opts: &LinkageOptions,
    rng: &mut ChaCha8Rng,
) -> Result<LinkageReport> {
    m.check_ring(c)?;
    let lam = lambda_wrt(c, m)?;
    let lam2 = lambda_wrt(c, &lam)?;
    let hypotheses = if opts.hypotheses { Some(Hypotheses::compute(c, m, opts)?) } else { None };
    let iso = iso_test(m, &lam2, opts.trials, rng)?;
    let mut twist = None;
    let verdict = match iso.verdict {
        IsoVerdict::ProvenIso => LinkageVerdict::HorizontallyLinked,
        IsoVerdict::Inconclusive => LinkageVerdict::Inconclusive,
        IsoVerdict::ProvenNonIso => {
            let mut reason = format!("M and its double link differ: {}", iso.mismatch.as_deref().unwrap_or("?"));
            if hypotheses.as_ref().is_some_and(|h| !h.c_stable) {
                reason = "not C-stable".to_string();
            } else if iso.mismatch.as_deref() == Some("hilbert series") && !lam2.is_zero() && !m.is_zero() {
                let (a, ev) = iso_up_to_twist(m, &lam2, opts.trials, rng)?;
                if a != 0 && ev.is_iso() {
                    twist = Some(a);
                    reason = format!("isomorphic to the double link only after a shift by {a}");
                }
            }
            LinkageVerdict::NotLinked { reason }
        }
    };
    Ok(LinkageReport {
        operand: m.clone(),
        wrt: c.clone(),
        lambda: lam,
        lambda_squared: lam2,
        iso,
        twist,
        hypotheses,
        verdict,
    })
}

/// `M ≅ λ_R(C, M)`.
pub fn is_self_linked(c: &FPModule, m: &FPModule, trials: usize, rng: &mut ChaCha8Rng) -> Result<IsoEvidence> {
    let lam = lambda_wrt(c, m)?;
    iso_test(m, &lam, trials, rng)
}

#[derive(Clone, Debug)]
pub struct IdealLinkageReport {
    pub ideal: Vec<Poly>,
    pub quotient: QRing,
    pub wrt: FPModule,
    pub module: FPModule,
    pub annihilates: bool,
    pub report: LinkageReport,
    pub grade_module: Option<usize>,
    pub grade_ideal: Option<usize>,
}

/// Each generator of the ideal kills each generator of `M`.
pub fn annihilates(ideal: &[Poly], m: &FPModule) -> bool {
    ideal.iter().all(|f| (0..m.ngens()).all(|j| m.is_zero_element(&Vector::from_poly(f, j))))
}

/// `M` over `R̄ = R/a`, with a semidualizing `K` over `R̄` (the canonical
/// module of `R̄` when `k` is `None`).
pub fn ideal_linkage_check(
    ideal: &[Poly],
    k: Option<&FPModule>,
    m: &FPModule,
    opts: &LinkageOptions,
    rng: &mut ChaCha8Rng,
) -> Result<IdealLinkageReport> {
    let r = m.ring();
    if !annihilates(ideal, m) {
        return Err(Error::AnnihilationFailure(
            ideal.iter().map(|f| f.display(r.poly_ring()).to_string()).collect::<Vec<_>>().join(", "),
        ));
    }
    let quotient = r.quotient(&format!("{}_bar", r.name()), ideal)?;
    let mbar = m.change_ring(quotient.clone())?;
    let (wrt, canonical) = match k {
        Some(k) => (k.change_ring(quotient.clone())?, opts.c_is_canonical),
        None => (canonical_module(&quotient)?, true),
    };
    let local = LinkageOptions { c_is_canonical: canonical, ..*opts };
    let report = horizontal_linkage_check(&wrt, &mbar, &local, rng)?;
    let grade_module = grade(m);
    let grade_ideal = grade(&FPModule::cyclic(r.clone(), ideal)?);
    Ok(IdealLinkageReport {
        ideal: ideal.to_vec(),
        quotient,
        wrt,
        module: mbar,
        annihilates: true,
        report,
        grade_module,
        grade_ideal,
    })
}

/// `f^▽` written as a map, for callers that need the matrix itself.
pub fn dual_presentation(c: &FPModule, m: &FPModule) -> Result<ModuleMap> {
    m.check_ring(c)?;
    let mm = m.minimize();
    let cc = c.minimize();
    let f = mm.presentation();
    let g = cc.ngens();
    let cols = hom_induced(&f, g, m.ring().poly_ring().order());
    Ok(ModuleMap::new(hom_twists(&f.target, cc.gens()), hom_twists(&f.source, cc.gens()), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::{parse_poly, PolyRing};
    use crate::ring::QuotientRing;
    use rand::SeedableRng;

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
    fn transposes_over_truncated_ring() {
        let r = ring(&["x"], &["x^3"]);
        let k = FPModule::residue_field(r.clone());
        let tk = transpose(&k);
        assert_eq!(tk.gens(), &[-1]);
        assert_eq!(tk.hilbert_series().length(), Some(1));
        let m = cyclic(&r, &["x^2"]);
        assert_eq!(transpose(&m).hilbert_series().length(), Some(2));
        assert!(transpose(&FPModule::free(r, vec![0])).is_zero());
    }

    #[test]
    fn flagship_pair() {
        let r = ring(&["x"], &["x^3"]);
        let k = FPModule::residue_field(r.clone());
        let m = cyclic(&r, &["x^2"]);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let lk = lambda(&k);
        assert!(iso_test(&lk, &m, 10, &mut rng).unwrap().is_iso());
        assert!(iso_test(&lambda(&m), &k, 10, &mut rng).unwrap().is_iso());
        assert!(iso_test(&omega_transpose(&k), &lk, 10, &mut rng).unwrap().is_iso());
        let omega = canonical_module(&r).unwrap();
        assert_eq!(omega.gens(), &[-2]);
        let opts = LinkageOptions { c_is_canonical: true, bound: 4, ..Default::default() };
        let rep = horizontal_linkage_check(&omega, &k, &opts, &mut rng).unwrap();
        assert!(rep.is_linked());
        assert!(rep.hypotheses.as_ref().unwrap().all_certified());
        // ω = R(2) shifts the link by 4; the double link carries no shift.
        let (a, ev) = iso_up_to_twist(&rep.lambda, &m, 10, &mut rng).unwrap();
        assert!(ev.is_iso());
        assert_eq!(a, 4);
        let seq = linkage_sequence(&omega, &k).unwrap();
        assert!(seq.balanced());
        assert!(biduality_defect(&omega, &k).unwrap().is_zero());
    }

    #[test]
    fn free_modules_do_not_link() {
        let r = ring(&["x"], &["x^3"]);
        let rr = FPModule::free(r.clone(), vec![0]);
        assert!(lambda(&rr).is_zero());
        assert!(!is_c_stable(&rr, &rr).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = horizontal_linkage_check(&rr, &rr, &LinkageOptions { bound: 2, ..Default::default() }, &mut rng)
            .unwrap();
        assert_eq!(rep.verdict, LinkageVerdict::NotLinked { reason: "not C-stable".into() });
        let k = FPModule::residue_field(r);
        assert!(is_c_stable(&rr, &k).unwrap());
        assert!(!is_c_stable(&rr, &rr.direct_sum(&k)).unwrap());
    }

    #[test]
    fn self_linked_by_hypersurface() {
        let r = ring(&["x", "y"], &[]);
        let m = cyclic(&r, &["x"]);
        let x2 = parse_poly("x^2", r.ambient()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let opts = LinkageOptions { bound: 3, ..Default::default() };
        let rep = ideal_linkage_check(&[x2.clone()], None, &m, &opts, &mut rng).unwrap();
        assert!(rep.report.is_linked());
        let rbar = FPModule::free(rep.quotient.clone(), vec![0]);
        assert!(is_self_linked(&rbar, &rep.module, 10, &mut rng).unwrap().is_iso());
        assert_eq!(rep.grade_module, Some(1));
        assert_eq!(rep.grade_ideal, Some(1));
        let y = parse_poly("y", r.ambient()).unwrap();
        assert!(matches!(
            ideal_linkage_check(&[y], None, &m, &opts, &mut rng),
            Err(Error::AnnihilationFailure(_))
        ));
    }
}
