//! Depth, dimension, grade, Serre conditions and graded local cohomology.
//!
//! Everything over `R = S/I` is read off the minimal resolution over the
//! polynomial ring `S` and the modules `Ext^j_S(M, S(-σ))`, `σ` the sum of
//! the variable weights. By graded local duality `H^i_m(M)` is the graded
//! Matlis dual of `Ext^{s-i}_S(M, S(-σ))`, `s = #vars`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functors::ext;
use crate::hilbert::HilbertSeries;
use crate::module::FPModule;

#[derive(Clone, Debug, Serialize)]
pub struct HomologicalProfile {
    pub is_zero: bool,
    pub depth: usize,
    pub dim: usize,
    /// Least `i` with `Ext^i_R(M, R) ≠ 0`; `None` for the zero module.
    pub grade: Option<usize>,
    pub pd_over_s: usize,
    /// Graded Betti numbers over `S` as `(i, degree, count)`.
    pub betti: Vec<(usize, i32, usize)>,
    pub is_cm: bool,
    pub is_mcm_over_r: bool,
    /// `grade = dim R - dim M`, checked when `R` is Cohen-Macaulay.
    pub grade_matches_codim: Option<bool>,
}

fn pd_over_ambient(m: &FPModule) -> (usize, Vec<(usize, i32, usize)>) {
    let ms = m.over_ambient();
    let res = ms.resolution(m.ring().nvars() + 1);
    (res.projective_dimension().expect("resolutions over S are finite"), res.graded_betti())
}

/// `depth_R(M) = #vars - pd_S(M)`.
pub fn depth(m: &FPModule) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(m.ring().nvars() - pd_over_ambient(m).0)
}

/// True if `R` is Cohen-Macaulay.
pub fn ring_is_cm(r: &crate::ring::QRing) -> bool {
    let rr = FPModule::free(r.clone(), vec![0]);
    depth(&rr).expect("rings are nonzero") as i64 == r.dim()
}

/// Least `i ≤ dim R` with `Ext^i_R(M, R) ≠ 0`.
pub fn grade(m: &FPModule) -> Option<usize> {
    if m.is_zero() {
        return None;
    }
    let rr = FPModule::free(m.ring().clone(), vec![0]);
    (0..=m.ring().dim().max(0) as usize).find(|&i| !ext(i, m, &rr).expect("same ring").is_zero())
}

pub fn homological_profile(m: &FPModule) -> HomologicalProfile {
    let (pd, betti) = pd_over_ambient(m);
    if m.is_zero() {
        return HomologicalProfile {
            is_zero: true,
            depth: 0,
            dim: 0,
            grade: None,
            pd_over_s: 0,
            betti,
            is_cm: true,
            is_mcm_over_r: false,
            grade_matches_codim: None,
        };
    }
    let r = m.ring();
    let depth = r.nvars() - pd;
    let dim = m.dim() as usize;
    let grade = grade(m);
    let grade_matches_codim =
        ring_is_cm(r).then(|| grade.is_some_and(|g| g as i64 == r.dim() - dim as i64));
    HomologicalProfile {
        is_zero: false,
        depth,
        dim,
        grade,
        pd_over_s: pd,
        betti,
        is_cm: depth == dim,
        is_mcm_over_r: depth == dim && dim as i64 == r.dim(),
        grade_matches_codim,
    }
}

/// `Ext^j_S(M, S(-σ))` for `0 ≤ j ≤ #vars`.
#[derive(Clone, Debug)]
pub struct AmbientDuals {
    pub nvars: usize,
    pub exts: Vec<HilbertSeries>,
}

impl AmbientDuals {
    pub fn of(m: &FPModule) -> AmbientDuals {
        let r = m.ring();
        let s = r.nvars();
        let ms = m.over_ambient();
        let sigma = r.poly_ring().weight_sum();
        let target = FPModule::free(ms.ring().clone(), vec![sigma]);
        let exts = (0..=s).map(|j| ext(j, &ms, &target).expect("same ring").hilbert_series().clone()).collect();
        AmbientDuals { nvars: s, exts }
    }

    /// Krull dimension of `Ext^j_S(M, S)`, `-1` when it vanishes.
    pub fn ext_dim(&self, j: usize) -> i64 {
        self.exts.get(j).map_or(-1, |h| h.dimension())
    }

    /// Matlis-dual Hilbert data of `H^i_m(M)`.
    pub fn local_cohomology(&self, i: usize) -> Option<&HilbertSeries> {
        (i <= self.nvars).then(|| &self.exts[self.nvars - i])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreReport {
    pub n: usize,
    pub holds: bool,
    /// Index `i` of the offending `Ext^i_S(M, S)`.
    pub witness: Option<usize>,
}

/// `S̃_n`: `dim Ext^i_S(M, S) ≤ #vars - i - n` for every `i > codim R`, the
/// zero module having dimension `-∞`.
pub fn serre_from(duals: &AmbientDuals, codim: usize, n: usize) -> SerreReport {
    let s = duals.nvars as i64;
    let witness = (codim + 1..=duals.nvars).find(|&i| !duals.exts[i].is_zero() && duals.ext_dim(i) > s - i as i64 - n as i64);
    SerreReport { n, holds: witness.is_none(), witness }
}

pub fn serre_condition(m: &FPModule, n: usize) -> SerreReport {
    serre_from(&AmbientDuals::of(m), m.ring().codim(), n)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalCohomology {
    pub index: usize,
    /// Hilbert series of the Matlis dual; `H^i_m(M)_d` has the dimension of
    /// its degree `-d` part.
    pub dual: HilbertSeries,
    pub finite_length: bool,
    pub length: Option<i64>,
}

impl LocalCohomology {
    pub fn hf(&self, d: i64) -> i64 {
        self.dual.hf(-d)
    }

    pub fn is_zero(&self) -> bool {
        self.dual.is_zero()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalCohomologyTable {
    pub modules: Vec<LocalCohomology>,
}

impl LocalCohomologyTable {
    pub fn get(&self, i: usize) -> Option<&LocalCohomology> {
        self.modules.get(i)
    }

    pub fn vanishes(&self, i: usize) -> bool {
        self.get(i).is_none_or(|h| h.is_zero())
    }
}

pub fn local_cohomology_from(duals: &AmbientDuals) -> LocalCohomologyTable {
    let modules = (0..=duals.nvars)
        .map(|i| {
            let dual = duals.local_cohomology(i).unwrap().clone();
            let finite_length = dual.dimension() <= 0;
            let length = dual.length();
            LocalCohomology { index: i, dual, finite_length, length }
        })
        .collect();
    LocalCohomologyTable { modules }
}

pub fn local_cohomology_table(m: &FPModule) -> LocalCohomologyTable {
    local_cohomology_from(&AmbientDuals::of(m))
}

/// Generalized Cohen-Macaulay: `H^i_m(M)` has finite length for `i < dim M`.
/// Returns the first offending index when the test fails.
pub fn generalized_cm_test(m: &FPModule) -> Result<(bool, Option<usize>)> {
    let d = m.dim();
    if d < 1 {
        return Err(Error::DimensionZero);
    }
    let duals = AmbientDuals::of(m);
    let bad = (0..d as usize).find(|&i| duals.ext_dim(duals.nvars - i) > 0);
    Ok((bad.is_none(), bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::{parse_poly, PolyRing};
    use crate::ring::{QRing, QuotientRing};

    fn ring(field: Field, vars: &[(&str, u32)], rels: &[&str]) -> QRing {
        let vars = vars.iter().map(|(n, w)| (n.to_string(), *w)).collect();
        let s = std::sync::Arc::new(PolyRing::new(field, vars, crate::poly::MonomialOrder::GrevLex).unwrap());
        let rels = rels.iter().map(|g| parse_poly(g, &s).unwrap()).collect();
        QuotientRing::new("R", s, rels).unwrap()
    }

    #[test]
    fn polynomial_ring_profiles() {
        let s = ring(Field::Rationals, &[("x", 1), ("y", 1)], &[]);
        let p = homological_profile(&FPModule::free(s.clone(), vec![0]));
        assert_eq!((p.depth, p.dim, p.pd_over_s), (2, 2, 0));
        let k = FPModule::residue_field(s);
        let p = homological_profile(&k);
        assert_eq!((p.depth, p.dim, p.pd_over_s, p.grade), (0, 0, 2, Some(2)));
        assert!(p.is_cm && !p.is_mcm_over_r);
    }

    #[test]
    fn semigroup_ring_is_cm() {
        let r = ring(Field::Prime(32003), &[("x", 3), ("y", 4), ("z", 5)], &["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"]);
        let p = homological_profile(&FPModule::free(r.clone(), vec![0]));
        assert_eq!((p.dim, p.depth, p.pd_over_s), (1, 1, 2));
        assert!(p.is_mcm_over_r);
        assert!(ring_is_cm(&r));
    }

    #[test]
    fn serre_on_cone() {
        let r = ring(
            Field::Prime(32003),
            &[("a", 1), ("b", 1), ("c", 1), ("d", 1)],
            &["b^2 - a*c", "b*c - a*d", "c^2 - b*d"],
        );
        let k = FPModule::residue_field(r.clone());
        let rep = serre_condition(&k, 1);
        assert!(!rep.holds);
        assert_eq!(rep.witness, Some(4));
        let rr = FPModule::free(r.clone(), vec![0]);
        assert!(serre_condition(&rr, 2).holds);
    }

    #[test]
    fn local_cohomology_normalization() {
        let s = ring(Field::Rationals, &[("x", 1)], &[]);
        let t = local_cohomology_table(&FPModule::free(s, vec![0]));
        assert!(t.vanishes(0));
        let h1 = t.get(1).unwrap();
        assert_eq!((-4..=0).map(|d| h1.hf(d)).collect::<Vec<_>>(), vec![1, 1, 1, 1, 0]);
        let r = ring(Field::Rationals, &[("x", 1), ("y", 1)], &["x^2"]);
        let t = local_cohomology_table(&FPModule::free(r.clone(), vec![0]));
        assert!(t.vanishes(0) && !t.vanishes(1));
        // The dual of H^1 is ω_R ≅ R, generated in degree 0.
        assert_eq!(t.get(1).unwrap().dual, *r.hilbert_series());
        let k = FPModule::residue_field(r);
        let t = local_cohomology_table(&k);
        assert_eq!(t.get(0).unwrap().length, Some(1));
        assert!(t.vanishes(1) && t.vanishes(2));
    }

    #[test]
    fn generalized_cm() {
        let s = ring(Field::Rationals, &[("x", 1), ("y", 1)], &[]);
        let x2 = parse_poly("x^2", s.ambient()).unwrap();
        let xy = parse_poly("x*y", s.ambient()).unwrap();
        let gens = vec![crate::vector::Vector::from_poly(&x2, 0), crate::vector::Vector::from_poly(&xy, 0)];
        let ideal = crate::module::subquotient(&s, &[0], &gens, &[]).module;
        let p = homological_profile(&ideal);
        assert_eq!((p.depth, p.dim), (1, 2));
        assert_eq!(generalized_cm_test(&ideal).unwrap(), (true, None));
        let k = FPModule::residue_field(s);
        assert!(matches!(generalized_cm_test(&k), Err(Error::DimensionZero)));
    }
}
