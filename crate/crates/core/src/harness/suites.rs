//! The theorem suites. Each suite checks one implication on one corpus item;
//! items failing a hypothesis are skipped with the unmet hypothesis named.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::functors::{ext, hom, tensor};
use crate::harness::corpus::{Item, Wrt};
use crate::hilbert::HilbertSeries;
use crate::hominv::{
    generalized_cm_test, grade, homological_profile, local_cohomology_table, ring_is_cm, serre_condition,
    AmbientDuals,
};
use crate::iso::{iso_test, iso_up_to_twist, IsoEvidence};
use crate::linkage::{
    biduality_defect, horizontal_linkage_check, ideal_linkage_check, is_c_stable, lambda_wrt, linkage_sequence,
    omega_transpose, transpose, transpose_wrt, LinkageOptions, LinkageReport,
};
use crate::module::FPModule;
use crate::poly::Poly;
use crate::ring::QRing;
use crate::semidual::{
    canonical_module, class_membership, is_gorenstein, is_semidualizing, quasi_gorenstein_check, ClassSide, SemidualizingReport,
};
use crate::vector::Vector;

/// Highest degree at which Hilbert function identities are compared.
pub const CHECK_DEGREE: i64 = 12;

pub const SUITES: [&str; 4] = ["A", "B", "C", "L"];

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Bounds {
    #[serde(rename = "B")]
    pub bound: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail(_) => "fail",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub item: String,
    #[serde(flatten)]
    pub status: Status,
    pub hypotheses: Map<String, Value>,
    pub checks: Map<String, Value>,
    pub bounds: Bounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a keeps per-item streams independent of scheduling and selection.
    let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn hs(h: &HilbertSeries) -> Value {
    json!(h.to_string())
}

/// First degree in `lo..=hi` where two Hilbert functions differ.
fn hf_mismatch(lhs: &HilbertSeries, rhs: &HilbertSeries, lo: i64, hi: i64) -> Option<String> {
    let a = lhs.hf_range(lo, hi);
    let b = rhs.hf_range(lo, hi);
    let k = (0..a.len()).find(|&k| a[k] != b[k])?;
    Some(format!(
        "degree {}: {} vs {} (Hilbert series {} vs {}; HF over {lo}..={hi}: {:?} vs {:?})",
        lo + k as i64,
        a[k],
        b[k],
        lhs,
        rhs,
        a,
        b
    ))
}

fn low_degree(series: &[&HilbertSeries]) -> i64 {
    series.iter().filter_map(|h| h.initial_degree()).min().unwrap_or(0).min(CHECK_DEGREE)
}

fn iso_json(e: &IsoEvidence) -> Value {
    json!({ "verdict": format!("{:?}", e.verdict), "mismatch": e.mismatch, "trials": e.trials })
}

/// `M` re-presented over `R` from a module over `R/a`.
pub fn lift(m: &FPModule, r: &QRing, ideal: &[Poly]) -> Result<FPModule> {
    let mut rels = m.rels().to_vec();
    for j in 0..m.ngens() {
        for f in ideal {
            rels.push(Vector::from_poly(f, j));
        }
    }
    FPModule::new(r.clone(), m.gens().to_vec(), rels)
}

/// Collects hypotheses, checks and failures of one suite run.
struct Outcome {
    hyp: Map<String, Value>,
    checks: Map<String, Value>,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { hyp: Map::new(), checks: Map::new(), failures: Vec::new() }
    }

    fn hyp(&mut self, k: &str, v: impl Serialize) {
        self.hyp.insert(k.into(), serde_json::to_value(v).expect("report values serialize"));
    }

    fn check(&mut self, k: &str, v: Value) {
        self.checks.insert(k.into(), v);
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn status(&self, skip: Option<String>) -> Status {
        if !self.failures.is_empty() {
            Status::Fail(self.failures.join("; "))
        } else if let Some(s) = skip {
            Status::Skipped(s)
        } else {
            Status::Pass
        }
    }
}

/// Shared per-item computations, filled on first use.
pub struct ItemRun<'a> {
    pub item: &'a Item,
    pub bounds: Bounds,
    cert: OnceCell<SemidualizingReport>,
    link: OnceCell<LinkageReport>,
}

impl<'a> ItemRun<'a> {
    pub fn new(item: &'a Item, bound: usize, trials: usize, seed: u64) -> ItemRun<'a> {
        let bound = item.max_bound.map_or(bound, |m| m.min(bound));
        ItemRun { item, bounds: Bounds { bound, trials, seed }, cert: OnceCell::new(), link: OnceCell::new() }
    }

    fn opts(&self) -> LinkageOptions {
        LinkageOptions {
            bound: self.bounds.bound,
            trials: self.bounds.trials,
            c_is_canonical: self.c_is_canonical(),
            hypotheses: true,
        }
    }

    /// `C` is the canonical module, or `C = R` over a Gorenstein ring.
    fn c_is_canonical(&self) -> bool {
        match self.item.wrt {
            Wrt::Omega => true,
            Wrt::SelfRing => is_gorenstein(&self.item.ring),
            Wrt::Explicit(_) => false,
        }
    }

    fn rng(&self, label: &str) -> ChaCha8Rng {
        stream(self.bounds.seed, &format!("{}/{label}", self.item.name))
    }

    fn cert(&self) -> Result<&SemidualizingReport> {
        if let Some(c) = self.cert.get() {
            return Ok(c);
        }
        let c = is_semidualizing(&self.item.c, self.bounds.bound)?;
        Ok(self.cert.get_or_init(|| c))
    }

    fn link(&self) -> Result<&LinkageReport> {
        if let Some(l) = self.link.get() {
            return Ok(l);
        }
        let l = horizontal_linkage_check(&self.item.c, &self.item.module, &self.opts(), &mut self.rng("link"))?;
        Ok(self.link.get_or_init(|| l))
    }

    pub fn run(&self, suite: &str, timings: bool) -> SuiteResult {
        let start = Instant::now();
        let mut out = Outcome::new();
        let skip = match suite {
            "A" => self.suite_a(&mut out),
            "B" => self.suite_b(&mut out),
            "C" => self.suite_c(&mut out),
            "L" => self.suite_l(&mut out),
            other => Ok(Some(format!("unknown suite `{other}`"))),
        };
        let status = match skip {
            Ok(skip) => out.status(skip),
            Err(e) => Status::Fail(format!("engine error: {e}")),
        };
        let status = self.apply_status_pin(suite, status);
        SuiteResult {
            suite: suite.to_string(),
            item: self.item.name.clone(),
            status,
            hypotheses: out.hyp,
            checks: out.checks,
            bounds: self.bounds,
            timings: timings.then(|| BTreeMap::from([("seconds".to_string(), start.elapsed().as_secs_f64())])),
        }
    }

    fn apply_status_pin(&self, suite: &str, status: Status) -> Status {
        match self.item.pins.status.get(suite) {
            Some(want) if want != status.label() => Status::Fail(format!(
                "pin `status.{suite}` expected {want}, engine produced {}{}",
                status.label(),
                match &status {
                    Status::Fail(d) | Status::Skipped(d) => format!(" ({d})"),
                    Status::Pass => String::new(),
                }
            )),
            _ => status,
        }
    }

    /// Linkage with respect to `C`: the sufficient conditions for horizontal
    /// linkage as a tested implication, plus the bookkeeping identities every
    /// computation must satisfy.
    fn suite_l(&self, out: &mut Outcome) -> Result<Option<String>> {
        let it = self.item;
        let (c, m) = (&it.c, &it.module);
        let cert = self.cert()?;
        out.hyp("c_semidualizing", cert);
        if !cert.verdict.is_certified() {
            return Ok(Some("C is not semidualizing".into()));
        }
        let link = self.link()?;
        out.hyp("panel", &link.hypotheses);
        out.check("verdict", serde_json::to_value(&link.verdict).unwrap());
        out.check("iso", iso_json(&link.iso));
        if let Some(a) = link.twist {
            out.check("double_link_twist", json!(a));
        }

        let seq = linkage_sequence(c, m)?;
        let lhs = seq.lambda.add(&seq.transpose);
        let lo = low_degree(&[&seq.lambda, &seq.transpose, &seq.middle]);
        let bad = hf_mismatch(&lhs, &seq.middle, lo, CHECK_DEGREE);
        out.check("linkage_sequence", json!({ "holds": bad.is_none() && seq.balanced(), "from_degree": lo,
            "lambda": hs(&seq.lambda), "transpose": hs(&seq.transpose), "middle": hs(&seq.middle) }));
        if let Some(b) = bad {
            out.fail(format!("linkage sequence: HS(lambda) + HS(Tr_C) != HS(Hom(P1, C)) at {b}"));
        }

        let defect = biduality_defect(c, m)?;
        let lo = low_degree(&[m.hilbert_series()]).min(0) - 2 * CHECK_DEGREE;
        let zero = HilbertSeries::zero(m.ring().weights());
        let bad = hf_mismatch(&defect, &zero, lo, CHECK_DEGREE);
        out.check("biduality", json!({ "holds": defect.is_zero(), "defect": hs(&defect) }));
        if !defect.is_zero() {
            out.fail(format!(
                "biduality sequence: alternating sum {} not zero ({})",
                defect,
                bad.unwrap_or_else(|| "outside checked range".into())
            ));
        }

        let mm = m.minimize();
        let tr_tensor = tensor(&transpose(&mm), c)?;
        let tr_c = transpose_wrt(c, &mm)?;
        let ev = iso_test(&tr_tensor, &tr_c, self.bounds.trials, &mut self.rng("tr"))?;
        out.check("transpose_tensor", iso_json(&ev));
        if !ev.is_iso() {
            out.fail(format!(
                "Tr M (x) C vs Tr_C M: {:?} ({}; {} vs {})",
                ev.verdict,
                ev.mismatch.as_deref().unwrap_or("no surjection found"),
                tr_tensor.hilbert_series(),
                tr_c.hilbert_series()
            ));
        }

        if it.wrt == Wrt::SelfRing {
            let classical = omega_transpose(m);
            let ev = iso_test(&link.lambda, &classical, self.bounds.trials, &mut self.rng("omega_tr"))?;
            out.check("omega_transpose", iso_json(&ev));
            if !ev.is_iso() {
                out.fail(format!(
                    "lambda(R, M) vs syzygy of Tr M: {:?} ({} vs {})",
                    ev.verdict,
                    link.lambda.hilbert_series(),
                    classical.hilbert_series()
                ));
            }
        }

        let panel = link.hypotheses.as_ref().expect("panel requested");
        if panel.c_syzygy {
            let x = hom(c, m)?.module;
            let e = ext(1, &transpose_wrt(c, &x)?, c)?;
            out.check("dual_transpose_ext1", json!({ "vanishes": e.is_zero(), "hilbert": hs(e.hilbert_series()) }));
            if !e.is_zero() {
                out.fail(format!("C-syzygy but Ext^1(Tr_C(M^v), C) has Hilbert series {}", e.hilbert_series()));
            }
        }

        if link.is_linked() {
            let lam3 = lambda_wrt(c, &link.lambda_squared)?;
            let ev = iso_test(&link.lambda, &lam3, self.bounds.trials, &mut self.rng("involution"))?;
            out.check("partner_linked", iso_json(&ev));
            if !ev.is_iso() {
                out.fail(format!(
                    "partner lambda(M) is not linked back: {:?} ({} vs {})",
                    ev.verdict,
                    link.lambda.hilbert_series(),
                    lam3.hilbert_series()
                ));
            }
        }

        self.check_pins(out, link, panel.bass_class.is_certified())?;

        let unmet = unmet(panel);
        if unmet.is_empty() {
            out.check("theorem", json!("hypotheses certified"));
            if !link.is_linked() {
                out.fail(format!(
                    "all sufficient conditions certified but verdict is {:?} (M: {}, lambda^2: {})",
                    link.verdict,
                    m.hilbert_series(),
                    link.lambda_squared.hilbert_series()
                ));
            }
            Ok(None)
        } else {
            Ok(Some(format!("unmet hypotheses: {}", unmet.join(", "))))
        }
    }

    fn check_pins(&self, out: &mut Outcome, link: &LinkageReport, bass: bool) -> Result<()> {
        let pins = &self.item.pins;
        if let Some(want) = pins.linked {
            if want != link.is_linked() {
                out.fail(format!("pin `linked` expected {want}, engine verdict {:?}", link.verdict));
            }
        }
        if let Some(want) = pins.bass {
            if want != bass {
                out.fail(format!("pin `bass` expected {want}, engine {bass}"));
            }
        }
        if let Some(l) = &self.item.lambda_pin {
            let target = l.twist(pins.lambda_twist);
            let ev = iso_test(&link.lambda, &target, self.bounds.trials, &mut self.rng("pin"))?;
            out.check("lambda_pin", iso_json(&ev));
            if !ev.is_iso() {
                out.fail(format!(
                    "pin `lambda` not matched: {:?} (engine {} vs pinned {})",
                    ev.verdict,
                    link.lambda.hilbert_series(),
                    target.hilbert_series()
                ));
            }
        }
        Ok(())
    }

    /// Linkage by an ideal: `M` is linked by `a` with respect to the canonical
    /// module of `R/a`, its link has finite Gorenstein injective dimension and
    /// is Cohen-Macaulay of the grade of `a`.
    fn suite_a(&self, out: &mut Outcome) -> Result<Option<String>> {
        let it = self.item;
        let r = &it.ring;
        let ideal: Vec<Poly> = it.ideal.as_ref().map(|i| i.1.clone()).unwrap_or_default();
        let b = self.bounds.bound;
        if !ring_is_cm(r) {
            return Ok(Some("R is not Cohen-Macaulay".into()));
        }
        let qg = quasi_gorenstein_check(r, &ideal, b)?;
        out.hyp("quasi_gorenstein", &qg);
        if !qg.verdict.is_certified() {
            return Ok(Some("ideal is not quasi-Gorenstein".into()));
        }
        let ann = crate::linkage::annihilates(&ideal, &it.module);
        out.hyp("annihilates", ann);
        if !ann {
            return Ok(Some("ideal does not annihilate M".into()));
        }
        let profile = homological_profile(&it.module);
        let grade_a = grade(&FPModule::cyclic(r.clone(), &ideal)?);
        out.hyp("profile", &profile);
        out.hyp("grade_ideal", grade_a);
        if profile.is_zero || !profile.is_cm {
            return Ok(Some("M is not Cohen-Macaulay".into()));
        }
        if profile.grade != grade_a {
            return Ok(Some(format!("grade M = {:?} differs from grade a = {:?}", profile.grade, grade_a)));
        }
        let quotient = r.quotient(&format!("{}_bar", r.name()), &ideal)?;
        let omega = canonical_module(&quotient)?;
        let mbar = it.module.change_ring(quotient.clone())?;
        let gid = class_membership(ClassSide::Bass, &omega, &mbar, b)?;
        out.hyp("gid_finite_proxy", &gid);
        if !gid.verdict.is_certified() {
            return Ok(Some("Gid M not certified finite".into()));
        }
        let stable = is_c_stable(&omega, &mbar)?;
        out.hyp("omega_stable", stable);
        if !stable {
            return Ok(Some("M is not stable with respect to the canonical module of R/a".into()));
        }

        let opts = LinkageOptions { c_is_canonical: true, hypotheses: false, ..self.opts() };
        let rep = ideal_linkage_check(&ideal, None, &it.module, &opts, &mut self.rng("ideal"))?;
        let linked = rep.report.is_linked();
        out.check("linked", json!({ "verdict": rep.report.verdict, "iso": iso_json(&rep.report.iso) }));
        if let Some(want) = it.pins.ideal_linked {
            if want != linked {
                out.fail(format!("pin `ideal_linked` expected {want}, engine verdict {:?}", rep.report.verdict));
            }
        }
        if !linked {
            out.fail(format!(
                "not linked by the ideal: {:?} (M: {}, lambda^2: {})",
                rep.report.verdict,
                rep.module.hilbert_series(),
                rep.report.lambda_squared.hilbert_series()
            ));
            return Ok(None);
        }
        let lam = &rep.report.lambda;
        let gid_lam = class_membership(ClassSide::Bass, &omega, lam, b)?;
        out.check("lambda_gid_finite", serde_json::to_value(&gid_lam).unwrap());
        if !gid_lam.verdict.is_certified() {
            out.fail(format!("Bass class membership of the link refuted: {:?}", gid_lam.verdict));
        }
        let lam_r = lift(lam, r, &ideal)?;
        let lp = homological_profile(&lam_r);
        out.check(
            "lambda_profile",
            json!({ "cm": lp.is_cm, "grade": lp.grade, "depth": lp.depth, "dim": lp.dim, "hilbert": hs(lam_r.hilbert_series()) }),
        );
        if lp.is_zero || !lp.is_cm || lp.grade != grade_a {
            out.fail(format!(
                "link is not Cohen-Macaulay of grade {:?}: depth {}, dim {}, grade {:?}",
                grade_a, lp.depth, lp.dim, lp.grade
            ));
        }
        Ok(None)
    }

    /// The equivalence between the Auslander and Bass classes of the canonical
    /// module of `R/a` and the transport of linkage along it.
    fn suite_b(&self, out: &mut Outcome) -> Result<Option<String>> {
        let it = self.item;
        let r = &it.ring;
        let ideal: Vec<Poly> = it.ideal.as_ref().map(|i| i.1.clone()).unwrap_or_default();
        let b = self.bounds.bound;
        let trials = self.bounds.trials;
        if !crate::linkage::annihilates(&ideal, &it.module) {
            return Ok(Some("ideal does not annihilate M".into()));
        }
        let quotient = if ideal.is_empty() { r.clone() } else { r.quotient(&format!("{}_bar", r.name()), &ideal)? };
        if !ring_is_cm(&quotient) {
            return Ok(Some("R/a is not Cohen-Macaulay".into()));
        }
        let omega = canonical_module(&quotient)?;
        let m = it.module.change_ring(quotient.clone())?;
        let aus = class_membership(ClassSide::Auslander, &omega, &m, b)?;
        let bass = class_membership(ClassSide::Bass, &omega, &m, b)?;
        out.hyp("auslander", &aus);
        out.hyp("bass", &bass);
        if !aus.verdict.is_certified() && !bass.verdict.is_certified() {
            return Ok(Some("M is in neither class of the canonical module".into()));
        }
        let free = FPModule::free(quotient.clone(), vec![0]);
        let plain = LinkageOptions { hypotheses: false, c_is_canonical: false, ..self.opts() };
        let canon = LinkageOptions { hypotheses: false, c_is_canonical: true, ..self.opts() };
        let mut rng = self.rng("B");

        if aus.verdict.is_certified() {
            let n = tensor(&m, &omega)?;
            let back = hom(&omega, &n)?.module;
            let ev = iso_test(&back, &m, trials, &mut rng)?;
            out.check("auslander_roundtrip", iso_json(&ev));
            if !ev.is_iso() {
                out.fail(format!(
                    "Hom(w, M (x) w) vs M: {:?} ({} vs {})",
                    ev.verdict,
                    back.hilbert_series(),
                    m.hilbert_series()
                ));
            }
            let classical = horizontal_linkage_check(&free, &m, &plain, &mut rng)?;
            if classical.is_linked() {
                let moved = horizontal_linkage_check(&omega, &n, &canon, &mut rng)?;
                out.check("transport_to_omega", json!({ "verdict": moved.verdict }));
                if !moved.is_linked() {
                    out.fail(format!("M linked but M (x) w is not linked w.r.t. w: {:?}", moved.verdict));
                }
                let selfl = iso_test(&m, &classical.lambda, trials, &mut rng)?;
                if selfl.is_iso() {
                    let (a, ev) = iso_up_to_twist(&n, &moved.lambda, trials, &mut rng)?;
                    out.check("self_linked_transport", json!({ "iso": iso_json(&ev), "twist": a }));
                    if !ev.is_iso() {
                        out.fail(format!("M self-linked but M (x) w is not: {:?}", ev.verdict));
                    }
                }
            } else {
                out.check("transport_to_omega", json!({ "source_verdict": classical.verdict }));
            }
        }

        if bass.verdict.is_certified() {
            let v = hom(&omega, &m)?.module;
            let back = tensor(&v, &omega)?;
            let ev = iso_test(&back, &m, trials, &mut rng)?;
            out.check("bass_roundtrip", iso_json(&ev));
            if !ev.is_iso() {
                out.fail(format!(
                    "Hom(w, N) (x) w vs N: {:?} ({} vs {})",
                    ev.verdict,
                    back.hilbert_series(),
                    m.hilbert_series()
                ));
            }
            let rel = horizontal_linkage_check(&omega, &m, &canon, &mut rng)?;
            if rel.is_linked() {
                let moved = horizontal_linkage_check(&free, &v, &plain, &mut rng)?;
                out.check("transport_to_classical", json!({ "verdict": moved.verdict }));
                if !moved.is_linked() {
                    out.fail(format!("N linked w.r.t. w but Hom(w, N) is not linked: {:?}", moved.verdict));
                }
            } else {
                out.check("transport_to_classical", json!({ "source_verdict": rel.verdict }));
            }
        }
        Ok(None)
    }

    /// Serre conditions and local cohomology of the link with respect to the
    /// canonical module.
    fn suite_c(&self, out: &mut Outcome) -> Result<Option<String>> {
        let it = self.item;
        let r = &it.ring;
        if !self.c_is_canonical() {
            return Ok(Some("C is not the canonical module".into()));
        }
        let d = r.dim();
        out.hyp("dim_r", d);
        if d < 1 {
            return Ok(Some("dim R = 0".into()));
        }
        let d = d as usize;
        let link = self.link()?;
        out.hyp("verdict", &link.verdict);
        if !link.is_linked() {
            return Ok(Some("M is not horizontally linked with respect to the canonical module".into()));
        }
        let panel = link.hypotheses.as_ref().expect("panel requested");
        out.hyp("gid_finite_proxy", &panel.bass_class);
        if !panel.bass_class.is_certified() {
            return Ok(Some("Gid M not certified finite".into()));
        }
        let m = &it.module;
        let lam = &link.lambda;
        let table = local_cohomology_table(lam);

        let mut serre = Vec::new();
        for n in 0..=d {
            let s = serre_condition(m, n).holds;
            let window = (d + 1 - n.min(d)..d).all(|i| table.vanishes(i));
            serre.push(json!({ "n": n, "serre": s, "window_vanishes": window }));
            if s != window {
                out.fail(format!(
                    "S_{n} is {s} for M but H^i(lambda) vanishing for {}<i<{d} is {window}",
                    d as i64 - n as i64
                ));
            }
        }
        out.check("serre_window", Value::Array(serre));

        let pm = homological_profile(m);
        let pl = homological_profile(lam);
        out.check("mcm", json!({ "m": pm.is_mcm_over_r, "lambda": pl.is_mcm_over_r }));
        if pm.is_mcm_over_r != pl.is_mcm_over_r {
            out.fail(format!("MCM of M is {} but of lambda(M) is {}", pm.is_mcm_over_r, pl.is_mcm_over_r));
        }

        if d > 1 && !pm.is_cm && generalized_cm_test(m)?.0 {
            let mv = hom(&it.c, m)?.module;
            let dm = AmbientDuals::of(&mv);
            let dl = AmbientDuals::of(lam);
            let s = dm.nvars;
            let mut rows = Vec::new();
            for i in 1..d {
                // H^i(M^v)_j = Ext^{s-i}(M^v)_{-j}, H^{d-i}(λ)_{-j} = Ext^{s-d+i}(λ)_j.
                let a = &dm.exts[s - i];
                let bb = &dl.exts[s - d + i];
                let (lo, hi) = span(a, bb);
                let left: Vec<i64> = (lo..=hi).map(|j| a.hf(-j)).collect();
                let right: Vec<i64> = (lo..=hi).map(|j| bb.hf(j)).collect();
                rows.push(json!({ "i": i, "degrees": [lo, hi], "local_cohomology_of_dual": left, "matlis_dual_of_link": right }));
                if left != right {
                    out.fail(format!(
                        "H^{i}(M^v) vs Matlis dual of H^{}(lambda) over degrees {lo}..={hi}: {left:?} vs {right:?}",
                        d - i
                    ));
                }
                let e = ext(i, &mv, &it.c)?;
                let h = table.get(i).expect("index within range");
                let (lo, hi) = span(e.hilbert_series(), &h.dual);
                let left: Vec<i64> = (lo..=hi).map(|j| e.hilbert_series().hf(j)).collect();
                let right: Vec<i64> = (lo..=hi).map(|j| h.hf(j)).collect();
                if left != right {
                    out.fail(format!(
                        "Ext^{i}(M^v, C) vs H^{i}(lambda) over degrees {lo}..={hi}: {left:?} vs {right:?}"
                    ));
                }
            }
            out.check("generalized_cm_duality", Value::Array(rows));
            let top = (0..d).rev().find(|&i| !table.vanishes(i));
            out.check("depth_from_link", json!({ "depth": pm.depth, "sup": top }));
            if top != Some(pm.depth) {
                out.fail(format!("depth M = {} but top nonvanishing H^i(lambda), i<d, is {top:?}", pm.depth));
            }
        }
        Ok(None)
    }
}

/// A degree window containing the supports of two finite length series and
/// their reflections.
fn span(a: &HilbertSeries, b: &HilbertSeries) -> (i64, i64) {
    let mut ends = Vec::new();
    for h in [a, b] {
        if let Some((lo, hi)) = h.support() {
            ends.extend([lo, hi, -lo, -hi]);
        }
    }
    match (ends.iter().min(), ends.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0, 0),
    }
}

fn unmet(panel: &crate::linkage::Hypotheses) -> Vec<&'static str> {
    let mut v = Vec::new();
    if !panel.bass_class.is_certified() {
        v.push("M in the Bass class of C");
    }
    if !panel.c_syzygy {
        v.push("C-syzygy");
    }
    if !panel.c_stable {
        v.push("C-stable");
    }
    if !panel.ext1_vanishes {
        v.push("Ext^1(M, C) = 0");
    }
    if !panel.stable_hom_dual_vanishes {
        v.push("stable Hom(M^v, C) = 0");
    }
    if panel.finite_injective_dimension_in_low_depth != "structural" {
        v.push("finite injective dimension of C in depth <= 1 (assumed, not checked)");
    }
    v
}
