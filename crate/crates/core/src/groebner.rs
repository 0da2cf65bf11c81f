//! Buchberger's algorithm for graded submodules of free modules over a
//! polynomial ring, with normal forms, syzygies and minimal generators.
//!
//! Pairs are processed degree by degree (normal strategy). The Gebauer–Möller
//! criteria prune pairs; the coprime-leads criterion is only used in rank one,
//! where it is valid.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing, RingRef};
use crate::vector::{cmp_terms, ModuleMap, Term, Vector};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// A Gröbner basis of a submodule of `⊕ S(-twists[i])`.
#[derive(Clone, Debug)]
pub struct ModuleGb {
    order: MonomialOrder,
    weights: Vec<u32>,
    twists: Vec<i32>,
    basis: Vec<Vector>,
    leads: Vec<(usize, Monomial)>,
    by_comp: Vec<Vec<usize>>,
}

impl ModuleGb {
    fn empty(ring: &PolyRing, twists: &[i32]) -> ModuleGb {
        ModuleGb {
            order: ring.order(),
            weights: ring.weights().to_vec(),
            twists: twists.to_vec(),
            basis: Vec::new(),
            leads: Vec::new(),
            by_comp: vec![Vec::new(); twists.len()],
        }
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Leading `(component, monomial)` pairs.
    pub fn leads(&self) -> &[(usize, Monomial)] {
        &self.leads
    }

    /// Wraps vectors already known to form a Gröbner basis.
    pub fn from_basis(ring: &PolyRing, twists: &[i32], basis: &[Vector]) -> ModuleGb {
        let mut gb = ModuleGb::empty(ring, twists);
        for v in basis {
            if v.is_zero() {
                continue;
            }
            let v = v.make_monic();
            let k = gb.basis.len();
            let t = v.lead().unwrap();
            gb.by_comp[t.comp].push(k);
            gb.leads.push((t.comp, t.mon.clone()));
            gb.basis.push(v);
        }
        gb
    }

    fn find_divisor(&self, comp: usize, mon: &Monomial) -> Option<usize> {
        self.by_comp.get(comp)?.iter().copied().find(|&k| self.leads[k].1.divides(mon))
    }

    fn insert(&mut self, v: Vector, ideal_mode: bool, pairs: &mut BTreeMap<i64, Vec<Pair>>) {
        let v = v.make_monic();
        let (comp, mon) = {
            let t = v.lead().expect("nonzero");
            (t.comp, t.mon.clone())
        };
        let h = self.basis.len();
        let base_deg = self.twists[comp] as i64;

        // Gebauer–Möller update.
        let mut fresh: Vec<(usize, Monomial, bool)> = self.by_comp[comp]
            .iter()
            .map(|&i| {
                let l = self.leads[i].1.lcm(&mon, &self.weights);
                let coprime = ideal_mode && self.leads[i].1.coprime(&mon);
                (i, l, coprime)
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some(p) = fresh.pop() {
            let dominated = fresh.iter().chain(kept.iter()).any(|q| q.1.divides(&p.1));
            if p.2 || !dominated {
                kept.push(p);
            }
        }
        for bucket in pairs.values_mut() {
            bucket.retain(|p| {
                if self.leads[p.i].0 != comp || !mon.divides(&p.lcm) {
                    return true;
                }
                let li = self.leads[p.i].1.lcm(&mon, &self.weights);
                let lj = self.leads[p.j].1.lcm(&mon, &self.weights);
                li == p.lcm || lj == p.lcm
            });
        }
        pairs.retain(|_, b| !b.is_empty());
        for (i, lcm, coprime) in kept {
            if coprime {
                continue;
            }
            let d = lcm.degree() as i64 + base_deg;
            pairs.entry(d).or_default().push(Pair { i, j: h, lcm });
        }

        self.by_comp[comp].push(h);
        self.leads.push((comp, mon));
        self.basis.push(v);
    }

    fn s_vector(&self, p: &Pair) -> Vector {
        let (gi, gj) = (&self.basis[p.i], &self.basis[p.j]);
        let qi = self.leads[p.i].1.quotient_of(&p.lcm);
        let qj = self.leads[p.j].1.quotient_of(&p.lcm);
        let one = gi.lead().unwrap().coef.field().one();
        gi.mul_term(&qi, &one).sub(&gj.mul_term(&qj, &one), self.order)
    }

    fn reduce_impl(&self, v: Vector, full: bool) -> Vector {
        let ord = self.order;
        let mut work = v.into_terms();
        work.reverse();
        let mut done: Vec<Term> = Vec::new();
        while let Some(t) = work.pop() {
            match self.find_divisor(t.comp, &t.mon) {
                Some(k) => {
                    let q = self.leads[k].1.quotient_of(&t.mon);
                    let c = t.coef.neg();
                    let tail = self.basis[k].terms()[1..]
                        .iter()
                        .rev()
                        .map(|s| Term { comp: s.comp, mon: s.mon.mul(&q), coef: s.coef.mul(&c) });
                    work = merge_ascending(work, tail, ord);
                }
                None if full => done.push(t),
                None => {
                    work.push(t);
                    break;
                }
            }
        }
        if full {
            Vector::from_sorted(done)
        } else {
            work.reverse();
            Vector::from_sorted(work)
        }
    }

    /// Full normal form: no term of the result is divisible by a leading term.
    pub fn reduce(&self, v: &Vector) -> Vector {
        self.reduce_impl(v.clone(), true)
    }

    /// Reduces only until the leading term is irreducible.
    pub fn top_reduce(&self, v: &Vector) -> Vector {
        self.reduce_impl(v.clone(), false)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.top_reduce(v).is_zero()
    }

    /// Interreduced, monic, sorted copy: the reduced Gröbner basis.
    pub fn reduced(&self) -> ModuleGb {
        let ord = self.order;
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by(|&a, &b| {
            let (ca, ma) = (&self.leads[a].0, &self.leads[a].1);
            let (cb, mb) = (&self.leads[b].0, &self.leads[b].1);
            cmp_terms(ord, (*ca, ma), (*cb, mb))
        });
        // Drop elements whose leading term is divisible by another's.
        let mut keep: Vec<usize> = Vec::new();
        for &a in &idx {
            let (ca, ma) = &self.leads[a];
            let redundant = idx.iter().any(|&b| {
                b != a && self.leads[b].0 == *ca && self.leads[b].1.divides(ma) && (self.leads[b].1 != *ma || b < a)
            });
            if !redundant {
                keep.push(a);
            }
        }
        let mut min = ModuleGb {
            order: ord,
            weights: self.weights.clone(),
            twists: self.twists.clone(),
            basis: Vec::new(),
            leads: Vec::new(),
            by_comp: vec![Vec::new(); self.twists.len()],
        };
        for &a in &keep {
            let k = min.basis.len();
            min.by_comp[self.leads[a].0].push(k);
            min.leads.push(self.leads[a].clone());
            min.basis.push(self.basis[a].clone());
        }
        let mut out = min.clone();
        for k in 0..min.basis.len() {
            let v = &min.basis[k];
            let lead = Vector::from_sorted(vec![v.lead().unwrap().clone()]);
            let tail = Vector::from_sorted(v.terms()[1..].to_vec());
            out.basis[k] = lead.add(&min.reduce(&tail), ord).make_monic();
        }
        out
    }

    pub fn len_in_comp(&self, comp: usize) -> usize {
        self.by_comp.get(comp).map_or(0, |v| v.len())
    }
}

fn merge_ascending(a: Vec<Term>, b: impl Iterator<Item = Term>, ord: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + 4);
    let mut ia = a.into_iter().peekable();
    let mut ib = b.peekable();
    loop {
        let o = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => cmp_terms(ord, (x.comp, &x.mon), (y.comp, &y.mon)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match o {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let x = ia.next().unwrap();
                let y = ib.next().unwrap();
                let c = x.coef.add(&y.coef);
                if !c.is_zero() {
                    out.push(Term { coef: c, ..x });
                }
            }
        }
    }
    out
}

/// Result of a Buchberger run: the basis, and which non-background inputs were
/// needed (a minimal generating set, for homogeneous inputs).
pub struct GbRun {
    pub gb: ModuleGb,
    pub minimal_inputs: Vec<usize>,
}

/// Runs Buchberger on `inputs`; each input carries a `background` flag.
/// Background inputs are processed first within a degree and never reported
/// as minimal generators. With `max_degree` the computation is truncated.
///
/// `seed` must already be a Gröbner basis (for example `I·F` built from a
/// basis of `I`); its internal pairs are taken as processed.
pub fn buchberger(
    ring: &PolyRing,
    twists: &[i32],
    seed: &[Vector],
    inputs: &[(Vector, bool)],
    max_degree: Option<i64>,
) -> GbRun {
    let ideal_mode = twists.len() == 1;
    let mut gb = ModuleGb::from_basis(ring, twists, seed);
    let mut pairs: BTreeMap<i64, Vec<Pair>> = BTreeMap::new();
    let mut order: Vec<(i64, bool, usize)> = inputs
        .iter()
        .enumerate()
        .filter_map(|(k, (v, bg))| v.degree(twists).map(|d| (d, !*bg, k)))
        .collect();
    order.sort();
    let mut next = 0;
    let mut minimal = Vec::new();
    loop {
        let dp = pairs.keys().next().copied();
        let dg = order.get(next).map(|t| t.0);
        let d = match (dp, dg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if max_degree.is_some_and(|m| d > m) {
            break;
        }
        if dp == Some(d) {
            let bucket = pairs.remove(&d).unwrap();
            for p in bucket {
                let s = gb.s_vector(&p);
                let r = gb.top_reduce(&s);
                if !r.is_zero() {
                    gb.insert(r, ideal_mode, &mut pairs);
                }
            }
            continue;
        }
        while next < order.len() && order[next].0 == d {
            let k = order[next].2;
            next += 1;
            let r = gb.top_reduce(&inputs[k].0);
            if !r.is_zero() {
                gb.insert(r, ideal_mode, &mut pairs);
                if !inputs[k].1 {
                    minimal.push(k);
                }
            }
        }
    }
    GbRun { gb, minimal_inputs: minimal }
}

/// Gröbner basis of the submodule generated by `gens`.
pub fn module_gb(ring: &PolyRing, twists: &[i32], gens: &[Vector]) -> ModuleGb {
    let inputs: Vec<(Vector, bool)> = gens.iter().map(|g| (g.clone(), false)).collect();
    buchberger(ring, twists, &[], &inputs, None).gb
}

/// Indices of a minimal homogeneous generating subset of `gens` modulo the
/// submodule generated by `background`.
pub fn mingens(ring: &PolyRing, twists: &[i32], gens: &[Vector], background: &[Vector]) -> Vec<usize> {
    mingens_seeded(ring, twists, gens, background, &[])
}

/// As [`mingens`], with an extra background that is already a Gröbner basis.
pub fn mingens_seeded(
    ring: &PolyRing,
    twists: &[i32],
    gens: &[Vector],
    background: &[Vector],
    seed: &[Vector],
) -> Vec<usize> {
    let mut inputs: Vec<(Vector, bool)> = background.iter().map(|g| (g.clone(), true)).collect();
    let off = inputs.len();
    inputs.extend(gens.iter().map(|g| (g.clone(), false)));
    let max = gens.iter().filter_map(|g| g.degree(twists)).max();
    let mut sel: Vec<usize> = match max {
        None => Vec::new(),
        Some(m) => buchberger(ring, twists, seed, &inputs, Some(m)).minimal_inputs.into_iter().map(|k| k - off).collect(),
    };
    sel.sort();
    sel
}

/// Generators of `{ v ∈ F : map(v) ∈ ⟨rels⟩ }`, the kernel of
/// `F → target / ⟨rels⟩`, as vectors of the source.
///
/// `seed` is part of the relations and must already be a Gröbner basis.
pub fn kernel_generators(ring: &PolyRing, map: &ModuleMap, seed: &[Vector], rels: &[Vector]) -> Vec<Vector> {
    let g = map.target.len();
    let n = map.source.len();
    if n == 0 {
        return Vec::new();
    }
    let mut twists = map.target.clone();
    twists.extend_from_slice(&map.source);
    let mut inputs: Vec<(Vector, bool)> = Vec::with_capacity(n + rels.len());
    for (j, col) in map.cols.iter().enumerate() {
        let e = Vector::unit(g + j, ring);
        inputs.push((col.add(&e, ring.order()), false));
    }
    for r in rels {
        inputs.push((r.clone(), false));
    }
    let run = buchberger(ring, &twists, seed, &inputs, None);
    run.gb
        .basis()
        .iter()
        .filter(|v| v.lead().is_some_and(|t| t.comp >= g))
        .map(|v| v.restrict(g..g + n))
        .collect()
}

/// Syzygies of the columns of `map` over the ambient polynomial ring, as a
/// map onto the kernel.
pub fn syzygy_basis(ring: &PolyRing, map: &ModuleMap) -> ModuleMap {
    let gens = kernel_generators(ring, map, &[], &[]);
    let keep = mingens(ring, &map.source, &gens, &[]);
    let cols: Vec<Vector> = keep.into_iter().map(|k| gens[k].clone()).collect();
    let degs = cols.iter().map(|v| v.degree(&map.source).unwrap() as i32).collect();
    ModuleMap::new(degs, map.source.clone(), cols)
}

/// A homogeneous ideal of a polynomial ring with a lazily computed reduced
/// Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
    reducer: OnceLock<ModuleGb>,
}

impl Ideal {
    pub fn new(ring: RingRef, gens: Vec<Poly>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens, gb: OnceLock::new(), reducer: OnceLock::new() }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }

    /// The reduced Gröbner basis, computed once.
    pub fn groebner_basis(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            let vs: Vec<Vector> = self.gens.iter().map(|g| Vector::from_poly(g, 0)).collect();
            let gb = module_gb(&self.ring, &[0], &vs).reduced();
            let mut out: Vec<Poly> = gb.basis().iter().map(|v| v.entry(0)).collect();
            out.sort_by(|a, b| self.ring.cmp(&a.leading().unwrap().0, &b.leading().unwrap().0));
            out
        })
    }

    fn reducer(&self) -> &ModuleGb {
        self.reducer.get_or_init(|| {
            let vs: Vec<Vector> = self.groebner_basis().iter().map(|g| Vector::from_poly(g, 0)).collect();
            ModuleGb::from_basis(&self.ring, &[0], &vs)
        })
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.reducer().reduce(&Vector::from_poly(f, 0)).entry(0)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True if the ideal contains a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(|g| g.leading().is_some_and(|t| t.0.is_one()))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis().iter().map(|g| g.leading().unwrap().0.clone()).collect()
    }
}

/// Checks Buchberger's criterion: every S-vector reduces to zero.
pub fn is_groebner_basis(ring: &PolyRing, twists: &[i32], basis: &[Vector]) -> bool {
    let gb = ModuleGb::from_basis(ring, twists, basis);
    for i in 0..gb.basis.len() {
        for j in i + 1..gb.basis.len() {
            if gb.leads[i].0 != gb.leads[j].0 {
                continue;
            }
            let lcm = gb.leads[i].1.lcm(&gb.leads[j].1, ring.weights());
            if !gb.reduce(&gb.s_vector(&Pair { i, j, lcm })).is_zero() {
                return false;
            }
        }
    }
    true
}
