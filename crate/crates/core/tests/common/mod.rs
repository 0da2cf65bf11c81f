//! Brute-force oracle: dense linear algebra over the coefficient field, one
//! degree at a time. The oracle side never runs the Gröbner engine; engine
//! objects are only read for their polynomial entries.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use linkage::field::{Field, Scalar};
use linkage::functors::{ext, tor};
use linkage::module::FPModule;
use linkage::parse::{parse_module, parse_ring};
use linkage::poly::Poly;
use linkage::ring::QRing;
use linkage::semidual::canonical_module;
use linkage::vector::{ModuleMap, Vector};

pub type El = BigRational;
pub type Mono = Vec<u32>;
pub type OPoly = Vec<(Mono, El)>;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The coefficient field; prime field elements are integers in `[0, p)`.
#[derive(Clone, Copy, Debug)]
pub struct K(pub Option<u64>);

impl K {
    pub fn of(f: Field) -> K {
        match f {
            Field::Rationals => K(None),
            Field::Prime(p) => K(Some(p as u64)),
        }
    }

    fn norm(&self, a: El) -> El {
        match self.0 {
            None => a,
            Some(p) => {
                let p = BigInt::from(p);
                let n = a.to_integer();
                El::from_integer(((n % &p) + &p) % &p)
            }
        }
    }

    pub fn add(&self, a: &El, b: &El) -> El {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &El, b: &El) -> El {
        self.norm(a - b)
    }

    pub fn mul(&self, a: &El, b: &El) -> El {
        self.norm(a * b)
    }

    pub fn inv(&self, a: &El) -> El {
        match self.0 {
            None => a.recip(),
            Some(p) => {
                let p = BigInt::from(p);
                El::from_integer(a.to_integer().modpow(&(&p - 2), &p))
            }
        }
    }

    pub fn scalar(&self, s: &Scalar) -> El {
        let (n, d) = s.parts();
        self.norm(El::new(n, d))
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(k: K, rows: &mut Vec<Vec<El>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = k.mul(&f, &rows[r][j]);
                    rows[i][j] = k.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(k: K, vecs: &[Vec<El>]) -> usize {
    let mut rows = vecs.to_vec();
    rref(k, &mut rows).len()
}

/// Basis of `{ c : Σ c_i images[i] = 0 }`.
pub fn kernel(k: K, images: &[Vec<El>], tdim: usize) -> Vec<Vec<El>> {
    let n = images.len();
    let mut rows: Vec<Vec<El>> = (0..tdim).map(|j| images.iter().map(|v| v[j].clone()).collect()).collect();
    if rows.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let pivots = rref(k, &mut rows);
    let mut out = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![El::zero(); n];
        v[f] = El::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = k.sub(&El::zero(), &rows[r][f]);
        }
        out.push(v);
    }
    out
}

pub fn unit(n: usize, i: usize) -> Vec<El> {
    let mut v = vec![El::zero(); n];
    v[i] = El::one();
    v
}

/// `V / W` for a subspace `W` of `k^n`.
#[derive(Clone, Debug)]
pub struct Quot {
    pub n: usize,
    rows: Vec<Vec<El>>,
    pivots: Vec<usize>,
    pub free: Vec<usize>,
}

impl Quot {
    pub fn new(k: K, n: usize, span: Vec<Vec<El>>) -> Quot {
        let mut rows = span;
        let pivots = rref(k, &mut rows);
        let free = (0..n).filter(|c| !pivots.contains(c)).collect();
        Quot { n, rows, pivots, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn subspace(&self) -> &[Vec<El>] {
        &self.rows
    }

    fn reduce_full(&self, k: K, mut v: Vec<El>) -> Vec<El> {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.n {
                    if !r[j].is_zero() {
                        v[j] = k.sub(&v[j], &k.mul(&f, &r[j]));
                    }
                }
            }
        }
        v
    }

    /// Coordinates of the class of `v` in the basis indexed by `free`.
    pub fn reduce(&self, k: K, v: Vec<El>) -> Vec<El> {
        let v = self.reduce_full(k, v);
        self.free.iter().map(|&j| v[j].clone()).collect()
    }

    pub fn lift(&self, coords: &[El]) -> Vec<El> {
        let mut v = vec![El::zero(); self.n];
        for (c, &j) in coords.iter().zip(&self.free) {
            v[j] = c.clone();
        }
        v
    }
}

fn monos_of_degree(weights: &[u32], d: i64) -> Vec<Mono> {
    fn go(w: &[u32], d: i64, prefix: &mut Mono, out: &mut Vec<Mono>) {
        if w.is_empty() {
            if d == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * w[0] as i64 <= d {
            prefix.push(e);
            go(&w[1..], d - e as i64 * w[0] as i64, prefix, out);
            prefix.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        go(weights, d, &mut Vec::new(), &mut out);
    }
    out
}

struct Piece {
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    quot: Quot,
}

/// `A = S / I` degree by degree, with `I` spanned by monomial multiples of its
/// generators.
pub struct Alg {
    pub k: K,
    pub weights: Vec<u32>,
    rels: Vec<OPoly>,
    cache: RefCell<HashMap<i64, Rc<Piece>>>,
}

pub fn opoly(k: K, p: &Poly) -> OPoly {
    p.terms().iter().map(|(m, c)| (m.exps().iter().map(|&e| e as u32).collect(), k.scalar(c))).collect()
}

impl Alg {
    pub fn new(k: K, weights: Vec<u32>, rels: Vec<OPoly>) -> Rc<Alg> {
        Rc::new(Alg { k, weights, rels, cache: RefCell::new(HashMap::new()) })
    }

    pub fn of(r: &QRing) -> Rc<Alg> {
        let k = K::of(r.field());
        Alg::new(k, r.weights().to_vec(), r.ideal().gens().iter().map(|p| opoly(k, p)).collect())
    }

    pub fn mdeg(&self, m: &Mono) -> i64 {
        m.iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w as i64).sum()
    }

    fn piece(&self, d: i64) -> Rc<Piece> {
        if let Some(p) = self.cache.borrow().get(&d) {
            return p.clone();
        }
        let monos = monos_of_degree(&self.weights, d);
        let index: HashMap<Mono, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Vec::new();
        for g in self.rels.iter().filter(|g| !g.is_empty()) {
            let e = self.mdeg(&g[0].0);
            for m in monos_of_degree(&self.weights, d - e) {
                let mut v = vec![El::zero(); monos.len()];
                for (gm, c) in g {
                    let prod: Mono = gm.iter().zip(&m).map(|(a, b)| a + b).collect();
                    let j = index[&prod];
                    v[j] = self.k.add(&v[j], c);
                }
                span.push(v);
            }
        }
        let quot = Quot::new(self.k, monos.len(), span);
        let p = Rc::new(Piece { monos, index, quot });
        self.cache.borrow_mut().insert(d, p.clone());
        p
    }

    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.piece(d).quot.dim()
        }
    }

    pub fn basis_mono(&self, d: i64, i: usize) -> Mono {
        let p = self.piece(d);
        p.monos[p.quot.free[i]].clone()
    }

    /// `m · a` for `a ∈ A_d`.
    pub fn mul_mono(&self, m: &Mono, d: i64, a: &[El]) -> Vec<El> {
        let e = d + self.mdeg(m);
        let src = self.piece(d);
        let tgt = self.piece(e);
        let mut v = vec![El::zero(); tgt.monos.len()];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = &src.monos[src.quot.free[i]];
            let prod: Mono = b.iter().zip(m).map(|(x, y)| x + y).collect();
            let j = tgt.index[&prod];
            v[j] = self.k.add(&v[j], c);
        }
        tgt.quot.reduce(self.k, v)
    }

    /// Largest degree with `A_d ≠ 0`, for Artinian `A`.
    pub fn top(&self) -> i64 {
        let wmax = *self.weights.iter().max().unwrap_or(&1) as i64;
        let mut last = 0;
        let mut d = 0;
        while d <= last + wmax {
            if self.dim(d) > 0 {
                last = d;
            }
            d += 1;
        }
        last
    }

    pub fn var(&self, i: usize) -> OPoly {
        let mut m = vec![0; self.weights.len()];
        m[i] = 1;
        vec![(m, El::one())]
    }
}

/// A homogeneous matrix between graded free `A`-modules; `cols[k][j]` is the
/// entry from source generator `k` to target generator `j`.
#[derive(Clone, Debug)]
pub struct PMap {
    pub src: Vec<i32>,
    pub tgt: Vec<i32>,
    pub cols: Vec<Vec<OPoly>>,
}

pub fn columns(k: K, vs: &[Vector], rank: usize) -> Vec<Vec<OPoly>> {
    vs.iter()
        .map(|v| {
            let mut col = vec![OPoly::new(); rank];
            for (j, p) in v.entries() {
                col[j] = opoly(k, &p);
            }
            col
        })
        .collect()
}

pub fn pmap(k: K, f: &ModuleMap) -> PMap {
    PMap { src: f.source.clone(), tgt: f.target.clone(), cols: columns(k, &f.cols, f.target.len()) }
}

/// Degree of a nonzero column in a free module with the given twists.
fn col_degree(alg: &Alg, tw: &[i32], col: &[OPoly]) -> Option<i64> {
    col.iter().enumerate().find(|(_, p)| !p.is_empty()).map(|(j, p)| alg.mdeg(&p[0].0) + tw[j] as i64)
}

/// Graded free module `⊕ A(-tw_j)`.
pub struct Free<'a> {
    pub alg: &'a Alg,
    pub tw: &'a [i32],
}

impl Free<'_> {
    pub fn dim(&self, d: i64) -> usize {
        self.tw.iter().map(|&t| self.alg.dim(d - t as i64)).sum()
    }

    fn offsets(&self, d: i64) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.tw.len() + 1);
        let mut o = 0;
        for &t in self.tw {
            out.push(o);
            o += self.alg.dim(d - t as i64);
        }
        out.push(o);
        out
    }

    /// Image of `a · e_k` (for `a ∈ A_{d - s}`) under a column with source twist `s`.
    fn apply_col(&self, col: &[OPoly], s: i64, d: i64, a: &[El]) -> Vec<El> {
        let off = self.offsets(d);
        let mut v = vec![El::zero(); off[self.tw.len()]];
        for (j, p) in col.iter().enumerate() {
            for (m, c) in p {
                if self.alg.mdeg(m) != s - self.tw[j] as i64 {
                    continue;
                }
                let img = self.alg.mul_mono(m, d - s, a);
                for (i, x) in img.iter().enumerate() {
                    let t = self.alg.k.mul(c, x);
                    v[off[j] + i] = self.alg.k.add(&v[off[j] + i], &t);
                }
            }
        }
        v
    }

    /// `p · v` for `v` of degree `d` and `p` homogeneous of degree `e`.
    pub fn mul_poly(&self, p: &OPoly, e: i64, d: i64, v: &[El]) -> Vec<El> {
        let so = self.offsets(d);
        let to = self.offsets(d + e);
        let mut out = vec![El::zero(); to[self.tw.len()]];
        for (j, &t) in self.tw.iter().enumerate() {
            let block = &v[so[j]..so[j + 1]];
            if block.iter().all(|x| x.is_zero()) {
                continue;
            }
            for (m, c) in p.iter().filter(|(m, _)| self.alg.mdeg(m) == e) {
                let img = self.alg.mul_mono(m, d - t as i64, block);
                for (i, x) in img.iter().enumerate() {
                    let y = self.alg.k.mul(c, x);
                    out[to[j] + i] = self.alg.k.add(&out[to[j] + i], &y);
                }
            }
        }
        out
    }

    /// Polynomial entries of an element of degree `d`.
    pub fn to_col(&self, d: i64, v: &[El]) -> Vec<OPoly> {
        let off = self.offsets(d);
        self.tw
            .iter()
            .enumerate()
            .map(|(j, &t)| {
                (off[j]..off[j + 1])
                    .filter(|&i| !v[i].is_zero())
                    .map(|i| (self.alg.basis_mono(d - t as i64, i - off[j]), v[i].clone()))
                    .collect()
            })
            .collect()
    }
}

impl PMap {
    /// Images of the basis of `src_d` in `tgt_d`.
    pub fn images(&self, alg: &Alg, d: i64) -> Vec<Vec<El>> {
        let tgt = Free { alg, tw: &self.tgt };
        let mut out = Vec::new();
        for (k, &s) in self.src.iter().enumerate() {
            let n = alg.dim(d - s as i64);
            for i in 0..n {
                out.push(tgt.apply_col(&self.cols[k], s as i64, d, &unit(n, i)));
            }
        }
        out
    }

    pub fn rank(&self, alg: &Alg, d: i64) -> usize {
        rank(alg.k, &self.images(alg, d))
    }

    pub fn nullity(&self, alg: &Alg, d: i64) -> usize {
        Free { alg, tw: &self.src }.dim(d) - self.rank(alg, d)
    }
}

/// `coker(rels) = ⊕ A(-tw_j) / ⟨rels⟩`.
pub struct Md {
    pub alg: Rc<Alg>,
    pub tw: Vec<i32>,
    pub rels: Vec<Vec<OPoly>>,
    cache: RefCell<HashMap<i64, Rc<Quot>>>,
}

impl Md {
    pub fn new(alg: Rc<Alg>, tw: Vec<i32>, rels: Vec<Vec<OPoly>>) -> Md {
        Md { alg, tw, rels, cache: RefCell::new(HashMap::new()) }
    }

    pub fn of(alg: Rc<Alg>, m: &FPModule) -> Md {
        let rels = columns(alg.k, m.rels(), m.ngens());
        Md::new(alg, m.gens().to_vec(), rels)
    }

    pub fn free(&self) -> Free<'_> {
        Free { alg: &self.alg, tw: &self.tw }
    }

    /// Relations as a map from their own free module.
    pub fn presentation(&self) -> PMap {
        let mut src = Vec::new();
        let mut cols = Vec::new();
        for c in &self.rels {
            if let Some(d) = col_degree(&self.alg, &self.tw, c) {
                src.push(d as i32);
                cols.push(c.clone());
            }
        }
        PMap { src, tgt: self.tw.clone(), cols }
    }

    pub fn quot(&self, d: i64) -> Rc<Quot> {
        if let Some(q) = self.cache.borrow().get(&d) {
            return q.clone();
        }
        let span = self.presentation().images(&self.alg, d);
        let q = Rc::new(Quot::new(self.alg.k, self.free().dim(d), span));
        self.cache.borrow_mut().insert(d, q.clone());
        q
    }

    pub fn dim(&self, d: i64) -> usize {
        self.quot(d).dim()
    }

    pub fn hf(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).map(|d| self.dim(d) as i64).collect()
    }

    /// `p · x` for `x ∈ M_d` given in quotient coordinates.
    pub fn mul_poly(&self, p: &OPoly, e: i64, d: i64, x: &[El]) -> Vec<El> {
        let v = self.quot(d).lift(x);
        let w = self.free().mul_poly(p, e, d, &v);
        self.quot(d + e).reduce(self.alg.k, w)
    }

    /// Degrees outside which `M` vanishes, for Artinian `A`.
    pub fn span(&self) -> (i64, i64) {
        let lo = *self.tw.iter().min().unwrap_or(&0) as i64;
        let hi = *self.tw.iter().max().unwrap_or(&0) as i64 + self.alg.top();
        (lo, hi)
    }
}

/// A free resolution `F_len → … → F_0` of an Artinian module, built from
/// minimal generators of kernels computed by linear algebra.
pub struct Res {
    pub f0: Vec<i32>,
    pub maps: Vec<PMap>,
}

impl Res {
    pub fn twists(&self, i: usize) -> &[i32] {
        if i == 0 {
            &self.f0
        } else {
            &self.maps[i - 1].src
        }
    }
}

fn top_of(tw: &[i32], alg: &Alg) -> (i64, i64) {
    let lo = *tw.iter().min().unwrap_or(&0) as i64;
    let hi = *tw.iter().max().unwrap_or(&0) as i64 + alg.top();
    (lo, hi)
}

/// Minimal generators of the graded subspace family `sub(d)` of a free module.
fn min_gens(alg: &Alg, tw: &[i32], lo: i64, hi: i64, sub: &dyn Fn(i64) -> Vec<Vec<El>>) -> PMap {
    let k = alg.k;
    let free = Free { alg, tw };
    let mut src = Vec::new();
    let mut cols = Vec::new();
    let mut subs: BTreeMap<i64, Vec<Vec<El>>> = BTreeMap::new();
    for d in lo..=hi {
        let kd = sub(d);
        let mut span = Vec::new();
        for (i, &w) in alg.weights.iter().enumerate() {
            if let Some(prev) = subs.get(&(d - w as i64)) {
                for v in prev {
                    span.push(free.mul_poly(&alg.var(i), w as i64, d - w as i64, v));
                }
            }
        }
        let mut r = rank(k, &span);
        for v in &kd {
            span.push(v.clone());
            let r2 = rank(k, &span);
            if r2 > r {
                r = r2;
                src.push(d as i32);
                cols.push(free.to_col(d, v));
            } else {
                span.pop();
            }
        }
        subs.insert(d, kd);
    }
    PMap { src, tgt: tw.to_vec(), cols }
}

pub fn resolve(m: &Md, len: usize) -> Res {
    let alg = &*m.alg;
    let (lo, hi) = m.span();
    let first = min_gens(alg, &m.tw, lo, hi, &|d| m.quot(d).subspace().to_vec());
    let mut maps = vec![first];
    while maps.len() < len {
        let last = maps.last().unwrap();
        if last.src.is_empty() {
            break;
        }
        let (lo, hi) = top_of(&last.src, alg);
        let next = min_gens(alg, &last.src, lo, hi, &|d| kernel(alg.k, &last.images(alg, d), Free { alg, tw: &last.tgt }.dim(d)));
        maps.push(next);
    }
    while maps.len() < len {
        let src = maps.last().unwrap().src.clone();
        maps.push(PMap { src: vec![], tgt: src, cols: vec![] });
    }
    Res { f0: m.tw.clone(), maps }
}

/// Matrix of `Hom(∂, N)_d : Hom(F, N)_d → Hom(G, N)_d` for `∂ : G → F`.
fn hom_images(f: &PMap, n: &Md, d: i64) -> (Vec<Vec<El>>, usize) {
    let tdims: Vec<usize> = f.src.iter().map(|&t| n.dim(d + t as i64)).collect();
    let toff: Vec<usize> = tdims.iter().scan(0, |o, &x| { let r = *o; *o += x; Some(r) }).collect();
    let tdim: usize = tdims.iter().sum();
    let mut out = Vec::new();
    for (k, &s) in f.tgt.iter().enumerate() {
        let nd = n.dim(d + s as i64);
        for i in 0..nd {
            let phi = unit(nd, i);
            let mut v = vec![El::zero(); tdim];
            for (l, &t) in f.src.iter().enumerate() {
                let p = &f.cols[l][k];
                if p.is_empty() {
                    continue;
                }
                let img = n.mul_poly(p, (t - s) as i64, d + s as i64, &phi);
                for (q, x) in img.into_iter().enumerate() {
                    v[toff[l] + q] = x;
                }
            }
            out.push(v);
        }
    }
    (out, tdim)
}

/// Matrix of `(∂ ⊗ N)_d : (G ⊗ N)_d → (F ⊗ N)_d` for `∂ : G → F`.
fn tensor_images(f: &PMap, n: &Md, d: i64) -> (Vec<Vec<El>>, usize) {
    let tdims: Vec<usize> = f.tgt.iter().map(|&t| n.dim(d - t as i64)).collect();
    let toff: Vec<usize> = tdims.iter().scan(0, |o, &x| { let r = *o; *o += x; Some(r) }).collect();
    let tdim: usize = tdims.iter().sum();
    let mut out = Vec::new();
    for (k, &s) in f.src.iter().enumerate() {
        let nd = n.dim(d - s as i64);
        for i in 0..nd {
            let x = unit(nd, i);
            let mut v = vec![El::zero(); tdim];
            for (l, &t) in f.tgt.iter().enumerate() {
                let p = &f.cols[k][l];
                if p.is_empty() {
                    continue;
                }
                let img = n.mul_poly(p, (s - t) as i64, d - s as i64, &x);
                for (q, y) in img.into_iter().enumerate() {
                    v[toff[l] + q] = n.alg.k.add(&v[toff[l] + q], &y);
                }
            }
            out.push(v);
        }
    }
    (out, tdim)
}

/// `dim Ext^i(M, N)_d`.
pub fn ext_dim(res: &Res, i: usize, n: &Md, d: i64) -> i64 {
    let k = n.alg.k;
    let out = &res.maps[i];
    let (imgs, _) = hom_images(out, n, d);
    let ker = imgs.len() - rank(k, &imgs);
    let im = if i == 0 {
        0
    } else {
        let (prev, _) = hom_images(&res.maps[i - 1], n, d);
        rank(k, &prev)
    };
    (ker - im) as i64
}

/// `dim Tor_i(M, N)_d`.
pub fn tor_dim(res: &Res, i: usize, n: &Md, d: i64) -> i64 {
    let k = n.alg.k;
    let ker = if i == 0 {
        res.f0.iter().map(|&t| n.dim(d - t as i64)).sum()
    } else {
        let (imgs, _) = tensor_images(&res.maps[i - 1], n, d);
        imgs.len() - rank(k, &imgs)
    };
    let (next, _) = tensor_images(&res.maps[i], n, d);
    (ker - rank(k, &next)) as i64
}

/// Degrees where `Ext^i(M, N)` can be nonzero.
pub fn ext_window(res: &Res, i: usize, n: &Md) -> (i64, i64) {
    let (nlo, nhi) = n.span();
    let tw = res.twists(i);
    let smin = *tw.iter().min().unwrap_or(&0) as i64;
    let smax = *tw.iter().max().unwrap_or(&0) as i64;
    (nlo - smax, nhi - smin)
}

pub fn tor_window(res: &Res, i: usize, n: &Md) -> (i64, i64) {
    let (nlo, nhi) = n.span();
    let tw = res.twists(i);
    let smin = *tw.iter().min().unwrap_or(&0) as i64;
    let smax = *tw.iter().max().unwrap_or(&0) as i64;
    (nlo + smin, nhi + smax)
}

/// `Hom_A(M, N)_d` through the first map of a presentation.
pub fn hom_dim(m: &Md, n: &Md, d: i64) -> i64 {
    let p = m.presentation();
    let (imgs, _) = hom_images(&p, n, d);
    (imgs.len() - rank(n.alg.k, &imgs)) as i64
}

/// Rank of `Hom(f, N)_d` for a presentation `f`, i.e. `dim (Ω_N Tr_N)_d`.
pub fn hom_map_rank(f: &PMap, n: &Md, d: i64) -> i64 {
    let (imgs, _) = hom_images(f, n, d);
    rank(n.alg.k, &imgs) as i64
}

pub const DEG: i64 = 8;

pub fn ring_file(name: &str) -> QRing {
    let src = std::fs::read_to_string(corpus_dir().join("rings").join(format!("{name}.ring"))).unwrap();
    parse_ring(&src).unwrap()
}

/// Every module file of the corpus that parses over `r`.
pub fn modules_over(r: &QRing) -> Vec<(String, FPModule)> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir().join("modules")).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .iter()
        .filter_map(|p| {
            let src = std::fs::read_to_string(p).ok()?;
            let (_, m) = parse_module(&src, r).ok()?;
            Some((p.file_stem().unwrap().to_string_lossy().into_owned(), m))
        })
        .collect()
}

pub fn hf(m: &FPModule, lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).map(|d| m.hilbert_series().hf(d)).collect()
}

/// Checks `ker ∂_i = im ∂_{i+1}` degreewise for the engine's resolution.
pub fn check_resolution(r: &QRing, name: &str, m: &FPModule, len: usize) {
    let alg = Alg::of(r);
    let k = alg.k;
    let raw = Md::of(alg.clone(), m);
    let lo = m.gens().iter().copied().min().unwrap_or(0) as i64 - 1;
    assert_eq!(raw.hf(lo, DEG), hf(m, lo, DEG), "{name}: Hilbert function");
    let res = m.resolution(len);
    let maps: Vec<PMap> = (1..=res.len()).map(|i| pmap(k, res.differential(i).unwrap())).collect();
    let f0 = Md::new(alg.clone(), res.free_module(0).to_vec(), maps[0].cols.clone());
    assert_eq!(f0.hf(lo, DEG), hf(m, lo, DEG), "{name}: cokernel of the first differential");
    for i in 1..maps.len() {
        for d in lo..=DEG {
            assert_eq!(maps[i - 1].nullity(&alg, d), maps[i].rank(&alg, d), "{name}: homology at F_{i} in degree {d}");
        }
    }
}

pub fn artinian() -> Vec<&'static str> {
    vec!["trunc3", "trunc4", "m2", "x2y2", "m2z"]
}

/// Second arguments: the ring, its residue field and its canonical module.
pub fn targets(r: &QRing, alg: &Rc<Alg>) -> Vec<(&'static str, FPModule, Md)> {
    let free = FPModule::free(r.clone(), vec![0]);
    let k = FPModule::residue_field(r.clone());
    let w = canonical_module(r).unwrap();
    [("R", free), ("k", k), ("omega", w)].into_iter().map(|(n, m)| (n, m.clone(), Md::of(alg.clone(), &m))).collect()
}

/// Compares engine Ext and Tor with the brute-force complexes on every
/// corpus module over the Artinian rings; returns (pairs, nonzero pieces).
pub fn ext_tor_agreement() -> (usize, usize) {
    let mut count = 0;
    let mut nonzero = 0;
    for ring in artinian() {
        let r = ring_file(ring);
        let alg = Alg::of(&r);
        let top = if r.nvars() == 1 { 3 } else { 2 };
        let ns = targets(&r, &alg);
        for (name, m) in modules_over(&r) {
            let md = Md::of(alg.clone(), &m);
            let res = resolve(&md, top + 1);
            for i in 0..=top {
                for (nname, n, nd) in &ns {
                    let e = ext(i, &m, n).unwrap();
                    let (lo, hi) = ext_window(&res, i, nd);
                    for d in lo - 2..=hi + 2 {
                        let want = ext_dim(&res, i, nd, d);
                        assert_eq!(e.hilbert_series().hf(d), want, "{ring}: Ext^{i}({name}, {nname}) in degree {d}");
                        nonzero += (want > 0) as usize;
                    }
                    let t = tor(i, &m, n).unwrap();
                    let (lo, hi) = tor_window(&res, i, nd);
                    for d in lo - 2..=hi + 2 {
                        let want = tor_dim(&res, i, nd, d);
                        assert_eq!(t.hilbert_series().hf(d), want, "{ring}: Tor_{i}({name}, {nname}) in degree {d}");
                        nonzero += (want > 0) as usize;
                    }
                    count += 1;
                }
            }
        }
    }
    (count, nonzero)
}


/// Checks resolutions of every corpus module over the rings with at most
/// three variables; returns the number of instances.
pub fn resolution_agreement() -> usize {
    let mut count = 0;
    for ring in ["trunc3", "trunc4", "m2", "x2y2", "m2z", "node", "double_line", "plane", "semigroup", "sg34"] {
        let r = ring_file(ring);
        assert!(r.nvars() <= 3);
        for (name, m) in modules_over(&r) {
            check_resolution(&r, &format!("{ring}/{name}"), &m, 3);
            count += 1;
        }
    }
    count
}

/// `dim λ(ω, k)_d` for `d = -8..=2` over `k[x]/(x^3)`, where `Hom(ω, k)` is
/// first confirmed to be `k(-2)`, presented by `x : R(-3) → R(-2)`.
pub fn truncated_line_lambda() -> Vec<i64> {
    let r = ring_file("trunc3");
    let alg = Alg::of(&r);
    let w = Md::of(alg.clone(), &canonical_module(&r).unwrap());
    let k = Md::of(alg.clone(), &FPModule::residue_field(r.clone()));
    let homs: Vec<i64> = (-4..=6).map(|d| hom_dim(&w, &k, d)).collect();
    assert_eq!(homs, vec![0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0]);
    let f = PMap { src: vec![3], tgt: vec![2], cols: vec![vec![alg.var(0)]] };
    (-8..=2).map(|d| hom_map_rank(&f, &w, d)).collect()
}
