//! Hilbert series of graded modules presented by leading-term data.
//!
//! A series is stored as `q(t) / Π (1 - t^{w_i})` with `q` a Laurent
//! polynomial with integer coefficients and `w_i` the variable weights.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::groebner::ModuleGb;
use crate::poly::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSeries {
    /// Exponent of `coeffs[0]`.
    shift: i64,
    coeffs: Vec<i64>,
    weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn zero(weights: &[u32]) -> HilbertSeries {
        HilbertSeries { shift: 0, coeffs: Vec::new(), weights: weights.to_vec() }
    }

    /// Series of the free module `⊕ S(-twists[i])`.
    pub fn free(weights: &[u32], twists: &[i32]) -> HilbertSeries {
        let mut h = HilbertSeries::zero(weights);
        for &t in twists {
            h = h.add(&HilbertSeries::from_numerator(weights, t as i64, vec![1]));
        }
        h
    }

    pub fn from_numerator(weights: &[u32], shift: i64, coeffs: Vec<i64>) -> HilbertSeries {
        let mut h = HilbertSeries { shift, coeffs, weights: weights.to_vec() };
        h.normalize();
        h
    }

    /// Series of `F / M` where `gb` is a Gröbner basis of `M ⊆ F`.
    pub fn of_quotient(gb: &ModuleGb, weights: &[u32]) -> HilbertSeries {
        let n = weights.len();
        let mut total = HilbertSeries::zero(weights);
        for (c, &tw) in gb.twists().iter().enumerate() {
            let gens: Vec<Vec<u16>> =
                gb.leads().iter().filter(|(k, _)| *k == c).map(|(_, m)| m.exps().to_vec()).collect();
            let (shift, coeffs) = monomial_numerator(gens, weights, n);
            total = total.add(&HilbertSeries::from_numerator(weights, shift + tw as i64, coeffs));
        }
        total
    }

    /// Series of `S / J` for a monomial ideal `J`.
    pub fn of_monomial_ideal(gens: &[Monomial], weights: &[u32]) -> HilbertSeries {
        let g = gens.iter().map(|m| m.exps().to_vec()).collect();
        let (shift, coeffs) = monomial_numerator(g, weights, weights.len());
        HilbertSeries::from_numerator(weights, shift, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.shift = 0;
        } else {
            self.coeffs.drain(..lead);
            self.shift += lead as i64;
        }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// `(shift, coeffs)` of the numerator.
    pub fn numerator(&self) -> (i64, &[i64]) {
        (self.shift, &self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.combine(other, -1)
    }

    fn combine(&self, other: &HilbertSeries, sign: i64) -> HilbertSeries {
        assert_eq!(self.weights, other.weights, "series over different rings");
        if self.is_zero() {
            let mut o = other.clone();
            o.coeffs.iter_mut().for_each(|c| *c *= sign);
            return o;
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(other.shift);
        let hi = (self.shift + self.coeffs.len() as i64).max(other.shift + other.coeffs.len() as i64);
        let mut c = vec![0i64; (hi - lo) as usize];
        for (k, v) in self.coeffs.iter().enumerate() {
            c[(self.shift - lo) as usize + k] += v;
        }
        for (k, v) in other.coeffs.iter().enumerate() {
            c[(other.shift - lo) as usize + k] += sign * v;
        }
        HilbertSeries::from_numerator(&self.weights, lo, c)
    }

    /// Series of `M(a)`, i.e. degrees move down by `a`.
    pub fn twist(&self, a: i64) -> HilbertSeries {
        let mut h = self.clone();
        if !h.is_zero() {
            h.shift -= a;
        }
        h
    }

    /// Multiplies the numerator by a Laurent polynomial.
    pub fn mul_laurent(&self, shift: i64, coeffs: &[i64]) -> HilbertSeries {
        if self.is_zero() || coeffs.is_empty() {
            return HilbertSeries::zero(&self.weights);
        }
        let mut c = vec![0i64; self.coeffs.len() + coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        HilbertSeries::from_numerator(&self.weights, self.shift + shift, c)
    }

    /// Value of the Hilbert function in degree `d`.
    pub fn hf(&self, d: i64) -> i64 {
        self.hf_range(d, d)[0]
    }

    /// Values of the Hilbert function in degrees `lo..=hi`.
    pub fn hf_range(&self, lo: i64, hi: i64) -> Vec<i64> {
        if hi < lo {
            return Vec::new();
        }
        if self.is_zero() || hi < self.shift {
            return vec![0; (hi - lo + 1) as usize];
        }
        // Expansion of 1 / Π(1 - t^w) up to degree hi - shift.
        let top = (hi - self.shift) as usize;
        let mut p = vec![0i64; top + 1];
        p[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for k in w..=top {
                p[k] += p[k - w];
            }
        }
        (lo..=hi)
            .map(|d| {
                let e = d - self.shift;
                if e < 0 {
                    return 0;
                }
                self.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k as i64 <= e)
                    .map(|(k, c)| c * p[(e - k as i64) as usize])
                    .sum()
            })
            .collect()
    }

    /// Krull dimension: the pole order at `t = 1`; `-1` for the zero module.
    pub fn dimension(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        let mut q = self.coeffs.clone();
        let mut m = 0;
        while q.iter().sum::<i64>() == 0 {
            q = divide_by_one_minus_t(&q);
            m += 1;
        }
        self.weights.len() as i64 - m
    }

    /// Leading coefficient data: `e` such that the series behaves like
    /// `e / (1 - t)^dim` near `t = 1`.
    pub fn multiplicity(&self) -> Ratio<i64> {
        if self.is_zero() {
            return Ratio::from_integer(0);
        }
        let mut q = self.coeffs.clone();
        while q.iter().sum::<i64>() == 0 {
            q = divide_by_one_minus_t(&q);
        }
        let w: i64 = self.weights.iter().map(|&w| w as i64).product();
        Ratio::new(q.iter().sum::<i64>(), w)
    }

    /// Finite length modules: the total dimension, i.e. `q(1)` when the
    /// numerator absorbs the whole denominator.
    pub fn length(&self) -> Option<i64> {
        if self.dimension() > 0 {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        let mut total = 0;
        let mut d = self.shift;
        let mut remaining = self.top_degree_bound();
        while remaining >= 0 {
            total += self.hf(d);
            d += 1;
            remaining -= 1;
        }
        Some(total)
    }

    fn top_degree_bound(&self) -> i64 {
        self.coeffs.len() as i64
    }

    /// Lowest and highest degree with nonzero value, for finite length series.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.is_zero() || self.dimension() > 0 {
            return None;
        }
        let vals = self.hf_range(self.shift, self.shift + self.top_degree_bound());
        let lo = vals.iter().position(|&v| v != 0)?;
        let hi = vals.iter().rposition(|&v| v != 0)?;
        Some((self.shift + lo as i64, self.shift + hi as i64))
    }

    /// Lowest degree that can be nonzero.
    pub fn initial_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.shift)
        }
    }
}

fn divide_by_one_minus_t(q: &[i64]) -> Vec<i64> {
    // q = (1 - t) r, r_k = q_0 + ... + q_k.
    let mut r = Vec::with_capacity(q.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &q[..q.len() - 1] {
        acc += c;
        r.push(acc);
    }
    r
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "(")?;
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.shift + k as i64;
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if !first {
                write!(f, " ")?;
            }
            let a = c.abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{a}*t")?,
                _ => write!(f, "{a}*t^{e}")?,
            }
            first = false;
        }
        write!(f, ")")?;
        for w in &self.weights {
            if *w == 1 {
                write!(f, "/(1 - t)")?;
            } else {
                write!(f, "/(1 - t^{w})")?;
            }
        }
        Ok(())
    }
}

fn degree_of(e: &[u16], weights: &[u32]) -> i64 {
    e.iter().zip(weights).map(|(&a, &w)| a as i64 * w as i64).sum()
}

fn minimalize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S / J` as `(shift, coeffs)`, with
/// `shift` always 0 here.
fn monomial_numerator(gens: Vec<Vec<u16>>, weights: &[u32], n: usize) -> (i64, Vec<i64>) {
    let gens = minimalize(gens);
    (0, numerator_rec(gens, weights, n))
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], s: usize) {
    if a.len() < b.len() + s {
        a.resize(b.len() + s, 0);
    }
    for (k, v) in b.iter().enumerate() {
        a[k + s] += v;
    }
}

fn numerator_rec(gens: Vec<Vec<u16>>, weights: &[u32], n: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Vec::new();
    }
    // Pairwise coprime generators: a regular sequence of monomials.
    let mut used = vec![false; n];
    let mut coprime = true;
    'outer: for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                if used[i] {
                    coprime = false;
                    break 'outer;
                }
                used[i] = true;
            }
        }
    }
    if coprime {
        let mut q = vec![1i64];
        for g in &gens {
            let d = degree_of(g, weights) as usize;
            let mut f = vec![0i64; d + 1];
            f[0] = 1;
            f[d] -= 1;
            q = poly_mul(&q, &f);
        }
        return q;
    }
    // Pivot on the variable occurring in most generators.
    let mut counts = vec![0usize; n];
    for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let x = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|g| g[x]).filter(|&e| e > 0).collect();
    exps.sort();
    let e = exps[(exps.len() - 1) / 2];
    let mut pivot = vec![0u16; n];
    pivot[x] = e;

    let mut with = gens.clone();
    with.push(pivot.clone());
    let a = numerator_rec(minimalize(with), weights, n);

    let colon: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[x] = h[x].saturating_sub(e);
            h
        })
        .collect();
    let b = numerator_rec(minimalize(colon), weights, n);

    let mut q = a;
    poly_add_shifted(&mut q, &b, degree_of(&pivot, weights) as usize);
    while q.last() == Some(&0) {
        q.pop();
    }
    q
}
