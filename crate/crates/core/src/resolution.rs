//! Minimal graded free resolutions, computed lazily and cached on the module.

use std::sync::Arc;

use crate::groebner::{kernel_generators, mingens_seeded};
use crate::module::FPModule;
use crate::ring::QRing;
use crate::vector::ModuleMap;

/// `F_n -> ... -> F_1 -> F_0`; `maps[i]` is `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: QRing,
    maps: Vec<ModuleMap>,
    f0: Vec<i32>,
    complete: bool,
}

impl Resolution {
    /// The resolution of `m` to at least `length` maps (or until it stops).
    pub fn of(m: &FPModule, length: usize) -> Arc<Resolution> {
        let cached = m.resolution.lock().unwrap().clone();
        if let Some(r) = &cached {
            if r.complete || r.maps.len() >= length {
                return r.clone();
            }
        }
        let mut res = match cached {
            Some(r) => (*r).clone(),
            None => {
                let min = m.minimize();
                let p = min.presentation();
                Resolution { ring: m.ring().clone(), f0: min.gens().to_vec(), complete: p.cols.is_empty(), maps: vec![p] }
            }
        };
        while !res.complete && res.maps.len() < length {
            res.extend();
        }
        let res = Arc::new(res);
        let mut slot = m.resolution.lock().unwrap();
        if slot.as_ref().is_none_or(|r| r.maps.len() < res.maps.len()) {
            *slot = Some(res.clone());
        }
        res
    }

    fn extend(&mut self) {
        let last = self.maps.last().unwrap();
        let pr = self.ring.poly_ring();
        let seed_t = self.ring.ideal_vectors(last.target.len(), 0);
        let ker = kernel_generators(pr, last, &seed_t, &[]);
        let seed_s = self.ring.ideal_vectors(last.source.len(), 0);
        let keep = mingens_seeded(pr, &last.source, &ker, &[], &seed_s);
        let cols: Vec<_> = keep.into_iter().map(|k| self.ring.reduce_vector(&ker[k])).collect();
        let degs = cols.iter().map(|c| c.degree(&last.source).unwrap() as i32).collect();
        let next = ModuleMap::new(degs, last.source.clone(), cols);
        self.complete = next.cols.is_empty();
        self.maps.push(next);
    }

    pub fn ring(&self) -> &QRing {
        &self.ring
    }

    /// Twists of `F_i` (empty past the end of a finite resolution).
    pub fn free_module(&self, i: usize) -> &[i32] {
        if i == 0 {
            &self.f0
        } else if i <= self.maps.len() {
            &self.maps[i - 1].source
        } else {
            &[]
        }
    }

    /// The differential `F_i -> F_{i-1}` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> Option<&ModuleMap> {
        if i == 0 {
            None
        } else {
            self.maps.get(i - 1)
        }
    }

    /// True once a zero map has been reached: the resolution is finite.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of maps computed.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Projective dimension when the resolution is complete.
    pub fn projective_dimension(&self) -> Option<usize> {
        if !self.complete {
            return None;
        }
        if self.f0.is_empty() {
            return Some(0);
        }
        Some((0..=self.maps.len()).rev().find(|&i| !self.free_module(i).is_empty()).unwrap_or(0))
    }

    /// Total Betti numbers `β_0..β_n` computed so far.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.maps.len()).map(|i| self.free_module(i).len()).collect()
    }

    /// Graded Betti numbers as `(i, degree, count)` triples.
    pub fn graded_betti(&self) -> Vec<(usize, i32, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.maps.len() {
            let mut t = self.free_module(i).to_vec();
            t.sort();
            let mut k = 0;
            while k < t.len() {
                let j = t[k..].iter().take_while(|&&d| d == t[k]).count();
                out.push((i, t[k], j));
                k += j;
            }
        }
        out
    }
}
