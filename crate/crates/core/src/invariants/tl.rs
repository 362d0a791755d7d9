//! Temperley-Lieb evaluation of braid closures.
//!
//! A braid word is expanded letter by letter in the diagram algebra on
//! noncrossing perfect matchings of `2s` boundary points, then closed with
//! the Markov trace. The transfer runs over `i128` coefficients with
//! checked arithmetic and falls back to big integers if anything would
//! overflow, so results are always exact.

use super::laurent::LaurentPoly;
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Perfect matching on points `0..2s`: `0..s` are the top boundary left to
/// right, `s..2s` the bottom. Stored as a partner array.
type Matching = Vec<u8>;

pub(crate) struct TlTables {
    strands: usize,
    basis: Vec<Matching>,
    identity: usize,
    /// `e_action[k][m] = (m', closed_loops)` for composing basis diagram
    /// `m` with the cup-cap generator at strands `k, k+1` (0-based).
    e_action: Vec<Vec<(u32, u8)>>,
    /// Loop count of each basis diagram under the Markov closure.
    closure_loops: Vec<u8>,
}

impl TlTables {
    pub(crate) fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Enumerates noncrossing perfect matchings of `2s` points in circle
/// order (top row left to right, then bottom row right to left) via Dyck
/// words, remapped to top/bottom coordinates.
fn enumerate_basis(s: usize) -> Vec<Matching> {
    let n = 2 * s;
    // circle position -> point id
    let remap = |c: usize| -> u8 {
        if c < s {
            c as u8
        } else {
            (n - 1 - c + s) as u8
        }
    };
    let mut acc = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut partner = vec![0u8; n];
    fn rec(
        pos: usize,
        n: usize,
        open: usize,
        stack: &mut Vec<usize>,
        partner: &mut Vec<u8>,
        remap: &dyn Fn(usize) -> u8,
        acc: &mut Vec<Matching>,
    ) {
        if pos == n {
            acc.push(partner.clone());
            return;
        }
        let remaining = n - pos;
        if remaining > open {
            stack.push(pos);
            rec(pos + 1, n, open + 1, stack, partner, remap, acc);
            stack.pop();
        }
        if open > 0 {
            let q = stack.pop().unwrap();
            let (a, b) = (remap(q) as usize, remap(pos) as usize);
            partner[a] = b as u8;
            partner[b] = a as u8;
            rec(pos + 1, n, open - 1, stack, partner, remap, acc);
            stack.push(q);
        }
    }
    rec(0, n, 0, &mut stack, &mut partner, &remap, &mut acc);
    acc
}

fn compose_with_cupcap(m: &[u8], s: usize, k: usize) -> (Matching, u8) {
    let bk = (s + k) as u8;
    let bk1 = bk + 1;
    let pa = m[bk as usize];
    let pb = m[bk1 as usize];
    if pa == bk1 {
        // the diagram already capped these two bottom points: gluing the
        // generator's cup closes a circle
        (m.to_vec(), 1)
    } else {
        let mut out = m.to_vec();
        out[pa as usize] = pb;
        out[pb as usize] = pa;
        out[bk as usize] = bk1;
        out[bk1 as usize] = bk;
        (out, 0)
    }
}

fn markov_loops(m: &[u8], s: usize) -> u8 {
    let n = 2 * s;
    let mut seen = vec![false; n];
    let mut loops = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            let q = m[p] as usize;
            seen[q] = true;
            p = if q < s { q + s } else { q - s };
        }
    }
    loops
}

fn build_tables(s: usize) -> TlTables {
    let basis = enumerate_basis(s);
    let index: HashMap<&[u8], u32> =
        basis.iter().enumerate().map(|(i, m)| (m.as_slice(), i as u32)).collect();
    let identity_matching: Matching = (0..2 * s as u8)
        .map(|p| if (p as usize) < s { p + s as u8 } else { p - s as u8 })
        .collect();
    let identity = index[identity_matching.as_slice()] as usize;
    let gens = s.saturating_sub(1);
    let mut e_action = Vec::with_capacity(gens);
    for k in 0..gens {
        let mut row = Vec::with_capacity(basis.len());
        for m in &basis {
            let (m2, loops) = compose_with_cupcap(m, s, k);
            row.push((index[m2.as_slice()], loops));
        }
        e_action.push(row);
    }
    let closure_loops = basis.iter().map(|m| markov_loops(m, s)).collect();
    TlTables { strands: s, basis, identity, e_action, closure_loops }
}

pub(crate) fn tables_for(strands: usize) -> Arc<TlTables> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<TlTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(strands).or_insert_with(|| Arc::new(build_tables(strands))).clone()
}

/// Transfer coefficients: a checked fast lane and an exact big lane.
pub(crate) trait TlCoeff: Clone + Default {
    fn one() -> Self;
    #[must_use]
    fn accumulate(&mut self, src: &Self, negate: bool) -> bool;
    fn add_into_bigint(dst: &mut BigInt, src: &Self, negate: bool);
}

impl TlCoeff for i128 {
    fn one() -> Self {
        1
    }
    fn accumulate(&mut self, src: &Self, negate: bool) -> bool {
        let r = if negate { self.checked_sub(*src) } else { self.checked_add(*src) };
        match r {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn add_into_bigint(dst: &mut BigInt, src: &Self, negate: bool) {
        if negate {
            *dst -= *src;
        } else {
            *dst += *src;
        }
    }
}

impl TlCoeff for BigInt {
    fn one() -> Self {
        BigInt::from(1)
    }
    fn accumulate(&mut self, src: &Self, negate: bool) -> bool {
        if negate {
            *self -= src;
        } else {
            *self += src;
        }
        true
    }
    fn add_into_bigint(dst: &mut BigInt, src: &Self, negate: bool) {
        if negate {
            *dst -= src;
        } else {
            *dst += src;
        }
    }
}

/// Dense Laurent coefficient vector: `coeffs[i]` is the coefficient of
/// `A^(min + i)`. Empty means zero.
pub(crate) struct DensePoly<C> {
    min: i64,
    coeffs: Vec<C>,
}

impl<C: TlCoeff> DensePoly<C> {
    fn zero() -> Self {
        DensePoly { min: 0, coeffs: Vec::new() }
    }

    fn one() -> Self {
        DensePoly { min: 0, coeffs: vec![C::one()] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn clear(&mut self) {
        self.coeffs.clear();
        self.min = 0;
    }

    /// Makes the index range cover `[lo, hi]` (inclusive exponents).
    fn reserve_range(&mut self, lo: i64, hi: i64) {
        if self.coeffs.is_empty() {
            self.min = lo;
            self.coeffs.resize((hi - lo + 1) as usize, C::default());
            return;
        }
        if lo < self.min {
            let pad = (self.min - lo) as usize;
            let mut fresh = Vec::with_capacity(self.coeffs.len() + pad);
            fresh.resize(pad, C::default());
            fresh.append(&mut self.coeffs);
            self.coeffs = fresh;
            self.min = lo;
        }
        let need = (hi - self.min + 1) as usize;
        if need > self.coeffs.len() {
            self.coeffs.resize(need, C::default());
        }
    }

    /// `self += (-1)^negate * A^shift * src`; false on overflow.
    #[must_use]
    fn add_shifted(&mut self, src: &DensePoly<C>, shift: i64, negate: bool) -> bool {
        if src.is_zero() {
            return true;
        }
        let lo = src.min + shift;
        let hi = src.min + src.coeffs.len() as i64 - 1 + shift;
        self.reserve_range(lo, hi);
        let base = (lo - self.min) as usize;
        for (i, c) in src.coeffs.iter().enumerate() {
            if !self.coeffs[base + i].accumulate(c, negate) {
                return false;
            }
        }
        true
    }

    fn add_into(&self, dst: &mut DensePoly<BigInt>) {
        if self.is_zero() {
            return;
        }
        let hi = self.min + self.coeffs.len() as i64 - 1;
        dst.reserve_range(self.min, hi);
        let base = (self.min - dst.min) as usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            C::add_into_bigint(&mut dst.coeffs[base + i], c, false);
        }
    }
}

impl DensePoly<BigInt> {
    fn into_laurent(self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (i, c) in self.coeffs.into_iter().enumerate() {
            p.add_term(self.min + i as i64, c);
        }
        p
    }
}

/// Runs the whole transfer in coefficient type `C`; `None` on overflow.
pub(crate) fn transfer<C: TlCoeff>(letters: &[i64], tables: &TlTables) -> Option<LaurentPoly> {
    let dim = tables.dimension();
    let mut cur: Vec<DensePoly<C>> = (0..dim).map(|_| DensePoly::zero()).collect();
    let mut nxt: Vec<DensePoly<C>> = (0..dim).map(|_| DensePoly::zero()).collect();
    cur[tables.identity] = DensePoly::one();

    for &m in letters {
        let k = m.unsigned_abs() as usize - 1;
        let sgn = m.signum();
        for idx in 0..dim {
            if cur[idx].is_zero() {
                continue;
            }
            // letter = A^sgn * identity + A^-sgn * e_k
            if !nxt[idx].add_shifted(&cur[idx], sgn, false) {
                return None;
            }
            let (target, loops) = tables.e_action[k][idx];
            let t = target as usize;
            if loops == 0 {
                if !nxt[t].add_shifted(&cur[idx], -sgn, false) {
                    return None;
                }
            } else {
                // times d = -A^2 - A^-2
                if !nxt[t].add_shifted(&cur[idx], -sgn + 2, true)
                    || !nxt[t].add_shifted(&cur[idx], -sgn - 2, true)
                {
                    return None;
                }
            }
        }
        std::mem::swap(&mut cur, &mut nxt);
        for p in &mut nxt {
            p.clear();
        }
    }

    // Markov closure: weight each basis diagram by d^(loops - 1),
    // grouping by loop count first
    let s = tables.strands;
    let mut by_loops: Vec<DensePoly<BigInt>> = (0..=s).map(|_| DensePoly::zero()).collect();
    for idx in 0..dim {
        if cur[idx].is_zero() {
            continue;
        }
        cur[idx].add_into(&mut by_loops[tables.closure_loops[idx] as usize]);
    }
    let d = LaurentPoly::loop_value();
    let mut acc = LaurentPoly::zero();
    let mut dpow = LaurentPoly::one();
    for loops in 1..=s {
        let part = std::mem::replace(&mut by_loops[loops], DensePoly::zero()).into_laurent();
        if !part.is_zero() {
            acc = &acc + &(&part * &dpow);
        }
        dpow = &dpow * &d;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for s in 1..=8 {
            assert_eq!(enumerate_basis(s).len(), catalan[s], "strands {s}");
        }
    }

    #[test]
    fn identity_closure_has_full_loops() {
        let t = build_tables(4);
        assert_eq!(t.closure_loops[t.identity], 4);
    }

    #[test]
    fn cupcap_on_identity() {
        let s = 3;
        let identity: Matching = vec![3, 4, 5, 0, 1, 2];
        let (m, loops) = compose_with_cupcap(&identity, s, 0);
        assert_eq!(loops, 0);
        // top 0-1 now capped through the generator's cup, bottom 0-1 capped
        assert_eq!(m, vec![1, 0, 5, 4, 3, 2]);
        // composing again with the same generator closes one loop
        let (m2, loops2) = compose_with_cupcap(&m, s, 0);
        assert_eq!(loops2, 1);
        assert_eq!(m2, m);
    }
}
