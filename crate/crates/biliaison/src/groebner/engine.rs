//! Homogeneous Buchberger for submodules of graded free modules over
//! `k[X,Y,Z,W,E]/(E²)`.
//!
//! A term `m·e_i` is packed into a `u128` whose integer order is the module
//! order: block (lower block wins), then the monomial, then the position
//! (lower index wins). Blocks give elimination orders for graph modules.

use std::collections::BTreeMap;

use crate::polyring::{Mon, Poly};
use crate::scalars::{add_mod, inv_mod, mul_mod, neg_mod, BaseRing};

pub type Key = u128;

#[inline]
pub fn make_key(block: u8, mon: Mon, pos: u32) -> Key {
    ((255 - block as u128) << 96) | ((mon.raw() as u128) << 32) | (u32::MAX - pos) as u128
}

#[inline]
pub fn key_mon(k: Key) -> Mon {
    Mon::from_raw((k >> 32) as u64)
}

#[inline]
pub fn key_pos(k: Key) -> u32 {
    u32::MAX - (k as u32)
}

#[inline]
pub fn key_block(k: Key) -> u8 {
    255 - ((k >> 96) as u8)
}

#[inline]
fn key_times(k: Key, m: Mon) -> Key {
    k + (((m.raw() - Mon::ONE.raw()) as u128) << 32)
}

/// An element of a graded free module, terms sorted decreasingly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    pub terms: Vec<(Key, u32)>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<Key> {
        self.terms.first().map(|t| t.0)
    }

    /// Normalizes arbitrary terms: sorts, merges, drops zeros and `E²`.
    pub fn from_terms(mut raw: Vec<(Key, u32)>, p: u32) -> Vector {
        raw.retain(|t| t.1 % p != 0 && key_mon(t.0).eps() < 2);
        raw.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Key, u32)> = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            let c = c % p;
            match terms.last_mut() {
                Some(last) if last.0 == k => last.1 = add_mod(last.1, c, p),
                _ => terms.push((k, c)),
            }
        }
        terms.retain(|t| t.1 != 0);
        Vector { terms }
    }

    /// `f·e_pos` in the given block.
    pub fn from_poly(f: &Poly, pos: u32, block: u8) -> Vector {
        Vector { terms: f.raw_terms().iter().map(|&(m, c)| (make_key(block, m, pos), c)).collect() }
    }

    /// Builds a block-0 vector from its components.
    pub fn from_components(comps: &[Poly]) -> Vector {
        let mut out = Vector::zero();
        let p = comps.first().map(|f| f.ring.p).unwrap_or(2);
        for (i, f) in comps.iter().enumerate() {
            out = out.add(&Vector::from_poly(f, i as u32, 0), p);
        }
        out
    }

    pub fn component(&self, pos: u32, ring: BaseRing) -> Poly {
        let raw = self.terms.iter().filter(|t| key_pos(t.0) == pos).map(|&(k, c)| (key_mon(k), c)).collect();
        Poly::from_raw(ring, raw)
    }

    pub fn components(&self, n: usize, ring: BaseRing) -> Vec<Poly> {
        let mut raw: Vec<Vec<(Mon, u32)>> = vec![Vec::new(); n];
        for &(k, c) in &self.terms {
            raw[key_pos(k) as usize].push((key_mon(k), c));
        }
        raw.into_iter().map(|r| Poly::from_raw(ring, r)).collect()
    }

    /// Re-encodes positions and blocks.
    pub fn remap(&self, f: impl Fn(u32) -> Option<(u32, u8)>, p: u32) -> Vector {
        let raw = self
            .terms
            .iter()
            .filter_map(|&(k, c)| f(key_pos(k)).map(|(np, nb)| (make_key(nb, key_mon(k), np), c)))
            .collect();
        Vector::from_terms(raw, p)
    }

    pub fn max_pos(&self) -> Option<u32> {
        self.terms.iter().map(|t| key_pos(t.0)).max()
    }

    pub fn scale(&self, c: u32, p: u32) -> Vector {
        let c = c % p;
        if c == 0 {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|&(k, x)| (k, mul_mod(x, c, p))).collect() }
    }

    pub fn neg(&self, p: u32) -> Vector {
        Vector { terms: self.terms.iter().map(|&(k, x)| (k, neg_mod(x, p))).collect() }
    }

    pub fn mul_mon(&self, m: Mon) -> Vector {
        let me = m.eps();
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| key_mon(t.0).eps() + me < 2)
                .map(|&(k, c)| (key_times(k, m), c))
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: &Poly) -> Vector {
        let p = f.ring.p;
        let mut out = Vector::zero();
        for &(m, c) in f.raw_terms() {
            out = out.add_scaled(self, c, m, p);
        }
        out
    }

    pub fn add(&self, o: &Vector, p: u32) -> Vector {
        self.add_scaled(o, 1, Mon::ONE, p)
    }

    pub fn sub(&self, o: &Vector, p: u32) -> Vector {
        self.add_scaled(o, p - 1, Mon::ONE, p)
    }

    /// `self + c·m·o`.
    pub fn add_scaled(&self, o: &Vector, c: u32, m: Mon, p: u32) -> Vector {
        let me = m.eps();
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let a = &self.terms;
        let mut i = 0;
        for &(k, x) in &o.terms {
            if key_mon(k).eps() + me >= 2 {
                continue;
            }
            let k = key_times(k, m);
            let x = mul_mod(x, c, p);
            while i < a.len() && a[i].0 > k {
                out.push(a[i]);
                i += 1;
            }
            if i < a.len() && a[i].0 == k {
                let s = add_mod(a[i].1, x, p);
                if s != 0 {
                    out.push((k, s));
                }
                i += 1;
            } else if x != 0 {
                out.push((k, x));
            }
        }
        out.extend_from_slice(&a[i..]);
        Vector { terms: out }
    }

    /// Restriction to the terms of one block.
    pub fn block_part(&self, block: u8) -> Vector {
        Vector { terms: self.terms.iter().copied().filter(|t| key_block(t.0) == block).collect() }
    }
}

/// Degree of a homogeneous vector given the generator degrees.
pub fn vdeg(v: &Vector, degs: &[i32]) -> Option<i32> {
    v.lead().map(|k| key_mon(k).deg() + degs[key_pos(k) as usize])
}

#[inline]
fn exps_divide(a: &[u8; 5], b: &[u8; 5]) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2] && a[3] <= b[3] && a[4] <= b[4]
}

/// An incrementally built Gröbner basis, completed degree by degree.
#[derive(Clone, Debug)]
pub struct Gb {
    pub p: u32,
    pub dual: bool,
    pub degs: Vec<i32>,
    pub blocks: Vec<u8>,
    pub elems: Vec<Vector>,
    lead_keys: Vec<Key>,
    lead_exps: Vec<[u8; 5]>,
    by_pos: Vec<Vec<usize>>,
    pairs: BTreeMap<i32, Vec<(usize, usize)>>,
    queue: BTreeMap<i32, Vec<Vector>>,
}

impl Gb {
    pub fn new(ring: BaseRing, degs: Vec<i32>, blocks: Vec<u8>) -> Gb {
        let n = degs.len();
        assert_eq!(blocks.len(), n);
        Gb {
            p: ring.p,
            dual: ring.is_dual(),
            degs,
            blocks,
            elems: Vec::new(),
            lead_keys: Vec::new(),
            lead_exps: Vec::new(),
            by_pos: vec![Vec::new(); n],
            pairs: BTreeMap::new(),
            queue: BTreeMap::new(),
        }
    }

    pub fn plain(ring: BaseRing, degs: Vec<i32>) -> Gb {
        let n = degs.len();
        Gb::new(ring, degs, vec![0; n])
    }

    pub fn deg(&self, v: &Vector) -> Option<i32> {
        vdeg(v, &self.degs)
    }

    pub fn push_input(&mut self, v: Vector) {
        if let Some(d) = self.deg(&v) {
            self.queue.entry(d).or_default().push(v);
        }
    }

    /// Full normal form.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let p = self.p;
        let mut v = v.clone();
        let mut i = 0;
        while i < v.terms.len() {
            let (k, c) = v.terms[i];
            let m = key_mon(k);
            let e = m.exps();
            let pos = key_pos(k) as usize;
            let mut hit = None;
            for &g in &self.by_pos[pos] {
                if exps_divide(&self.lead_exps[g], &e) {
                    hit = Some(g);
                    break;
                }
            }
            match hit {
                Some(g) => {
                    let q = key_mon(self.lead_keys[g]).quotient_of(m);
                    v = v.add_scaled(&self.elems[g], neg_mod(c, p), q, p);
                }
                None => i += 1,
            }
        }
        v
    }

    /// Inserts an already reduced nonzero vector.
    fn insert(&mut self, v: Vector) {
        let p = self.p;
        let lc = v.terms[0].1;
        let v = if lc == 1 { v } else { v.scale(inv_mod(lc, p), p) };
        let lk = v.terms[0].0;
        let lm = key_mon(lk);
        let pos = key_pos(lk) as usize;
        let h = self.elems.len();
        let vd = lm.deg() + self.degs[pos];

        // chain criterion on existing pairs
        let le = lm.exps();
        for list in self.pairs.values_mut() {
            list.retain(|&(i, j)| {
                if key_pos(self.lead_keys[i]) as usize != pos {
                    return true;
                }
                let mi = key_mon(self.lead_keys[i]);
                let mj = key_mon(self.lead_keys[j]);
                let l = mi.lcm(mj);
                if !exps_divide(&le, &l.exps()) {
                    return true;
                }
                l == mi.lcm(lm) || l == mj.lcm(lm)
            });
        }

        let mut cands: Vec<(Mon, usize)> =
            self.by_pos[pos].iter().map(|&i| (key_mon(self.lead_keys[i]).lcm(lm), i)).collect();
        cands.sort_unstable_by_key(|c| (c.0.deg(), c.0));
        let mut kept: Vec<(Mon, usize)> = Vec::new();
        for (l, i) in cands {
            if kept.iter().any(|(k, _)| k.divides(l)) {
                continue;
            }
            kept.push((l, i));
        }
        for (l, i) in kept {
            let d = l.deg() + self.degs[pos];
            self.pairs.entry(d).or_default().push((i, h));
        }

        if self.dual && lm.eps() == 1 {
            let ev = v.mul_mon(Mon::var(crate::polyring::EPS));
            if !ev.is_zero() {
                self.queue.entry(vd).or_default().push(ev);
            }
        }
        self.lead_keys.push(lk);
        self.lead_exps.push(le);
        self.by_pos[pos].push(h);
        self.elems.push(v);
    }

    fn spoly(&self, i: usize, j: usize) -> Vector {
        let (mi, mj) = (key_mon(self.lead_keys[i]), key_mon(self.lead_keys[j]));
        let l = mi.lcm(mj);
        let a = self.elems[i].mul_mon(mi.quotient_of(l));
        a.add_scaled(&self.elems[j], self.p - 1, mj.quotient_of(l), self.p)
    }

    fn next_degree(&self) -> Option<i32> {
        let a = self.pairs.iter().find(|(_, v)| !v.is_empty()).map(|(d, _)| *d);
        let b = self.queue.iter().find(|(_, v)| !v.is_empty()).map(|(d, _)| *d);
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Processes every pending pair and input of degree at most `d`.
    pub fn complete_to(&mut self, d: i32) {
        while let Some(nd) = self.next_degree() {
            if nd > d {
                break;
            }
            let item = self.queue.get_mut(&nd).and_then(|q| q.pop());
            let s = match item {
                Some(v) => v,
                None => {
                    let (i, j) = self.pairs.get_mut(&nd).unwrap().pop().unwrap();
                    self.spoly(i, j)
                }
            };
            let r = self.reduce(&s);
            if !r.is_zero() {
                self.insert(r);
            }
            self.pairs.retain(|_, v| !v.is_empty());
            self.queue.retain(|_, v| !v.is_empty());
        }
    }

    pub fn complete(&mut self) {
        self.complete_to(i32::MAX);
    }

    /// Reduces `v` against a basis complete in its degree; inserts it when
    /// it is new and reports whether it was.
    pub fn test_insert(&mut self, v: &Vector) -> bool {
        let Some(d) = self.deg(v) else { return false };
        self.complete_to(d);
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        self.insert(r);
        self.complete_to(d);
        true
    }

    pub fn leads(&self) -> impl Iterator<Item = Key> + '_ {
        self.lead_keys.iter().copied()
    }

    /// Indices of elements whose lead lies in the given block.
    pub fn in_block(&self, block: u8) -> Vec<usize> {
        (0..self.elems.len()).filter(|&i| key_block(self.lead_keys[i]) == block).collect()
    }

    /// Lead monomials per position, after discarding redundant ones.
    pub fn lead_monomials(&self, n: usize) -> Vec<Vec<Mon>> {
        let mut out: Vec<Vec<Mon>> = vec![Vec::new(); n];
        for &k in &self.lead_keys {
            out[key_pos(k) as usize].push(key_mon(k));
        }
        for list in out.iter_mut() {
            *list = minimize_monomials(list);
        }
        out
    }

    /// Interreduced, monic basis with redundant elements removed.
    pub fn reduced_elements(&self) -> Vec<Vector> {
        let n = self.degs.len();
        let mins = self.lead_monomials(n);
        let mut keep: Vec<usize> = Vec::new();
        for (i, &k) in self.lead_keys.iter().enumerate() {
            let m = key_mon(k);
            let pos = key_pos(k) as usize;
            if mins[pos].contains(&m) && !keep.iter().any(|&j| self.lead_keys[j] == k) {
                keep.push(i);
            }
        }
        let mut sub = Gb::new(BaseRing::field(self.p), self.degs.clone(), self.blocks.clone());
        sub.dual = self.dual;
        for &i in &keep {
            sub.lead_keys.push(self.lead_keys[i]);
            sub.lead_exps.push(self.lead_exps[i]);
            sub.by_pos[key_pos(self.lead_keys[i]) as usize].push(sub.elems.len());
            sub.elems.push(self.elems[i].clone());
        }
        let mut out = Vec::new();
        for idx in 0..sub.elems.len() {
            let v = &sub.elems[idx];
            let tail = Vector { terms: v.terms[1..].to_vec() };
            let mut r = sub.reduce(&tail);
            r.terms.insert(0, v.terms[0]);
            out.push(r);
        }
        out.sort_by(|a, b| b.terms[0].0.cmp(&a.terms[0].0));
        out
    }
}

pub fn minimize_monomials(list: &[Mon]) -> Vec<Mon> {
    let mut v: Vec<Mon> = list.to_vec();
    v.sort_unstable();
    v.dedup();
    let mut out: Vec<Mon> = Vec::new();
    // ascending order: a divisor always comes before its multiples
    for m in v {
        if !out.iter().any(|d| d.divides(m)) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::DEFAULT_PRIME;

    #[test]
    fn key_round_trip() {
        let m = Mon::new([1, 2, 0, 3, 1]);
        let k = make_key(1, m, 7);
        assert_eq!(key_mon(k), m);
        assert_eq!(key_pos(k), 7);
        assert_eq!(key_block(k), 1);
        let n = Mon::new([0, 1, 1, 0, 0]);
        assert_eq!(key_mon(key_times(k, n)), m.mul(n));
        assert!(make_key(0, Mon::ONE, 5) > make_key(1, Mon::new([9, 0, 0, 0, 0]), 0));
    }

    #[test]
    fn twisted_cubic_basis_is_its_generators() {
        let r = BaseRing::field(DEFAULT_PRIME);
        let gens: Vec<Poly> =
            ["X*Z-Y^2", "Y*W-Z^2", "X*W-Y*Z"].iter().map(|s| Poly::parse(r, s).unwrap()).collect();
        let mut gb = Gb::plain(r, vec![0]);
        for g in &gens {
            gb.push_input(Vector::from_poly(g, 0, 0));
        }
        gb.complete();
        assert_eq!(gb.reduced_elements().len(), 3);
        // every S-vector reduces to zero
        for i in 0..gb.elems.len() {
            for j in 0..i {
                assert!(gb.reduce(&gb.spoly(i, j)).is_zero());
            }
        }
    }

    #[test]
    fn dual_truncation_pairs() {
        // (E X + Y) forces E·Y into the ideal
        let d = BaseRing::dual(DEFAULT_PRIME);
        let f = Poly::parse(d, "e*X + Y").unwrap();
        let mut gb = Gb::plain(d, vec![0]);
        gb.push_input(Vector::from_poly(&f, 0, 0));
        gb.complete();
        let ey = Poly::parse(d, "e*Y").unwrap();
        assert!(gb.reduce(&Vector::from_poly(&ey, 0, 0)).is_zero());
    }
}
