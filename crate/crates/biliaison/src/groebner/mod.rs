//! Gröbner bases, homogeneous ideals, and the submodule toolkit (kernels,
//! lifts, minimal generators) that everything above builds on.

pub mod engine;
pub mod hilbert;

use std::sync::OnceLock;

pub use engine::{key_block, key_mon, key_pos, make_key, vdeg, Gb, Key, Vector};
pub use hilbert::HilbertSeries;

use crate::error::{Error, Result};
use crate::polyring::{Mon, Poly, EPS};
use crate::scalars::BaseRing;

/// Completed Gröbner basis of the submodule generated by `gens`.
pub fn gb_of(ring: BaseRing, degs: &[i32], gens: &[Vector]) -> Gb {
    let mut gb = Gb::plain(ring, degs.to_vec());
    for g in gens {
        gb.push_input(g.clone());
    }
    gb.complete();
    gb
}

/// A minimal homogeneous generating set (over `R_A`) chosen among `gens`.
pub fn minimal_generators(ring: BaseRing, degs: &[i32], gens: &[Vector]) -> Vec<Vector> {
    let mut by_deg: Vec<(i32, &Vector)> =
        gens.iter().filter(|v| !v.is_zero()).map(|v| (vdeg(v, degs).unwrap(), v)).collect();
    by_deg.sort_by_key(|x| x.0);
    let mut gb = Gb::plain(ring, degs.to_vec());
    let mut out = Vec::new();
    let mut i = 0;
    while i < by_deg.len() {
        let d = by_deg[i].0;
        let mut j = i;
        while j < by_deg.len() && by_deg[j].0 == d {
            j += 1;
        }
        gb.complete_to(d);
        if ring.is_dual() {
            // E·g lies in m·U, so it may be used freely before testing
            for &(_, v) in &by_deg[i..j] {
                let ev = v.mul_mon(Mon::var(EPS));
                if !ev.is_zero() {
                    gb.push_input(ev);
                }
            }
            gb.complete_to(d);
        }
        for &(_, v) in &by_deg[i..j] {
            if gb.test_insert(v) {
                out.push(v.clone());
            }
        }
        i = j;
    }
    out
}

/// Graph-module Gröbner basis of `φ: ⊕R(-src) → (⊕R(-tgt))/rels`, used for
/// kernels and for lifting through `φ`.
#[derive(Clone, Debug)]
pub struct Lifter {
    pub ring: BaseRing,
    pub src_degs: Vec<i32>,
    pub tgt_len: usize,
    gb: Gb,
}

impl Lifter {
    pub fn new(ring: BaseRing, src_degs: &[i32], cols: &[Vector], tgt_degs: &[i32], rels: &[Vector]) -> Lifter {
        let t = tgt_degs.len();
        let s = src_degs.len();
        let mut degs = tgt_degs.to_vec();
        degs.extend_from_slice(src_degs);
        let mut blocks = vec![0u8; t];
        blocks.extend(std::iter::repeat_n(1u8, s));
        let mut gb = Gb::new(ring, degs, blocks);
        let p = ring.p;
        for (j, c) in cols.iter().enumerate() {
            let unit = Vector::from_poly(&Poly::one(ring), (t + j) as u32, 1);
            gb.push_input(c.add(&unit, p));
        }
        for r in rels {
            gb.push_input(r.clone());
        }
        gb.complete();
        Lifter { ring, src_degs: src_degs.to_vec(), tgt_len: t, gb }
    }

    /// `u` with `φ(u) ≡ v` modulo the target relations.
    pub fn lift(&self, v: &Vector) -> Option<Vector> {
        let p = self.ring.p;
        let r = self.gb.reduce(v);
        if r.terms.iter().any(|t| key_block(t.0) == 0) {
            return None;
        }
        let t = self.tgt_len as u32;
        Some(r.remap(|pos| Some((pos - t, 0)), p).neg(p))
    }

    /// Gröbner generators of the kernel (not minimized).
    pub fn kernel_gb(&self) -> Vec<Vector> {
        let t = self.tgt_len as u32;
        let p = self.ring.p;
        self.gb.in_block(1).into_iter().map(|i| self.gb.elems[i].remap(|pos| Some((pos - t, 0)), p)).collect()
    }

    pub fn kernel(&self) -> Vec<Vector> {
        minimal_generators(self.ring, &self.src_degs, &self.kernel_gb())
    }
}

/// Minimal generators of the kernel of a map into a presented module.
pub fn kernel(ring: BaseRing, src_degs: &[i32], cols: &[Vector], tgt_degs: &[i32], rels: &[Vector]) -> Vec<Vector> {
    Lifter::new(ring, src_degs, cols, tgt_degs, rels).kernel()
}

/// Hilbert series (k-dimensions) of `⊕R(-degs)/U` from a completed basis.
pub fn quotient_series(gb: &Gb) -> HilbertSeries {
    let n = gb.degs.len();
    hilbert::module_series(&gb.degs, &gb.lead_monomials(n), gb.dual)
}

/// Homogeneous ideal of `R_A` with a lazily computed Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub ring: BaseRing,
    gens: Vec<Poly>,
    gb: OnceLock<Gb>,
}

impl PartialEq for Ideal {
    fn eq(&self, o: &Ideal) -> bool {
        self.ring == o.ring && self.same_as(o)
    }
}

impl Ideal {
    pub fn new(ring: BaseRing, gens: Vec<Poly>) -> Result<Ideal> {
        let mut kept = Vec::new();
        for g in gens {
            if g.ring != ring {
                return Err(Error::MixedBase);
            }
            if !g.is_homogeneous() {
                return Err(Error::Precondition(format!("generator {g} is not homogeneous")));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal { ring, gens: kept, gb: OnceLock::new() })
    }

    pub fn parse(ring: BaseRing, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn unit(ring: BaseRing) -> Ideal {
        Ideal::new(ring, vec![Poly::one(ring)]).unwrap()
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn gen_vectors(&self) -> Vec<Vector> {
        self.gens.iter().map(|g| Vector::from_poly(g, 0, 0)).collect()
    }

    pub fn gen_degrees(&self) -> Vec<i32> {
        self.gens.iter().map(|g| g.degree().unwrap()).collect()
    }

    /// Completed basis over `k[X,Y,Z,W,E]/(E²)`.
    pub fn gb(&self) -> &Gb {
        self.gb.get_or_init(|| gb_of(self.ring, &[0], &self.gen_vectors()))
    }

    /// Reduced Gröbner basis of the fiber ideal (grevlex).
    pub fn groebner_basis(&self) -> Vec<Poly> {
        let fib = self.fiber_ideal();
        let f = self.ring.fiber();
        fib.gb().reduced_elements().iter().map(|v| v.component(0, f)).collect()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.gb().reduce(&Vector::from_poly(f, 0, 0)).component(0, self.ring)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, j: &Ideal) -> bool {
        j.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, j: &Ideal) -> bool {
        self.contains_ideal(j) && j.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&Poly::one(self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Series of `R_A/I` counting `k`-dimensions.
    pub fn quotient_series(&self) -> HilbertSeries {
        quotient_series(self.gb())
    }

    /// `dim_k (R/I)_n` for `0 ≤ n ≤ n_max`, on the fiber ideal.
    pub fn hilbert_function(&self, n_max: i32) -> Vec<i64> {
        let hs = self.fiber_ideal().quotient_series();
        (0..=n_max).map(|n| hs.hf(n)).collect()
    }

    pub fn krull_dimension(&self) -> i32 {
        self.fiber_ideal().quotient_series().dimension()
    }

    /// The image of `I` in the fiber ring `R_k`.
    pub fn fiber_ideal(&self) -> Ideal {
        if !self.ring.is_dual() {
            return self.clone();
        }
        Ideal::new(self.ring.fiber(), self.gens.iter().map(|g| g.reduce_to_fiber()).collect()).unwrap()
    }

    /// The same generators viewed in `R_A` for the dual base.
    pub fn extend_to(&self, ring: BaseRing) -> Ideal {
        Ideal::new(ring, self.gens.iter().map(|g| g.change_ring(ring)).collect()).unwrap()
    }

    pub fn sum(&self, j: &Ideal) -> Result<Ideal> {
        if self.ring != j.ring {
            return Err(Error::MixedBase);
        }
        let mut g = self.gens.clone();
        g.extend(j.gens.iter().cloned());
        Ideal::new(self.ring, g)
    }

    pub fn mul_poly(&self, h: &Poly) -> Result<Ideal> {
        let g = self.gens.iter().map(|g| g.mul(h)).collect::<Result<Vec<_>>>()?;
        Ideal::new(self.ring, g)
    }

    pub fn minimal_generators(&self) -> Ideal {
        let mg = minimal_generators(self.ring, &[0], &self.gen_vectors());
        Ideal::new(self.ring, mg.iter().map(|v| v.component(0, self.ring)).collect()).unwrap()
    }

    /// Reduced basis elements as polynomials (base ring, not just fiber).
    pub fn basis_polys(&self) -> Vec<Poly> {
        self.gb().reduced_elements().iter().map(|v| v.component(0, self.ring)).collect()
    }

    /// `I : J = {f : f·J ⊆ I}`, as the kernel of `R → ⊕ (R/I)(deg f_k)`.
    pub fn quotient(&self, j: &Ideal) -> Result<Ideal> {
        if self.ring != j.ring {
            return Err(Error::MixedBase);
        }
        let ring = self.ring;
        if j.gens.is_empty() {
            return Ok(Ideal::unit(ring));
        }
        let tgt_degs: Vec<i32> = j.gens.iter().map(|f| -f.degree().unwrap()).collect();
        let col = Vector::from_components(&j.gens);
        let mut rels = Vec::new();
        for k in 0..j.gens.len() {
            for g in &self.gens {
                rels.push(Vector::from_poly(g, k as u32, 0));
            }
        }
        let ker = kernel(ring, &[0], &[col], &tgt_degs, &rels);
        Ideal::new(ring, ker.iter().map(|v| v.component(0, ring)).collect())
    }

    pub fn quotient_poly(&self, f: &Poly) -> Result<Ideal> {
        self.quotient(&Ideal::new(self.ring, vec![f.clone()])?)
    }

    pub fn irrelevant(ring: BaseRing) -> Ideal {
        Ideal::new(ring, (0..4).map(|i| Poly::var(ring, i)).collect()).unwrap()
    }

    pub fn is_saturated(&self) -> bool {
        let q = self.quotient(&Ideal::irrelevant(self.ring)).unwrap();
        q.quotient_series() == self.quotient_series()
    }

    /// `I : (X,Y,Z,W)^∞`, iterating single quotients until stable.
    pub fn saturate(&self) -> Ideal {
        let m = Ideal::irrelevant(self.ring);
        let mut cur = self.minimal_generators();
        loop {
            let next = cur.quotient(&m).unwrap().minimal_generators();
            if next.quotient_series() == cur.quotient_series() {
                return cur;
            }
            cur = next;
        }
    }

    /// `I ∩ J` from the graph of the diagonal in `R ⊕ R`.
    pub fn intersect(&self, j: &Ideal) -> Result<Ideal> {
        if self.ring != j.ring {
            return Err(Error::MixedBase);
        }
        let ring = self.ring;
        let p = ring.p;
        let mut gb = Gb::new(ring, vec![0, 0], vec![0, 1]);
        for u in &self.gens {
            gb.push_input(Vector::from_poly(u, 0, 0).add(&Vector::from_poly(u, 1, 1), p));
        }
        for v in &j.gens {
            gb.push_input(Vector::from_poly(v, 0, 0));
        }
        gb.complete();
        let gens: Vec<Vector> = gb.in_block(1).into_iter().map(|i| gb.elems[i].remap(|_| Some((0, 0)), p)).collect();
        let mg = minimal_generators(ring, &[0], &gens);
        Ideal::new(ring, mg.iter().map(|v| v.component(0, ring)).collect())
    }

    /// Basis of `I_n` inside the monomial basis of `(R_A)_n`, as `k`-rows.
    pub fn degree_piece_rank(&self, n: i32) -> i64 {
        let total = crate::polyring::graded_piece_dim(n as i64) as i64 * if self.ring.is_dual() { 2 } else { 1 };
        total - self.quotient_series().hf(n)
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::DEFAULT_PRIME;

    fn k() -> BaseRing {
        BaseRing::field(DEFAULT_PRIME)
    }

    fn id(g: &[&str]) -> Ideal {
        Ideal::parse(k(), g).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let gb = id(&["X", "X+Y"]).groebner_basis();
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&Poly::parse(k(), "X").unwrap()));
        assert!(gb.contains(&Poly::parse(k(), "Y").unwrap()));
        assert!(id(&[]).groebner_basis().is_empty());
        let cubic = id(&["XZ-Y^2", "YW-Z^2", "XW-YZ"]);
        assert_eq!(cubic.groebner_basis().len(), 3);
    }

    #[test]
    fn normal_form_examples() {
        let x = Poly::parse(k(), "X").unwrap();
        assert!(id(&["X"]).normal_form(&x).is_zero());
        let cubic = id(&["XZ-Y^2", "YW-Z^2", "XW-YZ"]);
        let y2 = Poly::parse(k(), "Y^2").unwrap();
        assert_eq!(cubic.normal_form(&y2), Poly::parse(k(), "XZ").unwrap());
        assert_eq!(id(&[]).normal_form(&y2), y2);
    }

    #[test]
    fn quotient_examples() {
        let q = id(&["X^2"]).quotient(&id(&["X"])).unwrap();
        assert!(q.same_as(&id(&["X"])));
        let ci = id(&["XZ-Y^2", "YW-Z^2"]);
        let cubic = id(&["XZ-Y^2", "YW-Z^2", "XW-YZ"]);
        assert!(ci.quotient(&cubic).unwrap().same_as(&id(&["Y", "Z"])));
        assert!(cubic.quotient(&Ideal::unit(k())).unwrap().same_as(&cubic));
    }

    #[test]
    fn saturation_examples() {
        assert!(id(&["X^2", "XY", "XZ", "XW"]).saturate().same_as(&id(&["X"])));
        let cubic = id(&["XZ-Y^2", "YW-Z^2", "XW-YZ"]);
        assert!(cubic.saturate().same_as(&cubic));
        assert!(cubic.is_saturated());
        let m2 = id(&["X^2", "XY", "XZ", "XW", "Y^2", "YZ", "YW", "Z^2", "ZW", "W^2"]);
        assert!(m2.saturate().is_unit());
    }

    #[test]
    fn hilbert_and_dimension() {
        let cubic = id(&["XZ-Y^2", "YW-Z^2", "XW-YZ"]);
        assert_eq!(cubic.hilbert_function(4), vec![1, 4, 7, 10, 13]);
        let skew = id(&["XZ", "XW", "YZ", "YW"]);
        assert_eq!(skew.hilbert_function(4), vec![1, 4, 6, 8, 10]);
        assert_eq!(id(&[]).hilbert_function(3), vec![1, 4, 10, 20]);
        assert_eq!(id(&[]).krull_dimension(), 4);
        assert_eq!(id(&["X", "Y", "Z", "W"]).krull_dimension(), 0);
        assert_eq!(cubic.krull_dimension(), 2);
    }

    #[test]
    fn intersection_examples() {
        let a = id(&["X", "Y"]);
        let b = id(&["Z", "W"]);
        let c = a.intersect(&b).unwrap();
        assert!(c.same_as(&id(&["XZ", "XW", "YZ", "YW"])));
        assert!(a.intersect(&Ideal::unit(k())).unwrap().same_as(&a));
        assert!(a.intersect(&a).unwrap().same_as(&a));
    }

    #[test]
    fn dual_number_flatness_counts() {
        let d = BaseRing::dual(DEFAULT_PRIME);
        let bad = Ideal::parse(d, &["e*X"]).unwrap();
        assert_eq!(bad.quotient_series().hf(1), 7);
        let good = Ideal::parse(d, &["X + e*Y"]).unwrap();
        assert_eq!(good.quotient_series().hf(1), 6);
        assert_eq!(good.fiber_ideal().quotient_series().hf(1), 3);
    }
}
