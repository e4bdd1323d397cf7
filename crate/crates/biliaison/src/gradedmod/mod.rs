//! Finitely presented graded modules over `R_A` and graded maps between
//! free modules.
//!
//! Generator degrees are stored directly: a generator of degree `a` spans a
//! copy of `R_A(-a)`, so "twist `-a`" in the usual notation.

pub mod hom;
pub mod resolution;

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{gb_of, kernel, key_mon, key_pos, make_key, minimal_generators, quotient_series, vdeg, Gb, HilbertSeries, Ideal, Key, Vector};
use crate::linalg::Mat;
use crate::polyring::{monomials_of_degree, Mon, Poly, EPS};
use crate::scalars::{BaseRing, Scalar};

pub use hom::{hom_space, is_module_iso, strip_free_summands, IsoResult};
pub use resolution::{free_resolution, FreeResolution, TestModule};

/// A degree-0 map `⊕R(-src) → ⊕R(-tgt)`; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub ring: BaseRing,
    pub src: Vec<i32>,
    pub tgt: Vec<i32>,
    pub cols: Vec<Vector>,
}

pub fn unit_vector(ring: BaseRing, i: usize) -> Vector {
    Vector::from_poly(&Poly::one(ring), i as u32, 0)
}

impl GradedMap {
    pub fn new(ring: BaseRing, src: Vec<i32>, tgt: Vec<i32>, cols: Vec<Vector>) -> GradedMap {
        debug_assert_eq!(src.len(), cols.len());
        let m = GradedMap { ring, src, tgt, cols };
        debug_assert!(m.is_homogeneous(), "inhomogeneous graded map");
        m
    }

    pub fn zero(ring: BaseRing, src: Vec<i32>, tgt: Vec<i32>) -> GradedMap {
        let cols = vec![Vector::zero(); src.len()];
        GradedMap { ring, src, tgt, cols }
    }

    pub fn identity(ring: BaseRing, degs: Vec<i32>) -> GradedMap {
        let cols = (0..degs.len()).map(|i| unit_vector(ring, i)).collect();
        GradedMap { ring, src: degs.clone(), tgt: degs, cols }
    }

    /// Builds from a matrix of polynomials `entries[i][j]` (row = target).
    pub fn from_entries(ring: BaseRing, src: Vec<i32>, tgt: Vec<i32>, entries: &[Vec<Poly>]) -> GradedMap {
        let cols = (0..src.len())
            .map(|j| {
                let comps: Vec<Poly> = (0..tgt.len()).map(|i| entries[i][j].clone()).collect();
                if comps.is_empty() {
                    Vector::zero()
                } else {
                    Vector::from_components(&comps)
                }
            })
            .collect();
        GradedMap::new(ring, src, tgt, cols)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().zip(&self.src).all(|(c, &d)| {
            c.terms.iter().all(|&(k, _)| {
                let pos = key_pos(k) as usize;
                pos < self.tgt.len() && key_mon(k).deg() + self.tgt[pos] == d
            })
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        self.cols[j].component(i as u32, self.ring)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let p = self.ring.p;
        let mut out = Vector::zero();
        for &(k, c) in &v.terms {
            out = out.add_scaled(&self.cols[key_pos(k) as usize], c, key_mon(k), p);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap) -> GradedMap {
        let cols = inner.cols.iter().map(|c| self.apply(c)).collect();
        GradedMap { ring: self.ring, src: inner.src.clone(), tgt: self.tgt.clone(), cols }
    }

    /// The dual map into `R(shift)`: generator degrees become `-a - shift`.
    pub fn transpose(&self, shift: i32) -> GradedMap {
        let ring = self.ring;
        let p = ring.p;
        let mut cols = vec![Vector::zero(); self.tgt.len()];
        for (j, c) in self.cols.iter().enumerate() {
            for &(k, x) in &c.terms {
                let i = key_pos(k) as usize;
                let t = Vector { terms: vec![(make_key(0, key_mon(k), j as u32), x)] };
                cols[i] = cols[i].add(&t, p);
            }
        }
        GradedMap {
            ring,
            src: self.tgt.iter().map(|a| -a - shift).collect(),
            tgt: self.src.iter().map(|a| -a - shift).collect(),
            cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// `[self | o]` (same target).
    pub fn hstack(&self, o: &GradedMap) -> GradedMap {
        let mut src = self.src.clone();
        src.extend_from_slice(&o.src);
        let mut cols = self.cols.clone();
        cols.extend(o.cols.iter().cloned());
        GradedMap { ring: self.ring, src, tgt: self.tgt.clone(), cols }
    }

    /// `[self; o]` (same source).
    pub fn vstack(&self, o: &GradedMap) -> GradedMap {
        let off = self.tgt.len() as u32;
        let p = self.ring.p;
        let mut tgt = self.tgt.clone();
        tgt.extend_from_slice(&o.tgt);
        let cols = self.cols.iter().zip(&o.cols).map(|(a, b)| a.add(&b.remap(|q| Some((q + off, 0)), p), p)).collect();
        GradedMap { ring: self.ring, src: self.src.clone(), tgt, cols }
    }

    pub fn direct_sum(&self, o: &GradedMap) -> GradedMap {
        let off = self.tgt.len() as u32;
        let p = self.ring.p;
        let mut tgt = self.tgt.clone();
        tgt.extend_from_slice(&o.tgt);
        let mut src = self.src.clone();
        src.extend_from_slice(&o.src);
        let mut cols = self.cols.clone();
        cols.extend(o.cols.iter().map(|c| c.remap(|q| Some((q + off, 0)), p)));
        GradedMap { ring: self.ring, src, tgt, cols }
    }

    pub fn neg(&self) -> GradedMap {
        let p = self.ring.p;
        GradedMap { cols: self.cols.iter().map(|c| c.neg(p)).collect(), ..self.clone() }
    }

    pub fn select_cols(&self, idx: &[usize]) -> GradedMap {
        GradedMap {
            ring: self.ring,
            src: idx.iter().map(|&j| self.src[j]).collect(),
            tgt: self.tgt.clone(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Keeps the listed target rows, renumbered in order.
    pub fn select_rows(&self, idx: &[usize]) -> GradedMap {
        let p = self.ring.p;
        let map: HashMap<u32, u32> = idx.iter().enumerate().map(|(n, &o)| (o as u32, n as u32)).collect();
        GradedMap {
            ring: self.ring,
            src: self.src.clone(),
            tgt: idx.iter().map(|&i| self.tgt[i]).collect(),
            cols: self.cols.iter().map(|c| c.remap(|q| map.get(&q).map(|&n| (n, 0)), p)).collect(),
        }
    }

    pub fn fiber(&self) -> GradedMap {
        let f = self.ring.fiber();
        let p = f.p;
        let cols = self
            .cols
            .iter()
            .map(|c| Vector::from_terms(c.terms.iter().copied().filter(|t| key_mon(t.0).eps() == 0).collect(), p))
            .collect();
        GradedMap { ring: f, src: self.src.clone(), tgt: self.tgt.clone(), cols }
    }

    pub fn with_ring(&self, ring: BaseRing) -> GradedMap {
        if ring.is_dual() || !self.ring.is_dual() {
            GradedMap { ring, ..self.clone() }
        } else {
            GradedMap { ring, ..self.fiber() }
        }
    }

    /// The cokernel module.
    pub fn coker(&self) -> GradedModule {
        GradedModule::new(self.ring, self.tgt.clone(), self.cols.clone())
    }

    pub fn entries_string(&self) -> Vec<Vec<String>> {
        (0..self.tgt.len()).map(|i| (0..self.src.len()).map(|j| self.entry(i, j).to_string()).collect()).collect()
    }
}

/// A `k`-basis of one graded piece of a presented module.
#[derive(Clone, Debug)]
pub struct PieceBasis {
    pub keys: Vec<Key>,
    index: HashMap<Key, usize>,
}

impl PieceBasis {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Coordinates of a vector already in normal form.
    pub fn coords(&self, v: &Vector) -> Vec<u32> {
        let mut out = vec![0u32; self.keys.len()];
        for &(k, c) in &v.terms {
            let i = *self.index.get(&k).expect("vector not in normal form or wrong degree");
            out[i] = c;
        }
        out
    }

    pub fn vector(&self, i: usize) -> Vector {
        Vector { terms: vec![(self.keys[i], 1)] }
    }

    pub fn combination(&self, x: &[u32], p: u32) -> Vector {
        let raw = self.keys.iter().zip(x).filter(|(_, &c)| c != 0).map(|(&k, &c)| (k, c)).collect();
        Vector::from_terms(raw, p)
    }
}

#[derive(Clone, Debug)]
pub struct GradedModule {
    pub ring: BaseRing,
    pub degs: Vec<i32>,
    pub rels: Vec<Vector>,
    gb: OnceLock<Gb>,
}

/// Result of minimalizing a presentation: new generator `i` is old
/// generator `kept[i]`, and old generator `k` equals `to_new[k]`.
#[derive(Clone, Debug)]
pub struct MinPres {
    pub module: GradedModule,
    pub kept: Vec<usize>,
    pub to_new: Vec<Vector>,
}

impl MinPres {
    /// Map from the old generators' free module onto the new one.
    pub fn old_to_new(&self, old_degs: &[i32]) -> GradedMap {
        GradedMap {
            ring: self.module.ring,
            src: old_degs.to_vec(),
            tgt: self.module.degs.clone(),
            cols: self.to_new.clone(),
        }
    }

    /// Map from the new generators into the old free module.
    pub fn new_to_old(&self, old_degs: &[i32]) -> GradedMap {
        let ring = self.module.ring;
        GradedMap {
            ring,
            src: self.module.degs.clone(),
            tgt: old_degs.to_vec(),
            cols: self.kept.iter().map(|&k| unit_vector(ring, k)).collect(),
        }
    }
}

fn substitute(v: &Vector, i: u32, sub: &Vector, ring: BaseRing) -> Vector {
    let c = v.component(i, ring);
    if c.is_zero() {
        return v.clone();
    }
    let rest = Vector { terms: v.terms.iter().copied().filter(|t| key_pos(t.0) != i).collect() };
    rest.add(&sub.mul_poly(&c), ring.p)
}

impl GradedModule {
    pub fn new(ring: BaseRing, degs: Vec<i32>, rels: Vec<Vector>) -> GradedModule {
        let rels: Vec<Vector> = rels.into_iter().filter(|r| !r.is_zero()).collect();
        GradedModule { ring, degs, rels, gb: OnceLock::new() }
    }

    pub fn free(ring: BaseRing, degs: Vec<i32>) -> GradedModule {
        GradedModule::new(ring, degs, Vec::new())
    }

    pub fn zero(ring: BaseRing) -> GradedModule {
        GradedModule::new(ring, Vec::new(), Vec::new())
    }

    /// `R_A/I`.
    pub fn quotient_ring(i: &Ideal) -> GradedModule {
        GradedModule::new(i.ring, vec![0], i.gen_vectors())
    }

    /// The ideal as a module: minimal generators modulo their syzygies.
    pub fn from_ideal(i: &Ideal) -> GradedModule {
        let ring = i.ring;
        let mg = i.minimal_generators();
        let degs = mg.gen_degrees();
        let cols = mg.gen_vectors();
        let syz = kernel(ring, &degs, &cols, &[0], &[]);
        GradedModule::new(ring, degs, syz)
    }

    /// `M(t)`: generator degrees drop by `t`.
    pub fn twist(&self, t: i32) -> GradedModule {
        GradedModule::new(self.ring, self.degs.iter().map(|d| d - t).collect(), self.rels.clone())
    }

    pub fn num_gens(&self) -> usize {
        self.degs.len()
    }

    pub fn relation_degrees(&self) -> Vec<i32> {
        self.rels.iter().map(|r| vdeg(r, &self.degs).unwrap()).collect()
    }

    /// Presentation matrix `⊕R(-rel degs) → ⊕R(-degs)`.
    pub fn presentation(&self) -> GradedMap {
        GradedMap { ring: self.ring, src: self.relation_degrees(), tgt: self.degs.clone(), cols: self.rels.clone() }
    }

    pub fn gb(&self) -> &Gb {
        self.gb.get_or_init(|| gb_of(self.ring, &self.degs, &self.rels))
    }

    pub fn series(&self) -> HilbertSeries {
        quotient_series(self.gb())
    }

    pub fn hf(&self, n: i32) -> i64 {
        self.series().hf(n)
    }

    pub fn is_zero(&self) -> bool {
        self.series().is_zero()
    }

    pub fn is_finite_length(&self) -> bool {
        self.series().dimension() <= 0
    }

    pub fn nf(&self, v: &Vector) -> Vector {
        self.gb().reduce(v)
    }

    pub fn is_zero_element(&self, v: &Vector) -> bool {
        self.nf(v).is_zero()
    }

    /// Standard monomials of degree `n`.
    pub fn basis(&self, n: i32) -> PieceBasis {
        let gb = self.gb();
        let leads = gb.lead_monomials(self.degs.len());
        let mut keys = Vec::new();
        for (pos, &d) in self.degs.iter().enumerate() {
            for m in monomials_of_degree(n - d) {
                let mut cands = vec![m];
                if self.ring.is_dual() {
                    cands.push(m.with_eps(1));
                }
                for c in cands {
                    if !leads[pos].iter().any(|l| l.divides(c)) {
                        keys.push(make_key(0, c, pos as u32));
                    }
                }
            }
        }
        keys.sort_unstable_by(|a, b| b.cmp(a));
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        PieceBasis { keys, index }
    }

    pub fn fiber(&self) -> GradedModule {
        let pres = self.presentation().fiber();
        GradedModule::new(pres.ring, self.degs.clone(), pres.cols)
    }

    pub fn with_ring(&self, ring: BaseRing) -> GradedModule {
        let pres = self.presentation().with_ring(ring);
        GradedModule::new(ring, self.degs.clone(), pres.cols)
    }

    pub fn direct_sum(&self, o: &GradedModule) -> GradedModule {
        let off = self.degs.len() as u32;
        let p = self.ring.p;
        let mut degs = self.degs.clone();
        degs.extend_from_slice(&o.degs);
        let mut rels = self.rels.clone();
        rels.extend(o.rels.iter().map(|r| r.remap(|q| Some((q + off, 0)), p)));
        GradedModule::new(self.ring, degs, rels)
    }

    /// Cancels unit entries, then keeps a minimal set of relations.
    pub fn minimal_presentation(&self) -> MinPres {
        let ring = self.ring;
        let p = ring.p;
        let n = self.degs.len();
        let mut rels: Vec<Vector> = self.rels.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut alive = vec![true; n];
        let mut expr: Vec<Vector> = (0..n).map(|k| unit_vector(ring, k)).collect();
        let one = Mon::ONE;
        let eps = Mon::ONE.with_eps(1);
        loop {
            let mut found = None;
            'scan: for (j, r) in rels.iter().enumerate() {
                for &(k, _) in &r.terms {
                    if key_mon(k) == one {
                        found = Some((j, key_pos(k)));
                        break 'scan;
                    }
                }
            }
            let Some((j, i)) = found else { break };
            let col = rels.swap_remove(j);
            let coef = |m: Mon| {
                col.terms.iter().find(|t| key_mon(t.0) == m && key_pos(t.0) == i).map(|t| t.1).unwrap_or(0)
            };
            let u = Scalar { a: coef(one), b: if ring.is_dual() { coef(eps) } else { 0 } };
            let uinv = ring.invert(u).expect("unit pivot");
            let ui = Vector::from_poly(&Poly::constant(ring, u), i, 0);
            let sub = col.sub(&ui, p).mul_poly(&Poly::constant(ring, ring.neg(uinv)));
            for r in rels.iter_mut() {
                *r = substitute(r, i, &sub, ring);
            }
            for e in expr.iter_mut() {
                *e = substitute(e, i, &sub, ring);
            }
            alive[i as usize] = false;
            rels.retain(|r| !r.is_zero());
        }
        let kept: Vec<usize> = (0..n).filter(|&k| alive[k]).collect();
        let mut newpos = vec![u32::MAX; n];
        for (ni, &k) in kept.iter().enumerate() {
            newpos[k] = ni as u32;
        }
        let remap = |v: &Vector| v.remap(|q| Some((newpos[q as usize], 0)), p);
        let degs: Vec<i32> = kept.iter().map(|&k| self.degs[k]).collect();
        let rels: Vec<Vector> = rels.iter().map(remap).collect();
        let rels = minimal_generators(ring, &degs, &rels);
        MinPres { module: GradedModule::new(ring, degs, rels), kept, to_new: expr.iter().map(remap).collect() }
    }

    pub fn minimized(&self) -> GradedModule {
        self.minimal_presentation().module
    }

    pub fn is_free(&self) -> bool {
        self.minimized().rels.is_empty()
    }

    /// Matrix of multiplication by a variable (`4` is `ε`) from degree `n`.
    pub fn action_matrix(&self, n: i32, var: usize) -> Mat {
        let src = self.basis(n);
        let step = if var == EPS { 0 } else { 1 };
        let tgt = self.basis(n + step);
        let m = Mon::var(var);
        let cols: Vec<Vec<u32>> = (0..src.len()).map(|i| tgt.coords(&self.nf(&src.vector(i).mul_mon(m)))).collect();
        Mat::from_cols(&cols, tgt.len())
    }

    /// Support `[lo, hi]` of a nonzero finite-length module.
    pub fn finite_support(&self) -> Result<Option<(i32, i32)>> {
        let hs = self.series();
        if hs.dimension() > 0 {
            return Err(Error::NotFiniteLength);
        }
        if hs.is_zero() {
            return Ok(None);
        }
        Ok(Some((hs.initial_degree().unwrap(), hs.top_degree().unwrap())))
    }

    /// `(M^∨)_n = Hom_k(M_{-n}, k)` with transposed actions.
    pub fn graded_dual_finite_length(&self) -> Result<GradedModule> {
        let ring = self.ring;
        let Some((lo, hi)) = self.finite_support()? else { return Ok(GradedModule::zero(ring)) };
        // index of dual basis element f_{n,b}
        let mut start = HashMap::new();
        let mut degs = Vec::new();
        let mut dims = HashMap::new();
        for n in lo..=hi {
            start.insert(n, degs.len());
            let d = self.basis(n).len();
            dims.insert(n, d);
            degs.extend(std::iter::repeat_n(-n, d));
        }
        let mut acts: HashMap<(i32, usize), Mat> = HashMap::new();
        let vars: Vec<usize> = if ring.is_dual() { vec![0, 1, 2, 3, EPS] } else { vec![0, 1, 2, 3] };
        for n in lo..=hi {
            for &v in &vars {
                acts.insert((n, v), self.action_matrix(n, v));
            }
        }
        let total = degs.len();
        let locate = |idx: usize| -> (i32, usize) {
            let n = -degs[idx];
            (n, idx - start[&n])
        };
        GradedModule::from_actions(ring, &degs.clone(), &vars, |var, idx| {
            let (n, b) = locate(idx);
            // (x·f)(m) = f(x·m): x·f_{n,b} lives over M_{n - step}
            let src_n = if var == EPS { n } else { n - 1 };
            if src_n < lo || src_n > hi {
                return Vec::new();
            }
            let a = &acts[&(src_n, var)];
            let base = start[&src_n];
            (0..dims[&src_n]).filter_map(|c| {
                let x = a.get(b, c);
                (x != 0).then_some((base + c, x))
            }).collect::<Vec<_>>()
        }, total)
    }

    /// Module with `k`-basis indexed by `basis_degs`, where `action(var, b)`
    /// lists the coordinates of `var·b`.
    pub fn from_actions(
        ring: BaseRing,
        basis_degs: &[i32],
        vars: &[usize],
        action: impl Fn(usize, usize) -> Vec<(usize, u32)>,
        total: usize,
    ) -> Result<GradedModule> {
        let p = ring.p;
        let mut rels = Vec::new();
        for b in 0..total {
            for &v in vars {
                let lhs = unit_vector(ring, b).mul_mon(Mon::var(v));
                let raw: Vec<(Key, u32)> = action(v, b).into_iter().map(|(c, x)| (make_key(0, Mon::ONE, c as u32), x)).collect();
                rels.push(lhs.sub(&Vector::from_terms(raw, p), p));
            }
        }
        Ok(GradedModule::new(ring, basis_degs.to_vec(), rels).minimized())
    }
}

/// `Σ_l c_l v_l` for a row vector `c` and a column vector `v`.
pub fn dot(c: &Vector, v: &Vector, ring: BaseRing) -> Poly {
    let mut out = Poly::zero(ring);
    for &(k, x) in &c.terms {
        let vi = v.component(key_pos(k), ring);
        if !vi.is_zero() {
            out = out.add(&vi.mul_mon(key_mon(k)).scale_field(x)).unwrap();
        }
    }
    out
}

/// The submodule of `⊕R(-degs)/rels` generated by `gens` (which must contain
/// nothing outside the ambient free module), presented on `gens`.
pub fn submodule_presentation(ring: BaseRing, degs: &[i32], gens: &[Vector], rels: &[Vector]) -> GradedModule {
    let p = ring.p;
    let gens: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return GradedModule::zero(ring);
    }
    let gdegs: Vec<i32> = gens.iter().map(|v| vdeg(v, degs).unwrap()).collect();
    let mut src = gdegs.clone();
    let mut cols = gens.clone();
    for r in rels {
        if !r.is_zero() {
            src.push(vdeg(r, degs).unwrap());
            cols.push(r.clone());
        }
    }
    let ng = gens.len() as u32;
    let syz = kernel(ring, &src, &cols, degs, &[]);
    let rels: Vec<Vector> = syz.iter().map(|v| v.remap(|q| (q < ng).then_some((q, 0)), p)).collect();
    GradedModule::new(ring, gdegs, rels)
}

/// `Hom(M, R)` together with its generators as rows on the generators of `M`
/// (elements of `⊕R(a_i)`).
pub fn dual_module(m: &GradedModule) -> (GradedModule, Vec<Vector>) {
    let ring = m.ring;
    let t = m.presentation().transpose(0);
    let gens = if m.rels.is_empty() {
        (0..m.degs.len()).map(|i| unit_vector(ring, i)).collect()
    } else {
        kernel(ring, &t.src, &t.cols, &t.tgt, &[])
    };
    let gens: Vec<Vector> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let module = submodule_presentation(ring, &t.src, &gens, &[]);
    (module, gens)
}

/// Kernel of a module map `g: A → B` given on generators: the module and the
/// inclusion of its generators into `F_A`.
pub fn module_kernel(a: &GradedModule, b: &GradedModule, g: &GradedMap) -> (GradedModule, Vec<Vector>) {
    let ring = a.ring;
    let gens = kernel(ring, &a.degs, &g.cols, &b.degs, &b.rels);
    let module = submodule_presentation(ring, &a.degs, &gens, &a.rels);
    let gens = gens.into_iter().filter(|v| !v.is_zero()).collect();
    (module, gens)
}

/// If `Hom(M, R)` is free of rank one on `λ` of degree `e`, returns the
/// images `λ(e_i)` and `e`, so that `M → I(e)` with `I = (λ(e_i))`. The map is
/// injective exactly when the Hilbert series match (checked here).
pub fn embed_rank_one(m: &GradedModule) -> Option<(Vec<Poly>, i32)> {
    let ring = m.ring;
    let (dual, gens) = dual_module(m);
    if gens.len() != 1 || !dual.minimized().rels.is_empty() {
        return None;
    }
    let src: Vec<i32> = m.degs.iter().map(|a| -a).collect();
    let e = vdeg(&gens[0], &src)?;
    let images = gens[0].components(m.degs.len(), ring);
    let i = Ideal::new(ring, images.iter().filter(|f| !f.is_zero()).cloned().collect()).ok()?;
    let ideal_series = GradedModule::free(ring, vec![0]).series().sub(&i.quotient_series());
    (ideal_series.shift(-e) == m.series()).then_some((images, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::DEFAULT_PRIME;

    fn k() -> BaseRing {
        BaseRing::field(DEFAULT_PRIME)
    }

    pub fn residue_field(ring: BaseRing, d: i32) -> GradedModule {
        GradedModule::quotient_ring(&Ideal::irrelevant(ring)).twist(-d)
    }

    #[test]
    fn minimal_presentation_cancels_units() {
        // generators e0 (deg 0), e1 (deg 1) with relation e1 - X e0: e1 is redundant
        let r = k();
        let rel = Vector::from_components(&[Poly::parse(r, "-X").unwrap(), Poly::one(r)]);
        let m = GradedModule::new(r, vec![0, 1], vec![rel]);
        let mp = m.minimal_presentation();
        assert_eq!(mp.module.degs, vec![0]);
        assert!(mp.module.rels.is_empty());
        assert_eq!(mp.kept, vec![0]);
        // already minimal stays put
        let cubic = GradedModule::quotient_ring(&Ideal::parse(r, &["XZ-Y^2", "YW-Z^2", "XW-YZ"]).unwrap());
        let again = cubic.minimal_presentation();
        assert_eq!(again.module.degs, vec![0]);
        assert_eq!(again.module.rels.len(), 3);
    }

    #[test]
    fn redundant_free_plus_residue_field() {
        // R ⊕ R/m with a third, redundant generator
        let r = k();
        let mut rels = Vec::new();
        for v in 0..4 {
            rels.push(Vector::from_poly(&Poly::var(r, v), 1, 0));
        }
        // e2 = e0 + e1
        let one = Poly::one(r);
        let mone = Poly::constant(r, r.from_int(-1));
        rels.push(Vector::from_components(&[mone.clone(), mone, one]));
        let m = GradedModule::new(r, vec![0, 0, 0], rels);
        let mp = m.minimal_presentation().module;
        assert_eq!(mp.degs.len(), 2);
        assert_eq!(mp.series(), m.series());
    }

    #[test]
    fn residue_field_duals() {
        let r = k();
        let kk = residue_field(r, 0);
        let d = kk.graded_dual_finite_length().unwrap();
        assert_eq!(d.series(), kk.series());
        let k3 = residue_field(r, 3);
        let d3 = k3.graded_dual_finite_length().unwrap();
        assert_eq!(d3.series(), residue_field(r, -3).series());
        assert!(GradedModule::free(r, vec![0]).graded_dual_finite_length().is_err());
    }

    #[test]
    fn ideal_as_module() {
        let r = k();
        let skew = Ideal::parse(r, &["XZ", "XW", "YZ", "YW"]).unwrap();
        let m = GradedModule::from_ideal(&skew);
        assert_eq!(m.degs, vec![2, 2, 2, 2]);
        assert_eq!(m.relation_degrees(), vec![3, 3, 3, 3]);
        let hs = m.series();
        // dim I_n = dim R_n - (2n + 2) for n >= 1
        assert_eq!(hs.hf(2), 4);
        assert_eq!(hs.hf(3), 20 - 8);
    }
}
