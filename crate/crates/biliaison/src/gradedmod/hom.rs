//! Degreewise homomorphisms, isomorphism testing and free-summand stripping.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groebner::{key_mon, key_pos, Vector};
use crate::linalg::Mat;
use crate::polyring::{Mon, Poly};
use crate::scalars::Scalar;

use super::{unit_vector, GradedMap, GradedModule};

/// Matrix of `f` from `src_n` to `tgt_n` in standard-monomial bases.
pub fn piece_matrix(src: &GradedModule, tgt: &GradedModule, f: &GradedMap, n: i32) -> Mat {
    let sb = src.basis(n);
    let tb = tgt.basis(n);
    let cols: Vec<Vec<u32>> = (0..sb.len()).map(|i| tb.coords(&tgt.nf(&f.apply(&sb.vector(i))))).collect();
    Mat::from_cols(&cols, tb.len())
}

/// Basis of `Hom(M, N)_d`, each element a map `F_M(-d) → F_N` on generators.
pub fn hom_space(m: &GradedModule, n: &GradedModule, d: i32) -> Vec<GradedMap> {
    let ring = m.ring;
    let p = ring.p;
    let bases: Vec<_> = m.degs.iter().map(|&a| n.basis(a + d)).collect();
    let mut off = Vec::with_capacity(bases.len());
    let mut total = 0;
    for b in &bases {
        off.push(total);
        total += b.len();
    }
    let src: Vec<i32> = m.degs.iter().map(|a| a + d).collect();
    if total == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in &m.rels {
        let e = crate::groebner::vdeg(r, &m.degs).unwrap();
        let tb = n.basis(e + d);
        if tb.is_empty() {
            continue;
        }
        let mut block = vec![vec![0u32; total]; tb.len()];
        for (j, b) in bases.iter().enumerate() {
            let rj = r.component(j as u32, ring);
            if rj.is_zero() {
                continue;
            }
            for bi in 0..b.len() {
                let img = n.nf(&b.vector(bi).mul_poly(&rj));
                for (row, c) in tb.coords(&img).into_iter().enumerate() {
                    block[row][off[j] + bi] = c;
                }
            }
        }
        rows.extend(block);
    }
    let null = if rows.is_empty() {
        (0..total).map(|i| {
            let mut x = vec![0u32; total];
            x[i] = 1;
            x
        }).collect()
    } else {
        Mat::from_rows(&rows, total).nullspace(p)
    };
    null.into_iter()
        .map(|x| {
            let cols = bases.iter().enumerate().map(|(j, b)| b.combination(&x[off[j]..off[j] + b.len()], p)).collect();
            GradedMap { ring, src: src.clone(), tgt: n.degs.clone(), cols }
        })
        .collect()
}

/// Whether `f: M → N` (degree 0) is well defined: relations land in `N`'s.
pub fn is_well_defined(m: &GradedModule, n: &GradedModule, f: &GradedMap) -> bool {
    m.rels.iter().all(|r| n.is_zero_element(&f.apply(r)))
}

/// Surjectivity of a degree-0 map, checked in the generator degrees of `N`.
pub fn is_surjective(m: &GradedModule, n: &GradedModule, f: &GradedMap) -> bool {
    let mut ds = n.degs.clone();
    ds.sort_unstable();
    ds.dedup();
    ds.into_iter().all(|d| {
        let dim = n.basis(d).len();
        dim == 0 || piece_matrix(m, n, f, d).rank(m.ring.p) == dim
    })
}

/// Injectivity of a degree-0 map in degrees `lo..=hi`.
pub fn is_injective_in(m: &GradedModule, n: &GradedModule, f: &GradedMap, lo: i32, hi: i32) -> bool {
    (lo..=hi).all(|d| piece_matrix(m, n, f, d).rank(m.ring.p) == m.basis(d).len())
}

#[derive(Clone, Debug)]
pub enum IsoResult {
    Yes(GradedMap),
    No(String),
    Undecided,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoResult::No(_))
    }
}

pub fn random_combination(homs: &[GradedMap], rng: &mut ChaCha8Rng) -> GradedMap {
    let ring = homs[0].ring;
    let p = ring.p;
    let mut out = GradedMap::zero(ring, homs[0].src.clone(), homs[0].tgt.clone());
    for h in homs {
        let c: u32 = rng.gen_range(1..p);
        for (o, v) in out.cols.iter_mut().zip(&h.cols) {
            *o = o.add(&v.scale(c, p), p);
        }
    }
    out
}

/// Monte Carlo isomorphism test with one-sided certificates.
pub fn is_module_iso(m: &GradedModule, n: &GradedModule, trials: usize, seed: u64) -> IsoResult {
    if m.series() != n.series() {
        return IsoResult::No("Hilbert series differ".into());
    }
    if m.is_zero() {
        return IsoResult::Yes(GradedMap::zero(m.ring, m.degs.clone(), n.degs.clone()));
    }
    let homs = hom_space(m, n, 0);
    if homs.is_empty() {
        return IsoResult::No("no nonzero degree-0 homomorphism".into());
    }
    // if even all homomorphisms together miss a generator degree, none is onto
    let p = m.ring.p;
    let mut ds = n.degs.clone();
    ds.sort_unstable();
    ds.dedup();
    for &d in &ds {
        let dim = n.basis(d).len();
        if dim == 0 {
            continue;
        }
        let mut cols: Vec<Vec<u32>> = Vec::new();
        for h in &homs {
            let mat = piece_matrix(m, n, h, d);
            for j in 0..mat.cols {
                cols.push((0..mat.rows).map(|i| mat.get(i, j)).collect());
            }
        }
        if Mat::from_cols(&cols, dim).rank(p) < dim {
            return IsoResult::No(format!("no homomorphism reaches degree {d}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials.max(1) {
        let f = random_combination(&homs, &mut rng);
        if is_surjective(m, n, &f) {
            return IsoResult::Yes(f);
        }
    }
    IsoResult::Undecided
}

/// `M ≅ M₀ ⊕ F` with explicit splittings (all maps on generators, relative to
/// the input presentation).
#[derive(Clone, Debug)]
pub struct Stripped {
    pub module: GradedModule,
    /// Removed summands in the `R(t)` convention.
    pub removed: Vec<i32>,
    /// `F_{M₀} → F_M`.
    pub incl: GradedMap,
    /// `F_M → F_{M₀}`.
    pub proj: GradedMap,
    /// Generators of the free summands inside `F_M`.
    pub free_gens: Vec<Vector>,
    /// Projections `F_M → R(-a)` onto the free summands.
    pub free_proj: Vec<GradedMap>,
}

fn constant_part(v: &Vector, pos: u32) -> Scalar {
    let mut s = Scalar::default();
    for &(k, c) in &v.terms {
        if key_pos(k) == pos {
            let m = key_mon(k);
            if m == Mon::ONE {
                s.a = c;
            } else if m == Mon::ONE.with_eps(1) {
                s.b = c;
            }
        }
    }
    s
}

/// Splits off free summands: `R(-a)` is a summand exactly when some
/// `λ ∈ Hom(M, R(-a))_0` sends a generator to a unit.
pub fn strip_free_summands(m: &GradedModule) -> (GradedModule, Vec<i32>) {
    let s = strip_with_maps(m);
    (s.module, s.removed)
}

pub fn strip_with_maps(m: &GradedModule) -> Stripped {
    let ring = m.ring;
    let p = ring.p;
    let mp = m.minimal_presentation();
    let mut cur = mp.module.clone();
    let mut incl = mp.new_to_old(&m.degs);
    let mut proj = mp.old_to_new(&m.degs);
    let mut removed = Vec::new();
    let mut free_gens = Vec::new();
    let mut free_proj = Vec::new();
    'outer: loop {
        let mut ds = cur.degs.clone();
        ds.sort_unstable();
        ds.dedup();
        for a in ds {
            let target = GradedModule::free(ring, vec![a]);
            for lam in hom_space(&cur, &target, 0) {
                let Some(i) = (0..cur.degs.len()).find(|&i| cur.degs[i] == a && constant_part(&lam.cols[i], 0).a != 0) else {
                    continue;
                };
                let u = constant_part(&lam.cols[i], 0);
                let uinv = ring.invert(u).unwrap();
                let uinv_p = Poly::constant(ring, uinv);
                let n = cur.degs.len();
                let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                // f_k = e_k - (l_k/u) e_i spans the complement of R·e_i
                let ei = unit_vector(ring, i);
                let iota_cols: Vec<Vector> = keep
                    .iter()
                    .map(|&k| {
                        let lk = lam.cols[k].component(0, ring).mul(&uinv_p).unwrap();
                        unit_vector(ring, k).sub(&ei.mul_poly(&lk), p)
                    })
                    .collect();
                let iota = GradedMap { ring, src: keep.iter().map(|&k| cur.degs[k]).collect(), tgt: cur.degs.clone(), cols: iota_cols };
                let pi = GradedMap::identity(ring, cur.degs.clone()).select_rows(&keep);
                let lam_scaled = GradedMap {
                    ring,
                    src: lam.src.clone(),
                    tgt: lam.tgt.clone(),
                    cols: lam.cols.iter().map(|c| c.mul_poly(&uinv_p)).collect(),
                };
                free_gens.push(incl.apply(&ei));
                free_proj.push(lam_scaled.compose(&proj));
                removed.push(-a);
                let next = GradedModule::new(ring, iota.src.clone(), cur.rels.iter().map(|r| pi.apply(r)).collect());
                incl = incl.compose(&iota);
                proj = pi.compose(&proj);
                let mp2 = next.minimal_presentation();
                incl = incl.compose(&mp2.new_to_old(&next.degs));
                proj = mp2.old_to_new(&next.degs).compose(&proj);
                cur = mp2.module;
                continue 'outer;
            }
        }
        break;
    }
    Stripped { module: cur, removed, incl, proj, free_gens, free_proj }
}
