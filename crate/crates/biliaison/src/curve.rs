//! Curves (and flat families of curves over the dual numbers): validation,
//! degree and genus, and the Rao module.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gradedmod::{is_module_iso, GradedModule, IsoResult};
use crate::groebner::Ideal;
use crate::linalg::Mat;
use crate::polyring::{Mon, EPS};
use crate::scalars::BaseRing;

/// A finite-length graded module together with its dimension profile.
#[derive(Clone, Debug)]
pub struct RaoModule {
    pub module: GradedModule,
    pub dims: BTreeMap<i32, usize>,
}

impl RaoModule {
    pub fn from_module(module: GradedModule) -> Result<RaoModule> {
        let mut dims = BTreeMap::new();
        if let Some((lo, hi)) = module.finite_support()? {
            for n in lo..=hi {
                let d = module.hf(n) as usize;
                if d > 0 {
                    dims.insert(n, d);
                }
            }
        }
        Ok(RaoModule { module, dims })
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn length(&self) -> usize {
        self.dims.values().sum()
    }

    /// `M(t)`.
    pub fn twist(&self, t: i32) -> RaoModule {
        RaoModule { module: self.module.twist(t), dims: self.dims.iter().map(|(&n, &d)| (n - t, d)).collect() }
    }

    pub fn dual(&self) -> Result<RaoModule> {
        RaoModule::from_module(self.module.graded_dual_finite_length()?)
    }

    /// Multiplication by `X, Y, Z, W` from degree `n` to `n + 1`.
    pub fn action_matrices(&self, n: i32) -> [Mat; 4] {
        [0, 1, 2, 3].map(|v| self.module.action_matrix(n, v))
    }

    pub fn iso(&self, o: &RaoModule, trials: usize, seed: u64) -> IsoResult {
        is_module_iso(&self.module, &o.module, trials, seed)
    }
}

#[derive(Clone, Debug)]
pub struct CurveFamily {
    ideal: Ideal,
    pub degree: i64,
    pub genus: i64,
    /// Regularity of `R/I` on the fiber.
    pub regularity: i32,
    rao: OnceLock<RaoModule>,
}

/// Flatness over the dual numbers: every `(R_A/I)_n`, `n ≤ n_max`, is free
/// over `A`, i.e. has twice the fiber dimension.
pub fn is_flat_family(i: &Ideal, n_max: i32) -> bool {
    if !i.ring.is_dual() {
        return true;
    }
    let a = i.quotient_series();
    let f = i.fiber_ideal().quotient_series();
    (0..=n_max).all(|n| a.hf(n) == 2 * f.hf(n))
}

fn flat_all_degrees(i: &Ideal) -> bool {
    !i.ring.is_dual() || i.quotient_series() == i.fiber_ideal().quotient_series().scale(2)
}

/// Checks the curve conditions in order: saturation, dimension, flatness,
/// and finite length of `Ext³(R/I, R)`. Never repairs the input.
pub fn validate_curve(i: &Ideal) -> Result<CurveFamily> {
    if !i.is_saturated() {
        return Err(Error::NotSaturated);
    }
    let dim = i.krull_dimension();
    if dim != 2 {
        return Err(Error::WrongDimension(dim - 1));
    }
    if !flat_all_degrees(i) {
        return Err(Error::NotFlat);
    }
    let q = GradedModule::quotient_ring(i);
    let e3 = q.ext_module(3, 0)?;
    if !e3.is_finite_length() {
        return Err(Error::NotPureDimensionOrNotLCM);
    }
    let fib = i.fiber_ideal();
    let (d, chi) = fib.quotient_series().degree_genus_data();
    let regularity = GradedModule::quotient_ring(&fib).regularity();
    Ok(CurveFamily { ideal: i.minimal_generators(), degree: d, genus: 1 - chi, regularity, rao: OnceLock::new() })
}

impl CurveFamily {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> BaseRing {
        self.ideal.ring
    }

    pub fn degree_genus(&self) -> (i64, i64) {
        (self.degree, self.genus)
    }

    /// `I_C` as a graded module.
    pub fn ideal_module(&self) -> GradedModule {
        GradedModule::from_ideal(&self.ideal)
    }

    pub fn same_curve(&self, o: &CurveFamily) -> bool {
        self.ring() == o.ring() && self.ideal.same_as(&o.ideal)
    }

    pub fn fiber(&self) -> Result<CurveFamily> {
        validate_curve(&self.ideal.fiber_ideal().saturate())
    }

    /// The Rao module, computed by the saturation quotient and by the dual of
    /// `Ext³(R/I, R(-4))`; the two must agree.
    pub fn rao_module(&self) -> Result<&RaoModule> {
        if let Some(r) = self.rao.get() {
            return Ok(r);
        }
        let b = rao_by_ext(&self.ideal)?;
        let (lo, hi) = match (b.dims.keys().next(), b.dims.keys().last()) {
            (Some(&l), Some(&h)) => (l.min(0) - 1, h.max(self.regularity) + 1),
            _ => (-1, self.regularity.max(0) + 1),
        };
        let a = rao_by_saturation(&self.ideal, self.regularity, lo, hi)?;
        if a.dims != b.dims {
            return Err(Error::OracleMismatch(format!("Rao dimensions {:?} vs {:?}", a.dims, b.dims)));
        }
        if !b.is_zero() {
            match a.iso(&b, 64, 0x5eed) {
                IsoResult::Yes(_) => {}
                _ => return Err(Error::OracleMismatch("Rao module structures differ".into())),
            }
        }
        let _ = self.rao.set(b);
        Ok(self.rao.get().unwrap())
    }
}

/// Rao module as the graded dual of `Ext³(R/I, R(-4))`.
pub fn rao_by_ext(i: &Ideal) -> Result<RaoModule> {
    let e3 = GradedModule::quotient_ring(i).ext_module(3, -4)?;
    RaoModule::from_module(e3.graded_dual_finite_length()?)
}

/// Sections of `O_C(n)` as compatible tuples `s_i ∈ (R/I)_{n+k}` with
/// `x_j^k s_i = x_i^k s_j`, for `k` past the regularity.
struct SectionSpace {
    k: i32,
    n: i32,
    /// Basis of `D_n` in ambient coordinates (four blocks).
    basis: Vec<Vec<u32>>,
    block: usize,
}

fn power_of_var(v: usize, k: i32) -> Mon {
    let mut e = [0u8; 5];
    e[v] = k as u8;
    Mon::new(e)
}

fn section_space(q: &GradedModule, n: i32, k: i32) -> SectionSpace {
    let p = q.ring.p;
    let bk = q.basis(n + k);
    let b2 = q.basis(n + 2 * k);
    let m = bk.len();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            // x_j^k s_i - x_i^k s_j = 0
            let mut block = vec![vec![0u32; 4 * m]; b2.len()];
            for t in 0..m {
                let a = b2.coords(&q.nf(&bk.vector(t).mul_mon(power_of_var(j, k))));
                let b = b2.coords(&q.nf(&bk.vector(t).mul_mon(power_of_var(i, k))));
                for r in 0..b2.len() {
                    block[r][i * m + t] = a[r];
                    block[r][j * m + t] = crate::scalars::neg_mod(b[r], p);
                }
            }
            rows.extend(block);
        }
    }
    let basis = if 4 * m == 0 {
        Vec::new()
    } else if rows.is_empty() {
        (0..4 * m).map(|c| {
            let mut x = vec![0; 4 * m];
            x[c] = 1;
            x
        }).collect()
    } else {
        Mat::from_rows(&rows, 4 * m).nullspace(p)
    };
    SectionSpace { k, n, basis, block: m }
}

/// Image of `(R/I)_n` in `D_n` (ambient coordinates).
fn ring_image(q: &GradedModule, s: &SectionSpace) -> Vec<Vec<u32>> {
    let b0 = q.basis(s.n);
    let bk = q.basis(s.n + s.k);
    (0..b0.len())
        .map(|t| {
            let mut v = Vec::with_capacity(4 * s.block);
            for i in 0..4 {
                v.extend(bk.coords(&q.nf(&b0.vector(t).mul_mon(power_of_var(i, s.k)))));
            }
            v
        })
        .collect()
}

/// `(h⁰(J_C(n)), h¹(J_C(n)))` computed degreewise from the saturation
/// description `H⁰(O_C(n)) = Hom((x_i^k), R/I)_n`, stabilization verified.
pub fn saturation_cohomology(i: &Ideal, reg: i32, n: i32) -> Result<(i64, i64)> {
    let q = GradedModule::quotient_ring(i);
    let p = i.ring.p;
    let k = (reg - n).max(1);
    let s = section_space(&q, n, k);
    let s2 = section_space(&q, n, k + 1);
    if s.basis.len() != s2.basis.len() {
        return Err(Error::OracleMismatch(format!("section space not stable at degree {n}")));
    }
    let img = ring_image(&q, &s);
    let rank = if img.is_empty() { 0 } else { Mat::from_rows(&img, 4 * s.block).rank(p) };
    let rn = crate::polyring::graded_piece_dim(n as i64) as i64 * if i.ring.is_dual() { 2 } else { 1 };
    // R_n → (R/I)_n is onto, so R_n → D_n has the same rank
    Ok((rn - rank as i64, s.basis.len() as i64 - rank as i64))
}

/// Rao module as `D/(image of R/I)` with its module structure, over
/// degrees `lo..=hi` (zero outside is checked by the caller).
pub fn rao_by_saturation(i: &Ideal, reg: i32, lo: i32, hi: i32) -> Result<RaoModule> {
    let ring = i.ring;
    let p = ring.p;
    let q = GradedModule::quotient_ring(i);
    let k = (reg - lo).max(1);
    struct Piece {
        n: i32,
        space: SectionSpace,
        image: Vec<Vec<u32>>,
        reps: Vec<Vec<u32>>,
    }
    let mut pieces = Vec::new();
    for n in lo..=hi + 1 {
        let space = section_space(&q, n, k);
        let image = ring_image(&q, &space);
        // representatives of D_n modulo the image
        let mut cols = image.clone();
        let mut reps = Vec::new();
        let amb = 4 * space.block;
        for b in &space.basis {
            cols.push(b.clone());
            let r = Mat::from_cols(&cols, amb).rank(p);
            if r == cols.len() {
                reps.push(b.clone());
            } else {
                cols.pop();
            }
        }
        pieces.push(Piece { n, space, image, reps });
    }
    // coordinates of an ambient vector of D_n in the quotient basis
    let quot_coords = |pc: &Piece, w: &[u32]| -> Result<Vec<u32>> {
        let mut cols = pc.image.clone();
        cols.extend(pc.reps.iter().cloned());
        let amb = 4 * pc.space.block;
        let x = Mat::from_cols(&cols, amb)
            .solve(w, p)
            .ok_or_else(|| Error::OracleMismatch("multiplication leaves the section space".into()))?;
        Ok(x[pc.image.len()..].to_vec())
    };
    let mut degs = Vec::new();
    let mut start = BTreeMap::new();
    for pc in &pieces[..pieces.len() - 1] {
        start.insert(pc.n, degs.len());
        degs.extend(std::iter::repeat_n(pc.n, pc.reps.len()));
    }
    let vars: Vec<usize> = if ring.is_dual() { vec![0, 1, 2, 3, EPS] } else { vec![0, 1, 2, 3] };
    // action tables: (basis index, var) -> coordinates
    let mut table: BTreeMap<(usize, usize), Vec<(usize, u32)>> = BTreeMap::new();
    for (pi, pc) in pieces[..pieces.len() - 1].iter().enumerate() {
        let bk = q.basis(pc.n + k);
        for (ri, rep) in pc.reps.iter().enumerate() {
            let idx = start[&pc.n] + ri;
            for &v in &vars {
                let (tn, tpc) = if v == EPS { (pc.n, &pieces[pi]) } else { (pc.n + 1, &pieces[pi + 1]) };
                let tb = q.basis(tn + k);
                let mut w = Vec::with_capacity(4 * tb.len());
                for blk in 0..4 {
                    let s = bk.combination(&rep[blk * bk.len()..(blk + 1) * bk.len()], p);
                    w.extend(tb.coords(&q.nf(&s.mul_mon(Mon::var(v)))));
                }
                let c = quot_coords(tpc, &w)?;
                let entries: Vec<(usize, u32)> = if tn > hi {
                    if c.iter().any(|&x| x != 0) {
                        return Err(Error::OracleMismatch("Rao module extends past the window".into()));
                    }
                    Vec::new()
                } else {
                    c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(t, &x)| (start[&tn] + t, x)).collect()
                };
                table.insert((idx, v), entries);
            }
        }
    }
    let total = degs.len();
    let module = GradedModule::from_actions(ring, &degs, &vars, |v, b| table[&(b, v)].clone(), total)?;
    RaoModule::from_module(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::DEFAULT_PRIME;

    fn k() -> BaseRing {
        BaseRing::field(DEFAULT_PRIME)
    }

    fn curve(g: &[&str]) -> Result<CurveFamily> {
        validate_curve(&Ideal::parse(k(), g).unwrap())
    }

    #[test]
    fn validation_examples() {
        let c = curve(&["XZ-Y^2", "YW-Z^2", "XW-YZ"]).unwrap();
        assert_eq!(c.degree_genus(), (3, 0));
        assert_eq!(c.regularity, 1);
        assert_eq!(curve(&["Y", "XZ", "XW"]).unwrap_err(), Error::NotPureDimensionOrNotLCM);
        assert_eq!(curve(&["X^2", "XY", "XZ", "XW"]).unwrap_err(), Error::NotSaturated);
        assert_eq!(curve(&["X", "Y", "Z"]).unwrap_err(), Error::WrongDimension(0));
    }

    #[test]
    fn degree_genus_examples() {
        assert_eq!(curve(&["Y", "Z"]).unwrap().degree_genus(), (1, 0));
        assert_eq!(curve(&["XZ", "XW", "YZ", "YW"]).unwrap().degree_genus(), (2, -1));
    }

    #[test]
    fn rao_examples() {
        let cubic = curve(&["XZ-Y^2", "YW-Z^2", "XW-YZ"]).unwrap();
        assert!(cubic.rao_module().unwrap().is_zero());
        let skew = curve(&["XZ", "XW", "YZ", "YW"]).unwrap();
        let r = skew.rao_module().unwrap();
        assert_eq!(r.dims, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn flatness_examples() {
        let d = BaseRing::dual(DEFAULT_PRIME);
        assert!(is_flat_family(&Ideal::parse(d, &["X + e*Y"]).unwrap(), 5));
        assert!(!is_flat_family(&Ideal::parse(d, &["e*X"]).unwrap(), 5));
        assert!(is_flat_family(&Ideal::parse(d, &["XZ-Y^2", "YW-Z^2", "XW-YZ"]).unwrap(), 5));
    }

    #[test]
    fn dual_constant_family_validates() {
        let d = BaseRing::dual(DEFAULT_PRIME);
        let c = validate_curve(&Ideal::parse(d, &["XZ", "XW", "YZ", "YW"]).unwrap()).unwrap();
        assert_eq!(c.degree_genus(), (2, -1));
        let f = c.fiber().unwrap();
        assert_eq!(f.ring(), k());
        assert_eq!(c.rao_module().unwrap().length(), 2);
    }
}
