//! Minimal free resolutions, Ext, regularity and sheaf cohomology via local
//! duality.

use crate::error::{Error, Result};
use crate::groebner::{kernel, vdeg, Lifter, Vector};
use crate::polyring::Poly;
use crate::scalars::BaseRing;

use super::hom::piece_matrix;
use super::{dot, unit_vector, GradedMap, GradedModule, MinPres};

/// `0 → F_k → … → F_1 → F_0`, with `maps[i]: F_{i+1} → F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ring: BaseRing,
    pub degs: Vec<Vec<i32>>,
    pub maps: Vec<GradedMap>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TestModule {
    /// The base ring itself.
    A,
    /// The residue field.
    K,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Twists in the `R(t)` convention.
    pub fn twists(&self) -> Vec<Vec<i32>> {
        self.degs.iter().map(|d| d.iter().map(|a| -a).collect()).collect()
    }

    /// `max_j (max generator degree of F_j - j)`.
    pub fn regularity(&self) -> i32 {
        self.degs
            .iter()
            .enumerate()
            .filter_map(|(j, d)| d.iter().max().map(|m| m - j as i32))
            .max()
            .unwrap_or(i32::MIN)
    }

    pub fn compositions_vanish(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).is_zero())
    }

    /// Degreewise rank bookkeeping for `n` in `[lo, hi]`: exact at every
    /// `F_i` with `i ≥ 1` and injective at the left end.
    pub fn certify(&self, lo: i32, hi: i32) -> Result<()> {
        if !self.compositions_vanish() {
            return Err(Error::Certification("consecutive maps do not compose to zero".into()));
        }
        let ring = self.ring;
        let p = ring.p;
        for n in lo..=hi {
            let ranks: Vec<usize> = self
                .maps
                .iter()
                .map(|m| {
                    let s = GradedModule::free(ring, m.src.clone());
                    let t = GradedModule::free(ring, m.tgt.clone());
                    piece_matrix(&s, &t, m, n).rank(p)
                })
                .collect();
            for i in 1..self.degs.len() {
                let dim = GradedModule::free(ring, self.degs[i].clone()).basis(n).len();
                let out = ranks[i - 1];
                let inc = ranks.get(i).copied().unwrap_or(0);
                if out + inc != dim {
                    return Err(Error::Certification(format!("resolution not exact at F_{i} in degree {n}")));
                }
            }
        }
        Ok(())
    }

    pub fn fiber(&self) -> FreeResolution {
        FreeResolution { ring: self.ring.fiber(), degs: self.degs.clone(), maps: self.maps.iter().map(|m| m.fiber()).collect() }
    }
}

/// Minimal free resolution. Over the dual numbers a module that is not flat
/// has an infinite resolution; this is reported once length 4 is exceeded.
pub fn free_resolution(m: &GradedModule) -> Result<FreeResolution> {
    let ring = m.ring;
    let mp = m.minimized();
    let mut degs = vec![mp.degs.clone()];
    let mut maps = Vec::new();
    if mp.rels.is_empty() {
        return Ok(FreeResolution { ring, degs, maps });
    }
    let mut cur = mp.presentation();
    loop {
        degs.push(cur.src.clone());
        let next = kernel(ring, &cur.src, &cur.cols, &cur.tgt, &[]);
        maps.push(cur.clone());
        if next.is_empty() {
            break;
        }
        if maps.len() >= 4 {
            return Err(Error::NotLiftable);
        }
        let src: Vec<i32> = next.iter().map(|v| vdeg(v, &cur.src).unwrap()).collect();
        cur = GradedMap::new(ring, src, cur.src.clone(), next);
    }
    Ok(FreeResolution { ring, degs, maps })
}

/// `Ext^i(M, R(shift))` with the cocycles behind its generators.
#[derive(Clone, Debug)]
pub struct ExtData {
    pub module: GradedModule,
    /// Cocycles in `F_i^*` representing the generators of `module`.
    pub cocycles: Vec<Vector>,
    /// Generator degrees of `F_i^*`.
    pub dual_degs: Vec<i32>,
    lifter: Option<Lifter>,
    to_new: Option<GradedMap>,
}

impl ExtData {
    /// Coordinates, on the generators of `module`, of the class of a cocycle.
    pub fn coords(&self, c: &Vector) -> Option<Vector> {
        if c.is_zero() {
            return Some(Vector::zero());
        }
        let u = self.lifter.as_ref()?.lift(c)?;
        Some(self.to_new.as_ref()?.apply(&u))
    }
}

pub fn ext_data(res: &FreeResolution, i: usize, shift: i32) -> ExtData {
    let ring = res.ring;
    let p = ring.p;
    let empty = |dual_degs: Vec<i32>| ExtData { module: GradedModule::zero(ring), cocycles: Vec::new(), dual_degs, lifter: None, to_new: None };
    let Some(fi) = res.degs.get(i) else { return empty(Vec::new()) };
    let di: Vec<i32> = fi.iter().map(|a| -a - shift).collect();
    if fi.is_empty() {
        return empty(di);
    }
    let kgens: Vec<Vector> = match res.maps.get(i) {
        Some(d) => {
            let t = d.transpose(shift);
            kernel(ring, &t.src, &t.cols, &t.tgt, &[])
        }
        None => (0..di.len()).map(|k| unit_vector(ring, k)).collect(),
    };
    if kgens.is_empty() {
        return empty(di);
    }
    let kdegs: Vec<i32> = kgens.iter().map(|v| vdeg(v, &di).unwrap()).collect();
    let coboundaries: Vec<Vector> = if i >= 1 { res.maps[i - 1].transpose(shift).cols } else { Vec::new() };
    let mut big = GradedMap::new(ring, kdegs.clone(), di.clone(), kgens.clone());
    if i >= 1 {
        big = big.hstack(&res.maps[i - 1].transpose(shift));
    }
    let nk = kdegs.len() as u32;
    let ker = kernel(ring, &big.src, &big.cols, &big.tgt, &[]);
    let rels: Vec<Vector> = ker.iter().map(|v| v.remap(|q| (q < nk).then_some((q, 0)), p)).collect();
    let mp = GradedModule::new(ring, kdegs.clone(), rels).minimal_presentation();
    let cocycles = mp.kept.iter().map(|&k| kgens[k].clone()).collect();
    let lifter = Lifter::new(ring, &kdegs, &kgens, &di, &coboundaries);
    let to_new = mp.old_to_new(&kdegs);
    ExtData { module: mp.module, cocycles, dual_degs: di, lifter: Some(lifter), to_new: Some(to_new) }
}

/// `Ext^i(M, R(shift))` from a resolution of `M`.
pub fn ext_from_resolution(res: &FreeResolution, i: usize, shift: i32) -> GradedModule {
    ext_data(res, i, shift).module
}

/// Lifts `f0: F_0 → F'_0` (a module map on generators) to a chain map
/// `f_i: F_i → F'_i` between resolutions.
pub fn lift_chain_map(res: &FreeResolution, res2: &FreeResolution, f0: &GradedMap) -> Result<Vec<GradedMap>> {
    let ring = res.ring;
    let mut out = vec![f0.clone()];
    for i in 1..res.degs.len() {
        let prev = &out[i - 1];
        let d = &res.maps[i - 1];
        let tgt = res2.degs.get(i).cloned().unwrap_or_default();
        let cols = if let Some(d2) = res2.maps.get(i - 1) {
            let lifter = Lifter::new(ring, &d2.src, &d2.cols, &d2.tgt, &[]);
            d.cols
                .iter()
                .map(|c| lifter.lift(&prev.apply(c)).ok_or_else(|| Error::Certification("chain map does not lift".into())))
                .collect::<Result<Vec<_>>>()?
        } else {
            for c in &d.cols {
                if !prev.apply(c).is_zero() {
                    return Err(Error::Certification("chain map does not lift".into()));
                }
            }
            vec![Vector::zero(); d.src.len()]
        };
        out.push(GradedMap { ring, src: d.src.clone(), tgt, cols });
    }
    Ok(out)
}

/// `Ext^i(f): Ext^i(M', R(s)) → Ext^i(M, R(s))` on generators, given the
/// chain-map component `f_i: F_i → F'_i`.
pub fn ext_map(e_src: &ExtData, e_tgt: &ExtData, fi: &GradedMap) -> Result<GradedMap> {
    let ring = fi.ring;
    let cols = e_src
        .cocycles
        .iter()
        .map(|c| {
            let comps: Vec<Poly> = fi.cols.iter().map(|col| dot(c, col, ring)).collect();
            let pulled = if comps.is_empty() { Vector::zero() } else { Vector::from_components(&comps) };
            e_tgt.coords(&pulled).ok_or_else(|| Error::Certification("pulled-back cocycle is not a cocycle".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedMap { ring, src: e_src.module.degs.clone(), tgt: e_tgt.module.degs.clone(), cols })
}

/// Minimal presentation and minimal free resolution of `M`, compatible.
pub fn resolution_with_pres(m: &GradedModule) -> Result<(MinPres, FreeResolution)> {
    let mp = m.minimal_presentation();
    let res = free_resolution(&mp.module)?;
    Ok((mp, res))
}

/// A cohomology table row: `dim H^i(M~ ⊗ Q (n))` for `i = 0..3`.
pub type CohomRow = (i32, [i64; 4]);

impl GradedModule {
    pub fn resolution(&self) -> Result<FreeResolution> {
        free_resolution(self)
    }

    /// Regularity of the fiber module.
    pub fn regularity(&self) -> i32 {
        let f = if self.ring.is_dual() { self.fiber() } else { self.clone() };
        free_resolution(&f).map(|r| r.regularity()).unwrap_or(i32::MIN)
    }

    pub fn ext_module(&self, i: usize, shift: i32) -> Result<GradedModule> {
        if i > 4 {
            return Err(Error::Precondition("Ext index must lie in 0..=4".into()));
        }
        let res = self.resolution()?;
        Ok(ext_from_resolution(&res, i, shift))
    }

    /// `Ext^i(M, R(shift))` for `i = 0..=4`.
    pub fn ext_all(&self, shift: i32) -> Result<Vec<GradedModule>> {
        let res = self.resolution()?;
        Ok((0..=4).map(|i| ext_from_resolution(&res, i, shift)).collect())
    }

    /// `(module pd, sheaf dp)`.
    pub fn projective_dimension(&self) -> Result<(usize, usize)> {
        let res = self.resolution()?;
        let pd = if self.is_zero() { 0 } else { res.length() };
        let mut dp = 0;
        for i in 1..=4 {
            if !ext_from_resolution(&res, i, 0).is_finite_length() {
                dp = i;
            }
        }
        Ok((pd, dp))
    }

    /// Exact cohomology dimensions through local duality:
    /// `H^i(M~(n)) ≅ Ext^{3-i}(M, R(-4))_{-n}^∨` for `i ≥ 1`.
    pub fn cohomology_table(&self, q: TestModule, lo: i32, hi: i32) -> Result<Vec<CohomRow>> {
        let m = match q {
            TestModule::K if self.ring.is_dual() => self.fiber(),
            _ => self.clone(),
        };
        let ext = m.ext_all(-4)?;
        let hs: Vec<_> = ext.iter().map(|e| e.series()).collect();
        let own = m.series();
        Ok((lo..=hi)
            .map(|n| {
                let h1 = hs[2].hf(-n);
                let h2 = hs[1].hf(-n);
                let h3 = hs[0].hf(-n);
                let h0 = own.hf(n) - hs[4].hf(-n) + hs[3].hf(-n);
                (n, [h0, h1, h2, h3])
            })
            .collect())
    }
}
