//! Pseudo-isomorphisms and the decisions that rest on them.

use crate::curve::{CurveFamily, RaoModule};
use crate::error::{Error, Result};
use crate::gradedmod::hom::{is_surjective, is_well_defined, strip_with_maps};
use crate::gradedmod::resolution::{ext_data, ext_map, lift_chain_map, resolution_with_pres};
use crate::gradedmod::{dual_module, is_module_iso, module_kernel, GradedMap, GradedModule, IsoResult};

use super::{e_type_resolution, extravertize, n_type_resolution};

/// Conditions 0), 1), 2) for a single test module, read off `Ext^i(f)`
/// through local duality.
fn psi_conditions(m: &GradedModule, m2: &GradedModule, f: &GradedMap) -> Result<bool> {
    let (mp1, r1) = resolution_with_pres(m)?;
    let (mp2, r2) = resolution_with_pres(m2)?;
    let f0 = mp2.old_to_new(&m2.degs).compose(f).compose(&mp1.new_to_old(&m.degs));
    let chain = lift_chain_map(&r1, &r2, &f0)?;
    let ext = |i: usize| -> Result<(GradedModule, GradedModule, GradedMap)> {
        let e1 = ext_data(&r1, i, 0);
        let e2 = ext_data(&r2, i, 0);
        let fi = match chain.get(i) {
            Some(fi) => fi.clone(),
            None => GradedMap::zero(m.ring, Vec::new(), r2.degs.get(i).cloned().unwrap_or_default()),
        };
        let g = if e2.module.degs.is_empty() {
            GradedMap::zero(m.ring, Vec::new(), e1.module.degs.clone())
        } else if e1.module.degs.is_empty() {
            GradedMap::zero(m.ring, e2.module.degs.clone(), Vec::new())
        } else {
            ext_map(&e2, &e1, &fi)?
        };
        Ok((e2.module, e1.module, g))
    };
    // 1) H¹ bijective ⇔ Ext²(f) bijective
    let (a2, b2, g2) = ext(2)?;
    if !is_surjective(&a2, &b2, &g2) || a2.series() != b2.series() {
        return Ok(false);
    }
    // 2) H² injective ⇔ Ext¹(f) onto
    let (a1, b1, g1) = ext(1)?;
    if !is_surjective(&a1, &b1, &g1) {
        return Ok(false);
    }
    // 0) H⁰ in degrees ≪ 0 ⇔ Ext³(f) iso in degrees ≫ 0
    let (a3, b3, g3) = ext(3)?;
    if a3.is_finite_length() && b3.is_finite_length() {
        return Ok(true);
    }
    let mut rels = b3.rels.clone();
    rels.extend(g3.cols.iter().cloned());
    let coker = GradedModule::new(b3.ring, b3.degs.clone(), rels);
    let (ker, _) = module_kernel(&a3, &b3, &g3);
    Ok(coker.is_finite_length() && ker.is_finite_length())
}

/// Ext-depth test: `Ext^i(M, R) = 0` for `i > 4 - depth`.
fn depth_at_least(m: &GradedModule, d: usize) -> Result<bool> {
    let ext = m.ext_all(0)?;
    Ok((5 - d..=4).all(|i| ext[i].is_zero()))
}

/// The free-kernel characterization: with `L` the free cover of `M'`,
/// `f` is a psi iff `ker(M ⊕ L → M')` is free. Only conclusive when
/// `depth M ≥ 2` and `depth M' ≥ 1`.
fn free_kernel_check(m: &GradedModule, m2: &GradedModule, f: &GradedMap) -> Result<Option<bool>> {
    if m.ring.is_dual() || !depth_at_least(m, 2)? || !depth_at_least(m2, 1)? {
        return Ok(None);
    }
    let ring = m.ring;
    let l = GradedModule::free(ring, m2.degs.clone());
    let b = m.direct_sum(&l);
    let g = f.hstack(&GradedMap::identity(ring, m2.degs.clone()));
    let (s, _) = module_kernel(&b, m2, &g);
    Ok(Some(s.is_free()))
}

/// Whether `f: M → M'` is a pseudo-isomorphism, tested against `A` and,
/// over the dual numbers, also against `k`.
pub fn is_psi(m: &GradedModule, m2: &GradedModule, f: &GradedMap) -> Result<bool> {
    if f.src != m.degs || f.tgt != m2.degs || m.ring != m2.ring {
        return Err(Error::Precondition("map does not match the modules".into()));
    }
    if !is_well_defined(m, m2, f) {
        return Err(Error::Precondition("map is not well defined".into()));
    }
    let mut ok = psi_conditions(m, m2, f)?;
    if m.ring.is_dual() {
        ok &= psi_conditions(&m.fiber(), &m2.fiber(), &f.fiber())?;
    }
    if let Some(cross) = free_kernel_check(m, m2, f)? {
        if cross != ok {
            return Err(Error::OracleMismatch(format!("psi conditions say {ok}, free-kernel test says {cross}")));
        }
    }
    Ok(ok)
}

/// A module with psi maps to both sides of a pair of psi maps into `M`.
#[derive(Clone, Debug)]
pub struct Roof {
    pub module: GradedModule,
    pub to_left: GradedMap,
    pub to_right: GradedMap,
}

/// Fiber product of `N ⊕ L → M ← N' ⊕ L`, with `L` the free cover of `M`.
pub fn psi_roof(n: &GradedModule, f: &GradedMap, n2: &GradedModule, f2: &GradedMap, m: &GradedModule) -> Result<Roof> {
    if f.tgt != m.degs || f2.tgt != m.degs {
        return Err(Error::Precondition("maps have different targets".into()));
    }
    if !is_psi(n, m, f)? || !is_psi(n2, m, f2)? {
        return Err(Error::NotPsi);
    }
    let ring = m.ring;
    let id = GradedMap::identity(ring, m.degs.clone());
    let l = GradedModule::free(ring, m.degs.clone());
    let left = n.direct_sum(&l);
    let right = n2.direct_sum(&l);
    let b = left.direct_sum(&right);
    let h = f.hstack(&id).hstack(&f2.hstack(&id).neg());
    let (k, gens) = module_kernel(&b, m, &h);
    let incl = GradedMap { ring, src: k.degs.clone(), tgt: b.degs.clone(), cols: gens };
    let ident = GradedMap::identity(ring, b.degs.clone());
    let off = left.degs.len();
    let to_left = ident.select_rows(&(0..n.degs.len()).collect::<Vec<_>>()).compose(&incl);
    let to_right = ident.select_rows(&(off..off + n2.degs.len()).collect::<Vec<_>>()).compose(&incl);
    if !is_psi(&k, n, &to_left)? || !is_psi(&k, n2, &to_right)? {
        return Err(Error::Certification("roof projections are not psi".into()));
    }
    Ok(Roof { module: k, to_left, to_right })
}

/// `Yes(h)` means the first object is equivalent to the second twisted by `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Yes(i32),
    No(String),
    Undecided(String),
}

impl Equivalence {
    pub fn is_yes(&self) -> bool {
        matches!(self, Equivalence::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Equivalence::No(_))
    }

    pub fn shift(&self) -> Option<i32> {
        match self {
            Equivalence::Yes(h) => Some(*h),
            _ => None,
        }
    }
}

/// The unique representative without free summands of the psi class.
pub fn minimal_extraverted(n: &GradedModule) -> Result<GradedModule> {
    Ok(strip_with_maps(&extravertize(n)?.n).module)
}

fn iso_up_to_shift(a: &GradedModule, b: &GradedModule, allow_shift: bool, trials: usize, seed: u64) -> Equivalence {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Equivalence::Yes(0),
        (true, false) | (false, true) => return Equivalence::No("exactly one side is zero".into()),
        _ => {}
    }
    let h = b.series().initial_degree().unwrap() - a.series().initial_degree().unwrap();
    if h != 0 && !allow_shift {
        return Equivalence::No(format!("equivalence would need shift {h}"));
    }
    match is_module_iso(a, &b.twist(h), trials, seed) {
        IsoResult::Yes(_) => Equivalence::Yes(h),
        IsoResult::No(why) => Equivalence::No(why),
        IsoResult::Undecided => Equivalence::Undecided("no isomorphism found".into()),
    }
}

/// Stable isomorphism of the minimal extraverted representatives, with the
/// shift read off their initial degrees.
pub fn psi_equivalent(n: &GradedModule, n2: &GradedModule, allow_shift: bool, trials: usize, seed: u64) -> Result<Equivalence> {
    let a = minimal_extraverted(n)?;
    let b = minimal_extraverted(n2)?;
    Ok(iso_up_to_shift(&a, &b, allow_shift, trials, seed))
}

pub fn rao_equivalent(r1: &RaoModule, r2: &RaoModule, trials: usize, seed: u64) -> Equivalence {
    iso_up_to_shift(&r1.module, &r2.module, true, trials, seed)
}

/// Both routes of the class decision.
#[derive(Clone, Debug)]
pub struct BiliaisonDecision {
    pub result: Equivalence,
    pub n_route: Equivalence,
    pub rao_route: Option<Equivalence>,
}

fn combine(a: &Equivalence, b: &Equivalence, shift_offset: Option<i32>) -> Equivalence {
    use Equivalence::*;
    match (a, b) {
        (Yes(x), Yes(y)) => match shift_offset {
            Some(o) if *y != x + o => Undecided(format!("routes agree on Yes but with shifts {x} and {y}")),
            _ => Yes(*x),
        },
        (No(w), No(_)) => No(w.clone()),
        (Undecided(w), _) | (_, Undecided(w)) => Undecided(w.clone()),
        _ => Undecided(format!("routes disagree: {a:?} vs {b:?}")),
    }
}

/// Same biliaison class up to shift: `Yes(h)` means `I_C` is psi-equivalent
/// to `I_{C'}(h)`.
pub fn biliaison_equivalent(c: &CurveFamily, c2: &CurveFamily, trials: usize, seed: u64) -> Result<BiliaisonDecision> {
    if c.ring() != c2.ring() {
        return Err(Error::MixedBase);
    }
    let n1 = n_type_resolution(c)?;
    let n2 = n_type_resolution(c2)?;
    let n_route = psi_equivalent(&n1.n, &n2.n, true, trials, seed)?;
    if c.ring().is_dual() {
        return Ok(BiliaisonDecision { result: n_route.clone(), n_route, rao_route: None });
    }
    let r1 = c.rao_module()?;
    let r2 = c2.rao_module()?;
    let rao = rao_equivalent(r1, r2, trials, seed);
    let offset = (!r1.is_zero()).then_some(0);
    let result = combine(&n_route, &rao, offset);
    Ok(BiliaisonDecision { result, n_route, rao_route: Some(rao) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Both,
    Neither,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct ParityReport {
    pub parity: Parity,
    pub even: Equivalence,
    /// `N_C` against `E_{C'}^∨`, cross-checked with `M_C` against `M_{C'}^∨`.
    pub odd: Equivalence,
}

/// Parity of the number of liaisons joining two curves, decided on the
/// closed fiber.
pub fn liaison_parity(c: &CurveFamily, c2: &CurveFamily, trials: usize, seed: u64) -> Result<ParityReport> {
    if c.ring() != c2.ring() {
        return Err(Error::MixedBase);
    }
    if c.ring().is_dual() {
        return liaison_parity(&c.fiber()?, &c2.fiber()?, trials, seed);
    }
    let even = biliaison_equivalent(c, c2, trials, seed)?.result;
    let n = n_type_resolution(c)?;
    let e = e_type_resolution(c2)?;
    let (e_dual, _) = dual_module(&e.e);
    let odd_n = psi_equivalent(&n.n, &e_dual, true, trials, seed)?;
    let r1 = c.rao_module()?;
    let r2 = c2.rao_module()?.dual()?;
    let odd_rao = rao_equivalent(r1, &r2, trials, seed);
    // H¹_*(E^∨) is the graded dual of M_{C'} twisted by 4
    let odd = combine(&odd_n, &odd_rao, (!r1.is_zero()).then_some(4));
    let parity = match (&even, &odd) {
        (Equivalence::Yes(_), Equivalence::Yes(_)) => Parity::Both,
        (Equivalence::Yes(_), Equivalence::No(_)) => Parity::Even,
        (Equivalence::No(_), Equivalence::Yes(_)) => Parity::Odd,
        (Equivalence::No(_), Equivalence::No(_)) => Parity::Neither,
        _ => Parity::Undecided,
    };
    Ok(ParityReport { parity, even, odd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::validate_curve;
    use crate::groebner::Ideal;
    use crate::liaison::{link, trivial_biliaison};
    use crate::polyring::Poly;
    use crate::scalars::{BaseRing, DEFAULT_PRIME};

    fn k() -> BaseRing {
        BaseRing::field(DEFAULT_PRIME)
    }

    fn curve(g: &[&str]) -> CurveFamily {
        validate_curve(&Ideal::parse(k(), g).unwrap()).unwrap()
    }

    fn poly(s: &str) -> Poly {
        Poly::parse(k(), s).unwrap()
    }

    const CUBIC: [&str; 3] = ["XZ-Y^2", "YW-Z^2", "XW-YZ"];
    const SKEW: [&str; 4] = ["XZ", "XW", "YZ", "YW"];

    #[test]
    fn psi_examples() {
        let skew = n_type_resolution(&curve(&SKEW)).unwrap();
        let id = GradedMap::identity(k(), skew.n.degs.clone());
        assert!(is_psi(&skew.n, &skew.n, &id).unwrap());
        let padded = skew.n.direct_sum(&GradedModule::free(k(), vec![1]));
        let inj = GradedMap::identity(k(), padded.degs.clone()).select_cols(&(0..skew.n.degs.len()).collect::<Vec<_>>());
        assert!(is_psi(&skew.n, &padded, &inj).unwrap());
        let (target, p) = skew.surj_map().unwrap();
        assert!(is_psi(&skew.n, &target, &p).unwrap());
        // the inclusion of an ideal into R is not a psi: H¹ changes
        let i = GradedModule::from_ideal(&Ideal::parse(k(), &SKEW).unwrap());
        let r = GradedModule::free(k(), vec![0]);
        let cols = Ideal::parse(k(), &SKEW).unwrap().gens().iter().map(|g| crate::groebner::Vector::from_poly(g, 0, 0)).collect();
        let incl = GradedMap::new(k(), i.degs.clone(), vec![0], cols);
        assert!(!is_psi(&i, &r, &incl).unwrap());
    }

    #[test]
    fn psi_equivalence_examples() {
        let skew = n_type_resolution(&curve(&SKEW)).unwrap();
        let cubic = n_type_resolution(&curve(&CUBIC)).unwrap();
        let padded = skew.n.direct_sum(&GradedModule::free(k(), vec![2]));
        assert_eq!(psi_equivalent(&skew.n, &padded, false, 16, 1).unwrap(), Equivalence::Yes(0));
        let n0 = minimal_extraverted(&skew.n).unwrap();
        assert_eq!(psi_equivalent(&n0, &n0.twist(-1), true, 16, 1).unwrap(), Equivalence::Yes(1));
        assert!(psi_equivalent(&cubic.n, &skew.n, true, 16, 1).unwrap().is_no());
    }

    #[test]
    fn roof_of_two_skew_resolutions() {
        let c = curve(&SKEW);
        let a = n_type_resolution(&c).unwrap();
        let b = super::super::n_type_with(&c, super::super::Cover::Perturbed(5)).unwrap();
        let (m, pa) = a.surj_map().unwrap();
        let (_, pb) = b.surj_map().unwrap();
        let roof = psi_roof(&a.n, &pa, &b.n, &pb, &m).unwrap();
        assert!(!roof.module.is_zero());
        let cubic = n_type_resolution(&curve(&CUBIC)).unwrap();
        let (mc, pc) = cubic.surj_map().unwrap();
        assert!(psi_roof(&a.n, &pa, &cubic.n, &pc, &mc).is_err());
    }

    #[test]
    fn class_decisions() {
        let line = curve(&["Y", "Z"]);
        let cubic = curve(&CUBIC);
        let skew = curve(&SKEW);
        assert_eq!(biliaison_equivalent(&line, &cubic, 16, 1).unwrap().result, Equivalence::Yes(0));
        assert!(biliaison_equivalent(&skew, &cubic, 16, 1).unwrap().result.is_no());
        let (up, _) = trivial_biliaison(&skew, &poly("XZ+YW"), &poly("X"), 1).unwrap();
        let d = biliaison_equivalent(&skew, &up, 16, 1).unwrap();
        assert_eq!(d.result, Equivalence::Yes(1), "{d:?}");
    }

    #[test]
    fn parity_examples() {
        let cubic = curve(&CUBIC);
        let line = link(&cubic, &poly("XZ-Y^2"), &poly("YW-Z^2")).unwrap();
        let p = liaison_parity(&cubic, &line, 16, 1).unwrap();
        assert!(matches!(p.parity, Parity::Odd | Parity::Both), "{p:?}");
        let skew = curve(&SKEW);
        assert!(matches!(liaison_parity(&skew, &skew, 16, 1).unwrap().parity, Parity::Even | Parity::Both));
        let a = curve(&["X", "Y"]).ideal().intersect(curve(&["Z", "W"]).ideal()).unwrap();
        let b = curve(&["X", "W"]).ideal().intersect(curve(&["Y", "Z"]).ideal()).unwrap();
        let (a, b) = (validate_curve(&a).unwrap(), validate_curve(&b).unwrap());
        let p = liaison_parity(&a, &b, 16, 1).unwrap();
        assert!(p.odd.is_yes(), "{p:?}");
    }
}
