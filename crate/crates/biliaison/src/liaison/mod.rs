//! Liaison by complete intersections and elementary biliaisons.

pub mod chain;

pub use chain::{connect_by_biliaisons, Chain};



use crate::curve::{validate_curve, CurveFamily};
use crate::error::{Error, Result};
use crate::gradedmod::{is_module_iso, FreeResolution, GradedMap, GradedModule, IsoResult};
use crate::groebner::{kernel, Ideal, Lifter, Vector};
use crate::polyring::Poly;

/// Two forms whose reductions to the fiber are a regular sequence.
#[derive(Clone, Debug)]
pub struct CompleteIntersection {
    pub f: Poly,
    pub g: Poly,
    pub s: i32,
    pub t: i32,
}

fn form_degree(f: &Poly) -> Result<i32> {
    if !f.is_homogeneous() {
        return Err(Error::Precondition("forms must be homogeneous".into()));
    }
    f.degree().ok_or(Error::NotRegularSequence)
}

impl CompleteIntersection {
    pub fn new(f: &Poly, g: &Poly) -> Result<CompleteIntersection> {
        if f.ring != g.ring {
            return Err(Error::MixedBase);
        }
        let (s, t) = (form_degree(f)?, form_degree(g)?);
        let (fb, gb) = (f.reduce_to_fiber(), g.reduce_to_fiber());
        if fb.is_zero() || gb.is_zero() || s == 0 || t == 0 {
            return Err(Error::NotRegularSequence);
        }
        if Ideal::new(fb.ring, vec![fb, gb])?.krull_dimension() != 2 {
            return Err(Error::NotRegularSequence);
        }
        Ok(CompleteIntersection { f: f.clone(), g: g.clone(), s, t })
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.f.ring, vec![self.f.clone(), self.g.clone()]).unwrap()
    }

    /// Koszul resolution `0 → R(-s-t) → R(-s) ⊕ R(-t) → (F, G) → 0`.
    pub fn resolution(&self) -> FreeResolution {
        let ring = self.f.ring;
        let col = Vector::from_components(&[self.g.clone(), self.f.neg()]);
        let map = GradedMap::new(ring, vec![self.s + self.t], vec![self.s, self.t], vec![col]);
        FreeResolution { ring, degs: vec![vec![self.s, self.t], vec![self.s + self.t]], maps: vec![map] }
    }
}

pub fn ci_resolution(f: &Poly, g: &Poly) -> Result<FreeResolution> {
    let ci = CompleteIntersection::new(f, g)?;
    let res = ci.resolution();
    res.certify(0, ci.s + ci.t + 2)?;
    Ok(res)
}

/// The residual curve `(F, G) : I_C`.
pub fn link(c: &CurveFamily, f: &Poly, g: &Poly) -> Result<CurveFamily> {
    if f.ring != c.ring() || g.ring != c.ring() {
        return Err(Error::MixedBase);
    }
    if !c.ideal().contains(f) || !c.ideal().contains(g) {
        return Err(Error::NotContained);
    }
    let ci = CompleteIntersection::new(f, g)?;
    let d = ci.ideal();
    if d.same_as(c.ideal()) {
        return Err(Error::ResidualEmpty);
    }
    let residual = d.quotient(c.ideal())?;
    if residual.is_unit() {
        return Err(Error::ResidualEmpty);
    }
    validate_curve(&residual.saturate())
}

/// One elementary biliaison `J_{C,Q} ≅ J_{C',Q}(h)`. The witness sends the
/// generator `source[i]` of `I_C` to `images[i]` modulo `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiliaisonStep {
    pub surface: Poly,
    pub height: i32,
    pub source: Vec<Poly>,
    pub images: Vec<Poly>,
}

impl BiliaisonStep {
    pub fn surface_degree(&self) -> i32 {
        self.surface.degree().unwrap_or(0)
    }

    pub fn target_ideal(&self) -> Result<Ideal> {
        let mut gens = self.images.clone();
        gens.push(self.surface.clone());
        Ok(Ideal::new(self.surface.ring, gens)?.minimal_generators())
    }

    /// Applies the step to `I_C`, which must be the recorded source.
    pub fn apply(&self, i: &Ideal) -> Result<Ideal> {
        let src = Ideal::new(self.surface.ring, self.source.clone())?;
        if !src.same_as(i) {
            return Err(Error::Precondition("step applied to a different curve".into()));
        }
        self.target_ideal()
    }
}

/// Replays a chain of steps starting from `start`.
pub fn replay(start: &Ideal, steps: &[BiliaisonStep]) -> Result<Ideal> {
    let mut cur = start.clone();
    for s in steps {
        cur = s.apply(&cur)?;
    }
    Ok(cur)
}

/// `I/(q)` presented on the given generators of `I`.
pub fn quotient_by_surface(gens: &[Poly], q: &Poly) -> Result<GradedModule> {
    let ring = q.ring;
    let degs: Vec<i32> = gens.iter().map(|g| g.degree().unwrap()).collect();
    let cols: Vec<Vector> = gens.iter().map(|g| Vector::from_poly(g, 0, 0)).collect();
    let mut rels = kernel(ring, &degs, &cols, &[0], &[]);
    let coeffs = Lifter::new(ring, &degs, &cols, &[0], &[]).lift(&Vector::from_poly(q, 0, 0)).ok_or(Error::NotContained)?;
    rels.push(coeffs);
    Ok(GradedModule::new(ring, degs, rels))
}

/// `H·I_C + (Q)`, with the step recording multiplication by `H`.
pub fn trivial_biliaison(c: &CurveFamily, q: &Poly, hpoly: &Poly, h: i32) -> Result<(CurveFamily, BiliaisonStep)> {
    let ring = c.ring();
    if q.ring != ring || hpoly.ring != ring {
        return Err(Error::MixedBase);
    }
    let qb = q.reduce_to_fiber();
    if qb.is_zero() {
        return Err(Error::SurfaceNotFlat);
    }
    if !q.is_homogeneous() || !hpoly.is_homogeneous() || hpoly.degree() != Some(h) || h < 0 {
        return Err(Error::Precondition(format!("H must be a nonzero form of degree {h}")));
    }
    let hb = hpoly.reduce_to_fiber();
    let coprime = match h {
        0 => !hb.is_zero(),
        _ => !hb.is_zero() && Ideal::new(hb.ring, vec![hb, qb])?.krull_dimension() == 2,
    };
    if !coprime {
        return Err(Error::NotCoprime);
    }
    if !c.ideal().contains(q) {
        return Err(Error::NotContained);
    }
    let source = c.ideal().gens().to_vec();
    let images: Vec<Poly> = source.iter().map(|g| g.mul(hpoly).unwrap()).collect();
    let mut gens = images.clone();
    gens.push(q.clone());
    let out = validate_curve(&Ideal::new(ring, gens)?.saturate())?;
    Ok((out, BiliaisonStep { surface: q.clone(), height: h, source, images }))
}

#[derive(Clone, Debug)]
pub enum ElementaryCheck {
    Yes(BiliaisonStep),
    No(String),
    Undecided,
}

impl ElementaryCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self, ElementaryCheck::Yes(_))
    }
}

/// Decides `J_{C,Q} ≅ J_{C',Q}(h)` with an explicit witness when it holds.
pub fn check_elementary_biliaison(
    c: &CurveFamily,
    c2: &CurveFamily,
    q: &Poly,
    h: i32,
    trials: usize,
    seed: u64,
) -> Result<ElementaryCheck> {
    if c.ring() != c2.ring() || q.ring != c.ring() {
        return Err(Error::MixedBase);
    }
    if q.reduce_to_fiber().is_zero() {
        return Err(Error::SurfaceNotFlat);
    }
    if !c.ideal().contains(q) || !c2.ideal().contains(q) {
        return Err(Error::NotContained);
    }
    let dq = q.degree().unwrap() as i64;
    if c2.degree != c.degree + h as i64 * dq {
        return Ok(ElementaryCheck::No(format!(
            "degree {} is not {} + {}·{}",
            c2.degree, c.degree, h, dq
        )));
    }
    let src = c.ideal().gens().to_vec();
    let tgt = c2.ideal().gens().to_vec();
    let m1 = quotient_by_surface(&src, q)?;
    let m2 = quotient_by_surface(&tgt, q)?.twist(h);
    match is_module_iso(&m1, &m2, trials, seed) {
        IsoResult::No(why) => Ok(ElementaryCheck::No(why)),
        IsoResult::Undecided => Ok(ElementaryCheck::Undecided),
        IsoResult::Yes(f) => {
            let ring = q.ring;
            let images: Vec<Poly> = (0..src.len())
                .map(|j| {
                    let mut acc = Poly::zero(ring);
                    for (i, g) in tgt.iter().enumerate() {
                        acc = acc.add(&f.entry(i, j).mul(g).unwrap()).unwrap();
                    }
                    acc
                })
                .collect();
            let step = BiliaisonStep { surface: q.clone(), height: h, source: src, images };
            if !step.target_ideal()?.same_as(c2.ideal()) {
                return Err(Error::Certification("witness does not reach the target ideal".into()));
            }
            Ok(ElementaryCheck::Yes(step))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn ci_resolution_examples() {
        let r = ci_resolution(&poly("X"), &poly("Y")).unwrap();
        assert_eq!(r.twists(), vec![vec![-1, -1], vec![-2]]);
        let r = ci_resolution(&poly("XZ-Y^2"), &poly("YW-Z^2")).unwrap();
        assert_eq!(r.twists(), vec![vec![-2, -2], vec![-4]]);
        assert_eq!(ci_resolution(&poly("X"), &poly("XY")).unwrap_err(), Error::NotRegularSequence);
    }

    #[test]
    fn link_cubic_and_line() {
        let cubic = curve(&CUBIC);
        let (f, g) = (poly("XZ-Y^2"), poly("YW-Z^2"));
        let line = link(&cubic, &f, &g).unwrap();
        assert!(line.ideal().same_as(&Ideal::parse(k(), &["Y", "Z"]).unwrap()));
        assert_eq!(line.degree + cubic.degree, 4);
        let back = link(&line, &f, &g).unwrap();
        assert!(back.same_curve(&cubic));
        let ci = curve(&["XZ-Y^2", "YW-Z^2"]);
        assert_eq!(link(&ci, &f, &g).unwrap_err(), Error::ResidualEmpty);
        assert_eq!(link(&line, &poly("X"), &g).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn trivial_biliaison_examples() {
        let skew = curve(&SKEW);
        let (c2, step) = trivial_biliaison(&skew, &poly("XZ+YW"), &poly("X"), 1).unwrap();
        assert_eq!(c2.degree, 4);
        assert_eq!(c2.rao_module().unwrap().dims, [(1, 1)].into_iter().collect());
        assert!(step.apply(skew.ideal()).unwrap().same_as(c2.ideal()));
        let (same, _) = trivial_biliaison(&skew, &poly("XZ+YW"), &Poly::one(k()), 0).unwrap();
        assert!(same.same_curve(&skew));
        let d = BaseRing::dual(DEFAULT_PRIME);
        let skew_a = validate_curve(&Ideal::parse(d, &SKEW).unwrap()).unwrap();
        let bad = Poly::parse(d, "e*XZ").unwrap();
        assert_eq!(trivial_biliaison(&skew_a, &bad, &Poly::parse(d, "X").unwrap(), 1).unwrap_err(), Error::SurfaceNotFlat);
    }

    #[test]
    fn elementary_checks() {
        let skew = curve(&SKEW);
        let q = poly("XZ+YW");
        let (c2, _) = trivial_biliaison(&skew, &q, &poly("X"), 1).unwrap();
        assert!(check_elementary_biliaison(&skew, &c2, &q, 1, 16, 3).unwrap().is_yes());
        assert!(check_elementary_biliaison(&skew, &skew, &q, 0, 16, 3).unwrap().is_yes());
        assert!(matches!(check_elementary_biliaison(&skew, &c2, &q, 0, 16, 3).unwrap(), ElementaryCheck::No(_)));
    }
}
