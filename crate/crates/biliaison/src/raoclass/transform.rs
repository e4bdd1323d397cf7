//! How N-type and E-type resolutions move under one liaison, and the
//! sequence joining the two types for a single curve.

use crate::error::{Error, Result};
use crate::gradedmod::{dot, dual_module, GradedMap, GradedModule};
use crate::groebner::{Ideal, Lifter, Vector};
use crate::liaison::CompleteIntersection;
use crate::polyring::Poly;

use super::{certify_short_exact, ETypeResolution, NTypeResolution};

fn poly_lifter(ring: crate::scalars::BaseRing, degs: &[i32], polys: &[Poly]) -> Lifter {
    let cols: Vec<Vector> = polys.iter().map(|f| Vector::from_poly(f, 0, 0)).collect();
    Lifter::new(ring, degs, &cols, &[0], &[])
}

fn lift_poly(l: &Lifter, f: &Poly) -> Option<Vector> {
    if f.is_zero() {
        return Some(Vector::zero());
    }
    l.lift(&Vector::from_poly(f, 0, 0))
}

fn check_ci(ideal: &Ideal, f: &Poly, g: &Poly) -> Result<CompleteIntersection> {
    if f.ring != ideal.ring || g.ring != ideal.ring {
        return Err(Error::MixedBase);
    }
    if !ideal.contains(f) || !ideal.contains(g) {
        return Err(Error::NotContained);
    }
    CompleteIntersection::new(f, g)
}

fn nonzero_ideal(ring: crate::scalars::BaseRing, polys: &[Poly]) -> Result<Ideal> {
    Ok(Ideal::new(ring, polys.iter().filter(|f| !f.is_zero()).cloned().collect())?.minimal_generators())
}

/// From `0 → P → N → I_{C₁} → 0` and a complete intersection `(F, G)` in
/// `I_{C₁}`, the E-type resolution
/// `0 → N^∨(-s-t) → P^∨(-s-t) ⊕ R(-t) ⊕ R(-s) → I_{C₂} → 0` of the linked curve.
pub fn link_transform_n_to_e(res: &NTypeResolution, f: &Poly, g: &Poly) -> Result<ETypeResolution> {
    let ci = check_ci(&res.ideal, f, g)?;
    let ring = f.ring;
    let p = ring.p;
    let st = ci.s + ci.t;
    let n = &res.n;
    let lifter = poly_lifter(ring, &n.degs, &res.surj);
    let nf = lift_poly(&lifter, f).ok_or(Error::Certification("F does not lift through N".into()))?;
    let ng = lift_poly(&lifter, g).ok_or(Error::Certification("G does not lift through N".into()))?;
    // the Koszul syzygy lands in the image of P: φ(π) = F·n_G - G·n_F
    let target = ng.mul_poly(f).sub(&nf.mul_poly(g), p);
    let pl = Lifter::new(ring, &res.phi.src, &res.phi.cols, &n.degs, &n.rels);
    let pi = if target.is_zero() || res.p_degs.is_empty() {
        if !n.is_zero_element(&target) {
            return Err(Error::Certification("Koszul syzygy is not in the image of P".into()));
        }
        Vector::zero()
    } else {
        pl.lift(&target).ok_or(Error::Certification("Koszul syzygy is not in the image of P".into()))?
    };
    let (dual, lambdas) = dual_module(n);
    let e = dual.twist(-st);
    let mut f_degs: Vec<i32> = res.p_degs.iter().map(|a| st - a).collect();
    f_degs.push(ci.t);
    f_degs.push(ci.s);
    let cols: Vec<Vector> = lambdas
        .iter()
        .map(|lam| {
            let mut comps: Vec<Poly> = res.phi.cols.iter().map(|c| dot(lam, c, ring)).collect();
            comps.push(dot(lam, &nf, ring));
            comps.push(dot(lam, &ng, ring));
            Vector::from_components(&comps)
        })
        .collect();
    let incl = GradedMap::new(ring, e.degs.clone(), f_degs.clone(), cols);
    let mut surj: Vec<Poly> = (0..res.p_degs.len()).map(|j| pi.component(j as u32, ring)).collect();
    surj.push(g.clone());
    surj.push(f.neg());
    let ideal = nonzero_ideal(ring, &surj)?;
    let out = ETypeResolution { ideal, e, f_degs, incl, surj };
    out.certify()?;
    Ok(out)
}

/// Last degree where `I_C / J` is nonzero, `J` the image of the cover.
fn cover_gap(ideal: &Ideal, surj: &[Poly]) -> Result<i32> {
    let j = nonzero_ideal(ideal.ring, surj)?;
    let gap = j.quotient_series().sub(&ideal.quotient_series());
    Ok(gap.top_degree().unwrap_or(i32::MIN))
}

/// From `0 → E → F → I_{C₁} → 0` and `(F, G)`, the N-type resolution
/// `0 → F^∨(-s-t) → E^∨(-s-t) ⊕ R(-t) ⊕ R(-s) → I_{C₂} → 0`. Needs `F` and
/// `G` to lift through the cover.
pub fn link_transform_e_to_n(res: &ETypeResolution, f: &Poly, g: &Poly) -> Result<NTypeResolution> {
    let ci = check_ci(&res.ideal, f, g)?;
    let ring = f.ring;
    let p = ring.p;
    let st = ci.s + ci.t;
    let lifter = poly_lifter(ring, &res.f_degs, &res.surj);
    let (ff, fg) = match (lift_poly(&lifter, f), lift_poly(&lifter, g)) {
        (Some(a), Some(b)) => (a, b),
        (a, b) => {
            let mut degrees = Vec::new();
            if a.is_none() {
                degrees.push(ci.s);
            }
            if b.is_none() {
                degrees.push(ci.t);
            }
            return Err(Error::NoLift { n0: cover_gap(&res.ideal, &res.surj)?, degrees });
        }
    };
    // ι(ε) = F·f_G - G·f_F
    let target = fg.mul_poly(f).sub(&ff.mul_poly(g), p);
    let eps = if target.is_zero() {
        Vector::zero()
    } else {
        Lifter::new(ring, &res.incl.src, &res.incl.cols, &res.f_degs, &[])
            .lift(&target)
            .ok_or(Error::Certification("Koszul syzygy is not in the image of E".into()))?
    };
    let (dual, nus) = dual_module(&res.e);
    let e_dual_degs: Vec<i32> = res.e.degs.iter().map(|a| -a).collect();
    let nd = dual.degs.len() as u32;
    let mut n_degs: Vec<i32> = dual.degs.iter().map(|d| d + st).collect();
    n_degs.push(ci.t);
    n_degs.push(ci.s);
    let n = GradedModule::new(ring, n_degs.clone(), dual.rels.clone());
    let p_degs: Vec<i32> = res.f_degs.iter().map(|a| st - a).collect();
    let row_lifter = Lifter::new(ring, &dual.degs, &nus, &e_dual_degs, &[]);
    let phi_cols = (0..res.f_degs.len())
        .map(|j| {
            let comps: Vec<Poly> = res.incl.cols.iter().map(|c| c.component(j as u32, ring)).collect();
            let row = if comps.is_empty() { Vector::zero() } else { Vector::from_components(&comps) };
            let coords = if row.is_zero() {
                Vector::zero()
            } else {
                row_lifter.lift(&row).ok_or(Error::Certification("μ∘ι is not in Hom(E, R)".into()))?
            };
            let tail = Vector::from_components(&[ff.component(j as u32, ring), fg.component(j as u32, ring)]);
            Ok(coords.add(&tail.remap(|q| Some((q + nd, 0)), p), p))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = GradedMap::new(ring, p_degs.clone(), n_degs, phi_cols);
    let mut surj: Vec<Poly> = nus.iter().map(|nu| dot(nu, &eps, ring)).collect();
    surj.push(g.clone());
    surj.push(f.neg());
    let ideal = nonzero_ideal(ring, &surj)?;
    let out = NTypeResolution { ideal, p_degs, n, phi, surj };
    out.certify()?;
    Ok(out)
}

/// `0 → E → P ⊕ F → N → 0` for one curve, from its two resolution types.
#[derive(Clone, Debug)]
pub struct AssembledSequence {
    pub e: GradedModule,
    pub middle_degs: Vec<i32>,
    /// `F_E → P ⊕ F`.
    pub left: GradedMap,
    /// `P ⊕ F → F_N`.
    pub right: GradedMap,
}

pub fn assemble_e_p_f_n(nres: &NTypeResolution, eres: &ETypeResolution) -> Result<AssembledSequence> {
    if !nres.ideal.same_as(&eres.ideal) {
        return Err(Error::Precondition("resolutions of different curves".into()));
    }
    let ring = nres.n.ring;
    let p = ring.p;
    let n = &nres.n;
    let lifter = poly_lifter(ring, &n.degs, &nres.surj);
    let psi_cols = eres
        .surj
        .iter()
        .map(|f| lift_poly(&lifter, f).ok_or(Error::Certification("cover does not lift through N".into())))
        .collect::<Result<Vec<_>>>()?;
    let psi = GradedMap::new(ring, eres.f_degs.clone(), n.degs.clone(), psi_cols);
    let right = nres.phi.hstack(&psi);
    let np = nres.p_degs.len() as u32;
    let pl = Lifter::new(ring, &nres.phi.src, &nres.phi.cols, &n.degs, &n.rels);
    let left_cols = eres
        .incl
        .cols
        .iter()
        .map(|iota| {
            let y = psi.apply(iota);
            let pi = if n.is_zero_element(&y) {
                Vector::zero()
            } else {
                pl.lift(&y).ok_or(Error::Certification("ψ∘ι does not factor through P".into()))?
            };
            Ok(iota.remap(|q| Some((q + np, 0)), p).sub(&pi, p))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut middle_degs = nres.p_degs.clone();
    middle_degs.extend(&eres.f_degs);
    let left = GradedMap::new(ring, eres.e.degs.clone(), middle_degs.clone(), left_cols);
    certify_short_exact(&eres.e, &left, &GradedModule::free(ring, middle_degs.clone()), &right, n)?;
    Ok(AssembledSequence { e: eres.e.clone(), middle_degs, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{validate_curve, CurveFamily};
    use crate::liaison::link;
    use crate::raoclass::{e_type_resolution, n_type_resolution, psi_equivalent, Equivalence};
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

    #[test]
    fn n_to_e_both_directions() {
        let (f, g) = (poly("XZ-Y^2"), poly("YW-Z^2"));
        let cubic = curve(&CUBIC);
        let e = link_transform_n_to_e(&n_type_resolution(&cubic).unwrap(), &f, &g).unwrap();
        assert_eq!(e.e_twists(), vec![-2, -2, -2]);
        assert_eq!(e.f_twists(), vec![-2, -2, -1, -1]);
        assert!(e.ideal.same_as(link(&cubic, &f, &g).unwrap().ideal()));
        let line = curve(&["Y", "Z"]);
        let e = link_transform_n_to_e(&n_type_resolution(&line).unwrap(), &f, &g).unwrap();
        assert!(e.ideal.same_as(cubic.ideal()));
        assert_eq!(
            link_transform_n_to_e(&n_type_resolution(&line).unwrap(), &poly("X^2"), &g).unwrap_err(),
            Error::NotContained
        );
    }

    #[test]
    fn e_to_n_line_to_cubic() {
        let (f, g) = (poly("XZ-Y^2"), poly("YW-Z^2"));
        let line = curve(&["Y", "Z"]);
        let n = link_transform_e_to_n(&e_type_resolution(&line).unwrap(), &f, &g).unwrap();
        let cubic = curve(&CUBIC);
        assert!(n.ideal.same_as(cubic.ideal()));
        let direct = n_type_resolution(&cubic).unwrap();
        assert_eq!(psi_equivalent(&n.n, &direct.n, false, 16, 3).unwrap(), Equivalence::Yes(0));
    }

    #[test]
    fn e_to_n_no_lift() {
        // cover of (Y, Z) by (Y, Z)·m misses degree 1
        let line = curve(&["Y", "Z"]);
        let mut surj = Vec::new();
        for a in ["Y", "Z"] {
            for v in ["X", "Y", "Z", "W"] {
                surj.push(poly(&format!("{a}*{v}")));
            }
        }
        let j = Ideal::new(k(), surj.clone()).unwrap().minimal_generators();
        let res = crate::gradedmod::free_resolution(&GradedModule::quotient_ring(&j)).unwrap();
        let surj: Vec<Poly> = res.maps[0].cols.iter().map(|v| v.component(0, k())).collect();
        let e = GradedModule::new(k(), res.maps[1].src.clone(), res.maps.get(2).map(|d| d.cols.clone()).unwrap_or_default());
        let eres = ETypeResolution { ideal: line.ideal().clone(), e, f_degs: res.degs[1].clone(), incl: res.maps[1].clone(), surj };
        match link_transform_e_to_n(&eres, &poly("Y"), &poly("Z^2")).unwrap_err() {
            Error::NoLift { n0, degrees } => {
                assert_eq!(n0, 1);
                assert_eq!(degrees, vec![1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn assembled_sequences() {
        for g in [&["Y", "Z"][..], &CUBIC[..], &["XZ", "XW", "YZ", "YW"][..]] {
            let c = curve(g);
            let n = n_type_resolution(&c).unwrap();
            let e = e_type_resolution(&c).unwrap();
            assemble_e_p_f_n(&n, &e).unwrap();
        }
    }
}
