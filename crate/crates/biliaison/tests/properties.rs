use biliaison::curve::{validate_curve, CurveFamily};
use biliaison::gradedmod::{is_module_iso, IsoResult};
use biliaison::groebner::Ideal;
use biliaison::liaison::{link, trivial_biliaison};
use biliaison::polyring::Poly;
use biliaison::raoclass::rao_equivalent;
use biliaison::scalars::{BaseRing, DEFAULT_PRIME};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CURVES: [&[&str]; 6] = [
    &["X", "Y"],
    &["X", "Y^2-Z*W"],
    &["XZ-Y^2", "YW-Z^2", "XW-YZ"],
    &["XZ", "XW", "YZ", "YW"],
    &["X", "YZ"],
    &["XY", "XZ", "WY", "WZ"],
];

fn field() -> BaseRing {
    BaseRing::field(DEFAULT_PRIME)
}

fn curve(ring: BaseRing, g: &[&str]) -> CurveFamily {
    validate_curve(&Ideal::parse(ring, g).unwrap()).unwrap()
}

/// A random element of `I` of degree `d`.
fn element(i: &Ideal, d: i32, rng: &mut ChaCha8Rng) -> Poly {
    let mut acc = Poly::zero(i.ring);
    for g in i.gens() {
        let m = Poly::random_form(i.ring, d - g.degree().unwrap(), rng);
        acc = acc.add(&m.mul(g).unwrap()).unwrap();
    }
    acc
}

/// Two random elements of degree `s`, `t` that link `c`, if the draw works.
fn random_ci(c: &CurveFamily, rng: &mut ChaCha8Rng) -> Option<(Poly, Poly, CurveFamily)> {
    let top = c.ideal().gens().iter().map(|g| g.degree().unwrap()).max().unwrap();
    let s = top + rng.gen_range(0..2);
    let t = top + rng.gen_range(0..2);
    let f = element(c.ideal(), s, rng);
    let g = element(c.ideal(), t, rng);
    link(c, &f, &g).ok().map(|l| (f, g, l))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, .. ProptestConfig::default() })]

    #[test]
    fn link_is_an_involution_and_adds_degrees(idx in 0usize..CURVES.len(), seed in any::<u64>()) {
        let c = curve(field(), CURVES[idx]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((f, g, l)) = random_ci(&c, &mut rng) else { return Err(TestCaseError::reject("special CI")) };
        let st = (f.degree().unwrap() * g.degree().unwrap()) as i64;
        prop_assert_eq!(c.degree + l.degree, st);
        let back = link(&l, &f, &g).unwrap();
        prop_assert!(back.same_curve(&c));
    }

    #[test]
    fn rao_module_of_a_link_is_the_shifted_dual(idx in 0usize..CURVES.len(), seed in any::<u64>()) {
        let c = curve(field(), CURVES[idx]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((_, _, l)) = random_ci(&c, &mut rng) else { return Err(TestCaseError::reject("special CI")) };
        let dual = c.rao_module().unwrap().dual().unwrap();
        prop_assert!(rao_equivalent(l.rao_module().unwrap(), &dual, 32, seed).is_yes());
    }

    #[test]
    fn trivial_biliaison_shifts_the_rao_module(idx in 0usize..CURVES.len(), h in 0i32..3, seed in any::<u64>()) {
        let c = curve(field(), CURVES[idx]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = c.ideal().gens().iter().map(|g| g.degree().unwrap()).max().unwrap();
        let q = element(c.ideal(), d, &mut rng);
        let hp = Poly::random_form(field(), h, &mut rng);
        let Ok((c2, _)) = trivial_biliaison(&c, &q, &hp, h) else { return Err(TestCaseError::reject("special surface")) };
        prop_assert_eq!(c2.degree, c.degree + (h * d) as i64);
        let shifted = c.rao_module().unwrap().twist(-h);
        let iso = is_module_iso(&c2.rao_module().unwrap().module, &shifted.module, 32, seed);
        prop_assert!(matches!(iso, IsoResult::Yes(_)));
    }

    #[test]
    fn linkage_commutes_with_the_fiber(idx in 0usize..CURVES.len(), seed in any::<u64>()) {
        let dual = BaseRing::dual(DEFAULT_PRIME);
        let c = curve(dual, CURVES[idx]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((f, g, l)) = random_ci(&c, &mut rng) else { return Err(TestCaseError::reject("special CI")) };
        let cf = c.fiber().unwrap();
        let lf = link(&cf, &f.reduce_to_fiber(), &g.reduce_to_fiber()).unwrap();
        prop_assert!(l.fiber().unwrap().same_curve(&lf));
    }

    #[test]
    fn validation_ignores_generator_order_and_scaling(idx in 0usize..CURVES.len(), seed in any::<u64>()) {
        let c = curve(field(), CURVES[idx]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens: Vec<Poly> = c.ideal().gens().to_vec();
        for i in (1..gens.len()).rev() {
            gens.swap(i, rng.gen_range(0..=i));
        }
        let gens: Vec<Poly> = gens.iter().map(|g| g.scale_field(rng.gen_range(1..DEFAULT_PRIME))).collect();
        let c2 = validate_curve(&Ideal::new(field(), gens).unwrap()).unwrap();
        prop_assert!(c2.same_curve(&c));
        prop_assert_eq!(c2.degree_genus(), c.degree_genus());
        prop_assert_eq!(c2.regularity, c.regularity);
        prop_assert_eq!(&c2.rao_module().unwrap().dims, &c.rao_module().unwrap().dims);
    }

    #[test]
    fn polynomials_print_and_parse_back(seed in any::<u64>(), d in 0i32..4, dual in any::<bool>()) {
        let ring = if dual { BaseRing::dual(DEFAULT_PRIME) } else { field() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Poly::random_form(ring, d, &mut rng);
        prop_assert_eq!(Poly::parse(ring, &f.to_string()).unwrap(), f);
    }
}
