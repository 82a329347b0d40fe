use proptest::prelude::*;

use trivext_core::classify::module_ideal;
use trivext_core::ideal::{enumerate_ideals, localizations};
use trivext_core::poly::dedekind_mertens_check;
use trivext_core::{ideal_generated_by, FiniteModule, FiniteRing, RingPoly};

fn zoo() -> Vec<FiniteRing> {
    let z = |n| FiniteRing::zmod(n).unwrap();
    let ext = |a: &FiniteRing, e: &FiniteModule| FiniteRing::trivial_extension(a, e).unwrap().0;
    let (z2, z4, z8) = (z(2), z(4), z(8));
    vec![
        z(6),
        z(9),
        z(12),
        FiniteRing::gf(3, 2, &[1, 0, 1]).unwrap(),
        FiniteRing::product(&z2, &z4).unwrap(),
        ext(&z4, &FiniteModule::residue_space(&z4, 1).unwrap()),
        ext(&z2, &FiniteModule::free(&z2, 2).unwrap()),
        ext(&z4, &FiniteModule::free(&z4, 1).unwrap()),
        ext(&z8, &FiniteModule::residue_space(&z8, 1).unwrap()),
        FiniteRing::product(&z(3), &ext(&z2, &FiniteModule::free(&z2, 1).unwrap())).unwrap(),
    ]
}

fn poly(r: &FiniteRing, raw: &[usize]) -> RingPoly {
    RingPoly::new(r, raw.iter().map(|&c| c % r.order()).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..1 << 16, 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn content_formula(ring in 0usize..10, f in coeffs(), g in coeffs()) {
        let r = &zoo()[ring];
        let (f, g) = (poly(r, &f), poly(r, &g));
        prop_assert!(dedekind_mertens_check(&f, &g).unwrap());
    }

    #[test]
    fn product_content_is_contained(ring in 0usize..10, f in coeffs(), g in coeffs()) {
        let r = &zoo()[ring];
        let (f, g) = (poly(r, &f), poly(r, &g));
        let cfg = f.content().product(&g.content()).unwrap();
        prop_assert!(f.mul(&g).unwrap().content().is_subset(&cfg));
    }

    #[test]
    fn unit_scaling_keeps_content(ring in 0usize..10, f in coeffs(), u in 0usize..1 << 16) {
        let r = &zoo()[ring];
        let units: Vec<usize> = r.units().ones().collect();
        let u = units[u % units.len()];
        let f = poly(r, &f);
        prop_assert_eq!(f.scale(u).content(), f.content());
    }

    #[test]
    fn ideal_arithmetic(ring in 0usize..10, a in coeffs(), b in coeffs()) {
        let r = &zoo()[ring];
        let i = ideal_generated_by(r, poly(r, &a).coeffs());
        let j = ideal_generated_by(r, poly(r, &b).coeffs());
        let meet = i.intersection(&j).unwrap();
        let join = i.sum(&j).unwrap();
        prop_assert!(i.product(&j).unwrap().is_subset(&meet));
        prop_assert!(meet.is_subset(&i) && meet.is_subset(&j));
        prop_assert!(i.is_subset(&join) && j.is_subset(&join));
        let lattice = enumerate_ideals(r, 4096).unwrap();
        prop_assert!(lattice.id_of(&join).is_some());
    }

    #[test]
    fn localization_is_monotone(ring in 0usize..10, a in coeffs(), b in coeffs()) {
        let r = &zoo()[ring];
        let i = ideal_generated_by(r, poly(r, &a).coeffs());
        let j = i.sum(&ideal_generated_by(r, poly(r, &b).coeffs())).unwrap();
        for loc in localizations(r) {
            prop_assert!(loc.push(&i).is_subset(&loc.push(&j)));
        }
    }
}

#[test]
fn quotient_by_module_ideal_recovers_the_base() {
    for r in zoo() {
        if let trivext_core::ring::Construction::TrivExt { base, .. } = r.construction() {
            let (q, pi) = r.quotient(&module_ideal(&r).unwrap()).unwrap();
            assert_eq!(q.order(), base.order());
            assert!(q.isomorphism_to(base).is_some(), "{}", r.name());
            assert!(pi.is_surjective());
        }
    }
}
