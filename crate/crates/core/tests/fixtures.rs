use trivext_core::classify::harness::PartStatus;
use trivext_core::classify::{check_lemma_2_2, check_theorem_3_1};
use trivext_core::corpus::CorpusConfig;
use trivext_core::ring::gf::first_irreducible;
use trivext_core::{
    classify, generate, Certificate, ClassifyConfig, Family, FiniteModule, FiniteRing, Literal,
    Verdict,
};

fn z(n: usize) -> FiniteRing {
    FiniteRing::zmod(n).unwrap()
}

fn ext(a: &FiniteRing, e: &FiniteModule) -> FiniteRing {
    FiniteRing::trivial_extension(a, e).unwrap().0
}

fn gf3() -> FiniteRing {
    FiniteRing::gf(3, 1, &first_irreducible(3, 1)).unwrap()
}

fn pair(r: &FiniteRing, a: i64, b: i64) -> usize {
    r.parse_literal(&Literal::Tuple(vec![Literal::Int(a), Literal::Int(b)]))
        .unwrap()
}

/// Closure of `gens` under addition and multiplication by ring elements.
fn naive_ideal(r: &FiniteRing, gens: &[usize]) -> Vec<bool> {
    let mut member = vec![false; r.order()];
    member[r.zero()] = true;
    let mut stack: Vec<usize> = vec![r.zero()];
    for &g in gens {
        if !member[g] {
            member[g] = true;
            stack.push(g);
        }
    }
    while let Some(x) = stack.pop() {
        let current: Vec<usize> = (0..r.order()).filter(|&y| member[y]).collect();
        let reach = r
            .elements()
            .map(|s| r.mul(s, x))
            .chain(current.into_iter().map(|y| r.add(x, y)));
        for y in reach.collect::<Vec<_>>() {
            if !member[y] {
                member[y] = true;
                stack.push(y);
            }
        }
    }
    member
}

fn naive_product(r: &FiniteRing, f: &[usize], g: &[usize]) -> Vec<usize> {
    let mut out = vec![r.zero(); f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(a, b));
        }
    }
    out
}

fn ideal_mul(r: &FiniteRing, i: &[bool], j: &[bool]) -> Vec<bool> {
    let mut gens = Vec::new();
    for a in (0..r.order()).filter(|&a| i[a]) {
        for b in (0..r.order()).filter(|&b| j[b]) {
            gens.push(r.mul(a, b));
        }
    }
    naive_ideal(r, &gens)
}

#[test]
fn zmod_six_has_zero_divisors() {
    let r = z(6);
    assert_eq!(r.order(), 6);
    assert_eq!(r.mul(2, 3), 0);
}

#[test]
fn crt_product_matches_zmod_six() {
    let (p, r6) = (FiniteRing::product(&z(2), &z(3)).unwrap(), z(6));
    assert_eq!(p.order(), 6);
    let phi: Vec<usize> = (0..6)
        .map(|k| pair(&p, k as i64 % 2, k as i64 % 3))
        .collect();
    let mut image = phi.clone();
    image.sort_unstable();
    image.dedup();
    assert_eq!(image.len(), 6);
    assert_eq!(phi[1], p.one());
    for a in r6.elements() {
        for b in r6.elements() {
            assert_eq!(phi[r6.add(a, b)], p.add(phi[a], phi[b]));
            assert_eq!(phi[r6.mul(a, b)], p.mul(phi[a], phi[b]));
        }
    }
    assert!(p.isomorphism_to(&r6).is_some());
}

#[test]
fn gf_four_nonzero_elements_are_units() {
    let r = FiniteRing::gf(2, 2, &[1, 1, 1]).unwrap();
    assert_eq!(r.order(), 4);
    for a in r.elements().filter(|&a| a != r.zero()) {
        assert!(r.elements().any(|b| r.mul(a, b) == r.one()));
        assert!(r.is_unit(a));
    }
}

#[test]
fn idealization_law_by_hand() {
    let z4 = z(4);
    let r = ext(&z4, &FiniteModule::quotient(&z4, &[2]).unwrap());
    assert_eq!(r.order(), 8);
    let (a, e, m) = (pair(&r, 2, 0), pair(&r, 0, 1), pair(&r, 2, 1));
    assert_eq!(r.mul(a, a), r.zero());
    assert_eq!(r.mul(a, e), r.zero());
    assert_eq!(r.mul(m, a), r.zero());
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(r.mul(pair(&r, 0, x), pair(&r, 0, y)), r.zero());
        }
    }
    let f2 = z(2);
    let s = ext(&f2, &FiniteModule::free(&f2, 2).unwrap());
    assert_eq!(s.order(), 8);
    assert_eq!(s.is_local().unwrap().order(), 4);
}

/// Every pair of linear polynomials satisfies `c(fg) = c(f)c(g)`.
#[test]
fn z8_over_z2_is_gaussian_through_its_base() {
    let z8 = z(8);
    let r = ext(&z8, &FiniteModule::quotient(&z8, &[2]).unwrap());
    assert_eq!(r.order(), 16);
    let report = classify(&r, &ClassifyConfig::default()).unwrap();
    let g = &report.conditions.gaussian;
    assert_eq!(g.verdict, Verdict::Yes);
    assert!(
        matches!(g.certificate, Certificate::ViaTrivialExtension { .. }),
        "{:?}",
        g.certificate
    );

    let n = r.order();
    let contents: Vec<Vec<bool>> = (0..n * n)
        .map(|k| naive_ideal(&r, &[k / n, k % n]))
        .collect();
    for f in 0..n * n {
        for g in 0..n * n {
            let (fc, gc) = ([f / n, f % n], [g / n, g % n]);
            let lhs = naive_ideal(&r, &naive_product(&r, &fc, &gc));
            assert_eq!(
                lhs,
                ideal_mul(&r, &contents[f], &contents[g]),
                "{fc:?} {gc:?}"
            );
        }
    }
}

#[test]
fn tiny_corpus_with_every_family() {
    let cfg = CorpusConfig {
        max_order: 4,
        families: Family::ALL.to_vec(),
        ..CorpusConfig::default()
    };
    let members = generate(&cfg).unwrap();
    let names: Vec<&str> = members.iter().map(|m| m.ring.name()).collect();
    let not_regular: Vec<&str> = members
        .iter()
        .filter(|m| {
            m.ring.elements().any(|a| {
                m.ring
                    .elements()
                    .all(|x| m.ring.mul(m.ring.mul(a, a), x) != a)
            })
        })
        .map(|m| m.ring.name())
        .collect();
    assert_eq!(not_regular.len(), 2, "{names:?}");
    assert!(not_regular.contains(&"zmod(4)"));
    assert!(
        not_regular.iter().any(|n| n.contains('∝')),
        "{not_regular:?}"
    );
}

#[test]
fn field_reports_are_all_positive() {
    let r = gf3();
    let report = classify(&r, &ClassifyConfig::default()).unwrap();
    for (name, c) in report.conditions.entries() {
        let expected = if name == "weak_dim" {
            Verdict::Zero
        } else {
            Verdict::Yes
        };
        assert_eq!(c.verdict, expected, "{name}");
    }
}

#[test]
fn plane_over_f2_profile() {
    let f2 = z(2);
    let r = ext(&f2, &FiniteModule::free(&f2, 2).unwrap());
    let c = classify(&r, &ClassifyConfig::default()).unwrap().conditions;
    assert_eq!(c.arithmetical.verdict, Verdict::No);
    assert_eq!(c.gaussian.verdict, Verdict::Yes);
    assert_eq!(c.pseudo_arithmetical.verdict, Verdict::No);
    assert_eq!(c.zero_locally_irreducible.verdict, Verdict::No);
    assert_eq!(c.total_quotient_ring.verdict, Verdict::Yes);
    assert_eq!(c.weak_dim.verdict, Verdict::Infinite);
}

#[test]
fn structure_theorem_examples() {
    let cfg = ClassifyConfig::default();
    for (a, n) in [(z(9), 1), (gf3(), 1), (z(4), 1), (z(2), 1), (z(2), 2)] {
        let h = check_theorem_3_1(&a, n, &cfg).unwrap();
        assert!(h.passed, "{h:?}");
        assert_eq!(h.flagged(), 0, "{h:?}");
    }
    let h = check_theorem_3_1(&z(4), 2, &cfg).unwrap();
    assert_eq!(h.order, 16);
    assert!(h.passed && h.flagged() == 0, "{h:?}");
    let f2 = z(2);
    let r = ext(&f2, &FiniteModule::free(&f2, 2).unwrap());
    let c = classify(&r, &cfg).unwrap().conditions;
    assert_eq!(
        (c.arithmetical.verdict, c.gaussian.verdict),
        (Verdict::No, Verdict::Yes)
    );
    let z4 = z(4);
    let r = ext(&z4, &FiniteModule::residue_space(&z4, 2).unwrap());
    let c = classify(&r, &cfg).unwrap().conditions;
    assert_eq!(c.arithmetical.verdict, Verdict::No);
    assert_eq!(c.gaussian.verdict, Verdict::Yes);
    assert_eq!(c.weak_dim.verdict, Verdict::Infinite);
}

#[test]
fn quotient_transfer_examples() {
    let cfg = ClassifyConfig::default();
    let (z4, f2) = (z(4), z(2));
    let rings = [
        ext(&z4, &FiniteModule::quotient(&z4, &[2]).unwrap()),
        ext(&f2, &FiniteModule::free(&f2, 1).unwrap()),
        ext(&f2, &FiniteModule::free(&f2, 2).unwrap()),
    ];
    for r in &rings {
        let h = check_lemma_2_2(r, &cfg).unwrap();
        assert!(h.passed, "{h:?}");
        assert!(
            h.parts.iter().all(|p| p.status == PartStatus::Pass),
            "{h:?}"
        );
    }
}
