//! The nine acceptance criteria. Each test prints one `criterion N` line
//! with its outcome before asserting.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use trivext_core::classify::{ClassificationReport, Witness};
use trivext_core::corpus::{
    conjecture45, generate, run_corpus, run_theorems, Agreement, CorpusConfig,
};
use trivext_core::ideal::{enumerate_ideals, DEFAULT_LATTICE_BOUND};
use trivext_core::poly::{
    certify_gaussian, dedekind_mertens_check, gaussian_witness_search, GaussianVerdict,
};
use trivext_core::ring::axioms::{verify_module_axioms, verify_ring_axioms};
use trivext_core::ring::Construction;
use trivext_core::{
    build_ring, classify, ideal_generated_by, parse_ring_spec, ClassifyConfig, FiniteModule,
    FiniteRing, Literal, RingPoly, SearchConfig, Verdict,
};

fn outcome(n: u32, name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {n} ({name}): pass");
    } else {
        println!("criterion {n} ({name}): FAIL");
        for f in &failures {
            println!("    {f}");
        }
        panic!("criterion {n} failed with {} problems", failures.len());
    }
}

struct Checks(Vec<String>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.0.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn that(&mut self, what: &str, ok: bool) {
        if !ok {
            self.0.push(what.to_string());
        }
    }

    fn within(&mut self, what: &str, took: Duration, limit: Duration) {
        if took > limit {
            self.0
                .push(format!("{what} took {took:?}, limit {limit:?}"));
        }
    }
}

fn fixture(name: &str) -> FiniteRing {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    build_ring(&parse_ring_spec(&text).unwrap()).unwrap()
}

fn timed_classify(name: &str) -> (FiniteRing, ClassificationReport, Duration) {
    let start = Instant::now();
    let r = fixture(name);
    let report = classify(&r, &ClassifyConfig::default()).unwrap();
    (r, report, start.elapsed())
}

#[test]
fn criterion_1_z4() {
    let (_, report, took) = timed_classify("z4.ring");
    let c = &report.conditions;
    let mut k = Checks::new();
    k.eq("arithmetical", c.arithmetical.verdict, Verdict::Yes);
    k.eq("reduced", c.reduced.verdict, Verdict::No);
    k.eq("weak_dim", c.weak_dim.verdict, Verdict::Infinite);
    k.eq("gaussian", c.gaussian.verdict, Verdict::Yes);
    k.eq(
        "pseudo_arithmetical",
        c.pseudo_arithmetical.verdict,
        Verdict::Yes,
    );
    k.eq(
        "zero_locally_irreducible",
        c.zero_locally_irreducible.verdict,
        Verdict::Yes,
    );
    k.eq("semihereditary", c.semihereditary.verdict, Verdict::No);
    k.within("classification", took, Duration::from_secs(1));
    outcome(1, "Z/4", k.0);
}

#[test]
fn criterion_2_z4_by_z2() {
    let (r, report, took) = timed_classify("z4_z2.ring");
    let c = &report.conditions;
    let mut k = Checks::new();
    k.eq(
        "total_quotient_ring",
        c.total_quotient_ring.verdict,
        Verdict::Yes,
    );
    k.eq("pruefer", c.pruefer.verdict, Verdict::Yes);
    k.eq("gaussian", c.gaussian.verdict, Verdict::Yes);
    k.that(
        "gaussian is exact",
        c.gaussian.is_exact() && c.gaussian.bound.is_none(),
    );
    k.eq("arithmetical", c.arithmetical.verdict, Verdict::No);
    k.that(
        "arithmetical witness",
        matches!(c.arithmetical.witness, Some(Witness::Ideal { .. })),
    );
    k.eq("weak_dim", c.weak_dim.verdict, Verdict::Infinite);
    k.eq(
        "pseudo_arithmetical",
        c.pseudo_arithmetical.verdict,
        Verdict::No,
    );
    match &c.pseudo_arithmetical.witness {
        Some(Witness::Polynomial {
            f, content_order, ..
        }) => {
            k.eq("witness polynomial", f.as_str(), "(2,0) + (0,1)x");
            k.eq("content order", *content_order, 4);
        }
        other => k.0.push(format!("pseudo_arithmetical witness: {other:?}")),
    }
    let pair = |a, e| {
        r.parse_literal(&Literal::Tuple(vec![Literal::Int(a), Literal::Int(e)]))
            .unwrap()
    };
    let f = [pair(2, 0), pair(0, 1)];
    let content = ideal_generated_by(&r, &f);
    k.eq("content order (recomputed)", content.order(), 4);
    k.eq("content principal", content.is_principal(), None);
    k.eq(
        "zero_locally_irreducible",
        c.zero_locally_irreducible.verdict,
        Verdict::No,
    );
    k.within("classification", took, Duration::from_secs(1));
    outcome(2, "Z/4 by Z/2", k.0);
}

#[test]
fn criterion_3_f2_by_f2_squared() {
    let (r, report, took) = timed_classify("f2_f2sq.ring");
    let c = &report.conditions;
    let mut k = Checks::new();
    k.eq("gaussian", c.gaussian.verdict, Verdict::Yes);
    k.that("gaussian is exact", c.gaussian.is_exact());
    k.eq("arithmetical", c.arithmetical.verdict, Verdict::No);
    k.eq(
        "pseudo_arithmetical",
        c.pseudo_arithmetical.verdict,
        Verdict::No,
    );
    k.eq(
        "zero_locally_irreducible",
        c.zero_locally_irreducible.verdict,
        Verdict::No,
    );
    let lattice = enumerate_ideals(&r, DEFAULT_LATTICE_BOUND).unwrap();
    k.eq("ideals", lattice.len(), 6);
    k.eq("atoms", lattice.atoms().len(), 3);
    k.within("classification", took, Duration::from_secs(1));
    outcome(3, "F2 by F2^2", k.0);
}

#[test]
fn criterion_4_f2_by_f2() {
    let (_, report, _) = timed_classify("f2_f2.ring");
    let mut k = Checks::new();
    k.eq(
        "arithmetical",
        report.conditions.arithmetical.verdict,
        Verdict::Yes,
    );
    outcome(4, "F2 by F2", k.0);
}

fn is_prime_power(n: usize) -> bool {
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

#[test]
fn criterion_5_structure_harness() {
    let start = Instant::now();
    let cfg = CorpusConfig::default();
    let report = run_theorems(&cfg).unwrap();
    let took = start.elapsed();
    let mut k = Checks::new();
    for e in &report.errors {
        k.0.push(format!("error: {e}"));
    }
    for h in report.failed() {
        k.0.push(format!("failed: {} {:?}", h.ring, h.parts));
    }
    let mut required: Vec<String> = (2..=32usize)
        .filter(|&n| is_prime_power(n))
        .map(|n| format!("zmod({n})"))
        .collect();
    required.extend(["gf(2,2)", "gf(2,3)", "gf(3,2)", "gf(2,4)"].map(String::from));
    for base in &required {
        for n in [1, 2] {
            let covered = report
                .theorem
                .iter()
                .any(|h| &h.base == base && h.dimension == Some(n) && h.passed);
            k.that(&format!("structure check for {base}, n = {n}"), covered);
        }
    }
    let trivexts = generate(&cfg)
        .unwrap()
        .iter()
        .filter(|m| matches!(m.ring.construction(), Construction::TrivExt { .. }))
        .count();
    k.eq("quotient checks", report.lemma.len(), trivexts);
    k.within("harness run", took, Duration::from_secs(300));
    outcome(5, "structure and quotient harnesses", k.0);
}

#[test]
fn criterion_6_implication_chain() {
    let corpus = run_corpus(&CorpusConfig::default()).unwrap();
    let mut k = Checks::new();
    k.that(
        &format!("at least 30 rings (got {})", corpus.rings.len()),
        corpus.rings.len() >= 30,
    );
    for e in corpus.failures() {
        k.0.push(format!("{}: {}", e.ring, e.error.as_deref().unwrap_or("")));
    }
    for v in &corpus.violations {
        k.0.push(format!("{}: {} ({})", v.ring, v.invariant, v.detail));
    }
    for e in &corpus.rings {
        let Some(report) = &e.report else { continue };
        let c = &report.conditions;
        let links = [
            (
                c.semihereditary.is(Verdict::Yes),
                c.weak_dim.is(Verdict::Zero),
            ),
            (
                c.weak_dim.is(Verdict::Zero),
                c.arithmetical.is(Verdict::Yes),
            ),
            (c.arithmetical.is(Verdict::Yes), c.gaussian.is(Verdict::Yes)),
            (c.gaussian.is(Verdict::Yes), c.pruefer.is(Verdict::Yes)),
        ];
        for (i, (lhs, rhs)) in links.into_iter().enumerate() {
            k.that(&format!("{}: chain link {i}", e.ring), !lhs || rhs);
        }
        let jensen = c.arithmetical.is(Verdict::Yes) && c.reduced.is(Verdict::Yes);
        k.that(
            &format!("{}: weak dimension 0 iff arithmetical and reduced", e.ring),
            c.weak_dim.is(Verdict::Zero) == jensen,
        );
        k.that(
            &format!("{}: weak dimension is 0 or infinite", e.ring),
            matches!(c.weak_dim.verdict, Verdict::Zero | Verdict::Infinite),
        );
    }
    outcome(6, "implication chain over the default corpus", k.0);
}

#[test]
fn criterion_7_zero_ideal_conjecture() {
    let corpus = run_corpus(&CorpusConfig::default()).unwrap();
    let table = conjecture45(&corpus).unwrap();
    let mut k = Checks::new();
    for r in table
        .rows
        .iter()
        .filter(|r| r.agreement == Agreement::Disagree)
    {
        k.0.push(format!("disagreement on {}", r.ring));
    }
    for f in &table.failures {
        k.0.push(format!("failure: {f}"));
    }
    let z4 = FiniteRing::zmod(4).unwrap();
    let f2 = FiniteRing::zmod(2).unwrap();
    let ext = |a: &FiniteRing, n| {
        FiniteRing::trivial_extension(a, &FiniteModule::residue_space(a, n).unwrap())
            .unwrap()
            .0
    };
    for (ring, pseudo, zero) in [
        (z4.clone(), Verdict::Yes, true),
        (ext(&z4, 1), Verdict::No, false),
        (ext(&f2, 2), Verdict::No, false),
        (ext(&f2, 1), Verdict::Yes, true),
    ] {
        match table.rows.iter().find(|r| r.ring == ring.name()) {
            Some(row) => {
                k.eq(
                    &format!("{} pseudo-arithmetical", ring.name()),
                    row.pseudo_arithmetical,
                    pseudo,
                );
                k.eq(
                    &format!("{} zero locally irreducible", ring.name()),
                    row.zero_locally_irreducible,
                    zero,
                );
                k.eq(
                    &format!("{} agreement", ring.name()),
                    row.agreement,
                    Agreement::Agree,
                );
            }
            None => k.0.push(format!("{} missing from the corpus", ring.name())),
        }
    }
    let fraction = table.undecided_fraction();
    k.that(
        &format!("undecided fraction {fraction:.3} exceeds 0.2"),
        fraction <= 0.2,
    );
    println!(
        "    {} agree, {} disagree, {} undecided of {}",
        table.agree,
        table.disagree,
        table.undecided,
        table.rows.len()
    );
    outcome(7, "zero-ideal conjecture table", k.0);
}

fn all_polys(r: &FiniteRing, degree: u32) -> Vec<RingPoly> {
    let n = r.order();
    let len = degree as usize + 1;
    (0..n.pow(len as u32))
        .map(|mut code| {
            let coeffs = (0..len)
                .map(|_| {
                    let c = code % n;
                    code /= n;
                    c
                })
                .collect();
            RingPoly::new(r, coeffs)
        })
        .collect()
}

fn small_rings() -> Vec<FiniteRing> {
    let mut rings: Vec<FiniteRing> = generate(&CorpusConfig {
        max_order: 16,
        ..CorpusConfig::default()
    })
    .unwrap()
    .into_iter()
    .map(|m| m.ring)
    .collect();
    rings.extend(["f2_f2sq.ring", "f2_f2.ring", "z4_z2.ring"].map(fixture));
    rings
}

#[test]
fn criterion_8_oracle_equivalence() {
    let cfg = SearchConfig {
        degree_bound: 2,
        ..SearchConfig::default()
    };
    let rings = small_rings();
    let mut k = Checks::new();
    let problems: Vec<Vec<String>> = rings
        .par_iter()
        .map(|r| {
            let mut out = Vec::new();
            let polys = all_polys(r, 2);
            for f in &polys {
                let verdict = certify_gaussian(f, &cfg).unwrap();
                let oracle = gaussian_witness_search(f, 2, u64::MAX, true).unwrap();
                let agree = match &verdict {
                    GaussianVerdict::CertifiedGaussian(_) => oracle.is_none(),
                    GaussianVerdict::Refuted(g) => {
                        oracle.is_some()
                            && f.mul(g).unwrap().content()
                                != f.content().product(&g.content()).unwrap()
                    }
                    GaussianVerdict::BoundedGaussian(d) => *d == 2 && oracle.is_none(),
                };
                if !agree {
                    out.push(format!(
                        "{}: f = {f}: {verdict:?} vs exhaustive {oracle:?}",
                        r.name()
                    ));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(r.order() as u64);
            let random = |rng: &mut ChaCha8Rng| -> RingPoly {
                let len = rng.gen_range(1..=4);
                RingPoly::new(r, (0..len).map(|_| rng.gen_range(0..r.order())).collect())
            };
            for _ in 0..10_000 {
                let (f, g) = (random(&mut rng), random(&mut rng));
                if !dedekind_mertens_check(&f, &g).unwrap() {
                    out.push(format!(
                        "{}: content formula fails for f = {f}, g = {g}",
                        r.name()
                    ));
                }
            }
            out
        })
        .collect();
    for p in problems {
        k.0.extend(p);
    }
    k.that("rings of order up to 16 were checked", rings.len() >= 20);
    println!("    {} rings", rings.len());
    outcome(8, "certification agrees with exhaustive search", k.0);
}

#[test]
fn criterion_9_axioms() {
    let mut k = Checks::new();
    let mut objects = 0usize;
    let members = generate(&CorpusConfig::default()).unwrap();
    let mut rings: Vec<FiniteRing> = members.iter().map(|m| m.ring.clone()).collect();
    rings.extend(
        [
            "z4.ring",
            "z4_z2.ring",
            "f2_f2sq.ring",
            "f2_f2.ring",
            "gf4.ring",
        ]
        .map(fixture),
    );
    for r in &rings {
        if r.order() > 64 {
            continue;
        }
        objects += 1;
        if let Err(e) = verify_ring_axioms(r) {
            k.0.push(format!("{}: {e}", r.name()));
        }
        if let Construction::TrivExt { base, module } = r.construction() {
            objects += 1;
            if let Err(e) = verify_module_axioms(module) {
                k.0.push(format!("module {}: {e}", module.name()));
            }
            let (ext, embed, project) = FiniteRing::trivial_extension(base, module).unwrap();
            objects += 2;
            for (what, h) in [("embedding", &embed), ("projection", &project)] {
                if let Err(e) = h.verify() {
                    k.0.push(format!("{} {what}: {e}", ext.name()));
                }
            }
            if let Some(i) = trivext_core::classify::module_ideal(r) {
                let (q, pi) = r.quotient(&i).unwrap();
                objects += 2;
                if let Err(e) = verify_ring_axioms(&q).and_then(|_| pi.verify()) {
                    k.0.push(format!("{}: {e}", q.name()));
                }
            }
        }
        for loc in trivext_core::ideal::localizations(r) {
            objects += 2;
            if let Err(e) = verify_ring_axioms(&loc.ring).and_then(|_| loc.projection.verify()) {
                k.0.push(format!("localization of {}: {e}", r.name()));
            }
        }
    }
    println!("    {objects} objects");
    outcome(9, "ring, module and homomorphism axioms", k.0);
}
