//! Generated corpora of small rings, the invariant suite run over them,
//! the zero-ideal conjecture table and the theorem harness sweep.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    check_lemma_2_2, check_theorem_3_1, classify, replay_report, ClassificationReport,
    ClassifyConfig, HarnessReport, ReplayStatus, Verdict,
};
use crate::error::{Error, Result};
use crate::poly::{
    dedekind_mertens_check, RingPoly, SearchConfig, DEFAULT_DEGREE_BOUND, DEFAULT_SEARCH_CAP,
};
use crate::ring::gf::{first_irreducible, is_prime};
use crate::ring::{Construction, FiniteModule, FiniteRing};

/// Largest `max_order` a corpus may request.
pub const MAX_CORPUS_ORDER: usize = 256;

/// Random `(f, g)` pairs per ring for the Dedekind–Mertens invariant.
pub const DM_SAMPLES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Zmod,
    Gf,
    Product,
    Trivext,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Zmod, Family::Gf, Family::Product, Family::Trivext];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Zmod => "zmod",
            Family::Gf => "gf",
            Family::Product => "product",
            Family::Trivext => "trivext",
        }
    }

    /// Parses a comma-separated list; the empty string is the empty list.
    pub fn parse_list(s: &str) -> Result<Vec<Family>> {
        let mut out: Vec<Family> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(Family::from_str)
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub max_order: usize,
    /// `zmod(n)` members stop at this modulus.
    pub zmod_max: usize,
    /// `gf(p,k)` members stop at this order.
    pub gf_max: usize,
    pub families: Vec<Family>,
    pub degree_bound: u32,
    pub search_cap: u64,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_order: 64,
            zmod_max: 32,
            gf_max: 16,
            families: Family::ALL.to_vec(),
            degree_bound: DEFAULT_DEGREE_BOUND,
            search_cap: DEFAULT_SEARCH_CAP,
            seed: 0,
        }
    }
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_order > MAX_CORPUS_ORDER {
            return Err(Error::BoundExceeded {
                order: self.max_order,
                bound: MAX_CORPUS_ORDER,
            });
        }
        if self.degree_bound < 1 {
            return Err(Error::InvalidConfig(
                "degree bound must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn classify_config(&self) -> ClassifyConfig {
        ClassifyConfig {
            search: SearchConfig {
                degree_bound: self.degree_bound,
                search_cap: self.search_cap,
                ..SearchConfig::default()
            },
            ..ClassifyConfig::default()
        }
    }

    fn has(&self, f: Family) -> bool {
        self.families.contains(&f)
    }
}

#[derive(Clone)]
pub struct CorpusMember {
    pub id: usize,
    pub family: Family,
    pub ring: FiniteRing,
}

fn prime_power(n: usize) -> Option<(u32, u32)> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p as u32, k))
}

fn is_trivext(r: &FiniteRing) -> bool {
    matches!(r.construction(), Construction::TrivExt { .. })
}

/// Members in a fixed order: `zmod` by modulus, `gf` by order, trivial
/// extensions by base then dimension, then products of earlier members.
pub fn generate(cfg: &CorpusConfig) -> Result<Vec<CorpusMember>> {
    cfg.validate()?;
    let mut members: Vec<(Family, FiniteRing)> = Vec::new();
    let mut bases: Vec<FiniteRing> = Vec::new();
    if cfg.has(Family::Zmod) {
        for n in 2..=cfg.zmod_max.min(cfg.max_order) {
            let r = FiniteRing::zmod(n)?;
            bases.push(r.clone());
            members.push((Family::Zmod, r));
        }
    }
    if cfg.has(Family::Gf) {
        for q in 4..=cfg.gf_max.min(cfg.max_order) {
            match prime_power(q) {
                Some((p, k)) if k >= 2 && is_prime(p) => {
                    let r = FiniteRing::gf(p, k, &first_irreducible(p, k))?;
                    bases.push(r.clone());
                    members.push((Family::Gf, r));
                }
                _ => {}
            }
        }
    }
    if cfg.has(Family::Trivext) {
        for a in &bases {
            if let Some(m) = a.is_local() {
                let residue = a.order() / m.order();
                for n in 1..=2u32 {
                    if a.order() * residue.pow(n) <= cfg.max_order {
                        let e = FiniteModule::residue_space(a, n as usize)?;
                        members.push((Family::Trivext, FiniteRing::trivial_extension(a, &e)?.0));
                    }
                }
            }
        }
        for a in &bases {
            if !a.is_field() && a.order() * a.order() <= cfg.max_order {
                let e = FiniteModule::free(a, 1)?;
                members.push((Family::Trivext, FiniteRing::trivial_extension(a, &e)?.0));
            }
        }
    }
    if cfg.has(Family::Product) {
        let factors: Vec<FiniteRing> = members.iter().map(|(_, r)| r.clone()).collect();
        for (i, left) in factors.iter().enumerate() {
            for right in &factors[i..] {
                if left.order() * right.order() <= cfg.max_order {
                    members.push((Family::Product, FiniteRing::product(left, right)?));
                }
            }
        }
    }
    Ok(members
        .into_iter()
        .enumerate()
        .map(|(id, (family, ring))| CorpusMember { id, family, ring })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub ring: String,
    pub invariant: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub id: usize,
    pub family: Family,
    pub ring: String,
    pub order: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub verdicts: BTreeMap<&'static str, &'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<ReplayStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub report: Option<ClassificationReport>,
    #[serde(skip)]
    pub handle: Option<FiniteRing>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryRow {
    pub combination: String,
    pub rings: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub config: CorpusConfig,
    pub rings: Vec<CorpusEntry>,
    pub summary: Vec<SummaryRow>,
    pub violations: Vec<Violation>,
}

const FIGURE_CONDITIONS: [&str; 5] = [
    "semihereditary",
    "weak_dim",
    "arithmetical",
    "gaussian",
    "pruefer",
];

fn random_poly(rng: &mut ChaCha8Rng, r: &FiniteRing) -> RingPoly {
    let len = rng.gen_range(1..=3);
    RingPoly::new(r, (0..len).map(|_| rng.gen_range(0..r.order())).collect())
}

/// Ring-level invariants that do not depend on the implication chain,
/// which `classify` already enforces.
fn check_invariants(
    r: &FiniteRing,
    report: &ClassificationReport,
    seed: u64,
) -> Result<Vec<Violation>> {
    let c = &report.conditions;
    let mut out = Vec::new();
    let mut violated = |invariant: &'static str, detail: String| {
        out.push(Violation {
            ring: r.name().to_string(),
            invariant,
            detail,
        })
    };
    let zero = c.weak_dim.is(Verdict::Zero);
    let jensen = c.arithmetical.is(Verdict::Yes) && c.reduced.is(Verdict::Yes);
    if zero != jensen {
        violated(
            "jensen",
            format!(
                "weak_dim {}, arithmetical {}, reduced {}",
                c.weak_dim.verdict.as_str(),
                c.arithmetical.verdict.as_str(),
                c.reduced.verdict.as_str()
            ),
        );
    }
    if !matches!(c.weak_dim.verdict, Verdict::Zero | Verdict::Infinite) {
        violated(
            "osofsky",
            format!("weak_dim {}", c.weak_dim.verdict.as_str()),
        );
    }
    if !c.total_quotient_ring.is(Verdict::Yes) || !c.pruefer.is(Verdict::Yes) {
        violated(
            "total_quotient_pruefer",
            format!(
                "total_quotient_ring {}, pruefer {}",
                c.total_quotient_ring.verdict.as_str(),
                c.pruefer.verdict.as_str()
            ),
        );
    }
    if c.semihereditary.is(Verdict::Yes) != c.weak_dim.is(Verdict::Zero) {
        violated(
            "semihereditary_vn_regular",
            "semihereditary differs from weak dimension 0".into(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DM_SAMPLES {
        let (f, g) = (random_poly(&mut rng, r), random_poly(&mut rng, r));
        if !dedekind_mertens_check(&f, &g)? {
            violated("dedekind_mertens", format!("f = {f}, g = {g}"));
        }
    }
    Ok(out)
}

/// Classifies every member in parallel and assembles the report in id
/// order. Per-ring errors are recorded and the run continues.
pub fn run_corpus(cfg: &CorpusConfig) -> Result<CorpusReport> {
    let members = generate(cfg)?;
    let ccfg = cfg.classify_config();
    let results: Vec<(CorpusEntry, Vec<Violation>)> = members
        .par_iter()
        .map(|m| {
            let mut entry = CorpusEntry {
                id: m.id,
                family: m.family,
                ring: m.ring.name().to_string(),
                order: m.ring.order(),
                verdicts: BTreeMap::new(),
                replay: None,
                error: None,
                report: None,
                handle: Some(m.ring.clone()),
            };
            let outcome = classify(&m.ring, &ccfg).and_then(|report| {
                let v = check_invariants(&m.ring, &report, cfg.seed ^ m.id as u64)?;
                Ok((report, v))
            });
            match outcome {
                Ok((report, v)) => {
                    entry.verdicts = report
                        .conditions
                        .entries()
                        .into_iter()
                        .map(|(k, c)| (k, c.verdict.as_str()))
                        .collect();
                    entry.replay = Some(report.replay.clone());
                    entry.report = Some(report);
                    (entry, v)
                }
                Err(e) => {
                    entry.error = Some(e.to_string());
                    (entry, Vec::new())
                }
            }
        })
        .collect();

    let mut rings = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    let mut combos: BTreeMap<String, usize> = BTreeMap::new();
    for (entry, v) in results {
        if entry.error.is_none() {
            let key = FIGURE_CONDITIONS
                .iter()
                .map(|k| format!("{k}={}", entry.verdicts[k]))
                .collect::<Vec<_>>()
                .join(" ");
            *combos.entry(key).or_default() += 1;
        }
        violations.extend(v);
        rings.push(entry);
    }
    Ok(CorpusReport {
        config: cfg.clone(),
        rings,
        summary: combos
            .into_iter()
            .map(|(combination, rings)| SummaryRow { combination, rings })
            .collect(),
        violations,
    })
}

impl CorpusReport {
    pub fn failures(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.rings.iter().filter(|e| e.error.is_some())
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.failures().next().is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# Corpus (max order {}, D = {})\n",
            self.config.max_order, self.config.degree_bound
        );
        let _ = writeln!(
            out,
            "{} rings, {} failures, {} violations\n",
            self.rings.len(),
            self.failures().count(),
            self.violations.len()
        );
        out.push_str("| rings | combination |\n|---|---|\n");
        for row in &self.summary {
            let _ = writeln!(out, "| {} | {} |", row.rings, row.combination);
        }
        out.push_str("\n| id | ring | order | ");
        out.push_str(&crate::classify::Conditions::NAMES.join(" | "));
        out.push_str(" |\n|---|---|---|");
        out.push_str(&"---|".repeat(crate::classify::Conditions::NAMES.len()));
        out.push('\n');
        for e in &self.rings {
            let _ = write!(out, "| {} | {} | {} |", e.id, e.ring, e.order);
            match &e.error {
                Some(err) => {
                    let _ = write!(out, " error: {err} |");
                }
                None => {
                    for k in crate::classify::Conditions::NAMES {
                        let _ = write!(out, " {} |", e.verdicts[k]);
                    }
                }
            }
            out.push('\n');
        }
        if !self.violations.is_empty() {
            out.push_str("\n## Violations\n\n");
            for v in &self.violations {
                let _ = writeln!(out, "- {}: {} ({})", v.ring, v.invariant, v.detail);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    Disagree,
    /// The pseudo-arithmetical verdict is bounded.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture45Row {
    pub ring: String,
    pub order: usize,
    pub pseudo_arithmetical: Verdict,
    pub zero_locally_irreducible: bool,
    pub agreement: Agreement,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conjecture45Report {
    pub rows: Vec<Conjecture45Row>,
    pub agree: usize,
    pub disagree: usize,
    pub undecided: usize,
    pub failures: Vec<String>,
}

/// Compares pseudo-arithmetical with local irreducibility of zero on every
/// classified ring. A disagreement is replayed without the order limit
/// before it is reported.
pub fn conjecture45(corpus: &CorpusReport) -> Result<Conjecture45Report> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let unlimited = ClassifyConfig {
        replay_limit: usize::MAX,
        ..corpus.config.classify_config()
    };
    for e in &corpus.rings {
        let (Some(report), Some(ring)) = (&e.report, &e.handle) else {
            failures.push(format!(
                "{}: {}",
                e.ring,
                e.error.as_deref().unwrap_or("not classified")
            ));
            continue;
        };
        let c = &report.conditions;
        let zero = c.zero_locally_irreducible.is(Verdict::Yes);
        let agreement = match c.pseudo_arithmetical.verdict {
            Verdict::BoundedYes => Agreement::Undecided,
            Verdict::Yes if zero => Agreement::Agree,
            Verdict::No if !zero => Agreement::Agree,
            _ => {
                replay_report(ring, report, &unlimited)?;
                Agreement::Disagree
            }
        };
        rows.push(Conjecture45Row {
            ring: e.ring.clone(),
            order: e.order,
            pseudo_arithmetical: c.pseudo_arithmetical.verdict,
            zero_locally_irreducible: zero,
            agreement,
            bound: c.pseudo_arithmetical.bound,
        });
    }
    let count = |a: Agreement| rows.iter().filter(|r| r.agreement == a).count();
    Ok(Conjecture45Report {
        agree: count(Agreement::Agree),
        disagree: count(Agreement::Disagree),
        undecided: count(Agreement::Undecided),
        rows,
        failures,
    })
}

impl Conjecture45Report {
    pub fn undecided_fraction(&self) -> f64 {
        if self.rows.is_empty() {
            0.0
        } else {
            self.undecided as f64 / self.rows.len() as f64
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# Zero-ideal conjecture\n\n{} agree, {} disagree, {} undecided\n",
            self.agree, self.disagree, self.undecided
        );
        if self.disagree > 0 {
            out.push_str("## Disagreements (replayed)\n\n");
            for r in self
                .rows
                .iter()
                .filter(|r| r.agreement == Agreement::Disagree)
            {
                let _ = writeln!(
                    out,
                    "- **{}**: pseudo-arithmetical {}, zero locally irreducible {}",
                    r.ring,
                    r.pseudo_arithmetical.as_str(),
                    r.zero_locally_irreducible
                );
            }
            out.push('\n');
        }
        out.push_str("| ring | order | pseudo-arithmetical | zero locally irreducible | agreement |\n|---|---|---|---|---|\n");
        for r in &self.rows {
            let verdict = match r.bound {
                Some(d) => format!("{} (D = {d})", r.pseudo_arithmetical.as_str()),
                None => r.pseudo_arithmetical.as_str().to_string(),
            };
            let _ = writeln!(
                out,
                "| {} | {} | {verdict} | {} | {:?} |",
                r.ring, r.order, r.zero_locally_irreducible, r.agreement
            );
        }
        for f in &self.failures {
            let _ = writeln!(out, "\n- failed: {f}");
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremsReport {
    pub theorem: Vec<HarnessReport>,
    pub lemma: Vec<HarnessReport>,
    pub errors: Vec<String>,
}

/// Runs the structure-theorem harness over every local member with
/// `n ∈ {1, 2}` and the quotient harness over every trivial extension.
pub fn run_theorems(cfg: &CorpusConfig) -> Result<TheoremsReport> {
    let members = generate(cfg)?;
    let ccfg = cfg.classify_config();
    let theorem_jobs: Vec<(&FiniteRing, usize)> = members
        .iter()
        .filter(|m| m.ring.is_local().is_some())
        .flat_map(|m| [(&m.ring, 1), (&m.ring, 2)])
        .collect();
    let theorem: Vec<std::result::Result<HarnessReport, String>> = theorem_jobs
        .par_iter()
        .map(|(a, n)| {
            check_theorem_3_1(a, *n, &ccfg).map_err(|e| format!("{} (n = {n}): {e}", a.name()))
        })
        .collect();
    let lemma: Vec<std::result::Result<HarnessReport, String>> = members
        .par_iter()
        .filter(|m| is_trivext(&m.ring))
        .map(|m| check_lemma_2_2(&m.ring, &ccfg).map_err(|e| format!("{}: {e}", m.ring.name())))
        .collect();
    let mut errors = Vec::new();
    let mut split = |v: Vec<std::result::Result<HarnessReport, String>>| {
        v.into_iter()
            .filter_map(|r| r.map_err(|e| errors.push(e)).ok())
            .collect::<Vec<_>>()
    };
    let theorem = split(theorem);
    let lemma = split(lemma);
    Ok(TheoremsReport {
        theorem,
        lemma,
        errors,
    })
}

impl TheoremsReport {
    pub fn failed(&self) -> impl Iterator<Item = &HarnessReport> {
        self.theorem.iter().chain(&self.lemma).filter(|h| !h.passed)
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.failed().next().is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let flagged: usize = self
            .theorem
            .iter()
            .chain(&self.lemma)
            .map(|h| h.flagged())
            .sum();
        let _ = writeln!(
            out,
            "# Theorem harness\n\n{} structure checks, {} quotient checks, {} failed, {} flagged, {} errors\n",
            self.theorem.len(),
            self.lemma.len(),
            self.failed().count(),
            flagged,
            self.errors.len()
        );
        out.push_str("| check | ring | order | parts | result |\n|---|---|---|---|---|\n");
        for h in self.theorem.iter().chain(&self.lemma) {
            let parts = h
                .parts
                .iter()
                .map(|p| format!("{}: {:?}", p.part, p.status))
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(
                out,
                "| {} | {} | {} | {parts} | {} |",
                h.check,
                h.ring,
                h.order,
                if h.passed { "pass" } else { "FAIL" }
            );
        }
        for e in &self.errors {
            let _ = writeln!(out, "\n- error: {e}");
        }
        out
    }
}
