//! Deciders for the Prüfer-like conditions, classification reports,
//! certificate replay and the theorem harnesses.

mod certificate;
pub mod deciders;
pub mod harness;
pub mod replay;
pub mod report;

use std::time::Instant;

use serde::Serialize;

pub use certificate::{Certificate, GaussianEvidence};
pub use deciders::{
    arithmetical_failure, decide_arithmetical, decide_gaussian, decide_pruefer,
    decide_pseudo_arithmetical, decide_reduced, decide_semihereditary, decide_total_quotient,
    decide_weak_dim, decide_zero_locally_irreducible, is_arithmetical, is_pruefer_ring, is_reduced,
    is_semihereditary, is_total_quotient_ring, is_vn_regular, module_ideal, structural_gaussian,
    weak_dim_class, WeakDim,
};
pub use harness::{check_lemma_2_2, check_theorem_3_1, HarnessReport, PartCheck};
pub use replay::{replay_report, ReplayStatus, REPLAY_LIMIT};
pub use report::{ClassificationReport, Conditions, PolyReport};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::SearchConfig;
use crate::ring::FiniteRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    /// No counterexample up to the recorded bound.
    BoundedYes,
    Zero,
    Infinite,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::BoundedYes => "bounded_yes",
            Verdict::Zero => "zero",
            Verdict::Infinite => "infinite",
        }
    }
}

/// Human-readable counterpart of a certificate's payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Element {
        element: String,
    },
    Ideal {
        generators: Vec<String>,
        order: usize,
    },
    Polynomial {
        f: String,
        coefficients: Vec<String>,
        content_generators: Vec<String>,
        content_order: usize,
    },
    PolynomialPair {
        f: String,
        g: String,
    },
    IdealPair {
        left: Vec<String>,
        right: Vec<String>,
    },
}

impl Witness {
    pub fn element(r: &FiniteRing, a: usize) -> Witness {
        Witness::Element {
            element: r.format(a),
        }
    }

    pub fn ideal(i: &Ideal) -> Witness {
        Witness::Ideal {
            generators: Witness::generators(i),
            order: i.order(),
        }
    }

    pub fn generators(i: &Ideal) -> Vec<String> {
        i.gens().iter().map(|&g| i.ring().format(g)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub verdict: Verdict,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    /// Wall time; only recorded on request so reports stay reproducible.
    pub millis: Option<u64>,
}

impl Condition {
    pub fn exact(verdict: Verdict, certificate: Certificate) -> Condition {
        Condition {
            verdict,
            certificate,
            witness: None,
            bound: None,
            millis: None,
        }
    }

    pub fn bounded(degree_bound: u32, candidates: u64) -> Condition {
        Condition {
            verdict: Verdict::BoundedYes,
            certificate: Certificate::BoundedSearch {
                degree_bound,
                candidates,
            },
            witness: None,
            bound: Some(degree_bound),
            millis: None,
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Condition {
        self.witness = Some(w);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.verdict != Verdict::BoundedYes
    }

    pub fn is(&self, v: Verdict) -> bool {
        self.verdict == v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub search: SearchConfig,
    pub timings: bool,
    /// Certificates are replayed for rings up to this order.
    pub replay_limit: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            search: SearchConfig::default(),
            timings: false,
            replay_limit: REPLAY_LIMIT,
        }
    }
}

fn timed(timings: bool, f: impl FnOnce() -> Result<Condition>) -> Result<Condition> {
    let start = Instant::now();
    let mut c = f()?;
    if timings {
        c.millis = Some(start.elapsed().as_millis() as u64);
    }
    Ok(c)
}

/// Runs every decider, checks the implication chain and replays the
/// certificates.
pub fn classify(r: &FiniteRing, cfg: &ClassifyConfig) -> Result<ClassificationReport> {
    let s = &cfg.search;
    let t = cfg.timings;
    let conditions = Conditions {
        reduced: timed(t, || Ok(decide_reduced(r)))?,
        semihereditary: timed(t, || decide_semihereditary(r, s.lattice_bound))?,
        weak_dim: timed(t, || Ok(decide_weak_dim(r)))?,
        arithmetical: timed(t, || decide_arithmetical(r, s.lattice_bound))?,
        gaussian: timed(t, || decide_gaussian(r, s))?,
        pruefer: timed(t, || decide_pruefer(r, s.lattice_bound))?,
        total_quotient_ring: timed(t, || Ok(decide_total_quotient(r)))?,
        pseudo_arithmetical: timed(t, || decide_pseudo_arithmetical(r, s))?,
        zero_locally_irreducible: timed(t, || decide_zero_locally_irreducible(r, s.lattice_bound))?,
    };
    check_implications(r, &conditions)?;
    let mut report = ClassificationReport::new(r, conditions, s.lattice_bound);
    report.replay = replay_report(r, &report, cfg)?;
    Ok(report)
}

/// Semihereditary ⇒ weak dimension 0 ⇒ arithmetical ⇒ Gaussian ⇒ Prüfer,
/// and arithmetical ⇒ pseudo-arithmetical, on exact verdicts.
pub fn check_implications(r: &FiniteRing, c: &Conditions) -> Result<()> {
    let chain = [
        (
            "semihereditary",
            c.semihereditary.is(Verdict::Yes),
            "weak dimension 0",
            c.weak_dim.is(Verdict::Zero),
        ),
        (
            "weak dimension 0",
            c.weak_dim.is(Verdict::Zero),
            "arithmetical",
            c.arithmetical.is(Verdict::Yes),
        ),
        (
            "arithmetical",
            c.arithmetical.is(Verdict::Yes),
            "Gaussian",
            c.gaussian.is(Verdict::Yes),
        ),
        (
            "Gaussian",
            c.gaussian.is(Verdict::Yes),
            "Prüfer",
            c.pruefer.is(Verdict::Yes),
        ),
        (
            "arithmetical",
            c.arithmetical.is(Verdict::Yes),
            "pseudo-arithmetical",
            c.pseudo_arithmetical.is(Verdict::Yes),
        ),
    ];
    for (lhs, holds, rhs, follows) in chain {
        if holds && !follows {
            return Err(Error::Consistency(format!(
                "{}: {lhs} holds but {rhs} does not",
                r.name()
            )));
        }
    }
    Ok(())
}

pub const IMPLICATION_CHAIN: [&str; 5] = [
    "semihereditary",
    "weak dimension <= 1",
    "arithmetical",
    "Gaussian",
    "Prüfer",
];
