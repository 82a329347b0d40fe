use std::fmt::Write as _;

use serde::Serialize;

use super::{Condition, ReplayStatus, Witness};
use crate::error::Result;
use crate::ideal::is_locally_principal;
use crate::poly::{certify_gaussian, GaussianReason, GaussianVerdict, RingPoly, SearchConfig};
use crate::ring::FiniteRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub reduced: Condition,
    pub semihereditary: Condition,
    pub weak_dim: Condition,
    pub arithmetical: Condition,
    pub gaussian: Condition,
    pub pruefer: Condition,
    pub total_quotient_ring: Condition,
    pub pseudo_arithmetical: Condition,
    pub zero_locally_irreducible: Condition,
}

impl Conditions {
    pub const NAMES: [&'static str; 9] = [
        "reduced",
        "semihereditary",
        "weak_dim",
        "arithmetical",
        "gaussian",
        "pruefer",
        "total_quotient_ring",
        "pseudo_arithmetical",
        "zero_locally_irreducible",
    ];

    pub fn entries(&self) -> [(&'static str, &Condition); 9] {
        let n = Self::NAMES;
        [
            (n[0], &self.reduced),
            (n[1], &self.semihereditary),
            (n[2], &self.weak_dim),
            (n[3], &self.arithmetical),
            (n[4], &self.gaussian),
            (n[5], &self.pruefer),
            (n[6], &self.total_quotient_ring),
            (n[7], &self.pseudo_arithmetical),
            (n[8], &self.zero_locally_irreducible),
        ]
    }
}

/// Certification of one declared polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyReport {
    pub name: String,
    pub f: String,
    pub content_generators: Vec<String>,
    pub content_order: usize,
    pub content_locally_principal: bool,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<GaussianReason>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refuting_g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
}

impl PolyReport {
    pub fn new(name: &str, f: &RingPoly, cfg: &SearchConfig) -> Result<PolyReport> {
        let content = f.content();
        let verdict = certify_gaussian(f, cfg)?;
        let (status, reason, refuting_g, bound) = match verdict {
            GaussianVerdict::CertifiedGaussian(r) => ("certified_gaussian", Some(r), None, None),
            GaussianVerdict::Refuted(g) => ("refuted", None, Some(g.to_string()), None),
            GaussianVerdict::BoundedGaussian(d) => ("bounded_gaussian", None, None, Some(d)),
        };
        Ok(PolyReport {
            name: name.to_string(),
            f: f.to_string(),
            content_generators: Witness::generators(&content),
            content_order: content.order(),
            content_locally_principal: is_locally_principal(&content),
            status,
            reason,
            refuting_g,
            bound,
        })
    }
}

const NOTES: [&str; 2] = [
    "weak_dim: a finite ring is Artinian; its weak dimension is 0 when it is von Neumann regular and infinite otherwise",
    "semihereditary: a projective ideal of a finite local ring is 0 or the ring, so semihereditary coincides with von Neumann regular",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub spec: String,
    pub order: usize,
    pub local: bool,
    pub maximal_ideals: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideals: Option<usize>,
    pub conditions: Conditions,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<PolyReport>,
    pub replay: ReplayStatus,
}

impl ClassificationReport {
    pub(crate) fn new(
        r: &FiniteRing,
        conditions: Conditions,
        bound: usize,
    ) -> ClassificationReport {
        ClassificationReport {
            ring: r.name().to_string(),
            spec: r.spec().to_string(),
            order: r.order(),
            local: r.is_local().is_some(),
            maximal_ideals: r.maximal_ideals().len(),
            ideals: crate::ideal::enumerate_ideals(r, bound)
                .ok()
                .map(|l| l.len()),
            conditions,
            notes: NOTES.iter().map(|s| s.to_string()).collect(),
            polynomials: Vec::new(),
            replay: ReplayStatus::Pending,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}\n", self.ring);
        let _ = writeln!(out, "- spec: `{}`", self.spec);
        let _ = writeln!(out, "- order: {}", self.order);
        let _ = writeln!(out, "- local: {}", self.local);
        let _ = writeln!(out, "- maximal ideals: {}", self.maximal_ideals);
        if let Some(n) = self.ideals {
            let _ = writeln!(out, "- ideals: {n}");
        }
        let _ = writeln!(out, "- replay: {}\n", self.replay.describe());
        out.push_str("| condition | verdict | certificate | witness | bound |\n");
        out.push_str("|---|---|---|---|---|\n");
        for (name, c) in self.conditions.entries() {
            let witness = c.witness.as_ref().map(describe_witness).unwrap_or_default();
            let bound = c.bound.map(|b| format!("D = {b}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "| {name} | {} | {} | {witness} | {bound} |",
                c.verdict.as_str(),
                c.certificate.label()
            );
        }
        if !self.polynomials.is_empty() {
            out.push_str("\n| polynomial | f | content | locally principal | status |\n");
            out.push_str("|---|---|---|---|---|\n");
            for p in &self.polynomials {
                let status = match (&p.reason, &p.refuting_g, p.bound) {
                    (Some(r), _, _) => format!("{} ({r:?})", p.status),
                    (_, Some(g), _) => format!("{} by g = {g}", p.status),
                    (_, _, Some(d)) => format!("{} (D = {d})", p.status),
                    _ => p.status.to_string(),
                };
                let _ = writeln!(
                    out,
                    "| {} | {} | ({}) of order {} | {} | {status} |",
                    p.name,
                    p.f,
                    p.content_generators.join(", "),
                    p.content_order,
                    p.content_locally_principal
                );
            }
        }
        out.push('\n');
        for n in &self.notes {
            let _ = writeln!(out, "> {n}");
        }
        out
    }
}

pub fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Element { element } => element.clone(),
        Witness::Ideal { generators, order } => {
            format!("({}) of order {order}", generators.join(", "))
        }
        Witness::Polynomial {
            f,
            content_generators,
            content_order,
            ..
        } => format!(
            "f = {f}, c(f) = ({}) of order {content_order}",
            content_generators.join(", ")
        ),
        Witness::PolynomialPair { f, g } => format!("f = {f}, g = {g}"),
        Witness::IdealPair { left, right } => {
            format!("({}) ∩ ({}) = 0", left.join(", "), right.join(", "))
        }
    }
}
