use serde::{Deserialize, Serialize};

use crate::poly::GaussianReason;

/// Machine-checkable evidence behind a verdict. Payloads are element
/// indices of the classified ring; ideals are given by their members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    NoNilpotents,
    Nilpotent {
        element: usize,
        exponent: u32,
    },
    /// `partners[a] = x` with `a = a²x`.
    VnRegular {
        partners: Vec<usize>,
    },
    NotVnRegular {
        element: usize,
    },
    AllIdealsLocallyPrincipal {
        ideals: usize,
    },
    NotLocallyPrincipal {
        ideal: Vec<usize>,
        maximal: Vec<usize>,
    },
    ViaArithmetical,
    /// One certificate per localization, in maximal-ideal order.
    ViaLocalFactors {
        factors: Vec<Certificate>,
    },
    SquareZeroMaximal,
    /// `A ∝ E` with `A` local, `ME = 0`, `E ≠ 0` and `A` certified.
    ViaTrivialExtension {
        base: Box<Certificate>,
    },
    ContentNotMultiplicative {
        f: Vec<usize>,
        g: Vec<usize>,
    },
    BoundedSearch {
        degree_bound: u32,
        candidates: u64,
    },
    EveryElementUnitOrZeroDivisor,
    NeitherUnitNorZeroDivisor {
        element: usize,
    },
    RegularIdealsInvertible {
        regular_ideals: usize,
    },
    RegularIdealNotInvertible {
        ideal: Vec<usize>,
    },
    GaussianNonLocallyPrincipal {
        f: Vec<usize>,
        evidence: GaussianEvidence,
        maximal: Vec<usize>,
    },
    /// Number of minimal nonzero ideals in each localization.
    ZeroIrreducibleLocally {
        atoms: Vec<usize>,
    },
    ZeroReducible {
        maximal: Vec<usize>,
        left: Vec<usize>,
        right: Vec<usize>,
    },
}

/// Why a particular polynomial is Gaussian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum GaussianEvidence {
    Constant,
    UnitContent,
    LocalSquareZeroMaximal,
    RingCertifiedGaussian {
        ring: Box<Certificate>,
    },
    /// Evidence for the image in each localization.
    LocallyCertified {
        factors: Vec<GaussianEvidence>,
    },
}

impl GaussianEvidence {
    pub fn reason(&self) -> GaussianReason {
        match self {
            GaussianEvidence::Constant => GaussianReason::Constant,
            GaussianEvidence::UnitContent => GaussianReason::UnitContent,
            GaussianEvidence::LocalSquareZeroMaximal => GaussianReason::LocalSquareZeroMaximal,
            GaussianEvidence::RingCertifiedGaussian { .. } => GaussianReason::RingCertifiedGaussian,
            GaussianEvidence::LocallyCertified { .. } => GaussianReason::LocallyCertified,
        }
    }
}

impl Certificate {
    /// Stable short label for tables.
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::NoNilpotents => "no nilpotents",
            Certificate::Nilpotent { .. } => "nilpotent element",
            Certificate::VnRegular { .. } => "a = a^2 x for all a",
            Certificate::NotVnRegular { .. } => "a not in (a^2)",
            Certificate::AllIdealsLocallyPrincipal { .. } => "all ideals locally principal",
            Certificate::NotLocallyPrincipal { .. } => "ideal not locally principal",
            Certificate::ViaArithmetical => "arithmetical",
            Certificate::ViaLocalFactors { .. } => "local factors",
            Certificate::SquareZeroMaximal => "local, N^2 = 0",
            Certificate::ViaTrivialExtension { .. } => "A ∝ (A/M)^n, A Gaussian",
            Certificate::ContentNotMultiplicative { .. } => "c(fg) != c(f)c(g)",
            Certificate::BoundedSearch { .. } => "bounded search",
            Certificate::EveryElementUnitOrZeroDivisor => "unit or zero divisor",
            Certificate::NeitherUnitNorZeroDivisor { .. } => "neither unit nor zero divisor",
            Certificate::RegularIdealsInvertible { .. } => "regular ideals invertible",
            Certificate::RegularIdealNotInvertible { .. } => "regular ideal not invertible",
            Certificate::GaussianNonLocallyPrincipal { .. } => {
                "Gaussian f, c(f) not locally principal"
            }
            Certificate::ZeroIrreducibleLocally { .. } => "at most one atom locally",
            Certificate::ZeroReducible { .. } => "two atoms meet in 0",
        }
    }
}
