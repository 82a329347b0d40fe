//! Finite commutative rings, trivial ring extensions and the Prüfer-like
//! conditions on them, decided with replayable certificates.

pub mod classify;
pub mod corpus;
pub mod error;
pub mod ideal;
pub mod poly;
pub mod ring;
pub mod spec;

pub use classify::{
    classify, Certificate, ClassificationReport, ClassifyConfig, Condition, Verdict, Witness,
};
pub use corpus::{conjecture45, generate, run_corpus, run_theorems, CorpusConfig, Family};
pub use error::{Error, Result};
pub use ideal::{ideal_generated_by, Ideal, IdealLattice};
pub use poly::{RingPoly, SearchConfig};
pub use ring::build::{build_module, build_ring};
pub use ring::{ElementKind, FiniteModule, FiniteRing, RingHom};
pub use spec::{
    parse_document, parse_ring_spec, Literal, ModuleSpec, PolySpec, RingSpec, SpecDocument,
};
