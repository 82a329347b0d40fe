use super::{Construction, FiniteModule, FiniteRing, GfField};
use crate::error::{Error, Result};
use crate::ideal::ideal_generated_by;
use crate::spec::{ModuleSpec, RingKind, RingSpec};

/// Builds the ring a spec describes. Identical specs produce identical
/// element indexing.
pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing> {
    match &spec.kind {
        RingKind::Zmod { modulus } => {
            if *modulus < 2 {
                return Err(Error::ModulusTooSmall(*modulus as i64));
            }
            FiniteRing::from_construction(
                spec.clone(),
                Construction::Zmod {
                    modulus: *modulus as usize,
                },
            )
        }
        RingKind::Gf { p, k, poly } => {
            let checked = FiniteRing::gf(*p, *k, poly)?;
            let RingKind::Gf { poly: monic, .. } = &checked.spec().kind else {
                unreachable!()
            };
            FiniteRing::from_construction(
                RingSpec::new(spec.name.clone(), checked.spec().kind.clone()),
                Construction::Gf(GfField::new(*p, *k, monic.clone())),
            )
        }
        RingKind::Product { left, right } => {
            let (l, r) = (build_ring(left)?, build_ring(right)?);
            FiniteRing::with_product_spec(spec.clone(), &l, &r)
        }
        RingKind::Quotient { ring, gens } => {
            let parent = build_ring(ring)?;
            let gens = gens
                .iter()
                .map(|g| parent.parse_literal(g))
                .collect::<Result<Vec<_>>>()?;
            let ideal = ideal_generated_by(&parent, &gens);
            Ok(parent.quotient_with_spec(spec.clone(), &ideal)?.0)
        }
        RingKind::TrivExt { ring, module } => {
            let base = build_ring(ring)?;
            let module = build_module(module, &base)?;
            Ok(FiniteRing::with_trivext_spec(spec.clone(), &base, &module)?.0)
        }
    }
}

pub fn build_module(spec: &ModuleSpec, base: &FiniteRing) -> Result<FiniteModule> {
    FiniteModule::with_spec(spec.clone(), base)
}
