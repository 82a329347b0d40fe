//! Localization of finite rings at maximal ideals.
//!
//! A finite ring is the product of its localizations. For a maximal ideal
//! `m` let `e` be the idempotent outside `m` with the smallest `Re`; then
//! `R_m = R/R(1-e)`, and `R(1-e)` is exactly `{r : sr = 0 for some s ∉ m}`.
//! Products are localized through their factors so that provenance
//! (trivial extensions in particular) survives.

use fixedbitset::FixedBitSet;

use super::{enumerate_ideals, principal_bits, principal_ideal, Ideal};
use crate::error::{Error, Result};
use crate::ring::{Construction, FiniteRing, RingHom};
use crate::spec::{RingKind, RingSpec};

#[derive(Clone, Debug)]
pub struct Localization {
    /// The maximal ideal of the original ring.
    pub maximal: Ideal,
    /// `R_m`, local.
    pub ring: FiniteRing,
    pub projection: RingHom,
    /// Idempotent `e` with `R_m ≅ Re`; maps to `1` in `R_m`.
    pub idempotent: usize,
}

impl Localization {
    pub fn kernel(&self) -> Ideal {
        self.projection.kernel()
    }

    /// Image of an ideal of `R` in `R_m`.
    pub fn push(&self, ideal: &Ideal) -> Ideal {
        let bits = self.projection.image_of(ideal.members());
        Ideal::from_members_unchecked(&self.ring, bits)
    }

    /// The ideal `{e·x : x ↦ J}` of `R`, which sits inside `Re ≅ R_m` and
    /// maps onto `J`.
    pub fn pull_into_component(&self, j: &Ideal) -> Ideal {
        let r = self.projection.source();
        let mut bits = FixedBitSet::with_capacity(r.order());
        for x in r.elements() {
            if j.contains(self.projection.apply(x)) {
                bits.insert(r.mul(self.idempotent, x));
            }
        }
        Ideal::from_members_unchecked(r, bits)
    }

    /// Some preimage of each element of `R_m`, scaled into `Re`.
    pub fn lift_table(&self) -> Vec<usize> {
        let r = self.projection.source();
        let mut table = vec![usize::MAX; self.ring.order()];
        for x in r.elements() {
            let y = self.projection.apply(x);
            if table[y] == usize::MAX {
                table[y] = r.mul(self.idempotent, x);
            }
        }
        table
    }
}

/// The idempotent `e ∉ m` generating the smallest principal ideal.
fn component_idempotent(r: &FiniteRing, m: &Ideal) -> usize {
    r.idempotents()
        .iter()
        .copied()
        .filter(|&e| !m.contains(e))
        .min_by_key(|&e| (principal_bits(r, e).count_ones(..), e))
        .expect("1 lies outside every proper ideal")
}

fn generic_localization(r: &FiniteRing, index: usize, m: &Ideal) -> Localization {
    let e = component_idempotent(r, m);
    let complement = r.sub(r.one(), e);
    let kernel = principal_ideal(r, complement);
    let spec = RingSpec::new(
        format!("{}_m{}", r.name(), index),
        RingKind::Quotient {
            ring: Box::new(r.spec().clone()),
            gens: vec![r.literal(complement)],
        },
    );
    let (ring, projection) = r
        .quotient_with_spec(spec, &kernel)
        .expect("kernel of a localization is proper");
    Localization {
        maximal: m.clone(),
        ring,
        projection,
        idempotent: e,
    }
}

fn compute_localizations(r: &FiniteRing) -> Vec<Localization> {
    if let Some(m) = r.is_local() {
        return vec![Localization {
            maximal: m,
            ring: r.clone(),
            projection: RingHom::identity(r),
            idempotent: r.one(),
        }];
    }
    let mut out = match r.construction() {
        Construction::Product { left, right } => {
            let w = right.order();
            let to_left = RingHom::new(r, left, r.elements().map(|x| x / w).collect());
            let to_right = RingHom::new(r, right, r.elements().map(|x| x % w).collect());
            let mut out = Vec::new();
            for (child, to_child) in [(left, to_left), (right, to_right)] {
                for loc in localizations(child) {
                    let projection = to_child.compose(&loc.projection);
                    let mut bits = FixedBitSet::with_capacity(r.order());
                    for x in r.elements() {
                        if loc.maximal.contains(to_child.apply(x)) {
                            bits.insert(x);
                        }
                    }
                    let maximal = Ideal::from_members_unchecked(r, bits);
                    let idempotent = component_idempotent(r, &maximal);
                    out.push(Localization {
                        maximal,
                        ring: loc.ring.clone(),
                        projection,
                        idempotent,
                    });
                }
            }
            out
        }
        _ => r
            .maximal_ideals()
            .iter()
            .enumerate()
            .map(|(i, m)| generic_localization(r, i, m))
            .collect(),
    };
    out.sort_by(|a, b| a.maximal.bits().cmp(b.maximal.bits()));
    out
}

/// One localization per maximal ideal, in the order of
/// [`FiniteRing::maximal_ideals`].
pub fn localizations(r: &FiniteRing) -> &[Localization] {
    r.cached_localizations(|| compute_localizations(r))
}

pub fn localize_at(r: &FiniteRing, m: &Ideal) -> Result<Localization> {
    if !m.ring().same_as(r) {
        return Err(Error::RingMismatch);
    }
    r.maximal_ideals()
        .iter()
        .position(|x| x == m)
        .map(|i| localizations(r)[i].clone())
        .ok_or(Error::NotMaximal)
}

/// Index (into the maximal ideals) of a localization where the pushed
/// ideal is not principal.
pub fn locally_principal_failure(ideal: &Ideal) -> Option<usize> {
    localizations(ideal.ring())
        .iter()
        .position(|loc| loc.push(ideal).is_principal().is_none())
}

pub fn is_locally_principal(ideal: &Ideal) -> bool {
    locally_principal_failure(ideal).is_none()
}

/// No two strictly larger ideals intersect in `ideal`. Brute force over
/// the overideals in the lattice.
pub fn is_irreducible(ideal: &Ideal, bound: usize) -> Result<bool> {
    let lattice = enumerate_ideals(ideal.ring(), bound)?;
    let above: Vec<&Ideal> = lattice
        .ideals()
        .iter()
        .filter(|j| ideal.is_subset(j) && j.order() > ideal.order())
        .collect();
    for (i, j) in above.iter().enumerate() {
        for k in &above[i + 1..] {
            let mut meet = j.bits().clone();
            meet.intersect_with(k.bits());
            if &meet == ideal.bits() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Atoms of the ideal lattice; the unit ideal is never included.
pub fn minimal_nonzero_ideals(r: &FiniteRing, bound: usize) -> Result<Vec<Ideal>> {
    let lattice = enumerate_ideals(r, bound)?;
    Ok(lattice
        .atoms()
        .into_iter()
        .map(|i| lattice.get(i).clone())
        .collect())
}

/// Two nonzero ideals of `R`, both inside the component `Re_m`, meeting in 0.
#[derive(Clone, Debug)]
pub struct ZeroReducible {
    pub maximal: usize,
    pub left: Ideal,
    pub right: Ideal,
}

/// The zero ideal of each `R_m` has at most one minimal nonzero ideal.
/// Returns a reducibility witness otherwise.
pub fn zero_reducibility_witness(r: &FiniteRing, bound: usize) -> Result<Option<ZeroReducible>> {
    for (i, loc) in localizations(r).iter().enumerate() {
        let atoms = minimal_nonzero_ideals(&loc.ring, bound)?;
        if atoms.len() > 1 {
            return Ok(Some(ZeroReducible {
                maximal: i,
                left: loc.pull_into_component(&atoms[0]),
                right: loc.pull_into_component(&atoms[1]),
            }));
        }
    }
    Ok(None)
}

pub fn zero_ideal_locally_irreducible(r: &FiniteRing, bound: usize) -> Result<bool> {
    Ok(zero_reducibility_witness(r, bound)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{ideal_generated_by, zero_ideal, DEFAULT_LATTICE_BOUND};
    use crate::ring::FiniteModule;

    /// Oracle: `{r : ∃ s ∉ m, sr = 0}` by brute force.
    fn brute_kernel(r: &FiniteRing, m: &Ideal) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(r.order());
        for x in r.elements() {
            if r.elements().any(|s| !m.contains(s) && r.mul(s, x) == 0) {
                bits.insert(x);
            }
        }
        bits
    }

    fn trivext(a: &FiniteRing, e: &FiniteModule) -> FiniteRing {
        FiniteRing::trivial_extension(a, e).unwrap().0
    }

    #[test]
    fn kernels_match_definition() {
        let z2 = FiniteRing::zmod(2).unwrap();
        let z4 = FiniteRing::zmod(4).unwrap();
        let r = trivext(&z4, &FiniteModule::quotient(&z4, &[2]).unwrap());
        let rings = [
            FiniteRing::zmod(6).unwrap(),
            FiniteRing::zmod(12).unwrap(),
            FiniteRing::zmod(30).unwrap(),
            FiniteRing::product(&r, &z2).unwrap(),
            FiniteRing::product(&FiniteRing::zmod(3).unwrap(), &FiniteRing::zmod(6).unwrap())
                .unwrap(),
        ];
        for ring in &rings {
            let locs = localizations(ring);
            assert_eq!(locs.len(), ring.maximal_ideals().len());
            for (loc, m) in locs.iter().zip(ring.maximal_ideals()) {
                assert_eq!(&loc.maximal, m);
                assert_eq!(loc.kernel().bits(), &brute_kernel(ring, m), "{ring:?}");
                loc.projection.verify().unwrap();
                assert!(loc.projection.is_surjective());
                assert!(loc.ring.is_local().is_some());
                assert_eq!(loc.ring.order() * loc.kernel().order(), ring.order());
                assert_eq!(loc.projection.apply(loc.idempotent), loc.ring.one());
            }
        }
    }

    #[test]
    fn zmod6_at_two() {
        let r = FiniteRing::zmod(6).unwrap();
        let m = ideal_generated_by(&r, &[2]);
        let loc = localize_at(&r, &m).unwrap();
        assert_eq!(loc.ring.order(), 2);
        assert_eq!(loc.kernel().to_index_list(), vec![0, 2, 4]);
        assert_eq!(
            localize_at(&r, &zero_ideal(&r)).unwrap_err(),
            Error::NotMaximal
        );
    }

    #[test]
    fn local_ring_localizes_to_itself() {
        let r = FiniteRing::zmod(4).unwrap();
        let loc = localize_at(&r, &ideal_generated_by(&r, &[2])).unwrap();
        assert!(loc.ring.ptr_eq(&r));
        assert!(loc.kernel().is_zero());
    }

    #[test]
    fn product_factor_localization() {
        let z2 = FiniteRing::zmod(2).unwrap();
        let z3 = FiniteRing::zmod(3).unwrap();
        let p = FiniteRing::product(&z2, &z3).unwrap();
        // (0,1) is index 1
        let m = p
            .maximal_ideals()
            .iter()
            .find(|m| m.contains(1))
            .unwrap()
            .clone();
        let loc = localize_at(&p, &m).unwrap();
        assert_eq!(loc.ring.order(), 2);
    }

    #[test]
    fn local_principality() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let lattice = enumerate_ideals(&z6, DEFAULT_LATTICE_BOUND).unwrap();
        assert!(lattice.ideals().iter().all(is_locally_principal));

        let z4 = FiniteRing::zmod(4).unwrap();
        let r = trivext(&z4, &FiniteModule::quotient(&z4, &[2]).unwrap());
        let c = ideal_generated_by(&r, &[4, 1]);
        assert_eq!(c.order(), 4);
        assert_eq!(locally_principal_failure(&c), Some(0));
        assert!(is_locally_principal(&ideal_generated_by(&r, &[r.one()])));
    }

    #[test]
    fn irreducibility() {
        let z4 = FiniteRing::zmod(4).unwrap();
        assert!(zero_ideal_locally_irreducible(&z4, DEFAULT_LATTICE_BOUND).unwrap());
        assert!(is_irreducible(&zero_ideal(&z4), DEFAULT_LATTICE_BOUND).unwrap());

        let r = trivext(&z4, &FiniteModule::quotient(&z4, &[2]).unwrap());
        assert!(!is_irreducible(&zero_ideal(&r), DEFAULT_LATTICE_BOUND).unwrap());
        let w = zero_reducibility_witness(&r, DEFAULT_LATTICE_BOUND)
            .unwrap()
            .unwrap();
        assert!(w.left.intersection(&w.right).unwrap().is_zero());
        assert!(!w.left.is_zero() && !w.right.is_zero());
        // the socle {0,2} ∝ Z/2 is two-dimensional: three atoms
        assert_eq!(
            minimal_nonzero_ideals(&r, DEFAULT_LATTICE_BOUND)
                .unwrap()
                .len(),
            3
        );

        let f2 = FiniteRing::zmod(2).unwrap();
        let s = trivext(&f2, &FiniteModule::free(&f2, 2).unwrap());
        assert_eq!(
            minimal_nonzero_ideals(&s, DEFAULT_LATTICE_BOUND)
                .unwrap()
                .len(),
            3
        );
        assert!(!zero_ideal_locally_irreducible(&s, DEFAULT_LATTICE_BOUND).unwrap());

        let z6 = FiniteRing::zmod(6).unwrap();
        assert!(zero_ideal_locally_irreducible(&z6, DEFAULT_LATTICE_BOUND).unwrap());
        assert!(!is_irreducible(&zero_ideal(&z6), DEFAULT_LATTICE_BOUND).unwrap());
    }
}
