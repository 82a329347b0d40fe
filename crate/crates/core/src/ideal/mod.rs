//! Ideals as membership bitsets with an irredundant generator list.

pub mod lattice;
pub mod localize;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::FiniteRing;

pub use lattice::{enumerate_ideals, IdealLattice, DEFAULT_LATTICE_BOUND};
pub use localize::{
    is_irreducible, is_locally_principal, localizations, localize_at, locally_principal_failure,
    minimal_nonzero_ideals, zero_ideal_locally_irreducible, zero_reducibility_witness,
    Localization, ZeroReducible,
};

#[derive(Clone)]
pub struct Ideal {
    ring: FiniteRing,
    bits: FixedBitSet,
    gens: Vec<usize>,
}

/// An additive subgroup under construction, kept as bitset plus member list.
pub(crate) struct Span<'a> {
    ring: &'a FiniteRing,
    bits: FixedBitSet,
    list: Vec<usize>,
}

impl<'a> Span<'a> {
    pub(crate) fn zero(ring: &'a FiniteRing) -> Self {
        let mut bits = FixedBitSet::with_capacity(ring.order());
        bits.insert(ring.zero());
        Span {
            ring,
            bits,
            list: vec![ring.zero()],
        }
    }

    pub(crate) fn from_bits(ring: &'a FiniteRing, bits: &FixedBitSet) -> Self {
        Span {
            ring,
            bits: bits.clone(),
            list: bits.ones().collect(),
        }
    }

    pub(crate) fn contains(&self, a: usize) -> bool {
        self.bits.contains(a)
    }

    /// Adjoins the cyclic group generated by `t`: the cosets `S + kt` are
    /// disjoint until `kt` falls back into `S`.
    fn adjoin_cyclic(&mut self, t: usize) {
        let base_len = self.list.len();
        let mut c = t;
        while !self.bits.contains(c) {
            for i in 0..base_len {
                let x = self.ring.add(self.list[i], c);
                self.bits.insert(x);
                self.list.push(x);
            }
            c = self.ring.add(c, t);
        }
    }

    /// Adjoins the principal ideal `Ra`.
    pub(crate) fn adjoin_principal(&mut self, a: usize) {
        if self.contains(a) {
            return;
        }
        for r in self.ring.elements() {
            let t = self.ring.mul(r, a);
            if !self.bits.contains(t) {
                self.adjoin_cyclic(t);
            }
        }
    }

    pub(crate) fn into_bits(self) -> FixedBitSet {
        self.bits
    }
}

/// Greedy generator list: members in increasing index order, keeping those
/// not already in the ideal generated by the earlier ones.
fn greedy_gens(ring: &FiniteRing, bits: &FixedBitSet) -> Vec<usize> {
    let target = bits.count_ones(..);
    let mut span = Span::zero(ring);
    let mut gens = Vec::new();
    for a in bits.ones() {
        if span.list.len() == target {
            break;
        }
        if !span.contains(a) {
            gens.push(a);
            span.adjoin_principal(a);
        }
    }
    gens
}

/// The smallest ideal containing `gens`. Redundant generators (already in
/// the ideal spanned by earlier ones) are dropped.
pub fn ideal_generated_by(ring: &FiniteRing, gens: &[usize]) -> Ideal {
    let mut span = Span::zero(ring);
    let mut kept = Vec::new();
    for &g in gens {
        if !span.contains(g) {
            kept.push(g);
            span.adjoin_principal(g);
        }
    }
    Ideal {
        ring: ring.clone(),
        bits: span.into_bits(),
        gens: kept,
    }
}

pub fn principal_ideal(ring: &FiniteRing, a: usize) -> Ideal {
    ideal_generated_by(ring, &[a])
}

pub fn zero_ideal(ring: &FiniteRing) -> Ideal {
    ideal_generated_by(ring, &[])
}

pub fn unit_ideal(ring: &FiniteRing) -> Ideal {
    ideal_generated_by(ring, &[ring.one()])
}

/// The set `{ra : r ∈ R}` without generator bookkeeping.
pub(crate) fn principal_bits(ring: &FiniteRing, a: usize) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(ring.order());
    for r in ring.elements() {
        bits.insert(ring.mul(r, a));
    }
    bits
}

impl Ideal {
    /// Wraps a member set already known to be an ideal.
    pub(crate) fn from_members_unchecked(ring: &FiniteRing, bits: FixedBitSet) -> Ideal {
        debug_assert!(is_ideal(ring, &bits), "member set is not an ideal");
        let gens = greedy_gens(ring, &bits);
        Ideal {
            ring: ring.clone(),
            bits,
            gens,
        }
    }

    pub(crate) fn from_parts(ring: &FiniteRing, bits: FixedBitSet, gens: Vec<usize>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            bits,
            gens,
        }
    }

    /// Validates closure under addition and ring multiplication.
    pub fn from_members(ring: &FiniteRing, bits: FixedBitSet) -> Result<Ideal> {
        if !is_ideal(ring, &bits) {
            return Err(Error::Consistency("member set is not an ideal".into()));
        }
        Ok(Ideal::from_members_unchecked(ring, bits))
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn order(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, a: usize) -> bool {
        self.bits.contains(a)
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.order() == self.ring.order()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn gens_display(&self) -> String {
        self.gens
            .iter()
            .map(|&g| self.ring.format(g))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut span = Span::from_bits(&self.ring, &self.bits);
        let mut gens = self.gens.clone();
        for &g in &other.gens {
            if !span.contains(g) {
                gens.push(g);
                span.adjoin_principal(g);
            }
        }
        Ok(Ideal::from_parts(&self.ring, span.into_bits(), gens))
    }

    /// Generated by pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut products = Vec::with_capacity(self.gens.len() * other.gens.len());
        for &a in &self.gens {
            for &b in &other.gens {
                products.push(self.ring.mul(a, b));
            }
        }
        Ok(ideal_generated_by(&self.ring, &products))
    }

    pub fn power(&self, k: usize) -> Ideal {
        let mut acc = unit_ideal(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(Ideal::from_members_unchecked(&self.ring, bits))
    }

    /// `(self : other) = {r : r·other ⊆ self}`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut bits = FixedBitSet::with_capacity(self.ring.order());
        for r in self.ring.elements() {
            if other
                .gens
                .iter()
                .all(|&h| self.contains(self.ring.mul(r, h)))
            {
                bits.insert(r);
            }
        }
        Ok(Ideal::from_members_unchecked(&self.ring, bits))
    }

    pub fn annihilator(&self) -> Ideal {
        zero_ideal(&self.ring).quotient(self).expect("same ring")
    }

    /// A single generator when the ideal is principal. Uses the ring's
    /// ideal lattice when one has been built, otherwise tries every member.
    pub fn is_principal(&self) -> Option<usize> {
        if let Some(lattice) = self.ring.cached_lattice() {
            let id = lattice.id_of(self)?;
            return self.members().find(|&a| lattice.principal_id(a) == id);
        }
        let n = self.order();
        self.members()
            .find(|&a| principal_bits(&self.ring, a).count_ones(..) == n)
    }

    /// A member that is a regular element (non-zero-divisor), if any.
    pub fn regular_element(&self) -> Option<usize> {
        self.members().find(|&a| self.ring.is_regular_element(a))
    }

    pub fn is_regular(&self) -> bool {
        self.regular_element().is_some()
    }

    /// Invertible in the general sense: some ideal `J` makes `IJ` a
    /// principal ideal generated by a regular element. `candidates` should
    /// be the full ideal lattice.
    ///
    /// In a finite ring a regular element is a unit, so this holds exactly
    /// when `I = R`; the equivalence is asserted rather than assumed.
    pub fn is_invertible(&self, candidates: &IdealLattice) -> bool {
        let invertible = candidates.ideals().iter().any(|j| {
            let p = self.product(j).expect("same ring");
            let generated = p.members().any(|g| {
                self.ring.is_regular_element(g) && principal_bits(&self.ring, g) == p.bits
            });
            generated
        });
        assert_eq!(
            invertible,
            self.is_unit(),
            "finite-ring invertibility collapse violated for ({})",
            self.gens_display()
        );
        invertible
    }

    /// Members as element-index list, for serialization.
    pub fn to_index_list(&self) -> Vec<usize> {
        self.members().collect()
    }
}

/// Closure under addition and multiplication by every ring element.
pub fn is_ideal(ring: &FiniteRing, bits: &FixedBitSet) -> bool {
    if !bits.contains(ring.zero()) {
        return false;
    }
    let members: Vec<usize> = bits.ones().collect();
    for &a in &members {
        for &b in &members {
            if !bits.contains(ring.add(a, b)) {
                return false;
            }
        }
        for r in ring.elements() {
            if !bits.contains(ring.mul(r, a)) {
                return false;
            }
        }
    }
    true
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.bits == other.bits
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ideal(({}) of order {} in {})",
            self.gens_display(),
            self.order(),
            self.ring.name()
        )
    }
}
