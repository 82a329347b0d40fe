//! Finite commutative rings with identity, addressed by element index.
//!
//! Every ring has elements `0..order`, with index `0` the additive identity.
//! Rings of order at most [`TABLE_LIMIT`] carry dense operation tables;
//! larger rings evaluate through their construction (pairs, tuples, cosets).

pub mod axioms;
pub mod build;
pub mod gf;
pub mod hom;
pub mod module;

use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::classify::Certificate;
use crate::error::{Error, Result};
use crate::ideal::lattice::IdealLattice;
use crate::ideal::localize::Localization;
use crate::ideal::Ideal;
use crate::spec::{Literal, RingKind, RingSpec};

pub use gf::GfField;
pub use hom::RingHom;
pub use module::FiniteModule;

/// Rings up to this order get dense `u16` operation tables.
pub const TABLE_LIMIT: usize = 4096;

/// Hard cap on ring and module orders.
pub const MAX_ORDER: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Unit,
    ZeroDivisor,
}

#[derive(Clone)]
pub struct FiniteRing(Arc<RingInner>);

struct RingInner {
    spec: RingSpec,
    order: usize,
    one: usize,
    construction: Construction,
    tables: Option<Tables>,
    cache: RingCache,
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

#[derive(Default)]
struct RingCache {
    units: OnceLock<FixedBitSet>,
    idempotents: OnceLock<Vec<usize>>,
    local: OnceLock<Option<Ideal>>,
    maximal: OnceLock<Vec<Ideal>>,
    localizations: OnceLock<Vec<Localization>>,
    lattice: OnceLock<Arc<IdealLattice>>,
    structural_gaussian: OnceLock<Option<Certificate>>,
    arithmetical_failure: OnceLock<Option<(Ideal, usize)>>,
}

/// How a ring was built. Children are kept so that provenance-aware
/// rules (products, trivial extensions) can inspect them.
pub enum Construction {
    Zmod {
        modulus: usize,
    },
    Gf(GfField),
    Product {
        left: FiniteRing,
        right: FiniteRing,
    },
    Quotient(QuotientData),
    TrivExt {
        base: FiniteRing,
        module: FiniteModule,
    },
}

pub struct QuotientData {
    pub parent: FiniteRing,
    pub kernel: FixedBitSet,
    /// Smallest member of each coset, in increasing order.
    pub reps: Vec<u32>,
    pub class_of: Vec<u32>,
}

/// Parenthesizes a compound name used as an operand.
pub(crate) fn operand(name: &str) -> String {
    if name.contains(' ') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// Labels the cosets of an additive subgroup by their smallest member.
pub(crate) fn coset_labels(
    order: usize,
    subgroup: &[usize],
    add: impl Fn(usize, usize) -> usize,
) -> (Vec<u32>, Vec<u32>) {
    let mut class_of = vec![u32::MAX; order];
    let mut reps = Vec::with_capacity(order / subgroup.len().max(1));
    for r in 0..order {
        if class_of[r] != u32::MAX {
            continue;
        }
        let label = reps.len() as u32;
        reps.push(r as u32);
        for &s in subgroup {
            class_of[add(r, s)] = label;
        }
    }
    (reps, class_of)
}

impl FiniteRing {
    fn from_construction(spec: RingSpec, construction: Construction) -> Result<FiniteRing> {
        let order = match &construction {
            Construction::Zmod { modulus } => *modulus,
            Construction::Gf(f) => f.order(),
            Construction::Product { left, right } => left.order() * right.order(),
            Construction::Quotient(q) => q.reps.len(),
            Construction::TrivExt { base, module } => base.order() * module.order(),
        };
        if order > MAX_ORDER {
            return Err(Error::BoundExceeded {
                order,
                bound: MAX_ORDER,
            });
        }
        let one = match &construction {
            Construction::Zmod { .. } | Construction::Gf(_) => 1,
            Construction::Product { left, right } => left.one() * right.order() + right.one(),
            Construction::Quotient(q) => q.class_of[q.parent.one()] as usize,
            Construction::TrivExt { base, module } => base.one() * module.order(),
        };
        let mut inner = RingInner {
            spec,
            order,
            one: one % order.max(1),
            construction,
            tables: None,
            cache: RingCache::default(),
        };
        if order <= TABLE_LIMIT {
            let n = order;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            let mut neg = vec![0u16; n];
            for a in 0..n {
                neg[a] = lazy_neg(&inner.construction, order, a) as u16;
                for b in a..n {
                    let s = lazy_add(&inner.construction, order, a, b) as u16;
                    let p = lazy_mul(&inner.construction, order, a, b) as u16;
                    add[a * n + b] = s;
                    add[b * n + a] = s;
                    mul[a * n + b] = p;
                    mul[b * n + a] = p;
                }
            }
            inner.tables = Some(Tables { add, mul, neg });
        }
        Ok(FiniteRing(Arc::new(inner)))
    }

    /// Z/nZ with residues in their natural order.
    pub fn zmod(modulus: usize) -> Result<FiniteRing> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall(modulus as i64));
        }
        FiniteRing::from_construction(
            RingSpec::zmod(modulus as u32),
            Construction::Zmod { modulus },
        )
    }

    /// GF(p^k) from an explicit irreducible polynomial (lowest coefficient first).
    pub fn gf(p: u32, k: u32, poly: &[u32]) -> Result<FiniteRing> {
        if !gf::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = gf::normalize_modulus(p, k, poly).ok_or_else(|| Error::Reducible {
            p,
            degree: k,
            poly: poly.to_vec(),
        })?;
        let kind = RingKind::Gf {
            p,
            k,
            poly: modulus.clone(),
        };
        let name = format!("gf({p},{k})");
        FiniteRing::from_construction(
            RingSpec::new(name, kind),
            Construction::Gf(GfField::new(p, k, modulus)),
        )
    }

    /// Direct product; elements are pairs `(a, b)` indexed `a * |B| + b`.
    pub fn product(left: &FiniteRing, right: &FiniteRing) -> Result<FiniteRing> {
        let spec = RingSpec::new(
            format!("{} x {}", operand(left.name()), operand(right.name())),
            RingKind::Product {
                left: Box::new(left.spec().clone()),
                right: Box::new(right.spec().clone()),
            },
        );
        FiniteRing::with_product_spec(spec, left, right)
    }

    pub(crate) fn with_product_spec(
        spec: RingSpec,
        left: &FiniteRing,
        right: &FiniteRing,
    ) -> Result<FiniteRing> {
        FiniteRing::from_construction(
            spec,
            Construction::Product {
                left: left.clone(),
                right: right.clone(),
            },
        )
    }

    /// The idealization `A ∝ E`, with the embedding `a ↦ (a,0)` and the
    /// projection `(a,e) ↦ a`.
    pub fn trivial_extension(
        base: &FiniteRing,
        module: &FiniteModule,
    ) -> Result<(FiniteRing, RingHom, RingHom)> {
        let spec = RingSpec::new(
            format!("{} ∝ {}", operand(base.name()), operand(module.name())),
            RingKind::TrivExt {
                ring: Box::new(base.spec().clone()),
                module: Box::new(module.spec().clone()),
            },
        );
        FiniteRing::with_trivext_spec(spec, base, module)
    }

    pub(crate) fn with_trivext_spec(
        spec: RingSpec,
        base: &FiniteRing,
        module: &FiniteModule,
    ) -> Result<(FiniteRing, RingHom, RingHom)> {
        if !module.base().same_as(base) {
            return Err(Error::ModuleBaseMismatch);
        }
        let ring = FiniteRing::from_construction(
            spec,
            Construction::TrivExt {
                base: base.clone(),
                module: module.clone(),
            },
        )?;
        let m = module.order();
        let embed = RingHom::new(base, &ring, (0..base.order()).map(|a| a * m).collect());
        let project = RingHom::new(&ring, base, (0..ring.order()).map(|r| r / m).collect());
        Ok((ring, embed, project))
    }

    /// `R/I` on coset representatives, with the projection. The zero
    /// ideal yields `R` itself and the identity.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(FiniteRing, RingHom)> {
        let gens = ideal
            .gens()
            .iter()
            .map(|&g| self.literal(g))
            .collect::<Vec<_>>();
        let spec = RingSpec::new(
            format!("{}/({})", self.name(), ideal.gens_display()),
            RingKind::Quotient {
                ring: Box::new(self.spec().clone()),
                gens,
            },
        );
        self.quotient_with_spec(spec, ideal)
    }

    pub(crate) fn quotient_with_spec(
        &self,
        spec: RingSpec,
        ideal: &Ideal,
    ) -> Result<(FiniteRing, RingHom)> {
        if !ideal.ring().same_as(self) {
            return Err(Error::RingMismatch);
        }
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if ideal.is_zero() {
            return Ok((self.clone(), RingHom::identity(self)));
        }
        let members: Vec<usize> = ideal.members().collect();
        let (reps, class_of) = coset_labels(self.order(), &members, |a, b| self.add(a, b));
        let map: Vec<u32> = class_of.clone();
        let ring = FiniteRing::from_construction(
            spec,
            Construction::Quotient(QuotientData {
                parent: self.clone(),
                kernel: ideal.bits().clone(),
                reps,
                class_of,
            }),
        )?;
        let proj = RingHom::from_raw(self, &ring, map);
        Ok((ring, proj))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.0.one
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn name(&self) -> &str {
        &self.0.spec.name
    }

    pub fn construction(&self) -> &Construction {
        &self.0.construction
    }

    /// Same object, or structurally identical constructions (which index
    /// their elements identically).
    pub fn same_as(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.spec() == other.spec()
    }

    pub fn ptr_eq(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.add[a * self.0.order + b] as usize,
            None => lazy_add(&self.0.construction, self.0.order, a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.mul[a * self.0.order + b] as usize,
            None => lazy_mul(&self.0.construction, self.0.order, a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.neg[a] as usize,
            None => lazy_neg(&self.0.construction, self.0.order, a),
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    // -- element literals --------------------------------------------------

    pub fn literal(&self, a: usize) -> Literal {
        match &self.0.construction {
            Construction::Zmod { .. } | Construction::Gf(_) => Literal::Int(a as i64),
            Construction::Product { left, right } => {
                let (x, y) = (a / right.order(), a % right.order());
                Literal::Tuple(vec![left.literal(x), right.literal(y)])
            }
            Construction::Quotient(q) => q.parent.literal(q.reps[a] as usize),
            Construction::TrivExt { base, module } => {
                let (x, e) = (a / module.order(), a % module.order());
                Literal::Tuple(vec![base.literal(x), module.literal(e)])
            }
        }
    }

    pub fn format(&self, a: usize) -> String {
        self.literal(a).to_string()
    }

    pub fn parse_literal(&self, lit: &Literal) -> Result<usize> {
        let bad = |reason: &str| Error::BadLiteral {
            literal: lit.to_string(),
            reason: reason.to_string(),
        };
        match (&self.0.construction, lit) {
            (Construction::Zmod { modulus }, Literal::Int(v)) => {
                Ok(v.rem_euclid(*modulus as i64) as usize)
            }
            (Construction::Gf(f), Literal::Int(v)) => {
                if *v < 0 || *v as usize >= f.order() {
                    Err(bad("gf literal out of range"))
                } else {
                    Ok(*v as usize)
                }
            }
            (Construction::Gf(f), Literal::Tuple(items)) => {
                if items.len() > f.k as usize {
                    return Err(bad("too many gf coefficients"));
                }
                let mut digits = Vec::with_capacity(items.len());
                for item in items {
                    match item {
                        Literal::Int(c) => digits.push(c.rem_euclid(f.p as i64) as u32),
                        _ => return Err(bad("gf coefficients must be integers")),
                    }
                }
                Ok(f.encode(&digits))
            }
            (Construction::Product { left, right }, Literal::Tuple(items)) if items.len() == 2 => {
                Ok(left.parse_literal(&items[0])? * right.order()
                    + right.parse_literal(&items[1])?)
            }
            (Construction::Quotient(q), _) => Ok(q.class_of[q.parent.parse_literal(lit)?] as usize),
            (Construction::TrivExt { base, module }, Literal::Tuple(items)) if items.len() == 2 => {
                Ok(base.parse_literal(&items[0])? * module.order()
                    + module.parse_literal(&items[1])?)
            }
            (Construction::Zmod { .. }, _) => Err(bad("expected an integer")),
            _ => Err(bad("expected a pair")),
        }
    }

    // -- element structure -------------------------------------------------

    /// Units, found by walking the powers of each element: `a` is a unit
    /// iff its power sequence is purely periodic, i.e. returns to 1.
    pub fn units(&self) -> &FixedBitSet {
        self.0.cache.units.get_or_init(|| {
            let mut units = FixedBitSet::with_capacity(self.order());
            for a in self.elements() {
                if units.contains(a) {
                    continue;
                }
                if self.power_cycle_hits_one(a) {
                    // Every power of a unit is a unit.
                    let mut x = a;
                    while !units.contains(x) {
                        units.insert(x);
                        x = self.mul(x, a);
                    }
                }
            }
            units
        })
    }

    fn power_cycle_hits_one(&self, a: usize) -> bool {
        // Brent's cycle detection on x -> a*x starting at 1.
        let one = self.one();
        let mut power = 1usize;
        let mut lam = 1usize;
        let mut tortoise = one;
        let mut hare = self.mul(a, one);
        while tortoise != hare {
            if power == lam {
                tortoise = hare;
                power *= 2;
                lam = 0;
            }
            hare = self.mul(a, hare);
            lam += 1;
        }
        // Purely periodic from 1 iff a^lam = 1.
        self.pow(a, lam as u64) == one
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units().contains(a)
    }

    /// Every element of a finite ring is a unit or a zero divisor; `0` is
    /// classified as a zero divisor.
    pub fn element_kind(&self, a: usize) -> ElementKind {
        if self.is_unit(a) && self.order() > 1 {
            ElementKind::Unit
        } else {
            ElementKind::ZeroDivisor
        }
    }

    /// A regular element is a nonzero non-zero-divisor.
    pub fn is_regular_element(&self, a: usize) -> bool {
        a != self.zero() && self.zero_divisor_partner(a).is_none()
    }

    /// Exhaustive search for `x != 0` with `a x = 0`.
    pub fn zero_divisor_partner(&self, a: usize) -> Option<usize> {
        (1..self.order()).find(|&x| self.mul(a, x) == 0)
    }

    /// Exhaustive search for `x` with `a x = 1`.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let one = self.one();
        self.elements().find(|&x| self.mul(a, x) == one)
    }

    pub fn idempotents(&self) -> &[usize] {
        self.0
            .cache
            .idempotents
            .get_or_init(|| self.elements().filter(|&e| self.mul(e, e) == e).collect())
    }

    /// The unique maximal ideal if the ring is local. Decided by checking
    /// whether the non-units are closed under addition.
    pub fn is_local(&self) -> Option<Ideal> {
        self.0
            .cache
            .local
            .get_or_init(|| {
                let units = self.units();
                let nonunits: Vec<usize> =
                    self.elements().filter(|&a| !units.contains(a)).collect();
                for (i, &a) in nonunits.iter().enumerate() {
                    for &b in &nonunits[i..] {
                        if units.contains(self.add(a, b)) {
                            return None;
                        }
                    }
                }
                let mut bits = FixedBitSet::with_capacity(self.order());
                for &a in &nonunits {
                    bits.insert(a);
                }
                Some(Ideal::from_members_unchecked(self, bits))
            })
            .clone()
    }

    pub fn is_field(&self) -> bool {
        self.order() >= 2 && self.units().count_ones(..) == self.order() - 1
    }

    /// Minimal nonzero idempotents; one per local factor.
    pub fn primitive_idempotents(&self) -> Vec<usize> {
        let ids: Vec<usize> = self
            .idempotents()
            .iter()
            .copied()
            .filter(|&e| e != 0)
            .collect();
        ids.iter()
            .copied()
            .filter(|&e| ids.iter().all(|&f| f == e || self.mul(f, e) != f))
            .collect()
    }

    /// All maximal ideals, ordered by membership bitset.
    pub fn maximal_ideals(&self) -> &[Ideal] {
        self.0.cache.maximal.get_or_init(|| {
            if let Some(m) = self.is_local() {
                return vec![m];
            }
            let units = self.units();
            let one = self.one();
            let mut out: Vec<Ideal> = self
                .primitive_idempotents()
                .into_iter()
                .map(|e| {
                    let complement = self.sub(one, e);
                    let mut bits = FixedBitSet::with_capacity(self.order());
                    for r in self.elements() {
                        if !units.contains(self.add(self.mul(r, e), complement)) {
                            bits.insert(r);
                        }
                    }
                    Ideal::from_members_unchecked(self, bits)
                })
                .collect();
            out.sort_by(|a, b| a.bits().cmp(b.bits()));
            out
        })
    }

    pub(crate) fn cached_localizations(
        &self,
        f: impl FnOnce() -> Vec<Localization>,
    ) -> &[Localization] {
        self.0.cache.localizations.get_or_init(f)
    }

    pub(crate) fn cached_lattice(&self) -> Option<&Arc<IdealLattice>> {
        self.0.cache.lattice.get()
    }

    pub(crate) fn store_lattice(&self, lattice: Arc<IdealLattice>) -> Arc<IdealLattice> {
        self.0.cache.lattice.get_or_init(|| lattice).clone()
    }

    pub(crate) fn structural_gaussian_cache(&self) -> &OnceLock<Option<Certificate>> {
        &self.0.cache.structural_gaussian
    }

    pub(crate) fn arithmetical_failure_cache(&self) -> &OnceLock<Option<(Ideal, usize)>> {
        &self.0.cache.arithmetical_failure
    }

    /// Exhaustive search for a ring isomorphism `self -> other`. Only
    /// meant for small orders; generators are matched by backtracking
    /// over the additive and multiplicative tables.
    pub fn isomorphism_to(&self, other: &FiniteRing) -> Option<RingHom> {
        hom::find_isomorphism(self, other)
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.spec(), self.order())
    }
}

fn lazy_add(c: &Construction, _order: usize, a: usize, b: usize) -> usize {
    match c {
        Construction::Zmod { modulus } => (a + b) % modulus,
        Construction::Gf(f) => f.add(a, b),
        Construction::Product { left, right } => {
            let m = right.order();
            left.add(a / m, b / m) * m + right.add(a % m, b % m)
        }
        Construction::Quotient(q) => {
            q.class_of[q.parent.add(q.reps[a] as usize, q.reps[b] as usize)] as usize
        }
        Construction::TrivExt { base, module } => {
            let m = module.order();
            base.add(a / m, b / m) * m + module.add(a % m, b % m)
        }
    }
}

fn lazy_mul(c: &Construction, _order: usize, a: usize, b: usize) -> usize {
    match c {
        Construction::Zmod { modulus } => ((a as u64 * b as u64) % *modulus as u64) as usize,
        Construction::Gf(f) => f.mul(a, b),
        Construction::Product { left, right } => {
            let m = right.order();
            left.mul(a / m, b / m) * m + right.mul(a % m, b % m)
        }
        Construction::Quotient(q) => {
            q.class_of[q.parent.mul(q.reps[a] as usize, q.reps[b] as usize)] as usize
        }
        Construction::TrivExt { base, module } => {
            // (a,e)(a',e') = (aa', ae' + a'e)
            let m = module.order();
            let (x, e) = (a / m, a % m);
            let (y, f) = (b / m, b % m);
            base.mul(x, y) * m + module.add(module.act(x, f), module.act(y, e))
        }
    }
}

fn lazy_neg(c: &Construction, _order: usize, a: usize) -> usize {
    match c {
        Construction::Zmod { modulus } => (modulus - a) % modulus,
        Construction::Gf(f) => f.neg(a),
        Construction::Product { left, right } => {
            let m = right.order();
            left.neg(a / m) * m + right.neg(a % m)
        }
        Construction::Quotient(q) => q.class_of[q.parent.neg(q.reps[a] as usize)] as usize,
        Construction::TrivExt { base, module } => {
            let m = module.order();
            base.neg(a / m) * m + module.neg(a % m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_generated_by;

    fn z4_z2() -> FiniteRing {
        let a = FiniteRing::zmod(4).unwrap();
        let e = FiniteModule::quotient(&a, &[2]).unwrap();
        FiniteRing::trivial_extension(&a, &e).unwrap().0
    }

    #[test]
    fn zmod6_zero_divisors() {
        let r = FiniteRing::zmod(6).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.mul(2, 3), 0);
        assert_eq!(r.neg(2), 4);
    }

    #[test]
    fn gf4_is_a_field() {
        let f = FiniteRing::gf(2, 2, &[1, 1, 1]).unwrap();
        assert_eq!(f.order(), 4);
        // oracle: exhaustive inverse search
        for a in 1..4 {
            assert!(f.inverse(a).is_some());
            assert_eq!(f.element_kind(a), ElementKind::Unit);
        }
        assert!(f.is_field());
    }

    #[test]
    fn product_of_z2_z3_is_z6() {
        let p = FiniteRing::product(&FiniteRing::zmod(2).unwrap(), &FiniteRing::zmod(3).unwrap())
            .unwrap();
        assert_eq!(p.order(), 6);
        let z6 = FiniteRing::zmod(6).unwrap();
        let iso = p.isomorphism_to(&z6).expect("CRT isomorphism");
        iso.verify().unwrap();
    }

    #[test]
    fn idealization_products() {
        let r = z4_z2();
        assert_eq!(r.order(), 8);
        let el = |a: i64, e: i64| {
            r.parse_literal(&Literal::Tuple(vec![Literal::Int(a), Literal::Int(e)]))
                .unwrap()
        };
        assert_eq!(r.mul(el(2, 0), el(2, 0)), el(0, 0));
        assert_eq!(r.mul(el(2, 0), el(0, 1)), el(0, 0));
        for e in 0..2 {
            for f in 0..2 {
                assert_eq!(r.mul(el(0, e), el(0, f)), 0);
            }
        }
        // (2,1)(2,0) = (0,0) witnesses that (2,1) is a zero divisor
        assert_eq!(r.mul(el(2, 1), el(2, 0)), 0);
        assert_eq!(r.element_kind(el(2, 1)), ElementKind::ZeroDivisor);
        assert_eq!(r.format(el(2, 1)), "(2,1)");
    }

    #[test]
    fn element_kinds_in_z4() {
        let r = FiniteRing::zmod(4).unwrap();
        assert_eq!(r.element_kind(3), ElementKind::Unit);
        assert_eq!(r.element_kind(2), ElementKind::ZeroDivisor);
        assert_eq!(r.element_kind(0), ElementKind::ZeroDivisor);
        assert!(!r.is_regular_element(2));
        assert!(r.is_regular_element(1));
    }

    #[test]
    fn locality() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let m = z4.is_local().unwrap();
        assert_eq!(m.members().collect::<Vec<_>>(), vec![0, 2]);

        let r = z4_z2();
        let m = r.is_local().unwrap();
        assert_eq!(m.order(), 4);
        let expected = ideal_generated_by(&r, &[2 * 2, 1]);
        assert_eq!(m.bits(), expected.bits());

        let z6 = FiniteRing::zmod(6).unwrap();
        assert!(z6.is_local().is_none());
        let maxes: Vec<Vec<usize>> = z6
            .maximal_ideals()
            .iter()
            .map(|m| m.members().collect())
            .collect();
        assert_eq!(maxes.len(), 2);
        assert!(maxes.contains(&vec![0, 2, 4]));
        assert!(maxes.contains(&vec![0, 3]));
    }

    #[test]
    fn units_match_exhaustive_search() {
        for n in 2..40 {
            let r = FiniteRing::zmod(n).unwrap();
            for a in r.elements() {
                assert_eq!(r.is_unit(a), r.inverse(a).is_some(), "zmod({n}) a={a}");
            }
        }
    }

    #[test]
    fn lazy_and_tabulated_agree() {
        // zmod(5000) is above the table limit and evaluates lazily.
        let big = FiniteRing::zmod(5000).unwrap();
        assert_eq!(big.mul(4999, 4999), 1);
        assert_eq!(big.add(4999, 2), 1);
        assert!(!big.is_unit(2500));
    }
}
