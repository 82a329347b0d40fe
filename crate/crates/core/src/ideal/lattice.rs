use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{principal_bits, Ideal};
use crate::error::{Error, Result};
use crate::ring::FiniteRing;

pub const DEFAULT_LATTICE_BOUND: usize = 4096;

/// Every ideal of a finite ring, sorted by (cardinality, membership).
/// Index 0 is the zero ideal and the last index is the ring itself.
pub struct IdealLattice {
    ring: FiniteRing,
    ideals: Vec<Ideal>,
    index: HashMap<FixedBitSet, usize>,
    principal_of: Vec<u32>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    joins: OnceLock<Vec<u32>>,
    products: OnceLock<Vec<u32>>,
}

/// Builds (or returns the cached) ideal lattice by closing the principal
/// ideals under pairwise sums.
pub fn enumerate_ideals(ring: &FiniteRing, bound: usize) -> Result<Arc<IdealLattice>> {
    if let Some(l) = ring.cached_lattice() {
        return Ok(l.clone());
    }
    if ring.order() > bound {
        return Err(Error::BoundExceeded {
            order: ring.order(),
            bound,
        });
    }
    Ok(ring.store_lattice(Arc::new(IdealLattice::build(ring))))
}

impl IdealLattice {
    fn build(ring: &FiniteRing) -> IdealLattice {
        let n = ring.order();
        let mut ideals: Vec<Ideal> = Vec::new();
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut principal_of = vec![0u32; n];

        let mut full = FixedBitSet::with_capacity(n);
        full.insert_range(..);
        let units = ring.units();
        for a in ring.elements() {
            let (bits, gens) = if units.contains(a) {
                (full.clone(), vec![ring.one()])
            } else {
                (principal_bits(ring, a), vec![a])
            };
            let id = *index.entry(bits.clone()).or_insert_with(|| {
                ideals.push(Ideal::from_parts(ring, bits, gens));
                ideals.len() - 1
            });
            principal_of[a] = id as u32;
        }

        let mut k = 0;
        while k < ideals.len() {
            for j in 0..k {
                let (a, b) = (&ideals[k], &ideals[j]);
                if a.is_subset(b) || b.is_subset(a) {
                    continue;
                }
                let s = a.sum(b).expect("same ring");
                if !index.contains_key(s.bits()) {
                    index.insert(s.bits().clone(), ideals.len());
                    ideals.push(s);
                }
            }
            k += 1;
        }

        let mut order: Vec<usize> = (0..ideals.len()).collect();
        order.sort_by(|&x, &y| {
            ideals[x]
                .order()
                .cmp(&ideals[y].order())
                .then_with(|| ideals[x].bits().cmp(ideals[y].bits()))
        });
        let mut rank = vec![0usize; ideals.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut slots: Vec<Option<Ideal>> = ideals.into_iter().map(Some).collect();
        let ideals: Vec<Ideal> = order
            .iter()
            .map(|&old| slots[old].take().unwrap())
            .collect();
        for p in principal_of.iter_mut() {
            *p = rank[*p as usize] as u32;
        }
        let index: HashMap<FixedBitSet, usize> = ideals
            .iter()
            .enumerate()
            .map(|(i, id)| (id.bits().clone(), i))
            .collect();

        let len = ideals.len();
        let mut lower_covers = vec![Vec::new(); len];
        let mut upper_covers = vec![Vec::new(); len];
        for j in 0..len {
            let below: Vec<usize> = (0..j)
                .filter(|&i| {
                    ideals[i].order() < ideals[j].order() && ideals[i].is_subset(&ideals[j])
                })
                .collect();
            for &i in &below {
                let covered = below.iter().any(|&k| {
                    k != i
                        && ideals[i].is_subset(&ideals[k])
                        && ideals[i].order() < ideals[k].order()
                });
                if !covered {
                    lower_covers[j].push(i);
                    upper_covers[i].push(j);
                }
            }
        }

        IdealLattice {
            ring: ring.clone(),
            ideals,
            index,
            principal_of,
            upper_covers,
            lower_covers,
            joins: OnceLock::new(),
            products: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn get(&self, id: usize) -> &Ideal {
        &self.ideals[id]
    }

    pub fn id_of(&self, ideal: &Ideal) -> Option<usize> {
        self.id_of_bits(ideal.bits())
    }

    pub fn id_of_bits(&self, bits: &FixedBitSet) -> Option<usize> {
        self.index.get(bits).copied()
    }

    pub fn zero_id(&self) -> usize {
        0
    }

    pub fn unit_id(&self) -> usize {
        self.ideals.len() - 1
    }

    /// Id of the principal ideal `Ra`.
    #[inline]
    pub fn principal_id(&self, a: usize) -> usize {
        self.principal_of[a] as usize
    }

    pub fn upper_covers(&self, id: usize) -> &[usize] {
        &self.upper_covers[id]
    }

    pub fn lower_covers(&self, id: usize) -> &[usize] {
        &self.lower_covers[id]
    }

    /// Coatoms.
    pub fn maximal(&self) -> Vec<usize> {
        self.lower_covers[self.unit_id()].clone()
    }

    /// Atoms other than the ring itself (a field has none).
    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers[0]
            .iter()
            .copied()
            .filter(|&i| i != self.unit_id())
            .collect()
    }

    /// Only `0` and `R`.
    pub fn is_field_like(&self) -> bool {
        self.ideals.len() == 2
    }

    fn join_table(&self) -> &[u32] {
        self.joins.get_or_init(|| {
            let len = self.len();
            let mut table = vec![0u32; len * len];
            for i in 0..len {
                for j in i..len {
                    let s = self.ideals[i].sum(&self.ideals[j]).expect("same ring");
                    let id = self.id_of(&s).expect("lattice is closed under sums") as u32;
                    table[i * len + j] = id;
                    table[j * len + i] = id;
                }
            }
            table
        })
    }

    fn product_table(&self) -> &[u32] {
        self.products.get_or_init(|| {
            let len = self.len();
            let mut table = vec![0u32; len * len];
            for i in 0..len {
                for j in i..len {
                    let p = self.ideals[i].product(&self.ideals[j]).expect("same ring");
                    let id = self.id_of(&p).expect("lattice is closed under products") as u32;
                    table[i * len + j] = id;
                    table[j * len + i] = id;
                }
            }
            table
        })
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join_table()[i * self.len() + j] as usize
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.product_table()[i * self.len() + j] as usize
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let mut bits = self.ideals[i].bits().clone();
        bits.intersect_with(self.ideals[j].bits());
        self.id_of_bits(&bits)
            .expect("lattice is closed under intersections")
    }

    /// Id of the ideal generated by the given elements.
    pub fn generated_id(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems
            .into_iter()
            .fold(0, |acc, a| self.join(acc, self.principal_id(a)))
    }

    pub fn dump(&self) -> LatticeDump {
        LatticeDump {
            ring: self.ring.name().to_string(),
            order: self.ring.order(),
            ideals: self.ideals.iter().map(|i| i.to_index_list()).collect(),
            maximal: self.maximal(),
            atoms: self.atoms(),
        }
    }
}

/// JSON form: every ideal as an array of element indices.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeDump {
    pub ring: String,
    pub order: usize,
    pub ideals: Vec<Vec<usize>>,
    pub maximal: Vec<usize>,
    pub atoms: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{ideal_generated_by, is_ideal};
    use crate::ring::FiniteModule;

    /// Oracle: every subset closed under the ring operations, by brute
    /// force over all 2^n subsets (n ≤ 12).
    fn brute_force_ideal_count(r: &FiniteRing) -> usize {
        let n = r.order();
        assert!(n <= 12);
        (0u32..1 << n)
            .filter(|mask| {
                let mut bits = FixedBitSet::with_capacity(n);
                for i in 0..n {
                    if mask >> i & 1 == 1 {
                        bits.insert(i);
                    }
                }
                is_ideal(r, &bits)
            })
            .count()
    }

    fn f2_f2sq() -> FiniteRing {
        let k = FiniteRing::zmod(2).unwrap();
        let e = FiniteModule::free(&k, 2).unwrap();
        FiniteRing::trivial_extension(&k, &e).unwrap().0
    }

    #[test]
    fn small_lattices() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let l = enumerate_ideals(&z4, DEFAULT_LATTICE_BOUND).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.get(1).to_index_list(), vec![0, 2]);
        assert_eq!(l.atoms(), vec![1]);
        assert_eq!(l.maximal(), vec![1]);

        let z6 = FiniteRing::zmod(6).unwrap();
        let l = enumerate_ideals(&z6, DEFAULT_LATTICE_BOUND).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.maximal().len(), 2);

        let s = f2_f2sq();
        let l = enumerate_ideals(&s, DEFAULT_LATTICE_BOUND).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l.atoms().len(), 3);
        assert_eq!(l.get(4).order(), 4);
        assert_eq!(brute_force_ideal_count(&s), 6);
    }

    #[test]
    fn counts_match_subset_enumeration() {
        let a = FiniteRing::zmod(4).unwrap();
        let e = FiniteModule::quotient(&a, &[2]).unwrap();
        let z4z2 = FiniteRing::trivial_extension(&a, &e).unwrap().0;
        let rings = [
            FiniteRing::zmod(8).unwrap(),
            FiniteRing::zmod(12).unwrap(),
            FiniteRing::gf(2, 3, &[1, 1, 0, 1]).unwrap(),
            z4z2,
            f2_f2sq(),
        ];
        for r in &rings {
            let l = enumerate_ideals(r, DEFAULT_LATTICE_BOUND).unwrap();
            assert_eq!(l.len(), brute_force_ideal_count(r), "{r:?}");
        }
    }

    #[test]
    fn fields_have_no_proper_atoms() {
        let f = FiniteRing::gf(2, 2, &[1, 1, 1]).unwrap();
        let l = enumerate_ideals(&f, DEFAULT_LATTICE_BOUND).unwrap();
        assert!(l.atoms().is_empty());
        assert!(l.is_field_like());
    }

    #[test]
    fn tables_agree_with_ideal_arithmetic() {
        let r = FiniteRing::zmod(24).unwrap();
        let l = enumerate_ideals(&r, DEFAULT_LATTICE_BOUND).unwrap();
        for i in 0..l.len() {
            for j in 0..l.len() {
                let (a, b) = (l.get(i), l.get(j));
                assert_eq!(l.get(l.join(i, j)), &a.sum(b).unwrap());
                assert_eq!(l.get(l.product(i, j)), &a.product(b).unwrap());
                assert_eq!(l.get(l.meet(i, j)), &a.intersection(b).unwrap());
            }
        }
        assert_eq!(
            l.generated_id([8, 12]),
            l.id_of(&ideal_generated_by(&r, &[4])).unwrap()
        );
    }

    #[test]
    fn bound_enforced() {
        let r = FiniteRing::zmod(100).unwrap();
        assert!(matches!(
            enumerate_ideals(&r, 50),
            Err(Error::BoundExceeded {
                order: 100,
                bound: 50
            })
        ));
    }
}
