use std::fmt;

use fixedbitset::FixedBitSet;

use super::FiniteRing;
use crate::error::{Error, Result};
use crate::ideal::Ideal;

/// A map of element indices claimed to be a ring homomorphism.
#[derive(Clone)]
pub struct RingHom {
    source: FiniteRing,
    target: FiniteRing,
    map: Vec<u32>,
}

impl RingHom {
    pub fn new(source: &FiniteRing, target: &FiniteRing, map: Vec<usize>) -> RingHom {
        RingHom::from_raw(source, target, map.into_iter().map(|x| x as u32).collect())
    }

    pub(crate) fn from_raw(source: &FiniteRing, target: &FiniteRing, map: Vec<u32>) -> RingHom {
        assert_eq!(map.len(), source.order(), "hom map must be total");
        RingHom {
            source: source.clone(),
            target: target.clone(),
            map,
        }
    }

    pub fn identity(ring: &FiniteRing) -> RingHom {
        RingHom::from_raw(ring, ring, (0..ring.order() as u32).collect())
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a] as usize
    }

    pub fn compose(&self, then: &RingHom) -> RingHom {
        RingHom::from_raw(
            &self.source,
            &then.target,
            self.map.iter().map(|&x| then.map[x as usize]).collect(),
        )
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.target.order());
        for &x in &self.map {
            hit.insert(x as usize);
        }
        hit.count_ones(..) == self.target.order()
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.target.order());
        for &x in &self.map {
            if hit.put(x as usize) {
                return false;
            }
        }
        true
    }

    pub fn kernel(&self) -> Ideal {
        let mut bits = FixedBitSet::with_capacity(self.source.order());
        for (a, &x) in self.map.iter().enumerate() {
            if x as usize == self.target.zero() {
                bits.insert(a);
            }
        }
        Ideal::from_members_unchecked(&self.source, bits)
    }

    /// Image of a set of source elements.
    pub fn image_of(&self, members: impl Iterator<Item = usize>) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.target.order());
        for a in members {
            bits.insert(self.apply(a));
        }
        bits
    }

    /// Exhaustively checks that the map preserves 0, 1, + and ·.
    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.zero()) != t.zero() || self.apply(s.one()) != t.one() {
            return Err(Error::Consistency(format!(
                "map {} -> {} does not preserve 0 and 1",
                s.name(),
                t.name()
            )));
        }
        for a in s.elements() {
            for b in a..s.order() {
                let (fa, fb) = (self.apply(a), self.apply(b));
                if self.apply(s.add(a, b)) != t.add(fa, fb)
                    || self.apply(s.mul(a, b)) != t.mul(fa, fb)
                {
                    return Err(Error::Consistency(format!(
                        "map {} -> {} is not a homomorphism at ({}, {})",
                        s.name(),
                        t.name(),
                        s.format(a),
                        s.format(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingHom({} -> {})",
            self.source.name(),
            self.target.name()
        )
    }
}

/// Smallest set `S` (greedy by index) such that `{1} ∪ S` generates the
/// ring under `+` and `·`.
fn ring_generators(r: &FiniteRing) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closed = closure(r, &[r.one()]);
    while closed.count_ones(..) < r.order() {
        let x = (0..r.order()).find(|&x| !closed.contains(x)).unwrap();
        gens.push(x);
        let mut seeds: Vec<usize> = closed.ones().collect();
        seeds.push(x);
        closed = closure(r, &seeds);
    }
    gens
}

fn closure(r: &FiniteRing, seeds: &[usize]) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(r.order());
    let mut list = vec![r.zero()];
    bits.insert(r.zero());
    for &s in seeds {
        if !bits.put(s) {
            list.push(s);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..=i {
            let y = list[j];
            for z in [r.add(x, y), r.mul(x, y)] {
                if !bits.put(z) {
                    list.push(z);
                }
            }
        }
        i += 1;
    }
    bits
}

/// Extends an assignment on generators to the whole ring, failing on any
/// inconsistency.
fn extend(source: &FiniteRing, target: &FiniteRing, seeds: &[(usize, usize)]) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; source.order()];
    let mut known = Vec::new();
    let assign = |map: &mut Vec<u32>, known: &mut Vec<usize>, x: usize, y: usize| -> bool {
        if map[x] == UNSET {
            map[x] = y as u32;
            known.push(x);
            true
        } else {
            map[x] as usize == y
        }
    };
    if !assign(&mut map, &mut known, source.zero(), target.zero())
        || !assign(&mut map, &mut known, source.one(), target.one())
    {
        return None;
    }
    for &(x, y) in seeds {
        if !assign(&mut map, &mut known, x, y) {
            return None;
        }
    }
    let mut i = 0;
    while i < known.len() {
        let x = known[i];
        for j in 0..=i {
            let y = known[j];
            let (fx, fy) = (map[x] as usize, map[y] as usize);
            if !assign(&mut map, &mut known, source.add(x, y), target.add(fx, fy))
                || !assign(&mut map, &mut known, source.mul(x, y), target.mul(fx, fy))
            {
                return None;
            }
        }
        i += 1;
    }
    (known.len() == source.order()).then_some(map)
}

pub(super) fn find_isomorphism(source: &FiniteRing, target: &FiniteRing) -> Option<RingHom> {
    if source.order() != target.order() {
        return None;
    }
    let gens = ring_generators(source);
    let n = target.order();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let seeds: Vec<(usize, usize)> = gens.iter().copied().zip(choice.iter().copied()).collect();
        if let Some(map) = extend(source, target, &seeds) {
            let hom = RingHom::from_raw(source, target, map);
            if hom.is_injective() && hom.verify().is_ok() {
                return Some(hom);
            }
        }
        // odometer over generator images
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < n {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
