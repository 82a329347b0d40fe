//! Re-verifies certificates with deliberately naive primitives that share
//! no code with the deciders: fixpoint closures, brute-force kernels, a
//! field-quotient maximality test and Jensen's elementwise criterion.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{
    Certificate, ClassificationReport, ClassifyConfig, Condition, GaussianEvidence, Verdict,
};
use crate::error::{Error, Result};
use crate::ideal::{localizations, Localization};
use crate::ring::{Construction, FiniteRing};

/// Rings above this order are not replayed by default.
pub const REPLAY_LIMIT: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReplayStatus {
    Pending,
    Verified { certificates: usize },
    Skipped { order: usize, limit: usize },
}

impl ReplayStatus {
    pub fn describe(&self) -> String {
        match self {
            ReplayStatus::Pending => "pending".into(),
            ReplayStatus::Verified { certificates } => {
                format!("{certificates} certificates verified")
            }
            ReplayStatus::Skipped { order, limit } => format!("skipped (order {order} > {limit})"),
        }
    }
}

struct Naive<'a> {
    r: &'a FiniteRing,
}

fn bits_of(n: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(n);
    for m in members {
        if m >= n {
            return FixedBitSet::with_capacity(n);
        }
        bits.insert(m);
    }
    bits
}

impl<'a> Naive<'a> {
    fn n(&self) -> usize {
        self.r.order()
    }

    /// Smallest set containing 0 and the seeds, closed under `+` and
    /// multiplication by ring elements.
    fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let r = self.r;
        let mut bits = bits_of(self.n(), seeds);
        bits.insert(0);
        loop {
            let members: Vec<usize> = bits.ones().collect();
            let before = members.len();
            for &a in &members {
                for &b in &members {
                    bits.insert(r.add(a, b));
                }
                for x in r.elements() {
                    bits.insert(r.mul(x, a));
                }
            }
            if bits.count_ones(..) == before {
                return bits;
            }
        }
    }

    fn is_ideal(&self, bits: &FixedBitSet) -> bool {
        bits.contains(0) && &self.closure(bits.ones()) == bits
    }

    fn is_unit(&self, a: usize) -> bool {
        self.r.elements().any(|x| self.r.mul(a, x) == self.r.one())
    }

    fn is_regular(&self, a: usize) -> bool {
        (1..self.n()).all(|x| self.r.mul(a, x) != 0)
    }

    /// Proper ideal with a field as quotient: every `a ∉ m` has `r` with
    /// `ra - 1 ∈ m`.
    fn is_maximal(&self, m: &FixedBitSet) -> bool {
        let r = self.r;
        if !self.is_ideal(m) || m.contains(r.one()) {
            return false;
        }
        r.elements().filter(|&a| !m.contains(a)).all(|a| {
            r.elements()
                .any(|x| m.contains(r.sub(r.mul(x, a), r.one())))
        })
    }

    /// `{x : sx = 0 for some s ∉ m}`.
    fn kernel(&self, m: &FixedBitSet) -> FixedBitSet {
        let r = self.r;
        bits_of(
            self.n(),
            r.elements()
                .filter(|&x| r.elements().any(|s| !m.contains(s) && r.mul(s, x) == 0)),
        )
    }

    /// The image of `ideal` in `R/K` is generated by the image of one of
    /// its members.
    fn principal_modulo(&self, ideal: &FixedBitSet, k: &FixedBitSet) -> bool {
        let target = self.closure(ideal.ones().chain(k.ones()));
        ideal
            .ones()
            .any(|a| self.closure(std::iter::once(a).chain(k.ones())) == target)
    }

    /// For all `a, b` there are `r, s, t` with `ra = sb` and `(1-r)b = ta`.
    fn jensen_arithmetical(&self) -> bool {
        let r = self.r;
        let principal: Vec<FixedBitSet> = r
            .elements()
            .map(|a| bits_of(self.n(), r.elements().map(|x| r.mul(x, a))))
            .collect();
        r.elements().all(|a| {
            r.elements().all(|b| {
                r.elements().any(|x| {
                    principal[b].contains(r.mul(x, a))
                        && principal[a].contains(r.mul(r.sub(r.one(), x), b))
                })
            })
        })
    }

    /// Non-units, if they are closed under addition.
    fn local_maximal(&self) -> Option<Vec<usize>> {
        let nonunits: Vec<usize> = self.r.elements().filter(|&a| !self.is_unit(a)).collect();
        let set = bits_of(self.n(), nonunits.iter().copied());
        for &a in &nonunits {
            for &b in &nonunits {
                if !set.contains(self.r.add(a, b)) {
                    return None;
                }
            }
        }
        Some(nonunits)
    }

    fn content_product(&self, f: &[usize], g: &[usize]) -> (FixedBitSet, FixedBitSet) {
        let r = self.r;
        let mut fg = vec![0usize; (f.len() + g.len()).saturating_sub(1)];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                fg[i + j] = r.add(fg[i + j], r.mul(a, b));
            }
        }
        let pairwise = f.iter().flat_map(|&a| g.iter().map(move |&b| r.mul(a, b)));
        (self.closure(fg), self.closure(pairwise.collect::<Vec<_>>()))
    }
}

fn fail(r: &FiniteRing, what: &str) -> Error {
    Error::Consistency(format!(
        "certificate replay failed for {}: {what}",
        r.name()
    ))
}

fn ensure(ok: bool, r: &FiniteRing, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(r, what))
    }
}

/// Checks the localizations independently: each projection is a
/// surjective homomorphism whose kernel matches the brute-force kernel of
/// a maximal ideal, and together they embed `R` into their product.
fn verify_decomposition(r: &FiniteRing) -> Result<&[Localization]> {
    let naive = Naive { r };
    let locs = localizations(r);
    let mut seen = HashSet::new();
    let mut total = 1usize;
    for loc in locs {
        loc.projection.verify()?;
        ensure(
            loc.projection.is_surjective(),
            r,
            "localization map not surjective",
        )?;
        ensure(
            naive.is_maximal(loc.maximal.bits()),
            r,
            "localized ideal not maximal",
        )?;
        ensure(
            seen.insert(loc.maximal.bits().clone()),
            r,
            "repeated maximal ideal",
        )?;
        ensure(
            loc.kernel().bits() == &naive.kernel(loc.maximal.bits()),
            r,
            "localization kernel differs from its definition",
        )?;
        total *= loc.ring.order();
    }
    let images: HashSet<Vec<usize>> = r
        .elements()
        .map(|x| locs.iter().map(|l| l.projection.apply(x)).collect())
        .collect();
    ensure(
        images.len() == r.order() && total == r.order(),
        r,
        "ring is not the product of its localizations",
    )?;
    Ok(locs)
}

fn replay_ring_gaussian(r: &FiniteRing, cert: &Certificate) -> Result<()> {
    let naive = Naive { r };
    match cert {
        Certificate::ViaArithmetical => ensure(naive.jensen_arithmetical(), r, "not arithmetical"),
        Certificate::ViaLocalFactors { factors } => {
            let locs = verify_decomposition(r)?;
            ensure(locs.len() == factors.len(), r, "factor count")?;
            for (loc, c) in locs.iter().zip(factors) {
                replay_ring_gaussian(&loc.ring, c)?;
            }
            Ok(())
        }
        Certificate::SquareZeroMaximal => {
            let m = naive.local_maximal().ok_or_else(|| fail(r, "not local"))?;
            ensure(
                m.iter().all(|&a| m.iter().all(|&b| r.mul(a, b) == 0)),
                r,
                "maximal ideal does not square to zero",
            )
        }
        Certificate::ViaTrivialExtension { base } => {
            let Construction::TrivExt { base: a, module: e } = r.construction() else {
                return Err(fail(r, "not a trivial extension"));
            };
            let w = e.order();
            ensure(w > 1, r, "zero module")?;
            for x in r.elements() {
                for y in r.elements() {
                    let (a1, e1, a2, e2) = (x / w, x % w, y / w, y % w);
                    let expected = a.mul(a1, a2) * w + e.add(e.act(a1, e2), e.act(a2, e1));
                    ensure(
                        r.mul(x, y) == expected,
                        r,
                        "multiplication is not the idealization law",
                    )?;
                }
            }
            let m = Naive { r: a }
                .local_maximal()
                .ok_or_else(|| fail(a, "base not local"))?;
            ensure(
                m.iter()
                    .all(|&s| e.elements().all(|v| e.act(s, v) == e.zero())),
                r,
                "maximal ideal of the base does not annihilate the module",
            )?;
            replay_ring_gaussian(a, base)
        }
        other => Err(fail(
            r,
            &format!("{} does not certify a Gaussian ring", other.label()),
        )),
    }
}

fn replay_poly_evidence(r: &FiniteRing, f: &[usize], ev: &GaussianEvidence) -> Result<()> {
    let naive = Naive { r };
    let mut f = f.to_vec();
    while f.last() == Some(&0) {
        f.pop();
    }
    match ev {
        GaussianEvidence::Constant => ensure(f.len() <= 1, r, "polynomial is not constant"),
        GaussianEvidence::UnitContent => ensure(
            naive.closure(f.iter().copied()).contains(r.one()),
            r,
            "content is not the unit ideal",
        ),
        GaussianEvidence::LocalSquareZeroMaximal => {
            replay_ring_gaussian(r, &Certificate::SquareZeroMaximal)
        }
        GaussianEvidence::RingCertifiedGaussian { ring } => replay_ring_gaussian(r, ring),
        GaussianEvidence::LocallyCertified { factors } => {
            let locs = verify_decomposition(r)?;
            ensure(locs.len() == factors.len(), r, "factor count")?;
            for (loc, ev) in locs.iter().zip(factors) {
                let image: Vec<usize> = f.iter().map(|&a| loc.projection.apply(a)).collect();
                replay_poly_evidence(&loc.ring, &image, ev)?;
            }
            Ok(())
        }
    }
}

/// Minimal nonzero ideals, all of which are principal.
fn naive_atom_count(r: &FiniteRing) -> usize {
    let naive = Naive { r };
    let mut principal: Vec<FixedBitSet> = Vec::new();
    for a in r.elements().skip(1) {
        let p = naive.closure([a]);
        if !principal.contains(&p) {
            principal.push(p);
        }
    }
    principal
        .iter()
        .filter(|p| p.count_ones(..) < r.order())
        .filter(|p| !principal.iter().any(|q| q != *p && q.is_subset(p)))
        .count()
}

fn replay_condition(r: &FiniteRing, name: &str, c: &Condition) -> Result<()> {
    let naive = Naive { r };
    let n = r.order();
    use Certificate as C;
    use Verdict as V;
    match (c.verdict, &c.certificate) {
        (V::Yes, C::NoNilpotents) => ensure(
            r.elements().skip(1).all(|a| r.mul(a, a) != 0),
            r,
            "nonzero element squares to zero",
        ),
        (V::No, C::Nilpotent { element, exponent }) => {
            ensure(*element != 0 && *element < n, r, "bad element")?;
            ensure(
                r.pow(*element, *exponent as u64) == 0,
                r,
                "element is not nilpotent",
            )
        }
        (V::Yes | V::Zero, C::VnRegular { partners }) => ensure(
            partners.len() == n && r.elements().all(|a| r.mul(r.mul(a, a), partners[a]) == a),
            r,
            "a = a^2 x fails",
        ),
        (V::No | V::Infinite, C::NotVnRegular { element }) => {
            let a = *element;
            ensure(
                a < n && r.elements().all(|x| r.mul(r.mul(a, a), x) != a),
                r,
                "element is regular",
            )
        }
        (V::Yes, C::AllIdealsLocallyPrincipal { .. }) | (V::Yes, C::ViaArithmetical)
            if name == "arithmetical" || name == "pseudo_arithmetical" =>
        {
            ensure(naive.jensen_arithmetical(), r, "Jensen criterion fails")
        }
        (V::No, C::NotLocallyPrincipal { ideal, maximal }) => {
            let (i, m) = (
                bits_of(n, ideal.iter().copied()),
                bits_of(n, maximal.iter().copied()),
            );
            ensure(naive.is_ideal(&i), r, "witness is not an ideal")?;
            ensure(naive.is_maximal(&m), r, "ideal is not maximal")?;
            ensure(
                !naive.principal_modulo(&i, &naive.kernel(&m)),
                r,
                "ideal is locally principal",
            )
        }
        (V::Yes, cert) if name == "gaussian" => replay_ring_gaussian(r, cert),
        (V::No, C::ContentNotMultiplicative { f, g }) => {
            ensure(f.iter().chain(g).all(|&a| a < n), r, "bad coefficient")?;
            let (lhs, rhs) = naive.content_product(f, g);
            ensure(
                lhs != rhs,
                r,
                "content is multiplicative on the witness pair",
            )
        }
        (V::BoundedYes, C::BoundedSearch { .. }) => Ok(()),
        (V::Yes, C::EveryElementUnitOrZeroDivisor) => ensure(
            r.elements()
                .all(|a| naive.is_unit(a) || !naive.is_regular(a) || a == 0),
            r,
            "element neither unit nor zero divisor",
        ),
        (V::No, C::NeitherUnitNorZeroDivisor { element }) => ensure(
            *element < n && !naive.is_unit(*element) && naive.is_regular(*element),
            r,
            "element is a unit or a zero divisor",
        ),
        (V::Yes, C::RegularIdealsInvertible { .. }) => ensure(
            r.elements()
                .filter(|&a| naive.is_regular(a))
                .all(|a| naive.is_unit(a)),
            r,
            "regular non-unit element",
        ),
        (V::No, C::RegularIdealNotInvertible { ideal }) => {
            let i = bits_of(n, ideal.iter().copied());
            ensure(
                naive.is_ideal(&i) && i.ones().any(|a| naive.is_regular(a)) && i.count_ones(..) < n,
                r,
                "witness is not a proper regular ideal",
            )
        }
        (
            V::No,
            C::GaussianNonLocallyPrincipal {
                f,
                evidence,
                maximal,
            },
        ) => {
            let m = bits_of(n, maximal.iter().copied());
            ensure(f.iter().all(|&a| a < n), r, "bad coefficient")?;
            ensure(naive.is_maximal(&m), r, "ideal is not maximal")?;
            let content = naive.closure(f.iter().copied());
            ensure(
                !naive.principal_modulo(&content, &naive.kernel(&m)),
                r,
                "content is locally principal",
            )?;
            replay_poly_evidence(r, f, evidence)
        }
        (V::Yes, C::ZeroIrreducibleLocally { atoms }) => {
            let locs = verify_decomposition(r)?;
            ensure(locs.len() == atoms.len(), r, "localization count")?;
            for (loc, &k) in locs.iter().zip(atoms) {
                let naive_k = naive_atom_count(&loc.ring);
                ensure(naive_k == k && k <= 1, &loc.ring, "atom count")?;
            }
            Ok(())
        }
        (
            V::No,
            C::ZeroReducible {
                maximal,
                left,
                right,
            },
        ) => {
            let m = bits_of(n, maximal.iter().copied());
            ensure(naive.is_maximal(&m), r, "ideal is not maximal")?;
            let k = naive.kernel(&m);
            let (l, rr) = (
                bits_of(n, left.iter().copied()),
                bits_of(n, right.iter().copied()),
            );
            ensure(
                naive.is_ideal(&l) && naive.is_ideal(&rr),
                r,
                "witness is not an ideal",
            )?;
            let (lk, rk) = (
                naive.closure(l.ones().chain(k.ones())),
                naive.closure(rr.ones().chain(k.ones())),
            );
            ensure(lk != k && rk != k, r, "witness vanishes locally")?;
            let mut meet = lk.clone();
            meet.intersect_with(&rk);
            ensure(meet == k, r, "witnesses meet nontrivially")
        }
        (v, cert) => Err(fail(
            r,
            &format!(
                "{name}: verdict {} cannot rest on `{}`",
                v.as_str(),
                cert.label()
            ),
        )),
    }
}

/// Replays every certificate of a report.
pub fn replay_report(
    r: &FiniteRing,
    report: &ClassificationReport,
    cfg: &ClassifyConfig,
) -> Result<ReplayStatus> {
    if r.order() > cfg.replay_limit {
        return Ok(ReplayStatus::Skipped {
            order: r.order(),
            limit: cfg.replay_limit,
        });
    }
    let mut count = 0;
    for (name, c) in report.conditions.entries() {
        replay_condition(r, name, c)?;
        count += 1;
    }
    Ok(ReplayStatus::Verified {
        certificates: count,
    })
}
