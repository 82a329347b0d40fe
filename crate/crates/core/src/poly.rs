//! Polynomials over finite rings, content ideals and Gaussian certification.
//!
//! Enumeration order everywhere: by degree, then lexicographic on the
//! coefficient indices with the highest coefficient most significant.

use std::fmt;

use crate::classify::{structural_gaussian, GaussianEvidence};
use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, ideal_generated_by, localizations, Ideal, IdealLattice};
use crate::ring::FiniteRing;
use crate::spec::PolySpec;

pub const DEFAULT_DEGREE_BOUND: u32 = 3;
pub const DEFAULT_SEARCH_CAP: u64 = 2_000_000;

/// Bounds shared by every search over polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub degree_bound: u32,
    /// Cap on candidate polynomials (single search) or pairs (ring search).
    pub search_cap: u64,
    pub lattice_bound: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            degree_bound: DEFAULT_DEGREE_BOUND,
            search_cap: DEFAULT_SEARCH_CAP,
            lattice_bound: crate::ideal::DEFAULT_LATTICE_BOUND,
        }
    }
}

/// Coefficients lowest degree first, trailing zeros trimmed.
#[derive(Clone)]
pub struct RingPoly {
    ring: FiniteRing,
    coeffs: Vec<usize>,
}

fn trim(coeffs: &mut Vec<usize>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

/// Convolution into `out` (cleared first, not trimmed).
pub(crate) fn mul_into(ring: &FiniteRing, f: &[usize], g: &[usize], out: &mut Vec<usize>) {
    out.clear();
    if f.is_empty() || g.is_empty() {
        return;
    }
    out.resize(f.len() + g.len() - 1, 0);
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = ring.add(out[i + j], ring.mul(a, b));
        }
    }
}

impl RingPoly {
    pub fn new(ring: &FiniteRing, mut coeffs: Vec<usize>) -> RingPoly {
        assert!(
            coeffs.iter().all(|&c| c < ring.order()),
            "coefficient out of range"
        );
        trim(&mut coeffs);
        RingPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &FiniteRing) -> RingPoly {
        RingPoly::new(ring, Vec::new())
    }

    pub fn from_spec(ring: &FiniteRing, spec: &PolySpec) -> Result<RingPoly> {
        let coeffs = spec
            .coeffs
            .iter()
            .map(|c| ring.parse_literal(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingPoly::new(ring, coeffs))
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &RingPoly) -> Result<RingPoly> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = Vec::new();
        mul_into(&self.ring, &self.coeffs, &other.coeffs, &mut out);
        Ok(RingPoly::new(&self.ring, out))
    }

    pub fn scale(&self, c: usize) -> RingPoly {
        RingPoly::new(
            &self.ring,
            self.coeffs.iter().map(|&a| self.ring.mul(c, a)).collect(),
        )
    }

    /// Image under a ring map given as an element table.
    pub fn map(&self, target: &FiniteRing, f: impl Fn(usize) -> usize) -> RingPoly {
        RingPoly::new(target, self.coeffs.iter().map(|&a| f(a)).collect())
    }

    pub fn content(&self) -> Ideal {
        ideal_generated_by(&self.ring, &self.coeffs)
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|&c| self.ring.format(c)).collect()
    }
}

pub fn poly_mul(f: &RingPoly, g: &RingPoly) -> Result<RingPoly> {
    f.mul(g)
}

pub fn content(f: &RingPoly) -> Ideal {
    f.content()
}

impl PartialEq for RingPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for RingPoly {}

impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let lit = self.ring.format(c);
            match i {
                0 => write!(f, "{lit}")?,
                1 => write!(f, "{lit}x")?,
                _ => write!(f, "{lit}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingPoly[{}]({self})", self.ring.name())
    }
}

/// Odometer over coefficient vectors of one exact degree drawn from a
/// sorted alphabet. The constant term varies fastest.
pub(crate) struct Odometer<'a> {
    alphabet: &'a [usize],
    pos: Vec<usize>,
    low: Vec<usize>,
    coeffs: Vec<usize>,
    started: bool,
}

impl<'a> Odometer<'a> {
    /// `alphabet` must be sorted; index 0 of the ring, if present, first.
    /// Leading coefficient is nonzero; the constant term too when
    /// `nonzero_constant`.
    pub(crate) fn new(
        alphabet: &'a [usize],
        degree: usize,
        nonzero_constant: bool,
    ) -> Option<Self> {
        let skip_zero = usize::from(alphabet.first() == Some(&0));
        let mut low = vec![0; degree + 1];
        low[degree] = skip_zero;
        if nonzero_constant {
            low[0] = skip_zero;
        }
        if low.iter().any(|&l| l >= alphabet.len()) {
            return None;
        }
        let coeffs = low.iter().map(|&l| alphabet[l]).collect();
        Some(Odometer {
            alphabet,
            pos: low.clone(),
            low,
            coeffs,
            started: false,
        })
    }

    pub(crate) fn count(alphabet: &[usize], degree: usize, nonzero_constant: bool) -> u128 {
        let nonzero = alphabet.iter().filter(|&&a| a != 0).count() as u128;
        let all = alphabet.len() as u128;
        if degree == 0 {
            return nonzero;
        }
        let inner = all.pow(degree as u32 - 1);
        let constant = if nonzero_constant { nonzero } else { all };
        nonzero * inner * constant
    }

    pub(crate) fn advance(&mut self) -> Option<&[usize]> {
        if !self.started {
            self.started = true;
            return Some(&self.coeffs);
        }
        for i in 0..self.pos.len() {
            self.pos[i] += 1;
            if self.pos[i] < self.alphabet.len() {
                self.coeffs[i] = self.alphabet[self.pos[i]];
                return Some(&self.coeffs);
            }
            self.pos[i] = self.low[i];
            self.coeffs[i] = self.alphabet[self.low[i]];
        }
        None
    }
}

fn lattice_of(ring: &FiniteRing, bound: usize) -> Result<std::sync::Arc<IdealLattice>> {
    enumerate_ideals(ring, bound)
}

/// Content comparison through the lattice tables.
struct ContentOracle<'a> {
    ring: &'a FiniteRing,
    lattice: &'a IdealLattice,
    buf: Vec<usize>,
}

impl<'a> ContentOracle<'a> {
    fn new(ring: &'a FiniteRing, lattice: &'a IdealLattice) -> Self {
        ContentOracle {
            ring,
            lattice,
            buf: Vec::new(),
        }
    }

    fn content_id(&self, f: &[usize]) -> usize {
        self.lattice.generated_id(f.iter().copied())
    }

    /// `c(fg) != c(f)c(g)`, given `c(f)`'s id.
    fn violates(&mut self, f: &[usize], cf: usize, g: &[usize]) -> bool {
        mul_into(self.ring, f, g, &mut self.buf);
        let cfg = self.lattice.generated_id(self.buf.iter().copied());
        let cg = self.content_id(g);
        cfg != self.lattice.product(cf, cg)
    }
}

/// First `g` of degree `≤ degree_bound` in enumeration order with
/// `c(fg) != c(f)c(g)`. Errors when `|R|^(D+1)` exceeds `cap`.
///
/// Constants, unit-content `g` and `g` with zero constant term are skipped
/// (content is multiplicative against each of them); `exhaustive` disables
/// that pruning.
pub fn gaussian_witness_search(
    f: &RingPoly,
    degree_bound: u32,
    cap: u64,
    exhaustive: bool,
) -> Result<Option<RingPoly>> {
    let ring = f.ring();
    let candidates = (ring.order() as u128).saturating_pow(degree_bound + 1);
    if candidates > cap as u128 {
        return Err(Error::SearchCapExceeded { candidates, cap });
    }
    let lattice = lattice_of(ring, crate::ideal::DEFAULT_LATTICE_BOUND.max(ring.order()))?;
    let mut oracle = ContentOracle::new(ring, &lattice);
    let cf = oracle.content_id(f.coeffs());
    let unit = lattice.unit_id();
    let alphabet: Vec<usize> = ring.elements().collect();
    let first_degree = if exhaustive { 0 } else { 1 };
    if exhaustive && oracle.violates(f.coeffs(), cf, &[]) {
        return Ok(Some(RingPoly::zero(ring)));
    }
    for d in first_degree..=degree_bound as usize {
        let Some(mut odo) = Odometer::new(&alphabet, d, !exhaustive) else {
            continue;
        };
        while let Some(g) = odo.advance() {
            if !exhaustive && oracle.content_id(g) == unit {
                continue;
            }
            if oracle.violates(f.coeffs(), cf, g) {
                return Ok(Some(RingPoly::new(ring, g.to_vec())));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussianReason {
    /// `f` is constant: `c(ag) = (a)c(g)`.
    Constant,
    UnitContent,
    LocalSquareZeroMaximal,
    RingCertifiedGaussian,
    /// Every localization sends `f` to a polynomial covered by one of the
    /// other reasons.
    LocallyCertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaussianVerdict {
    CertifiedGaussian(GaussianReason),
    Refuted(RingPoly),
    BoundedGaussian(u32),
}

impl GaussianVerdict {
    pub fn is_exact(&self) -> bool {
        !matches!(self, GaussianVerdict::BoundedGaussian(_))
    }
}

/// Local with maximal ideal `N` and `N² = 0`.
pub fn square_zero_maximal(ring: &FiniteRing) -> bool {
    match ring.is_local() {
        Some(n) => n.product(&n).expect("same ring").is_zero(),
        None => false,
    }
}

/// Evidence that `f` is Gaussian from rules that need no search, tried in
/// a fixed order.
pub fn gaussian_evidence(f: &RingPoly, cfg: &SearchConfig) -> Option<GaussianEvidence> {
    evidence(f, cfg, true)
}

fn evidence(f: &RingPoly, cfg: &SearchConfig, allow_local: bool) -> Option<GaussianEvidence> {
    let ring = f.ring();
    if f.coeffs().len() <= 1 {
        return Some(GaussianEvidence::Constant);
    }
    if f.content().is_unit() {
        return Some(GaussianEvidence::UnitContent);
    }
    if square_zero_maximal(ring) {
        return Some(GaussianEvidence::LocalSquareZeroMaximal);
    }
    if let Some(cert) = structural_gaussian(ring, cfg.lattice_bound) {
        return Some(GaussianEvidence::RingCertifiedGaussian {
            ring: Box::new(cert),
        });
    }
    if allow_local && ring.is_local().is_none() {
        let factors = localizations(ring)
            .iter()
            .map(|loc| {
                let image = f.map(&loc.ring, |a| loc.projection.apply(a));
                evidence(&image, cfg, false)
            })
            .collect::<Option<Vec<_>>>()?;
        return Some(GaussianEvidence::LocallyCertified { factors });
    }
    None
}

/// Largest `d ≤ bound` with `|R|^(d+1) ≤ cap`.
pub fn affordable_degree(order: usize, bound: u32, cap: u64) -> Option<u32> {
    (0..=bound)
        .rev()
        .find(|&d| (order as u128).saturating_pow(d + 1) <= cap as u128)
}

pub fn certify_gaussian(f: &RingPoly, cfg: &SearchConfig) -> Result<GaussianVerdict> {
    if let Some(ev) = gaussian_evidence(f, cfg) {
        audit_certificate(f);
        return Ok(GaussianVerdict::CertifiedGaussian(ev.reason()));
    }
    let Some(d) = affordable_degree(f.ring().order(), cfg.degree_bound, cfg.search_cap) else {
        return Ok(GaussianVerdict::BoundedGaussian(0));
    };
    match gaussian_witness_search(f, d, cfg.search_cap, false)? {
        Some(g) => Ok(GaussianVerdict::Refuted(g)),
        None => Ok(GaussianVerdict::BoundedGaussian(d)),
    }
}

/// Test builds re-run the exhaustive search behind every certificate on
/// small rings.
fn audit_certificate(f: &RingPoly) {
    if cfg!(debug_assertions) && f.ring().order() <= 16 {
        let refuted = gaussian_witness_search(f, 2, u64::MAX, false).expect("search within bounds");
        assert!(
            refuted.is_none(),
            "certified polynomial {f} refuted by {}",
            refuted.unwrap()
        );
    }
}

/// `c(f)^m c(fg) = c(f)^(m+1) c(g)` with `m = deg g`.
pub fn dedekind_mertens_check(f: &RingPoly, g: &RingPoly) -> Result<bool> {
    let fg = f.mul(g)?;
    let m = g.degree().unwrap_or(0);
    let cf = f.content();
    let lhs = cf.power(m).product(&fg.content())?;
    let rhs = cf.power(m + 1).product(&g.content())?;
    Ok(lhs == rhs)
}

/// Outcome of a search for a pair `(f, g)` with `c(fg) != c(f)c(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSearch {
    Found(RingPoly, RingPoly),
    /// Every pair up to `degree` tested without a violation.
    Exhausted {
        degree: u32,
        pairs: u64,
    },
}

/// Searches pairs over a local ring. Only polynomials with coefficients in
/// the maximal ideal and nonzero constant term are tried; stops early at
/// the last degree whose pairs fit under `cap`.
pub fn gaussian_pair_search(ring: &FiniteRing, cfg: &SearchConfig) -> Result<PairSearch> {
    let m = ring.is_local().ok_or(Error::NotLocal)?;
    let lattice = lattice_of(ring, cfg.lattice_bound)?;
    let mut oracle = ContentOracle::new(ring, &lattice);
    let alphabet: Vec<usize> = m.members().collect();

    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut pairs: u64 = 0;
    let mut reached = 0;
    for d in 1..=cfg.degree_bound as usize {
        let level = Odometer::count(&alphabet, d, true);
        let earlier = seen.len() as u128;
        let level_pairs = level * (level + 1) / 2 + level * earlier;
        if pairs as u128 + level_pairs > cfg.search_cap as u128 {
            break;
        }
        let start = seen.len();
        if let Some(mut odo) = Odometer::new(&alphabet, d, true) {
            while let Some(f) = odo.advance() {
                seen.push(f.to_vec());
            }
        }
        for i in start..seen.len() {
            let f = &seen[i];
            let cf = oracle.content_id(f);
            for g in seen[..=i].iter() {
                pairs += 1;
                if oracle.violates(f, cf, g) {
                    return Ok(PairSearch::Found(
                        RingPoly::new(ring, g.clone()),
                        RingPoly::new(ring, f.clone()),
                    ));
                }
            }
        }
        reached = d as u32;
    }
    Ok(PairSearch::Exhausted {
        degree: reached,
        pairs,
    })
}

/// First polynomial of degree `≤ degree_bound`, coefficients from the
/// ideal, whose content is exactly the ideal. Falls back to the generators
/// laid out as coefficients.
pub fn polynomial_with_content(ideal: &Ideal, degree_bound: u32, cap: u64) -> RingPoly {
    let ring = ideal.ring();
    let alphabet: Vec<usize> = ideal.members().collect();
    let mut spent: u128 = 0;
    for d in 0..=degree_bound as usize {
        let level = Odometer::count(&alphabet, d, false);
        spent += level;
        if spent > cap as u128 {
            break;
        }
        if let Some(mut odo) = Odometer::new(&alphabet, d, false) {
            while let Some(f) = odo.advance() {
                if ideal_generated_by(ring, f).bits() == ideal.bits() {
                    return RingPoly::new(ring, f.to_vec());
                }
            }
        }
    }
    RingPoly::new(ring, ideal.gens().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteModule;
    use crate::spec::Literal;

    fn z4_z2() -> FiniteRing {
        let a = FiniteRing::zmod(4).unwrap();
        FiniteRing::trivial_extension(&a, &FiniteModule::quotient(&a, &[2]).unwrap())
            .unwrap()
            .0
    }

    fn f2_f2sq() -> FiniteRing {
        let k = FiniteRing::zmod(2).unwrap();
        FiniteRing::trivial_extension(&k, &FiniteModule::free(&k, 2).unwrap())
            .unwrap()
            .0
    }

    fn pair(r: &FiniteRing, a: i64, e: i64) -> usize {
        r.parse_literal(&Literal::Tuple(vec![Literal::Int(a), Literal::Int(e)]))
            .unwrap()
    }

    #[test]
    fn arithmetic_and_content() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let f = RingPoly::new(&z4, vec![2, 2]);
        assert!(f.mul(&f).unwrap().is_zero());
        assert!(RingPoly::zero(&z4).content().is_zero());
        assert_eq!(RingPoly::new(&z4, vec![1, 0, 0]).degree(), Some(0));

        let r = z4_z2();
        let f = RingPoly::new(&r, vec![pair(&r, 2, 0), pair(&r, 0, 1)]);
        assert_eq!(f.content().order(), 4);
        assert_eq!(f.to_string(), "(2,0) + (0,1)x");
    }

    #[test]
    fn odometer_order() {
        let alphabet = [0, 1, 2];
        let mut odo = Odometer::new(&alphabet, 1, false).unwrap();
        let mut seen = Vec::new();
        while let Some(c) = odo.advance() {
            seen.push(c.to_vec());
        }
        assert_eq!(seen.len() as u128, Odometer::count(&alphabet, 1, false));
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[1], vec![1, 1]);
        assert_eq!(seen[3], vec![0, 2]);
        assert_eq!(Odometer::count(&alphabet, 2, true), 2 * 3 * 2);
    }

    #[test]
    fn searches_over_gaussian_rings_find_nothing() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let f = RingPoly::new(&z4, vec![2, 2]);
        assert_eq!(
            gaussian_witness_search(&f, 2, u64::MAX, false).unwrap(),
            None
        );
        assert_eq!(
            gaussian_witness_search(&f, 2, u64::MAX, true).unwrap(),
            None
        );

        let s = f2_f2sq();
        // (0,e1) = index 2, (0,e2) = index 1
        let f = RingPoly::new(&s, vec![2, 1]);
        assert_eq!(
            gaussian_witness_search(&f, 2, u64::MAX, true).unwrap(),
            None
        );
    }

    #[test]
    fn cap_is_enforced() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let f = RingPoly::new(&z4, vec![2, 2]);
        assert!(matches!(
            gaussian_witness_search(&f, 3, 100, false),
            Err(Error::SearchCapExceeded {
                candidates: 256,
                cap: 100
            })
        ));
    }

    #[test]
    fn certificates() {
        let cfg = SearchConfig::default();
        let r = z4_z2();
        let f = RingPoly::new(&r, vec![pair(&r, 2, 0), pair(&r, 0, 1)]);
        assert_eq!(
            certify_gaussian(&f, &cfg).unwrap(),
            GaussianVerdict::CertifiedGaussian(GaussianReason::LocalSquareZeroMaximal)
        );
        let one = RingPoly::new(&r, vec![r.one()]);
        assert_eq!(
            certify_gaussian(&one, &cfg).unwrap(),
            GaussianVerdict::CertifiedGaussian(GaussianReason::Constant)
        );
        let g = RingPoly::new(&r, vec![r.one(), pair(&r, 2, 0)]);
        assert_eq!(
            certify_gaussian(&g, &cfg).unwrap(),
            GaussianVerdict::CertifiedGaussian(GaussianReason::UnitContent)
        );
    }

    #[test]
    fn refutation_over_non_gaussian_ring() {
        // Z/4 ∝ Z/4 = Z/4[ε]: (2 + εx)(2 - εx) = 4 - ε²x² = 0 but
        // c(f)c(g) = (2, ε)² = (2ε) != 0
        let a = FiniteRing::zmod(4).unwrap();
        let r = FiniteRing::trivial_extension(&a, &FiniteModule::free(&a, 1).unwrap())
            .unwrap()
            .0;
        let f = RingPoly::new(&r, vec![pair(&r, 2, 0), pair(&r, 0, 1)]);
        match certify_gaussian(&f, &SearchConfig::default()).unwrap() {
            GaussianVerdict::Refuted(g) => {
                let fg = f.mul(&g).unwrap();
                assert_ne!(fg.content(), f.content().product(&g.content()).unwrap());
            }
            other => panic!("expected refutation, got {other:?}"),
        }
        match gaussian_pair_search(&r, &SearchConfig::default()).unwrap() {
            PairSearch::Found(f, g) => {
                let fg = f.mul(&g).unwrap();
                assert_ne!(fg.content(), f.content().product(&g.content()).unwrap());
                assert_eq!((f.degree(), g.degree()), (Some(1), Some(1)));
            }
            other => panic!("expected a pair, got {other:?}"),
        }
    }

    #[test]
    fn dedekind_mertens_examples() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let f = RingPoly::new(&z4, vec![2, 2]);
        assert!(dedekind_mertens_check(&f, &f).unwrap());
        assert!(dedekind_mertens_check(&f, &RingPoly::new(&z4, vec![3])).unwrap());
    }

    #[test]
    fn content_witnesses_follow_enumeration_order() {
        let r = z4_z2();
        let m = r.is_local().unwrap();
        let f = polynomial_with_content(&m, 3, DEFAULT_SEARCH_CAP);
        assert_eq!(f.coeffs(), &[pair(&r, 2, 0), pair(&r, 0, 1)]);

        let s = f2_f2sq();
        let n = s.is_local().unwrap();
        let f = polynomial_with_content(&n, 3, DEFAULT_SEARCH_CAP);
        assert_eq!(f.coeffs(), &[2, 1]);
    }
}
