//! One decider per condition. Each returns a [`Condition`] with its
//! certificate; the boolean wrappers drop the evidence.

use fixedbitset::FixedBitSet;

use super::{Certificate, Condition, GaussianEvidence, Verdict, Witness};
use crate::error::{Error, Result};
use crate::ideal::{
    enumerate_ideals, localizations, locally_principal_failure, minimal_nonzero_ideals,
    zero_reducibility_witness, Ideal,
};
use crate::poly::{
    affordable_degree, gaussian_evidence, gaussian_pair_search, polynomial_with_content,
    square_zero_maximal, PairSearch, RingPoly, SearchConfig,
};
use crate::ring::{Construction, FiniteRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakDim {
    Zero,
    Infinite,
}

// -- reduced / von Neumann regular -------------------------------------------

/// A nonzero nilpotent with the least exponent killing it.
pub fn nilpotent_witness(r: &FiniteRing) -> Option<(usize, u32)> {
    let units = r.units();
    for a in r.elements().skip(1) {
        if units.contains(a) {
            continue;
        }
        let mut x = a;
        for k in 1..=r.order() as u32 {
            if x == 0 {
                return Some((a, k));
            }
            let next = r.mul(x, a);
            if next == x && k > 1 {
                break;
            }
            x = next;
        }
    }
    None
}

pub fn decide_reduced(r: &FiniteRing) -> Condition {
    match nilpotent_witness(r) {
        None => Condition::exact(Verdict::Yes, Certificate::NoNilpotents),
        Some((element, exponent)) => {
            Condition::exact(Verdict::No, Certificate::Nilpotent { element, exponent })
                .with_witness(Witness::element(r, element))
        }
    }
}

pub fn is_reduced(r: &FiniteRing) -> bool {
    nilpotent_witness(r).is_none()
}

/// `Ok(partners)` with `a = a²·partners[a]`, or the first `a ∉ (a²)`.
/// Non-units are checked first so that failures surface early.
fn vn_partners(r: &FiniteRing) -> std::result::Result<Vec<usize>, usize> {
    let units = r.units();
    let mut partners = vec![0usize; r.order()];
    for a in r.elements().filter(|&a| !units.contains(a)) {
        let sq = r.mul(a, a);
        match r.elements().find(|&x| r.mul(sq, x) == a) {
            Some(x) => partners[a] = x,
            None => return Err(a),
        }
    }
    for a in units.ones() {
        partners[a] = r.inverse(a).expect("unit has an inverse");
    }
    Ok(partners)
}

fn vn_condition(r: &FiniteRing, yes: Verdict, no: Verdict) -> Condition {
    match vn_partners(r) {
        Ok(partners) => Condition::exact(yes, Certificate::VnRegular { partners }),
        Err(element) => Condition::exact(no, Certificate::NotVnRegular { element })
            .with_witness(Witness::element(r, element)),
    }
}

pub fn is_vn_regular(r: &FiniteRing) -> bool {
    vn_partners(r).is_ok()
}

/// Weak dimension of a finite (Artinian) ring is 0 exactly when it is von
/// Neumann regular and infinite otherwise.
pub fn decide_weak_dim(r: &FiniteRing) -> Condition {
    vn_condition(r, Verdict::Zero, Verdict::Infinite)
}

pub fn weak_dim_class(r: &FiniteRing) -> WeakDim {
    if is_vn_regular(r) {
        WeakDim::Zero
    } else {
        WeakDim::Infinite
    }
}

/// Decided as von Neumann regularity; a positive verdict is cross-checked
/// by requiring every localization to be a field.
pub fn decide_semihereditary(r: &FiniteRing, bound: usize) -> Result<Condition> {
    let c = vn_condition(r, Verdict::Yes, Verdict::No);
    if c.verdict == Verdict::Yes {
        for loc in localizations(r) {
            let lattice = enumerate_ideals(&loc.ring, bound)?;
            if lattice.len() != 2 {
                return Err(Error::Consistency(format!(
                    "{} is von Neumann regular but its localization {} has {} ideals",
                    r.name(),
                    loc.ring.name(),
                    lattice.len()
                )));
            }
        }
    }
    Ok(c)
}

pub fn is_semihereditary(r: &FiniteRing, bound: usize) -> Result<bool> {
    Ok(decide_semihereditary(r, bound)?.verdict == Verdict::Yes)
}

// -- arithmetical -------------------------------------------------------------

/// The first ideal (lattice order) that is not locally principal, with the
/// index of the offending maximal ideal.
pub fn arithmetical_failure(r: &FiniteRing, bound: usize) -> Result<Option<(Ideal, usize)>> {
    if let Some(cached) = r.arithmetical_failure_cache().get() {
        return Ok(cached.clone());
    }
    let lattice = enumerate_ideals(r, bound)?;
    let failure = lattice
        .ideals()
        .iter()
        .find_map(|i| locally_principal_failure(i).map(|m| (i.clone(), m)));
    Ok(r.arithmetical_failure_cache()
        .get_or_init(|| failure)
        .clone())
}

pub fn decide_arithmetical(r: &FiniteRing, bound: usize) -> Result<Condition> {
    Ok(match arithmetical_failure(r, bound)? {
        None => Condition::exact(
            Verdict::Yes,
            Certificate::AllIdealsLocallyPrincipal {
                ideals: enumerate_ideals(r, bound)?.len(),
            },
        ),
        Some((ideal, m)) => Condition::exact(
            Verdict::No,
            Certificate::NotLocallyPrincipal {
                ideal: ideal.to_index_list(),
                maximal: r.maximal_ideals()[m].to_index_list(),
            },
        )
        .with_witness(Witness::ideal(&ideal)),
    })
}

pub fn is_arithmetical(r: &FiniteRing, bound: usize) -> Result<bool> {
    Ok(arithmetical_failure(r, bound)?.is_none())
}

// -- Gaussian -----------------------------------------------------------------

/// Certifies the whole ring Gaussian by rules alone: arithmetical; every
/// localization certified; local with `N² = 0`; or `A ∝ E` with `A` local
/// and certified, `E ≠ 0` and `ME = 0`. Rules whose lattice would exceed
/// `bound` are skipped.
pub fn structural_gaussian(r: &FiniteRing, bound: usize) -> Option<Certificate> {
    structural(r, bound).0
}

/// Second component: whether the answer is final (no rule was skipped).
fn structural(r: &FiniteRing, bound: usize) -> (Option<Certificate>, bool) {
    if let Some(cached) = r.structural_gaussian_cache().get() {
        return (cached.clone(), true);
    }
    let mut complete = true;
    let result = 'rules: {
        match arithmetical_failure(r, bound) {
            Ok(None) => break 'rules Some(Certificate::ViaArithmetical),
            Ok(Some(_)) => {}
            Err(_) => complete = false,
        }
        if r.is_local().is_none() {
            let mut factors = Vec::new();
            for loc in localizations(r) {
                let (c, done) = structural(&loc.ring, bound);
                complete &= done;
                match c {
                    Some(c) => factors.push(c),
                    None => break 'rules None,
                }
            }
            break 'rules Some(Certificate::ViaLocalFactors { factors });
        }
        if square_zero_maximal(r) {
            break 'rules Some(Certificate::SquareZeroMaximal);
        }
        if let Construction::TrivExt { base, module } = r.construction() {
            if let Some(m) = base.is_local() {
                if module.order() > 1 && module.annihilated_by(m.bits()) {
                    let (c, done) = structural(base, bound);
                    complete &= done;
                    if let Some(c) = c {
                        break 'rules Some(Certificate::ViaTrivialExtension { base: Box::new(c) });
                    }
                }
            }
        }
        None
    };
    if complete {
        let _ = r.structural_gaussian_cache().set(result.clone());
    }
    (result, complete)
}

fn pair_witness(f: &RingPoly, g: &RingPoly) -> Condition {
    Condition::exact(
        Verdict::No,
        Certificate::ContentNotMultiplicative {
            f: f.coeffs().to_vec(),
            g: g.coeffs().to_vec(),
        },
    )
    .with_witness(Witness::PolynomialPair {
        f: f.to_string(),
        g: g.to_string(),
    })
}

/// For `A ∝ E`, a violating pair over `A` pushed through `a ↦ (a,0)`. The
/// map is a section of the projection, so the contents still differ.
fn section_pair(r: &FiniteRing, cfg: &SearchConfig) -> Result<Option<(RingPoly, RingPoly)>> {
    let Construction::TrivExt { base, module } = r.construction() else {
        return Ok(None);
    };
    let w = module.order();
    Ok(match decide_gaussian(base, cfg)?.certificate {
        Certificate::ContentNotMultiplicative { f, g } => Some((
            RingPoly::new(r, f.iter().map(|&a| a * w).collect()),
            RingPoly::new(r, g.iter().map(|&a| a * w).collect()),
        )),
        _ => None,
    })
}

/// Rules first; otherwise, in each local factor that no rule covers, a pair
/// embedded from the base of a trivial extension or found by search. A
/// violation in a factor is lifted back through its idempotent.
pub fn decide_gaussian(r: &FiniteRing, cfg: &SearchConfig) -> Result<Condition> {
    if let Some(c) = structural_gaussian(r, cfg.lattice_bound) {
        return Ok(Condition::exact(Verdict::Yes, c));
    }
    let mut degree = cfg.degree_bound;
    let mut pairs = 0u64;
    for loc in localizations(r) {
        if structural_gaussian(&loc.ring, cfg.lattice_bound).is_some() {
            continue;
        }
        let found = match section_pair(&loc.ring, cfg)? {
            Some(pair) => PairSearch::Found(pair.0, pair.1),
            None => gaussian_pair_search(&loc.ring, cfg)?,
        };
        match found {
            PairSearch::Found(f, g) => {
                let lift = loc.lift_table();
                let (f, g) = (f.map(r, |a| lift[a]), g.map(r, |a| lift[a]));
                let product = f.mul(&g)?;
                if product.content() == f.content().product(&g.content())? {
                    return Err(Error::Consistency(format!(
                        "lifted pair ({f}, {g}) does not violate content multiplicativity in {}",
                        r.name()
                    )));
                }
                return Ok(pair_witness(&f, &g));
            }
            PairSearch::Exhausted {
                degree: d,
                pairs: p,
            } => {
                degree = degree.min(d);
                pairs += p;
            }
        }
    }
    Ok(Condition::bounded(degree, pairs))
}

// -- Prüfer / total quotient ring ---------------------------------------------

pub fn decide_total_quotient(r: &FiniteRing) -> Condition {
    let units = r.units();
    match r
        .elements()
        .find(|&a| !units.contains(a) && r.zero_divisor_partner(a).is_none() && a != 0)
    {
        None => Condition::exact(Verdict::Yes, Certificate::EveryElementUnitOrZeroDivisor),
        Some(element) => Condition::exact(
            Verdict::No,
            Certificate::NeitherUnitNorZeroDivisor { element },
        )
        .with_witness(Witness::element(r, element)),
    }
}

pub fn is_total_quotient_ring(r: &FiniteRing) -> bool {
    decide_total_quotient(r).verdict == Verdict::Yes
}

/// Every regular ideal of the lattice is invertible.
pub fn decide_pruefer(r: &FiniteRing, bound: usize) -> Result<Condition> {
    let lattice = enumerate_ideals(r, bound)?;
    let mut regular = 0;
    for ideal in lattice.ideals() {
        let is_regular = ideal.is_regular();
        let invertible = ideal.is_invertible(&lattice);
        if is_regular {
            regular += 1;
            if !invertible {
                return Ok(Condition::exact(
                    Verdict::No,
                    Certificate::RegularIdealNotInvertible {
                        ideal: ideal.to_index_list(),
                    },
                )
                .with_witness(Witness::ideal(ideal)));
            }
        }
    }
    Ok(Condition::exact(
        Verdict::Yes,
        Certificate::RegularIdealsInvertible {
            regular_ideals: regular,
        },
    ))
}

pub fn is_pruefer_ring(r: &FiniteRing, bound: usize) -> Result<bool> {
    Ok(decide_pruefer(r, bound)?.verdict == Verdict::Yes)
}

// -- pseudo-arithmetical --------------------------------------------------------

/// `No` needs a polynomial certified Gaussian whose content is not locally
/// principal; for each such ideal the first polynomial in enumeration order
/// with exactly that content is tried.
pub fn decide_pseudo_arithmetical(r: &FiniteRing, cfg: &SearchConfig) -> Result<Condition> {
    if arithmetical_failure(r, cfg.lattice_bound)?.is_none() {
        return Ok(Condition::exact(Verdict::Yes, Certificate::ViaArithmetical));
    }
    let lattice = enumerate_ideals(r, cfg.lattice_bound)?;
    let mut tried = 0u64;
    for ideal in lattice.ideals() {
        let Some(m) = locally_principal_failure(ideal) else {
            continue;
        };
        tried += 1;
        let f = polynomial_with_content(ideal, cfg.degree_bound, cfg.search_cap);
        if let Some(evidence) = gaussian_evidence(&f, cfg) {
            return Ok(pseudo_witness(r, &f, evidence, m));
        }
    }
    let reached = affordable_degree(r.order(), cfg.degree_bound, cfg.search_cap).unwrap_or(0);
    Ok(Condition::bounded(reached, tried))
}

fn pseudo_witness(r: &FiniteRing, f: &RingPoly, evidence: GaussianEvidence, m: usize) -> Condition {
    let content = f.content();
    Condition::exact(
        Verdict::No,
        Certificate::GaussianNonLocallyPrincipal {
            f: f.coeffs().to_vec(),
            evidence,
            maximal: r.maximal_ideals()[m].to_index_list(),
        },
    )
    .with_witness(Witness::Polynomial {
        f: f.to_string(),
        coefficients: f.coeff_strings(),
        content_generators: content.gens().iter().map(|&g| r.format(g)).collect(),
        content_order: content.order(),
    })
}

// -- zero ideal ---------------------------------------------------------------

pub fn decide_zero_locally_irreducible(r: &FiniteRing, bound: usize) -> Result<Condition> {
    match zero_reducibility_witness(r, bound)? {
        None => {
            let atoms = localizations(r)
                .iter()
                .map(|loc| minimal_nonzero_ideals(&loc.ring, bound).map(|a| a.len()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Condition::exact(
                Verdict::Yes,
                Certificate::ZeroIrreducibleLocally { atoms },
            ))
        }
        Some(w) => Ok(Condition::exact(
            Verdict::No,
            Certificate::ZeroReducible {
                maximal: r.maximal_ideals()[w.maximal].to_index_list(),
                left: w.left.to_index_list(),
                right: w.right.to_index_list(),
            },
        )
        .with_witness(Witness::IdealPair {
            left: Witness::generators(&w.left),
            right: Witness::generators(&w.right),
        })),
    }
}

/// Members of `0 ∝ E` in a trivial extension: the indices `0..|E|`.
pub fn module_ideal(r: &FiniteRing) -> Option<Ideal> {
    let Construction::TrivExt { module, .. } = r.construction() else {
        return None;
    };
    let mut bits = FixedBitSet::with_capacity(r.order());
    bits.insert_range(..module.order());
    Some(Ideal::from_members_unchecked(r, bits))
}
