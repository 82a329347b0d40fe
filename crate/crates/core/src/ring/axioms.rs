//! Exhaustive axiom checks. Cubic in the order; intended for small objects.

use super::{FiniteModule, FiniteRing};
use crate::error::{Error, Result};

fn violation(what: &str, law: &str, detail: String) -> Error {
    Error::Consistency(format!("{what}: {law} fails at {detail}"))
}

/// Commutative ring with identity: both operations associative and
/// commutative, distributivity, identities and additive inverses.
pub fn verify_ring_axioms(r: &FiniteRing) -> Result<()> {
    let name = r.name();
    let (zero, one) = (r.zero(), r.one());
    if r.order() >= 2 && zero == one {
        return Err(violation(name, "1 != 0", String::new()));
    }
    for a in r.elements() {
        if r.add(a, zero) != a {
            return Err(violation(name, "a + 0 = a", r.format(a)));
        }
        if r.mul(a, one) != a {
            return Err(violation(name, "a * 1 = a", r.format(a)));
        }
        if r.add(a, r.neg(a)) != zero {
            return Err(violation(name, "a + (-a) = 0", r.format(a)));
        }
        for b in r.elements() {
            if r.add(a, b) != r.add(b, a) {
                return Err(violation(name, "a + b = b + a", format!("{a},{b}")));
            }
            if r.mul(a, b) != r.mul(b, a) {
                return Err(violation(name, "ab = ba", format!("{a},{b}")));
            }
            let (ab_sum, ab_prod) = (r.add(a, b), r.mul(a, b));
            for c in r.elements() {
                if r.add(ab_sum, c) != r.add(a, r.add(b, c)) {
                    return Err(violation(name, "(a+b)+c = a+(b+c)", format!("{a},{b},{c}")));
                }
                if r.mul(ab_prod, c) != r.mul(a, r.mul(b, c)) {
                    return Err(violation(name, "(ab)c = a(bc)", format!("{a},{b},{c}")));
                }
                if r.mul(a, r.add(b, c)) != r.add(ab_prod, r.mul(a, c)) {
                    return Err(violation(name, "a(b+c) = ab+ac", format!("{a},{b},{c}")));
                }
            }
        }
    }
    Ok(())
}

/// Abelian group plus unital, bilinear, associative action.
pub fn verify_module_axioms(m: &FiniteModule) -> Result<()> {
    let name = m.name();
    let base = m.base();
    let zero = m.zero();
    for e in m.elements() {
        if m.add(e, zero) != e || m.add(e, m.neg(e)) != zero {
            return Err(violation(name, "additive identity/inverse", e.to_string()));
        }
        if m.act(base.one(), e) != e {
            return Err(violation(name, "1·e = e", e.to_string()));
        }
        for f in m.elements() {
            if m.add(e, f) != m.add(f, e) {
                return Err(violation(name, "e + f = f + e", format!("{e},{f}")));
            }
            for g in m.elements() {
                if m.add(m.add(e, f), g) != m.add(e, m.add(f, g)) {
                    return Err(violation(name, "(e+f)+g = e+(f+g)", format!("{e},{f},{g}")));
                }
            }
            for a in base.elements() {
                if m.act(a, m.add(e, f)) != m.add(m.act(a, e), m.act(a, f)) {
                    return Err(violation(name, "a(e+f) = ae+af", format!("{a},{e},{f}")));
                }
            }
        }
        for a in base.elements() {
            for b in base.elements() {
                if m.act(base.add(a, b), e) != m.add(m.act(a, e), m.act(b, e)) {
                    return Err(violation(name, "(a+b)e = ae+be", format!("{a},{b},{e}")));
                }
                if m.act(base.mul(a, b), e) != m.act(a, m.act(b, e)) {
                    return Err(violation(name, "(ab)e = a(be)", format!("{a},{b},{e}")));
                }
            }
        }
    }
    Ok(())
}
