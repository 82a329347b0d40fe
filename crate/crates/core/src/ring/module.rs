//! Finite modules over a [`FiniteRing`]: free modules, quotients `A/I` and
//! direct sums.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{coset_labels, FiniteRing, MAX_ORDER, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::ideal::ideal_generated_by;
use crate::spec::{Literal, ModuleKind, ModuleSpec};

#[derive(Clone)]
pub struct FiniteModule(Arc<ModuleInner>);

struct ModuleInner {
    spec: ModuleSpec,
    base: FiniteRing,
    order: usize,
    construction: ModuleConstruction,
    tables: Option<ModuleTables>,
}

struct ModuleTables {
    add: Vec<u16>,
    neg: Vec<u16>,
    /// `act[a * order + e]`
    act: Vec<u16>,
}

enum ModuleConstruction {
    /// Tuples in `A^rank`, first coordinate most significant.
    Free { rank: usize },
    /// `A/I` on coset representatives.
    Quotient { reps: Vec<u32>, class_of: Vec<u32> },
    /// Pairs `(e, f)` indexed `e * |F| + f`.
    Sum {
        left: FiniteModule,
        right: FiniteModule,
    },
}

impl FiniteModule {
    fn from_construction(
        spec: ModuleSpec,
        base: &FiniteRing,
        construction: ModuleConstruction,
    ) -> Result<FiniteModule> {
        let order = match &construction {
            ModuleConstruction::Free { rank } => {
                let mut order = 1usize;
                for _ in 0..*rank {
                    order = order.saturating_mul(base.order());
                }
                order
            }
            ModuleConstruction::Quotient { reps, .. } => reps.len(),
            ModuleConstruction::Sum { left, right } => left.order().saturating_mul(right.order()),
        };
        if order > MAX_ORDER {
            return Err(Error::BoundExceeded {
                order,
                bound: MAX_ORDER,
            });
        }
        let mut inner = ModuleInner {
            spec,
            base: base.clone(),
            order,
            construction,
            tables: None,
        };
        if order <= TABLE_LIMIT && base.order() <= TABLE_LIMIT {
            let n = order;
            let mut add = vec![0u16; n * n];
            let mut neg = vec![0u16; n];
            let mut act = vec![0u16; base.order() * n];
            for e in 0..n {
                neg[e] = inner.lazy_neg(e) as u16;
                for f in e..n {
                    let s = inner.lazy_add(e, f) as u16;
                    add[e * n + f] = s;
                    add[f * n + e] = s;
                }
            }
            for a in base.elements() {
                for e in 0..n {
                    act[a * n + e] = inner.lazy_act(a, e) as u16;
                }
            }
            inner.tables = Some(ModuleTables { add, neg, act });
        }
        Ok(FiniteModule(Arc::new(inner)))
    }

    /// `A^rank` with componentwise action.
    pub fn free(base: &FiniteRing, rank: usize) -> Result<FiniteModule> {
        if rank == 0 {
            return Err(Error::ZeroModule);
        }
        let spec = ModuleSpec {
            name: format!("{}^{}", super::operand(base.name()), rank),
            kind: ModuleKind::Free {
                ring: Box::new(base.spec().clone()),
                rank: rank as u32,
            },
        };
        FiniteModule::with_spec(spec, base)
    }

    /// `A/I` where `I` is the ideal generated by `gens` (element indices).
    pub fn quotient(base: &FiniteRing, gens: &[usize]) -> Result<FiniteModule> {
        let spec = ModuleSpec {
            name: if gens.is_empty() {
                format!("{}/(0)", super::operand(base.name()))
            } else {
                format!(
                    "{}/({})",
                    super::operand(base.name()),
                    gens.iter()
                        .map(|&g| base.format(g))
                        .collect::<Vec<_>>()
                        .join(",")
                )
            },
            kind: ModuleKind::QuotModule {
                ring: Box::new(base.spec().clone()),
                gens: gens.iter().map(|&g| base.literal(g)).collect(),
            },
        };
        FiniteModule::with_spec(spec, base)
    }

    pub fn direct_sum(left: &FiniteModule, right: &FiniteModule) -> Result<FiniteModule> {
        let spec = ModuleSpec {
            name: format!("{} + {}", left.name(), right.name()),
            kind: ModuleKind::Sum {
                left: Box::new(left.spec().clone()),
                right: Box::new(right.spec().clone()),
            },
        };
        FiniteModule::with_spec(spec, left.base())
    }

    /// `(A/M)^n` for a local ring `A` with maximal ideal `M`: a vector
    /// space over the residue field with `A` acting through `A → A/M`.
    pub fn residue_space(base: &FiniteRing, n: usize) -> Result<FiniteModule> {
        if n == 0 {
            return Err(Error::ZeroModule);
        }
        let m = base.is_local().ok_or(Error::NotLocal)?;
        let mut module = FiniteModule::quotient(base, m.gens())?;
        let single = module.clone();
        for _ in 1..n {
            module = FiniteModule::direct_sum(&module, &single)?;
        }
        Ok(module)
    }

    /// Builds the module a spec describes over an already-built base ring.
    pub fn with_spec(spec: ModuleSpec, base: &FiniteRing) -> Result<FiniteModule> {
        if spec.base() != base.spec() {
            return Err(Error::ModuleBaseMismatch);
        }
        let construction = match &spec.kind {
            ModuleKind::Free { rank, .. } => {
                if *rank == 0 {
                    return Err(Error::ZeroModule);
                }
                ModuleConstruction::Free {
                    rank: *rank as usize,
                }
            }
            ModuleKind::QuotModule { gens, .. } => {
                let gens = gens
                    .iter()
                    .map(|g| base.parse_literal(g))
                    .collect::<Result<Vec<_>>>()?;
                let ideal = ideal_generated_by(base, &gens);
                if ideal.is_unit() {
                    return Err(Error::ZeroModule);
                }
                let members: Vec<usize> = ideal.members().collect();
                let (reps, class_of) = coset_labels(base.order(), &members, |a, b| base.add(a, b));
                ModuleConstruction::Quotient { reps, class_of }
            }
            ModuleKind::Sum { left, right } => ModuleConstruction::Sum {
                left: FiniteModule::with_spec((**left).clone(), base)?,
                right: FiniteModule::with_spec((**right).clone(), base)?,
            },
        };
        FiniteModule::from_construction(spec, base, construction)
    }

    pub fn base(&self) -> &FiniteRing {
        &self.0.base
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.0.spec
    }

    pub fn name(&self) -> &str {
        &self.0.spec.name
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, e: usize, f: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.add[e * self.0.order + f] as usize,
            None => self.0.lazy_add(e, f),
        }
    }

    #[inline]
    pub fn neg(&self, e: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.neg[e] as usize,
            None => self.0.lazy_neg(e),
        }
    }

    /// Scalar action `a · e`.
    #[inline]
    pub fn act(&self, a: usize, e: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.act[a * self.0.order + e] as usize,
            None => self.0.lazy_act(a, e),
        }
    }

    /// Whether every element of `ideal_members` acts as zero.
    pub fn annihilated_by(&self, ideal_members: &FixedBitSet) -> bool {
        ideal_members
            .ones()
            .all(|a| self.elements().all(|e| self.act(a, e) == 0))
    }

    pub fn literal(&self, e: usize) -> Literal {
        let base = &self.0.base;
        match &self.0.construction {
            ModuleConstruction::Free { rank } => {
                let digits = self.0.free_digits(e, *rank);
                if *rank == 1 {
                    base.literal(digits[0])
                } else {
                    Literal::Tuple(digits.into_iter().map(|d| base.literal(d)).collect())
                }
            }
            ModuleConstruction::Quotient { reps, .. } => base.literal(reps[e] as usize),
            ModuleConstruction::Sum { left, right } => {
                let m = right.order();
                Literal::Tuple(vec![left.literal(e / m), right.literal(e % m)])
            }
        }
    }

    pub fn parse_literal(&self, lit: &Literal) -> Result<usize> {
        let base = &self.0.base;
        match &self.0.construction {
            ModuleConstruction::Free { rank } => {
                let items: Vec<Literal> = match lit {
                    Literal::Tuple(items) if items.len() == *rank => items.clone(),
                    _ if *rank == 1 => vec![lit.clone()],
                    _ => {
                        return Err(Error::BadLiteral {
                            literal: lit.to_string(),
                            reason: format!("expected a {rank}-tuple"),
                        })
                    }
                };
                let mut idx = 0usize;
                for item in &items {
                    idx = idx * base.order() + base.parse_literal(item)?;
                }
                Ok(idx)
            }
            ModuleConstruction::Quotient { class_of, .. } => {
                Ok(class_of[base.parse_literal(lit)?] as usize)
            }
            ModuleConstruction::Sum { left, right } => match lit {
                Literal::Tuple(items) if items.len() == 2 => Ok(left.parse_literal(&items[0])?
                    * right.order()
                    + right.parse_literal(&items[1])?),
                _ => Err(Error::BadLiteral {
                    literal: lit.to_string(),
                    reason: "expected a pair".into(),
                }),
            },
        }
    }
}

impl ModuleInner {
    fn free_digits(&self, mut e: usize, rank: usize) -> Vec<usize> {
        let q = self.base.order();
        let mut digits = vec![0; rank];
        for slot in digits.iter_mut().rev() {
            *slot = e % q;
            e /= q;
        }
        digits
    }

    fn free_encode(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.base.order() + d)
    }

    fn lazy_add(&self, e: usize, f: usize) -> usize {
        match &self.construction {
            ModuleConstruction::Free { rank } => {
                let (x, y) = (self.free_digits(e, *rank), self.free_digits(f, *rank));
                let s: Vec<usize> = x
                    .iter()
                    .zip(&y)
                    .map(|(&a, &b)| self.base.add(a, b))
                    .collect();
                self.free_encode(&s)
            }
            ModuleConstruction::Quotient { reps, class_of } => {
                class_of[self.base.add(reps[e] as usize, reps[f] as usize)] as usize
            }
            ModuleConstruction::Sum { left, right } => {
                let m = right.order();
                left.add(e / m, f / m) * m + right.add(e % m, f % m)
            }
        }
    }

    fn lazy_neg(&self, e: usize) -> usize {
        match &self.construction {
            ModuleConstruction::Free { rank } => {
                let x = self.free_digits(e, *rank);
                let s: Vec<usize> = x.iter().map(|&a| self.base.neg(a)).collect();
                self.free_encode(&s)
            }
            ModuleConstruction::Quotient { reps, class_of } => {
                class_of[self.base.neg(reps[e] as usize)] as usize
            }
            ModuleConstruction::Sum { left, right } => {
                let m = right.order();
                left.neg(e / m) * m + right.neg(e % m)
            }
        }
    }

    fn lazy_act(&self, a: usize, e: usize) -> usize {
        match &self.construction {
            ModuleConstruction::Free { rank } => {
                let x = self.free_digits(e, *rank);
                let s: Vec<usize> = x.iter().map(|&b| self.base.mul(a, b)).collect();
                self.free_encode(&s)
            }
            ModuleConstruction::Quotient { reps, class_of } => {
                class_of[self.base.mul(a, reps[e] as usize)] as usize
            }
            ModuleConstruction::Sum { left, right } => {
                let m = right.order();
                left.act(a, e / m) * m + right.act(a, e % m)
            }
        }
    }
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({}, order {})", self.spec(), self.order())
    }
}
