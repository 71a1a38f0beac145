//! Exhaustive formula generation for property checks.

use std::sync::Arc;

use crate::formula::{Atom, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
    Implies,
}

pub const ALL_CONNECTIVES: [Connective; 3] = [Connective::And, Connective::Or, Connective::Implies];

impl Connective {
    pub fn apply(self, left: Arc<Formula>, right: Arc<Formula>) -> Formula {
        match self {
            Connective::And => Formula::And(left, right),
            Connective::Or => Formula::Or(left, right),
            Connective::Implies => Formula::Implies(left, right),
        }
    }
}

/// Every formula over `atoms` and `⊥` built with `connectives` whose depth
/// (leaves count as 1) is at most `depth`.
///
/// Over two atoms with all three connectives this yields 3, 30 and 2703
/// formulas for depths 1, 2 and 3.
pub fn formulas(atoms: &[Atom], depth: usize, connectives: &[Connective]) -> Vec<Arc<Formula>> {
    if depth == 0 {
        return Vec::new();
    }
    let leaves: Vec<Arc<Formula>> = std::iter::once(Formula::Bottom)
        .chain(atoms.iter().cloned().map(Formula::Atom))
        .map(Arc::new)
        .collect();
    let mut all = leaves.clone();
    for _ in 1..depth {
        let mut next = leaves.clone();
        for_each_combination(&all, connectives, |f| next.push(Arc::new(f.clone())));
        all = next;
    }
    all
}

/// Visits every formula `l ∘ r` with `l`, `r` drawn from `base`, without
/// materializing them all.
pub fn for_each_combination(
    base: &[Arc<Formula>],
    connectives: &[Connective],
    mut visit: impl FnMut(&Formula),
) {
    for &c in connectives {
        for l in base {
            for r in base {
                visit(&c.apply(l.clone(), r.clone()));
            }
        }
    }
}
