//! Disjunctive normal form built from HT models.
//!
//! The clause `c(X,Y)` is satisfied by exactly `(X, Y)` and `(Y, Y)`, so the
//! disjunction of the clauses of all models of `T` is HT-equivalent to `T`.

use crate::error::Result;
use crate::formula::{Formula, Signature, Theory};
use crate::ht::{atoms_of_mask, Enumerator, HtInterpretation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfClause {
    pub source: HtInterpretation,
    pub clause: Formula,
}

fn clause_for(signature: &Signature, here: u64, there: u64) -> Formula {
    let atom = |i: usize| Formula::Atom(signature.atoms()[i].clone());
    let n = signature.len();
    let bit = |m: u64, i: usize| m >> i & 1 == 1;
    let undefined: Vec<usize> = (0..n).filter(|&i| bit(there, i) && !bit(here, i)).collect();

    let mut parts: Vec<Formula> = atoms_of_mask(signature, here)
        .into_iter()
        .map(Formula::Atom)
        .collect();
    parts.extend(
        (0..n)
            .filter(|&i| !bit(there, i))
            .map(|i| Formula::not(atom(i))),
    );
    parts.extend(
        undefined
            .iter()
            .map(|&i| Formula::not(Formula::not(atom(i)))),
    );
    for &d in &undefined {
        for &e in &undefined {
            parts.push(Formula::implies(atom(d), atom(e)));
        }
    }
    Formula::conjunction(parts)
}

/// The clause `c(X,Y)`.
pub fn build_clause(i: &HtInterpretation) -> DnfClause {
    DnfClause {
        source: i.clone(),
        clause: clause_for(i.signature(), i.here_mask(), i.there_mask()),
    }
}

impl Enumerator {
    /// One clause per HT model, in canonical model order.
    pub fn dnf_clauses(&self, theory: &Theory) -> Result<Vec<DnfClause>> {
        let mut clauses: Vec<DnfClause> = Vec::new();
        for model in self.models(theory)?.iter() {
            let clause = build_clause(&model);
            if !clauses.iter().any(|c| c.clause == clause.clause) {
                clauses.push(clause);
            }
        }
        Ok(clauses)
    }

    pub fn dnf(&self, theory: &Theory) -> Result<Formula> {
        Ok(Formula::disjunction(
            self.dnf_clauses(theory)?.into_iter().map(|c| c.clause),
        ))
    }
}

/// The disjunction of `c(X,Y)` over all models; `⊥` when there are none.
pub fn theory_to_dnf(theory: &Theory) -> Result<Formula> {
    Enumerator::default().dnf(theory)
}
