//! Programs built from HT countermodels.
//!
//! For an interpretation `(X, Y)` over `Σ` the rule `r(X,Y)` is
//!
//! ```text
//! ⋀{b : b ∈ X} ∧ ⋀{¬c : c ∈ Σ−Y}  →  ⋁{a ∨ ¬a : a ∈ Y−X}
//! ```
//!
//! Its only countermodel is `(X, Y)` when `X ⊂ Y`, and every `(X', Y)` when
//! `X = Y`. Collecting one rule per member of a total-closed set therefore
//! yields a nonnested program with exactly that set of countermodels.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::formula::{atoms_of, Formula, Program, Rule, Signature, Theory};
use crate::ht::{atoms_of_mask, Enumerator, HtInterpretation, InterpretationSet};

/// A rule together with the interpretation it excludes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountermodelRule {
    pub source: HtInterpretation,
    pub rule: Rule,
}

fn body_of(signature: &Signature, here: u64, there: u64) -> Formula {
    let positive = atoms_of_mask(signature, here)
        .into_iter()
        .map(Formula::Atom);
    let negative = signature
        .iter()
        .enumerate()
        .filter(|(i, _)| there >> i & 1 == 0)
        .map(|(_, a)| Formula::not(Formula::Atom(a.clone())));
    Formula::conjunction(positive.chain(negative))
}

fn rule_for(signature: &Signature, here: u64, there: u64) -> Rule {
    let head = Formula::disjunction(
        atoms_of_mask(signature, there & !here)
            .into_iter()
            .flat_map(|a| [Formula::Atom(a.clone()), Formula::not(Formula::Atom(a))]),
    );
    Rule::new_unchecked(body_of(signature, here, there), head)
}

/// The rule `r(X,Y)`.
pub fn build_rule(i: &HtInterpretation) -> CountermodelRule {
    CountermodelRule {
        source: i.clone(),
        rule: rule_for(i.signature(), i.here_mask(), i.there_mask()),
    }
}

/// `Π(S)`: one rule per member of a total-closed set, in the set's order.
pub fn program_from_set(set: &InterpretationSet) -> Result<Program> {
    if let Some((total, missing)) = set.total_closure_violation() {
        return Err(Error::NotTotalClosed {
            total: total.to_string(),
            missing: missing.to_string(),
        });
    }
    let signature = set.signature();
    let rules = set
        .masks()
        .map(|(here, there)| rule_for(signature, here, there))
        .collect();
    Ok(Program::new(rules, signature))
}

/// How a theory is split before building its countermodel program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Countermodels of the whole theory over its full signature.
    #[default]
    Whole,
    /// Union of the programs of each formula over its own atoms.
    PerFormula,
}

pub fn theory_to_program_cm(theory: &Theory, mode: Mode) -> Result<Program> {
    Enumerator::default().program_cm(theory, mode)
}

impl Enumerator {
    pub fn program_cm(&self, theory: &Theory, mode: Mode) -> Result<Program> {
        match mode {
            Mode::Whole => program_from_set(&self.countermodels(theory)?),
            Mode::PerFormula => {
                let mut seen = HashSet::new();
                let mut rules = Vec::new();
                for f in theory.formulas() {
                    let single = Theory::with_signature(vec![f.clone()], &atoms_of(f));
                    for rule in program_from_set(&self.countermodels(&single)?)?.into_rules() {
                        if seen.insert(rule.clone()) {
                            rules.push(rule);
                        }
                    }
                }
                Ok(Program::new(rules, theory.signature()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ht::{ht_countermodels, ht_equivalent, ht_models, sat_ht};
    use crate::parser::{parse, parse_theory};

    fn sig(names: &[&str]) -> Signature {
        Signature::from_names(names).unwrap()
    }

    #[test]
    fn rule_for_nontotal_interpretation() {
        let s = sig(&["p", "q", "r"]);
        let i = HtInterpretation::from_names(&["q"], &["p", "q"], &s).unwrap();
        let r = build_rule(&i);
        assert_eq!(r.rule.to_string(), "q & ~r -> p | ~p");
        assert!(r.rule.is_nonnested());
    }

    #[test]
    fn rule_for_total_interpretation_is_a_constraint() {
        let s = sig(&["p", "q", "r"]);
        let i = HtInterpretation::from_names(&["q"], &["q"], &s).unwrap();
        assert_eq!(build_rule(&i).rule.to_string(), "q & ~p & ~r -> bot");
    }

    #[test]
    fn rule_with_empty_body() {
        let s = sig(&["a", "b"]);
        let i = HtInterpretation::from_names(&[], &["a", "b"], &s).unwrap();
        let r = build_rule(&i).rule;
        assert!(r.body().is_top());
        assert_eq!(r.to_string(), "a | ~a | b | ~b");
    }

    #[test]
    fn or_rule_program() {
        let t = parse_theory("(q -> p) | r").unwrap();
        let prog = theory_to_program_cm(&t, Mode::Whole).unwrap();
        let lines: Vec<String> = prog.rules().iter().map(|r| r.to_string()).collect();
        assert_eq!(
            lines,
            [
                "~p & ~r -> q | ~q",
                "q & ~p & ~r -> bot",
                "q & ~r -> p | ~p",
                "~p -> q | ~q | r | ~r",
                "q & ~p -> r | ~r",
                "q -> p | ~p | r | ~r",
            ]
        );
        assert!(prog.is_nonnested());
        assert!(ht_equivalent(&t, &prog.to_theory())
            .unwrap()
            .is_equivalent());
    }

    #[test]
    fn empty_set_gives_empty_program() {
        let s = sig(&["p"]);
        assert!(program_from_set(&InterpretationSet::new(&s))
            .unwrap()
            .is_empty());
        let t = Theory::default();
        assert!(theory_to_program_cm(&t, Mode::Whole).unwrap().is_empty());
        assert!(theory_to_program_cm(&t, Mode::PerFormula)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn full_set_has_no_models() {
        let s = sig(&["p"]);
        let all = crate::ht::enumerate_interpretations(&s).unwrap();
        let prog = program_from_set(&all).unwrap();
        assert_eq!(prog.len(), 3);
        assert!(ht_models(&prog.to_theory()).unwrap().is_empty());
        assert_eq!(ht_countermodels(&prog.to_theory()).unwrap(), all);
    }

    #[test]
    fn rejects_sets_that_are_not_total_closed() {
        let s = sig(&["p"]);
        let only_total = InterpretationSet::from_interpretations(
            &s,
            [HtInterpretation::from_names(&["p"], &["p"], &s).unwrap()],
        )
        .unwrap();
        match program_from_set(&only_total) {
            Err(Error::NotTotalClosed { total, missing }) => {
                assert_eq!(total, "p | p");
                assert_eq!(missing, "∅ | p");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nested_implication_translates() {
        let t = parse_theory("p -> (r -> q)").unwrap();
        for mode in [Mode::Whole, Mode::PerFormula] {
            let prog = theory_to_program_cm(&t, mode).unwrap();
            assert!(prog.is_nonnested());
            assert!(ht_equivalent(&t, &prog.to_theory())
                .unwrap()
                .is_equivalent());
        }
    }

    #[test]
    fn per_formula_uses_local_signatures() {
        let t = parse_theory("p | ~p\nq -> r\nbot -> z").unwrap();
        let prog = theory_to_program_cm(&t, Mode::PerFormula).unwrap();
        // `p | ~p` over {p} has the single countermodel (∅, {p}).
        assert_eq!(prog.rules()[0].to_string(), "p | ~p");
        assert_eq!(prog.signature(), t.signature());
        assert!(ht_equivalent(&t, &prog.to_theory())
            .unwrap()
            .is_equivalent());
    }

    #[test]
    fn countermodel_of_rule_is_its_source() {
        let s = sig(&["p", "q"]);
        let i = HtInterpretation::from_names(&[], &["q"], &s).unwrap();
        let f = build_rule(&i).rule.to_formula();
        assert!(!sat_ht(&i, &f).unwrap());
        assert!(sat_ht(
            &HtInterpretation::from_names(&["q"], &["q"], &s).unwrap(),
            &f
        )
        .unwrap());
        assert_eq!(f, parse("~p -> q | ~q").unwrap());
    }
}
