//! Translation of formulas into logic programs by rewriting.
//!
//! The formula is converted bottom-up. Subformulas that are already rules
//! are kept, conjunctions concatenate the programs of their conjuncts, a
//! disjunction that is not part of a rule is replaced by
//! `((F→G)→G) ∧ ((G→F)→F)`, and an implication between two programs is
//! turned into a program with [`implication_of_programs`]. That step rests on
//! the identity
//!
//! ```text
//! (F → G) → K   ≡   (G ∨ ¬F) → K,   K ∨ F ∨ ¬G
//! ```
//!
//! which is [`lemma1_rewrite`].

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::formula::{atoms_of, Atom, Formula, Program, Rule, Theory};
use crate::ht::{Enumerator, DEFAULT_CAP};

/// Name of a recorded rewrite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Lemma1,
    Lemma2Split,
    Currying,
    OrElim,
    ConjMerge,
    SimplifyFold,
    SimplifyContext,
    SimplifySplit,
    SimplifyTautology,
    SimplifyDedup,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Lemma1 => "lemma1",
            StepKind::Lemma2Split => "lemma2-split",
            StepKind::Currying => "currying",
            StepKind::OrElim => "or-elim",
            StepKind::ConjMerge => "conj-merge",
            StepKind::SimplifyFold => "simplify-fold",
            StepKind::SimplifyContext => "simplify-context",
            StepKind::SimplifySplit => "simplify-split",
            StepKind::SimplifyTautology => "simplify-tautology",
            StepKind::SimplifyDedup => "simplify-dedup",
        }
    }
}

/// One rewrite. `before` and `after` are HT-equivalent; programs appear as
/// the conjunction of their rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    pub before: Formula,
    pub after: Formula,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub steps: Vec<Step>,
}

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(
                f,
                "STEP {}: {} ==> {}",
                step.kind.name(),
                step.before,
                step.after
            )?;
        }
        Ok(())
    }
}

/// Replaces every `F ∨ G` by `((F→G)→G) ∧ ((G→F)→F)`.
pub fn eliminate_connectives(f: &Formula) -> Formula {
    match f {
        Formula::Bottom | Formula::Atom(_) => f.clone(),
        Formula::And(l, r) => Formula::and(eliminate_connectives(l), eliminate_connectives(r)),
        Formula::Implies(l, r) => {
            Formula::implies(eliminate_connectives(l), eliminate_connectives(r))
        }
        Formula::Or(l, r) => {
            let left = eliminate_connectives(l);
            let right = eliminate_connectives(r);
            Formula::and(
                Formula::implies(Formula::implies(left.clone(), right.clone()), right.clone()),
                Formula::implies(Formula::implies(right, left.clone()), left),
            )
        }
    }
}

/// The two formulas `(G ∨ ¬F) → K` and `K ∨ F ∨ ¬G` whose conjunction is
/// equivalent to `(F → G) → K`.
pub fn lemma1_rewrite(f: &Formula, g: &Formula, k: &Formula) -> [Formula; 2] {
    [
        Formula::implies(Formula::or(g.clone(), Formula::not(f.clone())), k.clone()),
        Formula::or(Formula::or(k.clone(), f.clone()), Formula::not(g.clone())),
    ]
}

/// A program equivalent to `(⋀p1) → (⋀p2)`.
pub fn implication_of_programs(p1: &Program, p2: &Program) -> Program {
    let rules = Translator::new().implication(p1.rules(), p2.rules(), &mut None);
    Program::new(rules, &p1.signature().union(p2.signature()))
}

/// A program equivalent to `f`, without simplification.
pub fn formula_to_program_syn(f: &Formula) -> Program {
    Translator::new().translate_formula(f).0
}

/// Formula-by-formula translation of a theory.
pub fn theory_to_program_syn(t: &Theory) -> Program {
    Translator::new().translate_theory(t).0
}

/// Equivalence-preserving cleanup of a program.
pub fn simplify(p: &Program) -> Program {
    let rules = Translator::new().simplify_rules(p.rules().to_vec(), &mut None);
    Program::new(rules, p.signature())
}

type Trace = Option<Vec<Step>>;

fn record(
    trace: &mut Trace,
    kind: StepKind,
    before: impl FnOnce() -> Formula,
    after: impl FnOnce() -> Formula,
) {
    if let Some(steps) = trace {
        steps.push(Step {
            kind,
            before: before(),
            after: after(),
        });
    }
}

fn conj_of(rules: &[Rule]) -> Formula {
    Formula::conjunction(rules.iter().map(Rule::to_formula))
}

/// Configurable translator.
#[derive(Debug, Clone, Copy)]
pub struct Translator {
    simplify: bool,
    trace: bool,
    cap: usize,
}

impl Default for Translator {
    fn default() -> Self {
        Translator::new()
    }
}

impl Translator {
    pub fn new() -> Self {
        Translator {
            simplify: false,
            trace: false,
            cap: DEFAULT_CAP,
        }
    }

    /// Simplify the program of every implication subformula as soon as it is
    /// built, and the final result.
    pub fn with_simplify(mut self, on: bool) -> Self {
        self.simplify = on;
        self
    }

    pub fn with_trace(mut self, on: bool) -> Self {
        self.trace = on;
        self
    }

    /// Atom limit for the tautology check used by simplification.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn translate_formula(&self, f: &Formula) -> (Program, RewriteTrace) {
        let mut trace: Trace = self.trace.then(Vec::new);
        let rules = self.formula_rules(f, &mut trace);
        (
            Program::new(rules, &atoms_of(f)),
            RewriteTrace {
                steps: trace.unwrap_or_default(),
            },
        )
    }

    pub fn translate_theory(&self, t: &Theory) -> (Program, RewriteTrace) {
        let mut trace: Trace = self.trace.then(Vec::new);
        let mut seen = HashSet::new();
        let mut rules = Vec::new();
        for f in t.formulas() {
            for rule in self.formula_rules(f, &mut trace) {
                if seen.insert(rule.clone()) {
                    rules.push(rule);
                }
            }
        }
        (
            Program::new(rules, t.signature()),
            RewriteTrace {
                steps: trace.unwrap_or_default(),
            },
        )
    }

    /// Simplifies an existing program, e.g. one built from countermodels.
    pub fn simplify_program(&self, p: &Program) -> (Program, RewriteTrace) {
        let mut trace: Trace = self.trace.then(Vec::new);
        let rules = self.simplify_rules(p.rules().to_vec(), &mut trace);
        (
            Program::new(rules, p.signature()),
            RewriteTrace {
                steps: trace.unwrap_or_default(),
            },
        )
    }

    fn formula_rules(&self, f: &Formula, trace: &mut Trace) -> Vec<Rule> {
        let rules = self.convert(f, trace);
        if self.simplify {
            self.simplify_rules(rules, trace)
        } else {
            rules
        }
    }

    fn convert(&self, f: &Formula, trace: &mut Trace) -> Vec<Rule> {
        if let Ok(rule) = Rule::from_formula(f) {
            return vec![rule];
        }
        match f {
            Formula::And(l, r) => {
                let mut rules = self.convert(l, trace);
                rules.extend(self.convert(r, trace));
                record(trace, StepKind::ConjMerge, || f.clone(), || conj_of(&rules));
                rules
            }
            Formula::Or(l, r) => {
                let (l, r) = (l.as_ref().clone(), r.as_ref().clone());
                let expanded = Formula::and(
                    Formula::implies(Formula::implies(l.clone(), r.clone()), r.clone()),
                    Formula::implies(Formula::implies(r, l.clone()), l),
                );
                record(trace, StepKind::OrElim, || f.clone(), || expanded.clone());
                self.convert(&expanded, trace)
            }
            Formula::Implies(l, r) => {
                let antecedent = self.convert(l, trace);
                let consequent = self.convert(r, trace);
                let rules = self.implication(&antecedent, &consequent, trace);
                if self.simplify {
                    self.simplify_rules(rules, trace)
                } else {
                    rules
                }
            }
            Formula::Bottom | Formula::Atom(_) => unreachable!("atoms and ⊥ are rules"),
        }
    }

    fn implication(&self, p1: &[Rule], p2: &[Rule], trace: &mut Trace) -> Vec<Rule> {
        match p1 {
            [] => p2.to_vec(),
            [single] => {
                let (f, g) = (single.body(), single.head());
                if p2.len() > 1 {
                    record(
                        trace,
                        StepKind::Lemma2Split,
                        || Formula::implies(single.to_formula(), conj_of(p2)),
                        || {
                            Formula::conjunction(
                                p2.iter()
                                    .map(|r| Formula::implies(single.to_formula(), r.to_formula())),
                            )
                        },
                    );
                }
                let mut out = Vec::with_capacity(2 * p2.len());
                for rule in p2 {
                    let (h, k) = (rule.body(), rule.head());
                    let guard = Formula::or(g.clone(), Formula::not(f.clone()));
                    let body = if h.is_top() {
                        guard
                    } else {
                        Formula::and(h.clone(), guard)
                    };
                    let first = Rule::new_unchecked(body, k.clone());
                    let second = Rule::new_unchecked(
                        h.clone(),
                        Formula::or(Formula::or(k.clone(), f.clone()), Formula::not(g.clone())),
                    );
                    record(
                        trace,
                        StepKind::Lemma1,
                        || Formula::implies(single.to_formula(), rule.to_formula()),
                        || Formula::and(first.to_formula(), second.to_formula()),
                    );
                    out.push(first);
                    out.push(second);
                }
                out
            }
            _ => {
                let (front, back) = p1.split_at(p1.len() / 2);
                record(
                    trace,
                    StepKind::Currying,
                    || Formula::implies(conj_of(p1), conj_of(p2)),
                    || {
                        Formula::implies(
                            conj_of(front),
                            Formula::implies(conj_of(back), conj_of(p2)),
                        )
                    },
                );
                let inner = self.implication(back, p2, trace);
                self.implication(front, &inner, trace)
            }
        }
    }

    fn simplify_rules(&self, rules: Vec<Rule>, trace: &mut Trace) -> Vec<Rule> {
        let enumerator = Enumerator::new(self.cap);
        let mut queue: Vec<Rule> = rules.into_iter().rev().collect();
        let mut out: Vec<Rule> = Vec::new();
        let mut seen = HashSet::new();
        while let Some(rule) = queue.pop() {
            let Some(rule) = self.normalize_rule(rule, trace) else {
                continue;
            };
            let conjuncts = flatten_and(rule.body());
            if let Some(pos) = conjuncts.iter().position(|c| matches!(c, Formula::Or(..))) {
                let Formula::Or(a, b) = &conjuncts[pos] else {
                    unreachable!()
                };
                let parts: Vec<Rule> = [a, b]
                    .into_iter()
                    .map(|d| {
                        let mut cs = conjuncts.clone();
                        cs[pos] = (**d).clone();
                        Rule::new_unchecked(Formula::conjunction(cs), rule.head().clone())
                    })
                    .collect();
                record(
                    trace,
                    StepKind::SimplifySplit,
                    || rule.to_formula(),
                    || conj_of(&parts),
                );
                queue.extend(parts.into_iter().rev());
                continue;
            }
            if is_tautology(&enumerator, &rule) {
                record(
                    trace,
                    StepKind::SimplifyTautology,
                    || rule.to_formula(),
                    Formula::top,
                );
                continue;
            }
            if seen.insert(rule.clone()) {
                out.push(rule);
            } else {
                record(
                    trace,
                    StepKind::SimplifyDedup,
                    || Formula::and(rule.to_formula(), rule.to_formula()),
                    || rule.to_formula(),
                );
            }
        }
        out
    }

    /// Constant folding, substitution of body literals into the rest of the
    /// rule, and duplicate removal, repeated until nothing changes. `None`
    /// when the rule became trivially true.
    fn normalize_rule(&self, rule: Rule, trace: &mut Trace) -> Option<Rule> {
        let mut current = rule;
        loop {
            let folded = Rule::new_unchecked(fold(current.body()), fold(current.head()));
            if folded != current {
                record(
                    trace,
                    StepKind::SimplifyFold,
                    || current.to_formula(),
                    || folded.to_formula(),
                );
            }
            if folded.body().is_bottom() || folded.head().is_top() {
                record(
                    trace,
                    StepKind::SimplifyTautology,
                    || folded.to_formula(),
                    Formula::top,
                );
                return None;
            }

            let (contextual, contradictory) = substitute_context(&folded);
            if contradictory {
                record(
                    trace,
                    StepKind::SimplifyTautology,
                    || folded.to_formula(),
                    Formula::top,
                );
                return None;
            }
            if contextual != folded {
                record(
                    trace,
                    StepKind::SimplifyContext,
                    || folded.to_formula(),
                    || contextual.to_formula(),
                );
            }

            let deduped = dedup_rule(&contextual);
            if deduped != contextual {
                record(
                    trace,
                    StepKind::SimplifyDedup,
                    || contextual.to_formula(),
                    || deduped.to_formula(),
                );
            }
            if deduped == current {
                return Some(deduped);
            }
            current = deduped;
        }
    }
}

fn is_tautology(enumerator: &Enumerator, rule: &Rule) -> bool {
    let theory = Theory::new(vec![rule.to_formula()]);
    // Over the cap the rule is kept.
    matches!(enumerator.countermodels(&theory), Ok(cms) if cms.is_empty())
}

/// Folds `⊤`/`⊥` through the connectives and collapses `¬¬¬F` to `¬F`.
fn fold(f: &Formula) -> Formula {
    match f {
        Formula::Bottom | Formula::Atom(_) => f.clone(),
        Formula::And(l, r) => {
            let (a, b) = (fold(l), fold(r));
            if a.is_bottom() || b.is_bottom() {
                Formula::Bottom
            } else if a.is_top() {
                b
            } else if b.is_top() {
                a
            } else {
                Formula::and(a, b)
            }
        }
        Formula::Or(l, r) => {
            let (a, b) = (fold(l), fold(r));
            if a.is_top() || b.is_top() {
                Formula::top()
            } else if a.is_bottom() {
                b
            } else if b.is_bottom() {
                a
            } else {
                Formula::or(a, b)
            }
        }
        Formula::Implies(l, r) => {
            let (a, b) = (fold(l), fold(r));
            if a.is_bottom() || b.is_top() {
                Formula::top()
            } else if a.is_top() {
                b
            } else if b.is_bottom() {
                // ¬¬¬F ≡ ¬F
                match a.negated() {
                    Some(inner) if inner.negated().is_some() => inner.clone(),
                    _ => Formula::not(a),
                }
            } else {
                Formula::implies(a, b)
            }
        }
    }
}

fn flatten_and(f: &Formula) -> Vec<Formula> {
    match f {
        Formula::And(l, r) => {
            let mut v = flatten_and(l);
            v.extend(flatten_and(r));
            v
        }
        _ if f.is_top() => Vec::new(),
        _ => vec![f.clone()],
    }
}

fn flatten_or(f: &Formula) -> Vec<Formula> {
    match f {
        Formula::Or(l, r) => {
            let mut v = flatten_or(l);
            v.extend(flatten_or(r));
            v
        }
        _ if f.is_bottom() => Vec::new(),
        _ => vec![f.clone()],
    }
}

fn dedup(items: Vec<Formula>) -> Vec<Formula> {
    let mut seen = HashSet::new();
    items
        .into_iter()
        .filter(|f| seen.insert(f.clone()))
        .collect()
}

fn dedup_rule(rule: &Rule) -> Rule {
    Rule::new_unchecked(
        Formula::conjunction(dedup(flatten_and(rule.body()))),
        Formula::disjunction(dedup(flatten_or(rule.head()))),
    )
}

fn replace_atoms(f: &Formula, truths: &BTreeSet<Atom>, falsities: &BTreeSet<Atom>) -> Formula {
    match f {
        Formula::Bottom => Formula::Bottom,
        Formula::Atom(a) if truths.contains(a) => Formula::top(),
        Formula::Atom(a) if falsities.contains(a) => Formula::Bottom,
        Formula::Atom(_) => f.clone(),
        Formula::And(l, r) => Formula::and(
            replace_atoms(l, truths, falsities),
            replace_atoms(r, truths, falsities),
        ),
        Formula::Or(l, r) => Formula::or(
            replace_atoms(l, truths, falsities),
            replace_atoms(r, truths, falsities),
        ),
        Formula::Implies(l, r) => Formula::implies(
            replace_atoms(l, truths, falsities),
            replace_atoms(r, truths, falsities),
        ),
    }
}

/// A body conjunct `a` makes `a` true in both worlds and `¬a` makes it false
/// in both, so either can be replaced by a constant elsewhere in the rule.
/// Returns the rewritten rule and whether the body contains both `a` and
/// `¬a`.
fn substitute_context(rule: &Rule) -> (Rule, bool) {
    let conjuncts = dedup(flatten_and(rule.body()));
    let mut truths = BTreeSet::new();
    let mut falsities = BTreeSet::new();
    for c in &conjuncts {
        match c {
            Formula::Atom(a) => {
                truths.insert(a.clone());
            }
            _ => {
                if let Some(Formula::Atom(a)) = c.negated() {
                    falsities.insert(a.clone());
                }
            }
        }
    }
    if truths.intersection(&falsities).next().is_some() {
        return (rule.clone(), true);
    }
    if truths.is_empty() && falsities.is_empty() {
        return (rule.clone(), false);
    }
    let is_context_literal = |c: &Formula| match c {
        Formula::Atom(_) => true,
        _ => matches!(c.negated(), Some(Formula::Atom(_))),
    };
    let body = Formula::conjunction(conjuncts.iter().map(|c| {
        if is_context_literal(c) {
            c.clone()
        } else {
            fold(&replace_atoms(c, &truths, &falsities))
        }
    }));
    let head = fold(&replace_atoms(rule.head(), &truths, &falsities));
    let rewritten = Rule::new_unchecked(body, head);
    if dedup_rule(&rewritten) == dedup_rule(rule) {
        (rule.clone(), false)
    } else {
        (rewritten, false)
    }
}
