//! Propositional formulas over the primitives `⊥`, `∧`, `∨` and `→`.
//!
//! Negation, `⊤` and equivalence are not node kinds: `¬F` is stored as
//! `F → ⊥`, `⊤` as `⊥ → ⊥`, and `F ≡ G` as `(F → G) ∧ (G → F)`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const RESERVED: [&str; 3] = ["bot", "top", "not"];

/// A propositional atom. Names match `[a-z][A-Za-z0-9_]*` and are not one
/// of the keywords `bot`, `top`, `not`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Self> {
        if is_identifier(name) && !RESERVED.contains(&name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A propositional formula. Subtrees are reference counted so that
/// rewriting and corpus generation can share them freely.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Atom(Atom),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Result<Self> {
        Atom::new(name).map(Formula::Atom)
    }

    pub fn bottom() -> Self {
        Formula::Bottom
    }

    pub fn top() -> Self {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Arc::new(left), Arc::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Arc::new(left), Arc::new(right))
    }

    pub fn implies(antecedent: Formula, consequent: Formula) -> Self {
        Formula::Implies(Arc::new(antecedent), Arc::new(consequent))
    }

    pub fn not(f: Formula) -> Self {
        Formula::implies(f, Formula::Bottom)
    }

    pub fn equiv(left: Formula, right: Formula) -> Self {
        Formula::and(
            Formula::implies(left.clone(), right.clone()),
            Formula::implies(right, left),
        )
    }

    /// Left-associated conjunction; `⊤` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-associated disjunction; `⊥` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Formula::Bottom)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(a, c) if a.is_bottom() && c.is_bottom())
    }

    /// The operand of a negation `F → ⊥`. `⊤` counts as `¬⊥`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, c) if c.is_bottom() => Some(a),
            _ => None,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Atom(_) => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Height of the tree, counting leaves as depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Atom(_) => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn atoms(&self) -> Signature {
        atoms_of(self)
    }

    pub fn print(&self, style: Style) -> String {
        crate::print::print(self, style)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print(self, Style::Sugared))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print(self, Style::Sugared))
    }
}

/// Output style for formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Only the five primitives, every binary node parenthesized.
    Raw,
    /// `~F` and `top` folded back, minimal parentheses.
    Sugared,
}

/// A finite set of atoms, kept sorted by name.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    atoms: Arc<[Atom]>,
}

impl Signature {
    pub fn new<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        Signature {
            atoms: set.into_iter().collect(),
        }
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        names
            .iter()
            .map(|n| Atom::new(n.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Signature::new)
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Atom> {
        self.atoms.iter()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index_of(atom).is_some()
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.iter().all(|a| other.contains(a))
    }

    pub fn union(&self, other: &Signature) -> Signature {
        if other.is_subset(self) {
            return self.clone();
        }
        Signature::new(self.iter().chain(other.iter()).cloned())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Atom::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> IntoIterator for &'a Signature {
    type Item = &'a Atom;
    type IntoIter = std::slice::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Exactly the atoms occurring in `f`.
pub fn atoms_of(f: &Formula) -> Signature {
    fn collect(f: &Formula, out: &mut BTreeSet<Atom>) {
        match f {
            Formula::Bottom => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                collect(l, out);
                collect(r, out);
            }
        }
    }
    let mut set = BTreeSet::new();
    collect(f, &mut set);
    Signature::new(set)
}

/// A finite theory. The signature covers every occurring atom and may be
/// larger.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Theory {
    formulas: Vec<Formula>,
    signature: Signature,
}

impl Theory {
    pub fn new(formulas: Vec<Formula>) -> Self {
        Theory::with_signature(formulas, &Signature::empty())
    }

    /// A theory over `signature` extended with the atoms of `formulas`.
    pub fn with_signature(formulas: Vec<Formula>, signature: &Signature) -> Self {
        let occurring = Signature::new(formulas.iter().flat_map(|f| atoms_of(f).atoms().to_vec()));
        Theory {
            signature: signature.union(&occurring),
            formulas,
        }
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn extend_signature(&self, signature: &Signature) -> Theory {
        Theory {
            formulas: self.formulas.clone(),
            signature: self.signature.union(signature),
        }
    }

    pub fn union(&self, other: &Theory) -> Theory {
        let mut formulas = self.formulas.clone();
        formulas.extend(other.formulas.iter().cloned());
        Theory {
            formulas,
            signature: self.signature.union(&other.signature),
        }
    }
}

/// A rule `body → head` between two nested expressions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    body: Formula,
    head: Formula,
}

impl Rule {
    pub fn new(body: Formula, head: Formula) -> Result<Self> {
        if is_nested_expression(&body) && is_nested_expression(&head) {
            Ok(Rule { body, head })
        } else {
            Err(Error::NotARule(
                Formula::implies(body, head).print(Style::Sugared),
            ))
        }
    }

    pub(crate) fn new_unchecked(body: Formula, head: Formula) -> Self {
        debug_assert!(is_nested_expression(&body) && is_nested_expression(&head));
        Rule { body, head }
    }

    /// The rule `⊤ → head`.
    pub fn fact(head: Formula) -> Result<Self> {
        Rule::new(Formula::top(), head)
    }

    /// Reads a formula as a rule. An implication between nested expressions
    /// is split at its top connective (so `F → ⊥` is a constraint); any other
    /// nested expression `G` becomes `⊤ → G`.
    pub fn from_formula(f: &Formula) -> Result<Self> {
        if f.is_top() {
            return Ok(Rule {
                body: Formula::top(),
                head: Formula::top(),
            });
        }
        match f {
            Formula::Implies(b, h) if is_nested_expression(b) && is_nested_expression(h) => {
                Ok(Rule {
                    body: (**b).clone(),
                    head: (**h).clone(),
                })
            }
            _ if is_nested_expression(f) => Ok(Rule {
                body: Formula::top(),
                head: f.clone(),
            }),
            _ => Err(Error::NotARule(f.print(Style::Sugared))),
        }
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn head(&self) -> &Formula {
        &self.head
    }

    /// The rule as a formula; facts are returned as their bare head.
    pub fn to_formula(&self) -> Formula {
        if self.body.is_top() {
            self.head.clone()
        } else {
            Formula::implies(self.body.clone(), self.head.clone())
        }
    }

    pub fn is_nonnested(&self) -> bool {
        is_literal_conjunction(&self.body) && is_literal_disjunction(&self.head)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print_rule(self))
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite list of rules over a signature.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Program {
    rules: Vec<Rule>,
    signature: Signature,
}

impl Program {
    /// Builds a program; the signature is widened to cover every rule.
    pub fn new(rules: Vec<Rule>, signature: &Signature) -> Self {
        let occurring = Signature::new(rules.iter().flat_map(|r| {
            let mut v = atoms_of(&r.body).atoms().to_vec();
            v.extend(atoms_of(&r.head).atoms().iter().cloned());
            v
        }));
        Program {
            rules,
            signature: signature.union(&occurring),
        }
    }

    /// Parses every formula of `theory` as a rule.
    pub fn from_theory(theory: &Theory) -> Result<Self> {
        let rules = theory
            .formulas()
            .iter()
            .map(Rule::from_formula)
            .collect::<Result<Vec<_>>>()?;
        Ok(Program::new(rules, theory.signature()))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn into_rules(self) -> Vec<Rule> {
        self.rules
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn is_nonnested(&self) -> bool {
        self.rules.iter().all(Rule::is_nonnested)
    }

    pub fn to_theory(&self) -> Theory {
        Theory::with_signature(
            self.rules.iter().map(Rule::to_formula).collect(),
            &self.signature,
        )
    }

    /// The conjunction of all rules; `⊤` for the empty program.
    pub fn to_formula(&self) -> Formula {
        Formula::conjunction(self.rules.iter().map(Rule::to_formula))
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// No implication other than negations and `⊤`.
pub fn is_nested_expression(f: &Formula) -> bool {
    match f {
        Formula::Bottom | Formula::Atom(_) => true,
        Formula::And(l, r) | Formula::Or(l, r) => {
            is_nested_expression(l) && is_nested_expression(r)
        }
        Formula::Implies(a, c) => c.is_bottom() && is_nested_expression(a),
    }
}

pub fn is_rule(f: &Formula) -> bool {
    match f {
        Formula::Implies(b, h) if is_nested_expression(b) && is_nested_expression(h) => true,
        _ => is_nested_expression(f),
    }
}

pub fn is_literal(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        _ => matches!(f.negated(), Some(Formula::Atom(_))),
    }
}

fn is_literal_conjunction(f: &Formula) -> bool {
    fn chain(f: &Formula) -> bool {
        match f {
            Formula::And(l, r) => chain(l) && chain(r),
            _ => is_literal(f),
        }
    }
    f.is_top() || chain(f)
}

fn is_literal_disjunction(f: &Formula) -> bool {
    fn chain(f: &Formula) -> bool {
        match f {
            Formula::Or(l, r) => chain(l) && chain(r),
            _ => is_literal(f),
        }
    }
    f.is_bottom() || chain(f)
}

/// `(l1 ∧ … ∧ lm) → (lm+1 ∨ … ∨ ln)` with `⊤`/`⊥` for the empty cases.
pub fn is_nonnested_rule(f: &Formula) -> bool {
    match f {
        Formula::Implies(b, h) if is_literal_conjunction(b) && is_literal_disjunction(h) => true,
        _ => is_literal_disjunction(f),
    }
}
