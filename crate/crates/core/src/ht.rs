//! Here-and-there semantics: satisfaction, model enumeration, HT
//! equivalence and equilibrium models.
//!
//! An interpretation `(X, Y)` over a signature of `n` atoms is stored as two
//! bitmasks where bit `i` stands for the `i`-th atom in name order. All
//! enumeration runs in the fixed order "`Y` ascending as a bitmask, then `X`
//! ascending", so every listing and every witness is reproducible.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Signature, Theory};

pub type AtomSet = BTreeSet<Atom>;

pub const DEFAULT_CAP: usize = 16;
const MAX_ATOMS: usize = 64;

/// Renders an atom set as space-separated names, `∅` when empty.
pub fn format_atom_set<'a, I: IntoIterator<Item = &'a Atom>>(atoms: I) -> String {
    let names: Vec<&str> = atoms.into_iter().map(Atom::name).collect();
    if names.is_empty() {
        "∅".to_string()
    } else {
        names.join(" ")
    }
}

fn mask_of(signature: &Signature, atoms: &AtomSet) -> Result<u64> {
    let mut mask = 0u64;
    for atom in atoms {
        let idx = signature
            .index_of(atom)
            .ok_or(Error::InvalidInterpretation)?;
        mask |= 1 << idx;
    }
    Ok(mask)
}

pub(crate) fn atoms_of_mask(signature: &Signature, mask: u64) -> AtomSet {
    signature
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, a)| a.clone())
        .collect()
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Subsets of `y` in ascending numeric order.
pub(crate) fn submasks(y: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let current = next?;
        let step = (current | !y).wrapping_add(1) & y;
        next = if step == 0 { None } else { Some(step) };
        Some(current)
    })
}

/// A here-and-there interpretation `(X, Y)` with `X ⊆ Y ⊆ Σ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HtInterpretation {
    signature: Signature,
    here: u64,
    there: u64,
}

impl HtInterpretation {
    pub fn new(here: &AtomSet, there: &AtomSet, signature: &Signature) -> Result<Self> {
        if signature.len() > MAX_ATOMS {
            return Err(Error::SignatureTooLarge(signature.len()));
        }
        let here_mask = mask_of(signature, here)?;
        let there_mask = mask_of(signature, there)?;
        HtInterpretation::from_masks(signature, here_mask, there_mask)
    }

    /// Convenience constructor from atom names.
    pub fn from_names(here: &[&str], there: &[&str], signature: &Signature) -> Result<Self> {
        let set =
            |names: &[&str]| -> Result<AtomSet> { names.iter().map(|n| Atom::new(n)).collect() };
        HtInterpretation::new(&set(here)?, &set(there)?, signature)
    }

    pub(crate) fn from_masks(signature: &Signature, here: u64, there: u64) -> Result<Self> {
        if signature.len() > MAX_ATOMS {
            return Err(Error::SignatureTooLarge(signature.len()));
        }
        if here & !there != 0 || there & !full_mask(signature.len()) != 0 {
            return Err(Error::InvalidInterpretation);
        }
        Ok(HtInterpretation {
            signature: signature.clone(),
            here,
            there,
        })
    }

    /// The total interpretation `(Y, Y)`.
    pub fn total(there: &AtomSet, signature: &Signature) -> Result<Self> {
        HtInterpretation::new(there, there, signature)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn here(&self) -> AtomSet {
        atoms_of_mask(&self.signature, self.here)
    }

    pub fn there(&self) -> AtomSet {
        atoms_of_mask(&self.signature, self.there)
    }

    pub fn here_mask(&self) -> u64 {
        self.here
    }

    pub fn there_mask(&self) -> u64 {
        self.there
    }

    pub fn is_total(&self) -> bool {
        self.here == self.there
    }
}

impl fmt::Display for HtInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {}",
            format_atom_set(&self.here()),
            format_atom_set(&self.there())
        )
    }
}

impl fmt::Debug for HtInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A finite set of interpretations over one signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InterpretationSet {
    signature: Signature,
    // (there, here): iteration order is the canonical enumeration order.
    members: BTreeSet<(u64, u64)>,
}

impl InterpretationSet {
    pub fn new(signature: &Signature) -> Self {
        InterpretationSet {
            signature: signature.clone(),
            members: BTreeSet::new(),
        }
    }

    pub fn from_interpretations<I>(signature: &Signature, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = HtInterpretation>,
    {
        let mut set = InterpretationSet::new(signature);
        for i in items {
            set.insert(i)?;
        }
        Ok(set)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn insert(&mut self, i: HtInterpretation) -> Result<bool> {
        if i.signature != self.signature {
            return Err(Error::MixedSignatures);
        }
        Ok(self.members.insert((i.there, i.here)))
    }

    pub(crate) fn insert_masks(&mut self, here: u64, there: u64) {
        self.members.insert((there, here));
    }

    pub fn contains(&self, i: &HtInterpretation) -> bool {
        i.signature == self.signature && self.members.contains(&(i.there, i.here))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = HtInterpretation> + '_ {
        self.members
            .iter()
            .map(move |&(there, here)| HtInterpretation {
                signature: self.signature.clone(),
                here,
                there,
            })
    }

    pub(crate) fn masks(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.members.iter().map(|&(there, here)| (here, there))
    }

    /// The first `(Y, Y)` in the set together with an `(X, Y)` missing from
    /// it, if any.
    pub fn total_closure_violation(&self) -> Option<(HtInterpretation, HtInterpretation)> {
        for &(there, here) in &self.members {
            if here != there {
                continue;
            }
            if let Some(x) = submasks(there).find(|&x| !self.members.contains(&(there, x))) {
                let make = |h| HtInterpretation {
                    signature: self.signature.clone(),
                    here: h,
                    there,
                };
                return Some((make(there), make(x)));
            }
        }
        None
    }

    pub fn is_total_closed(&self) -> bool {
        self.total_closure_violation().is_none()
    }
}

/// Classical satisfaction of `f` by the set of true atoms `world`.
pub fn sat_classical(world: &AtomSet, f: &Formula) -> bool {
    match f {
        Formula::Bottom => false,
        Formula::Atom(a) => world.contains(a),
        Formula::And(l, r) => sat_classical(world, l) && sat_classical(world, r),
        Formula::Or(l, r) => sat_classical(world, l) || sat_classical(world, r),
        Formula::Implies(l, r) => !sat_classical(world, l) || sat_classical(world, r),
    }
}

/// `(X, Y) ⊨ f` in the logic of here-and-there.
pub fn sat_ht(i: &HtInterpretation, f: &Formula) -> Result<bool> {
    // Returns (value at (X, Y), classical value at Y).
    fn eval(i: &HtInterpretation, f: &Formula) -> Result<(bool, bool)> {
        Ok(match f {
            Formula::Bottom => (false, false),
            Formula::Atom(a) => {
                let idx = i
                    .signature
                    .index_of(a)
                    .ok_or_else(|| Error::SignatureMismatch {
                        atom: a.name().to_string(),
                    })?;
                (i.here >> idx & 1 == 1, i.there >> idx & 1 == 1)
            }
            Formula::And(l, r) => {
                let (lh, lt) = eval(i, l)?;
                let (rh, rt) = eval(i, r)?;
                (lh && rh, lt && rt)
            }
            Formula::Or(l, r) => {
                let (lh, lt) = eval(i, l)?;
                let (rh, rt) = eval(i, r)?;
                (lh || rh, lt || rt)
            }
            Formula::Implies(l, r) => {
                let (lh, lt) = eval(i, l)?;
                let (rh, rt) = eval(i, r)?;
                let there = !lt || rt;
                ((!lh || rh) && there, there)
            }
        })
    }
    eval(i, f).map(|(here, _)| here)
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Bottom,
    Atom(u32),
    And(u32, u32),
    Or(u32, u32),
    Implies(u32, u32),
}

/// A formula flattened against a signature for fast repeated evaluation.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    nodes: Vec<Node>,
}

impl Compiled {
    pub(crate) fn new(f: &Formula, signature: &Signature) -> Result<Self> {
        fn go(f: &Formula, sig: &Signature, nodes: &mut Vec<Node>) -> Result<u32> {
            let node = match f {
                Formula::Bottom => Node::Bottom,
                Formula::Atom(a) => {
                    Node::Atom(sig.index_of(a).ok_or_else(|| Error::SignatureMismatch {
                        atom: a.name().to_string(),
                    })? as u32)
                }
                Formula::And(l, r) => Node::And(go(l, sig, nodes)?, go(r, sig, nodes)?),
                Formula::Or(l, r) => Node::Or(go(l, sig, nodes)?, go(r, sig, nodes)?),
                Formula::Implies(l, r) => Node::Implies(go(l, sig, nodes)?, go(r, sig, nodes)?),
            };
            nodes.push(node);
            Ok(nodes.len() as u32 - 1)
        }
        let mut nodes = Vec::with_capacity(f.size());
        go(f, signature, &mut nodes)?;
        Ok(Compiled { nodes })
    }

    fn eval_node(&self, idx: u32, here: u64, there: u64) -> (bool, bool) {
        match self.nodes[idx as usize] {
            Node::Bottom => (false, false),
            Node::Atom(bit) => (here >> bit & 1 == 1, there >> bit & 1 == 1),
            Node::And(l, r) => {
                let (lh, lt) = self.eval_node(l, here, there);
                let (rh, rt) = self.eval_node(r, here, there);
                (lh && rh, lt && rt)
            }
            Node::Or(l, r) => {
                let (lh, lt) = self.eval_node(l, here, there);
                let (rh, rt) = self.eval_node(r, here, there);
                (lh || rh, lt || rt)
            }
            Node::Implies(l, r) => {
                let (lh, lt) = self.eval_node(l, here, there);
                let (rh, rt) = self.eval_node(r, here, there);
                let t = !lt || rt;
                ((!lh || rh) && t, t)
            }
        }
    }

    pub(crate) fn eval(&self, here: u64, there: u64) -> bool {
        self.eval_node(self.nodes.len() as u32 - 1, here, there).0
    }
}

pub(crate) struct CompiledTheory(Vec<Compiled>);

impl CompiledTheory {
    pub(crate) fn new(formulas: &[Formula], signature: &Signature) -> Result<Self> {
        formulas
            .iter()
            .map(|f| Compiled::new(f, signature))
            .collect::<Result<Vec<_>>>()
            .map(CompiledTheory)
    }

    pub(crate) fn eval(&self, here: u64, there: u64) -> bool {
        self.0.iter().all(|c| c.eval(here, there))
    }
}

/// Outcome of an HT-equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// An interpretation satisfying exactly one of the two theories.
    Witness(HtInterpretation),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

/// Exhaustive enumeration over signatures of at most `cap` atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumerator {
    cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator { cap: DEFAULT_CAP }
    }
}

impl Enumerator {
    pub fn new(cap: usize) -> Self {
        Enumerator { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check(&self, signature: &Signature) -> Result<()> {
        if signature.len() > self.cap {
            return Err(Error::CapExceeded {
                atoms: signature.len(),
                cap: self.cap,
            });
        }
        if signature.len() > MAX_ATOMS {
            return Err(Error::SignatureTooLarge(signature.len()));
        }
        Ok(())
    }

    pub(crate) fn for_each_pair(
        &self,
        signature: &Signature,
        mut visit: impl FnMut(u64, u64),
    ) -> Result<()> {
        self.check(signature)?;
        let full = full_mask(signature.len());
        let mut there = 0u64;
        loop {
            for here in submasks(there) {
                visit(here, there);
            }
            if there == full {
                break;
            }
            there += 1;
        }
        Ok(())
    }

    /// All `3^|Σ|` interpretations in canonical order.
    pub fn interpretations(&self, signature: &Signature) -> Result<InterpretationSet> {
        let mut set = InterpretationSet::new(signature);
        self.for_each_pair(signature, |h, t| set.insert_masks(h, t))?;
        Ok(set)
    }

    fn partition(&self, theory: &Theory, keep_models: bool) -> Result<InterpretationSet> {
        self.check(theory.signature())?;
        let compiled = CompiledTheory::new(theory.formulas(), theory.signature())?;
        let mut set = InterpretationSet::new(theory.signature());
        self.for_each_pair(theory.signature(), |h, t| {
            if compiled.eval(h, t) == keep_models {
                set.insert_masks(h, t);
            }
        })?;
        Ok(set)
    }

    pub fn models(&self, theory: &Theory) -> Result<InterpretationSet> {
        self.partition(theory, true)
    }

    pub fn countermodels(&self, theory: &Theory) -> Result<InterpretationSet> {
        self.partition(theory, false)
    }

    /// Compares the HT models of both theories over the union signature.
    pub fn equivalent(&self, t1: &Theory, t2: &Theory) -> Result<Equivalence> {
        let signature = t1.signature().union(t2.signature());
        self.check(&signature)?;
        let c1 = CompiledTheory::new(t1.formulas(), &signature)?;
        let c2 = CompiledTheory::new(t2.formulas(), &signature)?;
        let mut witness = None;
        self.for_each_pair(&signature, |h, t| {
            if witness.is_none() && c1.eval(h, t) != c2.eval(h, t) {
                witness = Some((h, t));
            }
        })?;
        Ok(match witness {
            None => Equivalence::Equivalent,
            Some((h, t)) => Equivalence::Witness(HtInterpretation::from_masks(&signature, h, t)?),
        })
    }

    /// Every `Y` with `(Y, Y) ⊨ T` and no `(X, Y) ⊨ T` for `X ⊂ Y`.
    pub fn equilibrium_models(&self, theory: &Theory) -> Result<Vec<AtomSet>> {
        let signature = theory.signature();
        self.check(signature)?;
        let compiled = CompiledTheory::new(theory.formulas(), signature)?;
        let full = full_mask(signature.len());
        let mut found = Vec::new();
        let mut there = 0u64;
        loop {
            if compiled.eval(there, there)
                && !submasks(there).any(|x| x != there && compiled.eval(x, there))
            {
                found.push(atoms_of_mask(signature, there));
            }
            if there == full {
                break;
            }
            there += 1;
        }
        Ok(found)
    }

    /// Whether `t1 ∪ context` and `t2 ∪ context` have the same equilibrium
    /// models.
    pub fn strong_equivalence_probe(
        &self,
        t1: &Theory,
        t2: &Theory,
        context: &Theory,
    ) -> Result<bool> {
        let signature = t1
            .signature()
            .union(t2.signature())
            .union(context.signature());
        let left = t1.union(context).extend_signature(&signature);
        let right = t2.union(context).extend_signature(&signature);
        Ok(self.equilibrium_models(&left)? == self.equilibrium_models(&right)?)
    }
}

pub fn enumerate_interpretations(signature: &Signature) -> Result<InterpretationSet> {
    Enumerator::default().interpretations(signature)
}

pub fn ht_models(theory: &Theory) -> Result<InterpretationSet> {
    Enumerator::default().models(theory)
}

pub fn ht_countermodels(theory: &Theory) -> Result<InterpretationSet> {
    Enumerator::default().countermodels(theory)
}

pub fn ht_equivalent(t1: &Theory, t2: &Theory) -> Result<Equivalence> {
    Enumerator::default().equivalent(t1, t2)
}

pub fn equilibrium_models(theory: &Theory) -> Result<Vec<AtomSet>> {
    Enumerator::default().equilibrium_models(theory)
}

pub fn strong_equivalence_probe(t1: &Theory, t2: &Theory, context: &Theory) -> Result<bool> {
    Enumerator::default().strong_equivalence_probe(t1, t2, context)
}
