#![allow(dead_code)]

use std::sync::Arc;

use htlp_core::corpus::{formulas, ALL_CONNECTIVES};
use htlp_core::{Atom, Formula, HtInterpretation, Signature, Theory};

pub fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::new(n).unwrap()).collect()
}

pub fn sig(names: &[&str]) -> Signature {
    Signature::from_names(names).unwrap()
}

/// All formulas over `p`, `q` up to `depth`.
pub fn corpus(depth: usize) -> Vec<Arc<Formula>> {
    formulas(&atoms(&["p", "q"]), depth, &ALL_CONNECTIVES)
}

pub fn single(f: &Formula) -> Theory {
    Theory::new(vec![f.clone()])
}

/// Every (X, Y) with X ⊆ Y over `signature`, listed from plain subset
/// enumeration rather than the library's enumerator.
pub fn all_pairs(signature: &Signature) -> Vec<HtInterpretation> {
    let atoms = signature.atoms();
    let subsets: Vec<Vec<&str>> = (0u32..1 << atoms.len())
        .map(|m| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, a)| a.name())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for y in &subsets {
        for x in &subsets {
            if x.iter().all(|a| y.contains(a)) {
                out.push(HtInterpretation::from_names(x, y, signature).unwrap());
            }
        }
    }
    out
}
