//! Here-and-there logic and equilibrium logic for finite propositional
//! theories.
//!
//! Every theory can be rewritten into a strongly equivalent logic program.
//! This crate does it two ways: [`syntactic`] rewrites the formula tree,
//! [`countermodel`] builds one nonnested rule per HT countermodel. It also
//! provides the dual [`dnf`] built from HT models, exact [`counting`] of
//! programs modulo strong equivalence, and the underlying semantics in
//! [`ht`].

pub mod corpus;
pub mod countermodel;
pub mod counting;
pub mod dnf;
mod error;
pub mod formula;
pub mod ht;
pub mod parser;
mod print;
pub mod syntactic;

pub use error::{Error, Result};
pub use formula::{
    atoms_of, is_literal, is_nested_expression, is_nonnested_rule, is_rule, Atom, Formula, Program,
    Rule, Signature, Style, Theory,
};
pub use ht::{
    enumerate_interpretations, equilibrium_models, ht_countermodels, ht_equivalent, ht_models,
    sat_classical, sat_ht, strong_equivalence_probe, AtomSet, Enumerator, Equivalence,
    HtInterpretation, InterpretationSet,
};
pub use parser::{parse, parse_theory};
