//! Number of logic programs modulo strong equivalence.
//!
//! Classes of strongly equivalent programs over `n` atoms correspond one to
//! one with total-closed sets of interpretations, and their number is
//!
//! ```text
//! ∏_{i=0}^{n} (2^(2^i − 1) + 1)^C(n, i)
//! ```
//!
//! [`count_formula`] evaluates the product exactly. [`count_bruteforce`]
//! and [`count_total_closed_sets`] count total-closed sets directly and never
//! touch the closed form.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formula::{Atom, Signature};
use crate::ht::{submasks, Enumerator, InterpretationSet};

/// Largest `n` accepted by [`count_formula`]. The value has roughly
/// `3^n` bits, so `n = 16` is already several megabytes.
pub const FORMULA_MAX_N: usize = 16;
/// Largest `n` for the per-`Y` enumeration (`2^(2^n)` subsets per `Y`).
pub const BRUTEFORCE_MAX_N: usize = 4;
/// Largest `n` for filtering every subset of all interpretations.
pub const RAW_MAX_N: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramCount {
    pub n: usize,
    pub value: BigUint,
}

/// One row of the factor table: sets `Y` with `|Y| = i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub i: usize,
    /// `C(n, i)`, the number of such `Y`.
    pub multiplicity: BigUint,
    /// `2^(2^i − 1) + 1`, the admissible choices of `S_Y` for one `Y`.
    pub choices: BigUint,
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, j| acc * (n - j) / (j + 1))
}

pub fn factor_table(n: usize) -> Result<Vec<Factor>> {
    if n > FORMULA_MAX_N {
        return Err(Error::BoundExceeded {
            n,
            max: FORMULA_MAX_N,
        });
    }
    Ok((0..=n)
        .map(|i| Factor {
            i,
            multiplicity: binomial(n, i),
            choices: (BigUint::one() << ((1usize << i) - 1)) + 1u32,
        })
        .collect())
}

/// The closed-form count.
pub fn count_formula(n: usize) -> Result<ProgramCount> {
    let value = factor_table(n)?.into_iter().fold(BigUint::one(), |acc, f| {
        let exp = u32::try_from(&f.multiplicity).expect("C(n, i) fits u32 for n <= 16");
        acc * f.choices.pow(exp)
    });
    Ok(ProgramCount { n, value })
}

fn signature_of_size(n: usize) -> Signature {
    Signature::new((0..n).map(|i| Atom::new(&format!("a{i}")).expect("valid atom name")))
}

/// Counts the sets `S_Y ⊆ {(X, Y) : X ⊆ Y}` that are total-closed, i.e.
/// contain all of them as soon as they contain `(Y, Y)`.
fn admissible_per_y(there: u64) -> u64 {
    let heres: Vec<u64> = submasks(there).collect();
    let total_idx = heres.iter().position(|&x| x == there).expect("Y ⊆ Y");
    let all = (1u64 << heres.len()) - 1;
    (0..=all)
        .filter(|choice| choice >> total_idx & 1 == 0 || *choice == all)
        .count() as u64
}

/// Total-closed sets counted by enumerating each `S_Y` independently and
/// multiplying.
pub fn count_bruteforce(n: usize) -> Result<ProgramCount> {
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::BoundExceeded {
            n,
            max: BRUTEFORCE_MAX_N,
        });
    }
    let value = (0u64..1 << n).fold(BigUint::one(), |acc, y| acc * admissible_per_y(y));
    Ok(ProgramCount { n, value })
}

/// Total-closed sets counted by filtering every subset of the `3^n`
/// interpretations.
pub fn count_total_closed_sets(n: usize) -> Result<ProgramCount> {
    if n > RAW_MAX_N {
        return Err(Error::BoundExceeded { n, max: RAW_MAX_N });
    }
    let signature = signature_of_size(n);
    let all: Vec<_> = Enumerator::default()
        .interpretations(&signature)?
        .iter()
        .collect();
    let mut count = BigUint::zero();
    for choice in 0u64..1 << all.len() {
        let members = all
            .iter()
            .enumerate()
            .filter(|(i, _)| choice >> i & 1 == 1)
            .map(|(_, interp)| interp.clone());
        if InterpretationSet::from_interpretations(&signature, members)?.is_total_closed() {
            count += 1u32;
        }
    }
    Ok(ProgramCount { n, value: count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        for (n, expected) in [(0, 2u32), (1, 6), (2, 162)] {
            assert_eq!(count_formula(n).unwrap().value, BigUint::from(expected));
            assert_eq!(count_bruteforce(n).unwrap().value, BigUint::from(expected));
            assert_eq!(
                count_total_closed_sets(n).unwrap().value,
                BigUint::from(expected)
            );
        }
    }

    #[test]
    fn per_y_factor() {
        for y in 0u64..16 {
            let i = y.count_ones();
            assert_eq!(admissible_per_y(y), (1u64 << ((1u64 << i) - 1)) + 1);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(
            count_formula(17),
            Err(Error::BoundExceeded { n: 17, max: 16 })
        );
        assert!(count_bruteforce(5).is_err());
        assert!(count_total_closed_sets(3).is_err());
    }

    #[test]
    fn factor_table_rows() {
        let rows = factor_table(3).unwrap();
        let choices: Vec<u32> = rows
            .iter()
            .map(|r| u32::try_from(&r.choices).unwrap())
            .collect();
        assert_eq!(choices, [2, 3, 9, 129]);
        let mult: Vec<u32> = rows
            .iter()
            .map(|r| u32::try_from(&r.multiplicity).unwrap())
            .collect();
        assert_eq!(mult, [1, 3, 3, 1]);
    }

    #[test]
    fn large_n_is_exact() {
        // 2 · 3^3 · 9^3 · 129 for n = 3.
        assert_eq!(
            count_formula(3).unwrap().value,
            BigUint::from(2u32 * 27 * 729 * 129)
        );
        // Each factor contributes slightly more than C(n, i)·(2^i − 1) bits.
        let v = count_formula(10).unwrap().value;
        assert!(v.bits() > 3u64.pow(10) - 2u64.pow(10));
        assert!(v.bits() < 3u64.pow(10));
    }
}
