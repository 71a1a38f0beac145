//! Python bindings. Theories are passed as text in the same format the
//! command-line tool reads.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use htlp_core::countermodel::Mode;
use htlp_core::counting::{count_bruteforce, count_formula};
use htlp_core::ht::DEFAULT_CAP;
use htlp_core::syntactic::Translator;
use htlp_core::{parse_theory, Atom, Enumerator, Equivalence, Error, Signature, Theory};

create_exception!(htlp, ParseError, PyValueError);
create_exception!(htlp, CapExceeded, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Syntax { .. } | Error::InvalidAtom(_) => ParseError::new_err(e.to_string()),
        Error::CapExceeded { .. } | Error::SignatureTooLarge(_) => {
            CapExceeded::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn theory(text: &str, signature: Option<Vec<String>>) -> PyResult<Theory> {
    let t = parse_theory(text).map_err(py_err)?;
    Ok(match signature {
        Some(names) => {
            let atoms = names
                .iter()
                .map(|n| Atom::new(n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(py_err)?;
            t.extend_signature(&Signature::new(atoms))
        }
        None => t,
    })
}

fn enumerator(cap: usize, signature: &Signature) -> PyResult<Enumerator> {
    let e = Enumerator::new(cap);
    e.check(signature).map_err(py_err)?;
    Ok(e)
}

/// Parses one formula and returns it printed back.
#[pyfunction]
fn parse(text: &str) -> PyResult<String> {
    Ok(htlp_core::parse(text).map_err(py_err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (text, signature=None, cap=DEFAULT_CAP))]
fn models(text: &str, signature: Option<Vec<String>>, cap: usize) -> PyResult<Vec<String>> {
    let t = theory(text, signature)?;
    let set = enumerator(cap, t.signature())?.models(&t).map_err(py_err)?;
    Ok(set.iter().map(|i| i.to_string()).collect())
}

#[pyfunction]
#[pyo3(signature = (text, signature=None, cap=DEFAULT_CAP))]
fn countermodels(text: &str, signature: Option<Vec<String>>, cap: usize) -> PyResult<Vec<String>> {
    let t = theory(text, signature)?;
    let set = enumerator(cap, t.signature())?
        .countermodels(&t)
        .map_err(py_err)?;
    Ok(set.iter().map(|i| i.to_string()).collect())
}

/// Answer sets, each a sorted list of atom names.
#[pyfunction]
#[pyo3(signature = (text, signature=None, cap=DEFAULT_CAP))]
fn equilibrium(
    text: &str,
    signature: Option<Vec<String>>,
    cap: usize,
) -> PyResult<Vec<Vec<String>>> {
    let t = theory(text, signature)?;
    let found = enumerator(cap, t.signature())?
        .equilibrium_models(&t)
        .map_err(py_err)?;
    Ok(found
        .into_iter()
        .map(|m| m.iter().map(|a| a.name().to_string()).collect())
        .collect())
}

/// Rules of an equivalent program, one string per rule.
#[pyfunction]
#[pyo3(signature = (text, method="countermodel", mode="whole", simplify=false, signature=None, cap=DEFAULT_CAP))]
fn to_program(
    text: &str,
    method: &str,
    mode: &str,
    simplify: bool,
    signature: Option<Vec<String>>,
    cap: usize,
) -> PyResult<Vec<String>> {
    let t = theory(text, signature)?;
    let translator = Translator::new().with_simplify(simplify).with_cap(cap);
    let program = match method {
        "syntactic" => translator.translate_theory(&t).0,
        "countermodel" => {
            let mode = match mode {
                "whole" => Mode::Whole,
                "per-formula" | "per_formula" => Mode::PerFormula,
                other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
            };
            let p = enumerator(cap, t.signature())?
                .program_cm(&t, mode)
                .map_err(py_err)?;
            if simplify {
                translator.simplify_program(&p).0
            } else {
                p
            }
        }
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    };
    Ok(program.rules().iter().map(|r| r.to_string()).collect())
}

#[pyfunction]
#[pyo3(signature = (text, signature=None, cap=DEFAULT_CAP))]
fn to_dnf(text: &str, signature: Option<Vec<String>>, cap: usize) -> PyResult<String> {
    let t = theory(text, signature)?;
    Ok(enumerator(cap, t.signature())?
        .dnf(&t)
        .map_err(py_err)?
        .to_string())
}

/// `None` when the theories are strongly equivalent, otherwise the first
/// interpretation that tells them apart.
#[pyfunction]
#[pyo3(signature = (first, second, cap=DEFAULT_CAP))]
fn check_equiv(first: &str, second: &str, cap: usize) -> PyResult<Option<String>> {
    let (a, b) = (theory(first, None)?, theory(second, None)?);
    let e = enumerator(cap, &a.signature().union(b.signature()))?;
    Ok(match e.equivalent(&a, &b).map_err(py_err)? {
        Equivalence::Equivalent => None,
        Equivalence::Witness(i) => Some(i.to_string()),
    })
}

#[pyfunction]
#[pyo3(signature = (n, brute_force=false))]
fn count(n: usize, brute_force: bool) -> PyResult<num_bigint::BigUint> {
    let c = if brute_force {
        count_bruteforce(n)
    } else {
        count_formula(n)
    };
    Ok(c.map_err(py_err)?.value)
}

#[pymodule]
fn htlp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(models, m)?)?;
    m.add_function(wrap_pyfunction!(countermodels, m)?)?;
    m.add_function(wrap_pyfunction!(equilibrium, m)?)?;
    m.add_function(wrap_pyfunction!(to_program, m)?)?;
    m.add_function(wrap_pyfunction!(to_dnf, m)?)?;
    m.add_function(wrap_pyfunction!(check_equiv, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    Ok(())
}
