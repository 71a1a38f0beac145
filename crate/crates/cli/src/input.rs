use std::io::Read;
use std::path::{Path, PathBuf};

use htlp_core::{parse_theory, Atom, Signature, Theory};

use crate::CliError;

fn read_source(path: &Path, stdin: &mut dyn Read) -> Result<(String, String), CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("<stdin>: {e}")))?;
        return Ok(("<stdin>".to_string(), text));
    }
    let name = path.display().to_string();
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    Ok((name, text))
}

pub fn read_theory(path: &Path, stdin: &mut dyn Read) -> Result<Theory, CliError> {
    let (name, text) = read_source(path, stdin)?;
    parse_theory(&text).map_err(|e| CliError::core(&name, e))
}

/// The union of all input files; standard input when none are given.
pub fn read_theories(paths: &[PathBuf], stdin: &mut dyn Read) -> Result<Theory, CliError> {
    if paths.is_empty() {
        return read_theory(Path::new("-"), stdin);
    }
    let mut theory = Theory::default();
    for path in paths {
        theory = theory.union(&read_theory(path, stdin)?);
    }
    Ok(theory)
}

/// Atoms separated by spaces or commas.
pub fn parse_signature(text: &str) -> Result<Signature, CliError> {
    let atoms = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| Atom::new(s).map_err(|e| CliError::core("--signature", e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Signature::new(atoms))
}
