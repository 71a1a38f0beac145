//! The `htlp` command line, callable in-process with explicit streams.

mod input;

use std::ffi::OsString;
use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use htlp_core::countermodel::Mode;
use htlp_core::counting::{count_bruteforce, count_formula, factor_table};
use htlp_core::ht::{format_atom_set, DEFAULT_CAP};
use htlp_core::syntactic::Translator;
use htlp_core::{Enumerator, Equivalence, Error, Program, Signature, Theory};

/// Caps above this need `--allow-large-cap`.
const LARGE_CAP: usize = 20;

#[derive(Parser)]
#[command(
    name = "htlp",
    version,
    about = "Here-and-there models, strong equivalence and translation of theories into logic programs"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Extra atoms added to the signature, separated by spaces or commas
    #[arg(long, global = true, value_name = "ATOMS")]
    signature: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest signature that may be enumerated
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Required for caps above 20 (3^21 interpretations and more)
    #[arg(long, global = true)]
    allow_large_cap: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Syntactic,
    Countermodel,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Whole,
    PerFormula,
}

#[derive(Subcommand)]
enum Command {
    /// List the HT models of a theory
    Models { inputs: Vec<PathBuf> },
    /// List the HT countermodels of a theory
    Countermodels { inputs: Vec<PathBuf> },
    /// List the equilibrium models (answer sets) of a theory
    Equilibrium { inputs: Vec<PathBuf> },
    /// Translate a theory into a strongly equivalent logic program
    ToProgram {
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Countermodel)]
        method: Method,
        /// Countermodel method only
        #[arg(long, value_enum, default_value_t = ModeArg::Whole)]
        mode: ModeArg,
        #[arg(long)]
        simplify: bool,
        /// Check the output against the input and print VERIFIED or FAILED
        #[arg(long)]
        verify: bool,
        /// Print each rewrite step to standard error
        #[arg(long)]
        trace: bool,
    },
    /// Build the disjunctive normal form of a theory
    ToDnf {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        verify: bool,
        /// One clause per line, with the model it comes from
        #[arg(long)]
        annotate: bool,
    },
    /// Decide strong equivalence of two theories
    CheckEquiv { first: PathBuf, second: PathBuf },
    /// Number of logic programs over n atoms modulo strong equivalence
    Count {
        n: usize,
        /// Also print the factor table
        #[arg(long)]
        verbose: bool,
        /// Count total-closed sets directly instead (n <= 4)
        #[arg(long)]
        brute_force: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    fn core(context: &str, e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::SignatureTooLarge(_) => {
                CliError::Cap(format!("{context}: {e}"))
            }
            _ => CliError::Input(format!("{context}: {e}")),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

struct Report {
    command: &'static str,
    signature: Option<Signature>,
    lines: Vec<String>,
    results: Value,
    verification: Option<bool>,
    extra: Vec<(&'static str, Value)>,
    exit: u8,
}

impl Report {
    fn new(
        command: &'static str,
        signature: Option<&Signature>,
        lines: Vec<String>,
        results: Value,
    ) -> Self {
        Report {
            command,
            signature: signature.cloned(),
            lines,
            results,
            verification: None,
            extra: Vec::new(),
            exit: 0,
        }
    }

    fn print(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Text => {
                for line in &self.lines {
                    writeln!(out, "{line}")?;
                }
                if let Some(ok) = self.verification {
                    writeln!(out, "{}", verdict(ok))?;
                }
            }
            Format::Json => {
                let mut doc = json!({
                    "command": self.command,
                    "signature": self.signature.as_ref().map(|s| s.iter().map(|a| a.name()).collect::<Vec<_>>()),
                    "results": self.results,
                    "verification": self.verification.map(verdict),
                });
                for (k, v) in &self.extra {
                    doc[*k] = v.clone();
                }
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        out.flush()
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "VERIFIED"
    } else {
        "FAILED"
    }
}

fn load(inputs: &[PathBuf], global: &Global, stdin: &mut dyn Read) -> Result<Theory, CliError> {
    let theory = input::read_theories(inputs, stdin)?;
    Ok(match &global.signature {
        Some(text) => theory.extend_signature(&input::parse_signature(text)?),
        None => theory,
    })
}

fn enumerator(global: &Global) -> Result<Enumerator, CliError> {
    if global.cap > LARGE_CAP && !global.allow_large_cap {
        return Err(CliError::Input(format!(
            "--cap {} is above {LARGE_CAP}; pass --allow-large-cap to confirm",
            global.cap
        )));
    }
    Ok(Enumerator::new(global.cap))
}

/// Fails before any work when the signature is over the cap.
fn checked(global: &Global, signature: &Signature) -> Result<Enumerator, CliError> {
    let e = enumerator(global)?;
    e.check(signature)
        .map_err(|err| CliError::core("enumeration", err))?;
    Ok(e)
}

fn core<T>(r: htlp_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::core("error", e))
}

fn equivalent(e: &Enumerator, a: &Theory, b: &Theory) -> Result<bool, CliError> {
    Ok(core(e.equivalent(a, b))?.is_equivalent())
}

fn interpretation_report(
    command: &'static str,
    theory: &Theory,
    set: htlp_core::InterpretationSet,
) -> Report {
    let lines: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    let results = json!(lines);
    Report::new(command, Some(theory.signature()), lines, results)
}

fn to_program(
    theory: &Theory,
    global: &Global,
    method: Method,
    mode: ModeArg,
    simplify: bool,
    verify: bool,
    trace: bool,
    err: &mut dyn Write,
) -> Result<Report, CliError> {
    let translator = Translator::new()
        .with_simplify(simplify)
        .with_trace(trace)
        .with_cap(global.cap);
    let program: Program = match method {
        Method::Syntactic => {
            let (program, steps) = translator.translate_theory(theory);
            let _ = write!(err, "{steps}");
            program
        }
        Method::Countermodel => {
            let e = checked(global, theory.signature())?;
            let mode = match mode {
                ModeArg::Whole => Mode::Whole,
                ModeArg::PerFormula => Mode::PerFormula,
            };
            let program = core(e.program_cm(theory, mode))?;
            if simplify {
                let (program, steps) = translator.simplify_program(&program);
                let _ = write!(err, "{steps}");
                program
            } else {
                program
            }
        }
    };
    let _ = writeln!(err, "% rules: {}", program.len());
    let lines: Vec<String> = program.rules().iter().map(|r| r.to_string()).collect();
    let mut report = Report::new(
        "to-program",
        Some(program.signature()),
        lines.clone(),
        json!(lines),
    );
    report.extra.push(("rule_count", json!(program.len())));
    report
        .extra
        .push(("nonnested", json!(program.is_nonnested())));
    if verify {
        let e = checked(global, &theory.signature().union(program.signature()))?;
        let ok = equivalent(&e, theory, &program.to_theory())?;
        report.verification = Some(ok);
        report.exit = if ok { 0 } else { 1 };
    }
    Ok(report)
}

fn to_dnf(
    theory: &Theory,
    global: &Global,
    verify: bool,
    annotate: bool,
) -> Result<Report, CliError> {
    let e = checked(global, theory.signature())?;
    let clauses = core(e.dnf_clauses(theory))?;
    let formula = htlp_core::Formula::disjunction(clauses.iter().map(|c| c.clause.clone()));
    let lines = if annotate && !clauses.is_empty() {
        clauses
            .iter()
            .enumerate()
            .map(|(k, c)| {
                format!(
                    "{} {}  % {}",
                    if k == 0 { " " } else { "|" },
                    c.clause,
                    c.source
                )
            })
            .collect()
    } else {
        vec![formula.to_string()]
    };
    let results = json!({
        "formula": formula.to_string(),
        "clauses": clauses
            .iter()
            .map(|c| json!({"source": c.source.to_string(), "clause": c.clause.to_string()}))
            .collect::<Vec<_>>(),
    });
    let mut report = Report::new("to-dnf", Some(theory.signature()), lines, results);
    if verify {
        let ok = equivalent(
            &e,
            theory,
            &Theory::with_signature(vec![formula], theory.signature()),
        )?;
        report.verification = Some(ok);
        report.exit = if ok { 0 } else { 1 };
    }
    Ok(report)
}

fn count(n: usize, verbose: bool, brute_force: bool) -> Result<Report, CliError> {
    let value = if brute_force {
        count_bruteforce(n)
    } else {
        count_formula(n)
    }
    .map_err(|e| CliError::core("count", e))?
    .value;
    let mut lines = Vec::new();
    let mut factors = Vec::new();
    if verbose {
        let table = factor_table(n).map_err(|e| CliError::core("count", e))?;
        lines.push("i\tC(n,i)\t2^(2^i-1)+1".to_string());
        for f in table {
            lines.push(format!("{}\t{}\t{}", f.i, f.multiplicity, f.choices));
            factors.push(json!({
                "i": f.i,
                "multiplicity": f.multiplicity.to_string(),
                "choices": f.choices.to_string(),
            }));
        }
    }
    lines.push(value.to_string());
    let mut results = json!({"n": n, "value": value.to_string()});
    if verbose {
        results["factors"] = json!(factors);
    }
    Ok(Report::new("count", None, lines, results))
}

fn dispatch(cli: Cli, stdin: &mut dyn Read, err: &mut dyn Write) -> Result<Report, CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Models { inputs } => {
            let t = load(&inputs, g, stdin)?;
            let set = core(checked(g, t.signature())?.models(&t))?;
            Ok(interpretation_report("models", &t, set))
        }
        Command::Countermodels { inputs } => {
            let t = load(&inputs, g, stdin)?;
            let set = core(checked(g, t.signature())?.countermodels(&t))?;
            Ok(interpretation_report("countermodels", &t, set))
        }
        Command::Equilibrium { inputs } => {
            let t = load(&inputs, g, stdin)?;
            let models = core(checked(g, t.signature())?.equilibrium_models(&t))?;
            let lines: Vec<String> = models.iter().map(|m| format_atom_set(m)).collect();
            let results = json!(models
                .iter()
                .map(|m| m.iter().map(|a| a.name()).collect::<Vec<_>>())
                .collect::<Vec<_>>());
            Ok(Report::new(
                "equilibrium",
                Some(t.signature()),
                lines,
                results,
            ))
        }
        Command::ToProgram {
            inputs,
            method,
            mode,
            simplify,
            verify,
            trace,
        } => {
            let t = load(&inputs, g, stdin)?;
            to_program(&t, g, method, mode, simplify, verify, trace, err)
        }
        Command::ToDnf {
            inputs,
            verify,
            annotate,
        } => {
            let t = load(&inputs, g, stdin)?;
            to_dnf(&t, g, verify, annotate)
        }
        Command::CheckEquiv { first, second } => {
            let a = load(std::slice::from_ref(&first), g, stdin)?;
            let b = load(std::slice::from_ref(&second), g, stdin)?;
            let union = a.signature().union(b.signature());
            let e = checked(g, &union)?;
            let (lines, results, exit) = match core(e.equivalent(&a, &b))? {
                Equivalence::Equivalent => (
                    vec!["EQUIVALENT".to_string()],
                    json!({"verdict": "EQUIVALENT"}),
                    0,
                ),
                Equivalence::Witness(i) => (
                    vec![format!("WITNESS {i}")],
                    json!({"verdict": "WITNESS", "witness": i.to_string()}),
                    1,
                ),
            };
            let mut report = Report::new("check-equiv", Some(&union), lines, results);
            report.exit = exit;
            Ok(report)
        }
        Command::Count {
            n,
            verbose,
            brute_force,
        } => count(n, verbose, brute_force),
    }
}

/// Runs one invocation and returns its exit status: 0 on success, 1 for a
/// failed verification or a non-equivalence witness, 2 for bad input or
/// usage, 3 when the signature is over the enumeration cap.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code() as u8;
        }
    };
    let format = cli.global.format;
    match dispatch(cli, stdin, stderr) {
        Ok(report) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = report.print(format, stdout);
            report.exit
        }
        Err(e) => {
            let _ = writeln!(stderr, "htlp: {e}");
            e.exit_code()
        }
    }
}
