//! Command implementations. Each returns an exit code and writes its
//! report to `out`.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use relcomm_core::elemgroup::{eval, matrix_level};
use relcomm_core::identities::identity_suite;
use relcomm_core::oracle::{
    verify_lemma6, verify_theorem1, verify_theorem2, FiniteIdeal, FiniteRing, MatCtx, Report, DEFAULT_CAP,
};
use relcomm_core::rewrite::{decompose_with, DecomposeOptions, GeneratorTerm};
use relcomm_core::{Error, IdealPattern};

use crate::dsl::{parse_terms, parse_word, ParseError};
use crate::ringfile::RingSpec;
use crate::trace::Trace;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "relcomm", version, about = "Certified commutator rewriting and finite-ring subgroup checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the built-in identity suite.
    VerifyPaper {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Flip a sign in the named identity before checking it.
        #[arg(long, value_name = "NAME")]
        mutate: Option<String>,
    },
    /// Decompose a generator list and write a JSON trace.
    Decompose(DecomposeArgs),
    /// Evaluate a word to its matrix.
    Eval {
        /// The word, `@FILE` or `-` for stdin.
        word: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Report the congruence level of a word's matrix.
    Level {
        /// The word, `@FILE` or `-` for stdin.
        word: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Test a single ideal pattern such as `AB+BA`.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Compare subgroups over a finite ring.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Generator list file, or `-` for stdin.
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value = "1,2", value_parser = parse_pair)]
    pub fixed_pair: (usize, usize),
    /// Largest monomial degree allowed in inputs and residual parameters.
    #[arg(long, default_value_t = 64)]
    pub max_degree: usize,
    /// Largest total number of terms the moved residual parameters may hold.
    #[arg(long, default_value_t = 2_000_000)]
    pub max_terms: usize,
    /// Write the trace here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave the step list out of the trace.
    #[arg(long)]
    pub no_steps: bool,
    /// Re-verify an existing trace file instead of decomposing.
    #[arg(long, value_name = "TRACE", conflicts_with = "input")]
    pub check: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Theorem1,
    Theorem2,
    Lemma6,
    All,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Builtin name (`zmod:k`, `dual:2`, `t2f2`) or a ring JSON file.
    #[arg(long)]
    pub ring: String,
    /// Ideal A: element labels such as `2`, `(2)`, `2,4`, or a named ideal.
    #[arg(long = "A", alias = "a")]
    pub a: Option<String>,
    #[arg(long = "B", alias = "b")]
    pub b: Option<String>,
    #[arg(long, value_enum, default_value_t = CheckKind::All)]
    pub check: CheckKind,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_CAP as f64)]
    pub cap: f64,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(',').ok_or("expected i,j")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((p(i)?, p(j)?))
}

/// Failure that ends a command with a specific exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::usage(format!("parse error at {e}"))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::CapExceeded(_)) { EXIT_CAP } else { EXIT_USAGE };
        Failure { code, msg: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

type Verifier = fn(&MatCtx, &FiniteIdeal, &FiniteIdeal, usize) -> Result<Report, Error>;

/// Runs one parsed command line.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::VerifyPaper { n, mutate } => verify_paper(n, mutate.as_deref(), out),
        Command::Decompose(args) => decompose(&args, out),
        Command::Eval { word, n } => eval_cmd(&word, n, out),
        Command::Level { word, n, ideal } => level_cmd(&word, n, ideal.as_deref(), out),
        Command::Oracle(args) => oracle(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn read_source(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        read_file(Path::new(path))
    } else {
        Ok(arg.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn verify_paper(n: usize, mutate: Option<&str>, out: &mut dyn Write) -> CmdResult {
    let mut suite = identity_suite(n)?;
    if let Some(name) = mutate {
        let target = suite
            .iter_mut()
            .find(|id| id.name == name)
            .ok_or_else(|| Failure::usage(format!("no identity named `{name}`")))?;
        *target = target.mutated();
    }
    let mut failed = 0;
    for id in &suite {
        let ok = id.holds();
        failed += usize::from(!ok);
        writeln!(out, "{} {}", if ok { "PASS" } else { "FAIL" }, id.name)?;
    }
    writeln!(out, "{} of {} identities hold (n = {n})", suite.len() - failed, suite.len())?;
    Ok(if failed == 0 { EXIT_PASS } else { EXIT_FAIL })
}

/// Largest degree bound among the input terms.
fn predicted_degree(terms: &[GeneratorTerm]) -> usize {
    terms.iter().map(|t| t.letters().iter().map(|l| l.param.degree()).sum::<usize>()).max().unwrap_or(0)
}

fn decompose(args: &DecomposeArgs, out: &mut dyn Write) -> CmdResult {
    if let Some(path) = &args.check {
        let trace: Trace =
            serde_json::from_str(&read_file(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let verdict = trace.recheck()?;
        let same = verdict == trace.verdict;
        writeln!(out, "{}", serde_json::to_string_pretty(&verdict).expect("serializable"))?;
        if !same {
            writeln!(out, "recomputed verdict differs from the stored one")?;
        }
        return Ok(if verdict.pass && same { EXIT_PASS } else { EXIT_FAIL });
    }
    let text = match &args.input {
        None => return Err(Failure::usage("decompose needs an input file (or `-`)")),
        Some(p) if p.as_os_str() == "-" => read_source("-")?,
        Some(p) => read_file(p)?,
    };
    if args.n < 3 {
        return Err(Error::DegreeTooSmall(args.n).into());
    }
    let terms = parse_terms(&text, args.n)?;
    let predicted = predicted_degree(&terms);
    if predicted > args.max_degree {
        return Err(Failure::usage(format!(
            "input too large: a term reaches monomial degree {predicted}, above --max-degree {}",
            args.max_degree
        )));
    }
    let opts = DecomposeOptions {
        pair: args.fixed_pair,
        trace: !args.no_steps,
        max_degree: Some(args.max_degree),
        max_terms: Some(args.max_terms),
    };
    let d = decompose_with(&terms, args.n, &opts).map_err(|e| match e {
        Error::DegreeCap(d, cap) => {
            Failure::usage(format!("residual parameters reach degree {d}, above --max-degree {cap}; split the input"))
        }
        Error::SizeCap(size, cap) => Failure::usage(format!(
            "residual parameters would hold {size} terms, above --max-terms {cap}; split the input"
        )),
        e => e.into(),
    })?;
    let trace = Trace::new(&terms, &d);
    let json = serde_json::to_string_pretty(&trace).expect("serializable");
    match &args.out {
        Some(path) => {
            std::fs::write(path, json + "\n")?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => writeln!(out, "{json}")?,
    }
    Ok(if trace.verdict.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn eval_cmd(word: &str, n: usize, out: &mut dyn Write) -> CmdResult {
    let w = parse_word(&read_source(word)?, n)?;
    write!(out, "{}", eval(&w))?;
    Ok(EXIT_PASS)
}

/// Patterns tried by `level`, smallest first.
const LEVELS: [&str; 8] = ["0", "AB", "BA", "AB+BA", "A", "B", "A+B", "R"];

fn level_cmd(word: &str, n: usize, ideal: Option<&str>, out: &mut dyn Write) -> CmdResult {
    let m = eval(&parse_word(&read_source(word)?, n)?);
    if let Some(ideal) = ideal {
        let pattern: IdealPattern = ideal.parse().map_err(|e: Error| Failure::usage(format!("`{ideal}`: {e}")))?;
        let ok = matrix_level(&m, &pattern);
        writeln!(out, "{} GL(n,R,{pattern})", if ok { "in" } else { "not in" })?;
        return Ok(if ok { EXIT_PASS } else { EXIT_FAIL });
    }
    for name in LEVELS {
        let pattern: IdealPattern = name.parse().expect("builtin pattern");
        if matrix_level(&m, &pattern) {
            writeln!(out, "level {pattern}")?;
            return Ok(EXIT_PASS);
        }
    }
    unreachable!("every matrix has level R")
}

struct OracleRing {
    ring: FiniteRing,
    named: Vec<(String, FiniteIdeal)>,
}

fn load_ring(spec: &str) -> Result<OracleRing, Failure> {
    if Path::new(spec).is_file() {
        let file: RingSpec =
            serde_json::from_str(&read_file(Path::new(spec))?).map_err(|e| Failure::usage(format!("{spec}: {e}")))?;
        let (ring, ideals) = file.build()?;
        return Ok(OracleRing { ring, named: ideals.into_iter().collect() });
    }
    let ring = FiniteRing::builtin(spec)?;
    Ok(OracleRing { ring, named: Vec::new() })
}

/// The canonical proper ideal of a builtin ring.
fn default_ideal(r: &OracleRing) -> Result<FiniteIdeal, Failure> {
    if let Some((_, i)) = r.named.first() {
        return Ok(i.clone());
    }
    let ring = &r.ring;
    let name = ring.name();
    let ideal = if name == "t2f2" {
        "strict".to_string()
    } else if name == "dual:2" {
        "(t)".to_string()
    } else if let Some(k) = name.strip_prefix("zmod:").and_then(|k| k.parse::<usize>().ok()) {
        let p = (2..=k).find(|p| k % p == 0).expect("k >= 2");
        if p == k {
            "0".to_string()
        } else {
            format!("({p})")
        }
    } else {
        return Err(Failure::usage("no default ideal; pass --A and --B"));
    };
    Ok(FiniteIdeal::named(ring, &ideal)?)
}

fn resolve_ideal(r: &OracleRing, arg: Option<&str>) -> Result<FiniteIdeal, Failure> {
    let Some(arg) = arg else {
        return default_ideal(r);
    };
    if let Some((_, i)) = r.named.iter().find(|(name, _)| name == arg) {
        return Ok(i.clone());
    }
    let text = if arg.starts_with('(') || ["0", "R", "strict"].contains(&arg) { arg.to_string() } else { format!("({arg})") };
    Ok(FiniteIdeal::named(&r.ring, &text)?)
}

fn describe(ring: &FiniteRing, i: &FiniteIdeal) -> String {
    let labels: Vec<&str> = i.members().iter().map(|&x| ring.label(x)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn oracle(args: &OracleArgs, out: &mut dyn Write) -> CmdResult {
    let r = load_ring(&args.ring)?;
    let a = resolve_ideal(&r, args.a.as_deref())?;
    let b = resolve_ideal(&r, args.b.as_deref())?;
    let ring = &r.ring;
    let ctx = MatCtx::new(ring, args.n)?;
    // Also rejects NaN.
    if args.cap.partial_cmp(&1.0).is_none_or(|o| o.is_lt()) {
        return Err(Failure::usage("--cap must be positive"));
    }
    let cap = args.cap as usize;
    writeln!(out, "ring {} (order {}), n = {}", ring.name(), ring.size(), args.n)?;
    writeln!(out, "A = {}", describe(ring, &a))?;
    writeln!(out, "B = {}", describe(ring, &b))?;
    writeln!(out, "AB+BA = {}", describe(ring, &FiniteIdeal::symmetric_product(ring, &a, &b)))?;
    let checks: Vec<Verifier> = match args.check {
        CheckKind::Theorem1 => vec![verify_theorem1],
        CheckKind::Theorem2 => vec![verify_theorem2],
        CheckKind::Lemma6 => vec![verify_lemma6],
        CheckKind::All => vec![verify_theorem1, verify_theorem2, verify_lemma6],
    };
    let mut code = EXIT_PASS;
    for check in checks {
        let rep = check(&ctx, &a, &b, cap)?;
        writeln!(
            out,
            "{} {}: |{}| = {}, |{}| = {}",
            if rep.equal { "EQUAL" } else { "DIFFERENT" },
            rep.claim,
            rep.lhs,
            rep.lhs_order,
            rep.rhs,
            rep.rhs_order
        )?;
        if !rep.equal {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}
