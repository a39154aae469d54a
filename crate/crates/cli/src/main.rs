//! `qinv`: local-unitary invariants of two-qubit states from the command line.
//!
//! Exit codes: 0 ok / equivalent, 1 check failed / not equivalent, 2 parse or
//! usage error, 3 class mismatch, 4 degenerate input / indeterminate.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qubit_invariants::invariants::{
    lmm_bounds_check, lmm_invariants, lmm_positivity_from_invariants, lmm_section_invariants,
    octahedral_invariants, sym_invariants, BOUNDS_TOL,
};
use qubit_invariants::linalg::{RMat3, RVec3};
use qubit_invariants::io::{parse_state, write_state, StateFile};
use qubit_invariants::orbit::{decide_equiv_lmm, decide_equiv_sym, lmm_canonical, sym_canonical, Verdict};
use qubit_invariants::states::{bloch_of, density_of, is_positive, random_state, BlochMatrix, StateClass, DEFAULT_CLASS_TOL};
use qubit_invariants::verify::{run_suite, Mutation, Suite, DEFAULT_SAMPLES};
use qubit_invariants::Error;

#[derive(Parser)]
#[command(name = "qinv", version, about = "Local-unitary invariants of two-qubit mixed states")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Relative tolerance for equivalence decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Seed for `random` and `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance for detecting LMM and symmetric states.
    #[arg(long, global = true, default_value_t = DEFAULT_CLASS_TOL)]
    class_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the invariants supported by the state's class.
    Invariants {
        file: PathBuf,
        /// Require this class instead of auto-detecting.
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
    },
    /// Decide whether two states are related by a local unitary.
    Equiv { first: PathBuf, second: PathBuf },
    /// Canonical form and the rotation witness reaching it.
    Canonical { file: PathBuf },
    /// Draw a random state in Bloch form.
    Random {
        #[arg(long, value_enum, default_value_t = ClassArg::General)]
        class: ClassArg,
        /// Draw a positive semidefinite state.
        #[arg(long)]
        positive: bool,
    },
    /// Coordinates of the state on the diagonal section.
    Restrict { file: PathBuf },
    /// Run the seeded property battery.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES as u64, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, value_enum, default_value_t = MutationArg::None, hide = true)]
        mutation: MutationArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    General,
    Lmm,
    Sym,
    SymLmm,
}

impl From<ClassArg> for StateClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::General => StateClass::General,
            ClassArg::Lmm => StateClass::Lmm,
            ClassArg::Sym => StateClass::Symmetric,
            ClassArg::SymLmm => StateClass::SymmetricLmm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    None,
    PerturbP9,
    SkipSvdSignFix,
}

const OK: u8 = 0;
const FAIL: u8 = 1;
const PARSE: u8 = 2;
const CLASS_MISMATCH: u8 = 3;
const DEGENERATE: u8 = 4;

/// A command failure: exit code plus message for stderr.
struct Failure(u8, String);

type Outcome = Result<(Value, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariants { file, class } => cmd_invariants(&cli, file, *class),
        Command::Equiv { first, second } => cmd_equiv(&cli, first, second),
        Command::Canonical { file } => cmd_canonical(&cli, file),
        Command::Random { class, positive } => {
            let rho = random_state((*class).into(), cli.seed, *positive);
            match bloch_of(&rho) {
                Ok(b) => {
                    println!("{}", write_state(&StateFile::Bloch(b)));
                    return ExitCode::from(OK);
                }
                Err(e) => Err(Failure(FAIL, e.to_string())),
            }
        }
        Command::Restrict { file } => cmd_restrict(&cli, file),
        Command::Verify { suite, samples, mutation } => return cmd_verify(&cli, suite, *samples as usize, *mutation),
    };
    match result {
        Ok((value, code)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&value).expect("finite values"));
            } else {
                print_plain(&value, "");
            }
            ExitCode::from(code)
        }
        Err(Failure(code, message)) => {
            eprintln!("qinv: {message}");
            ExitCode::from(code)
        }
    }
}

fn print_plain(value: &Value, prefix: &str) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match v {
                    Value::Object(_) => print_plain(v, &key),
                    _ => println!("{key} = {}", plain_scalar(v)),
                }
            }
        }
        other => println!("{}", plain_scalar(other)),
    }
}

fn plain_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn load(path: &Path) -> Result<BlochMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(PARSE, format!("{}: {e}", path.display())))?;
    let state = parse_state(&text).map_err(|e| Failure(PARSE, format!("{}: {e}", path.display())))?;
    state.bloch().map_err(|e| Failure(PARSE, format!("{}: {e}", path.display())))
}

fn class_name(c: StateClass) -> &'static str {
    match c {
        StateClass::General => "general",
        StateClass::Lmm => "lmm",
        StateClass::Symmetric => "symmetric",
        StateClass::SymmetricLmm => "symmetric_lmm",
    }
}

fn degenerate(e: Error) -> Failure {
    match e {
        Error::DegenerateSpectrum { .. } | Error::ZeroVector => Failure(DEGENERATE, format!("degenerate input: {e}")),
        other => Failure(PARSE, other.to_string()),
    }
}

fn to_object(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(m) => m,
        _ => unreachable!("records serialize to objects"),
    }
}

fn cmd_invariants(cli: &Cli, file: &Path, requested: Option<ClassArg>) -> Outcome {
    let b = load(file)?;
    let detected = b.class(cli.class_tol);
    let (want_lmm, want_sym) = match requested.map(StateClass::from) {
        None => (detected.is_lmm(), detected.is_symmetric()),
        Some(StateClass::General) => (false, false),
        Some(c) => (c.is_lmm(), c.is_symmetric()),
    };
    if (want_lmm && !detected.is_lmm()) || (want_sym && !detected.is_symmetric()) {
        return Err(Failure(
            CLASS_MISMATCH,
            format!("state is {}, not {}", class_name(detected), class_name(requested.expect("override").into())),
        ));
    }
    if !want_lmm && !want_sym {
        return Err(Failure(CLASS_MISMATCH, "no invariants for general states; expected an LMM or symmetric state".into()));
    }
    let mut out = Map::new();
    out.insert("class".into(), json!(class_name(detected)));
    if want_lmm {
        let t = lmm_invariants(&b.c);
        out.extend(to_object(json!(t)));
        let positive = is_positive(&density_of(&b));
        out.insert("positive".into(), json!(positive));
        if positive {
            out.insert("bounds_ok".into(), json!(lmm_bounds_check(&t)));
            out.insert("positivity_ok".into(), json!(lmm_positivity_from_invariants(&t, BOUNDS_TOL)));
        }
    }
    if want_sym {
        let (v, a) = symmetric_part(&b);
        match sym_invariants(&v, &a) {
            Ok(s) => out.extend(to_object(json!(s))),
            // Symmetric LMM states have v = 0; their LMM invariants stand alone.
            Err(e) if !want_lmm || requested.is_some_and(|c| matches!(c, ClassArg::Sym | ClassArg::SymLmm)) => {
                return Err(degenerate(e))
            }
            Err(_) => {}
        }
    }
    Ok((Value::Object(out), OK))
}

/// `((u + v)/2, (C + Cᵀ)/2)`, exact for symmetric states.
fn symmetric_part(b: &BlochMatrix) -> (RVec3, RMat3) {
    let v = b.u.scale(0.5) + b.v.scale(0.5);
    let a = (b.c + b.c.transpose()).scale(0.5);
    (v, a)
}

fn cmd_equiv(cli: &Cli, first: &Path, second: &Path) -> Outcome {
    let (b1, b2) = (load(first)?, load(second)?);
    let (k1, k2) = (b1.class(cli.class_tol), b2.class(cli.class_tol));
    let verdict = if k1.is_lmm() && k2.is_lmm() {
        decide_equiv_lmm(&b1.c, &b2.c, cli.tol)
    } else if k1.is_symmetric() && k2.is_symmetric() {
        let (s1, s2) = (symmetric_part(&b1), symmetric_part(&b2));
        decide_equiv_sym((&s1.0, &s1.1), (&s2.0, &s2.1), cli.tol)
    } else {
        return Err(Failure(
            CLASS_MISMATCH,
            format!("states are {} and {}; both must be LMM or both symmetric", class_name(k1), class_name(k2)),
        ));
    };
    let code = match verdict.verdict {
        Verdict::Equivalent => OK,
        Verdict::NotEquivalent => FAIL,
        Verdict::Indeterminate => DEGENERATE,
    };
    Ok((serde_json::to_value(verdict).expect("finite values"), code))
}

fn cmd_canonical(cli: &Cli, file: &Path) -> Outcome {
    let b = load(file)?;
    let class = b.class(cli.class_tol);
    let mut out = Map::new();
    out.insert("class".into(), json!(class_name(class)));
    if class.is_lmm() {
        let f = lmm_canonical(&b.c);
        out.extend(to_object(json!(f)));
        Ok((Value::Object(out), if f.degenerate { DEGENERATE } else { OK }))
    } else if class.is_symmetric() {
        let (v, a) = symmetric_part(&b);
        let f = sym_canonical(&v, &a).map_err(degenerate)?;
        out.extend(to_object(json!(f)));
        Ok((Value::Object(out), OK))
    } else {
        Err(Failure(CLASS_MISMATCH, "canonical forms exist for LMM and symmetric states only".into()))
    }
}

fn cmd_restrict(cli: &Cli, file: &Path) -> Outcome {
    let b = load(file)?;
    let class = b.class(cli.class_tol);
    let mut out = Map::new();
    out.insert("class".into(), json!(class_name(class)));
    if class.is_lmm() {
        let f = lmm_canonical(&b.c);
        if f.diag.iter().all(|d| *d == 0.0) {
            return Err(Failure(DEGENERATE, "degenerate input: correlation matrix vanishes".into()));
        }
        let x = RVec3(f.diag);
        out.insert("x".into(), json!(f.diag));
        out.extend(to_object(json!(lmm_section_invariants(&x))));
        out.insert("witness".into(), serde_json::to_value(f.witness).expect("finite values"));
        Ok((Value::Object(out), OK))
    } else if class.is_symmetric() {
        let (v, a) = symmetric_part(&b);
        let f = sym_canonical(&v, &a).map_err(degenerate)?;
        let oct = octahedral_invariants(&f.w).map_err(degenerate)?;
        out.insert("w".into(), json!(f.w));
        out.insert("lambda".into(), json!(f.eigs));
        out.extend(to_object(json!(oct)));
        out.insert("witness".into(), json!({ "R": f.witness }));
        Ok((Value::Object(out), OK))
    } else {
        Err(Failure(CLASS_MISMATCH, "sections exist for LMM and symmetric states only".into()))
    }
}

fn cmd_verify(cli: &Cli, suite: &str, samples: usize, mutation: MutationArg) -> ExitCode {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        match Suite::from_name(suite) {
            Some(s) => vec![s],
            None => {
                eprintln!("qinv: unknown suite `{suite}` (expected all, bloch, lmm, sym, group or orbit)");
                return ExitCode::from(PARSE);
            }
        }
    };
    let mutation = match mutation {
        MutationArg::None => Mutation::None,
        MutationArg::PerturbP9 => Mutation::PerturbP9,
        MutationArg::SkipSvdSignFix => Mutation::SkipSvdSignFix,
    };
    let reports: Vec<_> = suites.into_iter().map(|s| run_suite(s, samples, cli.seed, mutation)).collect();
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("finite values"));
    } else {
        for r in &reports {
            print!("{}", r.table());
        }
    }
    for r in &reports {
        eprintln!("qinv: suite {} took {:.2} s", r.suite.name(), r.wall_time_s);
    }
    ExitCode::from(if reports.iter().all(|r| r.passed) { OK } else { FAIL })
}
