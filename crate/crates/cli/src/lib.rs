//! The `matk0` command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 invalid matroid,
//! 3 capacity exceeded, 4 a `check` found a disagreement.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matk0::io;
use matk0::iso::automorphism_count;
use matk0::kzero::k0_class_with;
use matk0::tutte::{tutte_dc, tutte_direct};
use matk0::{
    common_refinement, indecomposable_covering, ElementClass, Error, Execution, Matroid,
    MemoPolicy, Multigraph, PivotStrategy, TutteCovering, TuttePolynomial,
};

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVALID_MATROID: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "matk0",
    version,
    about = "Tutte polynomials, deletion-contraction trees and K0 classes of matroids"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Print the Tutte polynomial.
    Tutte(Common),
    /// Emit a fully expanded deletion-contraction tree.
    Tree(Common),
    /// Emit the indecomposable covering witnessed by a full tree.
    Cover(Common),
    /// Common refinement of two covering files over the same matroid.
    Refine {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the class in K0.
    K0(Common),
    /// Compare both Tutte engines and re-validate the axioms.
    Check(Common),
    /// Rank, element classes, indecomposability and automorphism count.
    Info(Common),
}

#[derive(Args, Debug)]
struct Common {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Engine::DcMemo)]
    engine: Engine,
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long = "input-kind", value_enum)]
    input_kind: Option<InputKind>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Engine {
    Direct,
    Dc,
    DcMemo,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum StrategyArg {
    MinIndex,
    MaxIndex,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputKind {
    Matroid,
    Graph,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::CapacityExceeded { .. } => EXIT_CAPACITY,
            e if e.is_invalid_matroid() => EXIT_INVALID_MATROID,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_PARSE
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli.verb) {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(verb: Verb) -> Outcome {
    match verb {
        Verb::Tutte(c) => {
            let fmt = format_for(c.format, Format::Text, &[Format::Text, Format::Json])?;
            let strategy = strategy(&c)?;
            let m = load(&c)?;
            let p = match c.engine {
                Engine::Direct => tutte_direct(&m)?,
                Engine::Dc => tutte_dc(&m, strategy, MemoPolicy::None)?,
                Engine::DcMemo => tutte_dc(&m, strategy, MemoPolicy::Exact)?,
            };
            Ok((poly_out(&p, fmt), 0))
        }
        Verb::Tree(c) => {
            let fmt = format_for(c.format, Format::Json, &[Format::Json, Format::Dot])?;
            let strategy = strategy(&c)?;
            let cover = indecomposable_covering(Arc::new(load(&c)?), strategy);
            Ok(match fmt {
                Format::Dot => (io::tree_to_dot(cover.witness()), 0),
                _ => (json_out(&io::tree_to_json(cover.witness())), 0),
            })
        }
        Verb::Cover(c) => {
            let fmt = format_for(c.format, Format::Json, &[Format::Json, Format::Text])?;
            let strategy = strategy(&c)?;
            let cover = indecomposable_covering(Arc::new(load(&c)?), strategy);
            Ok(match fmt {
                Format::Text => (cover_text(&cover), 0),
                _ => (json_out(&io::covering_to_json(&cover)), 0),
            })
        }
        Verb::Refine {
            first,
            second,
            format,
        } => {
            let fmt = format_for(format, Format::Json, &[Format::Json, Format::Text])?;
            let a = io::parse_covering(&read(&first)?)?;
            let b = io::parse_covering(&read(&second)?)?;
            let r = common_refinement(&a, &b)?;
            if let Err(e) = r.verify(&a, &b) {
                return Err(Failure {
                    code: EXIT_CHECK_FAILED,
                    message: format!("refinement failed verification: {e}"),
                });
            }
            Ok(match fmt {
                Format::Text => (cover_text(&r.covering), 0),
                _ => (json_out(&io::common_refinement_to_json(&r)), 0),
            })
        }
        Verb::K0(c) => {
            let fmt = format_for(c.format, Format::Json, &[Format::Json, Format::Text])?;
            let strategy = strategy(&c)?;
            let k = k0_class_with(&load(&c)?, strategy, Execution::default());
            Ok(match fmt {
                Format::Text => (format!("{k}\n"), 0),
                _ => (json_out(&k.to_json()), 0),
            })
        }
        Verb::Check(c) => {
            let fmt = format_for(c.format, Format::Text, &[Format::Text, Format::Json])?;
            let strategy = strategy(&c)?;
            check(&load(&c)?, strategy, fmt)
        }
        Verb::Info(c) => {
            let fmt = format_for(c.format, Format::Text, &[Format::Text, Format::Json])?;
            Ok((info(&load(&c)?, fmt)?, 0))
        }
    }
}

fn format_for(
    given: Option<Format>,
    default: Format,
    allowed: &[Format],
) -> std::result::Result<Format, Failure> {
    let f = given.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage(format!(
            "format `{}` is not available for this verb",
            f.to_possible_value().unwrap().get_name()
        )))
    }
}

fn strategy(c: &Common) -> std::result::Result<PivotStrategy, Failure> {
    match (c.strategy, c.seed) {
        (None, None) | (Some(StrategyArg::MinIndex), None) => Ok(PivotStrategy::MinIndex),
        (Some(StrategyArg::MaxIndex), None) => Ok(PivotStrategy::MaxIndex),
        (None, Some(s)) | (Some(StrategyArg::Random), Some(s)) => Ok(PivotStrategy::Seeded(s)),
        (Some(StrategyArg::Random), None) => Err(usage("--strategy random requires --seed")),
        (Some(_), Some(_)) => Err(usage("--seed only applies to --strategy random")),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load(c: &Common) -> std::result::Result<Matroid, Failure> {
    let kind = match c.input_kind {
        Some(k) => k,
        None => match c.input.extension().and_then(|e| e.to_str()) {
            Some("matroid") | Some("json") => InputKind::Matroid,
            Some("graph") => InputKind::Graph,
            _ => {
                return Err(usage(format!(
                    "cannot infer the input kind of {}; use --input-kind",
                    c.input.display()
                )))
            }
        },
    };
    let text = read(&c.input)?;
    Ok(match kind {
        InputKind::Matroid => io::parse_matroid(&text)?,
        InputKind::Graph => Multigraph::parse(&text)?.graphic_matroid()?,
    })
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn poly_out(p: &TuttePolynomial, fmt: Format) -> String {
    match fmt {
        Format::Json => json_out(&p.to_json()),
        _ => format!("{p}\n"),
    }
}

fn cover_text(c: &TutteCovering) -> String {
    let mut out = String::new();
    for (k, leg) in c.legs().iter().enumerate() {
        let src = leg.source();
        let class = src
            .indecomposable_class()
            .map(|c| c.to_string())
            .unwrap_or_else(|_| "decomposable".into());
        let _ = writeln!(out, "leg {k}: {class} on {{{}}}", src.labels().join(","));
    }
    out
}

fn check(m: &Matroid, strategy: PivotStrategy, fmt: Format) -> Outcome {
    let direct = tutte_direct(m)?;
    let dc = tutte_dc(m, strategy, MemoPolicy::None)?;
    let memo = tutte_dc(m, strategy, MemoPolicy::Exact)?;
    let axioms = m.validate_axioms();
    let results = [
        ("axioms", axioms.as_ref().err().map(ToString::to_string)),
        ("dc", (dc != direct).then(|| format!("{dc} != {direct}"))),
        (
            "dc-memo",
            (memo != direct).then(|| format!("{memo} != {direct}")),
        ),
    ];
    let ok = results.iter().all(|(_, r)| r.is_none());
    let code = if ok { 0 } else { EXIT_CHECK_FAILED };
    let text = match fmt {
        Format::Json => json_out(&json!({
            "ok": ok,
            "tutte": direct.to_string(),
            "checks": results
                .iter()
                .map(|(name, r)| json!({"name": name, "ok": r.is_none(), "detail": r}))
                .collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!("tutte: {direct}\n");
            for (name, r) in &results {
                match r {
                    None => {
                        let _ = writeln!(s, "{name}: ok");
                    }
                    Some(d) => {
                        let _ = writeln!(s, "{name}: FAILED ({d})");
                    }
                }
            }
            s
        }
    };
    Ok((text, code))
}

fn class_name(c: ElementClass) -> &'static str {
    match c {
        ElementClass::Loop => "loop",
        ElementClass::Coloop => "coloop",
        ElementClass::NonDegenerate => "non-degenerate",
    }
}

fn info(m: &Matroid, fmt: Format) -> std::result::Result<String, Failure> {
    let class = m.indecomposable_class().ok();
    let automorphisms = match automorphism_count(m) {
        Ok(n) => Some(n.to_string()),
        Err(Error::CapacityExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let elements: Vec<(&str, &str)> = (0..m.len())
        .map(|i| (m.ground().label(i), class_name(m.classify_index(i))))
        .collect();
    Ok(match fmt {
        Format::Json => json_out(&json!({
            "elements": m.len(),
            "rank": m.rank(),
            "bases": m.basis_count(),
            "classes": elements
                .iter()
                .map(|(l, c)| json!({"element": l, "class": c}))
                .collect::<Vec<_>>(),
            "indecomposable": class.is_some(),
            "class": class.map(|c| json!({"loops": c.loops, "coloops": c.coloops})),
            "automorphisms": automorphisms,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "elements: {}", m.len());
            let _ = writeln!(s, "rank: {}", m.rank());
            let _ = writeln!(s, "bases: {}", m.basis_count());
            for (l, c) in &elements {
                let _ = writeln!(s, "  {l}: {c}");
            }
            match class {
                Some(c) => {
                    let _ = writeln!(s, "indecomposable: yes {c}");
                }
                None => {
                    let _ = writeln!(s, "indecomposable: no");
                }
            }
            match automorphisms {
                Some(n) => {
                    let _ = writeln!(s, "automorphisms: {n}");
                }
                None => {
                    let _ = writeln!(s, "automorphisms: not computed (ground set too large)");
                }
            }
            s
        }
    })
}
