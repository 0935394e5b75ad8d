//! Command-line front end. [`run`] is pure: it returns the exit code and
//! both output streams instead of printing, so the binary is a thin shim.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use crate::dedekind::dedekind_fast;
use crate::error::Error;
use crate::lens::{chain_to_lens, lens_lambda, verify_sweeps, ChainPresentation, LensSpace};
use crate::lescop::{h1_order, lescop_lambda, walker_lambda};
use crate::link::{parse_link, FramedLink};
use crate::linalg::{parse_rational, Rational};
use crate::moves::{mirror_lambda, parse_path, step_deltas, tn_path};

/// Above this many components the CLI warns about the `3^n` cost.
pub const LARGE_LINK_WARN: usize = 10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cwl",
    version,
    about = "Exact Casson-Walker-Lescop invariants of surgery on framed links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Casson-Walker-Lescop invariant of surgery on a .lnk link
    Lambda { file: PathBuf },
    /// Casson-Walker invariant (rational homology spheres only)
    Walker { file: PathBuf },
    /// Order of the first homology, 0 if infinite
    H1 { file: PathBuf },
    /// Per-step and total lambda change along a path file
    Delta { file: PathBuf },
    /// Dedekind sum s(P, Q)
    Dedekind {
        #[arg(allow_hyphen_values = true)]
        p: String,
        q: String,
    },
    /// lambda of the lens space L(P, Q)
    Lens { p: String, q: String },
    /// Lens space of a surgery chain a1 - 1/(a2 - ... - 1/(ak - tail))
    #[command(allow_negative_numbers = true)]
    Chain {
        #[arg(required = true)]
        coeffs: Vec<String>,
        #[arg(long, allow_hyphen_values = true, value_name = "P/Q")]
        tail: Option<String>,
    },
    /// lambda of T(N) with framings (S, -S) via the crossing-change path
    Tn {
        n: String,
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// Run the lens-space family checks
    Verify {
        #[arg(long, default_value_t = 50)]
        max_r: i64,
        #[arg(long, default_value_t = 8)]
        max_nb: i64,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn integer(s: &str) -> Res<BigInt> {
    s.parse()
        .map_err(|_| Failure(format!("malformed integer `{s}`")))
}

fn rational(s: &str) -> Res<Rational> {
    parse_rational(s).ok_or_else(|| Failure(format!("malformed rational `{s}`")))
}

fn read(file: &PathBuf) -> Res<String> {
    std::fs::read_to_string(file).map_err(|e| Failure(format!("{}: {e}", file.display())))
}

fn load_link(file: &PathBuf, err: &mut String) -> Res<FramedLink> {
    let text = read(file)?;
    let link = parse_link(&text).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
    if link.n() > LARGE_LINK_WARN {
        writeln!(
            err,
            "warning: {} components; the surgery formula costs O(3^n)",
            link.n()
        )
        .unwrap();
    }
    Ok(link)
}

fn dispatch(cmd: Command, out: &mut String, err: &mut String) -> Res<i32> {
    match cmd {
        Command::Lambda { file } => {
            let link = load_link(&file, err)?;
            let defaulted = link.defaulted_a1_keys();
            if !defaulted.is_empty() {
                let keys: Vec<String> = defaulted.iter().map(|k| k.to_string()).collect();
                writeln!(err, "warning: a1 defaulted to 0 for sublinks {{{}}}", keys.join("} {")).unwrap();
            }
            writeln!(out, "{}", lescop_lambda(&link)).unwrap();
        }
        Command::Walker { file } => {
            let link = load_link(&file, err)?;
            writeln!(out, "{}", walker_lambda(&link)?).unwrap();
        }
        Command::H1 { file } => {
            let link = load_link(&file, err)?;
            writeln!(out, "{}", h1_order(&link)).unwrap();
        }
        Command::Delta { file } => {
            let text = read(&file)?;
            let path = parse_path(&text).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
            let deltas = step_deltas(&path)?;
            for (k, d) in deltas.iter().enumerate() {
                writeln!(out, "step {} {d}", k + 1).unwrap();
            }
            let total: Rational = deltas.into_iter().sum();
            writeln!(out, "total {total}").unwrap();
        }
        Command::Dedekind { p, q } => {
            writeln!(out, "{}", dedekind_fast(&integer(&p)?, &integer(&q)?)?).unwrap();
        }
        Command::Lens { p, q } => {
            let lens = LensSpace::new(integer(&p)?, integer(&q)?)?;
            writeln!(out, "{}", lens_lambda(&lens)).unwrap();
        }
        Command::Chain { coeffs, tail } => {
            let coeffs = coeffs.iter().map(|c| integer(c)).collect::<Res<Vec<_>>>()?;
            let tail = tail.as_deref().map(rational).transpose()?;
            let (p, q) = chain_to_lens(&ChainPresentation::new(coeffs, tail)?)?;
            writeln!(out, "L({p}, {q})").unwrap();
            match LensSpace::new(p, q) {
                Ok(lens) => writeln!(out, "{}", lens_lambda(&lens)).unwrap(),
                Err(e) => writeln!(err, "note: {e}").unwrap(),
            }
        }
        Command::Tn { n, s } => {
            let n: i64 = n
                .parse()
                .map_err(|_| Failure(format!("malformed integer `{n}`")))?;
            let path = tn_path(n, rational(&s)?)?;
            writeln!(out, "{}", mirror_lambda(&path)?).unwrap();
        }
        Command::Verify { max_r, max_nb } => {
            if max_r < 1 || max_nb < 1 {
                return Err(Failure("--max-r and --max-nb must be at least 1".into()));
            }
            let report = verify_sweeps(max_r, max_nb);
            writeln!(out, "{report}").unwrap();
            if !report.passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                let first = text.lines().next().unwrap_or("usage error").to_string();
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("{first}\n"),
                }
            };
        }
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let code = match dispatch(cli.command, &mut stdout, &mut stderr) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            writeln!(stderr, "error: {msg}").unwrap();
            stdout.clear();
            EXIT_USAGE
        }
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}
