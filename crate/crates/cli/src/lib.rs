//! Command-line front end: `echar`, `eigen` and `verify` subcommands over
//! JSON tensor files.

pub mod document;
pub mod report;

use clap::{Parser, Subcommand, ValueEnum};
use document::{DocumentError, TensorDocument};
use echar_core::echar::{self, RouteRequest};
use echar_core::verify::{self, VerifyOptions};
use echar_core::{eigen, Error, Tensor};
use report::{EcharSection, EigenSection, Report, VerifySection};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "echar", version, about = "E-characteristic polynomials of hypermatrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the E-characteristic polynomial
    Echar {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// List eigenpair classes (dimension 2)
    Eigen { file: PathBuf },
    /// Check the closed-form identities on a file or on seeded random tensors
    Verify {
        #[arg(conflicts_with = "fuzz", required_unless_present = "fuzz")]
        file: Option<PathBuf>,
        /// number of random tensors
        #[arg(long, requires_all = ["seed", "m"])]
        fuzz: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// order of the random tensors
        #[arg(long)]
        m: Option<usize>,
        /// dimension of the random tensors
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    Sylvester,
    Det,
    Macaulay,
}

impl From<RouteArg> for RouteRequest {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Auto => RouteRequest::Auto,
            RouteArg::Sylvester => RouteRequest::Sylvester,
            RouteArg::Det => RouteRequest::Det,
            RouteArg::Macaulay => RouteRequest::Macaulay,
        }
    }
}

/// What a run produced; `main` writes the streams and exits with `code`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_VERIFY,
        Error::DimensionMismatch { .. }
        | Error::InvalidShape { .. }
        | Error::IndexOutOfRange { .. }
        | Error::IndexArity { .. } => EXIT_PARSE,
        _ => EXIT_UNSUPPORTED,
    }
}

fn load(path: &PathBuf) -> Result<Tensor, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::failure(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let doc = TensorDocument::parse(&text).map_err(|e| {
        let code = match &e {
            DocumentError::Tensor(inner) => exit_code(inner),
            _ => EXIT_PARSE,
        };
        Outcome::failure(code, format!("{}: {e}", path.display()))
    })?;
    doc.to_tensor().map_err(|e| Outcome::failure(EXIT_PARSE, e))
}

fn core<T>(r: echar_core::Result<T>) -> Result<T, Outcome> {
    r.map_err(|e| Outcome::failure(exit_code(&e), e))
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli.command, command) {
        Ok(o) | Err(o) => o,
    }
}

fn execute(cmd: Command, echo: Vec<String>) -> Result<Outcome, Outcome> {
    let mut report = Report {
        command: echo,
        echar: None,
        eigen: None,
        verify: None,
    };
    let mut summary = String::new();
    let mut code = EXIT_OK;
    match cmd {
        Command::Echar { file, route } => {
            let a = load(&file)?;
            let r = core(echar::echar_with(&a, route.into()))?;
            let s = EcharSection::from(&r);
            let _ = writeln!(summary, "route {}: psi = {}", s.route, render_poly(&s.coefficients));
            let _ = writeln!(
                summary,
                "constant term {} (predicted {}), degree bound {}",
                mark(s.a0_matches),
                s.a0_predicted,
                s.generic_degree
            );
            if let (Some(p), Some(ok)) = (&s.leading_predicted, s.leading_matches) {
                let _ = writeln!(summary, "leading coefficient {} (predicted {p})", mark(ok));
            }
            report.echar = Some(s);
        }
        Command::Eigen { file } => {
            let a = load(&file)?;
            let pairs = core(eigen::eigenpairs_n2(&a))?;
            let s = EigenSection::new(&a, &pairs);
            if s.infinitely_many {
                let _ = writeln!(summary, "infinitely many eigenpair classes");
            } else {
                let _ = writeln!(summary, "{} normalized, {} deficit", s.normalized, s.deficit);
                for row in &s.rows {
                    let z = if row.z_eigenvalue { "  Z" } else { "" };
                    let _ = writeln!(summary, "{:>10} x{} lambda = {}{z}", row.kind, row.multiplicity, row.lambda);
                }
            }
            report.eigen = Some(s);
        }
        Command::Verify { file, fuzz, seed, m, n } => {
            let section = match (file, fuzz) {
                (Some(path), _) => {
                    let a = load(&path)?;
                    let verdicts = core(verify::verify_tensor(&a, &VerifyOptions::default()))?;
                    VerifySection::from_file(&a, &verdicts)
                }
                (None, Some(count)) => {
                    let (seed, m) = (seed.expect("clap requires seed"), m.expect("clap requires m"));
                    let cases = core(verify::fuzz(seed, count, m, n, &VerifyOptions { seed, ..Default::default() }))?;
                    VerifySection::from_fuzz(seed, m, n, &cases)
                }
                (None, None) => unreachable!("clap requires a file or --fuzz"),
            };
            for (check, t) in &section.checks {
                let ok = t.failed == 0;
                let _ = writeln!(summary, "{} {check} ({} passed, {} failed)", mark(ok), t.passed, t.failed);
            }
            for case in &section.cases {
                if let Some(doc) = &case.counterexample {
                    let label = case.index.map_or("input".to_string(), |i| format!("case {i}"));
                    let _ = writeln!(summary, "counterexample ({label}):\n{}", doc.print());
                }
            }
            if !section.passed {
                code = EXIT_VERIFY;
            }
            report.verify = Some(section);
        }
    }
    let mut stdout = serde_json::to_string_pretty(&report).expect("report serializes");
    stdout.push('\n');
    Ok(Outcome { code, stdout, stderr: summary })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_poly(coeffs: &[String]) -> String {
    if coeffs.is_empty() {
        return "0 (identically zero)".into();
    }
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(k, c)| match k {
            0 => c.clone(),
            1 => format!("({c}) l"),
            _ => format!("({c}) l^{k}"),
        })
        .collect();
    terms.join(" + ")
}
