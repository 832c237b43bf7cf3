//! Command-line front end.
//!
//! Exit codes: 0 success or "true", 1 a mathematically negative answer,
//! 2 malformed input, 3 an internal limit such as exponent overflow.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::ideal::{parse_spec_file, Certificate, IdealError, ReductionResult, VarietySpec};
use crate::oracle::{oracle_check, OracleVerdict, SampleConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::poly::{delta_expand, PolyError, Polynomial};
use crate::text::{parse_poly, print_poly, VarSymbolTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus {
    pub code: i32,
}

impl ExitStatus {
    pub const SUCCESS: ExitStatus = ExitStatus { code: 0 };
    pub const FALSE: ExitStatus = ExitStatus { code: 1 };
    pub const INPUT_ERROR: ExitStatus = ExitStatus { code: 2 };
    pub const LIMIT: ExitStatus = ExitStatus { code: 3 };
}

#[derive(Debug, Parser)]
#[command(
    name = "monovar",
    version,
    about = "Ideal membership, certificates and dimension for monomial graph varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand Δ_i(u, v) = Σ_{j<i} u^(i-1-j) v^j
    Delta {
        i: u32,
        /// Variable name tN used as u
        u: String,
        /// Polynomial v, or `-` for stdin
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Print the normal form (image under the substitution map)
    Reduce {
        #[arg(long)]
        spec: PathBuf,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Decide membership in the ideal of the variety
    Member(MemberArgs),
    /// Same as `member --certify`
    Certify(MemberArgs),
    /// Check a cofactor certificate file against a polynomial
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(allow_hyphen_values = true)]
        poly: String,
        certificate: PathBuf,
    },
    /// Print the dimension of the variety
    Dim {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Polynomial, or `-` for stdin
    #[arg(allow_hyphen_values = true)]
    pub poly: String,
    /// Print the cofactors g_j
    #[arg(long)]
    pub certify: bool,
    /// Cross-check by evaluating at sampled points of the variety
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Input(_) => ExitStatus::INPUT_ERROR,
            CliError::Limit(_) => ExitStatus::LIMIT,
            CliError::Io(_) => ExitStatus::INPUT_ERROR,
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::Poly(PolyError::ExponentOverflow) => CliError::Limit(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        IdealError::from(e).into()
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn poly_text(&mut self, arg: &str) -> Result<String, CliError> {
        if arg == "-" {
            let mut buf = String::new();
            self.stdin.read_to_string(&mut buf)?;
            Ok(buf.trim().to_string())
        } else {
            Ok(arg.to_string())
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<VarietySpec, CliError> {
    let text = read_file(path)?;
    parse_spec_file(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_in(text: &str, vars: &VarSymbolTable) -> Result<Polynomial, CliError> {
    parse_poly(text, vars).map_err(|e| CliError::Input(format!("{e} in {text:?}")))
}

/// Smallest `n` such that every `tN` mentioned in `texts` is among `t1..tn`.
fn infer_ambient<'a>(texts: impl IntoIterator<Item = &'a str>) -> usize {
    let mut n = 0;
    for text in texts {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                if let Some(idx) = word.strip_prefix('t').and_then(|d| d.parse::<usize>().ok()) {
                    if idx >= 1 && !word[1..].starts_with('0') {
                        n = n.max(idx);
                    }
                }
            } else {
                i += 1;
            }
        }
    }
    n
}

fn cmd_delta(io: &mut Io<'_>, i: u32, u: &str, v: &str) -> Result<ExitStatus, CliError> {
    let v_text = io.poly_text(v)?;
    let n = infer_ambient([u, v_text.as_str()]);
    let vars = VarSymbolTable::standard(n);
    let u_index = vars
        .index_of(u)
        .ok_or_else(|| CliError::Input(format!("u must be a variable tN, found {u:?}")))?;
    let v_poly = parse_in(&v_text, &vars)?;
    let delta = delta_expand(i, u_index, &v_poly)?;
    writeln!(io.stdout, "{}", print_poly(&delta, &vars))?;
    Ok(ExitStatus::SUCCESS)
}

fn cmd_reduce(io: &mut Io<'_>, spec: &Path, poly: &str) -> Result<ExitStatus, CliError> {
    let spec = load_spec(spec)?;
    let f = parse_in(&io.poly_text(poly)?, &VarSymbolTable::standard(spec.n()))?;
    let nf = spec.normal_form(&f)?;
    writeln!(
        io.stdout,
        "{}",
        print_poly(&nf, &VarSymbolTable::standard(spec.m()))
    )?;
    Ok(ExitStatus::SUCCESS)
}

fn format_point(point: &[crate::rational::Rational]) -> String {
    let coords: Vec<String> = point.iter().map(ToString::to_string).collect();
    format!("({})", coords.join(", "))
}

fn cmd_member(io: &mut Io<'_>, args: &MemberArgs, certify: bool) -> Result<ExitStatus, CliError> {
    let spec = load_spec(&args.spec)?;
    let vars_n = VarSymbolTable::standard(spec.n());
    let vars_m = VarSymbolTable::standard(spec.m());
    let f = parse_in(&io.poly_text(&args.poly)?, &vars_n)?;
    let result = if certify {
        spec.certify(&f)?
    } else {
        ReductionResult {
            normal_form: spec.normal_form(&f)?,
            certificate: Certificate::zero(&spec),
        }
    };
    let member = result.normal_form.is_zero();
    writeln!(
        io.stdout,
        "{}",
        if member { "MEMBER" } else { "NON-MEMBER" }
    )?;
    writeln!(
        io.stdout,
        "normal form: {}",
        print_poly(&result.normal_form, &vars_m)
    )?;
    if certify {
        for (j, g) in result.certificate.cofactors.iter().enumerate() {
            writeln!(io.stdout, "g{} = {}", j + 1, print_poly(g, &vars_n))?;
        }
    }
    let mut status = if member {
        ExitStatus::SUCCESS
    } else {
        ExitStatus::FALSE
    };
    if args.oracle {
        let cfg = SampleConfig::with_seed(args.samples, args.seed)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let verdict = oracle_check(&spec, &f, &cfg)?;
        let line = match (&verdict, member) {
            (OracleVerdict::VanishesOnSamples { samples }, true) => {
                format!("vanishes at all {samples} samples (agrees)")
            }
            (OracleVerdict::VanishesOnSamples { samples }, false) => {
                format!("vanishes at all {samples} samples (inconclusive)")
            }
            (
                OracleVerdict::Witness {
                    index,
                    point,
                    value,
                },
                false,
            ) => format!(
                "nonzero value {value} at sample {index}, point {} (agrees)",
                format_point(point)
            ),
            (
                OracleVerdict::Witness {
                    index,
                    point,
                    value,
                },
                true,
            ) => {
                status = ExitStatus::LIMIT;
                format!(
                    "nonzero value {value} at sample {index}, point {} (CONTRADICTION)",
                    format_point(point)
                )
            }
        };
        writeln!(io.stdout, "oracle: {line}")?;
    }
    Ok(status)
}

/// Reads `k` cofactors, one per line.
///
/// Lines are either bare polynomials or labelled `gJ = <poly>`. If any
/// labelled line is present, only labelled lines are read, so the output of
/// `member --certify` can be fed back directly. Blank lines and `#` comments
/// are skipped.
pub fn parse_certificate_file(text: &str, spec: &VarietySpec) -> Result<Certificate, CliError> {
    let vars = VarSymbolTable::standard(spec.n());
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let labelled: Vec<(usize, usize, &str)> = lines
        .iter()
        .filter_map(|&(no, l)| {
            let (head, body) = l.split_once('=')?;
            let j = head.trim().strip_prefix('g')?.parse::<usize>().ok()?;
            Some((no, j, body.trim()))
        })
        .collect();
    let parse_line = |no: usize, body: &str| {
        parse_poly(body, &vars).map_err(|e| CliError::Input(format!("certificate line {no}: {e}")))
    };
    let mut cofactors: Vec<Option<Polynomial>> = vec![None; spec.k()];
    if labelled.is_empty() {
        if lines.len() != spec.k() {
            return Err(CliError::Input(format!(
                "certificate has {} cofactors, expected k = {}",
                lines.len(),
                spec.k()
            )));
        }
        for (slot, &(no, body)) in cofactors.iter_mut().zip(&lines) {
            *slot = Some(parse_line(no, body)?);
        }
    } else {
        for (no, j, body) in labelled {
            let slot = cofactors.get_mut(j.wrapping_sub(1)).ok_or_else(|| {
                CliError::Input(format!(
                    "certificate line {no}: g{j} out of range 1..={}",
                    spec.k()
                ))
            })?;
            if slot.is_some() {
                return Err(CliError::Input(format!(
                    "certificate line {no}: g{j} given twice"
                )));
            }
            *slot = Some(parse_line(no, body)?);
        }
    }
    let cofactors = cofactors
        .into_iter()
        .enumerate()
        .map(|(j, g)| {
            g.ok_or_else(|| CliError::Input(format!("certificate is missing g{}", j + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate { cofactors })
}

fn cmd_verify(
    io: &mut Io<'_>,
    spec: &Path,
    poly: &str,
    cert: &Path,
) -> Result<ExitStatus, CliError> {
    let spec = load_spec(spec)?;
    let vars = VarSymbolTable::standard(spec.n());
    let f = parse_in(&io.poly_text(poly)?, &vars)?;
    let certificate = parse_certificate_file(&read_file(cert)?, &spec)?;
    let result = ReductionResult {
        normal_form: Polynomial::zero(spec.m()),
        certificate,
    };
    let residual = spec.residual(&f, &result)?;
    if residual.is_zero() {
        writeln!(io.stdout, "VALID")?;
        Ok(ExitStatus::SUCCESS)
    } else {
        writeln!(io.stdout, "INVALID")?;
        writeln!(io.stdout, "residual: {}", print_poly(&residual, &vars))?;
        Ok(ExitStatus::FALSE)
    }
}

fn cmd_dim(io: &mut Io<'_>, spec: &Path) -> Result<ExitStatus, CliError> {
    let spec = load_spec(spec)?;
    let m = spec.dimension();
    writeln!(io.stdout, "dim = {m}")?;
    if m == 1 {
        writeln!(io.stdout, "F[V] ≅ F[t1]")?;
    } else {
        writeln!(io.stdout, "F[V] ≅ F[t1..t{m}]")?;
    }
    Ok(ExitStatus::SUCCESS)
}

pub fn execute(
    cli: &Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let mut io = Io { stdin, stdout };
    match &cli.command {
        Command::Delta { i, u, v } => cmd_delta(&mut io, *i, u, v),
        Command::Reduce { spec, poly } => cmd_reduce(&mut io, spec, poly),
        Command::Member(args) => cmd_member(&mut io, args, args.certify),
        Command::Certify(args) => cmd_member(&mut io, args, true),
        Command::Verify {
            spec,
            poly,
            certificate,
        } => cmd_verify(&mut io, spec, poly, certificate),
        Command::Dim { spec } => cmd_dim(&mut io, spec),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                ExitStatus::INPUT_ERROR
            } else {
                let _ = write!(stdout, "{e}");
                ExitStatus::SUCCESS
            };
            return status;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.status()
        }
    }
}
