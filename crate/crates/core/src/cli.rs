//! Command-line front end.
//!
//! Exit codes: 0 success (or a minimal code for `check`), 3 the code was
//! verified to be non-minimal, 2 usage or input error, 1 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use crate::codes::{enumerate_code_with_cap, Codeword, MinimalityReport, DEFAULT_ENUMERATION_CAP};
use crate::construction::{
    build_g, build_g_omitted, build_g_scaled, demo_matrix, random_columns, ColumnKind, Demo,
    ScalingVector,
};
use crate::error::Error;
use crate::matrix::GeneratorMatrix;
use crate::ring::RingSpec;
use crate::structure::{verify_all, LemmaReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_MINIMAL: i32 = 3;

/// Environment variable that overrides the default enumeration cap.
pub const CAP_ENV: &str = "MINCODE_ENUM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "mincode",
    version,
    about = "Build and verify two-dimensional minimal linear codes over Z/p^n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a generator matrix in the text format.
    Construct {
        #[command(flatten)]
        blocks: BlockArgs,
        #[arg(long)]
        ring: u64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the code and check whether it is minimal.
    Check {
        #[command(flatten)]
        source: MatrixSource,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List every distinct codeword with its support.
    Enumerate {
        #[command(flatten)]
        source: MatrixSource,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustively check the unit / zero-divisor facts for a prime-power ring.
    VerifyLemmas {
        #[arg(long)]
        ring: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct BlockArgs {
    /// Extra columns for the A block, e.g. "2,0;0,2;2,2".
    #[arg(long)]
    pub extra: Option<String>,
    /// Append this many random extra columns (after --extra).
    #[arg(long, default_value_t = 0)]
    pub random_extra: usize,
    /// Seed for --random-extra.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Unit scalars for the canonical columns, e.g. "3,3,1,1,1,1".
    #[arg(long, conflicts_with = "omit")]
    pub scale: Option<String>,
    /// Omit a column kind: e1, e2, unit:U, dstar:D or d:D.
    #[arg(long)]
    pub omit: Option<ColumnKind>,
}

#[derive(Debug, Clone, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("matrix_source").required(true).multiple(false).args(["demo", "matrix", "ring"])))]
pub struct MatrixSource {
    /// Built-in matrix: z4, z6 or z3-conclusion.
    #[arg(long)]
    pub demo: Option<Demo>,
    /// Matrix file in the text format.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Build the canonical matrix over Z_M.
    #[arg(long)]
    pub ring: Option<u64>,
    #[command(flatten)]
    pub blocks: BlockArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of component evaluations (M^2 * m).
    #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Construct {
            blocks,
            ring,
            out: path,
        } => {
            let g = build_from_blocks(ring, &blocks)?;
            match path {
                Some(path) => std::fs::write(path, g.to_text())?,
                None => out.write_all(g.to_text().as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Check { source, output } => cmd_check(&source, &output, out),
        Command::Enumerate { source, output } => cmd_enumerate(&source, &output, out),
        Command::VerifyLemmas { ring, format } => cmd_verify_lemmas(ring, format, out),
    }
}

fn parse_list(text: &str, what: &str) -> std::result::Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Input(format!("bad {what} entry `{}`", t.trim())))
        })
        .collect()
}

/// Parses `"a,b;c,d"` into columns.
pub fn parse_columns(text: &str) -> Result<Vec<(u64, u64)>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(
            |col| match col.split(',').map(str::trim).collect::<Vec<_>>()[..] {
                [a, b] => match (a.parse(), b.parse()) {
                    (Ok(a), Ok(b)) => Ok((a, b)),
                    _ => Err(format!("bad column `{col}`")),
                },
                _ => Err(format!("column `{col}` must have two entries")),
            },
        )
        .collect()
}

fn build_from_blocks(
    modulus: u64,
    blocks: &BlockArgs,
) -> std::result::Result<GeneratorMatrix, Failure> {
    let ring = RingSpec::new(modulus)?;
    let mut extra = match &blocks.extra {
        Some(text) => parse_columns(text).map_err(Failure::Input)?,
        None => Vec::new(),
    };
    if blocks.random_extra > 0 {
        let mut rng = StdRng::seed_from_u64(blocks.seed);
        extra.extend(random_columns(&ring, blocks.random_extra, &mut rng));
    }
    let g = match (&blocks.scale, blocks.omit) {
        (Some(scale), _) => {
            let scaling = ScalingVector::new(&ring, parse_list(scale, "scale")?)?;
            build_g_scaled(&ring, &scaling, &extra)?
        }
        (None, Some(kind)) => build_g_omitted(&ring, kind, &extra)?,
        (None, None) => build_g(&ring, &extra)?,
    };
    Ok(g)
}

fn load_matrix(source: &MatrixSource) -> std::result::Result<GeneratorMatrix, Failure> {
    let has_blocks = source.blocks.extra.is_some()
        || source.blocks.scale.is_some()
        || source.blocks.omit.is_some()
        || source.blocks.random_extra > 0;
    if source.ring.is_none() && has_blocks {
        return Err(Failure::Input(
            "--extra, --random-extra, --scale and --omit require --ring".into(),
        ));
    }
    if let Some(demo) = source.demo {
        return Ok(demo_matrix(demo));
    }
    if let Some(path) = &source.matrix {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        return Ok(GeneratorMatrix::from_text(&text)?);
    }
    let modulus = source
        .ring
        .ok_or_else(|| Failure::Input("no matrix source given".into()))?;
    build_from_blocks(modulus, &source.blocks)
}

fn fmt_vector(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn fmt_support(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn fmt_codeword(c: &Codeword) -> String {
    format!(
        "{} supp={}",
        fmt_vector(c.components()),
        fmt_support(c.support())
    )
}

#[derive(Serialize)]
struct CodewordJson<'a> {
    components: &'a [u64],
    support: &'a [usize],
}

impl<'a> From<&'a Codeword> for CodewordJson<'a> {
    fn from(c: &'a Codeword) -> Self {
        Self {
            components: c.components(),
            support: c.support(),
        }
    }
}

/// The JSON object for a minimality report. Keys are fixed:
/// `verdict`, `witnesses`, `w_min`, `w_max`, `ab_ratio_ok`, `cases`.
pub fn report_json(report: &MinimalityReport) -> serde_json::Value {
    let witnesses: Vec<_> = report
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "covered": CodewordJson::from(&w.covered),
                "coverer": CodewordJson::from(&w.coverer),
            })
        })
        .collect();
    json!({
        "verdict": if report.minimal { "minimal" } else { "not_minimal" },
        "witnesses": witnesses,
        "w_min": report.w_min,
        "w_max": report.w_max,
        "ab_ratio_ok": report.ab_ratio_ok,
        "cases": report.cases,
    })
}

fn cmd_check(source: &MatrixSource, output: &OutputArgs, out: &mut dyn Write) -> CliResult {
    let g = load_matrix(source)?;
    let code = enumerate_code_with_cap(&g, output.cap)?;
    let report = code.is_minimal_code();
    match output.format {
        Format::Json => writeln!(out, "{}", report_json(&report))?,
        Format::Text => {
            let opt = |w: Option<usize>| w.map_or("-".to_string(), |w| w.to_string());
            writeln!(
                out,
                "code over {}: length {}, {} codewords",
                g.ring(),
                g.len(),
                report.codewords
            )?;
            writeln!(
                out,
                "verdict: {}",
                if report.minimal {
                    "minimal"
                } else {
                    "not minimal"
                }
            )?;
            writeln!(out, "w_min: {}", opt(report.w_min))?;
            writeln!(out, "w_max: {}", opt(report.w_max))?;
            writeln!(out, "ab_ratio_ok: {}", report.ab_ratio_ok)?;
            writeln!(out, "cases: {}", report.cases)?;
            writeln!(out, "witnesses: {}", report.witnesses.len())?;
            for w in &report.witnesses {
                writeln!(
                    out,
                    "  {} covered by {}",
                    fmt_codeword(&w.covered),
                    fmt_codeword(&w.coverer)
                )?;
            }
        }
    }
    Ok(if report.minimal {
        EXIT_OK
    } else {
        EXIT_NOT_MINIMAL
    })
}

fn cmd_enumerate(source: &MatrixSource, output: &OutputArgs, out: &mut dyn Write) -> CliResult {
    let g = load_matrix(source)?;
    let code = enumerate_code_with_cap(&g, output.cap)?;
    let pairs = g.ring().modulus().pow(2);
    match output.format {
        Format::Json => {
            let words: Vec<_> = code
                .codewords()
                .iter()
                .map(|c| {
                    json!({
                        "components": c.components(),
                        "support": c.support(),
                        "coefficients": c.coefficients(),
                    })
                })
                .collect();
            let doc = json!({
                "modulus": g.ring().modulus(),
                "length": g.len(),
                "coefficient_pairs": pairs,
                "codewords": words,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            for c in code.codewords() {
                writeln!(out, "{}", fmt_codeword(c))?;
            }
            writeln!(
                out,
                "# {} codewords from {} coefficient pairs",
                code.cardinality(),
                pairs
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify_lemmas(modulus: u64, format: Format, out: &mut dyn Write) -> CliResult {
    let ring = RingSpec::new(modulus)?;
    let reports: Vec<LemmaReport> = verify_all(&ring)?;
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&reports).map_err(|e| Failure::Internal(e.to_string()))?
        )?,
        Format::Text => {
            for r in &reports {
                let status = if r.holds { "holds" } else { "FAILS" };
                write!(
                    out,
                    "{:<24} {status:<6} cases={}",
                    r.lemma.name(),
                    r.cases_checked
                )?;
                if let Some(w) = &r.witness {
                    write!(out, " witness={}", fmt_vector(w))?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(if reports.iter().all(|r| r.holds) {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    })
}
