//! The `lzrp` command: parse, decode, verify and stats over byte files.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 I/O error, 3 bad
//! configuration or guard, 4 malformed factor file.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lzrp::lz_compact::{decode_bytes, lz_parse_with_report};
use lzrp::oracle::{oracle_lz, oracle_rightmost, valid_sources, OracleConfig};
use lzrp::range_pred::{PointSet, RangePredIndex};
use lzrp::{
    rightmost_parse, rightmost_parse_with_report, Execution, Factor, RightmostConfig, RightmostMode, SpaceUsage, Text,
    TextIndex,
};

pub use format::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Config(String),
    #[error("malformed factor file: {0}")]
    Malformed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Config(_) => 3,
            CliError::Malformed(_) => 4,
        }
    }
}

impl From<lzrp::Error> for CliError {
    fn from(e: lzrp::Error) -> Self {
        match e {
            lzrp::Error::Config(m) => CliError::Config(m),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lzrp", version, about = "LZ77 and rightmost LZ77 parsing in compact space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a file into a factor file.
    Parse {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        rightmost: RightmostArgs,
    },
    /// Rebuild the original bytes from a factor file (either format).
    Decode { input: PathBuf, output: PathBuf },
    /// Compare the parsers against brute-force references.
    Verify {
        input: PathBuf,
        #[arg(long)]
        rightmost: bool,
        /// Allow inputs above the oracle size cap.
        #[arg(long)]
        force: bool,
    },
    /// Print structure sizes as key=value lines on standard error.
    Stats {
        input: PathBuf,
        #[command(flatten)]
        rightmost: RightmostArgs,
    },
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct RightmostArgs {
    /// Point each phrase at its latest earlier occurrence.
    #[arg(long)]
    pub rightmost: bool,
    #[arg(long, value_enum, default_value_t = Mode::Stratified)]
    pub mode: Mode,
    /// Minimum length of a long phrase.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Sample stride for long phrases.
    #[arg(long)]
    pub r: Option<usize>,
    /// Suffix-array rows per block.
    #[arg(long)]
    pub block: Option<usize>,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Basic,
    #[default]
    Stratified,
}

impl RightmostArgs {
    pub fn config(&self) -> RightmostConfig {
        RightmostConfig {
            ell: self.ell,
            r: self.r,
            block: self.block,
            mode: match self.mode {
                Mode::Basic => RightmostMode::Basic,
                Mode::Stratified => RightmostMode::Stratified,
            },
            exec: if self.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
            ..RightmostConfig::default()
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn stat(log: &mut dyn Write, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(log, "{key}={value}");
}

pub fn cmd_parse(
    input: &Path,
    output: &Path,
    format: Format,
    args: &RightmostArgs,
    log: &mut dyn Write,
) -> Result<(), CliError> {
    let data = read(input)?;
    let config = args.config();
    let text = Text::from_bytes(&data);
    // Validate thresholds before any work so bad flags fail fast.
    if args.rightmost {
        config.thresholds(text.len(), text.sigma().saturating_sub(1))?;
    }
    let (factors, report) = lz_parse_with_report(&text);
    let factors = if args.rightmost {
        let (f, rep) = rightmost_parse_with_report(&text, &config)?;
        stat(log, "rightmost_long", rep.long);
        stat(log, "rightmost_boundary", rep.boundary);
        stat(log, "rightmost_in_block", rep.in_block);
        stat(log, "rightmost_basic", rep.basic);
        f
    } else {
        factors
    };
    let bytes = format::encode(&factors, format)?;
    write(output, &bytes)?;
    let n = data.len();
    stat(log, "n", n);
    stat(log, "z", factors.len());
    let bpf = if factors.is_empty() {
        0.0
    } else {
        8.0 * bytes.len() as f64 / factors.len() as f64
    };
    stat(log, "bits_per_factor", format!("{bpf:.3}"));
    stat(log, "aux_bits", report.aux_bits());
    stat(log, "aux_bits_per_symbol", format!("{:.3}", per_symbol(report.aux_bits(), n)));
    stat(log, "bwt_bits", report.bwt_bits);
    stat(log, "bwt_bits_per_symbol", format!("{:.3}", per_symbol(report.bwt_bits, n)));
    Ok(())
}

fn per_symbol(bits: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        bits as f64 / n as f64
    }
}

pub fn cmd_decode(input: &Path, output: &Path) -> Result<(), CliError> {
    let factors = format::decode(&read(input)?)?;
    let bytes = decode_bytes(&factors).map_err(|e| CliError::Malformed(e.to_string()))?;
    write(output, &bytes)
}

pub fn cmd_verify(input: &Path, rightmost: bool, force: bool, log: &mut dyn Write) -> Result<(), CliError> {
    let data = read(input)?;
    let cap = OracleConfig::default().max_n;
    if data.len() > cap && !force {
        return Err(CliError::Config(format!(
            "input has {} bytes, above the oracle cap of {cap}; pass --force to run anyway",
            data.len()
        )));
    }
    verify_with(&data, rightmost, log, |text, cfg| match cfg {
        None => Ok(lzrp::lz_parse(text)),
        Some(cfg) => rightmost_parse(text, cfg),
    })
}

/// Runs the verification with `parse` standing in for the library parsers
/// (`None` = compact parser, `Some(config)` = rightmost parser).
pub fn verify_with<F>(data: &[u8], rightmost: bool, log: &mut dyn Write, parse: F) -> Result<(), CliError>
where
    F: Fn(&Text, Option<&RightmostConfig>) -> lzrp::Result<Vec<Factor>>,
{
    let text = Text::from_bytes(data);
    let raw: Vec<u32> = data.iter().map(|&b| b as u32).collect();
    let got = parse(&text, None)?;
    let want = oracle_lz(&raw);
    compare(&got, &want, false, "lz")?;
    if !valid_sources(&raw, &got) {
        return Err(CliError::Mismatch("lz: a reference does not copy an earlier occurrence".into()));
    }
    stat(log, "lz", "ok");
    if rightmost {
        let want = oracle_rightmost(&raw);
        for (name, cfg) in [("basic", RightmostConfig::basic()), ("stratified", RightmostConfig::stratified())] {
            let got = parse(&text, Some(&cfg))?;
            compare(&got, &want, true, name)?;
            stat(log, name, "ok");
        }
    }
    Ok(())
}

/// Same phrases (and, if `exact`, same sources) or the first divergence.
fn compare(got: &[Factor], want: &[Factor], exact: bool, what: &str) -> Result<(), CliError> {
    let mut pos = 1;
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        let same = if exact {
            g == w
        } else {
            g.len() == w.len() && g.is_literal() == w.is_literal()
        };
        if !same {
            return Err(CliError::Mismatch(format!(
                "{what}: phrase {} at text position {pos}: got {g:?}, expected {w:?}",
                k + 1
            )));
        }
        pos += w.len();
    }
    if got.len() != want.len() {
        return Err(CliError::Mismatch(format!(
            "{what}: {} phrases, expected {}",
            got.len(),
            want.len()
        )));
    }
    Ok(())
}

pub fn cmd_stats(input: &Path, args: &RightmostArgs, log: &mut dyn Write) -> Result<(), CliError> {
    let data = read(input)?;
    let text = Text::from_bytes(&data);
    let n = data.len();
    let (factors, report) = lz_parse_with_report(&text);
    stat(log, "n", n);
    stat(log, "sigma", text.sigma() - 1);
    stat(log, "z", factors.len());
    stat(log, "block_size", report.block_size);
    stat(log, "block_max_bits", report.block_max_bits);
    stat(log, "rmax_bits", report.rmax_bits);
    stat(log, "visited_bits", report.visited_bits);
    stat(log, "candidate_bits", report.candidate_bits);
    stat(log, "aux_bits_per_symbol", format!("{:.3}", per_symbol(report.aux_bits(), n)));
    stat(log, "bwt_bits", report.bwt_bits);
    stat(log, "bwt_bits_per_symbol", format!("{:.3}", per_symbol(report.bwt_bits, n)));
    let ti = TextIndex::build(&text);
    let sa: Vec<usize> = ti.sa().iter().map(|&p| p as usize).collect();
    let points = PointSet::from_y_of_x(&sa)?;
    let rp = RangePredIndex::build(points, 2, args.config().exec);
    stat(log, "range_pred_granularity", rp.granularity());
    stat(log, "range_pred_bits", rp.size_in_bits());
    stat(log, "range_pred_bits_per_point", format!("{:.3}", per_symbol(rp.size_in_bits(), sa.len())));
    let cfg = args.config();
    let (_, rep) = rightmost_parse_with_report(&text, &cfg)?;
    stat(log, "rightmost_ell", rep.thresholds.ell);
    stat(log, "rightmost_r", rep.thresholds.r);
    stat(log, "rightmost_block", rep.thresholds.block);
    stat(log, "rightmost_long", rep.long);
    stat(log, "rightmost_boundary", rep.boundary);
    stat(log, "rightmost_in_block", rep.in_block);
    stat(log, "rightmost_tree_nodes", rep.tree_nodes);
    stat(log, "rightmost_long_bits", rep.long_bits);
    stat(log, "rightmost_in_block_bits", rep.in_block_bits);
    stat(log, "rightmost_isa_bits", rep.isa_bits);
    Ok(())
}

pub fn execute(cli: &Cli, log: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Parse {
            input,
            output,
            format,
            rightmost,
        } => cmd_parse(input, output, *format, rightmost, log),
        Command::Decode { input, output } => cmd_decode(input, output),
        Command::Verify { input, rightmost, force } => cmd_verify(input, *rightmost, *force, log),
        Command::Stats { input, rightmost } => cmd_stats(input, rightmost, log),
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit
/// code. Messages go to `log`.
pub fn run<I, T>(args: I, log: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(log, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
        }
    };
    match execute(&cli, log) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(log, "error: {e}");
            e.exit_code()
        }
    }
}
