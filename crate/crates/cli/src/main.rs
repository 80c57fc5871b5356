//! `urs`: construct, encode, decode and analyze unraveling Reed-Solomon codes.
//!
//! Blocks are hex strings in column-major order, two digits per GF(256)
//! symbol (one per GF(16) symbol), with no separators. Exit codes: 0
//! success, 2 invalid configuration, 3 uncorrectable block, 4 I/O failure.

mod analyze;
mod spec;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use urs_core::decoders::{column_erasures, decode_cascade, DecodePolicy};
use urs_core::grs::{DecodeOutcome, DecodeStatus, ErasureSet};
use urs_core::hex::{decode_block, encode_block};
use urs_core::reliability::{
    run_campaign_sharded, run_exhaustive, FaultModel, SimReport, DEFAULT_SHARDS,
};
use urs_core::urs::UrsCode;
use urs_core::Error;

use spec::{parse_fault, CodeArgs, CodeSource, DecoderArgs};

const HEX_HELP: &str =
    "Blocks are hex, column-major, 2 digits per GF(256) symbol (1 per GF(16) symbol), \
no separators. Prefix a value with @ to read it from a file.";

#[derive(Parser, Debug)]
#[command(name = "urs", version, about = "Unraveling Reed-Solomon codes", after_help = HEX_HELP)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
enum Encoder {
    #[default]
    Systematic,
    Recursive,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code and print its JSON description.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode K data symbols into a codeword.
    #[command(after_help = HEX_HELP)]
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        data: String,
        #[arg(long, value_enum, default_value_t)]
        encoder: Encoder,
    },
    /// Decode a block and print the outcome.
    #[command(after_help = HEX_HELP)]
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        dec: DecoderArgs,
        #[arg(long)]
        block: String,
        /// Device column known to be bad; repeatable.
        #[arg(long)]
        erase_column: Vec<usize>,
    },
    /// Print the rows and row syndromes of a block.
    #[command(after_help = HEX_HELP)]
    Unravel {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        block: String,
        /// Rows of the view; defaults to ℓ.
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Run a fault-injection campaign.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        dec: DecoderArgs,
        /// Campaign JSON with fault, trials, shards and optionally code and policy.
        #[arg(long)]
        config: Option<PathBuf>,
        /// single-column | multi-column:C | random-symbols:C | column-plus-one |
        /// dq-burst:W:C | erased-column-plus-errors:E
        #[arg(long)]
        fault: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SHARDS)]
        shards: u32,
        /// Enumerate every pattern instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form failure rates, radii and dense miscorrection rates.
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn arg_text(v: &str) -> Result<String, CliError> {
    match v.strip_prefix('@') {
        Some(path) => read_file(Path::new(path)),
        None => Ok(v.to_string()),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs serialize");
    s.push('\n');
    s
}

#[derive(serde::Serialize)]
struct DecodeReport<'a> {
    #[serde(flatten)]
    outcome: &'a DecodeOutcome,
    /// Corrected block, absent when uncorrectable.
    block: Option<String>,
}

#[derive(serde::Serialize)]
struct UnravelReport {
    ell: usize,
    group_labels: Vec<urs_core::gf::Gf>,
    rows: Vec<String>,
    row_syndromes: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CampaignFile {
    code: Option<CodeSource>,
    policy: Option<DecodePolicy>,
    fault: FaultModel,
    #[serde(default)]
    trials: Option<u64>,
    #[serde(default)]
    shards: Option<u32>,
    #[serde(default)]
    exhaustive: bool,
}

fn simulate_report(
    urs: &UrsCode,
    policy: &DecodePolicy,
    fault: &FaultModel,
    trials: u64,
    shards: u32,
    exhaustive: bool,
) -> Result<SimReport, Error> {
    if exhaustive {
        run_exhaustive(urs, policy, fault)
    } else {
        run_campaign_sharded(urs, policy, fault, trials, shards)
    }
}

fn run(cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Construct { code, out } => {
            write_out(out.as_deref(), &json(&code.load()?))?;
        }
        Command::Encode {
            code,
            data,
            encoder,
        } => {
            let urs = code.load()?;
            let d = decode_block(&arg_text(&data)?, urs.field())?;
            let w = match encoder {
                Encoder::Systematic => urs.encode_systematic(&d)?,
                Encoder::Recursive => urs.encode_recursive(&d)?,
            };
            println!("{}", encode_block(&w, urs.field()));
        }
        Command::Decode {
            code,
            dec,
            block,
            erase_column,
        } => {
            let urs = code.load()?;
            let b = decode_block(&arg_text(&block)?, urs.field())?;
            if let Some(&c) = erase_column.iter().find(|&&c| c >= urs.n()) {
                return Err(Error::Config(format!(
                    "erased column {c} out of range (n = {})",
                    urs.n()
                ))
                .into());
            }
            let er = if erase_column.is_empty() {
                ErasureSet::none()
            } else {
                column_erasures(&urs, erase_column)
            };
            let o = decode_cascade(&urs, &b, &dec.policy()?, &er)?;
            let fixed = (!o.is_uncorrectable()).then(|| encode_block(&o.apply(&b), urs.field()));
            print!(
                "{}",
                json(&DecodeReport {
                    outcome: &o,
                    block: fixed
                })
            );
            if o.status == DecodeStatus::Uncorrectable {
                return Ok(3);
            }
        }
        Command::Unravel { code, block, ell } => {
            let urs = code.load()?;
            let b = decode_block(&arg_text(&block)?, urs.field())?;
            let view = urs.view(ell.unwrap_or(urs.ell()))?;
            let f = urs.field();
            let rows = view.unravel(&b)?;
            let syn = view.row_syndromes_direct(&b)?;
            print!(
                "{}",
                json(&UnravelReport {
                    ell: view.width(),
                    group_labels: view.group_labels().to_vec(),
                    rows: rows.iter().map(|r| encode_block(r, f)).collect(),
                    row_syndromes: syn.iter().map(|s| encode_block(&s.0, f)).collect(),
                })
            );
        }
        Command::Simulate {
            code,
            dec,
            config,
            fault,
            trials,
            seed,
            shards,
            exhaustive,
            format,
            out,
        } => {
            let (urs, policy, fm, trials, shards, exhaustive) = match config {
                Some(path) => {
                    let c: CampaignFile = serde_json::from_str(&read_file(&path)?)
                        .map_err(|e| Error::Parse(e.to_string()))?;
                    let urs = match c.code {
                        Some(src) => src.load()?,
                        None => code.load()?,
                    };
                    let policy = match c.policy {
                        Some(p) => p,
                        None => dec.policy()?,
                    };
                    (
                        urs,
                        policy,
                        c.fault,
                        c.trials.unwrap_or(trials),
                        c.shards.unwrap_or(shards),
                        c.exhaustive || exhaustive,
                    )
                }
                None => {
                    let kind = parse_fault(fault.as_deref().unwrap_or("single-column"))?;
                    (
                        code.load()?,
                        dec.policy()?,
                        FaultModel { kind, seed },
                        trials,
                        shards,
                        exhaustive,
                    )
                }
            };
            let rep = simulate_report(&urs, &policy, &fm, trials, shards, exhaustive)?;
            let text = match format {
                Format::Json => json(&rep),
                Format::Csv => rep.to_csv(),
            };
            write_out(out.as_deref(), &text)?;
        }
        Command::Analyze { code, format } => {
            let a = analyze::analyze(&code.load()?)?;
            print!(
                "{}",
                match format {
                    Format::Json => json(&a),
                    Format::Csv => a.to_csv(),
                }
            );
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("I/O error: {e}");
            ExitCode::from(4)
        }
    }
}
