use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmepr_codes::CodeClass;
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(name = "pmepr-codes", version, about = "Low-PMEPR coset codes for OFDM")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the codewords of a code as JSON lines or CSV.
    Generate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        stream: StreamArgs,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one of the property suites and report PASS or FAIL.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        stream: StreamArgs,
        /// Alphabet size for suites on random functions.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure the PMEPR of codewords from a file or a code.
    Pmepr {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        stream: StreamArgs,
        /// JSON lines with a "word" array and optional "index" and "q".
        #[arg(long)]
        input: Option<PathBuf>,
        /// Alphabet size of the input words.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Destination of the summary CSV; stderr if absent.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Map a hexadecimal payload to its codeword.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        payload: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the payload of a codeword.
    Index {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma-separated symbols or a JSON array.
        #[arg(long)]
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print sizes, capacities and guarantees of a code.
    Info {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Cor1,
    Counting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassArg {
    Class(CodeClass),
    Zrm,
}

impl FromStr for ClassArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("zrm") {
            return Ok(ClassArg::Zrm);
        }
        s.parse().map(ClassArg::Class).map_err(|e: pmepr_codes::Error| e.to_string())
    }
}

impl<'de> Deserialize<'de> for ClassArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Code selection. Every field may also come from `--config`, which wins.
#[derive(Args, Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeArgs {
    /// I, II, III or zrm.
    #[arg(long)]
    pub class: Option<ClassArg>,
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Defaults to k + 1 for classes I and II.
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    /// Restricted indices, comma separated; defaults to the top k.
    #[arg(long = "J", value_delimiter = ',')]
    #[serde(rename = "J")]
    pub restricted: Option<Vec<usize>>,
    #[arg(long)]
    pub rep_index: Option<u64>,
    #[arg(long)]
    pub oversample: Option<usize>,
    /// JSON file with any of the fields above plus cap, sample and seed.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(skip)]
    #[serde(default)]
    pub cap: Option<u32>,
    #[arg(skip)]
    #[serde(default)]
    pub sample: Option<u64>,
    #[arg(skip)]
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct StreamArgs {
    /// Largest enumerable code, as log2 of its size.
    #[arg(long)]
    pub cap: Option<u32>,
    /// Draw this many distinct codewords instead of enumerating.
    #[arg(long)]
    pub sample: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}
