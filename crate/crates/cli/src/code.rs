use std::collections::BTreeSet;
use std::fs;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use pmepr_codes::envelope::DEFAULT_OVERSAMPLE;
use pmepr_codes::{ClassCode, ClassParams, CodeClass, EnvelopeParams, LinearCode, ZqVector, ZrmParams};
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{ClassArg, CodeArgs, StreamArgs};
use crate::error::{CliError, CliResult};

pub const DEFAULT_CAP_LOG2: u32 = pmepr_codes::codes::DEFAULT_CAP_LOG2;

/// Flags merged with the config file, which takes precedence.
#[derive(Clone, Debug)]
pub struct Settings {
    pub code: CodeArgs,
    pub cap: u32,
    pub sample: Option<u64>,
    pub seed: Option<u64>,
    pub envelope: EnvelopeParams,
}

pub fn settings(code: &CodeArgs, stream: &StreamArgs) -> CliResult<Settings> {
    let mut merged = code.clone();
    merged.cap = stream.cap;
    merged.sample = stream.sample;
    merged.seed = stream.seed;
    if let Some(path) = &code.config {
        let text = fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
        let file: CodeArgs =
            serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
        macro_rules! take {
            ($($field:ident),*) => {$(if file.$field.is_some() { merged.$field = file.$field.clone(); })*};
        }
        take!(class, h, p, k, r, m, restricted, rep_index, oversample, cap, sample, seed);
    }
    let envelope = EnvelopeParams::new(merged.oversample.unwrap_or(DEFAULT_OVERSAMPLE)).map_err(CliError::from)?;
    Ok(Settings {
        cap: merged.cap.unwrap_or(DEFAULT_CAP_LOG2),
        sample: merged.sample,
        seed: merged.seed,
        envelope,
        code: merged,
    })
}

fn required(value: Option<u32>, name: &str) -> CliResult<u32> {
    value.ok_or_else(|| CliError::invalid(format!("missing --{name}")))
}

pub enum Code {
    Zrm(ZrmParams, LinearCode),
    Class(ClassCode),
}

impl Code {
    pub fn from_settings(s: &Settings) -> CliResult<Self> {
        let a = &s.code;
        let class = a.class.ok_or_else(|| CliError::invalid("missing --class"))?;
        let h = required(a.h, "h")?;
        let m = required(a.m, "m")?;
        let p = a.p.unwrap_or(0);
        match class {
            ClassArg::Zrm => {
                let params = ZrmParams::new(h, p, required(a.r, "r")?, m)?;
                Ok(Code::Zrm(params, params.code()))
            }
            ClassArg::Class(class) => {
                let k = a.k.unwrap_or(0);
                let r = match class {
                    CodeClass::III => a.r,
                    _ => Some(a.r.unwrap_or(k + 1)),
                };
                let params = ClassParams::new(class, h, p, k, r, m, a.restricted.clone(), a.rep_index.unwrap_or(0))?;
                Ok(Code::Class(ClassCode::new(params)?))
            }
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            Code::Zrm(_, c) => c.q(),
            Code::Class(c) => c.base().q(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Code::Zrm(_, c) => c.n(),
            Code::Class(c) => c.base().n(),
        }
    }

    pub fn size(&self) -> BigUint {
        match self {
            Code::Zrm(_, c) => c.size(),
            Code::Class(c) => c.size(),
        }
    }

    pub fn size_log2(&self) -> f64 {
        match self {
            Code::Zrm(_, c) => f64::from(c.size_log2()),
            Code::Class(c) => c.size_log2(),
        }
    }

    pub fn capacity_bits(&self) -> u64 {
        match self {
            Code::Zrm(_, c) => u64::from(c.size_log2()),
            Code::Class(c) => c.capacity_bits(),
        }
    }

    pub fn pmepr_bound(&self) -> Option<u64> {
        match self {
            Code::Zrm(..) => None,
            Code::Class(c) => Some(c.params().pmepr_bound()),
        }
    }

    pub fn codeword(&self, index: &BigUint) -> CliResult<ZqVector> {
        Ok(match self {
            Code::Zrm(_, c) => c.codeword_big(index)?,
            Code::Class(c) => c.codeword(index)?,
        })
    }

    pub fn encode(&self, payload: &BigUint) -> CliResult<ZqVector> {
        match self {
            Code::Zrm(_, c) => {
                if payload.bits() > u64::from(c.size_log2()) {
                    return Err(pmepr_codes::Error::PayloadSize {
                        expected: u64::from(c.size_log2()),
                    }
                    .into());
                }
                Ok(c.codeword_big(payload)?)
            }
            Code::Class(c) => Ok(c.encode(payload)?),
        }
    }

    pub fn payload_of(&self, word: &ZqVector) -> CliResult<BigUint> {
        match self {
            Code::Zrm(_, c) => c
                .index_of(word)?
                .ok_or_else(|| CliError::invalid("word is not a codeword")),
            Code::Class(c) => Ok(c.codeword_index(word)?),
        }
    }

    /// Every codeword in index order when the code fits under the cap, or a
    /// seeded sample of distinct indices in ascending order.
    pub fn stream<'a>(&'a self, s: &Settings) -> CliResult<Box<dyn Iterator<Item = (BigUint, ZqVector)> + 'a>> {
        let size = self.size();
        let fits = size <= BigUint::one() << s.cap;
        match s.sample {
            Some(count) if BigUint::from(count) < size => {
                let seed = s
                    .seed
                    .ok_or_else(|| CliError::invalid("--sample needs --seed"))?;
                let indices = sample_indices(&size, count, seed);
                Ok(Box::new(indices.into_iter().map(move |i| {
                    let w = self.codeword(&i).expect("sampled index in range");
                    (i, w)
                })))
            }
            _ if !fits => Err(CliError::Cap(format!(
                "code has 2^{:.3} words, above the cap 2^{}; pass --sample and --seed",
                self.size_log2(),
                s.cap
            ))),
            _ => {
                let total = size.to_u64().expect("enumerable size fits u64");
                Ok(match self {
                    Code::Zrm(_, c) => {
                        Box::new(c.range(0, total).enumerate().map(|(i, w)| (BigUint::from(i), w)))
                    }
                    Code::Class(c) => Box::new(c.range(0, total).map(|(i, w)| (BigUint::from(i), w))),
                })
            }
        }
    }
}

/// `count` distinct uniform indices below `size` by rejection sampling on
/// ChaCha8 output, sorted ascending.
pub fn sample_indices(size: &BigUint, count: u64, seed: u64) -> Vec<BigUint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits = size.bits().max(1);
    let bytes = bits.div_ceil(8) as usize;
    let excess = bytes as u64 * 8 - bits;
    let mut chosen = BTreeSet::new();
    let mut buffer = vec![0u8; bytes];
    while (chosen.len() as u64) < count {
        rng.fill_bytes(&mut buffer);
        buffer[bytes - 1] &= 0xff >> excess;
        let candidate = BigUint::from_bytes_le(&buffer);
        if &candidate < size {
            chosen.insert(candidate);
        }
    }
    chosen.into_iter().collect()
}

pub fn parse_payload(hex: &str) -> CliResult<BigUint> {
    let digits = hex.trim().trim_start_matches("0x");
    if digits.is_empty() {
        return Ok(BigUint::zero());
    }
    BigUint::parse_bytes(digits.as_bytes(), 16).ok_or_else(|| CliError::invalid(format!("bad hex payload {hex:?}")))
}

pub fn parse_word(text: &str, q: u32) -> CliResult<ZqVector> {
    let trimmed = text.trim();
    let values: Vec<u32> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| CliError::invalid(format!("bad word: {e}")))?
    } else {
        trimmed
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::invalid(format!("bad word: {e}")))?
    };
    Ok(ZqVector::new(q, values)?)
}
