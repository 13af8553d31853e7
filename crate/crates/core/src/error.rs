use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus q = {0}: must be even and in 2..=65536")]
    InvalidModulus(u32),
    #[error("modulus q = {0} is not a power of two")]
    NotPowerOfTwo(u32),
    #[error("variable count m = {0} exceeds the supported maximum of 16")]
    TooManyVariables(usize),
    #[error("length {0} is not a power of two")]
    LengthNotPowerOfTwo(usize),
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("value {value} at position {position} is outside Z_{q}")]
    ValueOutOfRange { position: usize, value: u32, q: u32 },
    #[error("variable index list must be strictly increasing and below m = {m}: {indices:?}")]
    InvalidIndices { indices: Vec<usize>, m: usize },
    #[error("restriction vector has length {got}, expected {expected}")]
    RestrictionLength { expected: usize, got: usize },
    #[error("missing restricted part for d = {0}")]
    MissingPart(usize),
    #[error("part for d = {d} depends on restricted variable x{var}")]
    PartDependsOnRestricted { d: usize, var: usize },
    #[error("empty input")]
    Empty,
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("enumeration needs 2^{required_log2} words, cap is 2^{cap_log2}")]
    CapExceeded { required_log2: u32, cap_log2: u32 },
    #[error("restriction at d = {0} is not of quadratic path form")]
    NotPathForm(usize),
    #[error("x{var} is not an endpoint of the path at d = {d}")]
    NotEndpoint { d: usize, var: usize },
    #[error("payload needs {expected} bits, value does not fit")]
    PayloadSize { expected: u64 },
    #[error("word is not a codeword: {0}")]
    NotACodeword(String),
}
