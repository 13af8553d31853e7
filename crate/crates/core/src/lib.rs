//! Low-PMEPR coset codes for OFDM.
//!
//! The crate covers the full chain from generalized Boolean functions
//! `Z_2^m -> Z_q` to the codes built from them:
//!
//! * [`gbf`]: algebraic normal form, evaluation, restriction and reconstruction.
//! * [`corr`]: exact aperiodic correlations over `Z[xi_q]` and complementary-set checks.
//! * [`envelope`]: oversampled OFDM envelope power and PMEPR measurement.
//! * [`codes`]: the generalized Reed-Muller codes `ZRM^p_{2^h}(r,m)`.
//! * [`construct`]: complementary pairs and sets, the codes `L`, `A`, `R`
//!   and the Class I/II/III coset codes with their encoders.
//!
//! Floating-point routines are generic over [`Real`] (`f32`/`f64`), exact
//! correlation arithmetic over [`ExactInt`] (`i64`, [`BigInt`]). The aliases
//! below fix the scalar types used by the CLI.

pub mod codes;
pub mod construct;
pub mod corr;
pub mod envelope;
mod error;
pub mod gbf;
mod scalar;

pub use codes::{LinearCode, Metric, ZrmParams};
pub use construct::{ClassCode, ClassParams, CodeClass, ConstructionConfig, IndexSplit, PermutationTuple};
pub use envelope::EnvelopeParams;
pub use error::{Error, Result};
pub use gbf::{GeneralizedBooleanFunction, RestrictedVector, ZqVector};
pub use scalar::{format_significant, ExactInt, Real};

pub use num_bigint::{BigInt, BigUint};
pub use rustfft::num_complex::Complex;

/// Exact element of `Z[xi_q]` with arbitrary-precision coordinates.
pub type Cyclotomic = corr::CyclotomicInt<BigInt>;
/// Exact correlation table over all displacements.
pub type ExactProfile = corr::CorrelationProfile<BigInt>;
/// Floating-point correlation table.
pub type ComplexProfile64 = corr::ComplexProfile<f64>;
/// Double-precision PMEPR meter.
pub type PmeprMeter64 = envelope::PmeprMeter<f64>;
/// Single-precision PMEPR meter.
pub type PmeprMeter32 = envelope::PmeprMeter<f32>;
/// Double-precision complex sample.
pub type Complex64 = Complex<f64>;
