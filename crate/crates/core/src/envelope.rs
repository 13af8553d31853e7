//! OFDM envelope power and PMEPR.
//!
//! With `f_s T = 1` the envelope of codeword `A` is
//! `s(t) = sum_i A_i exp(2 pi i * i t / T)`; the carrier only rotates the
//! phase and is dropped. Power is sampled at `t = j T / (n L)` for
//! `j = 0 .. n L`, so the maximum is a lower bound on the true peak that
//! tightens as the oversampling factor `L` grows.
//! [`power_via_correlation`] evaluates the same grid from the aperiodic
//! auto-correlation and serves as an independent check.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::corr::ComplexProfile;
use crate::error::{Error, Result};
use crate::gbf::ZqVector;
use crate::scalar::Real;
use crate::Complex;

pub const DEFAULT_OVERSAMPLE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeParams {
    oversample: usize,
}

impl EnvelopeParams {
    pub fn new(oversample: usize) -> Result<Self> {
        if oversample == 0 {
            return Err(Error::InvalidParams("oversampling factor must be at least 1".into()));
        }
        Ok(Self { oversample })
    }

    pub fn oversample(&self) -> usize {
        self.oversample
    }
}

impl Default for EnvelopeParams {
    fn default() -> Self {
        Self {
            oversample: DEFAULT_OVERSAMPLE,
        }
    }
}

/// Reusable envelope evaluator for codewords of one length.
///
/// The grid point `t = (u L + l) / (n L)` splits the length-`nL` transform
/// into `L` transforms of length `n`, one per offset `l`, applied to `A`
/// twisted by `exp(2 pi i * i l / (n L))`.
pub struct PmeprMeter<F: Real> {
    n: usize,
    params: EnvelopeParams,
    fft: Arc<dyn Fft<F>>,
    /// `twist[l * n + i] = exp(2 pi i * i l / (n L))`.
    twist: Vec<Complex<F>>,
}

impl<F: Real> PmeprMeter<F> {
    pub fn new(n: usize, params: EnvelopeParams) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let l = params.oversample;
        let fft = FftPlanner::new().plan_fft_inverse(n);
        let grid = F::from_usize(n * l).expect("grid size fits the float type");
        let tau = F::from_f64(std::f64::consts::TAU).expect("tau fits the float type");
        let twist = (0..l)
            .flat_map(|offset| (0..n).map(move |i| (i * offset) % (n * l)))
            .map(|j| {
                let angle = tau * F::from_usize(j).expect("index fits the float type") / grid;
                Complex::new(angle.cos(), angle.sin())
            })
            .collect();
        Ok(Self { n, params, fft, twist })
    }

    /// Calls `visit(j, power)` for every grid index `j`.
    fn scan(&self, a: &[Complex<F>], mut visit: impl FnMut(usize, F)) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        let l = self.params.oversample;
        let mut buffer = vec![Complex::new(F::zero(), F::zero()); self.n];
        let mut scratch = vec![Complex::new(F::zero(), F::zero()); self.fft.get_inplace_scratch_len()];
        for offset in 0..l {
            let twist = &self.twist[offset * self.n..(offset + 1) * self.n];
            for ((b, x), w) in buffer.iter_mut().zip(a).zip(twist) {
                *b = x * w;
            }
            self.fft.process_with_scratch(&mut buffer, &mut scratch);
            for (u, z) in buffer.iter().enumerate() {
                visit(u * l + offset, z.norm_sqr());
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn params(&self) -> EnvelopeParams {
        self.params
    }

    /// `|s(j T / nL)|^2` for `j = 0 .. nL`.
    pub fn envelope_power(&self, a: &[Complex<F>]) -> Result<Vec<F>> {
        let mut power = vec![F::zero(); self.n * self.params.oversample];
        self.scan(a, |j, p| power[j] = p)?;
        Ok(power)
    }

    /// Peak sampled power divided by `n`.
    pub fn pmepr(&self, a: &[Complex<F>]) -> Result<F> {
        let mut peak = F::zero();
        self.scan(a, |_, p| peak = peak.max(p))?;
        Ok(peak / F::from_usize(self.n).expect("length fits the float type"))
    }

    pub fn pmepr_word(&self, word: &ZqVector) -> Result<F> {
        self.pmepr(&word.polyphase())
    }
}

pub fn envelope_power<F: Real>(a: &[Complex<F>], params: EnvelopeParams) -> Result<Vec<F>> {
    PmeprMeter::new(a.len(), params)?.envelope_power(a)
}

pub fn pmepr<F: Real>(a: &[Complex<F>], params: EnvelopeParams) -> Result<F> {
    PmeprMeter::new(a.len(), params)?.pmepr(a)
}

/// PMEPR of the polyphase codeword `xi^word`.
pub fn pmepr_word<F: Real>(word: &ZqVector, params: EnvelopeParams) -> Result<F> {
    pmepr(&word.polyphase::<F>(), params)
}

/// Envelope power on the same grid through `P(t) = sum_l A(l) exp(2 pi i l t / T)`.
pub fn power_via_correlation<F: Real>(a: &[Complex<F>], params: EnvelopeParams) -> Result<Vec<F>> {
    if a.is_empty() {
        return Err(Error::Empty);
    }
    let n = a.len();
    let samples = n * params.oversample;
    let profile = ComplexProfile::auto(a);
    let tau = F::from_f64(std::f64::consts::TAU).expect("tau fits the float type");
    let grid = F::from_usize(samples).expect("grid size fits the float type");
    Ok((0..samples)
        .map(|j| {
            let t = F::from_usize(j).expect("index fits the float type") / grid;
            profile
                .iter()
                .fold(Complex::new(F::zero(), F::zero()), |acc, (shift, z)| {
                    let angle = tau * F::from_i64(shift).expect("shift fits the float type") * t;
                    acc + z * Complex::new(angle.cos(), angle.sin())
                })
                .re
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn signs(s: &[f64]) -> Vec<Complex<f64>> {
        s.iter().map(|&x| Complex::new(x, 0.0)).collect()
    }

    /// Fine-grid maximum of `4 + 2(cos t - cos 3t)`, the envelope power of (1,1,1,-1).
    fn analytic_peak_1110() -> f64 {
        (0..1_000_000)
            .map(|j| {
                let t = std::f64::consts::TAU * j as f64 / 1e6;
                4.0 + 2.0 * (t.cos() - (3.0 * t).cos())
            })
            .fold(f64::MIN, f64::max)
    }

    #[test]
    fn single_carrier_is_flat() {
        for l in [1, 3, 64] {
            let p = envelope_power(&signs(&[1.0]), EnvelopeParams::new(l).unwrap()).unwrap();
            assert_eq!(p.len(), l);
            for x in p {
                assert_abs_diff_eq!(x, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn coherent_sum_at_origin() {
        let p = envelope_power(&signs(&[1.0; 4]), EnvelopeParams::default()).unwrap();
        assert_abs_diff_eq!(p[0], 16.0, epsilon = 1e-9);
        assert_abs_diff_eq!(pmepr(&signs(&[1.0; 4]), EnvelopeParams::default()).unwrap(), 4.0, epsilon = 1e-9);
    }

    #[test]
    fn golay_length_four_peak() {
        let peak = analytic_peak_1110();
        assert_abs_diff_eq!(peak, 4.0 + 16.0 / (3.0 * 3f64.sqrt()), epsilon = 1e-6);
        let a = signs(&[1.0, 1.0, 1.0, -1.0]);
        let p = envelope_power(&a, EnvelopeParams::default()).unwrap();
        let max = p.iter().copied().fold(f64::MIN, f64::max);
        assert_abs_diff_eq!(max, 7.0792, epsilon = 0.01);
        assert!(max <= peak + 1e-9);
        let r = pmepr(&a, EnvelopeParams::default()).unwrap();
        assert_abs_diff_eq!(r, 1.7698, epsilon = 0.005);
    }

    #[test]
    fn alternating_pair_closed_form() {
        // P(t) = 2 - 2 cos(2 pi t), peak 4 at t = T/2.
        let r = pmepr(&signs(&[1.0, -1.0]), EnvelopeParams::default()).unwrap();
        assert_abs_diff_eq!(r, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn constant_pair_matches_cosine() {
        let params = EnvelopeParams::new(8).unwrap();
        let p = power_via_correlation(&signs(&[1.0, 1.0]), params).unwrap();
        for (j, x) in p.iter().enumerate() {
            let t = j as f64 / 16.0;
            assert_abs_diff_eq!(*x, 2.0 + 2.0 * (std::f64::consts::TAU * t).cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn oracle_agrees_on_golay_four() {
        let a = signs(&[1.0, 1.0, 1.0, -1.0]);
        let params = EnvelopeParams::default();
        let fft = envelope_power(&a, params).unwrap();
        let corr = power_via_correlation(&a, params).unwrap();
        for (x, y) in fft.iter().zip(&corr) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-6);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(pmepr::<f64>(&[], EnvelopeParams::default()), Err(Error::Empty));
        assert!(EnvelopeParams::new(0).is_err());
        let meter = PmeprMeter::<f64>::new(4, EnvelopeParams::default()).unwrap();
        assert!(meter.pmepr(&signs(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn single_precision_meter() {
        let meter = PmeprMeter::<f32>::new(4, EnvelopeParams::default()).unwrap();
        let a: Vec<Complex<f32>> = [1.0f32, 1.0, 1.0, -1.0].iter().map(|&x| Complex::new(x, 0.0)).collect();
        assert!((meter.pmepr(&a).unwrap() - 1.7698).abs() < 0.005);
    }

    fn qpsk() -> impl Strategy<Value = ZqVector> {
        (1usize..=16).prop_flat_map(|n| {
            prop::collection::vec(0u32..4, n).prop_map(|v| ZqVector::new(4, v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn mean_power_is_n(word in qpsk(), l in 1usize..=8) {
            let params = EnvelopeParams::new(l).unwrap();
            let p = envelope_power(&word.polyphase::<f64>(), params).unwrap();
            let mean = p.iter().sum::<f64>() / p.len() as f64;
            prop_assert!((mean - word.len() as f64).abs() < 1e-6);
        }

        #[test]
        fn pmepr_between_one_and_n(word in qpsk()) {
            let r: f64 = pmepr_word(&word, EnvelopeParams::default()).unwrap();
            prop_assert!(r >= 1.0 - 1e-9);
            prop_assert!(r <= word.len() as f64 + 1e-9);
        }

        #[test]
        fn oversampling_by_multiples_never_lowers(word in qpsk(), l in 1usize..=8) {
            // The grid for l is a subset of the grid for 2l.
            let lo: f64 = pmepr_word(&word, EnvelopeParams::new(l).unwrap()).unwrap();
            let hi: f64 = pmepr_word(&word, EnvelopeParams::new(2 * l).unwrap()).unwrap();
            prop_assert!(hi >= lo - 1e-9);
        }

        #[test]
        fn fft_matches_correlation(word in qpsk()) {
            let params = EnvelopeParams::new(4).unwrap();
            let a = word.polyphase::<f64>();
            let fft = envelope_power(&a, params).unwrap();
            let corr = power_via_correlation(&a, params).unwrap();
            for (x, y) in fft.iter().zip(&corr) {
                prop_assert!((x - y).abs() < 1e-6);
            }
        }
    }
}
