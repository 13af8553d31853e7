//! Generalized Boolean functions `f: Z_2^m -> Z_q` in algebraic normal form.
//!
//! Indices follow the LSB-first convention: entry `i` of a truth table is the
//! value at `(i_0, ..., i_{m-1})` with `i = sum i_j 2^j`, and coefficient `i`
//! of the ANF belongs to the monomial `prod_{j: i_j = 1} x_j`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::Complex;

/// Largest supported variable count.
pub const MAX_VARIABLES: usize = 16;
/// Largest supported modulus.
pub const MAX_MODULUS: u32 = 1 << 16;

pub(crate) fn check_modulus(q: u32) -> Result<()> {
    if q < 2 || q % 2 != 0 || q > MAX_MODULUS {
        return Err(Error::InvalidModulus(q));
    }
    Ok(())
}

fn check_values(values: &[u32], q: u32) -> Result<()> {
    match values.iter().position(|&v| v >= q) {
        Some(position) => Err(Error::ValueOutOfRange {
            position,
            value: values[position],
            q,
        }),
        None => Ok(()),
    }
}

/// `log2(len)` if `len` is a supported power of two.
pub(crate) fn log2_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(len));
    }
    let m = len.trailing_zeros() as usize;
    if m > MAX_VARIABLES {
        return Err(Error::TooManyVariables(m));
    }
    Ok(m)
}

/// Bit mask of a strictly increasing variable list, validated against `m`.
pub(crate) fn variable_mask(vars: &[usize], m: usize) -> Result<usize> {
    let increasing = vars.windows(2).all(|w| w[0] < w[1]);
    if !increasing || vars.iter().any(|&v| v >= m) {
        return Err(Error::InvalidIndices {
            indices: vars.to_vec(),
            m,
        });
    }
    Ok(vars.iter().fold(0, |acc, &v| acc | (1 << v)))
}

/// Packs the bits of `index` found at positions `vars` into `(d_0, d_1, ...)`.
pub(crate) fn gather_bits(index: usize, vars: &[usize]) -> usize {
    vars.iter()
        .enumerate()
        .fold(0, |acc, (a, &v)| acc | (((index >> v) & 1) << a))
}

/// Bits of `d` as a length-`k` vector, LSB first.
pub fn bits_of(d: usize, k: usize) -> Vec<bool> {
    (0..k).map(|a| (d >> a) & 1 == 1).collect()
}

fn bits_to_index(d: &[bool]) -> usize {
    d.iter()
        .enumerate()
        .fold(0, |acc, (a, &b)| acc | (usize::from(b) << a))
}

/// Subset-sum (zeta) transform over `Z_q`: ANF coefficients to truth table.
fn zeta(values: &mut [u32], q: u32) {
    let n = values.len();
    let mut bit = 1;
    while bit < n {
        for i in 0..n {
            if i & bit != 0 {
                values[i] = (values[i] + values[i ^ bit]) % q;
            }
        }
        bit <<= 1;
    }
}

/// Binary Möbius transform over `Z_q`: truth table to ANF coefficients.
fn moebius(values: &mut [u32], q: u32) {
    let n = values.len();
    let mut bit = 1;
    while bit < n {
        for i in 0..n {
            if i & bit != 0 {
                values[i] = (values[i] + q - values[i ^ bit]) % q;
            }
        }
        bit <<= 1;
    }
}

/// A vector over `Z_q`, e.g. the truth table of a generalized Boolean function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZqVector {
    q: u32,
    values: Vec<u32>,
}

impl ZqVector {
    pub fn new(q: u32, values: Vec<u32>) -> Result<Self> {
        check_modulus(q)?;
        check_values(&values, q)?;
        Ok(Self { q, values })
    }

    /// Reduces every entry mod `q` instead of rejecting it.
    pub fn from_reduced(q: u32, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_modulus(q)?;
        let values = values.into_iter().map(|v| (v % u64::from(q)) as u32).collect();
        Ok(Self { q, values })
    }

    pub fn zeros(q: u32, n: usize) -> Result<Self> {
        Self::new(q, vec![0; n])
    }

    pub(crate) fn from_parts_unchecked(q: u32, values: Vec<u32>) -> Self {
        Self { q, values }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let q = self.q;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        Ok(Self { q, values })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let q = self.q;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (a + q - b) % q)
            .collect();
        Ok(Self { q, values })
    }

    /// Polyphase vector `xi^v` with `xi = exp(2 pi i / q)`.
    pub fn polyphase<F: Real>(&self) -> Vec<Complex<F>> {
        let table = root_table::<F>(self.q);
        self.values.iter().map(|&v| table[v as usize]).collect()
    }
}

/// `xi^e` for `e = 0..q`.
pub(crate) fn root_table<F: Real>(q: u32) -> Vec<Complex<F>> {
    let q_f = F::from_u32(q).expect("modulus fits the float type");
    let tau = F::from_f64(std::f64::consts::TAU).expect("tau fits the float type");
    (0..q)
        .map(|e| {
            let angle = tau * F::from_u32(e).expect("exponent fits the float type") / q_f;
            Complex::new(angle.cos(), angle.sin())
        })
        .collect()
}

/// Polyphase vector of length `2^m` with a support mask.
///
/// Entries outside the support are zero; the full polyphase vector of a
/// function is the case where every position is supported.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RestrictedVector {
    q: u32,
    exponents: Vec<u32>,
    support: Vec<bool>,
}

impl RestrictedVector {
    pub fn new(q: u32, exponents: Vec<u32>, support: Vec<bool>) -> Result<Self> {
        check_modulus(q)?;
        check_values(&exponents, q)?;
        if exponents.len() != support.len() {
            return Err(Error::LengthMismatch {
                expected: exponents.len(),
                got: support.len(),
            });
        }
        let exponents = exponents
            .into_iter()
            .zip(&support)
            .map(|(e, &s)| if s { e } else { 0 })
            .collect();
        Ok(Self {
            q,
            exponents,
            support,
        })
    }

    /// Full-support vector `xi^v`.
    pub fn full(word: &ZqVector) -> Self {
        Self {
            q: word.q,
            exponents: word.values.clone(),
            support: vec![true; word.len()],
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Exponent at `i`, or `None` where the entry is zero.
    pub fn exponent(&self, i: usize) -> Option<u32> {
        self.support[i].then(|| self.exponents[i])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn support(&self) -> &[bool] {
        &self.support
    }

    pub fn support_count(&self) -> usize {
        self.support.iter().filter(|&&s| s).count()
    }

    /// The vector multiplied by `-1 = xi^{q/2}`.
    pub fn negated(&self) -> Self {
        let half = self.q / 2;
        let exponents = self
            .exponents
            .iter()
            .zip(&self.support)
            .map(|(&e, &s)| if s { (e + half) % self.q } else { 0 })
            .collect();
        Self {
            q: self.q,
            exponents,
            support: self.support.clone(),
        }
    }

    pub fn to_complex<F: Real>(&self) -> Vec<Complex<F>> {
        let table = root_table::<F>(self.q);
        self.exponents
            .iter()
            .zip(&self.support)
            .map(|(&e, &s)| if s { table[e as usize] } else { Complex::new(F::zero(), F::zero()) })
            .collect()
    }
}

#[derive(Deserialize)]
struct GbfRepr {
    m: usize,
    q: u32,
    coeffs: Vec<u32>,
}

impl TryFrom<GbfRepr> for GeneralizedBooleanFunction {
    type Error = Error;

    fn try_from(repr: GbfRepr) -> Result<Self> {
        Self::new(repr.m, repr.q, repr.coeffs)
    }
}

/// ANF coefficient table of a generalized Boolean function.
///
/// Serializes as `{"m": .., "q": .., "coeffs": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GbfRepr")]
pub struct GeneralizedBooleanFunction {
    m: usize,
    q: u32,
    coeffs: Vec<u32>,
}

impl GeneralizedBooleanFunction {
    pub fn new(m: usize, q: u32, coeffs: Vec<u32>) -> Result<Self> {
        if m > MAX_VARIABLES {
            return Err(Error::TooManyVariables(m));
        }
        check_modulus(q)?;
        if coeffs.len() != 1 << m {
            return Err(Error::LengthMismatch {
                expected: 1 << m,
                got: coeffs.len(),
            });
        }
        check_values(&coeffs, q)?;
        Ok(Self { m, q, coeffs })
    }

    pub fn zero(m: usize, q: u32) -> Result<Self> {
        Self::new(m, q, vec![0; 1 << m.min(MAX_VARIABLES + 1)])
    }

    pub fn constant(m: usize, q: u32, c: u32) -> Result<Self> {
        let mut f = Self::zero(m, q)?;
        f.coeffs[0] = c % q;
        Ok(f)
    }

    /// `coeff * prod_{j in vars} x_j`.
    pub fn monomial(m: usize, q: u32, vars: &[usize], coeff: u32) -> Result<Self> {
        let mut f = Self::zero(m, q)?;
        let mask = vars.iter().try_fold(0usize, |acc, &v| {
            if v >= m {
                Err(Error::InvalidIndices {
                    indices: vars.to_vec(),
                    m,
                })
            } else {
                Ok(acc | (1 << v))
            }
        })?;
        f.coeffs[mask] = coeff % q;
        Ok(f)
    }

    /// Sum of `(coeff, vars)` terms; repeated monomials accumulate.
    pub fn from_terms(m: usize, q: u32, terms: &[(u32, &[usize])]) -> Result<Self> {
        let mut f = Self::zero(m, q)?;
        for &(coeff, vars) in terms {
            f = &f + &Self::monomial(m, q, vars, coeff)?;
        }
        Ok(f)
    }

    pub(crate) fn from_coeffs_unchecked(m: usize, q: u32, coeffs: Vec<u32>) -> Self {
        Self { m, q, coeffs }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Truth-table length `2^m`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> u32 {
        self.coeffs[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Truth table `(f_0, ..., f_{2^m - 1})`.
    pub fn evaluate(&self) -> ZqVector {
        let mut values = self.coeffs.clone();
        zeta(&mut values, self.q);
        ZqVector {
            q: self.q,
            values,
        }
    }

    /// Full polyphase vector `xi^f`.
    pub fn polyphase(&self) -> RestrictedVector {
        RestrictedVector::full(&self.evaluate())
    }

    /// Unique ANF whose truth table is `v`.
    pub fn interpolate(v: &ZqVector) -> Result<Self> {
        let m = log2_len(v.len())?;
        let mut coeffs = v.values.clone();
        moebius(&mut coeffs, v.q);
        Ok(Self {
            m,
            q: v.q,
            coeffs,
        })
    }

    /// Highest monomial order with a nonzero coefficient; 0 for constants.
    pub fn order(&self) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i.count_ones())
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        var < self.m
            && self
                .coeffs
                .iter()
                .enumerate()
                .any(|(i, &c)| c != 0 && (i >> var) & 1 == 1)
    }

    pub fn scale(&self, c: u32) -> Self {
        let q = u64::from(self.q);
        let c = u64::from(c);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| ((u64::from(x) * c) % q) as u32)
            .collect();
        Self {
            m: self.m,
            q: self.q,
            coeffs,
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.m == other.m && self.q == other.q,
            "generalized Boolean functions differ in shape: (m={}, q={}) vs (m={}, q={})",
            self.m,
            self.q,
            other.m,
            other.q
        );
    }

    /// Substitutes `x_{vars[a]} = d[a]`.
    ///
    /// The restricted function keeps the ambient `m`-variable table with the
    /// restricted variables eliminated. The vector is `xi^f` on the indices
    /// whose bits at `vars` equal `d` and zero elsewhere; with no variables it
    /// is the full polyphase vector.
    pub fn restrict(&self, vars: &[usize], d: &[bool]) -> Result<(Self, RestrictedVector)> {
        let var_mask = variable_mask(vars, self.m)?;
        if d.len() != vars.len() {
            return Err(Error::RestrictionLength {
                expected: vars.len(),
                got: d.len(),
            });
        }
        let zero_mask = vars
            .iter()
            .zip(d)
            .filter(|(_, &b)| !b)
            .fold(0usize, |acc, (&v, _)| acc | (1 << v));

        let mut coeffs = vec![0u32; self.len()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 && i & zero_mask == 0 {
                let target = i & !var_mask;
                coeffs[target] = (coeffs[target] + c) % self.q;
            }
        }
        let restricted = Self {
            m: self.m,
            q: self.q,
            coeffs,
        };

        let pattern = bits_to_index(d);
        let values = self.evaluate().values;
        let support: Vec<bool> = (0..self.len())
            .map(|i| gather_bits(i, vars) == pattern)
            .collect();
        let exponents = values
            .into_iter()
            .zip(&support)
            .map(|(v, &s)| if s { v } else { 0 })
            .collect();
        Ok((
            restricted,
            RestrictedVector {
                q: self.q,
                exponents,
                support,
            },
        ))
    }

    /// [`restrict`](Self::restrict) with `d` packed LSB-first into an integer.
    pub fn restrict_at(&self, vars: &[usize], d: usize) -> Result<(Self, RestrictedVector)> {
        self.restrict(vars, &bits_of(d, vars.len()))
    }

    /// `prod_a x_{vars[a]}^{d_a} (1 - x_{vars[a]})^{1 - d_a}`.
    pub fn indicator(m: usize, q: u32, vars: &[usize], d: usize) -> Result<Self> {
        variable_mask(vars, m)?;
        let mut f = Self::constant(m, q, 1)?;
        for (a, &v) in vars.iter().enumerate() {
            let x = Self::monomial(m, q, &[v], 1)?;
            let factor = if (d >> a) & 1 == 1 {
                x
            } else {
                &Self::constant(m, q, 1)? - &x
            };
            f = &f * &factor;
        }
        Ok(f)
    }

    /// Rebuilds `f = sum_d f|_{x=d} * prod x^d (1-x)^(1-d)` from its restrictions.
    ///
    /// `parts[d]` is the restriction for the pattern `d` packed LSB-first.
    pub fn reconstruct(parts: &[Self], vars: &[usize]) -> Result<Self> {
        let first = parts.first().ok_or(Error::MissingPart(0))?;
        let (m, q) = (first.m, first.q);
        variable_mask(vars, m)?;
        let count = 1usize << vars.len();
        if parts.len() < count {
            return Err(Error::MissingPart(parts.len()));
        }
        if parts.len() > count {
            return Err(Error::LengthMismatch {
                expected: count,
                got: parts.len(),
            });
        }
        let mut f = Self::zero(m, q)?;
        for (d, part) in parts.iter().enumerate() {
            if part.q != q {
                return Err(Error::ModulusMismatch(q, part.q));
            }
            if part.m != m {
                return Err(Error::LengthMismatch {
                    expected: 1 << m,
                    got: part.len(),
                });
            }
            if let Some(&var) = vars.iter().find(|&&v| part.depends_on(v)) {
                return Err(Error::PartDependsOnRestricted { d, var });
            }
            f = &f + &(part * &Self::indicator(m, q, vars, d)?);
        }
        Ok(f)
    }
}

impl Add for &GeneralizedBooleanFunction {
    type Output = GeneralizedBooleanFunction;

    fn add(self, rhs: Self) -> GeneralizedBooleanFunction {
        self.assert_compatible(rhs);
        let q = self.q;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        GeneralizedBooleanFunction {
            m: self.m,
            q,
            coeffs,
        }
    }
}

impl Sub for &GeneralizedBooleanFunction {
    type Output = GeneralizedBooleanFunction;

    fn sub(self, rhs: Self) -> GeneralizedBooleanFunction {
        self + &(-rhs)
    }
}

impl Neg for &GeneralizedBooleanFunction {
    type Output = GeneralizedBooleanFunction;

    fn neg(self) -> GeneralizedBooleanFunction {
        let q = self.q;
        GeneralizedBooleanFunction {
            m: self.m,
            q,
            coeffs: self.coeffs.iter().map(|&c| (q - c) % q).collect(),
        }
    }
}

/// Product of functions, computed pointwise on truth tables.
impl Mul for &GeneralizedBooleanFunction {
    type Output = GeneralizedBooleanFunction;

    fn mul(self, rhs: Self) -> GeneralizedBooleanFunction {
        self.assert_compatible(rhs);
        let q = u64::from(self.q);
        let a = self.evaluate();
        let b = rhs.evaluate();
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(&x, &y)| ((u64::from(x) * u64::from(y)) % q) as u32)
            .collect();
        GeneralizedBooleanFunction::interpolate(&ZqVector {
            q: self.q,
            values,
        })
        .expect("product keeps a power-of-two length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Gbf = GeneralizedBooleanFunction;

    fn x0x1_plus_x2() -> Gbf {
        Gbf::from_terms(3, 2, &[(1, &[0, 1]), (1, &[2])]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = Gbf::monomial(2, 2, &[0, 1], 1).unwrap();
        assert_eq!(f.evaluate().values(), &[0, 0, 0, 1]);

        let c = Gbf::constant(3, 4, 3).unwrap();
        assert_eq!(c.evaluate().values(), &[3; 8]);

        let g = Gbf::from_terms(3, 4, &[(2, &[0]), (1, &[1, 2])]).unwrap();
        // f(i) = 2 i_0 + i_1 i_2 mod 4, written out point by point.
        let expected: Vec<u32> = (0..8u32)
            .map(|i| (2 * (i & 1) + ((i >> 1) & 1) * ((i >> 2) & 1)) % 4)
            .collect();
        assert_eq!(expected, vec![0, 2, 0, 2, 0, 2, 1, 3]);
        assert_eq!(g.evaluate().values(), expected.as_slice());
    }

    #[test]
    fn interpolate_examples() {
        let v = ZqVector::new(2, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(
            Gbf::interpolate(&v).unwrap(),
            Gbf::monomial(2, 2, &[0, 1], 1).unwrap()
        );

        let z = ZqVector::zeros(4, 16).unwrap();
        assert!(Gbf::interpolate(&z).unwrap().is_zero());

        let v = ZqVector::new(4, vec![0, 2, 0, 2, 0, 2, 1, 3]).unwrap();
        assert_eq!(
            Gbf::interpolate(&v).unwrap(),
            Gbf::from_terms(3, 4, &[(2, &[0]), (1, &[1, 2])]).unwrap()
        );
    }

    #[test]
    fn interpolate_rejects_bad_length() {
        let v = ZqVector::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(Gbf::interpolate(&v), Err(Error::LengthNotPowerOfTwo(3)));
    }

    #[test]
    fn restrict_examples() {
        let f = x0x1_plus_x2();
        let (g, vec) = f.restrict(&[1], &[true]).unwrap();
        assert_eq!(g, Gbf::from_terms(3, 2, &[(1, &[0]), (1, &[2])]).unwrap());
        let support: Vec<usize> = (0..8).filter(|&i| vec.support()[i]).collect();
        assert_eq!(support, vec![2, 3, 6, 7]);
        assert_eq!(vec.exponent(3), Some(f.evaluate().values()[3]));
        assert_eq!(vec.exponent(0), None);

        let (g, vec) = f.restrict(&[], &[]).unwrap();
        assert_eq!(g, f);
        assert_eq!(vec, f.polyphase());

        let h = Gbf::monomial(2, 2, &[0, 1], 1).unwrap();
        let (g, vec) = h.restrict(&[0, 1], &[true, true]).unwrap();
        assert_eq!(g, Gbf::constant(2, 2, 1).unwrap());
        assert_eq!(vec.support(), &[false, false, false, true]);
    }

    #[test]
    fn restrict_rejects_bad_indices() {
        let f = x0x1_plus_x2();
        assert!(matches!(
            f.restrict(&[1, 1], &[true, false]),
            Err(Error::InvalidIndices { .. })
        ));
        assert!(matches!(
            f.restrict(&[2, 1], &[true, false]),
            Err(Error::InvalidIndices { .. })
        ));
        assert!(matches!(
            f.restrict(&[3], &[true]),
            Err(Error::InvalidIndices { .. })
        ));
        assert!(matches!(
            f.restrict(&[1], &[]),
            Err(Error::RestrictionLength { .. })
        ));
    }

    #[test]
    fn reconstruct_examples() {
        let g = Gbf::from_terms(2, 4, &[(3, &[0]), (1, &[])]).unwrap();
        assert_eq!(Gbf::reconstruct(&[g.clone()], &[]).unwrap(), g);

        let f = x0x1_plus_x2();
        let parts: Vec<Gbf> = (0..2).map(|d| f.restrict_at(&[1], d).unwrap().0).collect();
        assert_eq!(Gbf::reconstruct(&parts, &[1]).unwrap(), f);

        let parts = vec![Gbf::constant(1, 2, 0).unwrap(), Gbf::constant(1, 2, 1).unwrap()];
        assert_eq!(
            Gbf::reconstruct(&parts, &[0]).unwrap(),
            Gbf::monomial(1, 2, &[0], 1).unwrap()
        );
    }

    #[test]
    fn reconstruct_errors() {
        let p = Gbf::constant(2, 2, 1).unwrap();
        assert_eq!(
            Gbf::reconstruct(&[p.clone()], &[0]),
            Err(Error::MissingPart(1))
        );
        let dep = Gbf::monomial(2, 2, &[0], 1).unwrap();
        assert_eq!(
            Gbf::reconstruct(&[p, dep], &[0]),
            Err(Error::PartDependsOnRestricted { d: 1, var: 0 })
        );
    }

    #[test]
    fn order_examples() {
        assert_eq!(x0x1_plus_x2().order(), 2);
        assert_eq!(Gbf::zero(4, 2).unwrap().order(), 0);
        let f = Gbf::from_terms(3, 4, &[(2, &[0, 1, 2]), (1, &[0])]).unwrap();
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let f = Gbf::from_terms(2, 4, &[(3, &[0, 1])]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"m":2,"q":4,"coeffs":[0,0,0,3]}"#);
        assert_eq!(serde_json::from_str::<Gbf>(&s).unwrap(), f);
        assert!(serde_json::from_str::<Gbf>(r#"{"m":2,"q":4,"coeffs":[0,0,0,4]}"#).is_err());
        assert!(serde_json::from_str::<Gbf>(r#"{"m":2,"q":3,"coeffs":[0,0,0,1]}"#).is_err());
        assert!(serde_json::from_str::<Gbf>(r#"{"m":2,"q":4,"coeffs":[0,0,0]}"#).is_err());
    }

    #[test]
    fn indicator_is_pointwise_pattern_test() {
        let ind = Gbf::indicator(3, 4, &[0, 2], 0b10).unwrap();
        let values = ind.evaluate();
        for i in 0..8 {
            let expected = u32::from(i & 1 == 0 && (i >> 2) & 1 == 1);
            assert_eq!(values.values()[i], expected);
        }
    }

    fn gbf_strategy() -> impl Strategy<Value = Gbf> {
        (0usize..=6, prop::sample::select(vec![2u32, 4, 8])).prop_flat_map(|(m, q)| {
            prop::collection::vec(0..q, 1 << m)
                .prop_map(move |coeffs| Gbf::new(m, q, coeffs).unwrap())
        })
    }

    fn gbf_with_vars() -> impl Strategy<Value = (Gbf, Vec<usize>)> {
        gbf_strategy().prop_flat_map(|f| {
            let m = f.m();
            let k_max = m.min(3);
            (Just(f), prop::sample::subsequence((0..m).collect::<Vec<_>>(), 0..=k_max))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn interpolate_inverts_evaluate(f in gbf_strategy()) {
            prop_assert_eq!(Gbf::interpolate(&f.evaluate()).unwrap(), f);
        }
    }

    proptest! {
        #[test]
        fn restriction_support_size((f, vars) in gbf_with_vars(), d_seed in any::<usize>()) {
            let k = vars.len();
            let d = d_seed % (1 << k);
            let (g, v) = f.restrict_at(&vars, d).unwrap();
            prop_assert_eq!(v.support_count(), 1 << (f.m() - k));
            for &j in &vars {
                prop_assert!(!g.depends_on(j));
            }
            // Supported entries agree with the restricted function.
            let gv = g.evaluate();
            for i in 0..f.len() {
                if let Some(e) = v.exponent(i) {
                    prop_assert_eq!(e, gv.values()[i]);
                }
            }
        }

        #[test]
        fn reconstruction_inverts_restriction((f, vars) in gbf_with_vars()) {
            let parts: Vec<Gbf> = (0..1usize << vars.len())
                .map(|d| f.restrict_at(&vars, d).unwrap().0)
                .collect();
            prop_assert_eq!(Gbf::reconstruct(&parts, &vars).unwrap(), f);
        }

        #[test]
        fn restriction_is_additive((f, vars) in gbf_with_vars(), seed in any::<u64>()) {
            let q = f.q();
            let coeffs = (0..f.len() as u64)
                .map(|i| ((seed.wrapping_mul(i + 7) >> 13) % u64::from(q)) as u32)
                .collect();
            let g = Gbf::new(f.m(), q, coeffs).unwrap();
            for d in 0..1usize << vars.len() {
                let lhs = (&f + &g).restrict_at(&vars, d).unwrap().0;
                let rhs = &f.restrict_at(&vars, d).unwrap().0 + &g.restrict_at(&vars, d).unwrap().0;
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
