//! Aperiodic correlations and complementary-set checks.
//!
//! For `q = 2^h` every correlation value lies in `Z[xi]` with `xi^{q/2} = -1`,
//! so sums are carried exactly as [`CyclotomicInt`]s. Other even moduli use
//! the complex floating-point routines with an explicit tolerance.

use std::io::Write;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gbf::{GeneralizedBooleanFunction, RestrictedVector};
use crate::scalar::{format_significant, ExactInt, Real};
use crate::Complex;

/// Element `sum_t coords[t] xi^t` of `Z[x]/(x^{q/2} + 1)`, `q = 2^h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt<T> {
    h: u32,
    coords: Vec<T>,
}

fn exponent_of_two(q: u32) -> Result<u32> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(q));
    }
    Ok(q.trailing_zeros())
}

impl<T: ExactInt> CyclotomicInt<T> {
    pub fn zero(h: u32) -> Self {
        assert!((1..=16).contains(&h), "cyclotomic exponent h = {h} outside 1..=16");
        Self {
            h,
            coords: vec![T::zero(); 1 << (h - 1)],
        }
    }

    pub fn from_int(h: u32, value: T) -> Self {
        let mut z = Self::zero(h);
        z.coords[0] = value;
        z
    }

    pub fn one(h: u32) -> Self {
        Self::from_int(h, T::one())
    }

    /// `xi^e`.
    pub fn root_power(h: u32, e: u64) -> Self {
        let mut z = Self::zero(h);
        let half = z.coords.len() as u64;
        let e = e % (2 * half);
        if e < half {
            z.coords[e as usize] = T::one();
        } else {
            z.coords[(e - half) as usize] = -T::one();
        }
        z
    }

    /// Folds a histogram of exponents over `Z_q` using `xi^{t + q/2} = -xi^t`.
    pub(crate) fn from_exponent_counts(h: u32, counts: &[i64]) -> Self {
        let half = 1usize << (h - 1);
        debug_assert_eq!(counts.len(), 2 * half);
        let coords = (0..half)
            .map(|t| T::from_i64(counts[t] - counts[t + half]).expect("count fits"))
            .collect();
        Self { h, coords }
    }

    pub fn new(h: u32, coords: Vec<T>) -> Result<Self> {
        if !(1..=16).contains(&h) {
            return Err(Error::NotPowerOfTwo(1u32.checked_shl(h).unwrap_or(0)));
        }
        if coords.len() != 1 << (h - 1) {
            return Err(Error::LengthMismatch {
                expected: 1 << (h - 1),
                got: coords.len(),
            });
        }
        Ok(Self { h, coords })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        1 << self.h
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Complex conjugate, `xi^t -> xi^{-t}`.
    pub fn conj(&self) -> Self {
        let half = self.coords.len();
        let mut coords = vec![T::zero(); half];
        coords[0] = self.coords[0].clone();
        for t in 1..half {
            coords[half - t] = -self.coords[t].clone();
        }
        Self { h: self.h, coords }
    }

    /// Numerical value at `xi = exp(2 pi i / q)`.
    pub fn to_complex<F: Real>(&self) -> Complex<F> {
        let table = crate::gbf::root_table::<F>(self.q());
        self.coords
            .iter()
            .zip(table)
            .fold(Complex::new(F::zero(), F::zero()), |acc, (c, root)| {
                acc + root * F::from(c.clone()).expect("coordinate fits the float type")
            })
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(self.h, other.h, "cyclotomic rings differ");
    }
}

impl<T: ExactInt> Add for &CyclotomicInt<T> {
    type Output = CyclotomicInt<T>;

    fn add(self, rhs: Self) -> CyclotomicInt<T> {
        self.assert_same_ring(rhs);
        CyclotomicInt {
            h: self.h,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: ExactInt> Sub for &CyclotomicInt<T> {
    type Output = CyclotomicInt<T>;

    fn sub(self, rhs: Self) -> CyclotomicInt<T> {
        self + &(-rhs)
    }
}

impl<T: ExactInt> Neg for &CyclotomicInt<T> {
    type Output = CyclotomicInt<T>;

    fn neg(self) -> CyclotomicInt<T> {
        CyclotomicInt {
            h: self.h,
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Negacyclic convolution.
impl<T: ExactInt> Mul for &CyclotomicInt<T> {
    type Output = CyclotomicInt<T>;

    fn mul(self, rhs: Self) -> CyclotomicInt<T> {
        self.assert_same_ring(rhs);
        let half = self.coords.len();
        let mut coords = vec![T::zero(); half];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let prod = a.clone() * b.clone();
                let k = i + j;
                if k < half {
                    coords[k] = coords[k].clone() + prod;
                } else {
                    coords[k - half] = coords[k - half].clone() - prod;
                }
            }
        }
        CyclotomicInt { h: self.h, coords }
    }
}

fn check_pair(a: &RestrictedVector, b: &RestrictedVector) -> Result<()> {
    if a.q() != b.q() {
        return Err(Error::ModulusMismatch(a.q(), b.q()));
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(())
}

/// Adds the exponent histogram of `C(A,B)(shift)` into `counts` (length `q`).
fn accumulate_counts(a: &RestrictedVector, b: &RestrictedVector, shift: i64, counts: &mut [i64]) {
    let n = a.len() as i64;
    if shift >= n || shift <= -n {
        return;
    }
    let q = a.q();
    // Positive shift pairs A_{i+l} with B_i; negative pairs A_i with B_{i-l}.
    let (a_start, b_start, terms) = if shift >= 0 {
        (shift as usize, 0usize, (n - shift) as usize)
    } else {
        (0usize, (-shift) as usize, (n + shift) as usize)
    };
    for i in 0..terms {
        if let (Some(x), Some(y)) = (a.exponent(a_start + i), b.exponent(b_start + i)) {
            counts[((x + q - y) % q) as usize] += 1;
        }
    }
}

/// Exact aperiodic cross-correlation `C(A,B)(shift)`.
pub fn cross_correlation<T: ExactInt>(
    a: &RestrictedVector,
    b: &RestrictedVector,
    shift: i64,
) -> Result<CyclotomicInt<T>> {
    check_pair(a, b)?;
    let h = exponent_of_two(a.q())?;
    let mut counts = vec![0i64; a.q() as usize];
    accumulate_counts(a, b, shift, &mut counts);
    Ok(CyclotomicInt::from_exponent_counts(h, &counts))
}

/// Exact aperiodic auto-correlation `A(A)(shift) = C(A,A)(shift)`.
pub fn auto_correlation<T: ExactInt>(a: &RestrictedVector, shift: i64) -> Result<CyclotomicInt<T>> {
    cross_correlation(a, a, shift)
}

/// Correlation values over every displacement `-n < shift < n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationProfile<T> {
    n: usize,
    h: u32,
    values: Vec<CyclotomicInt<T>>,
}

impl<T: ExactInt> CorrelationProfile<T> {
    pub fn cross(a: &RestrictedVector, b: &RestrictedVector) -> Result<Self> {
        check_pair(a, b)?;
        let h = exponent_of_two(a.q())?;
        let n = a.len() as i64;
        let values = (1 - n..n)
            .map(|shift| cross_correlation(a, b, shift))
            .collect::<Result<_>>()?;
        Ok(Self {
            n: a.len(),
            h,
            values,
        })
    }

    pub fn auto(a: &RestrictedVector) -> Result<Self> {
        Self::cross(a, a)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Value at `shift`; zero for `|shift| >= n`.
    pub fn get(&self, shift: i64) -> CyclotomicInt<T> {
        let n = self.n as i64;
        if shift <= -n || shift >= n {
            CyclotomicInt::zero(self.h)
        } else {
            self.values[(shift + n - 1) as usize].clone()
        }
    }

    /// `(shift, value)` pairs in increasing shift order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &CyclotomicInt<T>)> {
        let n = self.n as i64;
        (1 - n..n).zip(&self.values)
    }

    /// CSV rows `shift,c0,...,c{q/2-1}` under a header line.
    pub fn write_csv<W: Write>(&self, writer: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let half = 1usize << (self.h - 1);
        let mut header = vec!["shift".to_string()];
        header.extend((0..half).map(|t| format!("c{t}")));
        w.write_record(&header)?;
        for (shift, value) in self.iter() {
            let mut row = vec![shift.to_string()];
            row.extend(value.coords().iter().map(|c| c.to_string()));
            w.write_record(&row)?;
        }
        w.flush()
    }
}

/// Floating-point correlation values over every displacement.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexProfile<F> {
    n: usize,
    values: Vec<Complex<F>>,
}

/// Aperiodic cross-correlation of arbitrary complex vectors.
pub fn cross_correlation_complex<F: Real>(a: &[Complex<F>], b: &[Complex<F>], shift: i64) -> Complex<F> {
    assert_eq!(a.len(), b.len(), "correlation operands differ in length");
    let n = a.len() as i64;
    if shift >= n || shift <= -n {
        return Complex::new(F::zero(), F::zero());
    }
    let (a_start, b_start, terms) = if shift >= 0 {
        (shift as usize, 0usize, (n - shift) as usize)
    } else {
        (0usize, (-shift) as usize, (n + shift) as usize)
    };
    (0..terms).fold(Complex::new(F::zero(), F::zero()), |acc, i| {
        acc + a[a_start + i] * b[b_start + i].conj()
    })
}

impl<F: Real> ComplexProfile<F> {
    pub fn cross(a: &[Complex<F>], b: &[Complex<F>]) -> Self {
        let n = a.len() as i64;
        let values = (1 - n..n)
            .map(|shift| cross_correlation_complex(a, b, shift))
            .collect();
        Self {
            n: a.len(),
            values,
        }
    }

    pub fn auto(a: &[Complex<F>]) -> Self {
        Self::cross(a, a)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, shift: i64) -> Complex<F> {
        let n = self.n as i64;
        if shift <= -n || shift >= n {
            Complex::new(F::zero(), F::zero())
        } else {
            self.values[(shift + n - 1) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex<F>)> + '_ {
        let n = self.n as i64;
        (1 - n..n).zip(self.values.iter().copied())
    }

    /// CSV rows `shift,re,im` under a header line, 9 significant digits.
    pub fn write_csv<W: Write>(&self, writer: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["shift", "re", "im"])?;
        for (shift, value) in self.iter() {
            let re = value.re.to_f64().unwrap_or(f64::NAN);
            let im = value.im.to_f64().unwrap_or(f64::NAN);
            w.write_record([
                shift.to_string(),
                format_significant(re, 9),
                format_significant(im, 9),
            ])?;
        }
        w.flush()
    }
}

/// Outcome of a complementary-set check.
#[derive(Clone, Debug, PartialEq)]
pub enum Complementarity<T> {
    Complementary,
    /// First displacement whose auto-correlation sum is nonzero.
    Violation { shift: i64, sum: CyclotomicInt<T> },
}

impl<T> Complementarity<T> {
    pub fn holds(&self) -> bool {
        matches!(self, Complementarity::Complementary)
    }
}

fn check_members(set: &[RestrictedVector]) -> Result<&RestrictedVector> {
    let first = set.first().ok_or(Error::Empty)?;
    for member in &set[1..] {
        check_pair(first, member)?;
    }
    Ok(first)
}

/// Exact test that the auto-correlations of `set` sum to zero at every
/// nonzero displacement. Positive displacements are scanned first.
pub fn is_complementary_set<T: ExactInt>(set: &[RestrictedVector]) -> Result<Complementarity<T>> {
    let first = check_members(set)?;
    let h = exponent_of_two(first.q())?;
    let q = first.q() as usize;
    let half = q / 2;
    let n = first.len() as i64;
    let shifts = (1..n).chain((1..n).map(|s| -s));
    let mut counts = vec![0i64; q];
    for shift in shifts {
        counts.iter_mut().for_each(|c| *c = 0);
        for member in set {
            accumulate_counts(member, member, shift, &mut counts);
        }
        if (0..half).any(|t| counts[t] != counts[t + half]) {
            return Ok(Complementarity::Violation {
                shift,
                sum: CyclotomicInt::from_exponent_counts(h, &counts),
            });
        }
    }
    Ok(Complementarity::Complementary)
}

/// Approximate complementary-set test for any even `q`; returns the first
/// displacement whose sum has modulus above `tol`.
pub fn complementary_violation_approx<F: Real>(set: &[RestrictedVector], tol: F) -> Result<Option<(i64, Complex<F>)>> {
    let first = check_members(set)?;
    let vectors: Vec<Vec<Complex<F>>> = set.iter().map(|v| v.to_complex()).collect();
    let n = first.len() as i64;
    for shift in (1..n).chain((1..n).map(|s| -s)) {
        let sum = vectors
            .iter()
            .fold(Complex::new(F::zero(), F::zero()), |acc, v| {
                acc + cross_correlation_complex(v, v, shift)
            });
        if sum.norm() > tol {
            return Ok(Some((shift, sum)));
        }
    }
    Ok(None)
}

/// Both sides of the restriction expansion of `A(F)(shift)`:
/// the auto-correlation itself, and the sum of the auto-correlations of all
/// restrictions plus the cross-correlations of distinct restrictions.
pub fn restriction_sides<T: ExactInt>(
    f: &GeneralizedBooleanFunction,
    vars: &[usize],
    shift: i64,
) -> Result<(CyclotomicInt<T>, CyclotomicInt<T>)> {
    let h = exponent_of_two(f.q())?;
    let lhs = auto_correlation(&f.polyphase(), shift)?;
    let parts = (0..1usize << vars.len())
        .map(|d| f.restrict_at(vars, d).map(|(_, v)| v))
        .collect::<Result<Vec<_>>>()?;
    let mut rhs = CyclotomicInt::zero(h);
    for (d1, p1) in parts.iter().enumerate() {
        for (d2, p2) in parts.iter().enumerate() {
            let term = if d1 == d2 {
                auto_correlation(p1, shift)?
            } else {
                cross_correlation(p1, p2, shift)?
            };
            rhs = &rhs + &term;
        }
    }
    Ok((lhs, rhs))
}

/// Whether the restriction expansion holds exactly for `(f, vars, shift)`.
pub fn verify_lemma1(f: &GeneralizedBooleanFunction, vars: &[usize], shift: i64) -> Result<bool> {
    let (lhs, rhs) = restriction_sides::<num_bigint::BigInt>(f, vars, shift)?;
    Ok(lhs == rhs)
}
