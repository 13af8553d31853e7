//! Generalized Reed-Muller codes `ZRM^p_{2^h}(r,m)` and other monomial codes.
//!
//! Every code here is spanned by scaled monomials `2^s x_S`: a codeword is
//! the truth table of `sum_g digit_g 2^{s_g} x_{S_g}` with `digit_g` in
//! `0 .. 2^{h - s_g}`. The digits form a mixed-radix little-endian index, so
//! the code has exactly `2^{sum (h - s_g)}` words and the index bits are the
//! payload bits.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gbf::{GeneralizedBooleanFunction, ZqVector, MAX_VARIABLES};

/// Default enumeration cap, `2^24` words.
pub const DEFAULT_CAP_LOG2: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hamming,
    Lee,
}

pub fn wt_hamming(a: &ZqVector) -> u64 {
    a.values().iter().filter(|&&v| v != 0).count() as u64
}

pub fn wt_lee(a: &ZqVector) -> u64 {
    let q = a.q();
    a.values().iter().map(|&v| u64::from(v.min(q - v))).sum()
}

pub fn weight(a: &ZqVector, metric: Metric) -> u64 {
    match metric {
        Metric::Hamming => wt_hamming(a),
        Metric::Lee => wt_lee(a),
    }
}

fn weight_of(values: &[u32], q: u32, metric: Metric) -> u64 {
    match metric {
        Metric::Hamming => values.iter().filter(|&&v| v != 0).count() as u64,
        Metric::Lee => values.iter().map(|&v| u64::from(v.min(q - v))).sum(),
    }
}

/// Minimum distance between distinct words of an arbitrary word list.
pub fn min_pairwise_distance(words: &[ZqVector], metric: Metric) -> Option<u64> {
    let mut best: Option<u64> = None;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            let d = weight(&a.checked_sub(b).expect("words share a shape"), metric);
            if d > 0 {
                best = Some(best.map_or(d, |x| x.min(d)));
            }
        }
    }
    best
}

/// Allowed coefficients for a monomial of a given order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRule {
    /// Coefficient must be a multiple of `2^shift`.
    Multiple { shift: u32 },
    Forbidden,
}

/// Parameters `(h, p, r, m)` of `ZRM^p_{2^h}(r, m)`, with `q = 2^h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZrmParams {
    h: u32,
    p: u32,
    r: u32,
    m: u32,
}

impl ZrmParams {
    pub fn new(h: u32, p: u32, r: u32, m: u32) -> Result<Self> {
        if !(1..=16).contains(&h) {
            return Err(Error::InvalidParams(format!("alphabet exponent h = {h} outside 1..=16")));
        }
        if h <= p {
            return Err(Error::InvalidParams(format!("need h > p, got h = {h}, p = {p}")));
        }
        if r < p {
            return Err(Error::InvalidParams(format!("need r >= p, got r = {r}, p = {p}")));
        }
        if r > m {
            return Err(Error::InvalidParams(format!("need r <= m, got r = {r}, m = {m}")));
        }
        if m as usize > MAX_VARIABLES {
            return Err(Error::TooManyVariables(m as usize));
        }
        Ok(Self { h, p, r, m })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        1 << self.h
    }

    pub fn n(&self) -> usize {
        1 << self.m
    }

    /// Free up to order `r - p`, multiples of `2^i` at order `r - p + i`, none above `r`.
    pub fn coefficient_rule(&self, order: u32) -> CoefficientRule {
        zrm_rule(self.p, self.r, order)
    }

    /// `sum_{i=0}^{r-p} h C(m,i) + sum_{i=1}^{p} (h-i) C(m, i+r-p)`.
    pub fn log2_size(&self) -> u32 {
        let (h, p, r, m) = (self.h, self.p, self.r, self.m);
        let free: u32 = (0..=r - p).map(|i| h * binomial(m, i)).sum();
        let scaled: u32 = (1..=p).map(|i| (h - i) * binomial(m, i + r - p)).sum();
        free + scaled
    }

    /// Whether the ANF of `word` obeys the coefficient rules.
    pub fn contains(&self, word: &ZqVector) -> Result<bool> {
        if word.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        if word.q() != self.q() {
            return Err(Error::ModulusMismatch(self.q(), word.q()));
        }
        let f = GeneralizedBooleanFunction::interpolate(word)?;
        Ok(f.coeffs().iter().enumerate().all(|(mask, &c)| {
            c == 0
                || match self.coefficient_rule(mask.count_ones()) {
                    CoefficientRule::Forbidden => false,
                    CoefficientRule::Multiple { shift } => c % (1 << shift) == 0,
                }
        }))
    }

    /// One generator per monomial of order at most `r`, scaled by its minimal multiplier.
    pub fn code(&self) -> LinearCode {
        let gens = (0..self.n())
            .filter_map(|mask| match self.coefficient_rule(mask.count_ones()) {
                CoefficientRule::Multiple { shift } => Some(Generator { mask, shift }),
                CoefficientRule::Forbidden => None,
            })
            .collect();
        LinearCode::new(self.m as usize, self.h, gens).expect("ZRM generators are valid")
    }

    pub fn expected_min_distance(&self, metric: Metric) -> u64 {
        match metric {
            Metric::Hamming => 1 << (self.m - self.r),
            Metric::Lee => 1 << (self.m - self.r + self.p),
        }
    }
}

pub(crate) fn zrm_rule(p: u32, r: u32, order: u32) -> CoefficientRule {
    if order > r {
        CoefficientRule::Forbidden
    } else if order + p <= r {
        CoefficientRule::Multiple { shift: 0 }
    } else {
        CoefficientRule::Multiple { shift: order + p - r }
    }
}

/// Scaled monomial `2^shift * prod_{j in mask} x_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub mask: usize,
    pub shift: u32,
}

impl Generator {
    pub fn order(&self) -> u32 {
        self.mask.count_ones()
    }
}

/// A `Z_{2^h}`-linear code spanned by scaled monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    m: usize,
    h: u32,
    generators: Vec<Generator>,
    words: Vec<Vec<u32>>,
}

impl LinearCode {
    /// Generators are sorted by `(order, mask)`; duplicate masks are rejected.
    pub fn new(m: usize, h: u32, mut generators: Vec<Generator>) -> Result<Self> {
        if m > MAX_VARIABLES {
            return Err(Error::TooManyVariables(m));
        }
        if !(1..=16).contains(&h) {
            return Err(Error::InvalidParams(format!("alphabet exponent h = {h} outside 1..=16")));
        }
        generators.sort_by_key(|g| (g.order(), g.mask));
        if generators.windows(2).any(|w| w[0].mask == w[1].mask) {
            return Err(Error::InvalidParams("repeated generator monomial".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.mask >= 1 << m || g.shift >= h) {
            return Err(Error::InvalidParams(format!("invalid generator {g:?}")));
        }
        let q = 1u32 << h;
        let words = generators
            .iter()
            .map(|g| {
                let f = GeneralizedBooleanFunction::from_coeffs_unchecked(m, q, {
                    let mut c = vec![0; 1 << m];
                    c[g.mask] = 1 << g.shift;
                    c
                });
                f.evaluate().into_values()
            })
            .collect();
        Ok(Self {
            m,
            h,
            generators,
            words,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        1 << self.h
    }

    pub fn n(&self) -> usize {
        1 << self.m
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Digit width in bits of each generator.
    fn widths(&self) -> impl Iterator<Item = u32> + '_ {
        self.generators.iter().map(move |g| self.h - g.shift)
    }

    pub fn size_log2(&self) -> u32 {
        self.widths().sum()
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(1u8) << self.size_log2()
    }

    /// ANF of the word with the given index.
    pub fn function(&self, index: &BigUint) -> Result<GeneralizedBooleanFunction> {
        if index.bits() > u64::from(self.size_log2()) {
            return Err(Error::PayloadSize {
                expected: u64::from(self.size_log2()),
            });
        }
        let mut coeffs = vec![0u32; self.n()];
        let mut offset = 0u64;
        for (g, width) in self.generators.iter().zip(self.widths()) {
            let mut digit = 0u32;
            for b in 0..u64::from(width) {
                if index.bit(offset + b) {
                    digit |= 1 << b;
                }
            }
            offset += u64::from(width);
            coeffs[g.mask] = digit << g.shift;
        }
        Ok(GeneralizedBooleanFunction::from_coeffs_unchecked(self.m, self.q(), coeffs))
    }

    pub fn codeword_big(&self, index: &BigUint) -> Result<ZqVector> {
        Ok(self.function(index)?.evaluate())
    }

    pub fn codeword(&self, index: u64) -> Result<ZqVector> {
        self.codeword_big(&BigUint::from(index))
    }

    /// Index of `word`, or `None` if it is not a codeword.
    pub fn index_of(&self, word: &ZqVector) -> Result<Option<BigUint>> {
        if word.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        if word.q() != self.q() {
            return Err(Error::ModulusMismatch(self.q(), word.q()));
        }
        let f = GeneralizedBooleanFunction::interpolate(word)?;
        Ok(self.index_of_function(&f))
    }

    pub(crate) fn index_of_function(&self, f: &GeneralizedBooleanFunction) -> Option<BigUint> {
        let mut coeffs = f.coeffs().to_vec();
        let mut index = BigUint::zero();
        let mut offset = 0u32;
        for (g, width) in self.generators.iter().zip(self.widths()) {
            let c = std::mem::take(&mut coeffs[g.mask]);
            if c % (1 << g.shift) != 0 {
                return None;
            }
            index |= BigUint::from(c >> g.shift) << offset;
            offset += width;
        }
        coeffs.iter().all(|&c| c == 0).then_some(index)
    }

    pub fn contains(&self, word: &ZqVector) -> bool {
        matches!(self.index_of(word), Ok(Some(_)))
    }

    fn check_cap(&self, cap_log2: u32) -> Result<()> {
        let required_log2 = self.size_log2();
        if required_log2 > cap_log2 || required_log2 >= 64 {
            return Err(Error::CapExceeded {
                required_log2,
                cap_log2,
            });
        }
        Ok(())
    }

    /// Every codeword in index order, refusing codes above `2^cap_log2` words.
    pub fn enumerate(&self, cap_log2: u32) -> Result<Codewords<'_>> {
        self.check_cap(cap_log2)?;
        Ok(self.range(0, 1u64 << self.size_log2()))
    }

    /// Codewords with indices `start .. start + count` (clamped to the code).
    pub fn range(&self, start: u64, count: u64) -> Codewords<'_> {
        let total_log2 = self.size_log2();
        let total = if total_log2 >= 64 { u64::MAX } else { 1u64 << total_log2 };
        let start = start.min(total);
        let remaining = count.min(total - start);
        let mut digits = Vec::with_capacity(self.generators.len());
        let mut current = vec![0u32; self.n()];
        let q = self.q();
        let mut rest = start;
        for (word, width) in self.words.iter().zip(self.widths()) {
            let digit = if width >= 64 { rest } else { rest & ((1u64 << width) - 1) };
            rest = if width >= 64 { 0 } else { rest >> width };
            let digit = digit as u32;
            for (c, &w) in current.iter_mut().zip(word) {
                *c = ((u64::from(*c) + u64::from(digit) * u64::from(w)) % u64::from(q)) as u32;
            }
            digits.push(digit);
        }
        Codewords {
            code: self,
            digits,
            current,
            remaining,
            started: false,
        }
    }

    /// Minimum weight over nonzero codewords; `None` for the zero code.
    pub fn min_distance(&self, metric: Metric, cap_log2: u32) -> Result<Option<u64>> {
        self.check_cap(cap_log2)?;
        let q = self.q();
        let mut best: Option<u64> = None;
        let mut words = self.enumerate(cap_log2)?;
        words.next();
        while let Some(word) = words.next_values() {
            let w = weight_of(word, q, metric);
            best = Some(best.map_or(w, |b| b.min(w)));
        }
        Ok(best)
    }
}

/// Odometer enumeration of a [`LinearCode`].
///
/// Stepping a digit adds its generator word once; wrapping a digit of radix
/// `2^{h-s}` adds `2^h` times the monomial, which is zero, so each step costs
/// one vector addition amortized.
pub struct Codewords<'a> {
    code: &'a LinearCode,
    digits: Vec<u32>,
    current: Vec<u32>,
    remaining: u64,
    started: bool,
}

impl Codewords<'_> {
    fn advance(&mut self) {
        let q = self.code.q();
        for (g, width) in self.code.widths().enumerate() {
            for (c, &w) in self.current.iter_mut().zip(&self.code.words[g]) {
                *c = (*c + w) % q;
            }
            self.digits[g] += 1;
            if self.digits[g] < (1 << width) {
                return;
            }
            self.digits[g] = 0;
        }
    }

    /// Borrowing variant of `next`.
    pub fn next_values(&mut self) -> Option<&[u32]> {
        if self.remaining == 0 {
            return None;
        }
        if self.started {
            self.advance();
        } else {
            self.started = true;
        }
        self.remaining -= 1;
        Some(&self.current)
    }
}

impl Iterator for Codewords<'_> {
    type Item = ZqVector;

    fn next(&mut self) -> Option<ZqVector> {
        let q = self.code.q();
        self.next_values()
            .map(|v| ZqVector::from_parts_unchecked(q, v.to_vec()))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining.to_usize().unwrap_or(usize::MAX);
        (n, Some(n))
    }
}
