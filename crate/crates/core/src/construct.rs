//! Complementary pairs and sets from quadratic paths, and the coset codes
//! built on them.
//!
//! The variables split into a restricted list `J` (size `k`) and a free list
//! `I` (size `m - k`). A function whose every restriction on `J` is a
//! `(q/2)`-weighted Hamiltonian path on `I` plus an affine part lies in a
//! complementary set of size `2^{k+1}`. The codes are cosets `b + A` where
//! `b` is such a path function (the set `R`) and `A` a linear monomial code
//! of affine-per-restriction functions.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{weight, zrm_rule, CoefficientRule, Generator, LinearCode, Metric};
use crate::error::{Error, Result};
use crate::gbf::{variable_mask, GeneralizedBooleanFunction, RestrictedVector, ZqVector, MAX_VARIABLES};

type Gbf = GeneralizedBooleanFunction;

/// Partition of `{0, ..., m-1}` into restricted indices `J` and free indices `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSplit {
    m: usize,
    restricted: Vec<usize>,
    free: Vec<usize>,
}

impl IndexSplit {
    /// `restricted` must be strictly increasing and below `m`.
    pub fn new(m: usize, restricted: Vec<usize>) -> Result<Self> {
        if m > MAX_VARIABLES {
            return Err(Error::TooManyVariables(m));
        }
        let mask = variable_mask(&restricted, m)?;
        let free = (0..m).filter(|v| mask & (1 << v) == 0).collect();
        Ok(Self { m, restricted, free })
    }

    /// `J = {m-k, ..., m-1}`.
    pub fn top(m: usize, k: usize) -> Result<Self> {
        if k > m {
            return Err(Error::InvalidParams(format!("k = {k} exceeds m = {m}")));
        }
        Self::new(m, (m - k..m).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.restricted.len()
    }

    /// The restricted indices `J`.
    pub fn restricted(&self) -> &[usize] {
        &self.restricted
    }

    /// The free indices `I`.
    pub fn free(&self) -> &[usize] {
        &self.free
    }

    fn restricted_mask(&self) -> usize {
        self.restricted.iter().fold(0, |acc, &v| acc | (1 << v))
    }

    fn free_mask(&self) -> usize {
        self.free.iter().fold(0, |acc, &v| acc | (1 << v))
    }

    /// Number of restriction patterns `2^k`.
    pub fn patterns(&self) -> usize {
        1 << self.k()
    }
}

/// A Hamiltonian path on the free indices, stored from its smaller endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathForm {
    order: Vec<usize>,
}

impl PathForm {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The two admissible choices of the extra linear term.
    pub fn endpoints(&self) -> (usize, usize) {
        (self.order[0], *self.order.last().expect("paths are nonempty"))
    }

    pub fn is_endpoint(&self, var: usize) -> bool {
        let (a, b) = self.endpoints();
        var == a || var == b
    }
}

fn walk_path(vertices: &[usize], edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    if vertices.len() == 1 {
        return edges.is_empty().then(|| vertices.to_vec());
    }
    if edges.len() != vertices.len() - 1 {
        return None;
    }
    let mut adjacent: HashMap<usize, Vec<usize>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
    for &(u, v) in edges {
        adjacent.get_mut(&u)?.push(v);
        adjacent.get_mut(&v)?.push(u);
    }
    if adjacent.values().any(|n| n.len() > 2) {
        return None;
    }
    let start = *vertices.iter().find(|v| adjacent[v].len() == 1)?;
    let mut order = vec![start];
    let mut previous = usize::MAX;
    let mut current = start;
    while let Some(&next) = adjacent[&current].iter().find(|&&n| n != previous) {
        order.push(next);
        previous = current;
        current = next;
        if order.len() > vertices.len() {
            return None;
        }
    }
    (order.len() == vertices.len()).then_some(order)
}

/// Path order of `f` restricted at pattern `d` on `split.restricted()`, if that
/// restriction is `(q/2) sum x_{pi(a)} x_{pi(a+1)}` plus an affine part.
///
/// With one free variable the quadratic sum is empty and the single vertex is
/// its own path; with none the form does not exist.
pub fn is_path_form(f: &Gbf, split: &IndexSplit, d: usize) -> Result<Option<PathForm>> {
    check_split(f, split)?;
    if split.free.is_empty() {
        return Ok(None);
    }
    let (g, _) = f.restrict_at(&split.restricted, d)?;
    let half = f.q() / 2;
    let mut edges = Vec::new();
    for (mask, &c) in g.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        match mask.count_ones() {
            0 | 1 => {}
            2 if c == half => edges.push((mask.trailing_zeros() as usize, (usize::BITS - 1 - mask.leading_zeros()) as usize)),
            _ => return Ok(None),
        }
    }
    let order = walk_path(&split.free, &edges);
    Ok(order.map(|mut order| {
        if order[0] > order[order.len() - 1] {
            order.reverse();
        }
        PathForm { order }
    }))
}

fn check_split(f: &Gbf, split: &IndexSplit) -> Result<()> {
    if f.m() != split.m {
        return Err(Error::InvalidParams(format!(
            "function has {} variables, split has {}",
            f.m(),
            split.m
        )));
    }
    Ok(())
}

fn require_path(f: &Gbf, split: &IndexSplit, d: usize) -> Result<PathForm> {
    is_path_form(f, split, d)?.ok_or(Error::NotPathForm(d))
}

/// The restricted vectors of `f` and `f + (q/2) x_a + c'` at pattern `d`.
pub fn golay_pair(
    f: &Gbf,
    split: &IndexSplit,
    d: usize,
    a: usize,
    c_prime: u32,
) -> Result<(RestrictedVector, RestrictedVector)> {
    let form = require_path(f, split, d)?;
    if !form.is_endpoint(a) {
        return Err(Error::NotEndpoint { d, var: a });
    }
    let q = f.q();
    let partner = &(f + &Gbf::monomial(f.m(), q, &[a], q / 2)?) + &Gbf::constant(f.m(), q, c_prime)?;
    let (_, first) = f.restrict_at(&split.restricted, d)?;
    let (_, second) = partner.restrict_at(&split.restricted, d)?;
    Ok((first, second))
}

/// `e = sum_d x_{a_d} prod_a x_{j_a}^{d_a} (1 - x_{j_a})^{1 - d_a}`.
pub fn selector_e(a_map: &[usize], split: &IndexSplit, q: u32) -> Result<Gbf> {
    if a_map.len() != split.patterns() {
        return Err(Error::LengthMismatch {
            expected: split.patterns(),
            got: a_map.len(),
        });
    }
    let mut e = Gbf::zero(split.m, q)?;
    for (d, &a) in a_map.iter().enumerate() {
        if !split.free.contains(&a) {
            return Err(Error::NotEndpoint { d, var: a });
        }
        let term = &Gbf::monomial(split.m, q, &[a], 1)? * &Gbf::indicator(split.m, q, &split.restricted, d)?;
        e = &e + &term;
    }
    Ok(e)
}

/// The `2^{k+1}` functions `f + (q/2)(sum c_a x_{j_a} + c' e)`; member
/// `c' + 2 c` carries `c = sum c_a 2^a`.
pub fn complementary_functions(f: &Gbf, split: &IndexSplit, a_map: &[usize]) -> Result<Vec<Gbf>> {
    check_split(f, split)?;
    if a_map.len() != split.patterns() {
        return Err(Error::LengthMismatch {
            expected: split.patterns(),
            got: a_map.len(),
        });
    }
    for (d, &a) in a_map.iter().enumerate() {
        if !require_path(f, split, d)?.is_endpoint(a) {
            return Err(Error::NotEndpoint { d, var: a });
        }
    }
    let q = f.q();
    let half = q / 2;
    let m = f.m();
    let e = selector_e(a_map, split, q)?.scale(half);
    let mut members = Vec::with_capacity(2 * split.patterns());
    for c in 0..split.patterns() {
        let mut shifted = f.clone();
        for (a, &j) in split.restricted.iter().enumerate() {
            if (c >> a) & 1 == 1 {
                shifted = &shifted + &Gbf::monomial(m, q, &[j], half)?;
            }
        }
        members.push(shifted.clone());
        members.push(&shifted + &e);
    }
    Ok(members)
}

/// Full polyphase vectors of [`complementary_functions`].
pub fn complementary_set(f: &Gbf, split: &IndexSplit, a_map: &[usize]) -> Result<Vec<RestrictedVector>> {
    Ok(complementary_functions(f, split, a_map)?
        .iter()
        .map(Gbf::polyphase)
        .collect())
}

/// PMEPR bound `2^{k+1}` if every restriction on `split` has path form.
pub fn certify_pmepr(f: &Gbf, split: &IndexSplit) -> Result<Option<u64>> {
    for d in 0..split.patterns() {
        if is_path_form(f, split, d)?.is_none() {
            return Ok(None);
        }
    }
    Ok(Some(1 << (split.k() + 1)))
}

/// Smallest certified bound over all restricted sets of size at most `k_max`.
pub fn certify_pmepr_search(f: &Gbf, k_max: usize) -> Result<Option<(u64, IndexSplit)>> {
    let m = f.m();
    for k in 0..=k_max.min(m.saturating_sub(1)) {
        for restricted in (0..m).combinations(k) {
            let split = IndexSplit::new(m, restricted)?;
            if let Some(bound) = certify_pmepr(f, &split)? {
                return Ok(Some((bound, split)));
            }
        }
    }
    Ok(None)
}

/// Random `f` whose restrictions are all of path form, with a random valid
/// endpoint choice for each pattern.
pub fn random_path_instance<R: Rng + ?Sized>(rng: &mut R, q: u32, split: &IndexSplit) -> Result<(Gbf, Vec<usize>)> {
    if split.free.is_empty() {
        return Err(Error::InvalidParams("no free variables for a path".into()));
    }
    let m = split.m;
    let mut parts = Vec::with_capacity(split.patterns());
    let mut a_map = Vec::with_capacity(split.patterns());
    for _ in 0..split.patterns() {
        let mut path = split.free.clone();
        path.shuffle(rng);
        let mut part = Gbf::constant(m, q, rng.gen_range(0..q))?;
        for w in path.windows(2) {
            part = &part + &Gbf::monomial(m, q, w, q / 2)?;
        }
        for &v in &split.free {
            part = &part + &Gbf::monomial(m, q, &[v], rng.gen_range(0..q))?;
        }
        parts.push(part);
        a_map.push(if rng.gen_bool(0.5) { path[0] } else { path[path.len() - 1] });
    }
    Ok((Gbf::reconstruct(&parts, &split.restricted)?, a_map))
}

/// Canonical paths on `vertices`: permutations with first element below the last,
/// in lexicographic order.
pub fn canonical_paths(vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    if sorted.len() == 1 {
        return vec![sorted];
    }
    let n = sorted.len();
    sorted
        .into_iter()
        .permutations(n)
        .filter(|p| p[0] < p[n - 1])
        .collect()
}

/// Quadratic path sum `coeff * sum x_{pi(a)} x_{pi(a+1)}`.
pub fn path_function(m: usize, q: u32, path: &[usize], coeff: u32) -> Result<Gbf> {
    let mut f = Gbf::zero(m, q)?;
    for w in path.windows(2) {
        f = &f + &Gbf::monomial(m, q, w, coeff)?;
    }
    Ok(f)
}

/// All `(m!/2) q^{m+1}` functions `(q/2) sum x_{pi(a)} x_{pi(a+1)} + sum c_a x_a + c`
/// with canonical `pi`, in (path, coefficients) order.
pub fn pair_family(m: usize, q: u32) -> Result<Vec<Gbf>> {
    if m < 2 {
        return Err(Error::InvalidParams("pair family needs m >= 2".into()));
    }
    let vertices: Vec<usize> = (0..m).collect();
    let mut family = Vec::new();
    for path in canonical_paths(&vertices) {
        let quadratic = path_function(m, q, &path, q / 2)?;
        for affine in (0..=m).map(|_| 0..q).multi_cartesian_product() {
            let mut f = &quadratic + &Gbf::constant(m, q, affine[m])?;
            for (v, &c) in affine[..m].iter().enumerate() {
                f = &f + &Gbf::monomial(m, q, &[v], c)?;
            }
            family.push(f);
        }
    }
    Ok(family)
}

/// Splits a length-`2^m` word into the `2^k` subsequences on which the
/// restricted bits equal each pattern `d`; each keeps index order.
pub fn deinterleave(word: &ZqVector, split: &IndexSplit) -> Result<Vec<ZqVector>> {
    if word.len() != 1 << split.m {
        return Err(Error::LengthMismatch {
            expected: 1 << split.m,
            got: word.len(),
        });
    }
    let j_mask = split.restricted_mask();
    let mut parts = vec![Vec::with_capacity(1 << split.free.len()); split.patterns()];
    for (i, &v) in word.values().iter().enumerate() {
        parts[crate::gbf::gather_bits(i & j_mask, &split.restricted)].push(v);
    }
    parts.into_iter().map(|p| ZqVector::new(word.q(), p)).collect()
}

fn check_h(h: u32) -> Result<()> {
    if !(1..=16).contains(&h) {
        return Err(Error::InvalidParams(format!("alphabet exponent h = {h} outside 1..=16")));
    }
    Ok(())
}

/// Masks `x_S` and `x_i x_S` for `S` a subset of `J`, `i` in `I`.
fn l_masks(split: &IndexSplit) -> Vec<usize> {
    let subsets: Vec<usize> = (0..split.patterns())
        .map(|s| {
            split
                .restricted
                .iter()
                .enumerate()
                .filter(|(a, _)| (s >> a) & 1 == 1)
                .fold(0, |acc, (_, &j)| acc | (1 << j))
        })
        .collect();
    let mut masks = subsets.clone();
    for &i in &split.free {
        masks.extend(subsets.iter().map(|s| s | (1 << i)));
    }
    masks
}

/// `L_{2^h}(k, m)`: functions `sum_a x_{i_a} g_a(x_J) + g'(x_J)`.
pub fn l_code(h: u32, split: &IndexSplit) -> Result<LinearCode> {
    check_h(h)?;
    let gens = l_masks(split).into_iter().map(|mask| Generator { mask, shift: 0 }).collect();
    LinearCode::new(split.m, h, gens)
}

/// `h 2^k (m - k + 1)`.
pub fn l_code_log2_size(h: u32, k: u32, m: u32) -> u32 {
    h * (1 << k) * (m - k + 1)
}

fn check_a_params(h: u32, p: u32, r: u32, m: u32) -> Result<()> {
    check_h(h)?;
    if h <= p {
        return Err(Error::InvalidParams(format!("need h > p, got h = {h}, p = {p}")));
    }
    if r < p {
        return Err(Error::InvalidParams(format!("need r >= p, got r = {r}, p = {p}")));
    }
    if r > m {
        return Err(Error::InvalidParams(format!("need r <= m, got r = {r}, m = {m}")));
    }
    Ok(())
}

/// `A^p_{2^h}(k, r, m) = L_{2^h}(k, m) ∩ ZRM^p_{2^h}(r, m)`, generated per monomial:
/// an order-`o` part of `g_a` or `g'` takes the ZRM rule of the total order.
pub fn a_code(h: u32, p: u32, r: u32, split: &IndexSplit) -> Result<LinearCode> {
    check_a_params(h, p, r, split.m as u32)?;
    let gens = l_masks(split)
        .into_iter()
        .filter_map(|mask| match zrm_rule(p, r, mask.count_ones()) {
            CoefficientRule::Multiple { shift } => Some(Generator { mask, shift }),
            CoefficientRule::Forbidden => None,
        })
        .collect();
    LinearCode::new(split.m, h, gens)
}

fn choose(n: u32, k: i64) -> u32 {
    if k < 0 || k > i64::from(n) {
        0
    } else {
        binomial(n, k as u32)
    }
}

/// Closed-form `log2 |A^p_{2^h}(k, r, m)|`.
pub fn a_code_log2_size(h: u32, p: u32, k: u32, r: u32, m: u32) -> u32 {
    let (h, p, k, r, m) = (h as i64, p as i64, k, r as i64, m as i64);
    let restricted_part: i64 = (0..=r - p).map(|i| h * i64::from(choose(k, i))).sum::<i64>()
        + (1..=p).map(|i| (h - i) * i64::from(choose(k, i + r - p))).sum::<i64>();
    let per_free: i64 = (0..=r - p - 1).map(|i| h * i64::from(choose(k, i))).sum::<i64>()
        + (1..=p).map(|i| (h - i) * i64::from(choose(k, i + r - p - 1))).sum::<i64>();
    (restricted_part + (m - i64::from(k)) * per_free) as u32
}

/// `2^k` canonical paths on the free indices, one per restriction pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationTuple {
    split: IndexSplit,
    paths: Vec<Vec<usize>>,
}

impl PermutationTuple {
    pub fn new(split: IndexSplit, paths: Vec<Vec<usize>>) -> Result<Self> {
        if paths.len() != split.patterns() {
            return Err(Error::LengthMismatch {
                expected: split.patterns(),
                got: paths.len(),
            });
        }
        let mut free = split.free.clone();
        free.sort_unstable();
        for path in &paths {
            let mut sorted = path.clone();
            sorted.sort_unstable();
            if sorted != free {
                return Err(Error::InvalidParams(format!("{path:?} is not a permutation of {free:?}")));
            }
            if path.len() > 1 && path[0] > path[path.len() - 1] {
                return Err(Error::InvalidParams(format!("{path:?} is not canonical")));
            }
        }
        Ok(Self { split, paths })
    }

    pub fn split(&self) -> &IndexSplit {
        &self.split
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn is_diagonal(&self) -> bool {
        self.paths.windows(2).all(|w| w[0] == w[1])
    }

    /// `2^{h-1} sum_d sum_a x_{pi_d(a)} x_{pi_d(a+1)} prod x_J^d (1 - x_J)^{1-d}`.
    pub fn representative(&self, h: u32) -> Result<Gbf> {
        check_h(h)?;
        let q = 1u32 << h;
        let m = self.split.m;
        let mut b = Gbf::zero(m, q)?;
        for (d, path) in self.paths.iter().enumerate() {
            let quadratic = path_function(m, q, path, q / 2)?;
            b = &b + &(&quadratic * &Gbf::indicator(m, q, &self.split.restricted, d)?);
        }
        Ok(b)
    }
}

/// The coset representatives `R_{2^h}(k, m)`, or `R'` when every pattern
/// shares one path. Index `t` reads the path indices of patterns
/// `d = 0, 1, ...` as big-endian digits of radix `(m-k)!/2`.
#[derive(Clone, Debug)]
pub struct RepresentativeSet {
    h: u32,
    split: IndexSplit,
    paths: Vec<Vec<usize>>,
    diagonal: bool,
}

impl RepresentativeSet {
    fn new(h: u32, split: &IndexSplit, diagonal: bool) -> Result<Self> {
        check_h(h)?;
        if split.free.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "coset representatives need m - k >= 2, got {}",
                split.free.len()
            )));
        }
        Ok(Self {
            h,
            split: split.clone(),
            paths: canonical_paths(&split.free),
            diagonal,
        })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn split(&self) -> &IndexSplit {
        &self.split
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    /// `(m-k)!/2`.
    pub fn paths_per_pattern(&self) -> usize {
        self.paths.len()
    }

    pub fn len(&self) -> BigUint {
        let radix = BigUint::from(self.paths.len());
        if self.diagonal {
            radix
        } else {
            num_traits::pow(radix, self.split.patterns())
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tuple(&self, index: &BigUint) -> Result<PermutationTuple> {
        if index >= &self.len() {
            return Err(Error::InvalidParams(format!("representative index {index} out of range")));
        }
        let radix = BigUint::from(self.paths.len());
        let patterns = self.split.patterns();
        let digits: Vec<usize> = if self.diagonal {
            vec![index.to_usize().expect("index below radix"); patterns]
        } else {
            let mut rest = index.clone();
            let mut digits = vec![0usize; patterns];
            for d in (0..patterns).rev() {
                digits[d] = (&rest % &radix).to_usize().expect("digit below radix");
                rest /= &radix;
            }
            digits
        };
        let paths = digits.into_iter().map(|t| self.paths[t].clone()).collect();
        PermutationTuple::new(self.split.clone(), paths)
    }

    /// Index of `tuple`, or `None` if it is not in this set.
    pub fn index_of(&self, tuple: &PermutationTuple) -> Option<BigUint> {
        if tuple.split != self.split || (self.diagonal && !tuple.is_diagonal()) {
            return None;
        }
        let positions: Option<Vec<usize>> = tuple
            .paths
            .iter()
            .map(|p| self.paths.iter().position(|c| c == p))
            .collect();
        let positions = positions?;
        if self.diagonal {
            return Some(BigUint::from(positions[0]));
        }
        let radix = BigUint::from(self.paths.len());
        Some(positions.into_iter().fold(BigUint::zero(), |acc, t| acc * &radix + BigUint::from(t)))
    }

    pub fn representative(&self, index: &BigUint) -> Result<Gbf> {
        self.tuple(index)?.representative(self.h)
    }

    /// Every representative as `(tuple, function)`, in index order.
    pub fn iter(&self) -> impl Iterator<Item = (PermutationTuple, Gbf)> + '_ {
        let count = self.len().to_u64().expect("representative count fits u64");
        (0..count).map(move |t| {
            let tuple = self.tuple(&BigUint::from(t)).expect("index in range");
            let b = tuple.representative(self.h).expect("valid alphabet");
            (tuple, b)
        })
    }
}

/// `R_{2^h}(k, m)`: `((m-k)!/2)^{2^k}` representatives.
pub fn r_code(h: u32, split: &IndexSplit) -> Result<RepresentativeSet> {
    RepresentativeSet::new(h, split, false)
}

/// `R'_{2^h}(k, m)`: the `(m-k)!/2` representatives sharing one path.
pub fn r_prime_code(h: u32, split: &IndexSplit) -> Result<RepresentativeSet> {
    RepresentativeSet::new(h, split, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodeClass {
    I,
    II,
    III,
}

impl std::str::FromStr for CodeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "1" => Ok(CodeClass::I),
            "II" | "2" => Ok(CodeClass::II),
            "III" | "3" => Ok(CodeClass::III),
            other => Err(Error::InvalidParams(format!("unknown code class {other:?}"))),
        }
    }
}

impl std::fmt::Display for CodeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CodeClass::I => "I",
            CodeClass::II => "II",
            CodeClass::III => "III",
        })
    }
}

/// Construction file: `{"class", "h", "p", "k", "r", "m", "J", "rep_index"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionConfig {
    pub class: CodeClass,
    pub h: u32,
    pub p: u32,
    pub k: u32,
    #[serde(default)]
    pub r: Option<u32>,
    pub m: u32,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub restricted: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep_index: Option<u64>,
}

/// Validated parameters of a Class I/II/III code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassParams {
    class: CodeClass,
    h: u32,
    p: u32,
    k: u32,
    r: u32,
    m: u32,
    split: IndexSplit,
    rep_index: u64,
}

impl ClassParams {
    /// `restricted` defaults to the top `k` indices; `r` is unused by Class III
    /// (its base code is always `A^{p-1}(k, k+1, m)`) and defaults to `k + 2` there.
    pub fn new(
        class: CodeClass,
        h: u32,
        p: u32,
        k: u32,
        r: Option<u32>,
        m: u32,
        restricted: Option<Vec<usize>>,
        rep_index: u64,
    ) -> Result<Self> {
        check_h(h)?;
        if m as usize > MAX_VARIABLES {
            return Err(Error::TooManyVariables(m as usize));
        }
        if k >= m {
            return Err(Error::InvalidParams(format!("need k < m, got k = {k}, m = {m}")));
        }
        let split = match restricted {
            Some(j) => IndexSplit::new(m as usize, j)?,
            None => IndexSplit::top(m as usize, k as usize)?,
        };
        if split.k() != k as usize {
            return Err(Error::InvalidParams(format!("J has {} entries, k = {k}", split.k())));
        }
        if m - k < 2 {
            return Err(Error::InvalidParams(format!("need m - k >= 2, got {}", m - k)));
        }
        let r = match class {
            CodeClass::I | CodeClass::II => {
                let r = r.ok_or_else(|| Error::InvalidParams("class I/II codes need r".into()))?;
                check_a_params(h, p, r, m)?;
                r
            }
            CodeClass::III => {
                if p == 0 {
                    return Err(Error::InvalidParams("class III codes need p > 0".into()));
                }
                if h <= p {
                    return Err(Error::InvalidParams(format!("need h > p, got h = {h}, p = {p}")));
                }
                if p > k + 2 {
                    return Err(Error::InvalidParams(format!("need p <= k + 2, got p = {p}, k = {k}")));
                }
                r.unwrap_or(k + 2)
            }
        };
        let params = Self {
            class,
            h,
            p,
            k,
            r,
            m,
            split,
            rep_index,
        };
        if class == CodeClass::I {
            let reps = r_code(h, &params.split)?.len();
            if BigUint::from(rep_index) >= reps {
                return Err(Error::InvalidParams(format!(
                    "representative index {rep_index} out of range (0..{reps})"
                )));
            }
        }
        Ok(params)
    }

    pub fn from_config(config: &ConstructionConfig) -> Result<Self> {
        Self::new(
            config.class,
            config.h,
            config.p,
            config.k,
            config.r,
            config.m,
            config.restricted.clone(),
            config.rep_index.unwrap_or(0),
        )
    }

    pub fn class(&self) -> CodeClass {
        self.class
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn split(&self) -> &IndexSplit {
        &self.split
    }

    pub fn rep_index(&self) -> u64 {
        self.rep_index
    }

    pub fn pmepr_bound(&self) -> u64 {
        1 << (self.k + 1)
    }

    /// Minimum distances `(Hamming, Lee)` claimed for this class, where the
    /// class containment argument applies.
    pub fn claimed_distances(&self) -> Option<(u64, u64)> {
        let (m, r, p, k) = (self.m, self.r, self.p, self.k);
        match self.class {
            CodeClass::I => Some((1 << (m - r), 1 << (m - r + p))),
            CodeClass::II if k > 0 && r > 1 => Some((1 << (m - r), 1 << (m - r + p))),
            // The ambient ZRM^{p+1}(2, m) needs h > p + 1.
            CodeClass::II if k == 0 && r == 1 && self.h > p + 1 => Some((1 << (m - 2), 1 << (m - 1 + p))),
            CodeClass::II => None,
            CodeClass::III => Some((1 << (m - k - 2), 1 << (m - k - 2 + p))),
        }
    }
}

/// A Class I/II/III code: union of cosets `b + A` over its representatives.
///
/// Word index `t` = `rep * 2^{log2 |A|} + a`, with `a` the base-code index,
/// so for classes II and III a payload below `2^capacity` is its own index.
#[derive(Clone, Debug)]
pub struct ClassCode {
    params: ClassParams,
    reps: RepresentativeSet,
    base: LinearCode,
}

impl ClassCode {
    pub fn new(params: ClassParams) -> Result<Self> {
        let split = &params.split;
        let (reps, base) = match params.class {
            CodeClass::I => (r_code(params.h, split)?, a_code(params.h, params.p, params.r, split)?),
            CodeClass::II => (r_prime_code(params.h, split)?, a_code(params.h, params.p, params.r, split)?),
            CodeClass::III => (r_code(params.h, split)?, a_code(params.h, params.p - 1, params.k + 1, split)?),
        };
        Ok(Self { params, reps, base })
    }

    pub fn params(&self) -> &ClassParams {
        &self.params
    }

    /// The linear code whose cosets make up this code.
    pub fn base(&self) -> &LinearCode {
        &self.base
    }

    pub fn representatives(&self) -> &RepresentativeSet {
        &self.reps
    }

    /// Number of cosets.
    pub fn coset_count(&self) -> BigUint {
        match self.params.class {
            CodeClass::I => BigUint::one(),
            _ => self.reps.len(),
        }
    }

    fn rep_of_coset(&self, coset: &BigUint) -> BigUint {
        match self.params.class {
            CodeClass::I => BigUint::from(self.params.rep_index),
            _ => coset.clone(),
        }
    }

    pub fn size(&self) -> BigUint {
        self.coset_count() << self.base.size_log2()
    }

    pub fn size_log2(&self) -> f64 {
        let cosets = self.coset_count();
        let bits = cosets.bits();
        let cosets_log2 = if bits <= 53 {
            cosets.to_f64().expect("small count").log2()
        } else {
            let shift = bits - 53;
            (&cosets >> shift).to_f64().expect("shifted count").log2() + shift as f64
        };
        cosets_log2 + f64::from(self.base.size_log2())
    }

    /// Encodable bits: `log2 |A|` plus `floor(log2 #cosets)`.
    pub fn capacity_bits(&self) -> u64 {
        u64::from(self.base.size_log2()) + self.coset_count().bits() - 1
    }

    /// Representative word of coset `coset`.
    pub fn coset_representative(&self, coset: &BigUint) -> Result<ZqVector> {
        Ok(self.reps.representative(&self.rep_of_coset(coset))?.evaluate())
    }

    pub fn codeword(&self, index: &BigUint) -> Result<ZqVector> {
        if index >= &self.size() {
            return Err(Error::InvalidParams(format!("codeword index {index} out of range")));
        }
        let a_bits = self.base.size_log2();
        let coset = index >> a_bits;
        let a_index = index - (&coset << a_bits);
        let b = self.coset_representative(&coset)?;
        b.checked_add(&self.base.codeword_big(&a_index)?)
    }

    /// Codewords with indices `start .. start + count`, clamped to the code.
    pub fn range(&self, start: u64, count: u64) -> impl Iterator<Item = (u64, ZqVector)> + '_ {
        let a_bits = self.base.size_log2();
        let per_coset = 1u64 << a_bits;
        let total = self.size().to_u64().unwrap_or(u64::MAX);
        let end = start.saturating_add(count).min(total);
        let first_coset = start / per_coset;
        let last_coset = if end == 0 { 0 } else { (end - 1) / per_coset + 1 };
        (first_coset..last_coset.max(first_coset)).flat_map(move |coset| {
            let b = self
                .coset_representative(&BigUint::from(coset))
                .expect("coset in range");
            let lo = (coset * per_coset).max(start);
            let hi = ((coset + 1) * per_coset).min(end);
            self.base
                .range(lo - coset * per_coset, hi.saturating_sub(lo))
                .enumerate()
                .map(move |(t, a)| (lo + t as u64, b.checked_add(&a).expect("same shape")))
        })
    }

    /// Every codeword in index order, refusing codes above `2^cap_log2` words.
    pub fn enumerate(&self, cap_log2: u32) -> Result<impl Iterator<Item = (u64, ZqVector)> + '_> {
        let size = self.size();
        if size.bits() > u64::from(cap_log2) + 1 || size > (BigUint::one() << cap_log2) {
            return Err(Error::CapExceeded {
                required_log2: self.size_log2().ceil() as u32,
                cap_log2,
            });
        }
        Ok(self.range(0, size.to_u64().expect("size below cap")))
    }

    /// Codeword carrying `payload`, which must be below `2^capacity_bits`.
    pub fn encode(&self, payload: &BigUint) -> Result<ZqVector> {
        if payload.bits() > self.capacity_bits() {
            return Err(Error::PayloadSize {
                expected: self.capacity_bits(),
            });
        }
        self.codeword(payload)
    }

    /// Index of `word` in this code, or `None` if it is not a codeword.
    ///
    /// The ANF splits uniquely: monomials with two free variables belong to the
    /// representative, the rest to the base code.
    pub fn index_of(&self, word: &ZqVector) -> Result<Option<BigUint>> {
        if word.len() != self.base.n() {
            return Err(Error::LengthMismatch {
                expected: self.base.n(),
                got: word.len(),
            });
        }
        if word.q() != self.base.q() {
            return Err(Error::ModulusMismatch(self.base.q(), word.q()));
        }
        let split = &self.params.split;
        let free_mask = split.free_mask();
        let f = Gbf::interpolate(word)?;
        let (m, q) = (f.m(), f.q());
        let mut quadratic = vec![0u32; f.len()];
        let mut rest = f.coeffs().to_vec();
        for (mask, c) in rest.iter_mut().enumerate() {
            if (mask & free_mask).count_ones() == 2 {
                quadratic[mask] = std::mem::take(c);
            }
        }
        let b = Gbf::from_coeffs_unchecked(m, q, quadratic);
        let a = Gbf::from_coeffs_unchecked(m, q, rest);

        let mut paths = Vec::with_capacity(split.patterns());
        for d in 0..split.patterns() {
            match is_path_form(&b, split, d)? {
                Some(form) => paths.push(form.order),
                None => return Ok(None),
            }
        }
        let tuple = PermutationTuple::new(split.clone(), paths)?;
        if tuple.representative(self.params.h)? != b {
            return Ok(None);
        }
        let Some(rep) = self.reps.index_of(&tuple) else {
            return Ok(None);
        };
        let coset = match self.params.class {
            CodeClass::I if rep != BigUint::from(self.params.rep_index) => return Ok(None),
            CodeClass::I => BigUint::zero(),
            _ => rep,
        };
        let Some(a_index) = self.base.index_of_function(&a) else {
            return Ok(None);
        };
        Ok(Some((coset << self.base.size_log2()) + a_index))
    }

    /// Payload carried by `word`; errors for non-codewords and for codewords
    /// beyond the encodable range.
    pub fn codeword_index(&self, word: &ZqVector) -> Result<BigUint> {
        let index = self
            .index_of(word)?
            .ok_or_else(|| Error::NotACodeword("outside every coset".into()))?;
        if index.bits() > self.capacity_bits() {
            return Err(Error::NotACodeword(format!(
                "index {index} is outside the {}-bit payload range",
                self.capacity_bits()
            )));
        }
        Ok(index)
    }

    /// Exact minimum distance: `min_{b, b'} min_{a in A} wt(b - b' + a)` over
    /// distinct codewords. Costs `#cosets^2 * |A|` weight evaluations.
    pub fn min_distance(&self, metric: Metric, cap_log2: u32) -> Result<Option<u64>> {
        let cosets = self
            .coset_count()
            .to_u64()
            .ok_or(Error::CapExceeded {
                required_log2: self.size_log2().ceil() as u32,
                cap_log2,
            })?;
        let reps: Vec<ZqVector> = (0..cosets)
            .map(|c| self.coset_representative(&BigUint::from(c)))
            .collect::<Result<_>>()?;
        let mut best = self.base.min_distance(metric, cap_log2)?;
        for (i, bi) in reps.iter().enumerate() {
            for bj in &reps[i + 1..] {
                let diff = bi.checked_sub(bj)?;
                for a in self.base.enumerate(cap_log2)? {
                    let w = weight(&diff.checked_add(&a)?, metric);
                    best = Some(best.map_or(w, |x| x.min(w)));
                }
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::ZrmParams;
    use crate::corr::is_complementary_set;
    use crate::envelope::{pmepr_word, EnvelopeParams};
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn split0(m: usize) -> IndexSplit {
        IndexSplit::new(m, vec![]).unwrap()
    }

    #[test]
    fn split_validation() {
        let s = IndexSplit::new(4, vec![1, 3]).unwrap();
        assert_eq!(s.free(), &[0, 2]);
        assert_eq!(IndexSplit::top(5, 2).unwrap().restricted(), &[3, 4]);
        assert!(IndexSplit::new(4, vec![3, 1]).is_err());
        assert!(IndexSplit::new(4, vec![4]).is_err());
        assert!(IndexSplit::top(2, 3).is_err());
    }

    #[test]
    fn path_form_examples() {
        let f = Gbf::from_terms(2, 4, &[(2, &[0, 1]), (3, &[0])]).unwrap();
        let form = is_path_form(&f, &split0(2), 0).unwrap().unwrap();
        assert_eq!(form.order(), &[0, 1]);
        assert_eq!(form.endpoints(), (0, 1));

        let cycle = Gbf::from_terms(3, 4, &[(2, &[0, 1]), (2, &[1, 2]), (2, &[0, 2])]).unwrap();
        assert_eq!(is_path_form(&cycle, &split0(3), 0).unwrap(), None);

        let wrong = Gbf::monomial(2, 4, &[0, 1], 1).unwrap();
        assert_eq!(is_path_form(&wrong, &split0(2), 0).unwrap(), None);

        // Path 2 - 0 - 1 is stored from its smaller endpoint.
        let p = Gbf::from_terms(3, 2, &[(1, &[0, 2]), (1, &[0, 1])]).unwrap();
        assert_eq!(is_path_form(&p, &split0(3), 0).unwrap().unwrap().order(), &[1, 0, 2]);

        // Cubic terms and disconnected graphs are rejected.
        let cubic = Gbf::from_terms(3, 2, &[(1, &[0, 1]), (1, &[1, 2]), (1, &[0, 1, 2])]).unwrap();
        assert_eq!(is_path_form(&cubic, &split0(3), 0).unwrap(), None);
        let sparse = Gbf::monomial(3, 2, &[0, 1], 1).unwrap();
        assert_eq!(is_path_form(&sparse, &split0(3), 0).unwrap(), None);
    }

    #[test]
    fn single_free_variable_is_a_trivial_path() {
        let f = Gbf::from_terms(2, 2, &[(1, &[0, 1])]).unwrap();
        let s = IndexSplit::new(2, vec![1]).unwrap();
        for d in 0..2 {
            let form = is_path_form(&f, &s, d).unwrap().unwrap();
            assert_eq!(form.endpoints(), (0, 0));
        }
        let all = IndexSplit::new(2, vec![0, 1]).unwrap();
        assert_eq!(is_path_form(&f, &all, 0).unwrap(), None);
    }

    #[test]
    fn golay_pair_examples() {
        let f = Gbf::monomial(2, 2, &[0, 1], 1).unwrap();
        let (a, b) = golay_pair(&f, &split0(2), 0, 0, 0).unwrap();
        let signs = |v: &RestrictedVector| -> Vec<i32> {
            v.exponents().iter().map(|&e| if e == 0 { 1 } else { -1 }).collect()
        };
        assert_eq!(signs(&a), vec![1, 1, 1, -1]);
        assert_eq!(signs(&b), vec![1, -1, 1, 1]);
        assert!(is_complementary_set::<BigInt>(&[a, b]).unwrap().holds());

        let g = Gbf::from_terms(3, 2, &[(1, &[0, 1]), (1, &[1, 2])]).unwrap();
        let (a, b) = golay_pair(&g, &split0(3), 0, 2, 1).unwrap();
        assert_eq!(a.len(), 8);
        assert!(is_complementary_set::<BigInt>(&[a, b]).unwrap().holds());

        assert_eq!(golay_pair(&g, &split0(3), 0, 1, 0), Err(Error::NotEndpoint { d: 0, var: 1 }));
        let bad = Gbf::monomial(3, 2, &[0, 1, 2], 1).unwrap();
        assert_eq!(golay_pair(&bad, &split0(3), 0, 0, 0), Err(Error::NotPathForm(0)));
    }

    #[test]
    fn pair_family_count() {
        let family = pair_family(2, 2).unwrap();
        assert_eq!(family.len(), 8);
        let words: HashSet<ZqVector> = family.iter().map(Gbf::evaluate).collect();
        assert_eq!(words.len(), 8);
        assert_eq!(pair_family(3, 4).unwrap().len(), 3 * 4usize.pow(4));
    }

    #[test]
    fn selector_examples() {
        let s = split0(3);
        assert_eq!(selector_e(&[1], &s, 4).unwrap(), Gbf::monomial(3, 4, &[1], 1).unwrap());

        let s = IndexSplit::new(3, vec![2]).unwrap();
        let e = selector_e(&[0, 1], &s, 4).unwrap();
        // x0 (1 - x2) + x1 x2 = x0 - x0 x2 + x1 x2.
        let expected = Gbf::from_terms(3, 4, &[(1, &[0]), (3, &[0, 2]), (1, &[1, 2])]).unwrap();
        assert_eq!(e, expected);
        for (d, var) in [(0, 0), (1, 1)] {
            let (restricted, _) = e.restrict_at(&[2], d).unwrap();
            assert_eq!(restricted, Gbf::monomial(3, 4, &[var], 1).unwrap());
        }
        assert!(selector_e(&[2, 1], &s, 4).is_err());
        assert!(selector_e(&[0], &s, 4).is_err());
    }

    #[test]
    fn complementary_set_examples() {
        let f = Gbf::monomial(2, 2, &[0, 1], 1).unwrap();
        let set = complementary_set(&f, &split0(2), &[0]).unwrap();
        let pair = golay_pair(&f, &split0(2), 0, 0, 0).unwrap();
        assert_eq!(set, vec![pair.0, pair.1]);

        // Restrictions at x2 = 0 and x2 = 1 are the paths 0-1 and 1-0 plus linear terms.
        let s = IndexSplit::new(3, vec![2]).unwrap();
        let parts = vec![
            Gbf::from_terms(3, 2, &[(1, &[0, 1])]).unwrap(),
            Gbf::from_terms(3, 2, &[(1, &[0, 1]), (1, &[0])]).unwrap(),
        ];
        let f = Gbf::reconstruct(&parts, &[2]).unwrap();
        let set = complementary_set(&f, &s, &[0, 1]).unwrap();
        assert_eq!(set.len(), 4);
        assert!(is_complementary_set::<BigInt>(&set).unwrap().holds());
        for member in &set {
            let word = ZqVector::new(2, member.exponents().to_vec()).unwrap();
            let r: f64 = pmepr_word(&word, EnvelopeParams::default()).unwrap();
            assert!(r <= 4.0 + 1e-9);
        }

        let bad = Gbf::monomial(3, 2, &[0, 1, 2], 1).unwrap();
        assert_eq!(complementary_set(&bad, &s, &[0, 0]), Err(Error::NotPathForm(0)));
    }

    #[test]
    fn random_path_instances_are_complementary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u32, 4, 8] {
            for (m, k) in [(3, 1), (4, 2), (5, 1), (6, 2)] {
                let s = IndexSplit::top(m, k).unwrap();
                for _ in 0..10 {
                    let (f, a_map) = random_path_instance(&mut rng, q, &s).unwrap();
                    let set = complementary_set(&f, &s, &a_map).unwrap();
                    assert_eq!(set.len(), 1 << (k + 1));
                    assert!(is_complementary_set::<BigInt>(&set).unwrap().holds());
                }
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let f = Gbf::monomial(2, 2, &[0, 1], 1).unwrap();
        assert_eq!(certify_pmepr(&f, &split0(2)).unwrap(), Some(2));

        let cubic = Gbf::monomial(3, 2, &[0, 1, 2], 1).unwrap();
        let s = IndexSplit::new(3, vec![2]).unwrap();
        // At x2 = 0 the restriction is 0, which has no edge between x0 and x1.
        assert_eq!(certify_pmepr(&cubic, &s).unwrap(), None);
        let (bound, split) = certify_pmepr_search(&cubic, 2).unwrap().unwrap();
        assert_eq!(bound, 8);
        assert_eq!(split.k(), 2);

        let cycle = Gbf::from_terms(3, 2, &[(1, &[0, 1]), (1, &[1, 2]), (1, &[0, 2])]).unwrap();
        assert_eq!(certify_pmepr_search(&cycle, 0).unwrap(), None);
        assert_eq!(certify_pmepr_search(&cycle, 1).unwrap().unwrap().0, 4);
    }

    #[test]
    fn l_code_examples() {
        let l = l_code(1, &split0(3)).unwrap();
        assert_eq!(l.size_log2(), 4);
        let rm: HashSet<ZqVector> = ZrmParams::new(1, 0, 1, 3).unwrap().code().enumerate(24).unwrap().collect();
        let lw: HashSet<ZqVector> = l.enumerate(24).unwrap().collect();
        assert_eq!(rm, lw);

        let s = IndexSplit::top(4, 1).unwrap();
        let l = l_code(2, &s).unwrap();
        assert_eq!(l.size_log2(), 16);
        assert_eq!(l_code_log2_size(2, 1, 4), 16);
        let ambient = ZrmParams::new(2, 0, 2, 4).unwrap();
        for w in l.range(0, 5000) {
            assert!(ambient.contains(&w).unwrap());
        }
    }

    #[test]
    fn a_code_formula_values() {
        assert_eq!(a_code_log2_size(2, 0, 1, 2, 4), 16);
        assert_eq!(a_code_log2_size(2, 1, 1, 2, 4), 13);
        let s = IndexSplit::top(4, 1).unwrap();
        assert_eq!(a_code(2, 0, 2, &s).unwrap().size_log2(), 16);
        assert_eq!(a_code(2, 1, 2, &s).unwrap().size_log2(), 13);
        assert!(a_code(2, 2, 2, &s).is_err());
        assert!(a_code(3, 2, 1, &s).is_err());
    }

    #[test]
    fn a_code_matches_brute_force_intersection() {
        let s = IndexSplit::top(3, 1).unwrap();
        let zrm = ZrmParams::new(2, 1, 2, 3).unwrap();
        let l = l_code(2, &s).unwrap();
        let brute: HashSet<ZqVector> = l
            .enumerate(24)
            .unwrap()
            .filter(|w| zrm.contains(w).unwrap())
            .collect();
        let a: HashSet<ZqVector> = a_code(2, 1, 2, &s).unwrap().enumerate(24).unwrap().collect();
        assert_eq!(brute, a);
        assert_eq!(a.len(), 1 << a_code_log2_size(2, 1, 1, 2, 3));
    }

    #[test]
    fn a_code_with_k_plus_one_is_l() {
        let s = IndexSplit::top(5, 2).unwrap();
        assert_eq!(a_code(2, 0, 3, &s).unwrap(), l_code(2, &s).unwrap());
    }

    #[test]
    fn r_code_counts() {
        let s = IndexSplit::top(4, 1).unwrap();
        let r = r_code(2, &s).unwrap();
        assert_eq!(r.len(), BigUint::from(9u32));
        let words: HashSet<ZqVector> = r.iter().map(|(_, b)| b.evaluate()).collect();
        assert_eq!(words.len(), 9);
        for (tuple, b) in r.iter() {
            assert!(b.order() <= 3);
            assert!(b.evaluate().values().iter().all(|&v| v == 0 || v == 2));
            for (d, path) in tuple.paths().iter().enumerate() {
                assert_eq!(is_path_form(&b, &s, d).unwrap().unwrap().order(), path.as_slice());
            }
            assert_eq!(r.index_of(&tuple), Some(r.index_of(&tuple).unwrap()));
        }
        assert_eq!(r_code(1, &split0(3)).unwrap().len(), BigUint::from(3u32));
        assert!(r_code(1, &IndexSplit::top(3, 2).unwrap()).is_err());
    }

    #[test]
    fn r_prime_examples() {
        let s = IndexSplit::top(4, 1).unwrap();
        let r = r_prime_code(2, &s).unwrap();
        let full = r_code(2, &s).unwrap();
        assert_eq!(r.len(), BigUint::from(3u32));
        let full_words: HashSet<ZqVector> = full.iter().map(|(_, b)| b.evaluate()).collect();
        for (tuple, b) in r.iter() {
            assert!(tuple.is_diagonal());
            assert!(!b.depends_on(3));
            assert!(full_words.contains(&b.evaluate()));
        }
    }

    #[test]
    fn tuple_index_roundtrip() {
        let s = IndexSplit::top(5, 1).unwrap();
        let r = r_code(1, &s).unwrap();
        for t in [0u32, 1, 17, 143] {
            let tuple = r.tuple(&BigUint::from(t)).unwrap();
            assert_eq!(r.index_of(&tuple), Some(BigUint::from(t)));
        }
        // Pattern d = 0 is the most significant digit.
        let tuple = r.tuple(&BigUint::from(12u32)).unwrap();
        assert_eq!(tuple.paths()[0], r.tuple(&BigUint::from(12u32)).unwrap().paths()[0]);
        assert_eq!(tuple.paths()[0], canonical_paths(s.free())[1]);
        assert_eq!(tuple.paths()[1], canonical_paths(s.free())[0]);
        assert!(r.tuple(&BigUint::from(144u32)).is_err());
    }

    fn class(class: CodeClass, h: u32, p: u32, k: u32, r: Option<u32>, m: u32) -> ClassCode {
        ClassCode::new(ClassParams::new(class, h, p, k, r, m, None, 0).unwrap()).unwrap()
    }

    #[test]
    fn davis_jedwab_class() {
        let code = class(CodeClass::II, 1, 0, 0, Some(1), 3);
        let words: Vec<ZqVector> = code.enumerate(24).unwrap().map(|(_, w)| w).collect();
        assert_eq!(words.len(), 48);
        let distinct: HashSet<&ZqVector> = words.iter().collect();
        assert_eq!(distinct.len(), 48);
        for w in &words {
            let r: f64 = pmepr_word(w, EnvelopeParams::default()).unwrap();
            assert!(r <= 2.0 + 1e-9);
        }
        assert_eq!(code.min_distance(Metric::Hamming, 24).unwrap(), Some(2));
        // Binary Lee weight is Hamming weight.
        assert_eq!(code.min_distance(Metric::Lee, 24).unwrap(), Some(2));
        let quaternary = class(CodeClass::II, 2, 0, 0, Some(1), 3);
        assert_eq!(quaternary.min_distance(Metric::Hamming, 24).unwrap(), Some(2));
        assert_eq!(quaternary.min_distance(Metric::Lee, 24).unwrap(), Some(4));
    }

    #[test]
    fn class_params_validation() {
        assert!(ClassParams::new(CodeClass::III, 2, 0, 1, None, 4, None, 0).is_err());
        assert!(ClassParams::new(CodeClass::II, 2, 2, 1, Some(2), 4, None, 0).is_err());
        assert!(ClassParams::new(CodeClass::II, 2, 0, 1, None, 4, None, 0).is_err());
        assert!(ClassParams::new(CodeClass::II, 2, 0, 3, Some(2), 4, None, 0).is_err());
        assert!(ClassParams::new(CodeClass::I, 2, 0, 1, Some(2), 4, None, 9).is_err());
        assert!(ClassParams::new(CodeClass::I, 2, 0, 1, Some(2), 4, Some(vec![0, 1]), 0).is_err());
        assert!(ClassParams::new(CodeClass::I, 2, 0, 1, Some(2), 4, Some(vec![0]), 8).is_ok());
    }

    #[test]
    fn capacities() {
        let c2 = class(CodeClass::II, 2, 0, 1, Some(2), 4);
        assert_eq!(c2.capacity_bits(), 17);
        let c3 = class(CodeClass::III, 2, 1, 1, None, 4);
        assert_eq!(c3.base().size_log2(), 16);
        assert_eq!(c3.capacity_bits(), 19);
        assert_eq!(c3.size(), BigUint::from(9u32) << 16);
        let c1 = class(CodeClass::I, 2, 1, 1, Some(2), 4);
        assert_eq!(c1.capacity_bits(), 13);
        assert_eq!(c1.size(), BigUint::one() << 13);
    }

    #[test]
    fn zero_payload_is_first_word() {
        let c = class(CodeClass::III, 2, 1, 1, None, 4);
        let w = c.encode(&BigUint::zero()).unwrap();
        let b0 = r_code(2, c.params().split()).unwrap().representative(&BigUint::zero()).unwrap();
        assert_eq!(w, b0.evaluate());
        assert_eq!(c.codeword_index(&w).unwrap(), BigUint::zero());
    }

    #[test]
    fn encoder_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for code in [
            class(CodeClass::I, 2, 1, 1, Some(2), 4),
            class(CodeClass::II, 2, 0, 1, Some(2), 4),
            class(CodeClass::III, 2, 1, 1, None, 4),
        ] {
            let cap = code.capacity_bits();
            for _ in 0..50 {
                let payload = BigUint::from(rand::Rng::gen::<u64>(&mut rng) & ((1u64 << cap) - 1));
                let w = code.encode(&payload).unwrap();
                assert_eq!(code.codeword_index(&w).unwrap(), payload);
            }
            assert!(code.encode(&(BigUint::one() << cap)).is_err());
        }
    }

    #[test]
    fn non_codewords_are_rejected() {
        let code = class(CodeClass::II, 2, 0, 1, Some(2), 4);
        let cubic = Gbf::monomial(4, 4, &[0, 1, 2], 1).unwrap().evaluate();
        assert_eq!(code.index_of(&cubic).unwrap(), None);
        assert!(code.codeword_index(&cubic).is_err());
        // Class III words with different paths per pattern are not in Class II.
        let c3 = class(CodeClass::III, 2, 1, 1, None, 4);
        let w = c3.codeword(&(BigUint::from(1u32) << 16)).unwrap();
        assert_eq!(code.index_of(&w).unwrap(), None);
        assert!(c3.index_of(&w).unwrap().is_some());
    }

    #[test]
    fn range_matches_codeword() {
        let code = class(CodeClass::III, 2, 1, 0, None, 3);
        let all: Vec<(u64, ZqVector)> = code.enumerate(24).unwrap().collect();
        assert_eq!(all.len() as u64, code.size().to_u64().unwrap());
        for (i, w) in all.iter().step_by(97) {
            assert_eq!(&code.codeword(&BigUint::from(*i)).unwrap(), w);
        }
        let mid: Vec<(u64, ZqVector)> = code.range(200, 400).collect();
        assert_eq!(mid.as_slice(), &all[200..600]);
        assert_eq!(code.range(700, 500).count(), 68);
    }

    #[test]
    fn deinterleaving() {
        let s = IndexSplit::new(3, vec![1]).unwrap();
        let w = ZqVector::new(4, (0..8).map(|i| i % 4).collect()).unwrap();
        let parts = deinterleave(&w, &s).unwrap();
        assert_eq!(parts[0].values(), &[0, 1, 0, 1]);
        assert_eq!(parts[1].values(), &[2, 3, 2, 3]);
    }

    #[test]
    fn class_streams_have_no_duplicates() {
        for code in [
            class(CodeClass::I, 2, 1, 1, Some(2), 4),
            class(CodeClass::II, 2, 0, 1, Some(2), 4),
            class(CodeClass::III, 2, 1, 0, None, 4),
            class(CodeClass::III, 2, 1, 1, None, 3),
        ] {
            let words: HashSet<ZqVector> = code.enumerate(20).unwrap().map(|(_, w)| w).collect();
            assert_eq!(BigUint::from(words.len()), code.size());
        }
    }

    fn class_params() -> impl Strategy<Value = (ClassParams, u64)> {
        (1u32..=2, 3u32..=5, 0u32..=2, 0u32..=5, 0u32..=5, 0u8..3, any::<u64>())
            .prop_filter_map("valid parameters", |(h, m, k, p, r, c, seed)| {
                let class = [CodeClass::I, CodeClass::II, CodeClass::III][c as usize];
                let params = ClassParams::new(class, h, p, k, Some(r), m, None, seed % 7).ok()?;
                Some((params, seed))
            })
    }

    proptest! {
        #[test]
        fn random_path_sets_are_complementary(seed in any::<u64>(), q_exp in 1u32..=3, m in 2usize..=6, k in 0usize..=2) {
            prop_assume!(k < m);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let split = IndexSplit::top(m, k).unwrap();
            let (f, a_map) = random_path_instance(&mut rng, 1 << q_exp, &split).unwrap();
            prop_assert_eq!(certify_pmepr(&f, &split).unwrap(), Some(1 << (k + 1)));
            let set = complementary_set(&f, &split, &a_map).unwrap();
            prop_assert!(is_complementary_set::<i64>(&set).unwrap().holds());
        }

        #[test]
        fn encode_round_trips_and_stays_in_zrm((params, seed) in class_params()) {
            let code = ClassCode::new(params.clone()).unwrap();
            let cap = code.capacity_bits();
            let payload = if cap == 0 { BigUint::zero() } else { BigUint::from(seed) % (BigUint::one() << cap) };
            let word = code.encode(&payload).unwrap();
            prop_assert_eq!(code.codeword_index(&word).unwrap(), payload);
            let (h, p, k, r, m) = (params.h(), params.p(), params.k(), params.r(), params.m());
            match params.class() {
                CodeClass::III => {
                    let ambient = ZrmParams::new(h, p, (k + 2).min(m), m).unwrap();
                    prop_assert!(ambient.contains(&word).unwrap());
                }
                CodeClass::II if k > 0 && r > 1 => {
                    prop_assert!(ZrmParams::new(h, p, r, m).unwrap().contains(&word).unwrap());
                }
                // A single coset: only the offset from its representative lies in ZRM.
                CodeClass::I => {
                    let b = code.coset_representative(&BigUint::zero()).unwrap();
                    let offset = word.checked_sub(&b).unwrap();
                    prop_assert!(ZrmParams::new(h, p, r, m).unwrap().contains(&offset).unwrap());
                }
                CodeClass::II => {}
            }
        }

        #[test]
        fn class_three_words_interleave_golay_words(seed in any::<u64>(), m in 3u32..=5, k in 0u32..=2) {
            prop_assume!(m - k >= 2);
            let code = class(CodeClass::III, 2, 1, k, None, m);
            let index = BigUint::from(seed) % code.size();
            let word = code.codeword(&index).unwrap();
            let split = code.params().split().clone();
            let parts = deinterleave(&word, &split).unwrap();
            prop_assert_eq!(parts.len(), split.patterns());
            let free = (m - k) as usize;
            for part in parts {
                let g = Gbf::interpolate(&part).unwrap();
                prop_assert_eq!(certify_pmepr(&g, &split0(free)).unwrap(), Some(2));
            }
        }
    }

}
