//! Codeword enumeration, supports, and the brute-force minimality engine.
//!
//! A codeword `u` is minimal when every nonzero codeword `v` whose support
//! lies inside `support(u)` is a scalar multiple `a * u`. A code is minimal
//! when all of its nonzero codewords are.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{combine_rows, GeneratorMatrix};
use crate::ring::RingSpec;

/// Default budget for `M^2 * m` component evaluations during enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;

/// Support of a vector as a packed bitset (bit `i` is 0-based position `i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    words: Vec<u64>,
}

impl SupportSet {
    pub fn of(v: &[u64]) -> Self {
        let mut words = vec![0u64; v.len().div_ceil(64)];
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self { words }
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Sorted 1-based positions of the nonzero entries of `v`.
pub fn support(v: &[u64]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, _)| i + 1)
        .collect()
}

fn check_lengths(x: &[u64], y: &[u64]) -> Result<()> {
    if x.len() == y.len() {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "vector lengths differ: {} and {}",
            x.len(),
            y.len()
        )))
    }
}

/// Whether `u` covers `v`, i.e. `support(v) ⊆ support(u)`.
pub fn covers(u: &[u64], v: &[u64]) -> Result<bool> {
    check_lengths(u, v)?;
    Ok(u.iter().zip(v).all(|(&a, &b)| b == 0 || a != 0))
}

pub fn hamming_weight(v: &[u64]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

pub fn hamming_distance(x: &[u64], y: &[u64]) -> Result<usize> {
    check_lengths(x, y)?;
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    components: Vec<u64>,
    support: Vec<usize>,
    bits: SupportSet,
    coefficients: Vec<(u64, u64)>,
}

impl Codeword {
    fn new(components: Vec<u64>, coefficients: Vec<(u64, u64)>) -> Self {
        Self {
            support: support(&components),
            bits: SupportSet::of(&components),
            components,
            coefficients,
        }
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }

    /// 1-based positions of nonzero components.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn support_set(&self) -> &SupportSet {
        &self.bits
    }

    /// Every `(c1, c2)` with `c1 * row1 + c2 * row2` equal to this word,
    /// in ascending order.
    pub fn coefficients(&self) -> &[(u64, u64)] {
        &self.coefficients
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Is `self` covered by `other`?
    pub fn is_covered_by(&self, other: &Codeword) -> bool {
        self.bits.is_subset_of(&other.bits)
    }
}

/// All codewords generated by a `2 x m` matrix, deduplicated and sorted
/// lexicographically by components.
#[derive(Debug, Clone)]
pub struct LinearCode {
    generator: GeneratorMatrix,
    codewords: Vec<Codeword>,
    /// Codeword index of `c1 * row1 + c2 * row2`, at `c1 * M + c2`.
    by_coefficients: Vec<usize>,
    by_components: HashMap<Vec<u64>, usize>,
}

pub fn enumerate_code(generator: &GeneratorMatrix) -> Result<LinearCode> {
    enumerate_code_with_cap(generator, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_code_with_cap(generator: &GeneratorMatrix, cap: u64) -> Result<LinearCode> {
    let ring = generator.ring();
    let m = ring.modulus();
    let required = m * m * generator.len() as u64;
    if required > cap {
        return Err(Error::TooLarge { required, cap });
    }

    let vectors: Vec<Vec<u64>> = (0..m * m)
        .into_par_iter()
        .map(|idx| generator.combine(idx / m, idx % m))
        .collect();

    let mut grouped: BTreeMap<&[u64], Vec<(u64, u64)>> = BTreeMap::new();
    for (idx, v) in vectors.iter().enumerate() {
        let idx = idx as u64;
        grouped.entry(v).or_default().push((idx / m, idx % m));
    }

    let mut by_coefficients = vec![0; (m * m) as usize];
    let mut by_components = HashMap::with_capacity(grouped.len());
    let mut codewords = Vec::with_capacity(grouped.len());
    for (i, (components, coefficients)) in grouped.into_iter().enumerate() {
        for &(c1, c2) in &coefficients {
            by_coefficients[(c1 * m + c2) as usize] = i;
        }
        by_components.insert(components.to_vec(), i);
        codewords.push(Codeword::new(components.to_vec(), coefficients));
    }

    Ok(LinearCode {
        generator: generator.clone(),
        codewords,
        by_coefficients,
        by_components,
    })
}

/// A nonzero codeword covered by another codeword without being one of its
/// scalar multiples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub covered: Codeword,
    pub coverer: Codeword,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordCheck {
    pub minimal: bool,
    pub witness: Option<Codeword>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// Ordered by coverer, then by covered word, both lexicographically.
    pub witnesses: Vec<Witness>,
    /// Smallest and largest weight over nonzero codewords; `None` for the
    /// zero code.
    pub w_min: Option<usize>,
    pub w_max: Option<usize>,
    /// `w_min / w_max > (q - 1) / q` with `q = M`. Only a sufficient
    /// condition, and only over fields; reported for information.
    pub ab_ratio_ok: bool,
    pub codewords: usize,
    /// Nonzero codewords whose minimality was checked.
    pub cases: usize,
}

/// Strict check of `w_min / w_max > (q - 1) / q` in integers.
pub fn ab_ratio_holds(w_min: usize, w_max: usize, q: u64) -> bool {
    let q = q as u128;
    (w_min as u128) * q > (q - 1) * (w_max as u128)
}

impl LinearCode {
    pub fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    pub fn ring(&self) -> &RingSpec {
        self.generator.ring()
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    pub fn cardinality(&self) -> usize {
        self.codewords.len()
    }

    /// True when every coefficient pair gives a distinct word, i.e. the code
    /// is free of rank two (`M^2` codewords).
    pub fn is_free_rank_two(&self) -> bool {
        let m = self.ring().modulus() as usize;
        self.codewords.len() == m * m
    }

    pub fn index_of(&self, v: &[u64]) -> Option<usize> {
        self.by_components.get(v).copied()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.by_components.contains_key(v)
    }

    pub fn codeword_for(&self, c1: u64, c2: u64) -> &Codeword {
        let m = self.ring().modulus();
        &self.codewords[self.by_coefficients[(c1 % m * m + c2 % m) as usize]]
    }

    /// Indices of `{a * u : a in R}`, sorted and deduplicated.
    fn multiples_of(&self, idx: usize) -> Vec<usize> {
        let ring = self.ring();
        let m = ring.modulus();
        let (c1, c2) = self.codewords[idx].coefficients[0];
        let mut out: Vec<usize> = (0..m)
            .map(|a| self.by_coefficients[(ring.mul(a, c1) * m + ring.mul(a, c2)) as usize])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Covered-but-not-multiple words of codeword `idx`, ascending.
    fn violations_of(&self, idx: usize, first_only: bool) -> Vec<usize> {
        let u = &self.codewords[idx];
        let multiples = self.multiples_of(idx);
        let weight = u.weight();
        let mut found = Vec::new();
        for (j, v) in self.codewords.iter().enumerate() {
            if v.is_zero() || v.weight() > weight || !v.is_covered_by(u) {
                continue;
            }
            if multiples.binary_search(&j).is_err() {
                found.push(j);
                if first_only {
                    break;
                }
            }
        }
        found
    }

    pub fn is_minimal_codeword(&self, u: &[u64]) -> Result<CodewordCheck> {
        let idx = self.index_of(u).ok_or(Error::NotACodeword)?;
        if self.codewords[idx].is_zero() {
            return Err(Error::ZeroCodeword);
        }
        let witness = self
            .violations_of(idx, true)
            .first()
            .map(|&j| self.codewords[j].clone());
        Ok(CodewordCheck {
            minimal: witness.is_none(),
            witness,
        })
    }

    /// The first `(covered, coverer)` violation in coverer order, if any.
    /// Stops at the first hit, so this is the fast path for yes/no sweeps.
    pub fn first_violation(&self) -> Option<Witness> {
        (0..self.codewords.len())
            .into_par_iter()
            .filter(|&i| !self.codewords[i].is_zero())
            .find_map_first(|i| {
                self.violations_of(i, true).first().map(|&j| Witness {
                    covered: self.codewords[j].clone(),
                    coverer: self.codewords[i].clone(),
                })
            })
    }

    pub fn is_minimal(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn weight_range(&self) -> Option<(usize, usize)> {
        let weights = self
            .codewords
            .iter()
            .filter(|c| !c.is_zero())
            .map(Codeword::weight);
        let (lo, hi) = weights.fold((usize::MAX, 0), |(lo, hi), w| (lo.min(w), hi.max(w)));
        (hi > 0).then_some((lo, hi))
    }

    pub fn is_minimal_code(&self) -> MinimalityReport {
        let nonzero: Vec<usize> = (0..self.codewords.len())
            .filter(|&i| !self.codewords[i].is_zero())
            .collect();
        let witnesses: Vec<Witness> = nonzero
            .par_iter()
            .map(|&i| {
                self.violations_of(i, false)
                    .into_iter()
                    .map(|j| Witness {
                        covered: self.codewords[j].clone(),
                        coverer: self.codewords[i].clone(),
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        let range = self.weight_range();
        MinimalityReport {
            minimal: witnesses.is_empty(),
            witnesses,
            w_min: range.map(|r| r.0),
            w_max: range.map(|r| r.1),
            ab_ratio_ok: range
                .is_some_and(|(lo, hi)| ab_ratio_holds(lo, hi, self.ring().modulus())),
            codewords: self.codewords.len(),
            cases: nonzero.len(),
        }
    }
}

pub fn is_minimal_code(code: &LinearCode) -> MinimalityReport {
    code.is_minimal_code()
}

pub fn is_minimal_codeword(code: &LinearCode, u: &[u64]) -> Result<CodewordCheck> {
    code.is_minimal_codeword(u)
}

/// `(covered, coverer)` components of a violation.
pub type CoverPair = (Vec<u64>, Vec<u64>);

/// Minimality of the cyclic code `{a * v : a in R}` by enumeration.
///
/// Returns the first `(covered, coverer)` violation when there is one.
pub fn one_dim_minimal_check(ring: &RingSpec, v: &[u64]) -> Result<(bool, Option<CoverPair>)> {
    for &x in v {
        ring.element(x)?;
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroCodeword);
    }
    let required = ring.modulus() * v.len() as u64;
    if required > DEFAULT_ENUMERATION_CAP {
        return Err(Error::TooLarge {
            required,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let zeros = vec![0; v.len()];
    let mut words: Vec<Vec<u64>> = (0..ring.modulus())
        .map(|a| combine_rows(ring, v, &zeros, a, 0))
        .filter(|w| w.iter().any(|&x| x != 0))
        .collect();
    words.sort();
    words.dedup();

    for u in &words {
        let multiples: Vec<Vec<u64>> = (0..ring.modulus())
            .map(|a| u.iter().map(|&x| ring.mul(a, x)).collect())
            .collect();
        for w in &words {
            if covers(u, w)? && !multiples.contains(w) {
                return Ok((false, Some((w.clone(), u.clone()))));
            }
        }
    }
    Ok((true, None))
}
