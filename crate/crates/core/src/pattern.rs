//! Monomial support patterns: finite sets of `(i, j, m, n)` meaning the
//! monomial `e_{ij} z^m w^n`, truncated at total degree `N`.
//!
//! Every closed-form constructor is a congruence condition on exponents,
//! with residues `l(i, j) = (i - j) mod k` normalised into `{0, …, k-1}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern sizes differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("key {key} out of bounds for size {k} and cap {cap}")]
    OutOfBounds { key: MonomialKey, k: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 4]", into = "[usize; 4]")]
pub struct MonomialKey {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub n: usize,
}

impl MonomialKey {
    pub const fn new(i: usize, j: usize, m: usize, n: usize) -> Self {
        MonomialKey { i, j, m, n }
    }

    pub fn degree(&self) -> usize {
        self.m + self.n
    }

    /// `self · other` when the inner indices match.
    pub fn compose(&self, other: &MonomialKey) -> Option<MonomialKey> {
        (self.j == other.i).then(|| MonomialKey::new(self.i, other.j, self.m + other.m, self.n + other.n))
    }

    pub fn to_array(self) -> [usize; 4] {
        [self.i, self.j, self.m, self.n]
    }
}

impl From<[usize; 4]> for MonomialKey {
    fn from([i, j, m, n]: [usize; 4]) -> Self {
        MonomialKey { i, j, m, n }
    }
}

impl From<MonomialKey> for [usize; 4] {
    fn from(k: MonomialKey) -> Self {
        k.to_array()
    }
}

impl fmt::Display for MonomialKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i, self.j, self.m, self.n)
    }
}

/// Where a pattern came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternTag {
    Bidisk,
    Bk { k: usize },
    AkD2 { k: usize },
    AkDTensor { k: usize, l: usize },
    Bk2 { k: usize },
    Tensor { k: usize, l: usize },
    Generated,
    Custom,
}

impl PatternTag {
    pub fn name(&self) -> String {
        match self {
            PatternTag::Bidisk => "A(D^2)".to_string(),
            PatternTag::Bk { k } => format!("B_{k}"),
            PatternTag::AkD2 { k } => format!("A_{k}(D^2)"),
            PatternTag::AkDTensor { k, l } => format!("A_{k}(D) ⊗ A_{l}(D)"),
            PatternTag::Bk2 { k } => format!("B_{{{k},2}}"),
            PatternTag::Tensor { k, l } => format!("B_{k} ⊗ B_{l}"),
            PatternTag::Generated => "generated".to_string(),
            PatternTag::Custom => "custom".to_string(),
        }
    }
}

/// `(i - j) mod k` in `{0, …, k-1}`.
#[inline]
pub fn residue(i: usize, j: usize, k: usize) -> usize {
    (i + k - j % k) % k
}

/// The outcome of comparing two patterns up to a degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Comparison {
    Equal,
    /// `witness` lies in exactly one of the two patterns; `in_left` says which.
    Differ { witness: MonomialKey, in_left: bool },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }

    pub fn witness(&self) -> Option<MonomialKey> {
        match self {
            Comparison::Equal => None,
            Comparison::Differ { witness, .. } => Some(*witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    k: usize,
    cap: usize,
    keys: BTreeSet<MonomialKey>,
    tag: PatternTag,
}

impl Pattern {
    fn from_predicate(k: usize, cap: usize, tag: PatternTag, keep: impl Fn(usize, usize, usize, usize) -> bool) -> Self {
        let mut keys = BTreeSet::new();
        for i in 0..k {
            for j in 0..k {
                for m in 0..=cap {
                    for n in 0..=cap - m {
                        if keep(i, j, m, n) {
                            keys.insert(MonomialKey::new(i, j, m, n));
                        }
                    }
                }
            }
        }
        Pattern { k, cap, keys, tag }
    }

    /// All scalar monomials of degree at most `cap`.
    pub fn bidisk(cap: usize) -> Self {
        Self::from_predicate(1, cap, PatternTag::Bidisk, |_, _, _, _| true)
    }

    /// One-variable algebra: `n = 0`, `m ≡ i - j (mod k)`.
    pub fn bk(k: usize, cap: usize) -> Self {
        assert!(k >= 1);
        Self::from_predicate(k, cap, PatternTag::Bk { k }, |i, j, m, n| n == 0 && m % k == residue(i, j, k))
    }

    /// Two-variable analogue: `m + n ≡ i - j (mod k)`.
    pub fn bk2(k: usize, cap: usize) -> Self {
        assert!(k >= 1);
        Self::from_predicate(k, cap, PatternTag::Bk2 { k }, |i, j, m, n| (m + n) % k == residue(i, j, k))
    }

    /// Scalar functions whose exponents satisfy `m + n ≡ 0 (mod k)`.
    pub fn akd2(k: usize, cap: usize) -> Self {
        assert!(k >= 1);
        Self::from_predicate(1, cap, PatternTag::AkD2 { k }, |_, _, m, n| (m + n) % k == 0)
    }

    /// Scalar functions with `m ≡ 0 (mod k)` and `n ≡ 0 (mod l)`.
    pub fn akd_tensor(k: usize, l: usize, cap: usize) -> Self {
        assert!(k >= 1 && l >= 1);
        Self::from_predicate(1, cap, PatternTag::AkDTensor { k, l }, |_, _, m, n| m % k == 0 && n % l == 0)
    }

    /// Tensor product of the one-variable algebras on `k·l` indices, flattened
    /// row-major (`(i, i') ↦ i·l + i'`): `m ≡ i - j (mod k)`, `n ≡ i' - j' (mod l)`.
    pub fn tensor(k: usize, l: usize, cap: usize) -> Self {
        assert!(k >= 1 && l >= 1);
        Self::from_predicate(k * l, cap, PatternTag::Tensor { k, l }, |a, b, m, n| {
            m % k == residue(a / l, b / l, k) && n % l == residue(a % l, b % l, l)
        })
    }

    pub fn custom<I>(k: usize, cap: usize, keys: I) -> Result<Self, PatternError>
    where
        I: IntoIterator<Item = MonomialKey>,
    {
        let keys: BTreeSet<MonomialKey> = keys.into_iter().collect();
        if let Some(&key) = keys.iter().find(|key| key.i >= k || key.j >= k || key.degree() > cap) {
            return Err(PatternError::OutOfBounds { key, k, cap });
        }
        Ok(Pattern { k, cap, keys, tag: PatternTag::Custom })
    }

    pub(crate) fn from_parts(k: usize, cap: usize, keys: BTreeSet<MonomialKey>, tag: PatternTag) -> Self {
        debug_assert!(keys.iter().all(|key| key.i < k && key.j < k && key.degree() <= cap));
        Pattern { k, cap, keys, tag }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn tag(&self) -> &PatternTag {
        &self.tag
    }

    pub fn keys(&self) -> &BTreeSet<MonomialKey> {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, key: &MonomialKey) -> bool {
        self.keys.contains(key)
    }

    pub fn with_tag(mut self, tag: PatternTag) -> Self {
        self.tag = tag;
        self
    }

    /// Keys of degree at most `cap` (clamped to the current cap).
    pub fn truncate(&self, cap: usize) -> Pattern {
        let cap = cap.min(self.cap);
        Pattern {
            k: self.k,
            cap,
            keys: self.keys.iter().filter(|key| key.degree() <= cap).copied().collect(),
            tag: self.tag.clone(),
        }
    }

    /// Keys satisfying `keep`, as a custom pattern of the same size and cap.
    pub fn filter(&self, keep: impl Fn(&MonomialKey) -> bool) -> Pattern {
        Pattern {
            k: self.k,
            cap: self.cap,
            keys: self.keys.iter().filter(|key| keep(key)).copied().collect(),
            tag: PatternTag::Custom,
        }
    }

    /// Moves index `x` to `pi(x)` in every key.
    pub fn relabel(&self, pi: &Permutation) -> Pattern {
        assert_eq!(pi.k(), self.k, "relabeling of the wrong size");
        Pattern {
            k: self.k,
            cap: self.cap,
            keys: self
                .keys
                .iter()
                .map(|key| MonomialKey::new(pi.apply(key.i), pi.apply(key.j), key.m, key.n))
                .collect(),
            tag: self.tag.clone(),
        }
    }

    /// Number of keys of each total degree `0..=cap`.
    pub fn keys_by_degree(&self) -> Vec<usize> {
        let mut counts = vec![0; self.cap + 1];
        for key in &self.keys {
            counts[key.degree()] += 1;
        }
        counts
    }

    /// Sorted `[i, j, m, n]` quadruples.
    pub fn quadruples(&self) -> Vec<[usize; 4]> {
        self.keys.iter().map(|key| key.to_array()).collect()
    }

    pub fn has_all_diagonal_units(&self) -> bool {
        (0..self.k).all(|i| self.keys.contains(&MonomialKey::new(i, i, 0, 0)))
    }

    /// True iff every composable pair whose product stays within the cap
    /// composes to a key of the pattern.
    pub fn is_mult_closed(&self) -> bool {
        self.first_unclosed_product().is_none()
    }

    pub fn first_unclosed_product(&self) -> Option<(MonomialKey, MonomialKey)> {
        let mut by_row: Vec<Vec<MonomialKey>> = vec![Vec::new(); self.k];
        for key in &self.keys {
            by_row[key.i].push(*key);
        }
        for a in &self.keys {
            for b in &by_row[a.j] {
                if a.degree() + b.degree() <= self.cap {
                    let c = a.compose(b).expect("composable");
                    if !self.keys.contains(&c) {
                        return Some((*a, *b));
                    }
                }
            }
        }
        None
    }
}

/// Compares the keys of degree `≤ cap` of two same-size patterns. The witness
/// is the first differing key ordered by degree, then entry `(i, j)`, then
/// descending `z`-exponent.
pub fn equal_to_degree(p: &Pattern, q: &Pattern, cap: usize) -> Result<Comparison, PatternError> {
    if p.k != q.k {
        return Err(PatternError::SizeMismatch(p.k, q.k));
    }
    let left: BTreeSet<MonomialKey> = p.keys.iter().filter(|key| key.degree() <= cap).copied().collect();
    let right: BTreeSet<MonomialKey> = q.keys.iter().filter(|key| key.degree() <= cap).copied().collect();
    let witness = left
        .symmetric_difference(&right)
        .min_by_key(|key| (key.degree(), key.i, key.j, key.n))
        .copied();
    Ok(match witness {
        None => Comparison::Equal,
        Some(w) => Comparison::Differ { witness: w, in_left: left.contains(&w) },
    })
}
