//! Evaluation strata, the supports of evaluated patterns, their block
//! structure, and the codimension fingerprint of a pattern's maximal ideals.
//!
//! Evaluating at `(λ, μ)` kills exactly the monomials with a positive power of
//! a vanishing coordinate, so the surviving support (and with it the simple
//! quotients) depends only on which of `λ`, `μ` is zero. Four symbolic strata
//! therefore cover every evaluation point.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pattern::{MonomialKey, Pattern};
use crate::poly::{rational_rank, MatrixPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("support is not an equivalence relation: {0}")]
    NotEquivalence(String),
    #[error("pattern is missing the diagonal constant (i, i, 0, 0) for i = {0}")]
    MissingDiagonal(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    /// `λ = μ = 0`
    Origin,
    /// `λ ≠ 0, μ = 0`
    ZOnly,
    /// `λ = 0, μ ≠ 0`
    WOnly,
    /// `λ ≠ 0, μ ≠ 0`
    Generic,
}

impl Stratum {
    pub const ALL: [Stratum; 4] = [Stratum::Origin, Stratum::ZOnly, Stratum::WOnly, Stratum::Generic];

    pub fn survives(self, key: &MonomialKey) -> bool {
        match self {
            Stratum::Origin => key.m == 0 && key.n == 0,
            Stratum::ZOnly => key.n == 0,
            Stratum::WOnly => key.m == 0,
            Stratum::Generic => true,
        }
    }

    /// The stratum containing the point `(λ, μ)`.
    pub fn of_point(lambda: &Rational, mu: &Rational) -> Stratum {
        use num_traits::Zero;
        match (lambda.is_zero(), mu.is_zero()) {
            (true, true) => Stratum::Origin,
            (false, true) => Stratum::ZOnly,
            (true, false) => Stratum::WOnly,
            (false, false) => Stratum::Generic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Stratum::Origin => "origin",
            Stratum::ZOnly => "z_only",
            Stratum::WOnly => "w_only",
            Stratum::Generic => "generic",
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The entries `(i, j)` carrying a nonzero value after evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportRelation {
    pub k: usize,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl SupportRelation {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.pairs.iter().flat_map(|&(i, j)| [i, j]).collect()
    }
}

pub fn stratum_support(p: &Pattern, s: Stratum) -> SupportRelation {
    SupportRelation {
        k: p.k(),
        pairs: p.keys().iter().filter(|key| s.survives(key)).map(|key| (key.i, key.j)).collect(),
    }
}

/// Equivalence classes of the relation on its domain, each sorted, ordered
/// by least element.
pub fn support_classes(r: &SupportRelation) -> Result<Vec<Vec<usize>>, IdealError> {
    let domain = r.domain();
    for &x in &domain {
        if !r.pairs.contains(&(x, x)) {
            return Err(IdealError::NotEquivalence(format!("({x}, {x}) missing: not reflexive")));
        }
    }
    for &(i, j) in &r.pairs {
        if !r.pairs.contains(&(j, i)) {
            return Err(IdealError::NotEquivalence(format!("({i}, {j}) present but ({j}, {i}) missing")));
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut placed = BTreeSet::new();
    for &x in &domain {
        if placed.contains(&x) {
            continue;
        }
        let class: Vec<usize> = r.pairs.range((x, 0)..=(x, usize::MAX)).map(|&(_, j)| j).collect();
        for &a in &class {
            let row = r.pairs.range((a, 0)..=(a, usize::MAX)).count();
            if row != class.len() {
                return Err(IdealError::NotEquivalence(format!(
                    "rows of {x} and {a} differ although ({x}, {a}) is present"
                )));
            }
            for &b in &class {
                if !r.pairs.contains(&(a, b)) {
                    return Err(IdealError::NotEquivalence(format!(
                        "({x}, {a}) and ({x}, {b}) present but ({a}, {b}) missing"
                    )));
                }
            }
            placed.insert(a);
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Sizes of the equivalence classes; the evaluated image is the direct sum of
/// full matrix algebras of these sizes.
pub fn support_blocks(r: &SupportRelation) -> Result<Vec<usize>, IdealError> {
    Ok(support_classes(r)?.iter().map(Vec::len).collect())
}

/// Per-stratum dimensions of the simple quotients, plus their union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimInvariant {
    /// Sorted quotient dimensions for every stratum that could be analysed.
    pub strata: BTreeMap<Stratum, Vec<usize>>,
    pub distinct: BTreeSet<usize>,
    pub warnings: Vec<String>,
}

impl CodimInvariant {
    pub fn stratum(&self, s: Stratum) -> Option<&[usize]> {
        self.strata.get(&s).map(Vec::as_slice)
    }

    /// Distinct values within one stratum.
    pub fn distinct_in(&self, s: Stratum) -> BTreeSet<usize> {
        self.stratum(s).map(|v| v.iter().copied().collect()).unwrap_or_default()
    }

    pub fn is_partial(&self) -> bool {
        self.strata.len() < Stratum::ALL.len()
    }
}

/// Computes the codimension invariant. Each diagonal index gives a scalar
/// character at the origin; every other stratum contributes `b²` per support
/// block of size `b`. Caps below `2k` are flagged, and a stratum whose support
/// is not an equivalence relation is left out with a warning.
pub fn codim_invariant(p: &Pattern) -> Result<CodimInvariant, IdealError> {
    if let Some(i) = (0..p.k()).find(|&i| !p.contains(&MonomialKey::new(i, i, 0, 0))) {
        return Err(IdealError::MissingDiagonal(i));
    }
    let mut warnings = Vec::new();
    if p.cap() < 2 * p.k() {
        warnings.push(format!(
            "degree cap {} is below 2k = {}; the invariant may be incomplete",
            p.cap(),
            2 * p.k()
        ));
    }
    let mut strata = BTreeMap::new();
    strata.insert(Stratum::Origin, vec![1; p.k()]);
    for s in [Stratum::ZOnly, Stratum::WOnly, Stratum::Generic] {
        match support_blocks(&stratum_support(p, s)) {
            Ok(blocks) => {
                let mut dims: Vec<usize> = blocks.iter().map(|b| b * b).collect();
                dims.sort_unstable();
                strata.insert(s, dims);
            }
            Err(e) => warnings.push(format!("stratum {s} skipped: {e}")),
        }
    }
    let distinct = strata.values().flatten().copied().collect();
    Ok(CodimInvariant { strata, distinct, warnings })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Distinguished,
    Indistinguishable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Distinguished => "distinguished",
            Verdict::Indistinguishable => "indistinguishable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distinction {
    pub verdict: Verdict,
    pub left: CodimInvariant,
    pub right: CodimInvariant,
}

/// Two patterns are distinguished when their sets of maximal-ideal
/// codimensions differ. Stratum labels are not compared: exchanging `z` and
/// `w` is an isomorphism that swaps them.
pub fn distinguish(p: &Pattern, q: &Pattern) -> Result<Distinction, IdealError> {
    let left = codim_invariant(p)?;
    let right = codim_invariant(q)?;
    let verdict = if left.distinct != right.distinct { Verdict::Distinguished } else { Verdict::Indistinguishable };
    Ok(Distinction { verdict, left, right })
}

/// Dimension of the span of the evaluations at `(λ, μ)` of every key
/// monomial, by exact elimination.
pub fn rank_oracle(p: &Pattern, lambda: &Rational, mu: &Rational) -> usize {
    let evaluated: Vec<_> = p
        .keys()
        .iter()
        .map(|key| {
            MatrixPoly::monomial_unit(p.k(), key.i, key.j, key.m, key.n, p.cap())
                .expect("pattern keys respect the cap")
                .evaluate(lambda, mu)
        })
        .collect();
    rational_rank(&evaluated)
}
