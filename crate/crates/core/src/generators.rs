//! Generators `V₁ = zP₁`, `V₂ = wP₂` and the diagonal units built from a
//! commuting pair, the monomial pattern of the algebra they generate, and the
//! identification checks against the closed-form patterns.
//!
//! The generated span is computed on keys rather than coefficient matrices.
//! Generators are 0/1-supported monomial matrices, and multiplying by diagonal
//! units on both sides isolates single entries, so when every `e_{ii}` is
//! present the span of the generated algebra is exactly the span of the
//! reachable keys.

use std::collections::BTreeSet;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::pattern::{equal_to_degree, Comparison, MonomialKey, Pattern, PatternError, PatternTag};
use crate::perm::{Permutation, Z2Action};
use crate::poly::{BiPoly, MatrixPoly, PolyError, Rational};

/// `z^m w^n` times the 0/1 matrix supported on `relation`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialGenerator {
    pub m: usize,
    pub n: usize,
    pub relation: BTreeSet<(usize, usize)>,
}

impl MonomialGenerator {
    /// `z^m w^n P` for the permutation matrix `P` of `p`.
    pub fn from_permutation(m: usize, n: usize, p: &Permutation) -> Self {
        MonomialGenerator { m, n, relation: permutation_relation(p) }
    }

    pub fn to_matrix(&self, k: usize, cap: usize) -> Result<MatrixPoly, PolyError> {
        let mono = BiPoly::monomial(Rational::one(), self.m, self.n, cap)?;
        let mut a = MatrixPoly::zero(k, cap);
        for &(i, j) in &self.relation {
            a.set_entry(i, j, mono.clone())?;
        }
        Ok(a)
    }
}

fn permutation_relation(p: &Permutation) -> BTreeSet<(usize, usize)> {
    (0..p.k()).map(|j| (j, p.apply(j))).collect()
}

/// Kronecker product of two relations under the row-major flattening.
fn kron_relation(a: &BTreeSet<(usize, usize)>, b: &BTreeSet<(usize, usize)>, l: usize) -> BTreeSet<(usize, usize)> {
    a.iter()
        .flat_map(|&(i, j)| b.iter().map(move |&(ip, jp)| (i * l + ip, j * l + jp)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub k: usize,
    pub gens: Vec<MonomialGenerator>,
    /// Indices `i` whose diagonal unit `e_{ii}` is a generator.
    pub diagonals: BTreeSet<usize>,
}

impl GeneratorSet {
    /// Generators with the full diagonal algebra.
    pub fn new(k: usize, gens: Vec<MonomialGenerator>) -> Self {
        GeneratorSet { k, gens, diagonals: (0..k).collect() }
    }

    pub fn diagonals_only(k: usize) -> Self {
        Self::new(k, Vec::new())
    }

    pub fn include_diagonals(&self) -> bool {
        self.diagonals.len() == self.k
    }

    /// `{z(P_k ⊗ I), w(I ⊗ P_l)}` with `P` the shift matrix, plus diagonals.
    pub fn product_shift(k: usize, l: usize) -> Self {
        let pk = permutation_relation(&Permutation::shift(k));
        let pl = permutation_relation(&Permutation::shift(l));
        let ik = permutation_relation(&Permutation::identity(k));
        let il = permutation_relation(&Permutation::identity(l));
        Self::new(
            k * l,
            vec![
                MonomialGenerator { m: 1, n: 0, relation: kron_relation(&pk, &il, l) },
                MonomialGenerator { m: 0, n: 1, relation: kron_relation(&ik, &pl, l) },
            ],
        )
    }

    /// The single mixed generator `zw(P_k ⊗ P_l)`, plus diagonals.
    pub fn mixed_shift(k: usize, l: usize) -> Self {
        let pk = permutation_relation(&Permutation::shift(k));
        let pl = permutation_relation(&Permutation::shift(l));
        Self::new(k * l, vec![MonomialGenerator { m: 1, n: 1, relation: kron_relation(&pk, &pl, l) }])
    }

    /// Every generator (diagonal units included) as a matrix polynomial.
    pub fn to_matrices(&self, cap: usize) -> Result<Vec<MatrixPoly>, PolyError> {
        let mut out: Vec<MatrixPoly> = self.gens.iter().map(|g| g.to_matrix(self.k, cap)).collect::<Result<_, _>>()?;
        out.extend(self.diagonals.iter().map(|&i| MatrixPoly::unit(self.k, i, i, cap)));
        Ok(out)
    }

    fn seeds(&self, cap: usize) -> impl Iterator<Item = MonomialKey> + '_ {
        let gens = self
            .gens
            .iter()
            .filter(move |g| g.m + g.n <= cap)
            .flat_map(|g| g.relation.iter().map(move |&(i, j)| MonomialKey::new(i, j, g.m, g.n)));
        gens.chain(self.diagonals.iter().map(|&i| MonomialKey::new(i, i, 0, 0)))
    }
}

/// The 0/1 matrix with a 1 at `(j, σ(j))` for every `j`.
pub fn permutation_matrix(p: &Permutation, cap: usize) -> MatrixPoly {
    MonomialGenerator::from_permutation(0, 0, p).to_matrix(p.k(), cap).expect("degree 0")
}

/// `{zP₁, wP₂}` and all diagonal units.
pub fn generators(action: &Z2Action) -> GeneratorSet {
    GeneratorSet::new(
        action.k(),
        vec![
            MonomialGenerator::from_permutation(1, 0, action.sigma1()),
            MonomialGenerator::from_permutation(0, 1, action.sigma2()),
        ],
    )
}

/// Smallest key set containing the generators' keys that is closed under
/// composition within the cap. Semi-naive worklist: each newly found key is
/// composed on both sides with everything found so far.
pub fn generated_pattern(g: &GeneratorSet, cap: usize) -> Pattern {
    let k = g.k;
    let mut found: BTreeSet<MonomialKey> = BTreeSet::new();
    let mut by_row: Vec<Vec<MonomialKey>> = vec![Vec::new(); k];
    let mut by_col: Vec<Vec<MonomialKey>> = vec![Vec::new(); k];
    let mut worklist: Vec<MonomialKey> = Vec::new();

    let push = |key: MonomialKey,
                    found: &mut BTreeSet<MonomialKey>,
                    by_row: &mut Vec<Vec<MonomialKey>>,
                    by_col: &mut Vec<Vec<MonomialKey>>,
                    worklist: &mut Vec<MonomialKey>| {
        if found.insert(key) {
            by_row[key.i].push(key);
            by_col[key.j].push(key);
            worklist.push(key);
        }
    };

    for key in g.seeds(cap) {
        push(key, &mut found, &mut by_row, &mut by_col, &mut worklist);
    }
    let mut fresh = Vec::new();
    while let Some(a) = worklist.pop() {
        // a · b
        for b in &by_row[a.j] {
            if a.degree() + b.degree() <= cap {
                fresh.push(MonomialKey::new(a.i, b.j, a.m + b.m, a.n + b.n));
            }
        }
        // b · a
        for b in &by_col[a.i] {
            if a.degree() + b.degree() <= cap {
                fresh.push(MonomialKey::new(b.i, a.j, a.m + b.m, a.n + b.n));
            }
        }
        for key in fresh.drain(..) {
            push(key, &mut found, &mut by_row, &mut by_col, &mut worklist);
        }
    }
    Pattern::from_parts(k, cap, found, PatternTag::Generated)
}

/// `{(i, σ₂ⁿσ₁ᵐ(i), m, n) : m + n ≤ cap}`, read off from
/// `(P₁ᵐP₂ⁿ)_{ij} = 1 ⇔ j = σ₂ⁿσ₁ᵐ(i)`.
pub fn closed_form_pattern(action: &Z2Action, cap: usize) -> Pattern {
    let k = action.k();
    let mut keys = BTreeSet::new();
    for i in 0..k {
        let mut after_m = i;
        for m in 0..=cap {
            let mut j = after_m;
            for n in 0..=cap - m {
                keys.insert(MonomialKey::new(i, j, m, n));
                j = action.sigma2().apply(j);
            }
            after_m = action.sigma1().apply(after_m);
        }
    }
    Pattern::from_parts(k, cap, keys, PatternTag::Generated)
}

/// Compares the pattern generated by the action with `target`. When
/// `relabeling` is given, target index `t` is first moved to `relabeling(t)`.
pub fn verify_identification(
    action: &Z2Action,
    target: &Pattern,
    cap: usize,
    relabeling: Option<&Permutation>,
) -> Result<Comparison, PatternError> {
    if target.k() != action.k() {
        return Err(PatternError::SizeMismatch(action.k(), target.k()));
    }
    let generated = generated_pattern(&generators(action), cap);
    match relabeling {
        Some(pi) => equal_to_degree(&generated, &target.relabel(pi), cap),
        None => equal_to_degree(&generated, target, cap),
    }
}

/// Compares the pattern generated by `candidate` with `target`.
pub fn probe_generating_set(candidate: &GeneratorSet, target: &Pattern, cap: usize) -> Result<Comparison, PatternError> {
    if candidate.k != target.k() {
        return Err(PatternError::SizeMismatch(candidate.k, target.k()));
    }
    equal_to_degree(&generated_pattern(candidate, cap), target, cap)
}
