//! Permutations of `{0, …, k-1}`, their orbits, commuting pairs viewed as
//! ℤ²-actions, and the perpendicular-action test with its constructive
//! product decomposition.
//!
//! Cycle notation follows the convention `(a b c)`: `a ↦ b ↦ c ↦ a`. Under
//! this convention the forward shift written `(k-1 k-2 … 1 0)` is the map
//! `x ↦ x - 1 (mod k)`, whose permutation matrix (1 at `(j, σ(j))`) has the
//! 1 in the top-right corner.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("images of length {len} do not form a bijection: {detail}")]
    NotBijection { len: usize, detail: String },
    #[error("ground set must be nonempty")]
    Empty,
    #[error("point {point} out of range for ground set of size {k}")]
    OutOfRange { point: usize, k: usize },
    #[error("point {0} appears more than once in cycle notation")]
    Duplicate(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("permutations act on different ground sets ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("permutations do not commute at point {point}: σ₁σ₂({point}) = {left}, σ₂σ₁({point}) = {right}")]
    NonCommuting { point: usize, left: usize, right: usize },
}

/// A bijection of `{0, …, k-1}`, stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(images: Vec<usize>) -> Result<Self, PermError> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { images: (0..k).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let k = images.len();
        if k == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; k];
        for &x in &images {
            if x >= k {
                return Err(PermError::NotBijection {
                    len: k,
                    detail: format!("image {x} is out of range"),
                });
            }
            if seen[x] {
                return Err(PermError::NotBijection {
                    len: k,
                    detail: format!("image {x} appears twice"),
                });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// The k-cycle `x ↦ x + 1 (mod k)`.
    pub fn cycle(k: usize) -> Self {
        Permutation { images: (0..k).map(|x| (x + 1) % k).collect() }
    }

    /// The shift `x ↦ x - 1 (mod k)`, written `(k-1 k-2 … 1 0)` in cycle notation.
    pub fn shift(k: usize) -> Self {
        Permutation { images: (0..k).map(|x| (x + k - 1) % k).collect() }
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4 5)"`. Points not listed are
    /// fixed; the empty string is the identity.
    pub fn parse_cycles(text: &str, k: usize) -> Result<Self, PermError> {
        if k == 0 {
            return Err(PermError::Empty);
        }
        let mut images: Vec<usize> = (0..k).collect();
        let mut used = vec![false; k];
        let mut chars = text.chars().peekable();
        loop {
            match chars.peek() {
                None => break,
                Some(c) if c.is_whitespace() => {
                    chars.next();
                }
                Some('(') => {
                    chars.next();
                    let mut cycle = Vec::new();
                    let mut closed = false;
                    let mut token = String::new();
                    for c in chars.by_ref() {
                        match c {
                            ')' => {
                                closed = true;
                                break;
                            }
                            '(' => return Err(PermError::Malformed("nested '('".into())),
                            c if c.is_ascii_digit() => token.push(c),
                            c if c.is_whitespace() || c == ',' => {
                                if !token.is_empty() {
                                    cycle.push(std::mem::take(&mut token));
                                }
                            }
                            c => return Err(PermError::Malformed(format!("unexpected character {c:?}"))),
                        }
                    }
                    if !closed {
                        return Err(PermError::Malformed("unclosed '('".into()));
                    }
                    if !token.is_empty() {
                        cycle.push(token);
                    }
                    let mut points = Vec::with_capacity(cycle.len());
                    for tok in cycle {
                        let x: usize = tok
                            .parse()
                            .map_err(|_| PermError::Malformed(format!("bad integer {tok:?}")))?;
                        if x >= k {
                            return Err(PermError::OutOfRange { point: x, k });
                        }
                        if used[x] {
                            return Err(PermError::Duplicate(x));
                        }
                        used[x] = true;
                        points.push(x);
                    }
                    for (a, b) in points.iter().zip(points.iter().cycle().skip(1)) {
                        images[*a] = *b;
                    }
                }
                Some(c) => return Err(PermError::Malformed(format!("unexpected character {c:?} outside a cycle"))),
            }
        }
        Ok(Permutation { images })
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.k(), other.k(), "composing permutations of different sizes");
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.k()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: usize) -> Permutation {
        let mut out = Permutation::identity(self.k());
        for _ in 0..e {
            out = self.compose(&out);
        }
        out
    }

    /// Iterates `x` under the permutation `e` times without materialising the power.
    pub fn apply_pow(&self, mut x: usize, e: usize) -> usize {
        for _ in 0..e {
            x = self.images[x];
        }
        x
    }

    /// `π σ π⁻¹`: the permutation acting on relabeled points.
    pub fn conjugate_by(&self, pi: &Permutation) -> Permutation {
        assert_eq!(self.k(), pi.k());
        let mut images = vec![0; self.k()];
        for x in 0..self.k() {
            images[pi.apply(x)] = pi.apply(self.apply(x));
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn orbit(&self, x: usize) -> Result<Orbit, PermError> {
        if x >= self.k() {
            return Err(PermError::OutOfRange { point: x, k: self.k() });
        }
        let mut points = vec![x];
        let mut y = self.images[x];
        while y != x {
            points.push(y);
            y = self.images[y];
        }
        Ok(Orbit { points })
    }

    /// All orbits, each starting at its least point, ordered by that point.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.k()];
        let mut out = Vec::new();
        for x in 0..self.k() {
            if !seen[x] {
                let o = self.orbit(x).expect("in range");
                for &p in o.points() {
                    seen[p] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// `orbit_ids()[x]` is the index in [`Permutation::orbits`] of the orbit through `x`.
    pub fn orbit_ids(&self) -> Vec<usize> {
        let mut ids = vec![usize::MAX; self.k()];
        for (id, o) in self.orbits().iter().enumerate() {
            for &p in o.points() {
                ids[p] = id;
            }
        }
        ids
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.orbits().iter().map(Orbit::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// True iff the permutation is transitive (a single k-cycle).
    pub fn is_single_cycle(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.k()).unwrap_or(false)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.k() == other.k() && (0..self.k()).all(|x| self.apply(other.apply(x)) == other.apply(self.apply(x)))
    }

    /// Every permutation of the centraliser of `self`: maps that carry each
    /// cycle onto a cycle of the same length, with an arbitrary rotation.
    pub fn centralizer(&self) -> Vec<Permutation> {
        let cycles = self.orbits();
        let mut out = Vec::new();
        let mut images = vec![usize::MAX; self.k()];
        let mut taken = vec![false; cycles.len()];
        centralizer_rec(&cycles, 0, &mut taken, &mut images, &mut out);
        out
    }

    /// Lists the permutation in cycle notation, omitting fixed points.
    /// The identity renders as `()`.
    pub fn to_cycle_string(&self) -> String {
        let s: String = self
            .orbits()
            .iter()
            .filter(|o| o.len() > 1)
            .map(|o| format!("({})", o.points().iter().join(" ")))
            .collect();
        if s.is_empty() {
            "()".to_string()
        } else {
            s
        }
    }

    /// All permutations of `{0, …, k-1}` in lexicographic order of images.
    pub fn all(k: usize) -> Vec<Permutation> {
        (0..k).permutations(k).map(|images| Permutation { images }).collect()
    }
}

fn centralizer_rec(
    cycles: &[Orbit],
    idx: usize,
    taken: &mut [bool],
    images: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if idx == cycles.len() {
        out.push(Permutation { images: images.clone() });
        return;
    }
    let src = cycles[idx].points();
    for t in 0..cycles.len() {
        if taken[t] || cycles[t].len() != src.len() {
            continue;
        }
        taken[t] = true;
        let dst = cycles[t].points();
        for rot in 0..dst.len() {
            for (s, &a) in src.iter().enumerate() {
                images[a] = dst[(s + rot) % dst.len()];
            }
            centralizer_rec(cycles, idx + 1, taken, images, out);
        }
        taken[t] = false;
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// An orbit, listed in iteration order from its starting point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orbit {
    points: Vec<usize>,
}

impl Orbit {
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.points.contains(&x)
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == x)
    }

    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.points.clone();
        v.sort_unstable();
        v
    }
}

/// Which condition of the orbit characterisation of perpendicular actions fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum PerpViolation {
    /// Condition (i): `O¹(x) ∩ O²(y)` is not a single point.
    OrbitIntersection { x: usize, y: usize, size: usize },
    /// Condition (ii): the orbits of one generator do not share a cardinality.
    UnequalOrbitSizes { generator: u8, x: usize, y: usize },
}

impl PerpViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            PerpViolation::OrbitIntersection { .. } => "(i)",
            PerpViolation::UnequalOrbitSizes { .. } => "(ii)",
        }
    }
}

impl fmt::Display for PerpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerpViolation::OrbitIntersection { x, y, size } => write!(
                f,
                "condition (i) fails: the σ₁-orbit of {x} meets the σ₂-orbit of {y} in {size} points"
            ),
            PerpViolation::UnequalOrbitSizes { generator, x, y } => write!(
                f,
                "condition (ii) fails: σ{g}-orbits of {x} and {y} have different sizes",
                g = if *generator == 1 { "₁" } else { "₂" }
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("action is not perpendicular: {0}")]
pub struct NotPerpendicular(pub PerpViolation);

/// A pair of commuting permutations of the same ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Action {
    sigma1: Permutation,
    sigma2: Permutation,
}

impl Z2Action {
    pub fn new(sigma1: Permutation, sigma2: Permutation) -> Result<Self, PermError> {
        if sigma1.k() != sigma2.k() {
            return Err(PermError::SizeMismatch(sigma1.k(), sigma2.k()));
        }
        for x in 0..sigma1.k() {
            let left = sigma1.apply(sigma2.apply(x));
            let right = sigma2.apply(sigma1.apply(x));
            if left != right {
                return Err(PermError::NonCommuting { point: x, left, right });
            }
        }
        Ok(Z2Action { sigma1, sigma2 })
    }

    pub fn trivial(k: usize) -> Self {
        Z2Action { sigma1: Permutation::identity(k), sigma2: Permutation::identity(k) }
    }

    /// Both generators equal to the shift `x ↦ x - 1 (mod k)`.
    pub fn diagonal_shift(k: usize) -> Self {
        Z2Action { sigma1: Permutation::shift(k), sigma2: Permutation::shift(k) }
    }

    /// `τ₁ × τ₂` on `k·ℓ` points, flattened row-major: `(i, i') ↦ i·ℓ + i'`.
    pub fn product(t1: &Permutation, t2: &Permutation) -> Self {
        let (k, l) = (t1.k(), t2.k());
        let mut s1 = vec![0; k * l];
        let mut s2 = vec![0; k * l];
        for i in 0..k {
            for ip in 0..l {
                s1[i * l + ip] = t1.apply(i) * l + ip;
                s2[i * l + ip] = i * l + t2.apply(ip);
            }
        }
        Z2Action { sigma1: Permutation { images: s1 }, sigma2: Permutation { images: s2 } }
    }

    pub fn k(&self) -> usize {
        self.sigma1.k()
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &Permutation {
        &self.sigma2
    }

    /// `σ₂ⁿ σ₁ᵐ (x)`.
    pub fn act(&self, m: usize, n: usize, x: usize) -> usize {
        self.sigma2.apply_pow(self.sigma1.apply_pow(x, m), n)
    }

    pub fn conjugate_by(&self, pi: &Permutation) -> Z2Action {
        Z2Action { sigma1: self.sigma1.conjugate_by(pi), sigma2: self.sigma2.conjugate_by(pi) }
    }

    /// Points reachable from `x` under words in σ₁ and σ₂, in BFS order.
    pub fn joint_orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.k()];
        let mut out = vec![x];
        seen[x] = true;
        let mut head = 0;
        while head < out.len() {
            let y = out[head];
            head += 1;
            for z in [self.sigma1.apply(y), self.sigma2.apply(y)] {
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                }
            }
        }
        out
    }

    /// Joint orbits, each sorted, ordered by least point.
    pub fn joint_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.k()];
        let mut out = Vec::new();
        for x in 0..self.k() {
            if seen[x] {
                continue;
            }
            let mut o = self.joint_orbit(x);
            for &p in &o {
                seen[p] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.joint_orbit(0).len() == self.k()
    }

    /// Checks the orbit characterisation: uniform orbit sizes for each
    /// generator, and singleton intersections of σ₁- and σ₂-orbits.
    pub fn perpendicularity(&self) -> Result<(), PerpViolation> {
        for (g, p) in [(1u8, &self.sigma1), (2u8, &self.sigma2)] {
            let orbits = p.orbits();
            if let Some(o) = orbits.iter().find(|o| o.len() != orbits[0].len()) {
                return Err(PerpViolation::UnequalOrbitSizes {
                    generator: g,
                    x: orbits[0].points()[0],
                    y: o.points()[0],
                });
            }
        }
        let ids1 = self.sigma1.orbit_ids();
        let ids2 = self.sigma2.orbit_ids();
        let n1 = ids1.iter().max().map_or(0, |m| m + 1);
        let n2 = ids2.iter().max().map_or(0, |m| m + 1);
        let mut counts = vec![0usize; n1 * n2];
        for x in 0..self.k() {
            counts[ids1[x] * n2 + ids2[x]] += 1;
        }
        let reps1: Vec<usize> = self.sigma1.orbits().iter().map(|o| o.points()[0]).collect();
        let reps2: Vec<usize> = self.sigma2.orbits().iter().map(|o| o.points()[0]).collect();
        for a in 0..n1 {
            for b in 0..n2 {
                let size = counts[a * n2 + b];
                if size != 1 {
                    return Err(PerpViolation::OrbitIntersection { x: reps1[a], y: reps2[b], size });
                }
            }
        }
        Ok(())
    }

    pub fn is_perpendicular(&self) -> bool {
        self.perpendicularity().is_ok()
    }

    /// Builds the conjugacy `h: X → X₁ × X₂` with base point 0, where
    /// `X₁`, `X₂` are the σ₁- and σ₂-orbits of 0 and `h(x)` pairs the unique
    /// points of `O¹(0) ∩ O²(x)` and `O¹(x) ∩ O²(0)`.
    pub fn perp_decompose(&self) -> Result<PerpDecomposition, NotPerpendicular> {
        self.perpendicularity().map_err(NotPerpendicular)?;
        let x0 = 0;
        let x1 = self.sigma1.orbit(x0).expect("in range");
        let x2 = self.sigma2.orbit(x0).expect("in range");
        let ids1 = self.sigma1.orbit_ids();
        let ids2 = self.sigma2.orbit_ids();
        let h = (0..self.k())
            .map(|x| {
                let y1 = *x1.points().iter().find(|&&p| ids2[p] == ids2[x]).expect("singleton intersection");
                let y2 = *x2.points().iter().find(|&&p| ids1[p] == ids1[x]).expect("singleton intersection");
                (y1, y2)
            })
            .collect();
        Ok(PerpDecomposition {
            x0,
            tau1: Permutation::cycle(x1.len()),
            tau2: Permutation::cycle(x2.len()),
            x1,
            x2,
            h,
        })
    }

    /// Enumerates every commuting pair on `k` points.
    pub fn all_commuting(k: usize) -> Vec<Z2Action> {
        let mut out = Vec::new();
        for s1 in Permutation::all(k) {
            let mut cent = s1.centralizer();
            cent.sort();
            for s2 in cent {
                out.push(Z2Action { sigma1: s1.clone(), sigma2: s2 });
            }
        }
        out
    }

    /// One representative per simultaneous-conjugacy class of commuting pairs
    /// on `k` points: the lexicographically least `(σ₁, σ₂)` image pair in the
    /// class. Returned in increasing order.
    pub fn canonical_commuting(k: usize) -> Vec<Z2Action> {
        // least permutation of each cycle type
        let mut least: BTreeMap<Vec<usize>, Permutation> = BTreeMap::new();
        for p in Permutation::all(k) {
            least.entry(p.cycle_type()).or_insert(p);
        }
        let mut out = Vec::new();
        for s1 in least.into_values() {
            let mut cent = s1.centralizer();
            cent.sort();
            let mut seen: HashSet<Permutation> = HashSet::new();
            for s2 in &cent {
                if seen.contains(s2) {
                    continue;
                }
                let mut rep = s2.clone();
                for c in &cent {
                    let conj = s2.conjugate_by(c);
                    if conj < rep {
                        rep = conj.clone();
                    }
                    seen.insert(conj);
                }
                out.push(Z2Action { sigma1: s1.clone(), sigma2: rep });
            }
        }
        out.sort();
        out
    }
}

/// The output of [`Z2Action::perp_decompose`].
///
/// `x1` and `x2` are listed in iteration order from `x0`, so in position
/// coordinates the factor cycles `tau1`, `tau2` are `t ↦ t + 1`. `h` maps a
/// ground point to a pair of ground points `(y1, y2)` with `y1 ∈ x1`, `y2 ∈ x2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerpDecomposition {
    pub x0: usize,
    pub x1: Orbit,
    pub x2: Orbit,
    pub tau1: Permutation,
    pub tau2: Permutation,
    pub h: Vec<(usize, usize)>,
}

impl PerpDecomposition {
    pub fn factor_sizes(&self) -> (usize, usize) {
        (self.x1.len(), self.x2.len())
    }

    pub fn h(&self, x: usize) -> (usize, usize) {
        self.h[x]
    }

    /// `h(x)` in orbit-position coordinates.
    pub fn h_positions(&self, x: usize) -> (usize, usize) {
        let (y1, y2) = self.h[x];
        (
            self.x1.position(y1).expect("y1 lies in X1"),
            self.x2.position(y2).expect("y2 lies in X2"),
        )
    }

    /// Index of `x` in the row-major flattening of `ℤ_k × ℤ_ℓ` on which the
    /// factor cycles act as `c ↦ c - 1`; this is the labeling under which the
    /// generated pattern coincides with the tensor pattern.
    pub fn tensor_index(&self, x: usize) -> usize {
        let (k, l) = self.factor_sizes();
        let (p1, p2) = self.h_positions(x);
        ((k - p1) % k) * l + (l - p2) % l
    }

    /// Maps each tensor index back to its ground point.
    pub fn tensor_relabeling(&self) -> Permutation {
        let mut images = vec![0; self.h.len()];
        for x in 0..self.h.len() {
            images[self.tensor_index(x)] = x;
        }
        Permutation::from_images(images).expect("h is a bijection")
    }

    /// Checks every invariant pointwise against the action it came from:
    /// `|X1|·|X2| = k`, `h` bijective, τᵢ single cycles, and
    /// `h∘σ₁ = (τ₁×id)∘h`, `h∘σ₂ = (id×τ₂)∘h`.
    pub fn verify(&self, action: &Z2Action) -> Result<(), String> {
        let k = action.k();
        let (k1, k2) = self.factor_sizes();
        if k1 * k2 != k || self.h.len() != k {
            return Err(format!("card(X1)·card(X2) = {}·{} ≠ {k}", k1, k2));
        }
        if !self.tau1.is_single_cycle() || !self.tau2.is_single_cycle() {
            return Err("factor permutations are not single cycles".into());
        }
        let mut hit = HashSet::new();
        for x in 0..k {
            if !self.x1.contains(self.h[x].0) || !self.x2.contains(self.h[x].1) {
                return Err(format!("h({x}) leaves X1 × X2"));
            }
            if !hit.insert(self.h_positions(x)) {
                return Err(format!("h is not injective at {x}"));
            }
        }
        for x in 0..k {
            let (p1, p2) = self.h_positions(x);
            if self.h_positions(action.sigma1().apply(x)) != (self.tau1.apply(p1), p2) {
                return Err(format!("h∘σ₁ ≠ (τ₁×id)∘h at {x}"));
            }
            if self.h_positions(action.sigma2().apply(x)) != (p1, self.tau2.apply(p2)) {
                return Err(format!("h∘σ₂ ≠ (id×τ₂)∘h at {x}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex411() -> Z2Action {
        Z2Action::new(
            Permutation::parse_cycles("(0 1 2)(3 4 5)", 6).unwrap(),
            Permutation::parse_cycles("(0 3)(1 4)(2 5)", 6).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(Permutation::parse_cycles("(0 1 2)(3 4 5)", 6).unwrap().images(), &[1, 2, 0, 4, 5, 3]);
        assert_eq!(Permutation::parse_cycles("", 3).unwrap().images(), &[0, 1, 2]);
        assert_eq!(Permutation::parse_cycles("(2 1 0)", 3).unwrap().images(), &[2, 0, 1]);
        assert_eq!(Permutation::parse_cycles("()", 2).unwrap(), Permutation::identity(2));
        assert_eq!(Permutation::parse_cycles("(3 2 1 0)", 4).unwrap(), Permutation::shift(4));
    }

    #[test]
    fn cycle_parsing_errors() {
        assert_eq!(Permutation::parse_cycles("(0 1)(1 2)", 3), Err(PermError::Duplicate(1)));
        assert_eq!(Permutation::parse_cycles("(0 3)", 3), Err(PermError::OutOfRange { point: 3, k: 3 }));
        assert!(matches!(Permutation::parse_cycles("(0 1", 3), Err(PermError::Malformed(_))));
        assert!(matches!(Permutation::parse_cycles("0 1)", 3), Err(PermError::Malformed(_))));
        assert!(matches!(Permutation::parse_cycles("((0 1))", 3), Err(PermError::Malformed(_))));
        assert!(matches!(Permutation::parse_cycles("(0 x)", 3), Err(PermError::Malformed(_))));
    }

    #[test]
    fn display_round_trip() {
        let p = Permutation::parse_cycles("(0 1 2)(3 4 5)", 7).unwrap();
        assert_eq!(p.to_string(), "(0 1 2)(3 4 5)");
        assert_eq!(Permutation::parse_cycles(&p.to_string(), 7).unwrap(), p);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert_eq!(Permutation::from_images(vec![]), Err(PermError::Empty));
    }

    #[test]
    fn orbits() {
        let a = ex411();
        assert_eq!(a.sigma1().orbit(0).unwrap().points(), &[0, 1, 2]);
        assert_eq!(a.sigma2().orbit(0).unwrap().points(), &[0, 3]);
        assert_eq!(Permutation::identity(5).orbit(4).unwrap().points(), &[4]);
        assert!(Permutation::identity(5).orbit(5).is_err());
    }

    #[test]
    fn transitivity() {
        assert!(ex411().is_transitive());
        assert!(!Z2Action::trivial(2).is_transitive());
        assert!(Z2Action::diagonal_shift(4).is_transitive());
    }

    #[test]
    fn perpendicularity() {
        assert!(ex411().is_perpendicular());
        let c = Z2Action::new(Permutation::cycle(3), Permutation::cycle(3)).unwrap();
        assert_eq!(c.perpendicularity(), Err(PerpViolation::OrbitIntersection { x: 0, y: 0, size: 3 }));
        assert!(Z2Action::trivial(1).is_perpendicular());
        let uneven = Z2Action::new(Permutation::parse_cycles("(0 1)", 3).unwrap(), Permutation::identity(3)).unwrap();
        assert_eq!(uneven.perpendicularity().unwrap_err().condition(), "(ii)");
    }

    #[test]
    fn decomposition_of_example_action() {
        let a = ex411();
        let d = a.perp_decompose().unwrap();
        assert_eq!(d.x1.points(), &[0, 1, 2]);
        assert_eq!(d.x2.points(), &[0, 3]);
        assert_eq!(d.h(0), (0, 0));
        assert_eq!(d.h(4), (1, 3));
        assert_eq!(d.h(3), (0, 3));
        assert_eq!(d.h(5), (2, 3));
        assert_eq!(d.h(2), (2, 0));
        d.verify(&a).unwrap();
    }

    #[test]
    fn decomposition_of_single_point() {
        let d = Z2Action::trivial(1).perp_decompose().unwrap();
        assert_eq!(d.x1.points(), &[0]);
        assert_eq!(d.x2.points(), &[0]);
        assert_eq!(d.h(0), (0, 0));
    }

    #[test]
    fn decomposition_of_product_is_identity_pairing() {
        let a = Z2Action::product(&Permutation::cycle(3), &Permutation::cycle(2));
        let d = a.perp_decompose().unwrap();
        for i in 0..3 {
            for ip in 0..2 {
                assert_eq!(d.h_positions(i * 2 + ip), (i, ip));
            }
        }
        d.verify(&a).unwrap();
    }

    #[test]
    fn decompose_rejects_with_witness() {
        let c = Z2Action::diagonal_shift(3);
        let err = c.perp_decompose().unwrap_err();
        assert_eq!(err.0.condition(), "(i)");
    }

    #[test]
    fn product_matches_example_under_relabeling() {
        let prod = Z2Action::product(&Permutation::cycle(3), &Permutation::cycle(2));
        // example point i + 3i' corresponds to product point 2i + i'
        let pi = Permutation::from_images((0..6).map(|x| 2 * (x % 3) + x / 3).collect()).unwrap();
        assert_eq!(ex411().conjugate_by(&pi), prod);
    }

    #[test]
    fn product_actions() {
        let t = Z2Action::product(&Permutation::identity(1), &Permutation::identity(1));
        assert_eq!(t, Z2Action::trivial(1));
        let q = Z2Action::product(&Permutation::cycle(2), &Permutation::cycle(2));
        assert_eq!(q.k(), 4);
        assert!(q.sigma1().orbits().iter().all(|o| o.len() == 2));
        assert!(q.sigma2().orbits().iter().all(|o| o.len() == 2));
        assert!(q.sigma1().commutes_with(q.sigma2()));
    }

    #[test]
    fn non_commuting_pair_is_rejected() {
        let err = Z2Action::new(
            Permutation::parse_cycles("(0 1)", 3).unwrap(),
            Permutation::parse_cycles("(1 2)", 3).unwrap(),
        )
        .unwrap_err();
        assert!(matches!(err, PermError::NonCommuting { point: 0, .. }));
    }

    #[test]
    fn centralizer_sizes() {
        // |C(σ)| = ∏ l^{a_l} a_l!
        assert_eq!(Permutation::identity(4).centralizer().len(), 24);
        assert_eq!(Permutation::cycle(5).centralizer().len(), 5);
        assert_eq!(Permutation::parse_cycles("(0 1)(2 3)", 5).unwrap().centralizer().len(), 8);
        let p = Permutation::parse_cycles("(0 1 2)(3 4)", 6).unwrap();
        for c in p.centralizer() {
            assert!(c.commutes_with(&p));
        }
    }

    #[test]
    fn commuting_pair_counts() {
        // number of commuting pairs in S_k is k!·p(k)
        for (k, expected) in [(1, 1), (2, 4), (3, 18), (4, 120), (5, 840)] {
            assert_eq!(Z2Action::all_commuting(k).len(), expected);
        }
    }

    #[test]
    fn canonical_pairs_cover_every_class() {
        for k in 1..=4 {
            let all = Z2Action::all_commuting(k);
            let canon = Z2Action::canonical_commuting(k);
            let perms = Permutation::all(k);
            let class_min = |a: &Z2Action| perms.iter().map(|p| a.conjugate_by(p)).min().unwrap();
            let mut mins: Vec<Z2Action> = all.iter().map(class_min).collect();
            mins.sort();
            mins.dedup();
            assert_eq!(mins, canon);
        }
    }

    #[test]
    fn perpendicular_implies_transitive() {
        for k in 1..=6 {
            for a in Z2Action::all_commuting(k) {
                if a.is_perpendicular() {
                    assert!(a.is_transitive(), "{a:?}");
                }
            }
        }
    }

    #[test]
    fn perpendicular_iff_decomposition_verifies() {
        for k in 1..=6 {
            for a in Z2Action::canonical_commuting(k) {
                match a.perp_decompose() {
                    Ok(d) => {
                        assert!(a.is_perpendicular());
                        d.verify(&a).unwrap();
                    }
                    Err(_) => assert!(!a.is_perpendicular()),
                }
            }
        }
    }
}
