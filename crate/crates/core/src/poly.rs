//! Exact bivariate polynomials in `z, w` over ℚ, truncated at a total-degree
//! cap, and square matrices of them.
//!
//! Products silently discard every term of total degree above the cap: a
//! value of cap `N` is an element of the quotient by monomials of degree
//! `> N`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree caps differ ({0} vs {1})")]
    CapMismatch(usize, usize),
    #[error("matrix sizes differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("monomial z^{m} w^{n} exceeds degree cap {cap}")]
    ExceedsCap { m: usize, n: usize, cap: usize },
}

/// Sparse polynomial `Σ a_{mn} z^m w^n` with `m + n ≤ cap`; zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), Rational>,
    cap: usize,
}

impl BiPoly {
    pub fn zero(cap: usize) -> Self {
        BiPoly { terms: BTreeMap::new(), cap }
    }

    pub fn one(cap: usize) -> Self {
        Self::constant(Rational::one(), cap)
    }

    pub fn constant(c: Rational, cap: usize) -> Self {
        Self::monomial(c, 0, 0, cap).expect("degree 0 fits any cap")
    }

    pub fn monomial(c: Rational, m: usize, n: usize, cap: usize) -> Result<Self, PolyError> {
        if m + n > cap {
            return Err(PolyError::ExceedsCap { m, n, cap });
        }
        let mut p = BiPoly::zero(cap);
        if !c.is_zero() {
            p.terms.insert((m, n), c);
        }
        Ok(p)
    }

    /// Builds from `(m, n, coefficient)` triples, summing repeats and
    /// dropping anything above the cap.
    pub fn from_terms<I>(terms: I, cap: usize) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut p = BiPoly::zero(cap);
        for (m, n, c) in terms {
            if m + n <= cap {
                p.add_term(m, n, c);
            }
        }
        p
    }

    pub fn z(cap: usize) -> Self {
        Self::from_terms([(1, 0, Rational::one())], cap)
    }

    pub fn w(cap: usize) -> Self {
        Self::from_terms([(0, 1, Rational::one())], cap)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: usize, n: usize) -> Rational {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.terms.iter().map(|(&(m, n), c)| (m, n, c))
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(m, n)| m + n).max()
    }

    fn add_term(&mut self, m: usize, n: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((m, n)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(m, n));
        }
    }

    fn check_cap(&self, other: &BiPoly) -> Result<(), PolyError> {
        if self.cap != other.cap {
            Err(PolyError::CapMismatch(self.cap, other.cap))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &BiPoly) -> Result<BiPoly, PolyError> {
        self.check_cap(other)?;
        let mut out = self.clone();
        for (m, n, c) in other.terms() {
            out.add_term(m, n, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(), cap: self.cap }
    }

    pub fn sub(&self, other: &BiPoly) -> Result<BiPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(self.cap);
        }
        BiPoly { terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(), cap: self.cap }
    }

    /// Truncated product.
    pub fn mul(&self, other: &BiPoly) -> Result<BiPoly, PolyError> {
        self.check_cap(other)?;
        let mut out = BiPoly::zero(self.cap);
        for (m1, n1, a) in self.terms() {
            for (m2, n2, b) in other.terms() {
                let (m, n) = (m1 + m2, n1 + n2);
                if m + n <= self.cap {
                    out.add_term(m, n, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, lambda: &Rational, mu: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, n, c) in self.terms() {
            acc += c * pow(lambda, m) * pow(mu, n);
        }
        acc
    }
}

/// `x^e` with `0^0 = 1`.
fn pow(x: &Rational, e: usize) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, n, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if m > 0 {
                write!(f, "·z^{m}")?;
            }
            if n > 0 {
                write!(f, "·w^{n}")?;
            }
        }
        Ok(())
    }
}

/// A `k × k` matrix of [`BiPoly`] entries sharing one cap, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPoly {
    k: usize,
    cap: usize,
    entries: Vec<BiPoly>,
}

impl MatrixPoly {
    pub fn zero(k: usize, cap: usize) -> Self {
        MatrixPoly { k, cap, entries: vec![BiPoly::zero(cap); k * k] }
    }

    pub fn identity(k: usize, cap: usize) -> Self {
        let mut a = Self::zero(k, cap);
        for i in 0..k {
            a.entries[i * k + i] = BiPoly::one(cap);
        }
        a
    }

    /// The matrix unit `e_{ij}`.
    pub fn unit(k: usize, i: usize, j: usize, cap: usize) -> Self {
        let mut a = Self::zero(k, cap);
        a.entries[i * k + j] = BiPoly::one(cap);
        a
    }

    /// `e_{ij} z^m w^n`.
    pub fn monomial_unit(k: usize, i: usize, j: usize, m: usize, n: usize, cap: usize) -> Result<Self, PolyError> {
        let mut a = Self::zero(k, cap);
        a.entries[i * k + j] = BiPoly::monomial(Rational::one(), m, n, cap)?;
        Ok(a)
    }

    pub fn from_entries(k: usize, entries: Vec<BiPoly>) -> Result<Self, PolyError> {
        if entries.len() != k * k {
            return Err(PolyError::DimensionMismatch(k * k, entries.len()));
        }
        let cap = entries.first().map_or(0, BiPoly::cap);
        if let Some(e) = entries.iter().find(|e| e.cap() != cap) {
            return Err(PolyError::CapMismatch(cap, e.cap()));
        }
        Ok(MatrixPoly { k, cap, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn entry(&self, i: usize, j: usize) -> &BiPoly {
        &self.entries[i * self.k + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: BiPoly) -> Result<(), PolyError> {
        if p.cap() != self.cap {
            return Err(PolyError::CapMismatch(self.cap, p.cap()));
        }
        self.entries[i * self.k + j] = p;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BiPoly::is_zero)
    }

    fn check(&self, other: &MatrixPoly) -> Result<(), PolyError> {
        if self.k != other.k {
            return Err(PolyError::DimensionMismatch(self.k, other.k));
        }
        if self.cap != other.cap {
            return Err(PolyError::CapMismatch(self.cap, other.cap));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixPoly) -> Result<MatrixPoly, PolyError> {
        self.check(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(MatrixPoly { k: self.k, cap: self.cap, entries })
    }

    /// Multiplies every entry by the scalar polynomial `p` (e.g. `z·P`).
    pub fn scale_poly(&self, p: &BiPoly) -> Result<MatrixPoly, PolyError> {
        let entries = self.entries.iter().map(|e| e.mul(p)).collect::<Result<_, _>>()?;
        Ok(MatrixPoly { k: self.k, cap: self.cap, entries })
    }

    pub fn mul(&self, other: &MatrixPoly) -> Result<MatrixPoly, PolyError> {
        self.check(other)?;
        let k = self.k;
        let mut out = MatrixPoly::zero(k, self.cap);
        for i in 0..k {
            for l in 0..k {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = other.entry(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b)?;
                    out.entries[i * k + j] = out.entries[i * k + j].add(&prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, lambda: &Rational, mu: &Rational) -> RationalMatrix {
        RationalMatrix {
            k: self.k,
            data: self.entries.iter().map(|e| e.evaluate(lambda, mu)).collect(),
        }
    }

    /// Coefficients in the basis of all `e_{ij} z^m w^n` with `m + n ≤ cap`,
    /// ordered by `(i, j, m, n)`.
    pub fn coefficient_vector(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for e in &self.entries {
            for m in 0..=self.cap {
                for n in 0..=self.cap - m {
                    out.push(e.coeff(m, n));
                }
            }
        }
        out
    }
}

/// A dense `k × k` matrix over ℚ, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    k: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(k: usize) -> Self {
        RationalMatrix { k, data: vec![Rational::zero(); k * k] }
    }

    pub fn identity(k: usize) -> Self {
        let mut a = Self::zero(k);
        for i in 0..k {
            a.data[i * k + i] = Rational::one();
        }
        a
    }

    pub fn unit(k: usize, i: usize, j: usize) -> Self {
        let mut a = Self::zero(k);
        a.data[i * k + j] = Rational::one();
        a
    }

    pub fn from_i64(k: usize, rows: &[i64]) -> Self {
        assert_eq!(rows.len(), k * k);
        RationalMatrix { k, data: rows.iter().map(|&x| Rational::from_integer(x.into())).collect() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.k + j]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.k, other.k);
        RationalMatrix { k: self.k, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix { k: self.k, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let mut out = RationalMatrix::zero(k);
        for i in 0..k {
            for l in 0..k {
                let a = &self.data[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = &other.data[l * k + j];
                    if !b.is_zero() {
                        out.data[i * k + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Incrementally maintained row-echelon basis over ℚ.
#[derive(Debug, Default, Clone)]
pub struct EchelonBasis {
    // (pivot column, row with 1 at pivot and zeros before it), sorted by pivot
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; returns whether it was independent of the current basis.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*pivot) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut().skip(pivot) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }
}

/// Rank of a family of vectors over ℚ by exact Gaussian elimination.
pub fn vector_rank<I>(vectors: I) -> usize
where
    I: IntoIterator<Item = Vec<Rational>>,
{
    let mut basis = EchelonBasis::new();
    let mut len = None;
    for v in vectors {
        assert_eq!(*len.get_or_insert(v.len()), v.len(), "vectors of different lengths");
        basis.insert(v);
    }
    basis.rank()
}

/// Dimension of the span of `k × k` rational matrices, viewed as `k²`-vectors.
pub fn rational_rank(matrices: &[RationalMatrix]) -> usize {
    vector_rank(matrices.iter().map(|a| a.data.clone()))
}
