//! Python bindings: permutations, commuting pairs, monomial patterns and the
//! codimension invariant, plus the JSON report pipeline.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use semicrossed::report::{self, ActionSpec, DecompositionReport};
use semicrossed::{
    closed_form_pattern, codim_invariant, distinguish, equal_to_degree, generated_pattern, generators,
    probe_generating_set, rank_oracle, GeneratorSet, MonomialKey, Pattern, Permutation, Rational, Z2Action,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn loads<'py>(py: Python<'py>, text: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_rational(text: &str) -> PyResult<Rational> {
    text.trim().parse().map_err(|_| PyValueError::new_err(format!("not a rational number: {text:?}")))
}

type Key = (usize, usize, usize, usize);

fn key_tuple(k: &MonomialKey) -> Key {
    (k.i, k.j, k.m, k.n)
}

#[pyclass(name = "Permutation", module = "pysemicrossed", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPermutation(Permutation);

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        Permutation::from_images(images).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn from_cycles(text: &str, k: usize) -> PyResult<Self> {
        Permutation::parse_cycles(text, k).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn identity(k: usize) -> Self {
        Self(Permutation::identity(k))
    }

    /// `x ↦ x - 1 (mod k)`.
    #[staticmethod]
    fn shift(k: usize) -> Self {
        Self(Permutation::shift(k))
    }

    /// `x ↦ x + 1 (mod k)`.
    #[staticmethod]
    fn cycle(k: usize) -> Self {
        Self(Permutation::cycle(k))
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn images(&self) -> Vec<usize> {
        self.0.images().to_vec()
    }

    fn __call__(&self, x: usize) -> PyResult<usize> {
        if x >= self.0.k() {
            return Err(value_error(format!("point {x} out of range for k = {}", self.0.k())));
        }
        Ok(self.0.apply(x))
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        if other.0.k() != self.0.k() {
            return Err(value_error("permutations act on sets of different sizes"));
        }
        Ok(Self(self.0.compose(&other.0)))
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn pow(&self, e: usize) -> Self {
        Self(self.0.pow(e))
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        self.0.orbits().iter().map(|o| o.points().to_vec()).collect()
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.0.cycle_type()
    }

    fn commutes_with(&self, other: &Self) -> bool {
        self.0.k() == other.0.k() && self.0.commutes_with(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_cycle_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.images())
    }
}

#[pyclass(name = "Action", module = "pysemicrossed", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyAction(Z2Action);

#[pymethods]
impl PyAction {
    #[new]
    fn new(sigma1: &PyPermutation, sigma2: &PyPermutation) -> PyResult<Self> {
        Z2Action::new(sigma1.0.clone(), sigma2.0.clone()).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn from_cycles(k: usize, sigma1: &str, sigma2: &str) -> PyResult<Self> {
        let s1 = Permutation::parse_cycles(sigma1, k).map_err(value_error)?;
        let s2 = Permutation::parse_cycles(sigma2, k).map_err(value_error)?;
        Z2Action::new(s1, s2).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn diagonal_shift(k: usize) -> Self {
        Self(Z2Action::diagonal_shift(k))
    }

    /// The product of a `k`-cycle and an `l`-cycle on `k·l` points.
    #[staticmethod]
    fn product(k: usize, l: usize) -> Self {
        Self(Z2Action::product(&Permutation::cycle(k), &Permutation::cycle(l)))
    }

    /// One representative per simultaneous-conjugacy class of commuting pairs.
    #[staticmethod]
    fn canonical(k: usize) -> Vec<Self> {
        Z2Action::canonical_commuting(k).into_iter().map(Self).collect()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn sigma1(&self) -> PyPermutation {
        PyPermutation(self.0.sigma1().clone())
    }

    #[getter]
    fn sigma2(&self) -> PyPermutation {
        PyPermutation(self.0.sigma2().clone())
    }

    fn conjugate_by(&self, pi: &PyPermutation) -> PyResult<Self> {
        if pi.0.k() != self.0.k() {
            return Err(value_error("relabeling has the wrong size"));
        }
        Ok(Self(self.0.conjugate_by(&pi.0)))
    }

    fn joint_orbits(&self) -> Vec<Vec<usize>> {
        self.0.joint_orbits()
    }

    fn is_transitive(&self) -> bool {
        self.0.is_transitive()
    }

    fn is_perpendicular(&self) -> bool {
        self.0.is_perpendicular()
    }

    /// `None` when perpendicular, otherwise a description of the failed condition.
    fn violation(&self) -> Option<String> {
        self.0.perpendicularity().err().map(|v| v.to_string())
    }

    /// Product decomposition as a dict, or `ValueError` when not perpendicular.
    fn decompose<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let d = self.0.perp_decompose().map_err(|e| value_error(e.0))?;
        loads(py, report::to_json(&DecompositionReport::new(&d)))
    }

    #[pyo3(signature = (cap=8))]
    fn generated_pattern(&self, cap: usize) -> PyPattern {
        PyPattern(generated_pattern(&generators(&self.0), cap))
    }

    #[pyo3(signature = (cap=8))]
    fn closed_form_pattern(&self, cap: usize) -> PyPattern {
        PyPattern(closed_form_pattern(&self.0, cap))
    }

    fn __repr__(&self) -> String {
        format!("Action(k={}, sigma1={}, sigma2={})", self.0.k(), self.0.sigma1(), self.0.sigma2())
    }
}

#[pyclass(name = "Pattern", module = "pysemicrossed", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPattern(Pattern);

#[pymethods]
impl PyPattern {
    #[staticmethod]
    #[pyo3(signature = (cap=8))]
    fn bidisk(cap: usize) -> Self {
        Self(Pattern::bidisk(cap))
    }

    #[staticmethod]
    #[pyo3(signature = (k, cap=8))]
    fn bk(k: usize, cap: usize) -> Self {
        Self(Pattern::bk(k, cap))
    }

    #[staticmethod]
    #[pyo3(signature = (k, cap=8))]
    fn bk2(k: usize, cap: usize) -> Self {
        Self(Pattern::bk2(k, cap))
    }

    #[staticmethod]
    #[pyo3(signature = (k, cap=8))]
    fn akd2(k: usize, cap: usize) -> Self {
        Self(Pattern::akd2(k, cap))
    }

    #[staticmethod]
    #[pyo3(signature = (k, l, cap=8))]
    fn akd_tensor(k: usize, l: usize, cap: usize) -> Self {
        Self(Pattern::akd_tensor(k, l, cap))
    }

    #[staticmethod]
    #[pyo3(signature = (k, l, cap=8))]
    fn tensor(k: usize, l: usize, cap: usize) -> Self {
        Self(Pattern::tensor(k, l, cap))
    }

    #[staticmethod]
    fn custom(k: usize, cap: usize, keys: Vec<Key>) -> PyResult<Self> {
        Pattern::custom(k, cap, keys.into_iter().map(|(i, j, m, n)| MonomialKey::new(i, j, m, n)))
            .map(Self)
            .map_err(value_error)
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn cap(&self) -> usize {
        self.0.cap()
    }

    #[getter]
    fn name(&self) -> String {
        self.0.tag().name()
    }

    fn keys(&self) -> Vec<Key> {
        self.0.keys().iter().map(key_tuple).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, key: Key) -> bool {
        self.0.contains(&MonomialKey::new(key.0, key.1, key.2, key.3))
    }

    fn truncate(&self, cap: usize) -> Self {
        Self(self.0.truncate(cap))
    }

    fn relabel(&self, pi: &PyPermutation) -> PyResult<Self> {
        if pi.0.k() != self.0.k() {
            return Err(value_error("relabeling has the wrong size"));
        }
        Ok(Self(self.0.relabel(&pi.0)))
    }

    fn keys_by_degree(&self) -> Vec<usize> {
        self.0.keys_by_degree()
    }

    fn is_mult_closed(&self) -> bool {
        self.0.is_mult_closed()
    }

    /// `None` when equal up to total degree `cap`, else the least differing key.
    fn difference(&self, other: &Self, cap: usize) -> PyResult<Option<Key>> {
        let cmp = equal_to_degree(&self.0, &other.0, cap).map_err(value_error)?;
        Ok(cmp.witness().as_ref().map(key_tuple))
    }

    fn codim_invariant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let inv = codim_invariant(&self.0).map_err(value_error)?;
        loads(py, report::to_json(&inv))
    }

    /// Rank of the evaluations at `(lambda, mu)`, given as rational strings like `"3/4"`.
    fn rank_at(&self, lambda: &str, mu: &str) -> PyResult<usize> {
        Ok(rank_oracle(&self.0, &parse_rational(lambda)?, &parse_rational(mu)?))
    }

    fn __repr__(&self) -> String {
        format!("Pattern({}, k={}, cap={}, {} keys)", self.0.tag().name(), self.0.k(), self.0.cap(), self.0.len())
    }
}

/// `"distinguished"` or `"indistinguishable"`.
#[pyfunction(name = "distinguish")]
fn py_distinguish(p: &PyPattern, q: &PyPattern) -> PyResult<String> {
    Ok(distinguish(&p.0, &q.0).map_err(value_error)?.verdict.to_string())
}

/// Whether `{z(P_k⊗I), w(I⊗P_l)}` (or the single `zw(P_k⊗P_l)` when `mixed`)
/// with the diagonal units generates `B_k ⊗ B_l` up to `cap`.
#[pyfunction]
#[pyo3(signature = (k, l, mixed=false, cap=8))]
fn probe_product_generators(k: usize, l: usize, mixed: bool, cap: usize) -> PyResult<bool> {
    let g = if mixed { GeneratorSet::mixed_shift(k, l) } else { GeneratorSet::product_shift(k, l) };
    Ok(probe_generating_set(&g, &Pattern::tensor(k, l, cap), cap).map_err(value_error)?.is_equal())
}

/// Full analysis report for a JSON action spec, returned as JSON text.
#[pyfunction]
#[pyo3(signature = (spec, degree=None, keys=false))]
fn analyze(spec: &str, degree: Option<usize>, keys: bool) -> PyResult<String> {
    let spec = ActionSpec::parse(spec).map_err(value_error)?;
    let action = spec.action().map_err(value_error)?;
    Ok(report::to_json(&report::analyze(&action, spec.degree_or(degree), keys)))
}

#[pymodule]
fn pysemicrossed(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyAction>()?;
    m.add_class::<PyPattern>()?;
    m.add_function(wrap_pyfunction!(py_distinguish, m)?)?;
    m.add_function(wrap_pyfunction!(probe_product_generators, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
