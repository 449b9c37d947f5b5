//! Python bindings: groups, graded rings, submonoids, potions, and the
//! declarative command runner.

use std::sync::Arc;

use gradedproj_cli::commands::RunOptions;
use gradedproj_cli::{exit_code, Command};
use gradedproj_core::abelian::{smith_normal_form as snf, FgAbelianGroup, GroupElement, IntegerMatrix};
use gradedproj_core::atlas::{build_atlas, RelevantFamily};
use gradedproj_core::graded::GradedRing;
use gradedproj_core::magic::{localization_equiv_potion, round_trip_check, PotionGen};
use gradedproj_core::module::twist_generator;
use gradedproj_core::potion::{PotionElement, PotionRing};
use gradedproj_core::submonoid::HomogeneousSubmonoid;
use gradedproj_core::verdict::CheckConfig;
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(seed: u64, samples: usize, degree_bound: u32) -> CheckConfig {
    CheckConfig {
        seed,
        samples,
        degree_bound,
    }
}

fn rows(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// `(U, D, V)` with `U·A·V = D` in Smith normal form.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn smith_normal_form(matrix: Vec<Vec<BigInt>>) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let cols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    let s = snf(&IntegerMatrix::from_rows(cols, &matrix));
    Ok((rows(&s.left), rows(&s.diagonal), rows(&s.right)))
}

/// `ℤ^rank ⊕ ⨁ ℤ/dᵢ` with `d₁ | d₂ | …`.
#[pyclass(frozen, skip_from_py_object, name = "Group")]
#[derive(Clone)]
struct PyGroup(FgAbelianGroup);

impl PyGroup {
    fn element(&self, coords: &[i64]) -> PyResult<GroupElement> {
        self.0.element_i64(coords).map_err(err)
    }
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (rank, invariants = Vec::new()))]
    fn new(rank: usize, invariants: Vec<BigInt>) -> PyResult<Self> {
        FgAbelianGroup::new(rank, invariants).map(Self).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn invariants(&self) -> Vec<BigInt> {
        self.0.invariants().to_vec()
    }

    /// `(free_rank, invariants)` of the quotient by the subgroup generated by `elements`.
    fn quotient_invariants(&self, elements: Vec<Vec<i64>>) -> PyResult<(usize, Vec<BigInt>)> {
        let gens = elements.iter().map(|e| self.element(e)).collect::<PyResult<Vec<_>>>()?;
        let h = gradedproj_core::abelian::SubgroupPresentation::new(self.0.clone(), gens).map_err(err)?;
        let q = self.0.quotient_invariants(&h);
        Ok((q.free_rank, q.invariants))
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.0)
    }
}

#[pyclass(frozen, skip_from_py_object, name = "GradedRing")]
#[derive(Clone)]
struct PyGradedRing(Arc<GradedRing>);

#[pymethods]
impl PyGradedRing {
    /// `variables` is a list of `(name, degree)` pairs; `ideal` lists homogeneous generators.
    #[new]
    #[pyo3(signature = (group, variables, ideal = Vec::new()))]
    fn new(group: &PyGroup, variables: Vec<(String, Vec<i64>)>, ideal: Vec<String>) -> PyResult<Self> {
        let vars = variables
            .iter()
            .map(|(n, d)| Ok((n.clone(), group.element(d)?)))
            .collect::<PyResult<Vec<_>>>()?;
        let ring = GradedRing::polynomial_ring(group.0.clone(), vars).map_err(err)?;
        let gens = ideal.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(Self(Arc::new(ring.quotient(gens).map_err(err)?)))
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    /// Normal form of `text` modulo the ring's ideal.
    fn normalize(&self, text: &str) -> PyResult<String> {
        let p = self.0.parse(text).map_err(err)?;
        Ok(self.0.display(&self.0.reduce(&p)))
    }

    /// Degree of a homogeneous element as coordinates, or `None` for zero.
    fn degree(&self, text: &str) -> PyResult<Option<String>> {
        let p = self.0.parse(text).map_err(err)?;
        if self.0.is_zero(&p) {
            return Ok(None);
        }
        self.0.homogeneous(&p).map(|h| Some(h.degree().to_string())).map_err(err)
    }

    fn submonoid(&self, generators: Vec<String>) -> PyResult<PySubmonoid> {
        let gens = generators.iter().map(|g| self.0.parse(g)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        HomogeneousSubmonoid::new(self.0.clone(), gens).map(PySubmonoid).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("GradedRing({})", self.0.names().join(", "))
    }
}

#[pyclass(frozen, from_py_object, name = "Submonoid")]
#[derive(Clone)]
struct PySubmonoid(HomogeneousSubmonoid);

#[pymethods]
impl PySubmonoid {
    fn is_relevant(&self) -> bool {
        self.0.is_relevant()
    }

    fn is_maximally_relevant(&self) -> bool {
        self.0.is_maximally_relevant()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.0.warnings().to_vec()
    }

    fn potion(&self) -> PyPotionRing {
        PyPotionRing(PotionRing::new(self.0.clone()))
    }

    fn __repr__(&self) -> String {
        self.0.describe()
    }
}

/// Degree-zero part of the localization at a submonoid.
#[pyclass(frozen, skip_from_py_object, name = "PotionRing")]
#[derive(Clone)]
struct PyPotionRing(Arc<PotionRing>);

#[pymethods]
impl PyPotionRing {
    /// `num / s` where `s` is the product of generators with the given exponents.
    fn fraction(&self, num: &str, witness: Vec<u32>) -> PyResult<PyPotionElement> {
        let p = self.0.ring().parse(num).map_err(err)?;
        self.0.fraction(p, witness).map(PyPotionElement).map_err(err)
    }

    fn one(&self) -> PyPotionElement {
        PyPotionElement(self.0.one())
    }

    fn zero(&self) -> PyPotionElement {
        PyPotionElement(self.0.zero())
    }

    /// The unit of degree `alpha` and its inverse, as text; requires maximal relevance.
    #[pyo3(signature = (alpha, seed = 0, samples = 20))]
    fn twist(&self, alpha: Vec<i64>, seed: u64, samples: usize) -> PyResult<(String, String, bool)> {
        let a = self.0.ring().group().element_i64(&alpha).map_err(err)?;
        let u = twist_generator(&self.0, &a, &config(seed, samples, 12)).map_err(err)?;
        Ok((u.unit.to_text(&self.0), u.inverse.to_text(&self.0), u.inverse_verified))
    }

    fn __repr__(&self) -> String {
        format!("PotionRing({})", self.0.submonoid().describe())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "PotionElement")]
#[derive(Clone)]
struct PyPotionElement(PotionElement);

#[pymethods]
impl PyPotionElement {
    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_add(&other.0).map(Self).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(Self).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(Self).map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self(self.0.neg())
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        Self(self.0.pow(k))
    }

    /// Equality in the potion ring, decided exactly.
    fn __eq__(&self, other: &Self) -> PyResult<bool> {
        self.0.try_eq(&other.0).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __repr__(&self) -> String {
        self.0.to_text()
    }
}

/// Inverts `T` inside the chart of `S`; returns the exponents found, the
/// inverted elements and the round-trip failure counts.
#[pyfunction]
#[pyo3(signature = (s, t, seed = 0, samples = 20))]
fn localization_round_trip<'py>(
    py: Python<'py>,
    s: &PySubmonoid,
    t: &PySubmonoid,
    seed: u64,
    samples: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let gen = PotionGen::find(&s.0, &t.0).map_err(err)?;
    let exponents: Vec<u32> = gen.entries().iter().map(|e| e.n).collect();
    let eq = localization_equiv_potion(&PotionRing::new(s.0.clone()), gen).map_err(err)?;
    let rep = round_trip_check(&eq, &config(seed, samples, 12)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("exponents", exponents)?;
    out.set_item("inverses", eq.inverses().iter().map(|e| e.to_text()).collect::<Vec<_>>())?;
    out.set_item("samples", rep.samples)?;
    out.set_item("backward_forward_failures", rep.backward_forward_failures)?;
    out.set_item("forward_backward_failures", rep.forward_backward_failures)?;
    out.set_item("verdict", rep.verdict.as_str())?;
    Ok(out)
}

/// Chart count, overlap classes, transition texts per ordered pair, and the overall verdict.
#[pyfunction]
#[pyo3(signature = (ring, members, seed = 0, samples = 20))]
fn atlas<'py>(
    py: Python<'py>,
    ring: &PyGradedRing,
    members: Vec<(String, PySubmonoid)>,
    seed: u64,
    samples: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let members = members.into_iter().map(|(n, s)| (n, s.0)).collect();
    let family = RelevantFamily::new(ring.0.clone(), members).map_err(err)?;
    let a = build_atlas(&family, &config(seed, samples, 12)).map_err(err)?;
    let names = family.names();
    let out = PyDict::new(py);
    out.set_item("charts", a.charts.len())?;
    out.set_item("overlap_classes", a.overlap_classes())?;
    let transitions = PyDict::new(py);
    for o in &a.overlaps {
        transitions.set_item((names[o.source].clone(), names[o.other].clone()), o.transition.clone())?;
    }
    out.set_item("transitions", transitions)?;
    out.set_item("cocycles", a.cocycles.len())?;
    out.set_item("verdict", a.verdict().as_str())?;
    Ok(out)
}

/// Runs a command on a JSON document; returns `(exit_code, report_json)`.
#[pyfunction]
#[pyo3(signature = (command, document, seed = None, samples = None, degree_bound = None))]
fn run(
    command: &str,
    document: &str,
    seed: Option<u64>,
    samples: Option<usize>,
    degree_bound: Option<u32>,
) -> PyResult<(i32, String)> {
    let command = <Command as clap::ValueEnum>::from_str(command, false).map_err(PyValueError::new_err)?;
    let opts = RunOptions {
        seed,
        samples,
        degree_bound,
        timings: false,
    };
    let outcome = gradedproj_cli::run(command, document, opts).map_err(err)?;
    Ok((exit_code(outcome.verdict), outcome.report.to_json()))
}

#[pymodule]
fn gradedproj(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyGradedRing>()?;
    m.add_class::<PySubmonoid>()?;
    m.add_class::<PyPotionRing>()?;
    m.add_class::<PyPotionElement>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(localization_round_trip, m)?)?;
    m.add_function(wrap_pyfunction!(atlas, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
