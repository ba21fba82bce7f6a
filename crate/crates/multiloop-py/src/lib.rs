//! Python bindings for the multiloop toolkit: quadratic forms over Laurent
//! polynomial rings and the Brauer-matrix calculus, with structured results
//! returned as plain Python objects.

use multiloop::azumaya::{
    self, BrauerMatrix as CoreMatrix, IntMatrix, OrbitVerdict, QmodZ, SymbolFactor,
    ToralDescriptor as CoreDescriptor,
};
use multiloop::basefield::{parse_scalar, FieldDescriptor};
use multiloop::laurent::LaurentElement;
use multiloop::quadform::{self, RDiagonalForm};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn to_py_err(e: multiloop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize_to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

/// A diagonal quadratic form over R_n = k[t1^±1, …, tn^±1].
#[pyclass(name = "QuadForm")]
struct PyQuadForm {
    inner: RDiagonalForm,
}

#[pymethods]
impl PyQuadForm {
    /// QuadForm(field, n, entries) with field one of "Q", "R", "Fq:<q>" and
    /// entries in monomial syntax like "5*t1^3*t2^2".
    #[new]
    fn new(field: &str, n: usize, entries: Vec<String>) -> PyResult<Self> {
        let descriptor = FieldDescriptor::parse(field).map_err(to_py_err)?;
        let refs: Vec<&str> = entries.iter().map(|s| s.as_str()).collect();
        Ok(PyQuadForm {
            inner: RDiagonalForm::parse(descriptor, n, &refs).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.descriptor().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn entries(&self) -> Vec<String> {
        self.inner.entries().iter().map(|e| e.to_string()).collect()
    }

    /// The canonical loop normal form, as a dict with keys
    /// field / n / hyperbolic_count / slots.
    fn loop_normal_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let nf = self.inner.loop_normal_form().map_err(to_py_err)?;
        serialize_to_py(py, &nf)
    }

    /// Witt decomposition over F_n: dict with kernel and witt_index.
    fn witt_decompose<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let d = self.inner.witt_decompose_f().map_err(to_py_err)?;
        serialize_to_py(py, &d)
    }

    /// The even/odd parity split at the valuation of t_i (1-based).
    fn springer(&self, i: usize) -> PyResult<(Vec<String>, Vec<String>)> {
        let (even, odd) = self.inner.springer_decompose(i).map_err(to_py_err)?;
        Ok((
            even.entries().iter().map(|e| e.to_string()).collect(),
            odd.entries().iter().map(|e| e.to_string()).collect(),
        ))
    }

    /// First/second residues at t_i plus the unramifiedness flag.
    fn second_residue<'py>(&self, py: Python<'py>, i: usize) -> PyResult<Bound<'py, PyAny>> {
        let (first, second) = self.inner.second_residue(i).map_err(to_py_err)?;
        let unramified = self.inner.is_unramified_at(i).map_err(to_py_err)?;
        let dict = PyDict::new(py);
        dict.set_item("first", first.iter().map(|u| u.to_string()).collect::<Vec<_>>())?;
        dict.set_item("second", second.iter().map(|u| u.to_string()).collect::<Vec<_>>())?;
        dict.set_item("unramified", unramified)?;
        Ok(dict.into_any())
    }

    /// Isometry over R_n.
    fn is_isometric(&self, other: &PyQuadForm) -> PyResult<bool> {
        quadform::is_isometric_r(&self.inner, &other.inner).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "QuadForm({}, n={}, {})",
            self.inner.descriptor(),
            self.inner.n(),
            self.inner
        )
    }
}

/// Counts isometry classes of dimension-d diagonal forms over R_n for base
/// fields with finite anisotropic classification ("R" or "Fq:<q>").
#[pyfunction]
fn count_loop_classes(field: &str, n: usize, dim: usize) -> PyResult<u64> {
    let descriptor = FieldDescriptor::parse(field).map_err(to_py_err)?;
    quadform::count_loop_classes(descriptor, n, dim).map_err(to_py_err)
}

/// A skew-symmetric matrix over ℚ/ℤ encoding a monomial Brauer class.
#[pyclass(name = "BrauerMatrix")]
struct PyBrauerMatrix {
    inner: CoreMatrix,
}

fn parse_int_matrix(rows: Vec<Vec<i64>>) -> PyResult<IntMatrix> {
    IntMatrix::from_rows(rows).map_err(to_py_err)
}

#[pymethods]
impl PyBrauerMatrix {
    /// BrauerMatrix(entries) from an n×n array of "num/den" strings.
    #[new]
    fn new(entries: Vec<Vec<String>>) -> PyResult<Self> {
        let rows: PyResult<Vec<Vec<QmodZ>>> = entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| QmodZ::parse(s).map_err(to_py_err))
                    .collect()
            })
            .collect();
        Ok(PyBrauerMatrix {
            inner: CoreMatrix::from_rows(rows?).map_err(to_py_err)?,
        })
    }

    /// The zero class on n variables.
    #[staticmethod]
    fn zero(n: usize) -> Self {
        PyBrauerMatrix { inner: CoreMatrix::zero(n) }
    }

    /// Σ r_k/s_k at free positions: factors are (s, r, i, j) tuples.
    #[staticmethod]
    fn from_symbols(n: usize, factors: Vec<(u64, u64, usize, usize)>) -> PyResult<Self> {
        let factors: Vec<SymbolFactor> = factors
            .into_iter()
            .map(|(s, r, i, j)| SymbolFactor { s, r, i, j })
            .collect();
        Ok(PyBrauerMatrix {
            inner: CoreMatrix::from_symbols(n, &factors).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn entries(&self) -> Vec<Vec<String>> {
        (1..=self.inner.n())
            .map(|i| {
                (1..=self.inner.n())
                    .map(|j| self.inner.get(i, j).to_string())
                    .collect()
            })
            .collect()
    }

    fn get(&self, i: usize, j: usize) -> String {
        self.inner.get(i, j).to_string()
    }

    /// Brauer-class addition (entrywise sum mod 1).
    fn tensor(&self, other: &PyBrauerMatrix) -> PyResult<PyBrauerMatrix> {
        Ok(PyBrauerMatrix {
            inner: self.inner.tensor(&other.inner).map_err(to_py_err)?,
        })
    }

    /// The congruence action g·B·gᵀ for unimodular integer g.
    fn act(&self, g: Vec<Vec<i64>>) -> PyResult<PyBrauerMatrix> {
        let g = parse_int_matrix(g)?;
        Ok(PyBrauerMatrix {
            inner: azumaya::unimodular_act(&g, &self.inner).map_err(to_py_err)?,
        })
    }

    /// Alternating normal form: dict with blocks, rank_zero, witness.
    fn normal_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let (nf, witness) = azumaya::skew_normal_form(&self.inner);
        let dict = PyDict::new(py);
        dict.set_item(
            "blocks",
            nf.blocks.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        )?;
        dict.set_item("rank_zero", nf.rank_zero)?;
        dict.set_item("witness", witness.rows())?;
        Ok(dict.into_any())
    }

    /// (index, s0) for a degree-d class; division iff s0 = 1.
    fn index_and_split(&self, d: u64) -> PyResult<(u64, u64)> {
        azumaya::index_and_split(&self.inner, d).map_err(to_py_err)
    }

    /// Least N with N·B = 0 (the exponent of the class).
    fn additive_order(&self) -> u64 {
        self.inner.additive_order()
    }

    /// Row i without its diagonal entry; all zero iff unramified at t_i.
    fn ramification_row(&self, i: usize) -> PyResult<Vec<String>> {
        Ok(self
            .inner
            .ramification_row(i)
            .map_err(to_py_err)?
            .iter()
            .map(|q| q.to_string())
            .collect())
    }

    fn __eq__(&self, other: &PyBrauerMatrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("BrauerMatrix({})", self.inner)
    }
}

/// A toral descriptor (m, s0, [(s_k, r_k)]) of degree d on n variables.
#[pyclass(name = "ToralDescriptor")]
struct PyToralDescriptor {
    inner: CoreDescriptor,
}

#[pymethods]
impl PyToralDescriptor {
    /// ToralDescriptor(d, n, s0, factors) with factors [(s, r, i, j)] on the
    /// consecutive pairs (1,2), (3,4), …
    #[new]
    fn new(d: u64, n: usize, s0: u64, factors: Vec<(u64, u64, usize, usize)>) -> PyResult<Self> {
        let inner = CoreDescriptor {
            n,
            d,
            s0,
            factors: factors
                .into_iter()
                .map(|(s, r, i, j)| SymbolFactor { s, r, i, j })
                .collect(),
        };
        inner.validate().map_err(to_py_err)?;
        Ok(PyToralDescriptor { inner })
    }

    #[getter]
    fn d(&self) -> u64 {
        self.inner.d
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn s0(&self) -> u64 {
        self.inner.s0
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn factors(&self) -> Vec<(u64, u64, usize, usize)> {
        self.inner
            .factors
            .iter()
            .map(|f| (f.s, f.r, f.i, f.j))
            .collect()
    }

    fn brauer_matrix(&self) -> PyResult<PyBrauerMatrix> {
        Ok(PyBrauerMatrix {
            inner: self.inner.brauer_matrix().map_err(to_py_err)?,
        })
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialize_to_py(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "ToralDescriptor(d={}, n={}, s0={}, factors={:?})",
            self.inner.d,
            self.inner.n,
            self.inner.s0,
            self.factors()
        )
    }
}

/// All toral descriptors of degree d on n variables, m ascending then
/// lexicographic.
#[pyfunction]
fn enumerate_toral(d: u64, n: usize) -> Vec<PyToralDescriptor> {
    azumaya::enumerate_toral(d, n)
        .into_iter()
        .map(|inner| PyToralDescriptor { inner })
        .collect()
}

/// The leading unit of a finite-support Laurent series element, given as
/// [(exponent_vector, scalar)] terms; the series order compares exponent
/// vectors by (e_n, …, e_1) lexicographically.
#[pyfunction]
fn leading_unit(field: &str, n: usize, terms: Vec<(Vec<i64>, String)>) -> PyResult<String> {
    let descriptor = FieldDescriptor::parse(field).map_err(to_py_err)?;
    let parsed: PyResult<Vec<(Vec<i64>, _)>> = terms
        .into_iter()
        .map(|(exp, scalar)| {
            parse_scalar(descriptor, &scalar)
                .map(|s| (exp, s))
                .map_err(to_py_err)
        })
        .collect();
    let element = LaurentElement::from_terms(descriptor, n, parsed?).map_err(to_py_err)?;
    Ok(element.leading_unit().map_err(to_py_err)?.to_string())
}

/// GL_n(ℤ)-orbit comparison; returns a dict with "verdict" and, for
/// equivalent pairs, a verified "witness" (or the separating "invariant").
#[pyfunction]
#[pyo3(signature = (a, b, budget = 100_000))]
fn orbit_equivalent<'py>(
    py: Python<'py>,
    a: &PyBrauerMatrix,
    b: &PyBrauerMatrix,
    budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let verdict = azumaya::orbit_equivalent(&a.inner, &b.inner, budget).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    match verdict {
        OrbitVerdict::Equivalent(w) => {
            dict.set_item("verdict", "equivalent")?;
            dict.set_item("witness", w.rows())?;
        }
        OrbitVerdict::Distinct(invariant) => {
            dict.set_item("verdict", "distinct")?;
            dict.set_item("invariant", invariant)?;
        }
        OrbitVerdict::Unknown => {
            dict.set_item("verdict", "unknown")?;
        }
    }
    Ok(dict.into_any())
}

#[pymodule]
fn multiloop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuadForm>()?;
    m.add_class::<PyBrauerMatrix>()?;
    m.add_class::<PyToralDescriptor>()?;
    m.add_function(wrap_pyfunction!(count_loop_classes, m)?)?;
    m.add_function(wrap_pyfunction!(leading_unit, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_toral, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_equivalent, m)?)?;
    Ok(())
}
