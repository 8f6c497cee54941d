//! Python bindings. Elements and monoid vectors cross the boundary in their
//! text syntax; reports cross as the same JSON the CLI prints.

use leavitt_core::classify as classifier;
use leavitt_core::corpus;
use leavitt_core::graph::{self, DEFAULT_LATTICE_CAP};
use leavitt_core::kernel::{Element, ElementMatrix, Leavitt, PiOutcome, SearchBudget, Witness};
use leavitt_core::monoid::{self, Bounds, MonoidVector};
use leavitt_core::selfcheck::{self as checks, SelfcheckConfig};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(frozen, module = "leavitt")]
struct Graph {
    inner: graph::Graph,
}

#[pymethods]
impl Graph {
    /// `Graph(["v", "w"], [("e", "v", "w")])`
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> PyResult<Self> {
        let inner = graph::Graph::new(vertices, edges).map_err(value_error)?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Graph { inner: graph::Graph::from_json(text).map_err(value_error)? })
    }

    /// One of the bundled corpus graphs.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        corpus::bundled_graph(name)
            .map(|inner| Graph { inner })
            .ok_or_else(|| value_error(format!("no bundled graph named `{name}`")))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        let g = &self.inner;
        g.vertices().map(|v| g.vertex_id(v).to_string()).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        let g = &self.inner;
        g.edges()
            .map(|e| {
                (
                    g.edge_id(e).to_string(),
                    g.vertex_id(g.source(e)).to_string(),
                    g.vertex_id(g.range(e)).to_string(),
                )
            })
            .collect()
    }

    fn condition_k(&self) -> bool {
        self.inner.condition_k()
    }

    fn condition_l(&self) -> bool {
        self.inner.condition_l()
    }

    #[pyo3(signature = (lattice_cap = DEFAULT_LATTICE_CAP))]
    fn hereditary_saturated(&self, lattice_cap: usize) -> PyResult<Vec<Vec<String>>> {
        let sets = self.inner.all_hereditary_saturated(lattice_cap).map_err(value_error)?;
        Ok(sets.iter().map(|s| self.inner.set_ids(s)).collect())
    }

    #[pyo3(signature = (lattice_cap = DEFAULT_LATTICE_CAP))]
    fn maximal_tails(&self, lattice_cap: usize) -> PyResult<Vec<Vec<String>>> {
        let sets = self.inner.maximal_tails(lattice_cap).map_err(value_error)?;
        Ok(sets.iter().map(|s| self.inner.set_ids(s)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// The classification report as a dict.
#[pyfunction]
#[pyo3(signature = (graph, name = "graph", lattice_cap = DEFAULT_LATTICE_CAP))]
fn classify<'py>(py: Python<'py>, graph: &Graph, name: &str, lattice_cap: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = classifier::classify(&graph.inner, name, lattice_cap).map_err(value_error)?;
    to_python(py, &report)
}

#[pyfunction]
#[pyo3(signature = (graph, seed = 0, trials = 100))]
fn selfcheck<'py>(py: Python<'py>, graph: &Graph, seed: u64, trials: usize) -> PyResult<Bound<'py, PyAny>> {
    let cfg = SelfcheckConfig { seed, trials, ..SelfcheckConfig::default() };
    to_python(py, &checks::run(&graph.inner, "graph", &cfg))
}

/// `L(E)` over the rationals. Elements are strings such as `"3/2*e1.e2;g(e3)"`.
#[pyclass(frozen, module = "leavitt")]
struct Algebra {
    inner: Leavitt,
}

impl Algebra {
    fn element(&self, text: &str) -> PyResult<Element> {
        self.inner.parse(text).map_err(value_error)
    }

    fn rows(&self, m: &ElementMatrix) -> Vec<Vec<String>> {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| self.inner.format(x)).collect())
            .collect()
    }

    /// Re-verifies `x = α y β` before handing the witness out.
    fn witness<'py>(
        &self,
        py: Python<'py>,
        x: &ElementMatrix,
        y: &ElementMatrix,
        w: &Witness,
    ) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        if !self.inner.verify_precsim(x, y, w).map_err(value_error)? {
            return Err(PyRuntimeError::new_err("witness failed verification"));
        }
        let d = pyo3::types::PyDict::new(py);
        d.set_item("alpha", self.rows(&w.alpha))?;
        d.set_item("beta", self.rows(&w.beta))?;
        d.set_item("verified", true)?;
        Ok(d)
    }
}

#[pymethods]
impl Algebra {
    #[new]
    fn new(graph: &Graph) -> Self {
        Algebra { inner: Leavitt::new(graph.inner.clone()) }
    }

    /// The normal form of an element literal.
    fn normalize(&self, x: &str) -> PyResult<String> {
        Ok(self.inner.format(&self.element(x)?))
    }

    fn add(&self, x: &str, y: &str) -> PyResult<String> {
        let s = self.inner.add(&self.element(x)?, &self.element(y)?).map_err(value_error)?;
        Ok(self.inner.format(&s))
    }

    fn sub(&self, x: &str, y: &str) -> PyResult<String> {
        let s = self.inner.sub(&self.element(x)?, &self.element(y)?).map_err(value_error)?;
        Ok(self.inner.format(&s))
    }

    fn mul(&self, x: &str, y: &str) -> PyResult<String> {
        let p = self.inner.mul(&self.element(x)?, &self.element(y)?).map_err(value_error)?;
        Ok(self.inner.format(&p))
    }

    fn star(&self, x: &str) -> PyResult<String> {
        Ok(self.inner.format(&self.inner.star(&self.element(x)?)))
    }

    fn equal(&self, x: &str, y: &str) -> PyResult<bool> {
        Ok(self.element(x)? == self.element(y)?)
    }

    /// Witness for `v ⊕ v ≾ v` from two closed simple paths at `v`.
    fn vertex_pi<'py>(&self, py: Python<'py>, v: &str) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        let vertex = self.inner.graph().vertex(v).map_err(value_error)?;
        let w = self.inner.vertex_properly_infinite_witness(vertex).map_err(value_error)?;
        let x = self.inner.vertex(vertex);
        self.witness(py, &self.inner.diag(&[x.clone(), x.clone()]), &self.inner.scalar_matrix(&x), &w)
    }

    /// Witness for `v ≾ x`; the dict also names `vertex`.
    fn reduce<'py>(&self, py: Python<'py>, x: &str) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        let x = self.element(x)?;
        let (w, v) = self.inner.reduce_to_vertex(&x).map_err(value_error)?;
        let d = self.witness(py, &self.inner.scalar_matrix(&self.inner.vertex(v)), &self.inner.scalar_matrix(&x), &w)?;
        d.set_item("vertex", self.inner.graph().vertex_id(v))?;
        Ok(d)
    }

    /// Witness for `a ⊕ a ≾ a`, or `None` when the bounded search gives up.
    #[pyo3(signature = (a, max_products = SearchBudget::default().max_products))]
    fn properly_infinite<'py>(
        &self,
        py: Python<'py>,
        a: &str,
        max_products: usize,
    ) -> PyResult<Option<Bound<'py, pyo3::types::PyDict>>> {
        let a = self.element(a)?;
        let budget = SearchBudget { max_products, ..SearchBudget::default() };
        match self.inner.bounded_properly_infinite_search(&a, budget).map_err(value_error)? {
            PiOutcome::Found { witness, route } => {
                let x = self.inner.diag(&[a.clone(), a.clone()]);
                let d = self.witness(py, &x, &self.inner.scalar_matrix(&a), &witness)?;
                d.set_item("route", route.name())?;
                Ok(Some(d))
            }
            PiOutcome::Unknown { .. } => Ok(None),
        }
    }
}

/// The graph monoid. Vectors are strings such as `"2*v + w"`.
#[pyclass(frozen, module = "leavitt")]
struct GraphMonoid {
    graph: graph::Graph,
    inner: monoid::Monoid,
    bounds: Bounds,
}

impl GraphMonoid {
    fn vector(&self, text: &str) -> PyResult<MonoidVector> {
        self.inner.parse(text).map_err(value_error)
    }

    fn chain(&self, steps: &[MonoidVector]) -> Vec<String> {
        steps.iter().map(|s| self.inner.format(s)).collect()
    }
}

#[pymethods]
impl GraphMonoid {
    #[new]
    #[pyo3(signature = (graph, depth = Bounds::default().depth, states = Bounds::default().states))]
    fn new(graph: &Graph, depth: usize, states: usize) -> Self {
        GraphMonoid {
            graph: graph.inner.clone(),
            inner: monoid::Monoid::new(&graph.inner),
            bounds: Bounds { depth, states, component_cap: None },
        }
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.ids().to_vec()
    }

    /// A verified chain from `x` to `y`, or `None` if the bound was reached.
    fn equal(&self, x: &str, y: &str) -> PyResult<Option<Vec<String>>> {
        let (x, y) = (self.vector(x)?, self.vector(y)?);
        let v = self.inner.equal(&x, &y, &self.bounds).map_err(value_error)?;
        Ok(v.witness
            .filter(|c| self.inner.verify_chain(c, &x, &y))
            .map(|c| self.chain(&c.steps)))
    }

    /// `(z, chain)` with `x + z = y`, or `None`.
    fn leq(&self, x: &str, y: &str) -> PyResult<Option<(String, Vec<String>)>> {
        let (x, y) = (self.vector(x)?, self.vector(y)?);
        let v = self.inner.leq(&x, &y, &self.bounds).map_err(value_error)?;
        Ok(v.witness
            .filter(|w| self.inner.verify_leq(w, &x, &y))
            .map(|w| (self.inner.format(&w.z), self.chain(&w.chain.steps))))
    }

    /// `(x, y)` with `u = 2x + 3y`; raises `ValueError` when the hypothesis fails.
    fn decompose_2x_3y(&self, u: &str) -> PyResult<Option<(String, String)>> {
        let u = self.vector(u)?;
        let v = self.inner.decompose_2x_3y(&self.graph, &u, &self.bounds).map_err(value_error)?;
        Ok(v.witness
            .filter(|r| self.inner.verify_2x_3y(r, &u))
            .map(|r| (self.inner.format(&r.x), self.inner.format(&r.y))))
    }

    /// Parts `x_0, …, x_n`, or `None`.
    fn fred(&self, n: u64, x: &str, y: &str, z: &str) -> PyResult<Option<Vec<String>>> {
        let (x, y, z) = (self.vector(x)?, self.vector(y)?, self.vector(z)?);
        let v = self.inner.fred_decompose(n, &x, &y, &z, &self.bounds).map_err(value_error)?;
        Ok(v.witness
            .filter(|f| self.inner.verify_fred(f, n, &x, &y, &z))
            .map(|f| self.chain(&f.parts)))
    }
}

#[pymodule]
fn leavitt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Algebra>()?;
    m.add_class::<GraphMonoid>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(selfcheck, m)?)?;
    Ok(())
}
