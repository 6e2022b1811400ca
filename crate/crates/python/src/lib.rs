//! Python bindings: graphs, generators, transforms, the solver pipeline and
//! bundle statistics. Imported from Python as `bsssp`.

use ::bsssp::bundles::{
    bundle_stats, choose_k, construct_improved, construct_simple, regime_for, KChoice, KRegime,
};
use ::bsssp::graph::{self as g, Edge, GenModel, GenSpec, WeightLaw};
use ::bsssp::report::{self, RunReport};
use ::bsssp::solver::{self, Algorithm, Construction, SolveConfig};
use ::bsssp::transform::{self, TransformMode};
use ::bsssp::NoMeter;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: ::bsssp::Error) -> PyErr {
    match e {
        ::bsssp::Error::InternalInconsistency { .. }
        | ::bsssp::Error::InvariantViolation(_)
        | ::bsssp::Error::BadBundleStructure(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = String>>(s: &str) -> PyResult<T> {
    s.parse().map_err(PyValueError::new_err)
}

/// Undirected graph with non-negative finite weights.
#[pyclass(name = "Graph", module = "bsssp", frozen)]
struct PyGraph {
    inner: g::Graph,
}

#[pymethods]
impl PyGraph {
    /// `edges` is a list of `(u, v, w)` with 0-based endpoints.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> PyResult<Self> {
        let edges = edges
            .into_iter()
            .map(|(u, v, w)| Edge { u, v, w })
            .collect();
        g::Graph::from_edges(n, edges)
            .map(|inner| PyGraph { inner })
            .map_err(err)
    }

    /// Parses DIMACS shortest-path text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        g::parse_graph(text)
            .map(|inner| PyGraph { inner })
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.edges().iter().map(|e| (e.u, e.v, e.w)).collect()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v < self.inner.n() {
            Ok(self.inner.degree(v))
        } else {
            Err(err(::bsssp::Error::VertexOutOfRange(v)))
        }
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn is_connected(&self) -> bool {
        self.inner.validate().connected
    }

    fn to_dimacs(&self) -> String {
        g::write_graph(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Random graph from one of the built-in models.
#[pyfunction]
#[pyo3(signature = (model, n, m = 0, weights = "uniform", seed = 0, rows = None))]
fn generate(
    model: &str,
    n: usize,
    m: usize,
    weights: &str,
    seed: u64,
    rows: Option<usize>,
) -> PyResult<PyGraph> {
    let spec = GenSpec {
        model: parse::<GenModel>(model)?,
        n,
        m,
        weights: parse::<WeightLaw>(weights)?,
        seed,
        rows,
    };
    g::generate(&spec)
        .map(|inner| PyGraph { inner })
        .map_err(err)
}

/// Result of `transform`: the transformed graph plus the vertex maps.
#[pyclass(name = "TransformedGraph", module = "bsssp", frozen)]
struct PyTransformed {
    inner: transform::TransformedGraph,
}

#[pymethods]
impl PyTransformed {
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph.clone(),
        }
    }

    /// Original vertex of transformed vertex `x`.
    fn origin(&self, x: usize) -> usize {
        self.inner.origin(x)
    }

    /// Transformed vertices standing for original vertex `v`.
    fn reps(&self, v: usize) -> Vec<usize> {
        self.inner.reps(v).collect()
    }

    /// Maps distances on the transformed graph back to original vertices.
    fn lift(&self, dist: Vec<f64>) -> PyResult<Vec<f64>> {
        transform::lift_distances(&self.inner, &dist).map_err(err)
    }
}

/// Applies `none`, `cycle3` or `cap:<d>`.
#[pyfunction]
fn transform_graph(graph: &PyGraph, mode: &str) -> PyResult<PyTransformed> {
    transform::apply(&graph.inner, parse::<TransformMode>(mode)?)
        .map(|inner| PyTransformed { inner })
        .map_err(err)
}

/// Reference Dijkstra distances; `inf` for Unreached.
#[pyfunction]
fn dijkstra(graph: &PyGraph, source: usize) -> PyResult<Vec<f64>> {
    if source >= graph.inner.n() {
        return Err(err(::bsssp::Error::VertexOutOfRange(source)));
    }
    Ok(solver::dijkstra_reference(&graph.inner, source).into_values())
}

/// One solver run: distances plus the run report.
#[pyclass(name = "SolveResult", module = "bsssp", frozen)]
struct PySolveResult {
    #[pyo3(get)]
    distances: Vec<f64>,
    report: RunReport,
    #[pyo3(get)]
    violations: Vec<String>,
}

#[pymethods]
impl PySolveResult {
    #[getter]
    fn checksum(&self) -> &str {
        &self.report.checksum
    }

    #[getter]
    fn extract_mins(&self) -> usize {
        self.report.extract_mins
    }

    /// The run report as a dict.
    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = &self.report;
        let d = PyDict::new(py);
        d.set_item("input", &r.input)?;
        d.set_item("algorithm", &r.algorithm)?;
        d.set_item("construction", &r.construction)?;
        d.set_item("transform", &r.transform)?;
        d.set_item("source", r.source)?;
        d.set_item("k", r.k)?;
        d.set_item("threshold", r.threshold)?;
        d.set_item("seed", r.seed)?;
        d.set_item("n", r.n)?;
        d.set_item("m", r.m)?;
        d.set_item("n_t", r.n_t)?;
        d.set_item("m_t", r.m_t)?;
        d.set_item("size_r", r.size_r)?;
        d.set_item("size_r1", r.size_r1)?;
        d.set_item("size_r2", r.size_r2)?;
        d.set_item("sum_ball", r.sum_ball)?;
        d.set_item("max_ball", r.max_ball)?;
        d.set_item("mean_sv", r.mean_sv)?;
        d.set_item("comparisons", r.comparisons)?;
        d.set_item("additions", r.additions)?;
        d.set_item("extract_mins", r.extract_mins)?;
        d.set_item("reached", r.reached)?;
        d.set_item("wall_ms", r.wall_ms)?;
        d.set_item("checksum", &r.checksum)?;
        Ok(d)
    }
}

/// Full pipeline. `construction` is `simple`, `improved` or a list of
/// vertex ids to use as `R` (it must contain the source).
#[pyfunction]
#[pyo3(signature = (
    graph, source, algorithm = "bundle", construction = None, r = None, transform = "cycle3",
    k = None, seed = 0, metered = false, check = false
))]
#[allow(clippy::too_many_arguments)]
fn solve(
    graph: &PyGraph,
    source: usize,
    algorithm: &str,
    construction: Option<&str>,
    r: Option<Vec<usize>>,
    transform: &str,
    k: Option<u32>,
    seed: u64,
    metered: bool,
    check: bool,
) -> PyResult<PySolveResult> {
    let construction = match (construction, r) {
        (Some(_), Some(_)) => return Err(PyValueError::new_err("pass either construction or r")),
        (_, Some(r)) => Construction::FromR(r),
        (None | Some("improved"), None) => Construction::Improved,
        (Some("simple"), None) => Construction::Simple,
        (Some(other), None) => {
            return Err(PyValueError::new_err(format!(
                "unknown construction {other:?}"
            )))
        }
    };
    let cfg = SolveConfig {
        algorithm: parse::<Algorithm>(algorithm)?,
        construction,
        transform: parse::<TransformMode>(transform)?,
        k,
        seed,
        metered,
        check_invariants: check,
        ..Default::default()
    };
    let out = solver::solve(&graph.inner, source, &cfg).map_err(err)?;
    let report = RunReport::new("python", source, &cfg, &out);
    Ok(PySolveResult {
        violations: out.violations.iter().map(ToString::to_string).collect(),
        distances: out.distances,
        report,
    })
}

/// Bundle-structure statistics on the transformed graph.
#[pyfunction]
#[pyo3(signature = (graph, source = 0, k = None, seed = 0, construction = "improved", transform = "cycle3"))]
fn stats<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    source: usize,
    k: Option<u32>,
    seed: u64,
    construction: &str,
    transform: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = parse::<TransformMode>(transform)?;
    let t = transform::apply(&graph.inner, mode).map_err(err)?;
    if source >= graph.inner.n() {
        return Err(err(::bsssp::Error::VertexOutOfRange(source)));
    }
    let tg = &t.graph;
    let regime = match mode {
        TransformMode::Cycle3 => KRegime::ConstDegree,
        _ => regime_for(tg.n(), tg.m()),
    };
    let choice = match k {
        Some(k) => KChoice::with_k(k, regime),
        None => choose_k(tg.n(), tg.m(), regime),
    };
    let ts = t.representative(source);
    let b = match construction {
        "simple" => construct_simple(tg, ts, choice.k, seed, &NoMeter),
        "improved" => construct_improved(tg, ts, choice, seed, &NoMeter),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown construction {other:?}"
            )))
        }
    }
    .map_err(err)?;
    let st = bundle_stats(&b);
    let d = PyDict::new(py);
    d.set_item("n_t", tg.n())?;
    d.set_item("m_t", tg.m())?;
    d.set_item("k", choice.k)?;
    d.set_item("threshold", choice.threshold)?;
    d.set_item("size_r", st.size_r)?;
    d.set_item("size_r1", st.size_r1)?;
    d.set_item("size_r2", st.size_r2)?;
    d.set_item("sum_ball", st.sum_ball)?;
    d.set_item("max_ball", st.max_ball)?;
    d.set_item("mean_sv", st.mean_sv)?;
    Ok(d)
}

/// 16-hex-digit SHA-256 prefix over the distance bit patterns.
#[pyfunction]
fn checksum(distances: Vec<f64>) -> String {
    report::checksum(&distances)
}

#[pymodule]
#[pyo3(name = "bsssp")]
fn bsssp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyTransformed>()?;
    m.add_class::<PySolveResult>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(transform_graph, m)?)?;
    m.add_function(wrap_pyfunction!(dijkstra, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    m.add_function(wrap_pyfunction!(checksum, m)?)?;
    Ok(())
}
