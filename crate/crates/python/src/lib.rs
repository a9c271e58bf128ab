//! Python bindings for the `alpharep` crate.

use std::sync::Arc;

use num_rational::Ratio;
use pyo3::create_exception;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use alpharep_core::alphasum::{self, Main3Method, SearchMode, DEFAULT_BUDGET};
use alpharep_core::io::InputDoc;
use alpharep_core::matroid::{chi_whitney, flow_count};
use alpharep_core::shard::default_workers;
use alpharep_core::{CubicPlanarGraph, EnumOptions, Error, FieldCtx, FqMatrix, RepresentedMatroid, TermTally};

create_exception!(alpharep, InapplicableError, PyValueError, "The formula does not apply to this input, or the enumeration exceeds its budget.");

fn to_py(e: Error) -> PyErr {
    match e {
        e if e.is_inapplicable() => InapplicableError::new_err(e.to_string()),
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Ratio<i128>) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((*r.numer(), *r.denom()))
}

fn options(workers: Option<usize>, budget: Option<u64>) -> EnumOptions {
    EnumOptions {
        workers: workers.unwrap_or_else(default_workers).max(1),
        budget: budget.unwrap_or(DEFAULT_BUDGET),
    }
}

/// A finite field F_q with q = p^d, p an odd prime.
#[pyclass(frozen, name = "Field", module = "alpharep")]
struct PyField(Arc<FieldCtx>);

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, d = 1))]
    fn new(p: u32, d: u32) -> PyResult<Self> {
        Ok(PyField(Arc::new(FieldCtx::new(p, d).map_err(to_py)?)))
    }

    /// Parse `"p"` or `"p^d"`.
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        Ok(PyField(Arc::new(FieldCtx::parse(spec).map_err(to_py)?)))
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn d(&self) -> u32 {
        self.0.d()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.0.spec_string())
    }
}

/// Result of a character sum: exact value and the histogram of terms.
#[pyclass(frozen, name = "AlphaSum", module = "alpharep")]
struct PyAlphaSum {
    value: Ratio<i128>,
    character_sum: Option<Ratio<i128>>,
    tally: TermTally,
}

#[pymethods]
impl PyAlphaSum {
    #[getter]
    fn value<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.value)
    }

    /// For Tait sums, the signed sum before the final factor of 3.
    #[getter]
    fn character_sum<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.character_sum.as_ref().map(|s| fraction(py, s)).transpose()
    }

    /// `{(r, sign): count}` over even ranks.
    #[getter]
    fn tally<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (&(r, s), &c) in &self.tally.counts {
            d.set_item((r, s), c)?;
        }
        Ok(d)
    }

    #[getter]
    fn skipped_odd(&self) -> u64 {
        self.tally.skipped_odd
    }

    #[getter]
    fn terms(&self) -> u64 {
        self.tally.total()
    }

    fn __repr__(&self) -> String {
        format!("AlphaSum(value={}, terms={})", self.value, self.tally.total())
    }
}

impl From<alphasum::AlphaSum> for PyAlphaSum {
    fn from(s: alphasum::AlphaSum) -> Self {
        PyAlphaSum { value: s.value, character_sum: None, tally: s.tally }
    }
}

/// A matroid given by a representation matrix over a finite field.
#[pyclass(frozen, name = "Matroid", module = "alpharep")]
struct PyMatroid(RepresentedMatroid);

#[pymethods]
impl PyMatroid {
    /// Rows of integers, or of coefficient lists for extension fields.
    #[staticmethod]
    #[pyo3(signature = (field, rows, labels = None))]
    fn from_rows(field: &PyField, rows: Vec<Vec<Bound<'_, PyAny>>>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let f = &field.0;
        let width = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * width);
        for row in &rows {
            if row.len() != width {
                return Err(PyValueError::new_err("matrix rows have different lengths"));
            }
            for e in row {
                let v = match e.extract::<i64>() {
                    Ok(n) => f.from_int(n),
                    Err(_) => f.from_coeffs(&e.extract::<Vec<i64>>()?).map_err(to_py)?,
                };
                data.push(v);
            }
        }
        let raw = FqMatrix::from_vec(f.clone(), rows.len(), width, data).map_err(to_py)?;
        let m = match labels {
            Some(l) => RepresentedMatroid::from_matrix(raw, l),
            None => RepresentedMatroid::from_matrix_unlabeled(raw),
        };
        Ok(PyMatroid(m.map_err(to_py)?))
    }

    /// Cycle matroid of a graph on vertices `1..=n`.
    #[staticmethod]
    fn from_graph(field: &PyField, n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyMatroid(RepresentedMatroid::from_graph(field.0.clone(), n, &edges).map_err(to_py)?))
    }

    /// Read a JSON document in the CLI input format. `field` overrides the
    /// document's field.
    #[staticmethod]
    #[pyo3(signature = (text, field = None))]
    fn from_json(text: &str, field: Option<&PyField>) -> PyResult<Self> {
        let doc = InputDoc::parse(text).map_err(to_py)?;
        let f = match field {
            Some(f) => f.0.clone(),
            None => Arc::new(
                doc.field()
                    .map_err(to_py)?
                    .ok_or_else(|| PyValueError::new_err("document has no field"))?,
            ),
        };
        Ok(PyMatroid(doc.matroid(f).map_err(to_py)?))
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField(self.0.field().clone())
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn bases(&self) -> Vec<Vec<usize>> {
        self.0.bases()
    }

    fn dual(&self) -> PyMatroid {
        PyMatroid(self.0.dual())
    }

    fn base_dets_are_units(&self) -> bool {
        self.0.base_dets_are_units()
    }

    /// Characteristic polynomial at `x` (default: the field size).
    #[pyo3(signature = (x = None))]
    fn chi_whitney(&self, x: Option<i64>) -> PyResult<i128> {
        chi_whitney(&self.0, x.unwrap_or(self.0.field().q() as i64)).map_err(to_py)
    }

    #[pyo3(signature = (budget = None))]
    fn flow_count(&self, budget: Option<u64>) -> PyResult<u64> {
        flow_count(&self.0, budget.unwrap_or(DEFAULT_BUDGET)).map_err(to_py)
    }

    /// Characteristic polynomial at q as a sum over nonzero weight vectors.
    /// `mode` is "full", "restricted" (first base) or "all-maximizers".
    #[pyo3(signature = (mode = "full", workers = None, budget = None))]
    fn chi_alpha(&self, py: Python<'_>, mode: &str, workers: Option<usize>, budget: Option<u64>) -> PyResult<PyAlphaSum> {
        let mode = match mode {
            "full" => SearchMode::Full,
            "restricted" => SearchMode::Restricted(self.0.bases().swap_remove(0)),
            "all-maximizers" => SearchMode::AllMaximizers,
            other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
        };
        let opts = options(workers, budget);
        let m = &self.0;
        let s = py.detach(|| alphasum::eval_main1(m, m.field(), &mode, &opts)).map_err(to_py)?;
        Ok(s.into())
    }

    /// Nowhere-zero flow count as a character sum. `method` is "laplacian",
    /// "cross-check" or "contraction".
    #[pyo3(signature = (method = "laplacian", workers = None, budget = None))]
    fn flows_alpha(&self, py: Python<'_>, method: &str, workers: Option<usize>, budget: Option<u64>) -> PyResult<PyAlphaSum> {
        let opts = options(workers, budget);
        let m = &self.0;
        let s = match method {
            "laplacian" => py.detach(|| alphasum::eval_main3(m, Main3Method::Laplacian, &opts)),
            "cross-check" => py.detach(|| alphasum::eval_main3(m, Main3Method::CrossCheck, &opts)),
            "contraction" => py.detach(|| alphasum::eval_main2(m, m.field(), &SearchMode::Full, &opts)),
            other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
        };
        Ok(s.map_err(to_py)?.into())
    }

    fn __repr__(&self) -> String {
        format!("Matroid(n={}, rank={}, field={})", self.0.len(), self.0.rank(), self.0.field().spec_string())
    }
}

/// A 2-connected cubic graph with a planar embedding.
#[pyclass(frozen, name = "TaitGraph", module = "alpharep")]
struct PyTaitGraph(CubicPlanarGraph);

#[pymethods]
impl PyTaitGraph {
    /// `rotation[v]` lists the 0-based edge indices at vertex v+1 in cyclic order.
    #[staticmethod]
    fn from_rotation(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyTaitGraph(CubicPlanarGraph::from_rotation(n, &edges, &rotation).map_err(to_py)?))
    }

    /// Faces as cycles of 1-based vertices.
    #[staticmethod]
    fn from_faces(n: usize, edges: Vec<(usize, usize)>, faces: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyTaitGraph(CubicPlanarGraph::from_faces(n, &edges, &faces).map_err(to_py)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = InputDoc::parse(text).map_err(to_py)?;
        Ok(PyTaitGraph(doc.cubic_graph().map_err(to_py)?))
    }

    #[getter]
    fn faces(&self) -> Vec<Vec<usize>> {
        self.0.faces()
    }

    fn count_direct(&self) -> u64 {
        self.0.tait_count_direct()
    }

    #[pyo3(signature = (budget = None))]
    fn count_heawood(&self, budget: Option<u64>) -> PyResult<u64> {
        self.0.heawood_count(budget.unwrap_or(DEFAULT_BUDGET)).map_err(to_py)
    }

    /// Tait colorings as a sum over spin vectors.
    #[pyo3(signature = (workers = None, budget = None))]
    fn count_alpha(&self, py: Python<'_>, workers: Option<usize>, budget: Option<u64>) -> PyResult<PyAlphaSum> {
        let opts = options(workers, budget);
        let g = &self.0;
        let s = py.detach(|| g.eval_tait_alpha(&opts)).map_err(to_py)?;
        Ok(PyAlphaSum { value: s.chi, character_sum: Some(s.sum), tally: s.tally })
    }

    fn __repr__(&self) -> String {
        format!("TaitGraph(vertices={}, faces={})", self.0.vertex_count(), self.0.face_count())
    }
}

#[pymodule]
fn alpharep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyMatroid>()?;
    m.add_class::<PyTaitGraph>()?;
    m.add_class::<PyAlphaSum>()?;
    m.add("InapplicableError", m.py().get_type::<InapplicableError>())?;
    Ok(())
}
