//! Python bindings. Partitions can be passed as `Partition` objects, strings
//! like `"4,3,1"`, or sequences of ints.

use std::path::PathBuf;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde_json::{json, Value};

use spinmod::crystal;
use spinmod::gf2::{self, io};
use spinmod::modrep;
use spinmod::partition::{self as part, enumerate, FamilyKind, PartitionFamily};
use spinmod::spin_chars;
use spinmod::verify::{self, Options};

fn err(e: spinmod::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

#[pyclass(name = "Partition", module = "spinmod", frozen, eq, hash, ord, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyPartition(part::Partition);

fn arg(obj: &Bound<'_, PyAny>) -> PyResult<part::Partition> {
    if let Ok(p) = obj.cast::<PyPartition>() {
        return Ok(p.get().0.clone());
    }
    if let Ok(s) = obj.cast::<PyString>() {
        return s.to_str()?.parse().map_err(err);
    }
    let parts: Vec<usize> = obj.extract()?;
    part::Partition::new(parts).map_err(err)
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: &Bound<'_, PyAny>) -> PyResult<Self> {
        arg(parts).map(PyPartition)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn is_two_regular(&self) -> bool {
        self.0.is_two_regular()
    }

    fn dominates(&self, other: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.dominates(&arg(other)?))
    }

    fn hook_dimension(&self) -> u128 {
        self.0.hook_dimension()
    }

    fn regularize(&self) -> Self {
        PyPartition(part::regularize(&self.0))
    }

    fn double(&self) -> PyResult<Self> {
        part::dbl_partition(&self.0).map(PyPartition).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.parts().len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }
}

/// Partitions of `n` in a family: all, two-regular, odd, odd-distinct,
/// benson-split.
#[pyfunction]
#[pyo3(signature = (n, family = "all"))]
fn partitions(n: usize, family: &str) -> PyResult<Vec<PyPartition>> {
    let kind = match family {
        "all" => FamilyKind::All,
        "two-regular" => FamilyKind::TwoRegular,
        "odd" => FamilyKind::OddParts,
        "odd-distinct" => FamilyKind::OddDistinct,
        "benson-split" => FamilyKind::BensonSplit,
        other => return Err(PyKeyError::new_err(format!("unknown family {other:?}"))),
    };
    Ok(enumerate(PartitionFamily::new(kind, n)).into_iter().map(PyPartition).collect())
}

#[pyfunction]
fn beta(n: usize) -> PyPartition {
    PyPartition(part::beta(n))
}

#[pyfunction]
fn benson_split(lambda: &Bound<'_, PyAny>) -> PyResult<bool> {
    part::benson_split(&arg(lambda)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (lambda, i, p = 2))]
fn eps(lambda: &Bound<'_, PyAny>, i: usize, p: usize) -> PyResult<usize> {
    crystal::eps(&arg(lambda)?, i, p).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (lambda, i, p = 2))]
fn phi(lambda: &Bound<'_, PyAny>, i: usize, p: usize) -> PyResult<usize> {
    crystal::phi(&arg(lambda)?, i, p).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (lambda, i, r = 1, p = 2))]
fn e_tilde(lambda: &Bound<'_, PyAny>, i: usize, r: usize, p: usize) -> PyResult<Option<PyPartition>> {
    Ok(crystal::e_tilde(&arg(lambda)?, i, r, p).map_err(err)?.map(PyPartition))
}

#[pyfunction]
#[pyo3(signature = (lambda, i, r = 1, p = 2))]
fn f_tilde(lambda: &Bound<'_, PyAny>, i: usize, r: usize, p: usize) -> PyResult<Option<PyPartition>> {
    Ok(crystal::f_tilde(&arg(lambda)?, i, r, p).map_err(err)?.map(PyPartition))
}

#[pyfunction]
#[pyo3(signature = (lambda, p = 2))]
fn is_js(lambda: &Bound<'_, PyAny>, p: usize) -> PyResult<bool> {
    crystal::is_js(&arg(lambda)?, p).map_err(err)
}

/// Normal nodes as `(residue, row, column)`, zero-based.
#[pyfunction]
#[pyo3(signature = (lambda, p = 2))]
fn normal_nodes(lambda: &Bound<'_, PyAny>, p: usize) -> PyResult<Vec<(usize, usize, usize)>> {
    Ok(crystal::normal_nodes(&arg(lambda)?, p).into_iter().map(|(i, a)| (i, a.row, a.col)).collect())
}

/// `{"value", "parity", "valuation_lb"}`; `value` is None when `signed` is
/// false.
#[pyfunction]
#[pyo3(signature = (lambda, alpha, signed = true))]
fn spin_value<'py>(
    py: Python<'py>,
    lambda: &Bound<'py, PyAny>,
    alpha: &Bound<'py, PyAny>,
    signed: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let v = spin_chars::spin_value(&arg(lambda)?, &arg(alpha)?, signed).map_err(err)?;
    to_py(py, &serde_json::to_value(v).expect("serializable"))
}

#[pyfunction]
fn spin_degree(lambda: &Bound<'_, PyAny>) -> PyResult<u128> {
    spin_chars::spin_degree(&arg(lambda)?).map_err(err)
}

/// A simple module over GF(2) or GF(4), as matrices over GF(2).
#[pyclass(name = "Module", module = "spinmod", frozen)]
struct PyModule_ {
    label: String,
    rep: gf2::Rep,
}

#[pymethods]
impl PyModule_ {
    #[getter]
    fn label(&self) -> &str {
        &self.label
    }

    /// Dimension over GF(2).
    #[getter]
    fn degree(&self) -> usize {
        self.rep.degree()
    }

    /// Dimension over its field of definition.
    #[getter]
    fn dim(&self) -> usize {
        self.rep.field_dim()
    }

    /// Order of the field of definition, 2 or 4.
    #[getter]
    fn field(&self) -> usize {
        if self.rep.is_gf4() { 4 } else { 2 }
    }

    /// Generator matrices as lists of 0/1 rows.
    fn generators(&self) -> Vec<Vec<Vec<u8>>> {
        self.rep
            .gens()
            .iter()
            .map(|g| (0..g.rows()).map(|r| (0..g.cols()).map(|c| g.get(r, c) as u8).collect()).collect())
            .collect()
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        io::save(&path, &self.rep).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Module({}, dim={}, field=GF({}))", self.label, self.dim(), self.field())
    }
}

/// D^lambda for the symmetric group.
#[pyfunction]
fn simple_module(py: Python<'_>, lambda: &Bound<'_, PyAny>) -> PyResult<PyModule_> {
    let lambda = arg(lambda)?;
    let d = py.detach(|| modrep::irreducible_head(&lambda)).map_err(err)?;
    Ok(PyModule_ { label: d.label.to_string(), rep: d.rep })
}

/// Simple modules of the alternating group A_n, in label order.
#[pyfunction]
#[pyo3(signature = (n, seed = 1))]
fn alternating_simple_modules(py: Python<'_>, n: usize, seed: u64) -> PyResult<Vec<PyModule_>> {
    let list = py.detach(|| modrep::alt_irreducibles(n, seed)).map_err(err)?;
    Ok(list.into_iter().map(|d| PyModule_ { label: d.label.to_string(), rep: d.rep }).collect())
}

/// `(label, dimension)` for the simple modules of S_n.
#[pyfunction]
fn simple_dimensions(py: Python<'_>, n: usize) -> PyResult<Vec<(String, usize)>> {
    let lib = py.detach(|| modrep::all_irreducibles(n)).map_err(err)?;
    Ok(lib.iter().map(|(l, d)| (l.to_string(), d.rep.degree())).collect())
}

/// Runs a verification suite and returns its report as a dict.
///
/// `suite` is one of mt, scan, benson, branching, basic, perm, spinchar,
/// filter. `size` is max-n (n for filter, a list of n for perm).
#[pyfunction]
#[pyo3(signature = (suite, size = None, seed = 1, force = false, cache_dir = None))]
fn run_suite<'py>(
    py: Python<'py>,
    suite: &str,
    size: Option<&Bound<'py, PyAny>>,
    seed: u64,
    force: bool,
    cache_dir: Option<PathBuf>,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = Options { seed, cache_dir, force };
    let n = |default: usize| -> PyResult<usize> { size.map_or(Ok(default), |s| s.extract()) };
    let report = match suite {
        "mt" => {
            let m = n(9)?;
            py.detach(|| verify::verify_mt(m, &opts))
        }
        "scan" => {
            let m = n(7)?;
            py.detach(|| verify::verify_pair_scan(m, &opts))
        }
        "benson" => {
            let m = n(9)?;
            py.detach(|| verify::verify_benson(m, &opts))
        }
        "branching" => {
            let m = n(8)?;
            py.detach(|| verify::verify_branching(m, &opts))
        }
        "basic" => {
            let m = n(9)?;
            py.detach(|| verify::verify_basic_spin(m, &opts))
        }
        "spinchar" => {
            let m = n(12)?;
            py.detach(|| verify::verify_spinchar(m, &opts))
        }
        "perm" => {
            let ns: Vec<usize> = size.map_or(Ok(vec![5, 7, 9]), |s| s.extract())?;
            py.detach(|| verify::verify_perm_structure(&ns, &opts))
        }
        "filter" => {
            let m = n(9)?;
            py.detach(|| verify::filter_candidates(m, &opts))
        }
        other => return Err(PyKeyError::new_err(format!("unknown suite {other:?}"))),
    }
    .map_err(err)?;
    py.import("json")?.call_method1("loads", (report.to_json(),))
}

/// Crystal data of a p-regular partition, as printed by `spinmod crystal`.
#[pyfunction]
#[pyo3(signature = (lambda, p = 2))]
fn crystal_data<'py>(py: Python<'py>, lambda: &Bound<'py, PyAny>, p: usize) -> PyResult<Bound<'py, PyAny>> {
    let lambda = arg(lambda)?;
    if !lambda.is_p_regular(p) {
        return Err(err(spinmod::Error::NotPRegular { partition: lambda, p }));
    }
    let residues: Vec<Value> = (0..p)
        .map(|i| {
            let sig = crystal::signature(&lambda, i, p);
            json!({ "residue": i, "eps": sig.eps(), "phi": sig.phi() })
        })
        .collect();
    let js = crystal::is_js(&lambda, p).map_err(err)?;
    to_py(py, &json!({ "lambda": lambda.to_string(), "p": p, "js": js, "residues": residues }))
}

#[pymodule]
#[pyo3(name = "spinmod")]
fn py_spinmod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", verify::TOOL_VERSION)?;
    m.add_class::<PyPartition>()?;
    m.add_class::<PyModule_>()?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(benson_split, m)?)?;
    m.add_function(wrap_pyfunction!(eps, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(e_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(f_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(is_js, m)?)?;
    m.add_function(wrap_pyfunction!(normal_nodes, m)?)?;
    m.add_function(wrap_pyfunction!(crystal_data, m)?)?;
    m.add_function(wrap_pyfunction!(spin_value, m)?)?;
    m.add_function(wrap_pyfunction!(spin_degree, m)?)?;
    m.add_function(wrap_pyfunction!(simple_module, m)?)?;
    m.add_function(wrap_pyfunction!(simple_dimensions, m)?)?;
    m.add_function(wrap_pyfunction!(alternating_simple_modules, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
