//! Python bindings: groups, character tables, blocks and verification
//! reports. Reports cross the boundary as plain dicts and lists, with the
//! same shape and string-valued counts as the JSON reports of the CLI.

use std::path::PathBuf;
use std::sync::Arc;

use blockcheck_cli::commands::{load_table, verify_report};
use blockcheck_cli::report::{render, to_value, SCHEMA};
use blockcheck_cli::{
    blocks_command, census_command, max_order_from_env, parse_group_file, table_command, verify_command, CliError,
    VerifyFlags,
};
use blockcheck_core::blocktheory::{block_distribution, block_summary};
use blockcheck_core::chartable::{dixon_schneider_with_limit, CharacterTable};
use blockcheck_core::permgroup::{schreier_sims, PermGroup, Permutation};
use blockcheck_core::realconj::{verify_with_table, VerifyOptions};
use blockcheck_core::Error;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde_json::Value;

create_exception!(blockcheck, BlockcheckError, PyException, "Base class of all blockcheck errors.");
create_exception!(blockcheck, ParseError, BlockcheckError, "Malformed group file, manifest or arguments.");
create_exception!(blockcheck, CapacityError, BlockcheckError, "A size limit was exceeded.");
create_exception!(blockcheck, InternalError, BlockcheckError, "An internal consistency check failed.");

fn py_err(e: CliError) -> PyErr {
    let msg = e.to_string();
    match e {
        CliError::Engine(Error::Capacity { .. }) => CapacityError::new_err(msg),
        CliError::Engine(Error::Internal { .. }) => InternalError::new_err(msg),
        CliError::Io(_) => BlockcheckError::new_err(msg),
        _ => ParseError::new_err(msg),
    }
}

fn engine_err(e: Error) -> PyErr {
    py_err(CliError::Engine(e))
}

/// Converts through the canonical JSON text so that dict keys come out
/// sorted, exactly as in the CLI reports.
fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (render(v),))?.unbind())
}

fn max_order() -> PyResult<u64> {
    max_order_from_env().map_err(py_err)
}

/// A permutation group given by generators on the points `0..degree`.
#[pyclass(frozen, name = "Group", module = "blockcheck")]
struct PyGroup {
    name: String,
    provenance: String,
    group: PermGroup,
}

#[pymethods]
impl PyGroup {
    /// Reads a group file; the declared order is checked.
    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<Self> {
        let f = parse_group_file(&path).map_err(CliError::Parse).map_err(py_err)?;
        Ok(PyGroup { name: f.name, provenance: f.provenance, group: f.group })
    }

    /// Builds a group from 0-based image lists. `degree` is needed only
    /// when there are no generators.
    #[staticmethod]
    #[pyo3(signature = (generators, degree = None, name = "group".to_string()))]
    fn from_generators(generators: Vec<Vec<u32>>, degree: Option<usize>, name: String) -> PyResult<Self> {
        let perms: Vec<Permutation> = generators
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<_, _>>()
            .map_err(engine_err)?;
        let group = match (perms.first(), degree) {
            (None, Some(d)) if d > 0 => PermGroup::trivial(d),
            (None, _) => return Err(ParseError::new_err("a positive degree is needed without generators")),
            (Some(p), Some(d)) if p.degree() != d => {
                return Err(ParseError::new_err(format!("generators have degree {}, not {d}", p.degree())))
            }
            (Some(_), _) => schreier_sims(&perms).map_err(engine_err)?,
        };
        Ok(PyGroup { name, provenance: String::new(), group })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.name
    }

    #[getter]
    fn provenance(&self) -> &str {
        &self.provenance
    }

    #[getter]
    fn degree(&self) -> usize {
        self.group.degree()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.group.size()
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<u32>> {
        self.group.generators().iter().map(|g| g.images().to_vec()).collect()
    }

    fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    fn contains(&self, images: Vec<u32>) -> PyResult<bool> {
        let p = Permutation::from_images(images).map_err(engine_err)?;
        Ok(p.degree() == self.group.degree() && self.group.contains(&p))
    }

    /// The character table, subject to `BLOCKCHECK_MAX_ORDER`.
    fn character_table(&self, py: Python<'_>) -> PyResult<PyCharacterTable> {
        let cap = max_order()?;
        let table = py.detach(|| dixon_schneider_with_limit(&self.group, cap)).map_err(engine_err)?;
        Ok(PyCharacterTable { name: self.name.clone(), table: Arc::new(table) })
    }

    /// The verification report at `p`, as a dict.
    #[pyo3(signature = (p, force_odd_prime = false, max_n = None))]
    fn verify(&self, py: Python<'_>, p: u64, force_odd_prime: bool, max_n: Option<usize>) -> PyResult<Py<PyAny>> {
        self.character_table(py)?.verify(py, p, force_odd_prime, max_n)
    }

    fn __len__(&self) -> usize {
        self.group.size() as usize
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, degree={}, order={})", self.name, self.group.degree(), self.group.order())
    }
}

/// Exact ordinary character table; values print as sums of `c*E(e)^k`.
#[pyclass(frozen, name = "CharacterTable", module = "blockcheck")]
struct PyCharacterTable {
    name: String,
    table: Arc<CharacterTable>,
}

#[pymethods]
impl PyCharacterTable {
    fn __len__(&self) -> usize {
        self.table.len()
    }

    #[getter]
    fn degrees(&self) -> Vec<u64> {
        self.table.degrees.clone()
    }

    #[getter]
    fn class_sizes(&self) -> Vec<u64> {
        self.table.classes.sizes.clone()
    }

    #[getter]
    fn element_orders(&self) -> Vec<u64> {
        self.table.classes.element_orders.clone()
    }

    /// Class representatives in cycle notation.
    #[getter]
    fn class_representatives(&self) -> Vec<String> {
        self.table.classes.representatives.iter().map(Permutation::to_string).collect()
    }

    fn value(&self, chi: usize, class_index: usize) -> PyResult<String> {
        let t = &self.table;
        if chi >= t.len() || class_index >= t.classes.len() {
            return Err(pyo3::exceptions::PyIndexError::new_err("character or class index out of range"));
        }
        Ok(t.value(chi, class_index).to_string())
    }

    fn values(&self) -> Vec<Vec<String>> {
        self.table.values.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
    }

    fn is_real_character(&self, chi: usize) -> bool {
        chi < self.table.len() && self.table.is_real_character(chi)
    }

    fn real_character_count(&self) -> usize {
        (0..self.table.len()).filter(|&c| self.table.is_real_character(c)).count()
    }

    fn real_class_count(&self) -> usize {
        self.table.classes.real_class_indices().len()
    }

    /// Failed table invariants; empty for a correct table.
    fn check(&self) -> PyResult<Vec<String>> {
        Ok(self.table.verify().map_err(engine_err)?.iter().map(|d| format!("{d:?}")).collect())
    }

    /// The stable text dump printed by `blockcheck table`.
    fn dump(&self) -> String {
        self.table.dump()
    }

    /// One summary dict per `p`-block, principal block first.
    fn blocks(&self, py: Python<'_>, p: u64) -> PyResult<Py<PyAny>> {
        let blocks = py.detach(|| block_distribution(&self.table, p)).map_err(engine_err)?;
        let summaries: Vec<Value> = blocks
            .iter()
            .map(|b| block_summary(b).map(|s| to_value(&s)))
            .collect::<Result<_, _>>()
            .map_err(engine_err)?;
        to_py(py, &Value::Array(summaries))
    }

    #[pyo3(signature = (p, force_odd_prime = false, max_n = None))]
    fn verify(&self, py: Python<'_>, p: u64, force_odd_prime: bool, max_n: Option<usize>) -> PyResult<Py<PyAny>> {
        let opts = VerifyOptions { force_odd_prime, max_n, max_order: max_order()?, ..VerifyOptions::default() };
        let report = py.detach(|| verify_with_table(&self.name, &self.table, p, &opts)).map_err(engine_err)?;
        to_py(py, &to_value(&report))
    }

    fn __repr__(&self) -> String {
        format!("CharacterTable({:?}, {} characters)", self.name, self.table.len())
    }
}

#[pyfunction(name = "parse_group_file")]
fn parse_group_file_py(path: PathBuf) -> PyResult<PyGroup> {
    PyGroup::from_file(path)
}

/// `blockcheck table <path>` as a string.
#[pyfunction]
fn table(py: Python<'_>, path: PathBuf) -> PyResult<String> {
    let cap = max_order()?;
    py.detach(|| table_command(&path, cap)).map_err(py_err)
}

/// `blockcheck blocks -p <p> <path>` as a dict.
#[pyfunction]
fn blocks(py: Python<'_>, path: PathBuf, p: u64) -> PyResult<Py<PyAny>> {
    let cap = max_order()?;
    let v = py.detach(|| blocks_command(&path, p, cap)).map_err(py_err)?;
    to_py(py, &v)
}

/// `blockcheck verify`: the report dict and whether the exit status is 0.
#[pyfunction]
#[pyo3(signature = (path, p, force_odd_prime = false, expect_violation = false, max_n = None))]
fn verify(
    py: Python<'_>,
    path: PathBuf,
    p: u64,
    force_odd_prime: bool,
    expect_violation: bool,
    max_n: Option<usize>,
) -> PyResult<(Py<PyAny>, bool)> {
    if expect_violation && !force_odd_prime {
        return Err(ParseError::new_err("expect_violation requires force_odd_prime"));
    }
    let flags = VerifyFlags { prime: p, force_odd_prime, expect_violation, max_n, max_order: max_order()? };
    let (v, pass) = py.detach(|| verify_command(&path, &flags)).map_err(py_err)?;
    Ok((to_py(py, &v)?, pass))
}

/// The bare verification report of a group file, without the envelope.
#[pyfunction]
#[pyo3(signature = (path, p, force_odd_prime = false))]
fn report(py: Python<'_>, path: PathBuf, p: u64, force_odd_prime: bool) -> PyResult<Py<PyAny>> {
    let cap = max_order()?;
    let flags = VerifyFlags { prime: p, force_odd_prime, expect_violation: false, max_n: None, max_order: cap };
    let report = py
        .detach(|| load_table(&path, cap).and_then(|(file, table)| verify_report(&file, table, &flags)))
        .map_err(py_err)?;
    to_py(py, &to_value(&report))
}

/// `blockcheck census`: the merged report dict and whether nothing
/// unexpected happened.
#[pyfunction]
fn census(py: Python<'_>, manifest: PathBuf) -> PyResult<(Py<PyAny>, bool)> {
    let cap = max_order()?;
    let (v, ok) = py.detach(|| census_command(&manifest, cap)).map_err(py_err)?;
    Ok((to_py(py, &v)?, ok))
}

#[pymodule]
fn blockcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("SCHEMA", SCHEMA)?;
    m.add("BlockcheckError", py.get_type::<BlockcheckError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("CapacityError", py.get_type::<CapacityError>())?;
    m.add("InternalError", py.get_type::<InternalError>())?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCharacterTable>()?;
    m.add_function(wrap_pyfunction!(parse_group_file_py, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(blocks, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
