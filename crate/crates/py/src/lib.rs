use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use gtkit::cli::{run as run_config, Cli, RunConfig};
use gtkit::divdiff::identities;
use gtkit::error::GtError as CoreError;
use gtkit::exactalg::{point_from_rows, ParamScalar};
use gtkit::gtmodule::{self, Generator, GlModule};
use gtkit::singular::{self, EvaluatedLattice};
use gtkit::symcomb::{IntegralPoint, Refinement};

create_exception!(gtkit, GtError, PyValueError, "Raised by gtkit; the first argument is the error kind.");

fn err(e: CoreError) -> PyErr {
    GtError::new_err((e.name(), e.to_string()))
}

fn generator(s: &str) -> PyResult<Generator> {
    s.parse().map_err(err)
}

/// Accepts a JSON string or any object `json.dumps` can serialize.
fn point(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<Vec<ParamScalar>> {
    let text: String = match obj.extract::<String>() {
        Ok(s) => s,
        Err(_) => py.import("json")?.call_method1("dumps", (obj,))?.extract()?,
    };
    let rows: Vec<Vec<ParamScalar>> =
        serde_json::from_str(&text).map_err(|e| GtError::new_err(("InputError", e.to_string())))?;
    point_from_rows(&rows).map_err(err)
}

fn strings(v: &[ParamScalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// The finite-dimensional module `V(λ)` with its Gelfand-Tsetlin basis.
#[pyclass(frozen, module = "gtkit")]
struct FinDimModule {
    inner: gtmodule::FinDimModule,
}

#[pymethods]
impl FinDimModule {
    #[new]
    fn new(weight: Vec<i64>) -> PyResult<Self> {
        Ok(FinDimModule { inner: gtmodule::FinDimModule::new(&weight).map_err(err)? })
    }

    #[getter]
    fn weight(&self) -> Vec<i64> {
        self.inner.weight().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Basis tableaux as flat integer vectors, row 1 first.
    fn basis(&self) -> Vec<Vec<i64>> {
        self.inner.basis().to_vec()
    }

    /// Matrix of a generator such as `"E12"`, entries as exact strings.
    fn matrix(&self, gen: &str) -> PyResult<Vec<Vec<String>>> {
        let m = self.inner.generator(generator(gen)?).map_err(err)?;
        Ok(m.rows().iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect())
    }

    fn central_element(&self, k: usize, i: usize) -> PyResult<Vec<Vec<String>>> {
        let m = self.inner.central_element(k, i).map_err(err)?;
        Ok(m.rows().iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect())
    }

    fn commutator_failures(&self) -> Vec<(usize, usize, usize, usize)> {
        self.inner.commutator_failures()
    }

    fn central_failures(&self) -> PyResult<Vec<(usize, usize)>> {
        self.inner.central_failures().map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("FinDimModule({:?}, dim={})", self.inner.weight(), self.inner.dim())
    }
}

/// A derived tableau `D_ν T(z)`.
#[pyclass(frozen, eq, skip_from_py_object, module = "gtkit")]
#[derive(Clone, PartialEq)]
struct DerivedTableau {
    inner: singular::DerivedTableau,
}

#[pymethods]
impl DerivedTableau {
    /// Integer rows of `z` (missing top rows are zero).
    #[getter]
    fn z(&self) -> Vec<Vec<i64>> {
        self.inner.z.rows()
    }

    /// The shuffle in cycle notation on 1-based slots.
    #[getter]
    fn shuffle(&self) -> String {
        self.inner.nu.to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DerivedTableau({})", self.inner)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

/// The module `V(T(v))` of a fully critical point `v`.
#[pyclass(frozen, module = "gtkit")]
struct Module {
    inner: EvaluatedLattice,
}

impl Module {
    fn refinement(&self) -> &Refinement {
        self.inner.lattice().refinement()
    }

    fn tableau(&self, z: Vec<Vec<i64>>, shuffle: &str) -> PyResult<singular::DerivedTableau> {
        let eta = self.refinement();
        let z = IntegralPoint::from_rows(eta.rank(), &z).map_err(err)?;
        let nu = eta.parse_permutation(shuffle).map_err(err)?;
        Ok(singular::DerivedTableau { z, nu })
    }
}

#[pymethods]
impl Module {
    #[new]
    fn new(py: Python<'_>, v: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Module { inner: EvaluatedLattice::for_point(point(py, v)?).map_err(err)? })
    }

    #[getter]
    fn singularity(&self) -> String {
        self.refinement().to_string()
    }

    #[getter]
    fn point(&self) -> Vec<String> {
        strings(self.inner.point())
    }

    /// The derived tableaux with `‖z‖_∞ <= radius`.
    fn derived(&self, radius: i64) -> PyResult<Vec<DerivedTableau>> {
        let window = singular::derived_basis_window(self.refinement(), radius).map_err(err)?;
        Ok(window.into_iter().map(|inner| DerivedTableau { inner }).collect())
    }

    #[pyo3(signature = (z, shuffle = "id"))]
    fn tableau_at(&self, z: Vec<Vec<i64>>, shuffle: &str) -> PyResult<DerivedTableau> {
        Ok(DerivedTableau { inner: self.tableau(z, shuffle)? })
    }

    /// `g · d` with coefficients evaluated at `v`.
    fn act(&self, gen: &str, d: &DerivedTableau) -> PyResult<Vec<(DerivedTableau, String)>> {
        let out = self.inner.act_basis(generator(gen)?, &d.inner).map_err(err)?;
        Ok(out.iter().map(|(t, c)| (DerivedTableau { inner: t.clone() }, c.to_string())).collect())
    }

    /// `g · d` in the lattice, coefficients as rational functions of the variables.
    fn lattice_act(&self, gen: &str, d: &DerivedTableau) -> PyResult<Vec<(DerivedTableau, String)>> {
        let out = self.inner.lattice().act(generator(gen)?, &d.inner).map_err(err)?;
        Ok(out.iter().map(|(t, c)| (DerivedTableau { inner: t.clone() }, c.to_string())).collect())
    }

    /// Matrix of `c_{k,i}` on the derived tableaux at `z`.
    fn gamma_action<'py>(&self, py: Python<'py>, k: usize, i: usize, z: Vec<Vec<i64>>) -> PyResult<Bound<'py, PyDict>> {
        let z = IntegralPoint::from_rows(self.refinement().rank(), &z).map_err(err)?;
        let a = singular::gamma_action_on_eigenspace(&self.inner, k, i, &z).map_err(err)?;
        let d = PyDict::new(py);
        let basis: Vec<DerivedTableau> = a.basis.iter().map(|t| DerivedTableau { inner: t.clone() }).collect();
        d.set_item("basis", basis)?;
        let m: Vec<Vec<String>> = a.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        d.set_item("matrix", m)?;
        d.set_item("eigenvalue", a.eigenvalue.to_string())?;
        d.set_item("min_exponents", a.min_exponents.clone())?;
        d.set_item("nilpotency_holds", a.nilpotency_holds())?;
        Ok(d)
    }

    /// Characters in the window: z rows, fingerprint, multiplicity.
    fn support<'py>(&self, py: Python<'py>, radius: i64) -> PyResult<Bound<'py, PyList>> {
        let entries = singular::support_window(self.inner.point(), radius).map_err(err)?;
        let out = PyList::empty(py);
        for e in entries {
            let d = PyDict::new(py);
            d.set_item("z", e.z)?;
            d.set_item("fingerprint", e.fingerprint)?;
            d.set_item("multiplicity", e.multiplicity)?;
            d.set_item("derived_count", e.derived_count)?;
            out.append(d)?;
        }
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Module(singularity={})", self.refinement())
    }
}

/// Singularity of a point, as `((1),(2),...)`.
#[pyfunction]
fn singularity(py: Python<'_>, v: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(singular::singularity(&point(py, v)?).map_err(err)?.eta.to_string())
}

#[pyfunction]
fn is_normal_form(py: Python<'_>, v: &Bound<'_, PyAny>) -> PyResult<bool> {
    singular::is_normal_form(&point(py, v)?).map_err(err)
}

#[pyfunction]
fn is_fully_critical(py: Python<'_>, v: &Bound<'_, PyAny>) -> PyResult<bool> {
    singular::is_fully_critical(&point(py, v)?).map_err(err)
}

/// The normal form of a point: `(σ, shift rows, normalized point rows)`.
/// The rows use the same JSON shape as the input.
#[pyfunction]
fn normalize<'py>(py: Python<'py>, v: &Bound<'py, PyAny>) -> PyResult<(String, Vec<Vec<i64>>, Bound<'py, PyAny>)> {
    let nf = singular::normalize(&point(py, v)?).map_err(err)?;
    let n = nf.shift.rank();
    let rows: Vec<&[ParamScalar]> = (1..=n).map(|k| &nf.point[k * (k - 1) / 2..k * (k + 1) / 2]).collect();
    let text = serde_json::to_string(&rows).map_err(|e| GtError::new_err(("Internal", e.to_string())))?;
    let rows = py.import("json")?.call_method1("loads", (text,))?;
    Ok((nf.sigma.to_string(), nf.shift.rows(), rows))
}

#[pyfunction]
fn gamma_poly(k: usize, i: usize) -> PyResult<String> {
    Ok(gtmodule::gamma_poly(k, i).map_err(err)?.to_string())
}

#[pyfunction]
fn weyl_dimension(weight: Vec<i64>) -> u64 {
    gtmodule::weyl_dimension(&weight)
}

/// Divided-difference identity reports as `(name, refinement, trials, passed)`.
#[pyfunction]
#[pyo3(signature = (trials = 100, seed = 0, bound = 24))]
fn verify_identities(py: Python<'_>, trials: usize, seed: u64, bound: u64) -> Vec<(String, String, usize, bool)> {
    let reports = py.detach(|| identities::full_suite(trials, seed, bound));
    reports
        .into_iter()
        .map(|r| {
            let p = r.passed();
            (r.name, r.refinement, r.trials, p)
        })
        .collect()
}

/// Runs a command-line invocation and returns `(exit status, report JSON)`.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> PyResult<(i32, String)> {
    use clap::Parser;
    let argv = std::iter::once("gtkit".to_string()).chain(args);
    let cli = Cli::try_parse_from(argv).map_err(|e| GtError::new_err(("UsageError", e.to_string())))?;
    let config = RunConfig::from_cli(&cli);
    let report = py.detach(|| run_config(&config)).map_err(|e| GtError::new_err((e.name(), e.to_string())))?;
    Ok((if report.passed { 0 } else { 1 }, report.to_json()))
}

#[pymodule]
#[pyo3(name = "gtkit")]
fn gtkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("GtError", m.py().get_type::<GtError>())?;
    m.add_class::<FinDimModule>()?;
    m.add_class::<DerivedTableau>()?;
    m.add_class::<Module>()?;
    m.add_function(wrap_pyfunction!(singularity, m)?)?;
    m.add_function(wrap_pyfunction!(is_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(is_fully_critical, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_poly, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
