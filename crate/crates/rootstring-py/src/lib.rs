//! Python bindings: exposes root-system construction, Phi-string
//! computation, pair classification, catalog verification, and DOT output.
//!
//! Simple-root indices are 1-based on this surface, matching the
//! `alpha_1..alpha_n` diagram labels. Roots cross the boundary as plain
//! lists of integer coefficients over the simple basis.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rootstring::closedform::{pair_type, FixtureTables};
use rootstring::rootsys::{build_root_system, Root, RootSystemType};
use rootstring::stringgraph::{build_string_graph, emit_dot, graph_invariants};
use rootstring::strings::{is_minimum_level, phi_string, product_string};
use rootstring::verify::{verify_case, verify_catalog, DEFAULT_MAX_N, DEFAULT_MAX_N_BC};

fn value_err(e: rootstring::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_root(coeffs: Vec<i64>, rank: usize) -> PyResult<Root> {
    if coeffs.len() != rank {
        return Err(PyValueError::new_err(format!(
            "coefficient vector has length {}, expected rank {rank}",
            coeffs.len()
        )));
    }
    Ok(Root::new(coeffs))
}

fn to_phi(phi: Vec<usize>, rank: usize) -> PyResult<Vec<usize>> {
    let mut out = Vec::with_capacity(phi.len());
    for i in phi {
        if i < 1 || i > rank {
            return Err(PyValueError::new_err(format!(
                "phi index {i} out of range 1..={rank}"
            )));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn coeff_list(r: &Root) -> Vec<i64> {
    r.coeffs().to_vec()
}

/// A Phi-string: its members, base, and flags.
#[pyclass(name = "PhiString", frozen)]
struct PyPhiString {
    inner: rootstring::StringSet,
}

#[pymethods]
impl PyPhiString {
    /// Members sorted by level then lexicographically.
    fn members(&self) -> Vec<Vec<i64>> {
        self.inner.members_sorted().iter().map(coeff_list).collect()
    }

    #[getter]
    fn base(&self) -> Vec<i64> {
        coeff_list(self.inner.base())
    }

    #[getter]
    fn phi(&self) -> Vec<usize> {
        self.inner.phi().iter().map(|&i| i + 1).collect()
    }

    #[getter]
    fn cardinality(&self) -> usize {
        self.inner.cardinality()
    }

    #[getter]
    fn subsystem_case(&self) -> bool {
        self.inner.is_subsystem_case()
    }

    /// The unique minimum-level member, or None in the subsystem case.
    fn minimum(&self) -> Option<Vec<i64>> {
        self.inner.minimum_level_root().ok().map(coeff_list)
    }

    fn contains(&self, coeffs: Vec<i64>) -> bool {
        self.inner.contains(&Root::new(coeffs))
    }

    fn __len__(&self) -> usize {
        self.inner.cardinality()
    }

    fn __repr__(&self) -> String {
        format!(
            "PhiString(base={:?}, phi={:?}, {} members)",
            coeff_list(self.inner.base()),
            self.phi(),
            self.inner.cardinality()
        )
    }
}

/// An abstract root system built from a designator such as "A5", "BC3", "E8".
#[pyclass(name = "RootSystem", frozen)]
struct PyRootSystem {
    inner: rootstring::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(designator: &str) -> PyResult<Self> {
        let rtype: RootSystemType = designator.parse().map_err(value_err)?;
        let inner = build_root_system(rtype).map_err(value_err)?;
        Ok(PyRootSystem { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn designator(&self) -> String {
        self.inner.requested_type().to_string()
    }

    #[getter]
    fn canonical_designator(&self) -> String {
        self.inner.rtype().to_string()
    }

    #[getter]
    fn is_alias(&self) -> bool {
        self.inner.is_alias()
    }

    #[getter]
    fn positive_count(&self) -> usize {
        self.inner.positives().len()
    }

    /// Positive roots sorted by level then lexicographically.
    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positives().iter().map(coeff_list).collect()
    }

    fn contains(&self, coeffs: Vec<i64>) -> PyResult<bool> {
        Ok(self.inner.contains(&to_root(coeffs, self.inner.rank())?))
    }

    /// The Cartan integer `2 <alpha, beta> / |alpha|^2`.
    fn cartan_integer(&self, alpha: Vec<i64>, beta: Vec<i64>) -> PyResult<i64> {
        let rank = self.inner.rank();
        self.inner
            .cartan_integer(&to_root(alpha, rank)?, &to_root(beta, rank)?)
            .map_err(value_err)
    }

    /// Squared length as an exact rational rendered to a string.
    fn norm2(&self, coeffs: Vec<i64>) -> PyResult<String> {
        Ok(self
            .inner
            .norm2(&to_root(coeffs, self.inner.rank())?)
            .to_string())
    }

    /// The alpha-string through lambda, in increasing order.
    fn alpha_string(&self, alpha: Vec<i64>, lambda: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
        let rank = self.inner.rank();
        let s = self
            .inner
            .alpha_string(&to_root(alpha, rank)?, &to_root(lambda, rank)?)
            .map_err(value_err)?;
        Ok(s.iter().map(coeff_list).collect())
    }

    /// Writes a positive root as an ordered sum of simple roots (1-based)
    /// with every left partial sum a positive root.
    fn simple_decomposition(&self, lambda: Vec<i64>) -> PyResult<Vec<usize>> {
        let r = to_root(lambda, self.inner.rank())?;
        let d = self.inner.simple_decomposition(&r).map_err(value_err)?;
        Ok(d.into_iter().map(|i| i + 1).collect())
    }

    /// Partition of a simple-index set into connected blocks (1-based).
    fn connected_components(&self, phi: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
        let phi = to_phi(phi, self.inner.rank())?;
        Ok(self
            .inner
            .connected_components(&phi)
            .into_iter()
            .map(|block| block.into_iter().map(|i| i + 1).collect())
            .collect())
    }

    /// The Phi-string of lambda, by definitional scan.
    fn phi_string(&self, phi: Vec<usize>, lambda: Vec<i64>) -> PyResult<PyPhiString> {
        let rank = self.inner.rank();
        let phi = to_phi(phi, rank)?;
        let s = phi_string(&self.inner, &phi, &to_root(lambda, rank)?).map_err(value_err)?;
        Ok(PyPhiString { inner: s })
    }

    /// The product-formula assembly for mutually orthogonal connected blocks.
    fn product_string(&self, blocks: Vec<Vec<usize>>, lambda: Vec<i64>) -> PyResult<PyPhiString> {
        let rank = self.inner.rank();
        let blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|b| to_phi(b, rank))
            .collect::<PyResult<_>>()?;
        let s = product_string(&self.inner, &blocks, &to_root(lambda, rank)?).map_err(value_err)?;
        Ok(PyPhiString { inner: s })
    }

    /// Whether lambda is of minimum level in its phi-string; returns
    /// `(is_minimum, witness)` with a 1-based witness index when not.
    fn is_minimum_level(
        &self,
        phi: Vec<usize>,
        lambda: Vec<i64>,
    ) -> PyResult<(bool, Option<usize>)> {
        let rank = self.inner.rank();
        let phi = to_phi(phi, rank)?;
        let c = is_minimum_level(&self.inner, &phi, &to_root(lambda, rank)?).map_err(value_err)?;
        Ok((c.is_minimum, c.witness.map(|i| i + 1)))
    }

    /// Classifies the pair `(Sigma_Phi, Sigma_{lambda,Phi})` for connected
    /// phi and a minimum-level base: `(phi_type, extended_type, family)`.
    fn classify_pair(&self, phi: Vec<usize>, lambda: Vec<i64>) -> PyResult<(String, String, String)> {
        let rank = self.inner.rank();
        let phi = to_phi(phi, rank)?;
        let cls = pair_type(&self.inner, &phi, &to_root(lambda, rank)?).map_err(value_err)?;
        Ok((
            cls.descriptor.phi_type.to_string(),
            cls.descriptor.extended_type.to_string(),
            cls.family.to_string(),
        ))
    }

    /// DOT text of the string diagram.
    fn diagram_dot(&self, phi: Vec<usize>, lambda: Vec<i64>) -> PyResult<String> {
        let rank = self.inner.rank();
        let phi = to_phi(phi, rank)?;
        let s = phi_string(&self.inner, &phi, &to_root(lambda, rank)?).map_err(value_err)?;
        let g = build_string_graph(&self.inner, &s).map_err(value_err)?;
        Ok(emit_dot(&g))
    }

    /// Structural invariants of the string diagram:
    /// `(pass, failure_messages)`.
    fn diagram_invariants(&self, phi: Vec<usize>, lambda: Vec<i64>) -> PyResult<(bool, Vec<String>)> {
        let rank = self.inner.rank();
        let phi = to_phi(phi, rank)?;
        let s = phi_string(&self.inner, &phi, &to_root(lambda, rank)?).map_err(value_err)?;
        let g = build_string_graph(&self.inner, &s).map_err(value_err)?;
        let report = graph_invariants(&g);
        Ok((report.pass, report.failures))
    }

    /// Verifies one case (closed form vs brute force): `(pass, detail)`.
    fn verify(&self, phi: Vec<usize>, lambda: Vec<i64>) -> PyResult<(bool, String)> {
        let rank = self.inner.rank();
        let phi = to_phi(phi, rank)?;
        let o = verify_case(
            &self.inner,
            &phi,
            &to_root(lambda, rank)?,
            FixtureTables::builtin(),
        );
        Ok((o.pass, if o.pass { o.name } else { o.detail }))
    }

    /// Debug dump of the positive roots (comma-separated coefficients,
    /// sorted by level then lexicographically).
    fn dump(&self) -> String {
        self.inner.dump_positives()
    }

    fn __repr__(&self) -> String {
        format!(
            "RootSystem('{}', {} positive roots)",
            self.inner.requested_type(),
            self.inner.positives().len()
        )
    }
}

/// Verifies the closed-form catalog against brute force; returns
/// `(name, pass, detail)` per case.
#[pyfunction]
#[pyo3(signature = (max_n = DEFAULT_MAX_N, max_n_bc = DEFAULT_MAX_N_BC))]
fn catalog(max_n: usize, max_n_bc: usize) -> Vec<(String, bool, String)> {
    verify_catalog(max_n, max_n_bc, FixtureTables::builtin())
        .into_iter()
        .map(|o| (o.name, o.pass, o.detail))
        .collect()
}

#[pymodule]
fn rootstring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyPhiString>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    Ok(())
}
