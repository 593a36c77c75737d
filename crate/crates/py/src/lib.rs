//! Python bindings: a thin wrapper over the boolcube crate. Exact values
//! cross the boundary as Python ints where they fit and as decimal or
//! rational strings otherwise.

use boolcube::cube::{Family, FamilySpec};
use boolcube::inequality::{analyze, AnalysisOptions};
use boolcube::partition::{min_partition_exact, DEFAULT_SOLVER_BUDGET};
use boolcube::spectral;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A Boolean function on {0,1}^n, stored as a dense truth table.
#[pyclass(name = "BooleanFunction")]
struct PyBooleanFunction {
    inner: boolcube::BooleanFunction,
}

#[pymethods]
impl PyBooleanFunction {
    /// Parse a truth table: a '0'/'1' string of length 2^n or "hex:..."
    #[new]
    fn new(table: &str, n: u32) -> PyResult<Self> {
        Ok(Self {
            inner: boolcube::BooleanFunction::parse(table, n).map_err(err)?,
        })
    }

    /// Construct a named family: constant0, constant1, dictator, parity,
    /// and, or, majority, maj4, tribes, inner_product, address, random.
    #[staticmethod]
    #[pyo3(signature = (name, n, *, i = 1, width = 2, seed = 0, density = 0.5))]
    fn family(name: &str, n: u32, i: u32, width: u32, seed: u64, density: f64) -> PyResult<Self> {
        let family = match name {
            "constant0" => Family::Constant0,
            "constant1" => Family::Constant1,
            "dictator" => Family::Dictator { i },
            "parity" => Family::Parity,
            "and" => Family::And,
            "or" => Family::Or,
            "majority" => Family::Majority,
            "maj4" => Family::Maj4,
            "tribes" => Family::Tribes { width },
            "inner_product" => Family::InnerProduct,
            "address" => Family::Address,
            "random" => Family::Random { seed, density },
            other => return Err(err(format!("unknown family {other:?}"))),
        };
        Ok(Self {
            inner: FamilySpec::new(family, n).generate().map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    fn __call__(&self, idx: u64) -> PyResult<bool> {
        if idx >= self.inner.size() {
            return Err(err(format!("index {idx} out of range")));
        }
        Ok(self.inner.eval(idx))
    }

    fn truth_table(&self) -> String {
        self.inner.to_bit_string()
    }

    fn hex(&self) -> String {
        self.inner.to_hex_string()
    }

    fn support(&self) -> Vec<u64> {
        self.inner.support().members().to_vec()
    }

    fn support_size(&self) -> u64 {
        self.inner.support_size()
    }

    /// Unnormalized Walsh–Hadamard coefficients W(S) = 2^n * f_hat(S),
    /// indexed by subset mask.
    fn spectrum(&self) -> PyResult<Vec<i64>> {
        Ok(spectral::wht(&self.inner).map_err(err)?.coefficients().to_vec())
    }

    fn fourier_degree(&self) -> PyResult<u32> {
        Ok(spectral::fourier_degree(&spectral::wht(&self.inner).map_err(err)?))
    }

    fn anf_degree(&self) -> u32 {
        spectral::anf_degree(&spectral::anf(&self.inner))
    }

    fn anf(&self) -> String {
        spectral::anf(&self.inner).to_polynomial_string()
    }

    /// Probabilistic influence of coordinate i (1-based), as an exact
    /// rational string.
    fn influence(&self, i: u32) -> PyResult<String> {
        Ok(spectral::influence(&self.inner, i).map_err(err)?.to_string())
    }

    fn total_influence_prob(&self) -> String {
        spectral::total_influence_prob(&self.inner).to_string()
    }

    fn total_influence_spectral(&self) -> PyResult<String> {
        let s = spectral::wht(&self.inner).map_err(err)?;
        Ok(spectral::total_influence_spectral(&s).to_string())
    }

    fn spectral_one_norm(&self) -> PyResult<String> {
        let s = spectral::wht(&self.inner).map_err(err)?;
        Ok(spectral::spectral_one_norm(&s).to_string())
    }

    /// Additive energy E(A) of the support.
    fn energy(&self) -> PyResult<u128> {
        let s = spectral::wht(&self.inner).map_err(err)?;
        let e = boolcube::energy::energy(&self.inner.support(), &s);
        u128::try_from(&e).map_err(|_| err("energy exceeds u128"))
    }

    /// Minimal monochromatic subcube partition. Returns
    /// (size, optimal, parts) where parts is a list of
    /// (mask_string, values_string, label) triples.
    #[pyo3(signature = (budget = DEFAULT_SOLVER_BUDGET))]
    fn min_partition(&self, budget: u64) -> PyResult<(usize, bool, Vec<(String, String, bool)>)> {
        let search = min_partition_exact(&self.inner, budget).map_err(err)?;
        let parts = search
            .witness
            .parts()
            .iter()
            .map(|(c, label)| {
                (
                    boolcube::partition::coord_bits(c.mask(), c.n()),
                    boolcube::partition::coord_bits(c.values(), c.n()),
                    *label,
                )
            })
            .collect();
        Ok((search.size, search.optimal, parts))
    }

    /// Full analysis (inequality links plus entropy report) as a JSON
    /// string.
    #[pyo3(signature = (budget = DEFAULT_SOLVER_BUDGET))]
    fn analyze(&self, budget: u64) -> PyResult<String> {
        let opts = AnalysisOptions {
            solver_budget: budget,
            ..AnalysisOptions::default()
        };
        let analysis = analyze(&self.inner, &opts).map_err(err)?;
        serde_json::to_string(&analysis).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "BooleanFunction(n={}, table=\"{}\")",
            self.inner.n(),
            self.inner.to_hex_string()
        )
    }
}

#[pymodule]
fn boolcube_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBooleanFunction>()?;
    Ok(())
}
