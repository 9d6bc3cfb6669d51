//! Python bindings: words, exact counts, entropy, subspace gaps and the
//! exact Markov chains.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use num_bigint::BigUint;
use pfchain::entanglement::{self, SchmidtModel};
use pfchain::markov::{self, rational_string, HopVariant};
use pfchain::spectra::{HamiltonianParams, Model, Subspace};
use pfchain::words::{self, IrreducibleString};
use pfchain::{counting, paircount, Error};

create_exception!(pfchain_py, SizeLimitExceeded, PyRuntimeError);

const LIMIT: u128 = 5_000_000;

fn err(e: Error) -> PyErr {
    match e {
        Error::SizeLimitExceeded { .. } => SizeLimitExceeded::new_err(e.to_string()),
        Error::ConvergenceFailure { .. } | Error::MatchingInfeasible(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(frozen, eq, hash, from_py_object, module = "pfchain_py")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Word(words::Word);

#[pymethods]
impl Word {
    #[new]
    fn new(d: u8, letters: &str) -> PyResult<Self> {
        words::Word::parse(d, letters).map(Word).map_err(err)
    }

    #[getter]
    fn d(&self) -> u8 {
        self.0.d()
    }

    #[getter]
    fn letters(&self) -> Vec<u8> {
        self.0.letters().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.letters().len()
    }

    /// Irreducible string left after deleting equal pairs.
    fn reduce(&self) -> String {
        words::reduce(&self.0).to_string()
    }

    fn neighbors(&self) -> Vec<Word> {
        words::neighbors(&self.0).into_iter().map(Word).collect()
    }

    fn pairs(&self) -> usize {
        words::count_pairs(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({}, '{}')", self.0.d(), self.0)
    }
}

/// Number of length-`2n+k` words over `d` letters reducing to a fixed length-`k` string.
#[pyfunction]
#[pyo3(signature = (d, n, k = 0))]
fn pf_count(d: u32, n: u64, k: u64) -> BigUint {
    counting::pf_count(d, n, k)
}

#[pyfunction]
#[pyo3(signature = (n, k = 0, s = 1))]
fn catalan(n: u64, k: u64, s: u32) -> BigUint {
    counting::catalan(n, k, s)
}

#[pyfunction]
fn irreducible_count(d: u8, k: usize) -> u128 {
    IrreducibleString::count(d, k)
}

/// `(words, total_pairs, average)` with the average as `"num/den"`.
#[pyfunction]
#[pyo3(signature = (d, n, k = 0))]
fn pf_pairs(d: u32, n: u64, k: u64) -> (BigUint, BigUint, String) {
    let p = paircount::pf_pairs(d, n, k);
    (p.words, p.total, rational_string(&p.average))
}

/// Half-chain entropy in bits of the balanced ground state on `n_sites`.
#[pyfunction]
fn entropy_bits(d: u32, n_sites: usize) -> PyResult<f64> {
    let spec = entanglement::schmidt_spectrum(SchmidtModel::Pf { d }, n_sites).map_err(err)?;
    Ok(entanglement::entropy(&spec).map_err(err)?.entropy_bits)
}

/// Ratio of pair-flip to colored-Dyck entropy.
#[pyfunction]
fn entropy_ratio(d: u32, n_sites: usize) -> PyResult<f64> {
    Ok(entanglement::entropy_comparison(d, n_sites)
        .map_err(err)?
        .ratio)
}

/// `(dimension, gap)` of the pair-flip Hamiltonian on the subspace labelled `label`.
#[pyfunction]
#[pyo3(signature = (d, n_sites, label = ""))]
fn subspace_gap(d: u8, n_sites: usize, label: &str) -> PyResult<(usize, f64)> {
    let s = IrreducibleString::parse(d, label).map_err(err)?;
    let p = HamiltonianParams {
        subspace: Subspace::Reduced(s.letters().to_vec()),
        limit: LIMIT,
        ..HamiltonianParams::new(Model::Pf { d }, n_sites)
    };
    pfchain::spectra::subspace_gap(&p).map_err(err)
}

#[pyclass(frozen, module = "pfchain_py")]
struct MarkovChain(markov::MarkovChain);

#[pymethods]
impl MarkovChain {
    /// `kind` is one of `pf`, `pd`, `hop`, `cwmh`; `k` is only used by the hopping chains.
    #[new]
    #[pyo3(signature = (kind, d, n, k = 1))]
    fn new(kind: &str, d: u8, n: usize, k: usize) -> PyResult<Self> {
        let c = match kind {
            "pf" => markov::pf_chain(d, n, LIMIT),
            "pd" => markov::pd_chain(d, n, LIMIT),
            "hop" => markov::hopping_chain(d, n, k, HopVariant::PfWeighted),
            "cwmh" => markov::hopping_chain(d, n, k, HopVariant::Cwmh),
            _ => return Err(PyValueError::new_err(format!("unknown chain {kind:?}"))),
        };
        c.map(MarkovChain).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn states(&self) -> Vec<Vec<u8>> {
        self.0.states.clone()
    }

    /// Exact `P(s, t)` as `"num/den"`.
    fn transition(&self, s: usize, t: usize) -> PyResult<String> {
        if s >= self.0.len() || t >= self.0.len() {
            return Err(PyValueError::new_err("state index out of range"));
        }
        Ok(rational_string(&self.0.get(s, t)))
    }

    fn stationary(&self) -> Vec<String> {
        self.0.pi.iter().map(rational_string).collect()
    }

    fn is_reversible(&self) -> bool {
        self.0.is_reversible()
    }

    fn gap(&self) -> PyResult<f64> {
        self.0.gap().map_err(err)
    }
}

#[pymodule]
fn pfchain_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Word>()?;
    m.add_class::<MarkovChain>()?;
    m.add_function(wrap_pyfunction!(pf_count, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(irreducible_count, m)?)?;
    m.add_function(wrap_pyfunction!(pf_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_bits, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(subspace_gap, m)?)?;
    m.add("SizeLimitExceeded", m.py().get_type::<SizeLimitExceeded>())?;
    Ok(())
}
