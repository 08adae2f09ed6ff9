//! Python bindings for the invariant cyclic homology library: built-in Hopf
//! algebras, presentation parsing and rewriting, axiom certification, and
//! the invariant (co)homology tables of Hopf (co)triples.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hopfcyc::bundle::{builtin_hopf, parse_field, resolve_character, resolve_grouplike};
use hopfcyc::cotriple::{check_comatched_pair, coinvariant_cochain_module, HopfCotriple};
use hopfcyc::cyclic::DEFAULT_DIMENSION_BUDGET;
use hopfcyc::homology::{cyclic_homology, hochschild_homology};
use hopfcyc::hopf::HopfAlgebra;
use hopfcyc::module::{
    self_comodule_algebra, self_module_coalgebra, trivial_comodule, trivial_module,
};
use hopfcyc::presentation::{self, Presentation, WordCombination};
use hopfcyc::triple::{check_matched_pair, coinvariant_chain_module, HopfTriple};

fn err<T>(r: hopfcyc::Result<T>) -> PyResult<T> {
    r.map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A finite-dimensional Hopf algebra held as structure constants.
#[pyclass(name = "HopfAlgebra")]
struct PyHopfAlgebra {
    inner: HopfAlgebra,
}

#[pymethods]
impl PyHopfAlgebra {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.space.labels()
    }

    /// Verify every Hopf axiom exactly; returns the violation list.
    fn check(&self) -> Vec<String> {
        self.inner.check_hopf().violations
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn is_cocommutative(&self) -> bool {
        self.inner.is_cocommutative()
    }

    /// Structure constants as diffable text.
    fn to_text(&self) -> String {
        hopfcyc::report::write_hopf_text(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "HopfAlgebra(name='{}', dim={}, field={})",
            self.inner.name,
            self.inner.dim(),
            self.inner.field
        )
    }
}

/// A parsed Hopf-algebra presentation with rewriting to normal form.
#[pyclass(name = "Presentation")]
struct PyPresentation {
    inner: Presentation,
}

#[pymethods]
impl PyPresentation {
    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators.clone()
    }

    #[getter]
    fn rule_count(&self) -> usize {
        self.inner.rules.len()
    }

    /// Rewrite an expression (e.g. `"u*x"`) to normal form.
    #[pyo3(signature = (expression, step_budget = 100_000))]
    fn normal_form(&self, expression: &str, step_budget: usize) -> PyResult<String> {
        let comb = err(presentation::parse_combination(
            expression,
            &self.inner.generators,
            self.inner.field,
            1,
        ))?;
        let nf = err(presentation::normal_form(&self.inner, &comb, step_budget))?;
        Ok(self.inner.combination_to_string(&nf))
    }

    /// Coproduct of a word with both legs in normal form, as
    /// `(coefficient, "leg1|leg2")` pairs.
    #[pyo3(signature = (word, degree_bound = 4))]
    fn coproduct(&self, word: &str, degree_bound: usize) -> PyResult<Vec<(String, String)>> {
        let comb = err(presentation::parse_combination(
            word,
            &self.inner.generators,
            self.inner.field,
            1,
        ))?;
        if comb.0.len() != 1 {
            return Err(PyValueError::new_err("expected a single word"));
        }
        let (w, _) = comb.0.into_iter().next().unwrap();
        let d = err(presentation::coproduct_expand(&self.inner, &w, degree_bound))?;
        Ok(d
            .0
            .into_iter()
            .map(|((w1, w2), c)| {
                (
                    format!("{c}"),
                    format!(
                        "{}|{}",
                        self.inner.word_to_string(&w1),
                        self.inner.word_to_string(&w2)
                    ),
                )
            })
            .collect())
    }

    /// Compile a finite presentation to structure constants.
    #[pyo3(signature = (basis_bound = 512))]
    fn compile(&self, basis_bound: usize) -> PyResult<PyHopfAlgebra> {
        let h = err(presentation::compile(&self.inner, basis_bound))?;
        Ok(PyHopfAlgebra { inner: h })
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation(generators={:?}, rules={})",
            self.inner.generators,
            self.inner.rules.len()
        )
    }
}

/// Parse the `.hopf` presentation text format.
#[pyfunction]
fn parse_presentation(text: &str) -> PyResult<PyPresentation> {
    Ok(PyPresentation {
        inner: err(presentation::parse(text))?,
    })
}

/// The presentation text of the quantum coordinate ring of SL_q(2).
#[pyfunction]
fn slq2_presentation() -> &'static str {
    presentation::SLQ2
}

/// A built-in Hopf algebra: `kZ2`, `kZ3`, `kZ4`, `kS3`, `sweedler`, or any
/// of those wrapped as `dual:<name>`; fields `rational`, `prime:p`.
#[pyfunction]
#[pyo3(signature = (name, field = "rational"))]
fn builtin(name: &str, field: &str) -> PyResult<PyHopfAlgebra> {
    let f = err(parse_field(field))?;
    Ok(PyHopfAlgebra {
        inner: err(builtin_hopf(name, f))?,
    })
}

/// Load a Hopf algebra from structure-constant text.
#[pyfunction]
fn from_text(text: &str) -> PyResult<PyHopfAlgebra> {
    Ok(PyHopfAlgebra {
        inner: err(hopfcyc::report::read_hopf_text(text))?,
    })
}

fn table_dict<'py>(
    py: Python<'py>,
    hh: &[usize],
    hc: &[usize],
    dims: &[usize],
    compatible: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("hh", hh.to_vec())?;
    d.set_item("hc", hc.to_vec())?;
    d.set_item("coinvariant_dims", dims.to_vec())?;
    d.set_item("compatible", compatible)?;
    Ok(d)
}

/// Invariant cyclic homology of the Hopf triple `(H, H, M)` with grouplike
/// `sigma`; module names: `trivial`, `sign`, `delta`, `regular`.
#[pyfunction]
#[pyo3(signature = (hopf, module = "trivial", sigma = "unit", nmax = 3, budget = DEFAULT_DIMENSION_BUDGET))]
fn invariant_cyclic_homology<'py>(
    py: Python<'py>,
    hopf: &PyHopfAlgebra,
    module: &str,
    sigma: &str,
    nmax: usize,
    budget: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let h = &hopf.inner;
    let m = err(hopfcyc::bundle::resolve_module(
        h,
        Some(&hopfcyc::bundle::ModuleSpec {
            kind: module.to_string(),
        }),
    ))?;
    let s = err(resolve_grouplike(h, sigma))?;
    let pair = err(check_matched_pair(h, &m, &s))?;
    let t = err(HopfTriple::new(self_comodule_algebra(h), h.clone(), m, s))?;
    let coinv = err(coinvariant_chain_module(&t, nmax, budget, pair.compatible()))?;
    let dims = coinv.dims();
    match &coinv.module {
        Some(module_data) => {
            let hh = err(hochschild_homology(module_data))?;
            let hc = err(cyclic_homology(module_data))?;
            table_dict(py, &hh, &hc, &dims, pair.compatible())
        }
        None => {
            let d = PyDict::new(py);
            d.set_item("coinvariant_dims", dims)?;
            d.set_item("compatible", false)?;
            d.set_item("restriction_failures", coinv.restriction_failures.clone())?;
            Ok(d)
        }
    }
}

/// Invariant cyclic cohomology of the Hopf cotriple `(H, H, V)` with the
/// character `delta` (`counit`, `sign`, or `delta`); `comodule` is `trivial`
/// or a grouplike basis label.
#[pyfunction]
#[pyo3(signature = (hopf, comodule = "trivial", delta = "counit", nmax = 3, budget = DEFAULT_DIMENSION_BUDGET))]
fn invariant_cyclic_cohomology<'py>(
    py: Python<'py>,
    hopf: &PyHopfAlgebra,
    comodule: &str,
    delta: &str,
    nmax: usize,
    budget: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let h = &hopf.inner;
    let v = if comodule == "trivial" {
        err(trivial_comodule(h))?
    } else {
        let sigma = err(resolve_grouplike(h, comodule))?;
        err(hopfcyc::module::grouplike_comodule(h, &sigma, comodule))?
    };
    let d = err(resolve_character(h, delta))?;
    let pair = err(check_comatched_pair(h, &v, &d))?;
    let t = err(HopfCotriple::new(self_module_coalgebra(h), h.clone(), v, d))?;
    let coinv = err(coinvariant_cochain_module(&t, nmax, budget, pair.compatible()))?;
    let dims = coinv.dims();
    match &coinv.module {
        Some(module_data) => {
            let hh = err(hochschild_homology(module_data))?;
            let hc = err(cyclic_homology(module_data))?;
            table_dict(py, &hh, &hc, &dims, pair.compatible())
        }
        None => {
            let dd = PyDict::new(py);
            dd.set_item("quotient_dims", dims)?;
            dd.set_item("compatible", false)?;
            Ok(dd)
        }
    }
}

/// Hopf homology H_n(H, M) via the bar complex.
#[pyfunction]
#[pyo3(signature = (hopf, module = "trivial", nmax = 4, budget = DEFAULT_DIMENSION_BUDGET))]
fn hopf_homology(
    hopf: &PyHopfAlgebra,
    module: &str,
    nmax: usize,
    budget: usize,
) -> PyResult<Vec<usize>> {
    let h = &hopf.inner;
    let m = if module == "trivial" {
        err(trivial_module(h))?
    } else {
        err(hopfcyc::bundle::resolve_module(
            h,
            Some(&hopfcyc::bundle::ModuleSpec {
                kind: module.to_string(),
            }),
        ))?
    };
    err(hopfcyc::oracle::hopf_homology(h, &m, nmax, budget))
}

/// Check that the two-dimensional SL_q(2) module gives a matched pair in
/// involution at the given degree bound.
#[pyfunction]
#[pyo3(signature = (degree_bound = 2))]
fn slq2_involution_check(degree_bound: usize) -> PyResult<bool> {
    let p = err(presentation::parse(presentation::SLQ2))?;
    let module = err(presentation::slq2_standard_module(&p))?;
    let sigma = WordCombination::one(p.field);
    err(presentation::bounded_involution_check(
        &p,
        &module,
        &sigma,
        degree_bound,
    ))
}

#[pymodule]
fn hopfcyc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHopfAlgebra>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(parse_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(slq2_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    m.add_function(wrap_pyfunction!(from_text, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_cyclic_homology, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_cyclic_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(hopf_homology, m)?)?;
    m.add_function(wrap_pyfunction!(slq2_involution_check, m)?)?;
    Ok(())
}
