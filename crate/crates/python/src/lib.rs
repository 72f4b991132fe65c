//! Python bindings.
//!
//! Usage from Python:
//!
//!     import cyclogaps
//!     word = cyclogaps.build_word(7, 17)
//!     str(word)                       # '+-00000+-00000+-0...'
//!     cyclogaps.gap_profile(7, 17).g2 # 3

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cyclogaps_core::basicwords::{alternation_report, PrimePair, ResidueClass};
use cyclogaps_core::cyclotomic::{self, GapProfile};
use cyclogaps_core::oracle;
use cyclogaps_core::words::TernaryWord;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "PrimePair", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPrimePair(PrimePair);

#[pymethods]
impl PyPrimePair {
    #[new]
    fn new(p: i64, q: i64) -> PyResult<Self> {
        PrimePair::new(p, q).map(Self).map_err(value_error)
    }

    #[getter]
    fn p(&self) -> usize {
        self.0.p()
    }

    #[getter]
    fn q(&self) -> usize {
        self.0.q()
    }

    #[getter]
    fn r(&self) -> usize {
        self.0.r()
    }

    #[getter]
    fn quotient(&self) -> usize {
        self.0.quotient()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn u_plus(&self) -> usize {
        self.0.u_plus()
    }

    #[getter]
    fn u_minus(&self) -> usize {
        self.0.u_minus()
    }

    fn __repr__(&self) -> String {
        format!("PrimePair(p={}, q={})", self.0.p(), self.0.q())
    }
}

/// A word over {-1, 0, 1}. Construct from its text form ("+-0...").
#[pyclass(name = "TernaryWord", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyWord(TernaryWord);

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn from_letters(letters: Vec<i64>) -> PyResult<Self> {
        TernaryWord::from_integers(letters)
            .map(Self)
            .map_err(value_error)
    }

    fn letters(&self) -> Vec<i8> {
        self.0.letters().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TernaryWord('{}')", self.0)
    }

    fn __getitem__(&self, index: isize) -> PyResult<i8> {
        let len = self.0.len() as isize;
        let j = if index < 0 { index + len } else { index };
        if !(0..len).contains(&j) {
            return Err(pyo3::exceptions::PyIndexError::new_err(
                "word index out of range",
            ));
        }
        Ok(self.0.letters()[j as usize])
    }

    fn concat(&self, other: &PyWord) -> PyWord {
        PyWord(self.0.concat(&other.0))
    }

    fn power(&self, s: usize) -> PyWord {
        PyWord(self.0.power(s))
    }

    fn fractional_power(&self, k: usize) -> PyResult<PyWord> {
        self.0.fractional_power(k).map(PyWord).map_err(value_error)
    }

    fn rotate_left(&self, s: usize) -> PyResult<PyWord> {
        self.0.rotate_left(s).map(PyWord).map_err(value_error)
    }

    fn reverse(&self) -> PyWord {
        PyWord(self.0.reverse())
    }

    fn add(&self, other: &PyWord) -> PyResult<PyWord> {
        self.0.add(&other.0).map(PyWord).map_err(value_error)
    }

    /// Sorted gaps (zero-run length + 1) between nonzero letters.
    fn gapset(&self) -> PyResult<Vec<usize>> {
        let gaps = self.0.gapset().map_err(value_error)?;
        Ok(gaps.gaps().iter().copied().collect())
    }

    fn g1(&self) -> PyResult<Option<usize>> {
        Ok(self.0.gapset().map_err(value_error)?.g1())
    }

    fn g2(&self) -> PyResult<Option<usize>> {
        Ok(self.0.gapset().map_err(value_error)?.g2())
    }

    fn begin_end(&self) -> PyResult<(usize, usize)> {
        self.0.begin_end().map_err(value_error)
    }

    fn partial_sums(&self) -> Vec<i64> {
        self.0.partial_sums()
    }

    /// (alternates, first_sign, last_sign) of the nonzero letters.
    fn alternation(&self) -> PyResult<(bool, i8, i8)> {
        let a = alternation_report(&self.0).map_err(value_error)?;
        Ok((a.alternates, a.first_sign, a.last_sign))
    }
}

#[pyclass(name = "GapProfile", frozen, get_all)]
struct PyGapProfile {
    p: usize,
    q: usize,
    r: usize,
    g1: usize,
    g2: Option<usize>,
    counts: BTreeMap<usize, usize>,
    g1_positions: Vec<usize>,
    g2_positions: Vec<usize>,
}

impl From<GapProfile> for PyGapProfile {
    fn from(g: GapProfile) -> Self {
        Self {
            p: g.p,
            q: g.q,
            r: g.r,
            g1: g.g1,
            g2: g.g2,
            counts: g.counts,
            g1_positions: g.g1_positions,
            g2_positions: g.g2_positions,
        }
    }
}

#[pymethods]
impl PyGapProfile {
    fn __repr__(&self) -> String {
        format!(
            "GapProfile(p={}, q={}, g1={}, g2={:?}, counts={:?})",
            self.p, self.q, self.g1, self.g2, self.counts
        )
    }
}

#[pyclass(name = "ClaimRecord", frozen, get_all)]
struct PyClaimRecord {
    claim: String,
    applicable: bool,
    holds: bool,
    hypothesis: Option<String>,
    details: String,
}

#[pymethods]
impl PyClaimRecord {
    fn __repr__(&self) -> String {
        format!(
            "ClaimRecord(claim='{}', applicable={}, holds={})",
            self.claim,
            if self.applicable { "True" } else { "False" },
            if self.holds { "True" } else { "False" }
        )
    }
}

fn pair(p: i64, q: i64) -> PyResult<PrimePair> {
    PrimePair::new(p, q).map_err(value_error)
}

/// Coefficient word of Φ_pq built from basic words.
#[pyfunction]
fn build_word(p: i64, q: i64) -> PyResult<PyWord> {
    Ok(PyWord(cyclotomic::build_word(&pair(p, q)?).into_word()))
}

/// Closed form of the word for q ≡ ±1 (mod p).
#[pyfunction]
fn build_word_special(p: i64, q: i64) -> PyResult<PyWord> {
    cyclotomic::build_word_special(&pair(p, q)?)
        .map(|w| PyWord(w.into_word()))
        .map_err(value_error)
}

#[pyfunction]
fn half_word(p: i64, q: i64) -> PyResult<PyWord> {
    cyclotomic::half_word(&pair(p, q)?)
        .map(PyWord)
        .map_err(value_error)
}

#[pyfunction]
fn gap_profile(p: i64, q: i64) -> PyResult<PyGapProfile> {
    Ok(cyclotomic::gap_profile(&pair(p, q)?).into())
}

#[pyfunction]
fn verify_theorems(p: i64, q: i64) -> PyResult<Vec<PyClaimRecord>> {
    let report = cyclotomic::verify_theorems(&pair(p, q)?);
    Ok(report
        .claims
        .into_iter()
        .map(|c| PyClaimRecord {
            claim: c.claim.id().to_string(),
            applicable: c.applicable,
            holds: c.holds,
            hypothesis: c.hypothesis,
            details: c.details,
        })
        .collect())
}

/// (d words, ω words) of the residue class (p, r).
#[pyfunction]
fn basic_words(p: i64, r: i64) -> PyResult<(Vec<PyWord>, Vec<PyWord>)> {
    let family = ResidueClass::new(p, r).map_err(value_error)?.family();
    Ok((
        family.ds().iter().cloned().map(PyWord).collect(),
        family.omegas().iter().cloned().map(PyWord).collect(),
    ))
}

/// Coefficient word of Φ_pq from exact polynomial division.
#[pyfunction]
fn oracle_word(p: i64, q: i64) -> PyResult<PyWord> {
    let pair = pair(p, q)?;
    let poly = oracle::cyclotomic_pq(pair.p() as u64, pair.q() as u64).map_err(value_error)?;
    oracle::word_from_poly(&poly)
        .map(PyWord)
        .map_err(value_error)
}

#[pymodule]
fn cyclogaps(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPrimePair>()?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyGapProfile>()?;
    m.add_class::<PyClaimRecord>()?;
    m.add_function(wrap_pyfunction!(build_word, m)?)?;
    m.add_function(wrap_pyfunction!(build_word_special, m)?)?;
    m.add_function(wrap_pyfunction!(half_word, m)?)?;
    m.add_function(wrap_pyfunction!(gap_profile, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorems, m)?)?;
    m.add_function(wrap_pyfunction!(basic_words, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_word, m)?)?;
    Ok(())
}
