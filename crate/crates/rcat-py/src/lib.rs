//! Python bindings: partial functions, tabulated restriction categories and
//! the main constructions.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rcat_core::category::{check_category_laws, check_restriction_axioms};
use rcat_core::copy::{extensive_completion, FinSetDistributive};
use rcat_core::coproduct::{
    check_restriction_coproducts, check_restriction_zero, find_decision, matrix_decompose, matrix_recompose,
    search_coproducts, PartialMatrix, TableCoproducts,
};
use rcat_core::format::CategoryFile;
use rcat_core::par::{par_compose, par_restriction, par_to_rcat_capped, FinSet};
use rcat_core::product::{
    check_restriction_products, idempotent_lattice, restriction_limit_of_arrow, search_restriction_products,
    SearchedProducts,
};
use rcat_core::report::DEFAULT_CAP;
use rcat_core::split::{is_extensive_rcat, split_idempotents, total_subcategory};
use rcat_core::{par, CatError, Category as _, CheckOptions, FinRCat, LawReport, MorId, ObjId, RestrictionCategory, Status};

fn py_err(e: CatError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Outcome of a law check.
#[pyclass(frozen, get_all, skip_from_py_object, module = "rcat")]
#[derive(Clone)]
pub struct Report {
    /// "pass", "fail" or "truncated".
    status: String,
    passed: bool,
    /// `(law, witnesses)` pairs.
    violations: Vec<(String, Vec<String>)>,
    checked: u64,
}

impl From<LawReport> for Report {
    fn from(r: LawReport) -> Self {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Truncated => "truncated",
        };
        Report {
            status: status.into(),
            passed: r.passed,
            violations: r.violations.into_iter().map(|v| (v.law, v.witnesses)).collect(),
            checked: r.checked,
        }
    }
}

#[pymethods]
impl Report {
    fn __bool__(&self) -> bool {
        self.passed
    }

    fn __repr__(&self) -> String {
        format!("Report(status={:?}, checked={}, violations={})", self.status, self.checked, self.violations.len())
    }
}

/// A partial function between finite sets `{0..src}` and `{0..tgt}`.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "rcat")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialFn(par::PartialFn);

#[pymethods]
impl PartialFn {
    #[new]
    fn new(src: usize, tgt: usize, table: Vec<Option<u32>>) -> PyResult<Self> {
        par::PartialFn::new(src, tgt, table).map(PartialFn).map_err(py_err)
    }

    /// Parse the `"2>3:0,-"` form.
    #[staticmethod]
    fn from_label(label: &str) -> PyResult<Self> {
        par::PartialFn::from_label(label).map(PartialFn).map_err(py_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PartialFn(par::PartialFn::identity(n))
    }

    #[getter]
    fn src(&self) -> usize {
        self.0.src
    }

    #[getter]
    fn tgt(&self) -> usize {
        self.0.tgt
    }

    #[getter]
    fn table(&self) -> Vec<Option<usize>> {
        (0..self.0.src).map(|x| self.0.at(x)).collect()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    fn __call__(&self, x: usize) -> Option<usize> {
        (x < self.0.src).then(|| self.0.at(x)).flatten()
    }

    /// `self ∘ f`.
    fn compose(&self, f: &PartialFn) -> PyResult<Self> {
        par_compose(&self.0, &f.0).map(PartialFn).map_err(py_err)
    }

    fn restriction(&self) -> Self {
        PartialFn(par_restriction(&self.0))
    }

    fn is_total(&self) -> bool {
        self.0.is_total()
    }

    fn domain(&self) -> Vec<usize> {
        self.0.domain()
    }

    fn __repr__(&self) -> String {
        format!("PartialFn({:?})", self.0.label())
    }

    fn __str__(&self) -> String {
        self.0.label()
    }
}

/// A tabulated restriction category; morphisms and objects are named.
#[pyclass(frozen, module = "rcat")]
pub struct Category {
    x: FinRCat,
    cap: usize,
}

impl Category {
    fn opts(&self, all: bool) -> CheckOptions {
        CheckOptions { cap: self.cap, all_violations: all }
    }

    fn obj(&self, name: &str) -> PyResult<ObjId> {
        self.x.base.object_by_name(name).map_err(py_err)
    }

    fn mor(&self, name: &str) -> PyResult<MorId> {
        self.x.base.morphism_by_name(name).map_err(py_err)
    }

    fn name(&self, f: MorId) -> String {
        self.x.base.mor_name(f).to_string()
    }

    fn coproducts(&self) -> PyResult<TableCoproducts<ObjId, MorId>> {
        search_coproducts(&self.x, None).0.ok_or_else(|| PyValueError::new_err("no initial object"))
    }

    fn wrap(&self, x: FinRCat) -> Category {
        Category { x, cap: self.cap }
    }
}

#[pymethods]
impl Category {
    /// Par on sizes `0..=n`.
    #[staticmethod]
    #[pyo3(signature = (n, cap = DEFAULT_CAP))]
    fn par(n: usize, cap: usize) -> PyResult<Self> {
        Ok(Category { x: par_to_rcat_capped(n, cap).map_err(py_err)?, cap })
    }

    /// Total functions on sizes `0..=n`, with trivial restriction.
    #[staticmethod]
    #[pyo3(signature = (n, cap = DEFAULT_CAP))]
    fn finset(n: usize, cap: usize) -> PyResult<Self> {
        Ok(Category { x: FinRCat::materialize(&FinSet::new(n), cap).map_err(py_err)?.0, cap })
    }

    #[staticmethod]
    #[pyo3(signature = (text, cap = DEFAULT_CAP))]
    fn from_json(text: &str, cap: usize) -> PyResult<Self> {
        let x = CategoryFile::from_json(text).and_then(|f| f.to_rcat()).map_err(py_err)?;
        Ok(Category { x, cap })
    }

    fn to_json(&self) -> String {
        CategoryFile::from_rcat(&self.x).to_json()
    }

    #[getter]
    fn n_objects(&self) -> usize {
        self.x.n_objects()
    }

    #[getter]
    fn n_morphisms(&self) -> usize {
        self.x.n_morphisms()
    }

    fn objects(&self) -> Vec<String> {
        self.x.objects().iter().map(|a| self.x.base.obj_name(*a).to_string()).collect()
    }

    fn morphisms(&self) -> Vec<String> {
        self.x.all_morphisms().into_iter().map(|f| self.name(f)).collect()
    }

    fn hom(&self, a: &str, b: &str) -> PyResult<Vec<String>> {
        Ok(self.x.hom(&self.obj(a)?, &self.obj(b)?).into_iter().map(|f| self.name(f)).collect())
    }

    fn dom(&self, f: &str) -> PyResult<String> {
        Ok(self.x.base.obj_name(self.x.dom(&self.mor(f)?)).to_string())
    }

    fn cod(&self, f: &str) -> PyResult<String> {
        Ok(self.x.base.obj_name(self.x.cod(&self.mor(f)?)).to_string())
    }

    fn identity(&self, a: &str) -> PyResult<String> {
        Ok(self.name(self.x.identity(&self.obj(a)?)))
    }

    /// `g ∘ f`.
    fn compose(&self, g: &str, f: &str) -> PyResult<String> {
        let (g, f) = (self.mor(g)?, self.mor(f)?);
        if self.x.cod(&f) != self.x.dom(&g) {
            return Err(PyValueError::new_err("maps are not composable"));
        }
        Ok(self.name(self.x.compose(&g, &f)))
    }

    fn restriction(&self, f: &str) -> PyResult<String> {
        Ok(self.name(self.x.restriction(&self.mor(f)?)))
    }

    /// Category laws and R.1-R.4, plus searched structure on request.
    #[pyo3(signature = (coproducts = false, zero = false, products = false, all = false))]
    fn check(&self, coproducts: bool, zero: bool, products: bool, all: bool) -> PyResult<Report> {
        let opts = self.opts(all);
        let mut r = check_category_laws(&self.x.base, opts);
        r.absorb(check_restriction_axioms(&self.x, opts));
        if coproducts || zero {
            let cp = self.coproducts()?;
            if coproducts {
                r.absorb(check_restriction_coproducts(&self.x, &cp, opts));
            }
            if zero {
                r.absorb(check_restriction_zero(&self.x, &cp, opts));
            }
        }
        if products {
            let ps = search_restriction_products(&self.x).ok_or_else(|| PyValueError::new_err("no restriction products"))?;
            r.absorb(check_restriction_products(&self.x, &ps, opts));
        }
        Ok(r.into())
    }

    /// The decision of `f : C → ΣB_κ`, or None; raises when it is ambiguous.
    fn decide(&self, f: &str, parts: Vec<String>) -> PyResult<Option<String>> {
        let m = self.mor(f)?;
        let parts = parts.iter().map(|p| self.obj(p)).collect::<PyResult<Vec<_>>>()?;
        let s = find_decision(&self.x, &self.coproducts()?, &m, &parts).map_err(py_err)?;
        if s.decision.is_some() && !s.unique {
            return Err(PyValueError::new_err(format!("{f} has several decisions")));
        }
        Ok(s.decision.map(|d| self.name(d.h)))
    }

    /// The matrix of `f : ΣA_λ → ΣB_κ` in its text form.
    fn matrix_decompose(&self, f: &str, rows: Vec<String>, cols: Vec<String>) -> PyResult<String> {
        let rows = rows.iter().map(|p| self.obj(p)).collect::<PyResult<Vec<_>>>()?;
        let cols = cols.iter().map(|p| self.obj(p)).collect::<PyResult<Vec<_>>>()?;
        let m = matrix_decompose(&self.x, &self.coproducts()?, &self.mor(f)?, &rows, &cols).map_err(py_err)?;
        Ok(m.to_text(&self.x.base))
    }

    fn matrix_recompose(&self, text: &str) -> PyResult<String> {
        let m = PartialMatrix::parse(text, &self.x.base).map_err(py_err)?;
        Ok(self.name(matrix_recompose(&self.x, &self.coproducts()?, &m).map_err(py_err)?))
    }

    /// Split the restriction idempotents.
    fn split(&self) -> PyResult<Category> {
        let cp = search_coproducts(&self.x, None).0;
        Ok(self.wrap(split_idempotents(&self.x, cp.as_ref(), self.cap).map_err(py_err)?.table))
    }

    /// The subcategory of total maps, as a category file.
    fn total_json(&self) -> PyResult<String> {
        Ok(CategoryFile::from_category(&total_subcategory(&self.x).map_err(py_err)?).to_json())
    }

    /// `(limit, p, s)` splitting `r̄f`, or None.
    fn limit_of_arrow(&self, f: &str) -> PyResult<Option<(String, String, String)>> {
        let l = restriction_limit_of_arrow(&self.x, &self.mor(f)?, self.opts(false));
        Ok(l.map(|l| (self.x.base.obj_name(l.object).to_string(), self.name(l.p), self.name(l.s))))
    }

    /// Restriction idempotents on `a` with meet and join tables.
    fn lattice(&self, py: Python<'_>, a: &str) -> PyResult<Py<PyAny>> {
        let l = idempotent_lattice(&self.x, &SearchedProducts, &self.obj(a)?, self.opts(false)).map_err(py_err)?;
        let el: Vec<String> = l.elements.iter().map(|e| self.name(*e)).collect();
        let table = |t: &Vec<Vec<usize>>| -> Vec<Vec<String>> { t.iter().map(|r| r.iter().map(|&k| el[k].clone()).collect()).collect() };
        let d = pyo3::types::PyDict::new(py);
        d.set_item("bottom", &el[l.bottom])?;
        d.set_item("top", &el[l.top])?;
        d.set_item("meet", table(&l.meet))?;
        d.set_item("join", table(&l.join))?;
        d.set_item("elements", &el)?;
        d.set_item("report", Report::from(l.report))?;
        Ok(d.into_any().unbind())
    }

    fn is_extensive(&self) -> PyResult<Report> {
        Ok(is_extensive_rcat(&self.x, &self.coproducts()?, self.opts(false)).into())
    }

    fn __repr__(&self) -> String {
        format!("Category(objects={}, morphisms={})", self.x.n_objects(), self.x.n_morphisms())
    }
}

/// Total(K_r(FinSet₊₁)) on sizes `0..=n`: `(category file, report)`.
#[pyfunction]
#[pyo3(signature = (n, cap = DEFAULT_CAP))]
fn complete_finset(n: usize, cap: usize) -> PyResult<(String, Report)> {
    let c = extensive_completion(&FinSet::new(n), &FinSetDistributive, CheckOptions { cap, all_violations: false })
        .map_err(py_err)?;
    Ok((CategoryFile::from_category(&c.category).to_json(), c.report.into()))
}

#[pymodule]
fn rcat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PartialFn>()?;
    m.add_class::<Category>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(complete_finset, m)?)?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    Ok(())
}
