//! Spectral sequences of filtered cochain complexes.
//!
//! A filtered complex here is a finite basis, a differential raising degree
//! by one and respecting a decreasing filtration `F^p ⊇ F^{p+1}` spanned by
//! basis elements, and optionally a filtered product. Pages are computed
//! from the classical cycle spaces
//!
//! ```text
//! Z_r^{p,q} = { x ∈ F^p ∩ C^{p+q} : dx ∈ F^{p+r} }
//! E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})
//! ```
//!
//! by exact linear algebra, so page dimensions and differentials are
//! reliable answers, not numerical estimates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::graded::SparseVec;
use crate::matrix::{Matrix, Subquotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredElt {
    pub name: String,
    pub deg: i64,
    pub filt: i64,
}

/// A cochain complex with a decreasing filtration by basis subsets, and an
/// optional product. Column `j` of `d` is the differential of basis element
/// `j`; `mult[i * n + j]` is the product of basis elements `i` and `j`.
#[derive(Clone, Debug)]
pub struct FilteredComplex<K> {
    pub basis: Vec<FilteredElt>,
    pub d: Matrix<K>,
    pub mult: Option<Vec<SparseVec<K>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexIssue {
    DifferentialShape { rows: usize, cols: usize, expected: usize },
    DifferentialNotDegreeOne { col: usize },
    DifferentialLowersFiltration { col: usize },
    DSquaredNonzero { col: usize },
    ProductTableShape { len: usize, expected: usize },
    ProductNotDegreeAdditive { i: usize, j: usize },
    ProductNotFiltered { i: usize, j: usize },
    LeibnizFailure { i: usize, j: usize },
}

impl fmt::Display for ComplexIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexIssue::DifferentialShape { rows, cols, expected } => {
                write!(f, "differential is {rows}x{cols}, expected {expected}x{expected}")
            }
            ComplexIssue::DifferentialNotDegreeOne { col } => {
                write!(f, "d of basis element {col} is not homogeneous of degree +1")
            }
            ComplexIssue::DifferentialLowersFiltration { col } => {
                write!(f, "d of basis element {col} drops below its filtration level")
            }
            ComplexIssue::DSquaredNonzero { col } => {
                write!(f, "d(d(basis element {col})) is nonzero")
            }
            ComplexIssue::ProductTableShape { len, expected } => {
                write!(f, "product table has {len} entries, expected {expected}")
            }
            ComplexIssue::ProductNotDegreeAdditive { i, j } => {
                write!(f, "product of basis elements {i} and {j} is not degree-additive")
            }
            ComplexIssue::ProductNotFiltered { i, j } => {
                write!(f, "product of basis elements {i} and {j} drops filtration")
            }
            ComplexIssue::LeibnizFailure { i, j } => {
                write!(f, "Leibniz rule fails on basis elements {i} and {j}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecSeqError {
    InvalidComplex { issues: Vec<ComplexIssue> },
    NoProductStructure,
}

impl fmt::Display for SpecSeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecSeqError::InvalidComplex { issues } => {
                write!(f, "complex fails validation ({} issues)", issues.len())
            }
            SpecSeqError::NoProductStructure => {
                write!(f, "complex carries no product table")
            }
        }
    }
}

impl<K: Field> FilteredComplex<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Checks the differential axioms, and the product axioms when a
    /// product table is present.
    pub fn validate(&self) -> Result<(), Vec<ComplexIssue>> {
        let mut issues = self.differential_issues();
        if let Some(mult) = &self.mult {
            let n = self.basis.len();
            if mult.len() != n * n {
                issues.push(ComplexIssue::ProductTableShape { len: mult.len(), expected: n * n });
            } else {
                for i in 0..n {
                    for j in 0..n {
                        let p = &mult[i * n + j];
                        let deg = self.basis[i].deg + self.basis[j].deg;
                        let filt = self.basis[i].filt + self.basis[j].filt;
                        if p.iter().any(|(t, _)| self.basis[*t].deg != deg) {
                            issues.push(ComplexIssue::ProductNotDegreeAdditive { i, j });
                        }
                        if p.iter().any(|(t, _)| self.basis[*t].filt < filt) {
                            issues.push(ComplexIssue::ProductNotFiltered { i, j });
                        }
                        if !self.leibniz_holds(i, j) {
                            issues.push(ComplexIssue::LeibnizFailure { i, j });
                        }
                    }
                }
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(issues)
        }
    }

    fn differential_issues(&self) -> Vec<ComplexIssue> {
        let n = self.basis.len();
        let mut issues = Vec::new();
        if self.d.rows() != n || self.d.cols() != n {
            issues.push(ComplexIssue::DifferentialShape {
                rows: self.d.rows(),
                cols: self.d.cols(),
                expected: n,
            });
            return issues;
        }
        for j in 0..n {
            for i in 0..n {
                if self.d[(i, j)].is_zero() {
                    continue;
                }
                if self.basis[i].deg != self.basis[j].deg + 1 {
                    issues.push(ComplexIssue::DifferentialNotDegreeOne { col: j });
                    break;
                }
                if self.basis[i].filt < self.basis[j].filt {
                    issues.push(ComplexIssue::DifferentialLowersFiltration { col: j });
                    break;
                }
            }
        }
        let dd = &self.d * &self.d;
        for j in 0..n {
            if (0..n).any(|i| !dd[(i, j)].is_zero()) {
                issues.push(ComplexIssue::DSquaredNonzero { col: j });
            }
        }
        issues
    }

    /// Evaluates `d(x_i x_j) = d(x_i) x_j + (-1)^{deg x_i} x_i d(x_j)` on the
    /// basis, as dense ambient vectors.
    fn leibniz_holds(&self, i: usize, j: usize) -> bool {
        let n = self.basis.len();
        let mult = self.mult.as_ref().expect("caller checked");
        let mut lhs = vec![K::zero(); n];
        for (t, c) in &mult[i * n + j] {
            let dt = self.d.column(*t);
            for (slot, val) in lhs.iter_mut().enumerate() {
                *val = val.clone() + c.clone() * dt[slot].clone();
            }
        }
        let mut rhs = vec![K::zero(); n];
        for (t, c) in self.product_with_column(&self.d.column(i), j) {
            rhs[t] = rhs[t].clone() + c;
        }
        let sign = if self.basis[i].deg.rem_euclid(2) == 1 { -K::one() } else { K::one() };
        for (t, c) in self.column_with_product(i, &self.d.column(j)) {
            rhs[t] = rhs[t].clone() + sign.clone() * c;
        }
        lhs == rhs
    }

    /// Product `(Σ v_a x_a) · x_j` as a sparse vector.
    fn product_with_column(&self, v: &[K], j: usize) -> SparseVec<K> {
        let n = self.basis.len();
        let mult = self.mult.as_ref().expect("caller checked");
        let mut out = Vec::new();
        for (a, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, s) in &mult[a * n + j] {
                out.push((*t, c.clone() * s.clone()));
            }
        }
        crate::graded::normalize_sparse(out)
    }

    /// Product `x_i · (Σ v_b x_b)` as a sparse vector.
    fn column_with_product(&self, i: usize, v: &[K]) -> SparseVec<K> {
        let n = self.basis.len();
        let mult = self.mult.as_ref().expect("caller checked");
        let mut out = Vec::new();
        for (b, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, s) in &mult[i * n + b] {
                out.push((*t, c.clone() * s.clone()));
            }
        }
        crate::graded::normalize_sparse(out)
    }

    /// Product of two dense ambient vectors.
    fn product_dense(&self, x: &[K], y: &[K]) -> Vec<K> {
        let n = self.basis.len();
        let mult = self.mult.as_ref().expect("caller checked");
        let mut out = vec![K::zero(); n];
        for (a, ca) in x.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in y.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                for (t, s) in &mult[a * n + b] {
                    out[*t] = out[*t].clone() + ca.clone() * cb.clone() * s.clone();
                }
            }
        }
        out
    }

    fn filts(&self) -> (i64, i64) {
        let min = self.basis.iter().map(|b| b.filt).min().unwrap_or(0);
        let max = self.basis.iter().map(|b| b.filt).max().unwrap_or(0);
        (min, max)
    }

    /// Largest page shift that can carry a nonzero differential, plus one.
    pub fn stabilization_page(&self) -> i64 {
        let (min, max) = self.filts();
        max - min + 1
    }

    fn indices(&self, pred: impl Fn(&FilteredElt) -> bool) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| pred(&self.basis[i])).collect()
    }

    /// Columns spanning `F^p ∩ C^n` (coordinate subspace).
    fn f_cap(&self, p: i64, n: i64) -> Matrix<K> {
        let idx = self.indices(|b| b.filt >= p && b.deg == n);
        let mut m = Matrix::zero(self.basis.len(), idx.len());
        for (t, &i) in idx.iter().enumerate() {
            m[(i, t)] = K::one();
        }
        m
    }

    /// Columns spanning `Z_r^{p,q}` with `n = p + q`.
    fn z_space(&self, p: i64, n: i64, r: i64) -> Matrix<K> {
        let a = self.f_cap(p, n);
        if r == 0 {
            return a;
        }
        let da = &self.d * &a;
        let bad_rows = self.indices(|b| b.filt < p + r);
        let ker = da.select_rows(&bad_rows).kernel_basis();
        &a * &ker
    }
}

/// One bidegree of a page: a subquotient of the ambient complex plus the
/// differential into the cell at `(p + r, q - r + 1)`, written in that
/// cell's coordinates (zero rows when the target cell vanishes).
#[derive(Clone, Debug)]
pub struct PageCell<K> {
    pub space: Subquotient<K>,
    pub d: Matrix<K>,
}

#[derive(Clone, Debug)]
pub struct Page<K> {
    pub r: i64,
    pub cells: BTreeMap<(i64, i64), PageCell<K>>,
}

impl<K: Field> Page<K> {
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.cells.iter().map(|(&k, c)| (k, c.space.dim())).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.cells.values().map(|c| c.space.dim()).sum()
    }

    pub fn differentials_vanish(&self) -> bool {
        self.cells.values().all(|c| c.d.is_zero())
    }

    /// Cell dimensions of the cohomology of this page under its own
    /// differential; equals the dimensions of the next page.
    pub fn homology_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for (&(p, q), cell) in &self.cells {
            let outgoing = cell.d.rank();
            let incoming = self
                .cells
                .get(&(p - self.r, q + self.r - 1))
                .map_or(0, |src| src.d.rank());
            let dim = cell.space.dim() - outgoing - incoming;
            if dim > 0 {
                out.insert((p, q), dim);
            }
        }
        out
    }
}

/// Computes page `r ≥ 0` of the spectral sequence. Page 0 is the associated
/// graded of the filtration.
pub fn page<K: Field>(c: &FilteredComplex<K>, r: i64) -> Result<Page<K>, SpecSeqError> {
    assert!(r >= 0, "page index must be nonnegative");
    let diff_issues = c.differential_issues();
    if !diff_issues.is_empty() {
        return Err(SpecSeqError::InvalidComplex { issues: diff_issues });
    }

    let mut keys: BTreeSet<(i64, i64)> = BTreeSet::new();
    for b in &c.basis {
        keys.insert((b.filt, b.deg - b.filt));
    }

    let mut spaces: BTreeMap<(i64, i64), Subquotient<K>> = BTreeMap::new();
    for &(p, q) in &keys {
        let n = p + q;
        let z = c.z_space(p, n, r);
        let denom = if r == 0 {
            c.f_cap(p + 1, n)
        } else {
            let b1 = c.z_space(p + 1, n, r - 1);
            let b2 = &c.d * &c.z_space(p - r + 1, n - 1, r - 1);
            b1.hstack(&b2)
        };
        let sq = Subquotient::new(&z, &denom)
            .expect("boundaries lie in cycles once the differential validates");
        if sq.dim() > 0 {
            spaces.insert((p, q), sq);
        }
    }

    let mut cells = BTreeMap::new();
    let keys: Vec<(i64, i64)> = spaces.keys().copied().collect();
    for (p, q) in keys {
        let src = &spaces[&(p, q)];
        let target_key = (p + r, q - r + 1);
        let target_dim = spaces.get(&target_key).map_or(0, Subquotient::dim);
        let mut d = Matrix::zero(target_dim, src.dim());
        if target_dim > 0 {
            let target = &spaces[&target_key];
            for i in 0..src.dim() {
                let dx = c.d.mul_vec(&src.rep(i));
                for (row, val) in target.project(&dx).into_iter().enumerate() {
                    d[(row, i)] = val;
                }
            }
        }
        let space = spaces[&(p, q)].clone();
        cells.insert((p, q), PageCell { space, d });
    }
    Ok(Page { r, cells })
}

/// The stable page: differentials vanish from `stabilization_page()` on.
pub fn einfinity<K: Field>(c: &FilteredComplex<K>) -> Result<Page<K>, SpecSeqError> {
    page(c, c.stabilization_page())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    /// True when every scanned differential vanished.
    pub degenerate: bool,
    pub first_nonzero: Option<i64>,
    pub scanned_to: i64,
}

/// Scans `d_r` for `r = 1, 2, ...` up to `r_max` (capped at the
/// stabilization page, beyond which differentials vanish for position
/// reasons) and reports the first nonzero one.
pub fn detect_degeneration<K: Field>(
    c: &FilteredComplex<K>,
    r_max: i64,
) -> Result<DegenerationReport, SpecSeqError> {
    let scan_to = r_max.min(c.stabilization_page());
    for r in 1..=scan_to {
        let pg = page(c, r)?;
        if !pg.differentials_vanish() {
            return Ok(DegenerationReport {
                degenerate: false,
                first_nonzero: Some(r),
                scanned_to: r,
            });
        }
    }
    Ok(DegenerationReport { degenerate: true, first_nonzero: None, scanned_to: scan_to })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalCohomology {
    /// `(p, n) -> dim gr^p H^n`, zero entries omitted.
    pub gr: BTreeMap<(i64, i64), usize>,
    /// `n -> dim H^n`, zero entries omitted.
    pub by_degree: BTreeMap<i64, usize>,
}

/// Cohomology of the total complex with its filtration, computed by plain
/// rank arithmetic (independent of the page machinery):
/// `dim F^p H^n = dim(ker d ∩ F^p ∩ C^n) - dim(im d ∩ F^p ∩ C^n)`.
pub fn total_cohomology<K: Field>(c: &FilteredComplex<K>) -> Result<TotalCohomology, SpecSeqError> {
    let diff_issues = c.differential_issues();
    if !diff_issues.is_empty() {
        return Err(SpecSeqError::InvalidComplex { issues: diff_issues });
    }
    let (min_filt, max_filt) = c.filts();
    let degrees: BTreeSet<i64> = c.basis.iter().map(|b| b.deg).collect();

    let filtered_dim = |p: i64, n: i64| -> usize {
        let cols = c.indices(|b| b.deg == n && b.filt >= p);
        let kernel = cols.len() - c.d.select_columns(&cols).rank();
        let prev = c.indices(|b| b.deg == n - 1);
        let m_prev = c.d.select_columns(&prev);
        let low_rows = c.indices(|b| b.filt < p);
        let constrained = m_prev.select_rows(&low_rows).kernel_basis();
        let image = (&m_prev * &constrained).rank();
        kernel - image
    };

    let mut gr = BTreeMap::new();
    let mut by_degree = BTreeMap::new();
    for &n in &degrees {
        let full = filtered_dim(min_filt, n);
        if full > 0 {
            by_degree.insert(n, full);
        }
        for p in min_filt..=max_filt {
            let step = filtered_dim(p, n) - filtered_dim(p + 1, n);
            if step > 0 {
                gr.insert((p, n), step);
            }
        }
    }
    Ok(TotalCohomology { gr, by_degree })
}

/// Bidegree `(p, q)` of a log class of the given weight and degree under
/// the weight filtration `F^p = span of weight ≤ -p`.
pub fn bigrade_log_class(weight: i64, degree: i64) -> (i64, i64) {
    (-weight, degree + weight)
}

/// A page together with the product induced on it by a filtered product on
/// the complex.
#[derive(Debug)]
pub struct PageProducts<'a, K> {
    complex: &'a FilteredComplex<K>,
    pub page: Page<K>,
}

/// A page class addressed by its `(p, q)` cell and basis index within it.
pub type PageClass = ((i64, i64), usize);

/// Computes page `r` and equips it with the induced product. The complex
/// must carry a product table and validate cleanly.
pub fn page_product<K: Field>(
    c: &FilteredComplex<K>,
    r: i64,
) -> Result<PageProducts<'_, K>, SpecSeqError> {
    if c.mult.is_none() {
        return Err(SpecSeqError::NoProductStructure);
    }
    c.validate().map_err(|issues| SpecSeqError::InvalidComplex { issues })?;
    Ok(PageProducts { page: page(c, r)?, complex: c })
}

impl<K: Field> PageProducts<'_, K> {
    /// Product of class `i` of the cell at `k1` with class `j` of the cell
    /// at `k2`, as coordinates in the cell at `k1 + k2` (empty when that
    /// cell vanishes).
    pub fn product(
        &self,
        k1: (i64, i64),
        i: usize,
        k2: (i64, i64),
        j: usize,
    ) -> ((i64, i64), Vec<K>) {
        let target_key = (k1.0 + k2.0, k1.1 + k2.1);
        let x = self.page.cells[&k1].space.rep(i);
        let y = self.page.cells[&k2].space.rep(j);
        let xy = self.complex.product_dense(&x, &y);
        match self.page.cells.get(&target_key) {
            Some(cell) => (target_key, cell.space.project(&xy)),
            None => (target_key, Vec::new()),
        }
    }

    /// Checks `d_r(xy) = d_r(x) y ± x d_r(y)` on every pair of page classes;
    /// returns the offending `((cell, class), (cell, class))` pairs.
    pub fn leibniz_failures(&self) -> Vec<(PageClass, PageClass)> {
        let r = self.page.r;
        let mut failures = Vec::new();
        let keys: Vec<(i64, i64)> = self.page.cells.keys().copied().collect();
        for &k1 in &keys {
            for &k2 in &keys {
                let c1 = &self.page.cells[&k1];
                let c2 = &self.page.cells[&k2];
                for i in 0..c1.space.dim() {
                    for j in 0..c2.space.dim() {
                        if !self.leibniz_pair(k1, i, k2, j, r) {
                            failures.push(((k1, i), (k2, j)));
                        }
                    }
                }
            }
        }
        failures
    }

    fn leibniz_pair(&self, k1: (i64, i64), i: usize, k2: (i64, i64), j: usize, r: i64) -> bool {
        let shift = |(p, q): (i64, i64)| (p + r, q - r + 1);
        let product_key = (k1.0 + k2.0, k1.1 + k2.1);
        let final_key = shift(product_key);
        let final_dim = self.page.cells.get(&final_key).map_or(0, |c| c.space.dim());
        if final_dim == 0 {
            // all three routes land in a vanishing cell
            return true;
        }

        // left side: d_r of the product class
        let (_, xy) = self.product(k1, i, k2, j);
        let mut lhs = vec![K::zero(); final_dim];
        if !xy.is_empty() {
            let d = &self.page.cells[&product_key].d;
            for (row, out) in lhs.iter_mut().enumerate() {
                for (col, coef) in xy.iter().enumerate() {
                    *out = out.clone() + d[(row, col)].clone() * coef.clone();
                }
            }
        }

        // right side: d_r(x)·y + (-1)^{deg x} x·d_r(y), assembled cell-wise
        let mut rhs = vec![K::zero(); final_dim];
        let dx_key = shift(k1);
        if let Some(dx_cell) = self.page.cells.get(&dx_key) {
            let dx = self.page.cells[&k1].d.column(i);
            for (a, coef) in dx.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (_, term) = self.product(dx_key, a, k2, j);
                debug_assert_eq!((dx_key.0 + k2.0, dx_key.1 + k2.1), final_key);
                let _ = dx_cell;
                for (slot, val) in term.into_iter().enumerate() {
                    rhs[slot] = rhs[slot].clone() + coef.clone() * val;
                }
            }
        }
        let deg_x = k1.0 + k1.1;
        let sign = if deg_x.rem_euclid(2) == 1 { -K::one() } else { K::one() };
        let dy_key = shift(k2);
        if self.page.cells.contains_key(&dy_key) {
            let dy = self.page.cells[&k2].d.column(j);
            for (b, coef) in dy.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (_, term) = self.product(k1, i, dy_key, b);
                for (slot, val) in term.into_iter().enumerate() {
                    rhs[slot] = rhs[slot].clone() + sign.clone() * coef.clone() * val;
                }
            }
        }
        lhs == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use alloc::format;
    use alloc::string::ToString;

    fn rat(n: i64) -> Rat {
        Rat::from_i64(n)
    }

    fn elt(name: &str, deg: i64, filt: i64) -> FilteredElt {
        FilteredElt { name: name.to_string(), deg, filt }
    }

    /// x in degree 0, y = dx one filtration step up.
    fn dx_eq_y() -> FilteredComplex<Rat> {
        let mut d = Matrix::zero(2, 2);
        d[(1, 0)] = rat(1);
        FilteredComplex { basis: vec![elt("x", 0, 0), elt("y", 1, 1)], d, mult: None }
    }

    /// x in filtration 0, a surviving class z in filtration 1, and y = dx
    /// two filtration steps up: the first nonzero differential is d_2.
    fn d2_only() -> FilteredComplex<Rat> {
        let mut d = Matrix::zero(3, 3);
        d[(2, 0)] = rat(1);
        FilteredComplex {
            basis: vec![elt("x", 0, 0), elt("z", 0, 1), elt("y", 1, 2)],
            d,
            mult: None,
        }
    }

    /// Exterior-type DGA on x (odd) and y = dx (even), filtered so that the
    /// differential shifts filtration by one.
    fn exterior_dga() -> FilteredComplex<Rat> {
        let basis = vec![elt("1", 0, 0), elt("x", 1, 0), elt("y", 2, 1), elt("x*y", 3, 1)];
        let mut d = Matrix::zero(4, 4);
        d[(2, 1)] = rat(1); // dx = y
        let mut mult = vec![Vec::new(); 16];
        let set = |mult: &mut Vec<SparseVec<Rat>>, i: usize, j: usize, t: usize, c: i64| {
            mult[i * 4 + j] = vec![(t, rat(c))];
        };
        for i in 0..4 {
            set(&mut mult, 0, i, i, 1);
            if i > 0 {
                set(&mut mult, i, 0, i, 1);
            }
        }
        set(&mut mult, 1, 2, 3, 1); // x·y = xy
        set(&mut mult, 2, 1, 3, 1); // y·x = xy (y is even)
        FilteredComplex { basis, d, mult: Some(mult) }
    }

    #[test]
    fn validation_catches_broken_complexes() {
        let mut c = dx_eq_y();
        c.basis[1].filt = -1;
        let issues = c.validate().unwrap_err();
        assert!(issues.contains(&ComplexIssue::DifferentialLowersFiltration { col: 0 }));

        let mut c = dx_eq_y();
        c.basis[1].deg = 2;
        let issues = c.validate().unwrap_err();
        assert!(issues.contains(&ComplexIssue::DifferentialNotDegreeOne { col: 0 }));

        // d^2 = 0 failure: x -> y -> w
        let mut d = Matrix::zero(3, 3);
        d[(1, 0)] = rat(1);
        d[(2, 1)] = rat(1);
        let c = FilteredComplex {
            basis: vec![elt("x", 0, 0), elt("y", 1, 0), elt("w", 2, 0)],
            d,
            mult: None,
        };
        let issues = c.validate().unwrap_err();
        assert!(issues.contains(&ComplexIssue::DSquaredNonzero { col: 0 }));

        // a product that drops filtration
        let mut c = exterior_dga();
        if let Some(mult) = &mut c.mult {
            mult[2 * 4 + 2] = vec![(1, rat(1))]; // y·y = x: deg and filt both wrong
        }
        let issues = c.validate().unwrap_err();
        assert!(issues.contains(&ComplexIssue::ProductNotFiltered { i: 2, j: 2 }));
        assert!(issues.contains(&ComplexIssue::ProductNotDegreeAdditive { i: 2, j: 2 }));
    }

    #[test]
    fn zero_differential_degenerates() {
        let c = FilteredComplex::<Rat> {
            basis: vec![elt("a", 0, 0), elt("b", 1, 2)],
            d: Matrix::zero(2, 2),
            mult: None,
        };
        assert!(c.validate().is_ok());
        let report = detect_degeneration(&c, 10).unwrap();
        assert!(report.degenerate);
        assert_eq!(report.first_nonzero, None);
        assert_eq!(report.scanned_to, 3); // capped at stabilization page

        let e1 = page(&c, 1).unwrap();
        assert_eq!(e1.total_rank(), 2);
        let h = total_cohomology(&c).unwrap();
        assert_eq!(h.by_degree[&0], 1);
        assert_eq!(h.by_degree[&1], 1);
    }

    #[test]
    fn first_differential_kills_everything() {
        let c = dx_eq_y();
        assert!(c.validate().is_ok());

        let e1 = page(&c, 1).unwrap();
        assert_eq!(e1.dims()[&(0, 0)], 1);
        assert_eq!(e1.dims()[&(1, 0)], 1);
        // d_1: (0,0) -> (1,0) is an isomorphism
        assert!(!e1.differentials_vanish());
        assert_eq!(e1.cells[&(0, 0)].d.rank(), 1);

        let e2 = page(&c, 2).unwrap();
        assert_eq!(e2.total_rank(), 0);

        let report = detect_degeneration(&c, 10).unwrap();
        assert_eq!(report.first_nonzero, Some(1));

        let h = total_cohomology(&c).unwrap();
        assert!(h.by_degree.is_empty());
        assert!(h.gr.is_empty());
    }

    #[test]
    fn differential_first_appears_on_page_two() {
        let c = d2_only();
        assert!(c.validate().is_ok());

        let e1 = page(&c, 1).unwrap();
        assert!(e1.differentials_vanish());
        assert_eq!(e1.total_rank(), 3);

        let e2 = page(&c, 2).unwrap();
        assert!(!e2.differentials_vanish());
        // d_2 goes from (0,0) to (2,-1)
        assert_eq!(e2.cells[&(0, 0)].d.rank(), 1);

        let report = detect_degeneration(&c, 10).unwrap();
        assert_eq!(report.first_nonzero, Some(2));

        // only z survives, in filtration 1
        let h = total_cohomology(&c).unwrap();
        assert_eq!(h.by_degree[&0], 1);
        assert_eq!(h.gr[&(1, 0)], 1);
        let einf = einfinity(&c).unwrap();
        assert_eq!(einf.dims()[&(1, -1)], 1);
        assert_eq!(einf.total_rank(), 1);
    }

    #[test]
    fn page_dimensions_follow_the_homology_recurrence() {
        for c in [dx_eq_y(), d2_only(), exterior_dga()] {
            for r in 0..=c.stabilization_page() {
                let current = page(&c, r).unwrap();
                let next = page(&c, r + 1).unwrap();
                assert_eq!(current.homology_dims(), next.dims(), "page {r}");
            }
        }
    }

    #[test]
    fn einfinity_matches_graded_cohomology() {
        for c in [dx_eq_y(), d2_only(), exterior_dga()] {
            let einf = einfinity(&c).unwrap();
            let h = total_cohomology(&c).unwrap();
            let mut from_page: BTreeMap<(i64, i64), usize> = BTreeMap::new();
            for ((p, q), dim) in einf.dims() {
                from_page.insert((p, p + q), dim);
            }
            assert_eq!(from_page, h.gr);
        }
    }

    #[test]
    fn exterior_dga_pages_and_products() {
        let c = exterior_dga();
        assert!(c.validate().is_ok());

        // E_1 has all four classes; d_1 kills x against y
        let e1 = page_product(&c, 1).unwrap();
        assert_eq!(e1.page.total_rank(), 4);
        let (key, coords) = e1.product((0, 1), 0, (1, 1), 0);
        assert_eq!(key, (1, 2));
        assert_eq!(coords, vec![rat(1)]); // [x]·[y] = [x*y]
        assert!(e1.leibniz_failures().is_empty());

        // E_2 keeps the unit and the top class
        let e2 = page(&c, 2).unwrap();
        assert_eq!(e2.total_rank(), 2);
        assert_eq!(e2.dims()[&(0, 0)], 1);
        assert_eq!(e2.dims()[&(1, 2)], 1);

        let h = total_cohomology(&c).unwrap();
        assert_eq!(h.by_degree[&0], 1);
        assert_eq!(h.by_degree[&3], 1);
        assert_eq!(h.by_degree.get(&1), None);
    }

    #[test]
    fn product_requires_table_and_valid_complex() {
        let c = dx_eq_y();
        assert_eq!(page_product(&c, 1).unwrap_err(), SpecSeqError::NoProductStructure);

        let mut c = exterior_dga();
        c.basis[2].filt = 5; // breaks d's filtration compatibility
        assert!(matches!(
            page_product(&c, 1).unwrap_err(),
            SpecSeqError::InvalidComplex { .. }
        ));
    }

    #[test]
    fn bigrading_of_log_classes() {
        assert_eq!(bigrade_log_class(0, 3), (0, 3));
        assert_eq!(bigrade_log_class(2, 1), (-2, 3));
        assert_eq!(bigrade_log_class(5, -1), (-5, 4));
    }

    mod random_complexes {
        use super::*;
        use proptest::prelude::*;

        /// A complex built from surviving "dots" and acyclic "bars", then
        /// disguised by filtration-respecting changes of basis.
        #[derive(Clone, Debug)]
        struct Recipe {
            dots: Vec<(i64, i64)>,
            bars: Vec<(i64, i64, i64)>, // (deg x, filt x, filt dx - filt x)
            moves: Vec<(usize, usize, i64)>,
        }

        fn build(recipe: &Recipe) -> (FilteredComplex<Rat>, BTreeMap<i64, usize>) {
            let mut basis = Vec::new();
            let mut pairs = Vec::new();
            let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
            for &(deg, filt) in &recipe.dots {
                basis.push(elt(&format!("dot{}", basis.len()), deg, filt));
                *expected.entry(deg).or_insert(0) += 1;
            }
            for &(deg, filt, jump) in &recipe.bars {
                let x = basis.len();
                basis.push(elt(&format!("bar{x}"), deg, filt));
                basis.push(elt(&format!("bar{x}d"), deg + 1, filt + jump));
                pairs.push((x, x + 1));
            }
            let n = basis.len();
            let mut d = Matrix::zero(n, n);
            for (x, y) in pairs {
                d[(y, x)] = rat(1);
            }
            let mut c = FilteredComplex { basis, d, mult: None };
            for &(i, j, scalar) in &recipe.moves {
                let (i, j) = (i % n, j % n);
                if i == j || scalar == 0 {
                    continue;
                }
                let (bi, bj) = (&c.basis[i], &c.basis[j]);
                if bi.deg != bj.deg || bi.filt < bj.filt {
                    continue;
                }
                // new e_j := e_j + scalar * e_i, i.e. d -> T^{-1} d T
                let mut t = Matrix::<Rat>::identity(n);
                t[(i, j)] = rat(scalar);
                let mut t_inv = Matrix::<Rat>::identity(n);
                t_inv[(i, j)] = rat(-scalar);
                c.d = &(&t_inv * &c.d) * &t;
            }
            (c, expected)
        }

        fn recipes() -> impl Strategy<Value = Recipe> {
            let dot = (0i64..3, 0i64..3);
            let bar = (0i64..3, 0i64..3, 0i64..3);
            let mv = (0usize..8, 0usize..8, -2i64..3);
            (
                proptest::collection::vec(dot, 0..3),
                proptest::collection::vec(bar, 1..3),
                proptest::collection::vec(mv, 0..6),
            )
                .prop_map(|(dots, bars, moves)| Recipe { dots, bars, moves })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn disguised_complexes_compute_correctly(recipe in recipes()) {
                let (c, expected) = build(&recipe);
                prop_assert!(c.validate().is_ok());

                // cohomology sees only the dots
                let h = total_cohomology(&c).unwrap();
                prop_assert_eq!(&h.by_degree, &expected);

                // the stable page is the associated graded of cohomology
                let einf = einfinity(&c).unwrap();
                let mut from_page: BTreeMap<(i64, i64), usize> = BTreeMap::new();
                for ((p, q), dim) in einf.dims() {
                    from_page.insert((p, p + q), dim);
                }
                prop_assert_eq!(from_page, h.gr.clone());

                // successive pages are homology of the previous page
                for r in 0..=c.stabilization_page() {
                    let current = page(&c, r).unwrap();
                    let next = page(&c, r + 1).unwrap();
                    prop_assert_eq!(current.homology_dims(), next.dims());
                }
            }
        }
    }
}
