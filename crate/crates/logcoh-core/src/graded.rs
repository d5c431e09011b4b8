//! Finite-rank graded-commutative algebras given by structure constants,
//! with builders for exterior algebras, tensor products, and the additive
//! cohomology of circle bundles via the Gysin sequence.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::field::Field;
use crate::matrix::Matrix;
use crate::snf::smith_normal_form;

/// A linear combination of basis elements: `(index, coefficient)` pairs,
/// sorted by index, zero coefficients dropped.
pub type SparseVec<K> = Vec<(usize, K)>;

/// Sorts, merges duplicate indices, and drops zeros.
pub fn normalize_sparse<K: Field>(mut v: SparseVec<K>) -> SparseVec<K> {
    v.sort_by_key(|&(i, _)| i);
    let mut out: SparseVec<K> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = acc.clone() + c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn sparse_add<K: Field>(a: &[(usize, K)], b: &[(usize, K)]) -> SparseVec<K> {
    let mut v: SparseVec<K> = a.to_vec();
    v.extend_from_slice(b);
    normalize_sparse(v)
}

pub fn sparse_scale<K: Field>(c: &K, v: &[(usize, K)]) -> SparseVec<K> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, c.clone() * x.clone())).collect()
}

/// Dense coordinates of a sparse vector in an `n`-dimensional space.
pub fn sparse_to_dense<K: Field>(v: &[(usize, K)], n: usize) -> Vec<K> {
    let mut out = vec![K::zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn dense_to_sparse<K: Field>(v: &[K]) -> SparseVec<K> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElt {
    pub name: String,
    pub deg: i64,
}

/// Graded-commutative algebra of finite rank with an ordered basis and
/// dense structure constants `b_i * b_j = Σ_k c[i][j][k] b_k`.
///
/// Construction does not enforce the algebra axioms; run
/// [`GradedAlgebra::consistency_issues`] to check them (pair validation
/// does). The builders in this module always produce consistent algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra<K> {
    basis: Vec<BasisElt>,
    unit: usize,
    /// Flattened `i * dim + j`.
    mult: Vec<SparseVec<K>>,
}

/// Debug formatting is already the readable report form for issue enums;
/// this macro forwards Display to it.
macro_rules! fmt_display_via_debug {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{:?}", self)
        }
    };
}
pub(crate) use fmt_display_via_debug;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraIssue {
    StructureConstantOutOfRange { i: usize, j: usize },
    UnitOutOfRange,
    UnitDegreeNonzero,
    UnitNotIdentity { on: usize },
    ProductNotDegreeAdditive { i: usize, j: usize },
    NotGradedCommutative { i: usize, j: usize },
    NotAssociative { i: usize, j: usize, k: usize },
}

impl fmt::Display for AlgebraIssue {
    fmt_display_via_debug!();
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    EvenDegreeGenerator { name: String },
    DegreeMismatch { expected: i64, found: i64 },
    NonIntegralEntry,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::EvenDegreeGenerator { name } => {
                write!(f, "exterior generator {name} has even degree")
            }
            AlgebraError::DegreeMismatch { expected, found } => {
                write!(f, "element has degree {found}, expected {expected}")
            }
            AlgebraError::NonIntegralEntry => {
                write!(f, "matrix entry is not an integer; integral mode needs integer entries")
            }
        }
    }
}

impl<K: Field> GradedAlgebra<K> {
    /// Assembles an algebra from parts without checking the axioms.
    /// `table` lists `(i, j, product)`; omitted pairs multiply to zero.
    pub fn from_parts(
        basis: Vec<BasisElt>,
        unit: usize,
        table: Vec<(usize, usize, SparseVec<K>)>,
    ) -> Self {
        let n = basis.len();
        let mut mult = vec![Vec::new(); n * n];
        for (i, j, p) in table {
            assert!(i < n && j < n, "structure constant index out of range");
            mult[i * n + j] = normalize_sparse(p);
        }
        GradedAlgebra { basis, unit, mult }
    }

    /// The ground field as an algebra: one basis element `1` in degree 0.
    pub fn ground_field() -> Self {
        GradedAlgebra::from_parts(
            vec![BasisElt { name: String::from("1"), deg: 0 }],
            0,
            vec![(0, 0, vec![(0, K::one())])],
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElt] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, K)] {
        &self.mult[i * self.basis.len() + j]
    }

    /// Bilinear extension of the basis product.
    pub fn product_vec(&self, x: &[(usize, K)], y: &[(usize, K)]) -> SparseVec<K> {
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let c = a.clone() * b.clone();
                for (k, s) in self.product(*i, *j) {
                    out.push((*k, c.clone() * s.clone()));
                }
            }
        }
        normalize_sparse(out)
    }

    pub fn basis_in_degree(&self, d: i64) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].deg == d)
            .collect()
    }

    pub fn min_degree(&self) -> i64 {
        self.basis.iter().map(|b| b.deg).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i64 {
        self.basis.iter().map(|b| b.deg).max().unwrap_or(0)
    }

    /// Coefficient of `t^d` is the number of basis elements in degree `d`.
    pub fn poincare_polynomial(&self) -> Vec<(i64, usize)> {
        let mut counts: Vec<(i64, usize)> = Vec::new();
        for d in self.min_degree()..=self.max_degree() {
            let n = self.basis_in_degree(d).len();
            if n > 0 {
                counts.push((d, n));
            }
        }
        counts
    }

    /// Matrix of multiplication by `elt` (homogeneous of degree `e`) from
    /// degree `d` to degree `d + e`, in the per-degree basis order.
    pub fn mult_matrix(&self, elt: &[(usize, K)], e: i64, d: i64) -> Matrix<K> {
        let from = self.basis_in_degree(d);
        let to = self.basis_in_degree(d + e);
        let pos: alloc::collections::BTreeMap<usize, usize> =
            to.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut m: Matrix<K> = Matrix::zero(to.len(), from.len());
        for (c, &j) in from.iter().enumerate() {
            for (k, coef) in self.product_vec(elt, &[(j, K::one())]) {
                let r = pos[&k];
                m[(r, c)] = m[(r, c)].clone() + coef;
            }
        }
        m
    }

    /// Every violated algebra axiom. Empty output means the structure
    /// constants really do define a unital graded-commutative associative
    /// algebra.
    pub fn consistency_issues(&self) -> Vec<AlgebraIssue> {
        let n = self.basis.len();
        let mut issues = Vec::new();
        if self.unit >= n {
            issues.push(AlgebraIssue::UnitOutOfRange);
            return issues;
        }
        for i in 0..n {
            for j in 0..n {
                if self.product(i, j).iter().any(|&(k, _)| k >= n) {
                    issues.push(AlgebraIssue::StructureConstantOutOfRange { i, j });
                }
            }
        }
        if !issues.is_empty() {
            return issues;
        }
        if self.basis[self.unit].deg != 0 {
            issues.push(AlgebraIssue::UnitDegreeNonzero);
        }
        let e = self.unit;
        for i in 0..n {
            let one_i = vec![(i, K::one())];
            if self.product(e, i) != one_i || self.product(i, e) != one_i {
                issues.push(AlgebraIssue::UnitNotIdentity { on: i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let d = self.basis[i].deg + self.basis[j].deg;
                if self.product(i, j).iter().any(|&(k, _)| self.basis[k].deg != d) {
                    issues.push(AlgebraIssue::ProductNotDegreeAdditive { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let sign = if self.basis[i].deg % 2 != 0 && self.basis[j].deg % 2 != 0 {
                    -K::one()
                } else {
                    K::one()
                };
                let flipped = sparse_scale(&sign, self.product(j, i));
                if self.product(i, j) != flipped.as_slice() {
                    issues.push(AlgebraIssue::NotGradedCommutative { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j).to_vec();
                for k in 0..n {
                    let left = self.product_vec(&ij, &[(k, K::one())]);
                    let right = self.product_vec(&[(i, K::one())], self.product(j, k));
                    if left != right {
                        issues.push(AlgebraIssue::NotAssociative { i, j, k });
                    }
                }
            }
        }
        issues
    }
}

/// Exterior algebra on odd-degree generators. Basis is indexed by subsets,
/// ordered by (size, lexicographic); the empty product is named `1`.
pub fn exterior_algebra<K: Field>(
    generators: &[(&str, i64)],
) -> Result<GradedAlgebra<K>, AlgebraError> {
    for (name, deg) in generators {
        if deg % 2 == 0 {
            return Err(AlgebraError::EvenDegreeGenerator { name: String::from(*name) });
        }
    }
    let n = generators.len();
    let mut subsets: Vec<u32> = (0u32..1 << n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let index_of: alloc::collections::BTreeMap<u32, usize> =
        subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    let basis: Vec<BasisElt> = subsets
        .iter()
        .map(|&s| {
            let members: Vec<&str> = (0..n).filter(|g| s >> g & 1 == 1).map(|g| generators[g].0).collect();
            BasisElt {
                name: if members.is_empty() {
                    String::from("1")
                } else {
                    members.join("*")
                },
                deg: (0..n).filter(|g| s >> g & 1 == 1).map(|g| generators[g].1).sum(),
            }
        })
        .collect();

    let mut table = Vec::new();
    for (i, &s) in subsets.iter().enumerate() {
        for (j, &t) in subsets.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            // Sign from moving each generator of t past the later generators
            // of s; all degrees are odd, so each crossing contributes -1.
            let mut crossings = 0u32;
            for g in 0..n {
                if t >> g & 1 == 1 {
                    crossings += (s >> (g + 1)).count_ones();
                }
            }
            let coef = if crossings.is_multiple_of(2) { K::one() } else { -K::one() };
            table.push((i, j, vec![(index_of[&(s | t)], coef)]));
        }
    }
    Ok(GradedAlgebra::from_parts(basis, 0, table))
}

/// Tensor product with the Koszul sign rule
/// `(a ⊗ b)(a' ⊗ b') = (-1)^{deg b · deg a'} (aa' ⊗ bb')`.
/// Basis pairs are ordered lexicographically; names collapse across units,
/// so `x ⊗ 1` is just `x`.
pub fn tensor_product<K: Field>(
    a: &GradedAlgebra<K>,
    b: &GradedAlgebra<K>,
) -> GradedAlgebra<K> {
    let (na, nb) = (a.dim(), b.dim());
    let pair_name = |ia: usize, ib: usize| -> String {
        let (an, bn) = (&a.basis()[ia].name, &b.basis()[ib].name);
        match (ia == a.unit(), ib == b.unit()) {
            (true, true) => String::from("1"),
            (false, true) => an.clone(),
            (true, false) => bn.clone(),
            (false, false) => format!("{an}*{bn}"),
        }
    };
    let basis: Vec<BasisElt> = (0..na * nb)
        .map(|i| {
            let (ia, ib) = (i / nb, i % nb);
            BasisElt {
                name: pair_name(ia, ib),
                deg: a.basis()[ia].deg + b.basis()[ib].deg,
            }
        })
        .collect();
    let mut table = Vec::new();
    for ia in 0..na {
        for ib in 0..nb {
            for ja in 0..na {
                for jb in 0..nb {
                    let sign_odd = b.basis()[ib].deg % 2 != 0 && a.basis()[ja].deg % 2 != 0;
                    let mut prod = Vec::new();
                    for (ka, ca) in a.product(ia, ja) {
                        for (kb, cb) in b.product(ib, jb) {
                            let mut c = ca.clone() * cb.clone();
                            if sign_odd {
                                c = -c;
                            }
                            prod.push((ka * nb + kb, c));
                        }
                    }
                    if !prod.is_empty() {
                        table.push((ia * nb + ib, ja * nb + jb, prod));
                    }
                }
            }
        }
    }
    GradedAlgebra::from_parts(basis, a.unit() * nb + b.unit(), table)
}

/// Whether torsion should be computed (treating the structure constants as
/// integers) or ignored (plain field coefficients).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GysinCoefficients {
    Field,
    Integral,
}

/// One degree of circle-bundle cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinPiece {
    pub degree: i64,
    pub rank: usize,
    /// Invariant factors of the torsion subgroup (empty over a field).
    pub torsion: Vec<BigInt>,
}

/// Additive cohomology of the circle bundle with the given Euler class,
/// from the Gysin sequence:
/// `rank H^k(S) = rank coker(∪e: H^{k-2} → H^k) + rank ker(∪e: H^{k-1} → H^{k+1})`,
/// with torsion of `H^k` the torsion of that cokernel in integral mode.
pub fn gysin_circle_bundle<K: Field>(
    base: &GradedAlgebra<K>,
    euler: &[(usize, K)],
    coefficients: GysinCoefficients,
) -> Result<Vec<GysinPiece>, AlgebraError> {
    for &(i, _) in euler {
        let d = base.basis()[i].deg;
        if d != 2 {
            return Err(AlgebraError::DegreeMismatch { expected: 2, found: d });
        }
    }
    let mut out = Vec::new();
    for degree in base.min_degree()..=base.max_degree() + 1 {
        let into = base.mult_matrix(euler, 2, degree - 2);
        let outof = base.mult_matrix(euler, 2, degree - 1);
        let rank = (into.rows() - into.rank()) + (outof.cols() - outof.rank());
        let torsion = match coefficients {
            GysinCoefficients::Field => Vec::new(),
            GysinCoefficients::Integral => {
                let lifted = lift_integral(&into)?;
                smith_normal_form(&lifted).torsion_factors()
            }
        };
        if rank > 0 || !torsion.is_empty() {
            out.push(GysinPiece { degree, rank, torsion });
        }
    }
    Ok(out)
}

fn lift_integral<K: Field>(m: &Matrix<K>) -> Result<Matrix<BigInt>, AlgebraError> {
    let mut out = Matrix::zero(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out[(r, c)] = m[(r, c)].try_to_bigint().ok_or(AlgebraError::NonIntegralEntry)?;
        }
    }
    Ok(out)
}

/// A linear map between graded algebras: column `j` of `matrix` holds the
/// coordinates of the image of the `j`-th source basis element.
#[derive(Clone, Debug)]
pub struct AlgebraMap<'a, K> {
    pub source: &'a GradedAlgebra<K>,
    pub target: &'a GradedAlgebra<K>,
    pub matrix: &'a Matrix<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapIssue {
    WrongShape,
    NotUnital,
    NotMultiplicative { i: usize, j: usize },
    NotDegreePreserving { on: usize },
}

impl fmt::Display for MapIssue {
    fmt_display_via_debug!();
}

impl<'a, K: Field> AlgebraMap<'a, K> {
    pub fn apply(&self, v: &[(usize, K)]) -> SparseVec<K> {
        let mut out = Vec::new();
        for (j, c) in v {
            for r in 0..self.matrix.rows() {
                let m = self.matrix[(r, *j)].clone();
                if !m.is_zero() {
                    out.push((r, c.clone() * m));
                }
            }
        }
        normalize_sparse(out)
    }

    /// Violations of unitality, multiplicativity, and degree preservation.
    pub fn issues(&self) -> Vec<MapIssue> {
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return vec![MapIssue::WrongShape];
        }
        let mut issues = Vec::new();
        let unit_image = self.apply(&[(self.source.unit(), K::one())]);
        if unit_image != vec![(self.target.unit(), K::one())] {
            issues.push(MapIssue::NotUnital);
        }
        for j in 0..self.source.dim() {
            let d = self.source.basis()[j].deg;
            let col_ok = (0..self.target.dim())
                .all(|r| self.matrix[(r, j)].is_zero() || self.target.basis()[r].deg == d);
            if !col_ok {
                issues.push(MapIssue::NotDegreePreserving { on: j });
            }
        }
        for i in 0..self.source.dim() {
            for j in 0..self.source.dim() {
                let lhs = self.apply(self.source.product(i, j));
                let rhs = self.target.product_vec(
                    &self.apply(&[(i, K::one())]),
                    &self.apply(&[(j, K::one())]),
                );
                if lhs != rhs {
                    issues.push(MapIssue::NotMultiplicative { i, j });
                }
            }
        }
        issues
    }
}

/// True iff the map is unital and multiplicative on all basis pairs.
pub fn verify_algebra_map<K: Field>(f: &AlgebraMap<'_, K>) -> bool {
    f.issues()
        .iter()
        .all(|i| matches!(i, MapIssue::NotDegreePreserving { .. }))
}
