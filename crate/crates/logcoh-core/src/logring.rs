//! The weight-truncated log cohomology ring of a normal-crossings pair.
//!
//! Additively the ring is one copy of the stratum cohomology `H*(S̊_supp v)`
//! for every multiplicity vector `v` with nonempty support stratum. The
//! product is convolution: restrict both factors to the union stratum, cup
//! there, and add the multiplicity vectors. The ring is infinite-rank, so
//! every computation is truncated at a weight bound.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::Field;
use crate::graded::{dense_to_sparse, normalize_sparse, SparseVec};
use crate::matrix::Matrix;
use crate::pair::{support, NcPairData, Subset};
use crate::snf::smith_normal_form;
use crate::specseq::{FilteredComplex, FilteredElt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogError {
    LengthMismatch { expected: usize, found: usize },
    InvalidWeightBound { bound: i64 },
    ValidationRequired,
    RestrictionNotSurjective { stratum: Subset },
}

impl fmt::Display for LogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogError::LengthMismatch { expected, found } => {
                write!(f, "vector has length {found}, expected {expected}")
            }
            LogError::InvalidWeightBound { bound } => {
                write!(f, "weight bound {bound} must be nonnegative")
            }
            LogError::ValidationRequired => {
                write!(f, "pair fails validation; fix the reported issues first")
            }
            LogError::RestrictionNotSurjective { stratum } => {
                write!(f, "restriction to stratum {stratum} is not surjective")
            }
        }
    }
}

/// Weighted winding number `Σ κ_i v_i` of a multiplicity vector.
pub fn weight(v: &[u32], kappa: &[i64]) -> Result<i64, LogError> {
    if v.len() != kappa.len() {
        return Err(LogError::LengthMismatch { expected: kappa.len(), found: v.len() });
    }
    Ok(v.iter().zip(kappa).map(|(&m, &k)| i64::from(m) * k).sum())
}

/// Cohomological degree of a class `α t^v`:
/// `deg α + 2 Σ_i (1 - a_i) v_i` for pole orders `a_i`.
pub fn log_degree(alpha_degree: i64, v: &[u32], pole_orders: &[i64]) -> Result<i64, LogError> {
    if v.len() != pole_orders.len() {
        return Err(LogError::LengthMismatch { expected: pole_orders.len(), found: v.len() });
    }
    Ok(alpha_degree + 2 * v.iter().zip(pole_orders).map(|(&m, &a)| (1 - a) * i64::from(m)).sum::<i64>())
}

fn format_vector(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|m| format!("{m}")).collect();
    format!("({})", parts.join(","))
}

/// One basis class `α t^v` of the truncated ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogBasisElt {
    pub v: Vec<u32>,
    /// Index into the basis of the support stratum's ring.
    pub alpha: usize,
    pub weight: i64,
    pub degree: i64,
    pub name: String,
}

/// The log cohomology ring, truncated to weight at most `w_bound`.
///
/// Basis order is lexicographic in `(weight, v, alpha)`; products are
/// computed on demand from the pair's restriction maps.
#[derive(Clone, Debug)]
pub struct LogRingTruncation<K> {
    pair: NcPairData<K>,
    w_bound: i64,
    basis: Vec<LogBasisElt>,
    piece_offsets: BTreeMap<Vec<u32>, usize>,
}

/// Builds the truncation after validating the pair.
pub fn build_log_ring<K: Field>(
    pair: &NcPairData<K>,
    w_bound: i64,
) -> Result<LogRingTruncation<K>, LogError> {
    if !pair.validate().is_clean() {
        return Err(LogError::ValidationRequired);
    }
    build_log_ring_unchecked(pair, w_bound)
}

/// Builds the truncation without validating. Products on a broken pair can
/// violate ring axioms; this exists so diagnostics like the finite
/// generation check can run on deliberately damaged inputs.
pub fn build_log_ring_unchecked<K: Field>(
    pair: &NcPairData<K>,
    w_bound: i64,
) -> Result<LogRingTruncation<K>, LogError> {
    if w_bound < 0 {
        return Err(LogError::InvalidWeightBound { bound: w_bound });
    }
    let mut vectors: Vec<(i64, Vec<u32>)> = Vec::new();
    for &stratum in pair.strata.keys() {
        enumerate_support_vectors(pair, stratum, w_bound, &mut vectors);
    }
    vectors.sort();

    let mut basis = Vec::new();
    let mut piece_offsets = BTreeMap::new();
    for (w, v) in vectors {
        let ring = &pair.strata[&support(&v)].ring;
        piece_offsets.insert(v.clone(), basis.len());
        for (alpha, b) in ring.basis().iter().enumerate() {
            let degree = log_degree(b.deg, &v, &pair.pole_orders)
                .expect("pole_orders length matches k");
            let name = if w == 0 {
                b.name.clone()
            } else {
                format!("{} t^{}", b.name, format_vector(&v))
            };
            basis.push(LogBasisElt { v: v.clone(), alpha, weight: w, degree, name });
        }
    }
    Ok(LogRingTruncation { pair: pair.clone(), w_bound, basis, piece_offsets })
}

/// All `v` with support exactly `stratum` and weight ≤ `w_bound`.
fn enumerate_support_vectors<K: Field>(
    pair: &NcPairData<K>,
    stratum: Subset,
    w_bound: i64,
    out: &mut Vec<(i64, Vec<u32>)>,
) {
    enumerate_vectors_for(stratum, &pair.kappa, w_bound, pair.k, out);
}

impl<K: Field> LogRingTruncation<K> {
    pub fn pair(&self) -> &NcPairData<K> {
        &self.pair
    }

    pub fn weight_bound(&self) -> i64 {
        self.w_bound
    }

    pub fn basis(&self) -> &[LogBasisElt] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Offset of the piece for multiplicity vector `v` in the global basis.
    pub fn piece_offset(&self, v: &[u32]) -> Option<usize> {
        self.piece_offsets.get(v).copied()
    }

    pub fn piece_dim(&self, v: &[u32]) -> usize {
        match self.pair.strata.get(&support(v)) {
            Some(s) => s.ring.dim(),
            None => 0,
        }
    }

    /// Global index of the unit class `1 t^0`.
    pub fn unit(&self) -> usize {
        let offset = self.piece_offsets[&vec![0u32; self.pair.k]];
        offset + self.pair.strata[&Subset::EMPTY].ring.unit()
    }

    /// Product of two basis classes, as a combination of basis classes.
    /// `None` means the result's weight exceeds the truncation bound and is
    /// not representable; an empty vector is a genuine zero.
    pub fn product(&self, i: usize, j: usize) -> Option<SparseVec<K>> {
        let (x, y) = (&self.basis[i], &self.basis[j]);
        if x.weight + y.weight > self.w_bound {
            return None;
        }
        let v: Vec<u32> = x.v.iter().zip(&y.v).map(|(a, b)| a + b).collect();
        let union = support(&v);
        let Some(target) = self.pair.strata.get(&union) else {
            return Some(Vec::new());
        };
        let ri = self
            .pair
            .restriction(support(&x.v), union)
            .expect("restriction present for nested nonempty strata");
        let rj = self
            .pair
            .restriction(support(&y.v), union)
            .expect("restriction present for nested nonempty strata");
        let a = dense_to_sparse(&ri.column(x.alpha));
        let b = dense_to_sparse(&rj.column(y.alpha));
        let prod = target.ring.product_vec(&a, &b);
        let offset = self.piece_offsets[&v];
        Some(prod.into_iter().map(|(k, c)| (offset + k, c)).collect())
    }

    /// Product of two linear combinations of basis classes.
    pub fn product_vec(&self, x: &[(usize, K)], y: &[(usize, K)]) -> Option<SparseVec<K>> {
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let p = self.product(*i, *j)?;
                let c = a.clone() * b.clone();
                out.extend(p.into_iter().map(|(k, s)| (k, c.clone() * s)));
            }
        }
        Some(normalize_sparse(out))
    }

    /// Dimension of each bigraded piece, keyed by (degree, weight).
    pub fn hilbert_table(&self) -> HilbertTable {
        let mut entries: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for b in &self.basis {
            *entries.entry((b.degree, b.weight)).or_insert(0) += 1;
        }
        HilbertTable { entries }
    }

    /// The truncation as a filtered complex with zero differential:
    /// filtration index is minus the weight, so the filtration is descending
    /// and multiplicative. Products whose weight leaves the truncation are
    /// dropped (they are not representable).
    pub fn to_filtered_complex(&self) -> FilteredComplex<K> {
        let n = self.basis.len();
        let basis: Vec<FilteredElt> = self
            .basis
            .iter()
            .map(|b| FilteredElt { name: b.name.clone(), deg: b.degree, filt: -b.weight })
            .collect();
        let mut mult = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                if let Some(p) = self.product(i, j) {
                    mult[i * n + j] = p;
                }
            }
        }
        FilteredComplex { basis, d: Matrix::zero(n, n), mult: Some(mult) }
    }

    /// Tests whether weight-0 classes plus all primitive classes `α t^{v_I}`
    /// generate every piece of the truncation, piece by piece in weight
    /// order.
    pub fn check_finite_generation(&self) -> FiniteGenerationReport {
        let mut generators: Vec<String> = Vec::new();
        for b in &self.basis {
            if b.weight == 0 || is_primitive(&b.v) {
                generators.push(b.name.clone());
            }
        }

        // Reached subspace per piece, as spanning columns in the stratum
        // ring's coordinates.
        let mut reached: BTreeMap<Vec<u32>, Matrix<K>> = BTreeMap::new();
        let pieces: Vec<Vec<u32>> = self.piece_offsets.keys().cloned().collect();
        let mut by_weight: Vec<(i64, Vec<u32>)> = pieces
            .iter()
            .map(|v| (weight(v, &self.pair.kappa).expect("validated lengths"), v.clone()))
            .collect();
        by_weight.sort();

        let mut first_ungenerated = None;
        for (_, v) in by_weight {
            let dim = self.piece_dim(&v);
            let stratum = support(&v);
            if v.iter().all(|&m| m == 0) || is_primitive(&v) {
                reached.insert(v, Matrix::identity(dim));
                continue;
            }
            let ring = &self.pair.strata[&stratum].ring;
            let mut columns: Vec<Vec<K>> = Vec::new();
            let mut span: Matrix<K> = Matrix::zero(dim, 0);
            let mut rank = 0;
            'outer: for v1 in self.piece_offsets.keys() {
                if v1.iter().all(|&m| m == 0) {
                    continue;
                }
                if !v1.iter().zip(&v).all(|(a, b)| a <= b) {
                    continue;
                }
                let v2: Vec<u32> = v.iter().zip(v1).map(|(a, b)| a - b).collect();
                if v2.iter().all(|&m| m == 0) || *v1 > v2 {
                    continue; // products are symmetric up to sign
                }
                let (Some(u1), Some(u2)) = (reached.get(v1), reached.get(&v2)) else {
                    continue;
                };
                let r1 = self.pair.restriction(support(v1), stratum).expect("nested");
                let r2 = self.pair.restriction(support(&v2), stratum).expect("nested");
                for c1 in 0..u1.cols() {
                    let a = dense_to_sparse(&r1.mul_vec(&u1.column(c1)));
                    for c2 in 0..u2.cols() {
                        let b = dense_to_sparse(&r2.mul_vec(&u2.column(c2)));
                        let p = ring.product_vec(&a, &b);
                        if p.is_empty() {
                            continue;
                        }
                        columns.push(crate::graded::sparse_to_dense(&p, dim));
                        let candidate = Matrix::from_columns(dim, &columns);
                        let r = candidate.rank();
                        if r > rank {
                            rank = r;
                            span = candidate;
                            if rank == dim {
                                break 'outer;
                            }
                        } else {
                            columns.pop();
                        }
                    }
                }
            }
            // Close under multiplication by weight-0 classes (the ideal-like
            // module action of H*(X) through restriction).
            if rank < dim {
                let rx = self.pair.restriction(Subset::EMPTY, stratum).expect("nested");
                let xdim = self.pair.strata[&Subset::EMPTY].ring.dim();
                'closure: for xb in 0..xdim {
                    let a = dense_to_sparse(&rx.column(xb));
                    for c in 0..span.cols() {
                        let b = dense_to_sparse(&span.column(c));
                        let p = ring.product_vec(&a, &b);
                        if p.is_empty() {
                            continue;
                        }
                        columns.push(crate::graded::sparse_to_dense(&p, dim));
                        let candidate = Matrix::from_columns(dim, &columns);
                        let r = candidate.rank();
                        if r > rank {
                            rank = r;
                            span = candidate;
                            if rank == dim {
                                break 'closure;
                            }
                        } else {
                            columns.pop();
                        }
                    }
                }
            }
            if rank < dim && first_ungenerated.is_none() {
                first_ungenerated = Some(v.clone());
            }
            reached.insert(v, span);
        }

        FiniteGenerationReport {
            generated: first_ungenerated.is_none(),
            generators,
            first_ungenerated,
        }
    }
}

fn is_primitive(v: &[u32]) -> bool {
    v.iter().any(|&m| m > 0) && v.iter().all(|&m| m <= 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGenerationReport {
    pub generated: bool,
    pub generators: Vec<String>,
    /// Multiplicity vector of the first piece the generators fail to span.
    pub first_ungenerated: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    /// (degree, weight) -> dimension, zero entries omitted.
    pub entries: BTreeMap<(i64, i64), usize>,
}

impl HilbertTable {
    pub fn dim(&self, degree: i64, weight: i64) -> usize {
        self.entries.get(&(degree, weight)).copied().unwrap_or(0)
    }

    pub fn degree_totals(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(d, _), &n) in &self.entries {
            *out.entry(d).or_insert(0) += n;
        }
        out
    }

    pub fn weights(&self) -> Vec<i64> {
        let mut ws: Vec<i64> = self.entries.keys().map(|&(_, w)| w).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.entries.keys().map(|&(d, _)| d).collect();
        ds.sort();
        ds.dedup();
        ds
    }
}

/// The degree-zero (Stanley-Reisner) part of the log ring, presented by
/// generators and monomial relations. The classical one-generator-per-
/// component form applies only when every stratum is connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SrPresentation {
    /// `k[t_1..t_k]` modulo the monomials `t^{v_I}` over minimal non-faces I.
    Classical { k: usize, minimal_nonfaces: Vec<Subset> },
    /// Disconnected strata: one generator per (stratum, component).
    PerComponent { generators: Vec<(Subset, usize)> },
}

pub fn stanley_reisner<K: Field>(pair: &NcPairData<K>) -> SrPresentation {
    let all_connected = pair.strata.values().all(|s| s.components == 1);
    if !all_connected {
        let mut generators = Vec::new();
        for (&i, s) in &pair.strata {
            if i.is_empty() {
                continue;
            }
            for c in 0..s.components {
                generators.push((i, c));
            }
        }
        return SrPresentation::PerComponent { generators };
    }
    let full = pair.full_set();
    let mut minimal_nonfaces = Vec::new();
    for candidate in full.subsets() {
        if candidate.is_empty() || pair.strata.contains_key(&candidate) {
            continue;
        }
        let minimal = candidate
            .indices()
            .into_iter()
            .all(|i| pair.strata.contains_key(&candidate.without(i)));
        if minimal {
            minimal_nonfaces.push(candidate);
        }
    }
    SrPresentation::Classical { k: pair.k, minimal_nonfaces }
}

/// Weight-indexed dimensions of the Stanley-Reisner part: each valid `v`
/// contributes the component count of its support stratum.
pub fn sr_hilbert<K: Field>(pair: &NcPairData<K>, w_bound: i64) -> BTreeMap<i64, usize> {
    let mut vectors = Vec::new();
    for &stratum in pair.strata.keys() {
        enumerate_support_vectors(pair, stratum, w_bound, &mut vectors);
    }
    let mut out = BTreeMap::new();
    for (w, v) in vectors {
        let comps = pair.strata[&support(&v)].components;
        *out.entry(w).or_insert(0) += comps;
    }
    out
}

/// A class in the finitely generated abelian group `ℤ^k / rowspan(relations)`
/// in canonical coordinates: coordinate `i` lives in `ℤ/moduli[i]`
/// (`moduli[i] = 0` meaning a free `ℤ` coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Class {
    pub coords: Vec<BigInt>,
    pub moduli: Vec<BigInt>,
}

impl H1Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &H1Class) -> H1Class {
        assert_eq!(self.moduli, other.moduli, "classes from different groups");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(&self.moduli)
            .map(|((a, b), m)| reduce_coord(a + b, m))
            .collect();
        H1Class { coords, moduli: self.moduli.clone() }
    }

    pub fn neg(&self) -> H1Class {
        let coords = self
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(a, m)| reduce_coord(-a, m))
            .collect();
        H1Class { coords, moduli: self.moduli.clone() }
    }
}

fn reduce_coord(x: BigInt, modulus: &BigInt) -> BigInt {
    if modulus.is_zero() {
        x
    } else {
        x.mod_floor(modulus)
    }
}

/// Image of `Σ v_i [loop_i]` in the homology group presented by the
/// relation rows, in canonical (Smith normal form) coordinates.
pub fn h1_class(v: &[u32], relations: &[Vec<i64>], k: usize) -> Result<H1Class, LogError> {
    if v.len() != k {
        return Err(LogError::LengthMismatch { expected: k, found: v.len() });
    }
    for row in relations {
        if row.len() != k {
            return Err(LogError::LengthMismatch { expected: k, found: row.len() });
        }
    }
    let m = relations.len();
    let rel = Matrix::from_fn(m, k, |r, c| BigInt::from(relations[r][c]));
    let snf = smith_normal_form(&rel);
    let mut moduli = vec![BigInt::zero(); k];
    for (i, d) in snf.diagonal().into_iter().enumerate() {
        moduli[i] = d.abs();
    }
    // New coordinates z = v · V turn the relation lattice into the diagonal
    // lattice spanned by moduli[i]·e_i.
    let coords: Vec<BigInt> = (0..k)
        .map(|c| {
            let z: BigInt = (0..k).map(|i| BigInt::from(i64::from(v[i])) * &snf.v[(i, c)]).sum();
            reduce_coord(z, &moduli[c])
        })
        .collect();
    Ok(H1Class { coords, moduli })
}

/// The presentation `SR ⊗ H*(X) / (t^{v_I} · ker r_{∅,I})`, available when
/// every restriction out of the complement is surjective.
#[derive(Clone, Debug)]
pub struct TopPresentation<K> {
    pub sr: SrPresentation,
    /// Basis names and degrees of `H*(X)`.
    pub xring_basis: Vec<(String, i64)>,
    /// For each nonempty stratum `I`, a basis of `ker r_{∅,I}` as columns.
    pub kernel_relations: Vec<(Subset, Matrix<K>)>,
    pole_orders: Vec<i64>,
    kappa: Vec<i64>,
    /// Degrees of the X-ring basis, for per-degree dimension counts.
    xdegrees: Vec<i64>,
    /// Valid multiplicity vectors are re-enumerated per weight bound from
    /// the stratum set.
    strata: Vec<Subset>,
    k: usize,
}

pub fn presentation_topological<K: Field>(
    pair: &NcPairData<K>,
) -> Result<TopPresentation<K>, LogError> {
    let xring = &pair.strata[&Subset::EMPTY].ring;
    let mut kernel_relations = Vec::new();
    for (&stratum, s) in &pair.strata {
        if stratum.is_empty() {
            continue;
        }
        let r = pair
            .restriction(Subset::EMPTY, stratum)
            .expect("validated pair has all restrictions");
        if r.rank() != s.ring.dim() {
            return Err(LogError::RestrictionNotSurjective { stratum });
        }
        kernel_relations.push((stratum, r.kernel_basis()));
    }
    Ok(TopPresentation {
        sr: stanley_reisner(pair),
        xring_basis: xring.basis().iter().map(|b| (b.name.clone(), b.deg)).collect(),
        kernel_relations,
        pole_orders: pair.pole_orders.clone(),
        kappa: pair.kappa.clone(),
        xdegrees: xring.basis().iter().map(|b| b.deg).collect(),
        strata: pair.strata.keys().copied().collect(),
        k: pair.k,
    })
}

impl<K: Field> TopPresentation<K> {
    /// Bigraded dimensions of the presented ring up to the weight bound,
    /// computed from the presentation alone: the piece at `v` is `H*(X)`
    /// modulo the span of the kernels for all nonempty `I ⊆ supp v`.
    pub fn hilbert_table(&self, w_bound: i64) -> HilbertTable {
        let mut entries: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        let strata_set: alloc::collections::BTreeSet<Subset> =
            self.strata.iter().copied().collect();
        let xdim = self.xdegrees.len();

        let mut vectors: Vec<(i64, Vec<u32>)> = Vec::new();
        for &stratum in &strata_set {
            enumerate_vectors_for(stratum, &self.kappa, w_bound, self.k, &mut vectors);
        }

        for (w, v) in vectors {
            let supp = support(&v);
            // Stack kernel bases for all nonempty sub-strata of the support.
            let mut stacked: Matrix<K> = Matrix::zero(xdim, 0);
            for (stratum, kernel) in &self.kernel_relations {
                if stratum.is_subset_of(supp) {
                    stacked = stacked.hstack(kernel);
                }
            }
            let shift = 2 * v
                .iter()
                .zip(&self.pole_orders)
                .map(|(&m, &a)| (1 - a) * i64::from(m))
                .sum::<i64>();
            let mut degs: Vec<i64> = self.xdegrees.clone();
            degs.sort();
            degs.dedup();
            for d in degs {
                let rows: Vec<usize> =
                    (0..xdim).filter(|&i| self.xdegrees[i] == d).collect();
                let total = rows.len();
                let killed = stacked.select_rows(&rows).rank();
                let dim = total - killed;
                if dim > 0 {
                    *entries.entry((d + shift, w)).or_insert(0) += dim;
                }
            }
        }
        HilbertTable { entries }
    }
}

fn enumerate_vectors_for(
    stratum: Subset,
    kappa: &[i64],
    w_bound: i64,
    k: usize,
    out: &mut Vec<(i64, Vec<u32>)>,
) {
    let members = stratum.indices();
    let mut v = vec![0u32; k];
    fn rec(
        members: &[usize],
        kappa: &[i64],
        pos: usize,
        budget: i64,
        v: &mut Vec<u32>,
        out: &mut Vec<(i64, Vec<u32>)>,
    ) {
        if pos == members.len() {
            let w: i64 = v.iter().zip(kappa).map(|(&m, &kp)| i64::from(m) * kp).sum();
            out.push((w, v.clone()));
            return;
        }
        let i = members[pos] - 1;
        let mut m = 1u32;
        while i64::from(m) * kappa[i] <= budget {
            v[i] = m;
            rec(members, kappa, pos + 1, budget - i64::from(m) * kappa[i], v, out);
            m += 1;
        }
        v[i] = 0;
    }
    rec(&members, kappa, 0, w_bound, &mut v, out);
}
