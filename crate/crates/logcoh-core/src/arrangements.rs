//! Hyperplane arrangements: Orlik-Solomon algebras, generic-arrangement
//! pair builders, and the Jacobian-ring side of the mirror comparison.
//!
//! The builders produce fully explicit [`NcPairData`] for a projective space
//! minus `k` generic hyperplanes. Every stratum ring is presented in a chart
//! adapted to the stratum: the generator for index `x` is the class of
//! `d log(φ_x / φ_c)` where `c` is the largest index outside the stratum, so
//! restriction maps are difference-of-singleton substitutions and functorial
//! on the nose.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::field::{Field, Rat};
use crate::graded::{
    dense_to_sparse, exterior_algebra, sparse_add, sparse_scale, sparse_to_dense, BasisElt,
    GradedAlgebra, SparseVec,
};
use crate::logring::{
    presentation_topological, sr_hilbert, stanley_reisner, LogError, SrPresentation,
    TopPresentation,
};
use crate::matrix::{Matrix, Subquotient};
use crate::pair::{NcPairData, PairFlags, Stratum, Subset};

/// Hyperplanes through the origin of a linear space, or hyperplanes of a
/// projective space (same forms, different emptiness semantics).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrangementMode {
    Central,
    Projective,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    /// One linear form per hyperplane, as coefficient vectors of equal length.
    pub forms: Vec<Vec<Rat>>,
    pub mode: ArrangementMode,
}

impl Arrangement {
    pub fn central(forms: Vec<Vec<Rat>>) -> Self {
        Arrangement { forms, mode: ArrangementMode::Central }
    }

    pub fn projective(forms: Vec<Vec<Rat>>) -> Self {
        Arrangement { forms, mode: ArrangementMode::Projective }
    }

    pub fn hyperplanes(&self) -> usize {
        self.forms.len()
    }

    pub fn variables(&self) -> usize {
        self.forms.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<(), ArrangementError> {
        if self.forms.is_empty() {
            return Err(ArrangementError::EmptyArrangement);
        }
        let vars = self.variables();
        for (i, f) in self.forms.iter().enumerate() {
            if f.len() != vars {
                return Err(ArrangementError::RaggedForms { expected: vars, found: f.len() });
            }
            if f.iter().all(Zero::is_zero) {
                return Err(ArrangementError::ZeroForm { hyperplane: i + 1 });
            }
        }
        if self.forms.len() > MAX_HYPERPLANES {
            return Err(ArrangementError::TooManyHyperplanes { count: self.forms.len() });
        }
        Ok(())
    }
}

/// Subset enumeration is exponential in the hyperplane count; this is far
/// beyond every shipped example.
const MAX_HYPERPLANES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrangementError {
    EmptyArrangement,
    RaggedForms { expected: usize, found: usize },
    ZeroForm { hyperplane: usize },
    TooManyHyperplanes { count: usize },
    ExpectedCentral,
    ExpectedProjective,
    InvalidParameters { reason: String },
    WeightBoundTooSmall { bound: i64 },
    Presentation(LogError),
}

impl fmt::Display for ArrangementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementError::EmptyArrangement => write!(f, "arrangement has no hyperplanes"),
            ArrangementError::RaggedForms { expected, found } => {
                write!(f, "form has {found} coefficients, expected {expected}")
            }
            ArrangementError::ZeroForm { hyperplane } => {
                write!(f, "hyperplane {hyperplane} has the zero form")
            }
            ArrangementError::TooManyHyperplanes { count } => {
                write!(f, "{count} hyperplanes exceed the supported maximum {MAX_HYPERPLANES}")
            }
            ArrangementError::ExpectedCentral => write!(f, "operation needs a central arrangement"),
            ArrangementError::ExpectedProjective => {
                write!(f, "operation needs a projective arrangement")
            }
            ArrangementError::InvalidParameters { reason } => write!(f, "{reason}"),
            ArrangementError::WeightBoundTooSmall { bound } => {
                write!(f, "weight bound {bound} must be at least 1")
            }
            ArrangementError::Presentation(e) => write!(f, "presentation failed: {e}"),
        }
    }
}

/// One flat of the intersection lattice: the rank of its defining forms and
/// whether the intersection is empty in the arrangement's semantics (never
/// for central arrangements; for projective ones exactly when the forms have
/// full rank).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flat {
    pub rank: usize,
    pub empty: bool,
}

#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    /// Every nonempty subset of hyperplanes.
    pub flats: BTreeMap<Subset, Flat>,
}

fn subset_rank(a: &Arrangement, mask: u32) -> usize {
    let rows: Vec<Vec<Rat>> = (0..a.forms.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| a.forms[i].clone())
        .collect();
    if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows).rank()
    }
}

pub fn intersection_lattice(a: &Arrangement) -> Result<IntersectionLattice, ArrangementError> {
    a.validate()?;
    let k = a.hyperplanes();
    let vars = a.variables();
    let mut flats = BTreeMap::new();
    for mask in 1u32..1 << k {
        let rank = subset_rank(a, mask);
        let empty = a.mode == ArrangementMode::Projective && rank == vars;
        flats.insert(Subset::from_bits(mask), Flat { rank, empty });
    }
    Ok(IntersectionLattice { flats })
}

/// The Orlik-Solomon algebra together with the degree-lowering derivation
/// `δ` sending each generator to 1. The complement cohomology of the
/// projectivized arrangement is the kernel subalgebra of `δ`.
#[derive(Clone, Debug)]
pub struct OsAlgebra<K> {
    pub algebra: GradedAlgebra<K>,
    /// Matrix of `δ` on the algebra basis.
    pub delta: Matrix<K>,
}

/// Basis masks of an exterior algebra in its documented order
/// (size, then lexicographic), with the index lookup.
fn exterior_masks(k: usize) -> (Vec<u32>, BTreeMap<u32, usize>) {
    let mut masks: Vec<u32> = (0u32..1 << k).collect();
    masks.sort_by_key(|s| (s.count_ones(), *s));
    let index_of = masks.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    (masks, index_of)
}

/// `δ` of one exterior monomial: alternating sum over dropped factors.
fn delta_monomial<K: Field>(mask: u32, index_of: &BTreeMap<u32, usize>) -> SparseVec<K> {
    let mut out = Vec::new();
    let mut sign = K::one();
    for g in 0..32 {
        if mask >> g & 1 == 1 {
            out.push((index_of[&(mask & !(1 << g))], sign.clone()));
            sign = -sign;
        }
    }
    out
}

/// Orlik-Solomon algebra of a central arrangement: the exterior algebra on
/// one degree-1 generator per hyperplane, modulo `δ` of every dependent
/// subset of forms.
pub fn orlik_solomon<K: Field>(a: &Arrangement) -> Result<OsAlgebra<K>, ArrangementError> {
    a.validate()?;
    if a.mode != ArrangementMode::Central {
        return Err(ArrangementError::ExpectedCentral);
    }
    let k = a.hyperplanes();
    let names: Vec<String> = (1..=k).map(|i| format!("b{i}")).collect();
    let gens: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), 1)).collect();
    let lambda = exterior_algebra::<K>(&gens).expect("degree-1 generators are odd");
    let (masks, index_of) = exterior_masks(k);
    let dim = lambda.dim();

    let mut ideal_columns: Vec<Vec<K>> = Vec::new();
    for &dep in &masks {
        if subset_rank(a, dep) >= dep.count_ones() as usize {
            continue;
        }
        let gen = delta_monomial::<K>(dep, &index_of);
        for t in 0..dim {
            let product = lambda.product_vec(&[(t, K::one())], &gen);
            if !product.is_empty() {
                ideal_columns.push(sparse_to_dense(&product, dim));
            }
        }
    }
    let ideal = Matrix::from_columns(dim, &ideal_columns);
    let quotient = Subquotient::new(&Matrix::identity(dim), &ideal)
        .expect("every subspace sits inside the full space");

    // With the identity as numerator the representatives are standard basis
    // vectors, i.e. surviving monomials.
    let rep_monomials: Vec<usize> = (0..quotient.dim())
        .map(|i| {
            let col = quotient.rep(i);
            let mut hits = col.iter().enumerate().filter(|(_, c)| !c.is_zero());
            let (index, value) = hits.next().expect("representative is nonzero");
            assert!(value.clone() == K::one() && hits.next().is_none());
            index
        })
        .collect();

    let basis: Vec<BasisElt> = rep_monomials.iter().map(|&m| lambda.basis()[m].clone()).collect();
    let unit = rep_monomials
        .iter()
        .position(|&m| m == lambda.unit())
        .expect("the unit monomial is never in the graded ideal");
    let mut table = Vec::new();
    for (i, &mi) in rep_monomials.iter().enumerate() {
        for (j, &mj) in rep_monomials.iter().enumerate() {
            let product = lambda.product(mi, mj);
            if product.is_empty() {
                continue;
            }
            let projected = quotient.project(&sparse_to_dense(product, dim));
            let sparse = dense_to_sparse(&projected);
            if !sparse.is_empty() {
                table.push((i, j, sparse));
            }
        }
    }
    let algebra = GradedAlgebra::from_parts(basis, unit, table);

    let delta_columns: Vec<Vec<K>> = rep_monomials
        .iter()
        .map(|&m| {
            let image = delta_monomial::<K>(masks[m], &index_of);
            quotient.project(&sparse_to_dense(&image, dim))
        })
        .collect();
    let delta = Matrix::from_columns(quotient.dim(), &delta_columns);
    Ok(OsAlgebra { algebra, delta })
}

fn combination_name<K: Field>(alg: &GradedAlgebra<K>, v: &[K]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = &alg.basis()[i].name;
        if c.clone() == K::one() {
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(name);
        } else if c.clone() == -K::one() {
            out.push('-');
            out.push_str(name);
        } else {
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&format!("{c}*{name}"));
        }
    }
    out
}

/// Cohomology of the complement of a projective arrangement: the kernel of
/// `δ` inside the Orlik-Solomon algebra of the same forms read centrally
/// (the affine cone), with the induced products.
pub fn projective_complement<K: Field>(
    a: &Arrangement,
) -> Result<GradedAlgebra<K>, ArrangementError> {
    if a.mode != ArrangementMode::Projective {
        return Err(ArrangementError::ExpectedProjective);
    }
    let os = orlik_solomon::<K>(&Arrangement::central(a.forms.clone()))?;
    let kernel = os.delta.kernel_basis();
    let dim = os.algebra.dim();

    let basis: Vec<BasisElt> = (0..kernel.cols())
        .map(|j| {
            let col = kernel.column(j);
            let deg = col
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .map(|(i, _)| os.algebra.basis()[i].deg)
                .expect("kernel basis vector is nonzero");
            debug_assert!(col
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || os.algebra.basis()[i].deg == deg));
            BasisElt { name: combination_name(&os.algebra, &col), deg }
        })
        .collect();
    let unit_vec = sparse_to_dense(&[(os.algebra.unit(), K::one())], dim);
    let unit = (0..kernel.cols())
        .position(|j| kernel.column(j) == unit_vec)
        .expect("the unit survives in the kernel of delta");

    let mut table = Vec::new();
    for i in 0..kernel.cols() {
        for j in 0..kernel.cols() {
            let product = os.algebra.product_vec(
                &dense_to_sparse(&kernel.column(i)),
                &dense_to_sparse(&kernel.column(j)),
            );
            if product.is_empty() {
                continue;
            }
            let rhs = Matrix::from_columns(dim, &[sparse_to_dense(&product, dim)]);
            let coords = kernel
                .solve_columns(&rhs)
                .expect("delta is a derivation, so its kernel is closed under products");
            let sparse = dense_to_sparse(&coords.column(0));
            if !sparse.is_empty() {
                table.push((i, j, sparse));
            }
        }
    }
    Ok(GradedAlgebra::from_parts(basis, unit, table))
}

/// Crossing parity of merging two ascending odd-generator monomials.
fn merge_sign<K: Field>(s: u32, t: u32) -> K {
    let mut crossings = 0u32;
    let mut rest = t;
    while rest != 0 {
        let g = rest.trailing_zeros();
        crossings += (s >> (g + 1)).count_ones();
        rest &= rest - 1;
    }
    if crossings.is_multiple_of(2) {
        K::one()
    } else {
        -K::one()
    }
}

/// A stratum ring of the generic model in its adapted chart: squarefree
/// monomials on the indices other than the chart index, with at most
/// `g_bound` factors outside the stratum.
struct ChartRing<K> {
    alg: GradedAlgebra<K>,
    /// Basis position of each monomial mask (bit `x-1` for index `x`).
    index_of: BTreeMap<u32, usize>,
    masks: Vec<u32>,
    chart: usize,
}

enum StratumModel<K> {
    Chart(ChartRing<K>),
    /// The intersection of all hyperplanes when `k <= n`: a torus bundle
    /// over projective space, with `k-1` circle differences and one
    /// sphere-like top class.
    Full { alg: GradedAlgebra<K> },
}

impl<K: Field> StratumModel<K> {
    fn algebra(&self) -> &GradedAlgebra<K> {
        match self {
            StratumModel::Chart(c) => &c.alg,
            StratumModel::Full { alg } => alg,
        }
    }

    /// The class of `d log(φ_x / φ_chart)` in this ring, when the target's
    /// chart convention makes it a single generator; zero when `x` is the
    /// target chart index or the generator is truncated away.
    fn singleton_class(&self, x: usize, k: usize) -> SparseVec<K> {
        match self {
            StratumModel::Chart(c) => {
                if x == c.chart {
                    Vec::new()
                } else {
                    c.index_of
                        .get(&(1 << (x - 1)))
                        .map_or_else(Vec::new, |&i| vec![(i, K::one())])
                }
            }
            StratumModel::Full { alg } => {
                if x == k {
                    Vec::new()
                } else {
                    let i = alg.find(&format!("f{x}")).expect("difference generator exists");
                    vec![(i, K::one())]
                }
            }
        }
    }
}

fn chart_ring<K: Field>(k: usize, members: Subset, chart: usize, g_bound: usize) -> ChartRing<K> {
    let member_bits = members.bits();
    let chart_bit = 1u32 << (chart - 1);
    let mut masks: Vec<u32> = (0u32..1 << k)
        .filter(|m| m & chart_bit == 0 && (m & !member_bits).count_ones() as usize <= g_bound)
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let index_of: BTreeMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let label = |x: usize| -> String {
        if members.contains(x) {
            format!("e{x}")
        } else {
            format!("g{x}")
        }
    };
    let basis: Vec<BasisElt> = masks
        .iter()
        .map(|&m| {
            let factors: Vec<String> =
                (1..=k).filter(|&x| m >> (x - 1) & 1 == 1).map(&label).collect();
            BasisElt {
                name: if factors.is_empty() { "1".to_string() } else { factors.join("*") },
                deg: m.count_ones() as i64,
            }
        })
        .collect();

    let mut table = Vec::new();
    for (i, &mi) in masks.iter().enumerate() {
        for (j, &mj) in masks.iter().enumerate() {
            if mi & mj != 0 {
                continue;
            }
            let union = mi | mj;
            let Some(&target) = index_of.get(&union) else {
                continue;
            };
            table.push((i, j, vec![(target, merge_sign::<K>(mi, mj))]));
        }
    }
    ChartRing { alg: GradedAlgebra::from_parts(basis, 0, table), index_of, masks, chart }
}

/// Largest index outside the stratum; the chart hyperplane used to
/// trivialize the normal circles over it.
fn chart_index(members: Subset, k: usize) -> Option<usize> {
    (1..=k).rev().find(|&x| !members.contains(x))
}

fn full_stratum_ring<K: Field>(n: usize, k: usize) -> GradedAlgebra<K> {
    let mut names: Vec<String> = (1..k).map(|j| format!("f{j}")).collect();
    names.push("s".to_string());
    let top_degree = 2 * (n - k) as i64 + 1;
    let gens: Vec<(&str, i64)> = names
        .iter()
        .enumerate()
        .map(|(i, name)| (name.as_str(), if i + 1 == names.len() { top_degree } else { 1 }))
        .collect();
    exterior_algebra::<K>(&gens).expect("odd generator degrees")
}

/// Image of one source basis monomial under restriction: the product of the
/// images of its ascending factors, each a difference of singleton classes.
fn restrict_monomial<K: Field>(
    mask: u32,
    source_chart: usize,
    target: &StratumModel<K>,
    k: usize,
) -> SparseVec<K> {
    let alg = target.algebra();
    let chart_class = target.singleton_class(source_chart, k);
    let mut image: SparseVec<K> = vec![(alg.unit(), K::one())];
    for x in 1..=k {
        if mask >> (x - 1) & 1 == 0 {
            continue;
        }
        let factor = sparse_add(
            &target.singleton_class(x, k),
            &sparse_scale(&-K::one(), &chart_class),
        );
        image = alg.product_vec(&image, &factor);
        if image.is_empty() {
            return image;
        }
    }
    image
}

/// The pair `(P^n, k generic hyperplanes)` with every stratum ring and
/// restriction map explicit. Strata are exactly the subsets of size at most
/// `n`; all multiplicities and pole orders are 1.
pub fn build_generic_pair<K: Field>(n: usize, k: usize) -> Result<NcPairData<K>, ArrangementError> {
    if n == 0 || k == 0 {
        return Err(ArrangementError::InvalidParameters {
            reason: format!("need positive dimension and hyperplane count, got ({n}, {k})"),
        });
    }
    if k > MAX_HYPERPLANES {
        return Err(ArrangementError::TooManyHyperplanes { count: k });
    }

    let mut models: BTreeMap<Subset, StratumModel<K>> = BTreeMap::new();
    for bits in 0u32..1 << k {
        let members = Subset::from_bits(bits);
        if members.len() > n {
            continue;
        }
        let model = match chart_index(members, k) {
            Some(chart) => {
                StratumModel::Chart(chart_ring(k, members, chart, n - members.len()))
            }
            None => StratumModel::Full { alg: full_stratum_ring(n, k) },
        };
        models.insert(members, model);
    }

    let mut restrictions = BTreeMap::new();
    let subsets: Vec<Subset> = models.keys().copied().collect();
    for &from in &subsets {
        for &to in &subsets {
            if from == to || !from.is_subset_of(to) {
                continue;
            }
            let StratumModel::Chart(source) = &models[&from] else {
                unreachable!("the full stratum has no proper superset");
            };
            let target = &models[&to];
            let columns: Vec<Vec<K>> = source
                .masks
                .iter()
                .map(|&m| {
                    sparse_to_dense(
                        &restrict_monomial(m, source.chart, target, k),
                        target.algebra().dim(),
                    )
                })
                .collect();
            restrictions.insert((from, to), Matrix::from_columns(target.algebra().dim(), &columns));
        }
    }

    let strata = models
        .into_iter()
        .map(|(s, model)| {
            let ring = match model {
                StratumModel::Chart(c) => c.alg,
                StratumModel::Full { alg } => alg,
            };
            (s, Stratum { components: 1, ring })
        })
        .collect();

    Ok(NcPairData {
        k,
        dim: n,
        kappa: vec![1; k],
        pole_orders: vec![1; k],
        strata,
        restrictions,
        flags: PairFlags {
            fano: Some(true),
            anticanonical: Some(k == n + 1),
            pi2_omega_zero: Some(false),
            same_line_bundle: Some(vec![1; k]),
            gw_vanishing: None,
            effective_classes: vec![vec![1; k]],
        },
        h1_relations: Some(vec![vec![1; k]]),
    })
}

/// Kernel of the restriction from the complement ring to a stratum ring of
/// the generic model, computed two ways: by linear algebra on the built
/// matrix, and as the span of chart-adapted monomials with too many factors
/// outside the stratum.
#[derive(Clone, Debug)]
pub struct RestrictionKernel {
    /// Basis columns from the built restriction matrix.
    pub kernel: Matrix<Rat>,
    /// Spanning columns from the combinatorial description.
    pub combinatorial: Matrix<Rat>,
    /// The two spans coincide.
    pub agree: bool,
}

pub fn restriction_kernel(
    n: usize,
    k: usize,
    stratum: Subset,
) -> Result<RestrictionKernel, ArrangementError> {
    if stratum.len() > n || stratum.indices().last().is_some_and(|&x| x > k) {
        return Err(ArrangementError::InvalidParameters {
            reason: format!("stratum {stratum} is not a nonempty-intersection subset of (P^{n}, {k})"),
        });
    }
    let pair = build_generic_pair::<Rat>(n, k)?;
    let xring = &pair.strata[&Subset::EMPTY].ring;
    let dim = xring.dim();
    if stratum.is_empty() {
        let empty = Matrix::zero(dim, 0);
        return Ok(RestrictionKernel { kernel: empty.clone(), combinatorial: empty, agree: true });
    }
    let kernel = pair
        .restriction(Subset::EMPTY, stratum)
        .expect("built pair has all restrictions")
        .kernel_basis();

    // Chart-adapted spanning set: rewrite the complement ring in generators
    // relative to the stratum's chart; a monomial restricts to zero exactly
    // when its factors outside the stratum exceed the dimension left.
    let x_model = {
        let x_members = Subset::EMPTY;
        StratumModel::Chart(chart_ring::<Rat>(k, x_members, k, n))
    };
    let chart = chart_index(stratum, k).expect("stratum is proper");
    let g_bound = n - stratum.len();
    let mut columns = Vec::new();
    for bits in 0u32..1 << k {
        if bits & (1 << (chart - 1)) != 0 || bits.count_ones() as usize > n {
            continue;
        }
        if ((bits & !stratum.bits()).count_ones() as usize) <= g_bound {
            continue;
        }
        let vector = restrict_monomial(bits, chart, &x_model, k);
        columns.push(sparse_to_dense(&vector, dim));
    }
    let combinatorial = Matrix::from_columns(dim, &columns);
    let agree = kernel.rank() == combinatorial.rank()
        && kernel.solve_columns(&combinatorial).is_some()
        && combinatorial.solve_columns(&kernel).is_some();
    Ok(RestrictionKernel { kernel, combinatorial, agree })
}

/// Presentation of the degree-zero symplectic cohomology model for the
/// generic pair, with a note when the hyperplane count is below the range
/// where the presentation is known to be exact.
#[derive(Clone, Debug)]
pub struct ShPresentation<K> {
    pub presentation: TopPresentation<K>,
    pub note: Option<String>,
}

pub fn sh_presentation<K: Field>(n: usize, k: usize) -> Result<ShPresentation<K>, ArrangementError> {
    let pair = build_generic_pair::<K>(n, k)?;
    let presentation = presentation_topological(&pair).map_err(ArrangementError::Presentation)?;
    let note = (k < n + 2).then(|| {
        format!("below the stable range: k = {k} < n + 2 = {}; treat as a formal model", n + 2)
    });
    Ok(ShPresentation { presentation, note })
}

/// The Jacobian ring of `W = z_1 .. z_m`: polynomials modulo the partial
/// derivatives, i.e. modulo all squarefree monomials of length `m - 1`.
/// Normal forms are the monomials with at least two absent variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianRing {
    pub m: usize,
    /// Exponent vectors of the relation monomials `∂_i W`.
    pub relations: Vec<Vec<u32>>,
}

impl JacobianRing {
    pub fn relation_names(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|exps| {
                let factors: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| format!("z{}", i + 1))
                    .collect();
                factors.join("*")
            })
            .collect()
    }

    /// Dimensions in each degree `0..=bound` by direct normal-form count:
    /// monomials of degree `d` supported on at most `m - 2` variables.
    pub fn hilbert(&self, bound: i64) -> Vec<usize> {
        let mut out = Vec::new();
        for d in 0..=bound {
            let d = d as usize;
            let mut count = if d == 0 { 1 } else { 0 };
            for support in 1..=self.m.saturating_sub(2).min(d) {
                count += binomial(self.m, support) * binomial(d - 1, support - 1);
            }
            out.push(count);
        }
        out
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k.min(n - k) {
        out = out * (n - i) / (i + 1);
    }
    out
}

pub fn jacobian_ring(m: usize) -> Result<JacobianRing, ArrangementError> {
    if m < 2 {
        return Err(ArrangementError::InvalidParameters {
            reason: format!("the potential z_1..z_m needs m >= 2, got {m}"),
        });
    }
    let relations = (0..m)
        .map(|i| (0..m).map(|j| u32::from(j != i)).collect())
        .collect();
    Ok(JacobianRing { m, relations })
}

/// Comparison of the Stanley-Reisner presentation of the generic pair
/// `(P^n, n+2 hyperplanes)` with the Jacobian ring of `W = z_1 .. z_{n+2}`
/// under `t_i -> z_i`: the relation sets must correspond bijectively and the
/// Hilbert functions must agree through degree 6.
#[derive(Clone, Debug)]
pub struct SrJacobianReport {
    pub holds: bool,
    /// Matched relations, as (Stanley-Reisner monomial, Jacobian monomial).
    pub relation_pairs: Vec<(String, String)>,
    pub sr_hilbert: Vec<usize>,
    pub jacobian_hilbert: Vec<usize>,
}

pub const SR_JACOBIAN_HILBERT_ORDER: i64 = 6;

pub fn sr_jacobian_isomorphism(n: usize) -> Result<SrJacobianReport, ArrangementError> {
    let m = n + 2;
    let pair = build_generic_pair::<Rat>(n, m)?;
    let sr = stanley_reisner(&pair);
    let SrPresentation::Classical { k, minimal_nonfaces } = sr else {
        return Err(ArrangementError::InvalidParameters {
            reason: "generic pair has connected strata".to_string(),
        });
    };
    let jacobian = jacobian_ring(m)?;

    let mut sr_exponents: Vec<Vec<u32>> =
        minimal_nonfaces.iter().map(|i| i.primitive_vector(k)).collect();
    sr_exponents.sort();
    let mut jac_exponents = jacobian.relations.clone();
    jac_exponents.sort();
    let relations_match = sr_exponents == jac_exponents;

    let relation_pairs = minimal_nonfaces
        .iter()
        .map(|nonface| {
            let t_name: Vec<String> =
                nonface.indices().iter().map(|i| format!("t{i}")).collect();
            let z_name: Vec<String> =
                nonface.indices().iter().map(|i| format!("z{i}")).collect();
            (t_name.join("*"), z_name.join("*"))
        })
        .collect();

    let sr_table = sr_hilbert(&pair, SR_JACOBIAN_HILBERT_ORDER);
    let sr_hilbert: Vec<usize> = (0..=SR_JACOBIAN_HILBERT_ORDER)
        .map(|w| sr_table.get(&w).copied().unwrap_or(0))
        .collect();
    let jacobian_hilbert = jacobian.hilbert(SR_JACOBIAN_HILBERT_ORDER);
    let holds = relations_match && sr_hilbert == jacobian_hilbert;
    Ok(SrJacobianReport { holds, relation_pairs, sr_hilbert, jacobian_hilbert })
}

/// Weightwise polyvector-field cohomology of the mirror potential
/// `W = z_1 .. z_m`: `T^p` is the polynomial p-derivations, the differential
/// is contraction with `dW`, and the internal weight of `z^a ξ_S` is
/// `|a| - |S|` so the differential raises weight by `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorHochschild {
    pub m: usize,
    pub weight_bound: i64,
    /// `h0[w]` is the dimension in cohomological degree 0 and weight `w`.
    pub h0: Vec<usize>,
    pub h1: Vec<usize>,
}

/// Exponent vectors of total degree `total` in `m` variables, in
/// lexicographic order.
fn exponent_vectors(m: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(m: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if m == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(m - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, total, &mut Vec::new(), &mut out);
    out
}

/// Basis of `T^p` at internal weight `w`: pairs of a p-subset mask and an
/// exponent vector of total `w + p`.
fn polyvector_basis(m: usize, p: usize, w: i64) -> Vec<(u32, Vec<u32>)> {
    let total = w + p as i64;
    if total < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != p {
            continue;
        }
        for exps in exponent_vectors(m, total as u32) {
            out.push((mask, exps));
        }
    }
    out
}

/// Matrix of contraction with `dW` from `T^p` at weight `w` into `T^{p-1}`
/// at weight `w + m`.
fn contraction_matrix(m: usize, p: usize, w: i64) -> Matrix<Rat> {
    let source = polyvector_basis(m, p, w);
    let target = polyvector_basis(m, p - 1, w + m as i64);
    let target_index: BTreeMap<(u32, Vec<u32>), usize> =
        target.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let mut columns = Vec::with_capacity(source.len());
    for (mask, exps) in &source {
        let mut column = vec![<Rat as Field>::from_i64(0); target.len()];
        let mut sign = 1i64;
        for x in 0..m {
            if mask >> x & 1 == 0 {
                continue;
            }
            // ∂_x W = Π_{j≠x} z_j.
            let mut image_exps = exps.clone();
            for (j, e) in image_exps.iter_mut().enumerate() {
                if j != x {
                    *e += 1;
                }
            }
            let row = target_index[&(mask & !(1 << x), image_exps)];
            column[row] = column[row].clone() + <Rat as Field>::from_i64(sign);
            sign = -sign;
        }
        columns.push(column);
    }
    Matrix::from_columns(target.len(), &columns)
}

pub fn mirror_hochschild(m: usize, weight_bound: i64) -> Result<MirrorHochschild, ArrangementError> {
    if m < 3 {
        return Err(ArrangementError::InvalidParameters {
            reason: format!("the mirror comparison needs m >= 3, got {m}"),
        });
    }
    if weight_bound < 1 {
        return Err(ArrangementError::WeightBoundTooSmall { bound: weight_bound });
    }
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    for w in 0..=weight_bound {
        let t0 = polyvector_basis(m, 0, w).len();
        let from_t1 = contraction_matrix(m, 1, w - m as i64);
        h0.push(t0 - from_t1.rank());

        let d1 = contraction_matrix(m, 1, w);
        let from_t2 = contraction_matrix(m, 2, w - m as i64);
        let t1 = polyvector_basis(m, 1, w).len();
        h1.push((t1 - d1.rank()) - from_t2.rank());
    }
    Ok(MirrorHochschild { m, weight_bound, h0, h1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logring::{build_log_ring, HilbertTable};

    fn rat(n: i64) -> Rat {
        <Rat as Field>::from_i64(n)
    }

    fn forms(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    /// Forms (1, t, t^2, ...): every subset of size <= vars is independent.
    fn generic_forms(count: usize, vars: usize) -> Vec<Vec<Rat>> {
        (1..=count as i64)
            .map(|t| (0..vars as u32).map(|e| rat(t.pow(e))).collect())
            .collect()
    }

    fn poincare<K: Field>(alg: &GradedAlgebra<K>) -> Vec<usize> {
        (0..=alg.max_degree()).map(|d| alg.basis_in_degree(d).len()).collect()
    }

    #[test]
    fn lattice_of_boolean_arrangement() {
        let a = Arrangement::central(forms(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let lattice = intersection_lattice(&a).unwrap();
        assert_eq!(lattice.flats.len(), 7);
        for (subset, flat) in &lattice.flats {
            assert_eq!(flat.rank, subset.len());
            assert!(!flat.empty);
        }
    }

    #[test]
    fn lattice_detects_empty_projective_intersections() {
        // Three distinct points on the projective line.
        let a = Arrangement::projective(forms(&[&[1, 0], &[0, 1], &[1, 1]]));
        let lattice = intersection_lattice(&a).unwrap();
        for (subset, flat) in &lattice.flats {
            assert_eq!(flat.empty, subset.len() >= 2, "{subset}");
        }
    }

    #[test]
    fn arrangement_validation_errors() {
        assert_eq!(
            Arrangement::central(Vec::new()).validate(),
            Err(ArrangementError::EmptyArrangement)
        );
        assert_eq!(
            Arrangement::central(forms(&[&[1, 0], &[0, 0]])).validate(),
            Err(ArrangementError::ZeroForm { hyperplane: 2 })
        );
        let mut ragged = forms(&[&[1, 0]]);
        ragged.push(vec![rat(1)]);
        assert_eq!(
            Arrangement::central(ragged).validate(),
            Err(ArrangementError::RaggedForms { expected: 2, found: 1 })
        );
        let a = Arrangement::projective(forms(&[&[1, 0], &[0, 1]]));
        assert_eq!(
            orlik_solomon::<Rat>(&a).err(),
            Some(ArrangementError::ExpectedCentral)
        );
        let a = Arrangement::central(forms(&[&[1, 0], &[0, 1]]));
        assert_eq!(
            projective_complement::<Rat>(&a).err(),
            Some(ArrangementError::ExpectedProjective)
        );
    }

    #[test]
    fn boolean_os_is_the_full_exterior_algebra() {
        for n in 1..=4 {
            let rows: Vec<Vec<Rat>> =
                (0..n).map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect()).collect();
            let os = orlik_solomon::<Rat>(&Arrangement::central(rows)).unwrap();
            let expected: Vec<usize> = (0..=n).map(|d| binomial(n, d)).collect();
            assert_eq!(poincare(&os.algebra), expected, "n = {n}");
            assert!(os.algebra.consistency_issues().is_empty());
        }
    }

    #[test]
    fn concurrent_lines_drop_a_top_class() {
        // Three lines through the origin of the plane.
        let os =
            orlik_solomon::<Rat>(&Arrangement::central(forms(&[&[1, 0], &[0, 1], &[1, 1]])))
                .unwrap();
        assert_eq!(poincare(&os.algebra), vec![1, 3, 2]);
        // One hyperplane: 1 + t.
        let os = orlik_solomon::<Rat>(&Arrangement::central(forms(&[&[1, 2, 3]]))).unwrap();
        assert_eq!(poincare(&os.algebra), vec![1, 1]);
    }

    #[test]
    fn os_betti_numbers_ignore_hyperplane_order() {
        let base = generic_forms(5, 3);
        let mut shuffled = base.clone();
        shuffled.reverse();
        shuffled.swap(0, 2);
        let a = orlik_solomon::<Rat>(&Arrangement::central(base)).unwrap();
        let b = orlik_solomon::<Rat>(&Arrangement::central(shuffled)).unwrap();
        assert_eq!(poincare(&a.algebra), poincare(&b.algebra));
    }

    #[test]
    fn delta_squares_to_zero_and_kernel_is_closed() {
        let os = orlik_solomon::<Rat>(&Arrangement::central(generic_forms(4, 3))).unwrap();
        let square = &os.delta * &os.delta;
        assert!(square.is_zero());
        // Kernel closure under products is what lets the projective
        // complement constructor solve for coordinates.
        let complement =
            projective_complement::<Rat>(&Arrangement::projective(generic_forms(4, 3))).unwrap();
        assert!(complement.consistency_issues().is_empty());
    }

    #[test]
    fn projective_complement_betti_numbers() {
        // One hyperplane: affine space.
        let c = projective_complement::<Rat>(&Arrangement::projective(forms(&[&[1, 1]]))).unwrap();
        assert_eq!(poincare(&c), vec![1]);
        // Three points on the line.
        let c =
            projective_complement::<Rat>(&Arrangement::projective(forms(&[&[1, 0], &[0, 1], &[1, 1]])))
                .unwrap();
        assert_eq!(poincare(&c), vec![1, 2]);
        // Four generic lines in the plane.
        let c = projective_complement::<Rat>(&Arrangement::projective(generic_forms(4, 3))).unwrap();
        assert_eq!(poincare(&c), vec![1, 3, 3]);
    }

    #[test]
    fn generic_pair_shapes() {
        let pair = build_generic_pair::<Rat>(1, 3).unwrap();
        assert_eq!(pair.strata.len(), 4);
        assert_eq!(poincare(&pair.strata[&Subset::EMPTY].ring), vec![1, 2]);
        for i in 1..=3 {
            assert_eq!(poincare(&pair.strata[&Subset::singleton(i)].ring), vec![1, 1]);
        }
        assert_eq!(pair.validate().issues, vec![]);

        let pair = build_generic_pair::<Rat>(2, 4).unwrap();
        assert_eq!(pair.strata.len(), 11);
        assert_eq!(poincare(&pair.strata[&Subset::EMPTY].ring), vec![1, 3, 3]);
        assert_eq!(pair.validate().issues, vec![]);
    }

    #[test]
    fn generic_pair_matches_projective_complement_dimensions() {
        for (n, k) in [(1, 3), (2, 4), (2, 5)] {
            let pair = build_generic_pair::<Rat>(n, k).unwrap();
            let complement =
                projective_complement::<Rat>(&Arrangement::projective(generic_forms(k, n + 1)))
                    .unwrap();
            assert_eq!(
                poincare(&pair.strata[&Subset::EMPTY].ring),
                poincare(&complement),
                "({n}, {k})"
            );
        }
    }

    #[test]
    fn small_hyperplane_counts_get_bundle_strata() {
        // One hyperplane in P^n: the boundary stratum is a sphere.
        let pair = build_generic_pair::<Rat>(2, 1).unwrap();
        assert_eq!(pair.strata.len(), 2);
        let ring = &pair.strata[&Subset::singleton(1)].ring;
        assert_eq!(poincare(ring), vec![1, 0, 0, 1]);
        assert_eq!(pair.validate().issues, vec![]);

        // Two hyperplanes in P^2: the double stratum is a 2-torus.
        let pair = build_generic_pair::<Rat>(2, 2).unwrap();
        let ring = &pair.strata[&Subset::from_indices(&[1, 2])].ring;
        assert_eq!(poincare(ring), vec![1, 2, 1]);
        assert_eq!(pair.validate().issues, vec![]);
    }

    #[test]
    fn generic_pair_rejects_bad_parameters() {
        assert!(matches!(
            build_generic_pair::<Rat>(0, 3),
            Err(ArrangementError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build_generic_pair::<Rat>(2, 0),
            Err(ArrangementError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build_generic_pair::<Rat>(2, 40),
            Err(ArrangementError::TooManyHyperplanes { count: 40 })
        ));
    }

    #[test]
    fn restriction_kernels_agree_with_the_combinatorial_span() {
        let report = restriction_kernel(2, 5, Subset::from_indices(&[1, 2])).unwrap();
        assert_eq!(report.kernel.cols(), 7);
        assert!(report.agree);

        let report = restriction_kernel(1, 3, Subset::singleton(1)).unwrap();
        assert_eq!(report.kernel.cols(), 1);
        assert!(report.agree);

        let report = restriction_kernel(2, 5, Subset::from_indices(&[2, 5])).unwrap();
        assert_eq!(report.kernel.cols(), 7);
        assert!(report.agree);

        let report = restriction_kernel(2, 4, Subset::EMPTY).unwrap();
        assert_eq!(report.kernel.cols(), 0);
        assert!(report.agree);

        for k in 3..=6 {
            for bits in 1u32..1 << k {
                let stratum = Subset::from_bits(bits);
                if stratum.len() > 2 {
                    continue;
                }
                let report = restriction_kernel(2, k, stratum).unwrap();
                assert!(report.agree, "(2, {k}, {stratum})");
            }
        }
    }

    #[test]
    fn sh_presentation_notes_the_unstable_range() {
        let stable = sh_presentation::<Rat>(1, 3).unwrap();
        assert!(stable.note.is_none());
        match &stable.presentation.sr {
            SrPresentation::Classical { k, minimal_nonfaces } => {
                assert_eq!(*k, 3);
                // Strata are the singletons, so every pair is a nonface.
                assert_eq!(minimal_nonfaces.len(), 3);
            }
            SrPresentation::PerComponent { .. } => panic!("connected strata"),
        }
        let unstable = sh_presentation::<Rat>(2, 3).unwrap();
        assert!(unstable.note.as_deref().unwrap().contains("k = 3 < n + 2 = 4"));
    }

    #[test]
    fn jacobian_ring_normal_forms() {
        assert!(matches!(
            jacobian_ring(1),
            Err(ArrangementError::InvalidParameters { .. })
        ));
        // m = 2: W = z1 z2, relations z2 and z1, quotient is the ground field.
        let jac = jacobian_ring(2).unwrap();
        assert_eq!(jac.hilbert(4), vec![1, 0, 0, 0, 0]);
        // m = 3: only pure powers survive.
        let jac = jacobian_ring(3).unwrap();
        assert_eq!(jac.relation_names(), vec!["z2*z3", "z1*z3", "z1*z2"]);
        assert_eq!(jac.hilbert(6), vec![1, 3, 3, 3, 3, 3, 3]);
        // m = 4.
        let jac = jacobian_ring(4).unwrap();
        assert_eq!(jac.hilbert(3), vec![1, 4, 10, 16]);
    }

    #[test]
    fn sr_matches_jacobian_for_small_dimensions() {
        for n in 1..=3 {
            let report = sr_jacobian_isomorphism(n).unwrap();
            assert!(report.holds, "n = {n}: {report:?}");
            assert_eq!(report.relation_pairs.len(), n + 2);
            assert_eq!(report.sr_hilbert, report.jacobian_hilbert);
        }
        let report = sr_jacobian_isomorphism(1).unwrap();
        assert_eq!(report.relation_pairs[0], ("t1*t2".to_string(), "z1*z2".to_string()));
        assert_eq!(report.sr_hilbert, vec![1, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn mirror_hochschild_weight_zero_and_jacobian() {
        assert!(matches!(
            mirror_hochschild(2, 4),
            Err(ArrangementError::InvalidParameters { .. })
        ));
        assert_eq!(
            mirror_hochschild(3, 0),
            Err(ArrangementError::WeightBoundTooSmall { bound: 0 })
        );
        let hh = mirror_hochschild(3, 4).unwrap();
        assert_eq!(hh.h0, jacobian_ring(3).unwrap().hilbert(4));
        // Traceless diagonal derivations survive in degree 1, weight 0.
        assert_eq!(hh.h1[0], 2);

        let hh = mirror_hochschild(4, 3).unwrap();
        assert_eq!(hh.h0, jacobian_ring(4).unwrap().hilbert(3));
        assert_eq!(hh.h1[0], 3);
    }

    #[test]
    fn mirror_weight_zero_matches_log_ring_weight_zero() {
        // The weight-w piece of degree-zero symplectic cohomology of the
        // pants pair matches the mirror computation; spot-check w <= 3.
        let pair = build_generic_pair::<Rat>(1, 3).unwrap();
        let sr = sr_hilbert(&pair, 3);
        let hh = mirror_hochschild(3, 3).unwrap();
        for w in 0..=3i64 {
            assert_eq!(sr.get(&w).copied().unwrap_or(0), hh.h0[w as usize], "w = {w}");
        }
    }

    #[test]
    fn built_pair_feeds_the_log_ring() {
        let pair = build_generic_pair::<Rat>(1, 3).unwrap();
        let ring = build_log_ring(&pair, 2).unwrap();
        let table: HilbertTable = ring.hilbert_table();
        // Weight 0: (1, 2); weights 1 and 2: three circles each, (3, 3).
        assert_eq!(table.dim(0, 0), 1);
        assert_eq!(table.dim(1, 0), 2);
        for w in 1..=2 {
            assert_eq!(table.dim(0, w), 3, "w = {w}");
            assert_eq!(table.dim(1, w), 3, "w = {w}");
        }
    }
}
