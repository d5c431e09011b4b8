//! Data model for normal-crossings pairs: ambient space plus divisor
//! components, described by the cohomology rings of the open strata and the
//! restriction maps between them.
//!
//! Stratum rings are input data (structure constants), not computed from
//! geometry; the builders in [`crate::arrangements`] produce them for
//! generic hyperplane arrangements. Validation checks every structural
//! invariant and reports all violations rather than stopping at the first.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::graded::{AlgebraIssue, AlgebraMap, GradedAlgebra, MapIssue};
use crate::matrix::Matrix;

/// A set of divisor-component indices, stored as a bitmask. Components are
/// numbered 1..k externally; bit `i-1` holds component `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    /// Builds from 1-based component indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut bits = 0;
        for &i in indices {
            assert!(i >= 1, "component indices are 1-based");
            bits |= 1 << (i - 1);
        }
        Subset(bits)
    }

    pub fn singleton(i: usize) -> Self {
        Subset::from_indices(&[i])
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// 1-based component indices, ascending.
    pub fn indices(self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 >> (i - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn with(self, i: usize) -> Subset {
        self.union(Subset::singleton(i))
    }

    pub fn without(self, i: usize) -> Subset {
        assert!(i >= 1);
        Subset(self.0 & !(1 << (i - 1)))
    }

    /// All subsets of `self`, in ascending bitmask order (starts with the
    /// empty set, ends with `self`).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        // Enumerates submasks by the standard (s - 1) & full trick, from 0 up.
        (0u64..=u64::from(full))
            .map(move |s| Subset(s as u32))
            .filter(move |s| s.0 & !full == 0)
    }

    /// The multiplicity vector with 1 on each member, 0 elsewhere.
    pub fn primitive_vector(self, k: usize) -> Vec<u32> {
        (1..=k).map(|i| u32::from(self.contains(i))).collect()
    }
}

/// Support of a multiplicity vector: the set of indices with positive entry.
pub fn support(v: &[u32]) -> Subset {
    let mut s = Subset::EMPTY;
    for (i, &m) in v.iter().enumerate() {
        if m > 0 {
            s = s.with(i + 1);
        }
    }
    s
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.indices().into_iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// One open stratum: its number of connected components and its cohomology
/// ring. The empty subset's stratum is the divisor complement itself.
#[derive(Clone, Debug)]
pub struct Stratum<K> {
    pub components: usize,
    pub ring: GradedAlgebra<K>,
}

/// Optional geometric facts the toolkit cannot derive from ring data.
/// Criteria consume these and report them as assumptions.
#[derive(Clone, Debug, Default)]
pub struct PairFlags {
    pub fano: Option<bool>,
    pub anticanonical: Option<bool>,
    pub pi2_omega_zero: Option<bool>,
    /// All components cut out by powers of one line bundle; entry `i` is the
    /// power for component `i+1`.
    pub same_line_bundle: Option<Vec<i64>>,
    /// Per-stratum vanishing flags for the obstruction invariants.
    pub gw_vanishing: Option<BTreeMap<Subset, bool>>,
    /// Intersection vectors `(A . D_1, ..., A . D_k)` of effective curve
    /// classes, for admissibility checks.
    pub effective_classes: Vec<Vec<i64>>,
}

/// A normal-crossings pair, combinatorially: which strata are nonempty,
/// their rings, and the restriction maps between them.
#[derive(Clone, Debug)]
pub struct NcPairData<K> {
    pub k: usize,
    /// Complex dimension of the ambient space.
    pub dim: usize,
    pub kappa: Vec<i64>,
    pub pole_orders: Vec<i64>,
    pub strata: BTreeMap<Subset, Stratum<K>>,
    /// Restriction map for each nested pair `from ⊂ to` of nonempty strata;
    /// column `j` is the image of source basis element `j` in the target
    /// ring's basis.
    pub restrictions: BTreeMap<(Subset, Subset), Matrix<K>>,
    pub flags: PairFlags,
    /// Rows are relations presenting the first homology of the complement
    /// as the quotient of the free group on the component loops.
    pub h1_relations: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairIssue {
    FieldLengthMismatch { field: &'static str, expected: usize, found: usize },
    KappaNotPositive { component: usize },
    MissingEmptyStratum,
    SubsetOutOfRange { stratum: Subset },
    NotDownwardClosed { present: Subset, missing: Subset },
    ComponentCountZero { stratum: Subset },
    ComponentCountMismatch { stratum: Subset, h0_rank: usize, components: usize },
    RingInconsistent { stratum: Subset, issue: AlgebraIssue },
    DegreeOutOfRange { stratum: Subset, degree: i64, bound: i64 },
    MissingRestriction { from: Subset, to: Subset },
    RestrictionBetweenNonStrata { from: Subset, to: Subset },
    RestrictionNotNested { from: Subset, to: Subset },
    SelfRestrictionNotIdentity { stratum: Subset },
    RestrictionMapIssue { from: Subset, to: Subset, issue: MapIssue },
    FunctorialityFailure { low: Subset, mid: Subset, high: Subset },
}

impl fmt::Display for PairIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairIssue::FieldLengthMismatch { field, expected, found } => {
                write!(f, "{field} has length {found}, expected {expected}")
            }
            PairIssue::KappaNotPositive { component } => {
                write!(f, "kappa[{component}] must be >= 1")
            }
            PairIssue::MissingEmptyStratum => write!(f, "the empty stratum (complement) is missing"),
            PairIssue::SubsetOutOfRange { stratum } => {
                write!(f, "stratum {stratum} uses a component index above k")
            }
            PairIssue::NotDownwardClosed { present, missing } => {
                write!(f, "stratum {present} is present but its subset {missing} is missing")
            }
            PairIssue::ComponentCountZero { stratum } => {
                write!(f, "stratum {stratum} declares zero components")
            }
            PairIssue::ComponentCountMismatch { stratum, h0_rank, components } => {
                write!(
                    f,
                    "stratum {stratum}: degree-0 rank {h0_rank} != declared component count {components}"
                )
            }
            PairIssue::RingInconsistent { stratum, issue } => {
                write!(f, "stratum {stratum} ring: {issue}")
            }
            PairIssue::DegreeOutOfRange { stratum, degree, bound } => {
                write!(f, "stratum {stratum} has a class in degree {degree}, outside [0, {bound}]")
            }
            PairIssue::MissingRestriction { from, to } => {
                write!(f, "restriction {from} -> {to} is missing")
            }
            PairIssue::RestrictionBetweenNonStrata { from, to } => {
                write!(f, "restriction {from} -> {to} references an absent stratum")
            }
            PairIssue::RestrictionNotNested { from, to } => {
                write!(f, "restriction {from} -> {to}: source is not a subset of target")
            }
            PairIssue::SelfRestrictionNotIdentity { stratum } => {
                write!(f, "restriction {stratum} -> {stratum} is not the identity")
            }
            PairIssue::RestrictionMapIssue { from, to, issue } => {
                write!(f, "restriction {from} -> {to}: {issue}")
            }
            PairIssue::FunctorialityFailure { low, mid, high } => {
                write!(
                    f,
                    "restrictions are not functorial along {low} -> {mid} -> {high}"
                )
            }
        }
    }
}

/// Everything [`validate`] found wrong; empty means the pair satisfies all
/// structural invariants.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<PairIssue>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Faces of the dual intersection complex: one face per nonempty stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: usize,
    pub faces: BTreeSet<Subset>,
}

impl<K: Field> NcPairData<K> {
    pub fn stratum(&self, i: Subset) -> Option<&Stratum<K>> {
        self.strata.get(&i)
    }

    pub fn is_nonempty_stratum(&self, i: Subset) -> bool {
        self.strata.contains_key(&i)
    }

    /// The stored restriction matrix, with `from == to` treated as identity.
    pub fn restriction(&self, from: Subset, to: Subset) -> Option<Matrix<K>> {
        if from == to {
            return self.strata.get(&from).map(|s| Matrix::identity(s.ring.dim()));
        }
        self.restrictions.get(&(from, to)).cloned()
    }

    pub fn full_set(&self) -> Subset {
        Subset::from_indices(&(1..=self.k).collect::<Vec<_>>())
    }

    pub fn dual_complex(&self) -> SimplicialComplex {
        SimplicialComplex {
            vertices: self.k,
            faces: self.strata.keys().copied().collect(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();

        for (field, len) in [("kappa", self.kappa.len()), ("pole_orders", self.pole_orders.len())] {
            if len != self.k {
                issues.push(PairIssue::FieldLengthMismatch { field, expected: self.k, found: len });
            }
        }
        if let Some(powers) = &self.flags.same_line_bundle {
            if powers.len() != self.k {
                issues.push(PairIssue::FieldLengthMismatch {
                    field: "same_line_bundle",
                    expected: self.k,
                    found: powers.len(),
                });
            }
        }
        for classes in &self.flags.effective_classes {
            if classes.len() != self.k {
                issues.push(PairIssue::FieldLengthMismatch {
                    field: "effective_classes entry",
                    expected: self.k,
                    found: classes.len(),
                });
            }
        }
        if let Some(rel) = &self.h1_relations {
            for row in rel {
                if row.len() != self.k {
                    issues.push(PairIssue::FieldLengthMismatch {
                        field: "h1_relations row",
                        expected: self.k,
                        found: row.len(),
                    });
                }
            }
        }
        for (i, &kp) in self.kappa.iter().enumerate() {
            if kp < 1 {
                issues.push(PairIssue::KappaNotPositive { component: i + 1 });
            }
        }

        if !self.strata.contains_key(&Subset::EMPTY) {
            issues.push(PairIssue::MissingEmptyStratum);
        }
        let full = self.full_set();
        for (&i, stratum) in &self.strata {
            if !i.is_subset_of(full) {
                issues.push(PairIssue::SubsetOutOfRange { stratum: i });
                continue;
            }
            for idx in i.indices() {
                let sub = i.without(idx);
                if !self.strata.contains_key(&sub) {
                    issues.push(PairIssue::NotDownwardClosed { present: i, missing: sub });
                }
            }
            if stratum.components == 0 {
                issues.push(PairIssue::ComponentCountZero { stratum: i });
            }
            let h0 = stratum.ring.basis_in_degree(0).len();
            if stratum.components != 0 && h0 != stratum.components {
                issues.push(PairIssue::ComponentCountMismatch {
                    stratum: i,
                    h0_rank: h0,
                    components: stratum.components,
                });
            }
            for issue in stratum.ring.consistency_issues() {
                issues.push(PairIssue::RingInconsistent { stratum: i, issue });
            }
            let bound = 2 * self.dim as i64 + i.len() as i64;
            for b in stratum.ring.basis() {
                if b.deg < 0 || b.deg > bound {
                    issues.push(PairIssue::DegreeOutOfRange { stratum: i, degree: b.deg, bound });
                }
            }
        }

        // Every nested pair of nonempty strata needs a restriction map.
        for &hi in self.strata.keys() {
            for lo in hi.subsets() {
                if lo != hi && self.strata.contains_key(&lo)
                    && !self.restrictions.contains_key(&(lo, hi))
                {
                    issues.push(PairIssue::MissingRestriction { from: lo, to: hi });
                }
            }
        }

        for (&(from, to), matrix) in &self.restrictions {
            let (Some(src), Some(tgt)) = (self.strata.get(&from), self.strata.get(&to)) else {
                issues.push(PairIssue::RestrictionBetweenNonStrata { from, to });
                continue;
            };
            if !from.is_subset_of(to) {
                issues.push(PairIssue::RestrictionNotNested { from, to });
                continue;
            }
            if from == to {
                if *matrix != Matrix::identity(src.ring.dim()) {
                    issues.push(PairIssue::SelfRestrictionNotIdentity { stratum: from });
                }
                continue;
            }
            let map = AlgebraMap { source: &src.ring, target: &tgt.ring, matrix };
            for issue in map.issues() {
                issues.push(PairIssue::RestrictionMapIssue { from, to, issue });
            }
        }

        // Functoriality along every chain low ⊂ mid ⊂ high.
        for &high in self.strata.keys() {
            for mid in high.subsets() {
                if mid == high || !self.strata.contains_key(&mid) {
                    continue;
                }
                for low in mid.subsets() {
                    if low == mid || !self.strata.contains_key(&low) {
                        continue;
                    }
                    let (Some(a), Some(b), Some(c)) = (
                        self.restrictions.get(&(low, mid)),
                        self.restrictions.get(&(mid, high)),
                        self.restrictions.get(&(low, high)),
                    ) else {
                        continue; // missing maps already reported
                    };
                    if a.rows() != b.cols() || b.rows() != c.rows() || a.cols() != c.cols() {
                        continue; // shape issues already reported
                    }
                    if &(b * a) != c {
                        issues.push(PairIssue::FunctorialityFailure { low, mid, high });
                    }
                }
            }
        }

        ValidationReport { issues }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::graded::exterior_algebra;
    use alloc::vec;

    fn minimal_pair() -> NcPairData<Rat> {
        // One smooth divisor on a curve: X = complement with H* = (1,1)
        // (punctured torus-like shape not needed; any consistent ring works),
        // stratum {1} a circle with H* = Λ[e].
        let x_ring = exterior_algebra::<Rat>(&[("a", 1)]).unwrap();
        let d1_ring = exterior_algebra::<Rat>(&[("e1", 1)]).unwrap();
        let mut restrict = Matrix::zero(2, 2);
        restrict[(0, 0)] = Rat::from_i64(1); // 1 -> 1, a -> 0
        let mut strata = BTreeMap::new();
        strata.insert(Subset::EMPTY, Stratum { components: 1, ring: x_ring });
        strata.insert(Subset::singleton(1), Stratum { components: 1, ring: d1_ring });
        let mut restrictions = BTreeMap::new();
        restrictions.insert((Subset::EMPTY, Subset::singleton(1)), restrict);
        NcPairData {
            k: 1,
            dim: 1,
            kappa: vec![1],
            pole_orders: vec![1],
            strata,
            restrictions,
            flags: PairFlags::default(),
            h1_relations: None,
        }
    }

    #[test]
    fn subset_basics() {
        let s = Subset::from_indices(&[1, 3]);
        assert_eq!(s.indices(), vec![1, 3]);
        assert_eq!(s.len(), 2);
        assert!(s.contains(1) && !s.contains(2) && s.contains(3));
        assert!(Subset::singleton(3).is_subset_of(s));
        assert_eq!(s.union(Subset::singleton(2)), Subset::from_indices(&[1, 2, 3]));
        assert_eq!(format!("{s}"), "{1,3}");
        assert_eq!(format!("{}", Subset::EMPTY), "{}");
        let subs: Vec<Subset> = s.subsets().collect();
        assert_eq!(subs.len(), 4);
        assert!(subs.contains(&Subset::EMPTY) && subs.contains(&s));
        assert_eq!(s.primitive_vector(4), vec![1, 0, 1, 0]);
        assert_eq!(support(&[0, 2, 0, 1]), Subset::from_indices(&[2, 4]));
    }

    #[test]
    fn minimal_pair_validates() {
        let p = minimal_pair();
        let report = p.validate();
        assert!(report.is_clean(), "unexpected issues: {:?}", report.issues);
        assert_eq!(
            p.dual_complex(),
            SimplicialComplex {
                vertices: 1,
                faces: [Subset::EMPTY, Subset::singleton(1)].into_iter().collect(),
            }
        );
    }

    #[test]
    fn closure_violation_detected() {
        let mut p = minimal_pair();
        // fabricate a {1,2}-looking stratum without {2}
        let ring = exterior_algebra::<Rat>(&[]).unwrap();
        p.k = 2;
        p.kappa = vec![1, 1];
        p.pole_orders = vec![1, 1];
        p.strata
            .insert(Subset::from_indices(&[1, 2]), Stratum { components: 1, ring });
        let report = p.validate();
        assert!(report.issues.iter().any(|i| matches!(
            i,
            PairIssue::NotDownwardClosed { missing, .. } if *missing == Subset::singleton(2)
        )));
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, PairIssue::MissingRestriction { .. })));
    }

    #[test]
    fn non_unital_restriction_detected() {
        let mut p = minimal_pair();
        let zero = Matrix::zero(2, 2);
        p.restrictions.insert((Subset::EMPTY, Subset::singleton(1)), zero);
        let report = p.validate();
        assert!(report.issues.iter().any(|i| matches!(
            i,
            PairIssue::RestrictionMapIssue { issue: MapIssue::NotUnital, .. }
        )));
    }

    #[test]
    fn kappa_and_length_checks() {
        let mut p = minimal_pair();
        p.kappa = vec![0];
        p.pole_orders = vec![1, 2];
        let report = p.validate();
        assert!(report
            .issues
            .contains(&PairIssue::KappaNotPositive { component: 1 }));
        assert!(report.issues.iter().any(|i| matches!(
            i,
            PairIssue::FieldLengthMismatch { field: "pole_orders", .. }
        )));
    }

    #[test]
    fn functoriality_violation_detected() {
        // Two components on a curve-like pair; break the composite by
        // scaling one leg of the square.
        let x_ring = exterior_algebra::<Rat>(&[]).unwrap(); // rank 1
        let mut strata = BTreeMap::new();
        strata.insert(Subset::EMPTY, Stratum { components: 1, ring: x_ring.clone() });
        strata.insert(Subset::singleton(1), Stratum { components: 1, ring: x_ring.clone() });
        strata.insert(Subset::singleton(2), Stratum { components: 1, ring: x_ring.clone() });
        strata.insert(Subset::from_indices(&[1, 2]), Stratum { components: 1, ring: x_ring });
        let id = Matrix::<Rat>::identity(1);
        let mut restrictions = BTreeMap::new();
        let s1 = Subset::singleton(1);
        let s2 = Subset::singleton(2);
        let s12 = Subset::from_indices(&[1, 2]);
        restrictions.insert((Subset::EMPTY, s1), id.clone());
        restrictions.insert((Subset::EMPTY, s2), id.clone());
        restrictions.insert((s1, s12), id.clone());
        restrictions.insert((s2, s12), id.clone());
        // direct map ∅ -> {1,2} scaled by 2: breaks r_{1,12} ∘ r_{∅,1} = r_{∅,12}
        // (and is non-unital, which is also reported)
        let mut twice = Matrix::zero(1, 1);
        twice[(0, 0)] = Rat::from_i64(2);
        restrictions.insert((Subset::EMPTY, s12), twice);
        let p = NcPairData {
            k: 2,
            dim: 1,
            kappa: vec![1, 1],
            pole_orders: vec![1, 1],
            strata,
            restrictions,
            flags: PairFlags::default(),
            h1_relations: None,
        };
        let report = p.validate();
        assert!(report.issues.iter().any(|i| matches!(
            i,
            PairIssue::FunctorialityFailure { low, high, .. }
                if *low == Subset::EMPTY && *high == s12
        )));
    }
}
