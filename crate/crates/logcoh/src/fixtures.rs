//! Built-in fixture catalog: the worked examples as data files.
//!
//! `catalog()` lists every name the CLI can emit; `build(name)` constructs
//! the fixture in memory. Pair fixtures are also exposed directly for tests
//! that want the typed data rather than JSON.

use std::collections::BTreeMap;

use logcoh_core::arrangements::{build_generic_pair, Arrangement};
use logcoh_core::field::Rat;
use logcoh_core::graded::{exterior_algebra, BasisElt, GradedAlgebra, SparseVec};
use logcoh_core::matrix::Matrix;
use logcoh_core::pair::{NcPairData, PairFlags, Stratum, Subset};
use logcoh_core::specseq::{FilteredComplex, FilteredElt};
use num_bigint::BigInt;

use crate::schema;

/// A catalog entry, ready to serialize into its file format.
pub enum Fixture {
    Pair(NcPairData<Rat>),
    Complex(FilteredComplex<Rat>),
    Arrangement(Arrangement),
}

impl Fixture {
    pub fn to_json(&self) -> String {
        match self {
            Fixture::Pair(p) => schema::pair_to_json(p),
            Fixture::Complex(c) => schema::complex_to_json(c),
            Fixture::Arrangement(a) => schema::arrangement_to_json(a),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::Pair(_) => "pair",
            Fixture::Complex(_) => "complex",
            Fixture::Arrangement(_) => "arrangement",
        }
    }
}

pub const CATALOG: &[&str] = &[
    "boolean_1",
    "boolean_2",
    "boolean_3",
    "boolean_4",
    "boolean_5",
    "cp2_cubic",
    "d2_only",
    "dx_eq_y",
    "p2_lines3",
    "p2_lines4",
    "p2_lines5",
    "p2_lines6",
    "pants_n1",
    "pants_n2",
    "pants_n3",
    "x_equals_c",
];

/// The pair fixtures, in catalog order.
pub const PAIR_NAMES: &[&str] = &[
    "cp2_cubic",
    "p2_lines3",
    "p2_lines4",
    "p2_lines5",
    "p2_lines6",
    "pants_n1",
    "pants_n2",
    "pants_n3",
    "x_equals_c",
];

pub fn catalog() -> &'static [&'static str] {
    CATALOG
}

pub fn build(name: &str) -> Option<Fixture> {
    let generic = |n: usize, k: usize| {
        Fixture::Pair(build_generic_pair::<Rat>(n, k).expect("catalog parameters are valid"))
    };
    Some(match name {
        "boolean_1" => Fixture::Arrangement(boolean_arrangement(1)),
        "boolean_2" => Fixture::Arrangement(boolean_arrangement(2)),
        "boolean_3" => Fixture::Arrangement(boolean_arrangement(3)),
        "boolean_4" => Fixture::Arrangement(boolean_arrangement(4)),
        "boolean_5" => Fixture::Arrangement(boolean_arrangement(5)),
        "cp2_cubic" => Fixture::Pair(cp2_cubic()),
        "d2_only" => Fixture::Complex(d2_only()),
        "dx_eq_y" => Fixture::Complex(dx_eq_y()),
        "p2_lines3" => generic(2, 3),
        "p2_lines4" => generic(2, 4),
        "p2_lines5" => generic(2, 5),
        "p2_lines6" => generic(2, 6),
        "pants_n1" => generic(1, 3),
        "pants_n2" => generic(2, 4),
        "pants_n3" => generic(3, 5),
        "x_equals_c" => Fixture::Pair(x_equals_c()),
        _ => return None,
    })
}

pub fn pair(name: &str) -> Option<NcPairData<Rat>> {
    match build(name)? {
        Fixture::Pair(p) => Some(p),
        _ => None,
    }
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The coordinate hyperplanes of C^n, as a central arrangement.
pub fn boolean_arrangement(n: usize) -> Arrangement {
    let forms = (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect();
    Arrangement::central(forms)
}

/// The projective plane minus a smooth cubic curve: one component of
/// multiplicity 3, pole order 1. The complement has Betti numbers
/// (1, 0, 2); the boundary stratum is the unit circle bundle over the
/// curve with Euler number 9, a nilmanifold with Betti numbers
/// (1, 2, 2, 1) and e1*y = vol = -e2*x as its only nonzero products.
pub fn cp2_cubic() -> NcPairData<Rat> {
    let elt = |name: &str, deg: i64| BasisElt { name: name.to_string(), deg };
    let one = |t: usize| -> SparseVec<Rat> { vec![(t, rat(1))] };

    let mut table = vec![(0, 0, one(0)), (0, 1, one(1)), (0, 2, one(2))];
    table.push((1, 0, one(1)));
    table.push((2, 0, one(2)));
    let complement =
        GradedAlgebra::from_parts(vec![elt("1", 0), elt("x", 2), elt("y", 2)], 0, table);

    let mut table = Vec::new();
    for i in 0..6 {
        table.push((0, i, one(i)));
        if i > 0 {
            table.push((i, 0, one(i)));
        }
    }
    table.push((1, 4, one(5))); // e1*y = vol
    table.push((4, 1, one(5)));
    table.push((2, 3, vec![(5, rat(-1))])); // e2*x = -vol
    table.push((3, 2, vec![(5, rat(-1))]));
    let boundary = GradedAlgebra::from_parts(
        vec![elt("1", 0), elt("e1", 1), elt("e2", 1), elt("x", 2), elt("y", 2), elt("vol", 3)],
        0,
        table,
    );

    // 1 -> 1, x -> x, y -> y; the degree-1 and degree-3 classes have no
    // preimage in the affine complement.
    let mut r = Matrix::zero(6, 3);
    r[(0, 0)] = rat(1);
    r[(3, 1)] = rat(1);
    r[(4, 2)] = rat(1);

    let s1 = Subset::singleton(1);
    let mut strata = BTreeMap::new();
    strata.insert(Subset::EMPTY, Stratum { components: 1, ring: complement });
    strata.insert(s1, Stratum { components: 1, ring: boundary });
    let mut restrictions = BTreeMap::new();
    restrictions.insert((Subset::EMPTY, s1), r);

    NcPairData {
        k: 1,
        dim: 2,
        kappa: vec![3],
        pole_orders: vec![1],
        strata,
        restrictions,
        flags: PairFlags {
            fano: Some(true),
            anticanonical: Some(true),
            pi2_omega_zero: Some(false),
            same_line_bundle: Some(vec![3]),
            gw_vanishing: None,
            effective_classes: vec![vec![3]],
        },
        h1_relations: Some(vec![vec![3]]),
    }
}

/// The projective line minus one point, with pole order 2: the pair whose
/// complement is the affine line. No flag is strong enough for any
/// criterion here, so every verdict comes back Inconclusive: the ring
/// data alone cannot see that the symplectic cohomology vanishes.
pub fn x_equals_c() -> NcPairData<Rat> {
    let complement = GradedAlgebra::<Rat>::ground_field();
    let boundary = exterior_algebra::<Rat>(&[("e", 1)]).expect("one generator");

    let mut r = Matrix::zero(2, 1);
    r[(0, 0)] = rat(1);

    let s1 = Subset::singleton(1);
    let mut strata = BTreeMap::new();
    strata.insert(Subset::EMPTY, Stratum { components: 1, ring: complement });
    strata.insert(s1, Stratum { components: 1, ring: boundary });
    let mut restrictions = BTreeMap::new();
    restrictions.insert((Subset::EMPTY, s1), r);

    NcPairData {
        k: 1,
        dim: 1,
        kappa: vec![1],
        pole_orders: vec![2],
        strata,
        restrictions,
        flags: PairFlags {
            fano: Some(true),
            anticanonical: Some(true),
            pi2_omega_zero: Some(false),
            same_line_bundle: None,
            gw_vanishing: None,
            effective_classes: vec![vec![1]],
        },
        h1_relations: Some(vec![vec![1]]),
    }
}

/// Two elements with dx = y one filtration step up: E_1 is nonzero, E_2
/// vanishes.
pub fn dx_eq_y() -> FilteredComplex<Rat> {
    let mut d = Matrix::zero(2, 2);
    d[(1, 0)] = rat(1);
    FilteredComplex {
        basis: vec![
            FilteredElt { name: "x".to_string(), deg: 0, filt: 0 },
            FilteredElt { name: "y".to_string(), deg: 1, filt: 1 },
        ],
        d,
        mult: None,
    }
}

/// x in filtration 0, a surviving class z in filtration 1, and y = dx two
/// filtration steps up, so the first nonzero differential is d_2.
pub fn d2_only() -> FilteredComplex<Rat> {
    let mut d = Matrix::zero(3, 3);
    d[(2, 0)] = rat(1);
    FilteredComplex {
        basis: vec![
            FilteredElt { name: "x".to_string(), deg: 0, filt: 0 },
            FilteredElt { name: "z".to_string(), deg: 0, filt: 1 },
            FilteredElt { name: "y".to_string(), deg: 1, filt: 2 },
        ],
        d,
        mult: None,
    }
}

/// Not in the catalog: a two-component pair whose restrictions into the
/// deepest stratum are zeroed out. Validation rejects it, and the log ring
/// built without validation is not finitely generated: the {1,2} pieces
/// beyond the primitive one are unreachable by products.
pub fn broken_restriction_pair() -> NcPairData<Rat> {
    let ground = exterior_algebra::<Rat>(&[]).expect("empty generator list");
    let l1 = exterior_algebra::<Rat>(&[("e1", 1)]).expect("one generator");
    let l2 = exterior_algebra::<Rat>(&[("e2", 1)]).expect("one generator");
    let l12 = exterior_algebra::<Rat>(&[("e1", 1), ("e2", 1)]).expect("two generators");

    let s1 = Subset::singleton(1);
    let s2 = Subset::singleton(2);
    let s12 = Subset::from_indices(&[1, 2]);

    let unit_into = |dim: usize| {
        let mut m = Matrix::zero(dim, 1);
        m[(0, 0)] = rat(1);
        m
    };

    let mut strata = BTreeMap::new();
    strata.insert(Subset::EMPTY, Stratum { components: 1, ring: ground.clone() });
    strata.insert(s1, Stratum { components: 1, ring: l1.clone() });
    strata.insert(s2, Stratum { components: 1, ring: l2.clone() });
    strata.insert(s12, Stratum { components: 1, ring: l12 });

    let mut restrictions = BTreeMap::new();
    restrictions.insert((Subset::EMPTY, s1), unit_into(2));
    restrictions.insert((Subset::EMPTY, s2), unit_into(2));
    restrictions.insert((Subset::EMPTY, s12), Matrix::zero(4, ground.dim()));
    restrictions.insert((s1, s12), Matrix::zero(4, l1.dim()));
    restrictions.insert((s2, s12), Matrix::zero(4, l2.dim()));

    NcPairData {
        k: 2,
        dim: 2,
        kappa: vec![1, 1],
        pole_orders: vec![1, 1],
        strata,
        restrictions,
        flags: PairFlags::default(),
        h1_relations: None,
    }
}
