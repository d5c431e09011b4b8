//! Cross-checks wiring the modules together: the log ring of a built generic
//! pair exported as a filtered complex must reproduce the same numbers and
//! products through the spectral-sequence machinery, and the topological
//! presentation must reproduce the log Hilbert table through its independent
//! counting path.

use logcoh_core::arrangements::build_generic_pair;
use logcoh_core::graded::sparse_to_dense;
use logcoh_core::logring::{build_log_ring, presentation_topological, sr_hilbert};
use logcoh_core::specseq::{
    bigrade_log_class, detect_degeneration, einfinity, page_product, total_cohomology,
};
use logcoh_core::Rat;
use num_traits::{One, Zero};

#[test]
fn log_complex_degenerates_and_matches_total_cohomology() {
    for (n, k, w) in [(1, 3, 3), (2, 4, 3)] {
        let pair = build_generic_pair::<Rat>(n, k).unwrap();
        let ring = build_log_ring(&pair, w).unwrap();
        let complex = ring.to_filtered_complex();
        assert!(complex.validate().is_ok(), "({n}, {k})");

        let report = detect_degeneration(&complex, complex.stabilization_page()).unwrap();
        assert!(report.degenerate);
        assert_eq!(report.first_nonzero, None);

        let limit = einfinity(&complex).unwrap();
        let total = total_cohomology(&complex).unwrap();
        // The page is keyed (p, q); the associated graded by (p, total degree).
        let from_page: std::collections::BTreeMap<(i64, i64), usize> =
            limit.dims().into_iter().map(|((p, q), dim)| ((p, p + q), dim)).collect();
        assert_eq!(from_page, total.gr, "({n}, {k})");
        assert_eq!(limit.total_rank(), ring.dim());

        // Every class sits in the cell its weight and degree dictate.
        let table = ring.hilbert_table();
        for ((degree, weight), dim) in &table.entries {
            let cell = bigrade_log_class(*weight, *degree);
            assert_eq!(limit.dims().get(&cell), Some(dim), "({n}, {k}) at {cell:?}");
        }
    }
}

#[test]
fn page_products_agree_with_the_log_product() {
    let pair = build_generic_pair::<Rat>(1, 3).unwrap();
    let ring = build_log_ring(&pair, 3).unwrap();
    let complex = ring.to_filtered_complex();
    let products = page_product(&complex, 1).unwrap();
    assert!(products.leibniz_failures().is_empty());

    // Locate each complex basis vector inside its page cell; with a zero
    // differential the cell representatives are standard basis vectors.
    let n = ring.dim();
    let locate = |index: usize| -> ((i64, i64), usize) {
        for (&key, cell) in &products.page.cells {
            for t in 0..cell.space.dim() {
                let rep = cell.space.rep(t);
                if rep[index] == Rat::one()
                    && rep.iter().filter(|c| !c.is_zero()).count() == 1
                {
                    return (key, t);
                }
            }
        }
        panic!("basis vector {index} not found in any cell");
    };

    let mut compared = 0usize;
    for i in 0..n {
        for j in 0..n {
            let Some(log_product) = ring.product(i, j) else {
                continue;
            };
            let (k1, t1) = locate(i);
            let (k2, t2) = locate(j);
            let (target, coords) = products.product(k1, t1, k2, t2);
            assert_eq!(target, (k1.0 + k2.0, k1.1 + k2.1));
            // Map the cell coordinates back to ambient complex coordinates.
            let mut ambient = vec![Rat::zero(); n];
            if let Some(cell) = products.page.cells.get(&target) {
                for (t, c) in coords.iter().enumerate() {
                    for (row, r) in cell.space.rep(t).iter().enumerate() {
                        ambient[row] = ambient[row].clone() + c.clone() * r.clone();
                    }
                }
            } else {
                assert!(coords.is_empty());
            }
            assert_eq!(ambient, sparse_to_dense(&log_product, n), "({i}, {j})");
            compared += 1;
        }
    }
    assert!(compared > 100, "only {compared} products compared");
}

#[test]
fn presentation_hilbert_matches_the_log_ring() {
    for (n, k) in [(2, 4), (2, 5)] {
        let pair = build_generic_pair::<Rat>(n, k).unwrap();
        let direct = build_log_ring(&pair, 4).unwrap().hilbert_table();
        let presented = presentation_topological(&pair).unwrap().hilbert_table(4);
        assert_eq!(direct.entries, presented.entries, "({n}, {k})");
    }
}

#[test]
fn stanley_reisner_counts_the_degree_zero_classes() {
    for (n, k, w) in [(1, 3, 4), (2, 4, 3), (2, 5, 3)] {
        let pair = build_generic_pair::<Rat>(n, k).unwrap();
        let ring = build_log_ring(&pair, w).unwrap();
        let table = ring.hilbert_table();
        let sr = sr_hilbert(&pair, w);
        for weight in 0..=w {
            assert_eq!(
                table.dim(0, weight),
                sr.get(&weight).copied().unwrap_or(0),
                "({n}, {k}) at weight {weight}"
            );
        }
    }
}

#[test]
fn built_pairs_are_finitely_generated_in_low_weight() {
    for (n, k, w) in [(1, 3, 4), (2, 4, 4), (2, 2, 4)] {
        let pair = build_generic_pair::<Rat>(n, k).unwrap();
        let report = build_log_ring(&pair, w).unwrap().check_finite_generation();
        assert!(report.generated, "({n}, {k}): {:?}", report.first_ungenerated);
    }
}
