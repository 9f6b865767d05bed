mod common;

use common::{checks, h1_count};
use eqsing::lattice::{h1, h1_table};
use eqsing::localsing::{tjurina_data, SingularitySpec};

#[test]
fn castelnuovo_properties_on_canonical_specs() {
    assert!(checks::castelnuovo_properties(4, 20).unwrap() > 100);
}

#[test]
fn davis_check_up_to_eight() {
    assert_eq!(checks::davis_holds(8).unwrap(), 28);
}

#[test]
fn squares_d_implication_exhaustive() {
    assert!(checks::squares_d_holds(4, 24).unwrap() > 200);
}

#[test]
fn h1_matches_box_count() {
    for alpha in checks::all_canonical(3, 14) {
        for k in -1..=alpha.iter().sum::<u32>() as i64 {
            assert_eq!(h1(&alpha, k), h1_count(&alpha, k), "{alpha:?} at {k}");
        }
    }
}

/// `h^1(k) = τ − rank` of degree-`≤ k` polynomials in the Tjurina algebra,
/// computed by jet-space linear algebra.
#[test]
fn h1_matches_tangent_rank() {
    for (alpha, d) in [(vec![6, 5], 6), (vec![4, 3], 4), (vec![3, 3, 3], 3), (vec![5, 5], 5)] {
        let spec = SingularitySpec::new(&alpha, Some(d), None).unwrap();
        let t = tjurina_data(&spec.polynomial(), None).unwrap();
        assert_eq!(t.tau, spec.tau());
        for k in 0..=alpha.iter().sum::<u32>() {
            assert_eq!(h1(&alpha, k as i64), t.tau - t.tangent_rank(k), "{alpha:?} at {k}");
        }
    }
}

#[test]
fn gur1_table() {
    let rows = h1_table(&[6, 5], 4, 8);
    let h: Vec<u64> = rows.iter().map(|r| r.h1).collect();
    assert_eq!(h, vec![6, 3, 1, 0, 0]);
}
