use eqsing::localsing::{position_for_alpha, Position, SingularitySpec};
use eqsing::polyring::{Coeff, ExponentVector, Rational};
use eqsing::stratum::{
    apply_change, build_generic_family, change_targets, classify_stratum, coordinate_chain, derive, derive_case1,
    replay_changes, Case, CoordinateChange, Verdict,
};
use num_traits::Zero;

fn spec(alpha: &[u32], d: u32) -> SingularitySpec {
    SingularitySpec::new(alpha, Some(d), None).unwrap()
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn classification_ladder() {
    let cases: [(&[u32], u32, Verdict, usize, usize); 5] = [
        (&[6, 5], 6, Verdict::NonReducedDouble, 1, 19),
        (&[7, 5], 7, Verdict::TwoSmoothComponents, 2, 23),
        (&[6, 6], 7, Verdict::TwoSmoothComponents, 2, 24),
        (&[8, 5], 8, Verdict::ReducedIrreducibleA1, 3, 27),
        (&[7, 6], 8, Verdict::ReducedIrreducibleA1, 3, 29),
    ];
    for (alpha, d, verdict, q, lin) in cases {
        let c = classify_stratum(&spec(alpha, d), Some(3)).unwrap();
        assert_eq!(c.case, Case::Case1);
        assert_eq!(c.verdict, verdict, "{alpha:?}");
        assert_eq!(c.quadratic_rank, Some(q), "{alpha:?}");
        assert_eq!(c.linear_rank, lin, "{alpha:?}");
        assert_eq!(c.linear_rank as u64, c.tau - c.h1, "{alpha:?}");
        assert!(c.last_linear_zero && c.derivatives_in_g && c.theta_in_g2m && c.solutions_in_g2);
        assert!(c.only_g_in_quadratic && c.off_pairing_zero);
    }
}

#[test]
fn gur1_last_equation() {
    let sys = derive_case1(&spec(&[6, 5], 6), Some(3)).unwrap();
    let l = &sys.last[0];
    assert_eq!(l.index, ExponentVector::new(vec![4, 3]));
    assert_eq!(l.pairs.len(), 1);
    assert_eq!(l.pairs[0].coefficient, frac(8, 75));
    assert_eq!(sys.render().last().unwrap(), "0 = 8/75*a[2,4]^2");
}

#[test]
fn exceptional_quartic_threefold() {
    let c = classify_stratum(&spec(&[3, 3, 3, 3], 3), Some(3)).unwrap();
    assert_eq!(c.verdict, Verdict::SmoothNonExpectedDim { actual: 19, expected: 18 });
    assert_eq!(c.linear_rank, 15);
}

#[test]
fn three_variables_generic() {
    let c = classify_stratum(&spec(&[4, 4, 4], 5), Some(3)).unwrap();
    assert_eq!(c.linear_rank, 26);
    assert_eq!(c.quadratic_rank, Some(9));
    assert_eq!(c.g_rank, Some(9));
    assert!(c.derivatives_in_g && c.off_pairing_zero && c.only_g_in_quadratic);
    assert!(c.pairs.iter().all(|p| p.coefficient > Rational::zero()));
}

#[test]
fn second_case_classification() {
    let s = spec(&[10, 5], 10);
    let sys = derive(&s, Some(3)).unwrap();
    assert_eq!(sys.case, Case::Case2);
    assert_eq!(sys.changes.len(), 7);
    assert!(sys.pair_signs_agree());
    let c = classify_stratum(&s, Some(3)).unwrap();
    assert_eq!(c.verdict, Verdict::ReducedIrreducibleA1);
    assert_eq!(c.quadratic_rank, Some(5));
    assert_eq!(c.linear_rank, 35);
    let p = c.pairs.iter().find(|p| p.index == ExponentVector::new(vec![2, 4])).unwrap();
    assert_eq!(p.coefficient, frac(8, 25));
}

fn inverse(ch: &CoordinateChange) -> CoordinateChange {
    CoordinateChange { factor: ch.factor.neg_ref(), ..ch.clone() }
}

/// Replaying the chain reproduces it, undoing it in reverse returns the
/// input, and afterwards no target monomial on or below the polytope
/// carries a coefficient.
#[test]
fn chain_round_trip() {
    for (alpha, d) in [(vec![10u32, 5], 10u32), (vec![9, 4], 9), (vec![8, 4], 8)] {
        let s = spec(&alpha, d);
        let fam = build_generic_family(&s, Some(3));
        let bound = Some(d + 3);
        let (g, changes) = coordinate_chain(&s, &fam.poly).unwrap();
        assert!(!changes.is_empty());
        assert_eq!(replay_changes(&fam.poly, &changes, &|_| None, bound), g);
        let mut back = g.clone();
        for ch in changes.iter().rev() {
            back = apply_change(&back, &inverse(ch), bound);
        }
        let mut orig = fam.poly.clone();
        orig.retain(|e, _| e.total_degree() <= d + 3);
        assert_eq!(back, orig, "{alpha:?}");
        for k in 0..s.n() {
            for j in change_targets(&s, k) {
                if position_for_alpha(&j, &alpha) != Position::Above {
                    assert!(g.coefficient(&j).is_none_or(|c| c.is_zero()), "{alpha:?}: {j:?}");
                }
            }
        }
    }
}
