use std::collections::BTreeMap;

use eqsing::localsing::SingularitySpec;
use eqsing::polyring::{ExponentVector, ParamCoefficient, ParamMonomial, ParamPolynomial, Rational};
use eqsing::stabilize::{
    check_h1_tau_preserved, combined_quadratic_rank, derive_suspended_system, eliminate_mixed_terms,
    witness_reduced_component, QuadraticRanks, SuspensionSpec,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn suspension(alpha: &[u32], d: u32, m: usize) -> SuspensionSpec {
    SuspensionSpec::new(SingularitySpec::new(alpha, Some(d), None).unwrap(), m, false).unwrap()
}

fn exps(nx: usize, k: u32) -> Vec<ExponentVector> {
    (0..=k).flat_map(|j| eqsing::polyring::monomials_of_degree(nx, j)).collect()
}

/// `g(x) + y^2 + y L(x)` becomes `g − ¼ Σ_{(I,J)} c_I c_J x^{I+J} + y^2`,
/// the sum over ordered pairs.
#[test]
fn elimination_completes_the_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let nx = rng.gen_range(1..=3usize);
        let max_degree = rng.gen_range(1..=3u32);
        let nv = nx + 1;
        let lift = |e: &ExponentVector, y: u32| e.extended(&[y]);
        let mut f = ParamPolynomial::zero(nv);
        f.add_term(ExponentVector::pure_power(nv, nx, 2), ParamCoefficient::one());
        let pool = exps(nx, max_degree);
        let mut l: BTreeMap<ExponentVector, ParamCoefficient> = BTreeMap::new();
        for p in 0..rng.gen_range(1..=4u32) {
            let e = pool[rng.gen_range(0..pool.len())].clone();
            let c = ParamCoefficient::monomial(ParamMonomial::var(p), Rational::from_integer(rng.gen_range(1..5).into()));
            let entry = l.entry(e).or_insert_with(ParamCoefficient::zero);
            *entry = entry.clone() + c;
        }
        for (e, c) in &l {
            f.add_term(lift(e, 1), c.clone());
        }
        let g_terms: Vec<(ExponentVector, ParamCoefficient)> = (0..3)
            .map(|_| (pool[rng.gen_range(0..pool.len())].clone(), ParamCoefficient::var(10)))
            .collect();
        for (e, c) in &g_terms {
            f.add_term(lift(e, 0), c.clone());
        }

        let (h, map) = eliminate_mixed_terms(&f, nx, nx, max_degree).unwrap();

        let mut expected: BTreeMap<ExponentVector, ParamCoefficient> = BTreeMap::new();
        for (e, c) in &g_terms {
            let entry = expected.entry(e.clone()).or_insert_with(ParamCoefficient::zero);
            *entry = entry.clone() + c.clone();
        }
        let quarter = ParamCoefficient::constant(Rational::new((-1).into(), 4.into()));
        for (i, ci) in &l {
            for (j, cj) in &l {
                let e = i.add(j);
                if e.total_degree() > max_degree + 2 {
                    continue;
                }
                let entry = expected.entry(e).or_insert_with(ParamCoefficient::zero);
                *entry = entry.clone() + quarter.clone() * ci.clone() * cj.clone();
            }
        }
        expected.retain(|_, c| !c.is_zero());
        assert_eq!(map, expected);
        // only y^2 carries y
        let ys: Vec<_> = h.terms().filter(|(e, _)| e.get(nx) > 0).map(|(e, _)| e.clone()).collect();
        assert_eq!(ys, vec![ExponentVector::pure_power(nv, nx, 2)]);
        let (again, _) = eliminate_mixed_terms(&h, nx, nx, max_degree).unwrap();
        assert_eq!(again, h);
    }
}

#[test]
fn suspended_ranks() {
    let cases: [(&[u32], u32, usize, usize, QuadraticRanks); 5] = [
        (&[6, 5], 6, 1, 19, QuadraticRanks { w0: 1, w: vec![14], combined: 15 }),
        (&[6, 5], 6, 2, 19, QuadraticRanks { w0: 1, w: vec![14, 14], combined: 29 }),
        (&[3, 3, 3, 3], 3, 1, 15, QuadraticRanks { w0: 0, w: vec![6], combined: 6 }),
        (&[4, 4, 3], 4, 1, 17, QuadraticRanks { w0: 3, w: vec![10], combined: 13 }),
        (&[4, 4, 3], 4, 2, 17, QuadraticRanks { w0: 3, w: vec![10, 10], combined: 23 }),
    ];
    for (alpha, d, m, lin, ranks) in cases {
        let sys = derive_suspended_system(&suspension(alpha, d, m), Some(3)).unwrap();
        assert_eq!(sys.linear_rank(), lin, "{alpha:?} m={m}");
        assert_eq!(combined_quadratic_rank(&sys).unwrap(), ranks, "{alpha:?} m={m}");
    }
}

#[test]
fn invariants_preserved() {
    for (alpha, d, m, h, tau) in [(&[6u32, 5][..], 6, 1, 1, 20), (&[6, 5], 6, 2, 1, 20), (&[4, 4, 3], 4, 1, 1, 18)] {
        let r = check_h1_tau_preserved(&suspension(alpha, d, m), Some(3)).unwrap();
        assert_eq!((r.h1, r.tau), (h, tau), "{alpha:?} m={m}");
        assert_eq!((r.base_h1, r.base_tau), (h, tau));
        assert_eq!(r.h1_from_system, h);
    }
}

#[test]
fn witness_is_reproducible() {
    let sys = derive_suspended_system(&suspension(&[6, 5], 6, 2), Some(3)).unwrap();
    let a = witness_reduced_component(&sys, 7).unwrap();
    let b = witness_reduced_component(&sys, 7).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_ne!(a.minor, "0");
    assert!(a.minor_factorizes);
    assert_eq!(a.jacobian_rank as u64, a.tau);
    assert_eq!(a.tau, 20);
}
