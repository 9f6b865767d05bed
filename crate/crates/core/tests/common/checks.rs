//! Checks shared by the regular test suites and the acceptance report.
//! Each returns a short summary or the first counterexample.

use std::collections::BTreeMap;

use eqsing::lattice::{canonical_alphas, davis_check, h1, profile_for_alpha, squares_d_violations};
use eqsing::ordering::MonomialOrdering;
use eqsing::polyring::{ExponentVector, ParamCoefficient, ParamMonomial, ParamPolynomial, Polynomial, Rational};
use eqsing::reduction::{highest_corner, red_nf_buchberger, truncated_local_nf};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{castelnuovo_values, h1_count, in_jet_span, monomials, nonzero_rational, random_poly, small_rational};

/// Generators `x_i^{e_i} + (lower degree)`: pairwise coprime leading
/// monomials under `Dp`, hence a standard basis, so normal form zero is
/// the same as membership.
fn standard_generators(rng: &mut ChaCha8Rng, n: usize) -> Vec<Polynomial> {
    (0..n)
        .map(|i| {
            let e = rng.gen_range(1..=3u32);
            let terms = rng.gen_range(0..=3);
            let mut g = if e > 1 { random_poly(rng, n, e - 1, terms) } else { Polynomial::zero(n) };
            g.add_term(ExponentVector::pure_power(n, i, e), nonzero_rational(rng));
            g
        })
        .collect()
}

/// `red_nf_buchberger(f) = 0` against membership decided by linear algebra
/// on the span of `x^a g_i` up to `deg f`. Returns the number of members.
pub fn membership_agrees(count: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ord = MonomialOrdering::deg_lex();
    let mut members = 0;
    for t in 0..count {
        let n = rng.gen_range(1..=3usize);
        let top = if n == 3 { rng.gen_range(2..=6u32) } else { rng.gen_range(2..=8u32) };
        let gens = standard_generators(&mut rng, n);
        let mut f = Polynomial::zero(n);
        for g in &gens {
            let dg = g.total_degree().unwrap();
            if dg <= top {
                let terms = rng.gen_range(0..=3);
                let h = random_poly(&mut rng, n, top - dg, terms);
                f = f.add(&h.mul(g).unwrap()).unwrap();
            }
        }
        if rng.gen_bool(0.5) {
            f = f.add(&random_poly(&mut rng, n, top, 1)).unwrap();
        }
        let bound = f.total_degree().unwrap_or(0);
        let expected = in_jet_span(&f, &gens, bound);
        let nf = red_nf_buchberger(&f, &gens, &ord).map_err(|e| format!("instance {t}: {e}"))?;
        if nf.is_zero() != expected {
            return Err(format!("instance {t}: nf zero = {}, oracle = {expected}", nf.is_zero()));
        }
        members += expected as usize;
    }
    Ok(members)
}

fn weighted_above(e: &ExponentVector, alpha: &[u32]) -> bool {
    let w: Rational = e
        .entries()
        .iter()
        .zip(alpha)
        .map(|(&x, &a)| Rational::new(x.into(), a.into()))
        .fold(Rational::zero(), |s, t| s + t);
    w > Rational::from_integer(1.into())
}

/// Truncated local normal form of a parametric `Σ x_i^{α_i} + Σ c a_p x^I`
/// (all `I` strictly above the polytope) evaluated at random rationals,
/// against the normal form of the evaluated polynomial.
pub fn substitution_commutes(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..count {
        let n = rng.gen_range(2..=3usize);
        let alpha: Vec<u32> = (0..n).map(|_| rng.gen_range(3..=if n == 2 { 7 } else { 4 })).collect();
        let top: u32 = alpha.iter().sum();
        let candidates: Vec<ExponentVector> = monomials(n, top)
            .into_iter()
            .filter(|e| weighted_above(e, &alpha) && e.entries().iter().filter(|&&x| x > 0).count() > 1)
            .collect();
        let mut f: ParamPolynomial = ParamPolynomial::zero(n);
        for (i, &a) in alpha.iter().enumerate() {
            f.add_term(ExponentVector::pure_power(n, i, a), ParamCoefficient::constant(Rational::from_integer(1.into())));
        }
        let params = rng.gen_range(1..=3u32);
        for p in 0..params {
            for _ in 0..rng.gen_range(1..=2) {
                let e = candidates[rng.gen_range(0..candidates.len())].clone();
                f.add_term(e, ParamCoefficient::monomial(ParamMonomial::var(p), nonzero_rational(&mut rng)));
            }
        }
        let values: Vec<Rational> = (0..params).map(|_| small_rational(&mut rng)).collect();
        let value = |p: u32| values[p as usize].clone();

        let ord = MonomialOrdering::ws_for_alpha(&alpha);
        let leading: Vec<ExponentVector> =
            (0..n).map(|i| ExponentVector::pure_power(n, i, alpha[i] - 1)).collect();
        let stop = highest_corner(&leading, &ord).map_err(|e| e.to_string())?;

        let partials: Vec<ParamPolynomial> = (0..n).map(|i| f.partial_derivative(i)).collect();
        let nf = truncated_local_nf(&f, &partials, &ord, &stop).map_err(|e| format!("instance {t}: {e}"))?;
        let after: BTreeMap<ExponentVector, Rational> = nf
            .into_iter()
            .map(|(e, c)| (e, c.evaluate(&value)))
            .filter(|(_, c)| !c.is_zero())
            .collect();

        let g = f.evaluate_params(&value);
        let gp: Vec<Polynomial> = (0..n).map(|i| g.partial_derivative(i)).collect();
        let before: BTreeMap<ExponentVector, Rational> = truncated_local_nf(&g, &gp, &ord, &stop)
            .map_err(|e| format!("instance {t}: {e}"))?
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if after != before {
            return Err(format!("instance {t} (α = {alpha:?}): {after:?} vs {before:?}"));
        }
    }
    Ok(())
}

pub fn all_canonical(n_max: usize, sum_max: u32) -> Vec<Vec<u32>> {
    (1..=n_max).flat_map(|n| canonical_alphas(n, sum_max)).collect()
}

/// Nonnegativity, vanishing exactly from `t + 1` on, monotonicity under
/// shrinking α, and partial sums `τ − h^1(k)`. Returns the number of specs.
pub fn castelnuovo_properties(n_max: usize, sum_max: u32) -> Result<usize, String> {
    let specs = all_canonical(n_max, sum_max);
    for alpha in &specs {
        let top: i64 = alpha.iter().map(|&a| a as i64 - 2).sum::<i64>() + 2;
        let prof = profile_for_alpha(alpha, top);
        let oracle = castelnuovo_values(alpha, top);
        let lib: Vec<u64> = (0..=top).map(|k| prof.value(k)).collect();
        if lib != oracle {
            return Err(format!("{alpha:?}: profile {lib:?} vs oracle {oracle:?}"));
        }
        // (a): the oracle differences never go negative and the tail is zero
        if (0..=top).any(|k| h1_count(alpha, k - 1) < h1_count(alpha, k)) || oracle[top as usize] != 0 {
            return Err(format!("{alpha:?}: not a nonnegative eventually-zero profile"));
        }
        // (d)
        let t = (-1..).find(|&k| h1_count(alpha, k) == 0).unwrap();
        if prof.t != t || (0..=top).any(|k| (prof.value(k) == 0) != (k > t)) {
            return Err(format!("{alpha:?}: zeros of C do not start at t + 1 = {}", t + 1));
        }
        // (f)
        let tau: u64 = alpha.iter().map(|&a| (a - 1) as u64).product();
        let mut sum = 0;
        for k in 0..=top {
            sum += prof.value(k);
            if sum != tau - h1(alpha, k) {
                return Err(format!("{alpha:?}: partial sum at {k} is {sum}, τ − h1 = {}", tau - h1(alpha, k)));
            }
        }
        // (e)
        for i in 0..alpha.len() {
            if alpha[i] == 2 {
                continue;
            }
            let mut smaller = alpha.clone();
            smaller[i] -= 1;
            let sp = profile_for_alpha(&smaller, top);
            if let Some(k) = (0..=top).find(|&k| sp.value(k) > prof.value(k)) {
                return Err(format!("{smaller:?} exceeds {alpha:?} at {k}"));
            }
        }
    }
    Ok(specs.len())
}

/// The check for `x^d, y^k`, `2 ≤ k ≤ d ≤ max`, also against the oracle
/// profile of the box.
pub fn davis_holds(max: u32) -> Result<usize, String> {
    let mut count = 0;
    for d in 2..=max {
        for k in 2..=d {
            let r = davis_check(d, k).map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(format!("d={d}, k={k}: {r:?}"));
            }
            let oracle = castelnuovo_values(&[d + 1, k + 1], (d + k) as i64);
            if r.profile[..oracle.len()] != oracle[..] {
                return Err(format!("d={d}, k={k}: profile {:?} vs oracle {oracle:?}", r.profile));
            }
            if oracle.iter().any(|&c| c > k as u64)
                || (1..=k + 1).any(|j| oracle[(d + k - j) as usize] != (j - 1) as u64)
            {
                return Err(format!("d={d}, k={k}: oracle profile violates the bounds"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `h^1(d) < d − 1 ⇒ h^1(2d − 2) = 0` on every canonical spec, both
/// through the library and through the oracle count.
pub fn squares_d_holds(n_max: usize, sum_max: u32) -> Result<usize, String> {
    let specs = all_canonical(n_max, sum_max);
    for alpha in &specs {
        let v = squares_d_violations(alpha);
        if !v.is_empty() {
            return Err(format!("{alpha:?}: fails at d = {v:?}"));
        }
        let lo = alpha.iter().copied().max().unwrap().max(3);
        let hi: u32 = alpha.iter().sum();
        for d in lo..=hi {
            let d = d as i64;
            if h1_count(alpha, d) + 1 < d as u64 && h1_count(alpha, 2 * d - 2) != 0 {
                return Err(format!("{alpha:?}: oracle fails at d = {d}"));
            }
        }
    }
    Ok(specs.len())
}
