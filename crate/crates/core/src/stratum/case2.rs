use std::collections::BTreeMap;

use num_traits::Zero;

use super::case1::basis_rows;
use super::family::build_generic_family;
use super::system::{
    analyze_last, check_common, is_case1, linear_by_label, one_minus_weight, quadratic_of, reduce_family,
    solve_diagonal, Case, CoordinateChange, Equation, EquationKind, EquationSystem,
};
use super::StratumError;
use crate::lattice::Role;
use crate::linalg::sign;
use crate::localsing::{position_for_alpha, Position, SingularitySpec};
use crate::polyring::{box_points, Coeff, ExponentVector, ParamCoefficient, ParamPolynomial, Poly, Rational};

/// Passes over all levels before the chain is declared divergent.
const MAX_SWEEPS: usize = 32;
/// Changes within one level per pass.
const MAX_LEVEL_CHANGES: usize = 4096;

/// Equations of the substratum for `α_1 ≥ 2α_n`.
///
/// A chain of substitutions `x_k ↦ x_k − c·x^{J'}` first clears every
/// coefficient of `x_k^{α_k−1} x^{J'}` that lies on or below the polytope
/// (and the `g`-coefficients of the level shapes, whatever their weight).
/// The remaining `e`, `q` coefficients of the new polynomial give equations
/// solved for `e`, `q`; after imposing them the normal form yields the `b`
/// equations and the last equations as in the first case.
pub fn derive_case2(spec: &SingularitySpec, cap: Option<u32>) -> Result<EquationSystem, StratumError> {
    if is_case1(spec) {
        return Err(StratumError::WrongCase { expected: Case::Case2, alpha: spec.alpha().to_vec() });
    }
    if cap.is_none() {
        return Err(StratumError::Uncapped);
    }
    let family = build_generic_family(spec, cap);
    check_common(spec, &family)?;
    let alpha = spec.alpha();
    let (mut f, changes) = coordinate_chain(spec, &family.poly)?;

    let hc = spec.corner();
    let mut chain_quadratic: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    if let Some(c) = f.coefficient(&hc) {
        let s = one_minus_weight(&hc, alpha);
        for (k, v) in c.quadratic_terms() {
            chain_quadratic.insert(k, v * &s);
        }
    }

    // every term on or below the polytope must now be a pure power or carry
    // an `e`/`q` coordinate
    let mut pre: BTreeMap<ExponentVector, (u32, ParamCoefficient)> = BTreeMap::new();
    for p in family.params_with(Role::E).into_iter().chain(family.params_with(Role::Q)) {
        let label = family.label(p).clone();
        let c = f.remove_term(&label).unwrap_or_else(|| ParamCoefficient::zero_capped(cap));
        pre.insert(label, (p, c));
    }
    let n = spec.n();
    for (e, c) in f.terms() {
        let pure = (0..n).any(|i| *e == ExponentVector::pure_power(n, i, alpha[i]));
        if !pure && position_for_alpha(e, alpha) != Position::Above && !c.is_zero() {
            return Err(StratumError::StrayTerm(e.clone()));
        }
    }

    let nf = reduce_family(&f, spec)?;
    let (mut equations, mut solved, last) = basis_rows(spec, &family, &nf, cap)?;
    for eq in equations.iter_mut() {
        if let Some((p, c)) = pre.remove(&eq.index) {
            *eq = Equation {
                index: eq.index.clone(),
                kind: EquationKind::Solved,
                target: Some(p),
                linear: linear_by_label(&c, &family.space),
                quadratic: quadratic_of(&c),
                expression: c.clone(),
            };
            solved.push((p, c));
        }
    }
    // `q` equations, outside the monomial basis
    for (index, (p, c)) in pre {
        equations.push(Equation {
            index,
            kind: EquationKind::Solved,
            target: Some(p),
            linear: linear_by_label(&c, &family.space),
            quadratic: quadratic_of(&c),
            expression: c.clone(),
        });
        solved.push((p, c));
    }
    let solutions = solve_diagonal(&solved, cap)?;
    let last = last
        .into_iter()
        .map(|(p, r)| {
            let residual = r.compose(&|q| solutions.get(&q).cloned());
            let chain = (p == hc).then_some(&chain_quadratic);
            analyze_last(p, residual, &family.roles, &family.space, alpha, chain)
        })
        .collect();
    Ok(EquationSystem {
        case: Case::Case2,
        spec: spec.clone(),
        space: family.space,
        roles: family.roles,
        equations,
        solutions,
        last,
        changes,
        cap,
    })
}

/// Monomials `x_k^{α_k−1} x^{J'}` cleared at level `k`, sorted by weight
/// then lex.
pub fn change_targets(spec: &SingularitySpec, k: usize) -> Vec<ExponentVector> {
    let alpha = spec.alpha();
    let n = spec.n();
    let limit = spec.degree() + 3;
    let mut bounds: Vec<u32> = alpha.iter().map(|&a| a - 2).collect();
    bounds[k] = 0;
    let w = spec.weights();
    let mut out: Vec<ExponentVector> = box_points(&bounds)
        .into_iter()
        .filter(|s| !s.is_zero())
        .map(|s| s.with_entry(k, alpha[k] - 1))
        .filter(|j| {
            let level_shape = k > 0 && (k + 1..n).all(|i| j.get(i) == 0) && j.total_degree() <= limit;
            level_shape || position_for_alpha(j, alpha) != Position::Above
        })
        .collect();
    out.sort_by(|a, b| a.weighted_degree(&w).cmp(&b.weighted_degree(&w)).then_with(|| a.cmp(b)));
    out
}

/// Runs the substitution chain on `f`, truncating at degree `d + 3` after
/// every step, and returns the new polynomial with the changes applied.
pub fn coordinate_chain(
    spec: &SingularitySpec,
    f: &ParamPolynomial,
) -> Result<(ParamPolynomial, Vec<CoordinateChange>), StratumError> {
    let n = spec.n();
    let bound = Some(spec.degree() + 3);
    let targets: Vec<Vec<ExponentVector>> = (0..n).map(|k| change_targets(spec, k)).collect();
    let mut f = f.clone();
    let mut changes = Vec::new();
    for _ in 0..MAX_SWEEPS {
        let mut changed = false;
        for k in (0..n).rev() {
            let mut steps = 0;
            while let Some(j) = targets[k].iter().find(|j| f.coefficient(j).is_some_and(|c| !c.is_zero())) {
                if steps == MAX_LEVEL_CHANGES {
                    return Err(StratumError::ChainDidNotTerminate(changes.len()));
                }
                let change = clearing_change(spec, &f, k, j)?;
                f = apply_change(&f, &change, bound);
                changes.push(change);
                changed = true;
                steps += 1;
            }
        }
        if !changed {
            return Ok((f, changes));
        }
    }
    Err(StratumError::ChainDidNotTerminate(changes.len()))
}

fn clearing_change(
    spec: &SingularitySpec,
    f: &ParamPolynomial,
    k: usize,
    j: &ExponentVector,
) -> Result<CoordinateChange, StratumError> {
    let n = spec.n();
    let ak = spec.alpha()[k];
    let pure = ExponentVector::pure_power(n, k, ak);
    let u = f.coefficient(&pure).and_then(|u| u.unit_inverse()).ok_or(StratumError::NonUnit(pure))?;
    let c = f.coefficient(j).expect("target present");
    let factor = c.mul_ref(&u).scale(&Rational::new(1.into(), ak.into()));
    Ok(CoordinateChange {
        variable: k,
        target: j.clone(),
        shift: j.with_entry(k, 0),
        factor,
    })
}

/// `x_k ↦ x_k − factor · x^shift`.
pub fn apply_change(f: &ParamPolynomial, change: &CoordinateChange, bound: Option<u32>) -> ParamPolynomial {
    let n = f.nvars();
    let mut repl: ParamPolynomial = Poly::var(n, change.variable);
    repl.add_term(change.shift.clone(), change.factor.neg_ref());
    f.substitute_bounded(change.variable, &repl, bound)
}

/// Replays recorded changes on `f` after mapping each factor's parameters
/// through `map`.
pub fn replay_changes(
    f: &ParamPolynomial,
    changes: &[CoordinateChange],
    map: &dyn Fn(u32) -> Option<ParamCoefficient>,
    bound: Option<u32>,
) -> ParamPolynomial {
    let mut g = f.clone();
    for ch in changes {
        let mapped = CoordinateChange { factor: ch.factor.compose(map), ..ch.clone() };
        if mapped.factor.is_zero() {
            continue;
        }
        g = apply_change(&g, &mapped, bound);
    }
    g
}

impl EquationSystem {
    /// For every pair, whether the chain and normal-form parts of its
    /// coefficient have the same sign (ignoring vanishing parts).
    pub fn pair_signs_agree(&self) -> bool {
        self.last.iter().flat_map(|l| &l.pairs).all(|p| match (&p.chain, &p.reduction) {
            (Some(a), Some(b)) => a.is_zero() || b.is_zero() || sign(a) == sign(b),
            _ => true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> SingularitySpec {
        SingularitySpec::new(&[10, 5], Some(10), None).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn targets_start_on_the_polytope() {
        let t = change_targets(&spec(), 1);
        assert_eq!(t[0], ev(&[1, 4]));
        assert_eq!(t[1], ev(&[2, 4]));
        assert!(t.iter().all(|j| j.get(1) == 4));
        // level 0 has no shapes on or below the polytope here
        assert!(change_targets(&spec(), 0).is_empty());
    }

    #[test]
    fn single_change_clears_its_target_to_first_order() {
        let s = spec();
        let fam = build_generic_family(&s, Some(1));
        let ch = clearing_change(&s, &fam.poly, 1, &ev(&[2, 4])).unwrap();
        let g = apply_change(&fam.poly, &ch, Some(13));
        assert!(g.coefficient(&ev(&[2, 4])).is_none_or(|c| c.is_zero()));
    }

    #[test]
    fn rejects_first_case() {
        let s = SingularitySpec::new(&[6, 5], Some(6), None).unwrap();
        assert!(matches!(derive_case2(&s, Some(3)), Err(StratumError::WrongCase { .. })));
    }
}
