use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::family::{build_generic_family, Family};
use super::system::{
    analyze_last, check_common, in_box, is_case1, linear_by_label, quadratic_of, reduce_family, solve_diagonal, Case,
    Equation, EquationKind, EquationSystem,
};
use super::StratumError;
use crate::lattice::Role;
use crate::linalg::SymMatrix;
use crate::localsing::{milnor_basis, SingularitySpec};
use crate::polyring::{ExponentVector, ParamCoefficient, Rational};

/// Equations of the substratum for `α_1 < 2α_n`: with `e = q = 0` the
/// normal form of `F` gives one equation per basis monomial; those of
/// degree `≤ d` are solved for `b`, the rest are returned as last
/// equations in the free `g`, `u` coordinates.
pub fn derive_case1(spec: &SingularitySpec, cap: Option<u32>) -> Result<EquationSystem, StratumError> {
    if !is_case1(spec) {
        return Err(StratumError::WrongCase { expected: Case::Case1, alpha: spec.alpha().to_vec() });
    }
    let family = build_generic_family(spec, cap);
    check_common(spec, &family)?;
    let f = family.restricted(&|r| matches!(r, Role::E | Role::Q));
    let nf = reduce_family(&f, spec)?;
    let (equations, solved, last) = basis_rows(spec, &family, &nf, cap)?;
    let solutions = solve_diagonal(&solved, cap)?;
    let last = last
        .into_iter()
        .map(|(p, r)| {
            let residual = r.compose(&|q| solutions.get(&q).cloned());
            analyze_last(p, residual, &family.roles, &family.space, spec.alpha(), None)
        })
        .collect();
    Ok(EquationSystem {
        case: Case::Case1,
        spec: spec.clone(),
        space: family.space,
        roles: family.roles,
        equations,
        solutions,
        last,
        changes: Vec::new(),
        cap,
    })
}

type Rows = (Vec<Equation>, Vec<(u32, ParamCoefficient)>, Vec<(ExponentVector, ParamCoefficient)>);

/// Sorts the normal-form coefficients into equations, one per basis
/// monomial. Coefficients at monomials without a solvable `b` must vanish.
pub(crate) fn basis_rows(
    spec: &SingularitySpec,
    family: &Family,
    nf: &BTreeMap<ExponentVector, ParamCoefficient>,
    cap: Option<u32>,
) -> Result<Rows, StratumError> {
    let d = spec.degree();
    let mut equations = Vec::new();
    let mut solved = Vec::new();
    let mut last = Vec::new();
    for p in milnor_basis(spec) {
        let c = nf.get(&p).cloned().unwrap_or_else(|| ParamCoefficient::zero_capped(cap));
        let target = family.param(&p).filter(|&q| family.role(q) == Role::B);
        let kind = if p.total_degree() > d {
            EquationKind::Last
        } else if target.is_some() {
            EquationKind::Solved
        } else {
            EquationKind::Normalization
        };
        let linear = match kind {
            EquationKind::Normalization => {
                if !c.is_zero() {
                    return Err(StratumError::StrayTerm(p));
                }
                BTreeMap::from([(p.clone(), Rational::one())])
            }
            _ => linear_by_label(&c, &family.space),
        };
        let quadratic = match kind {
            EquationKind::Normalization => SymMatrix::new(Vec::new()),
            _ => quadratic_of(&c),
        };
        match kind {
            EquationKind::Solved => solved.push((target.unwrap(), c.clone())),
            EquationKind::Last => last.push((p.clone(), c.clone())),
            EquationKind::Normalization => {}
        }
        equations.push(Equation { index: p, kind, target, linear, quadratic, expression: c });
    }
    debug_assert!(equations.iter().all(|e| in_box(&e.index, spec.alpha())));
    Ok((equations, solved, last))
}
