use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::family::Family;
use super::StratumError;
use crate::lattice::{dual, Role};
use crate::linalg::{sign, Echelon, SparseRow, SymMatrix};
use crate::localsing::SingularitySpec;
use crate::ordering::MonomialOrdering;
use crate::polyring::{
    format_param_coefficient, Coeff, ExponentVector, ParamCoefficient, ParamMonomial, ParamPolynomial, ParamSpace,
    Rational,
};
use crate::reduction::truncated_local_nf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `α_1 < 2α_n`
    Case1,
    /// `α_1 ≥ 2α_n`
    Case2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquationKind {
    /// A coordinate that vanishes on the substratum (`e`, `q`, or a
    /// coefficient fixed by the normalization of the family).
    Normalization,
    /// An equation solved for the coordinate it is linear in.
    Solved,
    /// An equation without linear part.
    Last,
}

#[derive(Clone, Debug)]
pub struct Equation {
    /// Monomial labelling the equation.
    pub index: ExponentVector,
    pub kind: EquationKind,
    pub target: Option<u32>,
    /// Linear part, keyed by the monomial whose coefficient it involves.
    pub linear: BTreeMap<ExponentVector, Rational>,
    pub quadratic: SymMatrix,
    pub expression: ParamCoefficient,
}

/// `x_k ↦ x_k − factor · x^shift`, chosen to clear the coefficient of
/// `x^target`.
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    pub variable: usize,
    pub target: ExponentVector,
    pub shift: ExponentVector,
    pub factor: ParamCoefficient,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCoefficient {
    pub index: ExponentVector,
    pub dual: ExponentVector,
    /// Coefficient of `g_I g_dual(I)` in the last equation.
    #[serde(serialize_with = "ser_rational")]
    pub coefficient: Rational,
    pub sign: i8,
    /// Part contributed by the coordinate changes, when there were any.
    #[serde(serialize_with = "ser_opt_rational")]
    pub chain: Option<Rational>,
    /// Part contributed by the normal form.
    #[serde(serialize_with = "ser_opt_rational")]
    pub reduction: Option<Rational>,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// The equation left after eliminating every solved coordinate.
#[derive(Clone, Debug)]
pub struct LastEquation {
    pub index: ExponentVector,
    pub residual: ParamCoefficient,
    pub linear_is_zero: bool,
    pub quadratic: SymMatrix,
    pub quadratic_rank: usize,
    /// Rank of the quadratic part restricted to the `g` coordinates.
    pub g_rank: usize,
    /// No quadratic term involves a non-`g` coordinate.
    pub only_g_in_quadratic: bool,
    /// Every `g`-entry off the dual pairing vanishes.
    pub off_pairing_zero: bool,
    pub pairs: Vec<PairCoefficient>,
    /// Every term of parameter-degree ≥ 3 has at least two `g` factors.
    pub theta_in_g2m: bool,
    /// Every first partial derivative has a `g` factor in each term.
    pub derivatives_in_g: bool,
}

#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub case: Case,
    pub spec: SingularitySpec,
    pub space: ParamSpace,
    pub roles: Vec<Role>,
    pub equations: Vec<Equation>,
    /// Solved coordinates as polynomials in the free `g`, `u` coordinates.
    pub solutions: BTreeMap<u32, ParamCoefficient>,
    pub last: Vec<LastEquation>,
    pub changes: Vec<CoordinateChange>,
    pub cap: Option<u32>,
}

impl EquationSystem {
    /// Rank of the linear parts of the equations indexed by the monomial
    /// basis.
    pub fn linear_rank(&self) -> usize {
        let mut cols: HashMap<ExponentVector, usize> = HashMap::new();
        let mut ech = Echelon::new();
        for eq in self.equations.iter().filter(|e| in_box(&e.index, self.spec.alpha())) {
            let row: SparseRow = eq
                .linear
                .iter()
                .map(|(l, c)| {
                    let n = cols.len();
                    (*cols.entry(l.clone()).or_insert(n), c.clone())
                })
                .collect();
            ech.insert(row);
        }
        ech.rank()
    }

    /// Coordinates not eliminated by the system.
    pub fn free_coordinates(&self) -> Vec<u32> {
        (0..self.roles.len() as u32)
            .filter(|p| matches!(self.roles[*p as usize], Role::G | Role::U))
            .collect()
    }

    /// Every solved coordinate is in `G^2`.
    pub fn solutions_in_g2(&self) -> bool {
        self.solutions.values().all(|s| s.terms().all(|(m, _)| g_multiplicity(m, &self.roles) >= 2))
    }

    pub fn param_name(&self, p: u32) -> String {
        self.space.name(p)
    }

    /// Lines `a[I] = expr` for the solved coordinates and `0 = expr` for
    /// the last equations, in the polynomial grammar.
    pub fn render(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (p, s) in &self.solutions {
            out.push(format!("{} = {}", self.space.name(*p), format_param_coefficient(s, &self.space)));
        }
        for l in &self.last {
            out.push(format!("0 = {}", format_param_coefficient(&l.residual, &self.space)));
        }
        out
    }
}

pub(crate) fn in_box(i: &ExponentVector, alpha: &[u32]) -> bool {
    i.entries().iter().zip(alpha).all(|(&e, &a)| e + 2 <= a)
}

pub(crate) fn g_multiplicity(m: &ParamMonomial, roles: &[Role]) -> u32 {
    m.factors().iter().filter(|(p, _)| roles[*p as usize] == Role::G).map(|(_, e)| e).sum()
}

/// Truncated local normal form of `f` with respect to its partials under
/// `Ws(1/α)`, halted at the highest corner.
pub(crate) fn reduce_family(
    f: &ParamPolynomial,
    spec: &SingularitySpec,
) -> Result<BTreeMap<ExponentVector, ParamCoefficient>, StratumError> {
    let ord = MonomialOrdering::ws_for_alpha(spec.alpha());
    let partials: Vec<ParamPolynomial> = (0..spec.n()).map(|i| f.partial_derivative(i)).collect();
    let nf = truncated_local_nf(f, &partials, &ord, &spec.corner())?;
    Ok(nf.into_iter().collect())
}

pub(crate) fn linear_by_label(c: &ParamCoefficient, space: &ParamSpace) -> BTreeMap<ExponentVector, Rational> {
    c.linear_part().into_iter().map(|(p, v)| (space.label(p).clone(), v)).collect()
}

pub(crate) fn quadratic_of(c: &ParamCoefficient) -> SymMatrix {
    SymMatrix::from_quadratic_terms(&c.quadratic_terms())
}

/// Solves `E_t = 0` for each target `t` by fixed-point iteration in the
/// truncated parameter ring. Each `E_t` must contain `t` linearly with a
/// nonzero constant coefficient and no other target linearly.
pub(crate) fn solve_diagonal(
    eqs: &[(u32, ParamCoefficient)],
    cap: Option<u32>,
) -> Result<BTreeMap<u32, ParamCoefficient>, StratumError> {
    let Some(k) = cap else {
        return Err(StratumError::Uncapped);
    };
    let mut rest = Vec::with_capacity(eqs.len());
    let targets: BTreeSet<u32> = eqs.iter().map(|(t, _)| *t).collect();
    for (t, e) in eqs {
        let lin = e.linear_part();
        let c = lin.get(t).cloned().ok_or(StratumError::NoLinearPart(*t))?;
        if let Some(o) = lin.keys().find(|o| *o != t && targets.contains(o)) {
            return Err(StratumError::NotDiagonal { target: *t, other: *o });
        }
        let mut r = e.clone();
        r.sub_assign_ref(&ParamCoefficient::var(*t).scale(&c));
        rest.push((*t, r.scale(&(-c.recip()))));
    }
    let mut sol: BTreeMap<u32, ParamCoefficient> =
        targets.iter().map(|t| (*t, ParamCoefficient::zero_capped(cap))).collect();
    // each pass fixes at least one more parameter-degree
    for _ in 0..=k + 1 {
        let next: BTreeMap<u32, ParamCoefficient> =
            rest.iter().map(|(t, r)| (*t, r.compose(&|p| sol.get(&p).cloned()))).collect();
        if next == sol {
            return Ok(sol);
        }
        sol = next;
    }
    Ok(sol)
}

/// Certificates of one last equation after substituting the solutions.
pub(crate) fn analyze_last(
    index: ExponentVector,
    residual: ParamCoefficient,
    roles: &[Role],
    space: &ParamSpace,
    alpha: &[u32],
    chain_quadratic: Option<&BTreeMap<(u32, u32), Rational>>,
) -> LastEquation {
    let is_g = |p: u32| roles[p as usize] == Role::G;
    let linear_is_zero = residual.linear_part().is_empty();
    let qterms = residual.quadratic_terms();
    let quadratic = SymMatrix::from_quadratic_terms(&qterms);
    let g_part = quadratic.restrict(&is_g);
    let only_g_in_quadratic = qterms.keys().all(|&(i, j)| is_g(i) && is_g(j));
    let dual_of = |p: u32| dual(space.label(p), alpha).and_then(|d| space.get(&d)).map(|d| d as u32);
    let off_pairing_zero = qterms.keys().filter(|&&(i, j)| is_g(i) && is_g(j)).all(|&(i, j)| dual_of(i) == Some(j));
    let mut pairs = Vec::new();
    let mut seen = BTreeSet::new();
    for p in (0..roles.len() as u32).filter(|&p| is_g(p)) {
        let Some(q) = dual_of(p) else { continue };
        let key = (p.min(q), p.max(q));
        if !seen.insert(key) {
            continue;
        }
        let coefficient = qterms.get(&key).cloned().unwrap_or_else(Rational::zero);
        let (chain, reduction) = match chain_quadratic {
            Some(cq) => {
                let ch = cq.get(&key).cloned().unwrap_or_else(Rational::zero);
                (Some(ch.clone()), Some(&coefficient - ch))
            }
            None => (None, None),
        };
        pairs.push(PairCoefficient {
            index: space.label(key.0).clone(),
            dual: space.label(key.1).clone(),
            sign: sign(&coefficient),
            coefficient,
            chain,
            reduction,
        });
    }
    let theta_in_g2m = residual
        .terms()
        .filter(|(m, _)| m.degree() >= 3)
        .all(|(m, _)| g_multiplicity(m, roles) >= 2);
    let derivatives_in_g = residual.variables().into_iter().all(|v| {
        residual.derivative(v).terms().all(|(m, _)| g_multiplicity(m, roles) >= 1)
    });
    LastEquation {
        index,
        linear_is_zero,
        quadratic_rank: quadratic.rank(),
        g_rank: g_part.rank(),
        quadratic,
        only_g_in_quadratic,
        off_pairing_zero,
        pairs,
        theta_in_g2m,
        derivatives_in_g,
        residual,
    }
}

/// `1 − w(I)` for weights `1/α`.
pub(crate) fn one_minus_weight(i: &ExponentVector, alpha: &[u32]) -> Rational {
    let w: Vec<Rational> = alpha.iter().map(|&a| Rational::new(1.into(), a.into())).collect();
    Rational::one() - i.weighted_degree(&w)
}

pub(crate) fn is_case1(spec: &SingularitySpec) -> bool {
    let a = spec.alpha();
    a[0] < 2 * a[a.len() - 1]
}

pub(crate) fn check_common(spec: &SingularitySpec, family: &Family) -> Result<(), StratumError> {
    if !spec.degree_dominates() {
        return Err(StratumError::DegreeTooSmall { degree: spec.degree(), max_alpha: spec.alpha()[0] });
    }
    debug_assert_eq!(family.roles.len(), family.space.len());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::frac;

    #[test]
    fn fixed_point_solves_triangular_system() {
        // t0 + t1^2 + g^2 = 0, 2 t1 + g*t0 = 0
        let t0 = ParamCoefficient::var(0).with_cap(Some(3));
        let t1 = ParamCoefficient::var(1).with_cap(Some(3));
        let g = ParamCoefficient::var(2).with_cap(Some(3));
        let mut e0 = t0.clone();
        e0.add_assign_ref(&t1.mul_ref(&t1));
        e0.add_assign_ref(&g.mul_ref(&g));
        let mut e1 = t1.scale(&frac(2, 1));
        e1.add_assign_ref(&g.mul_ref(&t0));
        let sol = solve_diagonal(&[(0, e0.clone()), (1, e1.clone())], Some(3)).unwrap();
        // t0 = -g^2, t1 = g^3/2
        assert_eq!(sol[&0], g.mul_ref(&g).neg_ref());
        assert_eq!(sol[&1], g.mul_ref(&g).mul_ref(&g).scale(&frac(1, 2)));
        for e in [e0, e1] {
            assert!(e.compose(&|p| sol.get(&p).cloned()).is_zero());
        }
    }

    #[test]
    fn fixed_point_rejects_missing_linear_part() {
        let g = ParamCoefficient::var(2).with_cap(Some(3));
        assert!(matches!(
            solve_diagonal(&[(0, g.mul_ref(&g))], Some(3)),
            Err(StratumError::NoLinearPart(0))
        ));
    }
}
