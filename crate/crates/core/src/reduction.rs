//! Normal forms: global division by a generator list, highest corners of
//! cofinite monomial ideals, and the local reduction halted at the highest
//! corner.

use std::cmp::Ordering;

use thiserror::Error;

use crate::ordering::{MonomialOrdering, OrderingError};
use crate::polyring::{box_points, Coeff, ExponentVector, Poly, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("ordering {0} is local; global reduction may not terminate")]
    LocalOrdering(String),
    #[error("ordering {0} is global; local reduction needs a local ordering")]
    GlobalOrdering(String),
    #[error("leading monomials do not generate a cofinite ideal (variable x{0} has no pure power)")]
    NotCofinite(usize),
    #[error("the ideal contains 1, so no monomial lies outside it")]
    NoCornerFound,
    #[error("leading coefficient of generator {index} at {monomial:?} is not a unit")]
    NonConstantPivot { index: usize, monomial: ExponentVector },
    #[error("a generator is zero")]
    ZeroGenerator,
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
}

/// One division step: `h -= factor * x^shift * G[generator]` at `monomial`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionStep {
    pub monomial: ExponentVector,
    pub generator: usize,
}

/// Leading data of each generator, computed once.
struct Pivot<C: Coeff> {
    monomial: ExponentVector,
    inverse: C,
}

fn pivots<C: Coeff>(gens: &[Poly<C>], ord: &MonomialOrdering) -> Result<Vec<Pivot<C>>, ReductionError> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            let lm = ord.leading_exponent(g).ok_or(ReductionError::ZeroGenerator)?.clone();
            let lc = g.coefficient(&lm).unwrap();
            let inverse = lc
                .unit_inverse()
                .ok_or_else(|| ReductionError::NonConstantPivot { index: i, monomial: lm.clone() })?;
            Ok(Pivot { monomial: lm, inverse })
        })
        .collect()
}

/// Normal form with respect to a global ordering. Among the generators
/// whose leading monomial divides the current one, the first in the list
/// is used. The result is normalized to leading coefficient 1.
pub fn red_nf_buchberger(
    f: &Polynomial,
    gens: &[Polynomial],
    ord: &MonomialOrdering,
) -> Result<Polynomial, ReductionError> {
    red_nf_buchberger_traced(f, gens, ord).map(|(p, _)| p)
}

pub fn red_nf_buchberger_traced(
    f: &Polynomial,
    gens: &[Polynomial],
    ord: &MonomialOrdering,
) -> Result<(Polynomial, Vec<DivisionStep>), ReductionError> {
    if !ord.is_global() {
        return Err(ReductionError::LocalOrdering(ord.to_string()));
    }
    ord.check(f.nvars())?;
    let piv = pivots(gens, ord)?;
    let mut h = f.clone();
    let mut p = Polynomial::zero(f.nvars());
    let mut steps = Vec::new();
    while let Some(lm) = ord.leading_exponent(&h).cloned() {
        let lc = h.coefficient(&lm).unwrap().clone();
        match piv.iter().position(|g| g.monomial.divides(&lm)) {
            Some(i) => {
                let shift = lm.checked_sub(&piv[i].monomial).unwrap();
                let factor = &lc * &piv[i].inverse;
                h = h.sub(&gens[i].mul_term(&shift, &factor)).expect("same dimension");
                steps.push(DivisionStep { monomial: lm, generator: i });
            }
            None => {
                h.remove_term(&lm);
                p.add_term(lm, lc);
            }
        }
    }
    if let Some(lm) = ord.leading_exponent(&p).cloned() {
        let inv = p.coefficient(&lm).unwrap().recip();
        p = p.scale(&inv);
    }
    Ok((p, steps))
}

/// Highest corner of the monomial ideal generated by `leading`, which must
/// be cofinite, under a local ordering: the ordering-minimal monomial
/// outside the ideal. Every smaller monomial then lies in the ideal.
pub fn highest_corner(
    leading: &[ExponentVector],
    ord: &MonomialOrdering,
) -> Result<ExponentVector, ReductionError> {
    if ord.is_global() {
        return Err(ReductionError::GlobalOrdering(ord.to_string()));
    }
    let n = leading.first().map(|e| e.len()).ok_or(ReductionError::NotCofinite(1))?;
    ord.check(n)?;
    let outside = staircase_complement(leading, n)?;
    outside
        .into_iter()
        .min_by(|a, b| ord.compare(a, b))
        .ok_or(ReductionError::NoCornerFound)
}

/// Monomials outside the ideal generated by `leading` (finite when the
/// ideal is cofinite).
pub fn staircase_complement(leading: &[ExponentVector], n: usize) -> Result<Vec<ExponentVector>, ReductionError> {
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let pure = leading
            .iter()
            .filter(|e| (0..n).all(|j| j == i || e.get(j) == 0))
            .map(|e| e.get(i))
            .min()
            .ok_or(ReductionError::NotCofinite(i + 1))?;
        if pure == 0 {
            return Ok(Vec::new());
        }
        bounds.push(pure - 1);
    }
    Ok(box_points(&bounds)
        .into_iter()
        .filter(|m| !leading.iter().any(|g| g.divides(m)))
        .collect())
}

/// Local reduction of `f` by `partials` under a local ordering, halted at
/// the monomial `stop`: terms ordering-smaller than `stop` are discarded as
/// soon as they appear. Returns the terms collected into the remainder, in
/// the order they were found.
///
/// Division is only by unit leading coefficients; otherwise the call fails
/// with [`ReductionError::NonConstantPivot`].
pub fn truncated_local_nf<C: Coeff>(
    f: &Poly<C>,
    partials: &[Poly<C>],
    ord: &MonomialOrdering,
    stop: &ExponentVector,
) -> Result<Vec<(ExponentVector, C)>, ReductionError> {
    truncated_local_nf_traced(f, partials, ord, stop).map(|(p, _)| p)
}

/// Surviving terms of a truncated normal form.
pub type Terms<C> = Vec<(ExponentVector, C)>;

pub fn truncated_local_nf_traced<C: Coeff>(
    f: &Poly<C>,
    partials: &[Poly<C>],
    ord: &MonomialOrdering,
    stop: &ExponentVector,
) -> Result<(Terms<C>, Vec<DivisionStep>), ReductionError> {
    if ord.is_global() {
        return Err(ReductionError::GlobalOrdering(ord.to_string()));
    }
    ord.check(f.nvars())?;
    let keep = |e: &ExponentVector| ord.compare(e, stop) != Ordering::Less;
    let piv = pivots(partials, ord)?;
    let mut h = f.clone();
    h.retain(|e, _| keep(e));
    let mut out = Vec::new();
    let mut steps = Vec::new();
    while let Some(lm) = ord.leading_exponent(&h).cloned() {
        let lc = h.remove_term(&lm).unwrap();
        match piv.iter().position(|g| g.monomial.divides(&lm)) {
            Some(i) => {
                let shift = lm.checked_sub(&piv[i].monomial).unwrap();
                let factor = lc.mul_ref(&piv[i].inverse).neg_ref();
                for (e, c) in partials[i].terms() {
                    if *e == piv[i].monomial {
                        continue;
                    }
                    let ne = e.add(&shift);
                    if keep(&ne) {
                        h.add_term(ne, c.mul_ref(&factor));
                    }
                }
                steps.push(DivisionStep { monomial: lm, generator: i });
            }
            None => out.push((lm, lc)),
        }
    }
    Ok((out, steps))
}

/// Whether `f` lies in its own Jacobian ideal in the local ring, for `f`
/// of the form `Σ c_i x_i^{α_i}` plus terms of weighted degree above 1
/// (weights `1/α_i`).
pub fn membership_in_jacobian(f: &Polynomial, alpha: &[u32]) -> Result<bool, ReductionError> {
    let n = f.nvars();
    if alpha.len() != n || alpha.iter().any(|&a| a < 2) {
        return Err(ReductionError::Domain("α must have one entry ≥ 2 per variable".into()));
    }
    let w: Vec<Rational> = alpha.iter().map(|&a| Rational::new(1.into(), a.into())).collect();
    let one = Rational::from_integer(1.into());
    for (e, _) in f.terms() {
        let wd = e.weighted_degree(&w);
        let pure = (0..n).any(|i| *e == ExponentVector::pure_power(n, i, alpha[i]));
        if wd < one || (wd == one && !pure) {
            return Err(ReductionError::Domain(format!(
                "term {e:?} lies on or below the weighted hyperplane"
            )));
        }
    }
    for i in 0..n {
        if f.coefficient(&ExponentVector::pure_power(n, i, alpha[i])).is_none() {
            return Err(ReductionError::Domain(format!("missing pure power of x{}", i + 1)));
        }
    }
    let ord = MonomialOrdering::ws_for_alpha(alpha);
    let partials: Vec<Polynomial> = (0..n).map(|i| f.partial_derivative(i)).collect();
    let hc = ExponentVector::new(alpha.iter().map(|&a| a - 2).collect());
    let rem = truncated_local_nf(f, &partials, &ord, &hc)?;
    Ok(rem.is_empty())
}
