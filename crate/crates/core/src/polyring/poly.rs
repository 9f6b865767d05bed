use std::collections::BTreeMap;

use num_traits::Zero;

use super::coeff::Coeff;
use super::exponent::ExponentVector;
use super::param::ParamCoefficient;
use super::{PolyError, Rational};

/// Sparse polynomial in `nvars` variables with coefficients in `C`.
/// No zero coefficient is ever stored.
#[derive(Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<ExponentVector, C>,
}

pub type Polynomial = Poly<Rational>;
pub type ParamPolynomial = Poly<ParamCoefficient>;

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(ExponentVector::zeros(nvars), c)
    }

    pub fn term(e: ExponentVector, c: C) -> Self {
        let nvars = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(ExponentVector::unit(nvars, i), C::one())
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, C)>,
    ) -> Result<Self, PolyError> {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::Dimension { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<ExponentVector, C> {
        self.terms
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn add_term(&mut self, e: ExponentVector, c: C) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn remove_term(&mut self, e: &ExponentVector) -> Option<C> {
        self.terms.remove(e)
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&ExponentVector, &C) -> bool) {
        self.terms.retain(|e, c| keep(e, c));
    }

    fn check_dims(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::Dimension { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg_ref());
        }
        Ok(out)
    }

    /// In-place addition; panics on a dimension mismatch.
    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "dimension mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_dims(other)?;
        Ok(self.mul_bounded(other, None))
    }

    /// Product keeping only terms of total degree at most `max_degree`.
    pub fn mul_bounded(&self, other: &Self, max_degree: Option<u32>) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                if max_degree.is_some_and(|k| e.total_degree() > k) {
                    continue;
                }
                out.add_term(e, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coefficients(|c| c.scale(r))
    }

    pub fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Multiplies by the single term `c x^e`.
    pub fn mul_term(&self, e: &ExponentVector, c: &C) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            out.add_term(ea.add(e), ca.mul_ref(c));
        }
        out
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(var);
            if k > 0 {
                out.add_term(e.with_entry(var, k - 1), c.scale(&Rational::from_integer(k.into())));
            }
        }
        out
    }

    /// Terms of total degree at most `k`.
    pub fn jet(&self, k: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() <= k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// Minimal total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).min()
    }

    pub fn pow_bounded(&self, k: u32, max_degree: Option<u32>) -> Self {
        let mut acc = Poly::constant(self.nvars, C::one());
        for _ in 0..k {
            acc = acc.mul_bounded(self, max_degree);
        }
        acc
    }

    /// Replaces `x_var` by `replacement`.
    pub fn substitute(&self, var: usize, replacement: &Self) -> Result<Self, PolyError> {
        self.check_dims(replacement)?;
        if var >= self.nvars {
            return Err(PolyError::Variable { index: var, nvars: self.nvars });
        }
        Ok(self.substitute_bounded(var, replacement, None))
    }

    /// Substitution followed by truncation above total degree `max_degree`.
    pub fn substitute_bounded(&self, var: usize, replacement: &Self, max_degree: Option<u32>) -> Self {
        let mut powers: Vec<Self> = vec![Poly::constant(self.nvars, C::one())];
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(var) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul_bounded(replacement, max_degree);
                powers.push(next);
            }
            let rest = e.with_entry(var, 0);
            if max_degree.is_some_and(|m| rest.total_degree() > m) {
                continue;
            }
            for (pe, pc) in powers[k].terms() {
                let ne = pe.add(&rest);
                if max_degree.is_some_and(|m| ne.total_degree() > m) {
                    continue;
                }
                out.add_term(ne, pc.mul_ref(c));
            }
        }
        out
    }

    /// Appends `extra` new variables, all with exponent zero.
    pub fn extend_vars(&self, extra: usize) -> Self {
        let zeros = vec![0; extra];
        Poly {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(e, c)| (e.extended(&zeros), c.clone())).collect(),
        }
    }

    /// Reorders variables: new variable `i` is old variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.permuted(perm), c.clone())).collect(),
        }
    }
}

impl Polynomial {
    pub fn from_rational_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, PolyError> {
        Poly::from_terms(nvars, terms.into_iter().map(|(e, c)| (ExponentVector::new(e), c)))
    }

    pub fn to_param(&self) -> ParamPolynomial {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), ParamCoefficient::constant(c.clone()));
        }
        out
    }
}

impl ParamPolynomial {
    /// Substitutes rational values for all parameters.
    pub fn evaluate_params(&self, value: &dyn Fn(u32) -> Rational) -> Polynomial {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let v = c.evaluate(value);
            if !v.is_zero() {
                out.add_term(e.clone(), v);
            }
        }
        out
    }

    /// Applies a parameter substitution to every coefficient.
    pub fn compose_params(&self, map: &dyn Fn(u32) -> Option<ParamCoefficient>) -> Self {
        self.map_coefficients(|c| c.compose(map))
    }

    pub fn with_param_cap(&self, cap: Option<u32>) -> Self {
        self.map_coefficients(|c| c.clone().with_cap(cap))
    }

    /// Largest parameter-degree among the coefficients.
    pub fn param_degree(&self) -> u32 {
        self.terms.values().map(|c| c.degree()).max().unwrap_or(0)
    }
}

impl<C: Coeff> std::fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, Some(n)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert!(p("x1^2", 1).add(&p("-x1^2", 1)).unwrap().is_zero());
        assert_eq!(p("x1+x2", 2).add(&p("x2", 2)).unwrap(), p("x1+2*x2", 2));
        assert_eq!(p("x1", 1).mul(&p("x1", 1)).unwrap(), p("x1^2", 1));
        assert_eq!(p("x1+x2", 2).mul(&p("x1-x2", 2)).unwrap(), p("x1^2-x2^2", 2));
        assert!(p("x1+x2", 2).mul(&Polynomial::zero(2)).unwrap().is_zero());
        assert!(p("x1", 1).add(&p("x1", 2)).is_err());
    }

    #[test]
    fn derivative_and_jet() {
        assert_eq!(p("x1^6+x2^5", 2).partial_derivative(0), p("6*x1^5", 2));
        assert!(p("x1^6", 2).partial_derivative(1).is_zero());
        assert_eq!(p("x1^3+x1^5", 1).jet(4), p("x1^3", 1));
    }

    #[test]
    fn substitution() {
        let f = p("x1^2*x2 + x2^3", 2);
        let same = f.substitute(1, &p("x2", 2)).unwrap();
        assert_eq!(same, f);
        let g = f.substitute(1, &p("x2 + x1", 2)).unwrap();
        let expect = p("x1^2*x2 + x1^3 + x2^3 + 3*x2^2*x1 + 3*x2*x1^2 + x1^3", 2);
        assert_eq!(g, expect);
        assert!(f.substitute(2, &p("x1", 2)).is_err());
    }
}
