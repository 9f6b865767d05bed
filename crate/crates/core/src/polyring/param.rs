use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::Rational;

/// Monomial in the deformation parameters: sorted `(index, exponent)` pairs.
///
/// Ordered by degree first so that iteration over a coefficient runs through
/// its homogeneous parts in increasing degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamMonomial {
    degree: u32,
    factors: Vec<(u32, u32)>,
}

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial { degree: 0, factors: Vec::new() }
    }

    pub fn var(i: u32) -> Self {
        ParamMonomial { degree: 1, factors: vec![(i, 1)] }
    }

    pub fn from_factors(mut factors: Vec<(u32, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(factors.len());
        for (i, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => merged.push((i, e)),
            }
        }
        let degree = merged.iter().map(|&(_, e)| e).sum();
        ParamMonomial { degree, factors: merged }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, i: u32) -> u32 {
        self.factors
            .binary_search_by_key(&i, |&(v, _)| v)
            .map(|k| self.factors[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &ParamMonomial) -> ParamMonomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            if a[i].0 == b[j].0 {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            } else if a[i].0 < b[j].0 {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ParamMonomial { degree: self.degree + other.degree, factors: out }
    }

    /// Removes one power of `i`, returning the exponent it had.
    fn derivative(&self, i: u32) -> Option<(u32, ParamMonomial)> {
        let k = self.factors.binary_search_by_key(&i, |&(v, _)| v).ok()?;
        let e = self.factors[k].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(k);
        } else {
            factors[k].1 -= 1;
        }
        Some((e, ParamMonomial { degree: self.degree - 1, factors }))
    }
}

impl fmt::Debug for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (i, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "p{i}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in the deformation parameters, optionally truncated:
/// with `cap = Some(k)` every monomial of parameter-degree above `k` is
/// dropped, so arithmetic takes place in `Q[a]/m^(k+1)`.
#[derive(Clone)]
pub struct ParamCoefficient {
    terms: BTreeMap<ParamMonomial, Rational>,
    cap: Option<u32>,
}

fn meet(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl ParamCoefficient {
    pub fn zero_capped(cap: Option<u32>) -> Self {
        ParamCoefficient { terms: BTreeMap::new(), cap }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ParamMonomial::one(), c);
        }
        ParamCoefficient { terms, cap: None }
    }

    pub fn var(i: u32) -> Self {
        Self::monomial(ParamMonomial::var(i), Rational::one())
    }

    pub fn monomial(m: ParamMonomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamCoefficient { terms, cap: None }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ParamMonomial, Rational)>) -> Self {
        let mut out = ParamCoefficient::zero_capped(None);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    /// Applies a (possibly tighter) cap, dropping terms above it.
    pub fn with_cap(mut self, cap: Option<u32>) -> Self {
        self.cap = meet(self.cap, cap);
        if let Some(k) = self.cap {
            self.terms.retain(|m, _| m.degree <= k);
        }
        self
    }

    /// Removes any cap without touching the terms.
    pub fn uncapped(mut self) -> Self {
        self.cap = None;
        self
    }

    pub fn add_term(&mut self, m: ParamMonomial, c: Rational) {
        if c.is_zero() || self.cap.is_some_and(|k| m.degree > k) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&ParamMonomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest parameter-degree present (0 for constants and zero).
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree)
    }

    /// Lowest parameter-degree present, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree)
    }

    pub fn homogeneous_part(&self, k: u32) -> ParamCoefficient {
        ParamCoefficient {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Terms of parameter-degree at least `k`.
    pub fn part_from(&self, k: u32) -> ParamCoefficient {
        ParamCoefficient {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree >= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Coefficients of the degree-1 part, keyed by parameter index.
    pub fn linear_part(&self) -> BTreeMap<u32, Rational> {
        self.terms
            .iter()
            .filter(|(m, _)| m.degree == 1)
            .map(|(m, c)| (m.factors[0].0, c.clone()))
            .collect()
    }

    /// Coefficients of the degree-2 part, keyed by the sorted index pair
    /// (a square `a_i^2` is keyed `(i, i)`).
    pub fn quadratic_terms(&self) -> BTreeMap<(u32, u32), Rational> {
        self.terms
            .iter()
            .filter(|(m, _)| m.degree == 2)
            .map(|(m, c)| {
                let key = match m.factors.as_slice() {
                    [(i, 2)] => (*i, *i),
                    [(i, 1), (j, 1)] => (*i, *j),
                    _ => unreachable!("degree-2 monomial"),
                };
                (key, c.clone())
            })
            .collect()
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.factors.iter().map(|&(i, _)| i)).collect()
    }

    pub fn derivative(&self, i: u32) -> ParamCoefficient {
        let mut out = ParamCoefficient::zero_capped(self.cap);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(i) {
                out.add_term(dm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Evaluates at a full assignment of the parameters.
    pub fn evaluate(&self, value: &dyn Fn(u32) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in &m.factors {
                t *= num_traits::pow(value(i), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Replaces each parameter `i` with `map(i)` when it returns `Some`,
    /// keeping it otherwise. The cap of `self` is kept.
    pub fn compose(&self, map: &dyn Fn(u32) -> Option<ParamCoefficient>) -> ParamCoefficient {
        let mut cache: BTreeMap<u32, Option<ParamCoefficient>> = BTreeMap::new();
        let mut out = ParamCoefficient::zero_capped(self.cap);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut prod = ParamCoefficient::constant(c.clone()).with_cap(self.cap);
            for &(i, e) in &m.factors {
                let img = cache.entry(i).or_insert_with(|| map(i));
                match img {
                    Some(p) => {
                        for _ in 0..e {
                            prod = prod.mul_ref(p);
                        }
                    }
                    None => kept.push((i, e)),
                }
            }
            if !kept.is_empty() {
                prod = prod.mul_ref(&ParamCoefficient::monomial(
                    ParamMonomial::from_factors(kept),
                    Rational::one(),
                ));
            }
            out.add_assign_ref(&prod);
        }
        out
    }

    /// Sets the listed parameters to zero.
    pub fn vanish(&self, zero: &dyn Fn(u32) -> bool) -> ParamCoefficient {
        ParamCoefficient {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.factors.iter().all(|&(i, _)| !zero(i)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Formats with the given parameter names, highest degree first.
    pub fn display_with(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .factors
                .iter()
                .map(|&(i, e)| if e == 1 { name(i) } else { format!("{}^{e}", name(i)) })
                .collect();
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{abs}*{}", mono.join("*")));
            }
        }
        s
    }
}

impl PartialEq for ParamCoefficient {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl fmt::Debug for ParamCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("p{i}")))
    }
}

impl std::ops::Add for ParamCoefficient {
    type Output = Self;
    fn add(mut self, other: Self) -> Self {
        self.add_assign_ref(&other);
        self
    }
}

impl std::ops::Mul for ParamCoefficient {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl Zero for ParamCoefficient {
    fn zero() -> Self {
        ParamCoefficient::zero_capped(None)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamCoefficient {
    fn one() -> Self {
        ParamCoefficient::constant(Rational::one())
    }
}

impl Coeff for ParamCoefficient {
    fn from_rational(r: Rational) -> Self {
        ParamCoefficient::constant(r)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.cap = meet(self.cap, other.cap);
        if let Some(k) = self.cap {
            self.terms.retain(|m, _| m.degree <= k);
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        self.cap = meet(self.cap, other.cap);
        if let Some(k) = self.cap {
            self.terms.retain(|m, _| m.degree <= k);
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c);
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let cap = meet(self.cap, other.cap);
        let mut out = ParamCoefficient::zero_capped(cap);
        for (ma, ca) in &self.terms {
            if cap.is_some_and(|k| ma.degree > k) {
                break;
            }
            for (mb, cb) in &other.terms {
                if cap.is_some_and(|k| ma.degree + mb.degree > k) {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        ParamCoefficient {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            cap: self.cap,
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return ParamCoefficient::zero_capped(self.cap);
        }
        ParamCoefficient {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
            cap: self.cap,
        }
    }

    /// With a cap every element with nonzero constant term is a unit of the
    /// truncated ring; without one only nonzero constants are.
    fn unit_inverse(&self) -> Option<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        match self.cap {
            None => {
                if self.is_constant() {
                    Some(ParamCoefficient::constant(inv0))
                } else {
                    None
                }
            }
            Some(k) => {
                // 1/(c0(1+n)) = (1/c0) Σ (-n)^j, exact modulo m^(k+1)
                let mut n = self.scale(&inv0);
                n.sub_assign_ref(&ParamCoefficient::one());
                let minus_n = n.neg_ref();
                let mut acc = ParamCoefficient::one().with_cap(Some(k));
                let mut power = ParamCoefficient::one().with_cap(Some(k));
                for _ in 0..k {
                    power = power.mul_ref(&minus_n);
                    if power.is_zero() {
                        break;
                    }
                    acc.add_assign_ref(&power);
                }
                Some(acc.scale(&inv0))
            }
        }
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn product_respects_cap() {
        let a = ParamCoefficient::var(0).with_cap(Some(2));
        let b = ParamCoefficient::var(1);
        let ab = a.mul_ref(&b);
        assert_eq!(ab.degree(), 2);
        assert!(ab.mul_ref(&a).is_zero());
    }

    #[test]
    fn inverse_in_truncated_ring() {
        let mut u = ParamCoefficient::one().with_cap(Some(3));
        u.add_assign_ref(&ParamCoefficient::var(0).scale(&r(2)));
        u.add_assign_ref(&ParamCoefficient::var(1));
        let inv = u.unit_inverse().unwrap();
        assert_eq!(u.mul_ref(&inv), ParamCoefficient::one());
        let plain = ParamCoefficient::var(0);
        assert!(plain.unit_inverse().is_none());
    }

    #[test]
    fn uncapped_inverse_needs_constant() {
        let mut u = ParamCoefficient::one();
        u.add_assign_ref(&ParamCoefficient::var(0));
        assert!(u.unit_inverse().is_none());
        assert_eq!(
            ParamCoefficient::constant(r(4)).unit_inverse(),
            Some(ParamCoefficient::constant(Rational::new(1.into(), 4.into())))
        );
    }

    #[test]
    fn compose_and_grading() {
        // p = a0^2 + 3 a0 a1 ; a0 -> a1 + 1
        let a0 = ParamCoefficient::var(0);
        let a1 = ParamCoefficient::var(1);
        let mut p = a0.mul_ref(&a0);
        p.add_assign_ref(&a0.mul_ref(&a1).scale(&r(3)));
        let mut img = a1.clone();
        img.add_assign_ref(&ParamCoefficient::one());
        let q = p.compose(&|i| (i == 0).then(|| img.clone()));
        // (a1+1)^2 + 3(a1+1)a1 = 4a1^2 + 5a1 + 1
        assert_eq!(q.constant_term(), r(1));
        assert_eq!(q.linear_part().get(&1), Some(&r(5)));
        assert_eq!(q.quadratic_terms().get(&(1, 1)), Some(&r(4)));
        let mut rebuilt = q.homogeneous_part(0);
        rebuilt.add_assign_ref(&q.homogeneous_part(1));
        rebuilt.add_assign_ref(&q.part_from(2));
        assert_eq!(rebuilt, q);
    }
}
