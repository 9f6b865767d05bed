//! Monomial orderings: lp, Dp, Wp(w) (global) and ls, Ds, Ws(w) (local).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::polyring::{Coeff, ExponentVector, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderingError {
    #[error("ordering {ordering} needs {expected} weights, got {found}")]
    MissingWeights { ordering: String, expected: usize, found: usize },
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("cannot parse ordering '{0}'")]
    Parse(String),
    #[error("leading data of the zero polynomial is undefined")]
    ZeroPolynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    /// `lp`
    Lex,
    /// `Dp`
    DegLex,
    /// `Wp(w)`
    WeightedLex,
    /// `ls`
    NegLex,
    /// `Ds`
    NegDegLex,
    /// `Ws(w)`
    NegWeightedLex,
}

/// An ordering together with its weights. The variable enumeration
/// `x1, ..., xn` is fixed and breaks all ties.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialOrdering {
    kind: OrderingKind,
    weights: Vec<Rational>,
    // positive integer multiple of `weights`, when it fits in i64
    scaled: Option<Vec<i64>>,
}

impl MonomialOrdering {
    fn plain(kind: OrderingKind) -> Self {
        MonomialOrdering { kind, weights: Vec::new(), scaled: None }
    }

    pub fn lex() -> Self {
        Self::plain(OrderingKind::Lex)
    }

    pub fn deg_lex() -> Self {
        Self::plain(OrderingKind::DegLex)
    }

    pub fn neg_lex() -> Self {
        Self::plain(OrderingKind::NegLex)
    }

    pub fn neg_deg_lex() -> Self {
        Self::plain(OrderingKind::NegDegLex)
    }

    pub fn weighted_lex(weights: Vec<Rational>) -> Result<Self, OrderingError> {
        Self::weighted(OrderingKind::WeightedLex, weights)
    }

    pub fn neg_weighted_lex(weights: Vec<Rational>) -> Result<Self, OrderingError> {
        Self::weighted(OrderingKind::NegWeightedLex, weights)
    }

    /// `Ws(1/α_1, ..., 1/α_n)`.
    pub fn ws_for_alpha(alpha: &[u32]) -> Self {
        let w = alpha.iter().map(|&a| Rational::new(1.into(), a.into())).collect();
        Self::neg_weighted_lex(w).expect("positive weights")
    }

    fn weighted(kind: OrderingKind, weights: Vec<Rational>) -> Result<Self, OrderingError> {
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(OrderingError::NonPositiveWeight);
        }
        let lcm = weights.iter().fold(num_bigint::BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled = weights
            .iter()
            .map(|w| (w * Rational::from_integer(lcm.clone())).to_integer().to_i64())
            .collect::<Option<Vec<i64>>>();
        Ok(MonomialOrdering { kind, weights, scaled })
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    fn is_weighted(&self) -> bool {
        matches!(self.kind, OrderingKind::WeightedLex | OrderingKind::NegWeightedLex)
    }

    /// Checks that the ordering can compare vectors of length `n`.
    pub fn check(&self, n: usize) -> Result<(), OrderingError> {
        if self.is_weighted() && self.weights.len() != n {
            return Err(OrderingError::MissingWeights {
                ordering: self.to_string(),
                expected: n,
                found: self.weights.len(),
            });
        }
        Ok(())
    }

    pub fn is_global(&self) -> bool {
        matches!(self.kind, OrderingKind::Lex | OrderingKind::DegLex | OrderingKind::WeightedLex)
    }

    fn weighted_cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        if let Some(s) = &self.scaled {
            let wa: i128 = a.entries().iter().zip(s).map(|(&e, &w)| e as i128 * w as i128).sum();
            let wb: i128 = b.entries().iter().zip(s).map(|(&e, &w)| e as i128 * w as i128).sum();
            wa.cmp(&wb)
        } else {
            a.weighted_degree(&self.weights).cmp(&b.weighted_degree(&self.weights))
        }
    }

    /// Total comparison. Panics if the weights do not match the length;
    /// use [`try_compare`](Self::try_compare) for unchecked input.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        let lex = || a.entries().cmp(b.entries());
        match self.kind {
            OrderingKind::Lex => lex(),
            OrderingKind::DegLex => a.total_degree().cmp(&b.total_degree()).then_with(lex),
            OrderingKind::WeightedLex => self.weighted_cmp(a, b).then_with(lex),
            OrderingKind::NegLex => {
                for (x, y) in a.entries().iter().zip(b.entries()) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            OrderingKind::NegDegLex => b.total_degree().cmp(&a.total_degree()).then_with(lex),
            OrderingKind::NegWeightedLex => self.weighted_cmp(b, a).then_with(lex),
        }
    }

    pub fn try_compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering, OrderingError> {
        self.check(a.len())?;
        self.check(b.len())?;
        Ok(self.compare(a, b))
    }

    /// Exponent vector of the leading term.
    pub fn leading_exponent<'a, C: Coeff>(&self, p: &'a Poly<C>) -> Option<&'a ExponentVector> {
        p.terms().map(|(e, _)| e).max_by(|a, b| self.compare(a, b))
    }
}

/// Leading monomial, coefficient and the remaining tail.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingData<C: Coeff> {
    pub monomial: ExponentVector,
    pub coefficient: C,
    pub tail: Poly<C>,
}

pub fn leading_data<C: Coeff>(p: &Poly<C>, ord: &MonomialOrdering) -> Result<LeadingData<C>, OrderingError> {
    ord.check(p.nvars())?;
    let lm = ord.leading_exponent(p).ok_or(OrderingError::ZeroPolynomial)?.clone();
    let mut tail = p.clone();
    let lc = tail.remove_term(&lm).expect("leading term present");
    Ok(LeadingData { monomial: lm, coefficient: lc, tail })
}

impl fmt::Display for MonomialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            OrderingKind::Lex => "lp",
            OrderingKind::DegLex => "Dp",
            OrderingKind::WeightedLex => "Wp",
            OrderingKind::NegLex => "ls",
            OrderingKind::NegDegLex => "Ds",
            OrderingKind::NegWeightedLex => "Ws",
        };
        write!(f, "{name}")?;
        if self.is_weighted() {
            let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
            write!(f, "({})", ws.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_weight(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().ok()?;
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.parse().ok()?),
    };
    Some(r)
}

impl FromStr for MonomialOrdering {
    type Err = OrderingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || OrderingError::Parse(s.to_string());
        match t.as_str() {
            "lp" => return Ok(Self::lex()),
            "Dp" => return Ok(Self::deg_lex()),
            "ls" => return Ok(Self::neg_lex()),
            "Ds" => return Ok(Self::neg_deg_lex()),
            _ => {}
        }
        let (head, rest) = t.split_at(t.len().min(2));
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let weights = inner.split(',').map(parse_weight).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
        match head {
            "Wp" => Self::weighted_lex(weights),
            "Ws" => Self::neg_weighted_lex(weights),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{frac, parse_polynomial};

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::from(v)
    }

    #[test]
    fn parse_and_print() {
        for s in ["lp", "Dp", "ls", "Ds", "Wp(1,2)", "Ws(1/6,1/5)"] {
            let o: MonomialOrdering = s.parse().unwrap();
            assert_eq!(o.to_string(), s);
        }
        assert!("Xp".parse::<MonomialOrdering>().is_err());
        assert!("Ws(1/0,1)".parse::<MonomialOrdering>().is_err());
        assert!("Ws(-1,1)".parse::<MonomialOrdering>().is_err());
    }

    #[test]
    fn weighted_example() {
        let o = MonomialOrdering::neg_weighted_lex(vec![frac(1, 6), frac(1, 5)]).unwrap();
        assert_eq!(o.compare(&ev(&[4, 3]), &ev(&[5, 2])), Ordering::Less);
        assert_eq!(o.compare(&ev(&[6, 0]), &ev(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn global_versus_local() {
        assert!(MonomialOrdering::lex().is_global());
        assert!(!MonomialOrdering::neg_lex().is_global());
        assert!(!MonomialOrdering::ws_for_alpha(&[3, 2]).is_global());
        let one = ev(&[0, 0]);
        let x = ev(&[1, 0]);
        assert_eq!(MonomialOrdering::deg_lex().compare(&x, &one), Ordering::Greater);
        assert_eq!(MonomialOrdering::neg_deg_lex().compare(&x, &one), Ordering::Less);
    }

    #[test]
    fn missing_weights() {
        let o = MonomialOrdering::weighted_lex(vec![frac(1, 2)]).unwrap();
        assert!(o.try_compare(&ev(&[1, 0]), &ev(&[0, 1])).is_err());
    }

    #[test]
    fn leading_of_constant() {
        let p = parse_polynomial("7", Some(2)).unwrap();
        let ld = leading_data(&p, &MonomialOrdering::lex()).unwrap();
        assert!(ld.monomial.is_zero());
        assert_eq!(ld.coefficient, frac(7, 1));
        assert!(ld.tail.is_zero());
        assert!(leading_data(&parse_polynomial("0", Some(1)).unwrap(), &MonomialOrdering::lex()).is_err());
    }
}
