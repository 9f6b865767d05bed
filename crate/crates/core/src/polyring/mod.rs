//! Exact sparse polynomial arithmetic over the rationals, with plain or
//! parametric coefficients.

mod coeff;
mod exponent;
mod param;
mod parse;
mod poly;

use std::collections::HashMap;

use thiserror::Error;

pub use coeff::Coeff;
pub use exponent::{box_points, monomials_of_degree, monomials_up_to, ExponentVector};
pub use param::{ParamCoefficient, ParamMonomial};
pub use parse::{
    format_param_coefficient, format_param_polynomial, format_polynomial, parse_param_polynomial,
    parse_polynomial,
};
pub use poly::{ParamPolynomial, Poly, Polynomial};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Default cap on parameter-degree for derived equation systems.
pub const DEFAULT_PARAM_CAP: u32 = 3;

/// Parameter-degree cap, overridable through `EQSING_MAX_PARAM_DEG`
/// (`off` or `none` disables truncation).
pub fn param_cap_from_env() -> Option<u32> {
    match std::env::var("EQSING_MAX_PARAM_DEG") {
        Ok(v) => {
            let v = v.trim();
            if v.eq_ignore_ascii_case("off") || v.eq_ignore_ascii_case("none") {
                None
            } else {
                Some(v.parse().unwrap_or(DEFAULT_PARAM_CAP))
            }
        }
        Err(_) => Some(DEFAULT_PARAM_CAP),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    Variable { index: usize, nvars: usize },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Ordered list of parameter labels; parameter `i` prints as `a[label_i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSpace {
    labels: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
}

impl ParamSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_labels(labels: impl IntoIterator<Item = ExponentVector>) -> Self {
        let mut s = Self::new();
        for l in labels {
            s.intern(l);
        }
        s
    }

    /// Index of `label`, adding it if new.
    pub fn intern(&mut self, label: ExponentVector) -> usize {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        i
    }

    pub fn get(&self, label: &ExponentVector) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, i: u32) -> &ExponentVector {
        &self.labels[i as usize]
    }

    pub fn labels(&self) -> &[ExponentVector] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn name(&self, i: u32) -> String {
        let l = &self.labels[i as usize];
        let inner: Vec<String> = l.entries().iter().map(|e| e.to_string()).collect();
        format!("a[{}]", inner.join(","))
    }
}
