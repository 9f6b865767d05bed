//! Text grammar shared by the CLI and the FFI layer.
//!
//! A polynomial is a sum of terms `c`, `c*m` or `m`, joined by `+`/`-`.
//! `c` is `int` or `int/int`; `m` is a product of `x<i>^<e>` and
//! `a[i1,...,in]^<e>` factors, `^1` optional. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::exponent::ExponentVector;
use super::param::{ParamCoefficient, ParamMonomial};
use super::poly::{ParamPolynomial, Poly, Polynomial};
use super::{ParamSpace, PolyError, Rational};

struct Term {
    coeff: Rational,
    xs: Vec<(usize, u32)>,
    params: Vec<(ExponentVector, u32)>,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { position: self.pos, message: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small(&mut self) -> Result<u32, PolyError> {
        let v = self.integer()?;
        u32::try_from(v).map_err(|_| self.err("integer too large"))
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        if self.eat(b'^') {
            self.small()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self, t: &mut Term) -> Result<(), PolyError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let i = self.small()?;
                if i == 0 {
                    return Err(self.err("variables are numbered from x1"));
                }
                let e = self.exponent()?;
                t.xs.push((i as usize - 1, e));
            }
            Some(b'a') => {
                self.pos += 1;
                if !self.eat(b'[') {
                    return Err(self.err("expected '[' after parameter name"));
                }
                let mut idx = vec![self.small()?];
                while self.eat(b',') {
                    idx.push(self.small()?);
                }
                if !self.eat(b']') {
                    return Err(self.err("expected ']'"));
                }
                let e = self.exponent()?;
                t.params.push((ExponentVector::new(idx), e));
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut c = Rational::from_integer(num);
                if self.eat(b'/') {
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    c /= Rational::from_integer(den);
                }
                t.coeff *= c;
            }
            _ => return Err(self.err("expected coefficient, variable or parameter")),
        }
        Ok(())
    }

    fn term(&mut self, sign: bool) -> Result<Term, PolyError> {
        let mut t = Term {
            coeff: if sign { -Rational::one() } else { Rational::one() },
            xs: Vec::new(),
            params: Vec::new(),
        };
        self.factor(&mut t)?;
        while self.eat(b'*') {
            self.factor(&mut t)?;
        }
        Ok(t)
    }

    fn terms(&mut self) -> Result<Vec<Term>, PolyError> {
        let mut out = Vec::new();
        if self.s.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        loop {
            out.push(self.term(neg)?);
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
        Ok(out)
    }
}

fn tokenize(text: &str) -> Vec<u8> {
    text.bytes().filter(|c| !c.is_ascii_whitespace()).collect()
}

fn parse_terms(text: &str) -> Result<Vec<Term>, PolyError> {
    let bytes = tokenize(text);
    let mut p = Parser { s: &bytes, pos: 0 };
    p.terms()
}

fn resolve_nvars(terms: &[Term], nvars: Option<usize>) -> Result<usize, PolyError> {
    let max_seen = terms.iter().flat_map(|t| t.xs.iter().map(|&(i, _)| i + 1)).max().unwrap_or(0);
    match nvars {
        Some(n) if max_seen > n => Err(PolyError::Variable { index: max_seen - 1, nvars: n }),
        Some(n) => Ok(n),
        None => Ok(max_seen.max(1)),
    }
}

fn x_exponent(xs: &[(usize, u32)], n: usize) -> ExponentVector {
    let mut e = vec![0u32; n];
    for &(i, k) in xs {
        e[i] += k;
    }
    ExponentVector::new(e)
}

/// Parses a polynomial without parameters. With `nvars = None` the number of
/// variables is the largest index used.
pub fn parse_polynomial(text: &str, nvars: Option<usize>) -> Result<Polynomial, PolyError> {
    let terms = parse_terms(text)?;
    if terms.iter().any(|t| !t.params.is_empty()) {
        return Err(PolyError::Parse {
            position: 0,
            message: "parameters are not allowed here".into(),
        });
    }
    let n = resolve_nvars(&terms, nvars)?;
    let mut p = Poly::zero(n);
    for t in terms {
        p.add_term(x_exponent(&t.xs, n), t.coeff);
    }
    Ok(p)
}

/// Parses a polynomial whose coefficients may contain parameters `a[...]`;
/// new parameter labels are appended to `space`.
pub fn parse_param_polynomial(
    text: &str,
    nvars: Option<usize>,
    space: &mut ParamSpace,
) -> Result<ParamPolynomial, PolyError> {
    let terms = parse_terms(text)?;
    let n = resolve_nvars(&terms, nvars)?;
    let mut p = Poly::zero(n);
    for t in terms {
        let mut factors = Vec::new();
        for (label, e) in t.params {
            factors.push((space.intern(label) as u32, e));
        }
        let c = ParamCoefficient::monomial(ParamMonomial::from_factors(factors), t.coeff);
        p.add_term(x_exponent(&t.xs, n), c);
    }
    Ok(p)
}

fn push_signed(out: &mut String, first: bool, c: &Rational, body: &str) {
    let neg = c.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let abs = c.abs();
    if body.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format!("{abs}*{body}"));
    }
}

fn x_monomial(e: &ExponentVector) -> String {
    e.entries()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Formats in the grammar accepted by [`parse_polynomial`], largest
/// exponent vector (lexicographically) first.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().rev().enumerate() {
        push_signed(&mut out, k == 0, c, &x_monomial(e));
    }
    out
}

/// Formats a parametric polynomial fully expanded, so that it re-parses to
/// an equal value.
pub fn format_param_polynomial(p: &ParamPolynomial, space: &ParamSpace) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (e, c) in p.terms().rev() {
        let xm = x_monomial(e);
        for (m, r) in c.terms().collect::<Vec<_>>().into_iter().rev() {
            let mut parts: Vec<String> = m
                .factors()
                .iter()
                .map(|&(i, k)| {
                    let name = space.name(i);
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if !xm.is_empty() {
                parts.push(xm.clone());
            }
            push_signed(&mut out, first, r, &parts.join("*"));
            first = false;
        }
    }
    out
}

/// Formats a parameter polynomial (no x-variables).
pub fn format_param_coefficient(c: &ParamCoefficient, space: &ParamSpace) -> String {
    c.display_with(&|i| space.name(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_example() {
        let mut space = ParamSpace::new();
        let p = parse_param_polynomial("x1^6 + x2^5 + 2/3*a[1,2]*x1*x2^2", None, &mut space).unwrap();
        assert_eq!(p.nvars(), 2);
        assert_eq!(p.len(), 3);
        assert_eq!(space.len(), 1);
        let text = format_param_polynomial(&p, &space);
        let mut space2 = ParamSpace::new();
        let q = parse_param_polynomial(&text, Some(2), &mut space2).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn whitespace_and_signs() {
        let p = parse_polynomial(" - x1 ^ 2 + 3 / 4 * x2 - 5 ", None).unwrap();
        assert_eq!(format_polynomial(&p), "-x1^2 + 3/4*x2 - 5");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_polynomial("x1 +", None).is_err());
        assert!(parse_polynomial("x0", None).is_err());
        assert!(parse_polynomial("1/0", None).is_err());
        assert!(parse_polynomial("a[1]*x1", None).is_err());
        assert!(parse_polynomial("x3", Some(2)).is_err());
        assert!(parse_polynomial("", None).is_err());
        assert!(parse_polynomial("x1 y", None).is_err());
    }

    #[test]
    fn zero_formats_as_zero() {
        let p = parse_polynomial("x1 - x1", None).unwrap();
        assert_eq!(format_polynomial(&p), "0");
        assert_eq!(parse_polynomial("0", Some(1)).unwrap(), p);
    }
}
