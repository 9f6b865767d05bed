use std::fmt;

use num_traits::Zero;

use super::Rational;

/// Multi-index `I` in `Z_{>=0}^n`.
///
/// The derived `Ord` is plain lexicographic order on the entries; it is only
/// used for canonical storage, never as a monomial ordering.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn pure_power(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `Σ w_j I_j`, exact.
    pub fn weighted_degree(&self, w: &[Rational]) -> Rational {
        assert_eq!(w.len(), self.0.len(), "weight vector length mismatch");
        let mut acc = Rational::zero();
        for (e, wj) in self.0.iter().zip(w) {
            if *e != 0 {
                acc += wj * Rational::from_integer((*e).into());
            }
        }
        acc
    }

    /// `x^self` divides `x^other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when some entry would go negative.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(ExponentVector(out))
    }

    pub fn with_entry(&self, i: usize, e: u32) -> ExponentVector {
        let mut v = self.0.clone();
        v[i] = e;
        ExponentVector(v)
    }

    /// Appends `extra` trailing coordinates.
    pub fn extended(&self, extra: &[u32]) -> ExponentVector {
        let mut v = self.0.clone();
        v.extend_from_slice(extra);
        ExponentVector(v)
    }

    pub fn permuted(&self, perm: &[usize]) -> ExponentVector {
        ExponentVector(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl From<&[u32]> for ExponentVector {
    fn from(v: &[u32]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All exponent vectors in `n` variables with total degree exactly `k`,
/// in descending lexicographic order.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, k, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, rest: u32, out: &mut Vec<ExponentVector>) {
    let n = cur.len();
    if n == 0 {
        if rest == 0 {
            out.push(ExponentVector(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = rest;
        out.push(ExponentVector(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in (0..=rest).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, rest - e, out);
    }
    cur[pos] = 0;
}

/// All exponent vectors with total degree at most `k`, by increasing degree.
pub fn monomials_up_to(n: usize, k: u32) -> Vec<ExponentVector> {
    (0..=k).flat_map(|d| monomials_of_degree(n, d)).collect()
}

/// The box `{I : I_j <= bounds_j}`.
pub fn box_points(bounds: &[u32]) -> Vec<ExponentVector> {
    let mut out = vec![ExponentVector(Vec::new())];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for v in &out {
            for e in 0..=b {
                next.push(v.extended(&[e]));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(box_points(&[4, 3]).len(), 20);
    }

    #[test]
    fn weighted() {
        let w = vec![Rational::new(1.into(), 6.into()), Rational::new(1.into(), 5.into())];
        let i = ExponentVector::new(vec![4, 3]);
        assert_eq!(i.weighted_degree(&w), Rational::new(19.into(), 15.into()));
    }

    #[test]
    fn division() {
        let a = ExponentVector::new(vec![1, 2]);
        let b = ExponentVector::new(vec![3, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.checked_sub(&a), Some(ExponentVector::new(vec![2, 0])));
        assert_eq!(a.checked_sub(&b), None);
    }
}
