//! Exact linear algebra over the rationals: incremental sparse echelon forms
//! and fraction-free ranks of symmetric forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyring::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Reduced row echelon form built one row at a time. The pivot of a row is
/// its smallest column index, so callers control pivot preference through
/// the column numbering.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy(target: &mut SparseRow, factor: &Rational, src: &SparseRow) {
    for (c, v) in src {
        let e = target.entry(*c).or_insert_with(Rational::zero);
        *e -= factor * v;
        if e.is_zero() {
            target.remove(c);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseRow> {
        self.rows.get(&pivot)
    }

    /// Reduces `row` against the current rows (pivot entries cancelled).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        // rows are fully reduced, so each pivot column is cleared in one pass
        let hits: Vec<(usize, Rational)> = row
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, v) in hits {
            axpy(&mut row, &v, &self.rows[&c]);
        }
        row
    }

    /// Inserts a row; returns `true` when it was independent of the others.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut r = self.reduce(row);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for v in r.values_mut() {
            *v *= &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&pivot).cloned() {
                axpy(other, &f, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

pub fn rank_of_rows(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Scales a rational row to integers (by the lcm of denominators).
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect()
}

/// Symmetric matrix over named coordinates, stored sparsely by the upper
/// triangle.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymMatrix {
    coords: Vec<u32>,
    entries: BTreeMap<(u32, u32), Rational>,
}

impl SymMatrix {
    pub fn new(coords: Vec<u32>) -> Self {
        let mut coords = coords;
        coords.sort_unstable();
        coords.dedup();
        SymMatrix { coords, entries: BTreeMap::new() }
    }

    /// Matrix of the quadratic form with the given monomial coefficients:
    /// `c a_i a_j` (i < j) contributes `c/2` off the diagonal, `c a_i^2`
    /// contributes `c` on it.
    pub fn from_quadratic_terms(terms: &BTreeMap<(u32, u32), Rational>) -> Self {
        let mut coords: Vec<u32> = terms.keys().flat_map(|&(i, j)| [i, j]).collect();
        coords.sort_unstable();
        coords.dedup();
        let mut m = SymMatrix { coords, entries: BTreeMap::new() };
        for (&(i, j), c) in terms {
            let v = if i == j { c.clone() } else { c / Rational::from_integer(2.into()) };
            m.set(i, j, v);
        }
        m
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn set(&mut self, i: u32, j: u32, v: Rational) {
        let key = if i <= j { (i, j) } else { (j, i) };
        if let Err(pos) = self.coords.binary_search(&i) {
            self.coords.insert(pos, i);
        }
        if let Err(pos) = self.coords.binary_search(&j) {
            self.coords.insert(pos, j);
        }
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    pub fn get(&self, i: u32, j: u32) -> Rational {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.entries.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Restriction to a subset of coordinates.
    pub fn restrict(&self, keep: &dyn Fn(u32) -> bool) -> SymMatrix {
        let mut m = SymMatrix::new(self.coords.iter().copied().filter(|&c| keep(c)).collect());
        for (&(i, j), v) in &self.entries {
            if keep(i) && keep(j) {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn dense(&self) -> Vec<Vec<Rational>> {
        let n = self.coords.len();
        let pos: BTreeMap<u32, usize> = self.coords.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut d = vec![vec![Rational::zero(); n]; n];
        for (&(i, j), v) in &self.entries {
            let (a, b) = (pos[&i], pos[&j]);
            d[a][b] = v.clone();
            d[b][a] = v.clone();
        }
        d
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        // only coordinates touching a nonzero entry matter
        let mut used: Vec<u32> = self.entries.keys().flat_map(|&(i, j)| [i, j]).collect();
        used.sort_unstable();
        used.dedup();
        let sub = self.restrict(&|c| used.binary_search(&c).is_ok());
        bareiss_rank(sub.dense().iter().map(|r| integer_row(r)).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        // storage is upper-triangular, so symmetry holds by construction
        self.entries.keys().all(|&(i, j)| i <= j)
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
