//! Test-side oracles, written without the library's linear algebra or
//! lattice code.

#![allow(dead_code)]

pub mod checks;

use eqsing::polyring::{ExponentVector, Polynomial, Rational};
use num_traits::{One, Zero};
use rand::Rng;

/// Exponent vectors with `n` entries and total degree `≤ k`.
pub fn monomials(n: usize, k: u32) -> Vec<ExponentVector> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if cur.len() == n {
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// `h^1(k)` for the scheme of `x_i^{α_i−1}`: box points of degree `> k`.
pub fn h1_count(alpha: &[u32], k: i64) -> u64 {
    fn rec(alpha: &[u32], i: usize, sum: i64, k: i64) -> u64 {
        if i == alpha.len() {
            return (sum > k) as u64;
        }
        (0..alpha[i] - 1).map(|e| rec(alpha, i + 1, sum + e as i64, k)).sum()
    }
    rec(alpha, 0, 0, k)
}

/// Castelnuovo values `C(0..=k_max)` from [`h1_count`].
pub fn castelnuovo_values(alpha: &[u32], k_max: i64) -> Vec<u64> {
    (0..=k_max).map(|k| h1_count(alpha, k - 1) - h1_count(alpha, k)).collect()
}

/// Rank by dense Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            let pivot = rows[r].clone();
            for (x, p) in rows[i].iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
        r += 1;
    }
    r
}

/// Whether `f` is a combination of the `x^a g_i` with degree `≤ bound`.
pub fn in_jet_span(f: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    let n = f.nvars();
    let cols = monomials(n, bound);
    let index = |e: &ExponentVector| cols.iter().position(|m| m == e);
    let as_row = |p: &Polynomial| -> Option<Vec<Rational>> {
        let mut row = vec![Rational::zero(); cols.len()];
        for (e, c) in p.terms() {
            row[index(e)?] = c.clone();
        }
        Some(row)
    };
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.total_degree().unwrap_or(0);
        if dg > bound {
            continue;
        }
        for a in monomials(n, bound - dg) {
            rows.push(as_row(&g.mul_term(&a, &Rational::one())).expect("within bound"));
        }
    }
    let Some(fr) = as_row(f) else { return false };
    let base = rank(rows.clone());
    rows.push(fr);
    rank(rows) == base
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=5);
    Rational::new(num.into(), den.into())
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random polynomial with up to `terms` monomials of degree `≤ k`.
pub fn random_poly(rng: &mut impl Rng, n: usize, k: u32, terms: usize) -> Polynomial {
    let all = monomials(n, k);
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let e = all[rng.gen_range(0..all.len())].clone();
        p.add_term(e, nonzero_rational(rng));
    }
    p
}
