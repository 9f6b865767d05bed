//! Lattice-point model of the Tjurina scheme of `Σ x_i^{α_i}`: `h^0` and
//! `h^1` of its twisted ideal sheaf as counts in the box
//! `𝒫 = {I : I_j ≤ α_j − 2}`, Castelnuovo functions, and the index sets of
//! the generic family.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::localsing::{position_for_alpha, Position, SingularitySpec};
use crate::polyring::{box_points, monomials_of_degree, ExponentVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("h1 sequence increases between positions {0} and {1}")]
    NegativeDifference(usize, usize),
    #[error("h1 sequence does not reach 0")]
    NotEventuallyZero,
    #[error("empty h1 sequence")]
    Empty,
    #[error("Davis check needs 1 ≤ k ≤ d")]
    DavisRange,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Points of the box `∏[0, bounds_i]` of total degree above `k`.
pub fn h1_box(bounds: &[u32], k: i64) -> u64 {
    box_points(bounds).iter().filter(|p| p.total_degree() as i64 > k).count() as u64
}

/// `|𝒫 ∖ T_k|`.
pub fn h1(alpha: &[u32], k: i64) -> u64 {
    h1_box(&box_bounds(alpha), k)
}

/// `dim H^0(O(k)) − (deg − h^1(k))`; zero for negative `k`.
pub fn h0_box(bounds: &[u32], k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let n = bounds.len() as u64;
    let deg: u64 = bounds.iter().map(|&b| b as u64 + 1).product();
    binomial(k as u64 + n, n) + h1_box(bounds, k) - deg
}

pub fn h0(alpha: &[u32], k: i64) -> u64 {
    h0_box(&box_bounds(alpha), k)
}

fn box_bounds(alpha: &[u32]) -> Vec<u32> {
    alpha.iter().map(|&a| a - 2).collect()
}

/// `C(d+n, n) − 1 − ∏(α_i − 1)`.
pub fn expected_dimension(spec: &SingularitySpec) -> i64 {
    let n = spec.n() as u64;
    binomial(spec.degree() as u64 + n, n) as i64 - 1 - spec.tau() as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CastelnuovoProfile {
    /// `C(0), C(1), ...` up to the last index covered by the input.
    pub values: Vec<u64>,
    pub degree: u64,
    /// Least `k` with `h^1(k) = 0`.
    pub t: i64,
    /// Least `k` with `h^0(k) > 0`, when the ambient dimension is known.
    pub a: Option<i64>,
}

impl CastelnuovoProfile {
    pub fn value(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.values.get(k as usize).copied().unwrap_or(0)
    }
}

/// Profile from `h^1(−1), h^1(0), h^1(1), ...`; the first entry is the
/// degree of the scheme. With `ambient = Some(n)` the invariant `a` is
/// derived from `h^0(k) = C(k+n, n) − deg + h^1(k)`.
pub fn castelnuovo_profile(h1_seq: &[u64], ambient: Option<usize>) -> Result<CastelnuovoProfile, LatticeError> {
    let (&degree, rest) = h1_seq.split_first().ok_or(LatticeError::Empty)?;
    if *h1_seq.last().unwrap() != 0 {
        return Err(LatticeError::NotEventuallyZero);
    }
    let mut values = Vec::with_capacity(rest.len());
    for i in 1..h1_seq.len() {
        if h1_seq[i] > h1_seq[i - 1] {
            return Err(LatticeError::NegativeDifference(i - 1, i));
        }
        values.push(h1_seq[i - 1] - h1_seq[i]);
    }
    let t = h1_seq.iter().position(|&h| h == 0).unwrap() as i64 - 1;
    let a = ambient.map(|n| {
        (0..rest.len())
            .find(|&k| binomial(k as u64 + n as u64, n as u64) + rest[k] > degree)
            .map(|k| k as i64)
            .unwrap_or(rest.len() as i64)
    });
    Ok(CastelnuovoProfile { values, degree, t, a })
}

/// Profile of the monomial scheme with the given box, listed up to `k_max`
/// (extended until `h^1` vanishes).
pub fn box_profile(bounds: &[u32], k_max: i64) -> CastelnuovoProfile {
    let top: i64 = bounds.iter().map(|&b| b as i64).sum();
    let kmax = k_max.max(top);
    let seq: Vec<u64> = (-1..=kmax).map(|k| h1_box(bounds, k)).collect();
    castelnuovo_profile(&seq, Some(bounds.len())).expect("lattice counts are monotone")
}

pub fn profile_for_alpha(alpha: &[u32], k_max: i64) -> CastelnuovoProfile {
    box_profile(&box_bounds(alpha), k_max)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DavisReport {
    pub d: u32,
    pub k: u32,
    pub profile: Vec<u64>,
    pub bounded_by_k: bool,
    pub tail_matches: bool,
}

impl DavisReport {
    pub fn passed(&self) -> bool {
        self.bounded_by_k && self.tail_matches
    }
}

/// For `Z = V(x^d) ∩ V(y^k)`: checks `C_Z(i) ≤ k` for all `i ≥ 0` and
/// `C_Z(d + k − j) = j − 1` for `j = 1, ..., k + 1`.
pub fn davis_check(d: u32, k: u32) -> Result<DavisReport, LatticeError> {
    if k == 0 || k > d {
        return Err(LatticeError::DavisRange);
    }
    let prof = box_profile(&[d - 1, k - 1], (d + k) as i64 + 1);
    let bounded_by_k = prof.values.iter().all(|&c| c <= k as u64);
    let tail_matches = (1..=k + 1).all(|j| prof.value((d + k - j) as i64) == (j - 1) as u64);
    Ok(DavisReport { d, k, profile: prof.values, bounded_by_k, tail_matches })
}

/// `h^1(2d − 4) = 0` for a plane curve singularity `x^{α_1} + y^{α_2}` on
/// a curve of degree `d`.
pub fn check_curve_2dminus4(alpha: [u32; 2], d: u32) -> bool {
    h1(&alpha, 2 * d as i64 - 4) == 0
}

/// `h^1(d) < d − 1 ⇒ h^1(2d − 2) = 0` for `d ∈ [max(3, α_1), Σα]`.
/// Returns the degrees where the implication fails.
pub fn squares_d_violations(alpha: &[u32]) -> Vec<u32> {
    let lo = alpha.iter().copied().max().unwrap_or(0).max(3);
    let hi: u32 = alpha.iter().sum();
    (lo..=hi)
        .filter(|&d| h1(alpha, d as i64) + 1 < d as u64 && h1(alpha, 2 * d as i64 - 2) != 0)
        .collect()
}

/// Every α with `n` entries, each `≥ 2`, sorted descending, with
/// `Σα ≤ max_sum`.
pub fn canonical_alphas(n: usize, max_sum: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, max_part: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let left = (n - cur.len() - 1) as u32;
        let hi = max_part.min(budget.saturating_sub(2 * left));
        for a in 2..=hi {
            cur.push(a);
            rec(n, a, budget - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max_sum >= 2 * n as u32 {
        rec(n, max_sum, max_sum, &mut Vec::new(), &mut out);
    }
    out
}

/// Roles of the coefficients of the generic family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Role {
    /// basis monomial above the polytope
    B,
    /// basis monomial on or below the polytope
    E,
    /// one coordinate at `α_j − 1`, the rest within the box, not pure
    G,
    /// some coordinate `≥ α_j`, or two at `α − 1`
    U,
    /// pure `x_j^{α_j − 1}`
    Q,
}

impl Role {
    pub fn letter(self) -> char {
        match self {
            Role::B => 'b',
            Role::E => 'e',
            Role::G => 'g',
            Role::U => 'u',
            Role::Q => 'q',
        }
    }
}

/// Role of an arbitrary exponent relative to α (ignores membership in 𝒟).
pub fn role_of(i: &ExponentVector, alpha: &[u32]) -> Role {
    let n = alpha.len();
    let over = (0..n).any(|j| i.get(j) >= alpha[j]);
    let at: Vec<usize> = (0..n).filter(|&j| i.get(j) == alpha[j] - 1).collect();
    if over || at.len() >= 2 {
        return Role::U;
    }
    if let Some(&j) = at.first() {
        if (0..n).any(|k| k != j && i.get(k) > 0) {
            Role::G
        } else {
            Role::Q
        }
    } else if position_for_alpha(i, alpha) == Position::Above {
        Role::B
    } else {
        Role::E
    }
}

/// The index set 𝒟 of the generic family: `α_n ≤ |I| ≤ d`, minus the pure
/// powers `x_i^{α_i}` and the monomials `x_i^{α_i − 1} x_j`.
pub fn family_support(spec: &SingularitySpec) -> Vec<ExponentVector> {
    let n = spec.n();
    let alpha = spec.alpha();
    let lo = alpha[n - 1];
    let mut excluded = BTreeSet::new();
    for i in 0..n {
        excluded.insert(ExponentVector::pure_power(n, i, alpha[i]));
        for j in 0..n {
            if i != j {
                excluded.insert(ExponentVector::pure_power(n, i, alpha[i] - 1).add(&ExponentVector::unit(n, j)));
            }
        }
    }
    (lo..=spec.degree())
        .flat_map(|k| monomials_of_degree(n, k))
        .filter(|m| !excluded.contains(m))
        .collect()
}

/// Edge set E: the `G`-role members of 𝒟.
pub fn edge_set(spec: &SingularitySpec) -> Vec<ExponentVector> {
    family_support(spec).into_iter().filter(|i| role_of(i, spec.alpha()) == Role::G).collect()
}

/// `dual(I)` for `I ∈ E`: reflect every coordinate except the one at
/// `α_k − 1` through the box. `None` if `I` has no such coordinate.
pub fn dual(i: &ExponentVector, alpha: &[u32]) -> Option<ExponentVector> {
    let n = alpha.len();
    let k = (0..n).find(|&j| i.get(j) == alpha[j] - 1)?;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        if j == k {
            out.push(alpha[j] - 1);
        } else {
            out.push((alpha[j] - 2).checked_sub(i.get(j))?);
        }
    }
    Some(ExponentVector::new(out))
}

/// Counts needed by the `h1` report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Row {
    pub k: i64,
    pub h0: u64,
    pub h1: u64,
    pub castelnuovo: u64,
}

pub fn h1_table(alpha: &[u32], k0: i64, k1: i64) -> Vec<H1Row> {
    let prof = profile_for_alpha(alpha, k1.max(0));
    (k0..=k1)
        .map(|k| H1Row { k, h0: h0(alpha, k), h1: h1(alpha, k), castelnuovo: prof.value(k) })
        .collect()
}
