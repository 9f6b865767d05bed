//! Local invariants of isolated hypersurface singularities: Milnor and
//! Tjurina data, determinacy, Newton polytopes and the position of a
//! monomial relative to the quasihomogeneous hyperplane.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Echelon, SparseRow};
use crate::polyring::{box_points, monomials_up_to, ExponentVector, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LocalError {
    #[error("invalid singularity spec: {0}")]
    InvalidSpec(String),
    #[error("quotient dimension did not stabilize up to order {cap}; singularity may not be isolated")]
    NotIsolated { cap: u32 },
    #[error("polynomial must vanish to order 2 at the origin")]
    NotSingular,
    #[error("zero polynomial")]
    ZeroPolynomial,
}

/// `f = Σ u_i x_i^{α_i} + Σ_{α_i < d} λ_i x_i^d` with `u_i = 1 + λ_i` when
/// `α_i = d` and `u_i = 1` otherwise. Internally α is sorted descending;
/// `permutation[k]` is the input position of sorted coordinate `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularitySpec {
    alpha: Vec<u32>,
    degree: u32,
    #[serde(serialize_with = "ser_rationals")]
    lambda: Vec<Rational>,
    permutation: Vec<usize>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

impl SingularitySpec {
    /// With `degree = None` the default `Σα_i − (2n+1)` is used, which must
    /// be at least every `α_i`.
    pub fn new(alpha: &[u32], degree: Option<u32>, lambda: Option<&[Rational]>) -> Result<Self, LocalError> {
        let n = alpha.len();
        if n == 0 {
            return Err(LocalError::InvalidSpec("α is empty".into()));
        }
        if alpha.iter().any(|&a| a < 2) {
            return Err(LocalError::InvalidSpec("every α_i must be at least 2".into()));
        }
        let lambda: Vec<Rational> = match lambda {
            Some(l) if l.len() != n => {
                return Err(LocalError::InvalidSpec(format!("λ has {} entries, α has {n}", l.len())))
            }
            Some(l) => l.to_vec(),
            None => vec![Rational::zero(); n],
        };
        let mut permutation: Vec<usize> = (0..n).collect();
        permutation.sort_by(|&i, &j| alpha[j].cmp(&alpha[i]).then(i.cmp(&j)));
        let sorted: Vec<u32> = permutation.iter().map(|&i| alpha[i]).collect();
        let lam: Vec<Rational> = permutation.iter().map(|&i| lambda[i].clone()).collect();
        let degree = match degree {
            Some(d) => d,
            None => {
                let s: u32 = alpha.iter().sum();
                let d = s as i64 - (2 * n as i64 + 1);
                if d < sorted[0] as i64 {
                    return Err(LocalError::InvalidSpec(format!(
                        "default degree Σα−(2n+1) = {d} is below max α = {}",
                        sorted[0]
                    )));
                }
                d as u32
            }
        };
        if degree < 2 {
            return Err(LocalError::InvalidSpec("degree must be at least 2".into()));
        }
        for (a, l) in sorted.iter().zip(&lam) {
            if *a == degree && (l + Rational::one()).is_zero() {
                return Err(LocalError::InvalidSpec("1 + λ_i must be nonzero when α_i = d".into()));
            }
        }
        Ok(SingularitySpec { alpha: sorted, degree, lambda: lam, permutation })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// α sorted descending.
    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Whether every `α_i ≤ d`, as the stratum derivation requires.
    pub fn degree_dominates(&self) -> bool {
        self.alpha.iter().all(|&a| a <= self.degree)
    }

    /// Weights `1/α_i`.
    pub fn weights(&self) -> Vec<Rational> {
        self.alpha.iter().map(|&a| Rational::new(1.into(), a.into())).collect()
    }

    /// `∏(α_i − 1)`.
    pub fn tau(&self) -> u64 {
        self.alpha.iter().map(|&a| (a - 1) as u64).product()
    }

    /// Coefficient of `x_i^{α_i}` in the canonical polynomial.
    pub fn principal_coefficient(&self, i: usize) -> Rational {
        if self.alpha[i] == self.degree {
            Rational::one() + &self.lambda[i]
        } else {
            Rational::one()
        }
    }

    /// The canonical polynomial in sorted coordinates.
    pub fn polynomial(&self) -> Polynomial {
        let n = self.n();
        let mut p = Polynomial::zero(n);
        for i in 0..n {
            p.add_term(ExponentVector::pure_power(n, i, self.alpha[i]), self.principal_coefficient(i));
            if self.alpha[i] != self.degree {
                p.add_term(ExponentVector::pure_power(n, i, self.degree), self.lambda[i].clone());
            }
        }
        p
    }

    /// Highest corner `(α_1 − 2, ..., α_n − 2)`.
    pub fn corner(&self) -> ExponentVector {
        ExponentVector::new(self.alpha.iter().map(|&a| a - 2).collect())
    }

    /// Maps a sorted-coordinate exponent back to input order.
    pub fn to_input_order(&self, e: &ExponentVector) -> ExponentVector {
        let mut out = vec![0; self.n()];
        for (k, &i) in self.permutation.iter().enumerate() {
            out[i] = e.get(k);
        }
        ExponentVector::new(out)
    }
}

/// Monomials `x^I` with `I_j ≤ α_j − 2`.
pub fn milnor_basis(spec: &SingularitySpec) -> Vec<ExponentVector> {
    box_points(&spec.alpha().iter().map(|&a| a - 2).collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TjurinaData {
    pub tau: u64,
    /// Monomials spanning the local Tjurina algebra.
    pub basis: Vec<ExponentVector>,
    /// Jet order at which the quotient dimension stabilized.
    pub order: u32,
    ideal: Echelon,
    columns: HashMap<ExponentVector, usize>,
}

/// Bound on the jet order for the Tjurina oracle.
pub const JET_ORDER_CAP: u32 = 64;

/// Local Tjurina number, computed as `dim Q[x]/(⟨f, ∂f⟩ + m^{B+1})` for
/// increasing `B` until two consecutive orders agree.
pub fn tjurina_number(f: &Polynomial) -> Result<u64, LocalError> {
    tjurina_data(f, None).map(|t| t.tau)
}

/// As [`tjurina_number`], returning a monomial basis too. `start` is the
/// first jet order tried (default: a small value derived from `f`).
pub fn tjurina_data(f: &Polynomial, start: Option<u32>) -> Result<TjurinaData, LocalError> {
    if f.is_zero() {
        return Err(LocalError::ZeroPolynomial);
    }
    if f.order().unwrap_or(0) < 2 {
        return Err(LocalError::NotSingular);
    }
    let n = f.nvars();
    let mut gens = vec![f.clone()];
    gens.extend((0..n).map(|i| f.partial_derivative(i)));
    let mut b = start.unwrap_or(f.order().unwrap());
    let mut prev = jet_quotient(&gens, n, b);
    while b < JET_ORDER_CAP {
        let next = jet_quotient(&gens, n, b + 1);
        if next.0 == prev.0 {
            let (dim, ideal, columns, monos) = prev;
            let basis: Vec<ExponentVector> = monos
                .into_iter()
                .enumerate()
                .filter(|(c, _)| ideal.row(*c).is_none())
                .map(|(_, m)| m)
                .collect();
            debug_assert_eq!(basis.len() as u64, dim);
            return Ok(TjurinaData { tau: dim, basis, order: b, ideal, columns });
        }
        prev = next;
        b += 1;
    }
    Err(LocalError::NotIsolated { cap: JET_ORDER_CAP })
}

type JetQuotient = (u64, Echelon, HashMap<ExponentVector, usize>, Vec<ExponentVector>);

/// Span of `x^β g` modulo `m^{b+1}`; columns run from high degree to low so
/// that pivots land on high-degree monomials.
fn jet_quotient(gens: &[Polynomial], n: usize, b: u32) -> JetQuotient {
    let mut monos = monomials_up_to(n, b);
    monos.sort_by(|x, y| y.total_degree().cmp(&x.total_degree()).then_with(|| x.cmp(y)));
    let columns: HashMap<ExponentVector, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        if ord > b {
            continue;
        }
        for beta in monomials_up_to(n, b - ord) {
            let row: SparseRow = g
                .terms()
                .filter_map(|(e, c)| {
                    let m = e.add(&beta);
                    (m.total_degree() <= b).then(|| (columns[&m], c.clone()))
                })
                .collect();
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    let dim = (monos.len() - ech.rank()) as u64;
    (dim, ech, columns, monos)
}

impl TjurinaData {
    /// Dimension of the image of all polynomials of degree `≤ d` in the
    /// local Tjurina algebra.
    pub fn tangent_rank(&self, d: u32) -> u64 {
        let mut ech = self.ideal.clone();
        let base = ech.rank();
        for (m, &c) in &self.columns {
            if m.total_degree() <= d {
                let mut row = SparseRow::new();
                row.insert(c, Rational::one());
                ech.insert(row);
            }
        }
        (ech.rank() - base) as u64
    }

    /// Whether `g` lies in `⟨f, ∂f⟩` in the local ring, decided modulo
    /// `m^{order+1}`, which already contains the ideal's complement.
    pub fn contains(&self, g: &Polynomial) -> bool {
        let row: SparseRow = g
            .terms()
            .filter(|(e, _)| e.total_degree() <= self.order)
            .map(|(e, c)| (self.columns[e], c.clone()))
            .collect();
        self.ideal.contains(row)
    }
}

/// `τ(f) + 1`: an isolated singularity is contact `(τ+1)`-determined.
pub fn determinacy_bound(tau: u64) -> u64 {
    tau + 1
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewtonPolytope {
    pub vertices: Vec<ExponentVector>,
    /// Weights `1/a_i` when the support lies on `Σ I_j/a_j = 1` with each
    /// `x_i^{a_i}` in the support.
    #[serde(serialize_with = "ser_opt_rationals")]
    pub weights: Option<Vec<Rational>>,
}

fn ser_opt_rationals<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_rationals(v, s),
        None => s.serialize_none(),
    }
}

/// Vertices of the convex hull of the support of `f`.
pub fn newton_polytope(f: &Polynomial) -> Result<NewtonPolytope, LocalError> {
    if f.is_zero() {
        return Err(LocalError::ZeroPolynomial);
    }
    let support: Vec<ExponentVector> = f.terms().map(|(e, _)| e.clone()).collect();
    let vertices = support
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<&ExponentVector> =
                support.iter().enumerate().filter(|(j, _)| j != i).map(|(_, q)| q).collect();
            !in_convex_hull(p, &others)
        })
        .map(|(_, p)| p.clone())
        .collect();
    Ok(NewtonPolytope { vertices, weights: quasihomogeneous_weights(&support) })
}

fn quasihomogeneous_weights(support: &[ExponentVector]) -> Option<Vec<Rational>> {
    let n = support.first()?.len();
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let a = support
            .iter()
            .find(|e| e.get(i) > 0 && (0..n).all(|j| j == i || e.get(j) == 0))?
            .get(i);
        w.push(Rational::new(1.into(), a.into()));
    }
    support.iter().all(|e| e.weighted_degree(&w).is_one()).then_some(w)
}

/// Whether `p` is a convex combination of `points`: phase one of the simplex
/// method on `Σλ_j q_j = p, Σλ_j = 1, λ ≥ 0`, in exact arithmetic with
/// Bland's rule.
pub fn in_convex_hull(p: &ExponentVector, points: &[&ExponentVector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = p.len();
    let m = n + 1;
    let k = points.len();
    // tableau columns: k structural, m artificial, then rhs
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row = vec![Rational::zero(); k + m + 1];
            for (j, q) in points.iter().enumerate() {
                row[j] = if r < n { Rational::from_integer(q.get(r).into()) } else { Rational::one() };
            }
            row[k + r] = Rational::one();
            row[k + m] = if r < n { Rational::from_integer(p.get(r).into()) } else { Rational::one() };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();
    // objective: minimize the sum of artificials; reduced costs of the
    // structural columns are minus the column sums
    loop {
        let cost = |j: usize, t: &Vec<Vec<Rational>>, basis: &Vec<usize>| -> Rational {
            let cj = if j >= k && j < k + m { Rational::one() } else { Rational::zero() };
            let mut z = Rational::zero();
            for (r, &b) in basis.iter().enumerate() {
                if b >= k && b < k + m {
                    z += &t[r][j];
                }
            }
            cj - z
        };
        let entering = (0..k + m).find(|&j| !basis.contains(&j) && cost(j, &t, &basis).is_negative());
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if t[r][e].is_positive() {
                let ratio = &t[r][k + m] / &t[r][e];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => match ratio.cmp(lratio) {
                        Ordering::Less => true,
                        Ordering::Equal => basis[r] < basis[*lr],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let piv = t[r][e].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[e].is_zero() {
                let f = row[e].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        basis[r] = e;
    }
    let residual: Rational = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= k)
        .map(|(r, _)| t[r][k + m].clone())
        .sum();
    residual.is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Position {
    Below,
    On,
    Above,
}

/// Compares `Σ I_j/α_j` with 1.
pub fn weighted_position(i: &ExponentVector, spec: &SingularitySpec) -> Position {
    position_for_alpha(i, spec.alpha())
}

pub fn position_for_alpha(i: &ExponentVector, alpha: &[u32]) -> Position {
    let w: Vec<Rational> = alpha.iter().map(|&a| Rational::new(1.into(), a.into())).collect();
    match i.weighted_degree(&w).cmp(&Rational::one()) {
        Ordering::Less => Position::Below,
        Ordering::Equal => Position::On,
        Ordering::Greater => Position::Above,
    }
}

/// Monomial basis listing keyed by total degree, for reports.
pub fn basis_by_degree(basis: &[ExponentVector]) -> BTreeMap<u32, Vec<ExponentVector>> {
    let mut out: BTreeMap<u32, Vec<ExponentVector>> = BTreeMap::new();
    for b in basis {
        out.entry(b.total_degree()).or_default().push(b.clone());
    }
    out
}
