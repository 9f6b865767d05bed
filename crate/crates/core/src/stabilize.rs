//! Suspension by squares: `f + Σ y_j^2` in `n + m` variables, the
//! elimination of the terms linear in a new variable, and the rank and
//! reducedness certificates of the resulting equations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::h1;
use crate::linalg::{Echelon, SparseRow, SymMatrix};
use crate::localsing::{milnor_basis, tjurina_data, LocalError, SingularitySpec};
use crate::polyring::{
    monomials_of_degree, monomials_up_to, Coeff, ExponentVector, ParamCoefficient, ParamMonomial, ParamPolynomial,
    ParamSpace, Poly, Polynomial, Rational,
};
use crate::stratum::{self, StratumError};

#[derive(Debug, Error)]
pub enum StabilizeError {
    #[error("invalid suspension: {0}")]
    InvalidSpec(String),
    #[error("coefficient of y{0}^2 is not 1")]
    NotNormalized(usize),
    #[error("base is not T-smooth in degree τ+1 = {degree} (h1 = {h1})")]
    UnsupportedBase { degree: u32, h1: u64 },
    #[error("expected exactly one equation without linear part, found {0}")]
    WrongShape(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no split J + K = {0} with |J|, |K| ≤ d − 1")]
    NoSplitting(ExponentVector),
    #[error("no witness found after {0} samples")]
    Inconclusive(usize),
    #[error("{what}: suspended {suspended} vs base {base}")]
    InvariantViolation { what: &'static str, suspended: u64, base: u64 },
    #[error(transparent)]
    Stratum(#[from] StratumError),
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// Parameter-degree kept through the elimination; the equations are only
/// read up to their quadratic parts.
pub const SUSPENSION_CAP: u32 = 2;

/// Samples tried by [`witness_reduced_component`].
pub const WITNESS_BUDGET: usize = 64;

/// Largest absolute value of a sampled witness coordinate.
pub const WITNESS_HEIGHT: i64 = 8;

#[derive(Clone, Debug, Serialize)]
pub struct SuspensionSpec {
    pub base: SingularitySpec,
    pub m: usize,
    /// Adds `λ_j y_j^d` with fixed generic `λ_j`.
    pub unisingular: bool,
}

impl SuspensionSpec {
    pub fn new(base: SingularitySpec, m: usize, unisingular: bool) -> Result<Self, StabilizeError> {
        if base.degree() < 3 {
            return Err(StabilizeError::InvalidSpec(format!("degree {} < 3", base.degree())));
        }
        Ok(SuspensionSpec { base, m, unisingular })
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn nvars(&self) -> usize {
        self.base.n() + self.m
    }

    pub fn degree(&self) -> u32 {
        self.base.degree()
    }

    /// Exponent of `x^I y_j^k` (`j` zero-based).
    pub fn exponent(&self, i: &ExponentVector, j: Option<usize>, k: u32) -> ExponentVector {
        let mut y = vec![0; self.m];
        if let Some(j) = j {
            y[j] = k;
        }
        i.extended(&y)
    }

    /// `f + Σ y_j^2`, plus `Σ (j+2) y_j^d` in the unisingular variant.
    pub fn polynomial(&self) -> Polynomial {
        let mut p = self.base.polynomial().extend_vars(self.m);
        let zero = ExponentVector::zeros(self.n());
        for j in 0..self.m {
            p.add_term(self.exponent(&zero, Some(j), 2), Rational::one());
            if self.unisingular {
                p.add_term(self.exponent(&zero, Some(j), self.degree()), Rational::from_integer((j as i64 + 2).into()));
            }
        }
        p
    }
}

/// `f + Σy_j^2 + Σ a_{I,0} x^I + Σ a_{I,e_j} x^I y_j + Σ a_{I,2e_j} x^I y_j^2`
/// over `|I| ≤ d`, `|I| ≤ d−1` and `1 ≤ |I| ≤ d−2` respectively. Parameter
/// labels are the full exponents in `n + m` variables.
#[derive(Clone, Debug)]
pub struct SuspendedFamily {
    pub spec: SuspensionSpec,
    pub space: ParamSpace,
    pub poly: ParamPolynomial,
}

pub fn build_suspended_family(spec: &SuspensionSpec, cap: Option<u32>) -> SuspendedFamily {
    let n = spec.n();
    let d = spec.degree();
    let mut labels: Vec<ExponentVector> = monomials_up_to(n, d).iter().map(|i| spec.exponent(i, None, 0)).collect();
    for j in 0..spec.m {
        labels.extend(monomials_up_to(n, d - 1).iter().map(|i| spec.exponent(i, Some(j), 1)));
    }
    for j in 0..spec.m {
        labels.extend(
            monomials_up_to(n, d - 2).iter().filter(|i| !i.is_zero()).map(|i| spec.exponent(i, Some(j), 2)),
        );
    }
    let space = ParamSpace::from_labels(labels);
    let mut poly = spec.polynomial().to_param().with_param_cap(cap);
    for (k, l) in space.labels().iter().enumerate() {
        poly.add_term(l.clone(), ParamCoefficient::var(k as u32).with_cap(cap));
    }
    SuspendedFamily { spec: spec.clone(), space, poly }
}

/// Removes the terms `x^I y` (`y` = variable `var`, `x` = the first `nx`
/// variables) with `|I| ≤ max_degree` by substitutions
/// `y ↦ y − ½ c x^I` in increasing `|I|`. Returns the new polynomial and the
/// coefficients of its `y`-free terms keyed by the `x`-exponent.
pub fn eliminate_mixed_terms(
    f: &ParamPolynomial,
    var: usize,
    nx: usize,
    max_degree: u32,
) -> Result<(ParamPolynomial, BTreeMap<ExponentVector, ParamCoefficient>), StabilizeError> {
    let nv = f.nvars();
    let square = ExponentVector::pure_power(nv, var, 2);
    if f.coefficient(&square).is_none_or(|c| *c != ParamCoefficient::one()) {
        return Err(StabilizeError::NotNormalized(var - nx));
    }
    let bound = Some(max_degree + 2);
    let mut g = f.clone();
    let half = Rational::new(1.into(), 2.into());
    for k in 0..=max_degree {
        for i in monomials_of_degree(nx, k) {
            let x = i.extended(&vec![0; nv - nx]);
            let Some(c) = g.coefficient(&x.with_entry(var, 1)).filter(|c| !c.is_zero()) else { continue };
            let mut repl: ParamPolynomial = Poly::var(nv, var);
            repl.add_term(x, c.scale(&half).neg_ref());
            g = g.substitute_bounded(var, &repl, bound);
        }
    }
    let map = g
        .terms()
        .filter(|(e, _)| e.entries()[nx..].iter().all(|&y| y == 0))
        .map(|(e, c)| (ExponentVector::new(e.entries()[..nx].to_vec()), c.clone()))
        .collect();
    Ok((g, map))
}

#[derive(Clone, Debug)]
pub struct SuspendedRow {
    /// Basis monomial of the base Tjurina algebra.
    pub index: ExponentVector,
    pub linear: BTreeMap<ExponentVector, Rational>,
    /// Quadratic form of the base equation on the stratum coordinates.
    pub w0: SymMatrix,
    /// `w[j]`: quadratic part in the `a_{·,e_j}`.
    pub w: Vec<SymMatrix>,
    /// Coefficient of `x^index` after the elimination.
    pub expression: ParamCoefficient,
}

#[derive(Clone, Debug)]
pub struct SuspendedSystem {
    pub spec: SuspensionSpec,
    pub space: ParamSpace,
    pub rows: Vec<SuspendedRow>,
    /// No quadratic term couples two different groups `a_{·,e_i}`,
    /// `a_{·,e_j}`, or one of them with another coordinate.
    pub blocks_separate: bool,
}

impl SuspendedSystem {
    pub fn linear_rank(&self) -> usize {
        let mut cols: BTreeMap<&ExponentVector, usize> = BTreeMap::new();
        let mut ech = Echelon::new();
        for r in &self.rows {
            let row: SparseRow = r
                .linear
                .iter()
                .map(|(l, c)| {
                    let k = cols.len();
                    (*cols.entry(l).or_insert(k), c.clone())
                })
                .collect();
            ech.insert(row);
        }
        ech.rank()
    }

    /// Rows without linear part.
    pub fn quadratic_rows(&self) -> Vec<&SuspendedRow> {
        self.rows.iter().filter(|r| r.linear.is_empty()).collect()
    }

    /// Group of a parameter: `Some(j)` for `a_{·,e_j}`.
    pub fn group(&self, p: u32) -> Option<usize> {
        group_of(self.space.label(p), self.spec.n())
    }

    /// Principal part of a quadratic row as a polynomial in the parameters.
    pub fn principal(&self, row: &SuspendedRow) -> ParamCoefficient {
        let mut q = row.expression.homogeneous_part(2).uncapped();
        for (&(i, j), v) in row.w0.entries() {
            let m = ParamMonomial::from_factors(if i == j { vec![(i, 2)] } else { vec![(i, 1), (j, 1)] });
            let c = if i == j { v.clone() } else { v * Rational::from_integer(2.into()) };
            q.add_term(m, c);
        }
        q
    }
}

fn group_of(label: &ExponentVector, n: usize) -> Option<usize> {
    let y = &label.entries()[n..];
    (y.iter().sum::<u32>() == 1).then(|| y.iter().position(|&e| e == 1).unwrap())
}

/// Equations of the suspended stratum: for every basis monomial `x^P` of
/// the base, the coefficient of `x^P` after eliminating the mixed terms;
/// its linear part is `a_{P,0}` when `|P| ≤ d`. The quadratic rows carry
/// the base form `w0` (from the stratum derivation) and one form per
/// square.
pub fn derive_suspended_system(spec: &SuspensionSpec, cap: Option<u32>) -> Result<SuspendedSystem, StabilizeError> {
    let base = &spec.base;
    let n = spec.n();
    let tau = base.tau();
    let t1 = (tau + 1) as u32;
    let h = h1(base.alpha(), t1 as i64);
    if h != 0 {
        return Err(StabilizeError::UnsupportedBase { degree: t1, h1: h });
    }
    let strat = stratum::derive(base, cap)?;
    let fam = build_suspended_family(spec, Some(SUSPENSION_CAP));
    let top: u32 = base.alpha().iter().map(|&a| a - 2).sum();
    let mut g = fam.poly.clone();
    let mut map = BTreeMap::new();
    for j in 0..spec.m {
        let (next, m) = eliminate_mixed_terms(&g, n + j, n, top)?;
        g = next;
        map = m;
    }
    if spec.m == 0 {
        map = g.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    }
    let to_suspended = |p: u32| -> u32 {
        let l = spec.exponent(strat.space.label(p), None, 0);
        fam.space.get(&l).expect("stratum coordinate in suspended family") as u32
    };
    let mut blocks_separate = true;
    let mut rows = Vec::new();
    for p in milnor_basis(base) {
        let c = map.get(&p).cloned().unwrap_or_else(|| ParamCoefficient::zero_capped(Some(SUSPENSION_CAP)));
        let linear: BTreeMap<ExponentVector, Rational> =
            c.linear_part().into_iter().map(|(q, v)| (fam.space.label(q).clone(), v)).collect();
        let mut per_group: Vec<BTreeMap<(u32, u32), Rational>> = vec![BTreeMap::new(); spec.m];
        for ((a, b), v) in c.quadratic_terms() {
            let (ga, gb) = (group_of(fam.space.label(a), n), group_of(fam.space.label(b), n));
            match (ga, gb) {
                (Some(x), Some(y)) if x == y => {
                    per_group[x].insert((a, b), v);
                }
                _ => blocks_separate = false,
            }
        }
        let w0 = if linear.is_empty() {
            let mut w0 = SymMatrix::new(Vec::new());
            if let Some(l) = strat.last.iter().find(|l| l.index == p) {
                for (&(a, b), v) in l.quadratic.entries() {
                    w0.set(to_suspended(a), to_suspended(b), v.clone());
                }
            }
            w0
        } else {
            SymMatrix::new(Vec::new())
        };
        rows.push(SuspendedRow {
            index: p,
            linear,
            w0,
            w: per_group.iter().map(SymMatrix::from_quadratic_terms).collect(),
            expression: c,
        });
    }
    Ok(SuspendedSystem { spec: spec.clone(), space: fam.space, rows, blocks_separate })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticRanks {
    pub w0: usize,
    pub w: Vec<usize>,
    pub combined: usize,
}

/// `rank(w0) + Σ rank(w_j)` for the single quadratic row; the forms live
/// in disjoint sets of variables.
pub fn combined_quadratic_rank(sys: &SuspendedSystem) -> Result<QuadraticRanks, StabilizeError> {
    let q = sys.quadratic_rows();
    if q.len() != 1 {
        return Err(StabilizeError::WrongShape(q.len()));
    }
    let row = q[0];
    let w0 = row.w0.rank();
    let w: Vec<usize> = row.w.iter().map(SymMatrix::rank).collect();
    let combined = w0 + w.iter().sum::<usize>();
    Ok(QuadraticRanks { w0, w, combined })
}

#[derive(Clone, Debug, Serialize)]
pub struct Split {
    pub row: ExponentVector,
    pub j: ExponentVector,
    pub k: ExponentVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub splits: Vec<Split>,
    /// Nonzero coordinates of the point, by parameter name.
    pub point: BTreeMap<String, String>,
    pub minor: String,
    /// The minor restricted to the subspace is a constant times the
    /// product of the `a_{K_j,e_j}`.
    pub minor_factorizes: bool,
    pub jacobian_rank: usize,
    pub tau: u64,
    pub attempts: usize,
}

/// `J` of least degree `≥ 2` (then least in lex order) with `J ≤ L`,
/// `|J| ≤ d−1` and `|L − J| ≤ d−1`.
pub fn choose_split(l: &ExponentVector, d: u32) -> Option<(ExponentVector, ExponentVector)> {
    let mut cands: Vec<ExponentVector> = crate::polyring::box_points(l.entries())
        .into_iter()
        .filter(|j| {
            let k = l.total_degree() - j.total_degree();
            j.total_degree() >= 2 && j.total_degree() < d && k < d
        })
        .collect();
    cands.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
    let j = cands.into_iter().next()?;
    let k = l.checked_sub(&j).unwrap();
    Some((j, k))
}

/// Searches the subspace spanned by the `a_{K_j,e_j}` and the
/// `a_{I,e_m}` (`1 ≤ |I| ≤ d−1`) for a point of the principal-part variety
/// where the minor in the `a_{L_i,0}` and `a_{J_j,e_j}` columns is nonzero.
pub fn witness_reduced_component(sys: &SuspendedSystem, seed: u64) -> Result<Witness, StabilizeError> {
    let spec = &sys.spec;
    let base = &spec.base;
    let d = spec.degree();
    let n = spec.n();
    let rows = sys.quadratic_rows();
    let h = rows.len();
    if spec.m < h + 1 {
        return Err(StabilizeError::Precondition(format!("m = {} < h1 + 1 = {}", spec.m, h + 1)));
    }
    if h1(base.alpha(), 2 * d as i64 - 2) != 0 {
        return Err(StabilizeError::Precondition("h1(2d−2) ≠ 0".into()));
    }
    let id = |e: ExponentVector| sys.space.get(&e).map(|p| p as u32);
    let mut splits = Vec::new();
    let mut jvars = Vec::new();
    let mut kvars = Vec::new();
    for (j, r) in rows.iter().enumerate() {
        let (jj, kk) = choose_split(&r.index, d).ok_or_else(|| StabilizeError::NoSplitting(r.index.clone()))?;
        jvars.push(id(spec.exponent(&jj, Some(j), 1)).expect("|J| ≤ d−1"));
        kvars.push(id(spec.exponent(&kk, Some(j), 1)).expect("|K| ≤ d−1"));
        splits.push(Split { row: r.index.clone(), j: jj, k: kk });
    }
    let last = spec.m - 1;
    let free: Vec<u32> = (1..d)
        .flat_map(|k| monomials_of_degree(n, k))
        .filter_map(|i| id(spec.exponent(&i, Some(last), 1)))
        .collect();
    let in_a: BTreeSet<u32> = kvars.iter().chain(&free).copied().collect();
    let principal: Vec<ParamCoefficient> = rows.iter().map(|r| sys.principal(r)).collect();
    let on_a: Vec<ParamCoefficient> = principal.iter().map(|w| w.vanish(&|p| !in_a.contains(&p))).collect();

    // symbolic minor on A
    let block: Vec<Vec<ParamCoefficient>> = principal
        .iter()
        .map(|w| jvars.iter().map(|&v| w.derivative(v).vanish(&|p| !in_a.contains(&p))).collect())
        .collect();
    let minor_sym = determinant(&block);
    let expected = ParamMonomial::from_factors(kvars.iter().map(|&k| (k, 1)).collect());
    let minor_factorizes = minor_sym.num_terms() == 1 && minor_sym.terms().all(|(m, _)| *m == expected);

    let tau = base.tau();
    let linear_rows: Vec<SparseRow> = sys
        .rows
        .iter()
        .filter(|r| !r.linear.is_empty())
        .map(|r| r.linear.iter().map(|(l, c)| (sys.space.get(l).unwrap(), c.clone())).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=WITNESS_BUDGET {
        let mut point: BTreeMap<u32, Rational> = BTreeMap::new();
        for &k in &kvars {
            let v = rng.gen_range(1..=WITNESS_HEIGHT) * if rng.gen_bool(0.5) { 1 } else { -1 };
            point.insert(k, Rational::from_integer(v.into()));
        }
        for &f in &free {
            point.insert(f, Rational::from_integer(rng.gen_range(-WITNESS_HEIGHT..=WITNESS_HEIGHT).into()));
        }
        let Some(point) = solve_on_a(&on_a, &free, point, attempt) else { continue };
        let value = |p: u32| point.get(&p).cloned().unwrap_or_else(Rational::zero);
        if !principal.iter().all(|w| w.evaluate(&value).is_zero()) {
            continue;
        }
        let numeric: Vec<Vec<ParamCoefficient>> = block
            .iter()
            .map(|r| r.iter().map(|c| ParamCoefficient::constant(c.evaluate(&value))).collect())
            .collect();
        let minor = determinant(&numeric).constant_term();
        if minor.is_zero() {
            continue;
        }
        let mut ech = Echelon::new();
        for r in &linear_rows {
            ech.insert(r.clone());
        }
        for w in &principal {
            let grad: SparseRow = w
                .variables()
                .into_iter()
                .map(|v| (v as usize, w.derivative(v).evaluate(&value)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            ech.insert(grad);
        }
        let jacobian_rank = ech.rank();
        if jacobian_rank as u64 != tau {
            continue;
        }
        return Ok(Witness {
            splits,
            point: point.iter().filter(|(_, v)| !v.is_zero()).map(|(p, v)| (sys.space.name(*p), v.to_string())).collect(),
            minor: minor.to_string(),
            minor_factorizes,
            jacobian_rank,
            tau,
            attempts: attempt,
        });
    }
    Err(StabilizeError::Inconclusive(WITNESS_BUDGET))
}

/// Picks `h` coordinates among `free` that occur only linearly in the
/// equations after fixing the rest at `point`, and solves for them.
fn solve_on_a(
    eqs: &[ParamCoefficient],
    free: &[u32],
    mut point: BTreeMap<u32, Rational>,
    rotate: usize,
) -> Option<BTreeMap<u32, Rational>> {
    let h = eqs.len();
    let mut chosen: Vec<u32> = Vec::new();
    let nonlinear = |v: u32, w: &ParamCoefficient, chosen: &[u32]| {
        w.terms().any(|(m, _)| m.exponent_of(v) >= 2 || (m.exponent_of(v) == 1 && chosen.iter().any(|&c| m.exponent_of(c) > 0)))
    };
    for off in 0..free.len() {
        let v = free[(off + rotate) % free.len()];
        if chosen.len() == h {
            break;
        }
        if eqs.iter().all(|w| !w.variables().contains(&v)) || eqs.iter().any(|w| nonlinear(v, w, &chosen)) {
            continue;
        }
        chosen.push(v);
    }
    if chosen.len() < h {
        return None;
    }
    // each equation is affine in the chosen coordinates
    let fixed = |p: u32| if chosen.contains(&p) { None } else { Some(ParamCoefficient::constant(point.get(&p).cloned().unwrap_or_else(Rational::zero))) };
    let mut ech = Echelon::new();
    for w in eqs {
        let r = w.compose(&fixed);
        let mut row: SparseRow = r.linear_part().into_iter().filter_map(|(v, c)| chosen.iter().position(|&x| x == v).map(|k| (k, c))).collect();
        let c0 = r.constant_term();
        if !c0.is_zero() {
            row.insert(h, -c0);
        }
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    for (k, &v) in chosen.iter().enumerate() {
        let r = ech.row(k)?;
        point.insert(v, r.get(&h).cloned().unwrap_or_else(Rational::zero));
        if r.keys().any(|&c| c != k && c != h) {
            return None;
        }
    }
    Some(point)
}

fn determinant(m: &[Vec<ParamCoefficient>]) -> ParamCoefficient {
    let n = m.len();
    if n == 0 {
        return ParamCoefficient::one();
    }
    let mut total = ParamCoefficient::zero();
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<ParamCoefficient>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| v.clone()).collect()).collect();
        let term = entry.mul_ref(&determinant(&minor));
        if c % 2 == 0 {
            total.add_assign_ref(&term);
        } else {
            total.sub_assign_ref(&term);
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub h1: u64,
    pub tau: u64,
    pub base_h1: u64,
    pub base_tau: u64,
    /// `τ −` linear rank of the suspended system.
    pub h1_from_system: u64,
}

/// `(h1, τ)` of the suspension: `τ` from the jet-space oracle on
/// `f + Σ y_j^2`, `h1` both from the oracle's tangent rank in degree `d`
/// and from the suspended system; all must agree with the base.
pub fn check_h1_tau_preserved(spec: &SuspensionSpec, cap: Option<u32>) -> Result<InvariantReport, StabilizeError> {
    let base = &spec.base;
    let d = spec.degree();
    let data = tjurina_data(&spec.polynomial(), None)?;
    let tau = data.tau;
    let h1v = tau - data.tangent_rank(d);
    let base_tau = base.tau();
    let base_h1 = h1(base.alpha(), d as i64);
    let sys = derive_suspended_system(spec, cap)?;
    let h1_from_system = base_tau - sys.linear_rank() as u64;
    if tau != base_tau {
        return Err(StabilizeError::InvariantViolation { what: "tau", suspended: tau, base: base_tau });
    }
    if h1v != base_h1 {
        return Err(StabilizeError::InvariantViolation { what: "h1", suspended: h1v, base: base_h1 });
    }
    if h1_from_system != base_h1 {
        return Err(StabilizeError::InvariantViolation { what: "h1 (system)", suspended: h1_from_system, base: base_h1 });
    }
    Ok(InvariantReport { h1: h1v, tau, base_h1, base_tau, h1_from_system })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::frac;

    fn gur1(m: usize) -> SuspensionSpec {
        SuspensionSpec::new(SingularitySpec::new(&[6, 5], Some(6), None).unwrap(), m, false).unwrap()
    }

    #[test]
    fn family_sizes() {
        let f = build_suspended_family(&gur1(1), Some(2));
        // 28 + 21 + 14
        assert_eq!(f.space.len(), 63);
    }

    #[test]
    fn elimination_needs_unit_square() {
        let s = gur1(1);
        let mut f = build_suspended_family(&s, Some(2)).poly;
        f.remove_term(&ExponentVector::new(vec![0, 0, 2]));
        assert!(matches!(eliminate_mixed_terms(&f, 2, 2, 7), Err(StabilizeError::NotNormalized(0))));
    }

    #[test]
    fn single_mixed_term() {
        // x^2 + y^2 + a x y  ->  y-free part x^2 - a^2/4 x^2
        let mut f: ParamPolynomial = Poly::zero(2);
        f.add_term(ExponentVector::new(vec![2, 0]), ParamCoefficient::one());
        f.add_term(ExponentVector::new(vec![0, 2]), ParamCoefficient::one());
        f.add_term(ExponentVector::new(vec![1, 1]), ParamCoefficient::var(0).with_cap(Some(2)));
        let (_, map) = eliminate_mixed_terms(&f, 1, 1, 3).unwrap();
        let c = &map[&ExponentVector::new(vec![2])];
        let mut want = ParamCoefficient::one();
        want.add_term(ParamMonomial::from_factors(vec![(0, 2)]), frac(-1, 4));
        assert_eq!(*c, want);
    }

    #[test]
    fn gur1_suspension_shape() {
        let sys = derive_suspended_system(&gur1(1), Some(3)).unwrap();
        assert_eq!(sys.linear_rank(), 19);
        assert_eq!(sys.quadratic_rows().len(), 1);
        assert!(sys.blocks_separate);
        let r = combined_quadratic_rank(&sys).unwrap();
        assert_eq!(r, QuadraticRanks { w0: 1, w: vec![14], combined: 15 });
    }

    #[test]
    fn splits_follow_degree_then_lex() {
        let (j, k) = choose_split(&ExponentVector::new(vec![4, 3]), 6).unwrap();
        assert_eq!(j, ExponentVector::new(vec![0, 2]));
        assert_eq!(k, ExponentVector::new(vec![4, 1]));
        assert!(choose_split(&ExponentVector::new(vec![9, 0]), 4).is_none());
    }
}
