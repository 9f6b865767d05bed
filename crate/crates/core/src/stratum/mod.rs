//! Equations of the equisingular substratum of the generic family
//! `F = f + Σ a_I x^I` and their rank certificates.

mod case1;
mod case2;
mod family;
mod system;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use case1::derive_case1;
pub use case2::{apply_change, change_targets, coordinate_chain, derive_case2, replay_changes};
pub use family::{build_generic_family, Family};
pub use system::{
    Case, CoordinateChange, Equation, EquationKind, EquationSystem, LastEquation, PairCoefficient,
};

use crate::lattice::{binomial, expected_dimension, h1};
use crate::linalg::SymMatrix;
use crate::localsing::SingularitySpec;
use crate::polyring::ExponentVector;
use crate::reduction::ReductionError;

#[derive(Debug, Error)]
pub enum StratumError {
    #[error("spec {alpha:?} does not belong to {expected:?}")]
    WrongCase { expected: Case, alpha: Vec<u32> },
    #[error("degree {degree} is below max α = {max_alpha}")]
    DegreeTooSmall { degree: u32, max_alpha: u32 },
    #[error("solving requires a parameter-degree cap")]
    Uncapped,
    #[error("equation for parameter {0} has no linear term in it")]
    NoLinearPart(u32),
    #[error("equation for parameter {target} is also linear in solved parameter {other}")]
    NotDiagonal { target: u32, other: u32 },
    #[error("unexpected term {0} on or below the Newton polytope")]
    StrayTerm(ExponentVector),
    #[error("coordinate-change chain did not terminate after {0} changes")]
    ChainDidNotTerminate(usize),
    #[error("coefficient of {0} is not a unit")]
    NonUnit(ExponentVector),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Exact rank of a symmetric rational matrix.
pub fn quadratic_rank(q: &SymMatrix) -> usize {
    q.rank()
}

/// Whether the spec falls under the first case, `α_1 < 2α_n`.
pub fn case_of(spec: &SingularitySpec) -> Case {
    if system::is_case1(spec) {
        Case::Case1
    } else {
        Case::Case2
    }
}

/// Derives the system for whichever case the spec belongs to.
pub fn derive(spec: &SingularitySpec, cap: Option<u32>) -> Result<EquationSystem, StratumError> {
    match case_of(spec) {
        Case::Case1 => derive_case1(spec, cap),
        Case::Case2 => derive_case2(spec, cap),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    /// No equation survives: the germ is smooth, of dimension `actual`.
    SmoothNonExpectedDim { actual: i64, expected: i64 },
    /// Quadratic rank 1.
    NonReducedDouble,
    /// Quadratic rank 2.
    TwoSmoothComponents,
    /// Quadratic rank ≥ 3.
    ReducedIrreducibleA1,
    /// The last equation has no quadratic part.
    Degenerate,
    /// More than one last equation; no single quadratic form to read.
    Unclassified,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub alpha: Vec<u32>,
    pub degree: u32,
    pub case: Case,
    pub verdict: Verdict,
    pub tau: u64,
    pub h1: u64,
    pub linear_rank: usize,
    pub quadratic_rank: Option<usize>,
    pub g_rank: Option<usize>,
    pub last_linear_zero: bool,
    pub derivatives_in_g: bool,
    pub theta_in_g2m: bool,
    pub solutions_in_g2: bool,
    pub only_g_in_quadratic: bool,
    pub off_pairing_zero: bool,
    pub pairs: Vec<PairCoefficient>,
    pub coordinate_changes: usize,
    pub expected_dimension: i64,
}

/// Classifies the stratum from its derived system.
pub fn classify_system(sys: &EquationSystem) -> Classification {
    let spec = &sys.spec;
    let d = spec.degree();
    let h1v = h1(spec.alpha(), d as i64);
    let linear_rank = sys.linear_rank();
    let expected = expected_dimension(spec);
    let all_zero = sys.last.iter().all(|l| l.residual.is_zero());
    let verdict = if all_zero && sys.free_coordinates().is_empty() {
        let ambient = binomial((d as usize + spec.n()) as u64, spec.n() as u64) as i64;
        Verdict::SmoothNonExpectedDim { actual: ambient - 1 - linear_rank as i64, expected }
    } else if sys.last.len() != 1 {
        Verdict::Unclassified
    } else {
        match sys.last[0].quadratic_rank {
            0 => Verdict::Degenerate,
            1 => Verdict::NonReducedDouble,
            2 => Verdict::TwoSmoothComponents,
            _ => Verdict::ReducedIrreducibleA1,
        }
    };
    let single = (sys.last.len() == 1).then(|| &sys.last[0]);
    Classification {
        alpha: spec.alpha().to_vec(),
        degree: d,
        case: sys.case,
        verdict,
        tau: spec.tau(),
        h1: h1v,
        linear_rank,
        quadratic_rank: single.map(|l| l.quadratic_rank),
        g_rank: single.map(|l| l.g_rank),
        last_linear_zero: sys.last.iter().all(|l| l.linear_is_zero),
        derivatives_in_g: sys.last.iter().all(|l| l.derivatives_in_g),
        theta_in_g2m: sys.last.iter().all(|l| l.theta_in_g2m),
        solutions_in_g2: sys.solutions_in_g2(),
        only_g_in_quadratic: sys.last.iter().all(|l| l.only_g_in_quadratic),
        off_pairing_zero: sys.last.iter().all(|l| l.off_pairing_zero),
        pairs: sys.last.iter().flat_map(|l| l.pairs.iter().cloned()).collect(),
        coordinate_changes: sys.changes.len(),
        expected_dimension: expected,
    }
}

pub fn classify_stratum(spec: &SingularitySpec, cap: Option<u32>) -> Result<Classification, StratumError> {
    Ok(classify_system(&derive(spec, cap)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    #[test]
    fn ranks_of_pairing_forms() {
        let mut q = SymMatrix::new(vec![0, 1]);
        q.set(0, 1, rat(1));
        assert_eq!(quadratic_rank(&q), 2);
        let mut q = SymMatrix::new(vec![0]);
        q.set(0, 0, rat(3));
        assert_eq!(quadratic_rank(&q), 1);
        let mut q = SymMatrix::new((0..6).collect());
        for k in 0..3 {
            q.set(2 * k, 2 * k + 1, rat(k as i64 + 1));
        }
        assert_eq!(quadratic_rank(&q), 6);
    }

    #[test]
    fn case_dispatch() {
        let s = SingularitySpec::new(&[6, 5], Some(6), None).unwrap();
        assert_eq!(case_of(&s), Case::Case1);
        let s = SingularitySpec::new(&[10, 5], Some(10), None).unwrap();
        assert_eq!(case_of(&s), Case::Case2);
    }
}
