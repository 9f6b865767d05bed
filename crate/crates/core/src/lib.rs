//! Exact computer algebra for equisingular families of hypersurfaces with a
//! single quasihomogeneous singularity `Σ x_i^{α_i}`.
//!
//! The crate is layered bottom-up:
//!
//! - [`polyring`]: sparse polynomials with rational or parametric coefficients
//! - [`ordering`]: global and local monomial orderings
//! - [`reduction`]: normal forms, highest corners, the truncated local reduction
//! - [`localsing`]: Milnor/Tjurina data, Newton polytopes
//! - [`lattice`]: lattice-point counts for `h^0`/`h^1` and Castelnuovo functions
//! - [`stratum`]: equations of the equisingular stratum and their certificates
//! - [`stabilize`]: the same after adding squares of new variables
//! - [`cli`]: the `eqsing` command-line driver

pub mod cli;
pub mod lattice;
pub mod linalg;
pub mod localsing;
pub mod ordering;
pub mod polyring;
pub mod reduction;
pub mod stabilize;
pub mod stratum;

use thiserror::Error;

/// Any error raised by the toolkit, tagged by the module it came from.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polyring: {0}")]
    Poly(#[from] polyring::PolyError),
    #[error("ordering: {0}")]
    Ordering(#[from] ordering::OrderingError),
    #[error("reduction: {0}")]
    Reduction(#[from] reduction::ReductionError),
    #[error("localsing: {0}")]
    Local(#[from] localsing::LocalError),
    #[error("lattice: {0}")]
    Lattice(#[from] lattice::LatticeError),
    #[error("stratum: {0}")]
    Stratum(#[from] stratum::StratumError),
    #[error("stabilize: {0}")]
    Stabilize(#[from] stabilize::StabilizeError),
}

impl Error {
    /// Name of the module that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Poly(_) => "polyring",
            Error::Ordering(_) => "ordering",
            Error::Reduction(_) => "reduction",
            Error::Local(_) => "localsing",
            Error::Lattice(_) => "lattice",
            Error::Stratum(_) => "stratum",
            Error::Stabilize(_) => "stabilize",
        }
    }
}
