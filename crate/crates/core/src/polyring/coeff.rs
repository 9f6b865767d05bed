use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// Coefficient ring for sparse polynomials: either plain rationals or
/// truncated polynomials in deformation parameters.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One {
    fn from_rational(r: Rational) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Inverse in the coefficient ring, or `None` if this is not a unit.
    fn unit_inverse(&self) -> Option<Self>;
    fn is_constant(&self) -> bool;
}

impl Coeff for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_constant(&self) -> bool {
        true
    }
}
