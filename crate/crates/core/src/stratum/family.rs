use crate::lattice::{family_support, role_of, Role};
use crate::localsing::SingularitySpec;
use num_traits::Zero;

use crate::polyring::{ExponentVector, ParamCoefficient, ParamPolynomial, ParamSpace, Poly};

/// The generic member `F = f + Σ_{I∈𝒟} a_I x^I` of the family, with one
/// parameter per index of 𝒟 (labelled by the index itself).
#[derive(Clone, Debug)]
pub struct Family {
    pub spec: SingularitySpec,
    pub space: ParamSpace,
    pub roles: Vec<Role>,
    pub poly: ParamPolynomial,
    pub cap: Option<u32>,
}

pub fn build_generic_family(spec: &SingularitySpec, cap: Option<u32>) -> Family {
    let support = family_support(spec);
    let space = ParamSpace::from_labels(support.iter().cloned());
    let roles: Vec<Role> = support.iter().map(|i| role_of(i, spec.alpha())).collect();
    let mut poly = spec.polynomial().to_param().with_param_cap(cap);
    for (k, i) in support.into_iter().enumerate() {
        poly.add_term(i, ParamCoefficient::var(k as u32).with_cap(cap));
    }
    Family { spec: spec.clone(), space, roles, poly, cap }
}

impl Family {
    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn role(&self, p: u32) -> Role {
        self.roles[p as usize]
    }

    pub fn param(&self, i: &ExponentVector) -> Option<u32> {
        self.space.get(i).map(|p| p as u32)
    }

    pub fn label(&self, p: u32) -> &ExponentVector {
        self.space.label(p)
    }

    pub fn params_with(&self, role: Role) -> Vec<u32> {
        (0..self.len() as u32).filter(|&p| self.role(p) == role).collect()
    }

    /// `F` with the parameters selected by `zero` set to 0.
    pub fn restricted(&self, zero: &dyn Fn(Role) -> bool) -> ParamPolynomial {
        let roles = &self.roles;
        let mut out: ParamPolynomial = Poly::zero(self.poly.nvars());
        for (e, c) in self.poly.terms() {
            let c = c.vanish(&|p| zero(roles[p as usize]));
            if !c.is_zero() {
                out.add_term(e.clone(), c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceptional_case_has_only_on_polytope_coordinates() {
        let s = SingularitySpec::new(&[3, 3, 3, 3], Some(3), None).unwrap();
        let f = build_generic_family(&s, Some(3));
        assert_eq!(f.len(), 4);
        assert!(f.roles.iter().all(|&r| r == Role::E));
        assert_eq!(f.restricted(&|r| matches!(r, Role::E | Role::Q)), s.polynomial().to_param());
    }

    #[test]
    fn gur1_family() {
        let s = SingularitySpec::new(&[6, 5], Some(6), None).unwrap();
        let f = build_generic_family(&s, Some(3));
        assert_eq!(f.len(), 9);
        assert_eq!(f.params_with(Role::G).len(), 1);
        assert_eq!(f.poly.len(), 2 + 9);
    }

    #[test]
    fn three_variable_family_count() {
        let s = SingularitySpec::new(&[4, 4, 4], Some(5), None).unwrap();
        let f = build_generic_family(&s, Some(3));
        // |T_5| − |T_3| minus the three pure powers and six x_i^3 x_j
        assert_eq!(f.len(), (56 - 20) - 3 - 6);
    }
}
