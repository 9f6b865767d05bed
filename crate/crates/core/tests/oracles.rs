mod common;

use common::checks;

#[test]
fn membership_matches_jet_space_linear_algebra() {
    let members = checks::membership_agrees(200, 11).unwrap();
    // both outcomes are exercised
    assert!(members > 20 && members < 180, "{members} members");
}

#[test]
fn local_normal_form_commutes_with_substitution() {
    checks::substitution_commutes(50, 23).unwrap();
}
