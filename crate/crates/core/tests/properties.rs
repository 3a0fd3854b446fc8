use hurwitz_testkit::properties::{self, GenusReading};

const CASES: u32 = 256;

#[test]
fn chow_ring_laws() {
    properties::ring_laws(CASES).unwrap();
}

#[test]
fn volume_polynomial_two_paths() {
    properties::volume_polynomial_two_paths(CASES).unwrap();
}

#[test]
fn polytope_laws() {
    properties::polytope_laws(CASES).unwrap();
}

#[test]
fn simplex_ehrhart() {
    properties::simplex_ehrhart(CASES).unwrap();
}

#[test]
fn degree_formula_matches_genus_bound() {
    properties::degree_formula_two_paths(CASES).unwrap();
}

#[test]
fn graph_two_paths() {
    properties::graph_two_paths(CASES).unwrap();
}

#[test]
fn game_bound_two_paths() {
    properties::game_bound_two_paths(CASES).unwrap();
}

#[test]
fn equilibrium_three_paths() {
    properties::equilibrium_three_paths(CASES).unwrap();
}

#[test]
fn toric_genus_matches_adjunction() {
    properties::toric_genus_vs_adjunction(CASES).unwrap();
}

#[test]
fn toric_multidegree_laws() {
    properties::toric_multidegree_laws(CASES).unwrap();
}

#[test]
fn grouped_genus_sum_matches_space_curves() {
    properties::khovanskii_classical(CASES).unwrap();
}

#[test]
fn other_genus_readings_fail_on_space_curves() {
    let over_beta = properties::space_curve_check(GenusReading::OverBeta, CASES);
    assert!(over_beta.is_err());
    let unweighted = properties::space_curve_check(GenusReading::Unweighted, CASES);
    assert!(unweighted.is_err());
}
