use hurwitz_core::apps::{game_to_toric, nash_genus_by_adjunction, GameSpec};
use hurwitz_core::chowring::ExponentVector;
use hurwitz_core::ci::GenusMode;
use hurwitz_core::polytope::Polytope;
use hurwitz_core::toric::{is_curve_section_toric, khovanskii_genus, toric_genus, ToricSpec};
use hurwitz_testkit::oracles;
use num_bigint::BigInt;

#[test]
fn toric_route_recovers_space_curve_genus() {
    for a in 2..=5u32 {
        for b in a..=5u32 {
            let supports = vec![
                oracles::scaled_simplex_points(i64::from(a), 3),
                oracles::scaled_simplex_points(i64::from(b), 3),
            ];
            let spec = ToricSpec::from_points(3, supports).unwrap();
            let beta: Vec<u32> = spec.ambient().dims().iter().map(|n| n - 1).collect();
            let g = toric_genus(&spec, &ExponentVector::new(beta), GenusMode::Raw).unwrap();
            assert_eq!(g, oracles::space_curve_genus(a, b), "degrees {a}, {b}");
        }
    }
}

#[test]
fn quartic_surfaces_need_binomial_weights() {
    let quartic = Polytope::from_lattice_points(&oracles::scaled_simplex_vertices(4, 3)).unwrap();
    let twice = vec![quartic.clone(), quartic.clone()];
    assert_eq!(khovanskii_genus(&twice, &[1, 1]).unwrap(), BigInt::from(33));
    let once = vec![quartic];
    assert_eq!(khovanskii_genus(&once, &[2]).unwrap(), BigInt::from(33));
    assert_eq!(oracles::ungrouped_genus_sum(&once, &[2]).unwrap(), BigInt::from(34));
}

#[test]
fn degenerate_game_direction_splits_the_two_routes() {
    let game = GameSpec::new(vec![1, 1, 2]).unwrap();
    let spec = game_to_toric(&game).unwrap();
    let beta = game.alpha_star().unwrap().plus_unit(0);
    assert!(is_curve_section_toric(&spec, &beta).unwrap());
    let m: Vec<u32> = spec
        .ambient()
        .dims()
        .iter()
        .zip(beta.as_slice())
        .map(|(n, b)| n - b)
        .collect();
    assert!(!oracles::is_nondegenerate(spec.polytopes(), &m).unwrap());
    assert_eq!(toric_genus(&spec, &beta, GenusMode::Gated).unwrap(), BigInt::from(0));
    assert_eq!(nash_genus_by_adjunction(&game).unwrap()[0], BigInt::from(-1));
}
