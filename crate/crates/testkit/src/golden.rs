//! Published reference values, grouped into the numbered acceptance
//! criteria. Each check returns a description of the first mismatch.

use std::fmt::Display;

use hurwitz_core::apps::{
    binary_game_bound, graph_degree_matrix, graph_hurwitz_degree, graph_multidegree, nash_delta, nash_hurwitz_bound,
    GameSpec, GraphSpec,
};
use hurwitz_core::chowring::{Ambient, ExponentVector};
use hurwitz_core::ci::{
    chow_degrees, genus_polynomial_ci, hurwitz_degree_ci, multidegree_ci, DegreeMatrix, Flag, GenusMode,
};
use hurwitz_core::polytope::{minkowski_sum, volume_polynomial, weighted_minkowski_sum, Polytope};
use hurwitz_core::toric::{toric_genus_polynomial, toric_hurwitz_degree, toric_multidegree, ToricSpec};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::properties::{self, GenusReading};

pub type Criterion = fn() -> Result<(), String>;

/// Criteria 1 to 7, by number and title.
pub const CRITERIA: &[(u32, &str, Criterion)] = &[
    (1, "complete intersection golden values", criterion_1),
    (2, "complete intersection genus regression", criterion_2),
    (3, "worked degree example", criterion_3),
    (4, "toric golden values", criterion_4),
    (5, "Chow degrees", criterion_5),
    (6, "games", criterion_6),
    (7, "graphs", criterion_7),
];

fn expect<T: Display, U: Display>(what: &str, got: T, expected: U) -> Result<(), String> {
    let (got, expected) = (got.to_string(), expected.to_string());
    if got == expected {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {expected}"))
    }
}

fn list(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn ci(dims: &[u32], rows: &[&[u32]]) -> Result<(Ambient, DegreeMatrix), String> {
    let n = Ambient::new(dims.to_vec()).map_err(|e| e.to_string())?;
    let b = DegreeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).map_err(|e| e.to_string())?;
    Ok((n, b))
}

fn ev(e: &[u32]) -> ExponentVector {
    ExponentVector::new(e.to_vec())
}

/// The two tetrahedra in `R^4` whose sparse system has four solutions.
pub fn toric_fourfold() -> Result<ToricSpec, String> {
    ToricSpec::from_points(
        4,
        vec![
            vec![vec![1, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]],
            vec![vec![0, 0, 1, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 0]],
        ],
    )
    .map_err(|e| e.to_string())
}

pub fn criterion_1() -> Result<(), String> {
    let (n, b) = ci(&[2, 2], &[&[2, 1], &[3, 4]])?;
    let md = multidegree_ci(&n, &b).map_err(|e| e.to_string())?;
    expect("multidegree", &md, "6*T1^2 + 11*T1*T2 + 4*T2^2")?;
    let g = genus_polynomial_ci(&n, &b, GenusMode::Raw).map_err(|e| e.to_string())?;
    expect("genus polynomial", &g, "21*T1^2*T2 + 18*T1*T2^2")?;
    let r = hurwitz_degree_ci(&n, &b, &ev(&[1, 1]), GenusMode::Raw).map_err(|e| e.to_string())?;
    expect("Hurwitz degree at (1,1)", list(&r.hurwitz_degree), "(62,56)")
}

pub fn criterion_2() -> Result<(), String> {
    let (n, b) = ci(&[3, 3], &[&[1, 2], &[1, 2], &[2, 1]])?;
    let g = genus_polynomial_ci(&n, &b, GenusMode::Raw).map_err(|e| e.to_string())?;
    expect("genus polynomial", &g, "4*T1^3*T2 + 16*T1^2*T2^2 + 11*T1*T2^3")
}

pub fn criterion_3() -> Result<(), String> {
    let (n, b) = ci(&[2, 2], &[&[2, 1], &[1, 1]])?;
    let r = hurwitz_degree_ci(&n, &b, &ev(&[1, 1]), GenusMode::Raw).map_err(|e| e.to_string())?;
    expect("Hurwitz degree at (1,1)", list(&r.hurwitz_degree), "(6,4)")
}

pub fn criterion_4() -> Result<(), String> {
    let spec = toric_fourfold()?;
    let md = toric_multidegree(&spec).map_err(|e| e.to_string())?;
    expect("multidegree", &md, "2*T1^2 + 4*T1*T2 + 2*T2^2")?;
    let g = toric_genus_polynomial(&spec, GenusMode::Gated).map_err(|e| e.to_string())?;
    expect("gated genus polynomial", &g, "1*T1^2*T2 + 1*T1*T2^2")?;
    let r = toric_hurwitz_degree(&spec, &ev(&[1, 1])).map_err(|e| e.to_string())?;
    expect("Hurwitz bound at (1,1)", list(&r.hurwitz_degree), "(8,8)")?;
    if !r.has_flag(Flag::DegenerateBoundOnly) {
        return Err("Hurwitz bound at (1,1) lacks the bound-only flag".into());
    }
    let p: &[Polytope] = spec.polytopes();
    let s = weighted_minkowski_sum(p, &[2, 1]).map_err(|e| e.to_string())?;
    expect(
        "interior points of 2P1+P2",
        s.interior_lattice_points().map_err(|e| e.to_string())?,
        1,
    )?;
    let s = minkowski_sum(&p[0], &p[1]).map_err(|e| e.to_string())?;
    expect(
        "interior points of P1+P2",
        s.interior_lattice_points().map_err(|e| e.to_string())?,
        0,
    )?;
    let v = volume_polynomial(p).map_err(|e| e.to_string())?;
    let third = BigRational::new(1.into(), 3.into());
    let one = BigRational::from_integer(1.into());
    for (gamma, want) in [([3, 1], &third), ([2, 2], &one), ([1, 3], &third)] {
        expect(
            &format!("volume coefficient at {gamma:?}"),
            v.coefficient(&ev(&gamma)),
            want,
        )?;
    }
    Ok(())
}

pub fn criterion_5() -> Result<(), String> {
    let md = toric_multidegree(&toric_fourfold()?).map_err(|e| e.to_string())?;
    let d = chow_degrees(&md, &ev(&[0, 1])).map_err(|e| e.to_string())?;
    expect("Chow degrees at (0,1)", list(&d), "(4,2)")?;
    let d = chow_degrees(&md, &ev(&[1, 0])).map_err(|e| e.to_string())?;
    expect("Chow degrees at (1,0)", list(&d), "(2,4)")
}

pub fn criterion_6() -> Result<(), String> {
    let cases: [(&[u32], i64, &str); 3] = [
        (&[2, 2, 2], 2, "(2,2,2)"),
        (&[2, 2, 2, 2], 9, "(20,20,20,20)"),
        (&[3, 3, 3], 10, "(24,24,24)"),
    ];
    for (format, delta, bound) in cases {
        let g = GameSpec::from_format(format).map_err(|e| e.to_string())?;
        expect(&format!("equilibria of {format:?}"), nash_delta(&g), delta)?;
        expect(
            &format!("Hurwitz bound of {format:?}"),
            list(&nash_hurwitz_bound(&g)),
            bound,
        )?;
    }
    let expected: [u64; 8] = [2, 20, 150, 1192, 10330, 98268, 1023470, 11614160];
    for (ell, want) in (3..=10).zip(expected) {
        let got = binary_game_bound(ell).map_err(|e| e.to_string())?;
        expect(&format!("binary bound for {ell} players"), got, want)?;
    }
    Ok(())
}

pub fn criterion_7() -> Result<(), String> {
    let edge = GraphSpec::new(2, &[(1, 2)]).map_err(|e| e.to_string())?;
    expect(
        "one-edge multidegree",
        graph_multidegree(&edge),
        "4*T1^2*T2 + 4*T1*T2^2",
    )?;
    let (n, b) = graph_degree_matrix(&edge);
    let g = genus_polynomial_ci(&n, &b, GenusMode::Raw).map_err(|e| e.to_string())?;
    expect(
        "one-edge genus polynomial",
        &g,
        "1*T1^4 - 1*T1^3*T2 + 1*T1^2*T2^2 - 1*T1*T2^3 + 1*T2^4",
    )?;
    let r = graph_hurwitz_degree(&edge, &ev(&[1, 2]), GenusMode::Raw).map_err(|e| e.to_string())?;
    expect("one-edge Hurwitz degree at (1,2)", list(&r.hurwitz_degree), "(8,4)")?;

    let path = GraphSpec::new(3, &[(1, 2), (2, 3)]).map_err(|e| e.to_string())?;
    let md = graph_multidegree(&path);
    for (alpha, want) in [([2, 2, 1], "(8,16,24)"), ([1, 3, 1], "(16,8,16)")] {
        expect(
            &format!("path coefficient at {alpha:?}"),
            md.coefficient(&ev(&alpha)),
            8,
        )?;
        let r = graph_hurwitz_degree(&path, &ev(&alpha), GenusMode::Raw).map_err(|e| e.to_string())?;
        expect(
            &format!("path Hurwitz degree at {alpha:?}"),
            list(&r.hurwitz_degree),
            want,
        )?;
    }

    let quadric = GraphSpec::new(1, &[]).map_err(|e| e.to_string())?;
    let r = graph_hurwitz_degree(&quadric, &ev(&[1]), GenusMode::Raw).map_err(|e| e.to_string())?;
    expect("quadric Hurwitz degree", list(&r.hurwitz_degree), "(2)")
}

/// Every randomized property with `cases` inputs each, plus the check that
/// the two rejected genus readings are caught.
pub fn criterion_8(cases: u32) -> Result<(), String> {
    for (name, check) in properties::SUITE {
        check(cases).map_err(|e| format!("{name}: {e}"))?;
    }
    for reading in [GenusReading::OverBeta, GenusReading::Unweighted] {
        if properties::space_curve_check(reading, cases).is_ok() {
            return Err(format!("{reading:?} reading was not refuted"));
        }
    }
    Ok(())
}
