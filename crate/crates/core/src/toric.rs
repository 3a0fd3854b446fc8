//! Projective toric varieties given by support sets `A_1, ..., A_l` in `Z^d`.
//!
//! The multidegree comes from mixed volumes of the Newton polytopes
//! `P_i = conv(A_i)` and the sectional genera from interior lattice point
//! counts of their Minkowski sums.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::chowring::{Ambient, ChowClass, ChowError, ExponentVector};
use crate::ci::{check_exponent, hurwitz_bound, CiError, DegreeReport, Flag, GenusMode};
use crate::linalg;
use crate::polytope::{
    binomial, exponents_summing_to, sub_vectors, weighted_minkowski_sum, Polytope, PolytopeError, SupportSet,
    VolumeTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Ci(#[from] CiError),
    #[error("toric spec needs at least one support set")]
    NoSupports,
    #[error("torus dimension must be positive")]
    ZeroDimension,
    #[error("support set {index} lives in dimension {got}, expected {expected}")]
    SupportDimension { index: usize, expected: usize, got: usize },
    #[error("support set {index} has fewer than two points")]
    TooFewPoints { index: usize },
    #[error("supports give total projective dimension {total}, less than torus dimension {dim}")]
    NegativeCodimension { total: u32, dim: usize },
    #[error("difference vectors of the supports do not generate Z^{0}")]
    NotSaturated(usize),
    #[error("mixed volume {0} is not an integer")]
    NonIntegralMixedVolume(String),
}

impl ToricError {
    /// Whether the error rejects a well-formed but unusable spec, as opposed
    /// to malformed input.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            ToricError::NotSaturated(_) | ToricError::NegativeCodimension { .. }
        )
    }
}

/// Validated toric data with derived `n_i = |A_i| - 1` and codimension
/// `c = sum n_i - d`.
pub struct ToricSpec {
    dim: usize,
    supports: Vec<SupportSet>,
    polytopes: Vec<Polytope>,
    ambient: Ambient,
    codim: u32,
    multidegree: OnceLock<ChowClass>,
    interior: Mutex<HashMap<Vec<u32>, u64>>,
}

impl ToricSpec {
    pub fn new(dim: usize, supports: Vec<SupportSet>) -> Result<Self, ToricError> {
        if dim == 0 {
            return Err(ToricError::ZeroDimension);
        }
        if supports.is_empty() {
            return Err(ToricError::NoSupports);
        }
        let mut diffs = Vec::new();
        for (index, a) in supports.iter().enumerate() {
            if a.dim() != dim {
                return Err(ToricError::SupportDimension {
                    index,
                    expected: dim,
                    got: a.dim(),
                });
            }
            if a.len() < 2 {
                return Err(ToricError::TooFewPoints { index });
            }
            let base = &a.points()[0];
            diffs.extend(
                a.points()[1..]
                    .iter()
                    .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect::<Vec<i64>>()),
            );
        }
        let dims: Vec<u32> = supports.iter().map(|a| a.len() as u32 - 1).collect();
        let total: u32 = dims.iter().sum();
        if (total as usize) < dim {
            return Err(ToricError::NegativeCodimension { total, dim });
        }
        if !linalg::generates_full_lattice(&diffs, dim) {
            return Err(ToricError::NotSaturated(dim));
        }
        let polytopes = supports.iter().map(SupportSet::hull).collect();
        Ok(Self {
            dim,
            supports,
            polytopes,
            ambient: Ambient::new(dims)?,
            codim: total - dim as u32,
            multidegree: OnceLock::new(),
            interior: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_points(dim: usize, supports: Vec<Vec<Vec<i64>>>) -> Result<Self, ToricError> {
        let sets = supports
            .into_iter()
            .map(SupportSet::new)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, sets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn supports(&self) -> &[SupportSet] {
        &self.supports
    }

    pub fn polytopes(&self) -> &[Polytope] {
        &self.polytopes
    }

    /// The ambient `P^{n_1} x ... x P^{n_l}`.
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn codim(&self) -> u32 {
        self.codim
    }

    fn interior_points(&self, gamma: &[u32]) -> Result<u64, PolytopeError> {
        if let Some(&v) = self.interior.lock().expect("cache poisoned").get(gamma) {
            return Ok(v);
        }
        let v = weighted_minkowski_sum(&self.polytopes, gamma)?.interior_lattice_points()?;
        self.interior.lock().expect("cache poisoned").insert(gamma.to_vec(), v);
        Ok(v)
    }
}

impl Clone for ToricSpec {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            supports: self.supports.clone(),
            polytopes: self.polytopes.clone(),
            ambient: self.ambient.clone(),
            codim: self.codim,
            multidegree: self.multidegree.clone(),
            interior: Mutex::new(self.interior.lock().expect("cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for ToricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ToricSpec")
            .field("dim", &self.dim)
            .field("supports", &self.supports)
            .field("ambient", &self.ambient)
            .field("codim", &self.codim)
            .finish()
    }
}

/// `[X] = sum_alpha MV(P_1^{n_1-alpha_1}, ..., P_l^{n_l-alpha_l}) T^alpha`.
pub fn toric_multidegree(spec: &ToricSpec) -> Result<ChowClass, ToricError> {
    if let Some(md) = spec.multidegree.get() {
        return Ok(md.clone());
    }
    let n = spec.ambient.dims();
    let mut table = VolumeTable::new(&spec.polytopes);
    let mut terms = Vec::new();
    for gamma in exponents_summing_to(n.len(), spec.dim as u32) {
        if gamma.as_slice().iter().zip(n).any(|(g, m)| g > m) {
            continue;
        }
        let mv = table.mixed_volume(gamma.as_slice())?;
        if !mv.is_integer() {
            return Err(ToricError::NonIntegralMixedVolume(mv.to_string()));
        }
        let alpha = ExponentVector::new(n.iter().zip(gamma.as_slice()).map(|(m, g)| m - g).collect());
        terms.push((alpha, mv.to_integer()));
    }
    let md = ChowClass::from_terms(&spec.ambient, terms);
    Ok(spec.multidegree.get_or_init(|| md).clone())
}

/// Genus of the generic curve cut out in the torus by `m_i` Laurent
/// polynomials with Newton polytope `P_i`:
///
/// `g = sum_{gamma <= m} (-1)^{|m - gamma|} prod_i C(m_i, gamma_i) l*(P_gamma)`
///
/// where `l*` counts interior lattice points and `P_gamma = sum gamma_i P_i`.
pub fn khovanskii_genus(polytopes: &[Polytope], m: &[u32]) -> Result<BigInt, PolytopeError> {
    khovanskii_sum(m, |gamma| {
        weighted_minkowski_sum(polytopes, gamma)?.interior_lattice_points()
    })
}

fn khovanskii_sum<F>(m: &[u32], mut interior: F) -> Result<BigInt, PolytopeError>
where
    F: FnMut(&[u32]) -> Result<u64, PolytopeError>,
{
    let total: u32 = m.iter().sum();
    let mut g = BigInt::zero();
    for gamma in sub_vectors(m) {
        if gamma.iter().all(|&x| x == 0) {
            continue;
        }
        let count = interior(&gamma)?;
        if count == 0 {
            continue;
        }
        let mult: BigInt = m.iter().zip(&gamma).map(|(&mi, &gi)| binomial(mi, gi)).product();
        let term = mult * BigInt::from(count);
        if (total - gamma.iter().sum::<u32>()).is_multiple_of(2) {
            g += term;
        } else {
            g -= term;
        }
    }
    Ok(g)
}

/// Whether `beta` is a curve direction: some `beta_j >= 1` has
/// `delta_{beta - e_j} > 0`.
pub fn is_curve_section_toric(spec: &ToricSpec, beta: &ExponentVector) -> Result<bool, ToricError> {
    check_exponent(&spec.ambient, beta, spec.codim + 1)?;
    let md = toric_multidegree(spec)?;
    Ok((0..beta.len()).any(|j| beta.minus_unit(j).is_some_and(|a| md.coefficient(&a).is_positive())))
}

/// Khovanskii genus of the section in direction `beta`, with
/// `m = n - beta`.
pub fn toric_genus(spec: &ToricSpec, beta: &ExponentVector, mode: GenusMode) -> Result<BigInt, ToricError> {
    check_exponent(&spec.ambient, beta, spec.codim + 1)?;
    if mode == GenusMode::Gated && !is_curve_section_toric(spec, beta)? {
        return Ok(BigInt::zero());
    }
    let m: Vec<u32> = spec
        .ambient
        .dims()
        .iter()
        .zip(beta.as_slice())
        .map(|(n, b)| n - b)
        .collect();
    Ok(khovanskii_sum(&m, |gamma| spec.interior_points(gamma))?)
}

pub fn toric_genus_polynomial(spec: &ToricSpec, mode: GenusMode) -> Result<ChowClass, ToricError> {
    let c = spec.codim;
    if c + 1 > spec.ambient.total_dim() {
        return Err(CiError::NoCurveSections {
            codim: c,
            total: spec.ambient.total_dim(),
        }
        .into());
    }
    let mut terms = Vec::new();
    for beta in spec.ambient.exponents_of_degree(c + 1) {
        let g = toric_genus(spec, &beta, mode)?;
        terms.push((beta, g));
    }
    Ok(ChowClass::from_terms(&spec.ambient, terms))
}

/// Degree bound `2 (g_{alpha+e_i} + delta_alpha - 1)` with gated genera.
/// Always flagged as bound-only.
pub fn toric_hurwitz_degree(spec: &ToricSpec, alpha: &ExponentVector) -> Result<DegreeReport, ToricError> {
    check_exponent(&spec.ambient, alpha, spec.codim)?;
    let md = toric_multidegree(spec)?;
    let delta = md.coefficient(alpha);
    let mut report = DegreeReport {
        alpha: alpha.clone(),
        delta: delta.clone(),
        genus_vector: Vec::new(),
        hurwitz_degree: Vec::new(),
        flags: vec![Flag::DegenerateBoundOnly],
        note: None,
    };
    if delta < BigInt::from(2) {
        report.push_flag(Flag::DeltaBelowTwo);
    }
    for i in 0..alpha.len() {
        let beta = alpha.plus_unit(i);
        let g = if spec.ambient.contains(&beta) && is_curve_section_toric(spec, &beta)? {
            toric_genus(spec, &beta, GenusMode::Gated)?
        } else {
            report.push_flag(Flag::NonCurveDirection(i));
            BigInt::zero()
        };
        report.genus_vector.push(g);
    }
    report.hurwitz_degree = hurwitz_bound(&delta, &report.genus_vector);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn fourfold() -> ToricSpec {
        ToricSpec::from_points(
            4,
            vec![
                vec![vec![1, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]],
                vec![vec![0, 0, 1, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 0]],
            ],
        )
        .unwrap()
    }

    fn square() -> ToricSpec {
        ToricSpec::from_points(2, vec![vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]]).unwrap()
    }

    fn cube_facets() -> ToricSpec {
        let facet = |i: usize| -> Vec<Vec<i64>> {
            (0..8)
                .map(|b| (0..3).map(|j| (b >> j) & 1).collect::<Vec<i64>>())
                .filter(|p| p[i] == 0)
                .collect()
        };
        ToricSpec::from_points(3, (0..3).map(facet).collect()).unwrap()
    }

    #[test]
    fn fourfold_invariants() {
        let s = fourfold();
        assert_eq!(s.codim(), 2);
        assert_eq!(toric_multidegree(&s).unwrap().to_string(), "2*T1^2 + 4*T1*T2 + 2*T2^2");
        assert_eq!(toric_genus(&s, &ev(&[2, 1]), GenusMode::Gated).unwrap(), BigInt::one());
        assert_eq!(toric_genus(&s, &ev(&[1, 2]), GenusMode::Gated).unwrap(), BigInt::one());
        assert_eq!(
            toric_genus_polynomial(&s, GenusMode::Gated).unwrap().to_string(),
            "1*T1^2*T2 + 1*T1*T2^2"
        );
        let r = toric_hurwitz_degree(&s, &ev(&[1, 1])).unwrap();
        assert_eq!(r.hurwitz_degree, vec![BigInt::from(8), BigInt::from(8)]);
        assert!(r.has_flag(Flag::DegenerateBoundOnly));
    }

    #[test]
    fn segre_quadric() {
        let s = square();
        assert_eq!(toric_multidegree(&s).unwrap().to_string(), "2*T1");
        assert_eq!(toric_genus(&s, &ev(&[2]), GenusMode::Raw).unwrap(), BigInt::zero());
        let r = toric_hurwitz_degree(&s, &ev(&[1])).unwrap();
        assert_eq!(r.hurwitz_degree, vec![BigInt::from(2)]);
    }

    #[test]
    fn cube_facet_game() {
        let s = cube_facets();
        let md = toric_multidegree(&s).unwrap();
        assert_eq!(md.len(), 7);
        assert!(md.terms().all(|(_, c)| c == &BigInt::from(2)));
        assert_eq!(md.coefficient(&ev(&[2, 2, 2])), BigInt::from(2));
        assert_eq!(
            toric_genus(&s, &ev(&[3, 2, 2]), GenusMode::Gated).unwrap(),
            BigInt::zero()
        );
        let r = toric_hurwitz_degree(&s, &ev(&[2, 2, 2])).unwrap();
        assert_eq!(r.hurwitz_degree, vec![BigInt::from(2); 3]);
    }

    #[test]
    fn rejects_sublattice() {
        let err = ToricSpec::from_points(2, vec![vec![vec![0, 0], vec![2, 0], vec![0, 1]]]).unwrap_err();
        assert_eq!(err, ToricError::NotSaturated(2));
        assert!(err.is_rejection());
        let err = ToricSpec::from_points(3, vec![vec![vec![0, 0, 0], vec![1, 0, 0]]]).unwrap_err();
        assert!(matches!(err, ToricError::NegativeCodimension { .. }));
        let err = ToricSpec::from_points(2, vec![vec![vec![0, 0]]]).unwrap_err();
        assert_eq!(err, ToricError::TooFewPoints { index: 0 });
        assert!(!err.is_rejection());
    }

    #[test]
    fn genus_argument_errors() {
        let s = fourfold();
        assert!(matches!(
            toric_genus(&s, &ev(&[1, 1]), GenusMode::Raw),
            Err(ToricError::Ci(CiError::DegreeMismatch { .. }))
        ));
        assert!(matches!(
            toric_hurwitz_degree(&s, &ev(&[2, 1])),
            Err(ToricError::Ci(CiError::DegreeMismatch { .. }))
        ));
    }

    #[test]
    fn plane_curve_genus() {
        // A degree-4 plane curve has genus 3.
        let quartic = Polytope::unit_simplex(2).scale(4);
        assert_eq!(khovanskii_genus(&[quartic], &[1]).unwrap(), BigInt::from(3));
    }
}
