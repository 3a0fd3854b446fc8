//! Invariants of generic complete intersections given by a degree matrix.
//!
//! Row `i` of the matrix `B` lists the multidegree of the `i`-th defining
//! equation, so its divisor class is `D_i = sum_j b_ij T_j`. The multidegree
//! is `D_1 ... D_c`, genera come from the adjunction formula, and Hurwitz
//! degrees from the closed formula in the coefficients of the multidegree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chowring::{Ambient, ChowClass, ChowError, ExponentVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CiError {
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("degree matrix has no rows")]
    EmptyMatrix,
    #[error("degree matrix row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("degree matrix row {0} is zero")]
    ZeroRow(usize),
    #[error("degree matrix has {got} columns but the ambient has {expected} factors")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("exponent {exponent:?} has degree {got}, expected {expected}")]
    DegreeMismatch {
        exponent: Vec<u32>,
        expected: u32,
        got: u32,
    },
    #[error("exponent {exponent:?} leaves the box bounded by {dims:?}")]
    OutOfBox { exponent: Vec<u32>, dims: Vec<u32> },
    #[error("codimension {codim} leaves no room for curve sections in dimension {total}")]
    NoCurveSections { codim: u32, total: u32 },
    #[error("adjunction integral {0} is odd")]
    OddAdjunction(BigInt),
    #[error("Hurwitz degree {formula} disagrees with genus bound {bound} in direction {direction}")]
    Inconsistent {
        direction: usize,
        formula: BigInt,
        bound: BigInt,
    },
}

/// `c x l` matrix of nonnegative degrees, one row per defining equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMatrix {
    rows: Vec<Vec<u32>>,
}

impl DegreeMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, CiError> {
        let width = rows.first().ok_or(CiError::EmptyMatrix)?.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(CiError::RaggedRow {
                    row: i,
                    expected: width,
                    got: r.len(),
                });
            }
            if r.iter().all(|&b| b == 0) {
                return Err(CiError::ZeroRow(i));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of equations `c`.
    pub fn codim(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    /// `sum_p b_pj` for each column `j`.
    pub fn column_sums(&self) -> Vec<u32> {
        (0..self.columns())
            .map(|j| self.rows.iter().map(|r| r[j]).sum())
            .collect()
    }

    fn check(&self, n: &Ambient) -> Result<(), CiError> {
        if self.columns() != n.factors() {
            return Err(CiError::ShapeMismatch {
                expected: n.factors(),
                got: self.columns(),
            });
        }
        Ok(())
    }
}

/// Whether a genus is the raw adjunction value or is zeroed on
/// directions that do not cut out a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusMode {
    Raw,
    Gated,
}

impl fmt::Display for GenusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenusMode::Raw => "raw",
            GenusMode::Gated => "gated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// The reported degree is only the upper bound from the genus formula.
    DegenerateBoundOnly,
    /// `delta_alpha < 2`; the degree formula is evaluated formally.
    DeltaBelowTwo,
    /// Direction `i` (zero-based) does not give a curve section.
    NonCurveDirection(usize),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::DegenerateBoundOnly => f.write_str("degenerate_bound_only"),
            Flag::DeltaBelowTwo => f.write_str("delta_below_two"),
            Flag::NonCurveDirection(i) => write!(f, "non_curve_direction({})", i + 1),
        }
    }
}

/// Per-`alpha` result: `delta_alpha`, the genera `g_{alpha+e_i}`, and the
/// Hurwitz degree vector `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub alpha: ExponentVector,
    pub delta: BigInt,
    pub genus_vector: Vec<BigInt>,
    pub hurwitz_degree: Vec<BigInt>,
    pub flags: Vec<Flag>,
    pub note: Option<String>,
}

impl DegreeReport {
    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub(crate) fn push_flag(&mut self, flag: Flag) {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
            self.flags.sort();
        }
    }
}

pub(crate) fn check_exponent(n: &Ambient, e: &ExponentVector, degree: u32) -> Result<(), CiError> {
    n.check_len(e)?;
    if e.degree() != degree {
        return Err(CiError::DegreeMismatch {
            exponent: e.as_slice().to_vec(),
            expected: degree,
            got: e.degree(),
        });
    }
    if !n.contains(e) {
        return Err(CiError::OutOfBox {
            exponent: e.as_slice().to_vec(),
            dims: n.dims().to_vec(),
        });
    }
    Ok(())
}

/// `[X] = D_1 D_2 ... D_c`.
pub fn multidegree_ci(n: &Ambient, b: &DegreeMatrix) -> Result<ChowClass, CiError> {
    b.check(n)?;
    Ok(b.rows
        .iter()
        .fold(ChowClass::one(n), |acc, row| &acc * &ChowClass::linear(n, row)))
}

/// Class of the curve `X ∩ (L_1 x ... x L_l)` with `dim L_j = beta_j`,
/// namely `[X] * T^{n - beta}`.
fn curve_class(n: &Ambient, md: &ChowClass, beta: &ExponentVector) -> ChowClass {
    let cut = ExponentVector::new(n.dims().iter().zip(beta.as_slice()).map(|(a, b)| a - b).collect());
    md * &ChowClass::monomial(n, cut, BigInt::one())
}

/// `2g - 2` by adjunction for the section in direction `beta`. Requires
/// `beta` validated against `n` and `B`.
fn adjunction_integral(
    n: &Ambient,
    b: &DegreeMatrix,
    md: &ChowClass,
    beta: &ExponentVector,
) -> Result<BigInt, CiError> {
    let curve = curve_class(n, md, beta);
    // sum D_i + sum_j (n_j - beta_j) T_j + K, with K = -sum_j (n_j + 1) T_j
    let coeffs: Vec<i64> = b
        .column_sums()
        .iter()
        .zip(beta.as_slice())
        .map(|(&s, &bj)| s as i64 - bj as i64 - 1)
        .collect();
    let val = (&curve * &ChowClass::linear(n, &coeffs)).integral();
    if val.is_odd() {
        return Err(CiError::OddAdjunction(val));
    }
    Ok(val)
}

/// Whether `beta` cuts `X` in a curve, i.e. `[X] * T^{n-beta}` is nonzero.
pub fn is_curve_section(n: &Ambient, b: &DegreeMatrix, beta: &ExponentVector) -> Result<bool, CiError> {
    check_exponent(n, beta, b.codim() + 1)?;
    let md = multidegree_ci(n, b)?;
    Ok(curve_is_nonzero(n, &md, beta))
}

fn curve_is_nonzero(n: &Ambient, md: &ChowClass, beta: &ExponentVector) -> bool {
    let curve = curve_class(n, md, beta);
    curve.terms().map(|(_, c)| c.clone()).sum::<BigInt>().is_positive()
}

/// Raw adjunction genus `g_beta = 1 + (2g-2)/2`, no gating applied.
pub fn genus_ci(n: &Ambient, b: &DegreeMatrix, beta: &ExponentVector) -> Result<BigInt, CiError> {
    genus_ci_with_mode(n, b, beta, GenusMode::Raw)
}

pub fn genus_ci_with_mode(
    n: &Ambient,
    b: &DegreeMatrix,
    beta: &ExponentVector,
    mode: GenusMode,
) -> Result<BigInt, CiError> {
    b.check(n)?;
    check_exponent(n, beta, b.codim() + 1)?;
    let md = multidegree_ci(n, b)?;
    genus_from_multidegree(n, b, &md, beta, mode)
}

fn genus_from_multidegree(
    n: &Ambient,
    b: &DegreeMatrix,
    md: &ChowClass,
    beta: &ExponentVector,
    mode: GenusMode,
) -> Result<BigInt, CiError> {
    if mode == GenusMode::Gated && !curve_is_nonzero(n, md, beta) {
        return Ok(BigInt::zero());
    }
    let two_g_minus_two = adjunction_integral(n, b, md, beta)?;
    Ok(BigInt::one() + two_g_minus_two / 2)
}

/// `g(X) = sum_{|beta| = c+1} g_beta T^beta`.
pub fn genus_polynomial_ci(n: &Ambient, b: &DegreeMatrix, mode: GenusMode) -> Result<ChowClass, CiError> {
    b.check(n)?;
    let c = b.codim();
    if c + 1 > n.total_dim() {
        return Err(CiError::NoCurveSections {
            codim: c,
            total: n.total_dim(),
        });
    }
    let md = multidegree_ci(n, b)?;
    let mut terms = Vec::new();
    for beta in n.exponents_of_degree(c + 1) {
        let g = genus_from_multidegree(n, b, &md, &beta, mode)?;
        terms.push((beta, g));
    }
    Ok(ChowClass::from_terms(n, terms))
}

/// `u_i = 2 (g_{alpha+e_i} + delta_alpha - 1)` for each `i`.
pub fn hurwitz_bound(delta: &BigInt, genus_vector: &[BigInt]) -> Vec<BigInt> {
    genus_vector
        .iter()
        .map(|g| BigInt::from(2) * (g + delta - BigInt::one()))
        .collect()
}

/// Closed-form Hurwitz degree of the generic complete intersection:
///
/// `u_i = 2 delta_alpha + sum_{j : alpha_j + [i=j] > 0}
///        delta_{alpha+e_i-e_j} (-alpha_j - 1 - [i=j] + sum_p b_pj)`.
///
/// The genus vector is reported alongside and checked against the
/// genus bound on every direction that lies in the box.
pub fn hurwitz_degree_ci(
    n: &Ambient,
    b: &DegreeMatrix,
    alpha: &ExponentVector,
    mode: GenusMode,
) -> Result<DegreeReport, CiError> {
    b.check(n)?;
    check_exponent(n, alpha, b.codim())?;
    let md = multidegree_ci(n, b)?;
    let l = n.factors();
    let col = b.column_sums();
    let delta = md.coefficient(alpha);
    let a = alpha.as_slice();

    let mut report = DegreeReport {
        alpha: alpha.clone(),
        delta: delta.clone(),
        genus_vector: Vec::with_capacity(l),
        hurwitz_degree: Vec::with_capacity(l),
        flags: Vec::new(),
        note: None,
    };
    if delta < BigInt::from(2) {
        report.push_flag(Flag::DeltaBelowTwo);
    }

    for i in 0..l {
        let mut u = BigInt::from(2) * &delta;
        for j in 0..l {
            let kron = u32::from(i == j);
            if a[j] + kron == 0 {
                continue;
            }
            let shifted = if i == j {
                alpha.clone()
            } else {
                alpha.plus_unit(i).minus_unit(j).expect("alpha_j > 0")
            };
            let weight = col[j] as i64 - a[j] as i64 - 1 - kron as i64;
            u += md.coefficient(&shifted) * BigInt::from(weight);
        }

        let beta = alpha.plus_unit(i);
        let genus = if n.contains(&beta) {
            let raw = genus_from_multidegree(n, b, &md, &beta, GenusMode::Raw)?;
            let bound = BigInt::from(2) * (&raw + &delta - BigInt::one());
            if bound != u {
                return Err(CiError::Inconsistent {
                    direction: i,
                    formula: u,
                    bound,
                });
            }
            if curve_is_nonzero(n, &md, &beta) {
                raw
            } else {
                report.push_flag(Flag::NonCurveDirection(i));
                match mode {
                    GenusMode::Raw => raw,
                    GenusMode::Gated => BigInt::zero(),
                }
            }
        } else {
            report.push_flag(Flag::NonCurveDirection(i));
            BigInt::zero()
        };
        report.genus_vector.push(genus);
        report.hurwitz_degree.push(u);
    }
    Ok(report)
}

/// Degrees `(delta_{alpha+e_i})_i` of the Chow form `Ch^alpha` in the
/// Plücker coordinates of each factor. `alpha` must have degree one less
/// than the codimension of the class.
pub fn chow_degrees(md: &ChowClass, alpha: &ExponentVector) -> Result<Vec<BigInt>, CiError> {
    let n = md.ambient();
    n.check_len(alpha)?;
    if let Some((e, _)) = md.terms().next() {
        let c = e.degree();
        if alpha.degree() + 1 != c {
            return Err(CiError::DegreeMismatch {
                exponent: alpha.as_slice().to_vec(),
                expected: c.saturating_sub(1),
                got: alpha.degree(),
            });
        }
    }
    Ok((0..n.factors()).map(|i| md.coefficient(&alpha.plus_unit(i))).collect())
}
