//! Truncated polynomial rings `Z[T_1,...,T_l] / <T_i^(n_i+1)>`.
//!
//! These are the Chow rings of products of projective spaces
//! `P^{n_1} x ... x P^{n_l}`. Multidegrees, divisor classes and genus
//! polynomials all live here as [`ChowClass`] values.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("ambient must have at least one factor")]
    EmptyAmbient,
    #[error("factor {index} has dimension 0; every factor needs n_i >= 1")]
    ZeroDimension { index: usize },
    #[error("ambient mismatch: {left:?} vs {right:?}")]
    AmbientMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("exponent vector has length {got}, ambient has {expected} factors")]
    LengthMismatch { expected: usize, got: usize },
}

/// A product of projective spaces, recorded by the dimensions `(n_1, ..., n_l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambient {
    dims: Vec<u32>,
}

impl Ambient {
    pub fn new(dims: Vec<u32>) -> Result<Self, ChowError> {
        if dims.is_empty() {
            return Err(ChowError::EmptyAmbient);
        }
        if let Some(index) = dims.iter().position(|&n| n == 0) {
            return Err(ChowError::ZeroDimension { index });
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Number of factors `l`.
    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `N = n_1 + ... + n_l`.
    pub fn total_dim(&self) -> u32 {
        self.dims.iter().sum()
    }

    /// Exponent of the top monomial `T_1^{n_1} ... T_l^{n_l}`.
    pub fn top(&self) -> ExponentVector {
        ExponentVector(self.dims.clone())
    }

    /// Whether `e` has the right length and lies in the box `0 <= e <= n`.
    pub fn contains(&self, e: &ExponentVector) -> bool {
        e.len() == self.dims.len() && e.0.iter().zip(&self.dims).all(|(a, n)| a <= n)
    }

    pub fn check_len(&self, e: &ExponentVector) -> Result<(), ChowError> {
        if e.len() != self.dims.len() {
            return Err(ChowError::LengthMismatch {
                expected: self.dims.len(),
                got: e.len(),
            });
        }
        Ok(())
    }

    /// All exponent vectors `e` with `|e| = degree` and `e <= n`, in
    /// descending lexicographic order.
    pub fn exponents_of_degree(&self, degree: u32) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.dims.len()];
        fill_compositions(&self.dims, 0, degree, &mut current, &mut out);
        out
    }
}

fn fill_compositions(
    bounds: &[u32],
    slot: usize,
    remaining: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<ExponentVector>,
) {
    if slot + 1 == bounds.len() {
        if remaining <= bounds[slot] {
            current[slot] = remaining;
            out.push(ExponentVector(current.clone()));
        }
        return;
    }
    let rest: u32 = bounds[slot + 1..].iter().sum();
    let lo = remaining.saturating_sub(rest);
    let hi = remaining.min(bounds[slot]);
    if lo > hi {
        return;
    }
    for a in (lo..=hi).rev() {
        current[slot] = a;
        fill_compositions(bounds, slot + 1, remaining - a, current, out);
    }
}

/// An exponent vector `(a_1, ..., a_l)` of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// The basis vector `e_i` (zero-based `i`).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// Entry sum `|a|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        Self(v)
    }

    /// `self - e_i`, or `None` when entry `i` is already zero.
    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[i] = v[i].checked_sub(1)?;
        Some(Self(v))
    }

    /// Componentwise `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// Componentwise order `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Renders the monomial `T1^a1*...*Tl^al`, skipping zero exponents.
    /// The empty monomial renders as `1`.
    pub fn monomial_string(&self) -> String {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    format!("T{}", i + 1)
                } else {
                    format!("T{}^{}", i + 1, a)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.monomial_string())
    }
}

/// An element of the Chow ring of an [`Ambient`].
///
/// Terms are kept sparse; monomials outside the truncation box and zero
/// coefficients are never stored, so structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ambient: Ambient,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl ChowClass {
    pub fn zero(ambient: &Ambient) -> Self {
        Self {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::monomial(ambient, ExponentVector::zeros(ambient.factors()), BigInt::one())
    }

    /// `coeff * T^exps`; truncated to zero if `exps` leaves the box.
    pub fn monomial(ambient: &Ambient, exps: ExponentVector, coeff: BigInt) -> Self {
        let mut c = Self::zero(ambient);
        c.add_term(exps, coeff);
        c
    }

    /// The generator `T_i` (zero-based `i`).
    pub fn variable(ambient: &Ambient, i: usize) -> Self {
        Self::monomial(ambient, ExponentVector::unit(ambient.factors(), i), BigInt::one())
    }

    /// The divisor class `sum_j coeffs[j] * T_j`.
    pub fn linear<T: Into<BigInt> + Copy>(ambient: &Ambient, coeffs: &[T]) -> Self {
        let l = ambient.factors();
        let mut c = Self::zero(ambient);
        for (j, &a) in coeffs.iter().enumerate().take(l) {
            c.add_term(ExponentVector::unit(l, j), a.into());
        }
        c
    }

    pub fn from_terms<I>(ambient: &Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut c = Self::zero(ambient);
        for (e, a) in terms {
            c.add_term(e, a);
        }
        c
    }

    fn add_term(&mut self, exps: ExponentVector, coeff: BigInt) {
        if coeff.is_zero() || !self.ambient.contains(&exps) {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lexicographic order of exponents
    /// (`T1^2` before `T1*T2` before `T2^2`).
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter().rev()
    }

    fn check_same(&self, other: &Self) -> Result<(), ChowError> {
        if self.ambient != other.ambient {
            return Err(ChowError::AmbientMismatch {
                left: self.ambient.dims.clone(),
                right: other.ambient.dims.clone(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ChowError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, a) in &other.terms {
            out.add_term(e.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ChowError> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.ambient);
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                // add_term discards anything beyond T_i^{n_i}
                out.add_term(e + f, a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(&self.ambient, self.terms.iter().map(|(e, a)| (e.clone(), a * k)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ambient);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of `T^alpha`. Exponents outside the truncation box, or of
    /// the wrong length, have coefficient zero.
    pub fn coefficient(&self, alpha: &ExponentVector) -> BigInt {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    /// Coefficient of the top monomial `T_1^{n_1} ... T_l^{n_l}`.
    pub fn integral(&self) -> BigInt {
        self.coefficient(&self.ambient.top())
    }

    /// Whether every stored monomial has total degree `d`. The zero class
    /// is homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == d)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|a| !a.is_negative())
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;

    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(rhs).expect("chow classes over different ambients")
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;

    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(&-rhs).expect("chow classes over different ambients")
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;

    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.try_mul(rhs).expect("chow classes over different ambients")
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;

    fn neg(self) -> ChowClass {
        ChowClass {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), -a)).collect(),
        }
    }
}

/// Canonical rendering: `6*T1^2 + 11*T1*T2 + 4*T2^2`, terms in descending
/// lexicographic order, coefficient always printed, `0` for the zero class.
impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, a)) in self.terms().enumerate() {
            let mag = a.abs();
            let body = if e.degree() == 0 {
                mag.to_string()
            } else {
                format!("{}*{}", mag, e.monomial_string())
            };
            match (k, a.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(d: &[u32]) -> Ambient {
        Ambient::new(d.to_vec()).unwrap()
    }

    fn lin(a: &Ambient, c: &[i64]) -> ChowClass {
        ChowClass::linear(a, c)
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = amb(&[2, 2]);
        let t1 = ChowClass::variable(&a, 0);
        let s = &t1 + &(-&t1);
        assert!(s.is_zero());
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn toric_fourfold_sum() {
        let a = amb(&[3, 3]);
        let left = ChowClass::from_terms(&a, [(ev(&[2, 0]), BigInt::from(2)), (ev(&[1, 1]), BigInt::from(4))]);
        let right = ChowClass::monomial(&a, ev(&[0, 2]), BigInt::from(2));
        let sum = left.try_add(&right).unwrap();
        assert_eq!(sum.to_string(), "2*T1^2 + 4*T1*T2 + 2*T2^2");
    }

    #[test]
    fn truncation_kills_squares_in_p1() {
        let a = amb(&[1, 1]);
        let s = lin(&a, &[1, 1]).pow(2);
        assert_eq!(s.to_string(), "2*T1*T2");
    }

    #[test]
    fn product_of_two_divisors() {
        let a = amb(&[2, 2]);
        let p = lin(&a, &[2, 1]).try_mul(&lin(&a, &[3, 4])).unwrap();
        assert_eq!(p.to_string(), "6*T1^2 + 11*T1*T2 + 4*T2^2");
        assert_eq!(p.coefficient(&ev(&[0, 2])), BigInt::from(4));
    }

    #[test]
    fn cubic_product_in_p3_squared() {
        let a = amb(&[3, 3]);
        let p = &lin(&a, &[1, 2]).pow(2) * &lin(&a, &[2, 1]);
        assert_eq!(p.to_string(), "2*T1^3 + 9*T1^2*T2 + 12*T1*T2^2 + 4*T2^3");
    }

    #[test]
    fn coefficient_out_of_range_is_zero() {
        let a = amb(&[2, 2]);
        let p = lin(&a, &[2, 1]).pow(2);
        assert_eq!(p.coefficient(&ev(&[3, 0])), BigInt::zero());
        assert_eq!(p.coefficient(&ev(&[1])), BigInt::zero());
    }

    #[test]
    fn integrals() {
        let a = amb(&[1, 2, 3]);
        assert_eq!(
            ChowClass::monomial(&a, a.top(), BigInt::one()).integral(),
            BigInt::one()
        );

        let a = amb(&[1, 1, 1]);
        let h = |c: &[i64]| lin(&a, c);
        let prod = &(&h(&[0, 1, 1]) * &h(&[1, 0, 1])) * &h(&[1, 1, 0]);
        assert_eq!(prod.integral(), BigInt::from(2));

        let a = amb(&[2, 2, 2]);
        let h = |c: &[i64]| lin(&a, c);
        let prod = &(&h(&[0, 1, 1]).pow(2) * &h(&[1, 0, 1]).pow(2)) * &h(&[1, 1, 0]).pow(2);
        assert_eq!(prod.integral(), BigInt::from(10));
    }

    #[test]
    fn mismatched_ambients_error() {
        let a = lin(&amb(&[2, 2]), &[1, 1]);
        let b = lin(&amb(&[2, 3]), &[1, 1]);
        assert!(matches!(a.try_mul(&b), Err(ChowError::AmbientMismatch { .. })));
        assert!(matches!(a.try_add(&b), Err(ChowError::AmbientMismatch { .. })));
    }

    #[test]
    fn invalid_ambients() {
        assert_eq!(Ambient::new(vec![]), Err(ChowError::EmptyAmbient));
        assert_eq!(Ambient::new(vec![2, 0]), Err(ChowError::ZeroDimension { index: 1 }));
    }

    #[test]
    fn exponents_in_box() {
        let a = amb(&[2, 1]);
        let es: Vec<String> = a
            .exponents_of_degree(2)
            .iter()
            .map(|e| format!("{:?}", e.as_slice()))
            .collect();
        assert_eq!(es, vec!["[2, 0]", "[1, 1]"]);
        assert!(a.exponents_of_degree(4).is_empty());
    }

    #[test]
    fn negative_rendering() {
        let a = amb(&[5, 5]);
        let c = ChowClass::from_terms(&a, [(ev(&[4, 0]), BigInt::one()), (ev(&[3, 1]), BigInt::from(-1))]);
        assert_eq!(c.to_string(), "1*T1^4 - 1*T1^3*T2");
    }
}
