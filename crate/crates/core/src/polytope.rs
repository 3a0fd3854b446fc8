//! Exact rational polytopes: convex hulls, Minkowski sums, volumes,
//! interior lattice points, mixed volumes and volume polynomials.
//!
//! Hulls are computed with the double description method on the
//! homogenized cone `{(a, b) : a.v <= b for every input point v}`, whose
//! extreme rays are the facet inequalities. Volumes come from a pulling
//! triangulation of the face lattice.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::chowring::ExponentVector;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("empty point set")]
    EmptyInput,
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("duplicate point {0:?} in support set")]
    DuplicatePoint(Vec<i64>),
    #[error("multiplicities sum to {got}, expected {expected}")]
    MultiplicitySum { expected: u32, got: u32 },
    #[error("lattice coordinates exceed the 64-bit enumeration range")]
    CoordinateOverflow,
}

pub type Point = Vec<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A finite set of distinct lattice points in `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl SupportSet {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self, PolytopeError> {
        let dim = points.first().ok_or(PolytopeError::EmptyInput)?.len();
        if dim == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        let mut seen = std::collections::HashSet::new();
        for p in &points {
            if p.len() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if !seen.insert(p.clone()) {
                return Err(PolytopeError::DuplicatePoint(p.clone()));
            }
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rational_points(&self) -> Vec<Point> {
        self.points
            .iter()
            .map(|p| p.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    pub fn hull(&self) -> Polytope {
        convex_hull(&self.rational_points()).expect("support sets are nonempty")
    }
}

/// The inequality `normal . x <= offset`, with `normal` primitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigRational,
}

impl Facet {
    fn slack(&self, x: &[BigRational]) -> BigRational {
        let lhs = self.normal.iter().zip(x).fold(BigRational::zero(), |acc, (a, v)| {
            acc + BigRational::from_integer(a.clone()) * v
        });
        &self.offset - lhs
    }
}

/// A polytope in `Q^d` carrying both its vertices and, when full
/// dimensional, its facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    affine_dim: i32,
}

impl Polytope {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            vertices: Vec::new(),
            facets: Vec::new(),
            affine_dim: -1,
        }
    }

    pub fn point(p: Point) -> Self {
        Self {
            dim: p.len(),
            vertices: vec![p],
            facets: Vec::new(),
            affine_dim: 0,
        }
    }

    pub fn from_lattice_points(points: &[Vec<i64>]) -> Result<Self, PolytopeError> {
        let pts: Vec<Point> = points.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect();
        convex_hull(&pts)
    }

    /// The unit simplex `conv{0, e_1, ..., e_d}`.
    pub fn unit_simplex(d: usize) -> Self {
        let mut pts = vec![vec![0i64; d]];
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            pts.push(e);
        }
        Self::from_lattice_points(&pts).expect("nonempty")
    }

    /// The cube `[0, 1]^d`.
    pub fn unit_cube(d: usize) -> Self {
        let pts: Vec<Vec<i64>> = (0..1u64 << d)
            .map(|mask| (0..d).map(|i| ((mask >> i) & 1) as i64).collect())
            .collect();
        Self::from_lattice_points(&pts).expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> i32 {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim as i32
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Facet inequalities; empty unless the polytope is full dimensional.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Whether `x` lies in the polytope. Only defined for full-dimensional
    /// polytopes and points.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        match self.affine_dim {
            -1 => false,
            0 => self.vertices[0].as_slice() == x,
            _ if self.is_full_dimensional() => self.facets.iter().all(|f| !f.slack(x).is_negative()),
            _ => {
                // Lower dimensional: x must be an affine combination inside
                // the hull; test by hulling with x added and comparing vertices.
                let mut pts = self.vertices.clone();
                pts.push(x.to_vec());
                let h = convex_hull(&pts).expect("nonempty");
                h.affine_dim == self.affine_dim && h.vertices == self.vertices
            }
        }
    }

    /// `k * P`.
    pub fn scale(&self, k: u32) -> Self {
        if self.affine_dim < 0 {
            return self.clone();
        }
        if k == 0 {
            return Self::point(vec![BigRational::zero(); self.dim]);
        }
        let kq = rat(k as i64);
        Self {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x * &kq).collect())
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: &f.offset * &kq,
                })
                .collect(),
            affine_dim: self.affine_dim,
        }
    }

    /// `P + t` for a translation vector `t`.
    pub fn translate(&self, t: &[BigRational]) -> Self {
        Self {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect())
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|f| {
                    let shift = f.normal.iter().zip(t).fold(BigRational::zero(), |acc, (a, y)| {
                        acc + BigRational::from_integer(a.clone()) * y
                    });
                    Facet {
                        normal: f.normal.clone(),
                        offset: &f.offset + shift,
                    }
                })
                .collect(),
            affine_dim: self.affine_dim,
        }
    }

    fn facet_vertex_sets(&self) -> Vec<FixedBitSet> {
        self.facets
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(self.vertices.len());
                for (i, v) in self.vertices.iter().enumerate() {
                    if f.slack(v).is_zero() {
                        s.insert(i);
                    }
                }
                s
            })
            .collect()
    }

    /// Exact Lebesgue volume; zero unless full dimensional.
    pub fn volume(&self) -> BigRational {
        if !self.is_full_dimensional() {
            return BigRational::zero();
        }
        let d = self.dim;
        let facet_sets = self.facet_vertex_sets();
        let mut all = FixedBitSet::with_capacity(self.vertices.len());
        all.insert_range(..);
        let mut simplices = Vec::new();
        pulling_triangulation(&all, d, &facet_sets, &mut Vec::new(), &mut simplices);

        let mut total = BigRational::zero();
        for s in &simplices {
            let apex = &self.vertices[s[0]];
            let m: Vec<Vec<BigRational>> = s[1..]
                .iter()
                .map(|&i| self.vertices[i].iter().zip(apex).map(|(a, b)| a - b).collect())
                .collect();
            total += linalg::determinant(m).abs();
        }
        total / BigRational::from_integer(factorial(d as u32))
    }

    /// Number of lattice points strictly inside the polytope in `R^d`;
    /// zero for lower-dimensional polytopes.
    pub fn interior_lattice_points(&self) -> Result<u64, PolytopeError> {
        self.count_lattice_points(true)
    }

    /// Number of lattice points in the closed polytope (full-dimensional only,
    /// zero otherwise).
    pub fn lattice_points(&self) -> Result<u64, PolytopeError> {
        self.count_lattice_points(false)
    }

    fn count_lattice_points(&self, strict: bool) -> Result<u64, PolytopeError> {
        if !self.is_full_dimensional() {
            return Ok(0);
        }
        let d = self.dim;
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for v in &self.vertices {
            for i in 0..d {
                let c = v[i]
                    .ceil()
                    .to_integer()
                    .to_i64()
                    .ok_or(PolytopeError::CoordinateOverflow)?;
                let f = v[i]
                    .floor()
                    .to_integer()
                    .to_i64()
                    .ok_or(PolytopeError::CoordinateOverflow)?;
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(f);
            }
        }
        // normal . z < p/q  <=>  q * (normal . z) < p
        let mut rows = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let normal: Option<Vec<i128>> = f.normal.iter().map(|a| a.to_i128()).collect();
            let p = f.offset.numer().to_i128();
            let q = f.offset.denom().to_i128();
            match (normal, p, q) {
                (Some(n), Some(p), Some(q)) => rows.push((n, p, q)),
                _ => return Err(PolytopeError::CoordinateOverflow),
            }
        }
        if (0..d).any(|i| lo[i] > hi[i]) {
            return Ok(0);
        }
        let mut z = lo.clone();
        let mut count = 0u64;
        'outer: loop {
            let inside = rows.iter().all(|(n, p, q)| {
                let dot: i128 = n.iter().zip(&z).map(|(a, &x)| a * x as i128).sum();
                if strict {
                    q * dot < *p
                } else {
                    q * dot <= *p
                }
            });
            if inside {
                count += 1;
            }
            for i in 0..d {
                if z[i] < hi[i] {
                    z[i] += 1;
                    continue 'outer;
                }
                z[i] = lo[i];
            }
            break;
        }
        Ok(count)
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| {
                let cs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", cs.join(","))
            })
            .collect();
        write!(f, "conv[{}]", verts.join(", "))
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Pulling triangulation: cone from the first vertex of `face` over the
/// triangulated facets of `face` that avoid it.
fn pulling_triangulation(
    face: &FixedBitSet,
    dim: usize,
    facet_sets: &[FixedBitSet],
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let apex = face.ones().next().expect("faces are nonempty");
    if dim == 0 {
        let mut s = prefix.clone();
        s.push(apex);
        out.push(s);
        return;
    }
    prefix.push(apex);
    for sub in subfaces(face, facet_sets) {
        if !sub.contains(apex) {
            pulling_triangulation(&sub, dim - 1, facet_sets, prefix, out);
        }
    }
    prefix.pop();
}

/// Facets of a face, as the inclusion-maximal proper nonempty intersections
/// of the face with facets of the polytope.
fn subfaces(face: &FixedBitSet, facet_sets: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let face_size = face.count_ones(..);
    let mut cands: Vec<FixedBitSet> = Vec::new();
    for g in facet_sets {
        let mut s = face.clone();
        s.intersect_with(g);
        let n = s.count_ones(..);
        if n == 0 || n == face_size {
            continue;
        }
        if !cands.contains(&s) {
            cands.push(s);
        }
    }
    cands
        .iter()
        .filter(|s| !cands.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect()
}

/// Convex hull of a finite rational point set.
pub fn convex_hull(points: &[Point]) -> Result<Polytope, PolytopeError> {
    let d = points.first().ok_or(PolytopeError::EmptyInput)?.len();
    if d == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(PolytopeError::DimensionMismatch {
            expected: d,
            got: p.len(),
        });
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();

    let base = &pts[0];
    let diffs: Vec<Vec<BigRational>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let (k, pivots) = linalg::rank_pivots(&diffs);

    if k == 0 {
        return Ok(Polytope::point(pts.swap_remove(0)));
    }
    if k == d {
        let (vertex_idx, facets) = full_dimensional_hull(&pts);
        let vertices = vertex_idx.into_iter().map(|i| pts[i].clone()).collect();
        return Ok(Polytope {
            dim: d,
            vertices,
            facets,
            affine_dim: d as i32,
        });
    }
    // Lower dimensional: the pivot coordinates embed the affine hull.
    let projected: Vec<Point> = pts
        .iter()
        .map(|p| pivots.iter().map(|&j| p[j].clone()).collect())
        .collect();
    let (vertex_idx, _) = full_dimensional_hull(&projected);
    let vertices = vertex_idx.into_iter().map(|i| pts[i].clone()).collect();
    Ok(Polytope {
        dim: d,
        vertices,
        facets: Vec::new(),
        affine_dim: k as i32,
    })
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Double description on the cone `{y : rows[i] . y <= 0}` with
/// `rows[i] = L_i * (p_i, -1)`. Returns the sorted indices of the extreme
/// points and the facet inequalities. Requires `points` to be
/// full dimensional and duplicate free.
fn full_dimensional_hull(points: &[Point]) -> (Vec<usize>, Vec<Facet>) {
    let d = points[0].len();
    let m = points.len();
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut h: Vec<BigRational> = p.clone();
            h.push(-BigRational::one());
            let lcm = h.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            h.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();

    // Initial simplex: greedily pick d+1 affinely independent points.
    let mut basis: Vec<usize> = Vec::new();
    let mut basis_rows: Vec<Vec<BigRational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = basis_rows.clone();
        trial.push(row.iter().map(|x| BigRational::from_integer(x.clone())).collect());
        if linalg::rank_pivots(&trial).0 == trial.len() {
            basis.push(i);
            basis_rows = trial;
            if basis.len() == d + 1 {
                break;
            }
        }
    }
    assert_eq!(basis.len(), d + 1, "point set is not full dimensional");
    let inv = linalg::inverse(&basis_rows).expect("independent rows");

    let mut processed = FixedBitSet::with_capacity(m);
    for &b in &basis {
        processed.insert(b);
    }
    let mut rays: Vec<Ray> = (0..=d)
        .map(|k| {
            let col: Vec<BigRational> = (0..=d).map(|i| -inv[i][k].clone()).collect();
            let mut zeros = FixedBitSet::with_capacity(m);
            for (j, &b) in basis.iter().enumerate() {
                if j != k {
                    zeros.insert(b);
                }
            }
            Ray {
                coords: linalg::primitive_integer(&col),
                zeros,
            }
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        processed.insert(i);

        let mut created = Vec::new();
        if !pos.is_empty() {
            for &p in &pos {
                for &n in &neg {
                    let mut common = rays[p].zeros.clone();
                    common.intersect_with(&rays[n].zeros);
                    if common.count_ones(..) + 1 < d {
                        continue;
                    }
                    let blocked = rays
                        .iter()
                        .enumerate()
                        .any(|(k, r)| k != p && k != n && common.is_subset(&r.zeros));
                    if blocked {
                        continue;
                    }
                    let vp = &values[p];
                    let vn = -&values[n];
                    let coords: Vec<BigInt> = rays[p]
                        .coords
                        .iter()
                        .zip(&rays[n].coords)
                        .map(|(a, b)| vn.clone() * a + vp * b)
                        .collect();
                    let mut zeros = common;
                    zeros.insert(i);
                    created.push(Ray {
                        coords: linalg::make_primitive(coords),
                        zeros,
                    });
                }
            }
        }
        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_positive() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    let mut facets = Vec::new();
    let mut tight_sets = Vec::new();
    for r in &rays {
        let a: Vec<BigInt> = r.coords[..d].to_vec();
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let g = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let normal: Vec<BigInt> = a.iter().map(|x| x / &g).collect();
        let offset = BigRational::new(r.coords[d].clone(), g);
        facets.push(Facet { normal, offset });
        tight_sets.push(r.zeros.clone());
    }

    let mut vertices = Vec::new();
    for i in 0..m {
        let normals: Vec<Vec<BigRational>> = facets
            .iter()
            .zip(&tight_sets)
            .filter(|(_, t)| t.contains(i))
            .map(|(f, _)| f.normal.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        if normals.len() >= d && linalg::rank_pivots(&normals).0 == d {
            vertices.push(i);
        }
    }
    facets.sort();
    (vertices, facets)
}

/// `P + Q`, the hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope, PolytopeError> {
    if p.dim != q.dim {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.dim,
            got: q.dim,
        });
    }
    if p.affine_dim < 0 || q.affine_dim < 0 {
        return Ok(Polytope::empty(p.dim));
    }
    if q.affine_dim == 0 {
        return Ok(p.translate(&q.vertices[0]));
    }
    if p.affine_dim == 0 {
        return Ok(q.translate(&p.vertices[0]));
    }
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    convex_hull(&pts)
}

/// `sum_i weights[i] * polytopes[i]`.
pub fn weighted_minkowski_sum(polytopes: &[Polytope], weights: &[u32]) -> Result<Polytope, PolytopeError> {
    let d = polytopes.first().ok_or(PolytopeError::EmptyInput)?.dim;
    let mut acc = Polytope::point(vec![BigRational::zero(); d]);
    for (p, &w) in polytopes.iter().zip(weights) {
        if w == 0 {
            continue;
        }
        acc = minkowski_sum(&acc, &p.scale(w))?;
    }
    Ok(acc)
}

/// Mixed volume `MV(Q_1^{m_1}, ..., Q_k^{m_k})` normalized so that
/// `MV(P, ..., P) = d! vol(P)`, by inclusion-exclusion over sub-multisets.
pub fn mixed_volume(summands: &[(Polytope, u32)], d: usize) -> Result<BigRational, PolytopeError> {
    let total: u32 = summands.iter().map(|(_, m)| m).sum();
    if total as usize != d {
        return Err(PolytopeError::MultiplicitySum {
            expected: d as u32,
            got: total,
        });
    }
    if let Some((p, _)) = summands.iter().find(|(p, _)| p.dim != d) {
        return Err(PolytopeError::DimensionMismatch {
            expected: d,
            got: p.dim,
        });
    }
    let polys: Vec<Polytope> = summands.iter().map(|(p, _)| p.clone()).collect();
    let mults: Vec<u32> = summands.iter().map(|(_, m)| *m).collect();
    let mut table = VolumeTable::new(&polys);
    table.mixed_volume(&mults)
}

/// Memoized volumes of weighted Minkowski sums of a fixed polytope tuple.
pub struct VolumeTable<'a> {
    polytopes: &'a [Polytope],
    volumes: HashMap<Vec<u32>, BigRational>,
}

impl<'a> VolumeTable<'a> {
    pub fn new(polytopes: &'a [Polytope]) -> Self {
        Self {
            polytopes,
            volumes: HashMap::new(),
        }
    }

    pub fn volume(&mut self, weights: &[u32]) -> Result<BigRational, PolytopeError> {
        if let Some(v) = self.volumes.get(weights) {
            return Ok(v.clone());
        }
        let v = weighted_minkowski_sum(self.polytopes, weights)?.volume();
        self.volumes.insert(weights.to_vec(), v.clone());
        Ok(v)
    }

    /// `MV(P_1^{gamma_1}, ..., P_l^{gamma_l})`.
    pub fn mixed_volume(&mut self, gamma: &[u32]) -> Result<BigRational, PolytopeError> {
        let d: u32 = gamma.iter().sum();
        let mut total = BigRational::zero();
        for nu in sub_vectors(gamma) {
            let size: u32 = nu.iter().sum();
            if size == 0 {
                continue;
            }
            let mult: BigInt = gamma.iter().zip(&nu).map(|(&g, &n)| binomial(g, n)).product();
            let v = self.volume(&nu)?;
            let term = BigRational::from_integer(mult) * v;
            if (d - size).is_multiple_of(2) {
                total += term;
            } else {
                total -= term;
            }
        }
        Ok(total)
    }
}

/// All integer vectors `nu` with `0 <= nu <= bound` componentwise.
pub(crate) fn sub_vectors(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(bound.len())];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// A homogeneous form with rational coefficients, such as the volume
/// polynomial `vol(T_1 P_1 + ... + T_l P_l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeForm {
    ell: usize,
    degree: u32,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl VolumeForm {
    pub fn new(ell: usize, degree: u32) -> Self {
        Self {
            ell,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Sets the coefficient of `T^gamma`; zero removes the term.
    pub fn set(&mut self, gamma: ExponentVector, c: BigRational) {
        assert_eq!(gamma.degree(), self.degree, "exponent has the wrong degree");
        assert_eq!(gamma.len(), self.ell, "exponent has the wrong length");
        if c.is_zero() {
            self.terms.remove(&gamma);
        } else {
            self.terms.insert(gamma, c);
        }
    }

    pub fn coefficient(&self, gamma: &ExponentVector) -> BigRational {
        self.terms.get(gamma).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in descending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn evaluate(&self, t: &[BigRational]) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mono = e.as_slice().iter().zip(t).fold(BigRational::one(), |m, (&k, x)| {
                m * num_traits::pow(x.clone(), k as usize)
            });
            acc + c * mono
        })
    }
}

impl fmt::Display for VolumeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let sep = if k == 0 { "" } else { " + " };
            write!(f, "{sep}{}*{}", c, e.monomial_string())?;
        }
        Ok(())
    }
}

/// Exponents `gamma` with `|gamma| = d` and length `ell`, descending lex.
pub(crate) fn exponents_summing_to(ell: usize, d: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; ell];
    fn rec(slot: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if slot + 1 == cur.len() {
            cur[slot] = rem;
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        for a in (0..=rem).rev() {
            cur[slot] = a;
            rec(slot + 1, rem - a, cur, out);
        }
    }
    if ell > 0 {
        rec(0, d, &mut cur, &mut out);
    }
    out
}

fn factorial_product(gamma: &ExponentVector) -> BigInt {
    gamma.as_slice().iter().map(|&g| factorial(g)).product()
}

fn common_dimension(polytopes: &[Polytope]) -> Result<usize, PolytopeError> {
    let d = polytopes.first().ok_or(PolytopeError::EmptyInput)?.dim;
    if let Some(p) = polytopes.iter().find(|p| p.dim != d) {
        return Err(PolytopeError::DimensionMismatch {
            expected: d,
            got: p.dim,
        });
    }
    Ok(d)
}

/// `vol(T_1 P_1 + ... + T_l P_l)` with coefficients
/// `mu_gamma = MV(P_1^{gamma_1}, ..., P_l^{gamma_l}) / gamma!`.
pub fn volume_polynomial(polytopes: &[Polytope]) -> Result<VolumeForm, PolytopeError> {
    let d = common_dimension(polytopes)?;
    let mut table = VolumeTable::new(polytopes);
    let mut form = VolumeForm::new(polytopes.len(), d as u32);
    for gamma in exponents_summing_to(polytopes.len(), d as u32) {
        let mv = table.mixed_volume(gamma.as_slice())?;
        let mu = mv / BigRational::from_integer(factorial_product(&gamma));
        form.set(gamma, mu);
    }
    Ok(form)
}

/// Independent route to the volume polynomial: evaluate
/// `vol(t_1 P_1 + ... + t_l P_l)` at every integer weight `t` with `|t| = d`
/// and solve the resulting (unisolvent) linear system exactly. Meant as a
/// cross-check of [`volume_polynomial`].
pub fn volume_polynomial_by_interpolation(polytopes: &[Polytope]) -> Result<VolumeForm, PolytopeError> {
    let d = common_dimension(polytopes)?;
    let ell = polytopes.len();
    let monomials = exponents_summing_to(ell, d as u32);
    let samples = monomials.clone();
    let mut matrix = Vec::with_capacity(samples.len());
    let mut rhs = Vec::with_capacity(samples.len());
    for t in &samples {
        let row: Vec<BigRational> = monomials
            .iter()
            .map(|g| {
                let v: BigInt = g
                    .as_slice()
                    .iter()
                    .zip(t.as_slice())
                    .map(|(&k, &x)| num_traits::pow(BigInt::from(x), k as usize))
                    .product();
                BigRational::from_integer(v)
            })
            .collect();
        matrix.push(row);
        rhs.push(weighted_minkowski_sum(polytopes, t.as_slice())?.volume());
    }
    let sol = linalg::solve(&matrix, &rhs).expect("simplex lattice points are unisolvent");
    let mut form = VolumeForm::new(ell, d as u32);
    for (g, c) in monomials.into_iter().zip(sol) {
        form.set(g, c);
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        rat(n)
    }

    fn qf(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(points: &[&[i64]]) -> Polytope {
        Polytope::from_lattice_points(&points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    pub(crate) fn toric_fourfold() -> (Polytope, Polytope) {
        (
            poly(&[&[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]),
            poly(&[&[0, 0, 1, 1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]]),
        )
    }

    #[test]
    fn tetrahedron_hull() {
        let t = Polytope::unit_simplex(3);
        assert_eq!(t.vertices().len(), 4);
        assert_eq!(t.facets().len(), 4);
        assert_eq!(t.affine_dim(), 3);
        assert!(t
            .facets()
            .iter()
            .any(|f| f.normal == vec![BigInt::from(1); 3] && f.offset == q(1)));
    }

    #[test]
    fn lower_dimensional_simplex_in_r4() {
        let (p1, _) = toric_fourfold();
        assert_eq!(p1.affine_dim(), 3);
        assert_eq!(p1.vertices().len(), 4);
        assert!(p1.facets().is_empty());
        assert_eq!(p1.volume(), q(0));
        assert_eq!(p1.interior_lattice_points().unwrap(), 0);
    }

    #[test]
    fn collinear_points_keep_endpoints() {
        let s = poly(&[&[0], &[1], &[2]]);
        assert_eq!(s.vertices(), &[vec![q(0)], vec![q(2)]]);
        let s = poly(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3]]);
        assert_eq!(s.affine_dim(), 1);
        assert_eq!(s.vertices().len(), 2);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(convex_hull(&[]), Err(PolytopeError::EmptyInput));
    }

    #[test]
    fn redundant_points_are_dropped() {
        let s = poly(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0], &[0, 1]]);
        assert_eq!(s.vertices().len(), 4);
        assert_eq!(s.facets().len(), 4);
        assert_eq!(s.volume(), q(4));
    }

    #[test]
    fn simplex_dilate() {
        let t = Polytope::unit_simplex(3);
        let twice = minkowski_sum(&t, &t).unwrap();
        assert_eq!(twice, t.scale(2));
    }

    #[test]
    fn game_squares_sum_to_box() {
        // Facets of [0,1]^3 with x2 = 0 and x3 = 0.
        let p2 = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 1], &[1, 0, 1]]);
        let p3 = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        let s = minkowski_sum(&p2, &p3).unwrap();
        let expected = poly(&[
            &[0, 0, 0],
            &[2, 0, 0],
            &[0, 1, 0],
            &[2, 1, 0],
            &[0, 0, 1],
            &[2, 0, 1],
            &[0, 1, 1],
            &[2, 1, 1],
        ]);
        assert_eq!(s, expected);
        assert_eq!(s.volume(), q(2));
        assert_eq!(s.interior_lattice_points().unwrap(), 0);
    }

    #[test]
    fn point_summand_translates() {
        let t = Polytope::unit_simplex(2);
        let pt = Polytope::point(vec![q(3), q(-1)]);
        let s = minkowski_sum(&t, &pt).unwrap();
        assert_eq!(s, t.translate(&[q(3), q(-1)]));
        assert_eq!(s.volume(), qf(1, 2));
    }

    #[test]
    fn volumes() {
        for d in 1..=5 {
            assert_eq!(
                Polytope::unit_simplex(d).volume(),
                BigRational::new(1.into(), factorial(d as u32))
            );
        }
        assert_eq!(Polytope::unit_cube(3).volume(), q(1));
        let (p1, p2) = toric_fourfold();
        assert_eq!(minkowski_sum(&p1, &p2).unwrap().volume(), qf(5, 3));
    }

    #[test]
    fn toric_fourfold_interior_points() {
        let (p1, p2) = toric_fourfold();
        let s = weighted_minkowski_sum(&[p1.clone(), p2.clone()], &[2, 1]).unwrap();
        assert_eq!(s.interior_lattice_points().unwrap(), 1);
        let s = minkowski_sum(&p1, &p2).unwrap();
        assert_eq!(s.interior_lattice_points().unwrap(), 0);
    }

    #[test]
    fn mixed_volume_basics() {
        let t = Polytope::unit_simplex(3);
        assert_eq!(mixed_volume(&[(t.clone(), 3)], 3).unwrap(), q(1));
        let (p1, p2) = toric_fourfold();
        assert_eq!(mixed_volume(&[(p1.clone(), 2), (p2.clone(), 2)], 4).unwrap(), q(4));
        let pt = Polytope::point(vec![q(0); 3]);
        assert_eq!(mixed_volume(&[(t.clone(), 2), (pt, 1)], 3).unwrap(), q(0));
        assert!(matches!(
            mixed_volume(&[(t, 2)], 3),
            Err(PolytopeError::MultiplicitySum { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn volume_polynomial_of_fourfold() {
        let (p1, p2) = toric_fourfold();
        let v = volume_polynomial(&[p1, p2]).unwrap();
        assert_eq!(v.to_string(), "1/3*T1^3*T2 + 1*T1^2*T2^2 + 1/3*T1*T2^3");
    }

    #[test]
    fn volume_polynomial_single_polytope() {
        let c = Polytope::unit_cube(2).scale(3);
        let v = volume_polynomial(&[c]).unwrap();
        assert_eq!(v.to_string(), "9*T1^2");
    }

    #[test]
    fn dimension_mismatch() {
        let a = Polytope::unit_simplex(2);
        let b = Polytope::unit_simplex(3);
        assert!(matches!(
            minkowski_sum(&a, &b),
            Err(PolytopeError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            volume_polynomial(&[a, b]),
            Err(PolytopeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn support_set_validation() {
        assert_eq!(SupportSet::new(vec![]), Err(PolytopeError::EmptyInput));
        assert_eq!(
            SupportSet::new(vec![vec![0, 1], vec![0, 1]]),
            Err(PolytopeError::DuplicatePoint(vec![0, 1]))
        );
        assert!(matches!(
            SupportSet::new(vec![vec![0, 1], vec![0]]),
            Err(PolytopeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rational_vertices() {
        let pts = vec![vec![qf(1, 2), q(0)], vec![q(0), qf(1, 3)], vec![q(0), q(0)]];
        let t = convex_hull(&pts).unwrap();
        assert_eq!(t.volume(), qf(1, 12));
        assert_eq!(t.facets().len(), 3);
        assert!(t
            .facets()
            .iter()
            .any(|f| f.normal == vec![BigInt::from(2), BigInt::from(3)] && f.offset == q(1)));
    }
}
