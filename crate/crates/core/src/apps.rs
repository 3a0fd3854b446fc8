//! Front-ends for Nash equilibria of generic games and for line-incidence
//! varieties of graphs in products of Grassmannians.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chowring::{Ambient, ChowClass, ChowError, ExponentVector};
use crate::ci::{
    hurwitz_bound, hurwitz_degree_ci, multidegree_ci, CiError, DegreeMatrix, DegreeReport, Flag, GenusMode,
};
use crate::toric::{ToricError, ToricSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AppsError {
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Ci(#[from] CiError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("a game needs at least two players, got {0}")]
    TooFewPlayers(usize),
    #[error("player {0} needs at least two strategies")]
    TooFewStrategies(usize),
    #[error("game format {0:?} has no totally mixed equilibria")]
    NoMixedEquilibria(Vec<u32>),
    #[error("binary game bound needs at least 3 players, got {0}")]
    BinaryTooSmall(u32),
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("edge {0}-{0} is a loop")]
    Loop(usize),
    #[error("vertex {vertex} is outside 1..={ell}")]
    VertexOutOfRange { vertex: usize, ell: usize },
    #[error("edge {0}-{1} is listed twice")]
    DuplicateEdge(usize, usize),
}

/// A game in which player `i` has `k_i + 1` pure strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    k: Vec<u32>,
}

impl GameSpec {
    pub fn new(k: Vec<u32>) -> Result<Self, AppsError> {
        if k.len() < 2 {
            return Err(AppsError::TooFewPlayers(k.len()));
        }
        if let Some(i) = k.iter().position(|&x| x == 0) {
            return Err(AppsError::TooFewStrategies(i));
        }
        Ok(Self { k })
    }

    /// From strategy counts `(k_1 + 1, ..., k_l + 1)`.
    pub fn from_format(format: &[u32]) -> Result<Self, AppsError> {
        if let Some(i) = format.iter().position(|&x| x < 2) {
            if format.len() >= 2 {
                return Err(AppsError::TooFewStrategies(i));
            }
        }
        Self::new(format.iter().map(|&x| x.saturating_sub(1)).collect())
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    pub fn players(&self) -> usize {
        self.k.len()
    }

    pub fn format(&self) -> Vec<u32> {
        self.k.iter().map(|k| k + 1).collect()
    }

    /// `n_i = prod_{j != i} (k_j + 1) - 1`.
    pub fn ambient(&self) -> Ambient {
        let dims = (0..self.players())
            .map(|i| {
                self.k
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, k)| k + 1)
                    .product::<u32>()
                    - 1
            })
            .collect();
        Ambient::new(dims).expect("games have at least two players")
    }

    /// Torus dimension `d = sum k_i`.
    pub fn torus_dim(&self) -> u32 {
        self.k.iter().sum()
    }

    /// The distinguished exponent `alpha* = n - k`, or `None` when some
    /// `n_i < k_i`. In that case no generic game has a totally mixed
    /// equilibrium.
    pub fn alpha_star(&self) -> Option<ExponentVector> {
        let n = self.ambient();
        n.dims()
            .iter()
            .zip(&self.k)
            .map(|(n, k)| n.checked_sub(*k))
            .collect::<Option<Vec<u32>>>()
            .map(ExponentVector::new)
    }

    /// The product of simplices `Sigma = P^{k_1} x ... x P^{k_l}`.
    pub fn sigma(&self) -> Ambient {
        Ambient::new(self.k.clone()).expect("k is nonzero")
    }

    /// `H^_i = sum_{j != i} H_j` in `A*(Sigma)`.
    fn hat(&self, sigma: &Ambient, i: usize) -> ChowClass {
        let coeffs: Vec<i64> = (0..self.players()).map(|j| i64::from(j != i)).collect();
        ChowClass::linear(sigma, &coeffs)
    }

    /// `prod_j H^_j^{k_j - [i = j]}`, the class of the curve in direction `i`.
    fn curve(&self, sigma: &Ambient, i: usize) -> ChowClass {
        (0..self.players()).fold(ChowClass::one(sigma), |acc, j| {
            let e = self.k[j] - u32::from(i == j);
            &acc * &self.hat(sigma, j).pow(e)
        })
    }
}

/// Number of totally mixed Nash equilibria of a generic game,
/// `int_Sigma prod_i H^_i^{k_i}`.
pub fn nash_delta(g: &GameSpec) -> BigInt {
    let sigma = g.sigma();
    (0..g.players())
        .fold(ChowClass::one(&sigma), |acc, i| &acc * &g.hat(&sigma, i).pow(g.k[i]))
        .integral()
}

/// `u_i = int_Sigma 2H + H_(i) (-H^_i + sum_j [k_j H^_j - (k_j + 1) H_j])`.
pub fn nash_hurwitz_bound(g: &GameSpec) -> Vec<BigInt> {
    let sigma = g.sigma();
    let l = g.players();
    let delta = nash_delta(g);
    let mut tail = ChowClass::zero(&sigma);
    for j in 0..l {
        tail = &tail + &g.hat(&sigma, j).scale(&BigInt::from(g.k[j]));
        tail = &tail - &ChowClass::variable(&sigma, j).scale(&BigInt::from(g.k[j] + 1));
    }
    (0..l)
        .map(|i| {
            let factor = &tail - &g.hat(&sigma, i);
            BigInt::from(2) * &delta + (&g.curve(&sigma, i) * &factor).integral()
        })
        .collect()
}

/// Genera of the curves in `Sigma` cut out by `k_j - [i = j]` generic
/// forms of class `H^_j`, by adjunction with `K = -sum (k_j + 1) H_j`.
pub fn nash_genus_by_adjunction(g: &GameSpec) -> Result<Vec<BigInt>, AppsError> {
    let sigma = g.sigma();
    let l = g.players();
    let canonical: Vec<i64> = g.k.iter().map(|&k| -(i64::from(k) + 1)).collect();
    let canonical = ChowClass::linear(&sigma, &canonical);
    (0..l)
        .map(|i| {
            let mut s = canonical.clone();
            for j in 0..l {
                let copies = g.k[j] - u32::from(i == j);
                s = &s + &g.hat(&sigma, j).scale(&BigInt::from(copies));
            }
            let val = (&g.curve(&sigma, i) * &s).integral();
            if val.is_odd() {
                return Err(CiError::OddAdjunction(val).into());
            }
            Ok(BigInt::one() + val / 2)
        })
        .collect()
}

/// Report at `alpha*` combining the equilibrium count, the adjunction
/// genera in `Sigma`, and the degree bound.
pub fn nash_hurwitz_degree(g: &GameSpec) -> Result<DegreeReport, AppsError> {
    let alpha = g.alpha_star().ok_or_else(|| AppsError::NoMixedEquilibria(g.format()))?;
    let sigma = g.sigma();
    let delta = nash_delta(g);
    let mut report = DegreeReport {
        alpha,
        delta: delta.clone(),
        genus_vector: nash_genus_by_adjunction(g)?,
        hurwitz_degree: nash_hurwitz_bound(g),
        flags: vec![Flag::DegenerateBoundOnly],
        note: None,
    };
    if delta < BigInt::from(2) {
        report.push_flag(Flag::DeltaBelowTwo);
    }
    for i in 0..g.players() {
        if g.curve(&sigma, i).is_zero() {
            report.genus_vector[i] = BigInt::zero();
            report.push_flag(Flag::NonCurveDirection(i));
        }
    }
    debug_assert!(
        report.flags.iter().any(|f| matches!(f, Flag::NonCurveDirection(_)))
            || hurwitz_bound(&delta, &report.genus_vector) == report.hurwitz_degree
    );
    Ok(report)
}

/// Closed form of the degree bound for `l` players with two strategies each:
/// `(l-1)! sum_{j=0}^{l} (-1)^j / j! [(l-3)(l-j) + l]`.
pub fn binary_game_bound(ell: u32) -> Result<BigInt, AppsError> {
    if ell < 3 {
        return Err(AppsError::BinaryTooSmall(ell));
    }
    let l = BigInt::from(ell);
    let mut sum = BigRational::zero();
    let mut j_fact = BigInt::one();
    for j in 0..=ell {
        if j > 0 {
            j_fact *= BigInt::from(j);
        }
        let bracket = (&l - 3) * (&l - BigInt::from(j)) + &l;
        let term = BigRational::new(bracket, j_fact.clone());
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let l_minus_one_fact: BigInt = (1..ell).map(BigInt::from).product();
    let value = sum * BigRational::from_integer(l_minus_one_fact);
    debug_assert!(value.is_integer());
    Ok(value.to_integer())
}

/// Supports `A_i`: lattice points of `Delta_{k_1} x ... x Delta_{k_l}` with
/// the `i`-th factor pinned to the origin, in `Z^{sum k}`.
pub fn game_to_toric(g: &GameSpec) -> Result<ToricSpec, AppsError> {
    let d = g.torus_dim() as usize;
    let offsets: Vec<usize> =
        g.k.iter()
            .scan(0usize, |acc, &k| {
                let o = *acc;
                *acc += k as usize;
                Some(o)
            })
            .collect();
    let supports = (0..g.players())
        .map(|i| {
            let mut points = vec![vec![0i64; d]];
            for j in (0..g.players()).filter(|&j| j != i) {
                let mut next = Vec::with_capacity(points.len() * (g.k[j] as usize + 1));
                for p in &points {
                    next.push(p.clone());
                    for s in 0..g.k[j] as usize {
                        let mut q = p.clone();
                        q[offsets[j] + s] = 1;
                        next.push(q);
                    }
                }
                points = next;
            }
            points
        })
        .collect();
    Ok(ToricSpec::from_points(d, supports)?)
}

/// A simple graph on vertices `1..=ell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    ell: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    /// Edges use 1-based vertex labels; they are stored as `(i, j)` with
    /// `i < j` in lexicographic order.
    pub fn new(ell: usize, edges: &[(usize, usize)]) -> Result<Self, AppsError> {
        if ell == 0 {
            return Err(AppsError::NoVertices);
        }
        let mut out = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > ell {
                    return Err(AppsError::VertexOutOfRange { vertex: v, ell });
                }
            }
            if a == b {
                return Err(AppsError::Loop(a));
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(AppsError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { ell, edges: out })
    }

    pub fn vertices(&self) -> usize {
        self.ell
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree of vertex `v` (1-based).
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// `c = l + |G|`.
    pub fn codim(&self) -> u32 {
        (self.ell + self.edges.len()) as u32
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::new(vec![5; self.ell]).expect("at least one vertex")
    }
}

/// `(P^5)^l` and the rows `2e_i` followed by `e_i + e_j` for each edge.
pub fn graph_degree_matrix(g: &GraphSpec) -> (Ambient, DegreeMatrix) {
    let l = g.ell;
    let mut rows = Vec::with_capacity(g.codim() as usize);
    for i in 0..l {
        let mut r = vec![0; l];
        r[i] = 2;
        rows.push(r);
    }
    for &(a, b) in &g.edges {
        let mut r = vec![0; l];
        r[a - 1] = 1;
        r[b - 1] = 1;
        rows.push(r);
    }
    let b = DegreeMatrix::new(rows).expect("rows are nonzero and of equal length");
    (g.ambient(), b)
}

/// `2^l T_1 ... T_l prod_{ij in G} (T_i + T_j)`.
pub fn graph_multidegree(g: &GraphSpec) -> ChowClass {
    let n = g.ambient();
    let l = g.ell;
    let base = ChowClass::monomial(&n, ExponentVector::new(vec![1; l]), BigInt::from(2).pow(l as u32));
    g.edges.iter().fold(base, |acc, &(a, b)| {
        let mut coeffs = vec![0i64; l];
        coeffs[a - 1] = 1;
        coeffs[b - 1] = 1;
        &acc * &ChowClass::linear(&n, &coeffs)
    })
}

pub const GRAPH_BOUND_NOTE: &str =
    "degrees of the generic complete intersection U_G; for the incidence variety V_G they are upper bounds";

/// Degree report for `U_G`, computed from the degree matrix.
pub fn graph_hurwitz_degree(g: &GraphSpec, alpha: &ExponentVector, mode: GenusMode) -> Result<DegreeReport, AppsError> {
    let (n, b) = graph_degree_matrix(g);
    let mut report = hurwitz_degree_ci(&n, &b, alpha, mode)?;
    report.note = Some(GRAPH_BOUND_NOTE.to_string());
    Ok(report)
}

/// `multidegree_ci` on the graph's degree matrix.
pub fn graph_multidegree_ci(g: &GraphSpec) -> Result<ChowClass, AppsError> {
    let (n, b) = graph_degree_matrix(g);
    Ok(multidegree_ci(&n, &b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::toric_multidegree;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn game(k: &[u32]) -> GameSpec {
        GameSpec::new(k.to_vec()).unwrap()
    }

    #[test]
    fn equilibrium_counts() {
        assert_eq!(nash_delta(&game(&[1, 1, 1])), BigInt::from(2));
        assert_eq!(nash_delta(&game(&[1, 1, 1, 1])), BigInt::from(9));
        assert_eq!(nash_delta(&game(&[2, 2, 2])), BigInt::from(10));
        assert_eq!(nash_delta(&game(&[1, 1])), BigInt::one());
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(nash_hurwitz_bound(&game(&[1, 1, 1])), ints(&[2, 2, 2]));
        assert_eq!(nash_hurwitz_bound(&game(&[2, 2, 2])), ints(&[24, 24, 24]));
        assert_eq!(nash_hurwitz_bound(&game(&[1, 1, 1, 1])), ints(&[20, 20, 20, 20]));
        let r = nash_hurwitz_degree(&game(&[2, 2, 2])).unwrap();
        assert_eq!(r.hurwitz_degree, hurwitz_bound(&r.delta, &r.genus_vector));
        assert_eq!(r.alpha.as_slice(), &[6, 6, 6]);
    }

    #[test]
    fn lopsided_games_have_no_mixed_equilibria() {
        let g = game(&[2, 1]);
        assert_eq!(g.alpha_star(), None);
        assert_eq!(nash_delta(&g), BigInt::zero());
        assert_eq!(nash_hurwitz_degree(&g), Err(AppsError::NoMixedEquilibria(vec![3, 2])));
    }

    #[test]
    fn two_player_games_are_flagged() {
        let r = nash_hurwitz_degree(&game(&[1, 1])).unwrap();
        assert_eq!(r.delta, BigInt::one());
        assert!(r.has_flag(Flag::DeltaBelowTwo));
    }

    #[test]
    fn binary_closed_form() {
        let expected = [2, 20, 150, 1192, 10330, 98268, 1023470, 11614160];
        for (ell, want) in (3..=10).zip(expected) {
            assert_eq!(binary_game_bound(ell).unwrap(), BigInt::from(want), "l = {ell}");
        }
        assert_eq!(binary_game_bound(2), Err(AppsError::BinaryTooSmall(2)));
    }

    #[test]
    fn game_validation() {
        assert_eq!(GameSpec::new(vec![1]), Err(AppsError::TooFewPlayers(1)));
        assert_eq!(GameSpec::new(vec![1, 0]), Err(AppsError::TooFewStrategies(1)));
        assert_eq!(GameSpec::from_format(&[2, 2, 2]).unwrap().k(), &[1, 1, 1]);
        assert_eq!(GameSpec::from_format(&[3, 1]), Err(AppsError::TooFewStrategies(1)));
        assert_eq!(game(&[1, 1, 1]).ambient().dims(), &[3, 3, 3]);
        assert_eq!(game(&[2, 2, 2]).ambient().dims(), &[8, 8, 8]);
    }

    #[test]
    fn game_supports() {
        let t = game_to_toric(&game(&[1, 1, 1])).unwrap();
        assert_eq!(t.dim(), 3);
        assert!(t.supports().iter().all(|a| a.len() == 4));
        let md = toric_multidegree(&t).unwrap();
        assert_eq!(md.coefficient(&ExponentVector::new(vec![2, 2, 2])), BigInt::from(2));

        let g = game(&[1, 1]);
        let t = game_to_toric(&g).unwrap();
        assert_eq!(
            toric_multidegree(&t).unwrap().coefficient(&g.alpha_star().unwrap()),
            BigInt::one()
        );
    }

    #[test]
    fn graph_matrices() {
        let g = GraphSpec::new(2, &[(1, 2)]).unwrap();
        let (n, b) = graph_degree_matrix(&g);
        assert_eq!(n.dims(), &[5, 5]);
        assert_eq!(b.rows(), &[vec![2, 0], vec![0, 2], vec![1, 1]]);
        let (_, b) = graph_degree_matrix(&GraphSpec::new(1, &[]).unwrap());
        assert_eq!(b.rows(), &[vec![2]]);
        assert_eq!(GraphSpec::new(3, &[(2, 3), (1, 2)]).unwrap().codim(), 5);
    }

    #[test]
    fn graph_validation() {
        assert_eq!(GraphSpec::new(0, &[]), Err(AppsError::NoVertices));
        assert_eq!(GraphSpec::new(2, &[(1, 1)]), Err(AppsError::Loop(1)));
        assert_eq!(
            GraphSpec::new(2, &[(1, 3)]),
            Err(AppsError::VertexOutOfRange { vertex: 3, ell: 2 })
        );
        assert_eq!(
            GraphSpec::new(2, &[(1, 2), (2, 1)]),
            Err(AppsError::DuplicateEdge(1, 2))
        );
    }

    #[test]
    fn graph_degrees() {
        let g = GraphSpec::new(2, &[(1, 2)]).unwrap();
        assert_eq!(graph_multidegree(&g).to_string(), "4*T1^2*T2 + 4*T1*T2^2");
        let r = graph_hurwitz_degree(&g, &ExponentVector::new(vec![1, 2]), GenusMode::Raw).unwrap();
        assert_eq!(r.hurwitz_degree, ints(&[8, 4]));
        assert!(r.note.is_some());

        let g = GraphSpec::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(graph_multidegree(&g), graph_multidegree_ci(&g).unwrap());
        let r = graph_hurwitz_degree(&g, &ExponentVector::new(vec![2, 2, 1]), GenusMode::Raw).unwrap();
        assert_eq!(r.hurwitz_degree, ints(&[8, 16, 24]));
        let r = graph_hurwitz_degree(&g, &ExponentVector::new(vec![1, 3, 1]), GenusMode::Raw).unwrap();
        assert_eq!(r.hurwitz_degree, ints(&[16, 8, 16]));

        let g = GraphSpec::new(1, &[]).unwrap();
        assert_eq!(graph_multidegree(&g).to_string(), "2*T1");
        let r = graph_hurwitz_degree(&g, &ExponentVector::new(vec![1]), GenusMode::Raw).unwrap();
        assert_eq!(r.hurwitz_degree, ints(&[2]));
    }
}
