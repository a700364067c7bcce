//! Exact rational geometry in the unit cube.
//!
//! Everything here is computed over arbitrary-precision rationals. A
//! triangulation stores its vertex list and its maximal simplices as sorted
//! lists of vertex indices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{AbstractComplex, Poset, WeightedComplex};
use crate::space::{self, TermPair};
use crate::tri::{self, Tri};

pub type Q = BigRational;
pub type RationalVector = Vec<Q>;

/// Default bound on the dimension accepted by [`kleene_triangulation`].
pub const DEFAULT_MAX_KLEENE_DIM: usize = 3;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("vertex {index} has {found} coordinates, expected {dim}")]
    Dimension { index: usize, found: usize, dim: usize },
    #[error("simplex {0} refers to a missing vertex")]
    VertexOutOfRange(usize),
    #[error("simplex {0} is empty")]
    EmptySimplex(usize),
    #[error("simplex {0} is affinely dependent")]
    Degenerate(usize),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("Kleene triangulation of dimension {n} refused (limit {limit})")]
    KleeneLimit { n: usize, limit: usize },
    #[error("{{{0}, {1}}} is not an edge of the triangulation")]
    NotAnEdge(usize, usize),
    #[error("not a simplex of the Kleene triangulation: {0}")]
    NotKleeneSimplex(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn tri_to_q(t: Tri) -> Q {
    ratio(t.halves(), 2)
}

pub fn point_of(p: &[Tri]) -> RationalVector {
    p.iter().map(|t| tri_to_q(*t)).collect()
}

pub fn format_point(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Least common multiple of the reduced coordinate denominators.
pub fn den(v: &[Q]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// `(d·x₁, …, d·x_k, d)` with `d = den(v)`.
pub fn homogeneous(v: &[Q]) -> Vec<BigInt> {
    let d = den(v);
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    out.push(d);
    out
}

/// Inverse of [`homogeneous`] for a vector with positive last entry.
pub fn dehomogenize(h: &[BigInt]) -> RationalVector {
    let (last, rest) = h.split_last().expect("nonempty");
    rest.iter().map(|x| Q::new(x.clone(), last.clone())).collect()
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = ((k + 1)..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a square rational matrix (Gaussian elimination).
pub fn det_q(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Q::zero();
        };
        if r != k {
            m.swap(k, r);
            det = -det;
        }
        let p = m[k][k].clone();
        det *= &p;
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    det
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// The gcd of the maximal minors of the matrix whose columns are the
/// homogeneous correspondents of `vertices`. Zero when they are linearly
/// dependent.
pub fn minor_gcd(vertices: &[&[Q]]) -> BigInt {
    let cols: Vec<Vec<BigInt>> = vertices.iter().map(|v| homogeneous(v)).collect();
    let k = cols.len();
    let rows = cols.first().map_or(0, |c| c.len());
    if k == 0 {
        return BigInt::one();
    }
    if k > rows {
        return BigInt::zero();
    }
    let mut g = BigInt::zero();
    for pick in combinations(rows, k) {
        let minor: Vec<Vec<BigInt>> = pick.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        g = g.gcd(&det_int(minor));
        if g.is_one() {
            break;
        }
    }
    g
}

/// A rational simplex is regular when the homogeneous correspondents of its
/// vertices extend to a basis of the integer lattice.
pub fn is_regular_simplex(vertices: &[&[Q]]) -> bool {
    minor_gcd(vertices).is_one()
}

/// Whether the given points are affinely independent.
pub fn affinely_independent(vertices: &[&[Q]]) -> bool {
    let k = vertices.len();
    if k <= 1 {
        return true;
    }
    let base = vertices[0];
    let rows: Vec<Vec<Q>> =
        vertices[1..].iter().map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    rank_q(rows) == k - 1
}

fn rank_q(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pv = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pv;
                for j in c..cols {
                    let v = &m[rank][j] * &f;
                    m[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `Σ λᵢ vᵢ = x, Σ λᵢ = 1` for affinely independent `vᵢ`. `None` if
/// `x` is not in their affine hull.
pub fn barycentric(vertices: &[&[Q]], x: &[Q]) -> Option<Vec<Q>> {
    let k = vertices.len();
    let d = x.len();
    // augmented system with d+1 equations and k unknowns
    let mut m: Vec<Vec<Q>> = (0..d)
        .map(|r| {
            let mut row: Vec<Q> = vertices.iter().map(|v| v[r].clone()).collect();
            row.push(x[r].clone());
            row
        })
        .collect();
    let mut ones = vec![Q::one(); k];
    ones.push(Q::one());
    m.push(ones);
    let rows = m.len();
    let mut pivots = Vec::with_capacity(k);
    let mut rank = 0;
    for c in 0..k {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            return None;
        };
        m.swap(rank, p);
        let pv = m[rank][c].clone();
        for v in m[rank].iter_mut() {
            *v /= &pv;
        }
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTriangulation {
    pub dim: usize,
    pub vertices: Vec<RationalVector>,
    /// Maximal simplices as sorted vertex-index lists, in sorted order.
    pub simplices: Vec<Vec<usize>>,
}

/// A point located in a triangulation: the face whose relative interior
/// contains it and its barycentric coordinates there (all positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub face: Vec<usize>,
    pub coords: Vec<Q>,
}

impl RationalTriangulation {
    /// Checks coordinates, indices and affine independence. The pairwise
    /// intersection property is checked separately by
    /// [`RationalTriangulation::improper_pair`].
    pub fn new(dim: usize, vertices: Vec<RationalVector>, simplices: Vec<Vec<usize>>) -> Result<Self, GeomError> {
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(GeomError::Dimension { index: i, found: v.len(), dim });
            }
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(GeomError::DuplicateVertex(format_point(v)));
            }
        }
        let mut simplices: Vec<Vec<usize>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        simplices.sort();
        simplices.dedup();
        let t = RationalTriangulation { dim, vertices, simplices };
        for (i, s) in t.simplices.iter().enumerate() {
            if s.is_empty() {
                return Err(GeomError::EmptySimplex(i));
            }
            if s.iter().any(|&v| v >= t.vertices.len()) {
                return Err(GeomError::VertexOutOfRange(i));
            }
            if !affinely_independent(&t.simplex_points(s)) {
                return Err(GeomError::Degenerate(i));
            }
        }
        Ok(t)
    }

    pub fn simplex_points(&self, s: &[usize]) -> Vec<&[Q]> {
        s.iter().map(|&i| self.vertices[i].as_slice()).collect()
    }

    pub fn vertex_index(&self, v: &[Q]) -> Option<usize> {
        self.vertices.iter().position(|w| w.as_slice() == v)
    }

    pub fn abstract_complex(&self) -> AbstractComplex {
        let names = self.vertices.iter().map(|v| format_point(v)).collect();
        AbstractComplex::new(names, self.simplices.clone()).expect("simplices are valid faces")
    }

    /// Number of faces by vertex count.
    pub fn f_vector(&self) -> Vec<usize> {
        self.abstract_complex().f_vector()
    }

    /// All edges of the triangulation, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.abstract_complex().skeleton(2).into_iter().map(|e| (e[0], e[1])).collect()
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        a != b && self.simplices.iter().any(|s| s.contains(&a) && s.contains(&b))
    }

    /// The unique face containing `x` in its relative interior, if `x` lies
    /// in the support.
    pub fn locate(&self, x: &[Q]) -> Option<Location> {
        if x.len() != self.dim {
            return None;
        }
        for s in &self.simplices {
            let pts = self.simplex_points(s);
            let Some(lambda) = barycentric(&pts, x) else {
                continue;
            };
            if lambda.iter().any(|l| l.is_negative()) {
                continue;
            }
            let (face, coords) = s.iter().zip(lambda).filter(|(_, l)| l.is_positive()).map(|(v, l)| (*v, l)).unzip();
            return Some(Location { face, coords });
        }
        None
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.locate(x).is_some()
    }

    /// The first pair of simplices (by index) whose intersection is not a
    /// common face, if any.
    pub fn improper_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.simplices.len() {
            for j in (i + 1)..self.simplices.len() {
                if !self.meet_properly(&self.simplices[i], &self.simplices[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn meet_properly(&self, s: &[usize], t: &[usize]) -> bool {
        // disjoint bounding boxes cannot meet
        for c in 0..self.dim {
            let lo_s = s.iter().map(|&v| &self.vertices[v][c]).min().expect("nonempty");
            let hi_s = s.iter().map(|&v| &self.vertices[v][c]).max().expect("nonempty");
            let lo_t = t.iter().map(|&v| &self.vertices[v][c]).min().expect("nonempty");
            let hi_t = t.iter().map(|&v| &self.vertices[v][c]).max().expect("nonempty");
            if hi_s < lo_t || hi_t < lo_s {
                return true;
            }
        }
        let shared: BTreeSet<usize> = s.iter().filter(|v| t.contains(v)).copied().collect();
        if shared.len() == s.len() || shared.len() == t.len() {
            // one is a face of the other
            return true;
        }
        // variables λ (for s) then μ (for t), all ≥ 0:
        // Σλ v − Σμ w = 0, Σλ − Σμ = 0, Σ_{non-shared} (λ + μ) = 1
        let nv = s.len() + t.len();
        let mut a: Vec<Vec<Q>> = Vec::with_capacity(self.dim + 2);
        for c in 0..self.dim {
            let mut row: Vec<Q> = s.iter().map(|&v| self.vertices[v][c].clone()).collect();
            row.extend(t.iter().map(|&v| -self.vertices[v][c].clone()));
            a.push(row);
        }
        let mut sums = vec![Q::one(); s.len()];
        sums.extend(std::iter::repeat_n(-Q::one(), t.len()));
        a.push(sums);
        let mut norm = Vec::with_capacity(nv);
        norm.extend(s.iter().chain(t).map(|v| if shared.contains(v) { Q::zero() } else { Q::one() }));
        a.push(norm);
        let mut b = vec![Q::zero(); self.dim + 1];
        b.push(Q::one());
        !crate::lp::feasible(&a, &b)
    }

    /// `d`-dimensional volume of the support (lower-dimensional simplices
    /// contribute nothing).
    pub fn volume(&self) -> Q {
        let d = self.dim;
        let fact: BigInt = (1..=d).map(BigInt::from).product();
        let mut total = Q::zero();
        for s in self.simplices.iter().filter(|s| s.len() == d + 1) {
            let base = &self.vertices[s[0]];
            let m: Vec<Vec<Q>> =
                s[1..].iter().map(|&v| self.vertices[v].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
            total += det_q(m).abs();
        }
        total / Q::from_integer(fact)
    }

    pub fn is_regular(&self) -> bool {
        self.simplices.iter().all(|s| is_regular_simplex(&self.simplex_points(s)))
    }

    pub fn weights(&self) -> Vec<BigInt> {
        self.vertices.iter().map(|v| den(v)).collect()
    }
}

pub fn is_regular_triangulation(t: &RationalTriangulation) -> bool {
    t.is_regular()
}

/// The geometric realization of a weighted complex: vertex `vᵢ` goes to
/// `eᵢ / ω(vᵢ)` in `[0,1]^d`, `d` the number of vertices.
pub fn realize(wc: &WeightedComplex) -> RationalTriangulation {
    let d = wc.complex.vertex_count();
    let vertices = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Q::new(BigInt::one(), BigInt::from(wc.weights[i])) } else { Q::zero() })
                .collect()
        })
        .collect();
    RationalTriangulation::new(d, vertices, wc.complex.facets().to_vec()).expect("coordinate simplices are nondegenerate")
}

pub fn kleene_triangulation(n: usize) -> Result<RationalTriangulation, GeomError> {
    kleene_triangulation_with_limit(n, DEFAULT_MAX_KLEENE_DIM)
}

/// The triangulation of `[0,1]ⁿ` by convex hulls of chains of
/// `({0,1/2,1}ⁿ, ⪯ₙ)`. Vertices are in canonical cube order.
pub fn kleene_triangulation_with_limit(n: usize, limit: usize) -> Result<RationalTriangulation, GeomError> {
    if n == 0 || n > limit {
        return Err(GeomError::KleeneLimit { n, limit });
    }
    let pts = tri::cube_points(n);
    let space = space::power_space_with_limit(n, n).expect("within the limit");
    let chains = Poset::from_space(&space).maximal_chains();
    RationalTriangulation::new(n, pts.iter().map(|p| point_of(p)).collect(), chains)
}

/// The union of the simplices of `S_n` whose vertices all solve `Θ`.
pub fn sigma_theta(theta: &[TermPair], n: usize) -> Result<RationalTriangulation, GeomError> {
    if n == 0 || n > DEFAULT_MAX_KLEENE_DIM {
        return Err(GeomError::KleeneLimit { n, limit: DEFAULT_MAX_KLEENE_DIM });
    }
    let sol = space::sol_k(theta, n).map_err(|e| match e {
        space::SpaceError::Arity { expected, found } => GeomError::Arity { expected, found },
        other => GeomError::NotKleeneSimplex(other.to_string()),
    })?;
    let sub = space::subspace_from_subset(&sol).expect("solutions are distinct points");
    let chains = Poset::from_space(&sub).maximal_chains();
    RationalTriangulation::new(n, sol.iter().map(|p| point_of(p)).collect(), chains)
}

/// The abstract complex of a triangulation, weighted by denominators.
/// Vertices are named by their coordinates.
pub fn sc_of(t: &RationalTriangulation) -> WeightedComplex {
    let weights = t
        .weights()
        .iter()
        .map(|d| u64::try_from(d).expect("denominators fit in 64 bits"))
        .collect();
    WeightedComplex::new(t.abstract_complex(), weights).expect("denominators are positive")
}

/// The Farey mediant of two points: the point whose homogeneous
/// correspondent is the sum of theirs.
pub fn mediant(v: &[Q], w: &[Q]) -> RationalVector {
    let h: Vec<BigInt> = homogeneous(v).iter().zip(homogeneous(w)).map(|(a, b)| a + b).collect();
    dehomogenize(&h)
}

/// Stars the edge `{a, b}` at its Farey mediant. The new vertex is appended
/// at the end of the vertex list; every simplex containing the edge is
/// replaced by its two halves.
pub fn farey_star(t: &RationalTriangulation, a: usize, b: usize) -> Result<RationalTriangulation, GeomError> {
    if !t.is_edge(a, b) {
        return Err(GeomError::NotAnEdge(a, b));
    }
    let m = mediant(&t.vertices[a], &t.vertices[b]);
    let mi = t.vertices.len();
    let mut vertices = t.vertices.clone();
    vertices.push(m);
    let mut simplices = Vec::with_capacity(t.simplices.len() + 2);
    for s in &t.simplices {
        if s.contains(&a) && s.contains(&b) {
            for drop in [a, b] {
                let mut half: Vec<usize> = s.iter().copied().filter(|&v| v != drop).collect();
                half.push(mi);
                simplices.push(half);
            }
        } else {
            simplices.push(s.clone());
        }
    }
    RationalTriangulation::new(t.dim, vertices, simplices)
}

/// For a planar triangulation, every triangulation obtained by flipping one
/// interior edge whose two triangles form a strictly convex quadrilateral.
pub fn edge_flips(t: &RationalTriangulation) -> Vec<RationalTriangulation> {
    assert_eq!(t.dim, 2, "edge flips are planar");
    let mut out = Vec::new();
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, s) in t.simplices.iter().enumerate() {
        if s.len() != 3 {
            continue;
        }
        for (x, y) in [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])] {
            by_edge.entry((x, y)).or_default().push(i);
        }
    }
    for ((a, b), tris) in by_edge {
        if tris.len() != 2 {
            continue;
        }
        let apex = |i: usize| *t.simplices[i].iter().find(|&&v| v != a && v != b).expect("triangle");
        let (c, d) = (apex(tris[0]), apex(tris[1]));
        let v = &t.vertices;
        // a and b must lie strictly on opposite sides of the line cd
        let sa = orient(&v[c], &v[d], &v[a]);
        let sb = orient(&v[c], &v[d], &v[b]);
        if !(sa.is_positive() && sb.is_negative() || sa.is_negative() && sb.is_positive()) {
            continue;
        }
        let mut simplices: Vec<Vec<usize>> =
            t.simplices.iter().enumerate().filter(|(i, _)| !tris.contains(i)).map(|(_, s)| s.clone()).collect();
        simplices.push(vec![a, c, d]);
        simplices.push(vec![b, c, d]);
        out.push(
            RationalTriangulation::new(2, t.vertices.clone(), simplices).expect("a convex flip keeps triangles nondegenerate"),
        );
    }
    out
}

fn orient(p: &[Q], q: &[Q], r: &[Q]) -> Q {
    (&q[0] - &p[0]) * (&r[1] - &p[1]) - (&q[1] - &p[1]) * (&r[0] - &p[0])
}

/// The system of relations cutting a simplex of `S_n` out of `[0,1]ⁿ`:
///
/// `1/2 e₀ y₁ e₁ y₂ ⋯ yₙ eₙ 1` where `yᵢ = x_{p(i)}` or `1 − x_{p(i)}`
/// according to `sign[i]`, and each `eᵢ` is `=` or `≤`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexSystem {
    /// 0-based coordinate indices.
    pub perm: Vec<usize>,
    /// `true` for `=`, `false` for `≤`; length `n + 1`.
    pub eq: Vec<bool>,
    /// `true` for `x`, `false` for `1 − x`.
    pub sign: Vec<bool>,
}

impl SimplexSystem {
    fn terms(&self, x: &[Q]) -> Vec<Q> {
        let mut t = Vec::with_capacity(self.perm.len() + 2);
        t.push(ratio(1, 2));
        for (i, &c) in self.perm.iter().enumerate() {
            t.push(if self.sign[i] { x[c].clone() } else { Q::one() - &x[c] });
        }
        t.push(Q::one());
        t
    }

    /// Whether `x` satisfies every relation.
    pub fn contains(&self, x: &[Q]) -> bool {
        let t = self.terms(x);
        t.windows(2).zip(&self.eq).all(|(w, &eq)| if eq { w[0] == w[1] } else { w[0] <= w[1] })
    }
}

impl fmt::Display for SimplexSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/2")?;
        for i in 0..=self.perm.len() {
            write!(f, " {} ", if self.eq[i] { "=" } else { "<=" })?;
            if i < self.perm.len() {
                let c = self.perm[i] + 1;
                if self.sign[i] {
                    write!(f, "x{c}")?;
                } else {
                    write!(f, "1-x{c}")?;
                }
            } else {
                write!(f, "1")?;
            }
        }
        Ok(())
    }
}

/// The relation system of the simplex spanned by the chain `sigma` of
/// `({0,1/2,1}ⁿ, ⪯ₙ)`.
pub fn simplex_system(sigma: &[Vec<Tri>]) -> Result<SimplexSystem, GeomError> {
    let Some(first) = sigma.first() else {
        return Err(GeomError::NotKleeneSimplex("empty".into()));
    };
    let n = first.len();
    let mut chain: Vec<Vec<Tri>> = sigma.to_vec();
    if chain.iter().any(|p| p.len() != n) {
        return Err(GeomError::NotKleeneSimplex("mixed dimensions".into()));
    }
    chain.sort_by_key(|p| p.iter().filter(|t| t.is_boolean()).count());
    chain.dedup();
    if chain.windows(2).any(|w| !tri::vec_space_le(&w[0], &w[1])) {
        return Err(GeomError::NotKleeneSimplex("vertices do not form a chain".into()));
    }
    // extend to a maximal chain m_0 ⪯ … ⪯ m_n, fixing one coordinate per step
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut value: Vec<Tri> = vec![Tri::One; n];
    let mut in_chain = vec![false; n + 1];
    let mut fixed = 0usize;
    for c in &chain {
        for (i, t) in c.iter().enumerate() {
            if t.is_boolean() && !order.contains(&i) {
                order.push(i);
                value[i] = *t;
            }
        }
        fixed = order.len();
        in_chain[fixed] = true;
    }
    debug_assert_eq!(fixed, chain.last().map_or(0, |c| c.iter().filter(|t| t.is_boolean()).count()));
    for i in 0..n {
        if !order.contains(&i) {
            order.push(i);
        }
    }
    // m_k has λ_k; in ascending form, slot i corresponds to m_{n-i}
    let perm: Vec<usize> = order.iter().rev().copied().collect();
    let sign = perm.iter().map(|&c| value[c] == Tri::One).collect();
    let eq = (0..=n).map(|i| !in_chain[n - i]).collect();
    Ok(SimplexSystem { perm, eq, sign })
}

/// A uniformly chosen point of `[0,1]ⁿ` with coordinates `k / d`, `d` drawn
/// from `1..=max_den`.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> RationalVector {
    (0..n)
        .map(|_| {
            let d = rng.gen_range(1..=max_den);
            ratio(rng.gen_range(0..=d), d)
        })
        .collect()
}

/// A point of a random maximal simplex of `t`, a convex combination with
/// weights `k_i / Σk` where `k_i ∈ 0..=max_weight`.
pub fn random_point_in<R: Rng>(rng: &mut R, t: &RationalTriangulation, max_weight: i64) -> RationalVector {
    let s = &t.simplices[rng.gen_range(0..t.simplices.len())];
    let mut ks: Vec<i64> = s.iter().map(|_| rng.gen_range(0..=max_weight)).collect();
    if ks.iter().all(|&k| k == 0) {
        ks[0] = 1;
    }
    let total: i64 = ks.iter().sum();
    let mut x = vec![Q::zero(); t.dim];
    for (&v, &k) in s.iter().zip(&ks) {
        for (xi, c) in x.iter_mut().zip(&t.vertices[v]) {
            *xi += c * ratio(k, total);
        }
    }
    x
}

/// The points of the grid `{0, 1/k, …, 1}ⁿ`.
pub fn grid(n: usize, k: i64) -> Vec<RationalVector> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Q>| {
                (0..=k).map(move |i| {
                    let mut p = p.clone();
                    p.push(ratio(i, k));
                    p
                })
            })
            .collect();
    }
    out
}
