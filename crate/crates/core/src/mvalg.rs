//! MV arithmetic on `[0,1] ∩ ℚ`, MV terms, functions linear on a
//! triangulation, and Schauder bases.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::geom::{self, format_point, GeomError, Location, RationalTriangulation, RationalVector, Q};
use crate::space::TermPair;
use crate::tri::{self, Tri};

/// Default number of nested subdivisions explored by [`is_regular_basis`].
pub const DEFAULT_REGULARITY_DEPTH: usize = 1;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MvError {
    #[error("{0} is not in [0,1]")]
    OutOfRange(String),
    #[error("term uses x{used} but only {arity} arguments were given")]
    Arity { used: usize, arity: usize },
    #[error("point {0} lies outside the support")]
    OutsideSupport(String),
    #[error("triangulation is not regular")]
    NotRegular,
    #[error("partition of unity fails at vertex {0}")]
    PartitionFails(String),
    #[error("hats {0} and {1} have zero meet; the pair is not starrable")]
    NotStarrable(usize, usize),
    #[error("term parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// An exact rational in `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MVScalar(Q);

impl MVScalar {
    pub fn new(q: Q) -> Result<Self, MvError> {
        if q.is_negative() || q > Q::one() {
            return Err(MvError::OutOfRange(q.to_string()));
        }
        Ok(MVScalar(q))
    }

    pub fn zero() -> Self {
        MVScalar(Q::zero())
    }

    pub fn one() -> Self {
        MVScalar(Q::one())
    }

    pub fn value(&self) -> &Q {
        &self.0
    }

    pub fn into_inner(self) -> Q {
        self.0
    }

    /// `min{x + y, 1}`
    pub fn oplus(&self, other: &Self) -> Self {
        let s = &self.0 + &other.0;
        MVScalar(if s > Q::one() { Q::one() } else { s })
    }

    /// `1 − x`
    pub fn neg(&self) -> Self {
        MVScalar(Q::one() - &self.0)
    }

    /// `¬(¬x ⊕ ¬y)`
    pub fn odot(&self, other: &Self) -> Self {
        self.neg().oplus(&other.neg()).neg()
    }

    /// `¬(¬x ∨ ¬y)`
    pub fn meet(&self, other: &Self) -> Self {
        self.neg().join(&other.neg()).neg()
    }

    /// `¬(¬x ⊕ y) ⊕ y`
    pub fn join(&self, other: &Self) -> Self {
        self.neg().oplus(other).neg().oplus(other)
    }
}

impl From<Tri> for MVScalar {
    fn from(t: Tri) -> Self {
        MVScalar(geom::tri_to_q(t))
    }
}

impl fmt::Display for MVScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An MV term. Variables are 0-based internally and written `x1, x2, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MVTerm {
    Var(usize),
    Const(MVScalar),
    Oplus(Box<MVTerm>, Box<MVTerm>),
    Neg(Box<MVTerm>),
    Odot(Box<MVTerm>, Box<MVTerm>),
    Meet(Box<MVTerm>, Box<MVTerm>),
    Join(Box<MVTerm>, Box<MVTerm>),
}

impl MVTerm {
    pub fn var(i: usize) -> Self {
        MVTerm::Var(i)
    }

    pub fn oplus(a: MVTerm, b: MVTerm) -> Self {
        MVTerm::Oplus(Box::new(a), Box::new(b))
    }

    pub fn neg(a: MVTerm) -> Self {
        MVTerm::Neg(Box::new(a))
    }

    pub fn odot(a: MVTerm, b: MVTerm) -> Self {
        MVTerm::Odot(Box::new(a), Box::new(b))
    }

    pub fn meet(a: MVTerm, b: MVTerm) -> Self {
        MVTerm::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: MVTerm, b: MVTerm) -> Self {
        MVTerm::Join(Box::new(a), Box::new(b))
    }

    /// One more than the largest variable index, or 0.
    pub fn arity(&self) -> usize {
        match self {
            MVTerm::Var(i) => i + 1,
            MVTerm::Const(_) => 0,
            MVTerm::Neg(a) => a.arity(),
            MVTerm::Oplus(a, b) | MVTerm::Odot(a, b) | MVTerm::Meet(a, b) | MVTerm::Join(a, b) => {
                a.arity().max(b.arity())
            }
        }
    }

    fn eval_unchecked(&self, point: &[MVScalar]) -> MVScalar {
        match self {
            MVTerm::Var(i) => point[*i].clone(),
            MVTerm::Const(c) => c.clone(),
            MVTerm::Neg(a) => a.eval_unchecked(point).neg(),
            MVTerm::Oplus(a, b) => a.eval_unchecked(point).oplus(&b.eval_unchecked(point)),
            MVTerm::Odot(a, b) => a.eval_unchecked(point).odot(&b.eval_unchecked(point)),
            MVTerm::Meet(a, b) => a.eval_unchecked(point).meet(&b.eval_unchecked(point)),
            MVTerm::Join(a, b) => a.eval_unchecked(point).join(&b.eval_unchecked(point)),
        }
    }

    /// Value in `K` of a term built from variables, `¬`, `∧`, `∨` and the
    /// constants `0`, `1/2`, `1`; `None` for any other term.
    pub fn eval_kleene(&self, point: &[Tri]) -> Option<Tri> {
        Some(match self {
            MVTerm::Var(i) => *point.get(*i)?,
            MVTerm::Const(c) => Tri::ALL.into_iter().find(|t| geom::tri_to_q(*t) == c.0)?,
            MVTerm::Neg(a) => a.eval_kleene(point)?.neg(),
            MVTerm::Meet(a, b) => a.eval_kleene(point)?.meet(b.eval_kleene(point)?),
            MVTerm::Join(a, b) => a.eval_kleene(point)?.join(b.eval_kleene(point)?),
            MVTerm::Oplus(..) | MVTerm::Odot(..) => return None,
        })
    }

    /// Value table on `{0,1/2,1}ⁿ` in canonical order, for Kleene terms.
    pub fn kleene_table(&self, n: usize) -> Option<Vec<Tri>> {
        tri::cube_points(n).iter().map(|p| self.eval_kleene(p)).collect()
    }
}

pub fn eval_term(t: &MVTerm, point: &[MVScalar]) -> Result<MVScalar, MvError> {
    let a = t.arity();
    if a > point.len() {
        return Err(MvError::Arity { used: a, arity: point.len() });
    }
    Ok(t.eval_unchecked(point))
}

impl fmt::Display for MVTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MVTerm::Var(i) => write!(f, "x{}", i + 1),
            MVTerm::Const(c) => write!(f, "{c}"),
            MVTerm::Neg(a) => write!(f, "(neg {a})"),
            MVTerm::Oplus(a, b) => write!(f, "(oplus {a} {b})"),
            MVTerm::Odot(a, b) => write!(f, "(odot {a} {b})"),
            MVTerm::Meet(a, b) => write!(f, "(meet {a} {b})"),
            MVTerm::Join(a, b) => write!(f, "(join {a} {b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, MvError> {
        Err(MvError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn atom(&mut self) -> &str {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| c.is_whitespace() || c == '(' || c == ')').unwrap_or(rest.len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn term(&mut self) -> Result<MVTerm, MvError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with('(') {
            self.pos += 1;
            self.skip_ws();
            let op = self.atom().to_string();
            let arity = match op.as_str() {
                "neg" => 1,
                "oplus" | "odot" | "meet" | "join" => 2,
                "" => return self.err("expected an operator"),
                other => return self.err(format!("unknown operator `{other}`")),
            };
            let a = self.term()?;
            let t = if arity == 1 {
                MVTerm::neg(a)
            } else {
                let b = self.term()?;
                match op.as_str() {
                    "oplus" => MVTerm::oplus(a, b),
                    "odot" => MVTerm::odot(a, b),
                    "meet" => MVTerm::meet(a, b),
                    _ => MVTerm::join(a, b),
                }
            };
            self.skip_ws();
            if !self.src[self.pos..].starts_with(')') {
                return self.err("expected `)`");
            }
            self.pos += 1;
            return Ok(t);
        }
        let start = self.pos;
        let atom = self.atom().to_string();
        if atom.is_empty() {
            return self.err("expected a term");
        }
        if let Some(idx) = atom.strip_prefix('x') {
            return match idx.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(MVTerm::Var(i - 1)),
                _ => Err(MvError::Parse { pos: start, msg: format!("bad variable `{atom}`") }),
            };
        }
        match Q::from_str(&atom).ok().map(MVScalar::new) {
            Some(Ok(c)) => Ok(MVTerm::Const(c)),
            _ => Err(MvError::Parse { pos: start, msg: format!("bad constant `{atom}`") }),
        }
    }
}

impl FromStr for MVTerm {
    type Err = MvError;

    /// Prefix s-expressions: `(oplus x1 (neg x2))`, constants as `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(t)
    }
}

/// A random term over `x1..xn`, `¬`, `∧`, `∨` and occasionally the
/// constants `0`, `1`.
pub fn random_kleene_term<R: Rng>(rng: &mut R, n: usize, depth: usize) -> MVTerm {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => MVTerm::Const(MVScalar::zero()),
            1 => MVTerm::Const(MVScalar::one()),
            _ => MVTerm::Var(rng.gen_range(0..n)),
        };
    }
    match rng.gen_range(0..3) {
        0 => MVTerm::neg(random_kleene_term(rng, n, depth - 1)),
        1 => MVTerm::meet(random_kleene_term(rng, n, depth - 1), random_kleene_term(rng, n, depth - 1)),
        _ => MVTerm::join(random_kleene_term(rng, n, depth - 1), random_kleene_term(rng, n, depth - 1)),
    }
}

/// The function linear on each simplex of a triangulation with the given
/// vertex values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    pub triangulation: Arc<RationalTriangulation>,
    pub values: Vec<Q>,
}

impl PLFunction {
    pub fn new(triangulation: Arc<RationalTriangulation>, values: Vec<Q>) -> Result<Self, MvError> {
        assert_eq!(values.len(), triangulation.vertices.len(), "one value per vertex");
        if let Some(v) = values.iter().find(|v| v.is_negative() || **v > Q::one()) {
            return Err(MvError::OutOfRange(v.to_string()));
        }
        Ok(PLFunction { triangulation, values })
    }

    pub fn eval_at(&self, loc: &Location) -> Q {
        loc.face.iter().zip(&loc.coords).map(|(&v, l)| &self.values[v] * l).sum()
    }

    pub fn eval(&self, x: &[Q]) -> Result<MVScalar, MvError> {
        let loc = self.triangulation.locate(x).ok_or_else(|| MvError::OutsideSupport(format_point(x)))?;
        Ok(MVScalar(self.eval_at(&loc)))
    }
}

pub fn eval_pl(f: &PLFunction, x: &[Q]) -> Result<MVScalar, MvError> {
    f.eval(x)
}

/// The Schauder hats of a regular triangulation, indexed like its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchauderBasis {
    pub triangulation: Arc<RationalTriangulation>,
    /// `mult[v] = den(v)`; the hat at `v` peaks at `1 / mult[v]`.
    pub mult: Vec<u64>,
}

impl SchauderBasis {
    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn peak(&self, v: usize) -> Q {
        Q::new(1.into(), self.mult[v].into())
    }

    pub fn hat(&self, v: usize) -> PLFunction {
        let mut values = vec![Q::zero(); self.len()];
        values[v] = self.peak(v);
        PLFunction { triangulation: self.triangulation.clone(), values }
    }

    /// Value of the hat at `v` on a located point.
    pub fn hat_at(&self, v: usize, loc: &Location) -> Q {
        match loc.face.iter().position(|&w| w == v) {
            Some(k) => &loc.coords[k] * self.peak(v),
            None => Q::zero(),
        }
    }

    /// `Σ mult(v) · h_v(x)`.
    pub fn partition_sum(&self, x: &[Q]) -> Result<Q, MvError> {
        let loc = self.triangulation.locate(x).ok_or_else(|| MvError::OutsideSupport(format_point(x)))?;
        Ok((0..self.len()).map(|v| Q::from_integer(self.mult[v].into()) * self.hat_at(v, &loc)).sum())
    }
}

pub fn schauder_basis(t: Arc<RationalTriangulation>) -> Result<SchauderBasis, MvError> {
    if !t.is_regular() {
        return Err(MvError::NotRegular);
    }
    let mult = t
        .weights()
        .iter()
        .map(|d| u64::try_from(d).expect("denominators fit in 64 bits"))
        .collect();
    let basis = SchauderBasis { triangulation: t, mult };
    for v in &basis.triangulation.vertices {
        if basis.partition_sum(v)? != Q::one() {
            return Err(MvError::PartitionFails(format_point(v)));
        }
    }
    Ok(basis)
}

/// The image of an element of `E(K̃ⁿ)` (a value table in canonical cube
/// order) as a function linear on `S_n`.
pub fn kleene_to_pl(table: &[Tri], s_n: Arc<RationalTriangulation>) -> Result<PLFunction, MvError> {
    let n = s_n.dim;
    let expected = 3usize.pow(n as u32);
    if table.len() != expected || s_n.vertices.len() != expected {
        return Err(GeomError::Arity { expected, found: table.len() }.into());
    }
    // S_n lists its vertices in canonical cube order
    PLFunction::new(s_n, table.iter().map(|t| geom::tri_to_q(*t)).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolReport {
    pub checked: usize,
    pub inside: usize,
    /// Points where the two memberships disagree.
    pub discrepancies: Vec<RationalVector>,
}

/// For each sample, compares "every pair of `Θ` agrees after `uₙ`" with
/// "the point lies in `|Σ_Θ|`".
pub fn sol_m_sampled(theta: &[TermPair], n: usize, samples: &[RationalVector]) -> Result<SolReport, MvError> {
    let s_n = Arc::new(geom::kleene_triangulation(n)?);
    let sigma = geom::sigma_theta(theta, n)?;
    let funcs = theta
        .iter()
        .map(|p| Ok((kleene_to_pl(&p.left, s_n.clone())?, kleene_to_pl(&p.right, s_n.clone())?)))
        .collect::<Result<Vec<_>, MvError>>()?;
    let mut report = SolReport::default();
    for x in samples {
        let loc = s_n.locate(x).ok_or_else(|| MvError::OutsideSupport(format_point(x)))?;
        let solves = funcs.iter().all(|(f, g)| f.eval_at(&loc) == g.eval_at(&loc));
        let inside = sigma.contains(x);
        report.checked += 1;
        report.inside += usize::from(inside);
        if solves != inside {
            report.discrepancies.push(x.clone());
        }
    }
    Ok(report)
}

/// Barycenters of the maximal simplices, located.
fn barycenters(t: &RationalTriangulation) -> Vec<Location> {
    t.simplices
        .iter()
        .map(|s| {
            let w = Q::new(1.into(), s.len().into());
            Location { face: s.clone(), coords: vec![w; s.len()] }
        })
        .collect()
}

/// Whether the meet of the hats in `set` is positive somewhere.
pub fn meet_positive(basis: &SchauderBasis, set: &[usize]) -> bool {
    barycenters(&basis.triangulation).iter().any(|b| set.iter().all(|&v| basis.hat_at(v, b).is_positive()))
}

/// The hats at `r` and `s` have nonzero meet.
pub fn is_starrable(basis: &SchauderBasis, r: usize, s: usize) -> bool {
    r != s && meet_positive(basis, &[r, s])
}

/// The Schauder basis over the Farey star of the edge `{v_r, v_s}`. Old
/// hats keep their index; the new hat has index `basis.len()`.
pub fn stellar_subdivide(basis: &SchauderBasis, r: usize, s: usize) -> Result<SchauderBasis, MvError> {
    if !is_starrable(basis, r, s) {
        return Err(MvError::NotStarrable(r, s));
    }
    let t = geom::farey_star(&basis.triangulation, r, s)?;
    schauder_basis(Arc::new(t))
}

/// The functions `b'_j` prescribed for the subdivision at `{r, s}`, as
/// values at an arbitrary point given the old hat values there.
fn starred_values(old: &[Q], r: usize, s: usize) -> Vec<Q> {
    let trunc = |a: &Q, b: &Q| {
        let d = a - b;
        if d.is_negative() {
            Q::zero()
        } else {
            d
        }
    };
    let mut out = old.to_vec();
    out[r] = trunc(&old[r], &old[s]);
    out[s] = trunc(&old[s], &old[r]);
    out.push(old[r].clone().min(old[s].clone()));
    out
}

fn hat_values(basis: &SchauderBasis, x: &[Q]) -> Result<Vec<Q>, MvError> {
    let loc = basis.triangulation.locate(x).ok_or_else(|| MvError::OutsideSupport(format_point(x)))?;
    Ok((0..basis.len()).map(|v| basis.hat_at(v, &loc)).collect())
}

/// A point where a subdivided hat disagrees with its prescribed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceMismatch {
    pub point: RationalVector,
    pub hat: usize,
    pub expected: Q,
    pub found: Q,
}

/// Compares the hats of `new` (from [`stellar_subdivide`] at `{r, s}`) with
/// `b_r ⊙ ¬b_s`, `b_s ⊙ ¬b_r`, `b_r ∧ b_s` and the unchanged hats of `old`.
pub fn stellar_coherence(
    old: &SchauderBasis,
    new: &SchauderBasis,
    r: usize,
    s: usize,
    samples: &[RationalVector],
) -> Result<Vec<CoherenceMismatch>, MvError> {
    let mut out = Vec::new();
    for x in samples {
        let expected = starred_values(&hat_values(old, x)?, r, s);
        let found = hat_values(new, x)?;
        for (hat, (e, f)) in expected.into_iter().zip(found).enumerate() {
            if e != f {
                out.push(CoherenceMismatch { point: x.clone(), hat, expected: e, found: f });
            }
        }
    }
    Ok(out)
}

/// The weighted complex of sets of hats with positive meet, weighted by
/// multipliers. Vertices are named by the coordinates of their peaks.
pub fn bowtie(basis: &SchauderBasis) -> crate::complex::WeightedComplex {
    use crate::complex::{AbstractComplex, WeightedComplex};
    let n = basis.len();
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..n).filter(|&v| meet_positive(basis, &[v])).map(|v| vec![v]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in frontier {
            let last = *set.last().expect("nonempty");
            let mut grew = false;
            for v in 0..n {
                if set.contains(&v) {
                    continue;
                }
                let mut bigger = set.clone();
                bigger.push(v);
                if meet_positive(basis, &bigger) {
                    grew = true;
                    if v > last {
                        next.push(bigger);
                    }
                }
            }
            if !grew {
                maximal.push(set);
            }
        }
        frontier = next;
    }
    let names = basis.triangulation.vertices.iter().map(|v| format_point(v)).collect();
    let complex = AbstractComplex::new(names, maximal).expect("hat indices are in range");
    WeightedComplex::new(complex, basis.mult.clone()).expect("multipliers are positive")
}

/// Checks the 1-regularity condition for the starrable pair `{r, s}`: for
/// every index set `I` with `(b_r ∧ b_s) ∧ ⋀_I b_i > 0` and every nonempty
/// `J ⊆ I` not containing both `r` and `s`, `(b_r ∧ b_s) ∧ ⋀_J b'_j > 0`.
///
/// All functions involved are linear on the Farey star at `{v_r, v_s}`, so
/// positivity is decided at the barycenters of its simplices.
pub fn one_regular_check(basis: &SchauderBasis, r: usize, s: usize) -> Result<bool, MvError> {
    if !is_starrable(basis, r, s) {
        return Err(MvError::NotStarrable(r, s));
    }
    let refined = geom::farey_star(&basis.triangulation, r, s)?;
    let t = basis.len();
    // old hats and starred functions at each vertex of the refinement
    let mut old_at = Vec::with_capacity(refined.vertices.len());
    let mut new_at = Vec::with_capacity(refined.vertices.len());
    for v in &refined.vertices {
        let vals = hat_values(basis, v)?;
        new_at.push(starred_values(&vals, r, s));
        old_at.push(vals);
    }
    let k = |n: usize| Q::new(1.into(), n.into());
    let at_bary = |table: &Vec<Vec<Q>>, simplex: &[usize], f: usize| -> Q {
        simplex.iter().map(|&v| table[v][f].clone()).sum::<Q>() * k(simplex.len())
    };
    // per simplex: is b_r ∧ b_s positive, which b_i and which b'_j are positive
    struct Cell {
        rs: bool,
        old: Vec<bool>,
        new: Vec<bool>,
    }
    let cells: Vec<Cell> = refined
        .simplices
        .iter()
        .map(|sx| {
            let old: Vec<bool> = (0..t).map(|i| at_bary(&old_at, sx, i).is_positive()).collect();
            let new: Vec<bool> = (0..t).map(|j| at_bary(&new_at, sx, j).is_positive()).collect();
            Cell { rs: old[r] && old[s], old, new }
        })
        .collect();
    for cell in cells.iter().filter(|c| c.rs) {
        let pos: Vec<usize> = (0..t).filter(|&i| cell.old[i]).collect();
        let candidates: Vec<Vec<usize>> = if pos.contains(&r) && pos.contains(&s) {
            vec![pos.iter().copied().filter(|&i| i != r).collect(), pos.iter().copied().filter(|&i| i != s).collect()]
        } else {
            vec![pos]
        };
        for j in candidates.into_iter().filter(|j| !j.is_empty()) {
            if !cells.iter().any(|c| c.rs && j.iter().all(|&i| c.new[i])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// 1-regularity at every starrable pair, repeated on every stellar
/// subdivision down to `depth` further levels.
pub fn is_regular_basis(basis: &SchauderBasis, depth: usize) -> Result<bool, MvError> {
    for (r, s) in basis.triangulation.edges() {
        if !one_regular_check(basis, r, s)? {
            return Ok(false);
        }
        if depth > 0 && !is_regular_basis(&stellar_subdivide(basis, r, s)?, depth - 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{kleene_triangulation, ratio};

    fn s(n: i64, d: i64) -> MVScalar {
        MVScalar::new(ratio(n, d)).unwrap()
    }

    #[test]
    fn scalar_ops() {
        assert_eq!(s(1, 2).oplus(&s(1, 2)), MVScalar::one());
        assert_eq!(s(1, 2).neg(), s(1, 2));
        assert_eq!(s(3, 4).odot(&s(1, 2)), s(1, 4));
        assert_eq!(s(1, 3).meet(&s(2, 3)), s(1, 3));
        assert_eq!(s(1, 3).join(&s(2, 3)), s(2, 3));
        assert!(MVScalar::new(ratio(3, 2)).is_err());
    }

    #[test]
    fn term_evaluation() {
        let t: MVTerm = "(join x1 (neg x1))".parse().unwrap();
        assert_eq!(eval_term(&t, &[s(1, 2)]).unwrap(), s(1, 2));
        let t: MVTerm = "(oplus x1 x1)".parse().unwrap();
        assert_eq!(eval_term(&t, &[s(1, 3)]).unwrap(), s(2, 3));
        assert!(matches!(eval_term(&t, &[]), Err(MvError::Arity { .. })));
    }

    #[test]
    fn term_round_trips_through_text() {
        let text = "(odot (meet x1 1/3) (neg (oplus x2 0)))";
        let t: MVTerm = text.parse().unwrap();
        assert_eq!(t.to_string(), text);
        assert!("(foo x1)".parse::<MVTerm>().is_err());
        assert!("(neg x1".parse::<MVTerm>().is_err());
        assert!("x0".parse::<MVTerm>().is_err());
        assert!("3/2".parse::<MVTerm>().is_err());
    }

    #[test]
    fn schauder_basis_over_s1() {
        let b = schauder_basis(Arc::new(kleene_triangulation(1).unwrap())).unwrap();
        assert_eq!(b.mult, vec![1, 2, 1]);
        let half = b.hat(1);
        assert_eq!(eval_pl(&half, &[ratio(1, 4)]).unwrap(), s(1, 4));
        assert_eq!(b.partition_sum(&[ratio(1, 4)]).unwrap(), Q::one());
        assert_eq!(eval_pl(&b.hat(0), &[ratio(0, 1)]).unwrap(), MVScalar::one());
    }

    #[test]
    fn projection_interpolates() {
        let s2 = Arc::new(kleene_triangulation(2).unwrap());
        let rho1 = crate::space::projection(2, 0);
        let f = kleene_to_pl(&rho1, s2.clone()).unwrap();
        assert_eq!(f.eval(&[ratio(1, 4), ratio(3, 4)]).unwrap(), s(1, 4));
        let t: MVTerm = "(join x1 (neg x1))".parse().unwrap();
        let g = kleene_to_pl(&t.kleene_table(2).unwrap(), s2).unwrap();
        for k in 0..=6 {
            assert_eq!(g.eval(&[ratio(1, 2), ratio(k, 6)]).unwrap(), s(1, 2));
        }
    }

    #[test]
    fn stellar_subdivision_of_s1() {
        let b = schauder_basis(Arc::new(kleene_triangulation(1).unwrap())).unwrap();
        let sub = stellar_subdivide(&b, 0, 1).unwrap();
        assert_eq!(sub.triangulation.vertices[3], vec![ratio(1, 3)]);
        assert_eq!(sub.mult[3], 3);
        let x = [ratio(1, 3)];
        let m = hat_values(&b, &x).unwrap();
        assert_eq!(m[0].clone().min(m[1].clone()), ratio(1, 3));
        assert_eq!(eval_pl(&sub.hat(3), &x).unwrap(), s(1, 3));
        assert!(stellar_coherence(&b, &sub, 0, 1, &[x.to_vec(), vec![ratio(1, 5)], vec![ratio(3, 7)]])
            .unwrap()
            .is_empty());
        assert!(matches!(stellar_subdivide(&b, 0, 2), Err(MvError::NotStarrable(0, 2))));
    }

    #[test]
    fn disjoint_segments_are_not_starrable() {
        let t = RationalTriangulation::new(
            1,
            vec![vec![ratio(0, 1)], vec![ratio(1, 3)], vec![ratio(1, 2)], vec![ratio(1, 1)]],
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        let b = schauder_basis(Arc::new(t)).unwrap();
        assert!(matches!(stellar_subdivide(&b, 1, 2), Err(MvError::NotStarrable(1, 2))));
    }

    #[test]
    fn bowtie_matches_sc_of_s2() {
        let s2 = Arc::new(kleene_triangulation(2).unwrap());
        let b = schauder_basis(s2.clone()).unwrap();
        assert_eq!(bowtie(&b), geom::sc_of(&s2));
    }

    #[test]
    fn schauder_bases_are_regular() {
        let s1 = schauder_basis(Arc::new(kleene_triangulation(1).unwrap())).unwrap();
        assert!(is_regular_basis(&s1, 1).unwrap());
        let point = RationalTriangulation::new(1, vec![vec![ratio(1, 2)]], vec![vec![0]]).unwrap();
        let single = schauder_basis(Arc::new(point)).unwrap();
        assert!(is_regular_basis(&single, 1).unwrap());
    }

    #[test]
    fn non_regular_triangulation_has_no_basis() {
        let t = RationalTriangulation::new(
            2,
            vec![vec![ratio(0, 1), ratio(0, 1)], vec![ratio(1, 1), ratio(0, 1)], vec![ratio(1, 2), ratio(1, 3)]],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        assert_eq!(schauder_basis(Arc::new(t)), Err(MvError::NotRegular));
    }
}
