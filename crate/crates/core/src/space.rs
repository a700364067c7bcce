//! Kleene spaces and the dual functors.
//!
//! A Kleene space `(W, ≤, R, M)` is a finite poset with a binary relation `R`
//! and a set `M` of maximal points such that
//!
//! * `(x, x) ∈ R`,
//! * `(x, y) ∈ R` and `x ∈ M` imply `y ≤ x`,
//! * `(x, y) ∈ R` and `z ≤ y` imply `(z, x) ∈ R`.
//!
//! `D(B)` is the set of homomorphisms `B → K` and `E(X)` the set of
//! morphisms `X → K̃`, both with pointwise structure.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, AlgebraError, FiniteKleeneAlgebra, KleeneHom, MAX_CARRIER};
use crate::tri::{self, Tri};
use crate::validation::{self, Collector, ValidationReport, Violation};

/// Default bound on the exponent accepted by [`power_space`].
pub const DEFAULT_MAX_POWER: usize = 4;

/// The space file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub points: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(rename = "R")]
    pub rel: Vec<(String, String)>,
    #[serde(rename = "M")]
    pub marked: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceLaw {
    Antisymmetry,
    MarkedMaximal,
    Reflexive,
    MarkedBelow,
    DownClosed,
}

impl fmt::Display for SpaceLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceLaw::Antisymmetry => "antisymmetry of leq",
            SpaceLaw::MarkedMaximal => "M consists of maximal points",
            SpaceLaw::Reflexive => "(i) R is reflexive",
            SpaceLaw::MarkedBelow => "(ii) (x,y) in R and x in M imply y <= x",
            SpaceLaw::DownClosed => "(iii) (x,y) in R and z <= y imply (z,x) in R",
        };
        f.write_str(s)
    }
}

pub type SpaceReport = ValidationReport<SpaceLaw>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MalformedSpace {
    #[error("duplicate point name `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{name}` referenced in {context}")]
    Dangling { name: String, context: &'static str },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("malformed space: {0}")]
    Malformed(#[from] MalformedSpace),
    #[error("not a Kleene space: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation<SpaceLaw>>),
    #[error("power K~^{n} refused (limit {limit})")]
    PowerLimit { n: usize, limit: usize },
    #[error("dual algebra would have {0} elements, above the limit of {MAX_CARRIER}")]
    TooLarge(usize),
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("table is not a morphism K~^{0} -> K~")]
    NotMorphism(usize),
    #[error("point {0} lies in W")]
    PointInSubset(String),
    #[error("duplicate point {0} in subset")]
    DuplicateInSubset(String),
    #[error("map is not a homomorphism between the given algebras")]
    NotHomomorphism,
    #[error("map is not a morphism between the given spaces")]
    NotSpaceMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleeneSpace {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    rel: Vec<Vec<bool>>,
    marked: Vec<bool>,
}

struct Resolved {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    rel: Vec<Vec<bool>>,
    marked: Vec<bool>,
    closure_added: usize,
}

fn resolve(spec: &SpaceSpec) -> Result<Resolved, MalformedSpace> {
    let n = spec.points.len();
    let mut index = HashMap::with_capacity(n);
    for (i, name) in spec.points.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(MalformedSpace::DuplicatePoint(name.clone()));
        }
    }
    let lookup = |name: &str, context: &'static str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| MalformedSpace::Dangling { name: name.to_string(), context })
    };
    let mut leq = vec![vec![false; n]; n];
    for (a, b) in &spec.leq {
        leq[lookup(a, "leq")?][lookup(b, "leq")?] = true;
    }
    let mut rel = vec![vec![false; n]; n];
    for (a, b) in &spec.rel {
        rel[lookup(a, "R")?][lookup(b, "R")?] = true;
    }
    let mut marked = vec![false; n];
    for m in &spec.marked {
        marked[lookup(m, "M")?] = true;
    }
    let closure_added = validation::close_order(&mut leq);
    Ok(Resolved { names: spec.points.clone(), leq, rel, marked, closure_added })
}

fn check_laws(names: &[String], leq: &[Vec<bool>], rel: &[Vec<bool>], marked: &[bool]) -> Vec<Violation<SpaceLaw>> {
    let n = names.len();
    let name = |i: usize| names[i].clone();
    let mut c = Collector::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if leq[a][b] && leq[b][a] {
                c.record(SpaceLaw::Antisymmetry, || vec![name(a), name(b)]);
            }
        }
    }
    for x in (0..n).filter(|&x| marked[x]) {
        if let Some(y) = (0..n).find(|&y| y != x && leq[x][y]) {
            c.record(SpaceLaw::MarkedMaximal, || vec![name(x), name(y)]);
        }
    }
    for x in 0..n {
        if !rel[x][x] {
            c.record(SpaceLaw::Reflexive, || vec![name(x)]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !rel[x][y] {
                continue;
            }
            if marked[x] && !leq[y][x] {
                c.record(SpaceLaw::MarkedBelow, || vec![name(x), name(y)]);
            }
            for z in 0..n {
                if leq[z][y] && !rel[z][x] {
                    c.record(SpaceLaw::DownClosed, || vec![name(x), name(y), name(z)]);
                }
            }
        }
    }
    c.finish()
}

/// Checks the Kleene-space axioms on a parsed space document. The order is
/// closed reflexively and transitively first; `R` is taken as given.
pub fn validate_space(spec: &SpaceSpec) -> Result<SpaceReport, MalformedSpace> {
    let r = resolve(spec)?;
    let violations = check_laws(&r.names, &r.leq, &r.rel, &r.marked);
    Ok(ValidationReport { closure_added: r.closure_added, violations })
}

impl KleeneSpace {
    pub fn from_spec(spec: &SpaceSpec) -> Result<Self, SpaceError> {
        let r = resolve(spec)?;
        Self::new(r.names, r.leq, r.rel, r.marked)
    }

    /// Builds a space from matrices; `leq` must already be reflexive and
    /// transitive.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>, rel: Vec<Vec<bool>>, marked: Vec<bool>) -> Result<Self, SpaceError> {
        let violations = check_laws(&names, &leq, &rel, &marked);
        if !violations.is_empty() {
            return Err(SpaceError::Invalid(violations));
        }
        Ok(KleeneSpace { names, leq, rel, marked })
    }

    pub fn validate(&self) -> SpaceReport {
        ValidationReport { closure_added: 0, violations: check_laws(&self.names, &self.leq, &self.rel, &self.marked) }
    }

    pub fn empty() -> Self {
        KleeneSpace { names: vec![], leq: vec![], rel: vec![], marked: vec![] }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn rel(&self, a: usize, b: usize) -> bool {
        self.rel[a][b]
    }

    pub fn is_marked(&self, a: usize) -> bool {
        self.marked[a]
    }

    pub fn leq_matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn marked(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.marked[x]).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| (0..self.len()).all(|y| y == x || !self.leq[x][y])).collect()
    }

    /// All pairs of `R`, in index order.
    pub fn rel_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.rel[a][b]).collect()
    }

    pub fn to_spec(&self) -> SpaceSpec {
        let n = self.len();
        let pairs = |m: &Vec<Vec<bool>>| {
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| m[a][b])
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect()
        };
        SpaceSpec {
            points: self.names.clone(),
            leq: pairs(&self.leq),
            rel: pairs(&self.rel),
            marked: self.marked().into_iter().map(|i| self.names[i].clone()).collect(),
        }
    }

    fn from_points(points: &[Vec<Tri>]) -> Self {
        let names = points.iter().map(|p| tri::point_name(p)).collect();
        let leq = points.iter().map(|a| points.iter().map(|b| tri::vec_space_le(a, b)).collect()).collect();
        let rel = points.iter().map(|a| points.iter().map(|b| tri::vec_sim(a, b)).collect()).collect();
        let marked = points.iter().map(|p| tri::vec_is_boolean(p)).collect();
        KleeneSpace { names, leq, rel, marked }
    }
}

/// `K̃ = ({0,1/2,1}, ⪯, ∼, {0,1})`. Point `i` corresponds to
/// [`Tri::from_index`]`(i)`.
pub fn ktilde() -> KleeneSpace {
    KleeneSpace::from_points(&tri::cube_points(1))
}

/// `K̃ⁿ` with points in canonical cube order.
pub fn power_space(n: usize) -> Result<KleeneSpace, SpaceError> {
    power_space_with_limit(n, DEFAULT_MAX_POWER)
}

pub fn power_space_with_limit(n: usize, limit: usize) -> Result<KleeneSpace, SpaceError> {
    if n == 0 || n > limit {
        return Err(SpaceError::PowerLimit { n, limit });
    }
    Ok(KleeneSpace::from_points(&tri::cube_points(n)))
}

/// A morphism of Kleene spaces stored as the image of each source point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceMorphism {
    pub map: Vec<usize>,
}

impl SpaceMorphism {
    pub fn identity(x: &KleeneSpace) -> Self {
        SpaceMorphism { map: (0..x.len()).collect() }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &SpaceMorphism) -> SpaceMorphism {
        SpaceMorphism { map: first.map.iter().map(|&x| self.map[x]).collect() }
    }
}

pub fn is_space_morphism(f: &SpaceMorphism, x: &KleeneSpace, y: &KleeneSpace) -> bool {
    if f.map.len() != x.len() || f.map.iter().any(|&v| v >= y.len()) {
        return false;
    }
    (0..x.len()).all(|a| {
        (!x.is_marked(a) || y.is_marked(f.map[a]))
            && (0..x.len()).all(|b| {
                (!x.leq(a, b) || y.leq(f.map[a], f.map[b])) && (!x.rel(a, b) || y.rel(f.map[a], f.map[b]))
            })
    })
}

struct MorphismSearch<'a> {
    src: &'a KleeneSpace,
    tgt: &'a KleeneSpace,
    order: Vec<usize>,
    iso: bool,
    limit: Option<usize>,
    found: Vec<Vec<usize>>,
}

impl MorphismSearch<'_> {
    fn fits(&self, map: &[usize], assigned: &[usize], used: &[bool], x: usize, v: usize) -> bool {
        let (s, t) = (self.src, self.tgt);
        if self.iso {
            if used[v] || s.is_marked(x) != t.is_marked(v) || s.rel(x, x) != t.rel(v, v) {
                return false;
            }
        } else if s.is_marked(x) && !t.is_marked(v) {
            return false;
        }
        if !self.iso && s.rel(x, x) && !t.rel(v, v) {
            return false;
        }
        assigned.iter().all(|&y| {
            let w = map[y];
            let pairs = [
                (s.leq(x, y), t.leq(v, w)),
                (s.leq(y, x), t.leq(w, v)),
                (s.rel(x, y), t.rel(v, w)),
                (s.rel(y, x), t.rel(w, v)),
            ];
            if self.iso {
                pairs.iter().all(|(a, b)| a == b)
            } else {
                pairs.iter().all(|(a, b)| !a || *b)
            }
        })
    }

    fn run(&mut self) {
        let n = self.src.len();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; self.tgt.len()];
        let mut assigned = Vec::with_capacity(n);
        self.step(&mut map, &mut used, &mut assigned);
    }

    fn step(&mut self, map: &mut Vec<usize>, used: &mut Vec<bool>, assigned: &mut Vec<usize>) {
        if self.limit.is_some_and(|l| self.found.len() >= l) {
            return;
        }
        let Some(&x) = self.order.get(assigned.len()) else {
            self.found.push(map.clone());
            return;
        };
        for v in 0..self.tgt.len() {
            if self.fits(map, assigned, used, x, v) {
                map[x] = v;
                used[v] = true;
                assigned.push(x);
                self.step(map, used, assigned);
                assigned.pop();
                used[v] = false;
                map[x] = usize::MAX;
            }
        }
    }
}

fn search(src: &KleeneSpace, tgt: &KleeneSpace, iso: bool, limit: Option<usize>) -> Vec<Vec<usize>> {
    let mut s = MorphismSearch { src, tgt, order: validation::linear_extension(&src.leq), iso, limit, found: Vec::new() };
    s.run();
    s.found
}

/// All morphisms `x → y`, sorted by value table.
pub fn morphisms(x: &KleeneSpace, y: &KleeneSpace) -> Vec<SpaceMorphism> {
    let mut found: Vec<SpaceMorphism> = search(x, y, false, None).into_iter().map(|map| SpaceMorphism { map }).collect();
    found.sort();
    found
}

fn profile(x: &KleeneSpace) -> Vec<(usize, usize, usize, bool)> {
    let n = x.len();
    let mut p: Vec<_> = (0..n)
        .map(|a| {
            let down = (0..n).filter(|&b| x.leq(b, a)).count();
            let up = (0..n).filter(|&b| x.leq(a, b)).count();
            let r = (0..n).filter(|&b| x.rel(a, b)).count();
            (down, up, r, x.is_marked(a))
        })
        .collect();
    p.sort_unstable();
    p
}

/// A bijection `x → y` preserving and reflecting `≤`, `R` and `M`.
pub fn is_isomorphic_space(x: &KleeneSpace, y: &KleeneSpace) -> Option<SpaceMorphism> {
    if x.len() != y.len() || profile(x) != profile(y) {
        return None;
    }
    search(x, y, true, Some(1)).into_iter().next().map(|map| SpaceMorphism { map })
}

/// `D(B)` together with the homomorphism behind each point.
#[derive(Clone, Debug)]
pub struct AlgebraDual {
    pub space: KleeneSpace,
    /// Point `i` of `space` is `homs[i]: B → K`.
    pub homs: Vec<KleeneHom>,
}

pub fn dual_d(b: &FiniteKleeneAlgebra) -> AlgebraDual {
    let k = algebra::standard_k();
    let homs = algebra::hom_enumerate(b, &k);
    let vals: Vec<Vec<Tri>> = homs.iter().map(|h| h.as_tri()).collect();
    let names = (0..homs.len()).map(|i| format!("h{i}")).collect();
    let leq = vals.iter().map(|a| vals.iter().map(|c| tri::vec_space_le(a, c)).collect()).collect();
    let rel = vals.iter().map(|a| vals.iter().map(|c| tri::vec_sim(a, c)).collect()).collect();
    let marked = vals.iter().map(|v| tri::vec_is_boolean(v)).collect();
    AlgebraDual { space: KleeneSpace { names, leq, rel, marked }, homs }
}

/// `E(X)` together with the morphism behind each element.
#[derive(Clone, Debug)]
pub struct SpaceDual {
    pub algebra: FiniteKleeneAlgebra,
    /// Element `i` of `algebra` is the morphism with value table `tables[i]`.
    pub tables: Vec<Vec<Tri>>,
}

impl SpaceDual {
    pub fn index_of(&self, table: &[Tri]) -> Option<usize> {
        self.tables.binary_search_by(|t| t.as_slice().cmp(table)).ok()
    }
}

fn table_name(t: &[Tri]) -> String {
    let parts: Vec<&str> = t.iter().map(|v| v.as_str()).collect();
    format!("<{}>", parts.join(","))
}

/// Elements are the morphisms `X → K̃`, sorted lexicographically by value
/// table and named `<v1,...,vk>`.
pub fn dual_e(x: &KleeneSpace) -> Result<SpaceDual, SpaceError> {
    let found = search(x, &ktilde(), false, None);
    if found.len() > MAX_CARRIER {
        return Err(SpaceError::TooLarge(found.len()));
    }
    let mut tables: Vec<Vec<Tri>> =
        found.into_iter().map(|m| m.into_iter().map(|i| Tri::ALL[i]).collect()).collect();
    tables.sort();
    let n = tables.len();
    let index: HashMap<&[Tri], usize> = tables.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let pointwise = |f: &dyn Fn(Tri, Tri) -> Tri| -> Vec<Vec<usize>> {
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let t: Vec<Tri> = tables[a].iter().zip(&tables[b]).map(|(p, q)| f(*p, *q)).collect();
                        index[t.as_slice()]
                    })
                    .collect()
            })
            .collect()
    };
    let meet = pointwise(&Tri::meet);
    let join = pointwise(&Tri::join);
    let neg = tables
        .iter()
        .map(|t| index[t.iter().map(|v| v.neg()).collect::<Vec<_>>().as_slice()])
        .collect();
    let bot = index[vec![Tri::Zero; x.len()].as_slice()];
    let top = index[vec![Tri::One; x.len()].as_slice()];
    let names = tables.iter().map(|t| table_name(t)).collect();
    let algebra = FiniteKleeneAlgebra::from_tables(names, meet, join, neg, bot, top);
    Ok(SpaceDual { algebra, tables })
}

/// `D(f)`: for `f: A → B`, the morphism `D(B) → D(A)`, `h ↦ h ∘ f`.
pub fn d_on_hom(
    f: &KleeneHom,
    a: &FiniteKleeneAlgebra,
    b: &FiniteKleeneAlgebra,
    da: &AlgebraDual,
    db: &AlgebraDual,
) -> Result<SpaceMorphism, SpaceError> {
    if !algebra::is_homomorphism(f, a, b) {
        return Err(SpaceError::NotHomomorphism);
    }
    let map = db
        .homs
        .iter()
        .map(|h| {
            let composed = h.compose(f);
            da.homs.iter().position(|g| *g == composed).expect("a composite of homomorphisms is a homomorphism")
        })
        .collect();
    Ok(SpaceMorphism { map })
}

/// `E(g)`: for `g: X → Y`, the homomorphism `E(Y) → E(X)`, `h ↦ h ∘ g`.
pub fn e_on_morphism(
    g: &SpaceMorphism,
    x: &KleeneSpace,
    y: &KleeneSpace,
    ex: &SpaceDual,
    ey: &SpaceDual,
) -> Result<KleeneHom, SpaceError> {
    if !is_space_morphism(g, x, y) {
        return Err(SpaceError::NotSpaceMorphism);
    }
    let map = ey
        .tables
        .iter()
        .map(|h| {
            let composed: Vec<Tri> = g.map.iter().map(|&p| h[p]).collect();
            ex.index_of(&composed).expect("a composite of morphisms is a morphism")
        })
        .collect();
    Ok(KleeneHom { map })
}

/// Whether `table` (in canonical cube order) is a morphism `K̃ⁿ → K̃`.
pub fn is_morphism_table(n: usize, table: &[Tri]) -> bool {
    let points = tri::cube_points(n);
    if table.len() != points.len() {
        return false;
    }
    points.iter().enumerate().all(|(i, p)| {
        (!tri::vec_is_boolean(p) || table[i].is_boolean())
            && points.iter().enumerate().all(|(j, q)| {
                (!tri::vec_space_le(p, q) || table[i].space_le(table[j]))
                    && (!tri::vec_sim(p, q) || table[i].sim(table[j]))
            })
    })
}

/// The projection `ρᵢ: K̃ⁿ → K̃` (0-based `i`) as a value table.
pub fn projection(n: usize, i: usize) -> Vec<Tri> {
    tri::cube_points(n).into_iter().map(|p| p[i]).collect()
}

/// A pair of elements of `E(K̃ⁿ)` given by value tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermPair {
    pub arity: usize,
    pub left: Vec<Tri>,
    pub right: Vec<Tri>,
}

impl TermPair {
    pub fn new(arity: usize, left: Vec<Tri>, right: Vec<Tri>) -> Result<Self, SpaceError> {
        for t in [&left, &right] {
            let expected = 3usize.pow(arity as u32);
            if t.len() != expected {
                return Err(SpaceError::Arity { expected, found: t.len() });
            }
            if !is_morphism_table(arity, t) {
                return Err(SpaceError::NotMorphism(arity));
            }
        }
        Ok(TermPair { arity, left, right })
    }

    pub fn holds_at(&self, p: &[Tri]) -> bool {
        let i = tri::cube_index(p);
        self.left[i] == self.right[i]
    }
}

/// `Sol_K(Θ)`: the points of `{0,1/2,1}ⁿ` where every pair agrees, in
/// canonical order.
pub fn sol_k(theta: &[TermPair], n: usize) -> Result<Vec<Vec<Tri>>, SpaceError> {
    if let Some(bad) = theta.iter().find(|t| t.arity != n) {
        return Err(SpaceError::Arity { expected: n, found: bad.arity });
    }
    Ok(tri::cube_points(n).into_iter().filter(|p| theta.iter().all(|t| t.holds_at(p))).collect())
}

fn check_subset(w: &[Vec<Tri>]) -> Result<usize, SpaceError> {
    let n = w.first().map_or(0, |p| p.len());
    let mut seen = BTreeSet::new();
    for p in w {
        if p.len() != n {
            return Err(SpaceError::Arity { expected: n, found: p.len() });
        }
        if !seen.insert(p) {
            return Err(SpaceError::DuplicateInSubset(tri::point_name(p)));
        }
    }
    Ok(n)
}

/// The subspace of `K̃ⁿ` on `w`, keeping the order of `w`.
pub fn subspace_from_subset(w: &[Vec<Tri>]) -> Result<KleeneSpace, SpaceError> {
    check_subset(w)?;
    Ok(KleeneSpace::from_points(w))
}

/// For `x ∉ W`, a pair `(f, g)` of morphisms `K̃ⁿ → K̃` that agree on `W`
/// and differ at `x`.
pub fn separating_pair(x: &[Tri], w: &[Vec<Tri>], n: usize) -> Result<TermPair, SpaceError> {
    if x.len() != n {
        return Err(SpaceError::Arity { expected: n, found: x.len() });
    }
    if let Some(p) = w.iter().find(|p| p.len() != n) {
        return Err(SpaceError::Arity { expected: n, found: p.len() });
    }
    if w.iter().any(|p| p == x) {
        return Err(SpaceError::PointInSubset(tri::point_name(x)));
    }
    let above_x: Vec<&Vec<Tri>> = w.iter().filter(|z| tri::vec_space_le(x, z)).collect();
    let points = tri::cube_points(n);
    let f = points
        .iter()
        .map(|y| {
            if above_x.iter().any(|z| tri::vec_space_le(z, y)) {
                Tri::One
            } else if tri::vec_is_boolean(y) {
                Tri::Zero
            } else {
                Tri::Half
            }
        })
        .collect();
    let g = points
        .iter()
        .map(|z| {
            if tri::vec_space_le(x, z) {
                Tri::One
            } else if tri::vec_is_boolean(z) {
                Tri::Zero
            } else {
                Tri::Half
            }
        })
        .collect();
    TermPair::new(n, f, g)
}

/// The separating pairs of every point outside `w`.
pub fn separating_family(w: &[Vec<Tri>], n: usize) -> Result<Vec<TermPair>, SpaceError> {
    check_subset(w)?;
    tri::cube_points(n).iter().filter(|x| !w.contains(x)).map(|x| separating_pair(x, w, n)).collect()
}

impl From<SpaceError> for AlgebraError {
    fn from(e: SpaceError) -> Self {
        AlgebraError::Space(Box::new(e))
    }
}
