//! Finite Kleene algebras.
//!
//! A Kleene algebra is a bounded distributive lattice with an involutive
//! negation satisfying De Morgan's law and the Kleene law
//! `(x ∧ ¬x) ∨ (y ∨ ¬y) = y ∨ ¬y`. Algebras are given by their order
//! relation; meet and join tables are derived once at construction.
//!
//! Elements are addressed by index. The order of the `elements` list is the
//! canonical element order, and every enumeration in this module is
//! deterministic with respect to it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::{self, SpaceError};
use crate::tri::Tri;
use crate::validation::{self, Collector, ValidationReport, Violation};

/// Carriers above this size are refused: the derived tables are quadratic.
pub const MAX_CARRIER: usize = 4096;

/// Default bound on the number of generators accepted by [`free_kleene`].
pub const DEFAULT_MAX_GENERATORS: usize = 3;

/// The algebra file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub elements: Vec<String>,
    /// Any relation whose reflexive-transitive closure is the lattice order.
    pub leq: Vec<(String, String)>,
    pub neg: BTreeMap<String, String>,
    pub bot: String,
    pub top: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Law {
    Antisymmetry,
    Bottom,
    Top,
    MeetExists,
    JoinExists,
    Distributivity,
    Involution,
    NegBottom,
    DeMorgan,
    Kleene,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Antisymmetry => "antisymmetry of leq",
            Law::Bottom => "bot is least",
            Law::Top => "top is greatest",
            Law::MeetExists => "existence of meets",
            Law::JoinExists => "existence of joins",
            Law::Distributivity => "distributivity",
            Law::Involution => "neg(neg x) = x",
            Law::NegBottom => "neg(bot) = top",
            Law::DeMorgan => "De Morgan law",
            Law::Kleene => "Kleene law",
        };
        f.write_str(s)
    }
}

pub type AlgebraReport = ValidationReport<Law>;

/// Structural problems that prevent law checking at all.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MalformedAlgebra {
    #[error("algebra has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{name}` referenced in {context}")]
    Dangling { name: String, context: &'static str },
    #[error("negation is not defined on `{0}`")]
    NegNotTotal(String),
    #[error("carrier of {0} elements exceeds the limit of {MAX_CARRIER}")]
    TooLarge(usize),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed algebra: {0}")]
    Malformed(#[from] MalformedAlgebra),
    #[error("not a Kleene algebra: {}", display_violations(.0))]
    Invalid(Vec<Violation<Law>>),
    #[error("subset is not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("free Kleene algebra on {n} generators refused (limit {limit})")]
    GeneratorLimit { n: usize, limit: usize },
    #[error(transparent)]
    Space(#[from] Box<SpaceError>),
}

fn display_violations(v: &[Violation<Law>]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteKleeneAlgebra {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    neg: Vec<usize>,
    bot: usize,
    top: usize,
}

struct Resolved {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    neg: Vec<usize>,
    bot: usize,
    top: usize,
    closure_added: usize,
}

fn resolve(spec: &AlgebraSpec) -> Result<Resolved, MalformedAlgebra> {
    let n = spec.elements.len();
    if n == 0 {
        return Err(MalformedAlgebra::Empty);
    }
    if n > MAX_CARRIER {
        return Err(MalformedAlgebra::TooLarge(n));
    }
    let mut index = HashMap::with_capacity(n);
    for (i, name) in spec.elements.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(MalformedAlgebra::DuplicateElement(name.clone()));
        }
    }
    let lookup = |name: &str, context: &'static str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| MalformedAlgebra::Dangling { name: name.to_string(), context })
    };
    let mut leq = vec![vec![false; n]; n];
    for (a, b) in &spec.leq {
        leq[lookup(a, "leq")?][lookup(b, "leq")?] = true;
    }
    let mut neg = vec![usize::MAX; n];
    for (a, b) in &spec.neg {
        neg[lookup(a, "neg")?] = lookup(b, "neg")?;
    }
    if let Some(i) = neg.iter().position(|&x| x == usize::MAX) {
        return Err(MalformedAlgebra::NegNotTotal(spec.elements[i].clone()));
    }
    let bot = lookup(&spec.bot, "bot")?;
    let top = lookup(&spec.top, "top")?;
    let closure_added = validation::close_order(&mut leq);
    Ok(Resolved { names: spec.elements.clone(), leq, neg, bot, top, closure_added })
}

/// Greatest lower bound of `a` and `b`, if one exists.
fn glb(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let lower: Vec<usize> = (0..n).filter(|&x| leq[x][a] && leq[x][b]).collect();
    lower.iter().copied().find(|&m| lower.iter().all(|&x| leq[x][m]))
}

fn lub(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let upper: Vec<usize> = (0..n).filter(|&x| leq[a][x] && leq[b][x]).collect();
    upper.iter().copied().find(|&m| upper.iter().all(|&x| leq[m][x]))
}

type Tables = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Runs every law check. Returns the derived tables when the order is a
/// lattice, whether or not the algebraic laws hold.
fn check_laws(r: &Resolved) -> (Vec<Violation<Law>>, Option<Tables>) {
    let n = r.names.len();
    let name = |i: usize| r.names[i].clone();
    let mut c = Collector::new();

    for a in 0..n {
        for b in (a + 1)..n {
            if r.leq[a][b] && r.leq[b][a] {
                c.record(Law::Antisymmetry, || vec![name(a), name(b)]);
            }
        }
    }
    if !c.is_empty() {
        return (c.finish(), None);
    }
    for x in 0..n {
        if !r.leq[r.bot][x] {
            c.record(Law::Bottom, || vec![name(x)]);
        }
        if !r.leq[x][r.top] {
            c.record(Law::Top, || vec![name(x)]);
        }
    }
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in a..n {
            match glb(&r.leq, a, b) {
                Some(m) => {
                    meet[a][b] = m;
                    meet[b][a] = m;
                }
                None => c.record(Law::MeetExists, || vec![name(a), name(b)]),
            }
            match lub(&r.leq, a, b) {
                Some(j) => {
                    join[a][b] = j;
                    join[b][a] = j;
                }
                None => c.record(Law::JoinExists, || vec![name(a), name(b)]),
            }
        }
    }
    if c.has(Law::MeetExists) || c.has(Law::JoinExists) {
        return (c.finish(), None);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = meet[x][join[y][z]];
                let rhs = join[meet[x][y]][meet[x][z]];
                if lhs != rhs {
                    c.record(Law::Distributivity, || vec![name(x), name(y), name(z)]);
                }
            }
        }
    }
    let neg = &r.neg;
    for x in 0..n {
        if neg[neg[x]] != x {
            c.record(Law::Involution, || vec![name(x)]);
        }
    }
    if neg[r.bot] != r.top {
        c.record(Law::NegBottom, || vec![name(r.bot)]);
    }
    for x in 0..n {
        for y in 0..n {
            if neg[meet[x][y]] != join[neg[x]][neg[y]] {
                c.record(Law::DeMorgan, || vec![name(x), name(y)]);
            }
            let y_or_ny = join[y][neg[y]];
            if join[meet[x][neg[x]]][y_or_ny] != y_or_ny {
                c.record(Law::Kleene, || vec![name(x), name(y)]);
            }
        }
    }
    (c.finish(), Some((meet, join)))
}

/// Checks every Kleene-algebra law on a parsed algebra document.
///
/// Malformed input (dangling names, partial negation) is an `Err`; law
/// violations are reported in the `Ok` value.
pub fn validate_kleene_algebra(spec: &AlgebraSpec) -> Result<AlgebraReport, MalformedAlgebra> {
    let resolved = resolve(spec)?;
    let (violations, _) = check_laws(&resolved);
    Ok(ValidationReport { closure_added: resolved.closure_added, violations })
}

impl FiniteKleeneAlgebra {
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self, AlgebraError> {
        let resolved = resolve(spec)?;
        let (violations, tables) = check_laws(&resolved);
        if !violations.is_empty() {
            return Err(AlgebraError::Invalid(violations));
        }
        let (meet, join) = tables.expect("lattice tables exist when no law is violated");
        Ok(FiniteKleeneAlgebra {
            names: resolved.names,
            leq: resolved.leq,
            meet,
            join,
            neg: resolved.neg,
            bot: resolved.bot,
            top: resolved.top,
        })
    }

    /// Builds an algebra from operation tables that are known to be correct,
    /// e.g. pointwise operations on functions into `K`.
    pub(crate) fn from_tables(
        names: Vec<String>,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
        neg: Vec<usize>,
        bot: usize,
        top: usize,
    ) -> Self {
        let n = names.len();
        let leq = (0..n).map(|a| (0..n).map(|b| meet[a][b] == a).collect()).collect();
        let alg = FiniteKleeneAlgebra { names, leq, meet, join, neg, bot, top };
        debug_assert!(n > 64 || alg.law_violations().is_empty(), "{:?}", alg.law_violations());
        alg
    }

    fn law_violations(&self) -> Vec<Violation<Law>> {
        let r = Resolved {
            names: self.names.clone(),
            leq: self.leq.clone(),
            neg: self.neg.clone(),
            bot: self.bot,
            top: self.top,
            closure_added: 0,
        };
        check_laws(&r).0
    }

    /// Re-runs the law checks on an already constructed algebra.
    pub fn validate(&self) -> AlgebraReport {
        ValidationReport { closure_added: 0, violations: self.law_violations() }
    }

    /// The Kleene chain on the given names, negation reversing the chain.
    pub fn chain(names: &[&str]) -> Self {
        assert!(!names.is_empty(), "a chain needs at least one element");
        let n = names.len();
        let meet = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        let join = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        let neg = (0..n).map(|a| n - 1 - a).collect();
        let names = names.iter().map(|s| s.to_string()).collect();
        Self::from_tables(names, meet, join, neg, 0, n - 1)
    }

    /// The two-element Boolean algebra `{0, 1}`.
    pub fn boolean() -> Self {
        Self::chain(&["0", "1"])
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

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// The trivial one-element algebra has `bot = top`.
    pub fn is_trivial(&self) -> bool {
        self.bot == self.top
    }

    /// Elements with `neg x = x`.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.neg[x] == x).collect()
    }

    /// Writes the algebra back in file form; `leq` is listed in full.
    pub fn to_spec(&self) -> AlgebraSpec {
        let n = self.len();
        let mut leq = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.leq[a][b] {
                    leq.push((self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        let neg = (0..n).map(|a| (self.names[a].clone(), self.names[self.neg[a]].clone())).collect();
        AlgebraSpec {
            elements: self.names.clone(),
            leq,
            neg,
            bot: self.names[self.bot].clone(),
            top: self.names[self.top].clone(),
        }
    }
}

/// `K = ({0, 1/2, 1}, ∧, ∨, ¬, 0, 1)`. Element `i` corresponds to
/// [`Tri::from_index`]`(i)`.
pub fn standard_k() -> FiniteKleeneAlgebra {
    FiniteKleeneAlgebra::chain(&["0", "1/2", "1"])
}

/// Direct product with componentwise operations. Elements are ordered with
/// the first factor most significant and named `(a,b)`.
pub fn product(a: &FiniteKleeneAlgebra, b: &FiniteKleeneAlgebra) -> Result<FiniteKleeneAlgebra, AlgebraError> {
    let (na, nb) = (a.len(), b.len());
    if na * nb > MAX_CARRIER {
        return Err(MalformedAlgebra::TooLarge(na * nb).into());
    }
    let idx = |i: usize, j: usize| i * nb + j;
    let n = na * nb;
    let mut names = Vec::with_capacity(n);
    let mut neg = Vec::with_capacity(n);
    for i in 0..na {
        for j in 0..nb {
            names.push(format!("({},{})", a.name(i), b.name(j)));
            neg.push(idx(a.neg(i), b.neg(j)));
        }
    }
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for (x, (i, j)) in (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).enumerate() {
        for (y, (k, l)) in (0..na).flat_map(|k| (0..nb).map(move |l| (k, l))).enumerate() {
            meet[x][y] = idx(a.meet(i, k), b.meet(j, l));
            join[x][y] = idx(a.join(i, k), b.join(j, l));
        }
    }
    Ok(FiniteKleeneAlgebra::from_tables(
        names,
        meet,
        join,
        neg,
        idx(a.bot(), b.bot()),
        idx(a.top(), b.top()),
    ))
}

/// Restriction of `a` to `subset`, which must contain the bounds and be
/// closed under the operations. The result keeps the order of `a`.
pub fn subalgebra(a: &FiniteKleeneAlgebra, subset: &[usize]) -> Result<FiniteKleeneAlgebra, AlgebraError> {
    let mut members: Vec<usize> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&x| x >= a.len()) {
        return Err(AlgebraError::NotSubalgebra(format!("index {bad} out of range")));
    }
    let mut pos = vec![usize::MAX; a.len()];
    for (k, &x) in members.iter().enumerate() {
        pos[x] = k;
    }
    let inside = |x: usize| pos[x] != usize::MAX;
    if !inside(a.bot()) {
        return Err(AlgebraError::NotSubalgebra(format!("missing bot `{}`", a.name(a.bot()))));
    }
    if !inside(a.top()) {
        return Err(AlgebraError::NotSubalgebra(format!("missing top `{}`", a.name(a.top()))));
    }
    for &x in &members {
        if !inside(a.neg(x)) {
            return Err(AlgebraError::NotSubalgebra(format!("not closed under neg at `{}`", a.name(x))));
        }
        for &y in &members {
            if !inside(a.meet(x, y)) {
                return Err(AlgebraError::NotSubalgebra(format!(
                    "not closed under meet at (`{}`, `{}`)",
                    a.name(x),
                    a.name(y)
                )));
            }
            if !inside(a.join(x, y)) {
                return Err(AlgebraError::NotSubalgebra(format!(
                    "not closed under join at (`{}`, `{}`)",
                    a.name(x),
                    a.name(y)
                )));
            }
        }
    }
    let names = members.iter().map(|&x| a.name(x).to_string()).collect();
    let meet = members.iter().map(|&x| members.iter().map(|&y| pos[a.meet(x, y)]).collect()).collect();
    let join = members.iter().map(|&x| members.iter().map(|&y| pos[a.join(x, y)]).collect()).collect();
    let neg = members.iter().map(|&x| pos[a.neg(x)]).collect();
    Ok(FiniteKleeneAlgebra::from_tables(names, meet, join, neg, pos[a.bot()], pos[a.top()]))
}

/// [`subalgebra`] addressed by element names.
pub fn subalgebra_by_names(a: &FiniteKleeneAlgebra, names: &[&str]) -> Result<FiniteKleeneAlgebra, AlgebraError> {
    let subset = names
        .iter()
        .map(|n| {
            a.index_of(n).ok_or_else(|| {
                AlgebraError::Malformed(MalformedAlgebra::Dangling { name: n.to_string(), context: "subset" })
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    subalgebra(a, &subset)
}

/// A homomorphism of Kleene algebras, stored as the image of each source
/// element. Source and target are supplied by the caller where needed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KleeneHom {
    pub map: Vec<usize>,
}

impl KleeneHom {
    pub fn identity(a: &FiniteKleeneAlgebra) -> Self {
        KleeneHom { map: (0..a.len()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &KleeneHom) -> KleeneHom {
        KleeneHom { map: first.map.iter().map(|&x| self.map[x]).collect() }
    }

    pub fn is_bijective(&self, target_len: usize) -> bool {
        let mut seen = vec![false; target_len];
        self.map.len() == target_len
            && self.map.iter().all(|&y| y < target_len && !std::mem::replace(&mut seen[y], true))
    }

    /// Values in `K`, for homomorphisms into [`standard_k`].
    pub fn as_tri(&self) -> Vec<Tri> {
        self.map.iter().map(|&i| Tri::from_index(i).expect("target is K")).collect()
    }
}

struct HomSearch<'a> {
    src: &'a FiniteKleeneAlgebra,
    tgt: &'a FiniteKleeneAlgebra,
    order: Vec<usize>,
    injective: bool,
    limit: Option<usize>,
    found: Vec<KleeneHom>,
}

impl HomSearch<'_> {
    /// Assigns `x ↦ v` and closes the partial map under the operations.
    /// Returns `false` on conflict.
    fn assign(&self, map: &mut [Option<usize>], used: &mut [Option<usize>], x: usize, v: usize) -> bool {
        let mut queue = vec![(x, v)];
        let mut assigned: Vec<usize> = (0..map.len()).filter(|&y| map[y].is_some()).collect();
        while let Some((x, v)) = queue.pop() {
            match map[x] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {}
            }
            if self.injective {
                match used[v] {
                    Some(other) if other != x => return false,
                    _ => used[v] = Some(x),
                }
            }
            map[x] = Some(v);
            queue.push((self.src.neg(x), self.tgt.neg(v)));
            for &y in &assigned {
                let w = map[y].expect("assigned");
                queue.push((self.src.meet(x, y), self.tgt.meet(v, w)));
                queue.push((self.src.join(x, y), self.tgt.join(v, w)));
            }
            queue.push((self.src.meet(x, x), v));
            assigned.push(x);
        }
        true
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn search(&mut self, map: Vec<Option<usize>>, used: Vec<Option<usize>>) {
        if self.done() {
            return;
        }
        let Some(&x) = self.order.iter().find(|&&x| map[x].is_none()) else {
            self.found.push(KleeneHom { map: map.into_iter().map(|v| v.expect("complete")).collect() });
            return;
        };
        for v in 0..self.tgt.len() {
            let mut m = map.clone();
            let mut u = used.clone();
            if self.assign(&mut m, &mut u, x, v) {
                self.search(m, u);
                if self.done() {
                    return;
                }
            }
        }
    }
}

fn run_hom_search(
    src: &FiniteKleeneAlgebra,
    tgt: &FiniteKleeneAlgebra,
    injective: bool,
    limit: Option<usize>,
) -> Vec<KleeneHom> {
    let mut s = HomSearch { src, tgt, order: validation::linear_extension(&src.leq), injective, limit, found: Vec::new() };
    let mut map = vec![None; src.len()];
    let mut used = vec![None; tgt.len()];
    if !s.assign(&mut map, &mut used, src.bot(), tgt.bot()) || !s.assign(&mut map, &mut used, src.top(), tgt.top()) {
        return Vec::new();
    }
    s.search(map, used);
    s.found
}

/// All homomorphisms `a → b`, duplicate-free, sorted lexicographically by
/// their value tables in the element order of `a`.
pub fn hom_enumerate(a: &FiniteKleeneAlgebra, b: &FiniteKleeneAlgebra) -> Vec<KleeneHom> {
    let mut homs = run_hom_search(a, b, false, None);
    homs.sort();
    homs.dedup();
    homs
}

/// Checks that `h` preserves the lattice operations, negation and bounds.
pub fn is_homomorphism(h: &KleeneHom, a: &FiniteKleeneAlgebra, b: &FiniteKleeneAlgebra) -> bool {
    if h.map.len() != a.len() || h.map.iter().any(|&y| y >= b.len()) {
        return false;
    }
    let f = |x| h.map[x];
    if f(a.bot()) != b.bot() || f(a.top()) != b.top() {
        return false;
    }
    (0..a.len()).all(|x| {
        f(a.neg(x)) == b.neg(f(x))
            && (0..a.len()).all(|y| f(a.meet(x, y)) == b.meet(f(x), f(y)) && f(a.join(x, y)) == b.join(f(x), f(y)))
    })
}

fn down_profile(a: &FiniteKleeneAlgebra) -> Vec<usize> {
    let mut p: Vec<usize> = (0..a.len()).map(|x| (0..a.len()).filter(|&y| a.leq(y, x)).count()).collect();
    p.sort_unstable();
    p
}

/// An isomorphism `a → b`, if one exists.
pub fn is_isomorphic_alg(a: &FiniteKleeneAlgebra, b: &FiniteKleeneAlgebra) -> Option<KleeneHom> {
    if a.len() != b.len() || a.fixed_points().len() != b.fixed_points().len() || down_profile(a) != down_profile(b) {
        return None;
    }
    run_hom_search(a, b, true, Some(1)).into_iter().next()
}

/// The free Kleene algebra on `n` generators, realized as the algebra of
/// morphisms `K̃ⁿ → K̃`.
#[derive(Clone, Debug)]
pub struct FreeKleene {
    pub algebra: FiniteKleeneAlgebra,
    /// Element indices of the projections `ρ₁, …, ρₙ`.
    pub generators: Vec<usize>,
    /// Value table on `{0,1/2,1}ⁿ` (canonical cube order) of every element.
    pub tables: Vec<Vec<Tri>>,
}

pub fn free_kleene(n: usize) -> Result<FreeKleene, AlgebraError> {
    free_kleene_with_limit(n, DEFAULT_MAX_GENERATORS)
}

pub fn free_kleene_with_limit(n: usize, limit: usize) -> Result<FreeKleene, AlgebraError> {
    if n == 0 || n > limit {
        return Err(AlgebraError::GeneratorLimit { n, limit });
    }
    let cube = space::power_space_with_limit(n, n).map_err(Box::new)?;
    let dual = space::dual_e(&cube).map_err(Box::new)?;
    let generators = (0..n)
        .map(|i| {
            let rho = space::projection(n, i);
            dual.tables.iter().position(|t| *t == rho).expect("projections are morphisms")
        })
        .collect();
    Ok(FreeKleene { algebra: dual.algebra, generators, tables: dual.tables })
}
