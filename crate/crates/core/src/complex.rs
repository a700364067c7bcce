//! Abstract and weighted simplicial complexes, nerves of posets, and the
//! combinatorial recognition of Kleene complexes.
//!
//! Complexes are stored by their facets. Each facet is a sorted list of
//! vertex indices and the facet list itself is sorted, so two complexes on
//! the same vertex list are equal iff they have the same faces.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::space::KleeneSpace;
use crate::tri::Tri;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("not a partial order: {0}")]
    NotPoset(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate facet {0}")]
    DuplicateFacet(String),
    #[error("empty facet")]
    EmptyFacet,
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weight of `{0}` must be positive")]
    ZeroWeight(String),
    #[error("embedding needs weights in {{1,2}} with weight 1 only on maximal elements; `{0}` violates this")]
    EmbedWeights(String),
}

/// A finite partial order given by its full order matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, ComplexError> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(ComplexError::NotPoset("matrix shape".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(ComplexError::NotPoset(format!("{} is not below itself", names[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(ComplexError::NotPoset(format!("{} and {} are mutually below", names[a], names[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(ComplexError::NotPoset(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            names[a], names[b], names[c], names[a], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Poset { names, leq })
    }

    /// Closes `pairs` (given as `(below, above)`) reflexively and transitively.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, ComplexError> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(ComplexError::VertexOutOfRange(a.max(b)));
            }
            leq[a][b] = true;
        }
        crate::validation::close_order(&mut leq);
        Self::new(names, leq)
    }

    pub fn from_space(x: &KleeneSpace) -> Self {
        Poset { names: x.names().to_vec(), leq: x.leq_matrix().to_vec() }
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

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn is_maximal(&self, a: usize) -> bool {
        (0..self.len()).all(|b| !self.lt(a, b))
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && (0..self.len()).all(|c| !(self.lt(a, c) && self.lt(c, b)))
    }

    /// All maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let minimal: Vec<usize> = (0..n).filter(|&a| (0..n).all(|b| !self.lt(b, a))).collect();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = minimal.into_iter().rev().map(|m| vec![m]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains are nonempty");
            let ups: Vec<usize> = (0..n).filter(|&b| self.covers(last, b)).collect();
            if ups.is_empty() {
                out.push(chain);
                continue;
            }
            for &b in ups.iter().rev() {
                let mut next = chain.clone();
                next.push(b);
                stack.push(next);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbstractComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

impl AbstractComplex {
    /// The complex generated by `faces`: non-maximal faces are dropped and
    /// vertices not covered by any face become singleton facets.
    pub fn new(vertices: Vec<String>, faces: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let n = vertices.len();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(ComplexError::DuplicateVertex(v.clone()));
            }
        }
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(faces.len() + n);
        for mut f in faces {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(ComplexError::VertexOutOfRange(bad));
            }
            f.sort_unstable();
            f.dedup();
            sets.push(f);
        }
        let mut covered = vec![false; n];
        for f in &sets {
            for &v in f {
                covered[v] = true;
            }
        }
        sets.extend((0..n).filter(|&v| !covered[v]).map(|v| vec![v]));
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for s in sets {
            if !facets.iter().any(|f| is_subset(&s, f)) {
                facets.push(s);
            }
        }
        facets.sort();
        Ok(AbstractComplex { vertices, facets })
    }

    /// Facets given by vertex names. A repeated facet is an error.
    pub fn from_named(vertices: Vec<String>, facets: &[Vec<String>]) -> Result<Self, ComplexError> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut seen = BTreeSet::new();
        let mut faces = Vec::with_capacity(facets.len());
        for f in facets {
            let mut idx = f
                .iter()
                .map(|name| index.get(name.as_str()).copied().ok_or_else(|| ComplexError::UnknownVertex(name.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            idx.sort_unstable();
            if !seen.insert(idx.clone()) {
                return Err(ComplexError::DuplicateFacet(format!("{{{}}}", f.join(","))));
            }
            faces.push(idx);
        }
        Self::new(vertices, faces)
    }

    pub fn simplex(names: &[&str]) -> Self {
        let vertices: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let all = (0..vertices.len()).collect();
        Self::new(vertices, vec![all]).expect("a simplex is a complex")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Whether the sorted vertex set `s` is a face.
    pub fn is_face(&self, s: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(s, f))
    }

    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for f in &self.facets {
            for &a in f {
                for &b in f {
                    if a != b {
                        adj[a][b] = true;
                    }
                }
            }
        }
        adj
    }

    /// All faces with `k` vertices, sorted.
    pub fn skeleton(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= k {
                subsets_of_size(f, k, &mut |s| {
                    out.insert(s.to_vec());
                });
            }
        }
        out.into_iter().collect()
    }

    /// Number of faces with `1, 2, …, dim+1` vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dim().map_or(0, |d| d + 1);
        (1..=top).map(|k| self.skeleton(k).len()).collect()
    }

    /// Inclusion-minimal non-faces, ordered by size and then
    /// lexicographically.
    pub fn missing_faces(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut out = BTreeSet::new();
        let top = self.dim().map_or(0, |d| d + 1);
        for k in 1..=top {
            for face in self.skeleton(k) {
                let last = *face.last().expect("nonempty");
                for v in (last + 1)..n {
                    let mut s = face.clone();
                    s.push(v);
                    if self.is_face(&s) {
                        continue;
                    }
                    let minimal = (0..s.len()).all(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        self.is_face(&t)
                    });
                    if minimal {
                        out.insert(s);
                    }
                }
            }
        }
        let mut v: Vec<Vec<usize>> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn face_name(&self, s: &[usize]) -> String {
        let names: Vec<&str> = s.iter().map(|&i| self.vertices[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn named_facets(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| f.iter().map(|&i| self.vertices[i].clone()).collect()).collect()
    }

    /// Facets mapped through a vertex bijection, re-sorted.
    fn mapped_facets(&self, map: &[usize]) -> Vec<Vec<usize>> {
        let mut fs: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| map[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        fs.sort();
        fs
    }
}

fn subsets_of_size(items: &[usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, visit);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::with_capacity(k), visit);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedComplex {
    pub complex: AbstractComplex,
    pub weights: Vec<u64>,
}

impl WeightedComplex {
    pub fn new(complex: AbstractComplex, weights: Vec<u64>) -> Result<Self, ComplexError> {
        if weights.len() != complex.vertex_count() {
            return Err(ComplexError::WeightCount { expected: complex.vertex_count(), found: weights.len() });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(ComplexError::ZeroWeight(complex.vertices[i].clone()));
        }
        Ok(WeightedComplex { complex, weights })
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weight_multiset(&self) -> Vec<u64> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }
}

/// The order complex: faces are the chains of `p`.
pub fn nerve(p: &Poset) -> AbstractComplex {
    let chains = p.maximal_chains();
    AbstractComplex::new(p.names().to_vec(), chains).expect("chains of a poset form a complex")
}

/// The nerve of a Kleene space with weight 1 on `M` and 2 elsewhere.
pub fn weighted_nerve(x: &KleeneSpace) -> WeightedComplex {
    let complex = nerve(&Poset::from_space(x));
    let weights = (0..x.len()).map(|i| if x.is_marked(i) { 1 } else { 2 }).collect();
    WeightedComplex { complex, weights }
}

/// An orientation of every edge of a graph; `(p, q)` reads `p → q`, i.e.
/// `p < q` in the induced order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|(p, _)| *p == v).count()
    }
}

#[derive(Clone)]
struct OrientState {
    // dir[a][b] = true means a → b has been fixed
    dir: Vec<Vec<bool>>,
}

struct Orienter<'a> {
    adj: &'a [Vec<bool>],
    sink: Vec<bool>,
}

impl Orienter<'_> {
    fn fixed(&self, s: &OrientState, a: usize, b: usize) -> bool {
        s.dir[a][b] || s.dir[b][a]
    }

    /// Fixes `a → b` and everything it forces. `false` on conflict.
    fn force(&self, s: &mut OrientState, a: usize, b: usize) -> bool {
        let n = self.adj.len();
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            if s.dir[a][b] {
                continue;
            }
            if s.dir[b][a] || self.sink[a] {
                return false;
            }
            s.dir[a][b] = true;
            for c in 0..n {
                if c == a || c == b {
                    continue;
                }
                if self.adj[b][c] && !self.adj[a][c] {
                    queue.push((c, b));
                }
                if self.adj[a][c] && !self.adj[b][c] {
                    queue.push((a, c));
                }
                if s.dir[b][c] {
                    if !self.adj[a][c] {
                        return false;
                    }
                    queue.push((a, c));
                }
                if s.dir[c][a] {
                    if !self.adj[c][b] {
                        return false;
                    }
                    queue.push((c, b));
                }
            }
        }
        true
    }

    fn solve(&self, s: OrientState) -> Option<OrientState> {
        let n = self.adj.len();
        let next = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.adj[a][b] && !self.fixed(&s, a, b));
        let Some((a, b)) = next else {
            return Some(s);
        };
        for (p, q) in [(a, b), (b, a)] {
            let mut t = s.clone();
            if self.force(&mut t, p, q) {
                if let Some(done) = self.solve(t) {
                    return Some(done);
                }
            }
        }
        None
    }
}

/// A transitive orientation of the graph `adj` in which every vertex of
/// `required_sinks` has out-degree 0, if one exists. Edges are tried in
/// lexicographic order, lower index first.
pub fn transitive_orientation(adj: &[Vec<bool>], required_sinks: &[usize]) -> Option<Orientation> {
    let n = adj.len();
    let mut sink = vec![false; n];
    for &s in required_sinks {
        sink[s] = true;
    }
    let o = Orienter { adj, sink };
    let mut state = OrientState { dir: vec![vec![false; n]; n] };
    for &s in required_sinks {
        for x in 0..n {
            if adj[x][s] && !o.force(&mut state, x, s) {
                return None;
            }
        }
    }
    let done = o.solve(state)?;
    let arcs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| done.dir[a][b]).collect();
    Some(Orientation { arcs })
}

/// Whether `o` orients every edge of `adj` exactly once and is transitive.
pub fn is_transitive_orientation(adj: &[Vec<bool>], o: &Orientation) -> bool {
    let n = adj.len();
    let mut dir = vec![vec![false; n]; n];
    for &(a, b) in &o.arcs {
        if !adj[a][b] || dir[b][a] || dir[a][b] {
            return false;
        }
        dir[a][b] = true;
    }
    let all_oriented = (0..n).all(|a| (0..n).all(|b| !adj[a][b] || dir[a][b] || dir[b][a]));
    let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(dir[a][b] && dir[b][c]) || dir[a][c])));
    all_oriented && transitive
}

fn poset_from_orientation(names: &[String], o: &Orientation) -> Poset {
    Poset::from_pairs(names.to_vec(), &o.arcs).expect("a transitive orientation induces a partial order")
}

/// A poset whose nerve is `c`, if `c` is an order complex.
pub fn is_order_complex(c: &AbstractComplex) -> Option<Poset> {
    if c.missing_faces().iter().any(|m| m.len() >= 3) {
        return None;
    }
    let o = transitive_orientation(&c.adjacency(), &[])?;
    Some(poset_from_orientation(c.vertices(), &o))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleeneWitness {
    pub orientation: Orientation,
    pub poset: Poset,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KleeneViolation {
    #[error("kleene-complex: condition (a) violated, vertex {vertex} has weight {weight}")]
    Weight { vertex: String, weight: u64 },
    #[error("kleene-complex: condition (b) violated, missing face {face}")]
    MissingFace { face: String },
    #[error("kleene-complex: condition (c) violated, {reason}")]
    Orientation { reason: String },
}

impl KleeneViolation {
    pub fn condition(&self) -> char {
        match self {
            KleeneViolation::Weight { .. } => 'a',
            KleeneViolation::MissingFace { .. } => 'b',
            KleeneViolation::Orientation { .. } => 'c',
        }
    }
}

/// Checks the three conditions of a Kleene complex: weights in `{1,2}`, no
/// missing face with three or more vertices, and a transitive orientation of
/// the edges in which weight-1 vertices are sinks.
pub fn is_kleene_complex(wc: &WeightedComplex) -> Result<KleeneWitness, KleeneViolation> {
    let c = &wc.complex;
    if let Some(v) = (0..c.vertex_count()).find(|&v| !matches!(wc.weights[v], 1 | 2)) {
        return Err(KleeneViolation::Weight { vertex: c.vertices[v].clone(), weight: wc.weights[v] });
    }
    if let Some(m) = c.missing_faces().into_iter().find(|m| m.len() >= 3) {
        return Err(KleeneViolation::MissingFace { face: c.face_name(&m) });
    }
    let sinks: Vec<usize> = (0..c.vertex_count()).filter(|&v| wc.weights[v] == 1).collect();
    let adj = c.adjacency();
    let Some(orientation) = transitive_orientation(&adj, &sinks) else {
        let reason = if transitive_orientation(&adj, &[]).is_some() {
            let names: Vec<&str> = sinks.iter().map(|&v| c.vertices[v].as_str()).collect();
            format!("no transitive orientation makes the weight-1 vertices {{{}}} sinks", names.join(","))
        } else {
            "the edge graph is not a comparability graph".to_string()
        };
        return Err(KleeneViolation::Orientation { reason });
    };
    let poset = poset_from_orientation(c.vertices(), &orientation);
    Ok(KleeneWitness { orientation, poset })
}

/// The order embedding `vᵢ ↦ (d(i), δ₁ⁱ, …, δₘⁱ)` of a weighted poset into
/// `(K̃^{m+1}, ⪯)`, where `d(i)` is 1 on weight-1 points and `1/2`
/// elsewhere, and `δⱼⁱ` is 1 if `vⱼ ≤ vᵢ`, 0 if `vᵢ` is maximal and
/// `vⱼ ≰ vᵢ`, and `1/2` otherwise.
pub fn embed_poset(p: &Poset, weights: &[u64]) -> Result<Vec<Vec<Tri>>, ComplexError> {
    let m = p.len();
    if weights.len() != m {
        return Err(ComplexError::WeightCount { expected: m, found: weights.len() });
    }
    for i in 0..m {
        let ok = match weights[i] {
            1 => p.is_maximal(i),
            2 => true,
            _ => false,
        };
        if !ok {
            return Err(ComplexError::EmbedWeights(p.names()[i].clone()));
        }
    }
    Ok((0..m)
        .map(|i| {
            let d = if weights[i] == 1 { Tri::One } else { Tri::Half };
            let max_i = p.is_maximal(i);
            std::iter::once(d)
                .chain((0..m).map(|j| {
                    if p.leq(j, i) {
                        Tri::One
                    } else if max_i {
                        Tri::Zero
                    } else {
                        Tri::Half
                    }
                }))
                .collect()
        })
        .collect())
}

struct IsoSearch<'a> {
    a: &'a WeightedComplex,
    adj_a: Vec<Vec<bool>>,
    adj_b: Vec<Vec<bool>>,
    sig_a: Vec<(u64, usize, usize)>,
    sig_b: Vec<(u64, usize, usize)>,
    target_facets: Vec<Vec<usize>>,
}

impl IsoSearch<'_> {
    fn step(&self, v: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = self.a.complex.vertex_count();
        if v == n {
            return self.a.complex.mapped_facets(map) == self.target_facets;
        }
        for w in 0..n {
            if used[w] || self.sig_a[v] != self.sig_b[w] {
                continue;
            }
            if (0..v).any(|u| self.adj_a[u][v] != self.adj_b[map[u]][w]) {
                continue;
            }
            map.push(w);
            used[w] = true;
            if self.step(v + 1, map, used) {
                return true;
            }
            used[w] = false;
            map.pop();
        }
        false
    }
}

fn signatures(wc: &WeightedComplex, adj: &[Vec<bool>]) -> Vec<(u64, usize, usize)> {
    (0..wc.complex.vertex_count())
        .map(|v| {
            let deg = adj[v].iter().filter(|x| **x).count();
            let fc = wc.complex.facets.iter().filter(|f| f.contains(&v)).count();
            (wc.weights[v], deg, fc)
        })
        .collect()
}

/// A weight-preserving vertex bijection `a → b` carrying faces onto faces,
/// if one exists. `map[i]` is the image of vertex `i`.
pub fn complex_isomorphic(a: &WeightedComplex, b: &WeightedComplex) -> Option<Vec<usize>> {
    let n = a.complex.vertex_count();
    if n != b.complex.vertex_count() || a.complex.facets.len() != b.complex.facets.len() {
        return None;
    }
    let adj_a = a.complex.adjacency();
    let adj_b = b.complex.adjacency();
    let sig_a = signatures(a, &adj_a);
    let sig_b = signatures(b, &adj_b);
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let search = IsoSearch { a, adj_a, adj_b, sig_a, sig_b, target_facets: b.complex.facets.clone() };
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search.step(0, &mut map, &mut used).then_some(map)
}

impl fmt::Display for WeightedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.complex.facets.iter().map(|s| self.complex.face_name(s)).collect();
        let weights: Vec<String> =
            self.complex.vertices.iter().zip(&self.weights).map(|(v, w)| format!("{v}:{w}")).collect();
        write!(f, "facets [{}], weights [{}]", facets.join(" "), weights.join(" "))
    }
}
