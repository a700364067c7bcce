//! The free MV-algebra over a finite Kleene algebra, the recognition of
//! weighted complexes that present one, and the two worked
//! counterexamples: `K²` versus `K′`, and the nine-point space `W`.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, AlgebraError, AlgebraSpec, FiniteKleeneAlgebra};
use crate::complex::{self, KleeneViolation, WeightedComplex};
use crate::geom::{self, GeomError, RationalTriangulation};
use crate::mvalg::{self, MvError, SchauderBasis};
use crate::space::{self, SpaceError, SpaceSpec};
use crate::tri::{self, Tri};

/// Default number of triangulations examined by the flip search.
pub const DEFAULT_FLIP_BUDGET: usize = 10_000;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Rejected(KleeneViolation),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Mv(#[from] MvError),
    #[error(transparent)]
    Complex(#[from] complex::ComplexError),
    #[error("reconstructed complex is not isomorphic to the input")]
    RoundTrip,
}

/// Where a presentation came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// `free-mv` or `recognize`.
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSpec>,
}

/// A weighted complex, its geometric realization and the Schauder basis
/// over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVPresentation {
    pub complex: WeightedComplex,
    pub realization: Arc<RationalTriangulation>,
    pub basis: SchauderBasis,
    pub provenance: Provenance,
}

impl MVPresentation {
    /// Builds the realization and basis of `complex`.
    pub fn from_complex(complex: WeightedComplex, provenance: Provenance) -> Result<Self, PipelineError> {
        let realization = Arc::new(geom::realize(&complex));
        let basis = mvalg::schauder_basis(realization.clone())?;
        Ok(MVPresentation { complex, realization, basis, provenance })
    }

    /// The realization's complex has the same facets and weights as
    /// `complex`, vertex for vertex; the basis lives on the realization.
    pub fn is_consistent(&self) -> bool {
        let sc = geom::sc_of(&self.realization);
        sc.complex.facets() == self.complex.complex.facets()
            && sc.weights == self.complex.weights
            && Arc::ptr_eq(&self.basis.triangulation, &self.realization)
            && self.basis.mult == self.complex.weights
    }
}

/// The presentation of the MV-algebra freely generated by `b`: the weighted
/// nerve of `D(b)`, realized in `[0,1]^|D(b)|`.
pub fn free_over(b: &FiniteKleeneAlgebra) -> Result<MVPresentation, PipelineError> {
    let dual = space::dual_d(b);
    let complex = complex::weighted_nerve(&dual.space);
    let provenance = Provenance {
        source: "free-mv".into(),
        algebra_file: None,
        algebra: Some(b.to_spec()),
        space: Some(dual.space.to_spec()),
    };
    MVPresentation::from_complex(complex, provenance)
}

#[derive(Clone, Debug)]
pub struct Recognition {
    pub algebra: FiniteKleeneAlgebra,
    pub presentation: MVPresentation,
    /// Image of each input vertex in `{0,1/2,1}^(m+1)`.
    pub embedding: Vec<Vec<Tri>>,
    /// `iso[i]` is the vertex of the reconstructed complex matching input
    /// vertex `i`.
    pub iso: Vec<usize>,
}

/// Finds a finite Kleene algebra `B` whose free MV-algebra is presented by
/// `wc`, or names the Kleene-complex condition that fails.
pub fn recognize(wc: &WeightedComplex) -> Result<Recognition, PipelineError> {
    let witness = complex::is_kleene_complex(wc).map_err(PipelineError::Rejected)?;
    let embedding = complex::embed_poset(&witness.poset, &wc.weights)?;
    let sub = space::subspace_from_subset(&embedding)?;
    let algebra = space::dual_e(&sub)?.algebra;
    let mut presentation = free_over(&algebra)?;
    presentation.provenance.source = "recognize".into();
    let iso = complex::complex_isomorphic(wc, &presentation.complex).ok_or(PipelineError::RoundTrip)?;
    Ok(Recognition { algebra, presentation, embedding, iso })
}

/// The seven-element subalgebra `K² ∖ {(0,1), (1,0)}`.
pub fn k_prime() -> FiniteKleeneAlgebra {
    let k = algebra::standard_k();
    let k2 = algebra::product(&k, &k).expect("9 elements");
    algebra::subalgebra_by_names(&k2, &["(0,0)", "(0,1/2)", "(1/2,0)", "(1/2,1/2)", "(1/2,1)", "(1,1/2)", "(1,1)"])
        .expect("closed subset")
}

/// The Kleene chain `0 < a < b < c < d < 1` with `¬a = d`, `¬b = c`.
pub fn chain6() -> FiniteKleeneAlgebra {
    FiniteKleeneAlgebra::chain(&["0", "a", "b", "c", "d", "1"])
}

/// `W = ({0,1/2,1}² × {0}) ∖ {(0,1/2,0)} ∪ {(1,1/2,1/2)}`.
pub fn nine_point_w() -> Vec<Vec<Tri>> {
    let mut w: Vec<Vec<Tri>> = tri::cube_points(2)
        .into_iter()
        .map(|mut p| {
            p.push(Tri::Zero);
            p
        })
        .filter(|p| *p != [Tri::Zero, Tri::Half, Tri::Zero])
        .collect();
    w.push(vec![Tri::One, Tri::Half, Tri::Half]);
    w
}

#[derive(Clone, Debug, Serialize)]
pub struct Q1Report {
    pub dual_sizes: (usize, usize),
    pub spaces_isomorphic: bool,
    pub algebras_isomorphic: bool,
    pub complexes_equal: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FlipSearch {
    Found {
        explored: usize,
        /// Triangles of the found triangulation, by vertex coordinates.
        triangles: Vec<Vec<String>>,
        /// `(vertex of W, vertex of the triangulation)` pairs.
        matching: Vec<(String, String)>,
    },
    /// Every reachable triangulation was examined.
    NotFound { explored: usize },
    BudgetExhausted { explored: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Q2Report {
    pub w: Vec<String>,
    pub algebra_size: usize,
    pub free_kleene_2_size: usize,
    pub isomorphic_to_free_kleene_2: bool,
    pub f_vector: Vec<usize>,
    pub weights: Vec<u64>,
    pub kleene_complex: bool,
    pub search: FlipSearch,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub q1: Q1Report,
    pub q2: Q2Report,
}

impl CounterexampleReport {
    pub fn budget_exhausted(&self) -> bool {
        matches!(self.q2.search, FlipSearch::BudgetExhausted { .. })
    }

    pub fn pass(&self) -> bool {
        self.q1.pass && self.q2.pass
    }
}

fn q1() -> Result<Q1Report, PipelineError> {
    let k = algebra::standard_k();
    let k2 = algebra::product(&k, &k)?;
    let kp = k_prime();
    let d2 = space::dual_d(&k2).space;
    let dp = space::dual_d(&kp).space;
    let spaces_isomorphic = space::is_isomorphic_space(&d2, &dp).is_some();
    let algebras_isomorphic = algebra::is_isomorphic_alg(&k2, &kp).is_some();
    let complexes_equal = free_over(&k2)?.complex == free_over(&kp)?.complex;
    Ok(Q1Report {
        dual_sizes: (d2.len(), dp.len()),
        spaces_isomorphic,
        algebras_isomorphic,
        complexes_equal,
        pass: !spaces_isomorphic && !algebras_isomorphic && complexes_equal,
    })
}

/// Breadth-first search over edge flips of `S₂` for a regular triangulation
/// whose weighted complex is isomorphic to `target`. Irregular
/// triangulations are traversed but never accepted: no single flip of `S₂`
/// is regular.
pub fn flip_search(target: &WeightedComplex, budget: usize) -> Result<FlipSearch, PipelineError> {
    let start = geom::kleene_triangulation(2)?;
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.simplices.clone());
    queue.push_back(start);
    let mut explored = 0;
    while let Some(t) = queue.pop_front() {
        if explored == budget {
            return Ok(FlipSearch::BudgetExhausted { explored });
        }
        explored += 1;
        let sc = geom::sc_of(&t);
        let hit = if t.is_regular() { complex::complex_isomorphic(target, &sc) } else { None };
        if let Some(map) = hit {
            let names = sc.complex.vertices();
            let triangles = t.simplices.iter().map(|s| s.iter().map(|&v| names[v].clone()).collect()).collect();
            let matching = target.complex.vertices().iter().zip(&map).map(|(a, &b)| (a.clone(), names[b].clone())).collect();
            return Ok(FlipSearch::Found { explored, triangles, matching });
        }
        for next in geom::edge_flips(&t) {
            if seen.insert(next.simplices.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(FlipSearch::NotFound { explored })
}

fn q2(budget: usize) -> Result<Q2Report, PipelineError> {
    let w = nine_point_w();
    let sub = space::subspace_from_subset(&w)?;
    let b_w = space::dual_e(&sub)?.algebra;
    let free2 = algebra::free_kleene(2)?.algebra;
    let isomorphic_to_free_kleene_2 = algebra::is_isomorphic_alg(&b_w, &free2).is_some();
    let pres = free_over(&b_w)?;
    let f_vector = pres.complex.complex.f_vector();
    let weights = pres.complex.weight_multiset();
    let kleene_complex = complex::is_kleene_complex(&pres.complex).is_ok();
    let search = flip_search(&pres.complex, budget)?;
    let found = matches!(search, FlipSearch::Found { .. });
    let pass = !isomorphic_to_free_kleene_2
        && f_vector == [9, 16, 8]
        && weights == [1, 1, 1, 1, 2, 2, 2, 2, 2]
        && kleene_complex
        && found;
    Ok(Q2Report {
        w: w.iter().map(|p| tri::point_name(p)).collect(),
        algebra_size: b_w.len(),
        free_kleene_2_size: free2.len(),
        isomorphic_to_free_kleene_2,
        f_vector,
        weights,
        kleene_complex,
        search,
        pass,
    })
}

/// Runs both counterexamples. The flip search examines at most `budget`
/// triangulations.
pub fn demo_section6(budget: usize) -> Result<CounterexampleReport, PipelineError> {
    Ok(CounterexampleReport { q1: q1()?, q2: q2(budget)? })
}
