//! JSON file formats. Every `*_to_json` output parses back to an equal
//! value, and is pretty-printed with a trailing newline.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraSpec;
use crate::complex::{AbstractComplex, WeightedComplex};
use crate::geom::{RationalTriangulation, Q};
use crate::mvalg::SchauderBasis;
use crate::pipeline::{MVPresentation, Provenance};
use crate::space::SpaceSpec;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSpec, IoError> {
    from_json(text)
}

pub fn algebra_to_json(spec: &AlgebraSpec) -> String {
    to_json(spec)
}

pub fn parse_space(text: &str) -> Result<SpaceSpec, IoError> {
    from_json(text)
}

pub fn space_to_json(spec: &SpaceSpec) -> String {
    to_json(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<VertexEntry>,
    pub facets: Vec<Vec<String>>,
}

impl ComplexFile {
    pub fn from_complex(wc: &WeightedComplex) -> Self {
        let vertices = wc
            .complex
            .vertices()
            .iter()
            .zip(&wc.weights)
            .map(|(n, &w)| VertexEntry { name: n.clone(), weight: Some(w) })
            .collect();
        ComplexFile { vertices, facets: wc.complex.named_facets() }
    }

    /// Missing weights default to 1. A facet listed twice is an error.
    pub fn to_complex(&self) -> Result<WeightedComplex, IoError> {
        let names: Vec<String> = self.vertices.iter().map(|v| v.name.clone()).collect();
        let complex = AbstractComplex::from_named(names, &self.facets).map_err(|e| IoError::Format(e.to_string()))?;
        let weights = self.vertices.iter().map(|v| v.weight.unwrap_or(1)).collect();
        WeightedComplex::new(complex, weights).map_err(|e| IoError::Format(e.to_string()))
    }
}

pub fn parse_complex(text: &str) -> Result<WeightedComplex, IoError> {
    from_json::<ComplexFile>(text)?.to_complex()
}

pub fn complex_to_json(wc: &WeightedComplex) -> String {
    to_json(&ComplexFile::from_complex(wc))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub simplices: Vec<Vec<usize>>,
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Q, IoError> {
    s.trim().parse::<Q>().map_err(|_| IoError::Format(format!("not a rational: {s:?}")))
}

impl TriangulationFile {
    pub fn from_triangulation(t: &RationalTriangulation) -> Self {
        TriangulationFile {
            dim: t.dim,
            vertices: t.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
            simplices: t.simplices.clone(),
        }
    }

    pub fn to_triangulation(&self) -> Result<RationalTriangulation, IoError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        RationalTriangulation::new(self.dim, vertices, self.simplices.clone()).map_err(|e| IoError::Format(e.to_string()))
    }
}

pub fn parse_triangulation(text: &str) -> Result<RationalTriangulation, IoError> {
    from_json::<TriangulationFile>(text)?.to_triangulation()
}

pub fn triangulation_to_json(t: &RationalTriangulation) -> String {
    to_json(&TriangulationFile::from_triangulation(t))
}

fn mult_map(mult: &[u64]) -> BTreeMap<usize, u64> {
    mult.iter().copied().enumerate().collect()
}

fn mult_vec(map: &BTreeMap<usize, u64>, n: usize) -> Result<Vec<u64>, IoError> {
    if map.len() != n || map.keys().any(|&k| k >= n) {
        return Err(IoError::Format(format!("mult must list each of the {n} vertices once")));
    }
    Ok(map.values().copied().collect())
}

fn basis_from(t: RationalTriangulation, mult: Vec<u64>) -> Result<SchauderBasis, IoError> {
    let basis = crate::mvalg::schauder_basis(Arc::new(t)).map_err(|e| IoError::Format(e.to_string()))?;
    if basis.mult != mult {
        return Err(IoError::Format("mult disagrees with the vertex denominators".into()));
    }
    Ok(basis)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFile {
    #[serde(flatten)]
    pub triangulation: TriangulationFile,
    pub mult: BTreeMap<usize, u64>,
}

pub fn parse_basis(text: &str) -> Result<SchauderBasis, IoError> {
    let f: BasisFile = from_json(text)?;
    let t = f.triangulation.to_triangulation()?;
    let mult = mult_vec(&f.mult, t.vertices.len())?;
    basis_from(t, mult)
}

pub fn basis_to_json(b: &SchauderBasis) -> String {
    to_json(&BasisFile {
        triangulation: TriangulationFile::from_triangulation(&b.triangulation),
        mult: mult_map(&b.mult),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleFile {
    pub complex: ComplexFile,
    pub triangulation: TriangulationFile,
    pub mult: BTreeMap<usize, u64>,
    pub provenance: Provenance,
}

pub fn parse_bundle(text: &str) -> Result<MVPresentation, IoError> {
    let f: BundleFile = from_json(text)?;
    let complex = f.complex.to_complex()?;
    let t = f.triangulation.to_triangulation()?;
    let mult = mult_vec(&f.mult, t.vertices.len())?;
    let basis = basis_from(t, mult)?;
    let p = MVPresentation { complex, realization: basis.triangulation.clone(), basis, provenance: f.provenance };
    if !p.is_consistent() {
        return Err(IoError::Format("triangulation does not realize the complex".into()));
    }
    Ok(p)
}

pub fn bundle_to_json(p: &MVPresentation) -> String {
    to_json(&BundleFile {
        complex: ComplexFile::from_complex(&p.complex),
        triangulation: TriangulationFile::from_triangulation(&p.realization),
        mult: mult_map(&p.basis.mult),
        provenance: p.provenance.clone(),
    })
}
