//! The three values `0`, `1/2`, `1`.
//!
//! The same carrier plays two roles. As the Kleene algebra `K` it is the
//! chain `0 < 1/2 < 1` with the negation fixing `1/2`; the derived [`Ord`]
//! is that chain. As the Kleene space `K̃` it carries a different order,
//! written `⪯` here, in which `1/2` sits below both `0` and `1`, and the
//! compatibility relation `∼` that relates everything except `0` with `1`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tri {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "1")]
    One,
}

impl Tri {
    pub const ALL: [Tri; 3] = [Tri::Zero, Tri::Half, Tri::One];

    /// Position in the chain `0 < 1/2 < 1`; also the element index of
    /// [`crate::algebra::standard_k`].
    pub fn index(self) -> usize {
        match self {
            Tri::Zero => 0,
            Tri::Half => 1,
            Tri::One => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Tri> {
        Tri::ALL.get(i).copied()
    }

    pub fn meet(self, other: Tri) -> Tri {
        self.min(other)
    }

    pub fn join(self, other: Tri) -> Tri {
        self.max(other)
    }

    pub fn neg(self) -> Tri {
        match self {
            Tri::Zero => Tri::One,
            Tri::Half => Tri::Half,
            Tri::One => Tri::Zero,
        }
    }

    /// `0` and `1`, the marked points of `K̃`.
    pub fn is_boolean(self) -> bool {
        self != Tri::Half
    }

    /// The order `⪯` of `K̃`: `1/2` is the bottom, `0` and `1` are incomparable.
    pub fn space_le(self, other: Tri) -> bool {
        self == Tri::Half || self == other
    }

    /// The relation `∼` of `K̃`.
    pub fn sim(self, other: Tri) -> bool {
        !matches!((self, other), (Tri::Zero, Tri::One) | (Tri::One, Tri::Zero))
    }

    /// Numerator over the common denominator 2.
    pub fn halves(self) -> i64 {
        self.index() as i64
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Zero => "0",
            Tri::Half => "1/2",
            Tri::One => "1",
        }
    }

    pub fn parse(s: &str) -> Option<Tri> {
        match s.trim() {
            "0" => Some(Tri::Zero),
            "1/2" => Some(Tri::Half),
            "1" => Some(Tri::One),
            _ => None,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Componentwise `⪯ₙ` on `{0,1/2,1}ⁿ`.
pub fn vec_space_le(a: &[Tri], b: &[Tri]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.space_le(*y))
}

/// Componentwise `∼ₙ`.
pub fn vec_sim(a: &[Tri], b: &[Tri]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.sim(*y))
}

pub fn vec_is_boolean(a: &[Tri]) -> bool {
    a.iter().all(|x| x.is_boolean())
}

/// Name of a point of the cube: a bare value for `n = 1`, a tuple otherwise.
pub fn point_name(p: &[Tri]) -> String {
    if p.len() == 1 {
        return p[0].to_string();
    }
    let parts: Vec<&str> = p.iter().map(|t| t.as_str()).collect();
    format!("({})", parts.join(","))
}

/// All points of `{0,1/2,1}ⁿ` in canonical order: lexicographic in the chain
/// order with the first coordinate most significant.
pub fn cube_points(n: usize) -> Vec<Vec<Tri>> {
    let total = 3usize.pow(n as u32);
    (0..total).map(|i| cube_point(n, i)).collect()
}

pub fn cube_point(n: usize, mut index: usize) -> Vec<Tri> {
    let mut p = vec![Tri::Zero; n];
    for slot in p.iter_mut().rev() {
        *slot = Tri::ALL[index % 3];
        index /= 3;
    }
    p
}

pub fn cube_index(p: &[Tri]) -> usize {
    p.iter().fold(0, |acc, t| acc * 3 + t.index())
}
