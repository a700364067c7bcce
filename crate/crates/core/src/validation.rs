//! Law-check reports shared by the algebra and space validators.

use std::fmt;

use serde::Serialize;

/// One violated law together with the first witness found and the total
/// number of witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation<L> {
    pub law: L,
    pub witness: Vec<String>,
    pub count: usize,
}

impl<L: fmt::Display> fmt::Display for Violation<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at ({})", self.law, self.witness.join(", "))?;
        if self.count > 1 {
            write!(f, " and {} more", self.count - 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport<L> {
    /// Pairs added to the order relation by reflexive-transitive closure.
    pub closure_added: usize,
    pub violations: Vec<Violation<L>>,
}

impl<L> ValidationReport<L> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Accumulates violations, keeping the first witness per law.
pub(crate) struct Collector<L> {
    violations: Vec<Violation<L>>,
}

impl<L: PartialEq + Copy> Collector<L> {
    pub fn new() -> Self {
        Collector { violations: Vec::new() }
    }

    pub fn record(&mut self, law: L, witness: impl FnOnce() -> Vec<String>) {
        if let Some(v) = self.violations.iter_mut().find(|v| v.law == law) {
            v.count += 1;
        } else {
            self.violations.push(Violation { law, witness: witness(), count: 1 });
        }
    }

    pub fn has(&self, law: L) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn finish(self) -> Vec<Violation<L>> {
        self.violations
    }
}

/// Reflexive-transitive closure in place (Warshall). Returns the number of
/// pairs added.
pub(crate) fn close_order(rel: &mut [Vec<bool>]) -> usize {
    let n = rel.len();
    let before: usize = rel.iter().map(|r| r.iter().filter(|b| **b).count()).sum();
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    let after: usize = rel.iter().map(|r| r.iter().filter(|b| **b).count()).sum();
    after - before
}

/// A linear extension of a partial order given as a matrix: indices sorted by
/// the size of their down-set, ties broken by index.
pub(crate) fn linear_extension(leq: &[Vec<bool>]) -> Vec<usize> {
    let n = leq.len();
    let mut order: Vec<usize> = (0..n).collect();
    let down: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| leq[y][x]).count()).collect();
    order.sort_by_key(|&x| (down[x], x));
    order
}
