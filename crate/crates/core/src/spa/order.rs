//! Preorders, their quotients, and atoms of a preordered set.

use serde::{Deserialize, Serialize};

use super::SpaError;

/// A relation on `0..n` stored as a dense boolean matrix, `leq[x][y]` meaning `x ≺ y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preorder {
    leq: Vec<Vec<bool>>,
}

impl Preorder {
    pub fn from_matrix(leq: Vec<Vec<bool>>) -> Result<Self, SpaError> {
        let n = leq.len();
        if leq.iter().any(|row| row.len() != n) {
            return Err(SpaError::Shape(format!("order matrix is not {n}x{n}")));
        }
        Ok(Self { leq })
    }

    pub(crate) fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Self { leq: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// `x ≺ y` and not `y ≺ x`.
    pub fn strictly_below(&self, x: usize, y: usize) -> bool {
        self.leq[x][y] && !self.leq[y][x]
    }

    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.leq[x][y] && self.leq[y][x]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.leq[i][i])
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| !self.leq[i][j] || (0..n).all(|k| !self.leq[j][k] || self.leq[i][k])))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| i == j || !self.equivalent(i, j)))
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }

    /// Elements with nothing strictly below them.
    pub fn minimal_elements(&self) -> Vec<usize> {
        let n = self.len();
        (0..n).filter(|&x| (0..n).all(|y| !self.strictly_below(y, x))).collect()
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        (0..self.len()).all(|y| !self.strictly_below(y, x))
    }

    /// Adds a new element, with index `len()`, strictly below every existing one.
    pub fn adjoin_bottom(&self) -> Preorder {
        let n = self.len();
        Preorder::from_fn(n + 1, |i, j| i == n || (j != n && self.leq[i][j]))
    }

    /// Restriction to a subset of elements, re-indexed in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Preorder {
        Preorder::from_fn(keep.len(), |i, j| self.leq[keep[i]][keep[j]])
    }
}

/// Equivalence classes of a preorder under `x ≈ y`, with the induced partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// Members of each class in increasing order; classes sorted by first member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub order: Preorder,
}

impl Quotient {
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn is_identity(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

pub fn quotient_to_poset(p: &Preorder) -> Quotient {
    let n = p.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (x..n).filter(|&y| p.equivalent(x, y)).collect();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    let order = Preorder::from_fn(classes.len(), |i, j| p.leq(classes[i][0], classes[j][0]));
    Quotient { classes, class_of, order }
}

/// Atoms of a preordered set: non-minimal `x` such that every `y ≺ x` is
/// either equivalent to `x` or minimal.
pub fn atoms_of(p: &Preorder) -> Vec<usize> {
    let n = p.len();
    let minimal: Vec<bool> = (0..n).map(|x| p.is_minimal(x)).collect();
    (0..n)
        .filter(|&x| !minimal[x])
        .filter(|&x| (0..n).all(|y| !p.leq(y, x) || p.equivalent(x, y) || minimal[y]))
        .collect()
}
