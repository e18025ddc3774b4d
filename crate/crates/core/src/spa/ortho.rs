//! Orthocomplementations: validation, search, and the checkers that need one.

use serde::Serialize;

use super::axioms::{Verdict, Witness};
use super::lattice::FiniteLattice;
use super::SpaError;

pub const ORTHO_SEARCH_CAP: usize = 64;

/// `perm[a] = a′`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthoMap {
    pub perm: Vec<usize>,
}

impl OrthoMap {
    /// Builds the map from unordered pairs `{a, a′}`; every element must appear exactly once.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, SpaError> {
        let mut perm = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(SpaError::InvalidOrtho(format!("pair ({a}, {b}) out of range")));
            }
            for (x, y) in [(a, b), (b, a)] {
                if perm[x] != usize::MAX && perm[x] != y {
                    return Err(SpaError::InvalidOrtho(format!("element {x} paired twice")));
                }
                perm[x] = y;
            }
        }
        if let Some(x) = perm.iter().position(|&y| y == usize::MAX) {
            return Err(SpaError::InvalidOrtho(format!("element {x} has no complement")));
        }
        Ok(Self { perm })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.perm[a]
    }

    /// The unordered pairs `{a, a′}` with `a ≤ a′` by index.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.perm.len()).filter(|&a| a <= self.perm[a]).map(|a| (a, self.perm[a])).collect()
    }

    /// Checks the three defining conditions exhaustively and names the first violation.
    pub fn validate(&self, l: &FiniteLattice) -> Result<(), SpaError> {
        let n = l.len();
        if self.perm.len() != n || self.perm.iter().any(|&y| y >= n) {
            return Err(SpaError::InvalidOrtho(format!("map does not act on {n} elements")));
        }
        for a in 0..n {
            if self.perm[self.perm[a]] != a {
                return Err(SpaError::InvalidOrtho(format!("{}′′ ≠ {}", l.label(a), l.label(a))));
            }
            if l.meet(a, self.perm[a]) != l.bottom() {
                return Err(SpaError::InvalidOrtho(format!("{} ∧ {}′ ≠ 0", l.label(a), l.label(a))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if l.leq(a, b) && !l.leq(self.perm[b], self.perm[a]) {
                    return Err(SpaError::InvalidOrtho(format!(
                        "{} ≤ {} but {}′ ≰ {}′",
                        l.label(a),
                        l.label(b),
                        l.label(b),
                        l.label(a)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, l: &FiniteLattice) -> bool {
        self.validate(l).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum OrthoSearch {
    Found { ortho: OrthoMap },
    /// Atom and coatom counts differ, so no order-reversing bijection exists.
    RefutedByCounting { atoms: usize, coatoms: usize },
    /// The backtracking search visited every candidate and found none.
    NoneExhaustive,
    Inconclusive { size: usize, cap: usize },
}

impl OrthoSearch {
    pub fn found(&self) -> Option<&OrthoMap> {
        match self {
            OrthoSearch::Found { ortho } => Some(ortho),
            _ => None,
        }
    }

    pub fn is_none_found(&self) -> bool {
        matches!(self, OrthoSearch::RefutedByCounting { .. } | OrthoSearch::NoneExhaustive)
    }
}

pub fn ortho_search(l: &FiniteLattice) -> OrthoSearch {
    ortho_search_with_cap(l, ORTHO_SEARCH_CAP)
}

pub fn ortho_search_with_cap(l: &FiniteLattice, cap: usize) -> OrthoSearch {
    let n = l.len();
    if n > cap {
        return OrthoSearch::Inconclusive { size: n, cap };
    }
    let (atoms, coatoms) = (l.atoms().len(), l.coatoms().len());
    if atoms != coatoms {
        return OrthoSearch::RefutedByCounting { atoms, coatoms };
    }
    let heights = l.heights();
    let depths = l.depths();
    let mut perm = vec![usize::MAX; n];
    if backtrack(l, &heights, &depths, &mut perm) {
        OrthoSearch::Found { ortho: OrthoMap { perm } }
    } else {
        OrthoSearch::NoneExhaustive
    }
}

/// Whether pairing `x ↔ y` is consistent with every pair already assigned.
fn compatible(l: &FiniteLattice, perm: &[usize], x: usize, y: usize) -> bool {
    if l.meet(x, y) != l.bottom() || l.join(x, y) != l.top() {
        return false;
    }
    let img = |u: usize| if u == x { y } else if u == y { x } else { perm[u] };
    for u in 0..l.len() {
        let v = img(u);
        if v == usize::MAX {
            continue;
        }
        for (s, t) in [(x, y), (y, x)] {
            if l.leq(s, u) && !l.leq(v, t) {
                return false;
            }
            if l.leq(u, s) && !l.leq(t, v) {
                return false;
            }
        }
    }
    true
}

fn backtrack(l: &FiniteLattice, heights: &[usize], depths: &[usize], perm: &mut [usize]) -> bool {
    let Some(x) = perm.iter().position(|&y| y == usize::MAX) else {
        return true;
    };
    for y in x..l.len() {
        if perm[y] != usize::MAX || heights[x] != depths[y] || !compatible(l, perm, x, y) {
            continue;
        }
        perm[x] = y;
        perm[y] = x;
        if backtrack(l, heights, depths, perm) {
            return true;
        }
        perm[x] = usize::MAX;
        perm[y] = usize::MAX;
    }
    false
}

/// `a ≤ b ⇒ (a ∨ b′) ∧ b = a`, with the lexicographically first failing pair as witness.
pub fn check_weak_modularity(l: &FiniteLattice, ortho: &OrthoMap) -> Verdict {
    if let Err(e) = ortho.validate(l) {
        return Verdict::NotApplicable { reason: e.to_string() };
    }
    for a in 0..l.len() {
        for b in 0..l.len() {
            if !l.leq(a, b) {
                continue;
            }
            let got = l.meet(l.join(a, ortho.apply(b)), b);
            if got != a {
                return Verdict::fails(Witness::new(
                    "weak_modularity",
                    l,
                    &[a, b],
                    format!("(a ∨ b′) ∧ b = {} ≠ a", l.label(got)),
                ));
            }
        }
    }
    Verdict::Holds { exhaustive: true }
}

/// `b` is central when `b = (b ∧ a) ∨ (b ∧ a′)` for every `a`.
fn is_central(l: &FiniteLattice, ortho: &OrthoMap, b: usize) -> bool {
    (0..l.len()).all(|a| l.join(l.meet(b, a), l.meet(b, ortho.apply(a))) == b)
}

/// Irreducible when only `0` and `I` are central; the first other central element is the witness.
pub fn check_irreducible(l: &FiniteLattice, ortho: &OrthoMap) -> Verdict {
    if let Err(e) = ortho.validate(l) {
        return Verdict::NotApplicable { reason: e.to_string() };
    }
    match (0..l.len()).find(|&b| b != l.bottom() && b != l.top() && is_central(l, ortho, b)) {
        Some(b) => Verdict::fails(Witness::new("central_element", l, &[b], "b commutes with every element".into())),
        None => Verdict::Holds { exhaustive: true },
    }
}

const EXACT_CHAIN_LIMIT: usize = 20;

/// Size of the largest set of pairwise orthogonal (`a ≤ b′`) nonzero elements.
/// Exact up to 20 elements; a greedy lower bound beyond. Returns `None` when
/// `ortho` is not an orthocomplementation.
pub fn longest_orthogonal_chain(l: &FiniteLattice, ortho: &OrthoMap) -> Option<usize> {
    ortho.validate(l).ok()?;
    let nonzero: Vec<usize> = (0..l.len()).filter(|&a| a != l.bottom()).collect();
    let k = nonzero.len();
    let adj: Vec<u64> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && l.leq(nonzero[i], ortho.apply(nonzero[j])))
                .fold(0u64, |m, j| if j < 64 { m | 1 << j } else { m })
        })
        .collect();
    if l.len() <= EXACT_CHAIN_LIMIT {
        let mut best = 0;
        max_clique(&adj, (1u64 << k) - 1, 0, &mut best);
        Some(best)
    } else {
        let is_orth = |a: usize, b: usize| l.leq(a, ortho.apply(b));
        let mut chosen: Vec<usize> = Vec::new();
        for &a in &nonzero {
            if chosen.iter().all(|&c| is_orth(a, c)) {
                chosen.push(a);
            }
        }
        Some(chosen.len())
    }
}

fn max_clique(adj: &[u64], mut candidates: u64, size: usize, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    while candidates != 0 {
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= !(1 << v);
        max_clique(adj, candidates & adj[v], size + 1, best);
    }
    *best = (*best).max(size);
}
