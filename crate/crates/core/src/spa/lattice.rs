//! Finite lattices given by their order matrix, with precomputed meet and join tables.

use super::order::Preorder;
use super::SpaError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    order: Preorder,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

/// Greatest element of `candidates` under `leq`, if one exists.
fn greatest(order: &Preorder, candidates: &[usize]) -> Option<usize> {
    candidates.iter().copied().find(|&m| candidates.iter().all(|&z| order.leq(z, m)))
}

fn least(order: &Preorder, candidates: &[usize]) -> Option<usize> {
    candidates.iter().copied().find(|&m| candidates.iter().all(|&z| order.leq(m, z)))
}

impl FiniteLattice {
    /// Builds the lattice from a partial order, computing every pairwise meet
    /// and join from the sets of lower and upper bounds.
    pub fn from_order(labels: Vec<String>, order: Preorder) -> Result<Self, SpaError> {
        let n = order.len();
        if labels.len() != n {
            return Err(SpaError::Shape(format!("{} labels for {n} elements", labels.len())));
        }
        if n == 0 {
            return Err(SpaError::Shape("empty lattice".into()));
        }
        if !order.is_partial_order() {
            return Err(SpaError::NotPartialOrder);
        }
        let all: Vec<usize> = (0..n).collect();
        let bottom = least(&order, &all).ok_or_else(|| SpaError::NotALattice {
            a: labels[0].clone(),
            b: labels[0].clone(),
            missing: "bottom".into(),
        })?;
        let top = greatest(&order, &all).ok_or_else(|| SpaError::NotALattice {
            a: labels[0].clone(),
            b: labels[0].clone(),
            missing: "top".into(),
        })?;
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&z| order.leq(z, a) && order.leq(z, b)).collect();
                let upper: Vec<usize> = (0..n).filter(|&z| order.leq(a, z) && order.leq(b, z)).collect();
                let m = greatest(&order, &lower).ok_or_else(|| SpaError::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    missing: "meet".into(),
                })?;
                let j = least(&order, &upper).ok_or_else(|| SpaError::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    missing: "join".into(),
                })?;
                meet[a][b] = m;
                meet[b][a] = m;
                join[a][b] = j;
                join[b][a] = j;
            }
        }
        Ok(Self { labels, order, meet, join, bottom, top })
    }

    pub fn from_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, SpaError> {
        let n = labels.len();
        Self::from_order(labels, Preorder::from_fn(n, leq))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn order(&self) -> &Preorder {
        &self.order
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.order.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |m, x| self.meet(m, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |j, x| self.join(j, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `b` covers `a`: `a < b` with nothing in between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && (0..self.len()).all(|z| !(self.lt(a, z) && self.lt(z, b)))
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.covers(self.bottom, x)).collect()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.covers(x, self.top)).collect()
    }

    /// Length of the longest chain from the bottom up to each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&z| self.leq(z, x)).count());
        let mut h = vec![0; n];
        for &x in &order {
            h[x] = (0..n).filter(|&z| self.lt(z, x)).map(|z| h[z] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length of the longest chain from each element up to the top.
    pub fn depths(&self) -> Vec<usize> {
        self.dual().heights()
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.len();
        let order = Preorder::from_fn(n, |a, b| self.leq(b, a));
        Self {
            labels: self.labels.clone(),
            order,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// `{0, a1, …, an, I}` with pairwise incomparable atoms.
    pub fn mo(n: usize) -> Self {
        let mut labels = vec!["0".to_string()];
        labels.extend((1..=n).map(|i| format!("a{i}")));
        labels.push("I".into());
        let top = n + 1;
        Self::from_fn(labels, |a, b| a == b || a == 0 || b == top).expect("MO-n is a lattice")
    }

    /// Subsets of `{0, …, k-1}` ordered by inclusion; element index is the bit mask.
    pub fn boolean(k: u32) -> Self {
        let n = 1usize << k;
        let labels = (0..n)
            .map(|m| {
                let members: Vec<String> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        Self::from_fn(labels, |a, b| a & !b == 0).expect("boolean algebra is a lattice")
    }

    /// `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        Self::from_fn(labels, |a, b| a <= b).expect("a chain is a lattice")
    }

    /// The six-element ortholattice `0 < a < b < I`, `0 < b' < a' < I`, indexed
    /// `[0, a, b, b', a', I]`, which is not orthomodular.
    pub fn hexagon() -> Self {
        let labels = ["0", "a", "b", "b'", "a'", "I"].map(String::from).to_vec();
        let below = |x: usize, y: usize| match (x, y) {
            _ if x == y => true,
            (0, _) | (_, 5) => true,
            (1, 2) | (3, 4) => true,
            _ => false,
        };
        Self::from_fn(labels, below).expect("hexagon is a lattice")
    }

    /// Direct product with componentwise order; element `(i, j)` has index `i * other.len() + j`.
    pub fn direct_product(&self, other: &FiniteLattice) -> Self {
        let m = other.len();
        let mut labels = Vec::with_capacity(self.len() * m);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        Self::from_fn(labels, |x, y| self.leq(x / m, y / m) && other.leq(x % m, y % m))
            .expect("product of lattices is a lattice")
    }
}
