//! State property spaces `(Σ, 𝓛, ξ, κ)` over finite sets.

use std::collections::BTreeSet;

use super::bits::Bits;
use super::lattice::FiniteLattice;
use super::order::{atoms_of, quotient_to_poset, Preorder, Quotient};
use super::SpaError;

/// States, properties and the actuality relation. `κ` is read off the same
/// matrix as `ξ`, so `a ∈ ξ(p) ⇔ p ∈ κ(a)` holds by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStatePropertySpace {
    states: Vec<String>,
    properties: Vec<String>,
    /// `actual[p][a]`: property `a` is actual in state `p`.
    actual: Vec<Vec<bool>>,
}

fn check_unique(kind: &str, labels: &[String]) -> Result<(), SpaError> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(SpaError::DuplicateLabel(format!("{kind} {l}")));
        }
    }
    Ok(())
}

impl FiniteStatePropertySpace {
    pub fn new(states: Vec<String>, properties: Vec<String>, actual: Vec<Vec<bool>>) -> Result<Self, SpaError> {
        check_unique("state", &states)?;
        check_unique("property", &properties)?;
        if actual.len() != states.len() || actual.iter().any(|row| row.len() != properties.len()) {
            return Err(SpaError::Shape(format!(
                "actuality matrix must be {}x{}",
                states.len(),
                properties.len()
            )));
        }
        Ok(Self { states, properties, actual })
    }

    /// Builds ξ from `(state, property)` label pairs.
    pub fn from_pairs<S: AsRef<str>>(
        states: Vec<String>,
        properties: Vec<String>,
        pairs: &[(S, S)],
    ) -> Result<Self, SpaError> {
        let mut actual = vec![vec![false; properties.len()]; states.len()];
        for (p, a) in pairs {
            let (p, a) = (p.as_ref(), a.as_ref());
            let pi = states.iter().position(|s| s == p).ok_or_else(|| SpaError::UnknownLabel(p.to_string()))?;
            let ai = properties.iter().position(|s| s == a).ok_or_else(|| SpaError::UnknownLabel(a.to_string()))?;
            actual[pi][ai] = true;
        }
        Self::new(states, properties, actual)
    }

    /// The canonical space of a lattice: one state per nonzero element `x`,
    /// labelled `p[x]`, in which exactly the elements above `x` are actual.
    pub fn from_lattice(lattice: &FiniteLattice) -> Self {
        let states: Vec<usize> = (0..lattice.len()).filter(|&x| x != lattice.bottom()).collect();
        let actual = states
            .iter()
            .map(|&x| (0..lattice.len()).map(|y| lattice.leq(x, y)).collect())
            .collect();
        Self {
            states: states.iter().map(|&x| format!("p[{}]", lattice.label(x))).collect(),
            properties: lattice.labels().to_vec(),
            actual,
        }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn properties(&self) -> &[String] {
        &self.properties
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn n_properties(&self) -> usize {
        self.properties.len()
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn property_index(&self, label: &str) -> Option<usize> {
        self.properties.iter().position(|s| s == label)
    }

    pub fn is_actual(&self, state: usize, property: usize) -> bool {
        self.actual[state][property]
    }

    /// `ξ(p)` as property indices.
    pub fn xi(&self, state: usize) -> Vec<usize> {
        (0..self.n_properties()).filter(|&a| self.actual[state][a]).collect()
    }

    /// `κ(a)` as state indices.
    pub fn kappa(&self, property: usize) -> Vec<usize> {
        (0..self.n_states()).filter(|&p| self.actual[p][property]).collect()
    }

    pub(crate) fn kappa_bits(&self, property: usize) -> Bits {
        Bits::from_bools((0..self.n_states()).map(|p| self.actual[p][property]))
    }

    pub(crate) fn xi_bits(&self, state: usize) -> Bits {
        Bits::from_bools(self.actual[state].iter().copied())
    }

    /// All `(state, property)` pairs of the actuality relation in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n_states())
            .flat_map(|p| self.xi(p).into_iter().map(move |a| (p, a)))
            .collect()
    }

    /// `a ≺ b ⇔ κ(a) ⊂ κ(b)`.
    pub fn property_order(&self) -> Preorder {
        let ext: Vec<Bits> = (0..self.n_properties()).map(|a| self.kappa_bits(a)).collect();
        Preorder::from_fn(self.n_properties(), |a, b| ext[a].is_subset(&ext[b]))
    }

    /// `p ≺ q ⇔ ξ(q) ⊂ ξ(p)`.
    pub fn state_order(&self) -> Preorder {
        let int: Vec<Bits> = (0..self.n_states()).map(|p| self.xi_bits(p)).collect();
        Preorder::from_fn(self.n_states(), |p, q| int[q].is_subset(&int[p]))
    }

    /// `(property order, state order)`.
    pub fn induced_orders(&self) -> (Preorder, Preorder) {
        (self.property_order(), self.state_order())
    }

    /// The quotient of the property preorder as a lattice, with each class
    /// labelled by its first member. Fails when the poset is not a lattice.
    pub fn property_lattice(&self) -> Result<PropertyLattice, SpaError> {
        let quotient = quotient_to_poset(&self.property_order());
        let labels = quotient.classes.iter().map(|c| self.properties[c[0]].clone()).collect();
        let lattice = FiniteLattice::from_order(labels, quotient.order.clone())?;
        Ok(PropertyLattice { quotient, lattice })
    }

    /// Atoms of the state preorder, computed with the zero state (in which
    /// every property is actual) adjoined below Σ. With it the surface states
    /// of a spin system are exactly the atoms.
    pub fn atomic_states(&self) -> Vec<usize> {
        let n = self.n_states();
        atoms_of(&self.state_order().adjoin_bottom())
            .into_iter()
            .filter(|&p| p < n)
            .collect()
    }

    /// Checks `a ∈ ξ(p) ⇔ p ∈ κ(a)` from the two derived maps.
    pub fn duality_holds(&self) -> bool {
        (0..self.n_states()).all(|p| {
            let xi = self.xi(p);
            (0..self.n_properties()).all(|a| xi.contains(&a) == self.kappa(a).contains(&p))
        })
    }

    /// `a ∈ ξ(p)` and `a ≺ b` imply `b ∈ ξ(p)`.
    pub fn actuality_is_upward_closed(&self) -> bool {
        let order = self.property_order();
        (0..self.n_states()).all(|p| {
            (0..self.n_properties()).all(|a| {
                !self.actual[p][a] || (0..self.n_properties()).all(|b| !order.leq(a, b) || self.actual[p][b])
            })
        })
    }
}

/// The property lattice of a space together with the class map from properties.
#[derive(Debug, Clone)]
pub struct PropertyLattice {
    pub quotient: Quotient,
    pub lattice: FiniteLattice,
}

impl PropertyLattice {
    /// Lattice element containing property `a`.
    pub fn element_of(&self, property: usize) -> usize {
        self.quotient.class_of[property]
    }

    /// Representative property of lattice element `x`.
    pub fn property_of(&self, element: usize) -> usize {
        self.quotient.representative(element)
    }
}
