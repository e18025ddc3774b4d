//! The coproduct of two state property systems: product states, pairs of
//! nonzero properties, and a single zero.

use super::axioms::check_axiom1;
use super::space::FiniteStatePropertySpace;
use super::SpaError;

/// The coproduct space with its structure maps. Property `0` has index 0 and
/// the pair of nonzero properties `(a1, a2)` follows in row-major order; state
/// `(p1, p2)` has index `p1 * |Σ₂| + p2`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub sps: FiniteStatePropertySpace,
    /// Component property indices of each coproduct property; `None` for `0`.
    pub components: Vec<Option<(usize, usize)>>,
    /// `n₁(a₁) = (a₁, I₂)`, with `0₁ ↦ 0`.
    pub n1: Vec<usize>,
    /// `n₂(a₂) = (I₁, a₂)`, with `0₂ ↦ 0`.
    pub n2: Vec<usize>,
    n_states2: usize,
}

impl Coproduct {
    /// `m₁(p₁, p₂) = p₁`.
    pub fn m1(&self, state: usize) -> usize {
        state / self.n_states2
    }

    /// `m₂(p₁, p₂) = p₂`.
    pub fn m2(&self, state: usize) -> usize {
        state % self.n_states2
    }

    pub fn state_of(&self, p1: usize, p2: usize) -> usize {
        p1 * self.n_states2 + p2
    }
}

/// Zero-class membership and a top representative for a system passing Axiom 1.
fn zero_and_unit(sps: &FiniteStatePropertySpace, which: &str) -> Result<(Vec<bool>, usize), SpaError> {
    if !check_axiom1(sps).holds() {
        return Err(SpaError::Precondition(format!("{which} input does not satisfy Axiom 1")));
    }
    let pl = sps.property_lattice()?;
    let l = &pl.lattice;
    let zero = (0..sps.n_properties()).map(|a| pl.element_of(a) == l.bottom()).collect();
    Ok((zero, pl.property_of(l.top())))
}

pub fn coproduct(sps1: &FiniteStatePropertySpace, sps2: &FiniteStatePropertySpace) -> Result<Coproduct, SpaError> {
    let (zero1, top1) = zero_and_unit(sps1, "first")?;
    let (zero2, top2) = zero_and_unit(sps2, "second")?;
    let nz1: Vec<usize> = (0..sps1.n_properties()).filter(|&a| !zero1[a]).collect();
    let nz2: Vec<usize> = (0..sps2.n_properties()).filter(|&a| !zero2[a]).collect();

    let mut properties = vec!["0".to_string()];
    let mut components = vec![None];
    let mut index = vec![vec![0usize; sps2.n_properties()]; sps1.n_properties()];
    for &a1 in &nz1 {
        for &a2 in &nz2 {
            index[a1][a2] = properties.len();
            properties.push(format!("({},{})", sps1.properties()[a1], sps2.properties()[a2]));
            components.push(Some((a1, a2)));
        }
    }
    let mut states = Vec::with_capacity(sps1.n_states() * sps2.n_states());
    let mut actual = Vec::with_capacity(states.capacity());
    for p1 in 0..sps1.n_states() {
        for p2 in 0..sps2.n_states() {
            states.push(format!("({},{})", sps1.states()[p1], sps2.states()[p2]));
            actual.push(
                components
                    .iter()
                    .map(|c| c.is_some_and(|(a1, a2)| sps1.is_actual(p1, a1) && sps2.is_actual(p2, a2)))
                    .collect(),
            );
        }
    }
    let sps = FiniteStatePropertySpace::new(states, properties, actual)?;
    let n1 = (0..sps1.n_properties()).map(|a1| if zero1[a1] { 0 } else { index[a1][top2] }).collect();
    let n2 = (0..sps2.n_properties()).map(|a2| if zero2[a2] { 0 } else { index[top1][a2] }).collect();
    Ok(Coproduct { sps, components, n1, n2, n_states2: sps2.n_states() })
}
