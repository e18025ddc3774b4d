//! The state property space of a spin-1/2 entity restricted to finitely many
//! measurement directions and interior points.

use crate::geometry::{Direction, UNIT_TOL};
use crate::machine::BallPoint;

use super::space::FiniteStatePropertySpace;
use super::SpaError;

/// Properties are `0`, `a1`…`an`, `I` in that order. States are the surface
/// points `p1`…`pn`, the interior points `w1`…`wm`, and the maximal state `I`.
/// On the surface `ξ(p_i) = {a_i, I}`; everywhere else `ξ = {I}`.
///
/// The zero state, in which every property including `0` would be actual, is
/// left out so that the space stays a state property system.
pub fn build_spin_sps(directions: &[Direction], interior: &[BallPoint]) -> Result<FiniteStatePropertySpace, SpaError> {
    let n = directions.len();
    for i in 0..n {
        for j in i + 1..n {
            if directions[i].vec().distance(&directions[j].vec()) <= UNIT_TOL {
                return Err(SpaError::DuplicateDirection(i, j));
            }
        }
    }
    if let Some(k) = interior.iter().position(|w| w.is_surface()) {
        return Err(SpaError::InteriorOnSurface(k));
    }

    let mut properties = vec!["0".to_string()];
    properties.extend((1..=n).map(|i| format!("a{i}")));
    properties.push("I".into());
    let mut states: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    states.extend((1..=interior.len()).map(|j| format!("w{j}")));
    states.push("I".into());

    let top = n + 1;
    let actual = (0..states.len())
        .map(|p| (0..properties.len()).map(|a| a == top || (p < n && a == p + 1)).collect())
        .collect();
    FiniteStatePropertySpace::new(states, properties, actual)
}

/// Complement pairs `a_u ↔ a_{−u}` and `0 ↔ I` as property indices of
/// [`build_spin_sps`]. Every direction needs its antipode in the set.
pub fn spin_ortho(directions: &[Direction]) -> Result<Vec<(usize, usize)>, SpaError> {
    let n = directions.len();
    let mut pairs = vec![(0, n + 1)];
    for (i, u) in directions.iter().enumerate() {
        let minus = -*u;
        let j = directions
            .iter()
            .position(|v| v.vec().distance(&minus.vec()) <= UNIT_TOL)
            .ok_or(SpaError::NotClosedUnderNegation(i))?;
        if i < j {
            pairs.push((i + 1, j + 1));
        }
    }
    Ok(pairs)
}
