//! The quantum machine: a point particle in the closed unit ball, measured by
//! elastics stretched between antipodal points of the sphere.
//!
//! An experiment `e_u` drops the particle orthogonally onto the elastic running
//! from `-u` to `u`, where it lands at coordinate `x = <u, w>`. The elastic then
//! breaks at a uniformly distributed point of its breakable segment `[-ε, ε]`,
//! and the particle is dragged to `u` (outcome [`Outcome::O1`]) when the break
//! lies below `x`, to `-u` (outcome [`Outcome::O2`]) otherwise.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Direction, Vec3, UNIT_TOL};
use crate::sharding::{self, GENERATOR_ID};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MachineError {
    #[error("point {0:?} lies outside the unit ball")]
    OutsideBall(Vec3),
    #[error("epsilon must lie in (0, 1], got {0}")]
    Epsilon(f64),
    #[error("break point {0} outside [-1, 1]")]
    BreakPoint(f64),
    #[error("number of trials must be at least 1")]
    NoTrials,
}

/// State of the machine: the particle position `w`, `|w| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallPoint(Vec3);

impl BallPoint {
    pub const CENTER: BallPoint = BallPoint(Vec3::ZERO);

    pub fn new(w: Vec3) -> Result<Self, MachineError> {
        if !w.is_finite() || w.norm() > 1.0 + UNIT_TOL {
            return Err(MachineError::OutsideBall(w));
        }
        Ok(Self(w))
    }

    pub fn surface(u: Direction) -> Self {
        Self(u.vec())
    }

    pub fn vec(&self) -> Vec3 {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_surface(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOL
    }
}

impl From<Direction> for BallPoint {
    fn from(u: Direction) -> Self {
        BallPoint::surface(u)
    }
}

/// Experiment `e_u` performed with an ε-elastic. `epsilon = 1` is the
/// quantum elastic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachineExperiment {
    direction: Direction,
    epsilon: f64,
}

impl MachineExperiment {
    pub fn new(direction: Direction, epsilon: f64) -> Result<Self, MachineError> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(MachineError::Epsilon(epsilon));
        }
        Ok(Self { direction, epsilon })
    }

    pub fn quantum(direction: Direction) -> Self {
        Self { direction, epsilon: 1.0 }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    O1,
    O2,
}

impl Outcome {
    /// `+1` for `O1`, `-1` for `O2`.
    pub fn sign(self) -> i32 {
        match self {
            Outcome::O1 => 1,
            Outcome::O2 => -1,
        }
    }
}

/// `(μ(o₁), μ(o₂))` for the quantum elastic: `μ₁ = (1 + <u, w>) / 2`.
///
/// On the surface this is `(cos²(γ/2), sin²(γ/2))`, `γ` the angle between `u`
/// and `w`; for interior points it is the length of the elastic piece between
/// the landing point and `-u`, divided by the total length 2.
pub fn transition_probability(u: &Direction, w: &BallPoint) -> (f64, f64) {
    let x = u.dot(&w.vec()).clamp(-1.0, 1.0);
    let mu1 = 0.5 * (1.0 + x);
    (mu1, 1.0 - mu1)
}

/// `(μ(o₁), μ(o₂))` for an ε-elastic.
pub fn epsilon_probability(e: &MachineExperiment, w: &BallPoint) -> (f64, f64) {
    let eps = e.epsilon;
    let x = e.direction.dot(&w.vec()).clamp(-1.0, 1.0);
    if x <= -eps {
        (0.0, 1.0)
    } else if x >= eps {
        (1.0, 0.0)
    } else {
        let mu1 = (eps + x) / (2.0 * eps);
        (mu1, 1.0 - mu1)
    }
}

/// Deterministic hidden measurement: the elastic breaks at `break_point`.
/// A break exactly at the landing point sends the particle to `-u`.
pub fn apply_break(
    u: &Direction,
    w: &BallPoint,
    break_point: f64,
) -> Result<(Outcome, BallPoint), MachineError> {
    if !(-1.0..=1.0).contains(&break_point) {
        return Err(MachineError::BreakPoint(break_point));
    }
    Ok(break_unchecked(u, w, break_point))
}

fn break_unchecked(u: &Direction, w: &BallPoint, break_point: f64) -> (Outcome, BallPoint) {
    if break_point < u.dot(&w.vec()) {
        (Outcome::O1, BallPoint::surface(*u))
    } else {
        (Outcome::O2, BallPoint::surface(-*u))
    }
}

/// Draws the break point uniformly on `[-ε, ε)` and applies it.
pub fn sample_measurement<R: Rng + ?Sized>(
    e: &MachineExperiment,
    w: &BallPoint,
    rng: &mut R,
) -> (Outcome, BallPoint) {
    let lambda = e.epsilon * (2.0 * rng.random::<f64>() - 1.0);
    break_unchecked(&e.direction, w, lambda)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub n_trials: u64,
    pub count_o1: u64,
    pub count_o2: u64,
    pub freq_o1: f64,
    pub analytic_o1: f64,
    pub seed: u64,
    pub generator: String,
}

impl TrialReport {
    pub fn deviation(&self) -> f64 {
        (self.freq_o1 - self.analytic_o1).abs()
    }
}

/// `n` independent measurements of `e` on fresh copies of state `w`.
pub fn run_trials(
    e: &MachineExperiment,
    w: &BallPoint,
    n: u64,
    seed: u64,
) -> Result<TrialReport, MachineError> {
    if n == 0 {
        return Err(MachineError::NoTrials);
    }
    let count_o1: u64 = sharding::map_shards(n, seed, |rng, len| {
        (0..len)
            .filter(|_| sample_measurement(e, w, rng).0 == Outcome::O1)
            .count() as u64
    })
    .into_iter()
    .sum();
    Ok(TrialReport {
        n_trials: n,
        count_o1,
        count_o2: n - count_o1,
        freq_o1: count_o1 as f64 / n as f64,
        analytic_o1: epsilon_probability(e, w).0,
        seed,
        generator: GENERATOR_ID.to_string(),
    })
}
