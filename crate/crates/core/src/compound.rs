//! Two quantum machines coupled by a rigid rod.
//!
//! Both particles start at the centers of their balls, joined by a rod through
//! the centers. Measuring one side drags its particle to `±a`; the rod then
//! holds the other particle at the antipodal point, where it is measured as an
//! ordinary surface state.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::Direction;
use crate::hilbert::{self, HilbertError};
use crate::machine::{sample_measurement, BallPoint, MachineError, MachineExperiment, Outcome};
use crate::sharding::{self, GENERATOR_ID};

/// Which machine the rod mechanism measures first. The joint statistics do
/// not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MeasurementOrder {
    #[default]
    FirstThenSecond,
    SecondThenFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RodModel {
    pub order: MeasurementOrder,
}

impl RodModel {
    pub fn new(order: MeasurementOrder) -> Self {
        Self { order }
    }

    /// One joint trial: outcome of machine 1 along `a`, of machine 2 along `b`.
    pub fn sample<R: Rng + ?Sized>(&self, a: &Direction, b: &Direction, rng: &mut R) -> (Outcome, Outcome) {
        match self.order {
            MeasurementOrder::FirstThenSecond => leader_then_follower(a, b, rng),
            MeasurementOrder::SecondThenFirst => {
                let (o2, o1) = leader_then_follower(b, a, rng);
                (o1, o2)
            }
        }
    }
}

fn leader_then_follower<R: Rng + ?Sized>(lead: &Direction, follow: &Direction, rng: &mut R) -> (Outcome, Outcome) {
    let (o_lead, end) = sample_measurement(&MachineExperiment::quantum(*lead), &BallPoint::CENTER, rng);
    let pushed = BallPoint::new(-end.vec()).expect("antipode of a surface point lies on the sphere");
    let (o_follow, _) = sample_measurement(&MachineExperiment::quantum(*follow), &pushed, rng);
    (o_lead, o_follow)
}

/// One trial of the rod model with machine 1 measured first.
pub fn sample_correlated_pair<R: Rng + ?Sized>(a: &Direction, b: &Direction, rng: &mut R) -> (Outcome, Outcome) {
    RodModel::default().sample(a, b, rng)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub a: Direction,
    pub b: Direction,
    pub n: u64,
    /// Counts indexed `[o1 of side 1, o2 of side 1][o1 of side 2, o2 of side 2]`.
    pub counts: [[u64; 2]; 2],
    pub e: f64,
    pub seed: u64,
    pub generator: String,
}

impl CorrelationReport {
    /// Fraction of trials where machine 1 gave `O1`.
    pub fn marginal_first(&self) -> f64 {
        (self.counts[0][0] + self.counts[0][1]) as f64 / self.n as f64
    }

    pub fn marginal_second(&self) -> f64 {
        (self.counts[0][0] + self.counts[1][0]) as f64 / self.n as f64
    }
}

fn slot(o: Outcome) -> usize {
    match o {
        Outcome::O1 => 0,
        Outcome::O2 => 1,
    }
}

pub fn estimate_correlation(a: &Direction, b: &Direction, n: u64, seed: u64) -> Result<CorrelationReport, MachineError> {
    estimate_correlation_with(RodModel::default(), a, b, n, seed)
}

/// `E = (n₊₊ + n₋₋ - n₊₋ - n₋₊) / n` over `n` rod-model trials.
pub fn estimate_correlation_with(
    model: RodModel,
    a: &Direction,
    b: &Direction,
    n: u64,
    seed: u64,
) -> Result<CorrelationReport, MachineError> {
    if n == 0 {
        return Err(MachineError::NoTrials);
    }
    let mut counts = [[0u64; 2]; 2];
    for shard in sharding::map_shards(n, seed, |rng, len| {
        let mut c = [[0u64; 2]; 2];
        for _ in 0..len {
            let (o1, o2) = model.sample(a, b, rng);
            c[slot(o1)][slot(o2)] += 1;
        }
        c
    }) {
        for i in 0..2 {
            for j in 0..2 {
                counts[i][j] += shard[i][j];
            }
        }
    }
    let agree = (counts[0][0] + counts[1][1]) as f64;
    let disagree = (counts[0][1] + counts[1][0]) as f64;
    Ok(CorrelationReport {
        a: *a,
        b: *b,
        n,
        counts,
        e: (agree - disagree) / n as f64,
        seed,
        generator: GENERATOR_ID.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChshReport {
    /// `E(a,b), E(a,b'), E(a',b), E(a',b')`.
    pub correlations: [CorrelationReport; 4],
    pub s: f64,
}

/// `S = |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')|`. The four correlations run
/// with seeds `seed, seed+1, seed+2, seed+3`.
pub fn chsh_report(
    a: &Direction,
    a2: &Direction,
    b: &Direction,
    b2: &Direction,
    n: u64,
    seed: u64,
) -> Result<ChshReport, MachineError> {
    let settings = [(a, b), (a, b2), (a2, b), (a2, b2)];
    let mut reports = Vec::with_capacity(4);
    for (k, (x, y)) in settings.into_iter().enumerate() {
        reports.push(estimate_correlation(x, y, n, seed.wrapping_add(k as u64))?);
    }
    let correlations: [CorrelationReport; 4] = reports.try_into().expect("four settings");
    let e: Vec<f64> = correlations.iter().map(|r| r.e).collect();
    let s = chsh_combination(e[0], e[1], e[2], e[3]);
    Ok(ChshReport { correlations, s })
}

pub fn chsh_value(a: &Direction, a2: &Direction, b: &Direction, b2: &Direction, n: u64, seed: u64) -> Result<f64, MachineError> {
    Ok(chsh_report(a, a2, b, b2, n, seed)?.s)
}

pub fn chsh_combination(e_ab: f64, e_ab2: f64, e_a2b: f64, e_a2b2: f64) -> f64 {
    (e_ab - e_ab2).abs() + (e_a2b + e_a2b2).abs()
}

/// Singlet-state correlation `E_qm(a, b)` from the Born rule on C² ⊗ C².
pub fn singlet_correlation(a: &Direction, b: &Direction) -> Result<f64, HilbertError> {
    hilbert::correlation(&hilbert::singlet_state(), a, b)
}
