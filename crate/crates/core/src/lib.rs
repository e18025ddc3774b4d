//! Hidden-measurement model of spin-1/2 ("quantum machine") and its standard
//! Hilbert-space counterpart, together with a finite engine for state
//! property systems.
//!
//! - [`geometry`]: vectors, directions and spherical coordinates in ℝ³.
//! - [`machine`]: ball-point states, elastic experiments, exact transition
//!   probabilities and the seeded break-point sampler.
//! - [`hilbert`]: spinors, projectors, the Born and trace rules, densities for
//!   interior points, tensor products and partial traces.
//! - [`compound`]: two machines coupled by a rigid rod, correlations and CHSH.
//! - [`spa`]: finite state property spaces, their lattices and axiom checkers,
//!   and the coproduct of two systems.

pub mod compound;
pub mod geometry;
pub mod hilbert;
pub mod machine;
pub mod sharding;
pub mod spa;

pub use geometry::{Direction, Vec3};
pub use machine::{BallPoint, MachineExperiment, Outcome};
