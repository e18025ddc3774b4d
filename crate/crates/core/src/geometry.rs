//! Real three-vectors, unit directions and spherical coordinates.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Project-wide tolerance for unit norms and exact identities.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vector has zero length")]
    ZeroVector,
    #[error("vector has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("non-finite component in {0:?}")]
    NonFinite(Vec3),
    #[error("spherical coordinates out of range: rho={rho}, theta={theta}, phi={phi}")]
    SphericalRange { rho: f64, theta: f64, phi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Inner product `<self, other>`.
    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn distance(&self, other: &Vec3) -> f64 {
        (*self - *other).norm()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self * rhs.x, self * rhs.y, self * rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        rhs * self
    }
}

/// A point on the unit sphere, used to label experiments and surface states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec3", into = "Vec3")]
pub struct Direction(Vec3);

impl Direction {
    pub const Z: Direction = Direction(Vec3::new(0.0, 0.0, 1.0));
    pub const X: Direction = Direction(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: Direction = Direction(Vec3::new(0.0, 1.0, 0.0));

    /// Wraps `v` if it is already of unit length within [`UNIT_TOL`].
    pub fn new(v: Vec3) -> Result<Self, GeometryError> {
        if !v.is_finite() {
            return Err(GeometryError::NonFinite(v));
        }
        let n = v.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(GeometryError::NotUnit(n));
        }
        Ok(Self(v))
    }

    /// Rescales a nonzero vector onto the sphere.
    pub fn normalize(v: Vec3) -> Result<Self, GeometryError> {
        if !v.is_finite() {
            return Err(GeometryError::NonFinite(v));
        }
        let n = v.norm();
        if n == 0.0 {
            return Err(GeometryError::ZeroVector);
        }
        Ok(Self((1.0 / n) * v))
    }

    /// Direction with polar angle `theta` and azimuth `phi` (radians).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let s = theta.sin();
        Self(Vec3::new(s * phi.cos(), s * phi.sin(), theta.cos()))
    }

    /// Direction in the x-z plane at polar angle `theta` from +z.
    pub fn in_xz_plane(theta: f64) -> Self {
        Self(Vec3::new(theta.sin(), 0.0, theta.cos()))
    }

    pub fn vec(&self) -> Vec3 {
        self.0
    }

    pub fn dot(&self, v: &Vec3) -> f64 {
        self.0.dot(v)
    }

    /// Polar and azimuthal angles `(theta, phi)` with `theta ∈ [0, π]`, `phi ∈ [0, 2π)`.
    pub fn angles(&self) -> (f64, f64) {
        let s = cartesian_to_spherical(self.0);
        (s.theta, s.phi)
    }

    /// Some unit vector orthogonal to this one.
    pub fn orthogonal(&self) -> Direction {
        let v = self.0;
        let helper = if v.x.abs() < 0.9 { Vec3::new(1.0, 0.0, 0.0) } else { Vec3::new(0.0, 1.0, 0.0) };
        Direction::normalize(v.cross(&helper)).expect("cross product with non-parallel helper is nonzero")
    }

    /// The direction at angle `gamma` from `self`, rotated towards `toward`
    /// (which must be orthogonal to `self`).
    pub fn rotated_towards(&self, toward: &Direction, gamma: f64) -> Direction {
        let v = gamma.cos() * self.0 + gamma.sin() * toward.0;
        Direction::normalize(v).expect("rotation of a unit vector is nonzero")
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction(-self.0)
    }
}

impl TryFrom<Vec3> for Direction {
    type Error = GeometryError;
    fn try_from(v: Vec3) -> Result<Self, Self::Error> {
        Direction::new(v)
    }
}

impl From<Direction> for Vec3 {
    fn from(d: Direction) -> Vec3 {
        d.0
    }
}

/// Spherical coordinates: radius, polar angle from +z, azimuth from +x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spherical {
    pub rho: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Spherical {
    pub fn new(rho: f64, theta: f64, phi: f64) -> Result<Self, GeometryError> {
        let ok = rho.is_finite()
            && rho >= 0.0
            && (0.0..=PI).contains(&theta)
            && (0.0..TAU).contains(&phi);
        if !ok {
            return Err(GeometryError::SphericalRange { rho, theta, phi });
        }
        Ok(Self { rho, theta, phi })
    }
}

pub fn spherical_to_cartesian(s: Spherical) -> Vec3 {
    let st = s.theta.sin();
    Vec3::new(
        s.rho * st * s.phi.cos(),
        s.rho * st * s.phi.sin(),
        s.rho * s.theta.cos(),
    )
}

/// Inverse of [`spherical_to_cartesian`]. On the z axis the azimuth is 0,
/// and the origin maps to `(0, 0, 0)`.
pub fn cartesian_to_spherical(v: Vec3) -> Spherical {
    let rho = v.norm();
    if rho == 0.0 {
        return Spherical { rho: 0.0, theta: 0.0, phi: 0.0 };
    }
    let planar = v.x.hypot(v.y);
    // atan2 stays well conditioned near the poles, unlike acos(z / rho).
    let theta = planar.atan2(v.z);
    let phi = if planar == 0.0 { 0.0 } else { wrap_azimuth(v.y.atan2(v.x)) };
    Spherical { rho, theta, phi }
}

/// Maps any angle into `[0, 2π)`.
pub fn wrap_azimuth(phi: f64) -> f64 {
    let mut p = phi.rem_euclid(TAU);
    if p >= TAU {
        p -= TAU;
    }
    // normalizes -0.0
    p + 0.0
}

/// Angle in `[0, π]` between two nonzero vectors.
pub fn angle_between(u: &Vec3, v: &Vec3) -> Result<f64, GeometryError> {
    let nu = u.norm();
    let nv = v.norm();
    if nu == 0.0 || nv == 0.0 {
        return Err(GeometryError::ZeroVector);
    }
    let c = (u.dot(v) / (nu * nv)).clamp(-1.0, 1.0);
    Ok(c.acos())
}
