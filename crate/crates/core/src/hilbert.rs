//! Standard description of spin-1/2 on C², plus the C² ⊗ C² machinery for
//! two spins.
//!
//! Kets are column vectors, `inner(a, b) = Σ conj(aᵢ)·bᵢ`. Two-spin basis
//! vectors are ordered `|00⟩, |01⟩, |10⟩, |11⟩` with the first factor as the
//! high index.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::{cartesian_to_spherical, wrap_azimuth, Direction, UNIT_TOL};
use crate::machine::BallPoint;

pub type Complex = Complex64;

/// Tolerance for validating projections and densities built from computed values.
pub const OPERATOR_TOL: f64 = 1e-10;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HilbertError {
    #[error("vector has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("operator is not a projection (|P²-P| = {idempotence:e}, |P-P†| = {adjointness:e})")]
    NotProjection { idempotence: f64, adjointness: f64 },
    #[error("collapse undefined: outcome probability {0:e} is zero")]
    CollapseUndefined(f64),
    #[error("not a density operator: {0}")]
    NotDensity(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ket<const N: usize>(pub [Complex; N]);

pub type Spinor2 = Ket<2>;
pub type Spinor4 = Ket<4>;

impl<const N: usize> Ket<N> {
    /// Accepts `amps` when its norm is 1 within [`UNIT_TOL`].
    pub fn new(amps: [Complex; N]) -> Result<Self, HilbertError> {
        let k = Ket(amps);
        let n = k.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(HilbertError::NotUnit(n));
        }
        Ok(k)
    }

    pub fn normalize(amps: [Complex; N]) -> Result<Self, HilbertError> {
        let k = Ket(amps);
        let n = k.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(HilbertError::NotUnit(n));
        }
        Ok(k.scale(Complex::new(1.0 / n, 0.0)))
    }

    pub fn amplitudes(&self) -> &[Complex; N] {
        &self.0
    }

    pub fn inner(&self, other: &Ket<N>) -> Complex {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex) -> Ket<N> {
        Ket(self.0.map(|a| a * s))
    }

    /// Equality as rays: `|⟨a, b⟩| = 1` within `tol`.
    pub fn same_ray(&self, other: &Ket<N>, tol: f64) -> bool {
        (self.inner(other).norm() - 1.0).abs() <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize>(pub [[Complex; N]; N]);

pub type Operator2 = Matrix<2>;
pub type Operator4 = Matrix<4>;

impl<const N: usize> Matrix<N> {
    pub fn zero() -> Self {
        Matrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Matrix(m)
    }

    /// `|c⟩⟨c|`.
    pub fn outer(c: &Ket<N>) -> Self {
        let mut m = [[ZERO; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = c.0[i] * c.0[j].conj();
            }
        }
        Matrix(m)
    }

    pub fn adjoint(&self) -> Self {
        let mut m = [[ZERO; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.0[j][i].conj();
            }
        }
        Matrix(m)
    }

    pub fn trace(&self) -> Complex {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: Complex) -> Self {
        Matrix(self.0.map(|row| row.map(|e| e * s)))
    }

    pub fn apply(&self, c: &Ket<N>) -> Ket<N> {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|j| self.0[i][j] * c.0[j]).sum();
        }
        Ket(out)
    }

    /// `⟨c, A c⟩`.
    pub fn expectation(&self, c: &Ket<N>) -> Complex {
        c.inner(&self.apply(c))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix<N>) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..N {
            for j in 0..N {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|e| e.re.is_finite() && e.im.is_finite())
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Checks `P² = P` and `P = P†` in the max-entry norm.
    pub fn validate_projection(&self) -> Result<(), HilbertError> {
        let idempotence = (*self * *self).max_abs_diff(self);
        let adjointness = self.max_abs_diff(&self.adjoint());
        if !self.is_finite() || idempotence > OPERATOR_TOL || adjointness > OPERATOR_TOL {
            return Err(HilbertError::NotProjection { idempotence, adjointness });
        }
        Ok(())
    }

    /// Positive semidefiniteness of a self-adjoint matrix by an LDL†
    /// elimination that tolerates pivots down to `-tol`.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        let mut a = self.0;
        for k in 0..N {
            let d = a[k][k].re;
            if d < -tol {
                return false;
            }
            if d <= tol {
                // A (near) zero pivot forces the rest of its column to vanish.
                if (k + 1..N).any(|i| a[i][k].norm() > tol.sqrt()) {
                    return false;
                }
                continue;
            }
            for i in k + 1..N {
                for j in k + 1..N {
                    let upd = a[i][k] * a[j][k].conj() / d;
                    a[i][j] -= upd;
                }
            }
        }
        true
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, rhs: Matrix<N>) -> Matrix<N> {
        let mut m = [[ZERO; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..N).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Matrix(m)
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Matrix<N>;
    fn add(self, rhs: Matrix<N>) -> Matrix<N> {
        let mut m = self.0;
        for i in 0..N {
            for j in 0..N {
                m[i][j] += rhs.0[i][j];
            }
        }
        Matrix(m)
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Matrix<N>;
    fn sub(self, rhs: Matrix<N>) -> Matrix<N> {
        let mut m = self.0;
        for i in 0..N {
            for j in 0..N {
                m[i][j] -= rhs.0[i][j];
            }
        }
        Matrix(m)
    }
}

/// Eigenvalues `(λ_max, λ_min)` of a self-adjoint 2×2 matrix from its trace
/// and determinant.
pub fn eigenvalues_2x2(m: &Operator2) -> (f64, f64) {
    let half_tr = 0.5 * (m.0[0][0].re + m.0[1][1].re);
    let diff = 0.5 * (m.0[0][0].re - m.0[1][1].re);
    let r = (diff * diff + m.0[0][1].norm_sqr()).sqrt();
    (half_tr + r, half_tr - r)
}

/// A self-adjoint, positive, trace-one operator on C².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density2(Operator2);

impl Density2 {
    pub fn new(m: Operator2) -> Result<Self, HilbertError> {
        if !m.is_finite() || !m.is_self_adjoint(UNIT_TOL) {
            return Err(HilbertError::NotDensity("not self-adjoint".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > UNIT_TOL || tr.im.abs() > UNIT_TOL {
            return Err(HilbertError::NotDensity(format!("trace {tr}")));
        }
        if eigenvalues_2x2(&m).1 < -UNIT_TOL {
            return Err(HilbertError::NotDensity("negative eigenvalue".into()));
        }
        Ok(Self(m))
    }

    pub fn pure(c: &Spinor2) -> Self {
        Self(Operator2::outer(c))
    }

    pub fn operator(&self) -> &Operator2 {
        &self.0
    }

    pub fn eigenvalues(&self) -> (f64, f64) {
        eigenvalues_2x2(&self.0)
    }

    /// `w` with `W = (I + w·σ)/2`; the point of the ball this density represents.
    pub fn bloch_vector(&self) -> crate::geometry::Vec3 {
        let m = &self.0 .0;
        crate::geometry::Vec3::new(2.0 * m[0][1].re, -2.0 * m[0][1].im, (m[0][0] - m[1][1]).re)
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.eigenvalues().1.abs() <= tol
    }
}

/// Spin state pointing along spherical angles `(theta, phi)`:
/// `(cos(θ/2)·e^{-iφ/2}, sin(θ/2)·e^{+iφ/2})`.
///
/// This phase assignment makes `|c⟩⟨c|` equal to [`projector_for_direction`]
/// at the same angles.
pub fn spin_state(theta: f64, phi: f64) -> Spinor2 {
    let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    Ket([
        Complex::from_polar(c, -0.5 * phi),
        Complex::from_polar(s, 0.5 * phi),
    ])
}

pub fn spin_state_for(v: &Direction) -> Spinor2 {
    let (theta, phi) = v.angles();
    spin_state(theta, phi)
}

/// `P_u` for `u = (1, alpha, beta)`.
pub fn projector_for_direction(alpha: f64, beta: f64) -> Operator2 {
    let (ca, sa) = (alpha.cos(), alpha.sin());
    Matrix([
        [Complex::new(0.5 * (1.0 + ca), 0.0), Complex::from_polar(0.5 * sa, -beta)],
        [Complex::from_polar(0.5 * sa, beta), Complex::new(0.5 * (1.0 - ca), 0.0)],
    ])
}

pub fn projector_for(u: &Direction) -> Operator2 {
    let (alpha, beta) = u.angles();
    projector_for_direction(alpha, beta)
}

/// `⟨c, P c⟩` for a projection `P`.
pub fn born_probability(c: &Spinor2, p: &Operator2) -> Result<f64, HilbertError> {
    p.validate_projection()?;
    Ok(p.expectation(c).re.clamp(0.0, 1.0))
}

/// State after outcome `P`: `P c / |P c|`.
pub fn collapse(c: &Spinor2, p: &Operator2) -> Result<Spinor2, HilbertError> {
    let prob = born_probability(c, p)?;
    if prob <= UNIT_TOL {
        return Err(HilbertError::CollapseUndefined(prob));
    }
    Ket::normalize(p.apply(c).0)
}

/// `λ₁ W(v) + λ₂ W(-v)` with `w = (λ₁ - λ₂) v`, `v = w/|w|`
/// (`v = ẑ` at the center).
pub fn density_from_ball_point(w: &BallPoint) -> Density2 {
    let r = w.norm().min(1.0);
    let (theta, phi) = if r == 0.0 {
        (0.0, 0.0)
    } else {
        let s = cartesian_to_spherical(w.vec());
        (s.theta, s.phi)
    };
    let lambda1 = 0.5 * (1.0 + r);
    let lambda2 = 1.0 - lambda1;
    let up = Operator2::outer(&spin_state(theta, phi));
    let down = Operator2::outer(&spin_state(std::f64::consts::PI - theta, wrap_azimuth(phi + std::f64::consts::PI)));
    let mut m = up.scale(Complex::new(lambda1, 0.0)) + down.scale(Complex::new(lambda2, 0.0));
    // exact self-adjointness on the diagonal
    m.0[0][0].im = 0.0;
    m.0[1][1].im = 0.0;
    let avg = 0.5 * (m.0[0][1] + m.0[1][0].conj());
    m.0[0][1] = avg;
    m.0[1][0] = avg.conj();
    Density2(m)
}

/// `tr(W·P)`.
pub fn trace_probability(w: &Density2, p: &Operator2) -> f64 {
    (w.0 * *p).trace().re
}

pub fn tensor_state(c1: &Spinor2, c2: &Spinor2) -> Spinor4 {
    let (a, b) = (c1.0, c2.0);
    Ket([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
}

pub fn tensor_op(a: &Operator2, b: &Operator2) -> Operator4 {
    let mut m = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[2 * i + j][2 * k + l] = a.0[i][k] * b.0[j][l];
                }
            }
        }
    }
    Matrix(m)
}

/// `(|01⟩ - |10⟩)/√2`.
pub fn singlet_state() -> Spinor4 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ket([ZERO, Complex::new(h, 0.0), Complex::new(-h, 0.0), ZERO])
}

/// `⟨c, (Pa ⊗ Pb) c⟩`.
pub fn joint_probability(c: &Spinor4, pa: &Operator2, pb: &Operator2) -> Result<f64, HilbertError> {
    pa.validate_projection()?;
    pb.validate_projection()?;
    Ok(tensor_op(pa, pb).expectation(c).re)
}

/// `E(a, b) = Σ s·t·P(s, t)` over the four joint outcomes, `±1` per side.
pub fn correlation(c: &Spinor4, a: &Direction, b: &Direction) -> Result<f64, HilbertError> {
    let id = Operator2::identity();
    let pa = projector_for(a);
    let pb = projector_for(b);
    let sides_a = [(1.0, pa), (-1.0, id - pa)];
    let sides_b = [(1.0, pb), (-1.0, id - pb)];
    let mut e = 0.0;
    for (s, p) in &sides_a {
        for (t, q) in &sides_b {
            e += s * t * joint_probability(c, p, q)?;
        }
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Checks a C⁴ operator is self-adjoint, trace one and positive within
/// [`OPERATOR_TOL`].
pub fn validate_density4(rho: &Operator4) -> Result<(), HilbertError> {
    if !rho.is_finite() || !rho.is_self_adjoint(OPERATOR_TOL) {
        return Err(HilbertError::NotDensity("not self-adjoint".into()));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > OPERATOR_TOL || tr.im.abs() > OPERATOR_TOL {
        return Err(HilbertError::NotDensity(format!("trace {tr}")));
    }
    if !rho.is_positive_semidefinite(OPERATOR_TOL) {
        return Err(HilbertError::NotDensity("not positive".into()));
    }
    Ok(())
}

/// Reduced density of subsystem `keep`, tracing out the other factor.
pub fn partial_trace(rho: &Operator4, keep: Subsystem) -> Result<Density2, HilbertError> {
    validate_density4(rho)?;
    let mut m = [[ZERO; 2]; 2];
    for (x, row) in m.iter_mut().enumerate() {
        for (y, e) in row.iter_mut().enumerate() {
            *e = (0..2)
                .map(|k| match keep {
                    Subsystem::First => rho.0[2 * x + k][2 * y + k],
                    Subsystem::Second => rho.0[2 * k + x][2 * k + y],
                })
                .sum();
        }
    }
    Density2::new(Matrix(m))
}

/// Schmidt coefficients (singular values of the 2×2 amplitude matrix),
/// largest first.
pub fn schmidt_coefficients(c: &Spinor4) -> (f64, f64) {
    let a = c.0;
    let amp = Matrix([[a[0], a[1]], [a[2], a[3]]]);
    let gram = amp.adjoint() * amp;
    let (hi, lo) = eigenvalues_2x2(&gram);
    (hi.max(0.0).sqrt(), lo.max(0.0).sqrt())
}

/// Rank of the amplitude matrix: 1 for product states, 2 otherwise.
pub fn schmidt_rank(c: &Spinor4, tol: f64) -> usize {
    let (hi, lo) = schmidt_coefficients(c);
    usize::from(hi > tol) + usize::from(lo > tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec3;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn spin_state_poles() {
        assert_eq!(spin_state(0.0, 0.0).0, [ONE, c(0.0, 0.0)]);
        let s = spin_state(PI, 0.0);
        assert!(s.0[0].norm() < 1e-16 && (s.0[1] - ONE).norm() < 1e-16);
    }

    #[test]
    fn opposite_states_orthogonal() {
        for &(t, p) in &[(0.3, 0.2), (1.2, 4.0), (2.9, 6.0), (FRAC_PI_2, PI)] {
            let v = spin_state(t, p);
            let minus = spin_state(PI - t, wrap_azimuth(p + PI));
            assert!(v.inner(&minus).norm() < 1e-15);
            assert!((v.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn projector_examples() {
        let pz = projector_for_direction(0.0, 0.0);
        assert!(pz.max_abs_diff(&Matrix([[ONE, ZERO], [ZERO, ZERO]])) < 1e-16);
        let pm = projector_for_direction(PI, 0.0);
        assert!(pm.max_abs_diff(&Matrix([[ZERO, ZERO], [ZERO, ONE]])) < 1e-16);
        for &(a, b) in &[(0.4, 0.1), (2.0, 5.5)] {
            let p = projector_for_direction(a, b);
            assert!((p.trace() - ONE).norm() < 1e-15);
            p.validate_projection().unwrap();
            let neg = projector_for_direction(PI - a, wrap_azimuth(b + PI));
            assert!((Operator2::identity() - p).max_abs_diff(&neg) < 1e-12);
            assert!(Operator2::outer(&spin_state(a, b)).max_abs_diff(&p) < 1e-15);
        }
    }

    #[test]
    fn born_examples() {
        let (t, p) = (1.1, 2.3);
        let st = spin_state(t, p);
        assert!((born_probability(&st, &projector_for_direction(t, p)).unwrap() - 1.0).abs() < 1e-12);
        let z = projector_for_direction(0.0, 0.0);
        assert!((born_probability(&st, &z).unwrap() - (t / 2.0).cos().powi(2)).abs() < 1e-12);
        let bad = Matrix([[ONE, ONE], [ZERO, ZERO]]);
        assert!(matches!(born_probability(&st, &bad), Err(HilbertError::NotProjection { .. })));
    }

    #[test]
    fn collapse_examples() {
        let (t, p): (f64, f64) = (0.9, 1.7);
        let raw = Ket([Complex::from_polar((t / 2.0).cos(), p / 2.0), Complex::from_polar((t / 2.0).sin(), -p / 2.0)]);
        let z = projector_for_direction(0.0, 0.0);
        let out = collapse(&raw, &z).unwrap();
        // direct application: (cos(θ/2) e^{iφ/2}, 0) normalized
        let expected = Ket([Complex::from_polar(1.0, p / 2.0), ZERO]);
        assert!((out.0[0] - expected.0[0]).norm() < 1e-12 && out.0[1].norm() < 1e-12);
        assert!((born_probability(&out, &z).unwrap() - 1.0).abs() < 1e-12);
        assert!(z.apply(&out).0.iter().zip(out.0.iter()).all(|(a, b)| (a - b).norm() < 1e-12));

        let up = spin_state(0.0, 0.0);
        assert!(collapse(&up, &z).unwrap().same_ray(&up, 1e-12));
        let down = projector_for_direction(PI, 0.0);
        assert!(matches!(collapse(&up, &down), Err(HilbertError::CollapseUndefined(_))));
    }

    #[test]
    fn density_examples() {
        let u = Direction::from_angles(1.4, 0.6);
        let w = density_from_ball_point(&BallPoint::surface(u));
        assert!(w.operator().max_abs_diff(&Operator2::outer(&spin_state_for(&u))) < 1e-12);
        assert!(w.is_pure(1e-12));

        let center = density_from_ball_point(&BallPoint::CENTER);
        let half = c(0.5, 0.0);
        assert!(center.operator().max_abs_diff(&Matrix([[half, ZERO], [ZERO, half]])) < 1e-15);

        let w = density_from_ball_point(&BallPoint::new(Vec3::new(0.0, 0.0, 0.5)).unwrap());
        let diag = Matrix([[c(0.75, 0.0), ZERO], [ZERO, c(0.25, 0.0)]]);
        assert!(w.operator().max_abs_diff(&diag) < 1e-12);
    }

    #[test]
    fn density_validation_rejects() {
        assert!(Density2::new(Matrix([[c(0.5, 0.0), c(0.1, 0.0)], [c(0.2, 0.0), c(0.5, 0.0)]])).is_err());
        assert!(Density2::new(Matrix([[c(1.5, 0.0), ZERO], [ZERO, c(-0.5, 0.0)]])).is_err());
        assert!(Density2::new(Matrix([[c(0.5, 0.0), ZERO], [ZERO, c(0.6, 0.0)]])).is_err());
    }

    #[test]
    fn trace_rule_examples() {
        let center = density_from_ball_point(&BallPoint::CENTER);
        let p = projector_for_direction(0.7, 3.3);
        assert!((trace_probability(&center, &p) - 0.5).abs() < 1e-15);

        // λ-form against the z projector
        let (theta, phi, r) = (0.8, 2.2, 0.6);
        let w = BallPoint::new(r * Direction::from_angles(theta, phi).vec()).unwrap();
        let (l1, l2) = (0.5 * (1.0 + r), 0.5 * (1.0 - r));
        let expected = l1 * (theta / 2.0).cos().powi(2) + l2 * (theta / 2.0).sin().powi(2);
        let got = trace_probability(&density_from_ball_point(&w), &projector_for_direction(0.0, 0.0));
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn tensor_examples() {
        let up = spin_state(0.0, 0.0);
        assert_eq!(tensor_state(&up, &up).0, [ONE, ZERO, ZERO, ZERO]);
        assert_eq!(tensor_op(&Operator2::identity(), &Operator2::identity()), Operator4::identity());
    }

    #[test]
    fn singlet_examples() {
        let s = singlet_state();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        let pz = projector_for(&Direction::Z);
        assert!(joint_probability(&s, &pz, &pz).unwrap().abs() < 1e-15);
        assert_eq!(schmidt_rank(&s, 1e-9), 2);
        let up = spin_state(0.3, 0.3);
        assert_eq!(schmidt_rank(&tensor_state(&up, &spin_state(2.0, 1.0)), 1e-9), 1);
    }

    #[test]
    fn partial_trace_examples() {
        let (a, b) = (spin_state(0.4, 1.0), spin_state(2.5, 5.0));
        let rho = Operator4::outer(&tensor_state(&a, &b));
        let first = partial_trace(&rho, Subsystem::First).unwrap();
        assert!(first.operator().max_abs_diff(&Operator2::outer(&a)) < 1e-12);
        let second = partial_trace(&rho, Subsystem::Second).unwrap();
        assert!(second.operator().max_abs_diff(&Operator2::outer(&b)) < 1e-12);

        let singlet = Operator4::outer(&singlet_state());
        for keep in [Subsystem::First, Subsystem::Second] {
            let m = partial_trace(&singlet, keep).unwrap();
            let (hi, lo) = m.eigenvalues();
            assert!((hi - 0.5).abs() < 1e-12 && (lo - 0.5).abs() < 1e-12);
        }
        let not_density = Operator4::identity();
        assert!(partial_trace(&not_density, Subsystem::First).is_err());
        let mut nonpos = Operator4::zero();
        nonpos.0[0][0] = c(1.5, 0.0);
        nonpos.0[1][1] = c(-0.5, 0.0);
        assert!(partial_trace(&nonpos, Subsystem::First).is_err());
    }

    #[test]
    fn psd_check_on_rank_deficient() {
        let rho = Operator4::outer(&singlet_state());
        assert!(rho.is_positive_semidefinite(OPERATOR_TOL));
        let mut bad = rho;
        bad.0[0][0] = c(-1e-6, 0.0);
        assert!(!bad.is_positive_semidefinite(OPERATOR_TOL));
    }
}
