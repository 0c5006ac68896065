//! The anti-Mach spacetime (Ozsvath-Schucking) as a built-in fixture.
//!
//! Coordinates are ordered (x, y, z, t); the doubled chart appends the fiber
//! coordinates (P, Q, U, V). The metric, its connection and the extended
//! geodesic right-hand side are all hand-coded here so the generic machinery
//! has an independent target to be checked against.

pub mod closed_form;
pub mod verify;

pub use closed_form::{
    supplementary_norm, vertex_fiber, ClosedForm, ClosedFormConstants, SolutionBranch,
    SupplementaryNorm, XI3_CONDITIONING_THRESHOLD,
};
pub use verify::{verify_closed_forms, BranchFilter, VerificationReport, VerifyOptions};

use crate::connection::ConnectionField;
use crate::error::Result;
use crate::extension::{Extension, ExtendedChart};
use crate::metric::{check_dim, MetricField};
use crate::scalar::Scalar;
use crate::tensor::{Rank3, SymMat};

/// Line element dx^2 - 4t dx dz + 2 dy dz + 2 t^2 dz^2 + dt^2.
#[derive(Clone, Copy, Debug, Default)]
pub struct AntiMach4;

impl MetricField for AntiMach4 {
    fn dim(&self) -> usize {
        4
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<SymMat<S>> {
        check_dim(4, point)?;
        let t = point[3];
        let two = S::from_f64(2.0);
        let mut g = SymMat::zeros(4);
        g.set(0, 0, S::one());
        g.set(0, 2, -(two * t));
        g.set(1, 2, S::one());
        g.set(2, 2, two * t * t);
        g.set(3, 3, S::one());
        Ok(g)
    }
}

/// The nonvanishing Christoffel symbols of [`AntiMach4`]:
/// Gamma^t_xz = 1, Gamma^y_xt = -1, Gamma^t_zz = -2t, Gamma^x_zt = -1
/// (plus lower-index mirrors).
#[derive(Clone, Copy, Debug, Default)]
pub struct AntiMachConnection;

impl ConnectionField for AntiMachConnection {
    fn dim(&self) -> usize {
        4
    }

    fn eval<S: Scalar>(&self, point: &[S]) -> Result<Rank3<S>> {
        check_dim(4, point)?;
        let t = point[3];
        let one = S::one();
        let two = S::from_f64(2.0);
        let mut gamma = Rank3::zeros(4);
        gamma.set(3, 0, 2, one);
        gamma.set(3, 2, 0, one);
        gamma.set(1, 0, 3, -one);
        gamma.set(1, 3, 0, -one);
        gamma.set(3, 2, 2, -(two * t));
        gamma.set(0, 2, 3, -one);
        gamma.set(0, 3, 2, -one);
        Ok(gamma)
    }
}

/// The 8-dimensional extended metric of the anti-Mach connection, on the
/// chart (x, y, z, t, P, Q, U, V).
pub fn antimach8() -> Extension<AntiMachConnection> {
    Extension::new(AntiMachConnection, ExtendedChart::anti_mach())
}

/// Base geodesic accelerations:
/// xddot = 2 zdot tdot, yddot = 2 xdot tdot, zddot = 0,
/// tddot = 2 t zdot^2 - 2 xdot zdot.
pub fn base_accel<S: Scalar>(pos: &[S], vel: &[S]) -> [S; 4] {
    let t = pos[3];
    let (xd, _yd, zd, td) = (vel[0], vel[1], vel[2], vel[3]);
    let two = S::from_f64(2.0);
    [
        two * zd * td,
        two * xd * td,
        S::zero(),
        two * t * zd * zd - two * xd * zd,
    ]
}

/// Extended geodesic accelerations, the base block followed by
/// Pddot = 4 Q zdot (xdot - t zdot) - 2 tdot Qdot + 2 zdot Vdot,
/// Qddot = 0,
/// Uddot = 4 P zdot (xdot - t zdot) - 2 tdot Pdot + 2 (xdot - 2 t zdot) Vdot,
/// Vddot = 2 V zdot^2 - 4 Q zdot tdot - 2 zdot Pdot - 2 xdot Qdot.
pub fn extended_accel<S: Scalar>(pos: &[S], vel: &[S]) -> [S; 8] {
    let t = pos[3];
    let (p, q, _u, v) = (pos[4], pos[5], pos[6], pos[7]);
    let (xd, _yd, zd, td) = (vel[0], vel[1], vel[2], vel[3]);
    let (pd, qd, _ud, vd) = (vel[4], vel[5], vel[6], vel[7]);
    let two = S::from_f64(2.0);
    let four = S::from_f64(4.0);
    let base = base_accel(pos, vel);
    [
        base[0],
        base[1],
        base[2],
        base[3],
        four * q * zd * (xd - t * zd) - two * td * qd + two * zd * vd,
        S::zero(),
        four * p * zd * (xd - t * zd) - two * td * pd + two * (xd - two * t * zd) * vd,
        two * v * zd * zd - four * q * zd * td - two * zd * pd - two * xd * qd,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::christoffel;
    use crate::sampling::{trial_rng, uniform_point};
    use approx::assert_abs_diff_eq;

    #[test]
    fn metric_determinant_is_minus_one() {
        for i in 0..20 {
            let p = uniform_point(&mut trial_rng(7, i), 4, -3.0, 3.0);
            let g = AntiMach4.eval(p.as_slice()).unwrap();
            assert_abs_diff_eq!(g.to_dense().det(), -1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn hand_connection_matches_generic_christoffel() {
        for i in 0..100 {
            let p = uniform_point(&mut trial_rng(11, i), 4, -2.0, 2.0);
            let hand = AntiMachConnection.eval(p.as_slice()).unwrap();
            let generic = christoffel(&AntiMach4, p.as_slice()).unwrap();
            for k in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        assert_abs_diff_eq!(
                            hand.get(k, i, j),
                            generic.get(k, i, j),
                            epsilon = 1e-14
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn connection_values_at_unit_time() {
        let gamma = AntiMachConnection.eval(&[0.0, 0.0, 0.0, 1.0][..]).unwrap();
        assert_eq!(gamma.get(3, 0, 2), 1.0);
        assert_eq!(gamma.get(1, 0, 3), -1.0);
        assert_eq!(gamma.get(3, 2, 2), -2.0);
        assert_eq!(gamma.get(0, 2, 3), -1.0);
        // everything else vanishes
        let nonzero = [(3, 0, 2), (3, 2, 0), (1, 0, 3), (1, 3, 0), (3, 2, 2), (0, 2, 3), (0, 3, 2)];
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    if !nonzero.contains(&(k, i, j)) {
                        assert_eq!(gamma.get(k, i, j), 0.0, "Gamma^{k}_{i}{j}");
                    }
                }
            }
        }
    }

    #[test]
    fn base_accel_formula() {
        // at (0,0,0,t) with velocity (xd, yd, zd, td)
        let t = 1.7;
        let vel = [0.3, -0.9, 0.5, 1.1];
        let acc = base_accel(&[0.0, 0.0, 0.0, t], &vel);
        assert_abs_diff_eq!(acc[0], 2.0 * vel[2] * vel[3], epsilon = 1e-15);
        assert_abs_diff_eq!(acc[1], 2.0 * vel[0] * vel[3], epsilon = 1e-15);
        assert_eq!(acc[2], 0.0);
        assert_abs_diff_eq!(
            acc[3],
            2.0 * t * vel[2] * vel[2] - 2.0 * vel[0] * vel[2],
            epsilon = 1e-15
        );
    }

    #[test]
    fn extension_matches_expected_components() {
        let (t, p, q, u, v) = (0.7, 1.3, -0.4, 0.9, 2.1);
        let point = [0.2, -1.0, 0.5, t, p, q, u, v];
        let g = antimach8().eval(&point[..]).unwrap();
        assert_abs_diff_eq!(g.get(2, 3), 2.0 * p, epsilon = 1e-15); // zt
        assert_abs_diff_eq!(g.get(0, 3), 2.0 * q, epsilon = 1e-15); // xt
        assert_abs_diff_eq!(g.get(0, 2), -2.0 * v, epsilon = 1e-15); // xz
        assert_abs_diff_eq!(g.get(2, 2), 4.0 * t * v, epsilon = 1e-15); // zz
        for i in 0..4 {
            assert_eq!(g.get(i, 4 + i), 1.0);
        }
        let _ = u;
    }
}
