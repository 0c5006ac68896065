//! Closed-form geodesic solutions of the extended anti-Mach space.
//!
//! The trigonometric branch (xi^3 != 0) and the polynomial branch
//! (xi^3 = 0) are both evaluated exactly as published. The published fiber
//! formulas are treated as candidates, not ground truth: the verification
//! harness (see [`super::verify`]) compares every formula against the
//! numeric integrator and flags disagreements instead of assuming them away.
//!
//! The trigonometric argument is read as sin((sqrt(2) xi^3) s) throughout;
//! this is the only reading under which the t equation closes, which the
//! residual tests check.

use crate::dual::{curve_parts, curve_seed};
use crate::error::{Error, Result};
use crate::geodesic::InitialData;
use crate::scalar::Scalar;
use serde::Serialize;
use std::f64::consts::SQRT_2;

/// Below this magnitude a nonzero xi^3 routes to the integrator instead of
/// the closed forms: the solution constants scale like (xi^3)^-3 and
/// amplify rounding.
pub const XI3_CONDITIONING_THRESHOLD: f64 = 1e-6;

/// Which solution family applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionBranch {
    Xi3NonZero,
    Xi3Zero,
}

/// Coefficient tables of the trigonometric branch, computed from the
/// initial data in one pass with shared subexpressions.
///
/// Groups, by role: `l` are the fiber-velocity expansion coefficients for
/// Pdot, `m`/`m1`/`m2` the forcing terms of the V oscillator, `a1`/`a2` its
/// free constants, `k` the V solution coefficients, `h` the reduced Pdot
/// coefficients, `r` the U acceleration coefficients and `n` the U solution
/// coefficients. `r7_alt` carries the alternative reading of the `r[6]`
/// token adjudicated by the verification harness.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClosedFormConstants {
    pub l: [f64; 5],
    pub m: f64,
    pub m1: f64,
    pub m2: f64,
    pub a1: f64,
    pub a2: f64,
    pub k: [f64; 4],
    pub h: [f64; 3],
    pub r: [f64; 7],
    pub r7_alt: f64,
    pub n: [f64; 7],
}

impl ClosedFormConstants {
    pub fn compute(init: &InitialData) -> Self {
        let [xi1, _xi2, xi3, xi4] = init.xi;
        let [h1, h2, h3, h4] = init.h;
        let [p0, q0, _u0, v0] = init.psi0;
        let t0 = init.x0[3];

        let xi3_2 = xi3 * xi3;
        let xi3_3 = xi3_2 * xi3;
        let drift = xi1 - xi3 * t0;

        let l = [
            2.0 * SQRT_2 * q0 * drift,
            -2.0 * q0 * xi4,
            2.0 * SQRT_2 * h2 * drift,
            -2.0 * xi4 * h2,
            2.0 * h2 * xi1 / xi3 - 4.0 * h2 * t0,
        ];

        let m = 2.0 * xi1 * h2 - 2.0 * xi3 * (h1 + 2.0 * xi4 * q0 + 2.0 * h2 * t0)
            + 4.0 * xi3_2 * v0;
        let m1 = -2.0 * SQRT_2 * xi4 * h2;
        let m2 = -4.0 * h2 * drift;

        let a1 = h4 / (SQRT_2 * xi3) + m1 / (4.0 * xi3_2);
        let a2 = v0 - m / (2.0 * xi3_2);
        let k = [a1, a2, m2 / (2.0 * SQRT_2 * xi3), -m1 / (2.0 * SQRT_2 * xi3)];

        let h = [
            (-xi4 * h2 + 4.0 * xi3 * (h4 + 2.0 * q0 * drift)) / (2.0 * SQRT_2 * xi3),
            2.0 * (h1 - xi1 * h2 / xi3 + xi4 * q0 + 2.0 * h2 * t0 - xi3 * v0),
            -h1 - 2.0 * xi4 * q0 + 2.0 * xi1 * h2 / xi3 - 4.0 * h2 * t0 + 2.0 * xi3 * v0,
        ];

        let r = [
            (8.0 * xi1 * xi1 * h2 - xi4 * xi4 * h2
                + 4.0 * xi3 * xi4 * (h4 + xi3 * (p0 + 4.0 * q0 * t0))
                + 4.0 * xi3_2 * t0 * (3.0 * h1 + 6.0 * h2 * t0 - 4.0 * xi3 * v0)
                + 4.0 * xi1 * xi3 * (-2.0 * h1 - 2.0 * xi4 * q0 - 7.0 * h2 * t0 + 3.0 * xi3 * v0))
                / (SQRT_2 * xi3),
            (-7.0 * xi1 * xi4 * h2 - 8.0 * xi3_3 * t0 * (p0 - 2.0 * q0 * t0)
                + 4.0 * xi3
                    * (2.0 * xi4 * xi4 * q0
                        + xi1 * (3.0 * h4 + 4.0 * xi1 * q0)
                        + xi4 * (h1 + 3.0 * h2 * t0))
                + 8.0 * xi3_2 * (-2.0 * h4 * t0 + xi1 * (p0 - 4.0 * q0 * t0) - xi4 * v0))
                / (2.0 * xi3),
            -2.0 * SQRT_2
                * xi4
                * (-xi1 * h2 + xi3 * (h1 + 2.0 * xi4 * q0 + 2.0 * h2 * t0) - 2.0 * xi3_2 * v0),
            4.0 * drift
                * (xi1 * h2 - xi3 * (h1 + 2.0 * xi4 * q0 + 2.0 * h2 * t0) + 2.0 * xi3_2 * v0),
            (-5.0 * xi1 * xi4 * h2
                + 8.0 * xi3_3 * q0 * t0 * t0
                + xi3
                    * (4.0 * xi4 * xi4 * q0
                        + 4.0 * xi1 * (h4 + 2.0 * xi1 * q0)
                        + xi4 * (4.0 * h1 + 9.0 * h2 * t0))
                - 4.0 * xi3_2 * (h4 * t0 + 4.0 * xi1 * q0 * t0 + xi4 * v0))
                / xi3,
            (5.0 * xi1 * xi4 * h2
                - 8.0 * xi3_3 * q0 * t0 * t0
                - xi3
                    * (4.0 * xi4 * xi4 * q0
                        + 4.0 * xi1 * (h4 + 2.0 * xi1 * q0)
                        + xi4 * (4.0 * h1 + 9.0 * h2 * t0))
                + 4.0 * xi3_2 * (h4 * t0 + 4.0 * xi1 * q0 * t0 + xi4 * v0))
                / xi3,
            // the "(-8 xi^1)^2 h2" token, squared as printed
            (SQRT_2 / xi3)
                * (64.0 * xi1 * xi1 * h2 + xi4 * xi4 * h2 - 4.0 * xi3 * xi4 * h4
                    + 8.0 * xi1 * xi3 * (h1 + 3.0 * h2 * t0 - xi3 * v0)
                    + 8.0 * xi3_2 * t0 * (-h1 - 2.0 * h2 * t0 + xi3 * v0)),
        ];
        // alternative reading: -8 (xi^1)^2 h2, matching the sibling n[4] token
        let r7_alt = (SQRT_2 / xi3)
            * (-8.0 * xi1 * xi1 * h2 + xi4 * xi4 * h2 - 4.0 * xi3 * xi4 * h4
                + 8.0 * xi1 * xi3 * (h1 + 3.0 * h2 * t0 - xi3 * v0)
                + 8.0 * xi3_2 * t0 * (-h1 - 2.0 * h2 * t0 + xi3 * v0));

        let n = [
            (xi4 * xi4 * h2 - 4.0 * xi3 * xi4 * (h4 + xi3 * p0 + 2.0 * xi1 * q0)
                + 4.0 * xi3 * (xi1 * h2 * t0 + xi3 * (-h1 * t0 - 2.0 * h2 * t0 * t0 + xi1 * v0)))
                / (2.0 * SQRT_2 * xi3_3),
            (-xi1 * xi4 * h2
                + 8.0 * xi3_3 * t0 * (p0 - 2.0 * q0 * t0)
                + 4.0 * xi3
                    * (2.0 * xi4 * xi4 * q0 - xi1 * (3.0 * h4 + 4.0 * xi1 * q0)
                        + xi4 * (h1 + h2 * t0))
                - 8.0 * xi3_2 * (-2.0 * h4 * t0 + xi1 * (p0 - 4.0 * q0 * t0) + xi4 * v0))
                / (4.0 * xi3_3),
            SQRT_2
                * xi4
                * (-xi1 * h2 + xi3 * (h1 + 2.0 * xi4 * q0 + 2.0 * h2 * t0) - 2.0 * xi3_2 * v0)
                / xi3_2,
            -2.0 * drift
                * (xi1 * h2 - xi3 * (h1 + 2.0 * xi4 * q0 + 2.0 * h2 * t0) + 2.0 * xi3_2 * v0)
                / xi3_2,
            (8.0 * xi1 * xi1 * h2 - xi4 * xi4 * h2
                + 4.0 * xi3 * xi4 * h4
                + 8.0 * xi3_2 * t0 * (h1 + 2.0 * h2 * t0 - xi3 * v0)
                + 8.0 * xi1 * xi3 * (-h1 - 3.0 * h2 * t0 + xi3 * v0))
                / (8.0 * SQRT_2 * xi3_3),
            (-5.0 * xi1 * xi4 * h2
                + 8.0 * xi3_3 * q0 * t0 * t0
                + xi3
                    * (4.0 * xi4 * xi4 * q0
                        + 4.0 * xi1 * (h4 + 2.0 * xi1 * q0)
                        + xi4 * (4.0 * h1 + 9.0 * h2 * t0))
                - 4.0 * xi3_2 * (h4 * t0 + 4.0 * xi1 * q0 * t0 + xi4 * v0))
                / (8.0 * xi3_3),
            -xi4 * xi4 * h2 / (4.0 * xi3_2)
                + h3
                + 2.0 * xi4 * p0
                + 2.0 * h1 * t0
                + 4.0 * xi4 * q0 * t0
                + 4.0 * h2 * t0 * t0
                + (xi4 * h4 - 2.0 * xi1 * h2 * t0) / xi3
                - 2.0 * xi3 * t0 * v0,
        ];

        ClosedFormConstants {
            l,
            m,
            m1,
            m2,
            a1,
            a2,
            k,
            h,
            r,
            r7_alt,
            n,
        }
    }
}

/// Closed-form geodesic through `init`, branch selected by xi^3.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    init: InitialData,
    branch: SolutionBranch,
    constants: Option<ClosedFormConstants>,
}

impl ClosedForm {
    /// Selects the branch from xi^3: exactly zero routes to the polynomial
    /// family, |xi^3| >= 1e-6 to the trigonometric one, anything between is
    /// rejected as ill-conditioned.
    pub fn new(init: InitialData) -> Result<Self> {
        let xi3 = init.xi[2];
        if xi3 == 0.0 {
            Ok(ClosedForm {
                init,
                branch: SolutionBranch::Xi3Zero,
                constants: None,
            })
        } else if xi3.abs() < XI3_CONDITIONING_THRESHOLD {
            Err(Error::IllConditioned {
                xi3: xi3.abs(),
                threshold: XI3_CONDITIONING_THRESHOLD,
            })
        } else {
            Ok(ClosedForm {
                init,
                branch: SolutionBranch::Xi3NonZero,
                constants: Some(ClosedFormConstants::compute(&init)),
            })
        }
    }

    pub fn branch(&self) -> SolutionBranch {
        self.branch
    }

    pub fn init(&self) -> &InitialData {
        &self.init
    }

    pub fn constants(&self) -> Option<&ClosedFormConstants> {
        self.constants.as_ref()
    }

    /// One full oscillation of the trigonometric branch, or a fixed span of
    /// 2 for the polynomial branch.
    pub fn period(&self) -> f64 {
        match self.branch {
            SolutionBranch::Xi3NonZero => {
                2.0 * std::f64::consts::PI / (SQRT_2 * self.init.xi[2].abs())
            }
            SolutionBranch::Xi3Zero => 2.0,
        }
    }

    /// The base coordinates (x, y, z, t) at parameter `s`.
    pub fn basic_at<S: Scalar>(&self, s: S) -> [S; 4] {
        match self.branch {
            SolutionBranch::Xi3NonZero => basic_nonzero(&self.init, s),
            SolutionBranch::Xi3Zero => basic_zero(&self.init, s),
        }
    }

    /// The fiber coordinates (P, Q, U, V) at parameter `s`, exactly as
    /// published.
    pub fn fiber_at<S: Scalar>(&self, s: S) -> [S; 4] {
        match self.branch {
            SolutionBranch::Xi3NonZero => {
                fiber_nonzero(&self.init, self.constants.as_ref().unwrap(), s)
            }
            SolutionBranch::Xi3Zero => fiber_zero(&self.init, s),
        }
    }

    /// Closed-form position, velocity and acceleration of all eight
    /// coordinates at `s`, by pushing a second-order dual seed through the
    /// evaluators.
    pub fn jet_at(&self, s: f64) -> ([f64; 8], [f64; 8], [f64; 8]) {
        let seed = curve_seed(s);
        let basic = self.basic_at(seed);
        let fiber = self.fiber_at(seed);
        let mut pos = [0.0; 8];
        let mut vel = [0.0; 8];
        let mut acc = [0.0; 8];
        for i in 0..4 {
            let (v, d1, d2) = curve_parts(basic[i]);
            pos[i] = v;
            vel[i] = d1;
            acc[i] = d2;
            let (v, d1, d2) = curve_parts(fiber[i]);
            pos[4 + i] = v;
            vel[4 + i] = d1;
            acc[4 + i] = d2;
        }
        (pos, vel, acc)
    }

    /// Residual of the base geodesic system at `s`: closed-form second
    /// derivative minus the hand-coded right-hand side.
    pub fn basic_residual(&self, s: f64) -> [f64; 4] {
        let (pos, vel, acc) = self.jet_at(s);
        let rhs = super::base_accel(&pos[..4], &vel[..4]);
        [
            acc[0] - rhs[0],
            acc[1] - rhs[1],
            acc[2] - rhs[2],
            acc[3] - rhs[3],
        ]
    }

    /// Fiber values together with the residual of the fiber geodesic system
    /// at `s`. A nonzero residual means the published formula does not
    /// solve its own equation.
    pub fn fiber_with_residual(&self, s: f64) -> ([f64; 4], [f64; 4]) {
        let (pos, vel, acc) = self.jet_at(s);
        let rhs = super::extended_accel(&pos, &vel);
        let values = [pos[4], pos[5], pos[6], pos[7]];
        let residual = [
            acc[4] - rhs[4],
            acc[5] - rhs[5],
            acc[6] - rhs[6],
            acc[7] - rhs[7],
        ];
        (values, residual)
    }

    /// The published P display under the alternative trigonometric-argument
    /// reading sqrt(2) h_3 (instead of sqrt(2) xi^3). Returns `None` when
    /// h_3 is too small to divide by.
    pub fn fiber_p_h3_reading(&self, s: f64) -> Option<f64> {
        let c = self.constants.as_ref()?;
        let h3 = self.init.h[2];
        if h3.abs() < XI3_CONDITIONING_THRESHOLD {
            return None;
        }
        let w = SQRT_2 * h3 * s;
        Some(
            self.init.psi0[0] + c.h[0] / (SQRT_2 * h3) * (1.0 - w.cos())
                + c.h[1] / (SQRT_2 * h3) * w.sin()
                + c.h[2] * s,
        )
    }

    /// The published U acceleration expansion, under either reading of the
    /// r[6] token.
    pub fn u_accel_printed(&self, s: f64, reading: R7Reading) -> Option<f64> {
        let c = self.constants.as_ref()?;
        let w = SQRT_2 * self.init.xi[2] * s;
        let (si, co) = (w.sin(), w.cos());
        let r7 = match reading {
            R7Reading::PrintedSquare => c.r[6],
            R7Reading::NegatedEight => c.r7_alt,
        };
        Some(
            c.r[0] * si
                + c.r[1] * co
                + c.r[2] * s * si
                + c.r[3] * s * co
                + c.r[4] * si * si
                + c.r[5] * co * co
                + r7 * si * co,
        )
    }
}

/// The two candidate readings of the printed U-acceleration token.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum R7Reading {
    /// `(-8 xi^1)^2 h_2` taken literally (= 64 (xi^1)^2 h_2).
    PrintedSquare,
    /// `-8 (xi^1)^2 h_2`, the sign-consistent sibling of the U solution.
    NegatedEight,
}

fn basic_nonzero<S: Scalar>(init: &InitialData, s: S) -> [S; 4] {
    let [xi1, xi2, xi3, xi4] = init.xi;
    let [x0, y0, z0, t0] = init.x0;
    let f = S::from_f64;
    let omega = SQRT_2 * xi3;
    let w = f(omega) * s;
    let w2 = f(2.0 * omega) * s;
    let si = w.sin();
    let co = w.cos();
    let si2 = w2.sin();
    let co2 = w2.cos();
    let one = S::one();

    let x = f(x0)
        + f(2.0 * t0 * xi3 - xi1) * s
        + f(xi4 / xi3) * (one - co)
        + f(SQRT_2 * (xi1 - t0 * xi3) / xi3) * si;

    let xi3_2 = xi3 * xi3;
    let y = f(y0)
        + f(xi2 + (xi4 * xi4 + 2.0 * xi1 * xi1) / (2.0 * xi3) + t0 * (3.0 * t0 * xi3 - 4.0 * xi1))
            * s
        + f(xi4 / (2.0 * xi3_2))
            * (f(2.0 * (xi1 - 2.0 * t0 * xi3)) * co - f(xi1 - t0 * xi3) * co2
                - f(xi1 - 3.0 * t0 * xi3))
        - f(SQRT_2 / xi3_2 * (xi1 * xi1 - t0 * xi3 * (3.0 * xi1 - 2.0 * t0 * xi3))) * si
        + f((xi1 * xi1 - xi4 * xi4 / 2.0 - t0 * xi3 * (2.0 * xi1 - t0 * xi3))
            / (2.0 * SQRT_2 * xi3_2))
            * si2;

    let z = f(z0) + f(xi3) * s;

    let t = f(t0) * (f(2.0) - co) - f(xi1 / xi3) * (one - co) + f(xi4 / (SQRT_2 * xi3)) * si;

    [x, y, z, t]
}

fn basic_zero<S: Scalar>(init: &InitialData, s: S) -> [S; 4] {
    let [xi1, xi2, _xi3, xi4] = init.xi;
    let [x0, y0, z0, t0] = init.x0;
    let f = S::from_f64;
    [
        f(x0) + f(xi1) * s,
        f(y0) + f(xi2) * s + f(xi1 * xi4) * s * s,
        f(z0),
        f(t0) + f(xi4) * s,
    ]
}

fn fiber_nonzero<S: Scalar>(init: &InitialData, c: &ClosedFormConstants, s: S) -> [S; 4] {
    let [_, _, xi3, _] = init.xi;
    let [h1, h2, _, _] = init.h;
    let [p0, q0, u0, _v0] = init.psi0;
    let _ = h1;
    let f = S::from_f64;
    let omega = SQRT_2 * xi3;
    let w = f(omega) * s;
    let w2 = f(2.0 * omega) * s;
    let si = w.sin();
    let co = w.cos();
    let si2 = w2.sin();
    let co2 = w2.cos();
    let one = S::one();

    let q = f(q0) + f(h2) * s;

    // published display: the particular constant of the oscillator solution
    // does not appear here, so V(0) = k2 rather than V0 whenever m != 0
    let v = f(c.k[0]) * si + f(c.k[1]) * co + f(c.k[2]) * s * si + f(c.k[3]) * s * co;

    let p = f(p0) + f(c.h[0] / (SQRT_2 * xi3)) * (one - co) + f(c.h[1] / (SQRT_2 * xi3)) * si
        + f(c.h[2]) * s;

    let u = f(u0) + f(c.n[0]) * si + f(c.n[1]) * (co - one) + f(c.n[2]) * s * si
        + f(c.n[3]) * s * co
        + f(c.n[4]) * si2
        + f(c.n[5]) * (co2 - one)
        + f(c.n[6]) * s;

    [p, q, u, v]
}

fn fiber_zero<S: Scalar>(init: &InitialData, s: S) -> [S; 4] {
    let [xi1, _, _, xi4] = init.xi;
    let [h1, h2, h3, h4] = init.h;
    let [p0, q0, u0, v0] = init.psi0;
    let f = S::from_f64;
    let s2 = s * s;
    let s3 = s2 * s;
    [
        f(p0) + f(h1) * s - f(xi4 * h2) * s2,
        f(q0) + f(h2) * s,
        f(u0) - f(xi4 * h1 - xi1 * h4) * s2
            + f(2.0 / 3.0 * h2 * (xi4 * xi4 - xi1 * xi1)) * s3
            + f(h3) * s,
        f(v0) + f(h4) * s - f(xi1 * h2) * s2,
    ]
}

/// The published vertex-reduced fiber solutions (all initial coordinates
/// zero), xi^3 != 0.
pub fn vertex_fiber<S: Scalar>(xi: [f64; 4], h: [f64; 4], s: S) -> Result<[S; 4]> {
    let [xi1, _xi2, xi3, xi4] = xi;
    let [h1, h2, h3, h4] = h;
    if xi3 == 0.0 || xi3.abs() < XI3_CONDITIONING_THRESHOLD {
        return Err(Error::IllConditioned {
            xi3: xi3.abs(),
            threshold: XI3_CONDITIONING_THRESHOLD,
        });
    }
    let f = S::from_f64;
    let omega = SQRT_2 * xi3;
    let w = f(omega) * s;
    let w2 = f(2.0 * omega) * s;
    let si = w.sin();
    let co = w.cos();
    let si2 = w2.sin();
    let co2 = w2.cos();
    let one = S::one();
    let xi3_2 = xi3 * xi3;
    let xi3_3 = xi3_2 * xi3;

    let p = f(1.0 / (4.0 * xi3_2))
        * (f(-4.0 * xi3_2 * h1) * s
            + (f(-4.0 * SQRT_2 * xi1) * si + f(xi4) * (co - one)) * f(h2)
            + f(4.0 * xi3)
                * (f(SQRT_2 * h1) * si + f(2.0 * xi1 * h2) * s + f(h4) - f(h4) * co));

    let q = f(h2) * s;

    let u = f(1.0 / (16.0 * xi3_3))
        * (f(SQRT_2 * (-8.0 * xi1 * xi3 * h1 + 8.0 * xi1 * xi1 * h2 - xi4 * xi4 * h2
            + 4.0 * xi3 * xi4 * h4))
            * si2
            - f(4.0 * SQRT_2)
                * (f(-4.0 * xi3_2 * xi4 * h1) * s - f(xi4 * xi4 * h2)
                    + f(4.0 * xi3 * xi4) * (f(xi1 * h2) * s + f(h4)))
                * si
            + f(2.0)
                * (f(7.0 * xi1 * xi4 * h2)
                    + f(8.0 * xi3_3 * h3) * s
                    + f(8.0 * xi3_2 * xi4 * h4) * s
                    - f(xi3) * (f(xi4) * (f(12.0 * h1) + f(2.0 * xi4 * h2) * s) - f(20.0 * xi1 * h4)))
            + f(2.0 * (-5.0 * xi1 * xi4 * h2 + xi3 * (4.0 * xi4 * h1 + 4.0 * xi1 * h4))) * co2
            - f(4.0)
                * (f(-4.0 * xi3 * xi4 * h1)
                    + f(8.0 * xi1 * xi1 * xi3 * h2) * s
                    + f(xi1) * (f(xi4 * h2) + f(4.0 * xi3) * (f(-2.0 * xi3 * h1) * s + f(3.0 * h4))))
                * co);

    let v = f(1.0 / (8.0 * xi3_2))
        * (f(-8.0 * xi3 * h1 + 8.0 * xi1 * h2)
            + f(8.0) * (f(-xi1 * h2) + f(xi3) * (f(h1) + f(xi4 * h2) * s)) * co
            + f(SQRT_2) * (f(-8.0 * xi1 * xi3 * h2) * s - f(xi4 * h2) + f(4.0 * xi3 * h4)) * si);

    Ok([p, q, u, v])
}

/// The conserved-norm value at the vertex in terms of the initial
/// directions.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "branch")]
pub enum SupplementaryNorm {
    /// xi^3 = 0: the published reduced expression.
    Xi3Zero { printed: f64 },
    /// xi^3 != 0: direct vertex evaluation of the metric next to the
    /// published expression (which carries an extra 3 (xi^4)^2 h_2 /
    /// (2 xi^3) term).
    Xi3NonZero { direct: f64, printed: f64 },
}

pub fn supplementary_norm(xi: [f64; 4], h: [f64; 4]) -> SupplementaryNorm {
    if xi[2] == 0.0 {
        SupplementaryNorm::Xi3Zero {
            printed: xi[0] * h[0] + xi[1] * h[1] + xi[3] * h[3],
        }
    } else {
        let direct = 2.0 * (xi[0] * h[0] + xi[1] * h[1] + xi[2] * h[2] + xi[3] * h[3]);
        let printed = 2.0 * xi[0] * h[0]
            + 2.0 * xi[1] * h[1]
            + 3.0 * xi[3] * xi[3] * h[1] / (2.0 * xi[2])
            + 2.0 * xi[2] * h[2]
            + 2.0 * xi[3] * h[3];
        SupplementaryNorm::Xi3NonZero { direct, printed }
    }
}
