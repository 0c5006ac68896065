//! Adaptive explicit Runge-Kutta integration.
//!
//! Dormand-Prince 5(4) embedded pair with PI step-size control and dense
//! output by cubic Hermite interpolation on accepted steps. At the
//! tolerances this crate runs (down to 1e-12) the accepted steps are small
//! enough that the Hermite interpolant sits far below the step tolerance.

use crate::error::{Error, Result};

/// Smallest step the controller may request before giving up.
pub const MIN_STEP: f64 = 1e-14;

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    /// Equal absolute and relative tolerance.
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions {
            rtol: tol,
            atol: tol,
            max_steps: 10_000_000,
        }
    }
}

/// An accepted integration node: parameter, state and state derivative.
#[derive(Clone, Debug)]
pub struct OdeStep {
    pub s: f64,
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
}

/// The accepted-step skeleton of a solution on [s0, s1].
#[derive(Clone, Debug)]
pub struct OdeSolution {
    pub steps: Vec<OdeStep>,
}

impl OdeSolution {
    pub fn s_end(&self) -> f64 {
        self.steps.last().map(|st| st.s).unwrap_or(0.0)
    }

    /// Dense output at `s` by cubic Hermite interpolation on the bracketing
    /// accepted step. `s` is clamped to the integrated span.
    pub fn sample(&self, s: f64) -> Vec<f64> {
        let steps = &self.steps;
        if s <= steps[0].s {
            return steps[0].y.clone();
        }
        if s >= steps[steps.len() - 1].s {
            return steps[steps.len() - 1].y.clone();
        }
        let idx = match steps.binary_search_by(|st| st.s.partial_cmp(&s).unwrap()) {
            Ok(i) => return steps[i].y.clone(),
            Err(i) => i - 1,
        };
        let (a, b) = (&steps[idx], &steps[idx + 1]);
        let h = b.s - a.s;
        let theta = (s - a.s) / h;
        let t2 = theta * theta;
        let t3 = t2 * theta;
        // standard cubic Hermite basis
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + theta;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        a.y.iter()
            .zip(&b.y)
            .zip(a.dy.iter().zip(&b.dy))
            .map(|((&ya, &yb), (&da, &db))| h00 * ya + h10 * h * da + h01 * yb + h11 * h * db)
            .collect()
    }
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// b5 - b4: error weights (k7 = f at the new point, FSAL)
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

/// Integrate y' = f(s, y) from s0 to s1 (s1 > s0), keeping every accepted
/// step for dense output.
pub fn solve<F>(mut f: F, y0: &[f64], s0: f64, s1: f64, opts: &OdeOptions) -> Result<OdeSolution>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = y0.len();
    let span = s1 - s0;
    assert!(span > 0.0, "integration span must be positive");

    let mut y = y0.to_vec();
    let mut s = s0;
    let mut dy = vec![0.0; dim];
    f(s, &y, &mut dy);

    // initial step from the derivative magnitude
    let ynorm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let dnorm = dy.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut h = (0.01 * (ynorm + opts.atol) / (dnorm + 1e-8))
        .min(span)
        .max(MIN_STEP * 100.0);

    let mut steps = Vec::new();
    steps.push(OdeStep {
        s,
        y: y.clone(),
        dy: dy.clone(),
    });

    let mut k = vec![vec![0.0; dim]; 7];
    let mut err_prev: f64 = 1.0;
    let mut nsteps = 0usize;
    // PI controller exponents for an order-5 method
    let alpha = 0.17;
    let beta = 0.04;

    while s < s1 {
        nsteps += 1;
        if nsteps > opts.max_steps {
            return Err(Error::TooManySteps {
                s,
                max_steps: opts.max_steps,
            });
        }
        if h < MIN_STEP {
            return Err(Error::StepSizeUnderflow { s, h });
        }
        let h_eff = h.min(s1 - s);

        k[0].copy_from_slice(&dy);
        let mut ytmp = vec![0.0; dim];
        for stage in 0..6 {
            for i in 0..dim {
                let mut acc = 0.0;
                for j in 0..=stage {
                    acc += A[stage][j] * k[j][i];
                }
                ytmp[i] = y[i] + h_eff * acc;
            }
            let (head, tail) = k.split_at_mut(stage + 1);
            let _ = head;
            f(s + C[stage] * h_eff, &ytmp, &mut tail[0]);
        }
        // stage 6 used the 5th-order weights: ytmp is the new solution, k[6] = f(new)
        let y_new = ytmp.clone();
        let dy_new = k[6].clone();

        if y_new.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState { s });
        }

        // weighted max-norm of the embedded error estimate
        let mut err: f64 = 0.0;
        for i in 0..dim {
            let mut e = 0.0;
            for j in 0..7 {
                e += E[j] * k[j][i];
            }
            e *= h_eff;
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            err = err.max((e / sc).abs());
        }

        if err <= 1.0 {
            s += h_eff;
            y = y_new;
            dy = dy_new;
            steps.push(OdeStep {
                s,
                y: y.clone(),
                dy: dy.clone(),
            });
            let err_clamped = err.max(1e-20);
            let fac = 0.9 * err_clamped.powf(-alpha) * err_prev.powf(beta);
            h *= fac.clamp(0.2, 5.0);
            err_prev = err_clamped;
        } else {
            let fac = 0.9 * err.powf(-0.2);
            h *= fac.clamp(0.1, 0.9);
        }
    }

    Ok(OdeSolution { steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn harmonic_oscillator() {
        // y'' = -y: y = cos(s)
        let f = |_s: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        let sol = solve(f, &[1.0, 0.0], 0.0, 10.0, &OdeOptions::with_tol(1e-12)).unwrap();
        let end = sol.steps.last().unwrap();
        assert_abs_diff_eq!(end.y[0], 10.0f64.cos(), epsilon = 1e-10);
        assert_abs_diff_eq!(end.y[1], -(10.0f64.sin()), epsilon = 1e-10);
    }

    #[test]
    fn dense_output_accuracy() {
        let f = |_s: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        let sol = solve(f, &[0.0, 1.0], 0.0, 6.0, &OdeOptions::with_tol(1e-12)).unwrap();
        for i in 0..=60 {
            let s = 0.1 * i as f64;
            let y = sol.sample(s);
            // cubic Hermite on the accepted steps: O(h^4) between nodes
            assert_abs_diff_eq!(y[0], s.sin(), epsilon = 1e-8);
        }
    }

    #[test]
    fn detects_blowup() {
        // y' = y^2, y(0) = 1 blows up at s = 1
        let f = |_s: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[0] * y[0];
        };
        let err = solve(f, &[1.0], 0.0, 2.0, &OdeOptions::with_tol(1e-10)).unwrap_err();
        assert!(matches!(
            err,
            Error::StepSizeUnderflow { .. } | Error::NonFiniteState { .. } | Error::TooManySteps { .. }
        ));
    }

    #[test]
    fn tighter_tolerance_is_more_accurate() {
        let f = |_s: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        let mut errs = Vec::new();
        for tol in [1e-6, 1e-9, 1e-12] {
            let sol = solve(f, &[1.0, 0.0], 0.0, 10.0, &OdeOptions::with_tol(tol)).unwrap();
            let end = sol.steps.last().unwrap();
            errs.push((end.y[0] - 10.0f64.cos()).abs());
        }
        assert!(errs[1] <= errs[0]);
        assert!(errs[2] <= errs[1]);
    }
}
