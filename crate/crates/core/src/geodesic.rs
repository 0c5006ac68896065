//! Geodesic right-hand sides, integration and conserved-norm monitoring.

use crate::connection::ConnectionField;
use crate::error::{Error, Result};
use crate::metric::MetricField;
use crate::ode::{self, OdeOptions};
use serde::{Deserialize, Serialize};

/// Position and velocity at affine parameter s.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicState {
    pub s: f64,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
}

/// Initial data for an extended (base + fiber) geodesic: point (x0, Psi0)
/// and directions (xi, h).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialData {
    pub x0: [f64; 4],
    pub psi0: [f64; 4],
    pub xi: [f64; 4],
    pub h: [f64; 4],
}

impl InitialData {
    pub fn new(x0: [f64; 4], psi0: [f64; 4], xi: [f64; 4], h: [f64; 4]) -> Result<Self> {
        let all = x0.iter().chain(&psi0).chain(&xi).chain(&h);
        if all.clone().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        Ok(InitialData { x0, psi0, xi, h })
    }

    /// All-zero point with the given directions.
    pub fn at_vertex(xi: [f64; 4], h: [f64; 4]) -> Result<Self> {
        InitialData::new([0.0; 4], [0.0; 4], xi, h)
    }

    pub fn position8(&self) -> [f64; 8] {
        let mut p = [0.0; 8];
        p[..4].copy_from_slice(&self.x0);
        p[4..].copy_from_slice(&self.psi0);
        p
    }

    pub fn velocity8(&self) -> [f64; 8] {
        let mut v = [0.0; 8];
        v[..4].copy_from_slice(&self.xi);
        v[4..].copy_from_slice(&self.h);
        v
    }
}

/// A sampled geodesic. `norm_drift` is filled by [`Trajectory::monitor_norm`].
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<GeodesicState>,
    pub norm_drift: Option<f64>,
}

impl Trajectory {
    /// Max |g(ydot, ydot) - epsilon_0| over the samples; also stores it.
    pub fn monitor_norm<M: MetricField + ?Sized>(&mut self, metric: &M) -> Result<f64> {
        let initial = conserved_norm(metric, &self.samples[0])?;
        let mut drift = 0.0f64;
        for state in &self.samples {
            let n = conserved_norm(metric, state)?;
            drift = drift.max((n - initial).abs());
        }
        self.norm_drift = Some(drift);
        Ok(drift)
    }
}

/// Geodesic classification by the sign of the conserved norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeodesicClass {
    Null,
    Timelike,
    Spacelike,
}

/// Threshold below which the initial norm counts as null.
pub const NULL_NORM_THRESHOLD: f64 = 1e-10;

impl GeodesicClass {
    /// Positive norms map to timelike, negative to spacelike (the
    /// epsilon = 0, +1, -1 ordering).
    pub fn from_norm(norm: f64) -> Self {
        if norm.abs() < NULL_NORM_THRESHOLD {
            GeodesicClass::Null
        } else if norm > 0.0 {
            GeodesicClass::Timelike
        } else {
            GeodesicClass::Spacelike
        }
    }
}

/// Acceleration -Gamma^k_ij ydot^i ydot^j of the geodesic equation.
pub fn geodesic_rhs<C: ConnectionField + ?Sized>(
    conn: &C,
    state: &GeodesicState,
) -> Result<Vec<f64>> {
    let n = conn.dim();
    if state.position.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state.position.len(),
        });
    }
    if state.velocity.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state.velocity.len(),
        });
    }
    let gamma = conn.eval(&state.position)?;
    let mut acc = vec![0.0; n];
    for k in 0..n {
        let mut a = 0.0;
        for i in 0..n {
            for j in 0..n {
                a += gamma.get(k, i, j) * state.velocity[i] * state.velocity[j];
            }
        }
        acc[k] = -a;
    }
    Ok(acc)
}

/// The quadratic form g_ij(pos) ydot^i ydot^j.
pub fn conserved_norm<M: MetricField + ?Sized>(
    metric: &M,
    state: &GeodesicState,
) -> Result<f64> {
    let n = metric.dim();
    if state.position.len() != n || state.velocity.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state.position.len().max(state.velocity.len()),
        });
    }
    let g = metric.eval(&state.position)?;
    Ok(g.quadratic_form(&state.velocity))
}

fn phase_solve<C: ConnectionField + ?Sized>(
    conn: &C,
    pos0: &[f64],
    vel0: &[f64],
    s_max: f64,
    tol: f64,
) -> Result<ode::OdeSolution> {
    let n = conn.dim();
    if pos0.len() != n || vel0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: pos0.len().max(vel0.len()),
        });
    }
    let mut y0 = Vec::with_capacity(2 * n);
    y0.extend_from_slice(pos0);
    y0.extend_from_slice(vel0);

    let mut rhs_err: Option<Error> = None;
    let f = |_s: f64, y: &[f64], dy: &mut [f64]| {
        let (pos, vel) = y.split_at(n);
        dy[..n].copy_from_slice(vel);
        match conn.eval(pos) {
            Ok(gamma) => {
                for k in 0..n {
                    let mut a = 0.0;
                    for i in 0..n {
                        for j in 0..n {
                            a += gamma.get(k, i, j) * vel[i] * vel[j];
                        }
                    }
                    dy[n + k] = -a;
                }
            }
            Err(e) => {
                // surface the failure through a non-finite state
                if rhs_err.is_none() {
                    rhs_err = Some(e);
                }
                dy[n..].fill(f64::NAN);
            }
        }
    };
    let sol = solve_with(f, &y0, s_max, tol);
    match (sol, rhs_err) {
        (_, Some(e)) => Err(e),
        (res, None) => res,
    }
}

fn solve_with<F: FnMut(f64, &[f64], &mut [f64])>(
    f: F,
    y0: &[f64],
    s_max: f64,
    tol: f64,
) -> Result<ode::OdeSolution> {
    ode::solve(f, y0, 0.0, s_max, &OdeOptions::with_tol(tol))
}

fn state_from_phase(n: usize, s: f64, y: &[f64]) -> GeodesicState {
    GeodesicState {
        s,
        position: y[..n].to_vec(),
        velocity: y[n..].to_vec(),
    }
}

/// Integrate the geodesic of `conn` from `init` up to `s_max`.
///
/// A 2n-dimensional connection consumes the full (x0, Psi0; xi, h) data; a
/// 4-dimensional one uses only the base point and direction. The returned
/// trajectory samples the accepted integrator steps.
pub fn integrate<C: ConnectionField + ?Sized>(
    conn: &C,
    init: &InitialData,
    s_max: f64,
    tol: f64,
) -> Result<Trajectory> {
    let (pos0, vel0): (Vec<f64>, Vec<f64>) = match conn.dim() {
        8 => (init.position8().to_vec(), init.velocity8().to_vec()),
        4 => (init.x0.to_vec(), init.xi.to_vec()),
        d => {
            return Err(Error::DimensionMismatch { expected: 8, got: d });
        }
    };
    integrate_phase(conn, &pos0, &vel0, s_max, tol)
}

/// Integrate from an explicit phase-space point (any dimension).
pub fn integrate_phase<C: ConnectionField + ?Sized>(
    conn: &C,
    pos0: &[f64],
    vel0: &[f64],
    s_max: f64,
    tol: f64,
) -> Result<Trajectory> {
    let n = conn.dim();
    let sol = phase_solve(conn, pos0, vel0, s_max, tol)?;
    let samples = sol
        .steps
        .iter()
        .map(|st| state_from_phase(n, st.s, &st.y))
        .collect();
    Ok(Trajectory {
        samples,
        norm_drift: None,
    })
}

/// Integrate and sample the trajectory at the requested parameter values
/// (dense output on the accepted steps).
pub fn integrate_at<C: ConnectionField + ?Sized>(
    conn: &C,
    pos0: &[f64],
    vel0: &[f64],
    s_values: &[f64],
    tol: f64,
) -> Result<Vec<GeodesicState>> {
    let n = conn.dim();
    let s_max = s_values.iter().cloned().fold(0.0f64, f64::max);
    if s_max <= 0.0 {
        let y: Vec<f64> = pos0.iter().chain(vel0.iter()).cloned().collect();
        return Ok(s_values
            .iter()
            .map(|&s| state_from_phase(n, s, &y))
            .collect());
    }
    let sol = phase_solve(conn, pos0, vel0, s_max, tol)?;
    Ok(s_values
        .iter()
        .map(|&s| state_from_phase(n, s, &sol.sample(s)))
        .collect())
}

/// CSV export with the anti-Mach headers for 4 or 8 dimensions and generic
/// labels otherwise. The norm column requires the metric the trajectory
/// conserves.
pub fn trajectory_to_csv<M: MetricField + ?Sized>(
    metric: &M,
    traj: &Trajectory,
) -> Result<String> {
    let n = metric.dim();
    let names: Vec<String> = match n {
        8 => ["x", "y", "z", "t", "P", "Q", "U", "V"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        4 => ["x", "y", "z", "t"].iter().map(|s| s.to_string()).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    let mut out = String::from("s");
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    for name in &names {
        out.push(',');
        out.push_str(name);
        out.push_str("dot");
    }
    out.push_str(",norm\n");
    for state in &traj.samples {
        let norm = conserved_norm(metric, state)?;
        out.push_str(&format!("{}", state.s));
        for v in state.position.iter().chain(state.velocity.iter()) {
            out.push_str(&format!(",{}", v));
        }
        out.push_str(&format!(",{}\n", norm));
    }
    Ok(out)
}

/// JSON-lines export: one state object per line.
pub fn trajectory_to_jsonl<M: MetricField + ?Sized>(
    metric: &M,
    traj: &Trajectory,
) -> Result<String> {
    #[derive(Serialize)]
    struct Line<'a> {
        s: f64,
        position: &'a [f64],
        velocity: &'a [f64],
        norm: f64,
    }
    let mut out = String::new();
    for state in &traj.samples {
        let norm = conserved_norm(metric, state)?;
        let line = Line {
            s: state.s,
            position: &state.position,
            velocity: &state.velocity,
            norm,
        };
        out.push_str(&serde_json::to_string(&line).expect("serializable"));
        out.push('\n');
    }
    Ok(out)
}
