//! Closed-form verification harness.
//!
//! For randomly drawn initial data the published closed forms are evaluated
//! on a parameter grid and compared against a high-accuracy numerical
//! integration of the hand-coded geodesic system (the oracle). Deviations
//! above the flag tolerance are reported per formula, never silently
//! accepted; flagged formulas carry a reproducible trace with the ODE
//! residual alongside the oracle comparison, so a misprinted display can be
//! told apart from integrator error.

use super::closed_form::{
    supplementary_norm, vertex_fiber, ClosedForm, ClosedFormConstants, R7Reading,
    SupplementaryNorm,
};
use super::extended_accel;
use crate::error::Result;
use crate::geodesic::InitialData;
use crate::ode::{self, OdeOptions};
use crate::sampling::{trial_rng, RNG_NAME};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

const COORD_NAMES: [&str; 8] = ["x", "y", "z", "t", "P", "Q", "U", "V"];
const GRID_POINTS: usize = 65;
const TRACE_STRIDE: usize = 8;

// distinct ChaCha streams per trial family
const STREAM_ZERO: u64 = 0;
const STREAM_NONZERO: u64 = 1 << 32;

/// Which solution families a verification run covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchFilter {
    Both,
    Xi3Zero,
    Xi3NonZero,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Deviations above this are flagged.
    pub tol: f64,
    /// Integrator tolerance for the oracle.
    pub oracle_tol: f64,
    pub branch: BranchFilter,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 25,
            seed: 42,
            tol: 1e-8,
            oracle_tol: 1e-12,
            branch: BranchFilter::Both,
        }
    }
}

/// One point of a flagged-formula trace.
#[derive(Clone, Debug, Serialize)]
pub struct TracePoint {
    pub s: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub deviation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ode_residual: Option<f64>,
}

/// Comparison outcome for one coordinate of one trial.
#[derive(Clone, Debug, Serialize)]
pub struct CoordReport {
    pub name: String,
    pub max_deviation: f64,
    pub s_at_max: f64,
    pub flagged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ode_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TracePoint>>,
}

/// One random-initial-data comparison of all eight coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub index: usize,
    pub init: InitialData,
    pub s_span: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<ClosedFormConstants>,
    pub coords: Vec<CoordReport>,
}

/// Aggregate over the trials of one branch.
#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub trials: Vec<TrialReport>,
    /// max deviation per coordinate across trials, in (x, y, z, t, P, Q, U, V) order
    pub max_deviation: [f64; 8],
    pub flagged_coords: Vec<String>,
    pub all_pass: bool,
}

/// Vertex-reduced forms compared against the oracle and against the general
/// displays evaluated at the vertex.
#[derive(Clone, Debug, Serialize)]
pub struct VertexTrialReport {
    pub index: usize,
    pub xi: [f64; 4],
    pub h: [f64; 4],
    pub s_span: f64,
    pub coords: Vec<CoordReport>,
    /// max |vertex form - general form| per fiber coordinate (P, Q, U, V)
    pub vertex_vs_general: [f64; 4],
    pub norm_direct: f64,
    pub norm_printed: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub trials: Vec<VertexTrialReport>,
    pub max_deviation: [f64; 4],
    pub flagged_coords: Vec<String>,
}

/// Oracle deviation of one candidate reading of an ambiguous token.
#[derive(Clone, Debug, Serialize)]
pub struct ReadingCandidate {
    pub reading: String,
    pub max_deviation: f64,
    pub trials_evaluated: usize,
}

/// Adjudication of one ambiguous or suspect token, decided by which reading
/// tracks the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub subject: String,
    pub candidates: Vec<ReadingCandidate>,
    pub preferred: String,
}

/// Full machine-readable verification report.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub rng: String,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub oracle_tol: f64,
    pub branch: BranchFilter,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_branch: Option<BranchReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonzero_branch: Option<BranchReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<VertexReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Finding>,
    /// true iff no formula was flagged anywhere in the run
    pub pass: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Integrate the hand-coded extended system and sample it on `s_values`.
fn oracle_states(init: &InitialData, s_values: &[f64], tol: f64) -> Result<Vec<Vec<f64>>> {
    let mut y0 = Vec::with_capacity(16);
    y0.extend_from_slice(&init.position8());
    y0.extend_from_slice(&init.velocity8());
    let f = |_s: f64, y: &[f64], dy: &mut [f64]| {
        let (pos, vel) = y.split_at(8);
        dy[..8].copy_from_slice(vel);
        dy[8..].copy_from_slice(&extended_accel(pos, vel));
    };
    let s_max = s_values.iter().cloned().fold(0.0f64, f64::max);
    let sol = ode::solve(f, &y0, 0.0, s_max.max(1e-6), &OdeOptions::with_tol(tol))?;
    Ok(s_values.iter().map(|&s| sol.sample(s)).collect())
}

fn grid(span: f64) -> Vec<f64> {
    (0..GRID_POINTS)
        .map(|i| span * i as f64 / (GRID_POINTS - 1) as f64)
        .collect()
}

fn draw_init(seed: u64, stream: u64, zero_branch: bool) -> InitialData {
    let mut rng = trial_rng(seed, stream);
    let draw4 = |rng: &mut rand_chacha::ChaCha8Rng| {
        [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ]
    };
    let x0 = draw4(&mut rng);
    let psi0 = draw4(&mut rng);
    let mut xi = draw4(&mut rng);
    let h = draw4(&mut rng);
    if zero_branch {
        xi[2] = 0.0;
    } else {
        let mag: f64 = rng.gen_range(0.2..2.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        xi[2] = sign * mag;
    }
    InitialData::new(x0, psi0, xi, h).expect("uniform draws are finite")
}

struct CoordSeries<'a> {
    grid: &'a [f64],
    closed: Vec<f64>,
    oracle: Vec<f64>,
    residual: Option<Vec<f64>>,
}

fn coord_report(name: &str, series: &CoordSeries, tol: f64) -> CoordReport {
    let mut max_dev = 0.0f64;
    let mut s_at_max = 0.0f64;
    for (i, &s) in series.grid.iter().enumerate() {
        let dev = (series.closed[i] - series.oracle[i]).abs();
        if dev > max_dev {
            max_dev = dev;
            s_at_max = s;
        }
    }
    let flagged = max_dev > tol;
    let trace = if flagged {
        Some(
            series
                .grid
                .iter()
                .enumerate()
                .filter(|(i, _)| i % TRACE_STRIDE == 0)
                .map(|(i, &s)| TracePoint {
                    s,
                    closed_form: series.closed[i],
                    oracle: series.oracle[i],
                    deviation: (series.closed[i] - series.oracle[i]).abs(),
                    ode_residual: series.residual.as_ref().map(|r| r[i]),
                })
                .collect(),
        )
    } else {
        None
    };
    let max_ode_residual = series
        .residual
        .as_ref()
        .map(|r| r.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    CoordReport {
        name: name.to_string(),
        max_deviation: max_dev,
        s_at_max,
        flagged,
        max_ode_residual: if flagged { max_ode_residual } else { None },
        trace,
    }
}

fn run_trial(opts: &VerifyOptions, index: usize, zero_branch: bool) -> TrialReport {
    let stream = if zero_branch {
        STREAM_ZERO + index as u64
    } else {
        STREAM_NONZERO + index as u64
    };
    let init = draw_init(opts.seed, stream, zero_branch);
    let cf = ClosedForm::new(init).expect("branch guards hold by construction");
    let span = cf.period();
    let s_grid = grid(span);
    let oracle = oracle_states(&init, &s_grid, opts.oracle_tol)
        .expect("oracle integration of bounded closed-form data");

    let mut closed = vec![vec![0.0; s_grid.len()]; 8];
    let mut residual = vec![vec![0.0; s_grid.len()]; 8];
    for (i, &s) in s_grid.iter().enumerate() {
        let basic = cf.basic_at(s);
        let rb = cf.basic_residual(s);
        let (fiber, rf) = cf.fiber_with_residual(s);
        for c in 0..4 {
            closed[c][i] = basic[c];
            residual[c][i] = rb[c];
            closed[4 + c][i] = fiber[c];
            residual[4 + c][i] = rf[c];
        }
    }

    let coords = (0..8)
        .map(|c| {
            let series = CoordSeries {
                grid: &s_grid,
                closed: closed[c].clone(),
                oracle: oracle.iter().map(|st| st[c]).collect(),
                residual: Some(residual[c].clone()),
            };
            coord_report(COORD_NAMES[c], &series, opts.tol)
        })
        .collect();

    TrialReport {
        index,
        init,
        s_span: span,
        constants: cf.constants().copied(),
        coords,
    }
}

fn branch_report(trials: Vec<TrialReport>) -> BranchReport {
    let mut max_deviation = [0.0f64; 8];
    let mut flagged = std::collections::BTreeSet::new();
    for trial in &trials {
        for (c, coord) in trial.coords.iter().enumerate() {
            max_deviation[c] = max_deviation[c].max(coord.max_deviation);
            if coord.flagged {
                flagged.insert(coord.name.clone());
            }
        }
    }
    let all_pass = flagged.is_empty();
    BranchReport {
        trials,
        max_deviation,
        flagged_coords: flagged.into_iter().collect(),
        all_pass,
    }
}

fn run_vertex_trial(opts: &VerifyOptions, index: usize) -> VertexTrialReport {
    // reuse the nonzero-branch directions, moved to the vertex
    let stream = STREAM_NONZERO + index as u64;
    let drawn = draw_init(opts.seed, stream, false);
    let init = InitialData::at_vertex(drawn.xi, drawn.h).expect("finite directions");
    let cf = ClosedForm::new(init).expect("nonzero branch by construction");
    let span = cf.period();
    let s_grid = grid(span);
    let oracle = oracle_states(&init, &s_grid, opts.oracle_tol)
        .expect("oracle integration of bounded closed-form data");

    let mut vertex_vals = vec![[0.0; 4]; s_grid.len()];
    let mut general_vals = vec![[0.0; 4]; s_grid.len()];
    for (i, &s) in s_grid.iter().enumerate() {
        vertex_vals[i] = vertex_fiber(init.xi, init.h, s).expect("guarded above");
        general_vals[i] = cf.fiber_at(s);
    }

    let coords = (0..4)
        .map(|c| {
            let series = CoordSeries {
                grid: &s_grid,
                closed: vertex_vals.iter().map(|v| v[c]).collect(),
                oracle: oracle.iter().map(|st| st[4 + c]).collect(),
                residual: None,
            };
            coord_report(COORD_NAMES[4 + c], &series, opts.tol)
        })
        .collect();

    let mut vertex_vs_general = [0.0f64; 4];
    for i in 0..s_grid.len() {
        for c in 0..4 {
            vertex_vs_general[c] =
                vertex_vs_general[c].max((vertex_vals[i][c] - general_vals[i][c]).abs());
        }
    }

    let (norm_direct, norm_printed) = match supplementary_norm(init.xi, init.h) {
        SupplementaryNorm::Xi3NonZero { direct, printed } => (direct, printed),
        SupplementaryNorm::Xi3Zero { printed } => (printed, printed),
    };

    VertexTrialReport {
        index,
        xi: init.xi,
        h: init.h,
        s_span: span,
        coords,
        vertex_vs_general,
        norm_direct,
        norm_printed,
    }
}

/// Adjudicate the two ambiguous tokens of the trigonometric fiber displays
/// by comparing each reading against the oracle over the nonzero-branch
/// trials.
fn findings(opts: &VerifyOptions, trials: &[TrialReport]) -> Vec<Finding> {
    let mut p_xi3 = (0.0f64, 0usize);
    let mut p_h3 = (0.0f64, 0usize);
    let mut r7_printed = (0.0f64, 0usize);
    let mut r7_neg8 = (0.0f64, 0usize);

    for trial in trials {
        let cf = ClosedForm::new(trial.init).expect("was constructible");
        let span = trial.s_span;
        let s_grid = grid(span);
        let oracle = oracle_states(&trial.init, &s_grid, opts.oracle_tol)
            .expect("oracle integration of bounded closed-form data");
        for (i, &s) in s_grid.iter().enumerate() {
            let oracle_p = oracle[i][4];
            let printed_p = cf.fiber_at(s)[0];
            p_xi3.0 = p_xi3.0.max((printed_p - oracle_p).abs());
            if let Some(alt) = cf.fiber_p_h3_reading(s) {
                p_h3.0 = p_h3.0.max((alt - oracle_p).abs());
                p_h3.1 = 1;
            }
            p_xi3.1 = 1;

            // oracle U acceleration from the hand right-hand side
            let (pos, vel) = oracle[i].split_at(8);
            let u_acc_oracle = extended_accel(pos, vel)[6];
            if let Some(v) = cf.u_accel_printed(s, R7Reading::PrintedSquare) {
                r7_printed.0 = r7_printed.0.max((v - u_acc_oracle).abs());
                r7_printed.1 = 1;
            }
            if let Some(v) = cf.u_accel_printed(s, R7Reading::NegatedEight) {
                r7_neg8.0 = r7_neg8.0.max((v - u_acc_oracle).abs());
                r7_neg8.1 = 1;
            }
        }
    }

    let count = trials.len();
    let mut out = Vec::new();
    if p_xi3.1 > 0 {
        let candidates = vec![
            ReadingCandidate {
                reading: "sqrt2_xi3".into(),
                max_deviation: p_xi3.0,
                trials_evaluated: count,
            },
            ReadingCandidate {
                reading: "sqrt2_h3".into(),
                max_deviation: p_h3.0,
                trials_evaluated: if p_h3.1 > 0 { count } else { 0 },
            },
        ];
        let preferred = if p_h3.1 == 0 || p_xi3.0 <= p_h3.0 {
            "sqrt2_xi3"
        } else {
            "sqrt2_h3"
        };
        out.push(Finding {
            subject: "P display trigonometric argument".into(),
            candidates,
            preferred: preferred.into(),
        });
    }
    if r7_printed.1 > 0 {
        let candidates = vec![
            ReadingCandidate {
                reading: "printed_square".into(),
                max_deviation: r7_printed.0,
                trials_evaluated: count,
            },
            ReadingCandidate {
                reading: "negated_eight".into(),
                max_deviation: r7_neg8.0,
                trials_evaluated: count,
            },
        ];
        let preferred = if r7_printed.0 <= r7_neg8.0 {
            "printed_square"
        } else {
            "negated_eight"
        };
        out.push(Finding {
            subject: "U acceleration token (-8 xi1)^2 h2".into(),
            candidates,
            preferred: preferred.into(),
        });
    }
    out
}

/// Run the verification campaign described by `opts`.
pub fn verify_closed_forms(opts: &VerifyOptions) -> VerificationReport {
    let run_zero = matches!(opts.branch, BranchFilter::Both | BranchFilter::Xi3Zero);
    let run_nonzero = matches!(opts.branch, BranchFilter::Both | BranchFilter::Xi3NonZero);

    let zero_branch = run_zero.then(|| {
        let trials: Vec<TrialReport> = (0..opts.trials)
            .into_par_iter()
            .map(|i| run_trial(opts, i, true))
            .collect();
        branch_report(trials)
    });

    let nonzero_branch = run_nonzero.then(|| {
        let trials: Vec<TrialReport> = (0..opts.trials)
            .into_par_iter()
            .map(|i| run_trial(opts, i, false))
            .collect();
        branch_report(trials)
    });

    let vertex = run_nonzero.then(|| {
        let trials: Vec<VertexTrialReport> = (0..opts.trials)
            .into_par_iter()
            .map(|i| run_vertex_trial(opts, i))
            .collect();
        let mut max_deviation = [0.0f64; 4];
        let mut flagged = std::collections::BTreeSet::new();
        for t in &trials {
            for (c, coord) in t.coords.iter().enumerate() {
                max_deviation[c] = max_deviation[c].max(coord.max_deviation);
                if coord.flagged {
                    flagged.insert(coord.name.clone());
                }
            }
        }
        VertexReport {
            trials,
            max_deviation,
            flagged_coords: flagged.into_iter().collect(),
        }
    });

    let findings = match &nonzero_branch {
        Some(branch) => findings(opts, &branch.trials),
        None => Vec::new(),
    };

    let pass = zero_branch.as_ref().is_none_or(|b| b.all_pass)
        && nonzero_branch.as_ref().is_none_or(|b| b.all_pass)
        && vertex.as_ref().is_none_or(|v| v.flagged_coords.is_empty());

    VerificationReport {
        schema: 1,
        rng: RNG_NAME.to_string(),
        seed: opts.seed,
        trials: opts.trials,
        tol: opts.tol,
        oracle_tol: opts.oracle_tol,
        branch: opts.branch,
        zero_branch,
        nonzero_branch,
        vertex,
        findings,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_branch_all_pass() {
        let opts = VerifyOptions {
            trials: 5,
            seed: 42,
            tol: 1e-8,
            oracle_tol: 1e-12,
            branch: BranchFilter::Xi3Zero,
        };
        let report = verify_closed_forms(&opts);
        let zero = report.zero_branch.as_ref().unwrap();
        assert!(zero.all_pass, "flagged: {:?}", zero.flagged_coords);
        assert!(report.pass);
        assert!(report.nonzero_branch.is_none());
    }

    #[test]
    fn nonzero_branch_flags_carry_traces() {
        let opts = VerifyOptions {
            trials: 4,
            ..Default::default()
        };
        let report = verify_closed_forms(&opts);
        let nonzero = report.nonzero_branch.as_ref().unwrap();
        for trial in &nonzero.trials {
            for coord in &trial.coords {
                if coord.flagged {
                    let trace = coord.trace.as_ref().expect("flagged coords carry traces");
                    assert!(!trace.is_empty());
                }
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = VerifyOptions {
            trials: 3,
            ..Default::default()
        };
        let a = verify_closed_forms(&opts).to_json();
        let b = verify_closed_forms(&opts).to_json();
        assert_eq!(a, b);
    }
}
