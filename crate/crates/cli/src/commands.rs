//! Implementations of the CLI subcommands.

use crate::output::{json_string, parse_floats_n, write_out, Format};
use crate::registry::MetricChoice;
use crate::{
    ChristoffelArgs, ExtendArgs, GeodesicArgs, KretschmannArgs, PointSource, RicciArgs,
    SurfaceArgs, VerifyArgs,
};
use riex_core::antimach::{verify_closed_forms, VerifyOptions};
use riex_core::connection::{christoffel, LeviCivita};
use riex_core::curvature::{kretschmann, max_abs_ricci, RefMetric};
use riex_core::error::Error;
use riex_core::extension::{extension_components, Extension, ExtendedChart};
use riex_core::geodesic::{integrate, integrate_at, trajectory_to_csv, trajectory_to_jsonl, InitialData, Trajectory};
use riex_core::metric::MetricField;
use riex_core::sampling::{trial_rng, uniform_point, RNG_NAME};
use riex_core::surfaces::{
    build_family_surface, separability_report, surface_to_csv, GridSpec, SurfaceGenerators,
    SurfaceMap,
};
use serde::Serialize;

/// Whether a command's verification outcome allows a zero exit status.
pub enum Outcome {
    Clean,
    Flagged,
}

fn resolve_points(src: &PointSource, dim: usize) -> Result<Vec<Vec<f64>>, Error> {
    if let Some(points) = &src.point {
        return points.iter().map(|p| parse_floats_n(p, dim)).collect();
    }
    match &src.points {
        Some(spec) => {
            let n: u64 = spec
                .strip_prefix("random:")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| {
                    Error::ConfigError(format!("bad --points '{spec}', expected random:N"))
                })?;
            let (lo, hi) = match &src.range {
                Some(r) => {
                    let v = parse_floats_n(r, 2)?;
                    (v[0], v[1])
                }
                None => (-2.0, 2.0),
            };
            if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
                return Err(Error::ConfigError(format!("empty range {lo}..{hi}")));
            }
            Ok((0..n)
                .map(|i| uniform_point(&mut trial_rng(src.seed, i), dim, lo, hi))
                .collect())
        }
        None => Err(Error::ConfigError(
            "provide --point or --points random:N".into(),
        )),
    }
}

#[derive(Serialize)]
struct ChristoffelOut {
    schema: u32,
    command: &'static str,
    metric: String,
    point: Vec<f64>,
    components: Vec<GammaComponent>,
}

#[derive(Serialize)]
struct GammaComponent {
    k: usize,
    i: usize,
    j: usize,
    value: f64,
}

pub fn run_christoffel(args: &ChristoffelArgs) -> Result<Outcome, Error> {
    let metric = MetricChoice::parse(&args.metric)?;
    let point = parse_floats_n(&args.point, metric.dim())?;
    let gamma = christoffel(&metric, point.as_slice())?;
    let n = metric.dim();
    let mut components = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let value = gamma.get(k, i, j);
                if value != 0.0 {
                    components.push(GammaComponent { k, i, j, value });
                }
            }
        }
    }
    let content = match args.format {
        Format::Json => json_string(&ChristoffelOut {
            schema: 1,
            command: "christoffel",
            metric: args.metric.clone(),
            point,
            components,
        }),
        Format::Csv => {
            let mut s = String::from("k,i,j,value\n");
            for c in &components {
                s.push_str(&format!("{},{},{},{}\n", c.k, c.i, c.j, c.value));
            }
            s
        }
    };
    write_out(&args.out, &content)?;
    Ok(Outcome::Clean)
}

#[derive(Serialize)]
struct ScanOut {
    schema: u32,
    command: &'static str,
    metric: String,
    rng: &'static str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
    results: Vec<ScanRow>,
    max_abs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
}

#[derive(Serialize)]
struct ScanRow {
    point: Vec<f64>,
    value: f64,
}

fn scan_output(
    command: &'static str,
    metric_id: &str,
    seed: u64,
    tol: Option<f64>,
    results: Vec<ScanRow>,
    format: Format,
    out: &Option<std::path::PathBuf>,
) -> Result<Outcome, Error> {
    let max_abs = results.iter().fold(0.0f64, |m, r| m.max(r.value.abs()));
    let pass = tol.map(|t| max_abs <= t);
    let content = match format {
        Format::Json => json_string(&ScanOut {
            schema: 1,
            command,
            metric: metric_id.to_string(),
            rng: RNG_NAME,
            seed,
            tol,
            results,
            max_abs,
            pass,
        }),
        Format::Csv => {
            let mut s = String::from("point,value\n");
            for r in &results {
                let pt = r
                    .point
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                s.push_str(&format!("{},{}\n", pt, r.value));
            }
            s
        }
    };
    write_out(out, &content)?;
    Ok(match pass {
        Some(false) => Outcome::Flagged,
        _ => Outcome::Clean,
    })
}

pub fn run_ricci(args: &RicciArgs) -> Result<Outcome, Error> {
    let metric = MetricChoice::parse(&args.metric)?;
    let points = resolve_points(&args.points, metric.dim())?;
    let results = points
        .into_iter()
        .map(|p| {
            let value = max_abs_ricci(&metric, &p)?;
            Ok(ScanRow { point: p, value })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    scan_output(
        "ricci",
        &args.metric,
        args.points.seed,
        args.tol,
        results,
        args.format,
        &args.out,
    )
}

pub fn run_kretschmann(args: &KretschmannArgs) -> Result<Outcome, Error> {
    let metric = MetricChoice::parse(&args.metric)?;
    let points = resolve_points(&args.points, metric.dim())?;
    let results = points
        .into_iter()
        .map(|p| {
            let value = kretschmann(&metric, p.as_slice())?;
            Ok(ScanRow { point: p, value })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    scan_output(
        "kretschmann",
        &args.metric,
        args.points.seed,
        args.tol,
        results,
        args.format,
        &args.out,
    )
}

pub fn run_extend(args: &ExtendArgs) -> Result<Outcome, Error> {
    let metric = MetricChoice::parse(&args.metric)?;
    let n = metric.dim();
    let chart = if matches!(metric, MetricChoice::AntiMach4(_)) {
        ExtendedChart::anti_mach()
    } else {
        ExtendedChart::generic(n)
    };
    let conn = LeviCivita::new(RefMetric { metric: &metric });
    let ext = Extension::new(conn, chart);
    let point = match &args.point {
        Some(p) => parse_floats_n(p, 2 * n)?,
        None => vec![0.0; 2 * n],
    };
    let comps = extension_components(&ext, &point)?;
    let content = match args.format {
        Format::Json => json_string(&comps),
        Format::Csv => {
            let mut s = String::from("i,j,label,value\n");
            for c in &comps.components {
                s.push_str(&format!("{},{},{},{}\n", c.i, c.j, c.label, c.value));
            }
            s
        }
    };
    write_out(&args.out, &content)?;
    Ok(Outcome::Clean)
}

pub fn run_geodesic(args: &GeodesicArgs) -> Result<Outcome, Error> {
    let metric = MetricChoice::parse(&args.metric)?;
    let n = metric.dim();
    let conn = LeviCivita::new(RefMetric { metric: &metric });

    let (pos0, vel0): (Vec<f64>, Vec<f64>) = match (&args.v0, &args.xi) {
        (Some(_), Some(_)) => {
            return Err(Error::ConfigError(
                "give either --v0 or the --xi/--h pair, not both".into(),
            ))
        }
        (Some(v0), None) => {
            let pos = match &args.x0 {
                Some(x0) => parse_floats_n(x0, n)?,
                None => vec![0.0; n],
            };
            (pos, parse_floats_n(v0, n)?)
        }
        (None, Some(xi)) => {
            if n != 8 {
                return Err(Error::ConfigError(format!(
                    "--xi/--h address the doubled anti-Mach chart; metric '{}' has dimension {n}",
                    args.metric
                )));
            }
            let xi = parse_floats_n(xi, 4)?;
            let h = match &args.h {
                Some(h) => parse_floats_n(h, 4)?,
                None => vec![0.0; 4],
            };
            let x0 = match &args.x0 {
                Some(x0) => parse_floats_n(x0, 4)?,
                None => vec![0.0; 4],
            };
            let psi0 = match &args.psi0 {
                Some(p) => parse_floats_n(p, 4)?,
                None => vec![0.0; 4],
            };
            let init = InitialData::new(
                x0.try_into().expect("length checked"),
                psi0.try_into().expect("length checked"),
                xi.try_into().expect("length checked"),
                h.try_into().expect("length checked"),
            )?;
            (init.position8().to_vec(), init.velocity8().to_vec())
        }
        (None, None) => {
            return Err(Error::ConfigError(
                "initial direction missing: give --v0 or --xi".into(),
            ))
        }
    };

    let traj = match args.samples {
        Some(count) => {
            if count < 2 {
                return Err(Error::ConfigError("--samples must be at least 2".into()));
            }
            let s_values: Vec<f64> = (0..count)
                .map(|i| args.s_max * i as f64 / (count - 1) as f64)
                .collect();
            let samples = integrate_at(&conn, &pos0, &vel0, &s_values, args.tol)?;
            Trajectory {
                samples,
                norm_drift: None,
            }
        }
        None => {
            let init = InitialData::new(
                [pos0[0], pos0[1], pos0[2], pos0[3]],
                if n == 8 {
                    [pos0[4], pos0[5], pos0[6], pos0[7]]
                } else {
                    [0.0; 4]
                },
                [vel0[0], vel0[1], vel0[2], vel0[3]],
                if n == 8 {
                    [vel0[4], vel0[5], vel0[6], vel0[7]]
                } else {
                    [0.0; 4]
                },
            )?;
            if n == 8 || n == 4 {
                integrate(&conn, &init, args.s_max, args.tol)?
            } else {
                riex_core::geodesic::integrate_phase(&conn, &pos0, &vel0, args.s_max, args.tol)?
            }
        }
    };

    let content = match args.format {
        Format::Csv => trajectory_to_csv(&metric, &traj)?,
        Format::Json => trajectory_to_jsonl(&metric, &traj)?,
    };
    write_out(&args.out, &content)?;
    Ok(Outcome::Clean)
}

pub fn run_verify(args: &VerifyArgs) -> Result<Outcome, Error> {
    let opts = VerifyOptions {
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        oracle_tol: args.oracle_tol,
        branch: args.branch.into(),
    };
    if opts.trials == 0 {
        return Err(Error::ConfigError("--trials must be at least 1".into()));
    }
    let positive = |v: f64| v.is_finite() && v > 0.0;
    if !positive(opts.tol) || !positive(opts.oracle_tol) {
        return Err(Error::ConfigError("tolerances must be positive".into()));
    }
    let report = verify_closed_forms(&opts);
    let content = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => {
            let mut s = String::from("branch,trial,coordinate,max_deviation,flagged\n");
            let mut push = |branch: &str, trials: &[riex_core::antimach::verify::TrialReport]| {
                for t in trials {
                    for c in &t.coords {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            branch, t.index, c.name, c.max_deviation, c.flagged
                        ));
                    }
                }
            };
            if let Some(b) = &report.zero_branch {
                push("xi3-zero", &b.trials);
            }
            if let Some(b) = &report.nonzero_branch {
                push("xi3-nonzero", &b.trials);
            }
            if let Some(v) = &report.vertex {
                for t in &v.trials {
                    for c in &t.coords {
                        s.push_str(&format!(
                            "vertex,{},{},{},{}\n",
                            t.index, c.name, c.max_deviation, c.flagged
                        ));
                    }
                }
            }
            s
        }
    };
    write_out(&args.out, &content)?;
    Ok(if report.pass {
        Outcome::Clean
    } else {
        Outcome::Flagged
    })
}

#[derive(Serialize)]
struct SurfaceJsonOut {
    schema: u32,
    command: &'static str,
    grid: GridSpec,
    separability: riex_core::surfaces::SeparabilityReport,
    max_abs_residual: f64,
    samples: Vec<SurfaceSample>,
}

#[derive(Serialize)]
struct SurfaceSample {
    u: f64,
    v: f64,
    coords: [f64; 4],
    residuals: [f64; 4],
}

pub fn run_surface(args: &SurfaceArgs) -> Result<Outcome, Error> {
    let mut gen: SurfaceGenerators = match &args.gen {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::ConfigError(format!("cannot read generator spec {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| Error::ConfigError(format!("bad generator spec: {e}")))?
        }
        None => SurfaceGenerators {
            f: riex_core::surfaces::Fn1::identity(),
            g: riex_core::surfaces::Fn1::identity(),
            c3: 0.0,
            c4: 0.0,
            c5: 0.0,
            g1: riex_core::surfaces::Fn1::default(),
            g2: riex_core::surfaces::Fn1::default(),
            domain: riex_core::surfaces::Rect::unit_centered(),
        },
    };
    if let Some(domain) = &args.domain {
        let v = parse_floats_n(domain, 4)?;
        gen.domain = riex_core::surfaces::Rect {
            u0: v[0],
            u1: v[1],
            v0: v[2],
            v1: v[3],
        };
    }
    let grid = parse_grid(&args.grid)?;
    let surface = build_family_surface(gen);

    let content = match args.format {
        Format::Csv => surface_to_csv(&surface, grid)?,
        Format::Json => {
            let conn = riex_core::antimach::AntiMachConnection;
            let mut samples = Vec::new();
            let mut max_res = 0.0f64;
            for (u, v) in grid.points(&surface.domain()) {
                let coords = surface.eval(u, v);
                let residuals =
                    riex_core::surfaces::surface_pde_residual(&conn, &surface, u, v)?;
                for r in residuals {
                    max_res = max_res.max(r.abs());
                }
                samples.push(SurfaceSample {
                    u,
                    v,
                    coords,
                    residuals,
                });
            }
            let separability = separability_report(&surface, grid)?;
            json_string(&SurfaceJsonOut {
                schema: 1,
                command: "surface",
                grid,
                separability,
                max_abs_residual: max_res,
                samples,
            })
        }
    };
    write_out(&args.out, &content)?;
    Ok(Outcome::Clean)
}

fn parse_grid(text: &str) -> Result<GridSpec, Error> {
    let parse = |tok: &str| {
        tok.parse::<usize>()
            .map_err(|_| Error::ConfigError(format!("bad grid size '{tok}'")))
    };
    let grid = match text.split_once('x') {
        Some((a, b)) => GridSpec {
            nu: parse(a)?,
            nv: parse(b)?,
        },
        None => {
            let n = parse(text)?;
            GridSpec { nu: n, nv: n }
        }
    };
    if grid.nu == 0 || grid.nv == 0 {
        return Err(Error::ConfigError("grid must be at least 1x1".into()));
    }
    Ok(grid)
}
