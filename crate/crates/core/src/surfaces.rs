//! Translation surfaces of the anti-Mach space.
//!
//! A translation surface satisfies, for every coordinate,
//!
//!   d^2 x^i / du dv + Gamma^i_jk (d x^j / du) (d x^k / dv) = 0.
//!
//! The module evaluates this residual for arbitrary smooth surface maps
//! (mixed partials by two-direction dual numbers), builds the closed-form
//! family generated by two one-variable functions f(u), g(v), and reports
//! per-coordinate separability: the family's x, z, t split into a u-part
//! plus a v-part while y picks up the mixed term -2 (C3 + f + g) f' g'.

use crate::antimach::AntiMachConnection;
use crate::connection::ConnectionField;
use crate::dual::{mixed_seed_u, mixed_seed_v, Dual};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// One trigonometric term `amp * sin(freq * x + phase)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TrigTerm {
    pub amp: f64,
    pub freq: f64,
    #[serde(default)]
    pub phase: f64,
}

/// A smooth one-variable function: polynomial plus a finite trigonometric
/// sum. Both parts are closed under the exact differentiation the residual
/// evaluation performs.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Fn1 {
    /// coefficients c0 + c1 x + c2 x^2 + ...
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub poly: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trig: Vec<TrigTerm>,
}

impl Fn1 {
    pub fn poly(coeffs: &[f64]) -> Self {
        Fn1 {
            poly: coeffs.to_vec(),
            trig: Vec::new(),
        }
    }

    /// The identity function x.
    pub fn identity() -> Self {
        Fn1::poly(&[0.0, 1.0])
    }

    pub fn constant(c: f64) -> Self {
        Fn1::poly(&[c])
    }

    pub fn eval<S: Scalar>(&self, x: S) -> S {
        let mut acc = S::zero();
        // Horner on the polynomial part
        for &c in self.poly.iter().rev() {
            acc = acc * x + S::from_f64(c);
        }
        for term in &self.trig {
            acc = acc
                + S::from_f64(term.amp)
                    * (S::from_f64(term.freq) * x + S::from_f64(term.phase)).sin();
        }
        acc
    }

    /// Value and first derivative at `x`.
    pub fn jet(&self, x: f64) -> (f64, f64) {
        let d = self.eval(Dual::seeded(x));
        (d.re, d.eps)
    }
}

/// Parameter rectangle [u0, u1] x [v0, v1].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Rect {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Rect {
    pub fn unit_centered() -> Self {
        Rect {
            u0: -1.0,
            u1: 1.0,
            v0: -1.0,
            v1: 1.0,
        }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.u0 && u <= self.u1 && v >= self.v0 && v <= self.v1
    }
}

/// A parametrised surface (u, v) -> (x, y, z, t), evaluable on dual numbers
/// so mixed partials up to second order come out exactly.
pub trait SurfaceMap: Sync {
    fn eval<S: Scalar>(&self, u: S, v: S) -> [S; 4];
    fn domain(&self) -> Rect;
}

/// Generators of the closed-form family: z = f + g, t = f - g,
/// x = (f^2 + C3 f + C4) + (-g^2 - C3 g + C5),
/// y = -2 C3 f g - f^2 g - g^2 f + G1 + G2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceGenerators {
    pub f: Fn1,
    pub g: Fn1,
    pub c3: f64,
    #[serde(default)]
    pub c4: f64,
    #[serde(default)]
    pub c5: f64,
    #[serde(default)]
    pub g1: Fn1,
    #[serde(default)]
    pub g2: Fn1,
    #[serde(default = "Rect::unit_centered")]
    pub domain: Rect,
}

/// The assembled family surface.
#[derive(Clone, Debug)]
pub struct FamilySurface {
    pub gen: SurfaceGenerators,
}

/// Assemble the family surface from its generators.
pub fn build_family_surface(gen: SurfaceGenerators) -> FamilySurface {
    FamilySurface { gen }
}

impl SurfaceMap for FamilySurface {
    fn eval<S: Scalar>(&self, u: S, v: S) -> [S; 4] {
        let gen = &self.gen;
        let f = gen.f.eval(u);
        let g = gen.g.eval(v);
        let c3 = S::from_f64(gen.c3);
        let c4 = S::from_f64(gen.c4);
        let c5 = S::from_f64(gen.c5);
        let x1 = f * f + c3 * f + c4;
        let x2 = -(g * g) - c3 * g + c5;
        let x = x1 + x2;
        let y = -(S::from_f64(2.0) * c3 * f * g) - f * f * g - g * g * f
            + gen.g1.eval(u)
            + gen.g2.eval(v);
        let z = f + g;
        let t = f - g;
        [x, y, z, t]
    }

    fn domain(&self) -> Rect {
        self.gen.domain
    }
}

/// A surface with an arbitrary smooth map per coordinate, each a sum of
/// separable products p(u) q(v); enough to express perturbed and random
/// test surfaces.
#[derive(Clone, Debug, Default)]
pub struct ProductSurface {
    /// coords[i] is a list of (p(u), q(v)) products summed together
    pub coords: [Vec<(Fn1, Fn1)>; 4],
    pub domain: Option<Rect>,
}

impl ProductSurface {
    pub fn push(&mut self, coord: usize, p: Fn1, q: Fn1) {
        self.coords[coord].push((p, q));
    }
}

impl SurfaceMap for ProductSurface {
    fn eval<S: Scalar>(&self, u: S, v: S) -> [S; 4] {
        let mut out = [S::zero(); 4];
        for (i, terms) in self.coords.iter().enumerate() {
            for (p, q) in terms {
                out[i] = out[i] + p.eval(u) * q.eval(v);
            }
        }
        out
    }

    fn domain(&self) -> Rect {
        self.domain.unwrap_or_else(Rect::unit_centered)
    }
}

/// First partials and the mixed partial of every coordinate at (u, v).
pub struct SurfaceJet {
    pub value: [f64; 4],
    pub du: [f64; 4],
    pub dv: [f64; 4],
    pub duv: [f64; 4],
}

pub fn surface_jet<M: SurfaceMap + ?Sized>(m: &M, u: f64, v: f64) -> SurfaceJet {
    let x = m.eval(mixed_seed_u(u), mixed_seed_v(v));
    let mut jet = SurfaceJet {
        value: [0.0; 4],
        du: [0.0; 4],
        dv: [0.0; 4],
        duv: [0.0; 4],
    };
    for i in 0..4 {
        jet.value[i] = x[i].re.re;
        jet.du[i] = x[i].re.eps;
        jet.dv[i] = x[i].eps.re;
        jet.duv[i] = x[i].eps.eps;
    }
    jet
}

/// Residuals of the translation-surface system for an arbitrary connection:
/// d^2 x^i/du dv + Gamma^i_jk x^j_u x^k_v, per coordinate.
pub fn surface_pde_residual<C: ConnectionField + ?Sized, M: SurfaceMap + ?Sized>(
    conn: &C,
    m: &M,
    u: f64,
    v: f64,
) -> Result<[f64; 4]> {
    if !m.domain().contains(u, v) {
        return Err(Error::DomainError { u, v });
    }
    if conn.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: conn.dim(),
        });
    }
    let jet = surface_jet(m, u, v);
    let gamma = conn.eval(&jet.value)?;
    let mut res = [0.0; 4];
    for i in 0..4 {
        let mut acc = jet.duv[i];
        for j in 0..4 {
            for k in 0..4 {
                acc += gamma.get(i, j, k) * jet.du[j] * jet.dv[k];
            }
        }
        res[i] = acc;
    }
    Ok(res)
}

/// The same residuals with the anti-Mach connection written out by hand:
/// x_uv - z_u t_v - t_u z_v,
/// y_uv - x_u t_v - t_u x_v,
/// z_uv,
/// t_uv + x_u z_v + z_u x_v - 2 t z_u z_v.
pub fn antimach_surface_residual<M: SurfaceMap + ?Sized>(
    m: &M,
    u: f64,
    v: f64,
) -> Result<[f64; 4]> {
    if !m.domain().contains(u, v) {
        return Err(Error::DomainError { u, v });
    }
    let jet = surface_jet(m, u, v);
    let t = jet.value[3];
    Ok([
        jet.duv[0] - jet.du[2] * jet.dv[3] - jet.du[3] * jet.dv[2],
        jet.duv[1] - jet.du[0] * jet.dv[3] - jet.du[3] * jet.dv[0],
        jet.duv[2],
        jet.duv[3] + jet.du[0] * jet.dv[2] + jet.du[2] * jet.dv[0] - 2.0 * t * jet.du[2] * jet.dv[2],
    ])
}

/// Grid resolution for scans.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub nu: usize,
    pub nv: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { nu: 50, nv: 50 }
    }
}

impl GridSpec {
    pub fn points(&self, domain: &Rect) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(self.nu * self.nv);
        for i in 0..self.nu {
            let u = if self.nu == 1 {
                domain.u0
            } else {
                domain.u0 + (domain.u1 - domain.u0) * i as f64 / (self.nu - 1) as f64
            };
            for j in 0..self.nv {
                let v = if self.nv == 1 {
                    domain.v0
                } else {
                    domain.v0 + (domain.v1 - domain.v0) * j as f64 / (self.nv - 1) as f64
                };
                pts.push((u, v));
            }
        }
        pts
    }
}

/// A coordinate counts as separable when its mixed partial stays below this
/// bound over the scan grid.
pub const SEPARABILITY_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct CoordSeparability {
    pub name: String,
    pub max_mixed_partial: f64,
    pub separable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparabilityReport {
    pub grid: GridSpec,
    pub coords: Vec<CoordSeparability>,
}

/// Scan max |d^2 coordinate / du dv| per coordinate; verdict "separable"
/// iff it stays within [`SEPARABILITY_TOLERANCE`].
pub fn separability_report<M: SurfaceMap + ?Sized>(
    m: &M,
    grid: GridSpec,
) -> Result<SeparabilityReport> {
    if grid.nu == 0 || grid.nv == 0 {
        return Err(Error::ConfigError("empty separability grid".into()));
    }
    let domain = m.domain();
    let mut max_mixed = [0.0f64; 4];
    for (u, v) in grid.points(&domain) {
        let jet = surface_jet(m, u, v);
        for i in 0..4 {
            max_mixed[i] = max_mixed[i].max(jet.duv[i].abs());
        }
    }
    let names = ["x", "y", "z", "t"];
    Ok(SeparabilityReport {
        grid,
        coords: (0..4)
            .map(|i| CoordSeparability {
                name: names[i].to_string(),
                max_mixed_partial: max_mixed[i],
                separable: max_mixed[i] <= SEPARABILITY_TOLERANCE,
            })
            .collect(),
    })
}

/// max |2 (C3 + f + g) f' g'| over the grid: the predicted magnitude of the
/// family's y mixed partial.
pub fn family_y_mixed_bound(surface: &FamilySurface, grid: GridSpec) -> f64 {
    let gen = &surface.gen;
    let mut max = 0.0f64;
    for (u, v) in grid.points(&gen.domain) {
        let (f, fp) = gen.f.jet(u);
        let (g, gp) = gen.g.jet(v);
        max = max.max((2.0 * (gen.c3 + f + g) * fp * gp).abs());
    }
    max
}

/// CSV surface sampling export: `u,v,x,y,z,t,res1,res2,res3,res4` with the
/// residuals taken against the anti-Mach connection.
pub fn surface_to_csv<M: SurfaceMap + ?Sized>(m: &M, grid: GridSpec) -> Result<String> {
    let conn = AntiMachConnection;
    let mut out = String::from("u,v,x,y,z,t,res1,res2,res3,res4\n");
    for (u, v) in grid.points(&m.domain()) {
        let coords = m.eval(u, v);
        let res = surface_pde_residual(&conn, m, u, v)?;
        out.push_str(&format!("{},{}", u, v));
        for c in coords {
            out.push_str(&format!(",{}", c));
        }
        for r in res {
            out.push_str(&format!(",{}", r));
        }
        out.push('\n');
    }
    Ok(out)
}
