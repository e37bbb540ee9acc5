//! Bernal-stacked bilayer graphene (t₄ = 0) mapped onto SU(2)⊗SU(2):
//! subsystem 1 is the layer, subsystem 2 the sublattice.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::eigenstate_concurrence_closed_form;
use crate::error::{Error, Result};
use crate::hamiltonian::{derive, CoefficientSet};
use crate::linalg::*;
use crate::solver::branch_energies;
use crate::thermo::{flip_commutator, omega_pair, thermal_concurrence_ratio};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrapheneParams {
    pub t: f64,
    pub t3: f64,
    pub tperp: f64,
    pub m: f64,
    pub lambda_bias: f64,
    pub lattice: f64,
}

impl Default for GrapheneParams {
    fn default() -> Self {
        GrapheneParams { t: 1.0, t3: 1.0, tperp: 1.0, m: 0.0, lambda_bias: 1.0, lattice: 1.0 }
    }
}

impl GrapheneParams {
    pub fn validate(&self) -> Result<()> {
        let all = [self.t, self.t3, self.tperp, self.m, self.lambda_bias, self.lattice];
        if !all.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidArgument("graphene parameters must be finite".into()));
        }
        if self.lattice <= 0.0 {
            return Err(Error::InvalidArgument(format!("lattice constant {} must be positive", self.lattice)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KPoint {
    pub kx: f64,
    pub ky: f64,
}

impl KPoint {
    pub fn new(kx: f64, ky: f64) -> Self {
        KPoint { kx, ky }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mask {
    None,
    Hexagonal,
}

impl std::str::FromStr for Mask {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Mask::None),
            "hex" => Ok(Mask::Hexagonal),
            _ => Err(Error::InvalidArgument(format!("unknown mask {s:?} (none|hex)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kx_range: (f64, f64),
    pub ky_range: (f64, f64),
    pub samples: usize,
    pub mask: Mask,
}

impl GridSpec {
    /// [−4π/(3λ), 4π/(3λ)]² with 201 samples per axis.
    pub fn default_for(lattice: f64) -> Self {
        let k = 4.0 * std::f64::consts::PI / (3.0 * lattice);
        GridSpec { kx_range: (-k, k), ky_range: (-k, k), samples: 201, mask: Mask::None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::InvalidArgument(format!("grid needs at least 2 samples per axis, got {}", self.samples)));
        }
        let ok = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.0 < r.1;
        if !ok(self.kx_range) || !ok(self.ky_range) {
            return Err(Error::InvalidArgument("grid ranges must be finite and ordered".into()));
        }
        Ok(())
    }

    /// Row-major: ky is the row index, kx varies fastest. Masked points are
    /// dropped.
    pub fn points(&self, lattice: f64) -> Vec<KPoint> {
        let step = |r: (f64, f64), i: usize| r.0 + (r.1 - r.0) * i as f64 / (self.samples - 1) as f64;
        let mut out = Vec::with_capacity(self.samples * self.samples);
        for j in 0..self.samples {
            for i in 0..self.samples {
                let k = KPoint::new(step(self.kx_range, i), step(self.ky_range, j));
                if self.mask == Mask::None || in_first_zone(k, lattice) {
                    out.push(k);
                }
            }
        }
        out
    }
}

/// Γ(k) = 2 e^{−ik_xλ/2} cos(√3 k_yλ/2) + e^{−ik_xλ}.
pub fn structure_factor(p: &GrapheneParams, k: KPoint) -> C64 {
    let l = p.lattice;
    let c = (3f64.sqrt() * k.ky * l / 2.0).cos();
    C64::from_polar(2.0 * c, -k.kx * l / 2.0) + C64::from_polar(1.0, -k.kx * l)
}

fn structure_factor_gradient(p: &GrapheneParams, k: KPoint) -> (C64, C64) {
    let l = p.lattice;
    let arg = 3f64.sqrt() * k.ky * l / 2.0;
    let half = C64::from_polar(1.0, -k.kx * l / 2.0);
    let full = C64::from_polar(1.0, -k.kx * l);
    let dx = (half * (2.0 * arg.cos()) * (-l / 2.0) + full * (-l)) * I;
    let dy = half * (-3f64.sqrt() * l * arg.sin());
    (dx, dy)
}

/// Generators of the lattice of translations leaving Γ invariant:
/// g₁ = (2π/λ)(1, 1/√3), g₂ = (2π/λ)(1, −1/√3).
pub fn reciprocal_vectors(lattice: f64) -> [[f64; 2]; 2] {
    let s = 2.0 * std::f64::consts::PI / lattice;
    [[s, s / 3f64.sqrt()], [s, -s / 3f64.sqrt()]]
}

/// Wigner–Seitz cell of the period lattice of Γ: closer to the origin than
/// to any of the six nearest lattice points ±g₁, ±g₂, ±(g₁ − g₂).
pub fn in_first_zone(k: KPoint, lattice: f64) -> bool {
    let [g1, g2] = reciprocal_vectors(lattice);
    let g3 = [g1[0] - g2[0], g1[1] - g2[1]];
    [g1, g2, g3].iter().all(|g| {
        let proj = k.kx * g[0] + k.ky * g[1];
        proj.abs() <= 0.5 * (g[0] * g[0] + g[1] * g[1]) * (1.0 + 1e-12)
    })
}

/// α = (0, 0, Λ/2), β = (−t ReΓ, t ImΓ, m),
/// ω₁ = ((t⊥ − t₃ReΓ)/2, −t₃ImΓ/2, 0), ω₂ = (−t₃ImΓ/2, (t⊥ + t₃ReΓ)/2, 0), ω₃ = 0.
pub fn map_to_su2su2(p: &GrapheneParams, k: KPoint) -> CoefficientSet {
    let g = structure_factor(p, k);
    CoefficientSet {
        upsilon: 0.0,
        alpha: [0.0, 0.0, p.lambda_bias / 2.0],
        beta: [-p.t * g.re, p.t * g.im, p.m],
        omega: [
            [(p.tperp - p.t3 * g.re) / 2.0, -p.t3 * g.im / 2.0, 0.0],
            [-p.t3 * g.im / 2.0, (p.tperp + p.t3 * g.re) / 2.0, 0.0],
            [0.0; 3],
        ],
    }
}

/// Tight-binding matrix in the basis {A1, B1, A2, B2} with mass and bias.
pub fn build_ab_hamiltonian(p: &GrapheneParams, k: KPoint) -> Mat4 {
    let g = structure_factor(p, k);
    let z = ZERO;
    let tp = C64::new(p.tperp, 0.0);
    let mut h = CMat([
        [z, -g * p.t, z, -g.conj() * p.t3],
        [-g.conj() * p.t, z, tp, z],
        [z, tp, z, -g * p.t],
        [-g * p.t3, z, -g.conj() * p.t, z],
    ]);
    let (m, b) = (p.m, p.lambda_bias / 2.0);
    h += Mat4::diag_real([m + b, -m + b, m - b, -m - b]);
    h
}

/// Zero of Γ by Newton iteration on (ReΓ, ImΓ), started near the zone corner.
pub fn dirac_point(p: &GrapheneParams) -> KPoint {
    dirac_point_from(p, KPoint::new(0.1 / p.lattice, 2.3 / p.lattice))
}

pub fn dirac_point_from(p: &GrapheneParams, start: KPoint) -> KPoint {
    let mut k = start;
    for _ in 0..100 {
        let g = structure_factor(p, k);
        if g.norm() <= 1e-15 {
            break;
        }
        let (dx, dy) = structure_factor_gradient(p, k);
        let det = dx.re * dy.im - dy.re * dx.im;
        if det == 0.0 {
            break;
        }
        let sx = (dy.im * g.re - dy.re * g.im) / det;
        let sy = (-dx.im * g.re + dx.re * g.im) / det;
        k = KPoint::new(k.kx - sx, k.ky - sy);
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BandPoint {
    pub kx: f64,
    pub ky: f64,
    pub e1: f64,
    pub e2: f64,
}

pub fn band_point(p: &GrapheneParams, k: KPoint) -> BandPoint {
    let d = derive(&map_to_su2su2(p, k));
    let (e1, e2) = branch_energies(&d);
    BandPoint { kx: k.kx, ky: k.ky, e1, e2 }
}

pub fn band_grid(p: &GrapheneParams, g: &GridSpec) -> Result<Vec<BandPoint>> {
    p.validate()?;
    g.validate()?;
    Ok(g.points(p.lattice).par_iter().map(|&k| band_point(p, k)).collect())
}

/// Concurrence of ρ_mn; points where the closed form has a vanishing
/// denominator or a negative radicand are reported as 0 with flag 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConcurrencePoint {
    pub kx: f64,
    pub ky: f64,
    pub c: f64,
    pub flag: u8,
}

pub fn concurrence_point(p: &GrapheneParams, k: KPoint, m: u8, n: u8) -> Result<ConcurrencePoint> {
    let set = map_to_su2su2(p, k);
    let (c, flag) = match eigenstate_concurrence_closed_form(&set, m, n) {
        Ok(c) => (c, 0),
        Err(Error::Degenerate(_)) | Err(Error::NegativeRadicand(_)) => (0.0, 1),
        Err(e) => return Err(e),
    };
    Ok(ConcurrencePoint { kx: k.kx, ky: k.ky, c, flag })
}

pub fn concurrence_grid(p: &GrapheneParams, g: &GridSpec, m: u8, n: u8) -> Result<Vec<ConcurrencePoint>> {
    p.validate()?;
    g.validate()?;
    if !(1..=2).contains(&m) || !(1..=2).contains(&n) {
        return Err(Error::InvalidArgument(format!("branch labels ({m},{n}) must be 1 or 2")));
    }
    g.points(p.lattice).par_iter().map(|&k| concurrence_point(p, k, m, n)).collect()
}

pub const THERMAL_FLAG_NONCOMMUTING: u8 = 1;
pub const THERMAL_FLAG_GENERAL_DIFFERS: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThermalPoint {
    pub temperature: f64,
    pub c: f64,
    pub flag: u8,
}

/// max{sinh(t⊥/T) − cosh(t₃|Γ|/T), 0} / [cosh(E₂/T) + cosh(E₁/T)].
/// Flag bit 1: the set does not commute with its field-flipped partner.
/// Flag bit 2: t⊥ < t₃|Γ| and the |det ω_B| form gives a different value.
pub fn thermal_concurrence_curve(p: &GrapheneParams, k: KPoint, temps: &[f64]) -> Result<Vec<ThermalPoint>> {
    p.validate()?;
    if let Some(bad) = temps.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(Error::InvalidArgument(format!("temperature {bad} must be positive")));
    }
    let set = map_to_su2su2(p, k);
    let (e1, e2) = branch_energies(&derive(&set));
    let x = p.tperp;
    let y = p.t3 * structure_factor(p, k).norm();
    let (gx, gy) = omega_pair(&set.omega);
    let h = set.hamiltonian();
    let hn = h.max_norm();
    let base = if flip_commutator(&set) > 1e-12 * (1.0 + hn * hn) { THERMAL_FLAG_NONCOMMUTING } else { 0 };
    Ok(temps
        .par_iter()
        .map(|&t| {
            let c = thermal_concurrence_ratio(x, y, e1, e2, t);
            let general = thermal_concurrence_ratio(gx, gy, e1, e2, t);
            let mut flag = base;
            if x < y && (general - c).abs() > 1e-12 {
                flag |= THERMAL_FLAG_GENERAL_DIFFERS;
            }
            ThermalPoint { temperature: t, c, flag }
        })
        .collect())
}

/// m² + Λ²/4 + ½(2t² + t⊥² + t₃²|Γ|²), as printed.
pub fn printed_graphene_v(p: &GrapheneParams, k: KPoint) -> f64 {
    let g2 = structure_factor(p, k).norm_sqr();
    p.m * p.m + p.lambda_bias.powi(2) / 4.0 + 0.5 * (2.0 * p.t * p.t + p.tperp.powi(2) + p.t3 * p.t3 * g2)
}

/// m² + Λ²/4 + t²|Γ|² + (t⊥² + t₃²|Γ|²)/2.
pub fn graphene_v(p: &GrapheneParams, k: KPoint) -> f64 {
    let g2 = structure_factor(p, k).norm_sqr();
    p.m * p.m + p.lambda_bias.powi(2) / 4.0 + p.t * p.t * g2 + 0.5 * (p.tperp.powi(2) + p.t3 * p.t3 * g2)
}

/// ¼(2mΛ − t⊥² + t₃²|Γ|²)² + Λ²t²(|Γ|² + 2ReΓ ImΓ), as printed.
pub fn printed_graphene_phi(p: &GrapheneParams, k: KPoint) -> f64 {
    let g = structure_factor(p, k);
    let l = p.lambda_bias;
    0.25 * (2.0 * p.m * l - p.tperp.powi(2) + p.t3 * p.t3 * g.norm_sqr()).powi(2)
        + l * l * p.t * p.t * (g.norm_sqr() + 2.0 * g.re * g.im)
}

/// ¼(2mΛ − t⊥² + t₃²|Γ|²)² + Λ²t²|Γ|².
pub fn graphene_phi(p: &GrapheneParams, k: KPoint) -> f64 {
    let g = structure_factor(p, k);
    let l = p.lambda_bias;
    0.25 * (2.0 * p.m * l - p.tperp.powi(2) + p.t3 * p.t3 * g.norm_sqr()).powi(2) + l * l * p.t * p.t * g.norm_sqr()
}

/// |ωᵀβ|² = ¼t²[(t⊥² + t₃²|Γ|²)|Γ|² − 2t⊥t₃ Re Γ³].
pub fn printed_beta_omega_omega_beta(p: &GrapheneParams, k: KPoint) -> f64 {
    let g = structure_factor(p, k);
    0.25 * p.t * p.t * ((p.tperp.powi(2) + p.t3 * p.t3 * g.norm_sqr()) * g.norm_sqr() - 2.0 * p.tperp * p.t3 * (g * g * g).re)
}
