//! Canonical ensembles at k_B = 1: partition functions, purity, thermal
//! states and thermal concurrence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::*;
use crate::linalg::*;
use crate::oracle::{log_partition_oracle, log_sum_exp, thermal_state_oracle, wootters_concurrence};
use crate::pauli::fano_compose;
use crate::solver::{branch_energies, factor_dyadic, solve, Eigensystem, Su2Factor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThermalBranch {
    Full,
    PositiveOnly,
}

impl std::str::FromStr for ThermalBranch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ThermalBranch::Full),
            "positive" => Ok(ThermalBranch::PositiveOnly),
            _ => Err(Error::InvalidArgument(format!("unknown branch {s:?} (full|positive)"))),
        }
    }
}

/// How a report value was obtained.
pub const FLAG_CLOSED: u8 = 0;
pub const FLAG_UNVERIFIED: u8 = 1;
pub const FLAG_ORACLE: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThermalReport {
    pub temperature: f64,
    pub z_value: f64,
    pub purity: f64,
    pub concurrence: f64,
    pub branch: ThermalBranch,
    pub flag: u8,
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("temperature {t} must be positive")))
    }
}

fn separable_energies(f1: &Su2Factor, f2: &Su2Factor) -> [f64; 4] {
    let (a, b) = (f1.norm(), f2.norm());
    [(f1.a0 - a) * (f2.a0 - b), (f1.a0 - a) * (f2.a0 + b), (f1.a0 + a) * (f2.a0 - b), (f1.a0 + a) * (f2.a0 + b)]
}

fn entangled_energies(c: &CoefficientSet) -> Result<[f64; 4]> {
    c.validate()?;
    if constraint_branch(c, DEFAULT_TOL).is_none() {
        return Err(Error::Precondition("set satisfies neither α·ω = 0 nor ω·β = 0".into()));
    }
    let d = derive(c);
    let n = c.scale();
    if n > 0.0 && d.s_cubic.abs() > DEFAULT_TOL * n.powi(3) {
        return Err(Error::Precondition(format!("α·ω·β = {:.3e} ≠ 0", d.s_cubic)));
    }
    let (e1, e2) = branch_energies(&d);
    Ok([c.upsilon - e2, c.upsilon - e1, c.upsilon + e1, c.upsilon + e2])
}

fn log_z(energies: &[f64], t: f64) -> f64 {
    log_sum_exp(&energies.iter().map(|e| -e / t).collect::<Vec<_>>())
}

/// Two highest levels.
fn top_two(e: &[f64; 4]) -> [f64; 2] {
    let mut s = *e;
    s.sort_by(|a, b| b.total_cmp(a));
    [s[0], s[1]]
}

pub fn log_partition_separable(f1: &Su2Factor, f2: &Su2Factor, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(log_z(&separable_energies(f1, f2), t))
}

pub fn partition_separable(f1: &Su2Factor, f2: &Su2Factor, t: f64) -> Result<f64> {
    Ok(log_partition_separable(f1, f2, t)?.exp())
}

/// 4 e^{−a₀b₀/t} [cosh(m₁/t)cosh(m₂/t)cosh(m₃/t) − sinh(m₁/t)sinh(m₂/t)sinh(m₃/t)]
/// with m₁ = ab, m₂ = a₀b, m₃ = ab₀. Overflows for small t.
pub fn partition_separable_hyperbolic(f1: &Su2Factor, f2: &Su2Factor, t: f64) -> Result<f64> {
    check_t(t)?;
    let (a, b) = (f1.norm(), f2.norm());
    let m = [a * b / t, f1.a0 * b / t, a * f2.a0 / t];
    let ch: f64 = m.iter().map(|x| x.cosh()).product();
    let sh: f64 = m.iter().map(|x| x.sinh()).product();
    Ok(4.0 * (-f1.a0 * f2.a0 / t).exp() * (ch - sh))
}

pub fn log_partition_entangled(c: &CoefficientSet, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(log_z(&entangled_energies(c)?, t))
}

pub fn partition_entangled(c: &CoefficientSet, t: f64) -> Result<f64> {
    Ok(log_partition_entangled(c, t)?.exp())
}

/// 2 e^{−υ/t} [cosh(E₂/t) + cosh(E₁/t)].
pub fn partition_entangled_hyperbolic(c: &CoefficientSet, t: f64) -> Result<f64> {
    check_t(t)?;
    let e = entangled_energies(c)?;
    let (e1, e2) = (e[2] - c.upsilon, e[3] - c.upsilon);
    Ok(2.0 * (-c.upsilon / t).exp() * ((e2 / t).cosh() + (e1 / t).cosh()))
}

/// e^{−υ/t} [e^{−E₁/t} + e^{−E₂/t}]: the two m = 2 levels only.
pub fn log_partition_entangled_positive(c: &CoefficientSet, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(log_z(&top_two(&entangled_energies(c)?), t))
}

pub fn log_partition_separable_positive(f1: &Su2Factor, f2: &Su2Factor, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(log_z(&top_two(&separable_energies(f1, f2)), t))
}

/// 𝒵(T/2)/𝒵(T)² from a log-partition function.
pub fn purity_from_log_z(lz: impl Fn(f64) -> Result<f64>, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok((lz(t / 2.0)? - 2.0 * lz(t)?).exp())
}

/// (c₁² + c₂² − 1)/(c₁ + c₂)² with c_n = cosh(E_n/t).
pub fn purity_entangled_hyperbolic(c: &CoefficientSet, t: f64) -> Result<f64> {
    check_t(t)?;
    let e = entangled_energies(c)?;
    let (c1, c2) = (((e[2] - c.upsilon) / t).cosh(), ((e[3] - c.upsilon) / t).cosh());
    Ok((c1 * c1 + c2 * c2 - 1.0) / ((c1 + c2) * (c1 + c2)))
}

pub fn purity_separable_hyperbolic(f1: &Su2Factor, f2: &Su2Factor, t: f64) -> Result<f64> {
    let z2 = partition_separable_hyperbolic(f1, f2, t / 2.0)?;
    let z = partition_separable_hyperbolic(f1, f2, t)?;
    Ok(z2 / (z * z))
}

/// Closed-form spectrum route where one exists, else `None`.
fn closed_spectrum(c: &CoefficientSet) -> Option<[f64; 4]> {
    match classify(c, DEFAULT_TOL).case {
        Case::SeparableDyadic => factor_dyadic(c).ok().map(|(f1, f2)| separable_energies(&f1, &f2)),
        Case::EntangledConstrained(_) => entangled_energies(c).ok(),
        _ => None,
    }
}

/// ln 𝒵 of any set: closed form when available, otherwise the oracle.
/// The flag is `FLAG_CLOSED` or `FLAG_ORACLE`.
pub fn log_partition(c: &CoefficientSet, t: f64, branch: ThermalBranch) -> Result<(f64, u8)> {
    check_t(t)?;
    c.validate()?;
    let (energies, flag) = match closed_spectrum(c) {
        Some(e) => (e, FLAG_CLOSED),
        None => (crate::oracle::eig_hermitian(&fano_compose(c))?.values, FLAG_ORACLE),
    };
    Ok(match branch {
        ThermalBranch::Full => (log_z(&energies, t), flag),
        ThermalBranch::PositiveOnly => (log_z(&top_two(&energies), t), flag),
    })
}

pub fn purity(c: &CoefficientSet, t: f64, branch: ThermalBranch) -> Result<f64> {
    purity_from_log_z(|s| log_partition(c, s, branch).map(|x| x.0), t)
}

/// Oracle route exp(−H/t)/𝒵.
pub fn thermal_state(c: &CoefficientSet, t: f64) -> Result<Mat4> {
    c.validate()?;
    thermal_state_oracle(&fano_compose(c), t)
}

/// Σ ρ_mn e^{−ε_mn/t}/𝒵 from an eigensystem. With `PositiveOnly`, the two
/// highest levels only.
pub fn thermal_state_from_eigensystem(es: &Eigensystem, t: f64, branch: ThermalBranch) -> Result<Mat4> {
    check_t(t)?;
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_by(|&i, &j| es.eigenvalues[j].value.total_cmp(&es.eigenvalues[i].value));
    let keep: &[usize] = match branch {
        ThermalBranch::Full => &idx,
        ThermalBranch::PositiveOnly => &idx[..2],
    };
    let e0 = keep.iter().map(|&k| es.eigenvalues[k].value).fold(f64::INFINITY, f64::min);
    let mut rho = Mat4::zero();
    let mut z = 0.0;
    for &k in keep {
        let w = (-(es.eigenvalues[k].value - e0) / t).exp();
        rho += es.states[k].scale(w);
        z += w;
    }
    Ok(rho.scale(1.0 / z))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThermalConcurrence {
    pub closed_form: f64,
    pub wootters: f64,
    pub deviation: f64,
    pub commutator: f64,
    /// [H(α,β,ω), H(−α,−β,ω)] vanishes, so the closed form is exact.
    pub verified: bool,
}

/// Tr ωωᵀ ± 2|det ω_B| written frame-free; returns (x, y) with
/// x = σ₁ + σ₂ and y = |σ₁ − σ₂| for the two non-zero singular values.
pub fn omega_pair(omega: &Mat3) -> (f64, f64) {
    let n2 = frob3_sq(omega);
    let d = frob3(&cofactor3(omega));
    ((n2 + 2.0 * d).max(0.0).sqrt(), (n2 - 2.0 * d).max(0.0).sqrt())
}

/// max{sinh(x/t) − cosh(y/t), 0} / [cosh(E₂/t) + cosh(E₁/t)], with the
/// largest exponent factored out.
pub fn thermal_concurrence_ratio(x: f64, y: f64, e1: f64, e2: f64, t: f64) -> f64 {
    let top = [x, y, e1, e2].iter().fold(0.0f64, |m, v| m.max(v.abs())) / t;
    let ex = |v: f64| (v / t - top).exp();
    let num = ex(x) - ex(-x) - ex(y) - ex(-y);
    if num <= 0.0 {
        return 0.0;
    }
    let den = ex(e1) + ex(-e1) + ex(e2) + ex(-e2);
    (num / den).min(1.0)
}

/// ‖[H(α,β,ω), H(−α,−β,ω)]‖_max.
pub fn flip_commutator(c: &CoefficientSet) -> f64 {
    let flipped = CoefficientSet { alpha: scale3(&c.alpha, -1.0), beta: scale3(&c.beta, -1.0), ..*c };
    fano_compose(c).commutator(&fano_compose(&flipped)).max_norm()
}

pub fn thermal_concurrence(c: &CoefficientSet, t: f64) -> Result<ThermalConcurrence> {
    check_t(t)?;
    let e = entangled_energies(c)?;
    let (x, y) = omega_pair(&c.omega);
    let closed = thermal_concurrence_ratio(x, y, e[2] - c.upsilon, e[3] - c.upsilon, t);
    let h = fano_compose(c);
    let wootters = wootters_concurrence(&thermal_state_oracle(&h, t)?)?;
    let commutator = flip_commutator(c);
    let hn = h.max_norm();
    Ok(ThermalConcurrence {
        closed_form: closed,
        wootters,
        deviation: (closed - wootters).abs(),
        commutator,
        verified: commutator <= 1e-12 * (1.0 + hn * hn),
    })
}

/// Full report at one temperature. Constrained sets use the closed-form
/// concurrence (flag 0 when verified, 1 otherwise); every other case and
/// the positive branch use Wootters on the thermal state (flag 2).
pub fn thermal_report(c: &CoefficientSet, t: f64, branch: ThermalBranch) -> Result<ThermalReport> {
    let (lz, zflag) = log_partition(c, t, branch)?;
    let p = purity(c, t, branch)?;
    let (concurrence, flag) = match (branch, classify(c, DEFAULT_TOL).case) {
        (ThermalBranch::Full, Case::EntangledConstrained(_)) => {
            let tc = thermal_concurrence(c, t)?;
            (tc.closed_form, if tc.verified { FLAG_CLOSED } else { FLAG_UNVERIFIED })
        }
        (ThermalBranch::Full, Case::SeparableDyadic) if zflag == FLAG_CLOSED => (0.0, FLAG_CLOSED),
        (ThermalBranch::Full, _) => (wootters_concurrence(&thermal_state(c, t)?)?, FLAG_ORACLE),
        (ThermalBranch::PositiveOnly, _) => {
            let es = solve(c)?;
            let rho = thermal_state_from_eigensystem(&es, t, branch)?;
            (wootters_concurrence(&rho)?, FLAG_ORACLE)
        }
    };
    Ok(ThermalReport { temperature: t, z_value: lz.exp(), purity: p, concurrence, branch, flag })
}

/// Temperature where sinh(x/T) = cosh(y/T), if x > y. Bisection on
/// 1 − e^{−2x/T} − e^{(y−x)/T} − e^{−(x+y)/T}, which is positive below T*.
pub fn death_temperature(x: f64, y: f64) -> Option<f64> {
    if !(x > y.abs()) {
        return None;
    }
    let y = y.abs();
    let f = |t: f64| 1.0 - (-2.0 * x / t).exp() - ((y - x) / t).exp() - (-(x + y) / t).exp();
    let (mut lo, mut hi) = (x * 1e-3, x);
    while f(lo) <= 0.0 {
        lo *= 0.5;
    }
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Oracle ln 𝒵 restricted to the two highest levels.
pub fn log_partition_positive_oracle(h: &Mat4, t: f64) -> Result<f64> {
    check_t(t)?;
    let v = crate::oracle::eig_hermitian(h)?.values;
    Ok(log_z(&v[..2], t))
}

pub fn log_partition_full_oracle(c: &CoefficientSet, t: f64) -> Result<f64> {
    check_t(t)?;
    log_partition_oracle(&fano_compose(c), t)
}
