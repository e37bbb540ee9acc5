//! Bloch vectors and concurrence of pure eigenstates, in closed form and
//! from the state itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::*;
use crate::linalg::*;
use crate::pauli::{bloch2, partial_trace, Subsystem};
use crate::solver::{ansatz_degenerate, branch_energies};

/// Radicands down to this value are treated as round-off and clamped.
pub const RADICAND_TOL: f64 = 1e-10;
/// Purity gate for `pure_concurrence`.
pub const PURITY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlochPair {
    pub a_bloch: Vec3,
    pub b_bloch: Vec3,
}

/// A_i = Tr[ρ σ_i⊗I], B_j = Tr[ρ I⊗σ_j].
pub fn bloch_vectors(rho: &Mat4) -> BlochPair {
    BlochPair {
        a_bloch: bloch2(&partial_trace(rho, Subsystem::First)),
        b_bloch: bloch2(&partial_trace(rho, Subsystem::Second)),
    }
}

fn sign(k: u8) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_labels(m: u8, n: u8) -> Result<()> {
    if (1..=2).contains(&m) && (1..=2).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("labels (m,n) = ({m},{n}) must be 1 or 2")))
    }
}

fn check_constrained(c: &CoefficientSet) -> Result<DerivedCoefficients> {
    c.validate()?;
    if constraint_branch(c, DEFAULT_TOL).is_none() {
        return Err(Error::Precondition("set satisfies neither α·ω = 0 nor ω·β = 0".into()));
    }
    let d = derive(c);
    let n = c.scale();
    if n > 0.0 && d.s_cubic.abs() > DEFAULT_TOL * n.powi(3) {
        return Err(Error::Precondition(format!("α·ω·β = {:.3e} ≠ 0", d.s_cubic)));
    }
    if ansatz_degenerate(&d) {
        return Err(Error::Degenerate("closed-form denominators vanish".into()));
    }
    Ok(d)
}

/// Bloch vectors of ρ_mn from the coefficients:
/// A = (−1)ⁿ𝒜/√Θ + (−1)ᵐα/E_n + (−1)^{m+n}(𝒲β + ωℬ)/(√Θ E_n), B mirrored.
pub fn eigenstate_bloch_closed_form(c: &CoefficientSet, m: u8, n: u8) -> Result<BlochPair> {
    check_labels(m, n)?;
    let d = check_constrained(c)?;
    let st = d.theta_phi.sqrt();
    let (e1, e2) = branch_energies(&d);
    let en = if n == 1 { e1 } else { e2 };
    let (sm, sn) = (sign(m), sign(n));
    let mixed_a = add3(&mat3_vec(&d.w_mat, &c.beta), &mat3_vec(&c.omega, &d.b_vec));
    let mixed_b = add3(&vec_mat3(&c.alpha, &d.w_mat), &vec_mat3(&d.a_vec, &c.omega));
    let build = |field: &Vec3, own: &Vec3, mixed: &Vec3| -> Vec3 {
        std::array::from_fn(|i| sn * field[i] / st + sm * own[i] / en + sm * sn * mixed[i] / (st * en))
    };
    Ok(BlochPair {
        a_bloch: build(&d.a_vec, &c.alpha, &mixed_a),
        b_bloch: build(&d.b_vec, &c.beta, &mixed_b),
    })
}

fn clamp_radicand(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -RADICAND_TOL {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand(x))
    }
}

/// 𝒞 = √(1 − A²) for a pure two-qubit state.
pub fn pure_concurrence(rho: &Mat4) -> Result<f64> {
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > PURITY_TOL {
        return Err(Error::InvalidDensity(format!("trace {tr}")));
    }
    let purity = rho.trace_product(rho).re;
    if (purity - 1.0).abs() > PURITY_TOL {
        return Err(Error::InvalidDensity(format!("not pure (Tr ρ² = {purity})")));
    }
    let a = bloch_vectors(rho).a_bloch;
    Ok(clamp_radicand(1.0 - dot(&a, &a))?.sqrt().min(1.0))
}

/// Closed-form concurrence of ρ_mn, evaluated in the canonical frame where
/// α = a e₃ and ω = ω_B ⊕ 0:
/// 𝒞² = Φ/Θ − [a + 2(−1)ⁿ(aβ² − β₃ det ω_B)/√Θ]² / (𝒱 + (−1)ⁿ√Θ).
/// BetaNull sets are handled by exchanging the subsystems.
pub fn eigenstate_concurrence_closed_form(c: &CoefficientSet, m: u8, n: u8) -> Result<f64> {
    check_labels(m, n)?;
    check_constrained(c)?;
    let canon = canonical_alpha_null(c)?;
    let d = derive(&canon);
    let det_b = d.det_omega_b.ok_or_else(|| Error::Precondition("ω_B undefined after reduction".into()))?;
    let st = d.theta_phi.sqrt();
    let sn = sign(n);
    let a = canon.alpha[2];
    let b = &canon.beta;
    let e2 = d.v_quad + sn * st;
    let bracket = a + 2.0 * sn * (a * dot(b, b) - b[2] * det_b) / st;
    let rad = d.phi / d.theta_phi - bracket * bracket / e2;
    Ok(clamp_radicand(rad)?.sqrt().min(1.0))
}

/// The set itself when already canonical for α·ω = 0, else its reduction
/// (with subsystems exchanged for the ω·β = 0 branch).
pub fn canonical_alpha_null(c: &CoefficientSet) -> Result<CoefficientSet> {
    let r = Residuals::of(c);
    if r.alpha_perp <= DEFAULT_TOL && r.omega_row3 <= DEFAULT_TOL && r.omega_col3 <= DEFAULT_TOL {
        return Ok(*c);
    }
    let red = frame_reduce(c, DEFAULT_TOL)?;
    let r = Residuals::of(&red.set);
    if r.alpha_perp <= DEFAULT_TOL && r.omega_row3 <= DEFAULT_TOL {
        Ok(red.set)
    } else {
        Ok(red.set.swapped())
    }
}

/// The concurrence expression with the δ selectors as printed. It divides
/// by α²β², so it is undefined (`None`) when either local field vanishes,
/// and it uses the canonical frame directly.
pub fn eigenstate_concurrence_printed(c: &CoefficientSet, n: u8) -> Option<f64> {
    let d = derive(c);
    let det_b = d.det_omega_b?;
    let (a2, b2) = (dot(&c.alpha, &c.alpha), dot(&c.beta, &c.beta));
    if a2 == 0.0 || b2 == 0.0 {
        return None;
    }
    let r = Residuals::of(c);
    let d_ao = if r.alpha_omega <= DEFAULT_TOL { 1.0 } else { 0.0 };
    let d_ob = if r.omega_beta <= DEFAULT_TOL { 1.0 } else { 0.0 };
    let st = d.theta_phi.sqrt();
    let sn = sign(n);
    let inner = 1.0 + 2.0 * sn * (b2 * d_ao + a2 * d_ob) / (a2 * b2 * st) * (a2 * b2 - dot(&c.alpha, &c.beta) * det_b);
    let rad = d.phi / d.theta_phi - (a2 * d_ao + b2 * d_ob) / (d.v_quad + sn * st) * inner * inner;
    Some(rad.max(0.0).sqrt())
}
