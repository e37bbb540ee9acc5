//! Coefficient sets, derived invariants, case classification and the
//! canonical-frame reduction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::*;
use crate::pauli::fano_compose;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Real coefficients of H = υ I⊗I + α·σ⊗I + I⊗β·σ + Σ ω_ij σ_i⊗σ_j.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub upsilon: f64,
    pub alpha: Vec3,
    pub beta: Vec3,
    pub omega: Mat3,
}

impl Default for CoefficientSet {
    fn default() -> Self {
        Self::zero()
    }
}

impl CoefficientSet {
    pub fn zero() -> Self {
        CoefficientSet { upsilon: 0.0, alpha: [0.0; 3], beta: [0.0; 3], omega: mat3_zero() }
    }

    pub fn scaled(&self, s: f64) -> Self {
        CoefficientSet {
            upsilon: self.upsilon * s,
            alpha: scale3(&self.alpha, s),
            beta: scale3(&self.beta, s),
            omega: mat3_scale(&self.omega, s),
        }
    }

    /// Norm of the traceless part, √(α² + β² + ‖ω‖²).
    pub fn scale(&self) -> f64 {
        (dot(&self.alpha, &self.alpha) + dot(&self.beta, &self.beta) + frob3_sq(&self.omega)).sqrt()
    }

    /// Subsystems exchanged: (υ, β, α, ωᵀ).
    pub fn swapped(&self) -> Self {
        CoefficientSet { upsilon: self.upsilon, alpha: self.beta, beta: self.alpha, omega: transpose3(&self.omega) }
    }

    /// Local rotations: (υ, R1 α, R2 β, R1 ω R2ᵀ).
    pub fn rotated(&self, r1: &Mat3, r2: &Mat3) -> Self {
        CoefficientSet {
            upsilon: self.upsilon,
            alpha: mat3_vec(r1, &self.alpha),
            beta: mat3_vec(r2, &self.beta),
            omega: mat3_mul(&mat3_mul(r1, &self.omega), &transpose3(r2)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.upsilon.is_finite()
            && self.alpha.iter().chain(&self.beta).chain(self.omega.iter().flatten()).all(|x| x.is_finite())
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument("coefficient set has non-finite entries".into()))
        }
    }

    pub fn hamiltonian(&self) -> Mat4 {
        fano_compose(self)
    }
}

/// H̃ = H − υ I.
pub fn traceless(c: &CoefficientSet) -> Mat4 {
    fano_compose(&CoefficientSet { upsilon: 0.0, ..*c })
}

/// 𝒪 = H̃² − 𝒱 I.
pub fn o_operator(c: &CoefficientSet) -> Mat4 {
    let h = traceless(c);
    let v = derive(c).v_quad;
    h * h - Mat4::identity().scale(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivedCoefficients {
    /// 𝒱 = α² + β² + Tr ωωᵀ
    pub v_quad: f64,
    /// 𝒜 = 2ωβ
    pub a_vec: Vec3,
    /// ℬ = 2ωᵀα
    pub b_vec: Vec3,
    /// 𝒲 = 2αβᵀ − 2 cof(ω)
    pub w_mat: Mat3,
    /// Θ = ¼Tr 𝒪² = 𝒜² + ℬ² + Φ
    pub theta: f64,
    /// Φ = Tr 𝒲𝒲ᵀ
    pub phi: f64,
    pub theta_phi: f64,
    /// s = α·ω·β
    pub s_cubic: f64,
    pub det_omega: f64,
    /// Upper-left 2x2 determinant, defined when ω's third row and column vanish.
    pub det_omega_b: Option<f64>,
}

pub fn derive(c: &CoefficientSet) -> DerivedCoefficients {
    derive_with_tol(c, DEFAULT_TOL)
}

pub fn derive_with_tol(c: &CoefficientSet, tol: f64) -> DerivedCoefficients {
    let (a, b, w) = (&c.alpha, &c.beta, &c.omega);
    let v_quad = dot(a, a) + dot(b, b) + frob3_sq(w);
    let a_vec = scale3(&mat3_vec(w, b), 2.0);
    let b_vec = scale3(&vec_mat3(a, w), 2.0);
    let w_mat = mat3_add(&mat3_scale(&outer3(a, b), 2.0), &mat3_scale(&cofactor3(w), -2.0));
    let phi = frob3_sq(&w_mat);
    let (a2, b2) = (dot(&a_vec, &a_vec), dot(&b_vec, &b_vec));
    let r = Residuals::of(c);
    let mut theta_phi = phi;
    if r.omega_beta <= tol {
        theta_phi += b2;
    }
    if r.alpha_omega <= tol {
        theta_phi += a2;
    }
    let det_omega_b = if r.omega_row3 <= tol && r.omega_col3 <= tol {
        Some(w[0][0] * w[1][1] - w[0][1] * w[1][0])
    } else {
        None
    };
    DerivedCoefficients {
        v_quad,
        a_vec,
        b_vec,
        w_mat,
        theta: a2 + b2 + phi,
        phi,
        theta_phi,
        s_cubic: dot(a, &mat3_vec(w, b)),
        det_omega: det3(w),
        det_omega_b,
    }
}

/// Φ through the expanded trace polynomial as printed (third form).
/// Kept as a cross-check only; it disagrees with Tr 𝒲𝒲ᵀ in general.
pub fn expanded_phi_printed(c: &CoefficientSet) -> f64 {
    let w = &c.omega;
    let w2 = mat3_mul(w, w);
    let w4 = mat3_mul(&w2, &w2);
    let tr = trace3(w);
    let tr2 = trace3(&w2);
    let (a, b) = (&c.alpha, &c.beta);
    4.0 * (dot(a, a) * dot(b, b) - dot(a, b) * (tr * tr - tr2) + trace3(&w4)) - 12.0 * tr * det3(w)
        + tr.powi(4)
        - tr2 * tr2
}

/// Constraint and rank residuals, each normalised by the set's scale.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Residuals {
    /// |ωᵀα| / N²
    pub alpha_omega: f64,
    /// |ωβ| / N²
    pub omega_beta: f64,
    /// |s| / N³
    pub s_cubic: f64,
    /// √(α₁² + α₂²) / N
    pub alpha_perp: f64,
    pub beta_perp: f64,
    /// |ω₃·| / N
    pub omega_row3: f64,
    /// |ω·₃| / N
    pub omega_col3: f64,
    /// σ₂/σ₁ of ω (0 when ω = 0)
    pub rank_ratio: f64,
    /// off-diagonal ω mass / ‖ω‖
    pub off_diagonal: f64,
    /// dyadic factorisation inconsistency
    pub dyadic: f64,
}

impl Residuals {
    pub fn of(c: &CoefficientSet) -> Self {
        let n = c.scale();
        if n == 0.0 {
            return Residuals::default();
        }
        let w = &c.omega;
        let (sv, vr) = svd3(w);
        let wn = frob3(w);
        let mut off = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    off += w[i][j] * w[i][j];
                }
            }
        }
        Residuals {
            alpha_omega: norm3(&vec_mat3(&c.alpha, w)) / (n * n),
            omega_beta: norm3(&mat3_vec(w, &c.beta)) / (n * n),
            s_cubic: dot(&c.alpha, &mat3_vec(w, &c.beta)).abs() / n.powi(3),
            alpha_perp: c.alpha[0].hypot(c.alpha[1]) / n,
            beta_perp: c.beta[0].hypot(c.beta[1]) / n,
            omega_row3: norm3(&w[2]) / n,
            omega_col3: norm3(&column3(w, 2)) / n,
            rank_ratio: if sv[0] > 0.0 { sv[1] / sv[0] } else { 0.0 },
            off_diagonal: if wn > 0.0 { off.sqrt() / wn } else { 0.0 },
            dyadic: dyadic_residual(c, n, &sv, &vr),
        }
    }
}

fn dyadic_residual(c: &CoefficientSet, n: f64, sv: &Vec3, vr: &Mat3) -> f64 {
    // ω ≈ 0: a product only when one local field vanishes
    let rank0 = (norm3(&c.alpha).min(norm3(&c.beta)) / n).max(sv[0] / n);
    if sv[0] == 0.0 {
        return rank0;
    }
    let v = column3(vr, 0);
    let u = scale3(&mat3_vec(&c.omega, &v), 1.0 / sv[0]);
    let au = dot(&c.alpha, &u);
    let bv = dot(&c.beta, &v);
    let ra = norm3(&sub3(&c.alpha, &scale3(&u, au))) / n;
    let rb = norm3(&sub3(&c.beta, &scale3(&v, bv))) / n;
    let rc = (au * bv - c.upsilon * sv[0]).abs() / (n * n).max(c.upsilon.abs() * sv[0]);
    let rank1 = ra.max(rb).max(rc).max(sv[1] / sv[0]);
    rank0.min(rank1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// α ∥ e₃ and ω's third row zero (α·ω = 0).
    AlphaNull,
    /// β ∥ e₃ and ω's third column zero (ω·β = 0).
    BetaNull,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    SeparableDyadic,
    DiagonalOmega,
    EntangledConstrained(Branch),
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaseLabel {
    pub case: Case,
    pub residuals: Residuals,
}

pub fn classify(c: &CoefficientSet, tol: f64) -> CaseLabel {
    let r = Residuals::of(c);
    let alpha_null = r.alpha_perp <= tol && r.omega_row3 <= tol && r.s_cubic <= tol;
    let beta_null = r.beta_perp <= tol && r.omega_col3 <= tol && r.s_cubic <= tol;
    let case = if r.dyadic <= tol {
        Case::SeparableDyadic
    } else if alpha_null && beta_null {
        Case::EntangledConstrained(Branch::Both)
    } else if alpha_null {
        Case::EntangledConstrained(Branch::AlphaNull)
    } else if beta_null {
        Case::EntangledConstrained(Branch::BetaNull)
    } else if r.off_diagonal <= tol {
        Case::DiagonalOmega
    } else {
        Case::General
    };
    CaseLabel { case, residuals: r }
}

/// Frame-free constraint test: is there a unit u with ωᵀu = 0 and α ∥ u
/// (AlphaNull), or the mirror for β?
pub fn constraint_branch(c: &CoefficientSet, tol: f64) -> Option<Branch> {
    let n = c.scale();
    if n == 0.0 {
        return Some(Branch::Both);
    }
    let sv = svd3(&c.omega).0;
    let holds = |v: &Vec3, w: &Mat3| {
        let vn = norm3(v);
        if vn > tol * n {
            norm3(&vec_mat3(v, w)) / vn <= tol * n
        } else {
            sv[2] <= tol * n
        }
    };
    let wt = transpose3(&c.omega);
    match (holds(&c.alpha, &c.omega), holds(&c.beta, &wt)) {
        (true, true) => Some(Branch::Both),
        (true, false) => Some(Branch::AlphaNull),
        (false, true) => Some(Branch::BetaNull),
        (false, false) => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameReduction {
    pub set: CoefficientSet,
    pub r1: Mat3,
    pub r2: Mat3,
}

/// Rotate a constrained set into the canonical frame: constrained vector on
/// +e₃, ω's third row and column zero, symmetric upper-left block.
pub fn frame_reduce(c: &CoefficientSet, tol: f64) -> Result<FrameReduction> {
    match constraint_branch(c, tol) {
        None => Err(Error::Precondition("neither α·ω = 0 nor ω·β = 0".into())),
        Some(Branch::BetaNull) => {
            let red = reduce_alpha_null(&c.swapped(), tol);
            Ok(FrameReduction { set: red.set.swapped(), r1: red.r2, r2: red.r1 })
        }
        Some(_) => Ok(reduce_alpha_null(c, tol)),
    }
}

fn reduce_alpha_null(c: &CoefficientSet, tol: f64) -> FrameReduction {
    let n = c.scale();
    let w = &c.omega;
    let an = norm3(&c.alpha);
    let e3 = [0.0, 0.0, 1.0];
    let u1 = if an > tol * n {
        scale3(&c.alpha, 1.0 / an)
    } else if norm3(&w[2]) <= tol * n {
        e3
    } else {
        right_null3(&transpose3(w)).unwrap_or_else(|| {
            let (_, left) = sym3_eig(&mat3_mul(w, &transpose3(w)));
            column3(&left, 2)
        })
    };
    let r1 = rotation_to_e3(&u1);
    let w1 = mat3_mul(&r1, w);
    let nv = if norm3(&column3(&w1, 2)) <= tol * n {
        e3
    } else {
        let mut v = right_null3(&w1).unwrap_or_else(|| column3(&svd3(&w1).1, 2));
        if v[2] < 0.0 {
            v = scale3(&v, -1.0);
        }
        v
    };
    let r2 = rotation_to_e3(&nv);
    let mut out = c.rotated(&r1, &r2);
    let b = out.omega;
    let (p, q) = (b[0][1], b[1][0]);
    let r1 = if (p - q).abs() > tol * n {
        let theta = (p - q).atan2(b[0][0] + b[1][1]);
        let rz = axis_angle(&e3, theta);
        out = out.rotated(&rz, &mat3_identity());
        mat3_mul(&rz, &r1)
    } else {
        r1
    };
    // project away the residual round-off
    out.alpha[0] = 0.0;
    out.alpha[1] = 0.0;
    out.alpha[2] = out.alpha[2].max(0.0);
    for k in 0..3 {
        out.omega[2][k] = 0.0;
        out.omega[k][2] = 0.0;
    }
    let sym = 0.5 * (out.omega[0][1] + out.omega[1][0]);
    out.omega[0][1] = sym;
    out.omega[1][0] = sym;
    FrameReduction { set: out, r1, r2 }
}
