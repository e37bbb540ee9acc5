//! Pauli algebra and the Fano decomposition of 4x4 Hermitian operators.

use crate::error::{Error, Result};
use crate::hamiltonian::CoefficientSet;
use crate::linalg::{kron, CMat, Mat2, Mat3, Mat4, Vec3, C64, I, ONE, ZERO};

/// Hermiticity tolerance, relative to the largest entry.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// σ₀ = I, σ₁, σ₂, σ₃.
pub fn pauli(i: usize) -> Mat2 {
    match i {
        0 => Mat2::identity(),
        1 => CMat([[ZERO, ONE], [ONE, ZERO]]),
        2 => CMat([[ZERO, -I], [I, ZERO]]),
        3 => CMat([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("Pauli index {i} out of range"),
    }
}

/// σ_μ ⊗ σ_ν.
pub fn pauli_word(mu: usize, nu: usize) -> Mat4 {
    kron(&pauli(mu), &pauli(nu))
}

/// a₀ I + a·σ.
pub fn su2_matrix(a0: f64, a: &Vec3) -> Mat2 {
    let mut m = pauli(0).scale(a0);
    for i in 0..3 {
        m += pauli(i + 1).scale(a[i]);
    }
    m
}

/// Bloch vector components Tr[ρ σ_i] of a 2x2 operator.
pub fn bloch2(rho: &Mat2) -> Vec3 {
    [1, 2, 3].map(|i| rho.trace_product(&pauli(i)).re)
}

/// Decompose a Hermitian 4x4 matrix into (υ, α, β, ω).
pub fn fano_decompose(h: &Mat4) -> Result<CoefficientSet> {
    let dev = (*h - h.dagger()).max_norm();
    if dev > HERMITIAN_TOL * (1.0 + h.max_norm()) {
        return Err(Error::NonHermitian(dev));
    }
    let mut c = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let z: C64 = h.trace_product(&pauli_word(mu, nu)) / 4.0;
            if z.im.abs() > HERMITIAN_TOL * (1.0 + h.max_norm()) {
                return Err(Error::ComplexCoefficient { index: 4 * mu + nu, imag: z.im });
            }
            c[mu][nu] = z.re;
        }
    }
    let mut omega: Mat3 = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            omega[i][j] = c[i + 1][j + 1];
        }
    }
    Ok(CoefficientSet {
        upsilon: c[0][0],
        alpha: [c[1][0], c[2][0], c[3][0]],
        beta: [c[0][1], c[0][2], c[0][3]],
        omega,
    })
}

/// υ I⊗I + α·σ⊗I + I⊗β·σ + Σ ω_ij σ_i⊗σ_j.
pub fn fano_compose(c: &CoefficientSet) -> Mat4 {
    let mut h = pauli_word(0, 0).scale(c.upsilon);
    for i in 0..3 {
        h += pauli_word(i + 1, 0).scale(c.alpha[i]);
        h += pauli_word(0, i + 1).scale(c.beta[i]);
        for j in 0..3 {
            if c.omega[i][j] != 0.0 {
                h += pauli_word(i + 1, j + 1).scale(c.omega[i][j]);
            }
        }
    }
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Reduced operator keeping the given subsystem.
pub fn partial_trace(rho: &Mat4, keep: Subsystem) -> Mat2 {
    let mut r = Mat2::zero();
    for a in 0..2 {
        for b in 0..2 {
            for k in 0..2 {
                r.0[a][b] += match keep {
                    Subsystem::First => rho.0[2 * a + k][2 * b + k],
                    Subsystem::Second => rho.0[2 * k + a][2 * k + b],
                };
            }
        }
    }
    r
}

/// SU(2) element whose adjoint action is the rotation R: U σ·v U† = σ·(R v).
pub fn su2_from_rotation(r: &Mat3) -> Mat2 {
    // quaternion from rotation matrix
    let tr = r[0][0] + r[1][1] + r[2][2];
    let (w, x, y, z);
    if tr > 0.0 {
        let s = (tr + 1.0).sqrt() * 2.0;
        w = 0.25 * s;
        x = (r[2][1] - r[1][2]) / s;
        y = (r[0][2] - r[2][0]) / s;
        z = (r[1][0] - r[0][1]) / s;
    } else if r[0][0] > r[1][1] && r[0][0] > r[2][2] {
        let s = (1.0 + r[0][0] - r[1][1] - r[2][2]).sqrt() * 2.0;
        w = (r[2][1] - r[1][2]) / s;
        x = 0.25 * s;
        y = (r[0][1] + r[1][0]) / s;
        z = (r[0][2] + r[2][0]) / s;
    } else if r[1][1] > r[2][2] {
        let s = (1.0 + r[1][1] - r[0][0] - r[2][2]).sqrt() * 2.0;
        w = (r[0][2] - r[2][0]) / s;
        x = (r[0][1] + r[1][0]) / s;
        y = 0.25 * s;
        z = (r[1][2] + r[2][1]) / s;
    } else {
        let s = (1.0 + r[2][2] - r[0][0] - r[1][1]).sqrt() * 2.0;
        w = (r[1][0] - r[0][1]) / s;
        x = (r[0][2] + r[2][0]) / s;
        y = (r[1][2] + r[2][1]) / s;
        z = 0.25 * s;
    }
    // U = w I − i (x σ₁ + y σ₂ + z σ₃)
    let mut u = pauli(0).scale(w);
    for (k, q) in [x, y, z].into_iter().enumerate() {
        u += pauli(k + 1).scale_c(C64::new(0.0, -q));
    }
    u
}
