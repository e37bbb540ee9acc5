//! Brute-force numerical ground truth: Hermitian eigensolver, spectral
//! matrix functions and the Wootters concurrence.

use crate::error::{Error, Result};
use crate::linalg::{CMat, Mat2, Mat4, C64, ZERO};
use crate::pauli::{pauli_word, HERMITIAN_TOL};

const MAX_SWEEPS: usize = 100;
const OFF_TOL: f64 = 1e-14;

/// Eigenvalues descending, eigenvectors as orthonormal columns of `vectors`.
#[derive(Clone, Copy, Debug)]
pub struct SpectralDecomposition<const N: usize> {
    pub values: [f64; N],
    pub vectors: CMat<N>,
}

impl<const N: usize> SpectralDecomposition<N> {
    pub fn vector(&self, k: usize) -> [C64; N] {
        std::array::from_fn(|r| self.vectors.0[r][k])
    }

    pub fn projector(&self, k: usize) -> CMat<N> {
        let v = self.vector(k);
        CMat::outer(&v, &v)
    }

    /// V f(Λ) V†.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMat<N> {
        let mut out = CMat::zero();
        for k in 0..N {
            let w = f(self.values[k]);
            if w == 0.0 {
                continue;
            }
            out += self.projector(k).scale(w);
        }
        out
    }

    /// Contiguous groups of eigenvalues closer than `tol`.
    pub fn clusters(&self, tol: f64) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=N {
            if k == N || self.values[k - 1] - self.values[k] > tol {
                out.push(start..k);
                start = k;
            }
        }
        out
    }
}

/// Cyclic complex Jacobi eigen-decomposition of a Hermitian matrix.
pub fn eig_hermitian<const N: usize>(m: &CMat<N>) -> Result<SpectralDecomposition<N>> {
    let dev = (*m - m.dagger()).max_norm();
    if dev > HERMITIAN_TOL * (1.0 + m.max_norm()) {
        return Err(Error::NonHermitian(dev));
    }
    let mut a = m.hermitian_part();
    let mut v = CMat::<N>::identity();
    let scale = a.frobenius();
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal(&a);
        if off == 0.0 || off < OFF_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let mut idx: [usize; N] = std::array::from_fn(|i| i);
    idx.sort_by(|&i, &j| a.0[j][j].re.total_cmp(&a.0[i][i].re));
    let values = idx.map(|k| a.0[k][k].re);
    let mut vectors = CMat::zero();
    for (c, &k) in idx.iter().enumerate() {
        for r in 0..N {
            vectors.0[r][c] = v.0[r][k];
        }
    }
    Ok(SpectralDecomposition { values, vectors })
}

fn off_diagonal<const N: usize>(a: &CMat<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a.0[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate<const N: usize>(a: &mut CMat<N>, v: &mut CMat<N>, p: usize, q: usize) {
    let b = a.0[p][q];
    let bn = b.norm();
    if bn == 0.0 {
        return;
    }
    let phase = (b / bn).conj(); // e^{-iφ}
    let tau = (a.0[q][q].re - a.0[p][p].re) / (2.0 * bn);
    let t = if tau == 0.0 { 1.0 } else { tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let j00 = C64::new(c, 0.0);
    let j01 = C64::new(s, 0.0);
    let j10 = phase * (-s);
    let j11 = phase * c;
    for k in 0..N {
        let (akp, akq) = (a.0[k][p], a.0[k][q]);
        a.0[k][p] = akp * j00 + akq * j10;
        a.0[k][q] = akp * j01 + akq * j11;
        let (vkp, vkq) = (v.0[k][p], v.0[k][q]);
        v.0[k][p] = vkp * j00 + vkq * j10;
        v.0[k][q] = vkp * j01 + vkq * j11;
    }
    for k in 0..N {
        let (apk, aqk) = (a.0[p][k], a.0[q][k]);
        a.0[p][k] = j00.conj() * apk + j10.conj() * aqk;
        a.0[q][k] = j01.conj() * apk + j11.conj() * aqk;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p].im = 0.0;
    a.0[q][q].im = 0.0;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatFunc {
    Exp,
    Sqrt,
    XLogX,
}

/// f applied on the spectrum of a Hermitian matrix.
pub fn mat_func<const N: usize>(m: &CMat<N>, f: MatFunc) -> Result<CMat<N>> {
    let sd = eig_hermitian(m)?;
    match f {
        MatFunc::Exp => {
            let top = sd.values[0];
            Ok(sd.apply(|x| (x - top).exp()).scale(top.exp()))
        }
        MatFunc::Sqrt | MatFunc::XLogX => {
            let tol = 1e-12 * (1.0 + m.max_norm());
            if let Some(&low) = sd.values.last() {
                if low < -tol {
                    return Err(Error::InvalidArgument(format!("negative eigenvalue {low:.3e}")));
                }
            }
            Ok(match f {
                MatFunc::Sqrt => sd.apply(|x| x.max(0.0).sqrt()),
                _ => sd.apply(|x| if x > 0.0 { x * x.ln() } else { 0.0 }),
            })
        }
    }
}

/// Normalised exp(−H/t), evaluated with the ground energy factored out.
pub fn thermal_state_oracle(h: &Mat4, t: f64) -> Result<Mat4> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("temperature {t} must be positive")));
    }
    let sd = eig_hermitian(h)?;
    let e0 = sd.values[3];
    let z: f64 = sd.values.iter().map(|e| (-(e - e0) / t).exp()).sum();
    Ok(sd.apply(|e| (-(e - e0) / t).exp() / z))
}

/// ln Tr exp(−H/t).
pub fn log_partition_oracle(h: &Mat4, t: f64) -> Result<f64> {
    let sd = eig_hermitian(h)?;
    Ok(log_sum_exp(&sd.values.map(|e| -e / t)))
}

pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let top = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + xs.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

const DENSITY_TOL: f64 = 1e-10;

fn check_density<const N: usize>(rho: &CMat<N>) -> Result<SpectralDecomposition<N>> {
    let dev = (*rho - rho.dagger()).max_norm();
    if dev > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("not Hermitian ({dev:.3e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("trace {tr}")));
    }
    let sd = eig_hermitian(rho)?;
    if sd.values[N - 1] < -DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("negative eigenvalue {:.3e}", sd.values[N - 1])));
    }
    Ok(sd)
}

/// (σ₂⊗σ₂) ρ* (σ₂⊗σ₂).
pub fn spin_flip(rho: &Mat4) -> Mat4 {
    let yy = pauli_word(2, 2);
    yy * rho.conj() * yy
}

/// max{λ₁ − λ₂ − λ₃ − λ₄, 0} with λ² the eigenvalues of √ρ ρ̃ √ρ.
pub fn wootters_concurrence(rho: &Mat4) -> Result<f64> {
    let sd = check_density(rho)?;
    let sq = sd.apply(|x| x.max(0.0).sqrt());
    let r = sq * spin_flip(rho) * sq;
    let lam = eig_hermitian(&r.hermitian_part())?.values.map(|x| x.max(0.0).sqrt());
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).clamp(0.0, 1.0))
}

/// Base-2 von Neumann entropy of a qubit density matrix.
pub fn von_neumann_entropy(rho: &Mat2) -> Result<f64> {
    let sd = check_density(rho)?;
    let h: f64 = sd
        .values
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    Ok(h.clamp(0.0, 1.0))
}
