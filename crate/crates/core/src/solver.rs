//! Eigensystems: separable closed forms, the constrained entangled ansatz,
//! quartic eigenvalues for diagonal ω, and the numerical fallback.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::*;
use crate::linalg::*;
use crate::oracle::{eig_hermitian, SpectralDecomposition};
use crate::pauli::{fano_compose, su2_matrix};
use crate::quartic::solve_quartic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    SeparableClosedForm,
    EntangledClosedForm,
    QuarticPlusOracleVectors,
    OracleNumeric,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::SeparableClosedForm => "SeparableClosedForm",
            Method::EntangledClosedForm => "EntangledClosedForm",
            Method::QuarticPlusOracleVectors => "QuarticPlusOracleVectors",
            Method::OracleNumeric => "OracleNumeric",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub m: u8,
    pub n: u8,
    pub value: f64,
}

/// Four labelled eigenvalues with their density matrices, stored in the
/// order (1,1), (1,2), (2,1), (2,2).
#[derive(Clone, Copy, Debug)]
pub struct Eigensystem {
    pub eigenvalues: [EigenPair; 4],
    pub states: [Mat4; 4],
    pub method: Method,
    /// Coincident eigenvalues or a degenerate factor; states of a degenerate
    /// eigenspace are its projector divided by the multiplicity.
    pub degenerate: bool,
}

pub const LABELS: [(u8, u8); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

pub fn label_index(m: u8, n: u8) -> usize {
    assert!((1..=2).contains(&m) && (1..=2).contains(&n), "labels are 1 or 2");
    2 * (m as usize - 1) + (n as usize - 1)
}

fn sign(k: u8) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct InvariantReport {
    pub completeness: f64,
    pub trace: f64,
    pub eigen_residual: f64,
    pub orthonormality: f64,
}

impl Eigensystem {
    pub fn value(&self, m: u8, n: u8) -> f64 {
        self.eigenvalues[label_index(m, n)].value
    }

    pub fn state(&self, m: u8, n: u8) -> &Mat4 {
        &self.states[label_index(m, n)]
    }

    pub fn sorted_values(&self) -> [f64; 4] {
        let mut v = self.eigenvalues.map(|p| p.value);
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Deviations from completeness, unit trace, Hρ = ερ (relative to
    /// 1+|ε|) and, for non-degenerate systems, orthonormality.
    pub fn check(&self, h: &Mat4) -> InvariantReport {
        let mut sum = Mat4::zero();
        let mut r = InvariantReport::default();
        for k in 0..4 {
            let rho = self.states[k];
            let e = self.eigenvalues[k].value;
            sum += rho;
            r.trace = r.trace.max((rho.trace().re - 1.0).abs());
            let res = (*h * rho - rho.scale(e)).max_norm() / (1.0 + e.abs());
            r.eigen_residual = r.eigen_residual.max(res);
            if !self.degenerate {
                for l in 0..4 {
                    let want = if k == l { 1.0 } else { 0.0 };
                    r.orthonormality = r.orthonormality.max((rho.trace_product(&self.states[l]).re - want).abs());
                }
            }
        }
        r.completeness = (sum - Mat4::identity()).max_norm();
        r
    }
}

/// a₀ I + a·σ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Su2Factor {
    pub a0: f64,
    pub a: Vec3,
}

impl Su2Factor {
    pub fn new(a0: f64, a: Vec3) -> Self {
        Su2Factor { a0, a }
    }

    pub fn norm(&self) -> f64 {
        norm3(&self.a)
    }

    pub fn matrix(&self) -> Mat2 {
        su2_matrix(self.a0, &self.a)
    }

    fn is_degenerate(&self) -> bool {
        let n = self.norm();
        n == 0.0 || n <= f64::EPSILON * self.a0.abs()
    }

    /// Unit axis, +e₃ for a degenerate factor.
    fn axis(&self) -> Vec3 {
        if self.is_degenerate() {
            [0.0, 0.0, 1.0]
        } else {
            scale3(&self.a, 1.0 / self.norm())
        }
    }
}

/// Coefficients of E⁴ − 2𝒱E² − 8(s − det ω)E + 𝒱² − Θ, highest power first.
pub fn secular_coefficients(d: &DerivedCoefficients) -> [f64; 5] {
    [1.0, 0.0, -2.0 * d.v_quad, -8.0 * (d.s_cubic - d.det_omega), d.v_quad * d.v_quad - d.theta]
}

/// The quartic with the reduced 𝒲 = 2αβᵀ and the bare −8s linear term.
/// Only a cross-check: it is exact for rank ≤ 1 ω but not for general
/// diagonal ω.
pub fn secular_coefficients_printed(c: &CoefficientSet) -> [f64; 5] {
    let d = derive(c);
    let ab = 4.0 * dot(&c.alpha, &c.alpha) * dot(&c.beta, &c.beta);
    let a2 = dot(&d.a_vec, &d.a_vec);
    let b2 = dot(&d.b_vec, &d.b_vec);
    [1.0, 0.0, -2.0 * d.v_quad, -8.0 * d.s_cubic, d.v_quad * d.v_quad - (a2 + b2 + ab)]
}

pub fn solve_separable(f1: &Su2Factor, f2: &Su2Factor) -> Eigensystem {
    let (a, b) = (f1.norm(), f2.norm());
    let (ua, ub) = (f1.axis(), f2.axis());
    let mut eigenvalues = [EigenPair { m: 0, n: 0, value: 0.0 }; 4];
    let mut states = [Mat4::zero(); 4];
    for (k, &(m, n)) in LABELS.iter().enumerate() {
        let value = (f1.a0 + sign(m) * a) * (f2.a0 + sign(n) * b);
        eigenvalues[k] = EigenPair { m, n, value };
        let p = su2_matrix(0.5, &scale3(&ua, 0.5 * sign(m)));
        let q = su2_matrix(0.5, &scale3(&ub, 0.5 * sign(n)));
        states[k] = kron(&p, &q);
    }
    let scale = 1.0 + eigenvalues.iter().map(|p| p.value.abs()).fold(0.0, f64::max);
    let degenerate = f1.is_degenerate() || f2.is_degenerate() || has_coincident(&eigenvalues.map(|p| p.value), 1e-12 * scale);
    Eigensystem { eigenvalues, states, method: Method::SeparableClosedForm, degenerate }
}

fn has_coincident(v: &[f64; 4], tol: f64) -> bool {
    (0..4).any(|i| (i + 1..4).any(|j| (v[i] - v[j]).abs() <= tol))
}

pub fn factor_dyadic(c: &CoefficientSet) -> Result<(Su2Factor, Su2Factor)> {
    let n = c.scale();
    let (f1, f2) = if n == 0.0 {
        (Su2Factor::new(1.0, [0.0; 3]), Su2Factor::new(c.upsilon, [0.0; 3]))
    } else {
        let (sv, vr) = svd3(&c.omega);
        let rank1 = sv[0] > DEFAULT_TOL * n;
        if rank1 && sv[1] > DEFAULT_TOL * sv[0] {
            return Err(Error::Precondition(format!("ω has rank > 1 (σ₂/σ₁ = {:.3e})", sv[1] / sv[0])));
        }
        if !rank1 {
            if norm3(&c.alpha) <= norm3(&c.beta) {
                (Su2Factor::new(1.0, [0.0; 3]), Su2Factor::new(c.upsilon, c.beta))
            } else {
                (Su2Factor::new(c.upsilon, c.alpha), Su2Factor::new(1.0, [0.0; 3]))
            }
        } else {
            let v = column3(&vr, 0);
            let u = scale3(&mat3_vec(&c.omega, &v), 1.0 / sv[0]);
            let r = sv[0].sqrt();
            let mut a = scale3(&u, r);
            let mut b = scale3(&v, r);
            let mut b0 = dot(&c.alpha, &u) / r;
            let mut a0 = dot(&c.beta, &v) / r;
            if a.iter().find(|x| x.abs() > 1e-12 * r).is_some_and(|x| *x < 0.0) {
                a = scale3(&a, -1.0);
                b = scale3(&b, -1.0);
                a0 = -a0;
                b0 = -b0;
            }
            (Su2Factor::new(a0, a), Su2Factor::new(b0, b))
        }
    };
    let h = fano_compose(c);
    let dev = (kron(&f1.matrix(), &f2.matrix()) - h).max_norm();
    if dev > 1e-9 * (1.0 + h.max_norm()) {
        return Err(Error::Precondition(format!("dyadic factorisation inconsistent by {dev:.3e}")));
    }
    Ok((f1, f2))
}

/// Separable identification with the printed signs, α = −b₀a, β = −a₀b.
/// Cross-check only; direct expansion of the product gives + signs.
pub fn compose_separable_printed(f1: &Su2Factor, f2: &Su2Factor) -> CoefficientSet {
    CoefficientSet {
        upsilon: f1.a0 * f2.a0,
        alpha: scale3(&f1.a, -f2.a0),
        beta: scale3(&f2.a, -f1.a0),
        omega: outer3(&f1.a, &f2.a),
    }
}

/// Coefficient set of (a₀ I + a·σ) ⊗ (b₀ I + b·σ).
pub fn compose_separable(f1: &Su2Factor, f2: &Su2Factor) -> CoefficientSet {
    CoefficientSet {
        upsilon: f1.a0 * f2.a0,
        alpha: scale3(&f1.a, f2.a0),
        beta: scale3(&f2.a, f1.a0),
        omega: outer3(&f1.a, &f2.a),
    }
}

/// Positive branch energies E₁ ≤ E₂ of a constrained set, with E₁² clamped at 0.
pub fn branch_energies(d: &DerivedCoefficients) -> (f64, f64) {
    let st = d.theta_phi.max(0.0).sqrt();
    ((d.v_quad - st).max(0.0).sqrt(), (d.v_quad + st).sqrt())
}

/// Closed-form eigenvalue ε_mn = υ + (−1)^m E_n.
pub fn entangled_eigenvalue(c: &CoefficientSet, d: &DerivedCoefficients, m: u8, n: u8) -> f64 {
    let (e1, e2) = branch_energies(d);
    c.upsilon + sign(m) * if n == 1 { e1 } else { e2 }
}

/// True when the closed-form ansatz has a vanishing denominator.
pub fn ansatz_degenerate(d: &DerivedCoefficients) -> bool {
    let st = d.theta_phi.max(0.0).sqrt();
    let (e1, _) = branch_energies(d);
    st < 1e-8 * (1.0 + d.v_quad) || e1 < 1e-8 * (1.0 + d.v_quad.sqrt())
}

pub fn solve_entangled(c: &CoefficientSet) -> Result<Eigensystem> {
    c.validate()?;
    let n = c.scale();
    if constraint_branch(c, DEFAULT_TOL).is_none() {
        return Err(Error::Precondition("set satisfies neither α·ω = 0 nor ω·β = 0".into()));
    }
    let d = derive(c);
    if n > 0.0 && d.s_cubic.abs() > DEFAULT_TOL * n.powi(3) {
        return Err(Error::Precondition(format!("α·ω·β = {:.3e} ≠ 0", d.s_cubic)));
    }
    let mut eigenvalues = [EigenPair { m: 0, n: 0, value: 0.0 }; 4];
    for (k, &(m, nn)) in LABELS.iter().enumerate() {
        eigenvalues[k] = EigenPair { m, n: nn, value: entangled_eigenvalue(c, &d, m, nn) };
    }
    if ansatz_degenerate(&d) {
        let h = fano_compose(c);
        let sd = eig_hermitian(&h)?;
        return Ok(relabel_oracle(&sd, &eigenvalues, Method::OracleNumeric, h.max_norm()));
    }
    let ht = traceless(c);
    let o = ht * ht - Mat4::identity().scale(d.v_quad);
    let st = d.theta_phi.sqrt();
    let (e1, e2) = branch_energies(&d);
    let id = Mat4::identity();
    let mut states = [Mat4::zero(); 4];
    for (k, &(m, nn)) in LABELS.iter().enumerate() {
        let en = if nn == 1 { e1 } else { e2 };
        let left = id + ht.scale(sign(m) / en);
        let right = id + o.scale(sign(nn) / st);
        states[k] = (left * right).scale(0.25).hermitian_part();
    }
    Ok(Eigensystem { eigenvalues, states, method: Method::EntangledClosedForm, degenerate: false })
}

/// Oracle states relabelled to match the given reference labels: the
/// sorted oracle values are assigned to the labels in the reference's
/// descending order.
fn relabel_oracle(sd: &SpectralDecomposition<4>, reference: &[EigenPair; 4], method: Method, hnorm: f64) -> Eigensystem {
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| reference[j].value.total_cmp(&reference[i].value));
    let (values, states, degenerate) = oracle_states(sd, hnorm);
    let mut eigenvalues = *reference;
    let mut out_states = [Mat4::zero(); 4];
    for (rank, &k) in order.iter().enumerate() {
        eigenvalues[k].value = values[rank];
        out_states[k] = states[rank];
    }
    Eigensystem { eigenvalues, states: out_states, method, degenerate }
}

/// Projectors in descending eigenvalue order; a degenerate eigenspace
/// contributes its projector divided by the multiplicity to each member.
fn oracle_states(sd: &SpectralDecomposition<4>, hnorm: f64) -> ([f64; 4], [Mat4; 4], bool) {
    let tol = 1e-9 * (1.0 + hnorm);
    let mut states = [Mat4::zero(); 4];
    let mut degenerate = false;
    for range in sd.clusters(tol) {
        let g = range.len();
        degenerate |= g > 1;
        let mut p = Mat4::zero();
        for k in range.clone() {
            p += sd.projector(k);
        }
        for k in range {
            states[k] = p.scale(1.0 / g as f64);
        }
    }
    (sd.values, states, degenerate)
}

/// Oracle eigensystem labelled by descending energy, m the slower index:
/// (1,1) is the highest level.
pub fn solve_oracle(h: &Mat4) -> Result<Eigensystem> {
    let sd = eig_hermitian(h)?;
    let (values, states, degenerate) = oracle_states(&sd, h.max_norm());
    let eigenvalues = std::array::from_fn(|k| EigenPair { m: LABELS[k].0, n: LABELS[k].1, value: values[k] });
    Ok(Eigensystem { eigenvalues, states, method: Method::OracleNumeric, degenerate })
}

/// Quartic eigenvalues with oracle eigenvectors, labelled like `solve_oracle`.
pub fn solve_quartic_oracle(c: &CoefficientSet) -> Result<Eigensystem> {
    let d = derive(c);
    let [c4, c3, c2, c1, c0] = secular_coefficients(&d);
    let roots = solve_quartic(c4, c3, c2, c1, c0)?;
    let mut values = roots.map(|r| r.re + c.upsilon);
    values.sort_by(|a, b| b.total_cmp(a));
    let mut es = solve_oracle(&fano_compose(c))?;
    for k in 0..4 {
        es.eigenvalues[k].value = values[k];
    }
    es.method = Method::QuarticPlusOracleVectors;
    Ok(es)
}

/// Oracle eigensystem. A set that is constrained in some rotated frame keeps
/// the closed-form (m, n) labels; anything else is labelled by descending energy.
fn solve_general(c: &CoefficientSet) -> Result<Eigensystem> {
    let h = fano_compose(c);
    let d = derive(c);
    let n = c.scale();
    if constraint_branch(c, DEFAULT_TOL).is_some() && d.s_cubic.abs() <= DEFAULT_TOL * n.powi(3) {
        let reference = LABELS.map(|(m, nn)| EigenPair { m, n: nn, value: entangled_eigenvalue(c, &d, m, nn) });
        return Ok(relabel_oracle(&eig_hermitian(&h)?, &reference, Method::OracleNumeric, h.max_norm()));
    }
    solve_oracle(&h)
}

/// Dispatch by case; any closed-form failure falls back to the oracle.
pub fn solve(c: &CoefficientSet) -> Result<Eigensystem> {
    c.validate()?;
    let label = classify(c, DEFAULT_TOL);
    let attempt = match label.case {
        Case::SeparableDyadic => factor_dyadic(c).map(|(f1, f2)| solve_separable(&f1, &f2)),
        Case::EntangledConstrained(_) => solve_entangled(c),
        Case::DiagonalOmega => solve_quartic_oracle(c),
        Case::General => solve_general(c),
    };
    attempt.or_else(|_| solve_general(c))
}
