//! Seeded generators for coefficient sets and test matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hamiltonian::{derive, Branch, CoefficientSet};
use crate::linalg::*;
use crate::oracle::eig_hermitian;
use crate::pauli::fano_compose;
use crate::solver::{ansatz_degenerate, compose_separable, Su2Factor};

pub const RNG_ALGORITHM: &str = "ChaCha8Rng";
pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(r: &mut impl Rng) -> f64 {
    r.random_range(-1.0..1.0)
}

pub fn random_vec3(r: &mut impl Rng) -> Vec3 {
    [uniform(r), uniform(r), uniform(r)]
}

pub fn random_mat3(r: &mut impl Rng) -> Mat3 {
    [random_vec3(r), random_vec3(r), random_vec3(r)]
}

pub fn random_unit(r: &mut impl Rng) -> Vec3 {
    loop {
        let v = random_vec3(r);
        let n = norm3(&v);
        if n > 0.1 && n <= 1.0 {
            return scale3(&v, 1.0 / n);
        }
    }
}

pub fn random_rotation(r: &mut impl Rng) -> Mat3 {
    let axis = random_unit(r);
    axis_angle(&axis, r.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

pub fn random_hermitian4(r: &mut impl Rng) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 0..4 {
        m.0[i][i] = C64::new(uniform(r), 0.0);
        for j in i + 1..4 {
            let z = C64::new(uniform(r), uniform(r));
            m.0[i][j] = z;
            m.0[j][i] = z.conj();
        }
    }
    m
}

pub fn random_set(r: &mut impl Rng) -> CoefficientSet {
    CoefficientSet { upsilon: uniform(r), alpha: random_vec3(r), beta: random_vec3(r), omega: random_mat3(r) }
}

pub fn random_factor(r: &mut impl Rng) -> Su2Factor {
    Su2Factor::new(uniform(r), random_vec3(r))
}

/// Smallest spacing between sorted eigenvalues, relative to 1 + max|ε|.
pub fn relative_gap(values: &[f64; 4]) -> f64 {
    let mut v = *values;
    v.sort_by(f64::total_cmp);
    let scale = 1.0 + v[0].abs().max(v[3].abs());
    (0..3).map(|i| v[i + 1] - v[i]).fold(f64::INFINITY, f64::min) / scale
}

fn spectrum(c: &CoefficientSet) -> [f64; 4] {
    eig_hermitian(&fano_compose(c)).map(|s| s.values).unwrap_or([0.0; 4])
}

/// Product H₁⊗H₂ with every level separated by at least `min_gap`
/// (relative), resampling otherwise.
pub fn random_dyadic(r: &mut impl Rng, min_gap: f64) -> (Su2Factor, Su2Factor, CoefficientSet) {
    loop {
        let (f1, f2) = (random_factor(r), random_factor(r));
        let c = compose_separable(&f1, &f2);
        if min_gap <= 0.0 || relative_gap(&spectrum(&c)) >= min_gap {
            return (f1, f2, c);
        }
    }
}

/// Canonical constrained set: α = a e₃, ω = ω_B ⊕ 0 with symmetric ω_B,
/// β free (AlphaNull); the mirror image for BetaNull; α and β both along
/// e₃ for Both.
pub fn random_entangled(r: &mut impl Rng, branch: Branch, min_gap: f64) -> CoefficientSet {
    loop {
        let (w00, w01, w11) = (uniform(r), uniform(r), uniform(r));
        let omega = [[w00, w01, 0.0], [w01, w11, 0.0], [0.0; 3]];
        let a = uniform(r);
        let b = random_vec3(r);
        let c = match branch {
            Branch::AlphaNull => CoefficientSet { upsilon: uniform(r), alpha: [0.0, 0.0, a], beta: b, omega },
            Branch::BetaNull => CoefficientSet { upsilon: uniform(r), alpha: b, beta: [0.0, 0.0, a], omega },
            Branch::Both => CoefficientSet { upsilon: uniform(r), alpha: [0.0, 0.0, a], beta: [0.0, 0.0, b[2]], omega },
        };
        if min_gap <= 0.0 || (!ansatz_degenerate(&derive(&c)) && relative_gap(&spectrum(&c)) >= min_gap) {
            return c;
        }
    }
}

pub fn random_entangled_any(r: &mut impl Rng, min_gap: f64) -> CoefficientSet {
    let branch = match r.random_range(0..3) {
        0 => Branch::AlphaNull,
        1 => Branch::BetaNull,
        _ => Branch::Both,
    };
    random_entangled(r, branch, min_gap)
}

/// Constrained sets commuting with their field-flipped partner:
/// α = β = 0 with any block; α₃ = β₃ with ω_B ∝ I; α₃ = −β₃ with
/// traceless symmetric ω_B.
pub fn random_commuting(r: &mut impl Rng) -> CoefficientSet {
    let upsilon = uniform(r);
    match r.random_range(0..3) {
        0 => {
            let (w00, w01, w11) = (uniform(r), uniform(r), uniform(r));
            CoefficientSet { upsilon, omega: [[w00, w01, 0.0], [w01, w11, 0.0], [0.0; 3]], ..CoefficientSet::zero() }
        }
        1 => {
            let (a, d) = (uniform(r), uniform(r));
            CoefficientSet { upsilon, alpha: [0.0, 0.0, a], beta: [0.0, 0.0, a], omega: [[d, 0.0, 0.0], [0.0, d, 0.0], [0.0; 3]] }
        }
        _ => {
            let (a, d, e) = (uniform(r), uniform(r), uniform(r));
            CoefficientSet { upsilon, alpha: [0.0, 0.0, a], beta: [0.0, 0.0, -a], omega: [[d, e, 0.0], [e, -d, 0.0], [0.0; 3]] }
        }
    }
}
