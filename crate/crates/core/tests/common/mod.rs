#![allow(dead_code, clippy::needless_range_loop)]

use proptest::prelude::*;
use su2su2::hamiltonian::CoefficientSet;
use su2su2::linalg::*;

pub fn unit() -> impl Strategy<Value = f64> {
    -1.0f64..1.0
}

pub fn vec3() -> impl Strategy<Value = Vec3> {
    [unit(), unit(), unit()]
}

pub fn mat3() -> impl Strategy<Value = Mat3> {
    [vec3(), vec3(), vec3()]
}

pub fn any_set() -> impl Strategy<Value = CoefficientSet> {
    (unit(), vec3(), vec3(), mat3()).prop_map(|(upsilon, alpha, beta, omega)| CoefficientSet { upsilon, alpha, beta, omega })
}

pub fn rotation() -> impl Strategy<Value = Mat3> {
    (vec3(), -3.1f64..3.1).prop_filter_map("axis too short", |(v, a)| {
        let n = norm3(&v);
        (n > 0.1).then(|| axis_angle(&scale3(&v, 1.0 / n), a))
    })
}

/// Canonical α·ω = 0 set: α = a e₃, symmetric ω_B ⊕ 0.
pub fn canonical_set() -> impl Strategy<Value = CoefficientSet> {
    (unit(), unit(), vec3(), unit(), unit(), unit()).prop_map(|(upsilon, a, beta, w00, w01, w11)| CoefficientSet {
        upsilon,
        alpha: [0.0, 0.0, a],
        beta,
        omega: [[w00, w01, 0.0], [w01, w11, 0.0], [0.0; 3]],
    })
}

/// Constrained set in an arbitrary frame, either branch.
pub fn constrained_set() -> impl Strategy<Value = CoefficientSet> {
    (canonical_set(), rotation(), rotation(), any::<bool>()).prop_map(|(c, r1, r2, swap)| {
        let c = c.rotated(&r1, &r2);
        if swap {
            c.swapped()
        } else {
            c
        }
    })
}

pub fn hermitian4() -> impl Strategy<Value = Mat4> {
    (proptest::array::uniform4(unit()), proptest::array::uniform12(unit())).prop_map(|(d, o)| {
        let mut m = Mat4::zero();
        let mut k = 0;
        for i in 0..4 {
            m.0[i][i] = C64::new(d[i], 0.0);
            for j in i + 1..4 {
                let z = C64::new(o[k], o[k + 1]);
                k += 2;
                m.0[i][j] = z;
                m.0[j][i] = z.conj();
            }
        }
        m
    })
}

pub fn complex2() -> impl Strategy<Value = Mat2> {
    proptest::array::uniform8(unit()).prop_map(|v| CMat([[C64::new(v[0], v[1]), C64::new(v[2], v[3])], [C64::new(v[4], v[5]), C64::new(v[6], v[7])]]))
}

pub fn relative_gap(v: &[f64; 4]) -> f64 {
    su2su2::fuzz::relative_gap(v)
}
