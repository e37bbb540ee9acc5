//! Fixed-size dense matrices: complex 2x2 / 4x4 and real 3-vectors / 3x3.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

pub type C64 = Complex64;
pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense row-major complex square matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type Mat2 = CMat<2>;
pub type Mat4 = CMat<4>;

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> CMat<N> {
    pub fn zero() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_real(r: [[f64; N]; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = C64::new(r[i][j], 0.0);
            }
        }
        m
    }

    pub fn diag_real(d: [f64; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn scale_c(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        (*self - self.dagger()).max_norm() <= rel_tol * (1.0 + self.max_norm())
    }

    /// Hermitian part, (M + M†)/2.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.dagger()).scale(0.5)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Re Tr[A B].
    pub fn trace_product(&self, other: &Self) -> C64 {
        let mut t = ZERO;
        for i in 0..N {
            for k in 0..N {
                t += self.0[i][k] * other.0[k][i];
            }
        }
        t
    }

    pub fn outer(u: &[C64; N], v: &[C64; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn max_dev(&self, other: &Self) -> f64 {
        (*self - *other).max_norm()
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> AddAssign for CMat<N> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Mul<f64> for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

/// Kronecker product: kron(a,b)[2i+k][2j+l] = a[i][j] b[k][l].
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn add3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale3(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn mat3_zero() -> Mat3 {
    [[0.0; 3]; 3]
}

pub fn mat3_identity() -> Mat3 {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

pub fn mat3_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

/// vᵀ M.
pub fn vec_mat3(v: &Vec3, m: &Mat3) -> Vec3 {
    mat3_vec(&transpose3(m), v)
}

pub fn transpose3(m: &Mat3) -> Mat3 {
    let mut t = mat3_zero();
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut m = mat3_zero();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

pub fn mat3_add(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut m = *a;
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] += b[i][j];
        }
    }
    m
}

pub fn mat3_scale(a: &Mat3, s: f64) -> Mat3 {
    let mut m = *a;
    m.iter_mut().flatten().for_each(|x| *x *= s);
    m
}

pub fn outer3(a: &Vec3, b: &Vec3) -> Mat3 {
    let mut m = mat3_zero();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[i] * b[j];
        }
    }
    m
}

pub fn trace3(m: &Mat3) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cofactor matrix, cof(M) = adj(M)ᵀ.
pub fn cofactor3(m: &Mat3) -> Mat3 {
    let mut c = mat3_zero();
    for i in 0..3 {
        for j in 0..3 {
            let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
            let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
            c[i][j] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
        }
    }
    c
}

pub fn frob3(m: &Mat3) -> f64 {
    frob3_sq(m).sqrt()
}

pub fn frob3_sq(m: &Mat3) -> f64 {
    m.iter().flatten().map(|x| x * x).sum()
}

pub fn max_abs3(m: &Mat3) -> f64 {
    m.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Eigen-decomposition of a real symmetric 3x3 matrix by cyclic Jacobi.
/// Returns eigenvalues descending and the eigenvectors as columns.
pub fn sym3_eig(a: &Mat3) -> (Vec3, Mat3) {
    let mut a = *a;
    let mut v = mat3_identity();
    let scale = frob3(&a);
    for _ in 0..100 {
        let off: f64 = (a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2)).sqrt();
        if off <= 1e-15 * scale || off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            for k in 0..3 {
                let (akp, akq) = (a[k][p], a[k][q]);
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let (apk, aqk) = (a[p][k], a[q][k]);
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            for k in 0..3 {
                let (vkp, vkq) = (v[k][p], v[k][q]);
                v[k][p] = c * vkp - s * vkq;
                v[k][q] = s * vkp + c * vkq;
            }
        }
    }
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let vals = [a[idx[0]][idx[0]], a[idx[1]][idx[1]], a[idx[2]][idx[2]]];
    let mut vecs = mat3_zero();
    for (c, &k) in idx.iter().enumerate() {
        for r in 0..3 {
            vecs[r][c] = v[r][k];
        }
    }
    (vals, vecs)
}

pub fn column3(m: &Mat3, c: usize) -> Vec3 {
    [m[0][c], m[1][c], m[2][c]]
}

/// Singular values (descending) and right singular vectors (columns) of M,
/// via the eigen-decomposition of MᵀM. The two smaller singular values are
/// recovered from the cofactor norm and the determinant, which keeps them
/// accurate near rank deficiency.
pub fn svd3(m: &Mat3) -> (Vec3, Mat3) {
    let mtm = mat3_mul(&transpose3(m), m);
    let (vals, vecs) = sym3_eig(&mtm);
    let s1 = vals[0].max(0.0).sqrt();
    let cof = frob3(&cofactor3(m));
    let (s2, s3) = if s1 > 0.0 && cof > 0.0 {
        // ‖cof‖² = σ₁²σ₂² + σ₁²σ₃² + σ₂²σ₃², |det| = σ₁σ₂σ₃
        let d = det3(m).abs();
        let p = cof * cof / (s1 * s1);
        let q = d * d / (s1 * s1);
        // σ₂², σ₃² are the roots of x² − p x + q with p = σ₂² + σ₃² + σ₂²σ₃²/σ₁²
        // (the last term is small and folded in by one fixed-point pass)
        let solve = |p: f64| {
            let disc = (p * p - 4.0 * q).max(0.0).sqrt();
            let big = 0.5 * (p + disc);
            let small = if big > 0.0 { q / big } else { 0.0 };
            (big, small)
        };
        let (b, sm) = solve(p);
        let (b, sm) = solve(p - b * sm / (s1 * s1));
        (b.max(0.0).sqrt(), sm.max(0.0).sqrt())
    } else {
        (0.0, 0.0)
    };
    ([s1, s2, s3], vecs)
}

/// Unit vector spanning the right null space of a rank-2 matrix, from its
/// largest cofactor row; `None` if the cofactor matrix vanishes.
pub fn right_null3(m: &Mat3) -> Option<Vec3> {
    let cof = cofactor3(m);
    let best = (0..3).max_by(|&i, &j| norm3(&cof[i]).total_cmp(&norm3(&cof[j])))?;
    let n = norm3(&cof[best]);
    (n > 0.0).then(|| scale3(&cof[best], 1.0 / n))
}

/// Rotation about `axis` (unit) by `angle`.
pub fn axis_angle(axis: &Vec3, angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    let [x, y, z] = *axis;
    let k = 1.0 - c;
    [
        [c + x * x * k, x * y * k - z * s, x * z * k + y * s],
        [y * x * k + z * s, c + y * y * k, y * z * k - x * s],
        [z * x * k - y * s, z * y * k + x * s, c + z * z * k],
    ]
}

/// Proper rotation taking unit vector `u` onto +e3 with the smallest angle.
pub fn rotation_to_e3(u: &Vec3) -> Mat3 {
    let e3 = [0.0, 0.0, 1.0];
    let axis = cross(u, &e3);
    let s = norm3(&axis);
    let c = u[2];
    if s < 1e-15 {
        if c > 0.0 {
            return mat3_identity();
        }
        return axis_angle(&[1.0, 0.0, 0.0], std::f64::consts::PI);
    }
    axis_angle(&scale3(&axis, 1.0 / s), s.atan2(c))
}
