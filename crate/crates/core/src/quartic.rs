//! Quartic roots by Ferrari's resolvent cubic (complex Cardano), with
//! Newton polishing.

use crate::error::{Error, Result};
use crate::linalg::C64;

const POLISH_STEPS: usize = 5;

/// Roots of c4 x⁴ + c3 x³ + c2 x² + c1 x + c0, sorted by descending real part
/// then descending imaginary part.
pub fn solve_quartic(c4: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> Result<[C64; 4]> {
    let coeffs = [c4, c3, c2, c1, c0];
    if c4 == 0.0 || !coeffs.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidArgument("leading coefficient must be non-zero and finite".into()));
    }
    let (b, c, d, e) = (c3 / c4, c2 / c4, c1 / c4, c0 / c4);
    let p = c - 3.0 * b * b / 8.0;
    let q = d - b * c / 2.0 + b.powi(3) / 8.0;
    let r = e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b.powi(4) / 256.0;
    let scale = 1.0 + p.abs() + q.abs().sqrt() + r.abs().sqrt();
    let ys = if q.abs() <= 1e-14 * scale.powi(3) {
        biquadratic(p, r)
    } else {
        ferrari(p, q, r)
    };
    let mut roots = ys.map(|y| y - b / 4.0);
    let poly = |x: C64| (((x * c4 + c3) * x + c2) * x + c1) * x + c0;
    let dpoly = |x: C64| ((x * (4.0 * c4) + 3.0 * c3) * x + 2.0 * c2) * x + c1;
    for root in roots.iter_mut() {
        polish(root, &poly, &dpoly);
    }
    refine_clusters(&mut roots, &coeffs);
    let cmax = coeffs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for root in roots.iter_mut() {
        if root.im.abs() <= 1e-12 * (1.0 + root.re.abs()) && poly(C64::new(root.re, 0.0)).norm() <= poly(*root).norm().max(1e-15 * cmax) {
            root.im = 0.0;
        }
    }
    roots.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(roots)
}

fn polish(root: &mut C64, poly: &impl Fn(C64) -> C64, dpoly: &impl Fn(C64) -> C64) {
    let mut best = poly(*root).norm();
    for _ in 0..POLISH_STEPS {
        if best == 0.0 {
            break;
        }
        let dp = dpoly(*root);
        if dp.norm() == 0.0 {
            break;
        }
        let next = *root - poly(*root) / dp;
        let val = poly(next).norm();
        if val < best {
            *root = next;
            best = val;
        } else {
            break;
        }
    }
}

/// A cluster of k nearly coincident roots is replaced by the root of the
/// (k−1)-th derivative when that lowers the residual.
fn refine_clusters(roots: &mut [C64; 4], c: &[f64; 5]) {
    let scale = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let poly = |x: C64| (((x * c[0] + c[1]) * x + c[2]) * x + c[3]) * x + c[4];
    let mut used = [false; 4];
    for i in 0..4 {
        if used[i] {
            continue;
        }
        let members: Vec<usize> = (i..4)
            .filter(|&j| !used[j] && (roots[j] - roots[i]).norm() <= 1e-3 * scale)
            .collect();
        if members.len() < 2 {
            continue;
        }
        let k = members.len();
        let mean = members.iter().map(|&j| roots[j]).sum::<C64>() / k as f64;
        let d = derivative(c, k - 1);
        let mut x = mean;
        for _ in 0..20 {
            let (f, df) = eval_with_derivative(&d, x);
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            x -= step;
            if step.norm() <= 1e-17 * scale {
                break;
            }
        }
        let worst = members.iter().map(|&j| poly(roots[j]).norm()).fold(0.0, f64::max);
        if (x - mean).norm() <= 1e-3 * scale && poly(x).norm() <= worst {
            for &j in &members {
                roots[j] = x;
                used[j] = true;
            }
        }
    }
}

fn derivative(c: &[f64; 5], order: usize) -> Vec<f64> {
    let mut p: Vec<f64> = c.to_vec(); // descending powers
    for _ in 0..order {
        let deg = p.len() - 1;
        p = p[..deg].iter().enumerate().map(|(i, a)| a * (deg - i) as f64).collect();
    }
    p
}

fn eval_with_derivative(p: &[f64], x: C64) -> (C64, C64) {
    let mut f = C64::new(0.0, 0.0);
    let mut df = C64::new(0.0, 0.0);
    for &a in p {
        df = df * x + f;
        f = f * x + a;
    }
    (f, df)
}

fn biquadratic(p: f64, r: f64) -> [C64; 4] {
    let disc = C64::new(p * p - 4.0 * r, 0.0).sqrt();
    let z1 = (-p + disc) / 2.0;
    let z2 = (-p - disc) / 2.0;
    let (s1, s2) = (z1.sqrt(), z2.sqrt());
    [s1, -s1, s2, -s2]
}

fn ferrari(p: f64, q: f64, r: f64) -> [C64; 4] {
    // 8m³ + 8pm² + (2p² − 8r)m − q² = 0
    let ms = cubic_monic(p, p * p / 4.0 - r, -q * q / 8.0);
    let m = ms.into_iter().fold(ms[0], |a, x| if x.norm() > a.norm() { x } else { a });
    let s = (m * 2.0).sqrt();
    let half = C64::new(p / 2.0, 0.0) + m;
    let k = C64::new(q, 0.0) / (s * 2.0);
    let (y1, y2) = quadratic(-s, half + k);
    let (y3, y4) = quadratic(s, half - k);
    [y1, y2, y3, y4]
}

/// Roots of y² + b y + c.
fn quadratic(b: C64, c: C64) -> (C64, C64) {
    let disc = (b * b - c * 4.0).sqrt();
    let t = if (b.conj() * disc).re >= 0.0 { -(b + disc) / 2.0 } else { -(b - disc) / 2.0 };
    if t.norm() == 0.0 {
        return (t, t);
    }
    (t, c / t)
}

/// Roots of m³ + a m² + b m + c by Cardano in complex arithmetic.
fn cubic_monic(a: f64, b: f64, c: f64) -> [C64; 3] {
    let pp = b - a * a / 3.0;
    let qq = 2.0 * a.powi(3) / 27.0 - a * b / 3.0 + c;
    let shift = C64::new(-a / 3.0, 0.0);
    let disc = C64::new(qq * qq / 4.0 + pp.powi(3) / 27.0, 0.0).sqrt();
    let u1 = C64::new(-qq / 2.0, 0.0) + disc;
    let u2 = C64::new(-qq / 2.0, 0.0) - disc;
    let u = if u1.norm() >= u2.norm() { u1 } else { u2 };
    let mut zs = if u.norm() == 0.0 {
        [C64::new(0.0, 0.0); 3]
    } else {
        let cbrt = u.powf(1.0 / 3.0);
        let w = C64::new(-0.5, 3f64.sqrt() / 2.0);
        let mut out = [C64::new(0.0, 0.0); 3];
        let mut ck = cbrt;
        for z in out.iter_mut() {
            *z = ck - C64::new(pp, 0.0) / (ck * 3.0);
            ck *= w;
        }
        out
    };
    for z in zs.iter_mut() {
        *z += shift;
        for _ in 0..3 {
            let f = ((*z + a) * *z + b) * *z + c;
            let df = (*z * 3.0 + 2.0 * a) * *z + b;
            if df.norm() == 0.0 {
                break;
            }
            let next = *z - f / df;
            if (((next + a) * next + b) * next + c).norm() < f.norm() {
                *z = next;
            } else {
                break;
            }
        }
    }
    zs
}
