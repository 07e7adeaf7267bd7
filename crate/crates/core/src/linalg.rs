//! Fixed-size vector helpers over any [`Real`] scalar.

use crate::autodiff::Real;

pub type Vec3<T> = [T; 3];
pub type Vec4<T> = [T; 4];
pub type Mat3<T> = [[T; 3]; 3];

pub fn dot<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> T {
    let mut s = T::zero();
    for i in 0..N {
        s = s + a[i] * b[i];
    }
    s
}

pub fn add<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> [T; N] {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn sub<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> [T; N] {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn scale<T: Real, const N: usize>(s: T, a: &[T; N]) -> [T; N] {
    std::array::from_fn(|i| s * a[i])
}

pub fn norm<T: Real, const N: usize>(a: &[T; N]) -> T {
    dot(a, a).sqrt()
}

/// `Σ coeffs[k]·vecs[k]`
pub fn combine<T: Real, const N: usize, const K: usize>(coeffs: &[T; K], vecs: &[[T; N]; K]) -> [T; N] {
    std::array::from_fn(|i| {
        let mut s = T::zero();
        for k in 0..K {
            s = s + coeffs[k] * vecs[k][i];
        }
        s
    })
}

pub fn mat_vec<T: Real>(m: &Mat3<T>, v: &Vec3<T>) -> Vec3<T> {
    std::array::from_fn(|i| dot(&m[i], v))
}

pub fn mat_mul<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]))
}

pub fn transpose<T: Real>(m: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
}

pub fn det3<T: Real>(m: &Mat3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse by adjugate; the caller guarantees a nonsingular matrix.
pub fn inv3<T: Real>(m: &Mat3<T>) -> Mat3<T> {
    let d = det3(m).recip();
    let c = |r0: usize, c0: usize, r1: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 1, 2, 2) * d, -c(0, 1, 2, 2) * d, c(0, 1, 1, 2) * d],
        [-c(1, 0, 2, 2) * d, c(0, 0, 2, 2) * d, -c(0, 0, 1, 2) * d],
        [c(1, 0, 2, 1) * d, -c(0, 0, 2, 1) * d, c(0, 0, 1, 1) * d],
    ]
}

/// Vector `n` with `n_i = det[a; b; c; e_i]`, orthogonal to `a`, `b`, `c`.
pub fn cross4<T: Real>(a: &Vec4<T>, b: &Vec4<T>, c: &Vec4<T>) -> Vec4<T> {
    std::array::from_fn(|i| {
        let cols: Vec<usize> = (0..4).filter(|&k| k != i).collect();
        let minor = [[a[cols[0]], a[cols[1]], a[cols[2]]], [b[cols[0]], b[cols[1]], b[cols[2]]], [c[cols[0]], c[cols[1]], c[cols[2]]]];
        // cofactor of entry (3, i) in the 4×4 matrix with rows a, b, c, e_i
        let sign = if (3 + i) % 2 == 0 { 1.0 } else { -1.0 };
        det3(&minor) * sign
    })
}

pub fn max_abs<const N: usize>(a: &[f64; N]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub fn max_abs_mat(a: &Mat3<f64>) -> f64 {
    a.iter().map(max_abs).fold(0.0, f64::max)
}

pub fn to_f64<T: Real, const N: usize>(a: &[T; N]) -> [f64; N] {
    a.map(|x| x.re())
}

pub fn identity3<T: Real>() -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { T::one() } else { T::zero() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = [[2.0, 0.3, -0.1], [0.3, 1.5, 0.2], [-0.1, 0.2, 0.9]];
        let p = mat_mul(&m, &inv3(&m));
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((p[i][j] - e).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cross4_is_orthogonal_and_positive() {
        let a = [1.0, 0.2, -0.3, 0.5];
        let b = [0.1, 1.0, 0.4, -0.2];
        let c = [-0.3, 0.2, 1.0, 0.7];
        let n = cross4(&a, &b, &c);
        for v in [&a, &b, &c] {
            assert!(dot(v, &n).abs() < 1e-14);
        }
        // det[a, b, c, n] = |n|² > 0; for e_4-completion of the standard basis n = e_4
        let e = cross4(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(e, [0.0, 0.0, 0.0, 1.0]);
    }
}
