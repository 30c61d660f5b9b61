//! Dense complex matrix utilities shared by the generator, dynamics and
//! experiment modules: Kronecker products, column-stacking vectorization,
//! and the scaling-and-squaring matrix exponential.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::lapack::{self, LapackError};

pub type CMat = Array2<Complex64>;
pub type CVec = Array1<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

pub fn dagger(a: &CMat) -> CMat {
    let mut out = Array2::zeros((a.ncols(), a.nrows()));
    for ((i, j), v) in a.indexed_iter() {
        out[[j, i]] = v.conj();
    }
    out
}

pub fn transpose(a: &CMat) -> CMat {
    a.t().to_owned()
}

pub fn conjugate(a: &CMat) -> CMat {
    a.mapv(|z| z.conj())
}

/// Kronecker product: `out[i*p+k, j*q+l] = a[i,j] * b[k,l]` for `b` of shape
/// `p x q`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (m, n) = a.dim();
    let (p, q) = b.dim();
    let mut out = Array2::zeros((m * p, n * q));
    for ((i, j), &av) in a.indexed_iter() {
        if av == ZERO {
            continue;
        }
        for ((k, l), &bv) in b.indexed_iter() {
            out[[i * p + k, j * q + l]] = av * bv;
        }
    }
    out
}

/// Column-stacking vectorization: `vecc(X)[j*n + i] = X[i, j]`.
///
/// With this convention `vecc(A X B) = (B^T ⊗ A) vecc(X)`.
pub fn vecc(x: &CMat) -> CVec {
    let (n, m) = x.dim();
    let mut out = Array1::zeros(n * m);
    for ((i, j), &v) in x.indexed_iter() {
        out[j * n + i] = v;
    }
    out
}

/// Inverse of [`vecc`] for a square matrix of dimension `n`.
pub fn unvecc(v: &CVec, n: usize) -> CMat {
    assert_eq!(v.len(), n * n, "unvecc length mismatch");
    let mut out = Array2::zeros((n, n));
    for j in 0..n {
        for i in 0..n {
            out[[i, j]] = v[j * n + i];
        }
    }
    out
}

pub fn frobenius_norm(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Maximum column sum of absolute values.
pub fn one_norm(a: &CMat) -> f64 {
    let (_, n) = a.dim();
    (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// ‖A − A†‖ in the elementwise max norm.
pub fn hermiticity_defect(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (a[[i, j]] - a[[j, i]].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

pub fn is_hermitian(a: &CMat, tol: f64) -> bool {
    a.nrows() == a.ncols() && hermiticity_defect(a) <= tol
}

/// (A + A†) / 2.
pub fn hermitize(a: &CMat) -> CMat {
    let adj = dagger(a);
    (a + &adj).mapv(|z| z * 0.5)
}

pub fn trace(a: &CMat) -> Complex64 {
    a.diag().sum()
}

pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    lapack::matmul(a, b)
}

pub fn matvec(a: &CMat, v: &CVec) -> CVec {
    let vm = v.clone().insert_axis(ndarray::Axis(1));
    let out = lapack::matmul(a, &vm);
    out.index_axis(ndarray::Axis(1), 0).to_owned()
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    &matmul(a, b) - &matmul(b, a)
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    &matmul(a, b) + &matmul(b, a)
}

// Padé approximant thresholds from Higham, "The scaling and squaring method
// for the matrix exponential revisited" (2005), Table 2.3.
const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// b_i = (2m-i)! m! / ((2m)! (m-i)! i!) for the [m/m] Padé approximant of exp.
fn pade_coeffs(m: usize) -> Vec<f64> {
    // Overall scale cancels in the rational function, so b[0] = 1 is fine.
    let mut b = vec![0.0f64; m + 1];
    b[0] = 1.0;
    for i in 1..=m {
        b[i] = b[i - 1] * ((m - i + 1) as f64) / (((2 * m - i + 1) as f64) * (i as f64));
    }
    b
}

fn pade_apply(a: &CMat, powers: &[&CMat], b: &[f64]) -> (CMat, CMat) {
    // U = A * (b1 I + b3 A^2 + b5 A^4 + ...),  V = b0 I + b2 A^2 + b4 A^4 + ...
    let n = a.nrows();
    let mut u_inner: CMat = Array2::eye(n) * Complex64::new(b[1], 0.0);
    let mut v: CMat = Array2::eye(n) * Complex64::new(b[0], 0.0);
    for (k, p) in powers.iter().enumerate() {
        let even = 2 * (k + 1);
        let odd = even + 1;
        v = v + p.mapv(|z| z * b[even]);
        if odd < b.len() {
            u_inner = u_inner + p.mapv(|z| z * b[odd]);
        }
    }
    (matmul(a, &u_inner), v)
}

/// Matrix exponential by scaling-and-squaring with Padé approximants
/// (Higham 2005).
pub fn expm(a: &CMat) -> Result<CMat, LapackError> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }
    let norm = one_norm(a);

    if norm <= THETA_9 {
        let a2 = matmul(a, a);
        let (m, powers): (usize, Vec<CMat>) = if norm <= THETA_3 {
            (3, vec![a2])
        } else if norm <= THETA_5 {
            let a4 = matmul(&a2, &a2);
            (5, vec![a2, a4])
        } else if norm <= THETA_7 {
            let a4 = matmul(&a2, &a2);
            let a6 = matmul(&a2, &a4);
            (7, vec![a2, a4, a6])
        } else {
            let a4 = matmul(&a2, &a2);
            let a6 = matmul(&a2, &a4);
            let a8 = matmul(&a2, &a6);
            (9, vec![a2, a4, a6, a8])
        };
        let b = pade_coeffs(m);
        let refs: Vec<&CMat> = powers.iter().collect();
        let (u, v) = pade_apply(a, &refs, &b);
        return pade_solve(&u, &v);
    }

    // Degree 13 with scaling.
    let s = ((norm / THETA_13).log2().ceil()).max(0.0) as u32;
    let scale = Complex64::new(2f64.powi(-(s as i32)), 0.0);
    let a_s = a.mapv(|z| z * scale);
    let a2 = matmul(&a_s, &a_s);
    let a4 = matmul(&a2, &a2);
    let a6 = matmul(&a2, &a4);
    let b = PADE_13;

    // U = A [ A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I ]
    let w1 = a6.mapv(|z| z * b[13]) + a4.mapv(|z| z * b[11]) + a2.mapv(|z| z * b[9]);
    let w2 = matmul(&a6, &w1)
        + a6.mapv(|z| z * b[7])
        + a4.mapv(|z| z * b[5])
        + a2.mapv(|z| z * b[3])
        + Array2::eye(n).mapv(|z: Complex64| z * b[1]);
    let u = matmul(&a_s, &w2);
    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let z1 = a6.mapv(|z| z * b[12]) + a4.mapv(|z| z * b[10]) + a2.mapv(|z| z * b[8]);
    let v = matmul(&a6, &z1)
        + a6.mapv(|z| z * b[6])
        + a4.mapv(|z| z * b[4])
        + a2.mapv(|z| z * b[2])
        + Array2::eye(n).mapv(|z: Complex64| z * b[0]);

    let mut r = pade_solve(&u, &v)?;
    for _ in 0..s {
        r = matmul(&r, &r);
    }
    Ok(r)
}

fn pade_solve(u: &CMat, v: &CMat) -> Result<CMat, LapackError> {
    // (V - U) X = (V + U)
    let denom = v - u;
    let numer = v + u;
    lapack::solve(&denom, &numer)
}

pub use crate::lapack::{
    eigen, eigen_hermitian, eigenvalues, eigenvalues_hermitian, singular_values,
    singular_values_vt, solve,
};

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vecc_respects_column_stacking_identity() {
        // vecc(A X B) = (B^T ⊗ A) vecc(X) on a fixed 3x3 triple.
        let a = array![
            [c(1.0, 0.5), c(0.0, 1.0), c(2.0, 0.0)],
            [c(0.3, 0.0), c(1.0, -1.0), c(0.0, 0.0)],
            [c(0.0, 2.0), c(0.7, 0.1), c(1.5, 0.0)]
        ];
        let x = array![
            [c(0.2, 0.1), c(1.0, 0.0), c(0.0, -1.0)],
            [c(0.9, 0.0), c(0.0, 0.4), c(1.1, 0.0)],
            [c(0.0, 0.0), c(2.0, 1.0), c(0.5, 0.5)]
        ];
        let b = array![
            [c(1.0, 0.0), c(0.0, 0.3), c(0.0, 0.0)],
            [c(0.5, 0.5), c(1.0, 0.0), c(0.2, 0.0)],
            [c(0.0, 1.0), c(0.0, 0.0), c(1.0, -0.5)]
        ];
        let lhs = vecc(&matmul(&matmul(&a, &x), &b));
        let rhs = matvec(&kron(&transpose(&b), &a), &vecc(&x));
        for (p, q) in lhs.iter().zip(rhs.iter()) {
            assert!((p - q).norm() < 1e-12);
        }
    }

    #[test]
    fn unvecc_inverts_vecc() {
        let x = array![[c(1.0, 2.0), c(3.0, 4.0)], [c(5.0, 6.0), c(7.0, 8.0)]];
        assert_eq!(unvecc(&vecc(&x), 2), x);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z: CMat = Array2::zeros((4, 4));
        let e = expm(&z).unwrap();
        assert!(frobenius_norm(&(&e - &identity(4))) < 1e-15);
    }

    #[test]
    fn expm_of_diagonal() {
        let mut d: CMat = Array2::zeros((3, 3));
        d[[0, 0]] = c(1.0, 0.0);
        d[[1, 1]] = c(-2.0, 0.0);
        d[[2, 2]] = c(0.0, 3.0);
        let e = expm(&d).unwrap();
        assert!((e[[0, 0]] - c(1.0f64.exp(), 0.0)).norm() < 1e-13);
        assert!((e[[1, 1]] - c((-2.0f64).exp(), 0.0)).norm() < 1e-14);
        assert!((e[[2, 2]] - Complex64::new(0.0, 3.0).exp()).norm() < 1e-14);
    }

    #[test]
    fn expm_of_pauli_x_rotation() {
        // exp(-i t X) = cos(t) I - i sin(t) X
        let t = 1.7f64;
        let x = array![[ZERO, ONE], [ONE, ZERO]];
        let a = x.mapv(|z| z * c(0.0, -t));
        let e = expm(&a).unwrap();
        let expected = array![
            [c(t.cos(), 0.0), c(0.0, -t.sin())],
            [c(0.0, -t.sin()), c(t.cos(), 0.0)]
        ];
        assert!(frobenius_norm(&(&e - &expected)) < 1e-13);
    }

    #[test]
    fn expm_large_norm_uses_squaring() {
        // Nilpotent matrix: exp is exactly I + N regardless of norm.
        let mut n: CMat = Array2::zeros((2, 2));
        n[[0, 1]] = c(40.0, 0.0);
        let e = expm(&n).unwrap();
        assert!((e[[0, 0]] - ONE).norm() < 1e-12);
        assert!((e[[0, 1]] - c(40.0, 0.0)).norm() < 1e-10);
        assert!((e[[1, 1]] - ONE).norm() < 1e-12);
        assert!(e[[1, 0]].norm() < 1e-12);
    }

    #[test]
    fn expm_group_property() {
        let a = array![
            [c(0.1, 0.2), c(0.5, -0.3), c(0.0, 0.4)],
            [c(-0.2, 0.0), c(0.0, 0.1), c(0.3, 0.0)],
            [c(0.7, 0.1), c(0.0, -0.6), c(-0.4, 0.0)]
        ];
        let e1 = expm(&a).unwrap();
        let e2 = expm(&a.mapv(|z| z * c(2.0, 0.0))).unwrap();
        let sq = matmul(&e1, &e1);
        assert!(frobenius_norm(&(&sq - &e2)) < 1e-12);
    }

    #[test]
    fn one_norm_is_max_column_sum() {
        let a = array![[c(1.0, 0.0), c(-3.0, 4.0)], [c(0.0, 2.0), c(1.0, 0.0)]];
        // column 0: 1 + 2 = 3; column 1: 5 + 1 = 6
        assert!((one_norm(&a) - 6.0).abs() < 1e-15);
    }
}
