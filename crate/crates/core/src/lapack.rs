//! Thin safe wrappers over the system LAPACKE/CBLAS routines used by this
//! crate. All matrices are row-major `ndarray::Array2<Complex64>`.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use thiserror::Error;

const ROW_MAJOR: i32 = 101;
const CBLAS_ROW_MAJOR: i32 = 101;
const CBLAS_NO_TRANS: i32 = 111;

#[link(name = "lapacke")]
extern "C" {
    fn LAPACKE_zgeev(
        matrix_layout: i32,
        jobvl: i8,
        jobvr: i8,
        n: i32,
        a: *mut Complex64,
        lda: i32,
        w: *mut Complex64,
        vl: *mut Complex64,
        ldvl: i32,
        vr: *mut Complex64,
        ldvr: i32,
    ) -> i32;

    fn LAPACKE_zheev(
        matrix_layout: i32,
        jobz: i8,
        uplo: i8,
        n: i32,
        a: *mut Complex64,
        lda: i32,
        w: *mut f64,
    ) -> i32;

    fn LAPACKE_zgesvd(
        matrix_layout: i32,
        jobu: i8,
        jobvt: i8,
        m: i32,
        n: i32,
        a: *mut Complex64,
        lda: i32,
        s: *mut f64,
        u: *mut Complex64,
        ldu: i32,
        vt: *mut Complex64,
        ldvt: i32,
        superb: *mut f64,
    ) -> i32;

    fn LAPACKE_zgesv(
        matrix_layout: i32,
        n: i32,
        nrhs: i32,
        a: *mut Complex64,
        lda: i32,
        ipiv: *mut i32,
        b: *mut Complex64,
        ldb: i32,
    ) -> i32;
}

#[link(name = "openblas")]
extern "C" {
    fn cblas_zgemm(
        layout: i32,
        trans_a: i32,
        trans_b: i32,
        m: i32,
        n: i32,
        k: i32,
        alpha: *const Complex64,
        a: *const Complex64,
        lda: i32,
        b: *const Complex64,
        ldb: i32,
        beta: *const Complex64,
        c: *mut Complex64,
        ldc: i32,
    );
}

#[derive(Debug, Error)]
pub enum LapackError {
    #[error("invalid argument {0} passed to {1}")]
    BadArgument(i32, &'static str),
    #[error("{0} failed to converge (info = {1})")]
    NoConvergence(&'static str, i32),
    #[error("matrix is singular to working precision (U[{0},{0}] = 0)")]
    Singular(i32),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
}

fn check_info(info: i32, routine: &'static str) -> Result<(), LapackError> {
    if info < 0 {
        Err(LapackError::BadArgument(-info, routine))
    } else if info > 0 {
        Err(LapackError::NoConvergence(routine, info))
    } else {
        Ok(())
    }
}

fn contiguous(a: &Array2<Complex64>) -> Vec<Complex64> {
    a.iter().copied().collect()
}

/// C = A · B via BLAS.
pub fn matmul(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (m, k) = a.dim();
    let (k2, n) = b.dim();
    assert_eq!(k, k2, "matmul dimension mismatch: {}x{} * {}x{}", m, k, k2, n);
    let a_buf = contiguous(a);
    let b_buf = contiguous(b);
    let mut c = vec![Complex64::new(0.0, 0.0); m * n];
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    unsafe {
        cblas_zgemm(
            CBLAS_ROW_MAJOR,
            CBLAS_NO_TRANS,
            CBLAS_NO_TRANS,
            m as i32,
            n as i32,
            k as i32,
            &one,
            a_buf.as_ptr(),
            k as i32,
            b_buf.as_ptr(),
            n as i32,
            &zero,
            c.as_mut_ptr(),
            n as i32,
        );
    }
    Array2::from_shape_vec((m, n), c).expect("zgemm output shape")
}

/// Eigenvalues of a general complex square matrix.
pub fn eigenvalues(a: &Array2<Complex64>) -> Result<Array1<Complex64>, LapackError> {
    let (n, n2) = a.dim();
    if n != n2 {
        return Err(LapackError::NotSquare(n, n2));
    }
    if n == 0 {
        return Ok(Array1::zeros(0));
    }
    let mut buf = contiguous(a);
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    // vl/vr are never referenced for job 'N', but the row-major wrapper still
    // validates the leading dimensions against n.
    let mut dummy = [Complex64::new(0.0, 0.0)];
    let info = unsafe {
        LAPACKE_zgeev(
            ROW_MAJOR,
            b'N' as i8,
            b'N' as i8,
            n as i32,
            buf.as_mut_ptr(),
            n as i32,
            w.as_mut_ptr(),
            dummy.as_mut_ptr(),
            n as i32,
            dummy.as_mut_ptr(),
            n as i32,
        )
    };
    check_info(info, "zgeev")?;
    Ok(Array1::from_vec(w))
}

/// Eigenvalues and right eigenvectors of a general complex square matrix.
/// Column `j` of the returned matrix is the eigenvector for eigenvalue `j`.
pub fn eigen(
    a: &Array2<Complex64>,
) -> Result<(Array1<Complex64>, Array2<Complex64>), LapackError> {
    let (n, n2) = a.dim();
    if n != n2 {
        return Err(LapackError::NotSquare(n, n2));
    }
    let mut buf = contiguous(a);
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let mut vr = vec![Complex64::new(0.0, 0.0); n * n];
    // LAPACKE's row-major wrapper insists on ldvl >= n even for jobvl = 'N'.
    let mut vl = vec![Complex64::new(0.0, 0.0); n * n];
    let info = unsafe {
        LAPACKE_zgeev(
            ROW_MAJOR,
            b'N' as i8,
            b'V' as i8,
            n as i32,
            buf.as_mut_ptr(),
            n as i32,
            w.as_mut_ptr(),
            vl.as_mut_ptr(),
            n as i32,
            vr.as_mut_ptr(),
            n as i32,
        )
    };
    check_info(info, "zgeev")?;
    Ok((
        Array1::from_vec(w),
        Array2::from_shape_vec((n, n), vr).expect("zgeev vr shape"),
    ))
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues ascending,
/// columns of the returned matrix are an orthonormal eigenbasis.
pub fn eigen_hermitian(
    a: &Array2<Complex64>,
) -> Result<(Array1<f64>, Array2<Complex64>), LapackError> {
    let (n, n2) = a.dim();
    if n != n2 {
        return Err(LapackError::NotSquare(n, n2));
    }
    let mut buf = contiguous(a);
    let mut w = vec![0.0f64; n];
    let info = unsafe {
        LAPACKE_zheev(
            ROW_MAJOR,
            b'V' as i8,
            b'L' as i8,
            n as i32,
            buf.as_mut_ptr(),
            n as i32,
            w.as_mut_ptr(),
        )
    };
    check_info(info, "zheev")?;
    Ok((
        Array1::from_vec(w),
        Array2::from_shape_vec((n, n), buf).expect("zheev shape"),
    ))
}

/// Eigenvalues only of a Hermitian matrix, ascending.
pub fn eigenvalues_hermitian(a: &Array2<Complex64>) -> Result<Array1<f64>, LapackError> {
    let (n, n2) = a.dim();
    if n != n2 {
        return Err(LapackError::NotSquare(n, n2));
    }
    let mut buf = contiguous(a);
    let mut w = vec![0.0f64; n];
    let info = unsafe {
        LAPACKE_zheev(
            ROW_MAJOR,
            b'N' as i8,
            b'L' as i8,
            n as i32,
            buf.as_mut_ptr(),
            n as i32,
            w.as_mut_ptr(),
        )
    };
    check_info(info, "zheev")?;
    Ok(Array1::from_vec(w))
}

/// Full singular value decomposition A = U diag(s) V†. Returns (s, V†) with
/// singular values descending; U is not needed by any caller.
pub fn singular_values_vt(
    a: &Array2<Complex64>,
) -> Result<(Array1<f64>, Array2<Complex64>), LapackError> {
    let (m, n) = a.dim();
    let mn = m.min(n);
    let mut buf = contiguous(a);
    let mut s = vec![0.0f64; mn];
    let mut vt = vec![Complex64::new(0.0, 0.0); n * n];
    let mut dummy_u = [Complex64::new(0.0, 0.0)];
    let mut superb = vec![0.0f64; mn.saturating_sub(1).max(1)];
    let info = unsafe {
        LAPACKE_zgesvd(
            ROW_MAJOR,
            b'N' as i8,
            b'A' as i8,
            m as i32,
            n as i32,
            buf.as_mut_ptr(),
            n as i32,
            s.as_mut_ptr(),
            dummy_u.as_mut_ptr(),
            1,
            vt.as_mut_ptr(),
            n as i32,
            superb.as_mut_ptr(),
        )
    };
    check_info(info, "zgesvd")?;
    Ok((
        Array1::from_vec(s),
        Array2::from_shape_vec((n, n), vt).expect("zgesvd vt shape"),
    ))
}

/// Singular values only, descending.
pub fn singular_values(a: &Array2<Complex64>) -> Result<Array1<f64>, LapackError> {
    let (m, n) = a.dim();
    let mn = m.min(n);
    let mut buf = contiguous(a);
    let mut s = vec![0.0f64; mn];
    let mut dummy = [Complex64::new(0.0, 0.0)];
    let mut superb = vec![0.0f64; mn.saturating_sub(1).max(1)];
    let info = unsafe {
        LAPACKE_zgesvd(
            ROW_MAJOR,
            b'N' as i8,
            b'N' as i8,
            m as i32,
            n as i32,
            buf.as_mut_ptr(),
            n as i32,
            s.as_mut_ptr(),
            dummy.as_mut_ptr(),
            1,
            dummy.as_mut_ptr(),
            1,
            superb.as_mut_ptr(),
        )
    };
    check_info(info, "zgesvd")?;
    Ok(Array1::from_vec(s))
}

/// Solve A X = B for X with LU factorization. B's columns are rhs vectors.
pub fn solve(
    a: &Array2<Complex64>,
    b: &Array2<Complex64>,
) -> Result<Array2<Complex64>, LapackError> {
    let (n, n2) = a.dim();
    if n != n2 {
        return Err(LapackError::NotSquare(n, n2));
    }
    let (bn, nrhs) = b.dim();
    assert_eq!(n, bn, "solve dimension mismatch");
    let mut a_buf = contiguous(a);
    let mut b_buf = contiguous(b);
    let mut ipiv = vec![0i32; n];
    let info = unsafe {
        LAPACKE_zgesv(
            ROW_MAJOR,
            n as i32,
            nrhs as i32,
            a_buf.as_mut_ptr(),
            n as i32,
            ipiv.as_mut_ptr(),
            b_buf.as_mut_ptr(),
            nrhs as i32,
        )
    };
    if info > 0 {
        return Err(LapackError::Singular(info));
    }
    check_info(info, "zgesv")?;
    Ok(Array2::from_shape_vec((n, nrhs), b_buf).expect("zgesv shape"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matmul_matches_naive() {
        let a = array![[c(1.0, 1.0), c(2.0, 0.0)], [c(0.0, -1.0), c(3.0, 2.0)]];
        let b = array![[c(0.5, 0.0), c(1.0, -1.0)], [c(2.0, 1.0), c(0.0, 0.0)]];
        let fast = matmul(&a, &b);
        let slow = a.dot(&b);
        for (x, y) in fast.iter().zip(slow.iter()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn eigen_reconstructs_diagonalizable_matrix() {
        // A v_j = w_j v_j for every returned pair.
        let a = array![
            [c(1.0, 0.0), c(2.0, 1.0), c(0.0, 0.0)],
            [c(0.0, 1.0), c(-1.0, 0.0), c(1.0, 0.0)],
            [c(3.0, 0.0), c(0.0, 0.0), c(0.5, -0.5)]
        ];
        let (w, vr) = eigen(&a).unwrap();
        for j in 0..3 {
            let v = vr.column(j);
            let av = a.dot(&v);
            for i in 0..3 {
                assert!((av[i] - w[j] * v[i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_y() {
        let y = array![[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
        let (w, u) = eigen_hermitian(&y).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-14);
        assert!((w[1] - 1.0).abs() < 1e-14);
        // columns are orthonormal
        let dot: Complex64 = u
            .column(0)
            .iter()
            .zip(u.column(1).iter())
            .map(|(x, y)| x.conj() * y)
            .sum();
        assert!(dot.norm() < 1e-14);
    }

    #[test]
    fn svd_of_rank_one_matrix() {
        let a = array![[c(1.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(1.0, 0.0)]];
        let (s, _vt) = singular_values_vt(&a).unwrap();
        assert!((s[0] - 2.0).abs() < 1e-12);
        assert!(s[1].abs() < 1e-12);
    }

    #[test]
    fn solve_roundtrip() {
        let a = array![[c(2.0, 0.0), c(1.0, 1.0)], [c(0.0, -1.0), c(3.0, 0.0)]];
        let b = array![[c(1.0, 0.0)], [c(0.0, 1.0)]];
        let x = solve(&a, &b).unwrap();
        let ax = a.dot(&x);
        for (u, v) in ax.iter().zip(b.iter()) {
            assert!((u - v).norm() < 1e-13);
        }
    }

    #[test]
    fn singular_matrix_reported() {
        let a = array![[c(1.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(1.0, 0.0)]];
        let b = array![[c(1.0, 0.0)], [c(0.0, 0.0)]];
        assert!(matches!(solve(&a, &b), Err(LapackError::Singular(_))));
    }
}
