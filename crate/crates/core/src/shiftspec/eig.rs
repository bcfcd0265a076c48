//! Thin bindings to the system LAPACK eigensolvers.
//!
//! Only two routines are needed: `zgeev` for the spectra of (small, dense)
//! cyclic shift truncations and `zheev` for bottom eigenvalues of assembled
//! positive operators. Matrices are handed over in column-major order and
//! all workspace bookkeeping stays inside this module.

use num_complex::Complex64;

extern "C" {
    fn zgeev_(
        jobvl: *const u8,
        jobvr: *const u8,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        w: *mut Complex64,
        vl: *mut Complex64,
        ldvl: *const i32,
        vr: *mut Complex64,
        ldvr: *const i32,
        work: *mut Complex64,
        lwork: *const i32,
        rwork: *mut f64,
        info: *mut i32,
    );

    fn zheev_(
        jobz: *const u8,
        uplo: *const u8,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        w: *mut f64,
        work: *mut Complex64,
        lwork: *const i32,
        rwork: *mut f64,
        info: *mut i32,
    );
}

/// Eigenvalues of a general complex `n x n` matrix given column-major.
/// Panics if LAPACK reports a convergence failure.
pub fn complex_eigenvalues(mut a: Vec<Complex64>, n: usize) -> Vec<Complex64> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    let n_i = n as i32;
    let mut w = vec![Complex64::ZERO; n];
    let lwork = (4 * n) as i32;
    let mut work = vec![Complex64::ZERO; lwork as usize];
    let mut rwork = vec![0f64; 2 * n];
    let mut info = 0i32;
    let one = 1i32;
    unsafe {
        zgeev_(
            b"N".as_ptr(),
            b"N".as_ptr(),
            &n_i,
            a.as_mut_ptr(),
            &n_i,
            w.as_mut_ptr(),
            std::ptr::null_mut(),
            &one,
            std::ptr::null_mut(),
            &one,
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    assert_eq!(info, 0, "zgeev returned info = {info}");
    w
}

/// Ascending eigenvalues of a Hermitian `n x n` matrix given column-major.
pub fn hermitian_eigenvalues(mut a: Vec<Complex64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    let n_i = n as i32;
    let mut w = vec![0f64; n];
    let lwork = (4 * n) as i32;
    let mut work = vec![Complex64::ZERO; lwork as usize];
    let mut rwork = vec![0f64; (3 * n).saturating_sub(2).max(1)];
    let mut info = 0i32;
    unsafe {
        zheev_(
            b"N".as_ptr(),
            b"U".as_ptr(),
            &n_i,
            a.as_mut_ptr(),
            &n_i,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    assert_eq!(info, 0, "zheev returned info = {info}");
    w
}
