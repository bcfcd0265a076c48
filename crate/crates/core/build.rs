fn main() {
    // System LAPACK for the dense eigenvalue routines in `shiftspec::eig`.
    println!("cargo:rustc-link-lib=dylib=lapack");
    println!("cargo:rustc-link-lib=dylib=blas");
}
