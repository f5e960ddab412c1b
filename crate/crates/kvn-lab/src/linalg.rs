//! Small dense complex-matrix helpers used by the verification paths.
//!
//! Matrices here are desk-scale (N <= 4096, and N = 256 in practice for the
//! Heisenberg checks), so plain `ndarray` storage with a Pade(13)
//! scaling-and-squaring exponential and a partial-pivot solver is plenty.

use ndarray::Array2;
use num_complex::Complex64;

pub fn identity(n: usize) -> Array2<Complex64> {
    Array2::from_diag_elem(n, Complex64::new(1.0, 0.0))
}

pub fn adjoint(m: &Array2<Complex64>) -> Array2<Complex64> {
    m.t().mapv(|z| z.conj())
}

/// Largest entry modulus; the matrix max-norm used by the checks.
pub fn max_abs(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `||M - M^dagger||_max`, zero for Hermitian matrices.
pub fn hermiticity_defect(m: &Array2<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let d = (m[[i, j]] - m[[j, i]].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

fn one_norm(m: &Array2<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..m.ncols() {
        let s: f64 = m.column(j).iter().map(|z| z.norm()).sum();
        worst = worst.max(s);
    }
    worst
}

// Pade(13) numerator coefficients (the denominator uses alternating signs).
const PADE13: [f64; 14] = [
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

/// Matrix exponential by scaling-and-squaring with a Pade(13) approximant.
pub fn matrix_exp(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix_exp needs a square matrix");

    let theta13 = 5.371_920_351_148_152;
    let norm = one_norm(a);
    let s = if norm > theta13 {
        (norm / theta13).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(1.0 / f64::powi(2.0, s as i32), 0.0);
    let a1 = a.mapv(|z| z * scale);

    let a2 = a1.dot(&a1);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let eye = identity(n);

    let c = |k: usize| Complex64::new(PADE13[k], 0.0);
    let w1 = &a6 * c(13) + &a4 * c(11) + &a2 * c(9);
    let w2 = a6.dot(&w1) + &a6 * c(7) + &a4 * c(5) + &a2 * c(3) + &eye * c(1);
    let u = a1.dot(&w2);
    let z1 = &a6 * c(12) + &a4 * c(10) + &a2 * c(8);
    let v = a6.dot(&z1) + &a6 * c(6) + &a4 * c(4) + &a2 * c(2) + &eye * c(0);

    let mut f = solve_linear(&(&v - &u), &(&v + &u));
    for _ in 0..s {
        f = f.dot(&f);
    }
    f
}

/// Solve `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve_linear(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let m = b.ncols();
    assert_eq!(n, a.ncols());
    assert_eq!(n, b.nrows());

    let mut lu = a.clone();
    let mut x = b.clone();

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = lu[[col, col]].norm();
        for row in col + 1..n {
            let mag = lu[[row, col]].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        assert!(pivot_mag > 0.0, "singular matrix in solve_linear");
        if pivot_row != col {
            for j in 0..n {
                lu.swap([col, j], [pivot_row, j]);
            }
            for j in 0..m {
                x.swap([col, j], [pivot_row, j]);
            }
        }
        let pivot = lu[[col, col]];
        for row in col + 1..n {
            let factor = lu[[row, col]] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = lu[[col, j]];
                lu[[row, j]] -= factor * v;
            }
            for j in 0..m {
                let v = x[[col, j]];
                x[[row, j]] -= factor * v;
            }
        }
    }

    for col in (0..n).rev() {
        let pivot = lu[[col, col]];
        for j in 0..m {
            let mut sum = x[[col, j]];
            for k in col + 1..n {
                sum -= lu[[col, k]] * x[[k, j]];
            }
            x[[col, j]] = sum / pivot;
        }
    }
    x
}
