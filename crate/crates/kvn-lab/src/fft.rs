//! Thin axis-wise FFT helpers over 2D complex fields.
//!
//! Fields have shape `(nx, nv)` in row-major order, so the v axis is
//! contiguous. Column (x-axis) transforms go through a transposed work
//! buffer. All transforms here are unnormalized; callers apply the
//! normalization that makes their particular operation unitary.

use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

pub(crate) struct AxisFft {
    pub fwd: Arc<dyn Fft<f64>>,
    pub inv: Arc<dyn Fft<f64>>,
}

pub(crate) fn plan_axis(n: usize) -> AxisFft {
    let mut planner = FftPlanner::new();
    AxisFft {
        fwd: planner.plan_fft_forward(n),
        inv: planner.plan_fft_inverse(n),
    }
}

fn run_chunks(fft: &Arc<dyn Fft<f64>>, buffer: &mut [Complex64], scratch: &mut Vec<Complex64>) {
    let need = fft.get_inplace_scratch_len();
    if scratch.len() < need {
        scratch.resize(need, Complex64::new(0.0, 0.0));
    }
    fft.process_with_scratch(buffer, scratch);
}

/// Transform every row (the v axis) of `data`, in place.
pub(crate) fn fft_rows(
    data: &mut Array2<Complex64>,
    fft: &Arc<dyn Fft<f64>>,
    scratch: &mut Vec<Complex64>,
) {
    let buf = data.as_slice_mut().expect("field must be contiguous");
    run_chunks(fft, buf, scratch);
}

pub(crate) fn transpose_into(src: &Array2<Complex64>, dst: &mut Array2<Complex64>) {
    let (rows, cols) = src.dim();
    debug_assert_eq!(dst.dim(), (cols, rows));
    let s = src.as_slice().expect("src must be contiguous");
    let d = dst.as_slice_mut().expect("dst must be contiguous");
    const TILE: usize = 16;
    let mut i0 = 0;
    while i0 < rows {
        let i1 = (i0 + TILE).min(rows);
        let mut j0 = 0;
        while j0 < cols {
            let j1 = (j0 + TILE).min(cols);
            for i in i0..i1 {
                for j in j0..j1 {
                    d[j * rows + i] = s[i * cols + j];
                }
            }
            j0 = j1;
        }
        i0 = i1;
    }
}

/// Transform every column (the x axis) of `data`, in place, using `work`
/// as an `(nv, nx)` transposed staging buffer.
pub(crate) fn fft_cols(
    data: &mut Array2<Complex64>,
    fft: &Arc<dyn Fft<f64>>,
    work: &mut Array2<Complex64>,
    scratch: &mut Vec<Complex64>,
) {
    transpose_into(data, work);
    let buf = work.as_slice_mut().expect("work must be contiguous");
    run_chunks(fft, buf, scratch);
    transpose_into(work, data);
}
