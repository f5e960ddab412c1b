//! The hidden-variable operator algebra acting on phase-space wavefunctions.
//!
//! Position and velocity act by multiplication in the (x, v) representation;
//! their conjugates `lambda_x`, `lambda_v` act as `-i d/dx`, `-i d/dv`
//! through the spectral (transform) derivative, which keeps every operator
//! exactly Hermitian on the periodic grid. The Liouvillian combines them as
//! `L = v*lambda_x + (F(x)/m)*lambda_v`; each of its two terms pairs a
//! multiplication on one axis with a derivative on the other, so the product
//! is Hermitian term by term.
//!
//! `to_dense` exports any operator as an explicit matrix at tiny grid sizes
//! (N = nx*nv <= 4096) for commutator, Hermiticity, and Heisenberg-evolution
//! verification. On a finite grid the canonical commutators `[x, lambda_x]`
//! and `[v, lambda_v]` cannot equal `i` as matrix identities (the trace of a
//! commutator vanishes), so those are checked in expectation on band-limited
//! interior states; the six vanishing commutators do hold as matrices.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{KvnError, Result};
use crate::fft::{fft_cols, fft_rows, plan_axis};
use crate::grid::PhaseSpaceGrid;
use crate::potential::PotentialSpec;
use crate::wavefunction::{Representation, WaveFunction};

/// Largest flattened dimension accepted by [`to_dense`].
pub const DENSE_MAX: usize = 4096;

#[derive(Debug, Clone)]
pub enum OperatorId {
    /// Multiplication by the position coordinate.
    X,
    /// Multiplication by the velocity coordinate.
    V,
    /// `-i d/dx`, diagonal in the `(lambda_x, v)` representation.
    LambdaX,
    /// `-i d/dv`, diagonal in the `(x, lambda_v)` representation.
    LambdaV,
    /// Multiplication by the force `F(x)`.
    Force(PotentialSpec),
    /// `v*lambda_x + (F(x)/m)*lambda_v`, the generator of time evolution.
    Liouvillian { potential: PotentialSpec, mass: f64 },
}

impl OperatorId {
    pub fn label(&self) -> String {
        match self {
            OperatorId::X => "x".into(),
            OperatorId::V => "v".into(),
            OperatorId::LambdaX => "lambda_x".into(),
            OperatorId::LambdaV => "lambda_v".into(),
            OperatorId::Force(p) => format!("F[{}]", p.label()),
            OperatorId::Liouvillian { potential, mass } => {
                format!("L[{}, m={mass}]", potential.label())
            }
        }
    }
}

fn require_xv(psi: &WaveFunction) -> Result<()> {
    if psi.rep != Representation::XV {
        return Err(KvnError::RepMismatch {
            expected: Representation::XV.to_string(),
            found: psi.rep.to_string(),
        });
    }
    Ok(())
}

/// `-i d/dx` by forward transform, multiplication by kx, inverse transform.
fn lambda_x_field(grid: &PhaseSpaceGrid, data: &Array2<Complex64>) -> Array2<Complex64> {
    let mut out = data.clone();
    let plan = plan_axis(grid.nx);
    let mut work = Array2::zeros((grid.nv, grid.nx));
    let mut scratch = Vec::new();
    fft_cols(&mut out, &plan.fwd, &mut work, &mut scratch);
    for k in 0..grid.nx {
        let f = Complex64::new(grid.kx[k], 0.0);
        out.row_mut(k).mapv_inplace(|z| z * f);
    }
    fft_cols(&mut out, &plan.inv, &mut work, &mut scratch);
    let s = Complex64::new(1.0 / grid.nx as f64, 0.0);
    out.mapv_inplace(|z| z * s);
    out
}

/// `-i d/dv`, same construction along the velocity axis.
fn lambda_v_field(grid: &PhaseSpaceGrid, data: &Array2<Complex64>) -> Array2<Complex64> {
    let mut out = data.clone();
    let plan = plan_axis(grid.nv);
    let mut scratch = Vec::new();
    fft_rows(&mut out, &plan.fwd, &mut scratch);
    for k in 0..grid.nv {
        let f = Complex64::new(grid.kv[k], 0.0);
        out.column_mut(k).mapv_inplace(|z| z * f);
    }
    fft_rows(&mut out, &plan.inv, &mut scratch);
    let s = Complex64::new(1.0 / grid.nv as f64, 0.0);
    out.mapv_inplace(|z| z * s);
    out
}

/// Force samples on the position axis, checked finite.
fn force_samples(grid: &PhaseSpaceGrid, potential: &PotentialSpec) -> Result<Vec<f64>> {
    let f: Vec<f64> = grid.x.iter().map(|&x| potential.force(x)).collect();
    if f.iter().any(|v| !v.is_finite()) {
        return Err(KvnError::NonFinite("potential force evaluation"));
    }
    Ok(f)
}

/// Apply an operator to a wavefunction in the (x, v) representation.
pub fn apply(op: &OperatorId, psi: &WaveFunction) -> Result<WaveFunction> {
    require_xv(psi)?;
    let grid = &psi.grid;
    let data = match op {
        OperatorId::X => {
            let mut out = psi.data.clone();
            for (i, mut row) in out.rows_mut().into_iter().enumerate() {
                let x = Complex64::new(grid.x[i], 0.0);
                row.mapv_inplace(|z| z * x);
            }
            out
        }
        OperatorId::V => {
            let mut out = psi.data.clone();
            for j in 0..grid.nv {
                let v = Complex64::new(grid.v[j], 0.0);
                out.column_mut(j).mapv_inplace(|z| z * v);
            }
            out
        }
        OperatorId::LambdaX => lambda_x_field(grid, &psi.data),
        OperatorId::LambdaV => lambda_v_field(grid, &psi.data),
        OperatorId::Force(potential) => {
            let f = force_samples(grid, potential)?;
            let mut out = psi.data.clone();
            for (i, mut row) in out.rows_mut().into_iter().enumerate() {
                let fx = Complex64::new(f[i], 0.0);
                row.mapv_inplace(|z| z * fx);
            }
            out
        }
        OperatorId::Liouvillian { potential, mass } => {
            let f = force_samples(grid, potential)?;
            let stream = lambda_x_field(grid, &psi.data);
            let kick = lambda_v_field(grid, &psi.data);
            let mut out = Array2::zeros((grid.nx, grid.nv));
            for i in 0..grid.nx {
                let a = Complex64::new(f[i] / mass, 0.0);
                for j in 0..grid.nv {
                    let v = Complex64::new(grid.v[j], 0.0);
                    out[[i, j]] = v * stream[[i, j]] + a * kick[[i, j]];
                }
            }
            out
        }
    };
    Ok(WaveFunction {
        grid: grid.clone(),
        data,
        rep: Representation::XV,
    })
}

/// Explicit matrix form of a grid operator, indexed by the flattened
/// x-major grid order.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    pub label: String,
    pub matrix: Array2<Complex64>,
    pub grid: PhaseSpaceGrid,
}

impl DenseOperator {
    pub fn from_matrix(label: impl Into<String>, matrix: Array2<Complex64>, grid: &PhaseSpaceGrid) -> Self {
        Self {
            label: label.into(),
            matrix,
            grid: grid.clone(),
        }
    }

    /// Apply the matrix to a wavefunction by flattening, multiplying, and
    /// reshaping.
    pub fn act(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        if !self.grid.same_layout(&psi.grid) {
            return Err(KvnError::GridMismatch);
        }
        require_xv(psi)?;
        let n = self.grid.len();
        let flat = psi
            .data
            .as_slice()
            .expect("field must be contiguous")
            .to_vec();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, row) in self.matrix.rows().into_iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, &x) in row.iter().zip(flat.iter()) {
                acc += m * x;
            }
            out[i] = acc;
        }
        let data = Array2::from_shape_vec((self.grid.nx, self.grid.nv), out)
            .expect("shape preserved");
        Ok(WaveFunction {
            grid: self.grid.clone(),
            data,
            rep: Representation::XV,
        })
    }

    /// Expectation `<psi| M |psi>` under the discrete (x, v) inner product.
    pub fn expectation(&self, psi: &WaveFunction) -> Result<Complex64> {
        let m_psi = self.act(psi)?;
        psi.inner_product(&m_psi)
    }
}

/// Export an operator as an explicit matrix by applying it to every basis
/// vector. Guarded to tiny grids.
pub fn to_dense(op: &OperatorId, grid: &PhaseSpaceGrid) -> Result<DenseOperator> {
    let n = grid.len();
    if n > DENSE_MAX {
        return Err(KvnError::GridTooLarge { n, max: DENSE_MAX });
    }
    let mut matrix = Array2::zeros((n, n));
    let mut basis = WaveFunction {
        grid: grid.clone(),
        data: Array2::zeros((grid.nx, grid.nv)),
        rep: Representation::XV,
    };
    for col in 0..n {
        let (ix, iv) = (col / grid.nv, col % grid.nv);
        basis.data[[ix, iv]] = Complex64::new(1.0, 0.0);
        let out = apply(op, &basis)?;
        let flat = out.data.as_slice().expect("contiguous");
        for (row, &z) in flat.iter().enumerate() {
            matrix[[row, col]] = z;
        }
        basis.data[[ix, iv]] = Complex64::new(0.0, 0.0);
    }
    Ok(DenseOperator {
        label: op.label(),
        matrix,
        grid: grid.clone(),
    })
}

/// `AB - BA`.
pub fn commutator(a: &DenseOperator, b: &DenseOperator) -> Result<DenseOperator> {
    if !a.grid.same_layout(&b.grid) {
        return Err(KvnError::GridMismatch);
    }
    let m = a.matrix.dot(&b.matrix) - b.matrix.dot(&a.matrix);
    Ok(DenseOperator {
        label: format!("[{}, {}]", a.label, b.label),
        matrix: m,
        grid: a.grid.clone(),
    })
}

/// The acceleration observable `i[L, v]` as a dense matrix. On band-limited
/// interior states it acts as multiplication by `F(x)/m`.
pub fn acceleration_observable(
    grid: &PhaseSpaceGrid,
    potential: &PotentialSpec,
    mass: f64,
) -> Result<DenseOperator> {
    let liouville = to_dense(
        &OperatorId::Liouvillian {
            potential: potential.clone(),
            mass,
        },
        grid,
    )?;
    let v = to_dense(&OperatorId::V, grid)?;
    let comm = commutator(&liouville, &v)?;
    let matrix = comm.matrix.mapv(|z| z * Complex64::i());
    Ok(DenseOperator {
        label: format!("i[{}, v]", liouville.label),
        matrix,
        grid: grid.clone(),
    })
}
