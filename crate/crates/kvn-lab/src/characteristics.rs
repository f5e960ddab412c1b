//! The c-number dynamics underlying the operator equations.
//!
//! The classical trajectory solves Newton's equation with velocity Verlet.
//! The extended quadruple `(x, v, lambda_x, lambda_v)` solves the
//! Hamilton-like system
//!
//! ```text
//! dx/dt = v                 dv/dt = F(x)/m
//! d(lambda_x)/dt = -(F'(x)/m) * lambda_v
//! d(lambda_v)/dt = -lambda_x
//! ```
//!
//! integrated with classical Runge-Kutta; the coupling is one way, so the
//! (x, v) components never depend on the lambda initial data. The lambda
//! pair is the adjoint of the tangent flow: for any tangent perturbation
//! `(dx, dv)` propagated by the variational equation, the pairing
//! `lambda_x*dx + lambda_v*dv` is a constant of motion.
//!
//! The module also verifies the Heisenberg picture directly on tiny grids by
//! exponentiating the dense Liouvillian.

use num_complex::Complex64;

use crate::error::{KvnError, Result};
use crate::grid::PhaseSpaceGrid;
use crate::linalg;
use crate::observables::g17;
use crate::operators::{commutator, to_dense, DenseOperator, OperatorId};
use crate::potential::PotentialSpec;
use crate::wavefunction::WaveFunction;

#[derive(Debug, Clone)]
pub struct ClassicalPath {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub h: f64,
}

#[derive(Debug, Clone)]
pub struct ExtendedPath {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub lambda_x: Vec<f64>,
    pub lambda_v: Vec<f64>,
    pub h: f64,
}

impl ClassicalPath {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,v\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{},{},{}\n",
                g17(self.t[i]),
                g17(self.x[i]),
                g17(self.v[i])
            ));
        }
        out
    }
}

impl ExtendedPath {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// The (x, v) projection.
    pub fn classical(&self) -> ClassicalPath {
        ClassicalPath {
            t: self.t.clone(),
            x: self.x.clone(),
            v: self.v.clone(),
            h: self.h,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,v,lambda_x,lambda_v\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                g17(self.t[i]),
                g17(self.x[i]),
                g17(self.v[i]),
                g17(self.lambda_x[i]),
                g17(self.lambda_v[i])
            ));
        }
        out
    }
}

/// Velocity-Verlet integration of Newton's equation, optionally with a
/// constant acceleration bias used to manufacture off-shell paths.
pub(crate) fn verlet_with_bias(
    x0: f64,
    v0: f64,
    potential: &PotentialSpec,
    mass: f64,
    bias: f64,
    h: f64,
    n: usize,
) -> Result<ClassicalPath> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(KvnError::NonPositiveStep(h));
    }
    let accel = |x: f64| potential.force(x) / mass + bias;
    let mut t = Vec::with_capacity(n + 1);
    let mut xs = Vec::with_capacity(n + 1);
    let mut vs = Vec::with_capacity(n + 1);
    let mut x = x0;
    let mut v = v0;
    let mut a = accel(x);
    if !a.is_finite() {
        return Err(KvnError::NonFinite("potential force evaluation"));
    }
    t.push(0.0);
    xs.push(x);
    vs.push(v);
    for k in 1..=n {
        x += h * v + 0.5 * h * h * a;
        let a_new = accel(x);
        if !a_new.is_finite() {
            return Err(KvnError::NonFinite("potential force evaluation"));
        }
        v += 0.5 * h * (a + a_new);
        a = a_new;
        t.push(k as f64 * h);
        xs.push(x);
        vs.push(v);
    }
    Ok(ClassicalPath { t, x: xs, v: vs, h })
}

/// Second-order classical trajectory from `(x0, v0)`.
pub fn classical_trajectory(
    x0: f64,
    v0: f64,
    potential: &PotentialSpec,
    mass: f64,
    h: f64,
    n: usize,
) -> Result<ClassicalPath> {
    verlet_with_bias(x0, v0, potential, mass, 0.0, h, n)
}

/// Off-shell trajectory whose acceleration is `F/m + bias` everywhere.
pub fn biased_trajectory(
    x0: f64,
    v0: f64,
    potential: &PotentialSpec,
    mass: f64,
    bias: f64,
    h: f64,
    n: usize,
) -> Result<ClassicalPath> {
    verlet_with_bias(x0, v0, potential, mass, bias, h, n)
}

#[derive(Debug, Clone, Copy)]
struct ExtState {
    x: f64,
    v: f64,
    lx: f64,
    lv: f64,
}

fn ext_deriv(
    s: ExtState,
    potential: &PotentialSpec,
    mass: f64,
    bias: f64,
) -> Result<ExtState> {
    let f = potential.force(s.x);
    let fp = potential.force_prime(s.x)?;
    if !f.is_finite() || !fp.is_finite() {
        return Err(KvnError::NonFinite("potential force evaluation"));
    }
    Ok(ExtState {
        x: s.v,
        v: f / mass + bias,
        lx: -(fp / mass) * s.lv,
        lv: -s.lx,
    })
}

fn ext_axpy(s: ExtState, k: ExtState, c: f64) -> ExtState {
    ExtState {
        x: s.x + c * k.x,
        v: s.v + c * k.v,
        lx: s.lx + c * k.lx,
        lv: s.lv + c * k.lv,
    }
}

pub(crate) fn rk4_extended_with_bias(
    x0: f64,
    v0: f64,
    lambda_x0: f64,
    lambda_v0: f64,
    potential: &PotentialSpec,
    mass: f64,
    bias: f64,
    h: f64,
    n: usize,
) -> Result<ExtendedPath> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(KvnError::NonPositiveStep(h));
    }
    let mut path = ExtendedPath {
        t: Vec::with_capacity(n + 1),
        x: Vec::with_capacity(n + 1),
        v: Vec::with_capacity(n + 1),
        lambda_x: Vec::with_capacity(n + 1),
        lambda_v: Vec::with_capacity(n + 1),
        h,
    };
    let mut s = ExtState {
        x: x0,
        v: v0,
        lx: lambda_x0,
        lv: lambda_v0,
    };
    let push = |path: &mut ExtendedPath, t: f64, s: ExtState| {
        path.t.push(t);
        path.x.push(s.x);
        path.v.push(s.v);
        path.lambda_x.push(s.lx);
        path.lambda_v.push(s.lv);
    };
    push(&mut path, 0.0, s);
    for k in 1..=n {
        let k1 = ext_deriv(s, potential, mass, bias)?;
        let k2 = ext_deriv(ext_axpy(s, k1, 0.5 * h), potential, mass, bias)?;
        let k3 = ext_deriv(ext_axpy(s, k2, 0.5 * h), potential, mass, bias)?;
        let k4 = ext_deriv(ext_axpy(s, k3, h), potential, mass, bias)?;
        s = ExtState {
            x: s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            v: s.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
            lx: s.lx + h / 6.0 * (k1.lx + 2.0 * k2.lx + 2.0 * k3.lx + k4.lx),
            lv: s.lv + h / 6.0 * (k1.lv + 2.0 * k2.lv + 2.0 * k3.lv + k4.lv),
        };
        push(&mut path, k as f64 * h, s);
    }
    Ok(path)
}

/// Fourth-order integration of the extended `(x, v, lambda_x, lambda_v)`
/// system. The lambda initial data are free inputs; the (x, v) solution is
/// bitwise independent of them.
pub fn extended_trajectory(
    x0: f64,
    v0: f64,
    lambda_x0: f64,
    lambda_v0: f64,
    potential: &PotentialSpec,
    mass: f64,
    h: f64,
    n: usize,
) -> Result<ExtendedPath> {
    rk4_extended_with_bias(x0, v0, lambda_x0, lambda_v0, potential, mass, 0.0, h, n)
}

/// One particle of a multi-particle scenario: its mass, the potentials whose
/// forces sum on it, and initial data.
#[derive(Debug, Clone)]
pub struct ParticleSpec {
    pub mass: f64,
    pub potentials: Vec<PotentialSpec>,
    pub x0: f64,
    pub v0: f64,
    pub lambda_x0: f64,
    pub lambda_v0: f64,
}

impl ParticleSpec {
    pub fn force(&self, x: f64) -> f64 {
        self.potentials.iter().map(|p| p.force(x)).sum()
    }

    pub fn force_prime(&self, x: f64) -> Result<f64> {
        let mut acc = 0.0;
        for p in &self.potentials {
            acc += p.force_prime(x)?;
        }
        Ok(acc)
    }

    pub fn phi(&self, x: f64) -> f64 {
        self.potentials.iter().map(|p| p.phi(x)).sum()
    }
}

/// Integrate several independent particles, each with per-particle mass and
/// summed forces, on a shared time grid. Returns one extended path per
/// particle.
pub fn multi_extended_trajectory(
    particles: &[ParticleSpec],
    h: f64,
    n: usize,
) -> Result<Vec<ExtendedPath>> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(KvnError::NonPositiveStep(h));
    }
    let mut states: Vec<ExtState> = particles
        .iter()
        .map(|p| ExtState {
            x: p.x0,
            v: p.v0,
            lx: p.lambda_x0,
            lv: p.lambda_v0,
        })
        .collect();
    let mut paths: Vec<ExtendedPath> = particles
        .iter()
        .map(|_| ExtendedPath {
            t: Vec::with_capacity(n + 1),
            x: Vec::with_capacity(n + 1),
            v: Vec::with_capacity(n + 1),
            lambda_x: Vec::with_capacity(n + 1),
            lambda_v: Vec::with_capacity(n + 1),
            h,
        })
        .collect();

    let deriv = |p: &ParticleSpec, s: ExtState| -> Result<ExtState> {
        let f = p.force(s.x);
        let fp = p.force_prime(s.x)?;
        if !f.is_finite() || !fp.is_finite() {
            return Err(KvnError::NonFinite("potential force evaluation"));
        }
        Ok(ExtState {
            x: s.v,
            v: f / p.mass,
            lx: -(fp / p.mass) * s.lv,
            lv: -s.lx,
        })
    };

    for k in 0..=n {
        for (path, s) in paths.iter_mut().zip(states.iter()) {
            path.t.push(k as f64 * h);
            path.x.push(s.x);
            path.v.push(s.v);
            path.lambda_x.push(s.lx);
            path.lambda_v.push(s.lv);
        }
        if k == n {
            break;
        }
        for (p, s) in particles.iter().zip(states.iter_mut()) {
            let k1 = deriv(p, *s)?;
            let k2 = deriv(p, ext_axpy(*s, k1, 0.5 * h))?;
            let k3 = deriv(p, ext_axpy(*s, k2, 0.5 * h))?;
            let k4 = deriv(p, ext_axpy(*s, k3, h))?;
            *s = ExtState {
                x: s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                v: s.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
                lx: s.lx + h / 6.0 * (k1.lx + 2.0 * k2.lx + 2.0 * k3.lx + k4.lx),
                lv: s.lv + h / 6.0 * (k1.lv + 2.0 * k2.lv + 2.0 * k3.lv + k4.lv),
            };
        }
    }
    Ok(paths)
}

/// Largest flattened dimension accepted by the dense Heisenberg check.
pub const HEISENBERG_DENSE_MAX: usize = 256;

/// Results of the dense Heisenberg-picture verification.
#[derive(Debug, Clone, serde::Serialize)]
pub struct HeisenbergReport {
    pub times: Vec<f64>,
    /// `||U(t)^dagger U(t) - I||_max` per time.
    pub unitarity_defect: Vec<f64>,
    /// Worst deviation of `<phi|[x(t), lambda_x(t)]|phi>` from `i` over the
    /// interior test states, per time.
    pub commutator_x_dev: Vec<f64>,
    /// Same for `[v(t), lambda_v(t)]`.
    pub commutator_v_dev: Vec<f64>,
    /// `||(x(t+d) - x(t-d))/(2d) - i[L, x(t)]||_max` at the first time.
    pub heisenberg_residual_x: f64,
    /// Same for v.
    pub heisenberg_residual_v: f64,
    pub fd_delta: f64,
}

fn conjugate(u: &ndarray::Array2<Complex64>, m: &ndarray::Array2<Complex64>) -> ndarray::Array2<Complex64> {
    linalg::adjoint(u).dot(&m.dot(u))
}

/// Interior Gaussian states used for expectation checks on tiny grids. The
/// widths balance the aliasing tail against the boundary tail, which is the
/// best a 16-point axis can do.
pub fn interior_test_states(grid: &PhaseSpaceGrid, count: usize) -> Vec<WaveFunction> {
    let sx = 1.15 * grid.dx;
    let sv = 1.15 * grid.dv;
    let offsets = [
        (0.0, 0.0),
        (0.5, 0.0),
        (-0.5, 0.0),
        (0.0, 0.5),
        (0.0, -0.5),
        (0.5, 0.5),
        (-0.5, -0.5),
        (0.5, -0.5),
        (-0.5, 0.5),
        (0.25, -0.25),
        (-0.25, 0.25),
        (0.75, 0.25),
    ];
    offsets
        .iter()
        .cycle()
        .take(count)
        .map(|&(ax, av)| {
            let x0 = ax * grid.dx;
            let v0 = av * grid.dv;
            let mut psi = WaveFunction::from_fn(grid, |x, v| {
                let ex = (x - x0) / (2.0 * sx);
                let ev = (v - v0) / (2.0 * sv);
                Complex64::new((-ex * ex - ev * ev).exp(), 0.0)
            });
            psi.normalize();
            psi
        })
        .collect()
}

/// Build `U(t) = exp(-i L t)` densely, conjugate the operator set, and check
/// (a) unitarity, (b) preservation of the canonical equal-time commutators
/// in expectation on interior states, and (c) the Heisenberg equation of
/// motion `d(op)/dt = i[L, op(t)]` as a matrix identity via a centered
/// finite difference in t.
pub fn heisenberg_dense_check(
    grid: &PhaseSpaceGrid,
    potential: &PotentialSpec,
    mass: f64,
    times: &[f64],
    fd_delta: f64,
) -> Result<HeisenbergReport> {
    let n = grid.len();
    if n > HEISENBERG_DENSE_MAX {
        return Err(KvnError::GridTooLarge {
            n,
            max: HEISENBERG_DENSE_MAX,
        });
    }
    let liouville = to_dense(
        &OperatorId::Liouvillian {
            potential: potential.clone(),
            mass,
        },
        grid,
    )?;
    let x = to_dense(&OperatorId::X, grid)?;
    let v = to_dense(&OperatorId::V, grid)?;
    let lx = to_dense(&OperatorId::LambdaX, grid)?;
    let lv = to_dense(&OperatorId::LambdaV, grid)?;
    let states = interior_test_states(grid, 10);

    let gen = liouville.matrix.mapv(|z| z * Complex64::new(0.0, -1.0));
    let eye = linalg::identity(n);

    let mut report = HeisenbergReport {
        times: times.to_vec(),
        unitarity_defect: Vec::new(),
        commutator_x_dev: Vec::new(),
        commutator_v_dev: Vec::new(),
        heisenberg_residual_x: f64::NAN,
        heisenberg_residual_v: f64::NAN,
        fd_delta,
    };

    for &t in times {
        let u = linalg::matrix_exp(&gen.mapv(|z| z * Complex64::new(t, 0.0)));
        let defect = linalg::max_abs(&(linalg::adjoint(&u).dot(&u) - &eye));
        report.unitarity_defect.push(defect);

        let x_t = DenseOperator::from_matrix("x(t)", conjugate(&u, &x.matrix), grid);
        let v_t = DenseOperator::from_matrix("v(t)", conjugate(&u, &v.matrix), grid);
        let lx_t = DenseOperator::from_matrix("lambda_x(t)", conjugate(&u, &lx.matrix), grid);
        let lv_t = DenseOperator::from_matrix("lambda_v(t)", conjugate(&u, &lv.matrix), grid);

        let cx = commutator(&x_t, &lx_t)?;
        let cv = commutator(&v_t, &lv_t)?;
        let mut worst_x = 0.0f64;
        let mut worst_v = 0.0f64;
        for s in &states {
            worst_x = worst_x.max((cx.expectation(s)? - Complex64::i()).norm());
            worst_v = worst_v.max((cv.expectation(s)? - Complex64::i()).norm());
        }
        report.commutator_x_dev.push(worst_x);
        report.commutator_v_dev.push(worst_v);
    }

    // Heisenberg residual at the first requested time: U(t +/- d) found by
    // composing with exp(-i L d), which avoids two extra exponentials.
    if let Some(&t0) = times.first() {
        let u = linalg::matrix_exp(&gen.mapv(|z| z * Complex64::new(t0, 0.0)));
        let ud = linalg::matrix_exp(&gen.mapv(|z| z * Complex64::new(fd_delta, 0.0)));
        let u_plus = ud.dot(&u);
        let u_minus = linalg::adjoint(&ud).dot(&u);
        let inv_2d = Complex64::new(1.0 / (2.0 * fd_delta), 0.0);
        for (m, slot) in [
            (&x.matrix, &mut report.heisenberg_residual_x),
            (&v.matrix, &mut report.heisenberg_residual_v),
        ] {
            let m_t = conjugate(&u, m);
            let fd = (conjugate(&u_plus, m) - conjugate(&u_minus, m)).mapv(|z| z * inv_2d);
            let bracket = liouville.matrix.dot(&m_t) - m_t.dot(&liouville.matrix);
            let rhs = bracket.mapv(|z| z * Complex64::i());
            *slot = linalg::max_abs(&(&fd - &rhs));
        }
    }
    Ok(report)
}

/// Free-particle closed form: `x(t) = x + t v` under conjugation by
/// `U(t) = exp(-i t v lambda_x)`. On the periodic grid this holds on
/// band-limited states away from the wrap, so the check reports the worst
/// state-wise residual `||(x(t) - x - t v) phi|| / ||phi||` over interior
/// test states whose support stays clear of the boundary after shifting.
pub fn free_particle_heisenberg_residual(grid: &PhaseSpaceGrid, t: f64) -> Result<f64> {
    let n = grid.len();
    if n > HEISENBERG_DENSE_MAX {
        return Err(KvnError::GridTooLarge {
            n,
            max: HEISENBERG_DENSE_MAX,
        });
    }
    let free = PotentialSpec::Free;
    let liouville = to_dense(
        &OperatorId::Liouvillian {
            potential: free,
            mass: 1.0,
        },
        grid,
    )?;
    let x = to_dense(&OperatorId::X, grid)?;
    let v = to_dense(&OperatorId::V, grid)?;
    let gen = liouville
        .matrix
        .mapv(|z| z * Complex64::new(0.0, -t) / Complex64::new(1.0, 0.0));
    let u = linalg::matrix_exp(&gen);
    let x_t = conjugate(&u, &x.matrix);
    let expected = &x.matrix + &v.matrix.mapv(|z| z * Complex64::new(t, 0.0));
    let residual_op = DenseOperator::from_matrix("x(t) - x - t v", &x_t - &expected, grid);

    // States: narrow in x (small shifts keep them interior), centered a bit
    // off-axis in v so the velocity rows carry modest shifts, and placed on
    // the side the shift moves away from.
    let sx = 0.75 * grid.dx;
    let sv = 0.35 * grid.dv;
    let mut worst = 0.0f64;
    for (cx, cv) in [(-2.0, 1.0), (1.0, -1.0), (-2.0, 2.0), (1.0, -2.0), (-1.0, 1.0)] {
        let x0 = cx * grid.dx;
        let v0 = cv * grid.dv;
        let mut phi = WaveFunction::from_fn(grid, |xx, vv| {
            let ex = (xx - x0) / (2.0 * sx);
            let ev = (vv - v0) / (2.0 * sv);
            Complex64::new((-ex * ex - ev * ev).exp(), 0.0)
        });
        phi.normalize();
        let r = residual_op.act(&phi)?;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn harmonic() -> PotentialSpec {
        PotentialSpec::Harmonic { omega: 1.0 }
    }

    #[test]
    fn harmonic_quarter_period_matches_closed_form() {
        let h = 1e-4;
        let n = (0.5 * PI / h).round() as usize;
        let p = classical_trajectory(1.0, 0.0, &harmonic(), 1.0, h, n).unwrap();
        let t_end = n as f64 * h;
        assert!((p.x[n] - t_end.cos()).abs() < 1e-6);
        assert!((p.v[n] + t_end.sin()).abs() < 1e-6);
    }

    #[test]
    fn free_particle_is_exact() {
        let p = classical_trajectory(0.3, -1.2, &PotentialSpec::Free, 2.0, 0.01, 500).unwrap();
        for i in 0..=500 {
            assert!((p.x[i] - (0.3 - 1.2 * p.t[i])).abs() < 1e-12);
            assert_eq!(p.v[i], -1.2);
        }
    }

    #[test]
    fn quartic_matches_fine_step_reference() {
        let quartic = PotentialSpec::Quartic { a4: 1.0 };
        let coarse = classical_trajectory(1.0, 0.0, &quartic, 1.0, 1e-4, 10_000).unwrap();
        let fine = classical_trajectory(1.0, 0.0, &quartic, 1.0, 1e-6, 1_000_000).unwrap();
        let dev = (coarse.x[10_000] - fine.x[1_000_000]).abs();
        assert!(dev < 1e-8, "deviation from fine-step oracle: {dev}");
    }

    #[test]
    fn rejects_non_positive_step() {
        assert!(matches!(
            classical_trajectory(1.0, 0.0, &harmonic(), 1.0, 0.0, 10),
            Err(KvnError::NonPositiveStep(_))
        ));
    }

    #[test]
    fn extended_free_particle_lambda_closed_form() {
        // With F' = 0: lambda_x stays constant and lambda_v(t) = lv0 - lx0 t.
        let p = extended_trajectory(0.0, 1.0, 1.0, 0.0, &PotentialSpec::Free, 1.0, 1e-3, 1000)
            .unwrap();
        for i in 0..=1000 {
            assert!((p.lambda_x[i] - 1.0).abs() < 1e-10);
            assert!((p.lambda_v[i] + p.t[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn extended_harmonic_lambda_oscillates() {
        // lambda_v solves d2(lambda_v)/dt2 = (F'/m) lambda_v = -lambda_v,
        // so lambda_v(0) = 1, lambda_v'(0) = 0 gives cos(t).
        let h = 1e-3;
        let n = (PI / h).round() as usize;
        let p = extended_trajectory(1.0, 0.0, 0.0, 1.0, &harmonic(), 1.0, h, n).unwrap();
        let t_end = n as f64 * h;
        assert!((p.lambda_v[n] - t_end.cos()).abs() < 1e-8);
    }

    #[test]
    fn lambda_initial_data_do_not_touch_the_trajectory() {
        let quartic = PotentialSpec::Quartic { a4: 1.0 };
        let a = extended_trajectory(1.0, 0.5, 0.0, 1.0, &quartic, 1.0, 1e-3, 500).unwrap();
        let b = extended_trajectory(1.0, 0.5, -3.7, 0.2, &quartic, 1.0, 1e-3, 500).unwrap();
        assert_eq!(a.x, b.x);
        assert_eq!(a.v, b.v);
    }

    #[test]
    fn tabulated_potential_without_derivative_is_rejected() {
        let tab = PotentialSpec::Tabulated {
            x: vec![-10.0, 10.0],
            phi: vec![0.0, 0.0],
            force: vec![0.0, 0.0],
            force_prime: None,
        };
        assert!(matches!(
            extended_trajectory(0.0, 0.0, 0.0, 1.0, &tab, 1.0, 1e-3, 10),
            Err(KvnError::MissingForcePrime)
        ));
        // The classical trajectory only needs the force itself.
        assert!(classical_trajectory(0.0, 1.0, &tab, 1.0, 1e-3, 10).is_ok());
    }

    #[test]
    fn two_particles_integrate_like_two_single_runs() {
        let particles = vec![
            ParticleSpec {
                mass: 1.0,
                potentials: vec![harmonic()],
                x0: 1.0,
                v0: 0.0,
                lambda_x0: 0.0,
                lambda_v0: 1.0,
            },
            ParticleSpec {
                mass: 2.5,
                potentials: vec![
                    PotentialSpec::Quartic { a4: 0.5 },
                    PotentialSpec::Harmonic { omega: 0.7 },
                ],
                x0: -0.5,
                v0: 0.4,
                lambda_x0: 1.0,
                lambda_v0: 0.0,
            },
        ];
        let paths = multi_extended_trajectory(&particles, 1e-3, 400).unwrap();
        assert_eq!(paths.len(), 2);

        let single = extended_trajectory(1.0, 0.0, 0.0, 1.0, &harmonic(), 1.0, 1e-3, 400).unwrap();
        assert_eq!(paths[0].x, single.x);
        assert_eq!(paths[0].lambda_v, single.lambda_v);

        // The second particle feels the sum of its two forces.
        let p1 = &particles[1];
        let mid = 200;
        let fd = (paths[1].v[mid + 1] - paths[1].v[mid - 1]) / (2.0 * 1e-3);
        let expected = p1.force(paths[1].x[mid]) / p1.mass;
        assert!((fd - expected).abs() < 1e-5);
    }

    #[test]
    fn dense_heisenberg_check_rejects_large_grids() {
        let g = PhaseSpaceGrid::new(32, 16, -8.0, 8.0, -8.0, 8.0).unwrap();
        assert!(matches!(
            heisenberg_dense_check(&g, &harmonic(), 1.0, &[0.1], 1e-4),
            Err(KvnError::GridTooLarge { .. })
        ));
    }
}
