//! Method-of-lines driver: RK4 in time over central differences in space, with
//! stability guards, blow-up detection and conservation monitors.

use crate::error::{Error, Result};
use crate::exact::SpinMat;
use crate::field::chiral::{chiral_rhs, ChiralState};
use crate::field::gaudin::gaudin1p1_rhs;
use crate::field::grid::FieldGrid;
use crate::field::ll::{casimir_defect, ll_energy, ll_hamiltonian, ll_rhs};
use crate::integrate::rk4;

/// Field theory to evolve.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// One field, `∂_tS = α[S, S_xx] + ε²[S, J(S)]` on `S² = λ²`.
    Ll { alpha: f64, lambda2: f64, eps: f64 },
    /// Two fields at poles `z₁`, `z₂`.
    Chiral { z1: f64, z2: f64, k: f64, eps: f64 },
    /// `n` fields at poles `z`, evolved by the flow of site `site`.
    Gaudin { z: Vec<f64>, alpha: f64, site: usize },
}

impl Model {
    fn fields(&self) -> usize {
        match self {
            Model::Ll { .. } => 1,
            Model::Chiral { .. } => 2,
            Model::Gaudin { z, .. } => z.len(),
        }
    }

    /// Largest admissible time step on a grid with spacing `dx`.
    pub fn max_dt(&self, dx: f64) -> f64 {
        match self {
            Model::Ll { alpha, .. } | Model::Gaudin { alpha, .. } => 0.25 * dx * dx / alpha.abs(),
            Model::Chiral { k, .. } => 0.5 * dx / k.abs(),
        }
    }

    fn rhs(&self, fields: &[FieldGrid]) -> Result<Vec<Vec<SpinMat<f64>>>> {
        match self {
            Model::Ll { alpha, eps, .. } => Ok(vec![ll_rhs(&fields[0], *alpha, *eps)]),
            Model::Chiral { z1, z2, k, eps } => {
                let st = ChiralState::new(fields[0].clone(), fields[1].clone(), *z1, *z2, *k)?.with_eps(*eps);
                let (a, b) = chiral_rhs(&st)?;
                Ok(vec![a, b])
            }
            Model::Gaudin { z, alpha, site } => gaudin1p1_rhs(z, fields, *alpha, *site),
        }
    }
}

/// Diagnostics recorded at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct Monitor {
    pub step: usize,
    pub t: f64,
    /// Largest pointwise `|det S(t) − det S(0)|` over all fields.
    pub det_drift: f64,
    /// `∮ tr(S²) dx` for each field.
    pub trace_sq: Vec<f64>,
    /// LL only: largest pointwise `|tr S² − 2λ²|`.
    pub casimir_defect: Option<f64>,
    /// LL only: `½∮(tr S_x² + tr(S J(S)))`.
    pub hamiltonian: Option<f64>,
    /// LL only: `½∮(tr(S J(S)) − α tr S_x²)`.
    pub energy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PdeRun {
    pub fields: Vec<FieldGrid>,
    pub monitors: Vec<Monitor>,
}

impl PdeRun {
    pub fn first(&self) -> &Monitor {
        &self.monitors[0]
    }

    pub fn last(&self) -> &Monitor {
        self.monitors.last().expect("initial monitor is always recorded")
    }

    /// Largest relative deviation of `f(monitor)` from its initial value.
    pub fn relative_drift(&self, f: impl Fn(&Monitor) -> f64) -> f64 {
        let f0 = f(self.first());
        self.monitors.iter().map(|m| (f(m) - f0).abs()).fold(0.0, f64::max) / f0.abs().max(1e-300)
    }
}

/// Blow-up threshold relative to the initial sup norm.
const GROWTH_LIMIT: f64 = 1e8;

/// Integrate `steps` RK4 steps, recording monitors every `every` steps and at the end.
/// Aborts with [`Error::Unstable`] on non-finite values or when the sup norm grows by
/// more than a factor `10⁸`.
pub fn pde_run(model: &Model, fields: &[FieldGrid], dt: f64, steps: usize, every: usize) -> Result<PdeRun> {
    if fields.len() != model.fields() {
        return Err(Error::Dimension(format!("model needs {} fields, got {}", model.fields(), fields.len())));
    }
    let (n, len) = (fields[0].n(), fields[0].len());
    if fields.iter().any(|f| f.n() != n || f.len() != len) {
        return Err(Error::Dimension("fields on different grids".into()));
    }
    let dx = len / n as f64;
    if dt > model.max_dt(dx) {
        return Err(Error::Invalid(format!("dt = {dt} exceeds the stability bound {}", model.max_dt(dx))));
    }
    let split = |y: &[f64]| -> Vec<FieldGrid> { y.chunks(4 * n).map(|c| FieldGrid::from_slice(len, c)).collect() };
    let y0: Vec<f64> = fields.iter().flat_map(FieldGrid::to_vec).collect();
    let det0: Vec<Vec<f64>> = fields.iter().map(|f| f.values().iter().map(SpinMat::det).collect()).collect();
    let scale0 = fields.iter().map(FieldGrid::max_abs).fold(1.0, f64::max);
    let every = every.max(1);

    let mut monitors = Vec::new();
    let monitor = |step: usize, t: f64, fs: &[FieldGrid]| {
        let det_drift = fs
            .iter()
            .zip(&det0)
            .flat_map(|(f, d0)| f.values().iter().zip(d0).map(|(s, d)| (s.det() - d).abs()))
            .fold(0.0, f64::max);
        let trace_sq = fs.iter().map(|f| f.integrate(|s| s.matmul(s).tr())).collect();
        let (cd, ham, en) = match model {
            Model::Ll { alpha, lambda2, .. } => (
                Some(casimir_defect(&fs[0], *lambda2)),
                Some(ll_hamiltonian(&fs[0])),
                Some(ll_energy(&fs[0], *alpha)),
            ),
            _ => (None, None, None),
        };
        Monitor { step, t, det_drift, trace_sq, casimir_defect: cd, hamiltonian: ham, energy: en }
    };
    let f = |_t: f64, y: &[f64]| -> Result<Vec<f64>> {
        Ok(model.rhs(&split(y))?.iter().flatten().flat_map(|m| m.entries().copied()).collect::<Vec<_>>())
    };
    let y = rk4(f, &y0, dt, steps, |step, t, y| {
        let fs = split(y);
        let size = fs.iter().map(FieldGrid::max_abs).fold(0.0, f64::max);
        if size > GROWTH_LIMIT * scale0 {
            return Err(Error::Unstable { step, reason: format!("sup norm grew to {size:.3e}") });
        }
        if step % every == 0 || step == steps {
            monitors.push(monitor(step, t, &fs));
        }
        Ok(())
    })?;
    Ok(PdeRun { fields: split(&y), monitors })
}

/// Observed temporal order from three runs at `dt`, `dt/2`, `dt/4` over the same time
/// span: `log₂(‖u_dt − u_{dt/2}‖ / ‖u_{dt/2} − u_{dt/4}‖)`.
pub fn temporal_order(model: &Model, fields: &[FieldGrid], dt: f64, t_end: f64) -> Result<f64> {
    let run = |h: f64| -> Result<Vec<f64>> {
        let steps = (t_end / h).round() as usize;
        let r = pde_run(model, fields, h, steps, steps.max(1))?;
        Ok(r.fields.iter().flat_map(FieldGrid::to_vec).collect())
    };
    let (a, b, c) = (run(dt)?, run(dt / 2.0)?, run(dt / 4.0)?);
    let dist = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok((dist(&a, &b) / dist(&b, &c)).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ll::{ll_initial, zs_residual};

    fn chiral_fields(n: usize) -> Vec<FieldGrid> {
        let w = 2.0 * std::f64::consts::PI;
        let a = FieldGrid::from_fn(n, 1.0, |x| SpinMat::new(0.3 * (w * x).sin(), 0.5, 0.2 + 0.1 * (w * x).cos(), -0.1));
        let b = FieldGrid::from_fn(n, 1.0, |x| SpinMat::new(0.4, 0.1 * (w * x).cos(), -0.3, 0.2 * (w * x).sin()));
        vec![a, b]
    }

    #[test]
    fn guards() {
        let g = ll_initial(64, 1.0, -1.0, 1);
        let m = Model::Ll { alpha: -0.125, lambda2: -1.0, eps: 1.0 };
        assert!(matches!(pde_run(&m, &[g.clone()], 1.0, 1, 1), Err(Error::Invalid(_))));
        assert!(pde_run(&m, &[g.clone(), g], 1e-4, 1, 1).is_err());
    }

    #[test]
    fn elliptic_ll_conserves() {
        let g = ll_initial(64, 2.0 * std::f64::consts::PI, -1.0, 2);
        let m = Model::Ll { alpha: -0.125, lambda2: -1.0, eps: 1.0 };
        let r = pde_run(&m, &[g], 1e-3, 500, 100).unwrap();
        assert!(r.last().casimir_defect.unwrap() < 1e-10);
        assert!(r.relative_drift(|m| m.energy.unwrap()) < 1e-9);
        assert!(r.last().det_drift < 1e-10);
    }

    #[test]
    fn chiral_trace_squares_conserved() {
        let m = Model::Chiral { z1: 0.5, z2: -0.5, k: 1.0, eps: 1.0 };
        let r = pde_run(&m, &chiral_fields(64), 1e-3, 1000, 100).unwrap();
        for a in 0..2 {
            assert!(r.relative_drift(|m| m.trace_sq[a]) < 1e-8);
        }
        let order = temporal_order(&m, &chiral_fields(32), 0.01, 0.4).unwrap();
        assert!(order > 3.5, "{order}");
    }

    fn zs_after_one_step(g: &FieldGrid, z: f64, dt: f64) -> f64 {
        let m = Model::Ll { alpha: -0.125, lambda2: -1.0, eps: 1.0 };
        let r = pde_run(&m, &[g.clone()], dt, 1, 1).unwrap();
        zs_residual(z, g, &r.fields[0], dt, 1.0, -1.0).unwrap()
    }

    #[test]
    fn zero_curvature_residual_converges() {
        let flat = FieldGrid::from_fn(8, 1.0, |_| SpinMat::new(0.3, -1.0, 0.91, -0.3));
        let smooth = |n: usize| ll_initial(n, 2.0 * std::f64::consts::PI, -1.0, 5);
        for z in [0.7, -1.3, 2.1] {
            // stationary in x: only the forward time difference contributes
            let ratio = zs_after_one_step(&flat, z, 1e-3) / zs_after_one_step(&flat, z, 5e-4);
            assert!((ratio - 2.0).abs() < 0.05, "{ratio}");
            let (a, b) = (zs_after_one_step(&smooth(32), z, 1e-8), zs_after_one_step(&smooth(64), z, 1e-8));
            assert!((a / b).log2() > 1.8, "z = {z}: {a} {b}");
        }
        let other = ll_initial(16, 1.0, -1.0, 1);
        assert!(zs_residual(0.5, &flat, &other, 1e-3, 1.0, -1.0).is_err());
    }
}
