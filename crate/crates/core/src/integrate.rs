//! Classical fourth-order Runge-Kutta on flat `f64` state vectors.

use crate::error::{Error, Result};
use crate::exact::SpinMat;

fn axpy(y: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    y.iter().zip(k).map(|(y, k)| y + a * k).collect()
}

/// One RK4 step of `y' = f(t, y)`.
pub fn rk4_step<F>(f: &F, t: f64, y: &[f64], dt: f64) -> Result<Vec<f64>>
where
    F: Fn(f64, &[f64]) -> Result<Vec<f64>>,
{
    let k1 = f(t, y)?;
    let k2 = f(t + dt / 2.0, &axpy(y, dt / 2.0, &k1))?;
    let k3 = f(t + dt / 2.0, &axpy(y, dt / 2.0, &k2))?;
    let k4 = f(t + dt, &axpy(y, dt, &k3))?;
    Ok(y.iter()
        .enumerate()
        .map(|(i, y)| y + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Integrate `steps` steps from `y0`. `observe(step, t, y)` runs on the initial state and
/// after every step; returning an error aborts the run. Non-finite states abort too.
pub fn rk4<F, O>(f: F, y0: &[f64], dt: f64, steps: usize, mut observe: O) -> Result<Vec<f64>>
where
    F: Fn(f64, &[f64]) -> Result<Vec<f64>>,
    O: FnMut(usize, f64, &[f64]) -> Result<()>,
{
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Invalid(format!("time step {dt}")));
    }
    let mut y = y0.to_vec();
    observe(0, 0.0, &y)?;
    for step in 1..=steps {
        let t = (step - 1) as f64 * dt;
        y = rk4_step(&f, t, &y, dt).map_err(|e| match e {
            Error::Unstable { .. } => e,
            other => Error::Unstable { step, reason: other.to_string() },
        })?;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Unstable { step, reason: "non-finite state".into() });
        }
        observe(step, step as f64 * dt, &y)?;
    }
    Ok(y)
}

pub fn spin_to_vec(s: &SpinMat<f64>) -> Vec<f64> {
    s.entries().copied().collect()
}

pub fn vec_to_spin(v: &[f64]) -> SpinMat<f64> {
    SpinMat::new(v[0], v[1], v[2], v[3])
}

/// Integrate a single-spin flow `Ṡ = rhs(S)`.
pub fn rk4_spin<F>(rhs: F, s0: &SpinMat<f64>, dt: f64, steps: usize) -> Result<SpinMat<f64>>
where
    F: Fn(&SpinMat<f64>) -> Result<SpinMat<f64>>,
{
    let f = |_t: f64, y: &[f64]| Ok(spin_to_vec(&rhs(&vec_to_spin(y))?));
    Ok(vec_to_spin(&rk4(f, &spin_to_vec(s0), dt, steps, |_, _, _| Ok(()))?))
}
