//! Simulations: trajectories as CSV plus a JSON monitor summary.

use serde_json::{json, Value};

use elevenvertex::error::{Error, Result as CoreResult};
use elevenvertex::exact::{Sampler, SpinMat};
use elevenvertex::field::ll::{ll_initial, zs_residual};
use elevenvertex::field::{pde_run, FieldGrid, Model, PdeRun};
use elevenvertex::integrate::{rk4, spin_to_vec, vec_to_spin};
use elevenvertex::lattice::gaudin::Gaudin;
use elevenvertex::manybody::{self, canonical_flow};
use elevenvertex::{exact::q_to_f64, tops};

use crate::config::{ConfigError, RunConfig};
use crate::report::Check;
use crate::verify::to_q;

pub const MODELS: [&str; 8] = ["top", "top-eta", "rs", "cm", "gaudin", "ll", "chiral", "ll-gaudin"];

/// A table with a fixed header.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(header: impl IntoIterator<Item = String>) -> Self {
        Table { header: header.into_iter().collect(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(|&x| fmt_num(x)))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

/// Shortest round-trip form; exponent notation for very small or large magnitudes, empty
/// for a missing value.
fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x == 0.0 || (1e-4..1e16).contains(&x.abs()) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Simulation {
    /// `(file stem, table)`; the first is the trajectory.
    pub tables: Vec<(String, Table)>,
    pub summary: Value,
    pub checks: Vec<Check>,
    /// Set when the integration aborted.
    pub unstable: Option<(usize, String)>,
}

impl Simulation {
    pub fn passed(&self) -> bool {
        self.unstable.is_none() && self.checks.iter().all(|c| c.pass)
    }

    /// Summary document with the verdict and checks.
    pub fn summary_json(&self, model: &str, seed: u64) -> String {
        let mut checks = self.checks.clone();
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let doc = json!({
            "command": "simulate",
            "model": model,
            "seed": seed,
            "passed": self.passed(),
            "status": match &self.unstable {
                None => json!("completed"),
                Some((step, reason)) => json!({
                    "unstable": reason,
                    "last_stable_step": step.saturating_sub(1),
                }),
            },
            "monitors": self.summary,
            "checks": checks,
        });
        serde_json::to_string_pretty(&doc).expect("summary serializes") + "\n"
    }
}

fn spin_cols(prefix: &str) -> Vec<String> {
    ["11", "12", "21", "22"].iter().map(|ij| format!("{prefix}{ij}")).collect()
}

/// Initial spin bounded away from the Riccati blow-up of the `J` term (`S₁₂ < 0`).
fn seeded_spin(smp: &mut Sampler, scale: f64) -> SpinMat<f64> {
    SpinMat::new(
        scale * smp.uniform(-0.5, 0.5),
        -scale * smp.uniform(0.5, 1.0),
        scale * smp.uniform(-0.5, 0.5),
        scale * smp.uniform(-0.5, 0.5),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

struct Steps {
    dt: f64,
    steps: usize,
    every: usize,
}

fn steps(cfg: &RunConfig, dt: f64, steps: usize) -> Result<Steps, ConfigError> {
    let dt = cfg.positive("dt", cfg.dt, dt)?;
    let steps = cfg.steps.unwrap_or(steps);
    if steps == 0 {
        return Err(ConfigError("steps must be positive".into()));
    }
    let every = cfg.every.unwrap_or((steps / 100).max(1));
    if every == 0 {
        return Err(ConfigError("every must be positive".into()));
    }
    Ok(Steps { dt, steps, every })
}

/// RK4 with sampling every `every` steps (and at the end) and a blow-up guard.
fn sampled_rk4(
    f: impl Fn(&[f64]) -> CoreResult<Vec<f64>>,
    y0: &[f64],
    st: &Steps,
    mut sample: impl FnMut(usize, f64, &[f64]),
) -> CoreResult<Vec<f64>> {
    let bound = 1e8 * y0.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    rk4(|_t, y| f(y), y0, st.dt, st.steps, |step, t, y| {
        let norm = y.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if !norm.is_finite() || norm > bound {
            return Err(Error::Unstable { step, reason: format!("sup norm grew to {norm:e}") });
        }
        if step % st.every == 0 || step == st.steps {
            sample(step, t, y);
        }
        Ok(())
    })
}

fn unstable(e: Error) -> Result<Simulation, Error> {
    match e {
        Error::Unstable { step, reason } => Ok(Simulation {
            tables: Vec::new(),
            summary: json!({}),
            checks: Vec::new(),
            unstable: Some((step, reason)),
        }),
        other => Err(other),
    }
}

/// Run `model`. Configuration problems are `Err(ConfigError)`; a core error other than
/// instability (a pole hit along the way, say) is reported as a failed run.
pub fn simulate(model: &str, cfg: &RunConfig, seed: u64) -> Result<Simulation, ConfigError> {
    let out = match model {
        "top" | "top-eta" => top(model == "top-eta", cfg, seed)?,
        "cm" | "rs" => two_body(model == "rs", cfg)?,
        "gaudin" => gaudin(cfg, seed)?,
        "ll" | "chiral" | "ll-gaudin" => field(model, cfg, seed)?,
        other => return Err(ConfigError(format!("unknown model {other:?}; expected one of {MODELS:?}"))),
    };
    Ok(out.or_else(unstable).unwrap_or_else(|e| Simulation {
        tables: Vec::new(),
        summary: json!({ "error": e.to_string() }),
        checks: vec![Check::error("simulate.run", "integration completed", e)],
        unstable: None,
    }))
}

fn top(relativistic: bool, cfg: &RunConfig, seed: u64) -> Result<CoreResult<Simulation>, ConfigError> {
    let st = steps(cfg, 1e-3, 1000)?;
    let eta = cfg.finite("eta", cfg.eta, 0.5)?;
    if relativistic && eta == 0.0 {
        return Err(ConfigError("eta must be nonzero".into()));
    }
    let s0 = seeded_spin(&mut Sampler::new(seed), 1.0);
    let z_probe = 0.7;
    let rhs = |s: &SpinMat<f64>| if relativistic { tops::eta_top_rhs(s, &eta) } else { Ok(tops::top_rhs(s)) };
    let casimirs = |s: &SpinMat<f64>| {
        if relativistic {
            let (a, b) = tops::eta_casimirs(s, &eta);
            vec![a, b]
        } else {
            vec![s.tr(), tops::casimir2(s)]
        }
    };
    let lax_det = |s: &SpinMat<f64>| -> CoreResult<f64> {
        Ok(if relativistic { tops::lax_eta(&z_probe, s, &eta)?.det() } else { tops::lax_nonrel(&z_probe, s)?.det() })
    };
    let energy = |s: &SpinMat<f64>| if relativistic { s.tr() } else { tops::hamiltonian(s) };
    let names = if relativistic { ["C1", "C2"] } else { ["trS", "C2"] };
    let mut table = Table::new(
        std::iter::once("t".to_string()).chain(spin_cols("S")).chain(names.iter().map(|s| s.to_string())).chain(["H".into()]),
    );
    let (c0, h0, d0) = (casimirs(&s0), energy(&s0), match lax_det(&s0) {
        Ok(d) => d,
        Err(e) => return Ok(Err(e)),
    });
    let (mut cas_drift, mut h_drift, mut lax_drift) = (0.0f64, 0.0f64, 0.0f64);
    let run = sampled_rk4(|y| Ok(spin_to_vec(&rhs(&vec_to_spin(y))?)), &spin_to_vec(&s0), &st, |_, t, y| {
        let s = vec_to_spin(y);
        let c = casimirs(&s);
        for (a, b) in c.iter().zip(&c0) {
            cas_drift = cas_drift.max((a - b).abs());
        }
        h_drift = h_drift.max((energy(&s) - h0).abs());
        if let Ok(d) = lax_det(&s) {
            lax_drift = lax_drift.max((d - d0).abs());
        }
        let mut row = vec![t];
        row.extend(y);
        row.extend(c);
        row.push(energy(&s));
        table.rows.push(row);
    });
    if let Err(e) = run {
        return Ok(Err(e));
    }
    let summary = json!({
        "casimir_drift_max": cas_drift,
        "hamiltonian_drift_max": h_drift,
        "lax_det_drift_max": lax_drift,
        "lax_probe_z": z_probe,
        "initial": spin_to_vec(&s0),
        "dt": st.dt,
        "steps": st.steps,
    });
    let points = st.steps;
    let checks = vec![
        Check::float("simulate.casimir-drift", "Casimirs conserved along the top flow", points, cas_drift, 1e-10),
        Check::float("simulate.lax-det-drift", "det L(z) conserved along the flow (isospectrality)", points, lax_drift, 1e-10),
    ];
    Ok(Ok(Simulation { tables: vec![("trajectory".into(), table)], summary, checks, unstable: None }))
}

fn two_body(relativistic: bool, cfg: &RunConfig) -> Result<CoreResult<Simulation>, ConfigError> {
    let st = steps(cfg, 1e-3, 1000)?;
    let (p0, q0) = if relativistic {
        (cfg.finite("p0", cfg.p0, 0.6)?, cfg.finite("q0", cfg.q0, 1.4)?)
    } else {
        (cfg.finite("p0", cfg.p0, 0.8)?, cfg.finite("q0", cfg.q0, 1.3)?)
    };
    let nu = cfg.finite("nu", cfg.nu, 0.5)?;
    let eta = cfg.finite("eta", cfg.eta, 0.5)?;
    let c = cfg.finite("c", cfg.c, 2.0)?;
    if relativistic && (eta == 0.0 || c == 0.0) {
        return Err(ConfigError("eta and c must be nonzero".into()));
    }
    let cross = cfg.cross_check.unwrap_or(false);
    let model = if relativistic { manybody::Model::Rs { eta, c } } else { manybody::Model::Cm { nu } };
    let go = || -> CoreResult<Simulation> {
        let traj = canonical_flow(model, p0, q0, st.dt, st.steps, st.every)?;
        let map = |p: f64, q: f64| if relativistic { manybody::rs_map(p, q, eta, c) } else { manybody::cm_map(p, q, nu) };
        let mut header: Vec<String> = ["t", "p", "q", "energy"].iter().map(|s| s.to_string()).collect();
        let mut tops_at = Vec::new();
        let mut kappa = 1.0;
        if cross {
            header.extend(spin_cols("mapped_S"));
            header.extend(spin_cols("top_S"));
            header.push("deviation".into());
            if relativistic {
                let k = manybody::rs_time_factor(&to_q_core("eta", eta)?, &to_q_core("c", c)?)?
                    .ok_or_else(|| Error::Invalid("no constant time factor".into()))?;
                kappa = q_to_f64(&k);
            }
            let rhs = |y: &[f64]| {
                let s = vec_to_spin(y);
                let v = if relativistic { tops::eta_top_rhs(&s, &eta)?.scale(&kappa) } else { tops::top_rhs(&s) };
                Ok(spin_to_vec(&v))
            };
            sampled_rk4(rhs, &spin_to_vec(&map(p0, q0)?), &st, |_, _, y| tops_at.push(vec_to_spin(y)))?;
        }
        let mut table = Table::new(header);
        let e0 = traj[0].energy;
        let (mut e_drift, mut dev) = (0.0f64, 0.0f64);
        for (i, smp) in traj.iter().enumerate() {
            e_drift = e_drift.max(rel(smp.energy, e0));
            let mut row = vec![smp.t, smp.p, smp.q, smp.energy];
            if cross {
                let m = map(smp.p, smp.q)?;
                let t = &tops_at[i];
                let d = (m.clone() - t.clone()).max_abs();
                dev = dev.max(d);
                row.extend(spin_to_vec(&m));
                row.extend(spin_to_vec(t));
                row.push(d);
            }
            table.rows.push(row);
        }
        let mut summary = json!({
            "energy_relative_drift_max": e_drift,
            "initial": [p0, q0],
            "dt": st.dt,
            "steps": st.steps,
        });
        let mut checks = Vec::new();
        if cross {
            summary["cross_check_max_deviation"] = json!(dev);
            summary["time_factor"] = json!(kappa);
            let tol = if relativistic { 1e-6 } else { 1e-8 };
            checks.push(Check::float(
                "simulate.cross-check",
                "mapped canonical trajectory against the top trajectory",
                traj.len(),
                dev,
                tol,
            ));
        }
        Ok(Simulation { tables: vec![("trajectory".into(), table)], summary, checks, unstable: None })
    };
    Ok(go())
}

fn to_q_core(name: &str, x: f64) -> CoreResult<elevenvertex::exact::Q> {
    to_q(name, x).map_err(|e| Error::Invalid(e.0))
}

fn site_positions(cfg: &RunConfig, default: &[f64]) -> Result<Vec<f64>, ConfigError> {
    let z = match (&cfg.z, cfg.n) {
        (Some(z), _) => z.clone(),
        (None, Some(n)) => (0..n).map(|a| a as f64 * 0.75 - 0.5 * (n as f64 - 1.0) * 0.75 + 0.1).collect(),
        (None, None) => default.to_vec(),
    };
    if z.is_empty() || z.iter().any(|x| !x.is_finite()) {
        return Err(ConfigError("site positions must be finite and nonempty".into()));
    }
    if let (Some(n), Some(zz)) = (cfg.n, &cfg.z) {
        if n != zz.len() {
            return Err(ConfigError(format!("n = {n} but {} site positions given", zz.len())));
        }
    }
    for a in 0..z.len() {
        for b in (a + 1)..z.len() {
            if z[a] == z[b] {
                return Err(ConfigError(format!("sites {a} and {b} coincide")));
            }
        }
    }
    Ok(z)
}

fn gaudin(cfg: &RunConfig, seed: u64) -> Result<CoreResult<Simulation>, ConfigError> {
    let st = steps(cfg, 1e-3, 1000)?;
    let z = site_positions(cfg, &[0.0, 1.5, -1.0])?;
    let eps = cfg.finite("eps", cfg.eps, 1.0)?;
    let n = z.len();
    let mut smp = Sampler::new(seed);
    let spins: Vec<SpinMat<f64>> = (0..n).map(|_| seeded_spin(&mut smp, 0.3)).collect();
    let g0 = match Gaudin::new(z.clone(), spins) {
        Ok(g) => g.with_eps(eps),
        Err(e) => return Err(ConfigError(e.to_string())),
    };
    let with = |y: &[f64]| Gaudin {
        z: z.clone(),
        spins: (0..n).map(|a| vec_to_spin(&y[4 * a..4 * a + 4])).collect(),
        eps,
    };
    let cas = |g: &Gaudin<f64>| g.spins.iter().flat_map(|m| [m.tr(), tops::casimir2(m)]).collect::<Vec<_>>();
    let pack = |s: &[SpinMat<f64>]| s.iter().flat_map(spin_to_vec).collect::<Vec<_>>();
    let mut header = vec!["t".to_string()];
    for a in 1..=n {
        header.extend(spin_cols(&format!("S{a}_")));
    }
    header.push("h0".into());
    let mut table = Table::new(header);
    let (c0, h00) = (cas(&g0), g0.h0());
    let w = 0.37 + z.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let (mut c_drift, mut h_drift, mut lax_res) = (0.0f64, 0.0f64, 0.0f64);
    let run = sampled_rk4(|y| Ok(pack(&with(y).flow_0())), &pack(&g0.spins), &st, |_, t, y| {
        let g = with(y);
        for (a, b) in cas(&g).iter().zip(&c0) {
            c_drift = c_drift.max((a - b).abs());
        }
        h_drift = h_drift.max(rel(g.h0(), h00));
        if let Ok(r) = g.lax_residual(&g.flow_0(), &g.m_0(&w), &w) {
            lax_res = lax_res.max(r.max_abs());
        }
        let mut row = vec![t];
        row.extend(y);
        row.push(g.h0());
        table.rows.push(row);
    });
    if let Err(e) = run {
        return Ok(Err(e));
    }
    let summary = json!({
        "casimir_drift_max": c_drift,
        "h0_relative_drift_max": h_drift,
        "lax_residual_max": lax_res,
        "lax_probe_z": w,
        "z": z,
        "eps": eps,
        "dt": st.dt,
        "steps": st.steps,
    });
    let checks = vec![
        Check::float("simulate.casimir-drift", "site Casimirs conserved along the t0 flow", st.steps, c_drift, 1e-10),
        Check::float("simulate.lax-residual", "Lax equation of the t0 flow at a probe point", st.steps, lax_res, 1e-10),
    ];
    Ok(Ok(Simulation { tables: vec![("trajectory".into(), table)], summary, checks, unstable: None }))
}

fn chiral_fields(n: usize, len: f64) -> Vec<FieldGrid> {
    let w = 2.0 * std::f64::consts::PI / len;
    let a = FieldGrid::from_fn(n, len, |x| SpinMat::new(0.3 * (w * x).sin(), 0.5, 0.2 + 0.1 * (w * x).cos(), -0.1));
    let b = FieldGrid::from_fn(n, len, |x| SpinMat::new(0.4, 0.1 * (w * x).cos(), -0.3, 0.2 * (w * x).sin()));
    vec![a, b]
}

fn field(model: &str, cfg: &RunConfig, seed: u64) -> Result<CoreResult<Simulation>, ConfigError> {
    // The coupled fields blow up in finite time (near t = 0.23 for the default data), so
    // the default horizon is shorter there.
    let st = steps(cfg, 1e-3, if model == "ll-gaudin" { 100 } else { 1000 })?;
    let n = cfg.grid_n.unwrap_or(128);
    if n < 8 {
        return Err(ConfigError("grid-n must be at least 8".into()));
    }
    let len = cfg.positive("length", cfg.length, 2.0 * std::f64::consts::PI)?;
    let k = cfg.finite("k", cfg.k, 1.0)?;
    let lambda = cfg.finite("lambda", cfg.lambda, 1.0)?;
    let eps = cfg.finite("eps", cfg.eps, 1.0)?;
    let lambda2 = if cfg.elliptic.unwrap_or(true) { -lambda * lambda } else { lambda * lambda };
    if k == 0.0 || (model != "chiral" && lambda == 0.0) {
        return Err(ConfigError("k and lambda must be nonzero".into()));
    }
    let alpha = k * k / (8.0 * lambda2);
    let (pde, fields) = match model {
        "ll" => (Model::Ll { alpha, lambda2, eps }, vec![ll_initial(n, len, lambda2, seed)]),
        "chiral" => {
            let z = site_positions(cfg, &[0.5, -0.5])?;
            if z.len() != 2 {
                return Err(ConfigError("the chiral model has two poles".into()));
            }
            (Model::Chiral { z1: z[0], z2: z[1], k, eps }, chiral_fields(n, len))
        }
        _ => {
            let z = site_positions(cfg, &[0.0, 1.5])?;
            let f = (0..z.len()).map(|a| ll_initial(n, len, lambda2, seed.wrapping_add(a as u64))).collect();
            (Model::Gaudin { z, alpha, site: 0 }, f)
        }
    };
    let run: PdeRun = match pde_run(&pde, &fields, st.dt, st.steps, st.every) {
        Ok(r) => r,
        Err(Error::Invalid(m)) => return Err(ConfigError(m)),
        Err(e) => return Ok(Err(e)),
    };
    let nf = fields.len();
    let mut header: Vec<String> = ["step", "t", "det_drift"].iter().map(|s| s.to_string()).collect();
    header.extend((1..=nf).map(|a| format!("trace_sq_{a}")));
    header.extend(["casimir_defect", "hamiltonian", "energy"].iter().map(|s| s.to_string()));
    let mut mon = Table::new(header);
    for m in &run.monitors {
        let mut row = vec![m.step as f64, m.t, m.det_drift];
        row.extend(&m.trace_sq);
        row.extend([m.casimir_defect, m.hamiltonian, m.energy].map(|v| v.unwrap_or(f64::NAN)));
        mon.rows.push(row);
    }
    let t_end = run.last().t;
    let mut snap_header = vec!["t".to_string(), "x".to_string()];
    for a in 1..=nf {
        snap_header.extend(spin_cols(&format!("S{a}_")));
    }
    let mut snap = Table::new(snap_header);
    for i in 0..run.fields[0].n() {
        let mut row = vec![t_end, run.fields[0].x(i)];
        for f in &run.fields {
            row.extend(spin_to_vec(f.at(i)));
        }
        snap.rows.push(row);
    }
    let det_drift = run.monitors.iter().map(|m| m.det_drift).fold(0.0, f64::max);
    let trace_sq: Vec<f64> = (0..nf).map(|a| run.relative_drift(|m| m.trace_sq[a])).collect();
    let mut summary = json!({
        "det_drift_max": det_drift,
        "trace_sq_relative_drift": trace_sq,
        "grid_n": n,
        "length": len,
        "dt": st.dt,
        "steps": st.steps,
        "t_end": t_end,
    });
    let mut checks = Vec::new();
    if let Model::Ll { .. } = pde {
        checks.push(Check::float(
            "simulate.det-drift",
            "pointwise det S conserved (trace and trace-square Casimirs)",
            n * run.monitors.len(),
            det_drift,
            1e-8,
        ));
        let cas = run.monitors.iter().filter_map(|m| m.casimir_defect).fold(0.0, f64::max);
        summary["lambda2"] = json!(lambda2);
        summary["alpha"] = json!(alpha);
        summary["casimir_defect_max"] = json!(cas);
        summary["hamiltonian_relative_drift"] = json!(run.relative_drift(|m| m.hamiltonian.unwrap_or(0.0)));
        summary["energy_relative_drift"] = json!(run.relative_drift(|m| m.energy.unwrap_or(0.0)));
        checks.push(Check::float("simulate.casimir-defect", "pointwise tr S^2 = 2 lambda^2", n * run.monitors.len(), cas, 1e-8));
        match pde_run(&pde, &run.fields, st.dt, 1, 1) {
            Ok(next) => match zs_residual(0.7, &run.fields[0], &next.fields[0], st.dt, k, lambda2) {
                Ok(r) => summary["zero_curvature_residual"] = json!(r),
                Err(e) => summary["zero_curvature_residual"] = json!(e.to_string()),
            },
            Err(e) => summary["zero_curvature_residual"] = json!(e.to_string()),
        }
    }
    if let Model::Chiral { .. } = pde {
        for (a, d) in trace_sq.iter().enumerate() {
            checks.push(Check::float(
                &format!("simulate.trace-sq-drift-{}", a + 1),
                "integral of tr S^2 conserved for each chiral field",
                run.monitors.len(),
                *d,
                1e-8,
            ));
        }
    }
    Ok(Ok(Simulation {
        tables: vec![("trajectory".into(), mon), ("snapshot".into(), snap)],
        summary,
        checks,
        unstable: None,
    }))
}
