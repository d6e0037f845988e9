//! Verification suites: exact identity checks at seeded points plus a few float targets.

use elevenvertex::error::Result as CoreResult;
use elevenvertex::exact::{q, q_to_f64, qf, LaurentBi, One, Q, Ring, Sampler, SparsePoly, SpinMat, TensorOp, Zero};
use elevenvertex::field::chiral::{chiral_zs_residual, isotropic_residuals, light_cone_residual};
use elevenvertex::field::gaudin::{gaudin1p1_point, SiteJets};
use elevenvertex::field::jet::constrained_jet;
use elevenvertex::field::ll::{ll_jet_rhs, zs_jet_residual, zs_split_residual};
use elevenvertex::lattice::{canonical, chain, gaudin};
use elevenvertex::poisson::{self, BracketTable};
use elevenvertex::{manybody, rmatrix, tops};

use crate::config::{ConfigError, RunConfig};
use crate::report::Check;

pub const SUITES: [&str; 7] = ["chain", "field-jets", "gaudin", "manybody", "poisson", "rmatrix", "tops"];

/// Parameters shared by the suites after defaults and validation.
pub struct Params {
    pub seed: u64,
    pub points: usize,
    pub eta: Q,
    pub nu: Q,
    pub c: Q,
    pub corrupt: Option<(String, String)>,
}

/// Config numbers arrive as floats; `0.1` or `1/3` typed as a decimal should mean the
/// simple rational, not its binary expansion. Take the first continued-fraction convergent
/// within float resolution, falling back to the exact binary value.
pub fn to_q(name: &str, x: f64) -> Result<Q, ConfigError> {
    if !x.is_finite() {
        return Err(ConfigError(format!("{name} = {x} is not a finite number")));
    }
    let tol = 4.0 * f64::EPSILON * x.abs().max(1.0);
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (Some(h), Some(k)) = (a.checked_mul(h1).and_then(|v| v.checked_add(h0)), a.checked_mul(k1).and_then(|v| v.checked_add(k0))) else {
            break;
        };
        if k > 1_000_000_000 {
            break;
        }
        if (h as f64 / k as f64 - x).abs() <= tol {
            return Ok(Q::new(h.into(), k.into()));
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = r - a as f64;
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    Ok(Q::from_float(x).expect("finite"))
}


impl Params {
    pub fn from_config(cfg: &RunConfig) -> Result<Self, ConfigError> {
        let opt = |name: &str, v: Option<f64>, d: Q| v.map(|x| to_q(name, x)).transpose().map(|o| o.unwrap_or(d));
        let eta = opt("eta", cfg.eta, qf(2, 3))?;
        let nu = opt("nu", cfg.nu, qf(7, 3))?;
        let c = opt("c", cfg.c, q(5))?;
        for (n, v) in [("eta", &eta), ("nu", &nu), ("c", &c)] {
            if v.is_zero() {
                return Err(ConfigError(format!("{n} must be nonzero")));
            }
        }
        let corrupt = match &cfg.corrupt_entry {
            None => None,
            Some(s) => {
                let (a, b) = s
                    .split_once(',')
                    .ok_or_else(|| ConfigError(format!("corrupt entry {s:?} must look like \"S11,S12\"")))?;
                let (a, b) = (a.trim().to_string(), b.trim().to_string());
                let t = poisson::eta_sklyanin(&q(1));
                if t.id(&a).is_none() || t.id(&b).is_none() || a == b {
                    return Err(ConfigError(format!("corrupt entry {s:?}: generators are {:?}", t.names())));
                }
                Some((a, b))
            }
        };
        Ok(Params { seed: cfg.resolved_seed()?, points: cfg.points.unwrap_or(10).max(1), eta, nu, c, corrupt })
    }

    /// Quadratic table at `η`, with the negative-control corruption applied if requested.
    fn eta_table(&self, eta: &Q) -> BracketTable {
        let mut t = poisson::eta_sklyanin(eta);
        if let Some((a, b)) = &self.corrupt {
            let (ia, ib) = (t.id(a).expect("validated"), t.id(b).expect("validated"));
            let v = t.get(ia, ib) + SparsePoly::one();
            t.set(ia, ib, v);
        }
        t
    }

    /// Independent stream per check so adding a check never shifts the others.
    fn sampler(&self, salt: u64) -> Sampler {
        Sampler::new(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
    }
}

/// Run `f` at `points` seeded samples; `f` returns whether the residual vanished.
fn sweep(
    name: &str,
    anchor: &str,
    points: usize,
    mut smp: Sampler,
    mut f: impl FnMut(&mut Sampler) -> CoreResult<bool>,
) -> Check {
    let mut bad = 0;
    for _ in 0..points {
        match f(&mut smp) {
            Ok(true) => {}
            Ok(false) => bad += 1,
            Err(e) => return Check::error(name, anchor, e),
        }
    }
    Check::exact(name, anchor, points, (bad > 0).then(|| format!("nonzero at {bad} of {points} points")))
}

/// Single symbolic identity.
fn identity(name: &str, anchor: &str, f: impl FnOnce() -> CoreResult<bool>) -> Check {
    match f() {
        Ok(ok) => Check::exact(name, anchor, 1, (!ok).then(|| "nonzero".to_string())),
        Err(e) => Check::error(name, anchor, e),
    }
}

fn float(name: &str, anchor: &str, points: usize, tol: f64, f: impl FnOnce() -> CoreResult<f64>) -> Check {
    match f() {
        Ok(v) => Check::float(name, anchor, points, v, tol),
        Err(e) => Check::error(name, anchor, e),
    }
}

pub fn run_suite(suite: &str, p: &Params) -> Result<Vec<Check>, ConfigError> {
    Ok(match suite {
        "rmatrix" => rmatrix_suite(p),
        "poisson" => poisson_suite(p),
        "tops" => tops_suite(p),
        "manybody" => manybody_suite(p),
        "gaudin" => gaudin_suite(p),
        "chain" => chain_suite(p),
        "field-jets" => field_suite(p),
        "all" => {
            let mut v = Vec::new();
            for s in SUITES {
                v.extend(run_suite(s, p)?);
            }
            v
        }
        other => return Err(ConfigError(format!("unknown suite {other:?}; expected one of {SUITES:?} or all"))),
    })
}

fn rmatrix_suite(p: &Params) -> Vec<Check> {
    let n = p.points.max(20);
    let mut out = vec![sweep(
        "rmatrix.cybe",
        "classical Yang-Baxter equation at seeded spectral pairs",
        n,
        p.sampler(1),
        |s| {
            let (z, w) = s.spectral_pair(&q(0));
            Ok(rmatrix::cybe_residual(&z, &w)?.is_zero())
        },
    )];
    out.push(sweep("rmatrix.quantum-ybe", "quantum Yang-Baxter equation", p.points, p.sampler(2), |s| {
        let (z, w) = s.spectral_pair(&q(0));
        let h = s.rational();
        Ok(rmatrix::quantum_ybe_residual(&h, &z, &w)?.is_zero())
    }));
    out.push(identity("rmatrix.classical-limit", "classical r-matrix as the first hbar-coefficient of R", || {
        Ok(rmatrix::classical_limit() == Some(rmatrix::classical_r_symbolic()))
    }));
    out.push(identity("rmatrix.eps-zero-classical", "classical r-matrix reduces to Yang's at eps = 0", || {
        let re = rmatrix::classical_r_eps(&LaurentBi::x(), &LaurentBi::y())?;
        Ok(rmatrix::at_eps_zero(&re) == Some(rmatrix::yang_r(&LaurentBi::x())?))
    }));
    out.push(identity("rmatrix.eps-zero-quantum", "quantum R-matrix reduces to Yang's at eps = 0", || {
        let h = LaurentBi::from_q(&qf(3, 2));
        let big = rmatrix::quantum_r_eps(&h, &LaurentBi::x(), &LaurentBi::y())?;
        Ok(rmatrix::at_eps_zero(&big) == Some(rmatrix::yang_quantum_r(&h, &LaurentBi::x())?))
    }));
    out.push(identity("rmatrix.skew", "skew-symmetry r12(z) = -r21(-z)", || {
        let r = rmatrix::classical_r_symbolic();
        let minus = rmatrix::classical_r(&(-LaurentBi::x()))?;
        Ok((r + rmatrix::swap_legs(&minus)?).is_zero())
    }));
    out.push(identity("rmatrix.residue", "residue at z = 0 is the permutation, regular part vanishes", || {
        let perm = TensorOp::<Q>::permutation();
        Ok(rmatrix::series_coeff_r_classical(-1) == perm
            && rmatrix::series_coeff_r_classical(0).is_zero()
            && rmatrix::series_coeff_r_quantum(&qf(2, 5), -1)? == perm)
    }));
    out
}

fn poisson_suite(p: &Params) -> Vec<Check> {
    let eta = p.eta.clone();
    let te = p.eta_table(&eta);
    let tt = poisson::tilde_sklyanin();
    let mut out = vec![
        sweep("poisson.linear", "linear r-matrix structure of the top", p.points, p.sampler(10), |s| {
            let (z, w) = s.spectral_pair(&q(0));
            Ok(poisson::check_linear(&z, &w)?.is_zero())
        }),
        sweep("poisson.quadratic-eta", "quadratic structure of the relativistic top", p.points, p.sampler(11), |s| {
            let (z, w) = s.spectral_pair(&q(0));
            Ok(poisson::check_quadratic(poisson::lax_eta_poly(&eta), &te, &z, &w)?.is_zero())
        }),
        sweep("poisson.quadratic-tilde", "quadratic structure of the five-generator algebra", p.points, p.sampler(12), |s| {
            let (z, w) = s.spectral_pair(&q(0));
            Ok(poisson::check_quadratic(poisson::lax_tilde_poly(), &tt, &z, &w)?.is_zero())
        }),
        sweep("poisson.reflection-tilde", "reflection equation, five-generator algebra", p.points, p.sampler(13), |s| {
            let (z, w) = s.spectral_pair(&q(0));
            Ok(poisson::check_reflection(poisson::lax_tilde_poly(), &tt, &z, &w, &q(0))?.is_zero())
        }),
        sweep("poisson.reflection-eta", "reflection equation with shift eta", p.points, p.sampler(14), |s| {
            let (z, w) = s.spectral_pair(&eta);
            Ok(poisson::check_reflection(poisson::lax_eta_poly(&eta), &te, &z, &w, &eta)?.is_zero())
        }),
        identity("poisson.jacobi-linear", "Jacobi identity of the Lie-Poisson table", || {
            Ok(poisson::lie_poisson().jacobi_residual()?.is_empty())
        }),
        identity("poisson.jacobi-tilde", "Jacobi identity of the five-generator table", || {
            Ok(tt.jacobi_residual()?.is_empty())
        }),
        identity("poisson.casimir-linear", "1/2 tr S^2 is central for the Lie-Poisson bracket", || {
            poisson::lie_poisson().is_casimir(&tops::casimir2(&poisson::spin_matrix(0)))
        }),
        identity("poisson.casimir-tilde", "Casimirs of the five-generator algebra", || {
            let (a, b) = tops::tilde_casimirs(&poisson::tilde_spin_vars(0));
            Ok(tt.is_casimir(&a)? && tt.is_casimir(&b)?)
        }),
    ];
    let mut etas = vec![q(1), qf(1, 2), q(-3)];
    if !etas.contains(&eta) {
        etas.push(eta.clone());
    }
    for e in etas {
        let t = p.eta_table(&e);
        out.push(identity(&format!("poisson.jacobi-eta[{e}]"), "Jacobi identity of the quadratic table", || {
            Ok(t.jacobi_residual()?.is_empty())
        }));
        out.push(identity(&format!("poisson.casimir-eta[{e}]"), "Casimirs of the quadratic table", || {
            let (c1, c2) = tops::eta_casimirs(&poisson::spin_matrix(0), &SparsePoly::from_q(&e));
            Ok(t.is_casimir(&c1)? && t.is_casimir(&c2)?)
        }));
    }
    out
}

fn tops_suite(p: &Params) -> Vec<Check> {
    let s = poisson::spin_matrix(0);
    let eta = p.eta.clone();
    vec![
        identity("tops.euler-nonrel", "Hamiltonian flow of H equals [S, J(S)]", || {
            let flow = poisson::lie_poisson().hamiltonian_flow(&tops::hamiltonian(&s))?;
            Ok(flow == tops::top_rhs(&s).entries().cloned().collect::<Vec<_>>())
        }),
        identity("tops.euler-eta", "flow of tr S under the quadratic bracket equals [S, J^eta(S)]", || {
            let flow = p.eta_table(&eta).hamiltonian_flow(&s.tr())?;
            let rhs = tops::eta_top_rhs(&s, &SparsePoly::from_q(&eta))?;
            Ok(flow == rhs.entries().cloned().collect::<Vec<_>>())
        }),
        sweep("tops.intertwining", "gauge equivalence of the two relativistic Lax matrices", p.points, p.sampler(20), |smp| {
            let t = tops::TildeSpin { s0: smp.rational(), s: smp.spin() };
            loop {
                let (z, e) = (smp.rational(), smp.rational());
                let bad = (&z - &e / q(2)).is_zero() || (&z * q(2) + &e).is_zero() || (&z * q(2) - &e).is_zero();
                if !bad {
                    return Ok(tops::intertwining_residual(&z, &e, &t)?.is_zero());
                }
            }
        }),
        sweep("tops.component-map", "change of variables and its inverse", p.points, p.sampler(21), |smp| {
            let (z, e) = (smp.rational(), smp.rational());
            let t = tops::TildeSpin { s0: smp.rational(), s: smp.spin() };
            let back = tops::tilde_from_eta(&tops::change_vars(&e, &t)?, &e);
            let s = smp.spin();
            let round = tops::change_vars(&e, &tops::tilde_from_eta(&s, &e))? == s;
            Ok(back.s0 == t.s0 && tops::lax_tilde(&z, &back)? == tops::lax_tilde(&z, &t)? && round)
        }),
        sweep("tops.l-of-l", "L(z, L(z, S)) = S/z^2 + 2J(S)", p.points, p.sampler(22), |smp| {
            let (z, s) = (smp.rational(), smp.spin());
            Ok(tops::l_of_l_residual(&z, &s)?.is_zero())
        }),
        sweep("tops.j-eta-tilde", "M-operator of the five-generator top", p.points, p.sampler(23), |smp| {
            let t = tops::TildeSpin { s0: smp.rational(), s: smp.spin() };
            Ok(tops::j_eta_tilde_residual(&smp.rational(), &t)?.is_zero())
        }),
        sweep("tops.eta-expansion", "eta-expansion of the relativistic Lax matrix", p.points.min(5), p.sampler(24), |smp| {
            let s = smp.spin();
            let sl = s.map(LaurentBi::from_q);
            let l = tops::lax_eta(&LaurentBi::x(), &sl, &LaurentBi::y())?;
            let coeff = |k: i32| l.map(|e| e.coeff_y(k));
            Ok(coeff(-1) == SpinMat::scalar(LaurentBi::from_q(&s.tr()))
                && coeff(0) == tops::lax_nonrel(&LaurentBi::x(), &sl)?
                && coeff(1) == tops::m_cal(&LaurentBi::x(), &sl))
        }),
        sweep("tops.lax-from-r", "Lax matrices as partial traces of R-matrices", p.points, p.sampler(25), |smp| {
            let (z, s, e) = (smp.rational(), smp.spin(), smp.rational());
            Ok(tops::lax_from_r_residual(&z, &s)?.is_zero() && tops::lax_eta_from_r_residual(&z, &s, &e)?.is_zero())
        }),
    ]
}

fn manybody_suite(p: &Params) -> Vec<Check> {
    let (eta, c, nu) = (p.eta.clone(), p.c.clone(), p.nu.clone());
    let (ef, cf, nf) = (q_to_f64(&eta), q_to_f64(&c), q_to_f64(&nu));
    vec![
        identity("manybody.det-rs", "relativistic bosonization has rank one", || {
            Ok(manybody::det_symbolic(&manybody::rs_map_symbolic(&eta)).is_zero())
        }),
        identity("manybody.det-cm", "nonrelativistic bosonization has rank one", || {
            Ok(manybody::det_symbolic(&manybody::cm_map_symbolic(&nu)).is_zero())
        }),
        identity("manybody.brackets-rs", "canonical brackets induce the quadratic table divided by c", || {
            Ok(manybody::all_zero(&manybody::rs_induced_residuals(&eta, &c)?))
        }),
        identity("manybody.brackets-cm", "canonical brackets induce the Lie-Poisson table", || {
            Ok(manybody::all_zero(&manybody::cm_induced_residuals(&nu)?))
        }),
        float("manybody.limit-slope", "slope of the nonrelativistic limit defect is -4 (deviation)", 4, 0.3, || {
            Ok((manybody::limit_slope(1.0, 1.0, 1.0, &[1e1, 1e2, 1e3, 1e4])? + 4.0).abs())
        }),
        float("manybody.cm-vs-top", "mapped two-body trajectory follows the top", 1000, 1e-8, || {
            manybody::cm_vs_top(0.8, 1.3, nf, 1e-3, 1000)
        }),
        float("manybody.rs-vs-top", "mapped relativistic trajectory follows the rescaled top", 1000, 1e-6, || {
            let kappa = manybody::rs_time_factor(&eta, &c)?
                .ok_or_else(|| elevenvertex::error::Error::Invalid("no constant time factor".into()))?;
            manybody::rs_vs_top(0.6, 1.4, ef, cf, q_to_f64(&kappa), 1e-3, 1000)
        }),
    ]
}

fn gaudin_suite(p: &Params) -> Vec<Check> {
    let mut smp = p.sampler(30);
    let z5 = smp.distinct(5);
    let z3 = smp.distinct(3);
    vec![
        identity("gaudin.sum-h", "site Hamiltonians sum to zero", || {
            let (g, _) = gaudin::symbolic(&z5)?;
            let mut sum = SparsePoly::zero();
            for a in 0..g.n() {
                sum += g.h(a)?;
            }
            Ok(sum.is_zero())
        }),
        identity("gaudin.involution-exact", "Hamiltonians Poisson commute, n = 3 symbolic", || {
            Ok(gaudin::involution_exact(&z3)?.passed())
        }),
        match gaudin::involution_random(&z5, p.points.min(5), p.seed) {
            Ok(r) => Check::exact(
                "gaudin.involution-random",
                "Hamiltonians Poisson commute, n = 5 at seeded points",
                r.points,
                (!r.passed()).then(|| format!("{} nonzero brackets", r.failures.len())),
            ),
            Err(e) => Check::error("gaudin.involution-random", "", e),
        },
        identity("gaudin.spectral", "spectral decomposition of det L(z) for eps in {1, 1/2, 0}", || {
            let (g, _) = gaudin::symbolic(&z3)?;
            for eps in [q(1), qf(1, 2), q(0)] {
                let g = g.clone().with_eps(SparsePoly::from_q(&eps));
                for w in [qf(1, 5), q(3), qf(-7, 2)] {
                    if z3.contains(&w) {
                        continue;
                    }
                    if !g.spectral_residual(&SparsePoly::from_q(&w))?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }),
        identity("gaudin.canonical", "Hamiltonians in canonical variables", || {
            let nus = vec![q(2), qf(-1, 3), qf(5, 4)];
            let g = canonical::composed(&z3, &nus)?;
            for a in 0..3 {
                if g.h(a)? != canonical::h_canonical(a, &z3, &nus) {
                    return Ok(false);
                }
            }
            Ok(g.h0() == canonical::h0_corrected(&z3, &nus))
        }),
    ]
}

fn chain_suite(p: &Params) -> Vec<Check> {
    let mut smp = p.sampler(40);
    let zs = smp.distinct(2);
    let mut out = vec![sweep("chain.trace-factorization", "trace of the monodromy through R-matrices", 3, p.sampler(41), |s| {
        let n = 1 + s.uniform(0.0, 3.0) as usize;
        let sites: Vec<chain::Site<Q>> =
            (0..n).map(|_| chain::Site { eta: s.rational(), z: s.rational(), s: s.spin() }).collect();
        Ok(chain::t0_factorization_residual(&s.rational(), &sites)?.is_zero())
    })];
    let points = p.points.max(20);
    let comm = |name: &str, anchor: &str, r: CoreResult<chain::CommutativityReport>| match r {
        Ok(r) => Check::exact(
            name,
            anchor,
            r.points,
            r.failures.first().map(|(z, w, v)| format!("{{tr T({z}), tr T({w})}} = {v}")),
        ),
        Err(e) => Check::error(name, anchor, e),
    };
    out.push(comm(
        "chain.commutativity",
        "transfer-matrix traces Poisson commute, periodic chain",
        chain::tilde_commutativity(&zs, points, p.seed),
    ));
    out.push(comm(
        "chain.double-row-commutativity",
        "double-row transfer-matrix traces Poisson commute, open chain",
        chain::double_row_commutativity(&zs, &qf(1, 2), true, p.points, p.seed),
    ));
    out.push(identity("chain.boundary-constraint", "L(z) L(-z) is scalar for the boundary spins", || {
        Ok(chain::boundary_constraint_residual()?.is_zero())
    }));
    out
}

fn field_suite(p: &Params) -> Vec<Check> {
    let n = p.points.max(50);
    vec![
        sweep("field.ll-zero-curvature", "zero-curvature split of the Landau-Lifshitz pair on constrained jets", n, p.sampler(50), |s| {
            let (k, l2, z) = (s.rational(), s.rational(), s.rational());
            let jet = constrained_jet(s, &k, &l2);
            Ok(zs_split_residual(&z, &jet)?.is_zero() && zs_jet_residual(&z, &jet)?.is_zero())
        }),
        sweep("field.chiral-zero-curvature", "zero curvature of the two-pole chiral pair", p.points, p.sampler(51), |s| {
            let (s1, s2) = (s.spin(), s.spin());
            let z = s.distinct(3);
            Ok(chiral_zs_residual(&z[0], &z[1], &z[2], &s1, &s2)?.is_zero())
        }),
        sweep("field.light-cone", "light-cone reduction of the chiral model", p.points, p.sampler(52), |s| {
            let (d, s1) = (s.rational(), s.spin());
            Ok(light_cone_residual(&d, &s1, &q(1))?.is_zero())
        }),
        sweep("field.isotropic", "isotropic chiral form at eps = 0", p.points, p.sampler(53), |s| {
            let (s1, s1x, s2, s2x, k) = (s.spin(), s.spin(), s.spin(), s.spin(), s.rational());
            let (a, b) = isotropic_residuals(&q(-2), &k, (&s1, &s1x), (&s2, &s2x))?;
            Ok(a.is_zero() && b.is_zero())
        }),
        sweep("field.gaudin-single-site", "one-site field Gaudin flow equals Landau-Lifshitz", p.points, p.sampler(54), |s| {
            let l2 = s.rational();
            let jet = constrained_jet(s, &q(1), &l2);
            let j = SiteJets { s: vec![jet.s.clone()], sx: vec![jet.sx.clone()], sxx: vec![jet.sxx.clone()] };
            let lhs = gaudin1p1_point(&[q(0)], &j, &jet.alpha()?, 0)?;
            Ok(lhs[0] == ll_jet_rhs(&jet, &q(1))?)
        }),
    ]
}
