//! Acceptance suite: one test per criterion, each printing a single PASS/FAIL line with
//! its measured quantities and runtime. Run with `cargo test --test acceptance -- --nocapture`.

use std::time::Instant;

use elevenvertex::exact::{q, q_to_f64, qf, LaurentBi, One, Q, Ring, Sampler, SparsePoly, SpinMat, TensorOp, Zero};
use elevenvertex::field::chiral::{chiral_zs_residual, isotropic_residuals, light_cone_residual};
use elevenvertex::field::gaudin::{constant_field_hamiltonian, gaudin1p1_point, gaudin1p1_rhs, SiteJets};
use elevenvertex::field::jet::constrained_jet;
use elevenvertex::field::ll::{ll_initial, ll_rhs, zs_jet_residual, zs_split_residual};
use elevenvertex::field::pde::temporal_order;
use elevenvertex::field::{pde_run, FieldGrid, Model};
use elevenvertex::lattice::{canonical, chain, gaudin};
use elevenvertex::{manybody, poisson, rmatrix, tops};

struct Criterion {
    id: u32,
    name: &'static str,
    limit_s: f64,
    start: Instant,
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn new(id: u32, name: &'static str, limit_s: f64) -> Self {
        Criterion { id, name, limit_s, start: Instant::now(), checks: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push((label.into(), ok));
    }

    /// Diagnostic that does not affect the verdict.
    fn info(&mut self, label: impl Into<String>) {
        self.checks.push((format!("info: {}", label.into()), true));
    }

    fn finish(self) {
        let secs = self.start.elapsed().as_secs_f64();
        let in_time = secs < self.limit_s;
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
        let ok = failed.is_empty() && in_time;
        let detail: Vec<&str> = self.checks.iter().map(|c| c.0.as_str()).collect();
        println!(
            "criterion {:>2} [{}] {}: {:.2}s of {}s; {}",
            self.id,
            if ok { "PASS" } else { "FAIL" },
            self.name,
            secs,
            self.limit_s,
            detail.join("; ")
        );
        assert!(in_time, "criterion {} exceeded its time budget", self.id);
        assert!(failed.is_empty(), "criterion {} failed: {}", self.id, failed.join("; "));
    }
}

fn all_zero_poly(t: &TensorOp<SparsePoly>) -> bool {
    t.is_zero()
}

#[test]
fn criterion_01_cybe() {
    let mut c = Criterion::new(1, "classical Yang-Baxter equation", 1.0);
    let mut smp = Sampler::new(101);
    let mut bad = 0;
    for _ in 0..20 {
        let (z, w) = smp.spectral_pair(&q(0));
        if !rmatrix::cybe_residual(&z, &w).unwrap().is_zero() {
            bad += 1;
        }
    }
    c.check(format!("20 points, {bad} nonzero"), bad == 0);
    c.finish();
}

#[test]
fn criterion_02_limits_and_symmetries() {
    let mut c = Criterion::new(2, "classical limit, XXX limits, skew and residue", 1.0);
    let r = rmatrix::classical_r_symbolic();
    c.check("classical limit of R", rmatrix::classical_limit() == Some(r.clone()));
    let z = LaurentBi::x();
    let eps = LaurentBi::y();
    let re = rmatrix::classical_r_eps(&z, &eps).unwrap();
    c.check("eps = 0 classical", rmatrix::at_eps_zero(&re) == Some(rmatrix::yang_r(&z).unwrap()));
    let h = LaurentBi::from_q(&qf(3, 2));
    let big = rmatrix::quantum_r_eps(&h, &z, &eps).unwrap();
    c.check("eps = 0 quantum", rmatrix::at_eps_zero(&big) == Some(rmatrix::yang_quantum_r(&h, &z).unwrap()));
    let minus = rmatrix::classical_r(&(-LaurentBi::x())).unwrap();
    c.check("r12(z) + r21(-z) = 0", (r + rmatrix::swap_legs(&minus).unwrap()).is_zero());
    let p = TensorOp::<Q>::permutation();
    c.check("classical residue P12", rmatrix::series_coeff_r_classical(-1) == p);
    c.check("r^(0) = 0", rmatrix::series_coeff_r_classical(0).is_zero());
    c.check("quantum residue P12", rmatrix::series_coeff_r_quantum(&qf(2, 5), -1).unwrap() == p);
    c.finish();
}

#[test]
fn criterion_03_structures() {
    let mut c = Criterion::new(3, "linear, quadratic and reflection structures", 30.0);
    let mut smp = Sampler::new(103);
    let eta = qf(2, 3);
    let te = poisson::eta_sklyanin(&eta);
    let tt = poisson::tilde_sklyanin();
    let (mut lin, mut quad_e, mut quad_t, mut refl_t, mut refl_e) = (0, 0, 0, 0, 0);
    for _ in 0..10 {
        let (z, w) = smp.spectral_pair(&q(0));
        lin += !all_zero_poly(&poisson::check_linear(&z, &w).unwrap()) as usize;
        quad_e += !all_zero_poly(&poisson::check_quadratic(poisson::lax_eta_poly(&eta), &te, &z, &w).unwrap()) as usize;
        quad_t += !all_zero_poly(&poisson::check_quadratic(poisson::lax_tilde_poly(), &tt, &z, &w).unwrap()) as usize;
        refl_t += !all_zero_poly(&poisson::check_reflection(poisson::lax_tilde_poly(), &tt, &z, &w, &q(0)).unwrap()) as usize;
        let (z, w) = smp.spectral_pair(&eta);
        let r = poisson::check_reflection(poisson::lax_eta_poly(&eta), &te, &z, &w, &eta).unwrap();
        refl_e += !all_zero_poly(&r) as usize;
    }
    c.check(format!("linear {lin}/10 nonzero"), lin == 0);
    c.check(format!("quadratic eta {quad_e}/10 nonzero"), quad_e == 0);
    c.check(format!("quadratic tilde {quad_t}/10 nonzero"), quad_t == 0);
    c.check(format!("reflection tilde {refl_t}/10 nonzero"), refl_t == 0);
    c.check(format!("reflection eta {refl_e}/10 nonzero"), refl_e == 0);
    c.finish();
}

#[test]
fn criterion_04_jacobi_and_casimirs() {
    let mut c = Criterion::new(4, "Jacobi identities and Casimirs", 30.0);
    c.check("Jacobi linear", poisson::lie_poisson().jacobi_residual().unwrap().is_empty());
    for e in [q(1), qf(1, 2), q(-3)] {
        c.check(format!("Jacobi quadratic eta={e}"), poisson::eta_sklyanin(&e).jacobi_residual().unwrap().is_empty());
    }
    c.check("Jacobi five-generator", poisson::tilde_sklyanin().jacobi_residual().unwrap().is_empty());
    let s = poisson::spin_matrix(0);
    let t = poisson::lie_poisson();
    c.check("1/2 tr S^2 central", t.is_casimir(&tops::casimir2(&s)).unwrap());
    for e in [q(1), qf(1, 2), q(-3)] {
        let (c1, c2) = tops::eta_casimirs(&s, &SparsePoly::from_q(&e));
        let te = poisson::eta_sklyanin(&e);
        c.check(format!("quadratic Casimirs eta={e}"), te.is_casimir(&c1).unwrap() && te.is_casimir(&c2).unwrap());
    }
    let (ct2, ct0) = tops::tilde_casimirs(&poisson::tilde_spin_vars(0));
    let tt = poisson::tilde_sklyanin();
    c.check("five-generator Casimirs", tt.is_casimir(&ct2).unwrap() && tt.is_casimir(&ct0).unwrap());
    c.finish();
}

#[test]
fn criterion_05_euler_forms() {
    let mut c = Criterion::new(5, "Euler-form consistency", 5.0);
    let s = poisson::spin_matrix(0);
    let flow = poisson::lie_poisson().hamiltonian_flow(&tops::hamiltonian(&s)).unwrap();
    c.check("flow of H = [S, J(S)]", flow == tops::top_rhs(&s).entries().cloned().collect::<Vec<_>>());
    for e in [qf(3, 7), q(-2)] {
        let flow = poisson::eta_sklyanin(&e).hamiltonian_flow(&s.tr()).unwrap();
        let rhs = tops::eta_top_rhs(&s, &SparsePoly::from_q(&e)).unwrap();
        c.check(format!("flow of tr S = [S, J^eta(S)], eta={e}"), flow == rhs.entries().cloned().collect::<Vec<_>>());
    }
    c.finish();
}

#[test]
fn criterion_06_change_of_variables() {
    let mut c = Criterion::new(6, "change of variables and Lax identities", 10.0);
    let mut smp = Sampler::new(106);
    let (mut inter, mut comp, mut lol, mut we11, mut tried) = (0, 0, 0, 0, 0);
    for _ in 0..20 {
        let t = tops::TildeSpin { s0: smp.rational(), s: smp.spin() };
        let (z, e) = (smp.rational(), smp.rational());
        let z_bad = (&z - &e / q(2)).is_zero() || (&z * q(2) + &e).is_zero() || (&z * q(2) - &e).is_zero();
        if !z_bad {
            tried += 1;
            inter += !tops::intertwining_residual(&z, &e, &t).unwrap().is_zero() as usize;
        }
        let cal = tops::change_vars(&e, &t).unwrap();
        let back = tops::tilde_from_eta(&cal, &e);
        let same = back.s0 == t.s0 && tops::lax_tilde(&z, &back).unwrap() == tops::lax_tilde(&z, &t).unwrap();
        let s = smp.spin();
        let round = tops::change_vars(&e, &tops::tilde_from_eta(&s, &e)).unwrap() == s;
        comp += !(same && round) as usize;
        lol += !tops::l_of_l_residual(&z, &s).unwrap().is_zero() as usize;
        we11 += !tops::j_eta_tilde_residual(&z, &t).unwrap().is_zero() as usize;
    }
    c.check(format!("intertwining {inter}/{tried} nonzero"), inter == 0 && tried >= 10);
    c.check(format!("component map {comp}/20 inconsistent"), comp == 0);
    c.check(format!("L(z, L(z, S)) identity {lol}/20 nonzero"), lol == 0);
    c.check(format!("J^2z form of the M-operator {we11}/20 nonzero"), we11 == 0);
    // eta-expansion of L^eta: [eta^-1] = tr S, [eta^0] = L(z, S), [eta^1] = M(z, S)
    let s = smp.spin();
    let sl = s.map(LaurentBi::from_q);
    let l = tops::lax_eta(&LaurentBi::x(), &sl, &LaurentBi::y()).unwrap();
    let coeff = |k: i32| l.map(|e| e.coeff_y(k));
    let ok = coeff(-1) == SpinMat::scalar(LaurentBi::from_q(&s.tr()))
        && coeff(0) == tops::lax_nonrel(&LaurentBi::x(), &sl).unwrap()
        && coeff(1) == tops::m_cal(&LaurentBi::x(), &sl);
    c.check("eta-expansion coefficients", ok);
    c.finish();
}

#[test]
fn criterion_07_bosonization() {
    let mut c = Criterion::new(7, "bosonization", 30.0);
    let (eta, cc, nu) = (qf(2, 3), q(5), qf(7, 3));
    c.check("det S_RS = 0", manybody::det_symbolic(&manybody::rs_map_symbolic(&eta)).is_zero());
    c.check("det S_CM = 0", manybody::det_symbolic(&manybody::cm_map_symbolic(&nu)).is_zero());
    c.check("RS brackets = quadratic table / c", manybody::all_zero(&manybody::rs_induced_residuals(&eta, &cc).unwrap()));
    c.check("CM brackets = linear table", manybody::all_zero(&manybody::cm_induced_residuals(&nu).unwrap()));
    c.finish();
}

#[test]
fn criterion_08_limit_law() {
    let mut c = Criterion::new(8, "nonrelativistic limit law", 1.0);
    let slope = manybody::limit_slope(1.0, 1.0, 1.0, &[1e1, 1e2, 1e3, 1e4]).unwrap();
    c.check(format!("slope {slope:.4}"), (slope + 4.0).abs() <= 0.3);
    c.finish();
}

#[test]
fn criterion_09_trajectories() {
    let mut c = Criterion::new(9, "trajectory equivalence", 10.0);
    let e = manybody::cm_vs_top(0.8, 1.3, 0.5, 1e-3, 1000).unwrap();
    c.check(format!("CM vs top sup error {e:.2e}"), e < 1e-8);
    let (eta, cc) = (0.5, 2.0);
    let kappa = q_to_f64(&manybody::rs_time_factor(&qf(1, 2), &q(2)).unwrap().unwrap());
    let measured = manybody::measure_rs_factor(0.6, 1.4, eta, cc).unwrap();
    c.check(format!("time factor exact {kappa}, measured {measured:.10}"), (measured - kappa).abs() < 1e-8);
    let e = manybody::rs_vs_top(0.6, 1.4, eta, cc, kappa, 1e-3, 1000).unwrap();
    c.check(format!("RS vs relativistic top sup error {e:.2e}"), e < 1e-6);
    c.finish();
}

#[test]
fn criterion_10_gaudin() {
    let mut c = Criterion::new(10, "Gaudin model", 120.0);
    for zs in [vec![q(0), qf(1, 2), q(-2)], vec![q(0), q(1), q(-1), qf(1, 2), q(3)]] {
        let (g, _) = gaudin::symbolic(&zs).unwrap();
        let mut sum = SparsePoly::zero();
        for a in 0..zs.len() {
            sum += g.h(a).unwrap();
        }
        c.check(format!("sum h_a = 0 (n={})", zs.len()), sum.is_zero());
    }
    let rep = gaudin::involution_exact(&[q(0), q(1), qf(-5, 2)]).unwrap();
    c.check(format!("involution exact n=3 ({} pairs)", rep.pairs_checked), rep.passed());
    let rep = gaudin::involution_random(&[q(0), q(1), q(-1), qf(1, 2), q(3)], 5, 110).unwrap();
    c.check(format!("involution randomized n=5 ({} pairs, {} points)", rep.pairs_checked, rep.points), rep.passed());
    let (g, _) = gaudin::symbolic(&[q(1), q(-1), qf(2, 3)]).unwrap();
    let mut spectral = 0;
    for eps in [q(1), qf(1, 2), q(0)] {
        let g = g.clone().with_eps(SparsePoly::from_q(&eps));
        for w in [qf(1, 5), q(3), qf(-7, 2)] {
            spectral += !g.spectral_residual(&SparsePoly::from_q(&w)).unwrap().is_zero() as usize;
        }
    }
    c.check(format!("spectral decomposition residual: {spectral}/9 nonzero"), spectral == 0);
    let (zs, nus) = (vec![q(0), qf(3, 2), q(-1)], vec![q(2), qf(-1, 3), qf(5, 4)]);
    let g = canonical::composed(&zs, &nus).unwrap();
    let ha = (0..3).all(|a| g.h(a).unwrap() == canonical::h_canonical(a, &zs, &nus));
    c.check("canonical h_a = composed", ha);
    c.check("canonical h_0 = composed", g.h0() == canonical::h0_corrected(&zs, &nus));
    c.finish();
}

#[test]
fn criterion_11_chains() {
    let mut c = Criterion::new(11, "spin chains", 120.0);
    let mut smp = Sampler::new(111);
    let mut bad = 0;
    for n in 1..=3 {
        let sites: Vec<chain::Site<Q>> =
            (0..n).map(|_| chain::Site { eta: smp.rational(), z: smp.rational(), s: smp.spin() }).collect();
        bad += !chain::t0_factorization_residual(&qf(123, 11), &sites).unwrap().is_zero() as usize;
    }
    c.check(format!("T0 factorization {bad}/3 nonzero"), bad == 0);
    let rep = chain::tilde_commutativity(&[q(0), qf(1, 3)], 20, 112).unwrap();
    c.check(format!("{{tr T(z), tr T(w)}} = 0, n=2, {} points", rep.points), rep.passed() && rep.points >= 20);
    c.check("boundary constraint", chain::boundary_constraint_residual().unwrap().is_zero());
    c.finish();
}

#[test]
fn criterion_12_landau_lifshitz() {
    let mut c = Criterion::new(12, "Landau-Lifshitz", 60.0);
    let mut smp = Sampler::new(112);
    let mut bad = 0;
    for _ in 0..50 {
        let (k, l2, z) = (smp.rational(), smp.rational(), smp.rational());
        let jet = constrained_jet(&mut smp, &k, &l2);
        bad += !(zs_split_residual(&z, &jet).unwrap().is_zero() && zs_jet_residual(&z, &jet).unwrap().is_zero()) as usize;
    }
    c.check(format!("zero-curvature split on 50 jets: {bad} nonzero"), bad == 0);

    let (lambda, k, n) = (1.0f64, 1.0f64, 128);
    let lambda2 = lambda * lambda;
    let model = Model::Ll { alpha: k * k / (8.0 * lambda2), lambda2, eps: 1.0 };
    let len = 2.0 * std::f64::consts::PI;
    let grid = ll_initial(n, len, lambda2, 12);
    match pde_run(&model, &[grid.clone()], 1e-3, 1000, 10) {
        Ok(run) => {
            let cas = run.monitors.iter().filter_map(|m| m.casimir_defect).fold(0.0, f64::max);
            c.check(format!("max |tr S^2 - 2 lambda^2| = {cas:.2e}"), cas < 1e-8);
            let drift = run.relative_drift(|m| m.hamiltonian.unwrap());
            c.check(format!("Hamiltonian relative drift {drift:.2e}"), drift < 1e-6);
            let order = temporal_order(&model, &[grid], 2e-3, 1.0).unwrap_or(f64::NAN);
            c.check(format!("dt-halving order {order:.2}"), order >= 3.5);
        }
        Err(e) => c.check(format!("PDE run lambda=k=1: {e}"), false),
    }
    // Same run on the elliptic branch lambda^2 = -1, where the equation is well posed.
    let model = Model::Ll { alpha: -k * k / 8.0, lambda2: -1.0, eps: 1.0 };
    let grid = ll_initial(n, len, -1.0, 12);
    if let Ok(run) = pde_run(&model, &[grid.clone()], 1e-3, 1000, 10) {
        let cas = run.monitors.iter().filter_map(|m| m.casimir_defect).fold(0.0, f64::max);
        let printed = run.relative_drift(|m| m.hamiltonian.unwrap());
        let energy = run.relative_drift(|m| m.energy.unwrap());
        let order = temporal_order(&model, &[grid], 2e-3, 1.0).unwrap_or(f64::NAN);
        c.info(format!(
            "lambda^2=-1: Casimir {cas:.2e}, printed Hamiltonian drift {printed:.2e}, energy 1/2(tr SJ - alpha tr S_x^2) drift {energy:.2e}, order {order:.2}"
        ));
    }
    c.finish();
}

fn chiral_fields(n: usize, len: f64) -> Vec<FieldGrid> {
    let w = 2.0 * std::f64::consts::PI / len;
    let a = FieldGrid::from_fn(n, len, |x| SpinMat::new(0.3 * (w * x).sin(), 0.5, 0.2 + 0.1 * (w * x).cos(), -0.1));
    let b = FieldGrid::from_fn(n, len, |x| SpinMat::new(0.4, 0.1 * (w * x).cos(), -0.3, 0.2 * (w * x).sin()));
    vec![a, b]
}

#[test]
fn criterion_13_chiral() {
    let mut c = Criterion::new(13, "principal chiral model", 60.0);
    let mut smp = Sampler::new(113);
    let (mut zs_bad, mut lc_bad, mut iso_bad) = (0, 0, 0);
    for _ in 0..20 {
        let (s1, s2) = (smp.spin(), smp.spin());
        let z = smp.distinct(3);
        zs_bad += !chiral_zs_residual(&z[0], &z[1], &z[2], &s1, &s2).unwrap().is_zero() as usize;
        lc_bad += !light_cone_residual(&z[1], &s1, &q(1)).unwrap().is_zero() as usize;
        let (s1x, s2x, k) = (smp.spin(), smp.spin(), smp.rational());
        let (m, p) = isotropic_residuals(&q(-2), &k, (&s1, &s1x), (&s2, &s2x)).unwrap();
        iso_bad += !(m.is_zero() && p.is_zero()) as usize;
    }
    c.check(format!("zero curvature of U = L1 + L2, V = L1 - L2: {zs_bad}/20 nonzero"), zs_bad == 0);
    c.check(format!("light-cone reduction: {lc_bad}/20 nonzero"), lc_bad == 0);
    c.check(format!("isotropic form at eps=0: {iso_bad}/20 nonzero"), iso_bad == 0);
    let model = Model::Chiral { z1: 0.5, z2: -0.5, k: 1.0, eps: 1.0 };
    let run = pde_run(&model, &chiral_fields(128, 2.0 * std::f64::consts::PI), 1e-3, 1000, 10).unwrap();
    for a in 0..2 {
        let d = run.relative_drift(|m| m.trace_sq[a]);
        c.check(format!("field {} trace-square drift {d:.2e}", a + 1), d < 1e-8);
    }
    c.finish();
}

#[test]
fn criterion_14_gaudin_field() {
    let mut c = Criterion::new(14, "1+1 Gaudin model", 30.0);
    let g = ll_initial(128, 2.0 * std::f64::consts::PI, -1.0, 14);
    let alpha = -0.125;
    let got = gaudin1p1_rhs(&[0.3], &[g.clone()], alpha, 0).unwrap();
    c.check("n=1 right side equals LL bit for bit", got[0] == ll_rhs(&g, alpha, 1.0));
    let mut smp = Sampler::new(114);
    let mut bad = 0;
    for _ in 0..10 {
        let l2 = smp.rational();
        let jet = constrained_jet(&mut smp, &q(1), &l2);
        let j = SiteJets { s: vec![jet.s.clone()], sx: vec![jet.sx.clone()], sxx: vec![jet.sxx.clone()] };
        let a = jet.alpha().unwrap();
        let lhs = gaudin1p1_point(&[q(0)], &j, &a, 0).unwrap();
        bad += (lhs[0] != elevenvertex::field::ll::ll_jet_rhs(&jet, &q(1)).unwrap()) as usize;
    }
    c.check(format!("n=1 exact jets: {bad}/10 differ"), bad == 0);
    let z = vec![q(0), qf(3, 2), qf(-2, 3)];
    let (gs, table) = gaudin::symbolic(&z).unwrap();
    let zp: Vec<SparsePoly> = z.iter().map(SparsePoly::from_q).collect();
    let zero = vec![SpinMat::zero(); 3];
    let j = SiteJets { s: gs.spins.clone(), sx: zero.clone(), sxx: zero };
    let mut ok = true;
    for a in 0..3 {
        let rhs = gaudin1p1_point(&zp, &j, &SparsePoly::one(), a).unwrap();
        let h = constant_field_hamiltonian(&zp, &gs.spins, a).unwrap();
        let flow = table.hamiltonian_flow(&h).unwrap();
        let mine: Vec<SparsePoly> = rhs.iter().flat_map(|m| m.entries().cloned()).collect();
        ok &= mine == flow;
    }
    c.check("constant fields = coupled-top Lie-Poisson flow (n=3)", ok);
    c.finish();
}
