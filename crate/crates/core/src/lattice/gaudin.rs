//! Rational Gaudin model: `L^G(z) = Σ_a L(z − z_a, S^a)` on a direct sum of linear brackets.

use crate::error::{Error, Result};
use crate::exact::{qf, Point, Q, Ring, Sampler, SparsePoly, SpinMat, Var, Zero};
use crate::integrate::rk4;
use crate::poisson::{lie_poisson, spin_matrix, BracketTable};
use crate::tops::{casimir2, lax_nonrel_eps, m_cal_eps};

/// Sites at pairwise distinct `z_a` carrying spins `S^a`, with deformation `ε` (`ε = 1`
/// is the undeformed model, `ε = 0` the isotropic limit).
#[derive(Clone, Debug, PartialEq)]
pub struct Gaudin<T> {
    pub z: Vec<T>,
    pub spins: Vec<SpinMat<T>>,
    pub eps: T,
}

fn tr_prod<T: Ring>(a: &SpinMat<T>, b: &SpinMat<T>) -> T {
    a.matmul(b).tr()
}

impl<T: Ring> Gaudin<T> {
    pub fn new(z: Vec<T>, spins: Vec<SpinMat<T>>) -> Result<Self> {
        if z.len() != spins.len() || z.is_empty() {
            return Err(Error::Dimension(format!("{} positions, {} spins", z.len(), spins.len())));
        }
        for a in 0..z.len() {
            for b in (a + 1)..z.len() {
                if (z[a].clone() - z[b].clone()).is_zero() {
                    return Err(Error::Invalid(format!("sites {a} and {b} coincide")));
                }
            }
        }
        Ok(Gaudin { z, spins, eps: T::one() })
    }

    pub fn with_eps(mut self, eps: T) -> Self {
        self.eps = eps;
        self
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    fn zd(&self, a: usize, c: usize) -> T {
        self.z[a].clone() - self.z[c].clone()
    }

    fn site_lax(&self, z: &T, s: &SpinMat<T>) -> Result<SpinMat<T>> {
        lax_nonrel_eps(z, s, &self.eps)
    }

    pub fn lax(&self, z: &T) -> Result<SpinMat<T>> {
        let mut acc = SpinMat::zero();
        for (za, s) in self.z.iter().zip(&self.spins) {
            acc = acc + self.site_lax(&(z.clone() - za.clone()), s)?;
        }
        Ok(acc)
    }

    /// `h_{a,c} = −tr(S^a L(z_a − z_c, S^c))`.
    pub fn h_pair(&self, a: usize, c: usize) -> Result<T> {
        Ok(-tr_prod(&self.spins[a], &self.site_lax(&self.zd(a, c), &self.spins[c])?))
    }

    /// Expanded form of `h_{a,c}`:
    /// `−tr(S^aS^c)/d + ε²d(S^a₁₂(S^c₁₁−S^c₂₂) + S^c₁₂(S^a₁₁−S^a₂₂)) + ε⁴d³S^a₁₂S^c₁₂`.
    pub fn h_pair_explicit(&self, a: usize, c: usize) -> Result<T> {
        let (sa, sc) = (&self.spins[a], &self.spins[c]);
        let d = self.zd(a, c);
        let id = d.try_inv().ok_or_else(|| Error::Pole(format!("z_{a} = z_{c}")))?;
        let e2 = self.eps.pow(2);
        let mixed = sa.s12().clone() * (sc.s11().clone() - sc.s22().clone())
            + sc.s12().clone() * (sa.s11().clone() - sa.s22().clone());
        Ok(-(tr_prod(sa, sc) * id) + e2.clone() * d.clone() * mixed
            + e2.pow(2) * d.pow(3) * sa.s12().clone() * sc.s12().clone())
    }

    pub fn h(&self, a: usize) -> Result<T> {
        let mut acc = T::zero();
        for c in (0..self.n()).filter(|&c| c != a) {
            acc = acc + self.h_pair(a, c)?;
        }
        Ok(acc)
    }

    /// `h₀ = ½ Σ_{b,c} tr(S^b 𝓜(z_b − z_c, S^c))`.
    pub fn h0(&self) -> T {
        let mut acc = T::zero();
        for b in 0..self.n() {
            for c in 0..self.n() {
                let m = m_cal_eps(&self.zd(b, c), &self.spins[c], &self.eps);
                acc = acc + tr_prod(&self.spins[b], &m);
            }
        }
        acc.scale(&qf(1, 2))
    }

    /// Expanded form of `h₀` as a diagonal sum plus a sum over pairs `b > c`.
    pub fn h0_explicit(&self) -> T {
        let e2 = self.eps.pow(2);
        let s = &self.spins;
        let dg = |x: &SpinMat<T>| x.s11().clone() - x.s22().clone();
        let mut acc = T::zero();
        for a in 0..self.n() {
            acc = acc - e2.clone() * s[a].s12().clone() * dg(&s[a]);
        }
        for b in 0..self.n() {
            for c in 0..b {
                let t = s[b].s12().clone() * dg(&s[c]) + s[c].s12().clone() * dg(&s[b]);
                let u = self.zd(b, c).pow(2) * s[b].s12().clone() * s[c].s12().clone();
                acc = acc - e2.clone() * t - e2.pow(2) * u.scale(&qf(2, 1));
            }
        }
        acc
    }

    /// `½ tr L^G(z)² − Σ_a [½ tr(S^a)²/(z−z_a)² − h_a/(z−z_a)] − 2h₀`.
    pub fn spectral_residual(&self, z: &T) -> Result<T> {
        let l = self.lax(z)?;
        let mut acc = tr_prod(&l, &l).scale(&qf(1, 2));
        for a in 0..self.n() {
            let w = (z.clone() - self.z[a].clone())
                .try_inv()
                .ok_or_else(|| Error::Pole(format!("z = z_{a}")))?;
            acc = acc - casimir2(&self.spins[a]) * w.pow(2) + self.h(a)? * w;
        }
        Ok(acc - self.h0().scale(&qf(2, 1)))
    }

    /// Right sides of the `t_a` flow: `∂S^b = −[S^b, L(z_a−z_b, S^a)]` for `b ≠ a` and
    /// `∂S^a = Σ_{c≠a} [S^a, L(z_c−z_a, S^c)]`.
    pub fn flow_a(&self, a: usize) -> Result<Vec<SpinMat<T>>> {
        let mut out = Vec::with_capacity(self.n());
        for b in 0..self.n() {
            if b == a {
                let mut acc = SpinMat::zero();
                for c in (0..self.n()).filter(|&c| c != a) {
                    let l = self.site_lax(&self.zd(c, a), &self.spins[c])?;
                    acc = acc + self.spins[a].commutator(&l);
                }
                out.push(acc);
            } else {
                let l = self.site_lax(&self.zd(a, b), &self.spins[a])?;
                out.push(-self.spins[b].commutator(&l));
            }
        }
        Ok(out)
    }

    /// Right sides of the `t₀` flow: `∂S^a = [S^a, J(S^a)] + Σ_{c≠a} [S^a, 𝓜(z_a−z_c, S^c)]`.
    pub fn flow_0(&self) -> Vec<SpinMat<T>> {
        (0..self.n())
            .map(|a| {
                let mut m = SpinMat::zero();
                for c in 0..self.n() {
                    m = m + m_cal_eps(&self.zd(a, c), &self.spins[c], &self.eps);
                }
                self.spins[a].commutator(&m)
            })
            .collect()
    }

    /// `M^G_a(z) = −L(z − z_a, S^a)`.
    pub fn m_a(&self, a: usize, z: &T) -> Result<SpinMat<T>> {
        Ok(-self.site_lax(&(z.clone() - self.z[a].clone()), &self.spins[a])?)
    }

    /// M-operator for which the `t_a` flow takes the form `∂L^G = [L^G, M]`:
    /// `L(z − z_a, S^a) = −M^G_a(z)`.
    pub fn m_a_lax(&self, a: usize, z: &T) -> Result<SpinMat<T>> {
        self.site_lax(&(z.clone() - self.z[a].clone()), &self.spins[a])
    }

    /// `M^G_0(z) = Σ_c 𝓜(z − z_c, S^c)`.
    pub fn m_0(&self, z: &T) -> SpinMat<T> {
        let mut acc = SpinMat::zero();
        for (zc, s) in self.z.iter().zip(&self.spins) {
            acc = acc + m_cal_eps(&(z.clone() - zc.clone()), s, &self.eps);
        }
        acc
    }

    /// `Σ_b L(z − z_b, Ṡ^b) − [L^G(z), M]` for a flow `Ṡ` and its M-operator.
    pub fn lax_residual(&self, flow: &[SpinMat<T>], m: &SpinMat<T>, z: &T) -> Result<SpinMat<T>> {
        let mut dl = SpinMat::zero();
        for (zb, f) in self.z.iter().zip(flow) {
            dl = dl + self.site_lax(&(z.clone() - zb.clone()), f)?;
        }
        Ok(dl - self.lax(z)?.commutator(m))
    }

    /// `Σ_c M^G_c(z) + L^G(z)`.
    pub fn m_sum_residual(&self, z: &T) -> Result<SpinMat<T>> {
        let mut acc = self.lax(z)?;
        for a in 0..self.n() {
            acc = acc + self.m_a(a, z)?;
        }
        Ok(acc)
    }
}

/// Gaudin model on generator spins: site `a` uses ids `4a..4a+4` of the returned table.
pub fn symbolic(z: &[Q]) -> Result<(Gaudin<SparsePoly>, BracketTable)> {
    let n = z.len();
    let (table, offsets) = BracketTable::direct_sum("gaudin", &vec![lie_poisson(); n]);
    let spins = offsets.iter().map(|&o| spin_matrix(o)).collect();
    let zs = z.iter().map(SparsePoly::from_q).collect();
    Ok((Gaudin::new(zs, spins)?, table))
}

/// Gaudin model at a point of the symbolic phase space.
pub fn at_point(z: &[Q], point: &Point) -> Result<Gaudin<Q>> {
    let spins = (0..z.len())
        .map(|a| {
            spin_matrix(4 * a as Var).try_map(|e| e.eval(point))
        })
        .collect::<Result<Vec<_>>>()?;
    Gaudin::new(z.to_vec(), spins)
}

/// Result of the involution sweep: every nonzero bracket found, keyed by pair label.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InvolutionReport {
    pub pairs_checked: usize,
    pub points: usize,
    pub failures: Vec<(String, String)>,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn hamiltonians(g: &Gaudin<SparsePoly>) -> Result<Vec<(String, SparsePoly)>> {
    let mut hs = vec![("h0".to_string(), g.h0())];
    for a in 0..g.n() {
        hs.push((format!("h{}", a + 1), g.h(a)?));
    }
    Ok(hs)
}

/// `{h_a, h_b} = {h_a, h₀} = 0`, expanded symbolically.
pub fn involution_exact(z: &[Q]) -> Result<InvolutionReport> {
    let (g, table) = symbolic(z)?;
    let hs = hamiltonians(&g)?;
    let mut rep = InvolutionReport::default();
    for i in 0..hs.len() {
        for j in (i + 1)..hs.len() {
            rep.pairs_checked += 1;
            let b = table.bracket(&hs[i].1, &hs[j].1)?;
            if !b.is_zero() {
                rep.failures.push((format!("{{{},{}}}", hs[i].0, hs[j].0), table.show(&b)));
            }
        }
    }
    Ok(rep)
}

/// Same check evaluated at `points` seeded phase-space points.
pub fn involution_random(z: &[Q], points: usize, seed: u64) -> Result<InvolutionReport> {
    let (g, table) = symbolic(z)?;
    let hs = hamiltonians(&g)?;
    let mut smp = Sampler::new(seed);
    let mut rep = InvolutionReport { points, ..Default::default() };
    for _ in 0..points {
        let pt = smp.point(table.generators());
        for i in 0..hs.len() {
            for j in (i + 1)..hs.len() {
                rep.pairs_checked += 1;
                let v = table.bracket_at(&hs[i].1, &hs[j].1, &pt)?;
                if !v.is_zero() {
                    rep.failures.push((format!("{{{},{}}}", hs[i].0, hs[j].0), v.to_string()));
                }
            }
        }
    }
    Ok(rep)
}

/// Drift monitors of an integrated `t₀` trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct T0Run {
    pub final_spins: Vec<SpinMat<f64>>,
    /// Largest relative change of any site trace or `½ tr S²`.
    pub casimir_drift: f64,
    /// Relative change of `h₀`.
    pub h0_drift: f64,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// RK4 integration of the `t₀` flow.
pub fn run_t0(g: &Gaudin<f64>, dt: f64, steps: usize) -> Result<T0Run> {
    let n = g.n();
    let pack = |s: &[SpinMat<f64>]| s.iter().flat_map(|m| m.entries().copied()).collect::<Vec<_>>();
    let unpack = |y: &[f64]| {
        (0..n)
            .map(|a| SpinMat::new(y[4 * a], y[4 * a + 1], y[4 * a + 2], y[4 * a + 3]))
            .collect::<Vec<_>>()
    };
    let with = |spins: Vec<SpinMat<f64>>| Gaudin { z: g.z.clone(), spins, eps: g.eps };
    let cas = |s: &[SpinMat<f64>]| s.iter().flat_map(|m| [m.tr(), casimir2(m)]).collect::<Vec<_>>();
    let (c0, h00) = (cas(&g.spins), g.h0());
    let f = |_t: f64, y: &[f64]| Ok(pack(&with(unpack(y)).flow_0()));
    let y = rk4(f, &pack(&g.spins), dt, steps, |_, _, _| Ok(()))?;
    let spins = unpack(&y);
    let c1 = cas(&spins);
    let casimir_drift = c0.iter().zip(&c1).map(|(a, b)| rel(*b, *a)).fold(0.0, f64::max);
    let h0_drift = rel(with(spins.clone()).h0(), h00);
    Ok(T0Run { final_spins: spins, casimir_drift, h0_drift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::tops::lax_nonrel;

    fn diag() -> SpinMat<Q> {
        SpinMat::new(q(1), q(0), q(0), q(-1))
    }

    #[test]
    fn lax_examples() {
        let mut smp = Sampler::new(4);
        let s = smp.spin();
        let g = Gaudin::new(vec![q(0)], vec![s.clone()]).unwrap();
        assert_eq!(g.lax(&qf(3, 7)).unwrap(), lax_nonrel(&qf(3, 7), &s).unwrap());
        let s2 = smp.spin();
        let g = Gaudin::new(vec![q(1), q(-2)], vec![s.clone(), s2.clone()]).unwrap().with_eps(q(0));
        let z = qf(1, 3);
        let want = s.scale(&(&z - q(1)).recip()) + s2.scale(&(&z + q(2)).recip());
        assert_eq!(g.lax(&z).unwrap(), want);
        assert!(Gaudin::new(vec![q(1), q(1)], vec![s.clone(), s]).is_err());
    }

    #[test]
    fn hamiltonian_examples() {
        let delta = qf(5, 3);
        let g = Gaudin::new(vec![delta.clone(), q(0)], vec![diag(), diag()]).unwrap();
        assert_eq!(g.h(0).unwrap(), -q(2) / &delta);
        assert_eq!(g.h(1).unwrap(), q(2) / &delta);
        assert!(g.h0().is_zero());
    }

    #[test]
    fn symbolic_identities() {
        let z = [q(0), qf(1, 2), q(-2)];
        let (g, _) = symbolic(&z).unwrap();
        let mut sum = SparsePoly::zero();
        for a in 0..3 {
            sum += g.h(a).unwrap();
            for c in 0..3 {
                if a != c {
                    assert_eq!(g.h_pair(a, c).unwrap(), -g.h_pair(c, a).unwrap());
                    assert_eq!(g.h_pair(a, c).unwrap(), g.h_pair_explicit(a, c).unwrap());
                }
            }
        }
        assert!(sum.is_zero());
        assert_eq!(g.h0(), g.h0_explicit());
    }

    #[test]
    fn spectral_expansion() {
        let z = [q(1), q(-1), qf(2, 3)];
        let (g, _) = symbolic(&z).unwrap();
        for eps in [q(1), q(0), qf(1, 2)] {
            let g = g.clone().with_eps(SparsePoly::from_q(&eps));
            for w in [qf(1, 5), q(3), qf(-7, 2)] {
                assert!(g.spectral_residual(&SparsePoly::from_q(&w)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn flows_and_lax_form() {
        let z = [q(0), q(2), qf(-1, 3)];
        let (g, table) = symbolic(&z).unwrap();
        let w = SparsePoly::from_q(&qf(5, 4));
        for a in 0..3 {
            let h = g.h(a).unwrap();
            let flow = g.flow_a(a).unwrap();
            let eng = table.hamiltonian_flow(&h).unwrap();
            let mine: Vec<SparsePoly> = flow.iter().flat_map(|m| m.entries().cloned()).collect();
            assert_eq!(eng, mine);
            // the t_a flows close on L(z − z_a, S^a), the negative of M^G_a
            assert!(!g.lax_residual(&flow, &g.m_a(a, &w).unwrap(), &w).unwrap().is_zero());
            assert!(g.lax_residual(&flow, &g.m_a_lax(a, &w).unwrap(), &w).unwrap().is_zero());
        }
        let flow = g.flow_0();
        let eng = table.hamiltonian_flow(&g.h0()).unwrap();
        let mine: Vec<SparsePoly> = flow.iter().flat_map(|m| m.entries().cloned()).collect();
        assert_eq!(eng, mine);
        assert!(g.lax_residual(&flow, &g.m_0(&w), &w).unwrap().is_zero());
        assert!(g.m_sum_residual(&w).unwrap().is_zero());
    }

    #[test]
    fn linear_structure() {
        let z = [q(0), q(3)];
        let (g, table) = symbolic(&z).unwrap();
        let lax = |x: &Q| g.lax(&SparsePoly::from_q(x));
        let r = crate::poisson::check_linear_with(lax, &table, &qf(1, 2), &qf(-2, 3)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn involution() {
        assert!(involution_exact(&[q(0), q(1)]).unwrap().passed());
        let rep = involution_exact(&[q(0), q(1), qf(-5, 2)]).unwrap();
        assert!(rep.passed() && rep.pairs_checked == 6);
        let rep = involution_random(&[q(0), q(1), q(-1), qf(1, 2), q(3)], 3, 11).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn t0_trajectory_conserves() {
        let spins = vec![
            SpinMat::new(0.3, -0.2, 0.5, 0.1),
            SpinMat::new(-0.4, 0.25, 0.1, 0.2),
            SpinMat::new(0.1, 0.3, -0.2, -0.3),
        ];
        let g = Gaudin::new(vec![0.0, 0.7, -0.5], spins).unwrap();
        let run = run_t0(&g, 1e-3, 1000).unwrap();
        assert!(run.casimir_drift < 1e-10, "{}", run.casimir_drift);
        assert!(run.h0_drift < 1e-10, "{}", run.h0_drift);
    }
}
