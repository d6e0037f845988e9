//! Classical spin chains: periodic transfer matrices in both descriptions, the trace
//! factorization through R-matrices, open chains with dynamical boundaries and the point
//! where the local Hamiltonian is extracted.

use crate::error::{Error, Result};
use crate::exact::{q_sqrt, q_to_f64, Q, Ring, Sampler, SparsePoly, SpinMat, TensorOp, Var, Zero};
use crate::poisson::{tilde_sklyanin, tilde_spin_vars, BracketTable};
use crate::rmatrix::{classical_r, quantum_r};
use crate::tops::{eta_casimirs, lax_eta, lax_nonrel, lax_tilde, TildeSpin};

/// Site of a chain in the η-dependent description.
#[derive(Clone, Debug, PartialEq)]
pub struct Site<T> {
    pub eta: T,
    pub z: T,
    pub s: SpinMat<T>,
}

/// Site of a chain in the η-independent description.
#[derive(Clone, Debug, PartialEq)]
pub struct TildeSite<T> {
    pub z: T,
    pub s: TildeSpin<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Chain<T> {
    Eta(Vec<Site<T>>),
    Tilde(Vec<TildeSite<T>>),
}

impl<T: Ring> Chain<T> {
    pub fn len(&self) -> usize {
        match self {
            Chain::Eta(s) => s.len(),
            Chain::Tilde(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Site Lax matrices at `z`, in site order.
    pub fn site_laxes(&self, z: &T) -> Result<Vec<SpinMat<T>>> {
        match self {
            Chain::Eta(sites) => sites
                .iter()
                .map(|s| lax_eta(&(z.clone() - s.z.clone()), &s.s, &s.eta))
                .collect(),
            Chain::Tilde(sites) => sites
                .iter()
                .map(|s| lax_tilde(&(z.clone() - s.z.clone()), &s.s))
                .collect(),
        }
    }

    /// `T(z) = L₁(z − z₁) ⋯ L_n(z − z_n)`.
    pub fn transfer(&self, z: &T) -> Result<SpinMat<T>> {
        Ok(self.site_laxes(z)?.into_iter().fold(SpinMat::identity(), |acc, l| acc.matmul(&l)))
    }
}

/// `T₀(z) = tr_{1…n}(R_{01}(z−z₁) ⋯ R_{0n}(z−z_n) 𝒮¹₁ ⋯ 𝒮ⁿ_n)` on `n + 1` legs, with leg 0
/// auxiliary.
pub fn t0_trace(z: &Q, sites: &[Site<Q>]) -> Result<SpinMat<Q>> {
    let n = sites.len() + 1;
    let mut acc = TensorOp::identity(n);
    for (a, s) in sites.iter().enumerate() {
        let r = quantum_r(&s.eta, &(z - &s.z))?.embed_general(&[0, a + 1], n)?;
        acc = acc.matmul(&r)?;
    }
    for (a, s) in sites.iter().enumerate() {
        acc = acc.matmul(&TensorOp::from_spin(&s.s).embed_general(&[a + 1], n)?)?;
    }
    acc.partial_trace(&[0])?.to_spin()
}

/// Classical analog with `r_{0a}(z − z_a)` and the matrices `S̃^a`.
pub fn t0_trace_classical(z: &Q, sites: &[TildeSite<Q>]) -> Result<SpinMat<Q>> {
    let n = sites.len() + 1;
    let mut acc = TensorOp::identity(n);
    for (a, s) in sites.iter().enumerate() {
        let r = classical_r(&(z - &s.z))?.embed_general(&[0, a + 1], n)?;
        acc = acc.matmul(&r)?;
    }
    for (a, s) in sites.iter().enumerate() {
        acc = acc.matmul(&TensorOp::from_spin(&s.s.s).embed_general(&[a + 1], n)?)?;
    }
    acc.partial_trace(&[0])?.to_spin()
}

/// `T₀(z) − Π_a L^{η_a}(z − z_a, 𝒮^a)`.
pub fn t0_factorization_residual(z: &Q, sites: &[Site<Q>]) -> Result<SpinMat<Q>> {
    Ok(t0_trace(z, sites)? - Chain::Eta(sites.to_vec()).transfer(z)?)
}

/// `T̃₀(z) − Π_a L(z − z_a, S̃^a)`; only the traceless part of each `S̃^a` enters.
pub fn t0_classical_factorization_residual(z: &Q, sites: &[TildeSite<Q>]) -> Result<SpinMat<Q>> {
    let mut prod = SpinMat::identity();
    for s in sites {
        prod = prod.matmul(&lax_nonrel(&(z - &s.z), &s.s.s)?);
    }
    Ok(t0_trace_classical(z, sites)? - prod)
}

/// Double-row transfer matrix with dynamical boundaries:
/// `L̃(S⁺, z) L̃(S¹, z−z₁) ⋯ L̃(Sⁿ, z−z_n) L̃(S⁻, z) L̃(Sⁿ, z∓z_n) ⋯ L̃(S¹, z∓z₁)`.
/// The returning half uses `z − z_a` as written when `mirrored` is false and `z + z_a`
/// (the inverse of the forward half at `−z`, up to determinants) when it is true. The two
/// agree on homogeneous chains.
pub fn double_row<T: Ring>(
    z: &T,
    plus: &TildeSpin<T>,
    sites: &[TildeSite<T>],
    minus: &TildeSpin<T>,
    mirrored: bool,
) -> Result<SpinMat<T>> {
    let mut acc = lax_tilde(z, plus)?;
    for s in sites {
        acc = acc.matmul(&lax_tilde(&(z.clone() - s.z.clone()), &s.s)?);
    }
    acc = acc.matmul(&lax_tilde(z, minus)?);
    for s in sites.iter().rev() {
        let arg = if mirrored { z.clone() + s.z.clone() } else { z.clone() - s.z.clone() };
        acc = acc.matmul(&lax_tilde(&arg, &s.s)?);
    }
    Ok(acc)
}

/// `L̃(z) L̃(−z) − det L̃(z) 1` with `z` kept symbolic (generator 5).
pub fn boundary_constraint_residual() -> Result<SpinMat<SparsePoly>> {
    let t = tilde_spin_vars(0);
    let z = SparsePoly::var(5);
    let a = lax_tilde(&z, &t)?;
    let b = lax_tilde(&(-z), &t)?;
    Ok(a.matmul(&b) - SpinMat::scalar(a.det()))
}

/// Outcome of a randomized Poisson-commutativity certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutativityReport {
    pub points: usize,
    /// `(z, w, value)` for every point where the bracket did not vanish.
    pub failures: Vec<(Q, Q, Q)>,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Symbolic tilde spins on a direct sum of five-generator tables, one per multiplier.
pub fn tilde_generators(multipliers: &[Q]) -> (BracketTable, Vec<TildeSpin<SparsePoly>>) {
    let tables: Vec<BracketTable> =
        multipliers.iter().map(|m| tilde_sklyanin().with_multiplier(m.clone())).collect();
    let (table, offsets) = BracketTable::direct_sum("tilde-chain", &tables);
    let spins = offsets.iter().map(|&o| tilde_spin_vars(o as Var)).collect();
    (table, spins)
}

fn certify(
    multipliers: &[Q],
    points: usize,
    seed: u64,
    trace_at: impl Fn(&Q, &[TildeSpin<SparsePoly>]) -> Result<SparsePoly>,
) -> Result<CommutativityReport> {
    let (table, spins) = tilde_generators(multipliers);
    let mut smp = Sampler::new(seed);
    let mut failures = Vec::new();
    let mut poles = 0;
    let mut done = 0;
    while done < points {
        let (z, w) = smp.spectral_pair(&Q::zero());
        let pt = smp.point(table.generators());
        // A spectral point on a site position is resampled.
        let (tz, tw) = match (trace_at(&z, &spins), trace_at(&w, &spins)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(Error::Pole(m)), _) | (_, Err(Error::Pole(m))) => {
                poles += 1;
                if poles > 100 * points.max(1) {
                    return Err(Error::Pole(m));
                }
                continue;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        done += 1;
        let v = table.bracket_at(&tz, &tw, &pt)?;
        if !v.is_zero() {
            failures.push((z, w, v));
        }
    }
    Ok(CommutativityReport { points, failures })
}

/// `{tr T(z), tr T(w)} = 0` for a periodic tilde chain with sites at `zs`, evaluated at
/// `points` seeded `(z, w, phase-space point)` triples.
pub fn tilde_commutativity(zs: &[Q], points: usize, seed: u64) -> Result<CommutativityReport> {
    certify(&vec![Q::from_i64(1); zs.len()], points, seed, |x, spins| {
        let sites: Vec<TildeSite<SparsePoly>> = zs
            .iter()
            .zip(spins)
            .map(|(z, s)| TildeSite { z: SparsePoly::from_q(z), s: s.clone() })
            .collect();
        Ok(Chain::Tilde(sites).transfer(&SparsePoly::from_q(x))?.tr())
    })
}

/// Same certificate for the double-row transfer matrix. The boundary spins `S⁺`, `S⁻` take
/// the first two tables with the five-generator brackets; bulk sites carry `bulk_scale`
/// times those brackets. The reflection equation has an overall `½` relative to the
/// periodic quadratic relation, so commutativity needs `bulk_scale = ½`.
pub fn double_row_commutativity(
    zs: &[Q],
    bulk_scale: &Q,
    mirrored: bool,
    points: usize,
    seed: u64,
) -> Result<CommutativityReport> {
    let mut mult = vec![Q::from_i64(1), Q::from_i64(1)];
    mult.extend(std::iter::repeat(bulk_scale.clone()).take(zs.len()));
    certify(&mult, points, seed, |x, spins| {
        let sites: Vec<TildeSite<SparsePoly>> = zs
            .iter()
            .zip(&spins[2..])
            .map(|(z, s)| TildeSite { z: SparsePoly::from_q(z), s: s.clone() })
            .collect();
        Ok(double_row(&SparsePoly::from_q(x), &spins[0], &sites, &spins[1], mirrored)?.tr())
    })
}

/// Point `z₀` with `det L^η(z₀) = 0` for a homogeneous chain, and `T(z₀)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalPoint {
    /// Real roots, ascending; a double root is listed once.
    pub z0: Vec<f64>,
    /// The same roots when they are rational.
    pub exact: Option<Vec<Q>>,
    /// `T(z₀)` at the first root.
    pub transfer: SpinMat<f64>,
    pub trace: f64,
}

/// Solve `𝒞₂y² + (𝒞₁/η)y + 𝒞₁/η² = 0` for `y = 1/z₀`. Requires `z_k = 0`, a common `η` and
/// equal Casimirs on all sites.
pub fn local_point(sites: &[Site<Q>]) -> Result<LocalPoint> {
    let first = sites.first().ok_or_else(|| Error::Invalid("empty chain".into()))?;
    let eta = first.eta.clone();
    let (c1, c2) = eta_casimirs(&first.s, &eta);
    for (k, s) in sites.iter().enumerate() {
        if !s.z.is_zero() || s.eta != eta {
            return Err(Error::Invalid(format!("site {k} is not homogeneous (z = {}, η = {})", s.z, s.eta)));
        }
        if eta_casimirs(&s.s, &eta) != (c1.clone(), c2.clone()) {
            return Err(Error::Invalid(format!("site {k} has different Casimir values")));
        }
    }
    let (a, b, c) = (c2, &c1 / &eta, &c1 / (&eta * &eta));
    let ys: Vec<Q> = if a.is_zero() {
        if b.is_zero() {
            return Err(Error::Invalid("det L^η(z) does not depend on z".into()));
        }
        vec![-(c / b)]
    } else {
        let disc = &b * &b - Q::from_i64(4) * &a * &c;
        if disc < Q::zero() {
            let (re, im) = (q_to_f64(&(-&b / (Q::from_i64(2) * &a))), q_to_f64(&(-&disc)).sqrt() / (2.0 * q_to_f64(&a)).abs());
            return Err(Error::NoRealRoot(format!("1/z₀ = {re} ± {im}i")));
        }
        match q_sqrt(&disc) {
            Some(r) => {
                let two_a = Q::from_i64(2) * &a;
                let mut v = vec![(-&b + &r) / &two_a, (-&b - &r) / &two_a];
                v.dedup();
                v
            }
            None => {
                let (af, bf, df) = (q_to_f64(&a), q_to_f64(&b), q_to_f64(&disc).sqrt());
                return finish(sites, vec![(-bf + df) / (2.0 * af), (-bf - df) / (2.0 * af)], None);
            }
        }
    };
    if ys.iter().any(|y| y.is_zero()) {
        return Err(Error::Pole("root at 1/z₀ = 0".into()));
    }
    let zs: Vec<Q> = ys.iter().map(|y| y.recip()).collect();
    finish(sites, ys.iter().map(q_to_f64).collect(), Some(zs))
}

fn finish(sites: &[Site<Q>], ys: Vec<f64>, exact: Option<Vec<Q>>) -> Result<LocalPoint> {
    let mut exact = exact;
    if let Some(e) = exact.as_mut() {
        e.sort();
    }
    let mut z0: Vec<f64> = ys.iter().map(|y| 1.0 / y).collect();
    z0.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    z0.dedup();
    let chain = Chain::Eta(
        sites
            .iter()
            .map(|s| Site { eta: q_to_f64(&s.eta), z: q_to_f64(&s.z), s: s.s.map(q_to_f64) })
            .collect(),
    );
    let transfer = match &exact {
        Some(e) => Chain::Eta(sites.to_vec()).transfer(&e[0])?.map(q_to_f64),
        None => chain.transfer(&z0[0])?,
    };
    Ok(LocalPoint { z0, exact, trace: transfer.tr(), transfer })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};
    use crate::manybody::rs_map_u;

    fn eta_sites(n: usize, seed: u64) -> Vec<Site<Q>> {
        let mut smp = Sampler::new(seed);
        (0..n).map(|_| Site { eta: smp.rational(), z: smp.rational(), s: smp.spin() }).collect()
    }

    #[test]
    fn single_site_is_lax() {
        let s = eta_sites(1, 3);
        let z = qf(7, 3);
        let want = lax_eta(&(&z - &s[0].z), &s[0].s, &s[0].eta).unwrap();
        assert_eq!(Chain::Eta(s).transfer(&z).unwrap(), want);
    }

    #[test]
    fn trace_factorizes() {
        for n in 1..=3 {
            let s = eta_sites(n, 10 + n as u64);
            assert!(t0_factorization_residual(&qf(123, 11), &s).unwrap().is_zero());
        }
        let mut smp = Sampler::new(1);
        let sites: Vec<TildeSite<Q>> = (0..2)
            .map(|_| TildeSite { z: smp.rational(), s: TildeSpin { s0: smp.rational(), s: smp.spin() } })
            .collect();
        assert!(t0_classical_factorization_residual(&qf(-123, 11), &sites).unwrap().is_zero());
    }

    #[test]
    fn boundary_constraint() {
        assert!(boundary_constraint_residual().unwrap().is_zero());
    }

    #[test]
    fn tilde_chain_commutes() {
        assert!(tilde_commutativity(&[q(0)], 3, 1).unwrap().passed());
        let rep = tilde_commutativity(&[q(0), qf(1, 3)], 4, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn double_row_commutes() {
        let half = qf(1, 2);
        assert!(double_row_commutativity(&[], &half, false, 2, 1).unwrap().passed());
        assert!(double_row_commutativity(&[q(0)], &half, false, 2, 2).unwrap().passed());
        assert!(!double_row_commutativity(&[q(0)], &q(1), false, 2, 2).unwrap().passed());
        assert!(double_row_commutativity(&[qf(1, 3)], &half, true, 2, 3).unwrap().passed());
        assert!(!double_row_commutativity(&[qf(1, 3)], &half, false, 2, 3).unwrap().passed());
    }

    #[test]
    fn local_point_example() {
        let site = Site { eta: q(1), z: q(0), s: SpinMat::identity() };
        let lp = local_point(&[site.clone(), site]).unwrap();
        assert_eq!(lp.exact, Some(vec![qf(-1, 2)]));
        assert_eq!(lp.z0, vec![-0.5]);
    }

    #[test]
    fn local_point_is_root() {
        // sites on one symplectic leaf share both Casimirs
        let eta = qf(1, 2);
        let sites: Vec<Site<Q>> = [(q(2), q(3)), (qf(1, 3), qf(5, 4)), (q(3), q(-2))]
            .iter()
            .map(|(u, x)| Site { eta: eta.clone(), z: q(0), s: rs_map_u(u, &u.recip(), x, &eta).unwrap() })
            .collect();
        match local_point(&sites) {
            Ok(lp) => {
                let s = sites[1].s.map(q_to_f64);
                let d = lax_eta(&lp.z0[0], &s, &0.5).unwrap().det();
                assert!(d.abs() < 1e-9, "{d}");
            }
            Err(e) => assert!(matches!(e, Error::NoRealRoot(_) | Error::Invalid(_)), "{e}"),
        }
        let mut bad = sites.clone();
        bad[2].s = SpinMat::identity();
        assert!(local_point(&bad).is_err());
    }
}
