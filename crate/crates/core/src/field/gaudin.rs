//! 1+1 Gaudin model (interacting Landau-Lifshitz magnets): `n` fields at poles `z_a`,
//! evolved by the `t_a` flow.

use crate::error::{Error, Result};
use crate::exact::{Ring, SpinMat};
use crate::field::grid::FieldGrid;
use crate::field::ll::v1;
use crate::tops::{inertia_j, lax_nonrel};

/// Field values and derivatives of all sites at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteJets<T> {
    pub s: Vec<SpinMat<T>>,
    pub sx: Vec<SpinMat<T>>,
    pub sxx: Vec<SpinMat<T>>,
}

fn check_poles<T: Ring>(z: &[T]) -> Result<()> {
    for a in 0..z.len() {
        for b in 0..a {
            if z[a] == z[b] {
                return Err(Error::Pole(format!("z_{} = z_{}", b + 1, a + 1)));
            }
        }
    }
    Ok(())
}

/// `h^a = α[S^a, ∂_xS^a] + Σ_{c≠a} L(z_a − z_c, S^c)` and its `x`-derivative.
pub fn h_a<T: Ring>(z: &[T], j: &SiteJets<T>, alpha: &T, a: usize) -> Result<(SpinMat<T>, SpinMat<T>)> {
    let mut h = j.s[a].commutator(&j.sx[a]).scale(alpha);
    let mut hx = j.s[a].commutator(&j.sxx[a]).scale(alpha);
    for c in (0..z.len()).filter(|&c| c != a) {
        let d = z[a].clone() - z[c].clone();
        h = h + lax_nonrel(&d, &j.s[c])?;
        hx = hx + lax_nonrel(&d, &j.sx[c])?;
    }
    Ok((h, hx))
}

/// Right sides of the `t_a` flow at one point:
/// `∂S^a = ∂_xh^a + [S^a, J(S^a)] + Σ_{c≠a}([h^a, L(z_c−z_a, S^c)] − [V₁(z_c−z_a, S^c), S^a])`,
/// `∂S^b = [S^b, V₁(z_b−z_a, S^a) − L(z_a−z_b, h^a)]` for `b ≠ a`.
pub fn gaudin1p1_point<T: Ring>(z: &[T], j: &SiteJets<T>, alpha: &T, a: usize) -> Result<Vec<SpinMat<T>>> {
    check_poles(z)?;
    let (h, hx) = h_a(z, j, alpha, a)?;
    let sa = &j.s[a];
    (0..z.len())
        .map(|b| {
            if b == a {
                let mut acc = hx.clone() + sa.commutator(&inertia_j(sa));
                for c in (0..z.len()).filter(|&c| c != a) {
                    let d = z[c].clone() - z[a].clone();
                    acc = acc + h.commutator(&lax_nonrel(&d, &j.s[c])?) - v1(&d, &j.s[c])?.commutator(sa);
                }
                Ok(acc)
            } else {
                let d = z[b].clone() - z[a].clone();
                let inner = v1(&d, sa)? - lax_nonrel(&-d.clone(), &h)?;
                Ok(j.s[b].commutator(&inner))
            }
        })
        .collect()
}

/// For `x`-constant fields the `t_a` flow is the Lie-Poisson flow of
/// `H = ½tr(S^a J(S^a)) + Σ_{c≠a} tr(S^c V₁(z_c − z_a, S^a)) − ½tr(h^a)²`
/// on the direct sum of `n` spins: a coupled-top system. The `[h^a, L(z_c−z_a, S^c)]`
/// terms sum to `−[h^a, h^a] = 0`.
pub fn constant_field_hamiltonian<T: Ring>(z: &[T], s: &[SpinMat<T>], a: usize) -> Result<T> {
    check_poles(z)?;
    let half = T::from_q(&crate::exact::qf(1, 2));
    let mut h = SpinMat::zero();
    let mut acc = s[a].matmul(&inertia_j(&s[a])).tr() * half.clone();
    for c in (0..z.len()).filter(|&c| c != a) {
        h = h + lax_nonrel(&(z[a].clone() - z[c].clone()), &s[c])?;
        acc = acc + s[c].matmul(&v1(&(z[c].clone() - z[a].clone()), &s[a])?).tr();
    }
    Ok(acc - h.matmul(&h).tr() * half)
}

/// Semi-discrete `t_a` flow with central differences.
pub fn gaudin1p1_rhs(z: &[f64], fields: &[FieldGrid], alpha: f64, a: usize) -> Result<Vec<Vec<SpinMat<f64>>>> {
    if fields.len() != z.len() || a >= z.len() {
        return Err(Error::Dimension(format!("{} poles, {} fields, site {a}", z.len(), fields.len())));
    }
    let n = fields[0].n();
    if fields.iter().any(|f| f.n() != n) {
        return Err(Error::Dimension("fields on different grids".into()));
    }
    let mut out = vec![Vec::with_capacity(n); z.len()];
    for i in 0..n {
        let j = SiteJets {
            s: fields.iter().map(|f| f.at(i).clone()).collect(),
            sx: fields.iter().map(|f| f.d1(i)).collect(),
            sxx: fields.iter().map(|f| f.d2(i)).collect(),
        };
        for (b, v) in gaudin1p1_point(z, &j, &alpha, a)?.into_iter().enumerate() {
            out[b].push(v);
        }
    }
    Ok(out)
}
