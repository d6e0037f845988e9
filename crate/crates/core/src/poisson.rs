//! Poisson brackets on polynomial algebras: generator tables extended by Leibniz, and the
//! structure checks (linear, quadratic, reflection, Jacobi, Casimirs, flows).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{q, qf, Point, Ring, SparsePoly, SpinMat, TensorOp, Var, Zero, Q};
use crate::rmatrix::classical_r;
use crate::tops::{self, TildeSpin};

/// Antisymmetric table of generator brackets. Variable ids are indices into `names`;
/// any other id is rejected by `bracket`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable {
    label: String,
    names: Vec<String>,
    entries: BTreeMap<(Var, Var), SparsePoly>,
    multiplier: Q,
}

impl BracketTable {
    pub fn new(label: &str, names: &[&str]) -> Self {
        BracketTable {
            label: label.to_string(),
            names: names.iter().map(|s| s.to_string()).collect(),
            entries: BTreeMap::new(),
            multiplier: q(1),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Var) -> String {
        self.names.get(v as usize).cloned().unwrap_or_else(|| format!("x{v}"))
    }

    pub fn id(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name).map(|i| i as Var)
    }

    pub fn gen(&self, name: &str) -> SparsePoly {
        SparsePoly::var(self.id(name).unwrap_or_else(|| panic!("no generator {name}")))
    }

    pub fn generators(&self) -> impl Iterator<Item = Var> {
        0..self.names.len() as Var
    }

    /// Set `{a, b} = value` (and `{b, a} = −value`).
    pub fn set(&mut self, a: Var, b: Var, value: SparsePoly) {
        assert!(a != b, "diagonal bracket entries are zero by antisymmetry");
        if a < b {
            self.entries.insert((a, b), value);
        } else {
            self.entries.insert((b, a), -value);
        }
    }

    pub fn set_named(&mut self, a: &str, b: &str, value: SparsePoly) {
        let (ia, ib) = (self.id(a).expect("generator"), self.id(b).expect("generator"));
        self.set(ia, ib, value);
    }

    /// Global factor applied to every bracket value (default 1).
    pub fn with_multiplier(mut self, m: Q) -> Self {
        self.multiplier = m;
        self
    }

    pub fn multiplier(&self) -> &Q {
        &self.multiplier
    }

    /// Generator bracket `{a, b}` including the multiplier.
    pub fn get(&self, a: Var, b: Var) -> SparsePoly {
        let raw = if a < b {
            self.entries.get(&(a, b)).cloned()
        } else if a > b {
            self.entries.get(&(b, a)).cloned().map(|v| -v)
        } else {
            None
        };
        raw.map(|v| v.scale_q(&self.multiplier)).unwrap_or_default()
    }

    fn check_vars(&self, p: &SparsePoly) -> Result<()> {
        match p.vars().into_iter().find(|&v| v as usize >= self.names.len()) {
            Some(v) => Err(Error::UnknownGenerator(format!("x{v}"))),
            None => Ok(()),
        }
    }

    /// `{f, g} = Σ ∂f/∂a ∂g/∂b {a, b}`.
    pub fn bracket(&self, f: &SparsePoly, g: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(f)?;
        self.check_vars(g)?;
        let df: Vec<(Var, SparsePoly)> = f.vars().into_iter().map(|a| (a, f.diff(a))).collect();
        let dg: Vec<(Var, SparsePoly)> = g.vars().into_iter().map(|b| (b, g.diff(b))).collect();
        let mut acc = SparsePoly::zero();
        for (a, fa) in &df {
            for (b, gb) in &dg {
                if a == b {
                    continue;
                }
                let t = self.get(*a, *b);
                if t.is_zero() {
                    continue;
                }
                acc += &(fa * gb) * &t;
            }
        }
        Ok(acc)
    }

    /// `{f, g}` evaluated at a point without expanding the full polynomial.
    pub fn bracket_at(&self, f: &SparsePoly, g: &SparsePoly, point: &Point) -> Result<Q> {
        self.check_vars(f)?;
        self.check_vars(g)?;
        let mut acc = q(0);
        let gv: Vec<(Var, Q)> = g
            .vars()
            .into_iter()
            .map(|b| Ok((b, g.diff(b).eval(point)?)))
            .collect::<Result<_>>()?;
        for a in f.vars() {
            let fa = f.diff(a).eval(point)?;
            if fa == q(0) {
                continue;
            }
            for (b, gb) in &gv {
                if a == *b || *gb == q(0) {
                    continue;
                }
                let t = self.get(a, *b);
                if !t.is_zero() {
                    acc += &fa * gb * t.eval(point)?;
                }
            }
        }
        Ok(acc)
    }

    /// Nonzero Jacobi cyclic sums over generator triples.
    pub fn jacobi_residual(&self) -> Result<Vec<((Var, Var, Var), SparsePoly)>> {
        let n = self.names.len() as Var;
        let mut bad = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let (ga, gb, gc) = (SparsePoly::var(a), SparsePoly::var(b), SparsePoly::var(c));
                    let j = self.bracket(&ga, &self.get(b, c))?
                        + self.bracket(&gb, &self.get(c, a))?
                        + self.bracket(&gc, &self.get(a, b))?;
                    if !j.is_zero() {
                        bad.push(((a, b, c), j));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// Brackets of `c` with every generator; `c` is central iff all vanish.
    pub fn casimir_residuals(&self, c: &SparsePoly) -> Result<Vec<SparsePoly>> {
        self.generators().map(|g| self.bracket(c, &SparsePoly::var(g))).collect()
    }

    pub fn is_casimir(&self, c: &SparsePoly) -> Result<bool> {
        Ok(self.casimir_residuals(c)?.iter().all(|r| r.is_zero()))
    }

    /// `ġ = {H, g}` for every generator, in generator order.
    pub fn hamiltonian_flow(&self, h: &SparsePoly) -> Result<Vec<SparsePoly>> {
        self.generators().map(|g| self.bracket(h, &SparsePoly::var(g))).collect()
    }

    pub fn show(&self, p: &SparsePoly) -> String {
        p.fmt_with(&|v| self.name(v))
    }

    /// Direct sum of tables: site `k` gets names prefixed `"{k}."` and shifted ids.
    /// Brackets between different sites vanish.
    pub fn direct_sum(label: &str, sites: &[BracketTable]) -> (BracketTable, Vec<Var>) {
        let mut names = Vec::new();
        let mut offsets = Vec::new();
        for (k, t) in sites.iter().enumerate() {
            offsets.push(names.len() as Var);
            names.extend(t.names.iter().map(|n| format!("{}.{n}", k + 1)));
        }
        let mut out = BracketTable {
            label: label.to_string(),
            names,
            entries: BTreeMap::new(),
            multiplier: q(1),
        };
        for (t, &off) in sites.iter().zip(&offsets) {
            for (&(a, b), v) in &t.entries {
                out.entries.insert((a + off, b + off), shift_vars(v, off).scale_q(&t.multiplier));
            }
        }
        (out, offsets)
    }
}

/// Rename every variable `v` to `v + off`.
pub fn shift_vars(p: &SparsePoly, off: Var) -> SparsePoly {
    let mut out = SparsePoly::zero();
    for (m, c) in p.terms() {
        let pairs: Vec<(Var, i32)> = m.pairs().iter().map(|&(v, e)| (v + off, e)).collect();
        out.add_term(crate::exact::Monomial::from_pairs(&pairs), c.clone());
    }
    out
}

const SPIN: [&str; 4] = ["S11", "S12", "S21", "S22"];

/// Generator matrix `[[S11, S12], [S21, S22]]` of a table, with ids shifted by `off`.
pub fn spin_matrix(off: Var) -> SpinMat<SparsePoly> {
    SpinMat::new(
        SparsePoly::var(off),
        SparsePoly::var(off + 1),
        SparsePoly::var(off + 2),
        SparsePoly::var(off + 3),
    )
}

/// Linear (Lie-Poisson) bracket `{S_ij, S_kl} = δ_il S_kj − δ_kj S_il`.
pub fn lie_poisson() -> BracketTable {
    let mut t = BracketTable::new("lie-poisson", &SPIN);
    let idx = |i: usize, j: usize| (2 * i + j) as Var;
    for a in 0..4usize {
        for b in (a + 1)..4usize {
            let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
            let mut v = SparsePoly::zero();
            if i == l {
                v += SparsePoly::var(idx(k, j));
            }
            if k == j {
                v = v - SparsePoly::var(idx(i, l));
            }
            t.set(a as Var, b as Var, v);
        }
    }
    t
}

/// Quadratic bracket of the relativistic top at fixed `η`.
pub fn eta_sklyanin(eta: &Q) -> BracketTable {
    let mut t = BracketTable::new("eta-quadratic", &SPIN);
    let s = spin_matrix(0);
    let (s11, s12, s21, s22) = (s.s11().clone(), s.s12().clone(), s.s21().clone(), s.s22().clone());
    let e = SparsePoly::from_q(eta);
    let ie = SparsePoly::from_q(&eta.recip());
    let e3 = e.pow(3);
    let tr = &s11 + &s22;
    let d = &s11 - &s22;
    let tr_s12_ie = &(&tr * &s12) * &ie;
    let sq12 = &e * &(&s12 * &s12);
    t.set(0, 1, -tr_s12_ie.clone() + sq12.clone());
    t.set(3, 1, tr_s12_ie + sq12);
    let s21_tr_ie = &(&s21 * &tr) * &ie;
    let mix = &(&s11 * &s22) + &(&s12 * &s21);
    t.set(
        0,
        2,
        s21_tr_ie.clone()
            + &e * &(&(&s11 * &s11) - &mix)
            + &e3 * &(&s11 * &s12),
    );
    t.set(
        2,
        3,
        s21_tr_ie - &e * &(&(&s22 * &s22) - &mix) + &e3 * &(&s12 * &s22),
    );
    t.set(1, 2, -(&tr * &(&(&d * &ie) + &(&e * &s12))));
    t.set(0, 3, &(&e * &s12) * &(&d + &(&(&e * &e) * &s12)));
    t
}

/// Five-generator quadratic algebra of the η-independent description, generators
/// `S0, S11, S12, S21, S22`. Brackets among the `S̃_ij` are `S̃₀` times the Lie-Poisson
/// ones; brackets with `S̃₀` are quadratic.
pub fn tilde_sklyanin() -> BracketTable {
    let mut t = BracketTable::new("tilde-quadratic", &["S0", "S11", "S12", "S21", "S22"]);
    let s0 = SparsePoly::var(0);
    let s = spin_matrix(1);
    let (s11, s12, s21, s22) = (s.s11().clone(), s.s12().clone(), s.s21().clone(), s.s22().clone());
    let d = &s11 - &s22;
    t.set(0, 1, -(&s12 * &d));
    t.set(0, 4, &s12 * &d);
    t.set(0, 2, (&s12 * &s12).scale_q(&q(2)));
    t.set(0, 3, -(&s12 * &s21).scale_q(&q(2)) + &d * &d);
    let lie = lie_poisson();
    for a in 0..4 {
        for b in (a + 1)..4 {
            let v = shift_vars(&lie.get(a, b), 1);
            t.set(a + 1, b + 1, &s0 * &v);
        }
    }
    t
}

/// Generator spin of the five-generator table.
pub fn tilde_spin_vars(off: Var) -> TildeSpin<SparsePoly> {
    TildeSpin { s0: SparsePoly::var(off), s: spin_matrix(off + 1) }
}

/// `Σ E_ij ⊗ E_kl {L_ij, M_kl}`: entry `(2i+k, 2j+l)`.
pub fn bracket_matrix(
    l: &SpinMat<SparsePoly>,
    m: &SpinMat<SparsePoly>,
    t: &BracketTable,
) -> Result<TensorOp<SparsePoly>> {
    let mut out = TensorOp::zero(2);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for ll in 0..2 {
                    out.set(2 * i + k, 2 * j + ll, t.bracket(&l.e[i][j], &m.e[k][ll])?);
                }
            }
        }
    }
    Ok(out)
}

fn poly_r(z: &Q) -> Result<TensorOp<SparsePoly>> {
    classical_r(&SparsePoly::from_q(z))
}

fn c(z: &Q) -> SparsePoly {
    SparsePoly::from_q(z)
}

fn reject_collision(z: &Q, w: &Q) -> Result<()> {
    if z == w {
        return Err(Error::Pole(format!("z = w = {z}")));
    }
    Ok(())
}

/// `{L₁(z), L₂(w)} − [L₁(z) + L₂(w), r₁₂(z−w)]` for `L = lax` under `t`.
pub fn check_linear_with(
    lax: impl Fn(&Q) -> Result<SpinMat<SparsePoly>>,
    t: &BracketTable,
    z: &Q,
    w: &Q,
) -> Result<TensorOp<SparsePoly>> {
    reject_collision(z, w)?;
    let (a, b) = (lax(z)?, lax(w)?);
    let lhs = bracket_matrix(&a, &b, t)?;
    let sum = crate::exact::on1(&a) + crate::exact::on2(&b);
    Ok(lhs - sum.commutator(&poly_r(&(z - w))?)?)
}

/// Linear r-matrix structure of the non-relativistic top.
pub fn check_linear(z: &Q, w: &Q) -> Result<TensorOp<SparsePoly>> {
    let s = spin_matrix(0);
    check_linear_with(|x| tops::lax_nonrel(&c(x), &s), &lie_poisson(), z, w)
}

/// `{L₁(z), L₂(w)} − [L₁(z) L₂(w), r₁₂(z−w)]`.
pub fn check_quadratic(
    lax: impl Fn(&Q) -> Result<SpinMat<SparsePoly>>,
    t: &BracketTable,
    z: &Q,
    w: &Q,
) -> Result<TensorOp<SparsePoly>> {
    reject_collision(z, w)?;
    let (a, b) = (lax(z)?, lax(w)?);
    let lhs = bracket_matrix(&a, &b, t)?;
    let prod = crate::exact::on1(&a).matmul(&crate::exact::on2(&b))?;
    Ok(lhs - prod.commutator(&poly_r(&(z - w))?)?)
}

/// `{L₁(z), L₂(w)} − (½[L₁L₂, r₁₂(z−w)] − ½ L₁ r₁₂(z+w+shift) L₂ + ½ L₂ r₁₂(z+w+shift) L₁)`.
pub fn check_reflection(
    lax: impl Fn(&Q) -> Result<SpinMat<SparsePoly>>,
    t: &BracketTable,
    z: &Q,
    w: &Q,
    shift: &Q,
) -> Result<TensorOp<SparsePoly>> {
    reject_collision(z, w)?;
    let (a, b) = (lax(z)?, lax(w)?);
    let lhs = bracket_matrix(&a, &b, t)?;
    let (a1, b2) = (crate::exact::on1(&a), crate::exact::on2(&b));
    let half = c(&qf(1, 2));
    let rm = poly_r(&(z - w))?;
    let rp = poly_r(&(z + w + shift))?;
    let rhs = a1.matmul(&b2)?.commutator(&rm)? - a1.matmul(&rp)?.matmul(&b2)?
        + b2.matmul(&rp)?.matmul(&a1)?;
    Ok(lhs - rhs.scale(&half))
}

/// Lax matrix of the relativistic top on the generators of `eta_sklyanin`.
pub fn lax_eta_poly(eta: &Q) -> impl Fn(&Q) -> Result<SpinMat<SparsePoly>> {
    let e = c(eta);
    let s = spin_matrix(0);
    move |z| tops::lax_eta(&c(z), &s, &e)
}

/// Lax matrix of the η-independent description on the generators of `tilde_sklyanin`.
pub fn lax_tilde_poly() -> impl Fn(&Q) -> Result<SpinMat<SparsePoly>> {
    let t = tilde_spin_vars(0);
    move |z| tops::lax_tilde(&c(z), &t)
}
