//! Transfer matrices of a chain at sampled spectral points.

use serde_json::{json, Value};

use elevenvertex::error::Error;
use elevenvertex::exact::{Q, Sampler, SpinMat, Zero};
use elevenvertex::lattice::chain::{self, Chain, Site, TildeSite};
use elevenvertex::tops::{self, TildeSpin};

use crate::config::{ConfigError, RunConfig};
use crate::report::Check;
use crate::verify::to_q;

#[derive(Clone, Debug, PartialEq)]
pub struct TransferOutput {
    pub doc: Value,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl TransferOutput {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn strs(m: &SpinMat<Q>) -> Vec<String> {
    m.entries().map(|x| x.to_string()).collect()
}

const MAX_RESAMPLE: usize = 100;

pub fn transfer(cfg: &RunConfig, seed: u64) -> Result<TransferOutput, ConfigError> {
    let n = cfg.n.or(cfg.z.as_ref().map(|z| z.len())).or(cfg.etas.as_ref().map(|e| e.len())).unwrap_or(2);
    if n == 0 {
        return Err(ConfigError("a chain needs at least one site".into()));
    }
    let zf = cfg.z.clone().unwrap_or_else(|| (0..n).map(|a| a as f64 / 3.0).collect());
    let ef = cfg.etas.clone().unwrap_or_else(|| vec![cfg.eta.unwrap_or(0.5); n]);
    if zf.len() != n || ef.len() != n {
        return Err(ConfigError(format!("chain of {n} sites needs {n} positions and {n} etas")));
    }
    let zs = zf.iter().map(|&x| to_q("z", x)).collect::<Result<Vec<_>, _>>()?;
    let etas = ef.iter().map(|&x| to_q("eta", x)).collect::<Result<Vec<_>, _>>()?;
    if etas.iter().any(|e| e.is_zero()) {
        return Err(ConfigError("eta must be nonzero on every site".into()));
    }
    let points = cfg.points.unwrap_or(5).max(1);
    let mut smp = Sampler::new(seed);
    let homogeneous = zs.iter().all(|z| z.is_zero()) && etas.iter().all(|e| *e == etas[0]);
    // A homogeneous chain gets one spin repeated, so the local point exists.
    let first = smp.spin();
    let sites: Vec<Site<Q>> = zs
        .iter()
        .zip(&etas)
        .enumerate()
        .map(|(a, (z, e))| Site { eta: e.clone(), z: z.clone(), s: if homogeneous || a == 0 { first.clone() } else { smp.spin() } })
        .collect();
    let tilde: Vec<TildeSite<Q>> =
        sites.iter().map(|s| TildeSite { z: s.z.clone(), s: tops::tilde_from_eta(&s.s, &s.eta) }).collect();
    let plus = TildeSpin { s0: smp.rational(), s: smp.spin() };
    let minus = TildeSpin { s0: smp.rational(), s: smp.spin() };
    let periodic = Chain::Eta(sites.clone());

    let mut warnings = Vec::new();
    let mut rows = Vec::new();
    let mut lax_bad = 0;
    while rows.len() < points {
        let mut tries = 0;
        let row = loop {
            let z = smp.rational();
            let eval = || -> Result<Value, Error> {
                let t = periodic.transfer(&z)?;
                let d = chain::double_row(&z, &plus, &tilde, &minus, true)?;
                Ok(json!({ "z": z.to_string(), "T": strs(&t), "trace": t.tr().to_string(), "double_row_trace": d.tr().to_string() }))
            };
            match eval() {
                Ok(v) => {
                    if n == 1 {
                        let lax = tops::lax_eta(&(z.clone() - zs[0].clone()), &sites[0].s, &etas[0]);
                        if lax.ok() != periodic.transfer(&z).ok() {
                            lax_bad += 1;
                        }
                    }
                    break v;
                }
                Err(Error::Pole(m)) if tries < MAX_RESAMPLE => {
                    warnings.push(format!("pole at z = {z} ({m}); resampled"));
                    tries += 1;
                }
                Err(e) => return Err(ConfigError(format!("transfer matrix: {e}"))),
            }
        };
        rows.push(row);
    }

    let mut checks = Vec::new();
    if n == 1 {
        checks.push(Check::exact(
            "transfer.single-site",
            "one-site transfer matrix equals the Lax matrix",
            points,
            (lax_bad > 0).then(|| format!("differs at {lax_bad} of {points} points")),
        ));
    }
    let comm_points = points.max(20);
    let push_comm = |checks: &mut Vec<Check>, name: &str, anchor: &str, r| match r {
        Ok(chain::CommutativityReport { points, failures }) => checks.push(Check::exact(
            name,
            anchor,
            points,
            failures.first().map(|(z, w, v): &(Q, Q, Q)| format!("{{tr T({z}), tr T({w})}} = {v}")),
        )),
        Err(e) => checks.push(Check::error(name, anchor, e)),
    };
    push_comm(
        &mut checks,
        "transfer.commutativity",
        "periodic transfer-matrix traces Poisson commute",
        chain::tilde_commutativity(&zs, comm_points, seed),
    );
    push_comm(
        &mut checks,
        "transfer.double-row-commutativity",
        "double-row transfer-matrix traces Poisson commute",
        chain::double_row_commutativity(&zs, &Q::new(1.into(), 2.into()), true, points, seed),
    );

    let local = if homogeneous {
        match chain::local_point(&sites) {
            Ok(lp) => json!({
                "z0": lp.z0,
                "z0_exact": lp.exact.map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                "transfer": lp.transfer.entries().copied().collect::<Vec<f64>>(),
                "trace": lp.trace,
            }),
            Err(e) => json!({ "error": e.to_string() }),
        }
    } else {
        Value::Null
    };

    let mut sorted = checks.clone();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let doc = json!({
        "command": "transfer",
        "seed": seed,
        "sites": sites.iter().map(|s| json!({ "z": s.z.to_string(), "eta": s.eta.to_string(), "S": strs(&s.s) })).collect::<Vec<_>>(),
        "boundary": {
            "plus": { "S0": plus.s0.to_string(), "S": strs(&plus.s) },
            "minus": { "S0": minus.s0.to_string(), "S": strs(&minus.s) },
        },
        "samples": rows,
        "local_point": local,
        "warnings": warnings,
        "passed": sorted.iter().all(|c| c.pass),
        "checks": sorted,
    });
    Ok(TransferOutput { doc, checks, warnings })
}
