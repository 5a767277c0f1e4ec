//! Deterministic serializations of the objects the suites work with.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Value};

use kzdyn_core::dynamical::{b_additive, fusion_solve};
use kzdyn_core::hyper::{build_forest, phi_vector, point_grounds, Flavor, IndexMap};
use kzdyn_core::roots::{sigma_sequence, special_order, NormalOrder};
use kzdyn_core::uea::{Mono, PbwBasis};

use crate::suites::module_for;
use crate::{CliError, CliResult, FactorSpec};

pub const DUMP_KINDS: [&str; 6] = ["order", "sigma", "operator", "fusion", "phi-vector", "forest"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DumpKind {
    Order,
    Sigma,
    Operator,
    Fusion,
    PhiVector,
    Forest,
}

impl FromStr for DumpKind {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<DumpKind> {
        Ok(match s {
            "order" => DumpKind::Order,
            "sigma" => DumpKind::Sigma,
            "operator" => DumpKind::Operator,
            "fusion" => DumpKind::Fusion,
            "phi-vector" => DumpKind::PhiVector,
            "forest" => DumpKind::Forest,
            other => return Err(CliError::UnknownKind(other.into())),
        })
    }
}

/// Parameters of a dump; unset fields take small defaults.
#[derive(Clone, Debug, Default)]
pub struct DumpParams {
    pub n: Option<usize>,
    pub h: Option<usize>,
    pub nu: Option<Vec<i64>>,
    pub depth: Option<usize>,
    pub factors: Option<Vec<FactorSpec>>,
}

fn order_text(o: &NormalOrder) -> String {
    o.roots.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn mono_json(basis: &PbwBasis, m: &Mono) -> Value {
    let map: BTreeMap<String, u8> = basis.mono_to_map(m).into_iter().map(|((k, l), e)| (format!("a({k},{l})"), e)).collect();
    json!(map)
}

fn flavor(n: usize, h: Option<usize>) -> Flavor {
    match h {
        Some(h) if h < n - 1 => Flavor::Special(h),
        _ => Flavor::Standard,
    }
}

/// Serializes one object. `order` is plain text (`a(k,l),…`, largest first);
/// everything else is pretty-printed JSON.
pub fn dump_object(kind: &str, p: &DumpParams) -> CliResult<String> {
    let kind = DumpKind::from_str(kind)?;
    let n = p.n.unwrap_or(3);
    if n < 2 {
        return Err(CliError::InvalidArgument(format!("N = {n}")));
    }
    let nu = p.nu.clone().unwrap_or_else(|| vec![1; n - 1]);
    if nu.len() != n - 1 {
        return Err(CliError::InvalidArgument(format!("ν₀ needs {} coordinates", n - 1)));
    }
    let factors = p.factors.clone().unwrap_or_else(|| vec![FactorSpec::Verma]);
    let value = match kind {
        DumpKind::Order => {
            let h = p.h.unwrap_or(n - 1);
            return Ok(order_text(&special_order(n, h)?));
        }
        DumpKind::Sigma => {
            let h = p.h.unwrap_or(n - 1);
            let seq = sigma_sequence(n, h)?;
            let orders = kzdyn_core::roots::intermediate_orders(n, h)?;
            json!({
                "n": n,
                "h": h,
                "transforms": seq,
                "orders": orders.iter().map(order_text).collect::<Vec<_>>(),
            })
        }
        DumpKind::Operator => {
            let r = p.h.unwrap_or(1);
            let m = module_for(n, &factors, PbwBasis::standard(n))?;
            let op = b_additive(&m, r, &nu)?;
            let sp = m.space(&nu);
            let basis: Vec<Value> =
                sp.elems.iter().map(|e| json!(e.iter().map(|x| mono_json(&m.basis, x)).collect::<Vec<_>>())).collect();
            json!({ "n": n, "r": r, "nu0": nu, "factors": factors, "basis": basis, "operator": op })
        }
        DumpKind::Fusion => {
            let depth = p.depth.unwrap_or(2);
            let j = fusion_solve(n, depth)?;
            let comps: Vec<Value> = j
                .components
                .iter()
                .map(|(mu, c)| {
                    let terms: Vec<Value> = c
                        .iter()
                        .map(|((a, y), x)| json!({ "left": mono_json(&j.basis, a), "right": mono_json(&j.basis, y), "coefficient": x }))
                        .collect();
                    json!({ "mu": mu, "terms": terms })
                })
                .collect();
            json!({ "n": n, "depth": depth, "order": order_text(&j.basis.order), "components": comps })
        }
        DumpKind::PhiVector => {
            let fl = flavor(n, p.h);
            let v = phi_vector(n, factors.len(), &nu, fl)?;
            let terms: Vec<Value> = v
                .terms
                .iter()
                .map(|(e, c)| json!({ "index": e.iter().map(|m| mono_json(&v.basis, m)).collect::<Vec<_>>(), "phi": c }))
                .collect();
            json!({ "n": n, "flavor": fl, "nu0": nu, "order": order_text(&v.basis.order), "terms": terms })
        }
        DumpKind::Forest => {
            let fl = flavor(n, p.h);
            let basis = fl.basis(n)?;
            let rule = fl.rule(n)?;
            let m = module_for(n, &factors, basis.clone())?;
            let grounds = point_grounds(factors.len());
            let forests: Vec<Value> = m
                .space(&nu)
                .elems
                .iter()
                .map(|e| {
                    let maps: Vec<IndexMap> = e.iter().map(|x| basis.mono_to_map(x)).collect();
                    let f = build_forest(n, &rule, &maps, &grounds);
                    json!({
                        "index": e.iter().map(|x| mono_json(&basis, x)).collect::<Vec<_>>(),
                        "forest": f,
                        "phi": f.rational_function(),
                    })
                })
                .collect();
            json!({ "n": n, "flavor": fl, "nu0": nu, "forests": forests })
        }
    };
    Ok(serde_json::to_string_pretty(&value)?)
}
