//! The suite registry. Every suite expands its configuration into a grid of
//! instances, checks them (in parallel, collected in grid order) and returns
//! one witness per instance.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use kzdyn_core::closed_form::{
    check_sigma_schedule, check_sign_table, check_sl2_p_elements, check_sl3_fusion, check_sl3_inverse_shapovalov,
};
use kzdyn_core::dynamical::{
    b_additive, b_omega_shifted, b_w0, check_k_exchange, check_nabla_k, check_rational_to_trig, fusion_solve,
    shifted_lambda, CheckReport,
};
use kzdyn_core::hyper::{verify_order_invariance, SymmetrizationMethod};
use kzdyn_core::numeric::{
    det_formula_sl2_check, main_theorem_sl2_check, quadrature_check, selberg_difference_check, SelbergParams,
    QUADRATURE_GRID, QUADRATURE_TOL, SELBERG_DIFFERENCE_GRID, SELBERG_DIFFERENCE_TOL, SL2_GRID, SL2_RELATIVE_TOL,
};
use kzdyn_core::rep::{ModuleSpec, TensorModule};
use kzdyn_core::uea::PbwBasis;

use crate::{CliError, CliResult, FactorSpec, SuiteConfig, Verdict, Witness};

pub const SUITES: [&str; 10] = [
    "pbw-invariance",
    "additive-form",
    "fusion",
    "compatibility",
    "appendix-b",
    "appendix-c",
    "selberg",
    "main-theorem-sl2",
    "determinant-sl2",
    "sigma-orders",
];

pub(crate) type SuiteOutput = (Vec<Witness>, Vec<String>);

pub(crate) fn run(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    match cfg.suite.as_str() {
        "pbw-invariance" => pbw_invariance(cfg),
        "additive-form" => additive_form(cfg),
        "fusion" => fusion(cfg),
        "compatibility" => compatibility(cfg),
        "appendix-b" => appendix_b(cfg),
        "appendix-c" => appendix_c(cfg),
        "selberg" => selberg(cfg),
        "main-theorem-sl2" => main_theorem(cfg),
        "determinant-sl2" => determinant(cfg),
        "sigma-orders" => sigma_orders(cfg),
        other => Err(CliError::UnknownSuite(other.into())),
    }
}

/// All `ν₀` with `0 ≤ ν₀ ≤ top` coordinatewise, in lexicographic order.
pub(crate) fn weights_below(top: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &t in top {
        out = out.into_iter().flat_map(|p| (0..=t).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// All `ν₀` of height exactly `h` with rank `r`.
fn weights_of_height(r: usize, h: i64) -> Vec<Vec<i64>> {
    weights_below(&vec![h; r]).into_iter().filter(|w| w.iter().sum::<i64>() == h).collect()
}

fn fmt_nu(nu: &[i64]) -> String {
    nu.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// The module for a factor list; Verma factors get symbolic highest weights.
pub(crate) fn module_for(n: usize, factors: &[FactorSpec], basis: Arc<PbwBasis>) -> CliResult<Arc<TensorModule>> {
    let specs = factors
        .iter()
        .enumerate()
        .map(|(j, f)| match f {
            FactorSpec::Verma => Ok(ModuleSpec::verma_symbolic(n, j + 1)),
            FactorSpec::Lp(p) if n == 2 => Ok(ModuleSpec::irreducible_sl2(*p)),
            FactorSpec::Lp(_) => Err(CliError::CapabilityExceeded("lp:P factors exist for sl_2 only".into())),
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(TensorModule::new(specs, basis)?)
}

fn all_verma(cfg: &SuiteConfig, suite: &str) -> CliResult<Option<usize>> {
    match &cfg.factors {
        None => Ok(None),
        Some(fs) if fs.iter().all(|f| *f == FactorSpec::Verma) => Ok(Some(fs.len())),
        Some(_) => Err(CliError::CapabilityExceeded(format!("{suite} works with Verma factors only"))),
    }
}

fn check_witness(r: &CheckReport) -> CliResult<Witness> {
    Witness::new(format!("{} ν₀=({})", r.name, fmt_nu(&r.nu0)), Verdict::of(r.pass), r)
}

/// Grid points `(N, factor count, ν₀)` either from the configuration or from
/// the defaults given per rank.
fn grid(
    cfg: &SuiteConfig,
    count: Option<usize>,
    defaults: &[(usize, usize, Vec<i64>)],
) -> CliResult<Vec<(usize, usize, Vec<i64>)>> {
    match (cfg.n, &cfg.nu) {
        (Some(n), Some(nu)) => Ok(vec![(n, count.unwrap_or(1), nu.clone())]),
        (n, _) => {
            let pts: Vec<_> = defaults
                .iter()
                .filter(|(dn, dc, _)| n.is_none_or(|n| n == *dn) && count.is_none_or(|c| c == *dc))
                .cloned()
                .collect();
            if pts.is_empty() {
                return Err(CliError::InvalidArgument(format!("no default grid for this configuration; pass --n and --nu")));
            }
            Ok(pts)
        }
    }
}

fn pbw_invariance(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let count = all_verma(cfg, "pbw-invariance")?;
    let mut defaults = Vec::new();
    for slots in 1..=2 {
        for nu in weights_below(&[2, 2]) {
            defaults.push((3, slots, nu));
        }
    }
    for nu in weights_below(&[1, 1, 1]) {
        defaults.push((4, 1, nu));
    }
    let points: Vec<(usize, usize, Vec<i64>, usize)> = grid(cfg, count, &defaults)?
        .into_iter()
        .flat_map(|(n, s, nu)| (1..n).map(move |h| (n, s, nu.clone(), h)))
        .collect();
    let results: Vec<CliResult<(Witness, Option<String>)>> = points
        .par_iter()
        .map(|(n, slots, nu, h)| {
            let r = verify_order_invariance(*n, *slots, nu, *h)?;
            let verdict = match (r.symmetrized_equal, r.symmetrization) {
                (false, _) => Verdict::Fail,
                (true, SymmetrizationMethod::Symbolic) => Verdict::Pass,
                (true, SymmetrizationMethod::Sampled { .. }) => Verdict::Flagged,
            };
            let note = (r.symmetrized_equal && !r.raw_equal)
                .then(|| format!("N={n} n={slots} ν₀=({}) h={h}: equal only after symmetrization", fmt_nu(nu)));
            Ok((Witness::new(format!("N={n} n={slots} ν₀=({}) h={h}", fmt_nu(nu)), verdict, &r)?, note))
        })
        .collect();
    let mut ws = Vec::new();
    let mut notes = Vec::new();
    for r in results {
        let (w, note) = r?;
        ws.push(w);
        notes.extend(note);
    }
    Ok((ws, notes))
}

#[derive(Serialize)]
struct MatrixComparison {
    n: usize,
    factors: usize,
    nu0: Vec<i64>,
    r: usize,
    dim: usize,
    first_difference: Option<(usize, usize, String)>,
}

fn additive_form(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let count = all_verma(cfg, "additive-form")?;
    let mut defaults = Vec::new();
    for slots in 1..=2 {
        for d in 0..=4 {
            defaults.push((2, slots, vec![d]));
        }
    }
    for nu in weights_below(&[2, 2]) {
        defaults.push((3, 1, nu));
    }
    let points: Vec<(usize, usize, Vec<i64>, usize)> = grid(cfg, count, &defaults)?
        .into_iter()
        .flat_map(|(n, s, nu)| (1..n).map(move |r| (n, s, nu.clone(), r)))
        .collect();
    let ws: Vec<CliResult<Witness>> = points
        .par_iter()
        .map(|(n, slots, nu, r)| {
            let m = TensorModule::symbolic_vermas(*n, *slots, PbwBasis::standard(*n))?;
            let a = b_additive(&m, *r, nu)?;
            let p = b_omega_shifted(&m, *r, nu)?;
            let diff = a.matrix.sub(&p.matrix);
            let cmp = MatrixComparison {
                n: *n,
                factors: *slots,
                nu0: nu.clone(),
                r: *r,
                dim: a.matrix.rows,
                first_difference: diff.first_nonzero().map(|(i, j, x)| (i, j, x.to_string())),
            };
            Witness::new(
                format!("N={n} n={slots} ν₀=({}) r={r}", fmt_nu(nu)),
                Verdict::of(cmp.first_difference.is_none()),
                &cmp,
            )
        })
        .collect();
    Ok((ws.into_iter().collect::<CliResult<_>>()?, Vec::new()))
}

fn ranks(cfg: &SuiteConfig, defaults: &[usize]) -> Vec<usize> {
    cfg.n.map_or_else(|| defaults.to_vec(), |n| vec![n])
}

#[derive(Serialize)]
struct OperatorResidual {
    mu: Vec<i64>,
    nu0: Vec<i64>,
    first_nonzero: Option<(usize, usize, String)>,
}

fn fusion(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let depth = cfg.depth.unwrap_or(4);
    let mut ws = Vec::new();
    for n in ranks(cfg, &[2, 3]) {
        let j = fusion_solve(n, depth)?;
        let m = TensorModule::symbolic_vermas(n, 2, PbwBasis::standard(n))?;
        // the recurrence acting on a two-factor module, for every weight of the top height
        let tops = weights_of_height(n - 1, depth as i64);
        let pairs: Vec<(Vec<i64>, Vec<i64>)> = tops
            .iter()
            .flat_map(|top| weights_below(top).into_iter().filter(|mu| mu.iter().any(|&x| x > 0)).map(move |mu| (mu, top.clone())))
            .collect();
        let res: Vec<CliResult<Witness>> = pairs
            .par_iter()
            .map(|(mu, top)| {
                let r = j.residual_on(&m, mu, top)?;
                let d = OperatorResidual {
                    mu: mu.clone(),
                    nu0: top.clone(),
                    first_nonzero: r.first_nonzero().map(|(a, b, x)| (a, b, x.to_string())),
                };
                Witness::new(
                    format!("sl{n} recurrence μ=({}) on ν₀=({})", fmt_nu(mu), fmt_nu(top)),
                    Verdict::of(d.first_nonzero.is_none()),
                    &d,
                )
            })
            .collect();
        for w in res {
            ws.push(w?);
        }
        // J₊ against the inverse Shapovalov form, weight by weight
        let mus: Vec<Vec<i64>> = j.components.keys().cloned().collect();
        let res: Vec<CliResult<Witness>> = mus
            .par_iter()
            .map(|mu| {
                let r = j.shapovalov_residual(mu)?;
                let first: Option<String> = r.first().map(|((a, b), x)| format!("{a:?} ⊗ {b:?}: {x}"));
                Witness::new(
                    format!("sl{n} J₊ = Σ F ⊗ τ(P) at μ=({})", fmt_nu(mu)),
                    Verdict::of(first.is_none()),
                    &serde_json::json!({ "mu": mu, "mismatches": r.len(), "first": first }),
                )
            })
            .collect();
        for w in res {
            ws.push(w?);
        }
        // Q† = B_{w₀} in the shifted convention
        let qs: Vec<Vec<i64>> = (1..=depth.min(if n == 2 { 4 } else { 3 }) as i64)
            .flat_map(|h| weights_of_height(n - 1, h))
            .collect();
        let res: Vec<CliResult<Witness>> = qs
            .par_iter()
            .map(|nu| {
                let q = j.q_dagger(&m, nu)?;
                let b = b_w0(&m, &shifted_lambda(&m, nu), nu)?;
                let d = OperatorResidual {
                    mu: Vec::new(),
                    nu0: nu.clone(),
                    first_nonzero: q.matrix.sub(&b).first_nonzero().map(|(a, b, x)| (a, b, x.to_string())),
                };
                Witness::new(format!("sl{n} Q† = B_w0 on ν₀=({})", fmt_nu(nu)), Verdict::of(d.first_nonzero.is_none()), &d)
            })
            .collect();
        for w in res {
            ws.push(w?);
        }
        if n == 3 {
            let max_ab = cfg.max_ab.unwrap_or(2).min(depth as i64 / 2);
            for a in 0..=max_ab {
                for b in 0..=max_ab {
                    ws.push(check_witness(&check_sl3_fusion(&j, a, b)?)?);
                }
            }
        }
    }
    Ok((ws, Vec::new()))
}

fn compatibility(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let factors = cfg.factors.clone().unwrap_or_else(|| vec![FactorSpec::Verma; 2]);
    let defaults: Vec<(usize, Vec<Vec<i64>>)> = vec![(2, (0..=2).map(|d| vec![d]).collect()), (3, vec![vec![1, 1]])];
    let points: Vec<(usize, Vec<i64>)> = match (cfg.n, &cfg.nu) {
        (Some(n), Some(nu)) => vec![(n, nu.clone())],
        (n, _) => defaults
            .into_iter()
            .filter(|(dn, _)| n.is_none_or(|n| n == *dn))
            .flat_map(|(dn, nus)| nus.into_iter().map(move |nu| (dn, nu)))
            .collect(),
    };
    let mut jobs: Vec<(usize, Vec<i64>, &'static str, usize, usize)> = Vec::new();
    for (n, nu) in points {
        for k in 1..n {
            for l in k + 1..n {
                jobs.push((n, nu.clone(), "exchange", k, l));
            }
        }
        for j in 0..factors.len() {
            for k in 1..n {
                jobs.push((n, nu.clone(), "nabla", j, k));
            }
        }
        if n == 2 {
            // a single K operator: the exchange relation is vacuous
            jobs.push((n, nu.clone(), "exchange", 1, 1));
        }
    }
    let ws: Vec<CliResult<Witness>> = jobs
        .par_iter()
        .map(|(n, nu, kind, a, b)| {
            let m = module_for(*n, &factors, PbwBasis::standard(*n))?;
            let r = if *kind == "exchange" { check_k_exchange(&m, *a, *b, nu)? } else { check_nabla_k(&m, *a, *b, nu)? };
            let mut w = check_witness(&r)?;
            w.name = format!("sl{n} {}", w.name);
            Ok(w)
        })
        .collect();
    Ok((ws.into_iter().collect::<CliResult<_>>()?, Vec::new()))
}

fn appendix_b(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let count = all_verma(cfg, "appendix-b")?;
    let defaults = vec![(2, 1, vec![1]), (2, 1, vec![2]), (2, 2, vec![1]), (2, 2, vec![2]), (3, 1, vec![1, 1])];
    let points = grid(cfg, count, &defaults)?;
    let res: Vec<CliResult<Vec<Witness>>> = points
        .par_iter()
        .map(|(n, slots, nu)| {
            let reports = check_rational_to_trig(*n, *slots, nu)?;
            if reports.is_empty() {
                return Ok(vec![Witness::new(
                    format!("sl{n} n={slots} ν₀=({}): no singular vectors", fmt_nu(nu)),
                    Verdict::Pass,
                    &serde_json::json!({ "singular_vectors": 0 }),
                )?]);
            }
            reports
                .iter()
                .map(|r| {
                    let mut w = check_witness(r)?;
                    w.name = format!("sl{n} n={slots} {}", w.name);
                    Ok(w)
                })
                .collect()
        })
        .collect();
    let mut ws = Vec::new();
    for r in res {
        ws.extend(r?);
    }
    Ok((ws, Vec::new()))
}

fn appendix_c(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let max_ab = cfg.max_ab.unwrap_or(2);
    let mut ws = Vec::new();
    for r in check_sl2_p_elements(cfg.depth.unwrap_or(6) as i64)? {
        ws.push(check_witness(&r)?);
    }
    let pairs: Vec<(i64, i64)> = (0..=max_ab).flat_map(|a| (0..=max_ab).map(move |b| (a, b))).collect();
    let res: Vec<CliResult<CheckReport>> = pairs.par_iter().map(|&(a, b)| Ok(check_sl3_inverse_shapovalov(a, b)?)).collect();
    for r in res {
        ws.push(check_witness(&r?)?);
    }
    let j = fusion_solve(3, 2 * max_ab as usize)?;
    for &(a, b) in &pairs {
        ws.push(check_witness(&check_sl3_fusion(&j, a, b)?)?);
    }
    Ok((ws, Vec::new()))
}

fn selberg(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let diff_tol = cfg.tol.map_or(SELBERG_DIFFERENCE_TOL, |t| t.min(SELBERG_DIFFERENCE_TOL));
    let quad_tol = cfg.tol.unwrap_or(QUADRATURE_TOL);
    let mut ws = Vec::new();
    for &(m, a, b, c) in SELBERG_DIFFERENCE_GRID.iter() {
        let mut r = selberg_difference_check(&SelbergParams::new(m, a, b, c))?;
        r.tol = diff_tol;
        r.pass = r.error <= diff_tol;
        ws.push(Witness::new(format!("difference m={m} a={a} b={b} c={c}"), Verdict::of(r.pass), &r)?);
    }
    let res: Vec<CliResult<Witness>> = QUADRATURE_GRID
        .par_iter()
        .map(|&(m, a, b, c)| {
            let r = quadrature_check(&SelbergParams::new(m, a, b, c), quad_tol)?;
            Witness::new(format!("quadrature m={m} a={a} b={b} c={c}"), Verdict::of(r.pass), &r)
        })
        .collect();
    for w in res {
        ws.push(w?);
    }
    Ok((ws, Vec::new()))
}

type Sl2Point = (u32, usize, f64, f64, f64);

fn sl2_points(cfg: &SuiteConfig) -> CliResult<Vec<Sl2Point>> {
    match (&cfg.factors, &cfg.nu) {
        (Some(fs), Some(nu)) => match fs.as_slice() {
            [FactorSpec::Lp(p)] => Ok(SL2_GRID
                .iter()
                .map(|&(_, _, k, l, z)| (*p, nu[0] as usize, k, l, z))
                .collect()),
            _ => Err(CliError::CapabilityExceeded("the sl_2 numeric suites take one lp:P factor".into())),
        },
        (None, None) => Ok(SL2_GRID.to_vec()),
        _ => Err(CliError::InvalidArgument("pass both --factors lp:P and --nu m, or neither".into())),
    }
}

fn main_theorem(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let tol = cfg.tol.unwrap_or(SL2_RELATIVE_TOL);
    let mut ws = Vec::new();
    for (p, m, kap, lam, z) in sl2_points(cfg)? {
        let mut r = main_theorem_sl2_check(p, m, kap, lam, z)?;
        r.tol = tol;
        r.pass = r.error <= tol;
        ws.push(Witness::new(format!("p={p} m={m} κ={kap} λ={lam} z={z}"), Verdict::of(r.pass), &r)?);
    }
    Ok((ws, Vec::new()))
}

fn determinant(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let tol = cfg.tol.unwrap_or(SL2_RELATIVE_TOL);
    let mut ws = Vec::new();
    let mut notes = Vec::new();
    for (p, m, kap, lam, z) in sl2_points(cfg)? {
        let mut r = det_formula_sl2_check(p, m, kap, lam, z)?;
        for x in [&mut r.product, &mut r.periodicity, &mut r.constant] {
            x.tol = tol;
            x.pass = x.error <= tol;
        }
        if r.regularized {
            notes.push(format!("p={p} m={m} κ={kap}: the constant sits on a Γ pole; compared after dividing it out"));
        }
        let tag = format!("p={p} m={m} κ={kap} λ={lam} z={z}");
        ws.push(Witness::new(format!("u11 = C·D {tag}"), Verdict::of(r.product.pass), &r.product)?);
        ws.push(Witness::new(format!("C(λ+κ) = C(λ) {tag}"), Verdict::of(r.periodicity.pass), &r.periodicity)?);
        ws.push(Witness::new(format!("u11/D = closed-form C {tag}"), Verdict::of(r.constant.pass), &r.constant)?);
    }
    Ok((ws, notes))
}

fn sigma_orders(cfg: &SuiteConfig) -> CliResult<SuiteOutput> {
    let ns: Vec<usize> = cfg.n.map_or_else(|| (2..=6).collect(), |n| vec![n]);
    let mut ws = Vec::new();
    for n in ns {
        for h in 1..n {
            if h >= 2 {
                ws.push(check_witness(&check_sigma_schedule(n, h)?)?);
            }
            ws.push(check_witness(&check_sign_table(n, h)?)?);
        }
    }
    Ok((ws, Vec::new()))
}
