//! Floating-point verification layer: signed log-gamma, the Selberg product
//! and its difference equation, Gauss–Jacobi quadrature over ordered
//! chambers, and numeric instances of the dynamical equation and of the
//! determinant formula for `sl_2`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamical::{det_ingredients, k_operator, kappa_symbol, z_symbol, DetIngredients};
use crate::error::{Error, Result};
use crate::rep::{dyn_symbol, dyn_weight, ModuleSpec, TensorModule};
use crate::symexpr::{Rf, Symbol};
use crate::uea::PbwBasis;

/// A real number stored as `sign · exp(ln_abs)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: f64,
}

impl SignedLog {
    pub const ONE: SignedLog = SignedLog { ln_abs: 0.0, sign: 1.0 };

    pub fn from_f64(x: f64) -> Result<SignedLog> {
        if x == 0.0 || !x.is_finite() {
            return Err(Error::OutOfRange(format!("{x} has no finite logarithm")));
        }
        Ok(SignedLog { ln_abs: x.abs().ln(), sign: x.signum() })
    }

    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }

    pub fn mul(&self, o: &SignedLog) -> SignedLog {
        SignedLog { ln_abs: self.ln_abs + o.ln_abs, sign: self.sign * o.sign }
    }

    pub fn div(&self, o: &SignedLog) -> SignedLog {
        SignedLog { ln_abs: self.ln_abs - o.ln_abs, sign: self.sign * o.sign }
    }

    pub fn powi(&self, k: i32) -> SignedLog {
        SignedLog { ln_abs: self.ln_abs * k as f64, sign: if k % 2 == 0 { 1.0 } else { self.sign } }
    }

    /// `x^e` for a positive base and real exponent.
    pub fn positive_pow(x: f64, e: f64) -> Result<SignedLog> {
        if x <= 0.0 {
            return Err(Error::OutOfRange(format!("real power of non-positive base {x}")));
        }
        Ok(SignedLog { ln_abs: e * x.ln(), sign: 1.0 })
    }

    /// `|self/o − 1|`, infinite when the signs differ.
    pub fn relative_error(&self, o: &SignedLog) -> f64 {
        if self.sign != o.sign {
            return f64::INFINITY;
        }
        (self.ln_abs - o.ln_abs).exp_m1().abs()
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
pub fn signed_log_gamma(x: f64) -> Result<SignedLog> {
    if is_pole(x) || !x.is_finite() {
        return Err(Error::PoleHit(format!("Γ({x})")));
    }
    let (l, s) = libm::lgamma_r(x);
    Ok(SignedLog { ln_abs: l, sign: if s < 0 { -1.0 } else { 1.0 } })
}

/// `ln |Γ(x)|`.
pub fn log_gamma(x: f64) -> Result<f64> {
    Ok(signed_log_gamma(x)?.ln_abs)
}

fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<SignedLog> {
    let mut acc = SignedLog::ONE;
    for &x in num {
        acc = acc.mul(&signed_log_gamma(x)?);
    }
    for &x in den {
        acc = acc.div(&signed_log_gamma(x)?);
    }
    Ok(acc)
}

/// Parameters of the Selberg integral `I_m(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelbergParams {
    pub m: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SelbergParams {
    pub fn new(m: usize, a: f64, b: f64, c: f64) -> SelbergParams {
        SelbergParams { m, a, b, c }
    }

    /// Whether the chamber integral converges: `a, b > 0` and `c > −1/m`
    /// together with `c > −a/(m−1)`, `c > −b/(m−1)`.
    pub fn integrable(&self) -> bool {
        let m = self.m as f64;
        let mut ok = self.a > 0.0 && self.b > 0.0 && self.c > -1.0 / m;
        if self.m > 1 {
            ok &= self.c > -self.a / (m - 1.0) && self.c > -self.b / (m - 1.0);
        }
        ok
    }
}

/// The gamma product
/// `(1/m!) ∏_{j<m} Γ(1+c+jc) Γ(a+jc) Γ(b+jc) / (Γ(1+c) Γ(a+b+(m+j−1)c))`,
/// meromorphic in `(a, b, c)`.
pub fn selberg_closed(p: &SelbergParams) -> Result<SignedLog> {
    let (a, b, c) = (p.a, p.b, p.c);
    let mut acc = SignedLog { ln_abs: -log_gamma(p.m as f64 + 1.0)?, sign: 1.0 };
    for j in 0..p.m {
        let j = j as f64;
        acc = acc.mul(&gamma_ratio(&[1.0 + c + j * c, a + j * c, b + j * c], &[1.0 + c, a + b + (p.m as f64 + j - 1.0) * c])?);
    }
    Ok(acc)
}

/// A numeric comparison with its tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub error: f64,
    pub tol: f64,
    pub pass: bool,
}

impl NumericReport {
    fn new(name: &str, params: &[(&str, f64)], lhs: f64, rhs: f64, error: f64, tol: f64) -> NumericReport {
        NumericReport {
            name: name.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs,
            rhs,
            error,
            tol,
            pass: error <= tol,
        }
    }
}

/// Tolerance of the Selberg difference equation in log scale.
pub const SELBERG_DIFFERENCE_TOL: f64 = 1e-10;

/// `I_m(a+1, b, c) = ∏_{k=1}^m (a + c(m−k)) / (a + b + c(2m−k−1)) · I_m(a, b, c)`
/// compared in log scale.
pub fn selberg_difference_check(p: &SelbergParams) -> Result<NumericReport> {
    let lhs = selberg_closed(&SelbergParams { a: p.a + 1.0, ..*p })?;
    let m = p.m as f64;
    let mut factor = SignedLog::ONE;
    for k in 1..=p.m {
        let k = k as f64;
        let f = (p.a + p.c * (m - k)) / (p.a + p.b + p.c * (2.0 * m - k - 1.0));
        factor = factor.mul(&SignedLog::from_f64(f)?);
    }
    let rhs = factor.mul(&selberg_closed(p)?);
    let err = if lhs.sign == rhs.sign { (lhs.ln_abs - rhs.ln_abs).abs() } else { f64::INFINITY };
    Ok(NumericReport::new(
        "selberg-difference",
        &[("m", m), ("a", p.a), ("b", p.b), ("c", p.c)],
        lhs.ln_abs,
        rhs.ln_abs,
        err,
        SELBERG_DIFFERENCE_TOL,
    ))
}

/// A Gauss rule on `[0, 1]` for the weight `u^α (1−u)^β`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss–Jacobi nodes and weights on `[0, 1]` for `u^α (1−u)^β`, from the
/// eigen-decomposition of the Jacobi matrix.
pub fn gauss_jacobi_unit(n: usize, alpha: f64, beta: f64) -> Result<GaussRule> {
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::NonIntegrable(format!("weight exponents ({alpha}, {beta})")));
    }
    if n == 0 {
        return Err(Error::OutOfRange("empty Gauss rule".into()));
    }
    // The three-term recurrence of P^{(β, α)} on [−1, 1] (x = 2u − 1).
    let (ja, jb) = (beta, alpha);
    let s = ja + jb;
    let mut t = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let k = i as f64;
        let d = if i == 0 { (jb - ja) / (s + 2.0) } else { (jb * jb - ja * ja) / ((2.0 * k + s) * (2.0 * k + s + 2.0)) };
        t[(i, i)] = d;
        if i + 1 < n {
            let k = k + 1.0;
            let off = if i == 0 {
                4.0 * (1.0 + ja) * (1.0 + jb) / ((2.0 + s).powi(2) * (3.0 + s))
            } else {
                4.0 * k * (k + ja) * (k + jb) * (k + s) / ((2.0 * k + s).powi(2) * (2.0 * k + s + 1.0) * (2.0 * k + s - 1.0))
            };
            t[(i, i + 1)] = off.sqrt();
            t[(i + 1, i)] = off.sqrt();
        }
    }
    let eig = SymmetricEigen::new(t);
    let mu0 = (log_gamma(alpha + 1.0)? + log_gamma(beta + 1.0)? - log_gamma(alpha + beta + 2.0)?).exp();
    let mut pairs: Vec<(f64, f64)> =
        (0..n).map(|i| ((eig.eigenvalues[i] + 1.0) / 2.0, mu0 * eig.eigenvectors[(0, i)].powi(2))).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(GaussRule { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() })
}

/// `∫_{0 ≤ t₁ < ⋯ < t_m ≤ 1} ∏_k t_k^{a_k−1} (1−t_k)^{b_k−1} ∏_{k<l} (t_l−t_k)^{2c_{kl}} dt`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChamberIntegral {
    pub m: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// `c[k][l]` for `k < l`; other entries are ignored.
    pub c: Vec<Vec<f64>>,
}

impl ChamberIntegral {
    pub fn selberg(p: &SelbergParams) -> ChamberIntegral {
        ChamberIntegral { m: p.m, a: vec![p.a; p.m], b: vec![p.b; p.m], c: vec![vec![p.c; p.m]; p.m] }
    }
}

/// A quadrature estimate with the difference to the previous refinement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub points_per_axis: usize,
}

/// The largest chamber dimension handled by the quadrature.
pub const MAX_CHAMBER_DIM: usize = 3;

const QUAD_LEVELS: [usize; 5] = [12, 24, 48, 96, 160];

/// Ordered-chamber quadrature. With `t_k = u_k u_{k+1} ⋯ u_m` the factors
/// `t_k^{a_k−1}`, `(t_{k+1}−t_k)^{2c}`, `(1−t_m)^{b_m−1}` and the Jacobian become
/// per-axis Jacobi weights; the remaining factors are bounded away from the
/// corner `u = 1` and are integrated by the tensor rule, refined until two
/// successive estimates agree within `tol`.
pub fn quad_chamber(ci: &ChamberIntegral, tol: f64) -> Result<QuadEstimate> {
    let m = ci.m;
    if m == 0 {
        return Ok(QuadEstimate { value: 1.0, error: 0.0, points_per_axis: 0 });
    }
    if m > MAX_CHAMBER_DIM {
        return Err(Error::CapabilityExceeded(format!("chamber dimension {m} > {MAX_CHAMBER_DIM}")));
    }
    // u_j (0-based j) exponents
    let mut alpha = vec![0.0; m];
    let mut beta = vec![0.0; m];
    for j in 0..m {
        alpha[j] = j as f64 + (0..=j).map(|k| ci.a[k] - 1.0).sum::<f64>();
        for l in 1..=j {
            for k in 0..l {
                alpha[j] += 2.0 * ci.c[k][l];
            }
        }
        beta[j] = if j + 1 < m { 2.0 * ci.c[j][j + 1] } else { ci.b[m - 1] - 1.0 };
    }
    if let Some(j) = (0..m).find(|&j| alpha[j] <= -1.0 || beta[j] <= -1.0) {
        return Err(Error::NonIntegrable(format!("axis {j}: exponents ({}, {})", alpha[j], beta[j])));
    }
    let remainder = |u: &[f64]| -> f64 {
        let t: Vec<f64> = (0..m).map(|k| u[k..].iter().product()).collect();
        let mut f = 1.0;
        for k in 0..m - 1 {
            f *= (1.0 - t[k]).powf(ci.b[k] - 1.0);
        }
        for l in 2..m {
            for k in 0..l - 1 {
                let inner: f64 = u[k..l].iter().product();
                f *= (1.0 - inner).powf(2.0 * ci.c[k][l]);
            }
        }
        f
    };
    let mut prev: Option<f64> = None;
    let mut last = QuadEstimate { value: f64::NAN, error: f64::INFINITY, points_per_axis: 0 };
    for &n in &QUAD_LEVELS {
        let rules = (0..m).map(|j| gauss_jacobi_unit(n, alpha[j], beta[j])).collect::<Result<Vec<_>>>()?;
        let value: f64 = (0..n)
            .into_par_iter()
            .map(|i0| {
                let mut idx = vec![0usize; m];
                idx[0] = i0;
                let mut acc = 0.0;
                loop {
                    let u: Vec<f64> = (0..m).map(|j| rules[j].nodes[idx[j]]).collect();
                    let w: f64 = (0..m).map(|j| rules[j].weights[idx[j]]).product();
                    acc += w * remainder(&u);
                    let mut j = 1;
                    while j < m {
                        idx[j] += 1;
                        if idx[j] < n {
                            break;
                        }
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == m {
                        break;
                    }
                }
                acc
            })
            .sum();
        let error = prev.map_or(f64::INFINITY, |p| (value - p).abs());
        last = QuadEstimate { value, error, points_per_axis: n };
        if error <= tol * value.abs().max(1e-300) {
            break;
        }
        prev = Some(value);
    }
    Ok(last)
}

/// Tolerance of the sl₂ dynamical-equation and determinant checks.
pub const SL2_RELATIVE_TOL: f64 = 1e-9;

/// The Selberg parameters of the `sl_2` solution with values in `L_p[(p−2m)α/2]`:
/// `a = −((λ,α) − 1 − (p−2m)/2)/κ + 1`, `b = −p/κ`, `c = 1/κ`.
pub fn sl2_selberg_params(p: u32, m: usize, kappa: f64, lambda: f64) -> SelbergParams {
    let nu = p as f64 - 2.0 * m as f64;
    SelbergParams::new(m, -(lambda - 1.0 - nu / 2.0) / kappa + 1.0, -(p as f64) / kappa, 1.0 / kappa)
}

/// The scalar solution `z^{(p−2m)(λ,α)/(2κ)} I_m(a, b, c)` for real `z > 0`,
/// split into its `λ`-dependent part
/// `z^{…} ∏_{j<m} Γ(a+jc) / Γ(a+b+(m+j−1)c)` and the constant
/// `(1/m!) ∏_{j<m} Γ(1+c+jc) Γ(b+jc) / Γ(1+c)`, which may sit on a pole.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Solution {
    pub lambda_part: SignedLog,
    pub constant: Result<SignedLog>,
}

impl Sl2Solution {
    pub fn full(&self) -> Result<SignedLog> {
        Ok(self.lambda_part.mul(self.constant.as_ref().map_err(Clone::clone)?))
    }
}

pub fn sl2_solution(p: u32, m: usize, kappa: f64, lambda: f64, z: f64) -> Result<Sl2Solution> {
    if m > p as usize {
        return Err(Error::OutOfRange(format!("weight space L_{p}[{m}] is zero")));
    }
    let nu = p as f64 - 2.0 * m as f64;
    let s = sl2_selberg_params(p, m, kappa, lambda);
    let mut lambda_part = SignedLog::positive_pow(z, nu * lambda / (2.0 * kappa))?;
    for j in 0..m {
        let j = j as f64;
        lambda_part = lambda_part.mul(&gamma_ratio(&[s.a + j * s.c], &[s.a + s.b + (m as f64 + j - 1.0) * s.c])?);
    }
    Ok(Sl2Solution { lambda_part, constant: sl2_det_constant(p, m, kappa) })
}

fn sl2_module(p: u32) -> Result<std::sync::Arc<TensorModule>> {
    TensorModule::new(vec![ModuleSpec::irreducible_sl2(p)], PbwBasis::standard(2))
}

fn eval_at(x: &Rf, vals: &[(Symbol, f64)]) -> Result<f64> {
    x.eval_f64(&|s| vals.iter().find(|(t, _)| *t == s).map(|(_, v)| *v))
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::PoleHit(format!("evaluating {x}")))
}

/// `v(z, λ + κω) / v(z, λ)` from the closed form against the scalar
/// `K_1(z, λ)` on the one-dimensional `L_p[(p−2m)α/2]`.
pub fn main_theorem_sl2_check(p: u32, m: usize, kappa: f64, lambda: f64, z: f64) -> Result<NumericReport> {
    // the constant factor cancels in the ratio
    let ratio = sl2_solution(p, m, kappa, lambda + kappa, z)?.lambda_part.div(&sl2_solution(p, m, kappa, lambda, z)?.lambda_part).value();
    let module = sl2_module(p)?;
    let nu0 = [m as i64];
    let k = k_operator(&module, 1, &dyn_weight(2), &nu0)?;
    if k.matrix.rows != 1 {
        return Err(Error::OutOfRange(format!("weight space of dimension {}", k.matrix.rows)));
    }
    let vals = [(dyn_symbol(1), lambda), (z_symbol(1), z), (kappa_symbol(), kappa)];
    let common = eval_at(&k.common_exponents[0], &vals)?;
    let kval = z.powf(common) * eval_at(k.matrix.get(0, 0), &vals)?;
    let err = (ratio - kval).abs() / kval.abs();
    Ok(NumericReport::new(
        "main-theorem-sl2",
        &[("p", p as f64), ("m", m as f64), ("kappa", kappa), ("lambda", lambda), ("z", z)],
        ratio,
        kval,
        err,
        SL2_RELATIVE_TOL,
    ))
}

/// `D_{V[ν]}(z, λ)` from the determinant ingredients, for `λ` given by its
/// simple-root pairings and real `z₁ > z₂ > ⋯ > 0`.
pub fn eval_d_factor(ing: &DetIngredients, n: usize, kappa: f64, lambda: &[f64], z: &[f64]) -> Result<SignedLog> {
    let mut vals: Vec<(Symbol, f64)> = (1..n).map(|k| (dyn_symbol(k), lambda[k - 1])).collect();
    vals.push((kappa_symbol(), kappa));
    let slots = ing.trace_lambda.len();
    let eps = |i: usize, j: usize| -> Result<f64> {
        let key = (i.min(j), i.max(j));
        let x = ing.trace_omega.iter().find(|(k, _)| *k == key).map(|(_, x)| x.clone()).unwrap_or_else(Rf::zero);
        eval_at(&x, &vals)
    };
    let mut acc = SignedLog::ONE;
    for i in 0..slots {
        let mut gamma = 0.0;
        for j in 0..slots {
            if j != i {
                gamma += eps(i, j)?;
            }
        }
        let li = eval_at(&ing.trace_lambda[i], &vals)?;
        acc = acc.mul(&SignedLog::positive_pow(z[i], (li - 0.5 * gamma) / kappa)?);
        for j in i + 1..slots {
            acc = acc.mul(&SignedLog::positive_pow(z[i] - z[j], eps(i, j)? / kappa)?);
        }
    }
    for ((alpha, mults), na) in ing.multiplicities.iter().zip(&ing.nu_alpha) {
        let la: f64 = (alpha.k..alpha.l).map(|s| lambda[s - 1]).sum();
        let na = eval_at(na, &vals)?;
        for &(mm, d) in mults {
            let mut x = SignedLog::ONE;
            for j in 1..=mm {
                let h = 0.5 * (na + 2.0 * j as f64);
                x = x.mul(&gamma_ratio(&[1.0 - (la - h) / kappa], &[1.0 - (la + h) / kappa])?);
            }
            acc = acc.mul(&x.powi(d as i32));
        }
    }
    Ok(acc)
}

/// The constant `C_{L_p[(p−2m)α/2]} = (m!)^{-1} ∏_{j<m} Γ(1+(1+j)/κ) Γ((j−p)/κ) / Γ(1+1/κ)`.
pub fn sl2_det_constant(p: u32, m: usize, kappa: f64) -> Result<SignedLog> {
    let mut acc = SignedLog { ln_abs: -log_gamma(m as f64 + 1.0)?, sign: 1.0 };
    for j in 0..m {
        let j = j as f64;
        acc = acc.mul(&gamma_ratio(&[1.0 + (1.0 + j) / kappa, (j - p as f64) / kappa], &[1.0 + 1.0 / kappa])?);
    }
    Ok(acc)
}

/// The three comparisons of the determinant formula on `L_p[(p−2m)α/2]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetReport {
    /// `u₁₁ = C · D`.
    pub product: NumericReport,
    /// `u₁₁/D` at `λ + κ` against `λ`.
    pub periodicity: NumericReport,
    /// `u₁₁/D` against the closed-form constant.
    pub constant: NumericReport,
    /// Set when `∏ Γ((j−p)/κ)` is a pole: the common factor is divided out of
    /// `u₁₁` and `C` before comparing.
    pub regularized: bool,
}

/// `u₁₁ = C·D`, with `D` built from the general ingredients, and
/// `κ`-periodicity of `C = u₁₁/D`.
pub fn det_formula_sl2_check(p: u32, m: usize, kappa: f64, lambda: f64, z: f64) -> Result<DetReport> {
    let module = sl2_module(p)?;
    let ing = det_ingredients(&module, &[m as i64])?;
    let params = [("p", p as f64), ("m", m as f64), ("kappa", kappa), ("lambda", lambda), ("z", z)];
    let regularized = sl2_det_constant(p, m, kappa).is_err();
    let common = if regularized {
        let mut g = SignedLog::ONE;
        for j in 0..m {
            let x = (j as f64 - p as f64) / kappa;
            if !is_pole(x) {
                g = g.mul(&signed_log_gamma(x)?);
            }
        }
        g
    } else {
        SignedLog::ONE
    };
    // u₁₁ and C with the pole-free part of ∏ Γ((j−p)/κ) kept and the poles dropped
    let closed = if regularized {
        let mut acc = SignedLog { ln_abs: -log_gamma(m as f64 + 1.0)?, sign: 1.0 };
        for j in 0..m {
            acc = acc.mul(&gamma_ratio(&[1.0 + (1.0 + j as f64) / kappa], &[1.0 + 1.0 / kappa])?);
        }
        acc.mul(&common)
    } else {
        sl2_det_constant(p, m, kappa)?
    };
    let u_at = |lam: f64| -> Result<SignedLog> {
        let s = sl2_solution(p, m, kappa, lam, z)?;
        if regularized {
            Ok(s.lambda_part.mul(&closed))
        } else {
            s.full()
        }
    };
    let d0 = eval_d_factor(&ing, 2, kappa, &[lambda], &[z])?;
    let d1 = eval_d_factor(&ing, 2, kappa, &[lambda + kappa], &[z])?;
    let u = u_at(lambda)?;
    let c0 = u.div(&d0);
    let c1 = u_at(lambda + kappa)?.div(&d1);
    let cd = closed.mul(&d0);
    Ok(DetReport {
        product: NumericReport::new("det-product", &params, u.value(), cd.value(), u.relative_error(&cd), SL2_RELATIVE_TOL),
        periodicity: NumericReport::new(
            "det-periodicity",
            &params,
            c1.value(),
            c0.value(),
            c1.relative_error(&c0),
            SL2_RELATIVE_TOL,
        ),
        constant: NumericReport::new(
            "det-constant",
            &params,
            c0.value(),
            closed.value(),
            c0.relative_error(&closed),
            SL2_RELATIVE_TOL,
        ),
        regularized,
    })
}

/// The 6-point `(p, m, κ, λ, z)` grid for the `sl_2` checks.
pub const SL2_GRID: [(u32, usize, f64, f64, f64); 6] = [
    (3, 1, 2.0, 1.7, 0.8),
    (4, 2, 3.0, 2.3, 1.1),
    (1, 1, 1.5, 0.9, 0.7),
    (2, 1, 2.5, 1.3, 1.2),
    (5, 2, 4.0, 0.6, 0.5),
    (6, 3, 3.5, 2.9, 1.3),
];

/// The 10-point grid for the Selberg difference equation.
pub const SELBERG_DIFFERENCE_GRID: [(usize, f64, f64, f64); 10] = [
    (1, 0.9, 1.7, 0.0),
    (1, 2.5, 0.4, 0.8),
    (2, 1.3, 0.7, 0.4),
    (2, 0.6, -1.3, 0.5),
    (2, 3.2, 2.2, 1.1),
    (3, 2.1, 1.1, 0.35),
    (3, 0.8, 0.9, 0.2),
    (4, 1.6, 2.4, 0.3),
    (4, 0.35, -0.7, 0.25),
    (5, 2.7, 1.3, 0.45),
];

/// The 10-point grid for quadrature against the closed form, `m ≤ 2`.
pub const QUADRATURE_GRID: [(usize, f64, f64, f64); 10] = [
    (1, 1.0, 1.0, 0.0),
    (1, 2.5, 1.5, 0.3),
    (1, 0.6, 0.8, 0.5),
    (1, 3.0, 0.7, 1.2),
    (2, 2.0, 2.0, 1.0),
    (2, 1.3, 0.7, 0.4),
    (2, 0.8, 1.5, 0.25),
    (2, 2.2, 2.7, 0.6),
    (2, 1.0, 1.0, 0.5),
    (2, 3.1, 1.9, 0.15),
];

/// Relative tolerance of quadrature against the closed form.
pub const QUADRATURE_TOL: f64 = 1e-6;

/// Quadrature of the chamber integral against the gamma product.
pub fn quadrature_check(p: &SelbergParams, tol: f64) -> Result<NumericReport> {
    if !p.integrable() {
        return Err(Error::NonIntegrable(format!("{p:?}")));
    }
    let q = quad_chamber(&ChamberIntegral::selberg(p), tol * 1e-2)?;
    let e = selberg_closed(p)?.value();
    Ok(NumericReport::new(
        "selberg-quadrature",
        &[("m", p.m as f64), ("a", p.a), ("b", p.b), ("c", p.c)],
        q.value,
        e,
        (q.value - e).abs() / e.abs(),
        tol,
    ))
}
