//! Closed-form golden values and combinatorial guarantees, packaged as
//! checks: the `sl_2` Shapovalov dual elements, the `sl_3` coefficients
//! `B^{a,b}_{m,k}(λ)` of the inverse Shapovalov form and of the shifted fusion
//! matrix, the transformation schedules between special orders and the
//! closed-form sign table.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dynamical::{CheckReport, FusionElement};
use crate::error::Result;
use crate::linalg::Mat;
use crate::rep::{dyn_symbol, lambda_symbol, TensorModule};
use crate::roots::{intermediate_orders, sigma_sequence, sign_table_a, special_order, NormalOrder, Root, TransformKind};
use crate::symexpr::{factorial, Rf};
use crate::uea::{Mono, PbwBasis, UEAElement};

/// `t(t−1)⋯(t−k+1)`.
pub fn falling(t: &Rf, k: i64) -> Rf {
    let mut acc = Rf::one();
    for i in 0..k {
        acc = acc.mul(&t.sub(&Rf::from_i64(i)));
    }
    acc
}

fn fact(k: i64) -> Rf {
    Rf::from_int(factorial(k as u32))
}

/// `B^{a,b}_{m,k}(λ) = (m! k! p_{a−m}(λ₁) p_{b−k}(λ₂))^{-1}
/// Σ_{l=max(m,k)}^{min(a,b)} (−1)^l l! / ((a−l)!(b−l)!(l−k)!(l−m)! p_l(λ₁+λ₂+1))`.
pub fn sl3_b_coefficient(a: i64, b: i64, m: i64, k: i64, l1: &Rf, l2: &Rf) -> Result<Rf> {
    let s = l1.add(l2).add(&Rf::one());
    let mut terms = Vec::new();
    for l in m.max(k)..=a.min(b) {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let den = fact(a - l).mul(&fact(b - l)).mul(&fact(l - k)).mul(&fact(l - m)).mul(&falling(&s, l));
        terms.push(fact(l).scale_int(sign).div(&den)?);
    }
    let pre = fact(m).mul(&fact(k)).mul(&falling(l1, a - m)).mul(&falling(l2, b - k));
    Rf::sum(terms.iter()).div(&pre)
}

/// The order `α₁₂ ≻ α₁₃ ≻ α₂₃`, whose words are `e21^x e31^y e32^z`.
pub fn sl3_reversed_basis() -> Arc<PbwBasis> {
    PbwBasis::new(NormalOrder::new(3, vec![Root::new(1, 2), Root::new(1, 3), Root::new(2, 3)]))
        .expect("the reversed order is normal")
}

/// The monomial with exponents `(i₁₂, i₁₃, i₂₃)`.
pub fn sl3_mono(basis: &PbwBasis, e12: i64, e13: i64, e23: i64) -> Mono {
    let map: BTreeMap<(usize, usize), u8> =
        [((1, 2), e12 as u8), ((1, 3), e13 as u8), ((2, 3), e23 as u8)].into_iter().filter(|x| x.1 > 0).collect();
    basis.mono_from_map(&map)
}

fn report(name: String, nu0: &[i64], first_bad: Option<(usize, usize, String)>) -> CheckReport {
    CheckReport { name, nu0: nu0.to_vec(), pass: first_bad.is_none(), witness: first_bad }
}

/// `S⁻¹_λ` on `M_λ[−aα₁−bα₂]` of `sl_3`: the coefficient of
/// `e32^{b−m}e31^m e21^{a−m} v ⊗ e21^{a−k}e31^k e32^{b−k} v` is `(−1)^k B^{a,b}_{m,k}(λ)`.
pub fn check_sl3_inverse_shapovalov(a: i64, b: i64) -> Result<CheckReport> {
    let std = TensorModule::symbolic_vermas(3, 1, PbwBasis::standard(3))?;
    let rev = std.with_basis(sl3_reversed_basis())?;
    let d = [a, b];
    let mixed = std.gram_between(&rev, &d)?;
    let (sx, sy) = (std.space(&d), rev.space(&d));
    let cx: Vec<Rf> = sx.elems.iter().map(|e| std.basis.raw_scale(&e[0])).collect();
    let cy: Vec<Rf> = sy.elems.iter().map(|e| rev.basis.raw_scale(&e[0])).collect();
    let mut g = Mat::zeros(sx.dim(), sy.dim());
    for i in 0..sx.dim() {
        for k in 0..sy.dim() {
            g.set(i, k, mixed.get(i, k).div(&cx[i].mul(&cy[k]))?);
        }
    }
    let inv = g.inverse()?;
    let (l1, l2) = (Rf::sym(lambda_symbol(1, 1)), Rf::sym(lambda_symbol(1, 2)));
    let mut bad = None;
    'outer: for m in 0..=a.min(b) {
        for k in 0..=a.min(b) {
            let i = sx.index_of(&[sl3_mono(&std.basis, a - m, m, b - m)]).expect("standard monomial");
            let kk = sy.index_of(&[sl3_mono(&rev.basis, a - k, k, b - k)]).expect("reversed monomial");
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let expect = sl3_b_coefficient(a, b, m, k, &l1, &l2)?.scale_int(sign);
            if inv.get(kk, i) != &expect {
                bad = Some((m as usize, k as usize, format!("{} ≠ {}", inv.get(kk, i), expect)));
                break 'outer;
            }
        }
    }
    Ok(report(format!("sl3 inverse Shapovalov a={a} b={b}"), &d, bad))
}

/// `J₊(λ)` of `sl_3`: the coefficient of
/// `e32^{b−m}e31^m e21^{a−m} ⊗ e12^{a−k}e13^k e23^{b−k}` is `(−1)^{a+b} B^{a,b}_{m,k}(λ)`.
/// With the letterwise involution `e12^{a−k}e13^k e23^{b−k} = (−1)^{a+b−k} τ(e21^{a−k}e31^k e32^{b−k})`,
/// so the right factors are re-expressed in the order `α₁₂ ≻ α₁₃ ≻ α₂₃` and
/// compared with `(−1)^k B^{a,b}_{m,k}`.
pub fn check_sl3_fusion(j: &FusionElement, a: i64, b: i64) -> Result<CheckReport> {
    let (l1, l2) = (Rf::sym(dyn_symbol(1)), Rf::sym(dyn_symbol(2)));
    let rev = sl3_reversed_basis();
    let comp = j.components.get(&vec![a, b]).cloned().unwrap_or_default();
    let mut bad = None;
    'outer: for m in 0..=a.min(b) {
        let left = sl3_mono(&j.basis, a - m, m, b - m);
        let right: Vec<(Mono, Rf)> =
            comp.iter().filter(|((x, _), _)| *x == left).map(|((_, y), c)| (y.clone(), c.clone())).collect();
        let right = UEAElement::from_raw(j.basis.clone(), right).change_pbw_basis(&rev)?;
        let raw = right.to_raw();
        for k in 0..=a.min(b) {
            let target = sl3_mono(&rev, a - k, k, b - k);
            let got = raw.iter().find(|(y, _)| *y == target).map(|(_, c)| c.clone()).unwrap_or_else(Rf::zero);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let expect = sl3_b_coefficient(a, b, m, k, &l1, &l2)?.scale_int(sign);
            if got != expect {
                bad = Some((m as usize, k as usize, format!("{got} ≠ {expect}")));
                break 'outer;
            }
        }
    }
    Ok(report(format!("sl3 fusion coefficients a={a} b={b}"), &[a, b], bad))
}

/// `P_k = e21^k / (k! λ(λ−1)⋯(λ−k+1))` on the `sl_2` Verma module, read from
/// the Gram matrix and from the dual elements in the signed divided-power basis.
pub fn check_sl2_p_elements(kmax: i64) -> Result<Vec<CheckReport>> {
    let m = TensorModule::symbolic_vermas(2, 1, PbwBasis::standard(2))?;
    let l = Rf::sym(lambda_symbol(1, 1));
    let mut out = Vec::new();
    for k in 0..=kmax {
        let mono = m.space(&[k]).elems[0][0].clone();
        let raw_scale = m.basis.raw_scale(&mono);
        let g_raw = m.shapovalov_gram(&[k])?.get(0, 0).div(&raw_scale.mul(&raw_scale))?;
        let expect = fact(k).mul(&falling(&l, k)).inv()?;
        let mut bad = None;
        let p = g_raw.inv()?;
        if p != expect {
            bad = Some((0, 0, format!("raw {p} ≠ {expect}")));
        }
        let elems = m.p_elements(&[k])?;
        let coeff = elems[0].1.terms.values().next().cloned().unwrap_or_else(Rf::zero);
        // F_k = e^k/(±k!), so the same element reads (k!/λ⋯) F_k up to the basis sign
        let expect_div = fact(k).div(&falling(&l, k))?;
        if bad.is_none() && coeff != expect_div {
            bad = Some((0, 1, format!("divided power {coeff} ≠ {expect_div}")));
        }
        out.push(report(format!("sl2 P-element k={k}"), &[k], bad));
    }
    Ok(out)
}

/// One `A₂` move per `(k, l)` with `k < h < l`, all intermediate orders
/// normal, and the last one equal to `≻_{h−1}`.
pub fn check_sigma_schedule(n: usize, h: usize) -> Result<CheckReport> {
    let seq = sigma_sequence(n, h)?;
    let mut labels: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in &seq {
        if t.kind == TransformKind::A2 {
            if let Some(lab) = t.label {
                *labels.entry(lab).or_default() += 1;
            }
        }
    }
    let expected: BTreeMap<(usize, usize), usize> = (1..h).flat_map(|k| (h + 1..=n).map(move |l| ((k, l), 1))).collect();
    let orders = intermediate_orders(n, h)?;
    let mut bad = None;
    if labels != expected {
        bad = Some((0, 0, format!("A2 labels {labels:?}")));
    } else if let Some(i) = orders.iter().position(|o| !o.is_normal()) {
        bad = Some((i, 0, "intermediate order is not normal".into()));
    } else if orders.last() != Some(&special_order(n, h - 1)?) {
        bad = Some((orders.len(), 0, "schedule does not end at the previous special order".into()));
    }
    Ok(report(format!("sigma schedule N={n} h={h}"), &[n as i64, h as i64], bad))
}

/// The closed-form exponents `a_{k,l}(h)` against counting in the order.
pub fn check_sign_table(n: usize, h: usize) -> Result<CheckReport> {
    let order = special_order(n, h)?;
    let mut bad = None;
    for ((k, l), a) in sign_table_a(n, h)? {
        let c = order.sign_count(&Root::new(k, l));
        if c != a {
            bad = Some((k, l, format!("closed form {a}, counted {c}")));
            break;
        }
    }
    Ok(report(format!("sign table N={n} h={h}"), &[n as i64, h as i64], bad))
}
