//! Oracles for weight spaces of highest-weight modules: Gram matrices, the
//! inverse Shapovalov form against the closed `sl_3` formula, the dual-basis
//! actions against transposed generator matrices, and singular vectors.

use std::sync::Arc;

use kzdyn_core::linalg::Mat;
use kzdyn_core::rep::{ModuleSpec, TensorModule};
use kzdyn_core::roots::{NormalOrder, Root, WeightVec};
use kzdyn_core::symexpr::{factorial, sym, Rf};
use kzdyn_core::uea::{Gen, HighestWeightAction, Mono, PbwBasis};

fn falling(t: &Rf, k: i64) -> Rf {
    let mut acc = Rf::one();
    for i in 0..k {
        acc = acc.mul(&t.sub(&Rf::from_i64(i)));
    }
    acc
}

fn fact(k: i64) -> Rf {
    Rf::from_int(factorial(k as u32))
}

/// The closed-form coefficients of the inverse Shapovalov form of `sl_3`.
fn b_coeff(a: i64, b: i64, m: i64, k: i64) -> Rf {
    let (l1, l2) = (sym("L:1:1"), sym("L:1:2"));
    let s = l1.add(&l2).add(&Rf::one());
    let terms: Vec<Rf> = (m.max(k)..=a.min(b))
        .map(|l| {
            let sign = if l % 2 == 0 { 1 } else { -1 };
            let den = fact(a - l).mul(&fact(b - l)).mul(&fact(l - k)).mul(&fact(l - m)).mul(&falling(&s, l));
            fact(l).scale_int(sign).div(&den).unwrap()
        })
        .collect();
    let pre = fact(m).mul(&fact(k)).mul(&falling(&l1, a - m)).mul(&falling(&l2, b - k));
    Rf::sum(terms.iter()).div(&pre).unwrap()
}

fn reversed_order_basis() -> Arc<PbwBasis> {
    PbwBasis::new(NormalOrder::new(3, vec![Root::new(1, 2), Root::new(1, 3), Root::new(2, 3)])).unwrap()
}

fn mono(basis: &PbwBasis, e12: u8, e13: u8, e23: u8) -> Mono {
    basis.mono_from_map(&[((1, 2), e12), ((1, 3), e13), ((2, 3), e23)].into_iter().filter(|x| x.1 > 0).collect())
}

#[test]
fn gram_is_symmetric_and_block_diagonal_by_weight() {
    for n in [2usize, 3, 4] {
        let m = TensorModule::symbolic_vermas(n, 1, PbwBasis::standard(n)).unwrap();
        let depths: Vec<Vec<i64>> = match n {
            2 => (0..5).map(|k| vec![k]).collect(),
            3 => vec![vec![1, 1], vec![2, 1], vec![2, 2]],
            _ => vec![vec![1, 1, 1], vec![1, 2, 1]],
        };
        for d in depths {
            let g = m.shapovalov_gram(&d).unwrap();
            assert_eq!(g, g.transpose(), "N={n} {d:?}");
            assert!(!g.det().is_zero());
        }
    }
}

#[test]
fn sl2_p_elements_in_the_monomial_basis() {
    let m = TensorModule::symbolic_vermas(2, 1, PbwBasis::standard(2)).unwrap();
    let l = sym("L:1:1");
    for k in 0..6i64 {
        let raw_scale = m.basis.raw_scale(&m.space(&[k]).elems[0][0]);
        let g_raw = m.shapovalov_gram(&[k]).unwrap().get(0, 0).div(&raw_scale.mul(&raw_scale)).unwrap();
        // P_k = e^k / S(e^k v, e^k v) = e^k / (k! λ(λ−1)⋯(λ−k+1))
        let p = g_raw.inv().unwrap();
        assert_eq!(p, fact(k).mul(&falling(&l, k)).inv().unwrap());
        let (_, el) = &m.p_elements(&[k]).unwrap()[0];
        let coeff = el.terms.values().next().unwrap();
        // in the signed divided-power basis the same element reads P_k F_k with P_k = k!/λ⋯
        assert_eq!(coeff, &fact(k).div(&falling(&l, k)).unwrap());
    }
}

#[test]
fn p_elements_are_dual_to_the_basis() {
    let m = TensorModule::symbolic_vermas(3, 1, PbwBasis::standard(3)).unwrap();
    for d in [vec![1, 1], vec![2, 1], vec![2, 2]] {
        let sp = m.space(&d);
        let g = m.shapovalov_gram(&d).unwrap();
        for (i, (_, p)) in m.p_elements(&d).unwrap().iter().enumerate() {
            for j in 0..sp.dim() {
                let pairing: Vec<Rf> = p
                    .terms
                    .iter()
                    .map(|(mm, c)| {
                        let k = sp.index_of(&[mm.clone()]).unwrap();
                        c.mul(g.get(k, j))
                    })
                    .collect();
                let s = Rf::sum(pairing.iter());
                assert_eq!(s, if i == j { Rf::one() } else { Rf::zero() });
            }
        }
    }
}

#[test]
fn sl3_inverse_shapovalov_matches_closed_form() {
    let std = TensorModule::symbolic_vermas(3, 1, PbwBasis::standard(3)).unwrap();
    let rev = std.with_basis(reversed_order_basis()).unwrap();
    for a in 0..=2i64 {
        for b in 0..=2i64 {
            let d = [a, b];
            let mixed = std.gram_between(&rev, &d).unwrap();
            let sx = std.space(&d);
            let sy = rev.space(&d);
            // Gram of the raw monomials
            let cx: Vec<Rf> = sx.elems.iter().map(|e| std.basis.raw_scale(&e[0])).collect();
            let cy: Vec<Rf> = sy.elems.iter().map(|e| rev.basis.raw_scale(&e[0])).collect();
            let mut g = Mat::zeros(sx.dim(), sy.dim());
            for i in 0..sx.dim() {
                for k in 0..sy.dim() {
                    g.set(i, k, mixed.get(i, k).div(&cx[i].mul(&cy[k])).unwrap());
                }
            }
            let inv = g.inverse().unwrap();
            for m in 0..=a.min(b) {
                for k in 0..=a.min(b) {
                    let x = mono(&std.basis, (a - m) as u8, m as u8, (b - m) as u8);
                    let y = mono(&rev.basis, (a - k) as u8, k as u8, (b - k) as u8);
                    let i = sx.index_of(&[x]).unwrap();
                    let kk = sy.index_of(&[y]).unwrap();
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    assert_eq!(inv.get(kk, i), &b_coeff(a, b, m, k).scale_int(sign), "a={a} b={b} m={m} k={k}");
                }
            }
        }
    }
}

fn two_factor(n: usize, basis: Arc<PbwBasis>) -> Arc<TensorModule> {
    TensorModule::symbolic_vermas(n, 2, basis).unwrap()
}

#[test]
fn dual_e_action_is_the_negative_transpose() {
    for (n, slots, depths) in [
        (2usize, 1usize, vec![vec![0], vec![1], vec![2], vec![3]]),
        (2, 2, vec![vec![1], vec![2], vec![3]]),
        (3, 1, vec![vec![0, 0], vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 2]]),
        (3, 2, vec![vec![1, 0], vec![1, 1], vec![2, 1]]),
    ] {
        let m = TensorModule::symbolic_vermas(n, slots, PbwBasis::standard(n)).unwrap();
        for d in depths {
            for h in 1..n {
                let oracle = m.dual_gen_matrix(Gen::new(h, h + 1), &d);
                for idx in 0..m.space(&d).dim() {
                    let mut col = vec![Rf::zero(); oracle.rows];
                    for (i, c) in m.dual_action_e(&d, idx, h).unwrap() {
                        col[i] = c;
                    }
                    assert_eq!(col, oracle.column(idx), "N={n} n={slots} {d:?} h={h} idx={idx}");
                }
            }
        }
    }
}

#[test]
fn dual_f_action_in_the_special_bases() {
    for n in [3usize, 4] {
        for h in 1..n {
            let basis = PbwBasis::special(n, h).unwrap();
            let m = two_factor(n, basis.clone());
            let depths: Vec<Vec<i64>> = if n == 3 { vec![vec![1, 1], vec![2, 1], vec![1, 2]] } else { vec![vec![1, 1, 1]] };
            for d in depths {
                for k in 1..=h {
                    for l in h + 1..=n {
                        let r = Root::new(k, l);
                        let s = basis.sign(basis.position(&r));
                        // F_{k,l}(h) = s · e_{l,k}
                        let oracle = m.dual_gen_matrix(Gen::lowering(&r), &d).scale(&Rf::from_i64(s));
                        for idx in 0..m.space(&d).dim() {
                            let mut col = vec![Rf::zero(); oracle.rows];
                            for (i, c) in m.dual_action_f(&d, idx, k, l).unwrap() {
                                col[i] = c;
                            }
                            assert_eq!(col, oracle.column(idx), "N={n} h={h} ({k},{l}) {d:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn singular_vector_closed_form_in_sl3() {
    // sing(v_λ ⊗ v) = Σ (−1)^{a+b} B^{a,b}_{m,k} e32^{b−m}e31^m e21^{a−m} v_λ ⊗ e12^{a−k}e13^k e23^{b−k} v
    let basis = PbwBasis::standard(3);
    let tm = TensorModule::new(vec![ModuleSpec::verma_symbolic(3, 1), ModuleSpec::verma_symbolic(3, 2)], basis.clone())
        .unwrap();
    let second = HighestWeightAction::new(basis.clone(), WeightVec::symbolic(3, |k| kzdyn_core::rep::lambda_symbol(2, k)), None);
    for vdepth in [[1i64, 1], [2, 1], [1, 0]] {
        for v in second.basis.monomials_of_depth(&vdepth) {
            let total = tm.space(&vdepth);
            let mut coeffs = vec![Rf::zero(); total.dim()];
            for a in 0..=vdepth[0] {
                for b in 0..=vdepth[1] {
                    for m in 0..=a.min(b) {
                        for k in 0..=a.min(b) {
                            let left = mono(&basis, (a - m) as u8, m as u8, (b - m) as u8);
                            let mut cur = vec![(v.clone(), Rf::one())];
                            let raise: Vec<Gen> = std::iter::repeat_n(Gen::new(1, 2), (a - k) as usize)
                                .chain(std::iter::repeat_n(Gen::new(1, 3), k as usize))
                                .chain(std::iter::repeat_n(Gen::new(2, 3), (b - k) as usize))
                                .collect();
                            for g in raise.iter().rev() {
                                cur = second.act_vec(*g, &cur);
                            }
                            let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                            let c = b_coeff(a, b, m, k).scale_int(sign);
                            for (m2, x) in cur {
                                let i = total.index_of(&[left.clone(), m2.clone()]).unwrap();
                                let val = c.mul(&x).div(&basis.raw_scale(&left).mul(&basis.raw_scale(&m2))).unwrap();
                                coeffs[i] = coeffs[i].add(&val);
                            }
                        }
                    }
                }
            }
            for h in 1..3 {
                let e = tm.gen_matrix(Gen::new(h, h + 1), &vdepth);
                assert!(e.apply(&coeffs).iter().all(Rf::is_zero), "depth {vdepth:?} h={h}");
            }
            assert!(coeffs.iter().any(|c| !c.is_zero()));
        }
        // the kernel has one vector per vector of the second factor
        let dim_v = second.basis.monomials_of_depth(&vdepth).len();
        assert_eq!(tm.singular_vectors(&vdepth).len(), dim_v);
    }
}

#[test]
fn trivial_depth_is_entirely_singular() {
    let m = two_factor(3, PbwBasis::standard(3));
    assert_eq!(m.singular_vectors(&[0, 0]).len(), 1);
    let l2 = TensorModule::new(vec![ModuleSpec::irreducible_sl2(2), ModuleSpec::irreducible_sl2(1)], PbwBasis::standard(2))
        .unwrap();
    assert_eq!(l2.space(&[2]).dim(), 2);
    assert_eq!(l2.space(&[3]).dim(), 1);
    assert_eq!(l2.space(&[4]).dim(), 0);
    // L_2 ⊗ L_1 = L_3 ⊕ L_1: one singular vector at depth 1
    assert_eq!(l2.singular_vectors(&[1]).len(), 1);
    assert_eq!(l2.singular_vectors(&[2]).len(), 0);
}
