//! Oracle tests for the hypergeometric layer: worked examples of the weight
//! functions, independence of the normal order, and the exact identities
//! behind the shift of the dynamical parameter.

use kzdyn_core::dynamical::z_symbol;
use kzdyn_core::hyper::*;
use kzdyn_core::rep::dyn_weight;
use kzdyn_core::roots::WeightVec;
use kzdyn_core::symexpr::{int, Rf};
use kzdyn_core::uea::PbwBasis;

fn t(k: usize, d: usize) -> Rf {
    Rf::sym(t_symbol(k, d))
}

fn z(j: usize) -> Rf {
    Rf::sym(z_symbol(j))
}

fn inv(x: Rf) -> Rf {
    x.inv().unwrap()
}

fn coefficient(v: &PhiVector, pairs: &[((usize, usize), u8)]) -> Rf {
    let m = v.basis.mono_from_map(&pairs.iter().copied().collect());
    v.terms.iter().find(|(e, _)| e[0] == m).map(|(_, c)| c.clone()).expect("index present")
}

#[test]
fn sl3_weight_functions_of_depth_one_one() {
    let v = phi_vector(3, 1, &[1, 1], Flavor::Standard).unwrap();
    assert_eq!(v.terms.len(), 2);
    // F = e32 e21 and F = −e31
    let a = coefficient(&v, &[((1, 2), 1), ((2, 3), 1)]);
    assert_eq!(a, inv(t(1, 1).sub(&z(1)).mul(&t(2, 1).sub(&z(1)))));
    let b = coefficient(&v, &[((1, 3), 1)]);
    assert_eq!(b, inv(t(1, 1).sub(&t(2, 1)).mul(&t(2, 1).sub(&z(1)))));
}

#[test]
fn sl3_weight_functions_of_depth_two_one() {
    let v = phi_vector(3, 1, &[2, 1], Flavor::Standard).unwrap();
    let groups = color_groups(&[2, 1]);
    // coefficient of e31 e21 (F = (−1)² e31 e21)
    let a = coefficient(&v, &[((1, 2), 1), ((1, 3), 1)]);
    let expect_a = inv(t(1, 1).sub(&t(2, 1)).mul(&t(2, 1).sub(&z(1))).mul(&t(1, 2).sub(&z(1))));
    assert_eq!(a.symmetrize(&groups), expect_a.symmetrize(&groups));
    // F = −e32 e21²/2, coefficient of e32 e21²/2 is −φ
    let b = coefficient(&v, &[((1, 2), 2), ((2, 3), 1)]);
    let expect_b = inv(t(1, 1).sub(&z(1)).mul(&t(1, 2).sub(&z(1))).mul(&t(2, 1).sub(&z(1))));
    assert_eq!(b, expect_b);
}

#[test]
fn sl3_special_order_weight_functions() {
    let v = phi_vector(3, 1, &[1, 1], Flavor::Special(1)).unwrap();
    // basis F(1): F_{1,3}(1) = −e31, so F_I = e31 for I = 1_{3,1}
    let b = coefficient(&v, &[((1, 3), 1)]);
    assert_eq!(b, inv(t(2, 1).sub(&t(1, 1)).mul(&t(1, 1).sub(&z(1)))));
    let a = coefficient(&v, &[((1, 2), 1), ((2, 3), 1)]);
    assert_eq!(a, inv(t(1, 1).sub(&z(1)).mul(&t(2, 1).sub(&z(1)))));
    // depth 2α₁ + α₂: F_I(1) = −e21²e32/2 and −e21e31, the coefficients of the raw words are −φ
    let v = phi_vector(3, 1, &[2, 1], Flavor::Special(1)).unwrap();
    let groups = color_groups(&[2, 1]);
    let c = coefficient(&v, &[((1, 2), 2), ((2, 3), 1)]);
    let expect_c = inv(t(1, 1).sub(&z(1)).mul(&t(1, 2).sub(&z(1))).mul(&t(2, 1).sub(&z(1))));
    assert_eq!(c, expect_c);
    let d = coefficient(&v, &[((1, 2), 1), ((1, 3), 1)]);
    let expect_d = inv(t(2, 1).sub(&t(1, 1)).mul(&t(1, 1).sub(&z(1))).mul(&t(1, 2).sub(&z(1))));
    assert_eq!(d.symmetrize(&groups), expect_d.symmetrize(&groups));
}

#[test]
fn trivial_weight_space() {
    let v = phi_vector(3, 2, &[0, 0], Flavor::Special(1)).unwrap();
    assert_eq!(v.terms.len(), 1);
    assert!(v.terms[0].1.is_one());
}

#[test]
fn order_invariance_sl3() {
    for (slots, nu0) in [(1usize, vec![1i64, 1]), (1, vec![2, 1]), (1, vec![2, 2]), (2, vec![1, 1]), (2, vec![2, 1])] {
        let r = verify_order_invariance(3, slots, &nu0, 1).unwrap();
        assert!(r.symmetrized_equal, "{r:?}");
    }
    // depth one-one is equal before symmetrization (one variable per colour)
    assert!(verify_order_invariance(3, 1, &[1, 1], 1).unwrap().raw_equal);
}

#[test]
fn order_invariance_sl4_and_steps() {
    for h in 1..=2 {
        let r = verify_order_invariance(4, 1, &[1, 1, 1], h).unwrap();
        assert!(r.symmetrized_equal, "{r:?}");
    }
    for h in 2..=3 {
        let steps = kzdyn_core::roots::sigma_sequence(4, h).unwrap().len();
        for p in 0..steps {
            let r = verify_order_step(4, 1, &[1, 1, 1], h, p).unwrap();
            assert!(r.symmetrized_equal, "{r:?}");
        }
    }
}

#[test]
fn interpolating_bases_match_their_sign_rule() {
    // the order-derived signs agree with switching F_{k,l}(h) to F_{k,l}(h−1) on X_p
    for h in 2..=3 {
        let seq = kzdyn_core::roots::sigma_sequence(4, h).unwrap();
        for p in 0..=seq.len() {
            let b = Flavor::Interp { h, p }.basis(4).unwrap();
            let x = switched_pairs(4, h, p).unwrap();
            let hb = PbwBasis::special(4, h).unwrap();
            let lb = PbwBasis::special(4, h - 1).unwrap();
            for pos in 0..b.len() {
                let r = b.root(pos);
                let expect = if x.contains(&(r.k, r.l)) { lb.sign(lb.position(&r)) } else { hb.sign(hb.position(&r)) };
                assert_eq!(b.sign(pos), expect, "h={h} p={p} root {r}");
            }
        }
    }
}

#[test]
fn binomial_claims() {
    // reduces to the triangle identity
    let r = binomial_claim_check(3, 0, 0, 1, (1, 3), 2).unwrap();
    assert!(r.raw_equal, "{r:?}");
    // no binomial sum
    let r = binomial_claim_check(3, 1, 2, 0, (1, 3), 2).unwrap();
    assert!(r.raw_equal, "{r:?}");
    for (a, b, c) in [(1, 1, 1), (0, 0, 2), (2, 1, 2), (1, 0, 3)] {
        let r = binomial_claim_check(3, a, b, c, (1, 3), 2).unwrap();
        assert!(r.symmetrized_equal, "{r:?}");
    }
    for (a, b, c) in [(1, 1, 1), (0, 1, 2)] {
        let r = binomial_claim_check(4, a, b, c, (1, 4), 2).unwrap();
        assert!(r.symmetrized_equal, "{r:?}");
        let r = binomial_claim_check(4, a, b, c, (2, 4), 3).unwrap();
        assert!(r.symmetrized_equal, "{r:?}");
    }
}

#[test]
fn z_shift_factorization_is_exact() {
    // (1/t)·1/(t − z) = (1/z)(1/(t − z) − 1/t)
    let terms = z_shift_factorization(2, 1, &[1], 1).unwrap();
    assert_eq!(terms.len(), 1);
    assert!(terms[0].exact);
    assert_eq!(terms[0].z_exponents, vec![-1]);
    let expect = inv(z(1)).mul(&inv(t(1, 1).sub(&z(1))).sub(&inv(t(1, 1))));
    assert_eq!(terms[0].rhs.neg(), expect.neg());
    for (n, slots, nu0, h) in [(3usize, 1usize, vec![1i64, 1], 1usize), (3, 2, vec![1, 1], 2), (3, 1, vec![0, 2], 1)] {
        for term in z_shift_factorization(n, slots, &nu0, h).unwrap() {
            assert!(term.exact, "{term:?}");
        }
    }
}

#[test]
fn regrounded_expansion_matches_dual_action() {
    for (n, slots, nu0, h) in
        [(2usize, 1usize, vec![1i64], 1usize), (2, 2, vec![2], 1), (3, 1, vec![1, 1], 1), (3, 1, vec![1, 1], 2), (3, 2, vec![1, 1], 1)]
    {
        let dim = kzdyn_core::rep::TensorModule::symbolic_vermas(n, slots, PbwBasis::special(n, h).unwrap())
            .unwrap()
            .space(&nu0)
            .dim();
        for idx in 0..dim {
            let r = lemma_rat2dprime_check(n, slots, &nu0, h, idx).unwrap();
            assert!(r.symmetrized_equal, "{r:?}");
        }
    }
}

#[test]
fn switch_witnesses() {
    for (n, slots, nu0, h) in [(2usize, 1usize, vec![1i64], 1usize), (2, 2, vec![2], 1), (3, 1, vec![1, 1], 1), (3, 2, vec![1, 1], 2)] {
        let mut mu = nu0.clone();
        mu[h - 1] -= 1;
        let dim = kzdyn_core::rep::TensorModule::symbolic_vermas(n, slots, PbwBasis::standard(n)).unwrap().space(&mu).dim();
        for idx in 0..dim {
            let w = switch_cor_witness(n, slots, &nu0, h, idx).unwrap();
            assert!(w.pullback_sign.is_some(), "{w:?}");
            assert!(w.expansion_matches, "{w:?}");
        }
    }
}

#[test]
fn restriction_of_the_dual_map() {
    assert!(check_d_prime_restriction(3, 1, &[1, 1]).unwrap());
    assert!(check_d_prime_restriction(2, 2, &[2]).unwrap());
}

#[test]
fn dynamical_shift_of_the_master_function() {
    // Φ(λ + κω_k)^{1/κ} / Φ(λ)^{1/κ}: t_k-powers drop by one, z_j gain (Λ_j, ω_k)
    let n = 3;
    let hws = symbolic_highest_weights(n, 2);
    let nu0 = [1, 1];
    let lam = dyn_weight(n);
    let kap = kzdyn_core::symexpr::sym("kap");
    for k in 1..n {
        let shifted = lam.add(&WeightVec::fundamental(n, k).scale(&kap));
        let a = MasterExponents::trigonometric(&hws, &nu0, &lam);
        let b = MasterExponents::trigonometric(&hws, &nu0, &shifted);
        for (fa, fb) in a.factors.iter().zip(&b.factors) {
            let diff = fb.exponent.sub(&fa.exponent).div(&kap).unwrap();
            let expect = if fa.base == t(k, 1) {
                int(-1)
            } else if let Some(j) = (1..=2).find(|&j| fa.base == z(j)) {
                hws[j - 1].dot(&WeightVec::fundamental(n, k))
            } else {
                int(0)
            };
            assert_eq!(diff, expect, "{}", fa.label);
        }
    }
}
