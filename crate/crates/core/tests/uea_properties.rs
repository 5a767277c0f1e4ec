//! Oracles for PBW straightening and basis changes: the elementary
//! transformation chain against direct re-multiplication, the A2 binomial
//! identity, Jacobi consistency and antipode involutivity.

use std::collections::HashMap;
use std::sync::Arc;

use kzdyn_core::roots::{special_order, NormalOrder, WeightVec};
use kzdyn_core::symexpr::{Rf, Symbol};
use kzdyn_core::uea::{
    elementary_transforms, Gen, GenWord, HighestWeightAction, Letter, Mono, PbwBasis, RawVec, UEAElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(basis: &Arc<PbwBasis>, rng: &mut ChaCha8Rng, max_exp: u8, terms: usize) -> UEAElement {
    let items: Vec<(Mono, Rf)> = (0..terms)
        .map(|_| {
            let m: Mono = (0..basis.len()).map(|_| rng.gen_range(0..=max_exp)).collect();
            (m, Rf::from_i64(rng.gen_range(-5..=5)))
        })
        .collect();
    UEAElement::from_terms(basis.clone(), items)
}

#[test]
fn transformation_chain_matches_direct_rewriting() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3usize, 4] {
        for h in 2..n {
            let from = PbwBasis::special(n, h).unwrap();
            let to = PbwBasis::special(n, h - 1).unwrap();
            for _ in 0..25 {
                let x = random_element(&from, &mut rng, if n == 3 { 3 } else { 1 }, 3);
                let via_chain = x.change_pbw_basis(&to).unwrap();
                let direct = x.change_basis_direct(&to);
                assert_eq!(via_chain, direct, "N={n} h={h} x={x}");
                let back = via_chain.change_pbw_basis(&from).unwrap();
                assert_eq!(back, x, "round trip N={n} h={h}");
            }
        }
    }
}

#[test]
fn arbitrary_normal_orders_via_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 4;
    let start = NormalOrder::standard(n);
    // random walk to a few orders
    for _ in 0..6 {
        let mut o = start.clone();
        for _ in 0..rng.gen_range(1..8) {
            let ts = elementary_transforms(&o);
            o = o.apply(&ts[rng.gen_range(0..ts.len())]);
        }
        assert!(o.is_normal());
        let src = PbwBasis::standard(n);
        let dst = PbwBasis::new(o).unwrap();
        let x = random_element(&src, &mut rng, 1, 4);
        assert_eq!(x.change_pbw_basis(&dst).unwrap(), x.change_basis_direct(&dst));
    }
}

#[test]
fn a2_identity_for_small_exponents_both_orientations() {
    let std3 = PbwBasis::standard(3);
    let one = PbwBasis::new(special_order(3, 1).unwrap()).unwrap();
    for (src, dst) in [(&std3, &one), (&one, &std3)] {
        for a in 0..=3u8 {
            for b in 0..=3u8 {
                for c in 0..=3u8 {
                    let m: Mono = smallvec::smallvec![a, c, b];
                    let x = UEAElement::monomial(src.clone(), m);
                    let t = &elementary_transforms(&src.order)
                        .into_iter()
                        .find(|t| t.kind == kzdyn_core::roots::TransformKind::A2)
                        .unwrap();
                    let y = x.apply_transform(t).unwrap();
                    assert_eq!(y.basis.order, dst.order);
                    assert_eq!(UEAElement::from_terms(dst.clone(), y.terms.clone()), x.change_basis_direct(dst));
                }
            }
        }
    }
    // a = b = 1, c = 0: f_α f_β = f_β f_α + [f_α, f_β]
    let x = UEAElement::monomial(std3.clone(), smallvec::smallvec![1, 0, 1]);
    let y = x.change_pbw_basis(&one).unwrap();
    assert_eq!(y.terms.len(), 2);
}

fn symbolic_verma(n: usize, basis: Arc<PbwBasis>) -> Arc<HighestWeightAction> {
    HighestWeightAction::new(basis, WeightVec::symbolic(n, |k| Symbol::new(&format!("l{k}"))), None)
}

fn add_into(acc: &mut HashMap<Mono, Vec<Rf>>, v: RawVec, sign: i64) {
    for (m, c) in v {
        acc.entry(m).or_default().push(c.scale_int(sign));
    }
}

fn is_zero(acc: HashMap<Mono, Vec<Rf>>) -> bool {
    acc.into_values().all(|cs| Rf::sum(cs.iter()).is_zero())
}

fn random_gen(n: usize, rng: &mut ChaCha8Rng) -> Gen {
    loop {
        let k = rng.gen_range(1..=n);
        let l = rng.gen_range(1..=n);
        if k != l {
            return Gen::new(k, l);
        }
    }
}

#[test]
fn jacobi_consistency_on_verma_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [3usize, 4] {
        let v = symbolic_verma(n, PbwBasis::standard(n));
        for _ in 0..20 {
            let (x, y, z) = (random_gen(n, &mut rng), random_gen(n, &mut rng), random_gen(n, &mut rng));
            let m: Mono = (0..v.basis.len()).map(|_| rng.gen_range(0..=1)).collect();
            let start = vec![(m, Rf::one())];
            let apply = |gs: &[Gen]| {
                let mut cur = start.clone();
                for g in gs.iter().rev() {
                    cur = v.act_vec(*g, &cur);
                }
                cur
            };
            // [x,[y,z]] − [[x,y],z] − [y,[x,z]] expanded as words must vanish.
            let mut acc = HashMap::new();
            for (w, s) in [
                (vec![x, y, z], 1),
                (vec![x, z, y], -1),
                (vec![y, z, x], -1),
                (vec![z, y, x], 1),
                (vec![x, y, z], -1),
                (vec![y, x, z], 1),
                (vec![z, x, y], 1),
                (vec![z, y, x], -1),
                (vec![y, x, z], -1),
                (vec![y, z, x], 1),
                (vec![x, z, y], 1),
                (vec![z, x, y], -1),
            ] {
                add_into(&mut acc, apply(&w), s);
            }
            assert!(is_zero(acc));
            // and the action respects brackets: x y − y x = [x, y]
            let mut acc = HashMap::new();
            add_into(&mut acc, apply(&[x, y]), 1);
            add_into(&mut acc, apply(&[y, x]), -1);
            for (g, c) in kzdyn_core::uea::bracket(x, y) {
                add_into(&mut acc, apply(&[g]), -c);
            }
            assert!(is_zero(acc), "{x} {y}");
        }
    }
}

#[test]
fn straightening_does_not_depend_on_the_reference_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [3usize, 4] {
        let a = symbolic_verma(n, PbwBasis::standard(n));
        let b = symbolic_verma(n, PbwBasis::special(n, 1).unwrap());
        for _ in 0..15 {
            let len = rng.gen_range(1..=6);
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.15) {
                        Letter::H(rng.gen_range(1..n))
                    } else {
                        let g = random_gen(n, &mut rng);
                        // bias towards lowering letters so results are nonzero
                        if rng.gen_bool(0.7) && g.k < g.l {
                            Letter::E(g.l, g.k)
                        } else {
                            Letter::E(g.k, g.l)
                        }
                    }
                })
                .collect();
            let w = GenWord::new(n, letters).unwrap();
            let xa = a.straighten(&w);
            let xb = b.straighten(&w);
            assert_eq!(xa.change_pbw_basis(&b.basis).unwrap(), xb, "{w}");
        }
    }
}

#[test]
fn antipode_and_tau_are_involutions_on_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [2usize, 3, 4] {
        let basis = PbwBasis::standard(n);
        for _ in 0..10 {
            let x = random_element(&basis, &mut rng, 2, 3);
            assert_eq!(x.antipode().antipode(), x);
            assert_eq!(x.tau().tau(), x);
        }
    }
    // A(e21 e32) = e32 e21 in U(n₋)
    let basis = PbwBasis::standard(3);
    let raw = basis.raw_product(&[Gen::new(2, 1), Gen::new(3, 2)]);
    let x = UEAElement::from_raw(basis.clone(), raw.iter().map(|(m, c)| (m.clone(), Rf::from_i64(*c))).collect());
    let y = UEAElement::from_raw(
        basis.clone(),
        basis.raw_product(&[Gen::new(3, 2), Gen::new(2, 1)]).iter().map(|(m, c)| (m.clone(), Rf::from_i64(*c))).collect(),
    );
    assert_eq!(x.antipode(), y);
}
