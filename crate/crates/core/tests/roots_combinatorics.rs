//! Combinatorial guarantees for the special orders and their transformation
//! schedules, checked exhaustively for small ranks.

use std::collections::BTreeMap;

use kzdyn_core::roots::{
    intermediate_orders, omega_bracket, roots_of_reduced_word, sigma_sequence, sign_table_a, special_order,
    word_of_order, NormalOrder, Root, TransformKind, WeylElement,
};

#[test]
fn sigma_schedule_properties_up_to_rank_five() {
    for n in 3..=6 {
        for h in 2..n {
            let seq = sigma_sequence(n, h).unwrap();
            let mut labels: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for t in &seq {
                if t.kind == TransformKind::A2 {
                    *labels.entry(t.label.unwrap()).or_default() += 1;
                }
            }
            let expected: BTreeMap<(usize, usize), usize> = (1..h)
                .flat_map(|k| (h + 1..=n).map(move |l| ((k, l), 1)))
                .collect();
            assert_eq!(labels, expected, "N={n} h={h}");
            assert_eq!(labels.len(), (h - 1) * (n - h));
            let orders = intermediate_orders(n, h).unwrap();
            assert!(orders.iter().all(NormalOrder::is_normal), "N={n} h={h}");
            assert_eq!(orders.last().unwrap(), &special_order(n, h - 1).unwrap());
        }
    }
}

#[test]
fn small_schedules_match_hand_counts() {
    let s = sigma_sequence(3, 2).unwrap();
    let a2: Vec<_> = s.iter().filter(|t| t.kind == TransformKind::A2).map(|t| t.label.unwrap()).collect();
    assert_eq!(a2, vec![(1, 3)]);
    let s = sigma_sequence(4, 2).unwrap();
    let mut a2: Vec<_> = s.iter().filter(|t| t.kind == TransformKind::A2).map(|t| t.label.unwrap()).collect();
    a2.sort();
    assert_eq!(a2, vec![(1, 3), (1, 4)]);
}

#[test]
fn sign_table_closed_form_equals_counting_definition() {
    for n in 2..=6 {
        for h in 1..n {
            let order = special_order(n, h).unwrap();
            for ((k, l), a) in sign_table_a(n, h).unwrap() {
                assert_eq!(order.sign_count(&Root::new(k, l)), a, "N={n} h={h} ({k},{l})");
            }
        }
    }
    let t: BTreeMap<_, _> = sign_table_a(3, 1).unwrap().into_iter().collect();
    assert_eq!(t[&(1, 3)], 1);
    assert!(sign_table_a(3, 2).unwrap().iter().all(|(_, a)| *a == 0));
}

#[test]
fn omega_bracket_factorization() {
    for n in 2..=6 {
        let w0 = WeylElement::longest(n);
        for k in 1..n {
            let (w, _) = omega_bracket(n, k).unwrap();
            // ω_0^k is the block reversal; ω_[k] ω_0^k must be ω_0 (ω_0^k is an involution)
            let w0k = WeylElement {
                perm: (1..=n).map(|i| if i <= k { k + 1 - i } else { n + k + 1 - i }).collect(),
            };
            assert_eq!(w.compose(&w0k), w0);
            assert_eq!(w.length(), k * (n - k));
        }
    }
}

#[test]
fn every_reduced_word_of_the_longest_element_gives_a_normal_order() {
    // Enumerate all reduced words of ω_0 for N = 4 by depth-first search.
    let n = 4;
    fn dfs(n: usize, w: &WeylElement, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w.length() == n * (n - 1) / 2 {
            out.push(word.clone());
            return;
        }
        for i in 1..n {
            let next = WeylElement::simple(n, i).compose(w);
            if next.length() == w.length() + 1 {
                word.push(i);
                dfs(n, &next, word, out);
                word.pop();
            }
        }
    }
    let mut words = Vec::new();
    dfs(n, &WeylElement::identity(n), &mut Vec::new(), &mut words);
    assert_eq!(words.len(), 16);
    for word in words {
        let mut roots = roots_of_reduced_word(n, &word).unwrap();
        roots.reverse();
        let order = NormalOrder::new(n, roots);
        assert!(order.is_normal(), "{word:?}");
        assert_eq!(word_of_order(&order).unwrap(), word);
    }
}
