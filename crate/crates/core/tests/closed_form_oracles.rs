//! The packaged golden-value and combinatorial checks.

use kzdyn_core::closed_form::*;
use kzdyn_core::symexpr::{int, Rf};

#[test]
fn b_coefficient_small_values() {
    let (l1, l2) = (kzdyn_core::symexpr::sym("x"), kzdyn_core::symexpr::sym("y"));
    assert!(sl3_b_coefficient(0, 0, 0, 0, &l1, &l2).unwrap().is_one());
    // B^{1,0}_{0,0} = 1/λ₁
    assert_eq!(sl3_b_coefficient(1, 0, 0, 0, &l1, &l2).unwrap(), l1.inv().unwrap());
    // B^{1,1}_{1,1} = −1/(λ₁+λ₂+1)
    let s = l1.add(&l2).add(&int(1));
    assert_eq!(sl3_b_coefficient(1, 1, 1, 1, &l1, &l2).unwrap(), s.inv().unwrap().neg());
    assert_eq!(falling(&Rf::from_i64(5), 3), int(60));
}

#[test]
fn sl2_dual_elements() {
    for r in check_sl2_p_elements(6).unwrap() {
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn sl3_inverse_shapovalov_truncation() {
    for a in 0..=2 {
        for b in 0..=2 {
            let r = check_sl3_inverse_shapovalov(a, b).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn schedules_and_sign_tables_up_to_rank_six() {
    for n in 2..=6 {
        for h in 1..n {
            assert!(check_sign_table(n, h).unwrap().pass);
            if h >= 2 {
                let r = check_sigma_schedule(n, h).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }
}
