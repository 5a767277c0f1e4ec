//! Randomized soundness checks for the exact arithmetic kernel.

use kzdyn_core::symexpr::{gcd, parse_rf, Int, Poly, Rf, Symbol};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 4] = ["x", "y", "z:1", "t:1:1"];

fn random_poly(rng: &mut ChaCha8Rng, terms: usize, deg: u32) -> Poly {
    let mut acc = Poly::zero();
    for _ in 0..terms {
        let mut m = Poly::from_i64(rng.gen_range(-5..=5));
        for n in NAMES {
            let e = rng.gen_range(0..=deg);
            m = m.mul(&Poly::var(Symbol::new(n)).pow(e));
        }
        acc = acc.add(&m);
    }
    acc
}

fn random_rf(rng: &mut ChaCha8Rng) -> Rf {
    let n = random_poly(rng, 3, 2);
    let mut d = random_poly(rng, 2, 1);
    if d.is_zero() {
        d = Poly::one();
    }
    Rf::from_parts(n, d)
}

/// Exact evaluation at a rational point; `None` at a pole.
fn eval_at(f: &Rf, point: &[(Symbol, Rf)]) -> Option<BigRational> {
    f.substitute(point).ok()?.to_rational()
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec<(Symbol, Rf)> {
    NAMES
        .iter()
        .map(|n| (Symbol::new(n), Rf::ratio(rng.gen_range(-40..=40), rng.gen_range(1..=13))))
        .collect()
}

#[test]
fn canonical_equality_matches_pointwise_equality() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let a = random_rf(&mut rng);
        // b is either a disguised copy of a or an independent function
        let b = if rng.gen_bool(0.5) {
            let u = random_rf(&mut rng);
            if u.is_zero() {
                a.clone()
            } else {
                a.mul(&u).div(&u).unwrap()
            }
        } else {
            random_rf(&mut rng)
        };
        let diff = a.sub(&b);
        let mut checked = 0;
        let mut all_zero = true;
        while checked < 5 {
            let p = random_point(&mut rng);
            let (Some(va), Some(vb)) = (eval_at(&a, &p), eval_at(&b, &p)) else {
                continue;
            };
            checked += 1;
            if !(va - vb).is_zero() {
                all_zero = false;
            }
        }
        assert_eq!(diff.is_zero(), all_zero, "a = {a}, b = {b}");
        assert_eq!(a == b, diff.is_zero());
    }
}

#[test]
fn field_axioms_hold_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let (a, b, c) = (random_rf(&mut rng), random_rf(&mut rng), random_rf(&mut rng));
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.add(&b), b.add(&a));
        if !a.is_zero() {
            assert_eq!(a.mul(&a.inv().unwrap()), Rf::one());
        }
    }
}

#[test]
fn gcd_recovers_planted_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..80 {
        let a = random_poly(&mut rng, 3, 2);
        let b = random_poly(&mut rng, 3, 2);
        let c = random_poly(&mut rng, 2, 2);
        if a.is_zero() || b.is_zero() || c.is_zero() {
            continue;
        }
        let g = gcd(&a.mul(&c), &b.mul(&c));
        let expect = gcd(&a, &b).mul(&c);
        assert!(
            g == expect || g == expect.neg(),
            "gcd({a} * {c}, {b} * {c}) = {g}"
        );
        assert!(a.mul(&c).div_exact(&g).is_some());
    }
}

#[test]
fn symmetrize_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let group = vec![Symbol::new("x"), Symbol::new("y"), Symbol::new("t:1:1")];
    for _ in 0..20 {
        let f = random_rf(&mut rng);
        let s = f.symmetrize(&[group.clone()]);
        assert_eq!(s.symmetrize(&[group.clone()]), s);
    }
}

#[test]
fn two_variable_fixed_point_of_symmetrization() {
    let f = parse_rf("1/((t:1:1 - z:1)*(t:1:2 - z:1))").unwrap();
    let group = vec![Symbol::t(1, 1), Symbol::t(1, 2)];
    // brute-force permutation sum
    let swapped = f.rename(&[(Symbol::t(1, 1), Symbol::t(1, 2)), (Symbol::t(1, 2), Symbol::t(1, 1))]);
    let brute = f.add(&swapped).mul(&Rf::ratio(1, 2));
    assert_eq!(f.symmetrize(&[group]), brute);
    assert_eq!(brute, f);
}

#[test]
fn logarithmic_derivative_of_a_product() {
    let t = Symbol::new("t");
    let f = parse_rf("t - z").unwrap();
    let g = parse_rf("t - 1").unwrap();
    let fg = f.mul(&g);
    let lhs = fg.partial(t).div(&fg).unwrap();
    let rhs = f.partial(t).div(&f).unwrap().add(&g.partial(t).div(&g).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn serialization_round_trips_on_random_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let f = random_rf(&mut rng);
        let text = f.to_string();
        assert_eq!(parse_rf(&text).unwrap(), f, "{text}");
    }
    let big = Rf::from_int(Int::from(i64::MAX)).mul(&Rf::from_int(Int::from(i64::MAX)));
    assert_eq!(parse_rf(&big.to_string()).unwrap(), big);
}
