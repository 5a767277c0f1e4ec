//! Exact rational functions over `Q` in named symbols.
//!
//! A value is stored as `num / den` with `num, den ∈ Z[symbols]`, no common
//! factor (integer content included), and the lex-leading coefficient of the
//! denominator positive. This form is unique, so structural equality is
//! equality of functions and the text serialization round-trips bit-exactly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::gcd_cofactors;
use super::int::Int;
use super::poly::Poly;
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// An exact rational function in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionExpr {
    num: Poly,
    den: Poly,
}

/// Short alias used throughout the crate.
pub type Rf = RationalFunctionExpr;

impl RationalFunctionExpr {
    pub fn zero() -> Rf {
        Rf {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Rf {
        Rf::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Rf {
        Rf { num: p, den: Poly::one() }
    }

    pub fn from_int(c: Int) -> Rf {
        Rf::from_poly(Poly::constant(c))
    }

    pub fn from_i64(c: i64) -> Rf {
        Rf::from_int(Int::from(c))
    }

    /// The rational constant `p/q`.
    pub fn ratio(p: i64, q: i64) -> Rf {
        assert!(q != 0, "zero denominator");
        Rf::from_parts(Poly::from_i64(p), Poly::from_i64(q))
    }

    pub fn from_big_rational(r: &BigRational) -> Rf {
        Rf::from_parts(
            Poly::constant(Int::from_big(r.numer().clone())),
            Poly::constant(Int::from_big(r.denom().clone())),
        )
    }

    pub fn sym(s: Symbol) -> Rf {
        Rf::from_poly(Poly::var(s))
    }

    /// The symbol with the given name, as a function.
    pub fn var(name: &str) -> Rf {
        Rf::sym(Symbol::new(name))
    }

    /// Canonicalizes an arbitrary numerator/denominator pair.
    ///
    /// Panics if `den` is zero; use [`Rf::try_from_parts`] for a checked
    /// variant.
    pub fn from_parts(num: Poly, den: Poly) -> Rf {
        Rf::try_from_parts(num, den).expect("zero denominator")
    }

    pub fn try_from_parts(num: Poly, den: Poly) -> Result<Rf> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Rf::zero());
        }
        let (_, n, d) = gcd_cofactors(&num, &den);
        Ok(Rf::normalized_sign(n, d))
    }

    /// Fixes the sign convention on an already coprime pair.
    fn normalized_sign(num: Poly, den: Poly) -> Rf {
        if den.lc().is_negative() {
            Rf { num: num.neg(), den: den.neg() }
        } else {
            Rf { num, den }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True when the denominator is a constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value as an exact rational if the function is constant.
    pub fn to_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n.to_big(), d.to_big()))
    }

    /// The value as an integer if the function is an integer constant.
    pub fn to_int(&self) -> Option<Int> {
        if !self.den.is_one() {
            return None;
        }
        self.num.constant_value()
    }

    /// All symbols occurring in numerator or denominator, sorted.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self.num.vars().iter().chain(self.den.vars()).copied().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    pub fn neg(&self) -> Rf {
        Rf {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Rf) -> Rf {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let n = self.num.add(&other.num);
            if self.den.is_one() || n.is_zero() {
                return Rf::try_from_parts(n, self.den.clone()).unwrap();
            }
            let (_, n2, d2) = gcd_cofactors(&n, &self.den);
            return Rf::normalized_sign(n2, d2);
        }
        if self.den.is_one() {
            return Rf::normalized_sign(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        if other.den.is_one() {
            return Rf::normalized_sign(other.num.mul(&self.den).add(&self.num), self.den.clone());
        }
        let (g, b1, d1) = gcd_cofactors(&self.den, &other.den);
        let t = self.num.mul(&d1).add(&other.num.mul(&b1));
        if t.is_zero() {
            return Rf::zero();
        }
        if g.is_one() {
            return Rf::normalized_sign(t, self.den.mul(&other.den));
        }
        let (_, t2, g2) = gcd_cofactors(&t, &g);
        Rf::normalized_sign(t2, b1.mul(&d1).mul(&g2))
    }

    pub fn sub(&self, other: &Rf) -> Rf {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rf) -> Rf {
        if self.is_zero() || other.is_zero() {
            return Rf::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (_, a, d) = if other.den.is_one() {
            (Poly::one(), self.num.clone(), other.den.clone())
        } else {
            gcd_cofactors(&self.num, &other.den)
        };
        let (_, c, b) = if self.den.is_one() {
            (Poly::one(), other.num.clone(), self.den.clone())
        } else {
            gcd_cofactors(&other.num, &self.den)
        };
        Rf::normalized_sign(a.mul(&c), b.mul(&d))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Rf> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rf::normalized_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Rf) -> Result<Rf> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Rf> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(Rf::normalized_sign(self.num.pow(e), self.den.pow(e)))
    }

    pub fn scale_int(&self, c: i64) -> Rf {
        self.mul(&Rf::from_i64(c))
    }

    /// Sum of an iterator of functions; denominators are grouped so that
    /// equal denominators are added before any gcd work.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Rf>) -> Rf {
        let mut by_den: Vec<(Poly, Poly)> = Vec::new();
        for x in items {
            if x.is_zero() {
                continue;
            }
            match by_den.iter_mut().find(|(d, _)| *d == x.den) {
                Some((_, n)) => *n = n.add(&x.num),
                None => by_den.push((x.den.clone(), x.num.clone())),
            }
        }
        let mut acc = Rf::zero();
        for (d, n) in by_den {
            if n.is_zero() {
                continue;
            }
            acc = acc.add(&Rf::from_parts(n, d));
        }
        acc
    }

    /// Simultaneous substitution of functions for symbols.
    pub fn substitute(&self, bindings: &[(Symbol, Rf)]) -> Result<Rf> {
        let relevant: Vec<&(Symbol, Rf)> = bindings.iter().filter(|(s, _)| self.contains(*s)).collect();
        if relevant.is_empty() {
            return Ok(self.clone());
        }
        if relevant.iter().all(|(_, v)| v.den.is_one()) {
            let b: Vec<(Symbol, Poly)> = relevant.iter().map(|(s, v)| (*s, v.num.clone())).collect();
            return Rf::try_from_parts(self.num.compose(&b), self.den.compose(&b));
        }
        // Homogenize: multiply numerator and denominator by ∏ q_s^{D_s} where
        // D_s is the larger of the two degrees in s.
        let degs: Vec<u32> = relevant
            .iter()
            .map(|(s, _)| self.num.degree(*s).max(self.den.degree(*s)))
            .collect();
        let n = homogeneous_compose(&self.num, &relevant, &degs);
        let d = homogeneous_compose(&self.den, &relevant, &degs);
        Rf::try_from_parts(n, d)
    }

    /// Renames symbols according to an injective map.
    pub fn rename(&self, map: &[(Symbol, Symbol)]) -> Rf {
        let n = self.num.rename(map);
        let d = self.den.rename(map);
        Rf::normalized_sign(n, d)
    }

    /// Average over all products of per-group permutations of the symbols.
    pub fn symmetrize(&self, groups: &[Vec<Symbol>]) -> Rf {
        let groups: Vec<&Vec<Symbol>> = groups
            .iter()
            .filter(|g| g.len() > 1 && g.iter().any(|s| self.contains(*s)))
            .collect();
        if groups.is_empty() {
            return self.clone();
        }
        let perms: Vec<Vec<Vec<usize>>> = groups.iter().map(|g| permutations(g.len())).collect();
        let mut total = 1usize;
        for p in &perms {
            total *= p.len();
        }
        let mut images = Vec::with_capacity(total);
        let mut idx = vec![0usize; groups.len()];
        loop {
            let mut map = Vec::new();
            for (gi, g) in groups.iter().enumerate() {
                let perm = &perms[gi][idx[gi]];
                for (k, s) in g.iter().enumerate() {
                    if perm[k] != k {
                        map.push((*s, g[perm[k]]));
                    }
                }
            }
            images.push(if map.is_empty() { self.clone() } else { self.rename(&map) });
            // odometer
            let mut j = 0;
            loop {
                if j == groups.len() {
                    let s = Rf::sum(images.iter());
                    return s.mul(&Rf::ratio(1, total as i64));
                }
                idx[j] += 1;
                if idx[j] < perms[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }

    /// Partial derivative.
    pub fn partial(&self, s: Symbol) -> Rf {
        let dn = self.num.derivative(s);
        let dd = self.den.derivative(s);
        if dd.is_zero() {
            return Rf::from_parts(dn, self.den.clone());
        }
        let top = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Rf::from_parts(top, self.den.pow(2))
    }

    /// Floating-point evaluation; `None` if a symbol is unbound.
    pub fn eval_f64(&self, value: &dyn Fn(Symbol) -> Option<f64>) -> Option<f64> {
        let n = eval_poly_f64(&self.num, value)?;
        let d = eval_poly_f64(&self.den, value)?;
        Some(n / d)
    }

    /// Renders in the text grammar.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the text grammar.
    pub fn parse(s: &str) -> Result<Rf> {
        super::parse::parse_rf(s)
    }
}

fn eval_poly_f64(p: &Poly, value: &dyn Fn(Symbol) -> Option<f64>) -> Option<f64> {
    let vals: Vec<f64> = p.vars().iter().map(|s| value(*s)).collect::<Option<Vec<_>>>()?;
    let mut acc = 0.0;
    for (e, c) in p.terms() {
        let mut t = c.to_f64();
        for (k, &x) in e.iter().enumerate() {
            if x > 0 {
                t *= vals[k].powi(x as i32);
            }
        }
        acc += t;
    }
    Some(acc)
}

fn homogeneous_compose(p: &Poly, bindings: &[&(Symbol, Rf)], degs: &[u32]) -> Poly {
    let vars = p.vars();
    let index: Vec<Option<usize>> = vars
        .iter()
        .map(|v| bindings.iter().position(|(s, _)| s == v))
        .collect();
    let mut num_pows: Vec<Vec<Poly>> = vec![vec![Poly::one()]; bindings.len()];
    let mut den_pows: Vec<Vec<Poly>> = vec![vec![Poly::one()]; bindings.len()];
    let power = |table: &mut Vec<Vec<Poly>>, b: usize, base: &Poly, e: usize| -> Poly {
        while table[b].len() <= e {
            let next = table[b].last().unwrap().mul(base);
            table[b].push(next);
        }
        table[b][e].clone()
    };
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        let mut term = Poly::constant(c.clone());
        let mut seen = vec![0u32; bindings.len()];
        let mut free = Vec::new();
        for (k, &x) in e.iter().enumerate() {
            match index[k] {
                Some(b) => seen[b] = x as u32,
                None => {
                    if x > 0 {
                        free.push((vars[k], x));
                    }
                }
            }
        }
        for (b, (_, val)) in bindings.iter().enumerate() {
            let ex = seen[b] as usize;
            if ex > 0 {
                term = term.mul(&power(&mut num_pows, b, val.num(), ex));
            }
            let rest = (degs[b] - seen[b]) as usize;
            if rest > 0 {
                term = term.mul(&power(&mut den_pows, b, val.den(), rest));
            }
        }
        for (s, x) in free {
            term = term.mul(&Poly::var(s).pow(x as u32));
        }
        out = out.add(&term);
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

impl Default for Rf {
    fn default() -> Self {
        Rf::zero()
    }
}

impl From<i64> for Rf {
    fn from(v: i64) -> Self {
        Rf::from_i64(v)
    }
}

impl From<Int> for Rf {
    fn from(v: Int) -> Self {
        Rf::from_int(v)
    }
}

impl From<Symbol> for Rf {
    fn from(s: Symbol) -> Self {
        Rf::sym(s)
    }
}

impl From<&BigRational> for Rf {
    fn from(r: &BigRational) -> Self {
        Rf::from_big_rational(r)
    }
}

impl From<BigInt> for Rf {
    fn from(v: BigInt) -> Self {
        Rf::from_int(Int::from_big(v))
    }
}

impl<'a> Add<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn add(self, rhs: &Rf) -> Rf {
        Rf::add(self, rhs)
    }
}

impl<'a> Sub<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn sub(self, rhs: &Rf) -> Rf {
        Rf::sub(self, rhs)
    }
}

impl<'a> Mul<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn mul(self, rhs: &Rf) -> Rf {
        Rf::mul(self, rhs)
    }
}

impl Neg for &Rf {
    type Output = Rf;
    fn neg(self) -> Rf {
        Rf::neg(self)
    }
}


impl fmt::Display for Rf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.num.write_text(f);
        }
        f.write_str("(")?;
        self.num.write_text(f)?;
        f.write_str(")/(")?;
        self.den.write_text(f)?;
        f.write_str(")")
    }
}

impl fmt::Debug for Rf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rf::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Rf {
        Rf::var("t")
    }
    fn z() -> Rf {
        Rf::var("z")
    }

    #[test]
    fn additive_inverse_cancels() {
        let f = Rf::one().div(&(&t() - &z())).unwrap();
        let g = f.neg();
        assert!((&f + &g).is_zero());
    }

    #[test]
    fn gcd_cancellation() {
        let f = (&(&t() * &t()) - &(&z() * &z())).div(&(&t() - &z())).unwrap();
        assert_eq!(f, &t() + &z());
    }

    #[test]
    fn factor_cancellation() {
        let l = Rf::var("l1");
        let f = Rf::one().div(&(&l * &(&l - &Rf::one()))).unwrap();
        assert_eq!(f.mul(&l), Rf::one().div(&(&l - &Rf::one())).unwrap());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert!(matches!(t().div(&Rf::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn substitution_shift_and_evaluation() {
        let l = Symbol::new("l1");
        let f = Rf::one().div(&Rf::sym(l)).unwrap();
        let g = f.substitute(&[(l, &Rf::sym(l) + &Rf::var("kap"))]).unwrap();
        assert_eq!(g, Rf::one().div(&(&Rf::sym(l) + &Rf::var("kap"))).unwrap());
        let h = Rf::one().div(&(&Rf::sym(l) * &(&Rf::sym(l) - &Rf::one()))).unwrap();
        assert_eq!(h.substitute(&[(l, Rf::from_i64(2))]).unwrap(), Rf::ratio(1, 2));
        assert_eq!(h.substitute(&[]).unwrap(), h);
        assert!(matches!(h.substitute(&[(l, Rf::one())]), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rational_substitution() {
        let x = Symbol::new("x");
        let f = Rf::sym(x).pow(2).unwrap().add(&Rf::one()).div(&(&Rf::sym(x) - &Rf::from_i64(3))).unwrap();
        let v = Rf::one().div(&Rf::var("y")).unwrap();
        let g = f.substitute(&[(x, v.clone())]).unwrap();
        let direct = v.pow(2).unwrap().add(&Rf::one()).div(&(&v - &Rf::from_i64(3))).unwrap();
        assert_eq!(g, direct);
    }

    #[test]
    fn symmetrization() {
        let a = Symbol::t(1, 1);
        let b = Symbol::t(1, 2);
        let f = Rf::sym(a);
        let s = f.symmetrize(&[vec![a, b]]);
        assert_eq!(s, (&Rf::sym(a) + &Rf::sym(b)).mul(&Rf::ratio(1, 2)));
        assert_eq!(s.symmetrize(&[vec![a, b]]), s);
        let single = Rf::one().div(&(&Rf::sym(a) - &Rf::var("z:1"))).unwrap();
        assert_eq!(single.symmetrize(&[vec![a]]), single);
    }

    #[test]
    fn partial_derivatives() {
        let ts = Symbol::new("t");
        let f = Rf::one().div(&(&t() - &z())).unwrap();
        let expect = Rf::from_i64(-1).div(&(&t() - &z()).pow(2).unwrap()).unwrap();
        assert_eq!(f.partial(ts), expect);
        assert!(Rf::var("q").partial(Symbol::new("z")).is_zero());
    }
}
