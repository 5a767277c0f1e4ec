//! Multivariate polynomial gcd over the integers.
//!
//! Content and monomial factors are removed first, symbols that occur in
//! only one operand are eliminated by taking coefficient gcds, and the
//! remaining primitive problem is solved by Brown's dense modular algorithm:
//! images modulo word-size primes are computed by recursive evaluation and
//! Newton interpolation, combined by Chinese remaindering, and certified by
//! exact trial division over `Z`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use smallvec::SmallVec;

use super::int::Int;
use super::poly::{Exps, Poly};
use super::symbol::Symbol;

// ---------------------------------------------------------------------------
// Arithmetic modulo a word-size prime
// ---------------------------------------------------------------------------

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

// ---------------------------------------------------------------------------
// Univariate dense polynomials over Z_p (ascending coefficients)
// ---------------------------------------------------------------------------

type UPoly = Vec<u64>;

fn utrim(a: &mut UPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn udeg(a: &UPoly) -> isize {
    a.len() as isize - 1
}

fn ueval(a: &UPoly, x: u64, p: u64) -> u64 {
    let mut r = 0u64;
    for &c in a.iter().rev() {
        r = addm(mulm(r, x, p), c, p);
    }
    r
}

fn umonic(a: &UPoly, p: u64) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = invm(l, p);
            a.iter().map(|&c| mulm(c, inv, p)).collect()
        }
    }
}

fn urem(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = invm(b[db], p);
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let q = mulm(lead, inv, p);
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = subm(r[shift + i], mulm(q, bc, p), p);
            }
        }
        r.pop();
    }
    utrim(&mut r);
    r
}

fn udivexact(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let inv = invm(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            let c = mulm(lead, inv, p);
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = subm(r[shift + i], mulm(c, bc, p), p);
            }
        }
        r.pop();
    }
    utrim(&mut q);
    q
}

fn ugcd(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    utrim(&mut a);
    utrim(&mut b);
    while !b.is_empty() {
        let r = urem(&a, &b, p);
        a = b;
        b = r;
    }
    umonic(&a, p)
}

fn umul(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials over Z_p with a fixed number of variables
// ---------------------------------------------------------------------------

/// Terms sorted in descending lex order; coefficients in `[1, p)`.
#[derive(Clone, Debug, PartialEq)]
struct PP {
    nv: usize,
    terms: Vec<(Exps, u64)>,
}

impl PP {
    fn zero(nv: usize) -> PP {
        PP { nv, terms: Vec::new() }
    }

    fn constant(nv: usize, c: u64) -> PP {
        if c == 0 {
            return PP::zero(nv);
        }
        PP {
            nv,
            terms: vec![(SmallVec::from_elem(0, nv), c)],
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    fn scale(&self, c: u64, p: u64) -> PP {
        if c == 0 {
            return PP::zero(self.nv);
        }
        PP {
            nv: self.nv,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), mulm(*x, c, p))).collect(),
        }
    }

    fn monic(&self, p: u64) -> PP {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invm(self.terms[0].1, p);
        self.scale(inv, p)
    }

    fn sub(&self, other: &PP, p: u64) -> PP {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            if j == other.terms.len() || (i < self.terms.len() && self.terms[i].0 > other.terms[j].0) {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() || other.terms[j].0 > self.terms[i].0 {
                out.push((other.terms[j].0.clone(), subm(0, other.terms[j].1, p)));
                j += 1;
            } else {
                let c = subm(self.terms[i].1, other.terms[j].1, p);
                if c != 0 {
                    out.push((self.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        PP { nv: self.nv, terms: out }
    }

    fn add(&self, other: &PP, p: u64) -> PP {
        self.sub(&other.scale(p - 1, p), p)
    }

    /// Groups terms by the exponents of the first `nv-1` variables; the
    /// coefficient of each group is a univariate polynomial in the last one.
    fn split_last(&self) -> Vec<(Exps, UPoly)> {
        let k = self.nv - 1;
        let mut out: Vec<(Exps, UPoly)> = Vec::new();
        for (e, c) in &self.terms {
            let head: Exps = e[..k].iter().copied().collect();
            let d = e[k] as usize;
            match out.last_mut() {
                Some((h, u)) if *h == head => {
                    if u.len() <= d {
                        u.resize(d + 1, 0);
                    }
                    u[d] = *c;
                }
                _ => {
                    let mut u = vec![0u64; d + 1];
                    u[d] = *c;
                    out.push((head, u));
                }
            }
        }
        out
    }

    fn join_last(nv: usize, parts: &[(Exps, UPoly)]) -> PP {
        let mut terms = Vec::new();
        for (h, u) in parts {
            for d in (0..u.len()).rev() {
                if u[d] != 0 {
                    let mut e = h.clone();
                    e.push(d as u16);
                    terms.push((e, u[d]));
                }
            }
        }
        // heads are distinct and descending; within a head degrees descend
        PP { nv, terms }
    }

    /// Evaluates the last variable, returning a polynomial in `nv-1` variables.
    fn eval_last(&self, x: u64, p: u64) -> PP {
        let parts = self.split_last();
        let mut terms = Vec::with_capacity(parts.len());
        for (h, u) in parts {
            let v = ueval(&u, x, p);
            if v != 0 {
                terms.push((h, v));
            }
        }
        PP { nv: self.nv - 1, terms }
    }

    /// Embeds a polynomial in `nv` variables into `nv+1` by appending a zero
    /// exponent, then multiplies by a univariate polynomial in the new last
    /// variable.
    fn lift_times(&self, u: &UPoly, p: u64) -> PP {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            for d in (0..u.len()).rev() {
                if u[d] != 0 {
                    let mut ne = e.clone();
                    ne.push(d as u16);
                    terms.push((ne, mulm(*c, u[d], p)));
                }
            }
        }
        PP { nv: self.nv + 1, terms }
    }

    /// Exact division in `Z_p[x]`; `None` if not divisible.
    fn div_exact(&self, d: &PP, p: u64) -> Option<PP> {
        if d.is_zero() {
            return None;
        }
        let nv = self.nv;
        let (lde, ldc) = d.terms[0].clone();
        let inv = invm(ldc, p);
        let mut rem: std::collections::BTreeMap<Exps, u64> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        while let Some((e, c)) = rem.pop_last() {
            if e.iter().zip(lde.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let qc = mulm(c, inv, p);
            let qe: Exps = e.iter().zip(lde.iter()).map(|(a, b)| a - b).collect();
            for (de, dc) in d.terms.iter().skip(1) {
                let key: Exps = qe.iter().zip(de.iter()).map(|(a, b)| a + b).collect();
                let delta = mulm(qc, *dc, p);
                let entry = rem.entry(key.clone()).or_insert(0);
                *entry = subm(*entry, delta, p);
                if *entry == 0 {
                    rem.remove(&key);
                }
            }
            q.push((qe, qc));
        }
        Some(PP { nv, terms: q })
    }

    fn degree_last(&self) -> usize {
        self.terms.iter().map(|(e, _)| e[self.nv - 1] as usize).max().unwrap_or(0)
    }

    fn main_degree_zero(&self) -> bool {
        let k = self.nv - 1;
        self.terms.iter().all(|(e, _)| e[..k].iter().all(|&x| x == 0))
    }
}

fn univariate_of(a: &PP) -> UPoly {
    let mut u = vec![0u64; a.terms.first().map(|t| t.0[0] as usize + 1).unwrap_or(0)];
    for (e, c) in &a.terms {
        u[e[0] as usize] = *c;
    }
    utrim(&mut u);
    u
}

fn pp_of_univariate(u: &UPoly) -> PP {
    let mut terms = Vec::new();
    for d in (0..u.len()).rev() {
        if u[d] != 0 {
            terms.push((SmallVec::from_elem(d as u16, 1), u[d]));
        }
    }
    PP { nv: 1, terms }
}

/// Monic gcd in `Z_p[x_1..x_nv]`.
fn pgcd(a: &PP, b: &PP, p: u64) -> PP {
    let nv = a.nv;
    if a.is_zero() {
        return b.monic(p);
    }
    if b.is_zero() {
        return a.monic(p);
    }
    if nv == 0 {
        return PP::constant(0, 1);
    }
    if nv == 1 {
        return pp_of_univariate(&ugcd(&univariate_of(a), &univariate_of(b), p));
    }
    let sa = a.split_last();
    let sb = b.split_last();
    let mut ca: UPoly = Vec::new();
    for (_, u) in &sa {
        ca = ugcd(&ca, u, p);
        if ca.len() == 1 {
            break;
        }
    }
    let mut cb: UPoly = Vec::new();
    for (_, u) in &sb {
        cb = ugcd(&cb, u, p);
        if cb.len() == 1 {
            break;
        }
    }
    let c = ugcd(&ca, &cb, p);
    let prim = |parts: &[(Exps, UPoly)], cont: &UPoly| -> Vec<(Exps, UPoly)> {
        parts.iter().map(|(h, u)| (h.clone(), udivexact(u, cont, p))).collect()
    };
    let pa_parts = prim(&sa, &ca);
    let pb_parts = prim(&sb, &cb);
    let pa = PP::join_last(nv, &pa_parts);
    let pb = PP::join_last(nv, &pb_parts);
    let c_full = PP::join_last(nv, &[(SmallVec::from_elem(0, nv - 1), c.clone())]);
    if pa.main_degree_zero() || pb.main_degree_zero() {
        return c_full.monic(p);
    }
    let lca = &pa_parts[0].1;
    let lcb = &pb_parts[0].1;
    let g = ugcd(lca, lcb, p);
    let bound = pa.degree_last().min(pb.degree_last()) + udeg(&g).max(0) as usize;

    let mut interp: Option<PP> = None;
    let mut newton: UPoly = vec![1];
    let mut npoints = 0usize;
    let mut beta: u64 = 1;
    loop {
        beta += 1;
        if ueval(lca, beta, p) == 0 || ueval(lcb, beta, p) == 0 {
            continue;
        }
        let ab = pa.eval_last(beta, p);
        let bb = pb.eval_last(beta, p);
        let img = pgcd(&ab, &bb, p);
        if img.is_constant() {
            // With non-vanishing leading coefficients the image degree bounds
            // the true degree, so the primitive parts are coprime.
            return c_full.monic(p);
        }
        let img = img.scale(ueval(&g, beta, p), p);
        let restart = match &interp {
            None => true,
            Some(h) => {
                let h_lm = &h.lm()[..nv - 1];
                match img.lm()[..].cmp(h_lm) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => continue, // unlucky point
                    std::cmp::Ordering::Equal => false,
                }
            }
        };
        if restart {
            interp = Some(embed_last(&img));
            newton = vec![subm(0, beta, p), 1];
            npoints = 1;
        } else {
            let h = interp.take().unwrap();
            let diff = img.sub(&h.eval_last(beta, p), p);
            let scale = invm(ueval(&newton, beta, p), p);
            let corr = diff.scale(scale, p).lift_times(&newton, p);
            interp = Some(h.add(&corr, p));
            newton = umul(&newton, &vec![subm(0, beta, p), 1], p);
            npoints += 1;
        }
        if npoints > bound {
            let h = interp.as_ref().unwrap();
            let parts = h.split_last();
            let mut cont: UPoly = Vec::new();
            for (_, u) in &parts {
                cont = ugcd(&cont, u, p);
            }
            let prim_parts: Vec<(Exps, UPoly)> =
                parts.iter().map(|(hh, u)| (hh.clone(), udivexact(u, &cont, p))).collect();
            let cand = PP::join_last(nv, &prim_parts);
            if pa.div_exact(&cand, p).is_some() && pb.div_exact(&cand, p).is_some() {
                return mul_pp(&cand, &c_full, p).monic(p);
            }
            interp = None;
        }
    }
}

/// Lifts a polynomial in `nv` variables to `nv+1` with zero last exponent.
fn embed_last(a: &PP) -> PP {
    PP {
        nv: a.nv + 1,
        terms: a
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne.push(0);
                (ne, *c)
            })
            .collect(),
    }
}

fn mul_pp(a: &PP, b: &PP, p: u64) -> PP {
    let mut acc: std::collections::HashMap<Exps, u64> = std::collections::HashMap::new();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
            let v = mulm(*ca, *cb, p);
            let entry = acc.entry(e).or_insert(0);
            *entry = addm(*entry, v, p);
        }
    }
    let mut terms: Vec<(Exps, u64)> = acc.into_iter().filter(|t| t.1 != 0).collect();
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    PP { nv: a.nv, terms }
}

// ---------------------------------------------------------------------------
// Integer-level driver
// ---------------------------------------------------------------------------

fn reduce_mod(terms: &[(Exps, Int)], nv: usize, p: u64) -> PP {
    let t: Vec<(Exps, u64)> = terms
        .iter()
        .map(|(e, c)| (e.clone(), c.rem_u64(p)))
        .filter(|t| t.1 != 0)
        .collect();
    PP { nv, terms: t }
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    let half: BigInt = m >> 1;
    if r > half {
        r - m
    } else {
        r
    }
}

/// Brown's algorithm for primitive inputs over the same symbol list.
fn modular_gcd(vars: &Arc<[Symbol]>, a: &[(Exps, Int)], b: &[(Exps, Int)]) -> Poly {
    let nv = vars.len();
    let lca = a[0].1.clone();
    let lcb = b[0].1.clone();
    let gamma = lca.gcd(&lcb);
    let pa = Poly::from_sorted(vars.clone(), a.to_vec());
    let pb = Poly::from_sorted(vars.clone(), b.to_vec());
    let mut acc: Option<(Vec<(Exps, BigInt)>, BigInt)> = None;
    for p in primes().take(64) {
        if lca.rem_u64(p) == 0 || lcb.rem_u64(p) == 0 {
            continue;
        }
        let ap = reduce_mod(a, nv, p);
        let bp = reduce_mod(b, nv, p);
        let g = pgcd(&ap, &bp, p);
        if g.is_constant() {
            return Poly::one();
        }
        let g = g.scale(gamma.rem_u64(p), p);
        let pb_big = BigInt::from(p);
        let next = match acc.take() {
            None => (
                g.terms.iter().map(|(e, c)| (e.clone(), BigInt::from(*c))).collect::<Vec<_>>(),
                pb_big,
            ),
            Some((prev, m)) => {
                let prev_lm = &prev[0].0;
                if g.lm() < prev_lm {
                    (
                        g.terms.iter().map(|(e, c)| (e.clone(), BigInt::from(*c))).collect(),
                        pb_big,
                    )
                } else if g.lm() > prev_lm {
                    acc = Some((prev, m));
                    continue;
                } else {
                    // CRT combine over the union of supports
                    let m_inv_p = invm(
                        {
                            let r = m.mod_floor(&pb_big);
                            u64::try_from(r).unwrap()
                        },
                        p,
                    );
                    let mut keys: Vec<Exps> = prev.iter().map(|t| t.0.clone()).collect();
                    for (e, _) in &g.terms {
                        keys.push(e.clone());
                    }
                    keys.sort_unstable_by(|x, y| y.cmp(x));
                    keys.dedup();
                    let mut out = Vec::with_capacity(keys.len());
                    let prev_map: std::collections::HashMap<&Exps, &BigInt> =
                        prev.iter().map(|(e, c)| (e, c)).collect();
                    let g_map: std::collections::HashMap<&Exps, u64> =
                        g.terms.iter().map(|(e, c)| (e, *c)).collect();
                    let zero = BigInt::zero();
                    for k in keys {
                        let r1 = (*prev_map.get(&k).unwrap_or(&&zero)).clone();
                        let r2 = *g_map.get(&k).unwrap_or(&0);
                        let r1p = u64::try_from(r1.mod_floor(&pb_big)).unwrap();
                        let t = mulm(subm(r2, r1p, p), m_inv_p, p);
                        let v = r1 + &m * BigInt::from(t);
                        out.push((k, v));
                    }
                    (out, &m * &pb_big)
                }
            }
        };
        // certify
        let (coeffs, m) = &next;
        let cand_terms: Vec<(Exps, Int)> = coeffs
            .iter()
            .map(|(e, c)| (e.clone(), Int::from_big(symmetric(c, m))))
            .filter(|t| !t.1.is_zero())
            .collect();
        acc = Some(next.clone());
        if cand_terms.is_empty() {
            continue;
        }
        let cand = Poly::from_sorted(vars.clone(), cand_terms);
        let cont = cand.content();
        let mut cand = cand.div_int_exact(&cont);
        if cand.lc().is_negative() {
            cand = cand.neg();
        }
        if pa.div_exact(&cand).is_some() && pb.div_exact(&cand).is_some() {
            return cand;
        }
    }
    panic!("modular gcd failed to converge");
}

/// Normalizes a gcd candidate to positive leading coefficient.
fn positive(p: Poly) -> Poly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// gcd of primitive polynomials without monomial content.
fn primitive_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b || *a == b.neg() {
        return positive(a.clone());
    }
    let va = a.vars();
    let vb = b.vars();
    let only_a: Vec<Symbol> = va.iter().filter(|s| !vb.contains(s)).copied().collect();
    let only_b: Vec<Symbol> = vb.iter().filter(|s| !va.contains(s)).copied().collect();
    if !only_a.is_empty() || !only_b.is_empty() {
        let shared = va.iter().filter(|s| vb.contains(s)).count();
        if shared == 0 {
            return Poly::one();
        }
        let mut cs: Vec<Poly> = Vec::new();
        if only_a.is_empty() {
            cs.push(a.clone());
        } else {
            cs.extend(a.coefficients_wrt(&only_a).into_iter().map(|(_, c)| c));
        }
        if only_b.is_empty() {
            cs.push(b.clone());
        } else {
            cs.extend(b.coefficients_wrt(&only_b).into_iter().map(|(_, c)| c));
        }
        cs.sort_by_key(|c| (c.len(), c.total_degree()));
        let mut g = cs[0].clone();
        for c in &cs[1..] {
            g = gcd(&g, c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        return positive(g);
    }
    let vars = a.vars_arc().clone();
    let at = a.terms().to_vec();
    let bt = b.terms_over(&vars);
    modular_gcd(&vars, &at, &bt)
}

/// Greatest common divisor in `Z[symbols]`, normalized to a positive
/// leading coefficient (and `0` only when both inputs vanish).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    if a.is_constant() || b.is_constant() {
        return Poly::constant(cg);
    }
    let a1 = a.div_int_exact(&ca);
    let b1 = b.div_int_exact(&cb);
    // monomial content
    let ma = a1.monomial_content();
    let mb = b1.monomial_content();
    let mut common: Vec<(Symbol, u16)> = Vec::new();
    for (k, s) in a1.vars().iter().enumerate() {
        if let Some(j) = b1.vars().iter().position(|v| v == s) {
            let e = ma[k].min(mb[j]);
            if e > 0 {
                common.push((*s, e));
            }
        }
    }
    let a2 = a1.div_monomial(&ma);
    let b2 = b1.div_monomial(&mb);
    let pg = primitive_gcd(&a2, &b2);
    let mut g = pg.scale(&cg);
    if !common.is_empty() {
        let vars: Vec<Symbol> = common.iter().map(|c| c.0).collect();
        let e: Vec<u16> = common.iter().map(|c| c.1).collect();
        g = g.mul(&Poly::monomial(&vars, &e));
    }
    positive(g)
}

/// gcd together with both cofactors: `(g, a/g, b/g)`.
pub fn gcd_cofactors(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let g = gcd(a, b);
    if g.is_one() {
        return (g, a.clone(), b.clone());
    }
    let qa = a.div_exact(&g).expect("gcd divides");
    let qb = b.div_exact(&g).expect("gcd divides");
    (g, qa, qb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Poly {
        Poly::var(Symbol::new(n))
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&p| is_prime(p) && p < (1 << 62)));
        assert!(ps[0] > ps[1]);
    }

    #[test]
    fn trivial_and_common_factors() {
        let x = v("gx");
        let y = v("gy");
        let z = v("gz");
        let a = x.add(&y).mul(&x.sub(&z)).mul(&Poly::from_i64(6));
        let b = x.add(&y).mul(&y.add(&z).add(&Poly::one())).mul(&Poly::from_i64(4));
        let g = gcd(&a, &b);
        assert_eq!(g, x.add(&y).scale(&Int::from(2)));
        let one = gcd(&x.add(&Poly::one()), &y.sub(&Poly::one()));
        assert!(one.is_one());
    }

    #[test]
    fn multivariate_products() {
        let x = v("gx");
        let y = v("gy");
        let z = v("gz");
        let f1 = x.pow(2).add(&y.mul(&z)).add(&Poly::from_i64(3));
        let f2 = x.mul(&y).sub(&z.pow(2)).add(&x);
        let f3 = y.add(&z).add(&Poly::from_i64(-7));
        let a = f1.mul(&f2).mul(&f3);
        let b = f1.mul(&f3).mul(&f3).mul(&x.sub(&y));
        let g = gcd(&a, &b);
        assert_eq!(g, positive(f1.mul(&f3)));
        let (g2, qa, qb) = gcd_cofactors(&a, &b);
        assert_eq!(g2.mul(&qa), a);
        assert_eq!(g2.mul(&qb), b);
    }

    #[test]
    fn univariate_and_monomials() {
        let x = v("gx");
        let a = x.pow(3).mul(&x.sub(&Poly::one()));
        let b = x.pow(2).mul(&x.sub(&Poly::one())).mul(&x.add(&Poly::one()));
        assert_eq!(gcd(&a, &b), x.pow(2).mul(&x.sub(&Poly::one())));
    }
}
