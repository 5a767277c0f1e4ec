//! Type-A root systems: positive roots, weights in ε-coordinates, the Weyl
//! group as permutations, reduced words, normal orders and the special
//! family of orders `≻_h` together with the elementary-transformation
//! schedule converting `≻_h` into `≻_{h−1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symexpr::{Rf, Symbol};

/// The positive root `α_{k,l} = ε_k − ε_l` (1-based, `k < l`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub k: usize,
    pub l: usize,
}

impl Root {
    pub fn new(k: usize, l: usize) -> Root {
        assert!(k < l && k >= 1, "positive root needs 1 <= k < l");
        Root { k, l }
    }

    /// The simple root `α_i = α_{i,i+1}`.
    pub fn simple(i: usize) -> Root {
        Root::new(i, i + 1)
    }

    pub fn is_simple(&self) -> bool {
        self.l == self.k + 1
    }

    pub fn height(&self) -> usize {
        self.l - self.k
    }

    /// Coefficients in the simple-root basis, length `n − 1`.
    pub fn simple_coords(&self, n: usize) -> Vec<i64> {
        (1..n).map(|i| i64::from(self.k <= i && i < self.l)).collect()
    }

    /// `self + other` if it is a root.
    pub fn plus(&self, other: &Root) -> Option<Root> {
        if self.l == other.k {
            Some(Root::new(self.k, other.l))
        } else if other.l == self.k {
            Some(Root::new(other.k, self.l))
        } else {
            None
        }
    }

    /// `self − other` if it is a positive root.
    pub fn minus(&self, other: &Root) -> Option<Root> {
        if self.k == other.k && other.l < self.l {
            Some(Root::new(other.l, self.l))
        } else if self.l == other.l && self.k < other.k {
            Some(Root::new(self.k, other.k))
        } else {
            None
        }
    }

    /// Inner product `(α, β)` in ε-coordinates.
    pub fn dot(&self, other: &Root) -> i64 {
        let d = |i: usize, j: usize| i64::from(i == j);
        d(self.k, other.k) - d(self.k, other.l) - d(self.l, other.k) + d(self.l, other.l)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a({},{})", self.k, self.l)
    }
}

/// The root system of `sl_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemA {
    pub n: usize,
    positive: Vec<Root>,
}

impl RootSystemA {
    pub fn new(n: usize) -> Result<RootSystemA> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("sl_N needs N >= 2, got {n}")));
        }
        let mut positive = Vec::with_capacity(n * (n - 1) / 2);
        for k in 1..=n {
            for l in k + 1..=n {
                positive.push(Root::new(k, l));
            }
        }
        Ok(RootSystemA { n, positive })
    }

    /// Positive roots in lexicographic `(k, l)` order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }
}

/// A weight in ε-coordinates with exact (possibly symbolic) entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightVec {
    pub eps: Vec<Rf>,
}

impl WeightVec {
    pub fn zero(n: usize) -> WeightVec {
        WeightVec { eps: vec![Rf::zero(); n] }
    }

    pub fn dim(&self) -> usize {
        self.eps.len()
    }

    /// The weight `Σ c_i α_i` from simple-root coordinates.
    pub fn from_simple_coords(n: usize, coords: &[i64]) -> WeightVec {
        let mut eps = vec![0i64; n];
        for (i, &c) in coords.iter().enumerate() {
            eps[i] += c;
            eps[i + 1] -= c;
        }
        WeightVec { eps: eps.into_iter().map(Rf::from_i64).collect() }
    }

    pub fn from_root(n: usize, r: &Root) -> WeightVec {
        let mut w = WeightVec::zero(n);
        w.eps[r.k - 1] = Rf::one();
        w.eps[r.l - 1] = Rf::from_i64(-1);
        w
    }

    /// The fundamental weight `ω_k` (equal to its dual in type A).
    pub fn fundamental(n: usize, k: usize) -> WeightVec {
        let eps = (1..=n)
            .map(|h| {
                if h <= k {
                    Rf::ratio((n - k) as i64, n as i64)
                } else {
                    Rf::ratio(-(k as i64), n as i64)
                }
            })
            .collect();
        WeightVec { eps }
    }

    /// `ρ = Σ ω_k`.
    pub fn rho(n: usize) -> WeightVec {
        let mut acc = WeightVec::zero(n);
        for k in 1..n {
            acc = acc.add(&WeightVec::fundamental(n, k));
        }
        acc
    }

    /// The weight with prescribed pairings `(λ, α_k) = values[k−1]`.
    pub fn from_simple_pairings(values: &[Rf]) -> WeightVec {
        let n = values.len() + 1;
        let mut acc = WeightVec::zero(n);
        for (k, v) in values.iter().enumerate() {
            acc = acc.add(&WeightVec::fundamental(n, k + 1).scale(v));
        }
        acc
    }

    /// The symbolic weight with pairings given by the symbols `make(k)`.
    pub fn symbolic(n: usize, make: impl Fn(usize) -> Symbol) -> WeightVec {
        let vals: Vec<Rf> = (1..n).map(|k| Rf::sym(make(k))).collect();
        WeightVec::from_simple_pairings(&vals)
    }

    pub fn add(&self, o: &WeightVec) -> WeightVec {
        WeightVec { eps: self.eps.iter().zip(&o.eps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &WeightVec) -> WeightVec {
        WeightVec { eps: self.eps.iter().zip(&o.eps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Rf) -> WeightVec {
        WeightVec { eps: self.eps.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn dot(&self, o: &WeightVec) -> Rf {
        Rf::sum(self.eps.iter().zip(&o.eps).map(|(a, b)| a.mul(b)).collect::<Vec<_>>().iter())
    }

    /// `(λ, α_{k,l}) = λ_k − λ_l`.
    pub fn pair_root(&self, r: &Root) -> Rf {
        self.eps[r.k - 1].sub(&self.eps[r.l - 1])
    }

    /// Pairings with all simple roots.
    pub fn simple_pairings(&self) -> Vec<Rf> {
        (1..self.dim()).map(|i| self.pair_root(&Root::simple(i))).collect()
    }

    /// Applies a substitution to every entry.
    pub fn substitute(&self, b: &[(Symbol, Rf)]) -> Result<WeightVec> {
        Ok(WeightVec { eps: self.eps.iter().map(|x| x.substitute(b)).collect::<Result<_>>()? })
    }
}

/// A Weyl group element of `sl_N`, as a permutation `i ↦ perm[i−1]`.
///
/// It acts on weights by `(wλ)_{w(i)} = λ_i` and on roots by
/// `w α_{k,l} = α_{w(k), w(l)}`; products are compositions of maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> WeylElement {
        WeylElement { perm: (1..=n).collect() }
    }

    /// The simple reflection `s_i`, the transposition `(i, i+1)`.
    pub fn simple(n: usize, i: usize) -> WeylElement {
        let mut w = WeylElement::identity(n);
        w.perm.swap(i - 1, i);
        w
    }

    /// The longest element `i ↦ N + 1 − i`.
    pub fn longest(n: usize) -> WeylElement {
        WeylElement { perm: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { perm: other.perm.iter().map(|&i| self.perm[i - 1]).collect() }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        WeylElement { perm: inv }
    }

    /// Length = number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.perm;
        let mut c = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `w α_{k,l}` as `(sign, positive root)`.
    pub fn act_root(&self, r: &Root) -> (i32, Root) {
        let (a, b) = (self.apply(r.k), self.apply(r.l));
        if a < b {
            (1, Root::new(a, b))
        } else {
            (-1, Root::new(b, a))
        }
    }

    pub fn act_weight(&self, w: &WeightVec) -> WeightVec {
        let mut eps = vec![Rf::zero(); w.dim()];
        for (i, x) in w.eps.iter().enumerate() {
            eps[self.perm[i] - 1] = x.clone();
        }
        WeightVec { eps }
    }

    /// A reduced word `[i_1, …, i_m]` with `self = s_{i_m} ⋯ s_{i_1}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        let n = self.n();
        'outer: while w.length() > 0 {
            for i in 1..n {
                if w.apply(i) > w.apply(i + 1) {
                    w = w.compose(&WeylElement::simple(n, i));
                    word.push(i);
                    continue 'outer;
                }
            }
        }
        word
    }

    /// The product `s_{i_m} ⋯ s_{i_1}` of a word `[i_1, …, i_m]`.
    pub fn from_word(n: usize, word: &[usize]) -> WeylElement {
        let mut w = WeylElement::identity(n);
        for &i in word {
            w = WeylElement::simple(n, i).compose(&w);
        }
        w
    }
}

/// `ω_{[k]} = ω_0 ω_0^k` where `ω_0^k` is the longest element of the
/// parabolic subgroup fixing `ω_k^∨`; returned with one reduced word.
pub fn omega_bracket(n: usize, k: usize) -> Result<(WeylElement, Vec<usize>)> {
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("omega_bracket needs 1 <= k < N, got k={k}, N={n}")));
    }
    let w0 = WeylElement::longest(n);
    let mut w0k = Vec::with_capacity(n);
    for i in 1..=n {
        w0k.push(if i <= k { k + 1 - i } else { n + k + 1 - i });
    }
    let w = w0.compose(&WeylElement { perm: w0k });
    let word = w.reduced_word();
    Ok((w, word))
}

/// The roots `α^1, …, α^m` of a reduced word, `α^p = s_{i_1} ⋯ s_{i_{p−1}} α_{i_p}`.
pub fn roots_of_reduced_word(n: usize, word: &[usize]) -> Result<Vec<Root>> {
    let mut u = WeylElement::identity(n);
    let mut out = Vec::with_capacity(word.len());
    for &i in word {
        if i == 0 || i >= n {
            return Err(Error::OutOfRange(format!("simple index {i} for N={n}")));
        }
        let (sign, r) = u.act_root(&Root::simple(i));
        if sign < 0 || out.contains(&r) {
            return Err(Error::NotReduced(format!("{word:?}")));
        }
        out.push(r);
        u = u.compose(&WeylElement::simple(n, i));
    }
    Ok(out)
}

/// The reduced word of `ω_0` whose root list is the given order reversed.
pub fn word_of_order(order: &NormalOrder) -> Result<Vec<usize>> {
    let n = order.n;
    let mut u = WeylElement::identity(n);
    let mut word = Vec::new();
    for r in order.roots.iter().rev() {
        let (sign, b) = u.inverse().act_root(r);
        if sign < 0 || !b.is_simple() {
            return Err(Error::NotReduced(format!("order {order} is not normal")));
        }
        word.push(b.k);
        u = u.compose(&WeylElement::simple(n, b.k));
    }
    Ok(word)
}

/// A linear order on the positive roots, listed largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalOrder {
    pub n: usize,
    pub roots: Vec<Root>,
}

impl NormalOrder {
    pub fn new(n: usize, roots: Vec<Root>) -> NormalOrder {
        NormalOrder { n, roots }
    }

    /// The standard order: `α_{k,l} ≻ α_{k',l'}` iff `l > l'`, or `l = l'` and `k > k'`.
    pub fn standard(n: usize) -> NormalOrder {
        let mut roots: Vec<Root> = RootSystemA::new(n).unwrap().positive.clone();
        roots.sort_by(|a, b| b.l.cmp(&a.l).then(b.k.cmp(&a.k)));
        NormalOrder { n, roots }
    }

    /// Position (0 = largest).
    pub fn position(&self, r: &Root) -> usize {
        self.roots.iter().position(|x| x == r).expect("root in order")
    }

    /// `a ≻ b`.
    pub fn greater(&self, a: &Root, b: &Root) -> bool {
        self.position(a) < self.position(b)
    }

    /// The normality predicate.
    pub fn is_normal(&self) -> bool {
        let pos: std::collections::HashMap<Root, usize> =
            self.roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        if pos.len() != self.n * (self.n - 1) / 2 {
            return false;
        }
        for a in &self.roots {
            for b in &self.roots {
                if let Some(s) = a.plus(b) {
                    let (pa, pb, ps) = (pos[a], pos[b], pos[&s]);
                    if !((pa < ps && ps < pb) || (pb < ps && ps < pa)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Number of `p`, `k < p < l`, with `α_{k,p} ≻ α_{p,l}`.
    pub fn sign_count(&self, r: &Root) -> usize {
        (r.k + 1..r.l)
            .filter(|&p| self.greater(&Root::new(r.k, p), &Root::new(p, r.l)))
            .count()
    }

    /// `(−1)^{a_{k,l}}` for every root, the sign of `F_{k,l}` for this order.
    pub fn sign_of(&self, r: &Root) -> i64 {
        if self.sign_count(r) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Applies an elementary transformation, returning the new order.
    pub fn apply(&self, t: &ElemTransform) -> NormalOrder {
        let mut roots = self.roots.clone();
        match t.kind {
            TransformKind::A1A1 => roots.swap(t.position, t.position + 1),
            TransformKind::A2 => roots.swap(t.position, t.position + 2),
        }
        NormalOrder { n: self.n, roots }
    }

    /// Parses the comma list `a(k,l),a(k,l),…`.
    pub fn parse(n: usize, s: &str) -> Result<NormalOrder> {
        let mut roots = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix("a(")
                .ok_or_else(|| Error::Parse(format!("bad order text {s}")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("bad order text {s}")))?;
            let (k, l) = body[..close]
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad order text {s}")))?;
            let k: usize = k.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            let l: usize = l.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            roots.push(Root::new(k, l));
            rest = body[close + 1..].trim_start_matches(',').trim();
        }
        Ok(NormalOrder { n, roots })
    }
}

impl fmt::Display for NormalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransformKind {
    A1A1,
    A2,
}

/// Reversal of an adjacent rank-2 subsystem starting at `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElemTransform {
    pub kind: TransformKind,
    pub position: usize,
    /// For `A2`: the middle root `α_{k,l}`.
    pub label: Option<(usize, usize)>,
}

/// The special normal order `≻_h`.
pub fn special_order(n: usize, h: usize) -> Result<NormalOrder> {
    if h == 0 || h >= n {
        return Err(Error::OutOfRange(format!("special order needs 1 <= h < N, got h={h}, N={n}")));
    }
    let all = RootSystemA::new(n)?.positive;
    let mut a: Vec<Root> = all.iter().filter(|r| r.k <= h && h < r.l).copied().collect();
    let mut b: Vec<Root> = all.iter().filter(|r| r.l <= h).copied().collect();
    let mut c: Vec<Root> = all.iter().filter(|r| h < r.k).copied().collect();
    a.sort_by(|x, y| x.l.cmp(&y.l).then(y.k.cmp(&x.k)));
    b.sort_by(|x, y| y.l.cmp(&x.l).then(y.k.cmp(&x.k)));
    c.sort_by(|x, y| x.k.cmp(&y.k).then(x.l.cmp(&y.l)));
    a.extend(b);
    a.extend(c);
    Ok(NormalOrder { n, roots: a })
}

/// Moves the root at `pos` one step to the left, recording the transform.
fn step_left(order: &mut NormalOrder, pos: usize, out: &mut Vec<ElemTransform>) -> Result<usize> {
    let x = order.roots[pos];
    let y = order.roots[pos - 1];
    if x.plus(&y).is_some() {
        return Err(Error::NotReduced(format!("adjacent {x} and {y} sum to a root")));
    }
    if let Some(z) = y.minus(&x) {
        if pos >= 2 && order.roots[pos - 2] == z {
            let t = ElemTransform {
                kind: TransformKind::A2,
                position: pos - 2,
                label: Some((y.k, y.l)),
            };
            *order = order.apply(&t);
            out.push(t);
            return Ok(pos - 2);
        }
        return Err(Error::NotReduced(format!("{x} cannot pass {y}")));
    }
    let t = ElemTransform {
        kind: TransformKind::A1A1,
        position: pos - 1,
        label: None,
    };
    *order = order.apply(&t);
    out.push(t);
    Ok(pos - 1)
}

fn step_right(order: &mut NormalOrder, pos: usize, out: &mut Vec<ElemTransform>) -> Result<usize> {
    let x = order.roots[pos];
    let y = order.roots[pos + 1];
    if x.plus(&y).is_some() || y.minus(&x).is_some() || x.minus(&y).is_some() {
        return Err(Error::NotReduced(format!("{x} cannot pass {y} by a commuting swap")));
    }
    let t = ElemTransform {
        kind: TransformKind::A1A1,
        position: pos,
        label: None,
    };
    *order = order.apply(&t);
    out.push(t);
    Ok(pos + 1)
}

/// The transformation schedule converting `≻_h` into `≻_{h−1}`.
///
/// Part one moves `α_{h−1,h}, α_{h−2,h}, …, α_{1,h}` (in that sequence) to
/// the left through `A_h`; part two moves `α_{h,N}, …, α_{h,h+1}` to the
/// right through `B_{h−1}`.
pub fn sigma_sequence(n: usize, h: usize) -> Result<Vec<ElemTransform>> {
    if h < 2 || h >= n {
        return Err(Error::OutOfRange(format!("sigma sequence needs 2 <= h < N, got h={h}, N={n}")));
    }
    let mut order = special_order(n, h)?;
    let mut out = Vec::new();
    let in_ah = |r: &Root| r.k <= h && h < r.l;
    for k in (1..h).rev() {
        let x = Root::new(k, h);
        let mut pos = order.position(&x);
        while pos > 0 && in_ah(&order.roots[pos - 1]) {
            pos = step_left(&mut order, pos, &mut out)?;
        }
    }
    let in_bh1 = |r: &Root| r.l < h;
    for l in (h + 1..=n).rev() {
        let x = Root::new(h, l);
        let mut pos = order.position(&x);
        while pos + 1 < order.roots.len() && in_bh1(&order.roots[pos + 1]) {
            pos = step_right(&mut order, pos, &mut out)?;
        }
    }
    // Remaining discrepancies are between commuting roots; settle them by A1⊕A1 swaps.
    let target = special_order(n, h - 1)?;
    for i in 0..target.roots.len() {
        let mut pos = order.position(&target.roots[i]);
        while pos > i {
            let (x, y) = (order.roots[pos], order.roots[pos - 1]);
            if x.plus(&y).is_some() || x.minus(&y).is_some() || y.minus(&x).is_some() {
                return Err(Error::NotReduced(format!("{x} cannot commute past {y}")));
            }
            pos = step_left(&mut order, pos, &mut out)?;
        }
    }
    Ok(out)
}

/// The intermediate orders `≻^0 = ≻_h, …, ≻^M = ≻_{h−1}`.
pub fn intermediate_orders(n: usize, h: usize) -> Result<Vec<NormalOrder>> {
    let seq = sigma_sequence(n, h)?;
    let mut cur = special_order(n, h)?;
    let mut out = vec![cur.clone()];
    for t in &seq {
        cur = cur.apply(t);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Closed form of `a_{k,l}(h)` for the special order `≻_h`.
pub fn sign_table_a(n: usize, h: usize) -> Result<Vec<((usize, usize), usize)>> {
    if h == 0 || h >= n {
        return Err(Error::OutOfRange(format!("h={h}, N={n}")));
    }
    let mut out = Vec::new();
    for k in 1..=n {
        for l in k + 1..=n {
            let a = if l <= h {
                0
            } else if h < k {
                l - k - 1
            } else {
                l - h - 1
            };
            out.push(((k, l), a));
        }
    }
    Ok(out)
}
