//! The universal enveloping algebra of `sl_N` (inside `gl_N`): words in the
//! matrix units `e_{k,l}`, PBW bases of `U(n₋)` attached to normal orders,
//! straightening of words acting on a highest-weight vector, basis changes
//! by elementary transformations, the Chevalley involution `τ` and the
//! antipode `A`.
//!
//! A PBW basis for a normal order `β_1 ≻ β_2 ≻ ⋯` consists of the signed
//! divided powers
//!
//! ```text
//! F_I = (−1)^{Σ i} ∏_p F_{β_p}^{i_p} / i_p!,   F_{k,l} = (−1)^{a_{k,l}} e_{l,k},
//! ```
//!
//! with the largest root on the left and `a_{k,l}` the number of `p`,
//! `k < p < l`, with `α_{k,p} ≻ α_{p,l}`. Internally the engine works with
//! the raw ordered products `∏ e_{−β_p}^{i_p}` and converts at the boundary.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::roots::{special_order, ElemTransform, NormalOrder, Root, TransformKind, WeightVec};
use crate::symexpr::{binomial, Int, Rf};

/// Exponents of a PBW monomial, indexed by position in the order (0 = largest).
pub type Mono = SmallVec<[u8; 16]>;

/// The matrix unit `e_{k,l}` of `gl_N` (1-based). `k == l` is the Cartan
/// element `e_{k,k}`; `k > l` spans `n₋`, `k < l` spans `n₊`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub k: usize,
    pub l: usize,
}

impl Gen {
    pub fn new(k: usize, l: usize) -> Gen {
        Gen { k, l }
    }

    /// `e_{−α}` for a positive root `α = α_{k,l}`, i.e. `e_{l,k}`.
    pub fn lowering(r: &Root) -> Gen {
        Gen { k: r.l, l: r.k }
    }

    /// `e_α = e_{k,l}`.
    pub fn raising(r: &Root) -> Gen {
        Gen { k: r.k, l: r.l }
    }

    pub fn is_lowering(&self) -> bool {
        self.k > self.l
    }

    pub fn is_raising(&self) -> bool {
        self.k < self.l
    }

    pub fn is_cartan(&self) -> bool {
        self.k == self.l
    }

    /// The positive root `α` with `self ∈ g_{±α}`.
    pub fn root(&self) -> Option<Root> {
        match self.k.cmp(&self.l) {
            std::cmp::Ordering::Less => Some(Root::new(self.k, self.l)),
            std::cmp::Ordering::Greater => Some(Root::new(self.l, self.k)),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// The transpose `e_{l,k}`, i.e. `(A∘τ)(e_{k,l})`.
    pub fn transpose(&self) -> Gen {
        Gen { k: self.l, l: self.k }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{},{}]", self.k, self.l)
    }
}

/// `[e_{k,l}, e_{k',l'}] = δ_{l,k'} e_{k,l'} − δ_{l',k} e_{k',l}` with integer coefficients.
pub fn bracket(a: Gen, b: Gen) -> SmallVec<[(Gen, i64); 2]> {
    let mut out: SmallVec<[(Gen, i64); 2]> = SmallVec::new();
    if a.l == b.k {
        out.push((Gen::new(a.k, b.l), 1));
    }
    if b.l == a.k {
        let g = Gen::new(b.k, a.l);
        if let Some(e) = out.iter_mut().find(|(x, _)| *x == g) {
            e.1 -= 1;
        } else {
            out.push((g, -1));
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

/// A letter of a word: a matrix unit or a simple coroot `H_i = e_{i,i} − e_{i+1,i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    E(usize, usize),
    H(usize),
}

impl Letter {
    /// The letter as a combination of matrix units.
    pub fn gens(&self) -> SmallVec<[(Gen, i64); 2]> {
        match *self {
            Letter::E(k, l) => smallvec::smallvec![(Gen::new(k, l), 1)],
            Letter::H(i) => smallvec::smallvec![(Gen::new(i, i), 1), (Gen::new(i + 1, i + 1), -1)],
        }
    }

    fn tau(&self) -> Letter {
        match *self {
            Letter::E(k, l) => Letter::E(l, k),
            Letter::H(i) => Letter::H(i),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(k, l) => write!(f, "e[{k},{l}]"),
            Letter::H(i) => write!(f, "H[{i}]"),
        }
    }
}

/// A coefficient times a product of letters (leftmost letter acts last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenWord {
    pub n: usize,
    pub letters: Vec<Letter>,
    pub coeff: Rf,
}

impl GenWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<GenWord> {
        for l in &letters {
            let ok = match *l {
                Letter::E(k, m) => k != m && (1..=n).contains(&k) && (1..=n).contains(&m),
                Letter::H(i) => (1..n).contains(&i),
            };
            if !ok {
                return Err(Error::OutOfRange(format!("letter {l} outside sl_{n}")));
            }
        }
        Ok(GenWord { n, letters, coeff: Rf::one() })
    }

    /// The Chevalley involution, letterwise `e_{k,l} ↦ −e_{l,k}`, `H ↦ −H`.
    pub fn tau(&self) -> GenWord {
        let sign = if self.letters.len() % 2 == 0 { 1 } else { -1 };
        GenWord {
            n: self.n,
            letters: self.letters.iter().map(Letter::tau).collect(),
            coeff: self.coeff.scale_int(sign),
        }
    }

    /// The antipode: reverse the letters and negate each one.
    pub fn antipode(&self) -> GenWord {
        let sign = if self.letters.len() % 2 == 0 { 1 } else { -1 };
        GenWord {
            n: self.n,
            letters: self.letters.iter().rev().copied().collect(),
            coeff: self.coeff.scale_int(sign),
        }
    }

    /// Expands the letters into signed words of matrix units.
    pub fn expand(&self) -> Vec<(Vec<Gen>, i64)> {
        let mut acc: Vec<(Vec<Gen>, i64)> = vec![(Vec::new(), 1)];
        for l in &self.letters {
            let mut next = Vec::new();
            for (w, c) in &acc {
                for (g, d) in l.gens() {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push((w2, c * d));
                }
            }
            acc = next;
        }
        acc
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coeff)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

type LowerMemo = HashMap<(usize, Mono), Arc<Vec<(Mono, i64)>>>;

/// A PBW basis of `U(n₋)` attached to a normal order, together with the
/// memo of left multiplications by root vectors.
pub struct PbwBasis {
    pub order: NormalOrder,
    signs: Vec<i64>,
    pos: HashMap<Root, usize>,
    memo: RwLock<LowerMemo>,
}

impl fmt::Debug for PbwBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PbwBasis({})", self.order)
    }
}

impl PbwBasis {
    pub fn new(order: NormalOrder) -> Result<Arc<PbwBasis>> {
        if !order.is_normal() {
            return Err(Error::NotReduced(format!("order {order} is not normal")));
        }
        let signs = order.roots.iter().map(|r| order.sign_of(r)).collect();
        let pos = order.roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        Ok(Arc::new(PbwBasis { order, signs, pos, memo: RwLock::new(HashMap::new()) }))
    }

    pub fn standard(n: usize) -> Arc<PbwBasis> {
        PbwBasis::new(NormalOrder::standard(n)).expect("standard order is normal")
    }

    pub fn special(n: usize, h: usize) -> Result<Arc<PbwBasis>> {
        PbwBasis::new(special_order(n, h)?)
    }

    pub fn n(&self) -> usize {
        self.order.n
    }

    pub fn len(&self) -> usize {
        self.order.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.roots.is_empty()
    }

    pub fn root(&self, p: usize) -> Root {
        self.order.roots[p]
    }

    pub fn position(&self, r: &Root) -> usize {
        self.pos[r]
    }

    /// The sign `(−1)^{a_β}` of the basis vector `F_β` at position `p`.
    pub fn sign(&self, p: usize) -> i64 {
        self.signs[p]
    }

    pub fn empty_mono(&self) -> Mono {
        smallvec::smallvec![0; self.len()]
    }

    /// The monomial with exponent `exps[(k,l)]` at root `α_{k,l}`.
    pub fn mono_from_map(&self, exps: &BTreeMap<(usize, usize), u8>) -> Mono {
        let mut m = self.empty_mono();
        for (&(k, l), &e) in exps {
            m[self.position(&Root::new(k, l))] = e;
        }
        m
    }

    /// The exponent map `(k,l) ↦ i_{l,k}` of a monomial.
    pub fn mono_to_map(&self, m: &Mono) -> BTreeMap<(usize, usize), u8> {
        m.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(p, &e)| {
                let r = self.root(p);
                ((r.k, r.l), e)
            })
            .collect()
    }

    pub fn degree(m: &Mono) -> usize {
        m.iter().map(|&e| e as usize).sum()
    }

    /// Simple-root coordinates of `Σ i_β β` (the monomial has weight minus this).
    pub fn depth(&self, m: &Mono) -> Vec<i64> {
        let mut out = vec![0i64; self.n() - 1];
        for (p, &e) in m.iter().enumerate() {
            let r = self.root(p);
            for x in &mut out[r.k - 1..r.l - 1] {
                *x += e as i64;
            }
        }
        out
    }

    /// The scalar `c_I` with `F_I = c_I · ∏ e_{−β}^{i_β}`.
    pub fn raw_scale(&self, m: &Mono) -> Rf {
        let mut sign = 1i64;
        let mut den = Int::ONE;
        for (p, &e) in m.iter().enumerate() {
            if e % 2 == 1 && self.signs[p] < 0 {
                sign = -sign;
            }
            if e % 2 == 1 {
                sign = -sign;
            }
            den = &den * &crate::symexpr::factorial(e as u32);
        }
        Rf::from_int(Int::from(sign)).div(&Rf::from_int(den)).expect("nonzero factorial")
    }

    /// The raw ordered letters of a monomial, left to right.
    pub fn letters(&self, m: &Mono) -> Vec<Gen> {
        let mut out = Vec::new();
        for (p, &e) in m.iter().enumerate() {
            for _ in 0..e {
                out.push(Gen::lowering(&self.root(p)));
            }
        }
        out
    }

    fn lead(m: &Mono) -> Option<usize> {
        m.iter().position(|&e| e > 0)
    }

    /// Left multiplication of the raw monomial `m` by `e_{−β_p}` in `U(n₋)`,
    /// re-expressed in raw ordered monomials.
    pub fn lower_mul(&self, p: usize, m: &Mono) -> Arc<Vec<(Mono, i64)>> {
        if let Some(r) = self.memo.read().get(&(p, m.clone())) {
            return r.clone();
        }
        let result = Arc::new(self.lower_mul_uncached(p, m));
        self.memo.write().insert((p, m.clone()), result.clone());
        result
    }

    fn lower_mul_uncached(&self, p: usize, m: &Mono) -> Vec<(Mono, i64)> {
        let lead = match Self::lead(m) {
            Some(q) if q < p => q,
            _ => {
                let mut m2 = m.clone();
                m2[p] += 1;
                return vec![(m2, 1)];
            }
        };
        let mut m1 = m.clone();
        m1[lead] -= 1;
        let mut acc: HashMap<Mono, i64> = HashMap::new();
        // e_γ e_β m₁ = e_β (e_γ m₁) + [e_γ, e_β] m₁
        for (mm, c) in self.lower_mul(p, &m1).iter() {
            for (m3, d) in self.lower_mul(lead, mm).iter() {
                *acc.entry(m3.clone()).or_default() += c * d;
            }
        }
        let g = Gen::lowering(&self.root(p));
        let b = Gen::lowering(&self.root(lead));
        for (h, c) in bracket(g, b) {
            let q = self.position(&h.root().expect("lowering bracket"));
            for (m3, d) in self.lower_mul(q, &m1).iter() {
                *acc.entry(m3.clone()).or_default() += c * d;
            }
        }
        let mut out: Vec<(Mono, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort();
        out
    }

    /// Multiplies raw letters (applied right to left) onto `1`, giving raw monomials.
    pub fn raw_product(&self, letters: &[Gen]) -> Vec<(Mono, i64)> {
        let mut cur: HashMap<Mono, i64> = HashMap::from([(self.empty_mono(), 1)]);
        for g in letters.iter().rev() {
            let p = self.position(&g.root().expect("lowering letter"));
            let mut next: HashMap<Mono, i64> = HashMap::new();
            for (m, c) in &cur {
                for (m2, d) in self.lower_mul(p, m).iter() {
                    *next.entry(m2.clone()).or_default() += c * d;
                }
            }
            next.retain(|_, c| *c != 0);
            cur = next;
        }
        let mut out: Vec<(Mono, i64)> = cur.into_iter().collect();
        out.sort();
        out
    }

    /// All monomials whose depth `Σ i_β β` has the given simple coordinates.
    pub fn monomials_of_depth(&self, coords: &[i64]) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = self.empty_mono();
        let mut rem = coords.to_vec();
        self.enum_rec(0, &mut cur, &mut rem, &mut out);
        out
    }

    fn enum_rec(&self, p: usize, cur: &mut Mono, rem: &mut Vec<i64>, out: &mut Vec<Mono>) {
        if p == self.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let r = self.root(p);
        let mut e = 0u8;
        loop {
            cur[p] = e;
            self.enum_rec(p + 1, cur, rem, out);
            if rem[r.k - 1..r.l - 1].iter().all(|&x| x > 0) {
                for x in &mut rem[r.k - 1..r.l - 1] {
                    *x -= 1;
                }
                e += 1;
            } else {
                break;
            }
        }
        for x in &mut rem[r.k - 1..r.l - 1] {
            *x += e as i64;
        }
        cur[p] = 0;
    }
}

type ActMemo = HashMap<(Gen, Mono), Arc<Vec<(Mono, Rf)>>>;

/// The action of `gl_N` on a module `U(n₋) v` generated by a highest-weight
/// vector `v` of weight `hw` (a Verma module, optionally truncated by total
/// degree, which for `sl_2` gives the irreducible `L_p`).
pub struct HighestWeightAction {
    pub basis: Arc<PbwBasis>,
    pub hw: WeightVec,
    pub max_degree: Option<usize>,
    memo: RwLock<ActMemo>,
}

impl fmt::Debug for HighestWeightAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HighestWeightAction({:?}, hw={:?})", self.basis, self.hw.eps)
    }
}

/// A vector `Σ c_m m·v` in raw monomial coordinates.
pub type RawVec = Vec<(Mono, Rf)>;

impl HighestWeightAction {
    pub fn new(basis: Arc<PbwBasis>, hw: WeightVec, max_degree: Option<usize>) -> Arc<HighestWeightAction> {
        Arc::new(HighestWeightAction { basis, hw, max_degree, memo: RwLock::new(HashMap::new()) })
    }

    /// The eigenvalue of `e_{k,k}` on `m·v`.
    pub fn cartan_eigenvalue(&self, k: usize, m: &Mono) -> Rf {
        let mut shift = 0i64;
        for (p, &e) in m.iter().enumerate() {
            let r = self.basis.root(p);
            if r.k == k {
                shift -= e as i64;
            }
            if r.l == k {
                shift += e as i64;
            }
        }
        self.hw.eps[k - 1].add(&Rf::from_i64(shift))
    }

    fn keep(&self, m: &Mono) -> bool {
        self.max_degree.is_none_or(|d| PbwBasis::degree(m) <= d)
    }

    /// `g · (m v)` in raw monomial coordinates.
    pub fn act(&self, g: Gen, m: &Mono) -> Arc<Vec<(Mono, Rf)>> {
        if g.is_raising() {
            if let Some(r) = self.memo.read().get(&(g, m.clone())) {
                return r.clone();
            }
        }
        let out = if g.is_cartan() {
            let c = self.cartan_eigenvalue(g.k, m);
            if c.is_zero() {
                vec![]
            } else {
                vec![(m.clone(), c)]
            }
        } else if g.is_lowering() {
            let p = self.basis.position(&g.root().unwrap());
            self.basis
                .lower_mul(p, m)
                .iter()
                .filter(|(mm, _)| self.keep(mm))
                .map(|(mm, c)| (mm.clone(), Rf::from_i64(*c)))
                .collect()
        } else {
            self.act_raising(g, m)
        };
        let out = Arc::new(out);
        if g.is_raising() {
            self.memo.write().insert((g, m.clone()), out.clone());
        }
        out
    }

    fn act_raising(&self, g: Gen, m: &Mono) -> Vec<(Mono, Rf)> {
        let Some(lead) = PbwBasis::lead(m) else {
            return vec![];
        };
        let mut m1 = m.clone();
        m1[lead] -= 1;
        let mut acc: HashMap<Mono, Rf> = HashMap::new();
        let push = |mm: &Mono, c: Rf, acc: &mut HashMap<Mono, Rf>| {
            let e = acc.entry(mm.clone()).or_insert_with(Rf::zero);
            *e = e.add(&c);
        };
        for (mm, c) in self.act(g, &m1).iter() {
            for (m3, d) in self.basis.lower_mul(lead, mm).iter() {
                if self.keep(m3) {
                    push(m3, c.scale_int(*d), &mut acc);
                }
            }
        }
        let b = Gen::lowering(&self.basis.root(lead));
        for (h, c) in bracket(g, b) {
            for (m3, d) in self.act(h, &m1).iter() {
                push(m3, d.scale_int(c), &mut acc);
            }
        }
        let mut out: Vec<(Mono, Rf)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Applies a matrix unit to a raw vector.
    pub fn act_vec(&self, g: Gen, v: &[(Mono, Rf)]) -> RawVec {
        let mut acc: HashMap<Mono, Vec<Rf>> = HashMap::new();
        for (m, c) in v {
            for (m2, d) in self.act(g, m).iter() {
                acc.entry(m2.clone()).or_default().push(c.mul(d));
            }
        }
        collect_sum(acc)
    }

    /// Applies a word (rightmost letter first) to a raw vector.
    pub fn apply_word(&self, w: &GenWord, v: &[(Mono, Rf)]) -> RawVec {
        let mut total: HashMap<Mono, Vec<Rf>> = HashMap::new();
        for (gens, sign) in w.expand() {
            let mut cur: RawVec = v.to_vec();
            for g in gens.iter().rev() {
                cur = self.act_vec(*g, &cur);
            }
            for (m, c) in cur {
                total.entry(m).or_default().push(c.scale_int(sign).mul(&w.coeff));
            }
        }
        collect_sum(total)
    }

    /// Rewrites `w · v` as an element of `U(n₋)` applied to `v`, in the signed
    /// divided-power basis.
    pub fn straighten(&self, w: &GenWord) -> UEAElement {
        let raw = self.apply_word(w, &[(self.basis.empty_mono(), Rf::one())]);
        UEAElement::from_raw(self.basis.clone(), raw)
    }
}

pub(crate) fn collect_sum(acc: HashMap<Mono, Vec<Rf>>) -> RawVec {
    let mut out: RawVec = acc
        .into_iter()
        .map(|(m, cs)| (m, Rf::sum(cs.iter())))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// An element `Σ c_I F_I` of `U(n₋)` in the PBW basis of an order, or, when
/// `raised` is set, its image `τ(Σ c_I F_I)` in `U(n₊)`.
#[derive(Clone, Debug)]
pub struct UEAElement {
    pub basis: Arc<PbwBasis>,
    pub terms: BTreeMap<Mono, Rf>,
    pub raised: bool,
}

impl PartialEq for UEAElement {
    fn eq(&self, other: &UEAElement) -> bool {
        self.basis.order == other.basis.order && self.raised == other.raised && self.terms == other.terms
    }
}

impl UEAElement {
    pub fn zero(basis: Arc<PbwBasis>) -> UEAElement {
        UEAElement { basis, terms: BTreeMap::new(), raised: false }
    }

    /// A single basis element `F_I`.
    pub fn monomial(basis: Arc<PbwBasis>, m: Mono) -> UEAElement {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rf::one());
        UEAElement { basis, terms, raised: false }
    }

    pub fn from_terms(basis: Arc<PbwBasis>, terms: impl IntoIterator<Item = (Mono, Rf)>) -> UEAElement {
        let mut t: BTreeMap<Mono, Rf> = BTreeMap::new();
        for (m, c) in terms {
            let e = t.entry(m).or_insert_with(Rf::zero);
            *e = e.add(&c);
        }
        t.retain(|_, c| !c.is_zero());
        UEAElement { basis, terms: t, raised: false }
    }

    /// Converts raw-monomial coordinates to the signed divided-power basis.
    pub fn from_raw(basis: Arc<PbwBasis>, raw: RawVec) -> UEAElement {
        let terms = raw
            .into_iter()
            .map(|(m, c)| {
                let s = basis.raw_scale(&m);
                let x = c.div(&s).expect("nonzero scale");
                (m, x)
            })
            .collect::<Vec<_>>();
        UEAElement::from_terms(basis, terms)
    }

    /// Raw-monomial coordinates.
    pub fn to_raw(&self) -> RawVec {
        self.terms.iter().map(|(m, c)| (m.clone(), c.mul(&self.basis.raw_scale(m)))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &UEAElement) -> UEAElement {
        assert_eq!(self.basis.order, o.basis.order);
        assert_eq!(self.raised, o.raised);
        let mut r = UEAElement::from_terms(self.basis.clone(), self.terms.clone().into_iter().chain(o.terms.clone()));
        r.raised = self.raised;
        r
    }

    pub fn scale(&self, c: &Rf) -> UEAElement {
        let mut r = UEAElement::from_terms(self.basis.clone(), self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))));
        r.raised = self.raised;
        r
    }

    /// Applies a coefficient map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Rf) -> Result<Rf>) -> Result<UEAElement> {
        let mut r = UEAElement::from_terms(
            self.basis.clone(),
            self.terms.iter().map(|(m, x)| Ok((m.clone(), f(x)?))).collect::<Result<Vec<_>>>()?,
        );
        r.raised = self.raised;
        Ok(r)
    }

    /// The element as a sum of signed raw words of matrix units (leftmost acts last).
    pub fn words(&self) -> Vec<(Vec<Gen>, Rf)> {
        self.to_raw()
            .into_iter()
            .map(|(m, c)| {
                let letters = self.basis.letters(&m);
                if self.raised {
                    let sign = if letters.len() % 2 == 0 { 1 } else { -1 };
                    (letters.iter().map(Gen::transpose).collect(), c.scale_int(sign))
                } else {
                    (letters, c)
                }
            })
            .collect()
    }

    /// The Chevalley involution.
    pub fn tau(&self) -> UEAElement {
        let mut r = self.clone();
        r.raised = !r.raised;
        r
    }

    /// The antipode, re-expressed in the same basis.
    pub fn antipode(&self) -> UEAElement {
        let mut acc: Vec<(Mono, Rf)> = Vec::new();
        for (m, c) in self.to_raw() {
            let mut letters = self.basis.letters(&m);
            letters.reverse();
            let sign = if letters.len() % 2 == 0 { 1 } else { -1 };
            for (m2, d) in self.basis.raw_product(&letters) {
                acc.push((m2, c.scale_int(sign * d)));
            }
        }
        let mut r = UEAElement::from_raw(self.basis.clone(), sum_raw(acc));
        r.raised = self.raised;
        r
    }

    /// Re-expresses the element in another PBW basis by multiplying out the
    /// raw products in the target order (reference implementation).
    pub fn change_basis_direct(&self, target: &Arc<PbwBasis>) -> UEAElement {
        let mut acc: Vec<(Mono, Rf)> = Vec::new();
        for (m, c) in self.to_raw() {
            for (m2, d) in target.raw_product(&self.basis.letters(&m)) {
                acc.push((m2, c.scale_int(d)));
            }
        }
        let mut r = UEAElement::from_raw(target.clone(), sum_raw(acc));
        r.raised = self.raised;
        r
    }

    /// Applies one elementary transformation of the order, using the
    /// `A_1⊕A_1` commutation and the `A_2` binomial identity.
    pub fn apply_transform(&self, t: &ElemTransform) -> Result<UEAElement> {
        let old = &self.basis;
        let new = PbwBasis::new(old.order.apply(t))?;
        let p = t.position;
        let mut out: Vec<(Mono, Rf)> = Vec::new();
        // Per-root rescaling between the old signed vectors and the new ones,
        // for roots untouched by the transform (always +1 for a normal order
        // pair, kept general for safety).
        let ratio = |m: &Mono| -> i64 {
            let mut s = 1i64;
            for (q, &e) in m.iter().enumerate() {
                if e % 2 == 1 {
                    let r = new.root(q);
                    s *= old.sign(old.position(&r)) * new.sign(q);
                }
            }
            s
        };
        match t.kind {
            TransformKind::A1A1 => {
                let (x, y) = (old.root(p), old.root(p + 1));
                if !orthogonal(&x, &y) {
                    return Err(Error::NotReduced(format!("{x} and {y} do not commute")));
                }
                for (m, c) in &self.terms {
                    let mut m2 = m.clone();
                    m2.swap(p, p + 1);
                    out.push((m2.clone(), c.scale_int(ratio(&m2))));
                }
            }
            TransformKind::A2 => {
                let (r1, r2, r3) = (old.root(p), old.root(p + 1), old.root(p + 2));
                if r1.plus(&r3) != Some(r2) {
                    return Err(Error::NotReduced(format!("{r1},{r2},{r3} is not an A2 triple")));
                }
                // [F1, F3] = ε F2 in the old basis.
                let kappa = bracket(Gen::lowering(&r1), Gen::lowering(&r3))
                    .into_iter()
                    .find(|(g, _)| *g == Gen::lowering(&r2))
                    .map(|(_, c)| c)
                    .ok_or_else(|| Error::NotReduced("bracket mismatch".into()))?;
                let (s1, s2, s3) = (old.sign(p), old.sign(p + 1), old.sign(p + 2));
                let eps = s1 * s3 * kappa * s2;
                // Lemma vectors in the new order: G3 = F3(old), G2 = ε⁻¹[G3, G1] = −s2 e, G1 = F1(old).
                let g_over_new = [s3 * new.sign(p), -s2 * new.sign(p + 1), s1 * new.sign(p + 2)];
                for (m, c) in &self.terms {
                    let (a, cc, b) = (m[p] as i64, m[p + 1] as i64, m[p + 2] as i64);
                    for q in 0..=a.min(b) {
                        let mut m2 = m.clone();
                        m2[p] = (b - q) as u8;
                        m2[p + 1] = (cc + q) as u8;
                        m2[p + 2] = (a - q) as u8;
                        let mut coef = binomial((cc + q) as u32, q as u32);
                        let mut sign = if cc % 2 == 0 { 1 } else { -1 };
                        if q % 2 == 1 {
                            sign *= eps;
                        }
                        for (i, &e) in [b - q, cc + q, a - q].iter().enumerate() {
                            if e % 2 == 1 {
                                sign *= g_over_new[i];
                            }
                        }
                        let mut outer = m2.clone();
                        outer[p] = 0;
                        outer[p + 1] = 0;
                        outer[p + 2] = 0;
                        sign *= ratio(&outer);
                        coef = &coef * &Int::from(sign);
                        out.push((m2, c.mul(&Rf::from_int(coef))));
                    }
                }
            }
        }
        let mut r = UEAElement::from_terms(new, out);
        r.raised = self.raised;
        Ok(r)
    }

    /// Re-expresses the element in the basis of `target` by a chain of
    /// elementary transformations.
    pub fn change_pbw_basis(&self, target: &Arc<PbwBasis>) -> Result<UEAElement> {
        let path = transform_path(&self.basis.order, &target.order)?;
        let mut cur = self.clone();
        for t in &path {
            cur = cur.apply_transform(t)?;
        }
        let mut r = UEAElement::from_terms(target.clone(), cur.terms);
        r.raised = self.raised;
        Ok(r)
    }

    /// The simple-root coordinates of the (negated) weight, if homogeneous.
    pub fn homogeneous_depth(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| self.basis.depth(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

fn sum_raw(items: Vec<(Mono, Rf)>) -> RawVec {
    let mut acc: HashMap<Mono, Vec<Rf>> = HashMap::new();
    for (m, c) in items {
        acc.entry(m).or_default().push(c);
    }
    collect_sum(acc)
}

impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.raised {
            f.write_str("tau(")?;
        }
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let s: usize = PbwBasis::degree(m);
            write!(f, "{c} * (-1)^{s} *")?;
            if s == 0 {
                f.write_str(" 1")?;
            }
            for (p, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let r = self.basis.root(p);
                let sign = if self.basis.sign(p) < 0 { "-" } else { "" };
                if e == 1 {
                    write!(f, " {sign}e[{},{}]", r.l, r.k)?;
                } else {
                    write!(f, " ({sign}e[{},{}])^{e}/{e}!", r.l, r.k)?;
                }
            }
        }
        write!(f, " @ order({})", self.basis.order)?;
        if self.raised {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Two roots spanning an `A_1⊕A_1` subsystem: neither their sum nor their difference is a root.
fn orthogonal(x: &Root, y: &Root) -> bool {
    x.plus(y).is_none() && x.minus(y).is_none() && y.minus(x).is_none()
}

/// All elementary transformations applicable to a normal order.
pub fn elementary_transforms(order: &NormalOrder) -> Vec<ElemTransform> {
    let r = &order.roots;
    let mut out = Vec::new();
    for p in 0..r.len().saturating_sub(1) {
        if orthogonal(&r[p], &r[p + 1]) {
            out.push(ElemTransform { kind: TransformKind::A1A1, position: p, label: None });
        }
        if p + 2 < r.len() && r[p].plus(&r[p + 2]) == Some(r[p + 1]) {
            let mid = r[p + 1];
            out.push(ElemTransform { kind: TransformKind::A2, position: p, label: Some((mid.k, mid.l)) });
        }
    }
    out
}

/// A sequence of elementary transformations from `from` to `to`: the σ
/// schedules between special orders when both are special, otherwise a
/// breadth-first search.
pub fn transform_path(from: &NormalOrder, to: &NormalOrder) -> Result<Vec<ElemTransform>> {
    if from.n != to.n {
        return Err(Error::OutOfRange("orders over different N".into()));
    }
    if from == to {
        return Ok(Vec::new());
    }
    let n = from.n;
    let which = |o: &NormalOrder| (1..n).find(|&h| special_order(n, h).map(|s| &s == o).unwrap_or(false));
    if let (Some(a), Some(b)) = (which(from), which(to)) {
        let mut path = Vec::new();
        if a > b {
            for h in ((b + 1)..=a).rev() {
                path.extend(crate::roots::sigma_sequence(n, h)?);
            }
        } else {
            for h in (a + 1)..=b {
                // Reverse the σ schedule: the inverse of each step is the same kind
                // at the same position on the transformed order.
                let seq = crate::roots::sigma_sequence(n, h)?;
                path.extend(seq.into_iter().rev());
            }
        }
        return Ok(path);
    }
    let mut prev: HashMap<Vec<Root>, (Vec<Root>, ElemTransform)> = HashMap::new();
    let mut seen: HashSet<Vec<Root>> = HashSet::from([from.roots.clone()]);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(o) = queue.pop_front() {
        if o == *to {
            let mut path = Vec::new();
            let mut cur = o.roots.clone();
            while cur != from.roots {
                let (p, t) = prev[&cur].clone();
                path.push(t);
                cur = p;
            }
            path.reverse();
            return Ok(path);
        }
        for t in elementary_transforms(&o) {
            let next = o.apply(&t);
            if seen.insert(next.roots.clone()) {
                prev.insert(next.roots.clone(), (o.roots.clone(), t));
                queue.push_back(next);
            }
        }
    }
    Err(Error::NotReduced(format!("no transformation path from {from} to {to}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{sym, Symbol};

    fn sl2() -> Arc<HighestWeightAction> {
        HighestWeightAction::new(PbwBasis::standard(2), WeightVec::symbolic(2, |k| Symbol::new(&format!("l{k}"))), None)
    }

    #[test]
    fn bracket_table() {
        assert_eq!(bracket(Gen::new(1, 2), Gen::new(2, 1)).to_vec(), vec![(Gen::new(1, 1), 1), (Gen::new(2, 2), -1)]);
        assert_eq!(bracket(Gen::new(1, 2), Gen::new(2, 3)).to_vec(), vec![(Gen::new(1, 3), 1)]);
        assert_eq!(bracket(Gen::new(2, 3), Gen::new(1, 2)).to_vec(), vec![(Gen::new(1, 3), -1)]);
        assert!(bracket(Gen::new(1, 2), Gen::new(1, 3)).is_empty());
        assert!(bracket(Gen::new(1, 1), Gen::new(1, 1)).is_empty());
    }

    #[test]
    fn sl2_relations() {
        let v = sl2();
        let w = GenWord::new(2, vec![Letter::E(1, 2), Letter::E(2, 1)]).unwrap();
        let x = v.straighten(&w);
        assert_eq!(x.terms.len(), 1);
        assert_eq!(x.terms.values().next().unwrap(), &sym("l1"));
        let w = GenWord::new(2, vec![Letter::E(1, 2), Letter::E(1, 2), Letter::E(2, 1), Letter::E(2, 1)]).unwrap();
        let x = v.straighten(&w);
        let expect = sym("l1").mul(&sym("l1").sub(&Rf::one())).scale_int(2);
        assert_eq!(x.terms.values().next().unwrap(), &expect);
        let w = GenWord::new(2, vec![Letter::H(1), Letter::E(2, 1)]).unwrap();
        let x = v.straighten(&w);
        // H F v = (l1 − 2) F v and F = −e21 in the signed basis.
        assert_eq!(x.terms.values().next().unwrap(), &sym("l1").sub(&Rf::from_i64(2)).neg());
    }

    #[test]
    fn sl3_commutator_gives_the_long_root() {
        let v = HighestWeightAction::new(PbwBasis::standard(3), WeightVec::symbolic(3, |k| Symbol::new(&format!("l{k}"))), None);
        let a = v.apply_word(&GenWord::new(3, vec![Letter::E(2, 1), Letter::E(3, 2)]).unwrap(), &[(v.basis.empty_mono(), Rf::one())]);
        let b = v.apply_word(&GenWord::new(3, vec![Letter::E(3, 2), Letter::E(2, 1)]).unwrap(), &[(v.basis.empty_mono(), Rf::one())]);
        let c = v.apply_word(&GenWord::new(3, vec![Letter::E(3, 1)]).unwrap(), &[(v.basis.empty_mono(), Rf::one())]);
        let diff: Vec<_> = {
            let mut acc: HashMap<Mono, Vec<Rf>> = HashMap::new();
            for (m, x) in a {
                acc.entry(m).or_default().push(x);
            }
            for (m, x) in b {
                acc.entry(m).or_default().push(x.neg());
            }
            for (m, x) in c {
                acc.entry(m).or_default().push(x);
            }
            collect_sum(acc)
        };
        // e21 e32 − e32 e21 = [e21, e32] = −e31
        assert!(diff.is_empty(), "{diff:?}");
    }

    #[test]
    fn tau_and_antipode_on_words() {
        let w = GenWord::new(3, vec![Letter::E(2, 1), Letter::E(3, 2), Letter::H(1)]).unwrap();
        assert_eq!(w.tau().tau(), w);
        assert_eq!(w.antipode().antipode(), w);
        let a = GenWord::new(3, vec![Letter::E(2, 1), Letter::E(3, 2)]).unwrap().antipode();
        assert_eq!(a.letters, vec![Letter::E(3, 2), Letter::E(2, 1)]);
        assert_eq!(a.coeff, Rf::one());
        let t = GenWord::new(2, vec![Letter::E(2, 1); 3]).unwrap().tau();
        assert_eq!(t.letters, vec![Letter::E(1, 2); 3]);
        assert_eq!(t.coeff, Rf::from_i64(-1));
    }

    #[test]
    fn text_format_is_deterministic() {
        let b = PbwBasis::special(3, 1).unwrap();
        let m = b.mono_from_map(&BTreeMap::from([((1, 3), 2), ((1, 2), 1)]));
        let x = UEAElement::monomial(b, m);
        assert_eq!(x.to_string(), "1 * (-1)^3 * e[2,1] (-e[3,1])^2/2! @ order(a(1,2),a(1,3),a(2,3))");
    }
}
