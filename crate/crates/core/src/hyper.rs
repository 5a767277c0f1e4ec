//! The hypergeometric layer: master-function exponents, strings, trees and
//! forests, the rational functions `φ(I)`, `φ(I, h)`, `φ(I; ≻^p)`, and exact
//! checks of the identities relating them.
//!
//! Integration variables are the symbols `t:k:d` (colour `k`, copy `d`);
//! positions are `z:j`. A variable assignment ("bijection") is canonical:
//! colours are filled in order of tensor slot, then string creation
//! (roots in lexicographic `(k, l)` order, copies in order).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamical::{in_index_set_a, z_symbol};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rep::{lambda_symbol, TensorModule};
use crate::roots::{intermediate_orders, sigma_sequence, Root, TransformKind, WeightVec};
use crate::symexpr::{binomial, factorial, permutations, Rf, Symbol};
use crate::uea::{Mono, PbwBasis, UEAElement};

/// The integration variable `t_k^{(d)}`.
pub fn t_symbol(k: usize, d: usize) -> Symbol {
    Symbol::new(&format!("t:{k}:{d}"))
}

/// Exponents `(k, l) ↦ i_{l,k}` of one tensor factor of an index `I`.
pub type IndexMap = BTreeMap<(usize, usize), u8>;

/// The endpoint of a grounded string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ground {
    /// The position `z_j` (1-based).
    Point(usize),
    /// The origin, used for the auxiliary factor placed at `z_{n+1} = 0`.
    Zero,
}

impl Ground {
    pub fn value(&self) -> Rf {
        match self {
            Ground::Point(j) => Rf::sym(z_symbol(*j)),
            Ground::Zero => Rf::zero(),
        }
    }
}

/// Which family of PBW bases and strings is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    /// The standard order (equal to `≻_{N−1}`).
    Standard,
    /// The special order `≻_h`.
    Special(usize),
    /// The intermediate order `≻^p` between `≻_h` and `≻_{h−1}`.
    Interp { h: usize, p: usize },
}

/// For each root type, the order `≻_{h'}` whose string shape is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringRule {
    pub default_h: usize,
    pub switched: Vec<(usize, usize)>,
    pub switched_h: usize,
}

impl StringRule {
    pub fn uniform(h: usize) -> StringRule {
        StringRule { default_h: h, switched: Vec::new(), switched_h: h }
    }

    pub fn h_for(&self, k: usize, l: usize) -> usize {
        if self.switched.contains(&(k, l)) {
            self.switched_h
        } else {
            self.default_h
        }
    }
}

/// Pairs `(k, l)` labelling the `A₂` transformations among the first `p` steps from `≻_h` to `≻_{h−1}`.
pub fn switched_pairs(n: usize, h: usize, p: usize) -> Result<Vec<(usize, usize)>> {
    let seq = sigma_sequence(n, h)?;
    if p > seq.len() {
        return Err(Error::OutOfRange(format!("step {p} beyond the {} transformations", seq.len())));
    }
    Ok(seq[..p].iter().filter(|t| t.kind == TransformKind::A2).filter_map(|t| t.label).collect())
}

impl Flavor {
    pub fn basis(&self, n: usize) -> Result<Arc<PbwBasis>> {
        match *self {
            Flavor::Standard => Ok(PbwBasis::standard(n)),
            Flavor::Special(h) => PbwBasis::special(n, h),
            Flavor::Interp { h, p } => {
                let orders = intermediate_orders(n, h)?;
                let o = orders.get(p).ok_or_else(|| Error::OutOfRange(format!("no intermediate order {p}")))?;
                PbwBasis::new(o.clone())
            }
        }
    }

    pub fn rule(&self, n: usize) -> Result<StringRule> {
        match *self {
            Flavor::Standard => Ok(StringRule::uniform(n - 1)),
            Flavor::Special(h) => {
                if h == 0 || h >= n {
                    return Err(Error::OutOfRange(format!("h={h} for N={n}")));
                }
                Ok(StringRule::uniform(h))
            }
            Flavor::Interp { h, p } => {
                Ok(StringRule { default_h: h, switched: switched_pairs(n, h, p)?, switched_h: h - 1 })
            }
        }
    }
}

/// A string of type `(l, k)` for `≻_h`, grounded at a point: vertices
/// `k, …, l−1` joined in a chain, and one edge from the vertex `attach` to the ground.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringGraph {
    pub k: usize,
    pub l: usize,
    pub order_h: usize,
    pub ground: Ground,
    pub attach: usize,
    pub sign: i64,
    /// Variable names for the vertices `k, …, l−1`.
    pub vars: Vec<String>,
}

/// The attachment vertex and sign of a string of type `(l, k)` for `≻_h`.
pub fn string_attachment(k: usize, l: usize, h: usize) -> (usize, i64) {
    let parity = |e: usize| if e % 2 == 0 { 1 } else { -1 };
    if l <= h {
        (l - 1, 1)
    } else if k <= h {
        (h, parity(l - 1 - h))
    } else {
        (k, parity(l - 1 - k))
    }
}

impl StringGraph {
    pub fn new(k: usize, l: usize, h: usize, ground: Ground, vars: Vec<String>) -> StringGraph {
        let (attach, sign) = string_attachment(k, l, h);
        StringGraph { k, l, order_h: h, ground, attach, sign, vars }
    }

    fn var(&self, label: usize) -> Rf {
        Rf::sym(Symbol::new(&self.vars[label - self.k]))
    }

    /// Oriented edges as `(tail, head)` values.
    pub fn edges(&self) -> Vec<(Rf, Rf)> {
        let mut out: Vec<(Rf, Rf)> = (self.k..self.l - 1).map(|p| (self.var(p), self.var(p + 1))).collect();
        out.push((self.var(self.attach), self.ground.value()));
        out
    }

    /// The signed product of the edge functions `1/(tail − head)`.
    pub fn rational_function(&self) -> Rf {
        let den = self.edges().iter().fold(Rf::one(), |acc, (a, b)| acc.mul(&a.sub(b)));
        Rf::from_i64(self.sign).div(&den).expect("edge endpoints are distinct symbols")
    }

    /// The same string re-grounded at another point.
    pub fn regrounded(&self, ground: Ground) -> StringGraph {
        StringGraph { ground, ..self.clone() }
    }
}

/// The strings of one tensor factor, all sharing their ground.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    pub ground: Ground,
    pub strings: Vec<StringGraph>,
}

/// A disjoint union of trees with a global variable assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Forest {
    pub trees: Vec<Tree>,
}

impl Forest {
    pub fn rational_function(&self) -> Rf {
        let fs: Vec<Rf> = self.trees.iter().flat_map(|t| t.strings.iter().map(StringGraph::rational_function)).collect();
        fs.iter().fold(Rf::one(), |a, b| a.mul(b))
    }

    pub fn strings(&self) -> impl Iterator<Item = &StringGraph> {
        self.trees.iter().flat_map(|t| t.strings.iter())
    }

    /// All variable names in assignment order.
    pub fn variables(&self) -> Vec<String> {
        self.strings().flat_map(|s| s.vars.iter().cloned()).collect()
    }
}

/// Builds the forest `T(I, ·)` with canonical variable assignment; variable
/// numbering for colour `p` starts after `offsets[p − 1]`.
pub fn build_forest_from(
    n: usize,
    rule: &StringRule,
    index: &[IndexMap],
    grounds: &[Ground],
    offsets: &[usize],
) -> Forest {
    let mut counters = vec![0usize; n];
    for (p, &o) in offsets.iter().enumerate() {
        counters[p + 1] = o;
    }
    let trees = index
        .iter()
        .zip(grounds)
        .map(|(map, &ground)| {
            let mut strings = Vec::new();
            for (&(k, l), &c) in map {
                for _ in 0..c {
                    let vars = (k..l)
                        .map(|p| {
                            counters[p] += 1;
                            format!("t:{p}:{}", counters[p])
                        })
                        .collect();
                    strings.push(StringGraph::new(k, l, rule.h_for(k, l), ground, vars));
                }
            }
            Tree { ground, strings }
        })
        .collect();
    Forest { trees }
}

pub fn build_forest(n: usize, rule: &StringRule, index: &[IndexMap], grounds: &[Ground]) -> Forest {
    build_forest_from(n, rule, index, grounds, &[])
}

/// `φ(I)` (standard), `φ(I, h)` or `φ(I; ≻^p)` for an index given by exponent maps.
pub fn phi_of_index(n: usize, flavor: Flavor, index: &[IndexMap], grounds: &[Ground]) -> Result<Rf> {
    Ok(build_forest(n, &flavor.rule(n)?, index, grounds).rational_function())
}

/// The grounds `z_1, …, z_count`.
pub fn point_grounds(count: usize) -> Vec<Ground> {
    (1..=count).map(Ground::Point).collect()
}

/// The colour groups `{t_p^{(1)}, …, t_p^{(m_p)}}`.
pub fn color_groups(nu0: &[i64]) -> Vec<Vec<Symbol>> {
    nu0.iter().enumerate().map(|(i, &m)| (1..=m.max(0) as usize).map(|d| t_symbol(i + 1, d)).collect()).collect()
}

/// The formal sum `Σ_I φ(I, ·) F_I(·) v` on `V[ν₀]` for `slots` Verma modules.
#[derive(Clone, Debug)]
pub struct PhiVector {
    pub n: usize,
    pub flavor: Flavor,
    pub nu0: Vec<i64>,
    pub basis: Arc<PbwBasis>,
    /// `(index in the flavour's basis, coefficient function)`.
    pub terms: Vec<(Vec<Mono>, Rf)>,
}

pub fn phi_vector(n: usize, slots: usize, nu0: &[i64], flavor: Flavor) -> Result<PhiVector> {
    let basis = flavor.basis(n)?;
    let rule = flavor.rule(n)?;
    let module = TensorModule::symbolic_vermas(n, slots, basis.clone())?;
    let sp = module.space(nu0);
    let grounds = point_grounds(slots);
    let terms = sp
        .elems
        .par_iter()
        .map(|e| {
            let maps: Vec<IndexMap> = e.iter().map(|m| basis.mono_to_map(m)).collect();
            (e.clone(), build_forest(n, &rule, &maps, &grounds).rational_function())
        })
        .collect();
    Ok(PhiVector { n, flavor, nu0: nu0.to_vec(), basis, terms })
}

impl PhiVector {
    /// Re-expresses the vector in the standard PBW basis (per tensor factor).
    pub fn to_standard(&self) -> Result<BTreeMap<Vec<Mono>, Rf>> {
        let std = PbwBasis::standard(self.n);
        let mut out: BTreeMap<Vec<Mono>, Vec<Rf>> = BTreeMap::new();
        if self.basis.order == std.order {
            for (e, c) in &self.terms {
                out.entry(e.clone()).or_default().push(c.clone());
            }
        } else {
            let mut memo: HashMap<Mono, Vec<(Mono, Rf)>> = HashMap::new();
            for (e, _) in &self.terms {
                for m in e {
                    if !memo.contains_key(m) {
                        let x = UEAElement::monomial(self.basis.clone(), m.clone()).change_pbw_basis(&std)?;
                        memo.insert(m.clone(), x.terms.into_iter().collect());
                    }
                }
            }
            for (e, c) in &self.terms {
                let mut partial: Vec<(Vec<Mono>, Rf)> = vec![(Vec::new(), c.clone())];
                for m in e {
                    let exp = &memo[m];
                    partial = partial
                        .iter()
                        .flat_map(|(pre, x)| {
                            exp.iter().map(move |(m2, d)| {
                                let mut p = pre.clone();
                                p.push(m2.clone());
                                (p, x.mul(d))
                            })
                        })
                        .collect();
                }
                for (k, v) in partial {
                    out.entry(k).or_default().push(v);
                }
            }
        }
        Ok(out.into_iter().map(|(k, v)| (k, Rf::sum(v.iter()))).filter(|(_, c)| !c.is_zero()).collect())
    }
}

/// The verdicts of an identity of rational functions, with and without
/// averaging over permutations of same-colour variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub nu0: Vec<i64>,
    pub components: usize,
    pub raw_equal: bool,
    pub symmetrized_equal: bool,
    pub raw_witness: Option<String>,
    pub symmetrized_witness: Option<String>,
    /// How the symmetrized comparison was decided.
    pub symmetrization: SymmetrizationMethod,
}

/// Averaging over colour permutations is done symbolically for small groups;
/// beyond [`SYMBOLIC_PERMUTATION_LIMIT`] permutations the average is evaluated
/// exactly at seeded random rational points (a Schwartz–Zippel test).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetrizationMethod {
    Symbolic,
    Sampled { points: usize },
}

pub const SYMBOLIC_PERMUTATION_LIMIT: usize = 24;
const SAMPLE_POINTS: usize = 4;

fn permutation_count(d: &Rf, groups: &[Vec<Symbol>]) -> usize {
    groups
        .iter()
        .filter(|g| g.iter().any(|s| d.contains(*s)))
        .map(|g| (1..=g.len()).product::<usize>())
        .product()
}

/// Whether the average of `d` over per-group permutations vanishes.
pub fn symmetrized_vanishes(d: &Rf, groups: &[Vec<Symbol>]) -> (bool, SymmetrizationMethod) {
    if d.is_zero() {
        return (true, SymmetrizationMethod::Symbolic);
    }
    if permutation_count(d, groups) <= SYMBOLIC_PERMUTATION_LIMIT {
        return (d.symmetrize(groups).is_zero(), SymmetrizationMethod::Symbolic);
    }
    let groups: Vec<&Vec<Symbol>> = groups.iter().filter(|g| g.len() > 1).collect();
    let perms: Vec<Vec<Vec<usize>>> = groups.iter().map(|g| permutations(g.len())).collect();
    let symbols = d.symbols();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b7a_6479);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < SAMPLE_POINTS && attempts < 64 * SAMPLE_POINTS {
        attempts += 1;
        let point: HashMap<Symbol, i64> = symbols.iter().map(|&s| (s, rng.gen_range(-997..=997))).collect();
        let mut idx = vec![0usize; groups.len()];
        let mut total = BigRational::zero();
        let mut pole = false;
        'perms: loop {
            let mut values = point.clone();
            for (gi, g) in groups.iter().enumerate() {
                for (k, s) in g.iter().enumerate() {
                    if let Some(&v) = point.get(&g[perms[gi][idx[gi]][k]]) {
                        values.insert(*s, v);
                    }
                }
            }
            let binding: Vec<(Symbol, Rf)> = values.iter().map(|(s, v)| (*s, Rf::from_i64(*v))).collect();
            match d.substitute(&binding).ok().and_then(|x| x.to_rational()) {
                Some(x) => total += x,
                None => {
                    pole = true;
                    break 'perms;
                }
            }
            let mut j = 0;
            loop {
                if j == groups.len() {
                    break 'perms;
                }
                idx[j] += 1;
                if idx[j] < perms[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
        if pole {
            continue;
        }
        if !total.is_zero() {
            return (false, SymmetrizationMethod::Sampled { points: checked + 1 });
        }
        checked += 1;
    }
    (checked == SAMPLE_POINTS, SymmetrizationMethod::Sampled { points: checked })
}

impl IdentityReport {
    /// Builds a report from per-component differences.
    pub fn from_differences(name: impl Into<String>, nu0: &[i64], diffs: Vec<(String, Rf)>) -> IdentityReport {
        let groups = color_groups(nu0);
        let components = diffs.len();
        let raw_witness = diffs.iter().find(|(_, d)| !d.is_zero()).map(|(k, d)| format!("{k}: {d}"));
        let sym: Vec<(Option<String>, SymmetrizationMethod)> = diffs
            .par_iter()
            .map(|(k, d)| {
                let (zero, how) = symmetrized_vanishes(d, &groups);
                ((!zero).then(|| format!("{k}: {d}")), how)
            })
            .collect();
        let symmetrization = sym
            .iter()
            .map(|(_, m)| *m)
            .find(|m| matches!(m, SymmetrizationMethod::Sampled { .. }))
            .unwrap_or(SymmetrizationMethod::Symbolic);
        let symmetrized_witness = sym.into_iter().find_map(|(w, _)| w);
        IdentityReport {
            name: name.into(),
            nu0: nu0.to_vec(),
            components,
            raw_equal: raw_witness.is_none(),
            symmetrized_equal: symmetrized_witness.is_none(),
            raw_witness,
            symmetrized_witness,
            symmetrization,
        }
    }
}

fn mono_label(e: &[Mono]) -> String {
    let parts: Vec<String> = e.iter().map(|m| format!("{:?}", m.as_slice())).collect();
    parts.join("⊗")
}

fn compare_maps(name: String, nu0: &[i64], a: &BTreeMap<Vec<Mono>, Rf>, b: &BTreeMap<Vec<Mono>, Rf>) -> IdentityReport {
    let mut keys: Vec<&Vec<Mono>> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    let zero = Rf::zero();
    let diffs = keys
        .into_iter()
        .map(|k| (mono_label(k), a.get(k).unwrap_or(&zero).sub(b.get(k).unwrap_or(&zero))))
        .collect();
    IdentityReport::from_differences(name, nu0, diffs)
}

/// `Σ φ(I, h) F_I(h) v = Σ φ(I) F_I v`, compared in the standard basis.
pub fn verify_order_invariance(n: usize, slots: usize, nu0: &[i64], h: usize) -> Result<IdentityReport> {
    let lhs = phi_vector(n, slots, nu0, Flavor::Special(h))?.to_standard()?;
    let rhs = phi_vector(n, slots, nu0, Flavor::Standard)?.to_standard()?;
    Ok(compare_maps(format!("order invariance h={h}"), nu0, &lhs, &rhs))
}

/// One elementary step `Σ φ(I; ≻^p) F_I(≻^p) v = Σ φ(I; ≻^{p+1}) F_I(≻^{p+1}) v`.
pub fn verify_order_step(n: usize, slots: usize, nu0: &[i64], h: usize, p: usize) -> Result<IdentityReport> {
    let lhs = phi_vector(n, slots, nu0, Flavor::Interp { h, p })?.to_standard()?;
    let rhs = phi_vector(n, slots, nu0, Flavor::Interp { h, p: p + 1 })?.to_standard()?;
    Ok(compare_maps(format!("order step h={h} p={p}"), nu0, &lhs, &rhs))
}

/// The binomial claim for one `A₂` step labelled by `(k, l)`, `k < h < l`:
/// `Σ_r C(c′, r)(−1)^{c′−r} φ({a′+r, b′+r, c′−r}; ≻^p) = φ({a′, b′, c′}; ≻^{p+1})`
/// with `a = i_{h,l}`, `b = i_{k,h}`, `c = i_{k,l}` on one factor.
pub fn binomial_claim_check(n: usize, a: u8, b: u8, c: u8, pair: (usize, usize), h: usize) -> Result<IdentityReport> {
    let (k, l) = pair;
    if !(1 <= k && k < h && h < l && l <= n) {
        return Err(Error::OutOfRange(format!("need k < h < l, got ({k},{l}) with h={h}")));
    }
    let index = |a: u8, b: u8, c: u8| -> Vec<IndexMap> {
        let mut m = IndexMap::new();
        for (key, v) in [((h, l), a), ((k, h), b), ((k, l), c)] {
            if v > 0 {
                m.insert(key, v);
            }
        }
        vec![m]
    };
    let before = StringRule::uniform(h);
    let after = StringRule { default_h: h, switched: vec![(k, l)], switched_h: h - 1 };
    let g = [Ground::Point(1)];
    let mut terms = Vec::new();
    for r in 0..=c {
        let sign = if (c - r) % 2 == 0 { 1 } else { -1 };
        let coeff = Rf::from_int(binomial(c as u32, r as u32)).scale_int(sign);
        terms.push(build_forest(n, &before, &index(a + r, b + r, c - r), &g).rational_function().mul(&coeff));
    }
    let lhs = Rf::sum(terms.iter());
    let rhs = build_forest(n, &after, &index(a, b, c), &g).rational_function();
    let mut depth = vec![0i64; n - 1];
    for (key, v) in &index(a, b, c)[0] {
        for x in &mut depth[key.0 - 1..key.1 - 1] {
            *x += *v as i64;
        }
    }
    Ok(IdentityReport::from_differences(
        format!("binomial claim ({k},{l}) h={h} a'={a} b'={b} c'={c}"),
        &depth,
        vec![("claim".into(), lhs.sub(&rhs))],
    ))
}

/// The rational function obtained from `T(I, h)` by replacing every string
/// of `S_h(I)` with the difference of itself and its copy grounded at zero.
pub fn regrounded_difference(forest: &Forest, h: usize) -> Rf {
    let fs: Vec<Rf> = forest
        .strings()
        .map(|s| {
            if s.k <= h && h < s.l {
                s.rational_function().sub(&s.regrounded(Ground::Zero).rational_function())
            } else {
                s.rational_function()
            }
        })
        .collect();
    fs.iter().fold(Rf::one(), |a, b| a.mul(b))
}

/// One term of the `z`-shift factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZShiftTerm {
    pub index: Vec<Vec<u8>>,
    /// `−m_{h,j}(I)`: the integer powers of `z_j` split off.
    pub z_exponents: Vec<i64>,
    pub rhs: Rf,
    pub exact: bool,
}

/// `(∏_d 1/t_h^{(d)}) φ(I, h) = ∏_j z_j^{−m_{h,j}(I)} ∏_{s∈S_h}(φ_h^{(s)} − φ_h^{(n+1,s)}) ∏_{s∉S_h} φ_h^{(s)}`
/// for every index of `V[ν₀]`; returns the expanded right-hand sides.
pub fn z_shift_factorization(n: usize, slots: usize, nu0: &[i64], h: usize) -> Result<Vec<ZShiftTerm>> {
    let flavor = Flavor::Special(h);
    let basis = flavor.basis(n)?;
    let rule = flavor.rule(n)?;
    let module = TensorModule::symbolic_vermas(n, slots, basis.clone())?;
    let grounds = point_grounds(slots);
    let mh = nu0[h - 1].max(0) as usize;
    let tprod = (1..=mh).fold(Rf::one(), |a, d| a.mul(&Rf::sym(t_symbol(h, d))));
    let inv_t = tprod.inv()?;
    module
        .space(nu0)
        .elems
        .par_iter()
        .map(|e| -> Result<ZShiftTerm> {
            let maps: Vec<IndexMap> = e.iter().map(|m| basis.mono_to_map(m)).collect();
            let forest = build_forest(n, &rule, &maps, &grounds);
            let lhs = forest.rational_function().mul(&inv_t);
            let z_exponents: Vec<i64> =
                maps.iter().map(|m| -m.iter().filter(|((k, l), _)| *k <= h && h < *l).map(|(_, &c)| c as i64).sum::<i64>()).collect();
            let mut rhs = regrounded_difference(&forest, h);
            for (j, &x) in z_exponents.iter().enumerate() {
                if x != 0 {
                    rhs = rhs.mul(&Rf::sym(z_symbol(j + 1)).pow(x as i32)?);
                }
            }
            Ok(ZShiftTerm {
                index: e.iter().map(|m| m.to_vec()).collect(),
                z_exponents,
                exact: lhs == rhs,
                rhs,
            })
        })
        .collect()
}

/// The expansion `∏_{s∈S_h}(φ_h^{(s)} − φ_h^{(n+1,s)}) ∏_{s∉S_h} φ_h^{(s)} =
/// Σ_{I₀∈A(h)} D′(F_{I₀}(h)(F_I(h)v)^* ⊗ (F_{I₀}(h)v_{n+1})^*)` for the
/// index at position `idx` of `V[ν₀]` (basis of `≻_h`). The dual action of
/// `F_{I₀}(h)` is applied through the module.
pub fn lemma_rat2dprime_check(n: usize, slots: usize, nu0: &[i64], h: usize, idx: usize) -> Result<IdentityReport> {
    let flavor = Flavor::Special(h);
    let basis = flavor.basis(n)?;
    let rule = flavor.rule(n)?;
    let module = TensorModule::symbolic_vermas(n, slots, basis.clone())?;
    let sp = module.space(nu0);
    let e = sp.elems.get(idx).ok_or_else(|| Error::OutOfRange(format!("index {idx}")))?;
    let grounds = point_grounds(slots);
    let maps: Vec<IndexMap> = e.iter().map(|m| basis.mono_to_map(m)).collect();
    let lhs = regrounded_difference(&build_forest(n, &rule, &maps, &grounds), h);

    let mut grounds1 = grounds.clone();
    grounds1.push(Ground::Zero);
    let mut rhs_terms = Vec::new();
    for d in depth_boxes(nu0) {
        for i0 in basis.monomials_of_depth(&d) {
            if !in_index_set_a(&basis, &i0, h) {
                continue;
            }
            // F_{I₀}(h) = (−1)^{|I₀|} ∏ F_{k,l}(h)^{i}/i! on (F_I(h) v)^*
            let mut cur: BTreeMap<usize, Rf> = BTreeMap::from([(idx, Rf::one())]);
            let mut cur_nu = nu0.to_vec();
            let mut total = 0u32;
            for (p, &c) in i0.iter().enumerate() {
                let r = basis.root(p);
                for _ in 0..c {
                    let mut next: BTreeMap<usize, Rf> = BTreeMap::new();
                    for (&i, x) in &cur {
                        for (j, y) in module.dual_action_f(&cur_nu, i, r.k, r.l)? {
                            let v = next.entry(j).or_insert_with(Rf::zero);
                            *v = v.add(&x.mul(&y));
                        }
                    }
                    cur = next;
                    for x in &mut cur_nu[r.k - 1..r.l - 1] {
                        *x -= 1;
                    }
                }
                let f = Rf::from_int(factorial(c as u32));
                cur = cur.into_iter().map(|(i, x)| (i, x.div(&f).expect("nonzero factorial"))).collect();
                total += c as u32;
            }
            let sign = if total.is_multiple_of(2) { 1 } else { -1 };
            let i0_map = basis.mono_to_map(&i0);
            let dst = module.space(&cur_nu);
            for (j, x) in cur {
                if x.is_zero() {
                    continue;
                }
                let mut jm: Vec<IndexMap> = dst.elems[j].iter().map(|m| basis.mono_to_map(m)).collect();
                jm.push(i0_map.clone());
                let phi = build_forest(n, &rule, &jm, &grounds1).rational_function();
                rhs_terms.push(phi.mul(&x).scale_int(sign));
            }
        }
    }
    let rhs = Rf::sum(rhs_terms.iter());
    Ok(IdentityReport::from_differences(
        format!("regrounded expansion h={h} index {}", mono_label(e)),
        nu0,
        vec![("expansion".into(), lhs.sub(&rhs))],
    ))
}

fn depth_boxes(nu0: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &x in nu0 {
        out = out.into_iter().flat_map(|p| (0..=x.max(0)).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

/// One factor `base^{exponent}` of a master function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterFactor {
    pub label: String,
    pub base: Rf,
    pub exponent: Rf,
}

/// The exponent record of a master function `Φ` (rational or trigonometric).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterExponents {
    pub factors: Vec<MasterFactor>,
}

impl MasterExponents {
    /// `Φ′` for highest weights `hws` at the given grounds with `m_k = ν₀[k−1]` variables of colour `k`.
    pub fn rational(hws: &[WeightVec], grounds: &[Ground], nu0: &[i64]) -> MasterExponents {
        let n = nu0.len() + 1;
        let alpha = |k: usize| WeightVec::from_root(n, &Root::simple(k));
        let mut factors = Vec::new();
        for i in 0..hws.len() {
            for j in i + 1..hws.len() {
                if let (Ground::Point(_), Ground::Point(_)) = (grounds[i], grounds[j]) {
                    factors.push(MasterFactor {
                        label: format!("(z{}-z{})", i + 1, j + 1),
                        base: grounds[i].value().sub(&grounds[j].value()),
                        exponent: hws[i].dot(&hws[j]),
                    });
                }
            }
        }
        let vars: Vec<(usize, usize)> =
            (1..n).flat_map(|k| (1..=nu0[k - 1].max(0) as usize).map(move |d| (k, d))).collect();
        for &(k, d) in &vars {
            let t = Rf::sym(t_symbol(k, d));
            for (j, g) in grounds.iter().enumerate() {
                factors.push(MasterFactor {
                    label: format!("(t{k}.{d}-g{})", j + 1),
                    base: t.sub(&g.value()),
                    exponent: alpha(k).dot(&hws[j]).neg(),
                });
            }
        }
        for (a, &(k, d)) in vars.iter().enumerate() {
            for &(l, e) in &vars[a + 1..] {
                let ex = alpha(k).dot(&alpha(l));
                if !ex.is_zero() {
                    factors.push(MasterFactor {
                        label: format!("(t{k}.{d}-t{l}.{e})"),
                        base: Rf::sym(t_symbol(k, d)).sub(&Rf::sym(t_symbol(l, e))),
                        exponent: ex,
                    });
                }
            }
        }
        MasterExponents { factors }
    }

    /// The trigonometric `Φ(z, t; λ)` for `n = hws.len()` points.
    pub fn trigonometric(hws: &[WeightVec], nu0: &[i64], lambda: &WeightVec) -> MasterExponents {
        let n = nu0.len() + 1;
        let grounds = point_grounds(hws.len());
        let mut me = MasterExponents::rational(hws, &grounds, nu0);
        let nu = hws.iter().fold(WeightVec::zero(n), |a, b| a.add(b)).sub(&WeightVec::from_simple_coords(n, nu0));
        let half = Rf::ratio(1, 2);
        let shifted = lambda.sub(&WeightVec::rho(n)).sub(&nu.scale(&half));
        for k in 1..n {
            let a = WeightVec::from_root(n, &Root::simple(k));
            for d in 1..=nu0[k - 1].max(0) as usize {
                me.factors.push(MasterFactor {
                    label: format!("t{k}.{d}"),
                    base: Rf::sym(t_symbol(k, d)),
                    exponent: a.dot(&shifted).neg(),
                });
            }
        }
        for (i, l) in hws.iter().enumerate() {
            me.factors.push(MasterFactor {
                label: format!("z{}", i + 1),
                base: Rf::sym(z_symbol(i + 1)),
                exponent: l.dot(&lambda.sub(&nu.scale(&half)).add(&l.scale(&half))),
            });
        }
        me
    }

    /// `∂_x Φ / Φ`.
    pub fn log_derivative(&self, x: Symbol) -> Rf {
        let terms: Vec<Rf> = self
            .factors
            .iter()
            .filter(|f| f.base.contains(x))
            .map(|f| f.exponent.mul(&f.base.partial(x)).div(&f.base).expect("nonzero base"))
            .collect();
        Rf::sum(terms.iter())
    }

    /// The exponent of the factor with the given base, if present.
    pub fn exponent_of(&self, base: &Rf) -> Option<Rf> {
        let xs: Vec<Rf> = self.factors.iter().filter(|f| &f.base == base).map(|f| f.exponent.clone()).collect();
        (!xs.is_empty()).then(|| Rf::sum(xs.iter()))
    }
}

/// The linear map `(F_I v)^* ↦ φ(I)` on a weight space of symbolic Verma modules.
#[derive(Clone, Debug)]
pub struct DualFunctionMap {
    pub n: usize,
    pub module: Arc<TensorModule>,
    pub grounds: Vec<Ground>,
    pub rule: StringRule,
}

impl DualFunctionMap {
    pub fn new(n: usize, slots: usize, flavor: Flavor, grounds: Vec<Ground>) -> Result<DualFunctionMap> {
        let module = TensorModule::symbolic_vermas(n, slots, flavor.basis(n)?)?;
        Ok(DualFunctionMap { n, module, grounds, rule: flavor.rule(n)? })
    }

    pub fn phi(&self, nu0: &[i64], idx: usize) -> Rf {
        let sp = self.module.space(nu0);
        let maps: Vec<IndexMap> = sp.elems[idx].iter().map(|m| self.module.basis.mono_to_map(m)).collect();
        build_forest(self.n, &self.rule, &maps, &self.grounds).rational_function()
    }

    /// Applies the map to a dual vector given by coordinates.
    pub fn apply(&self, nu0: &[i64], coords: &[(usize, Rf)]) -> Rf {
        let ts: Vec<Rf> = coords.iter().map(|(i, c)| self.phi(nu0, *i).mul(c)).collect();
        Rf::sum(ts.iter())
    }
}

/// `D′(F_{I′} v′) = D(F_I v)` when the last factor carries the empty index.
pub fn check_d_prime_restriction(n: usize, slots: usize, nu0: &[i64]) -> Result<bool> {
    let d = DualFunctionMap::new(n, slots, Flavor::Standard, point_grounds(slots))?;
    let mut g1 = point_grounds(slots);
    g1.push(Ground::Zero);
    let d1 = DualFunctionMap::new(n, slots + 1, Flavor::Standard, g1)?;
    let sp = d.module.space(nu0);
    let sp1 = d1.module.space(nu0);
    for (i, e) in sp.elems.iter().enumerate() {
        let mut e1 = e.clone();
        e1.push(d1.module.basis.empty_mono());
        let j = sp1.index_of(&e1).ok_or_else(|| Error::OutOfRange("missing extended index".into()))?;
        if d.phi(nu0, i) != d1.phi(nu0, j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Witness data for the exactness argument behind moving `U(n₊)` across factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchWitness {
    pub nu0: Vec<i64>,
    pub h: usize,
    /// `i^*((d_tΦ/Φ) ∧ η_I) = ε (∂_{t_h}Φ/Φ) φ(I) dt` holds with `ε = ±1`.
    pub pullback_sign: Option<i64>,
    /// `D′(E_{α_h}(F_I v′)^*) = −Σ c_J φ(J)` where `Σ c_J φ(J)` is the
    /// expansion of `(∂_{t_h}Φ/Φ) φ(I)` modulo exact forms.
    pub expansion_matches: bool,
    pub expansion_terms: usize,
}

/// Builds the witness for the index at position `idx` of `V′[ν₀ − α_h]`
/// (standard basis, `slots` symbolic Verma modules at `z_1, …`).
pub fn switch_cor_witness(n: usize, slots: usize, nu0: &[i64], h: usize, idx: usize) -> Result<SwitchWitness> {
    if h == 0 || h >= n || nu0[h - 1] < 1 {
        return Err(Error::OutOfRange(format!("need m_h ≥ 1 for h={h}")));
    }
    let basis = PbwBasis::standard(n);
    let module = TensorModule::symbolic_vermas(n, slots, basis.clone())?;
    let mut mu = nu0.to_vec();
    mu[h - 1] -= 1;
    let sp = module.space(&mu);
    let e = sp.elems.get(idx).ok_or_else(|| Error::OutOfRange(format!("index {idx}")))?;
    let grounds = point_grounds(slots);
    let rule = StringRule::uniform(n - 1);
    let maps: Vec<IndexMap> = e.iter().map(|m| basis.mono_to_map(m)).collect();
    let forest = build_forest(n, &rule, &maps, &grounds);
    let phi = forest.rational_function();

    // (1) the pullback identity as a determinant of differential coefficients
    let hws: Vec<WeightVec> = module.factors.iter().map(|f| f.hw.clone()).collect();
    let master = MasterExponents::rational(&hws, &grounds, nu0);
    let new_var = t_symbol(h, nu0[h - 1] as usize);
    let mut vars = vec![new_var];
    vars.extend(forest.variables().iter().map(|s| Symbol::new(s)));
    let mut rows = vec![vars.iter().map(|&x| master.log_derivative(x)).collect::<Vec<_>>()];
    for s in forest.strings() {
        for (a, b) in s.edges() {
            let diff = a.sub(&b);
            rows.push(vars.iter().map(|&x| diff.partial(x).div(&diff).expect("nonzero edge")).collect());
        }
    }
    let det = Mat::from_rows(rows).det();
    let target = master.log_derivative(new_var).mul(&phi);
    let pullback_sign = if target.is_zero() {
        None
    } else if det == target {
        Some(1)
    } else if det == target.neg() {
        Some(-1)
    } else {
        None
    };

    // (2) the dual action of E_{α_h} against the expansion of (∂_{t_h}Φ/Φ) φ(I)
    let dual = module.dual_action_e(&mu, idx, h)?;
    let mut coeffs: BTreeMap<Vec<IndexMap>, Rf> = BTreeMap::new();
    let dst = module.space(nu0);
    for (j, c) in &dual {
        let key: Vec<IndexMap> = dst.elems[*j].iter().map(|m| basis.mono_to_map(m)).collect();
        let v = coeffs.entry(key).or_insert_with(Rf::zero);
        *v = v.add(c);
    }
    let expansion = log_derivative_expansion(n, &hws, &maps, h);
    for (k, c) in expansion {
        let v = coeffs.entry(k).or_insert_with(Rf::zero);
        *v = v.add(&c);
    }
    let expansion_terms = coeffs.len();
    let expansion_matches = coeffs.values().all(Rf::is_zero);
    Ok(SwitchWitness { nu0: nu0.to_vec(), h, pullback_sign, expansion_matches, expansion_terms })
}

/// The combination of indices `Σ c_J J` with `(∂_{t_h}Φ/Φ) φ(I) ∼ Σ c_J φ(J)`.
pub fn log_derivative_expansion(n: usize, hws: &[WeightVec], index: &[IndexMap], h: usize) -> Vec<(Vec<IndexMap>, Rf)> {
    let mut out = Vec::new();
    let bump = |maps: &[IndexMap], j: usize, changes: &[((usize, usize), i64)]| -> Vec<IndexMap> {
        let mut m = maps.to_vec();
        for &(key, d) in changes {
            let v = m[j].entry(key).or_insert(0);
            *v = (*v as i64 + d) as u8;
            if *v == 0 {
                m[j].remove(&key);
            }
        }
        m
    };
    for j in 0..index.len() {
        let ex = |k: usize, l: usize| index[j].get(&(k, l)).copied().unwrap_or(0) as i64;
        for p in h + 2..=n {
            let c = ex(h + 1, p);
            if c > 0 {
                out.push((bump(index, j, &[((h, p), 1), ((h + 1, p), -1)]), Rf::from_i64(-c)));
            }
        }
        for p in 1..h {
            let c = ex(p, h);
            if c > 0 {
                out.push((bump(index, j, &[((p, h + 1), 1), ((p, h), -1)]), Rf::from_i64(c)));
            }
        }
        let shift: i64 = (1..h).map(|p| ex(p, h)).sum::<i64>() - (1..=h).map(|p| ex(p, h + 1)).sum::<i64>();
        let c = hws[j].pair_root(&Root::simple(h)).neg().sub(&Rf::from_i64(shift));
        out.push((bump(index, j, &[((h, h + 1), 1)]), c));
    }
    out
}

/// Symbolic highest weights `Λ_j` for `slots` factors.
pub fn symbolic_highest_weights(n: usize, slots: usize) -> Vec<WeightVec> {
    (1..=slots).map(|j| WeightVec::symbolic(n, |k| lambda_symbol(j, k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attachment_table() {
        // ≻_h strings for sl_4, h = 2
        assert_eq!(string_attachment(1, 2, 2), (1, 1));
        assert_eq!(string_attachment(1, 3, 2), (2, 1));
        assert_eq!(string_attachment(1, 4, 2), (2, -1));
        assert_eq!(string_attachment(3, 4, 2), (3, 1));
        // standard order: always the last vertex with sign +1
        for k in 1..4 {
            for l in k + 1..=4 {
                assert_eq!(string_attachment(k, l, 3), (l - 1, 1));
            }
        }
    }

    #[test]
    fn empty_index_gives_one() {
        let r = phi_of_index(3, Flavor::Standard, &[IndexMap::new()], &[Ground::Point(1)]).unwrap();
        assert!(r.is_one());
    }
}
