//! Highest-weight modules and their tensor products: weight-space bases
//! `F_I v = F_{I_1} v_1 ⊗ ⋯ ⊗ F_{I_n} v_n`, generator matrices, the
//! Shapovalov form and its inverse elements `P_{I₀}`, the dual-basis actions
//! and singular vectors.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::roots::{Root, WeightVec};
use crate::symexpr::{Rf, Symbol};
use crate::uea::{Gen, HighestWeightAction, Mono, PbwBasis, UEAElement};

/// The symbol `L:j:k` for the pairing `(Λ_j, α_k)`.
pub fn lambda_symbol(j: usize, k: usize) -> Symbol {
    Symbol::new(&format!("L:{j}:{k}"))
}

/// The symbol `l{k}` for the dynamical pairing `(λ, α_k)`.
pub fn dyn_symbol(k: usize) -> Symbol {
    Symbol::new(&format!("l{k}"))
}

/// The symbolic dynamical weight `λ` with `(λ, α_k) = l{k}`.
pub fn dyn_weight(n: usize) -> WeightVec {
    WeightVec::symbolic(n, dyn_symbol)
}

/// The kind of a tensor factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleKind {
    /// The Verma module `M_Λ`.
    Verma,
    /// The `(p+1)`-dimensional irreducible `sl_2`-module `L_p`.
    Irreducible(u32),
}

/// A highest-weight module: its kind and highest weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub kind: ModuleKind,
    pub hw: WeightVec,
}

impl ModuleSpec {
    /// The Verma module whose highest weight has pairings `(Λ_j, α_k) = L:j:k`.
    pub fn verma_symbolic(n: usize, j: usize) -> ModuleSpec {
        ModuleSpec { kind: ModuleKind::Verma, hw: WeightVec::symbolic(n, |k| lambda_symbol(j, k)) }
    }

    pub fn verma(hw: WeightVec) -> ModuleSpec {
        ModuleSpec { kind: ModuleKind::Verma, hw }
    }

    /// `L_p` for `sl_2`, highest weight `p α / 2`.
    pub fn irreducible_sl2(p: u32) -> ModuleSpec {
        ModuleSpec {
            kind: ModuleKind::Irreducible(p),
            hw: WeightVec::from_simple_pairings(&[Rf::from_i64(p as i64)]),
        }
    }

    pub fn n(&self) -> usize {
        self.hw.dim()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, ModuleKind::Irreducible(_))
    }
}

/// A weight space `V[ν]`, `ν = Σ Λ_j − ν₀`, with its monomial basis.
#[derive(Debug)]
pub struct WeightSpace {
    /// Simple-root coordinates `m_1, …, m_{N−1}` of `ν₀`.
    pub nu0: Vec<i64>,
    /// Basis multi-indices, one PBW monomial per tensor slot.
    pub elems: Vec<Vec<Mono>>,
    index: HashMap<Vec<Mono>, usize>,
    pub weight: WeightVec,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, e: &[Mono]) -> Option<usize> {
        self.index.get(e).copied()
    }
}

type GenMatKey = (Gen, Vec<i64>, Option<usize>);

/// A tensor product `V_1 ⊗ ⋯ ⊗ V_n` of highest-weight modules, with bases
/// built from the PBW basis of one normal order.
pub struct TensorModule {
    pub n: usize,
    pub factors: Vec<ModuleSpec>,
    pub basis: Arc<PbwBasis>,
    pub actions: Vec<Arc<HighestWeightAction>>,
    spaces: RwLock<HashMap<Vec<i64>, Arc<WeightSpace>>>,
    gen_mats: RwLock<HashMap<GenMatKey, Arc<Mat>>>,
}

impl std::fmt::Debug for TensorModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TensorModule({:?}, {:?})", self.factors, self.basis)
    }
}

impl TensorModule {
    pub fn new(factors: Vec<ModuleSpec>, basis: Arc<PbwBasis>) -> Result<Arc<TensorModule>> {
        let n = basis.n();
        for f in &factors {
            if f.n() != n {
                return Err(Error::OutOfRange(format!("factor weight of dimension {} in sl_{n}", f.n())));
            }
            if matches!(f.kind, ModuleKind::Irreducible(_)) && n != 2 {
                return Err(Error::CapabilityExceeded("irreducible factors are only available for sl_2".into()));
            }
        }
        let actions = factors
            .iter()
            .map(|f| {
                let cap = match f.kind {
                    ModuleKind::Verma => None,
                    ModuleKind::Irreducible(p) => Some(p as usize),
                };
                HighestWeightAction::new(basis.clone(), f.hw.clone(), cap)
            })
            .collect();
        Ok(Arc::new(TensorModule {
            n,
            factors,
            basis,
            actions,
            spaces: RwLock::new(HashMap::new()),
            gen_mats: RwLock::new(HashMap::new()),
        }))
    }

    /// A tensor product of symbolic Verma modules `M_{Λ_1} ⊗ ⋯ ⊗ M_{Λ_count}`.
    pub fn symbolic_vermas(n: usize, count: usize, basis: Arc<PbwBasis>) -> Result<Arc<TensorModule>> {
        TensorModule::new((1..=count).map(|j| ModuleSpec::verma_symbolic(n, j)).collect(), basis)
    }

    /// The same factors with the PBW basis of another order.
    pub fn with_basis(&self, basis: Arc<PbwBasis>) -> Result<Arc<TensorModule>> {
        TensorModule::new(self.factors.clone(), basis)
    }

    pub fn slots(&self) -> usize {
        self.factors.len()
    }

    pub fn top_weight(&self) -> WeightVec {
        let mut acc = WeightVec::zero(self.n);
        for f in &self.factors {
            acc = acc.add(&f.hw);
        }
        acc
    }

    /// The weight `Σ Λ_j − ν₀`.
    pub fn weight(&self, nu0: &[i64]) -> WeightVec {
        self.top_weight().sub(&WeightVec::from_simple_coords(self.n, nu0))
    }

    /// The weight space with depth `ν₀` (empty if any coordinate is negative).
    pub fn space(&self, nu0: &[i64]) -> Arc<WeightSpace> {
        if let Some(s) = self.spaces.read().get(nu0) {
            return s.clone();
        }
        let s = Arc::new(self.enumerate(nu0));
        self.spaces.write().insert(nu0.to_vec(), s.clone());
        s
    }

    fn enumerate(&self, nu0: &[i64]) -> WeightSpace {
        let mut elems: Vec<Vec<Mono>> = Vec::new();
        if nu0.iter().all(|&x| x >= 0) {
            let mut cur = Vec::new();
            self.enum_slots(0, nu0.to_vec(), &mut cur, &mut elems);
        }
        // Lexicographic order on exponents flattened by slot, then by (l, k), descending.
        let key = |e: &Vec<Mono>| -> Vec<u8> {
            let mut roots: Vec<(usize, usize, usize)> =
                (0..self.basis.len()).map(|p| (self.basis.root(p).l, self.basis.root(p).k, p)).collect();
            roots.sort();
            e.iter().flat_map(|m| roots.iter().map(move |&(_, _, p)| m[p])).collect()
        };
        elems.sort_by_key(|e| std::cmp::Reverse(key(e)));
        let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        WeightSpace { nu0: nu0.to_vec(), elems, index, weight: self.weight(nu0) }
    }

    fn enum_slots(&self, j: usize, rem: Vec<i64>, cur: &mut Vec<Mono>, out: &mut Vec<Vec<Mono>>) {
        if j + 1 == self.slots() {
            for m in self.basis.monomials_of_depth(&rem) {
                if self.fits(j, &m) {
                    cur.push(m);
                    out.push(cur.clone());
                    cur.pop();
                }
            }
            return;
        }
        if self.slots() == 0 {
            return;
        }
        // every split d ≤ rem
        let mut d = vec![0i64; rem.len()];
        loop {
            let rest: Vec<i64> = rem.iter().zip(&d).map(|(a, b)| a - b).collect();
            for m in self.basis.monomials_of_depth(&d) {
                if self.fits(j, &m) {
                    cur.push(m);
                    self.enum_slots(j + 1, rest.clone(), cur, out);
                    cur.pop();
                }
            }
            let mut i = 0;
            loop {
                if i == d.len() {
                    return;
                }
                if d[i] < rem[i] {
                    d[i] += 1;
                    break;
                }
                d[i] = 0;
                i += 1;
            }
        }
    }

    fn fits(&self, j: usize, m: &Mono) -> bool {
        match self.factors[j].kind {
            ModuleKind::Verma => true,
            ModuleKind::Irreducible(p) => PbwBasis::degree(m) <= p as usize,
        }
    }

    /// Depth shift of a generator: lowering adds its root, raising subtracts.
    pub fn shift(&self, g: Gen) -> Vec<i64> {
        let mut d = vec![0i64; self.n - 1];
        if let Some(r) = g.root() {
            let s = if g.is_lowering() { 1 } else { -1 };
            for x in &mut d[r.k - 1..r.l - 1] {
                *x += s;
            }
        }
        d
    }

    pub fn shifted(&self, nu0: &[i64], g: Gen) -> Vec<i64> {
        nu0.iter().zip(self.shift(g)).map(|(a, b)| a + b).collect()
    }

    /// The matrix of `g` (acting by the Leibniz rule) from `V[ν₀]` to its image space.
    pub fn gen_matrix(&self, g: Gen, nu0: &[i64]) -> Arc<Mat> {
        self.gen_matrix_in(g, nu0, None)
    }

    /// The matrix of `g` acting in tensor slot `slot` only (`g^{(slot)}`).
    pub fn slot_gen_matrix(&self, g: Gen, slot: usize, nu0: &[i64]) -> Arc<Mat> {
        self.gen_matrix_in(g, nu0, Some(slot))
    }

    fn gen_matrix_in(&self, g: Gen, nu0: &[i64], slot: Option<usize>) -> Arc<Mat> {
        let key = (g, nu0.to_vec(), slot);
        if let Some(m) = self.gen_mats.read().get(&key) {
            return m.clone();
        }
        let src = self.space(nu0);
        let dst = self.space(&self.shifted(nu0, g));
        let mut mat = Mat::zeros(dst.dim(), src.dim());
        for (c, e) in src.elems.iter().enumerate() {
            for (j, m) in e.iter().enumerate() {
                if slot.is_some_and(|s| s != j) {
                    continue;
                }
                let scale = self.basis.raw_scale(m);
                for (m2, d) in self.actions[j].act(g, m).iter() {
                    if !self.fits(j, m2) {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[j] = m2.clone();
                    let r = dst.index_of(&e2).expect("image in target space");
                    let x = d.mul(&scale).div(&self.basis.raw_scale(m2)).expect("nonzero scale");
                    mat.add_to(r, c, &x);
                }
            }
        }
        let mat = Arc::new(mat);
        self.gen_mats.write().insert(key, mat.clone());
        mat
    }

    /// The Cartan element `H_α = e_{k,k} − e_{l,l}` on `V[ν₀]` (diagonal).
    pub fn h_matrix(&self, r: &Root, nu0: &[i64]) -> Mat {
        let w = self.weight(nu0);
        Mat::scalar(self.space(nu0).dim(), &w.pair_root(r))
    }

    /// The matrix of a product of matrix units, given left to right.
    pub fn word_matrix(&self, word: &[Gen], nu0: &[i64]) -> Mat {
        let mut cur_nu = nu0.to_vec();
        let mut acc = Mat::identity(self.space(nu0).dim());
        for g in word.iter().rev() {
            let m = self.gen_matrix(*g, &cur_nu);
            acc = m.mul(&acc);
            cur_nu = self.shifted(&cur_nu, *g);
        }
        acc
    }

    /// The matrix of a word of matrix units acting in one slot.
    pub fn slot_word_matrix(&self, word: &[Gen], slot: usize, nu0: &[i64]) -> Mat {
        let mut cur_nu = nu0.to_vec();
        let mut acc = Mat::identity(self.space(nu0).dim());
        for g in word.iter().rev() {
            let m = self.slot_gen_matrix(*g, slot, &cur_nu);
            acc = m.mul(&acc);
            cur_nu = self.shifted(&cur_nu, *g);
        }
        acc
    }

    /// The matrix of an element of `U(n₋)` or `τ(U(n₋))` acting in one slot.
    pub fn slot_element_matrix(&self, x: &UEAElement, slot: usize, nu0: &[i64]) -> Mat {
        let words = x.words();
        let Some(first) = words.first() else {
            return Mat::zeros(0, self.space(nu0).dim());
        };
        let mut target = nu0.to_vec();
        for g in &first.0 {
            target = self.shifted(&target, *g);
        }
        let mut acc = Mat::zeros(self.space(&target).dim(), self.space(nu0).dim());
        for (w, c) in &words {
            acc = acc.add(&self.slot_word_matrix(w, slot, nu0).scale(c));
        }
        acc
    }

    /// Per-slot weights `μ_j = Λ_j − depth_j` of a basis element.
    pub fn slot_weights(&self, e: &[Mono]) -> Vec<WeightVec> {
        e.iter()
            .enumerate()
            .map(|(j, m)| self.factors[j].hw.sub(&WeightVec::from_simple_coords(self.n, &self.basis.depth(m))))
            .collect()
    }

    /// The diagonal operator `μ^{(slot)}`: `(μ, wt_slot)` on each basis vector.
    pub fn slot_weight_pairing(&self, mu: &WeightVec, slot: usize, nu0: &[i64]) -> Mat {
        let sp = self.space(nu0);
        let d: Vec<Rf> = sp.elems.iter().map(|e| mu.dot(&self.slot_weights(e)[slot])).collect();
        Mat::diagonal(&d)
    }

    /// The matrix of an element of `U(n₋)` (or of `τ(U(n₋))`) acting on `V[ν₀]`.
    pub fn element_matrix(&self, x: &UEAElement, nu0: &[i64]) -> Mat {
        let words = x.words();
        let Some(first) = words.first() else {
            return Mat::zeros(0, self.space(nu0).dim());
        };
        let mut target = nu0.to_vec();
        for g in &first.0 {
            target = self.shifted(&target, *g);
        }
        let mut acc = Mat::zeros(self.space(&target).dim(), self.space(nu0).dim());
        for (w, c) in &words {
            acc = acc.add(&self.word_matrix(w, nu0).scale(c));
        }
        acc
    }

    /// The matrix expressing each basis vector of `self` in the basis of `other`
    /// (same factors, different order), via elementary transformations.
    pub fn change_matrix(&self, other: &TensorModule, nu0: &[i64]) -> Result<Mat> {
        let src = self.space(nu0);
        let dst = other.space(nu0);
        let mut mat = Mat::zeros(dst.dim(), src.dim());
        for (c, e) in src.elems.iter().enumerate() {
            let mut partial: Vec<(Vec<Mono>, Rf)> = vec![(Vec::new(), Rf::one())];
            for m in e {
                let x = UEAElement::monomial(self.basis.clone(), m.clone()).change_pbw_basis(&other.basis)?;
                let mut next = Vec::new();
                for (pre, a) in &partial {
                    for (m2, b) in &x.terms {
                        let mut p2 = pre.clone();
                        p2.push(m2.clone());
                        next.push((p2, a.mul(b)));
                    }
                }
                partial = next;
            }
            for (e2, v) in partial {
                let r = dst.index_of(&e2).ok_or_else(|| Error::OutOfRange("basis change left the space".into()))?;
                mat.add_to(r, c, &v);
            }
        }
        Ok(mat)
    }

    /// Exponent map of slot `j` of a basis element, `(k,l) ↦ i^{(j)}_{l,k}`.
    pub fn exponents(&self, e: &[Mono], j: usize) -> BTreeMap<(usize, usize), u8> {
        self.basis.mono_to_map(&e[j])
    }

    /// Basis multi-index from per-slot exponent maps.
    pub fn elem_from_maps(&self, maps: &[BTreeMap<(usize, usize), u8>]) -> Vec<Mono> {
        maps.iter().map(|m| self.basis.mono_from_map(m)).collect()
    }

    /// The Shapovalov Gram matrix `S(F_I v, F_J v)` of a single Verma factor.
    pub fn shapovalov_gram(&self, nu0: &[i64]) -> Result<Mat> {
        if self.slots() != 1 {
            return Err(Error::CapabilityExceeded("the Shapovalov form is computed for one factor".into()));
        }
        let sp = self.space(nu0);
        let act = &self.actions[0];
        let d = sp.dim();
        let mut g = Mat::zeros(d, d);
        for (a, ea) in sp.elems.iter().enumerate() {
            let letters = self.basis.letters(&ea[0]);
            for (b, eb) in sp.elems.iter().enumerate() {
                if b < a {
                    continue;
                }
                let mut cur = vec![(eb[0].clone(), Rf::one())];
                for l in &letters {
                    cur = act.act_vec(l.transpose(), &cur);
                }
                let raw = cur
                    .iter()
                    .find(|(m, _)| PbwBasis::degree(m) == 0)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Rf::zero);
                let val = raw.mul(&self.basis.raw_scale(&ea[0])).mul(&self.basis.raw_scale(&eb[0]));
                g.set(a, b, val.clone());
                g.set(b, a, val);
            }
        }
        Ok(g)
    }

    /// The mixed Gram matrix `S(F_I v, F'_J v)` against the PBW basis `F'`
    /// of another order.
    pub fn gram_between(&self, other: &TensorModule, nu0: &[i64]) -> Result<Mat> {
        Ok(self.shapovalov_gram(nu0)?.mul(&other.change_matrix(self, nu0)?))
    }

    /// The elements `P_{I₀}` with `P_{I₀} v = S⁻¹((F_{I₀} v)^*)`, for every
    /// basis index of the weight space, in the basis of this module's order.
    pub fn p_elements(&self, nu0: &[i64]) -> Result<Vec<(Mono, UEAElement)>> {
        let sp = self.space(nu0);
        let inv = self.shapovalov_gram(nu0)?.inverse()?;
        Ok(sp
            .elems
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let terms = sp.elems.iter().enumerate().map(|(k, ek)| (ek[0].clone(), inv.get(k, i).clone()));
                (e[0].clone(), UEAElement::from_terms(self.basis.clone(), terms))
            })
            .collect())
    }

    /// Matrix of `g` on the dual weight spaces: `⟨g φ, x⟩ = −⟨φ, g x⟩`.
    /// Maps `V[ν₀]^*` to `V[ν₀ − shift(g)]^*` in the dual bases.
    pub fn dual_gen_matrix(&self, g: Gen, nu0: &[i64]) -> Mat {
        let back: Vec<i64> = nu0.iter().zip(self.shift(g)).map(|(a, b)| a - b).collect();
        // g maps V[back] → V[nu0]; its negative transpose maps V[nu0]^* → V[back]^*.
        self.gen_matrix(g, &back).transpose().neg()
    }

    /// The dual-basis formula for `E_{α_h} (F_I v)^*` in the standard basis:
    /// a combination of dual basis vectors of `V[ν₀ + α_h]^*`.
    pub fn dual_action_e(&self, nu0: &[i64], idx: usize, h: usize) -> Result<Vec<(usize, Rf)>> {
        let sp = self.space(nu0);
        let mut target_nu = nu0.to_vec();
        target_nu[h - 1] += 1;
        let dst = self.space(&target_nu);
        let e = &sp.elems[idx];
        let mut out: BTreeMap<usize, Rf> = BTreeMap::new();
        let mut push = |maps: Vec<BTreeMap<(usize, usize), u8>>, c: Rf| -> Result<()> {
            if c.is_zero() {
                return Ok(());
            }
            let el = self.elem_from_maps(&maps);
            let i = dst
                .index_of(&el)
                .ok_or_else(|| Error::OutOfRange("dual action left the weight space".into()))?;
            let x = out.entry(i).or_insert_with(Rf::zero);
            *x = x.add(&c);
            Ok(())
        };
        let n = self.n;
        for j in 0..self.slots() {
            let base: Vec<BTreeMap<(usize, usize), u8>> = (0..self.slots()).map(|s| self.exponents(e, s)).collect();
            let ex = |k: usize, l: usize| -> i64 { base[j].get(&(k, l)).copied().unwrap_or(0) as i64 };
            let bump = |maps: &mut Vec<BTreeMap<(usize, usize), u8>>, k: usize, l: usize, d: i64| {
                let v = maps[j].entry((k, l)).or_insert(0);
                *v = (*v as i64 + d) as u8;
                if *v == 0 {
                    maps[j].remove(&(k, l));
                }
            };
            // Σ_{p=h+2}^{N} i_{p,h+1} (F_{I + 1_{p,h} − 1_{p,h+1}})^*
            for p in h + 2..=n {
                let c = ex(h + 1, p);
                if c > 0 {
                    let mut maps = base.clone();
                    bump(&mut maps, h, p, 1);
                    bump(&mut maps, h + 1, p, -1);
                    push(maps, Rf::from_i64(c))?;
                }
            }
            // −Σ_{p=1}^{h−1} i_{h,p} (F_{I + 1_{h+1,p} − 1_{h,p}})^*
            for p in 1..h {
                let c = ex(p, h);
                if c > 0 {
                    let mut maps = base.clone();
                    bump(&mut maps, p, h + 1, 1);
                    bump(&mut maps, p, h, -1);
                    push(maps, Rf::from_i64(-c))?;
                }
            }
            // ((Λ_j, α_h) + Σ_{p<h} i_{h,p} − Σ_{p≤h} i_{h+1,p}) (F_{I + 1_{h+1,h}})^*
            let mut c = self.factors[j].hw.pair_root(&Root::simple(h));
            let shift: i64 = (1..h).map(|p| ex(p, h)).sum::<i64>() - (1..=h).map(|p| ex(p, h + 1)).sum::<i64>();
            c = c.add(&Rf::from_i64(shift));
            let mut maps = base.clone();
            bump(&mut maps, h, h + 1, 1);
            push(maps, c)?;
        }
        Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// The dual-basis formula for `F_{k,l}(h) (F_I(h) v)^*` in the basis of `≻_h`:
    /// `Σ_j i^{(j)}_{l,k} (F_{I − 1^{(j)}_{l,k}}(h) v)^*`.
    pub fn dual_action_f(&self, nu0: &[i64], idx: usize, k: usize, l: usize) -> Result<Vec<(usize, Rf)>> {
        let sp = self.space(nu0);
        let r = Root::new(k, l);
        let mut target_nu = nu0.to_vec();
        for x in &mut target_nu[k - 1..l - 1] {
            *x -= 1;
        }
        let dst = self.space(&target_nu);
        let e = &sp.elems[idx];
        let p = self.basis.position(&r);
        let mut out = Vec::new();
        for j in 0..self.slots() {
            let c = e[j][p];
            if c > 0 {
                let mut e2 = e.clone();
                e2[j][p] -= 1;
                let i = dst.index_of(&e2).ok_or_else(|| Error::OutOfRange("left the weight space".into()))?;
                out.push((i, Rf::from_i64(c as i64)));
            }
        }
        Ok(out)
    }

    /// A basis of singular vectors (joint kernel of the simple raising operators).
    pub fn singular_vectors(&self, nu0: &[i64]) -> Vec<Vec<Rf>> {
        let d = self.space(nu0).dim();
        if d == 0 {
            return Vec::new();
        }
        let parts: Vec<Mat> = (1..self.n)
            .map(|i| self.gen_matrix(Gen::new(i, i + 1), nu0).as_ref().clone())
            .collect();
        Mat::vstack(&parts, d).kernel()
    }
}

/// A vector of a weight space in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWVector {
    pub nu0: Vec<i64>,
    pub coeffs: Vec<Rf>,
}

impl PBWVector {
    pub fn basis_vector(space: &WeightSpace, i: usize) -> PBWVector {
        let mut coeffs = vec![Rf::zero(); space.dim()];
        coeffs[i] = Rf::one();
        PBWVector { nu0: space.nu0.clone(), coeffs }
    }

    /// Applies a matrix unit via the module's generator matrices.
    pub fn act(&self, module: &TensorModule, g: Gen) -> PBWVector {
        let m = module.gen_matrix(g, &self.nu0);
        PBWVector { nu0: module.shifted(&self.nu0, g), coeffs: m.apply(&self.coeffs) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::sym;

    #[test]
    fn sl3_example_spaces() {
        let m = TensorModule::symbolic_vermas(3, 1, PbwBasis::standard(3)).unwrap();
        let s = m.space(&[1, 1]);
        assert_eq!(s.dim(), 2);
        let first = m.exponents(&s.elems[0], 0);
        assert_eq!(first, BTreeMap::from([((1, 2), 1), ((2, 3), 1)]));
        assert_eq!(m.space(&[2, 1]).dim(), 2);
        let sl2 = TensorModule::symbolic_vermas(2, 1, PbwBasis::standard(2)).unwrap();
        assert_eq!(sl2.space(&[3]).dim(), 1);
    }

    #[test]
    fn leibniz_on_two_factors() {
        let m = TensorModule::symbolic_vermas(2, 2, PbwBasis::standard(2)).unwrap();
        let s = m.space(&[1]);
        // basis: F v1 ⊗ v2 first, then v1 ⊗ F v2
        let e = m.gen_matrix(Gen::new(1, 2), &[1]);
        assert_eq!(e.rows, 1);
        // F = −e21, so E (F v1 ⊗ v2) = −(Λ1, α) v1 ⊗ v2
        assert_eq!(e.get(0, 0), &sym("L:1:1").neg());
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn sl2_gram_and_p_elements() {
        let m = TensorModule::symbolic_vermas(2, 1, PbwBasis::standard(2)).unwrap();
        for k in 0..4i64 {
            let g = m.shapovalov_gram(&[k]).unwrap();
            // S(e^k v, e^k v) = k! λ(λ−1)⋯(λ−k+1); F_k = (−1)^k e^k / k!
            let mut raw = Rf::one();
            for i in 0..k {
                raw = raw.mul(&sym("L:1:1").sub(&Rf::from_i64(i))).scale_int(i + 1);
            }
            let fact: i64 = (1..=k).product();
            assert_eq!(g.get(0, 0), &raw.div(&Rf::from_i64(fact * fact)).unwrap());
        }
    }
}
