//! Finitely presented Hopf *-algebras: normal forms by oriented rewriting,
//! coproduct, counit, antipode, star and the adjoint coaction.

mod validate;

pub use validate::validate_presentation;

use crate::error::{Error, Result};
use crate::expr::{self, Evaluator};
use crate::scalar::{format_combination, Param, Scalar};
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

/// Word in the generators, letters are generator indices.
pub type Word = Vec<u8>;

/// Degree-lexicographic comparison; generator order is index order.
pub fn deglex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Linear combination of words. Whether the words are normal is up to the
/// producer; everything returned by `HopfAlgebra` is normal.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Element {
        Element::monomial(Vec::new(), c)
    }

    pub fn word(w: Word) -> Element {
        Element::monomial(w, Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Element { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &c.mul(x));
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Scalar::int(-1), other);
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect() }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Scalar value when the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }
}

/// k-fold tensor of algebra elements, keyed by the tuple of leg words.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Tensor {
    pub legs: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Tensor {
    pub fn zero(legs: usize) -> Tensor {
        Tensor { legs, terms: BTreeMap::new() }
    }

    pub fn from_element(a: &Element) -> Tensor {
        let mut t = Tensor::zero(1);
        for (w, c) in a.terms() {
            t.add_term(vec![w.clone()], c);
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: &Scalar) {
        debug_assert_eq!(key.len(), self.legs);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Tensor) {
        assert_eq!(self.legs, other.legs);
        for (k, x) in &other.terms {
            self.add_term(k.clone(), &c.mul(x));
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(&Scalar::int(-1), other);
        out
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.legs);
        out.add_scaled(c, self);
        out
    }

    /// Plain concatenation of tensors (legs add up).
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.legs + other.legs);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                out.add_term(k, &c1.mul(c2));
            }
        }
        out
    }

    pub fn to_element(&self) -> Option<Element> {
        if self.legs != 1 {
            return None;
        }
        let mut e = Element::zero();
        for (k, c) in &self.terms {
            e.add_term(k[0].clone(), c);
        }
        Some(e)
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Element,
}

/// Raw presentation data, as read from a preset.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub star: Vec<usize>,
    pub rules: Vec<Rule>,
    pub coproduct: Vec<Tensor>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<Element>,
}

const STEP_BUDGET: usize = 2_000_000;

/// A presentation together with its memo tables. Operations return normal
/// forms.
pub struct HopfAlgebra {
    pres: Presentation,
    nf_cache: RwLock<HashMap<Word, Element>>,
    cop_cache: RwLock<HashMap<(usize, Word), Tensor>>,
}

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HopfAlgebra").field("generators", &self.pres.generators).finish()
    }
}

impl HopfAlgebra {
    pub fn new(pres: Presentation) -> Result<HopfAlgebra> {
        let n = pres.generators.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::Validation("generator count out of range".into()));
        }
        if pres.star.len() != n || pres.coproduct.len() != n || pres.counit.len() != n || pres.antipode.len() != n {
            return Err(Error::Validation("every generator needs star, coproduct, counit and antipode".into()));
        }
        if pres.rules.iter().any(|r| r.lhs.is_empty()) {
            return Err(Error::Validation("empty rule left-hand side".into()));
        }
        Ok(HopfAlgebra { pres, nf_cache: RwLock::new(HashMap::new()), cop_cache: RwLock::new(HashMap::new()) })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn ngens(&self) -> usize {
        self.pres.generators.len()
    }

    pub fn generator_name(&self, g: u8) -> &str {
        &self.pres.generators[g as usize]
    }

    pub fn generator_index(&self, name: &str) -> Option<u8> {
        self.pres.generators.iter().position(|g| g == name).map(|i| i as u8)
    }

    pub fn gen(&self, name: &str) -> Element {
        Element::word(vec![self.generator_index(name).expect("known generator")])
    }

    /// Leftmost redex: (position, rule index).
    pub fn find_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            for (r, rule) in self.pres.rules.iter().enumerate() {
                if w[i..].starts_with(&rule.lhs) {
                    return Some((i, r));
                }
            }
        }
        None
    }

    /// All redexes of a word.
    pub fn redexes(&self, w: &[u8]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            for (r, rule) in self.pres.rules.iter().enumerate() {
                if w[i..].starts_with(&rule.lhs) {
                    out.push((i, r));
                }
            }
        }
        out
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.find_redex(w).is_none()
    }

    /// One rewrite step at a given redex.
    pub fn rewrite_at(&self, w: &[u8], pos: usize, rule: usize) -> Element {
        let r = &self.pres.rules[rule];
        let mut out = Element::zero();
        for (rw, c) in r.rhs.terms() {
            let mut nw = w[..pos].to_vec();
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&w[pos + r.lhs.len()..]);
            out.add_term(nw, c);
        }
        out
    }

    fn nf_word(&self, w: &[u8], budget: &mut usize) -> Result<Element> {
        if let Some(e) = self.nf_cache.read().expect("cache lock").get(w) {
            return Ok(e.clone());
        }
        let result = match self.find_redex(w) {
            None => Element::word(w.to_vec()),
            Some((pos, r)) => {
                if *budget == 0 {
                    return Err(Error::RewriteBudget(STEP_BUDGET));
                }
                *budget -= 1;
                let step = self.rewrite_at(w, pos, r);
                let mut acc = Element::zero();
                for (nw, c) in step.terms() {
                    let sub = self.nf_word(nw, budget)?;
                    acc.add_scaled(c, &sub);
                }
                acc
            }
        };
        self.nf_cache.write().expect("cache lock").insert(w.to_vec(), result.clone());
        Ok(result)
    }

    pub fn try_normalize(&self, a: &Element) -> Result<Element> {
        let mut budget = STEP_BUDGET;
        let mut acc = Element::zero();
        for (w, c) in a.terms() {
            let nf = self.nf_word(w, &mut budget)?;
            acc.add_scaled(c, &nf);
        }
        Ok(acc)
    }

    /// Normal form; panics if the rule set fails to terminate (presets are
    /// validated on load, so this only fires on a broken presentation).
    pub fn normalize(&self, a: &Element) -> Element {
        self.try_normalize(a).expect("rewriting terminates on a validated presentation")
    }

    pub fn normal_word(&self, w: &[u8]) -> Element {
        let mut budget = STEP_BUDGET;
        self.nf_word(w, &mut budget).expect("rewriting terminates on a validated presentation")
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut acc = Element::zero();
        for (w1, c1) in a.terms() {
            for (w2, c2) in b.terms() {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let nf = self.normal_word(&w);
                acc.add_scaled(&c1.mul(c2), &nf);
            }
        }
        acc
    }

    pub fn pow(&self, a: &Element, k: usize) -> Element {
        let mut acc = Element::one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Legwise product of tensors with normalization of each leg.
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        assert_eq!(a.legs, b.legs);
        let mut out = Tensor::zero(a.legs);
        for (k1, c1) in a.terms() {
            for (k2, c2) in b.terms() {
                let c = c1.mul(c2);
                let mut partial: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), c)];
                for leg in 0..a.legs {
                    let mut w = k1[leg].clone();
                    w.extend_from_slice(&k2[leg]);
                    let nf = self.normal_word(&w);
                    let mut next = Vec::with_capacity(partial.len() * nf.len());
                    for (key, x) in &partial {
                        for (nw, y) in nf.terms() {
                            let mut k = key.clone();
                            k.push(nw.clone());
                            next.push((k, x.mul(y)));
                        }
                    }
                    partial = next;
                }
                for (k, x) in partial {
                    out.add_term(k, &x);
                }
            }
        }
        out
    }

    fn tensor_one(legs: usize) -> Tensor {
        let mut t = Tensor::zero(legs);
        t.add_term(vec![Vec::new(); legs], &Scalar::one());
        t
    }

    /// k-fold coproduct of a generator: apply φ to the first leg repeatedly.
    fn gen_coproduct(&self, g: u8, k: usize) -> Tensor {
        if k == 1 {
            return Tensor::from_element(&Element::word(vec![g]));
        }
        let prev = self.gen_coproduct(g, k - 1);
        let mut out = Tensor::zero(k);
        for (key, c) in prev.terms() {
            let first = self.coproduct_word(&key[0], 2);
            for (k2, c2) in first.terms() {
                let mut nk = k2.clone();
                nk.extend(key[1..].iter().cloned());
                out.add_term(nk, &c.mul(c2));
            }
        }
        out
    }

    /// Iterated coproduct of a word (k legs), computed multiplicatively from
    /// the generator images. The word need not be normal.
    pub fn coproduct_word(&self, w: &[u8], k: usize) -> Tensor {
        assert!(k >= 1);
        if let Some(t) = self.cop_cache.read().expect("cache lock").get(&(k, w.to_vec())) {
            return t.clone();
        }
        let t = if w.is_empty() {
            HopfAlgebra::tensor_one(k)
        } else if w.len() == 1 {
            if k == 2 {
                let raw = &self.pres.coproduct[w[0] as usize];
                let mut t = Tensor::zero(2);
                for (key, c) in raw.terms() {
                    let a = self.normal_word(&key[0]);
                    let b = self.normal_word(&key[1]);
                    for (wa, ca) in a.terms() {
                        for (wb, cb) in b.terms() {
                            t.add_term(vec![wa.clone(), wb.clone()], &c.mul(&ca.mul(cb)));
                        }
                    }
                }
                t
            } else {
                self.gen_coproduct(w[0], k)
            }
        } else {
            let (head, tail) = w.split_at(w.len() / 2);
            self.tensor_mul(&self.coproduct_word(head, k), &self.coproduct_word(tail, k))
        };
        self.cop_cache.write().expect("cache lock").insert((k, w.to_vec()), t.clone());
        t
    }

    pub fn iterated_coproduct(&self, a: &Element, k: usize) -> Tensor {
        let mut out = Tensor::zero(k);
        for (w, c) in a.terms() {
            out.add_scaled(c, &self.coproduct_word(w, k));
        }
        out
    }

    pub fn coproduct(&self, a: &Element) -> Tensor {
        self.iterated_coproduct(a, 2)
    }

    pub fn counit_word(&self, w: &[u8]) -> Scalar {
        w.iter().fold(Scalar::one(), |acc, &g| acc.mul(&self.pres.counit[g as usize]))
    }

    pub fn counit(&self, a: &Element) -> Scalar {
        a.terms().fold(Scalar::zero(), |acc, (w, c)| acc.add(&c.mul(&self.counit_word(w))))
    }

    /// Anti-multiplicative extension of the antipode on generators.
    pub fn antipode_word(&self, w: &[u8]) -> Element {
        let mut acc = Element::one();
        for &g in w.iter().rev() {
            let img = self.normalize(&self.pres.antipode[g as usize]);
            acc = self.mul(&acc, &img);
        }
        acc
    }

    pub fn antipode(&self, a: &Element) -> Element {
        let mut acc = Element::zero();
        for (w, c) in a.terms() {
            acc.add_scaled(c, &self.antipode_word(w));
        }
        acc
    }

    pub fn star_word_raw(&self, w: &[u8]) -> Word {
        w.iter().rev().map(|&g| self.pres.star[g as usize] as u8).collect()
    }

    /// Antilinear anti-multiplicative involution.
    pub fn star(&self, a: &Element) -> Element {
        let mut acc = Element::zero();
        for (w, c) in a.terms() {
            acc.add_scaled(&c.conj(), &self.normal_word(&self.star_word_raw(w)));
        }
        acc
    }

    /// ad(a) = a^(2) ⊗ κ(a^(1)) a^(3)
    pub fn adjoint(&self, a: &Element) -> Tensor {
        let t3 = self.iterated_coproduct(a, 3);
        let mut out = Tensor::zero(2);
        for (key, c) in t3.terms() {
            let k1 = self.antipode_word(&key[0]);
            let right = self.mul(&k1, &Element::word(key[2].clone()));
            for (w, x) in right.terms() {
                out.add_term(vec![key[1].clone(), w.clone()], &c.mul(x));
            }
        }
        out
    }

    /// Applies a linear map to one leg of a tensor.
    pub fn map_leg<F: Fn(&[u8]) -> Element>(&self, t: &Tensor, leg: usize, f: F) -> Tensor {
        let mut out = Tensor::zero(t.legs);
        for (key, c) in t.terms() {
            let img = f(&key[leg]);
            for (w, x) in img.terms() {
                let mut k = key.clone();
                k[leg] = w.clone();
                out.add_term(k, &c.mul(x));
            }
        }
        out
    }

    /// Contracts a leg with a scalar-valued map (drops the leg).
    pub fn contract_leg<F: Fn(&[u8]) -> Scalar>(&self, t: &Tensor, leg: usize, f: F) -> Tensor {
        let mut out = Tensor::zero(t.legs - 1);
        for (key, c) in t.terms() {
            let s = f(&key[leg]);
            if s.is_zero() {
                continue;
            }
            let mut k = key.clone();
            k.remove(leg);
            out.add_term(k, &c.mul(&s));
        }
        out
    }

    /// Multiplies legs `i` and `i+1` together.
    pub fn multiply_legs(&self, t: &Tensor, i: usize) -> Tensor {
        let mut out = Tensor::zero(t.legs - 1);
        for (key, c) in t.terms() {
            let mut w = key[i].clone();
            w.extend_from_slice(&key[i + 1]);
            let nf = self.normal_word(&w);
            for (nw, x) in nf.terms() {
                let mut k = key.clone();
                k.remove(i + 1);
                k[i] = nw.clone();
                out.add_term(k, &c.mul(x));
            }
        }
        out
    }

    /// Normal words of each length up to `max_len`.
    pub fn normal_words(&self, max_len: usize) -> Vec<Vec<Word>> {
        let mut levels: Vec<Vec<Word>> = vec![vec![Vec::new()]];
        for _ in 0..max_len {
            let prev = levels.last().expect("non-empty");
            let mut next = Vec::new();
            for w in prev {
                for g in 0..self.ngens() as u8 {
                    let mut nw = w.clone();
                    nw.push(g);
                    if self.is_normal(&nw) {
                        next.push(nw);
                    }
                }
            }
            levels.push(next);
        }
        levels
    }

    pub fn format_word(&self, w: &[u8]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = self.generator_name(w[i]);
            parts.push(if j - i == 1 { name.to_string() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }

    pub fn format(&self, a: &Element) -> String {
        let mut items: Vec<(&Word, &Scalar)> = a.terms().collect();
        items.sort_by(|x, y| deglex(y.0, x.0));
        format_combination(items.into_iter().map(|(w, c)| (self.format_word(w), c)))
    }

    pub fn format_tensor(&self, t: &Tensor) -> String {
        let mut items: Vec<(&Vec<Word>, &Scalar)> = t.terms().collect();
        items.sort_by(|x, y| {
            for (a, b) in y.0.iter().zip(x.0.iter()) {
                let o = deglex(a, b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        });
        format_combination(items.into_iter().map(|(k, c)| {
            let legs: Vec<String> =
                k.iter().map(|w| if w.is_empty() { "1".to_string() } else { self.format_word(w) }).collect();
            (legs.join("@"), c)
        }))
    }

    /// Inverse of a monomial `c*g` when κ(g) is a two-sided inverse.
    fn monomial_inverse(&self, a: &Element) -> Result<Element> {
        if a.len() == 1 {
            let (w, c) = a.terms().next().expect("one term");
            let k = self.antipode_word(w);
            let wa = Element::word(w.clone());
            if self.mul(&k, &wa) == Element::one() && self.mul(&wa, &k) == Element::one() {
                return Ok(k.scale(&c.inv()?));
            }
        }
        Err(Error::Parse("negative powers need an invertible monomial".into()))
    }

    /// Parses an element (`@` allowed: result has as many legs as factors).
    pub fn parse_tensor(&self, src: &str) -> Result<Tensor> {
        let e = expr::parse(src)?;
        TensorEval { alg: self }.eval(&e)
    }

    pub fn parse(&self, src: &str) -> Result<Element> {
        self.parse_tensor(src)?
            .to_element()
            .ok_or_else(|| Error::Parse(format!("expected an algebra element, got a tensor: {src:?}")))
    }
}

/// Evaluates expressions into normalized tensors. Plain elements are
/// one-leg tensors; a pure scalar multiplies a tensor of any rank.
pub struct TensorEval<'a> {
    pub alg: &'a HopfAlgebra,
}

fn scalar_of(t: &Tensor) -> Option<Scalar> {
    if t.legs != 1 {
        return None;
    }
    t.to_element().and_then(|e| e.as_scalar())
}

impl<'a> Evaluator for TensorEval<'a> {
    type Value = Tensor;

    fn number(&self, n: &BigInt) -> Result<Tensor> {
        Ok(Tensor::from_element(&Element::scalar(Scalar::from_bigint(n.clone()))))
    }

    fn name(&self, s: &str) -> Result<Tensor> {
        if let Some(p) = Param::from_name(s) {
            return Ok(Tensor::from_element(&Element::scalar(Scalar::param(p))));
        }
        match self.alg.generator_index(s) {
            Some(g) => Ok(Tensor::from_element(&self.alg.normal_word(&[g]))),
            None => Err(Error::Parse(format!("unknown name {s:?}"))),
        }
    }

    fn add(&self, a: Tensor, b: Tensor) -> Result<Tensor> {
        if a.legs != b.legs {
            return Err(Error::Parse("sum of tensors of different rank".into()));
        }
        let mut out = a;
        out.add_scaled(&Scalar::one(), &b);
        Ok(out)
    }

    fn neg(&self, a: Tensor) -> Result<Tensor> {
        Ok(a.scale(&Scalar::int(-1)))
    }

    fn mul(&self, a: Tensor, b: Tensor) -> Result<Tensor> {
        if let Some(s) = scalar_of(&a) {
            return Ok(b.scale(&s));
        }
        if let Some(s) = scalar_of(&b) {
            return Ok(a.scale(&s));
        }
        if a.legs != b.legs {
            return Err(Error::Parse("product of tensors of different rank".into()));
        }
        Ok(self.alg.tensor_mul(&a, &b))
    }

    fn div(&self, a: Tensor, b: Tensor) -> Result<Tensor> {
        let s = scalar_of(&b).ok_or_else(|| Error::Parse("division by a non-scalar".into()))?;
        Ok(a.scale(&s.inv()?))
    }

    fn tensor(&self, a: Tensor, b: Tensor) -> Result<Tensor> {
        Ok(a.outer(&b))
    }

    fn pow(&self, a: Tensor, k: i64) -> Result<Tensor> {
        if let Some(s) = scalar_of(&a) {
            return Ok(Tensor::from_element(&Element::scalar(s.pow(k)?)));
        }
        let el = a.to_element().ok_or_else(|| Error::Parse("power of a tensor".into()))?;
        let base = if k < 0 { self.alg.monomial_inverse(&el)? } else { el };
        Ok(Tensor::from_element(&self.alg.pow(&base, k.unsigned_abs() as usize)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn u1() -> std::sync::Arc<HopfAlgebra> {
        presets::load_unchecked("u1").unwrap().alg
    }

    #[test]
    fn unitary_inverse() {
        let a = u1();
        assert_eq!(a.parse("u*u^-1").unwrap(), Element::one());
        assert_eq!(a.parse("u^3*u^-1").unwrap(), a.parse("u^2").unwrap());
    }

    #[test]
    fn group_like_coproducts() {
        let a = u1();
        let u = a.gen("u");
        assert_eq!(a.format_tensor(&a.coproduct(&u)), "u@u");
        assert_eq!(a.format_tensor(&a.coproduct(&Element::one())), "1@1");
        let u2 = a.pow(&u, 2);
        assert_eq!(a.format_tensor(&a.iterated_coproduct(&u2, 3)), "u^2@u^2@u^2");
    }

    #[test]
    fn u1_counit_antipode_star() {
        let a = u1();
        let u = a.gen("u");
        assert_eq!(a.counit(&u), Scalar::one());
        assert_eq!(a.antipode(&u), a.parse("u^-1").unwrap());
        assert_eq!(a.star(&u), a.parse("u^-1").unwrap());
        assert_eq!(a.counit(&Element::one()), Scalar::one());
    }

    #[test]
    fn u1_adjoint_is_trivial() {
        let a = u1();
        assert_eq!(a.format_tensor(&a.adjoint(&a.gen("u"))), "u@1");
        assert_eq!(a.format_tensor(&a.adjoint(&Element::one())), "1@1");
    }
}
