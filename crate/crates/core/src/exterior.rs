//! Tensor powers of Γ_inv, braided antisymmetrizers, and graded quotients of
//! the tensor algebra: the braided exterior algebra Γ^∨, the universal
//! envelope Γ_inv^∧ and (in `universal`) the braided polynomial algebra Σ.

use crate::calculus::{digits, undigits, Calculus};
use crate::error::{Error, Result};
use crate::gla::{cohomology_rank, FinVector, LinearMap, RowSpace};
use crate::presets::CalculusKind;
use crate::report::Report;
use crate::scalar::Scalar;
use std::collections::HashMap;

/// σ acting on slots (i, i+1) of the k-th tensor power of a d-dim space.
pub fn braid_at(sigma: &LinearMap, d: usize, k: usize, i: usize) -> LinearMap {
    let left = d.pow(i as u32);
    let right = d.pow((k - i - 2) as u32);
    LinearMap::identity(left).kron(sigma).kron(&LinearMap::identity(right))
}

/// Reduced word of a permutation (`p[i]` is the image of i): `p = s_{a1}…s_{ar}`.
pub fn reduced_word(p: &[usize]) -> Vec<usize> {
    let mut p = p.to_vec();
    let mut word = Vec::new();
    // p = p' s_i with p' = p s_i whenever p has a descent at i.
    while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        word.push(i);
    }
    word.reverse();
    word
}

/// Braid lift σ_π of a permutation of k slots, through a reduced word.
fn braid_of(sigma: &LinearMap, d: usize, k: usize, p: &[usize], cache: &mut HashMap<usize, LinearMap>) -> LinearMap {
    let mut acc = LinearMap::identity(d.pow(k as u32));
    for a in reduced_word(p) {
        let s = cache.entry(a).or_insert_with(|| braid_at(sigma, d, k, a));
        acc = acc.compose(s);
    }
    acc
}

fn sign_of(p: &[usize]) -> Scalar {
    if reduced_word(p).len().is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::int(-1)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A_{kl} = Σ (-1)^s σ_s over the minimal coset representatives s, i.e. the
/// permutations whose inverse keeps the order inside the first k and the
/// last l slots.
pub fn shuffle_antisymmetrizer(sigma: &LinearMap, d: usize, k: usize, l: usize) -> LinearMap {
    let n = k + l;
    let dim = d.pow(n as u32);
    let mut acc = LinearMap::zero(dim, dim);
    let mut cache = HashMap::new();
    for first in subsets(n, k) {
        let second: Vec<usize> = (0..n).filter(|i| !first.contains(i)).collect();
        let inv: Vec<usize> = first.iter().chain(second.iter()).copied().collect();
        let mut p = vec![0; n];
        for (i, &j) in inv.iter().enumerate() {
            p[j] = i;
        }
        acc = acc.add(&braid_of(sigma, d, n, &p, &mut cache).scale(&sign_of(&p)));
    }
    acc
}

/// A_n through A_n = (A_{n-1} ⊗ id) A_{n-1,1}, A_1 = id.
pub fn antisymmetrizer(sigma: &LinearMap, d: usize, n: usize) -> LinearMap {
    let mut a = LinearMap::identity(d.pow(n.min(1) as u32));
    for m in 2..=n {
        let left = a.kron(&LinearMap::identity(d));
        a = left.compose(&shuffle_antisymmetrizer(sigma, d, m - 1, 1));
    }
    a
}

/// A_n as the full signed sum over S_n; test oracle for small n.
pub fn antisymmetrizer_direct(sigma: &LinearMap, d: usize, n: usize) -> LinearMap {
    let dim = d.pow(n as u32);
    let mut acc = LinearMap::zero(dim, dim);
    let mut cache = HashMap::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        acc = acc.add(&braid_of(sigma, d, n, &p, &mut cache).scale(&sign_of(&p)));
        if !next_permutation(&mut p) {
            break;
        }
    }
    acc
}

/// A_{k+l} = (A_k ⊗ A_l) A_{kl} for k, l ≥ 1 with k+l ≤ `max`, and the
/// recursive A_n against the full permutation sum for n ≤ `direct_max`.
pub fn factorization_report(sigma: &LinearMap, d: usize, max: usize, direct_max: usize) -> Report {
    let mut rep = Report::new();
    let a: Vec<LinearMap> = (0..=max).map(|n| antisymmetrizer(sigma, d, n)).collect();
    let mut fail = None;
    let mut count = 0;
    'outer: for n in 2..=max {
        for k in 1..n {
            let l = n - k;
            count += 1;
            if a[k].kron(&a[l]).compose(&shuffle_antisymmetrizer(sigma, d, k, l)) != a[n] {
                fail = Some(format!("A_{n} differs from (A_{k}⊗A_{l})A_{{{k}{l}}}"));
                break 'outer;
            }
        }
    }
    rep.record_first_failure("antisymmetrizer-factorization", fail, format!("{count} splittings up to degree {max}"));
    let fail = (1..=direct_max)
        .find(|&n| antisymmetrizer_direct(sigma, d, n) != antisymmetrizer(sigma, d, n))
        .map(|n| format!("recursive and direct A_{n} differ"));
    rep.record_first_failure("antisymmetrizer-direct", fail, format!("identical for n ≤ {direct_max}"));
    rep
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One degree of a graded quotient of the tensor algebra on n generators.
#[derive(Clone, Debug)]
struct Level {
    /// Standard monomials; the prefix of each is a basis word one level down.
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// `mul_gen[i * n + g]` = (basis i of the previous level) · θ_g.
    mul_gen: Vec<FinVector>,
}

/// Quotient of the tensor algebra by a graded two-sided ideal, stored as
/// level k = (level k-1 ⊗ V) / (image of the ideal slice).
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    n: usize,
    levels: Vec<Level>,
}

impl GradedQuotient {
    pub fn new(n: usize) -> GradedQuotient {
        let l0 = Level { basis: vec![Vec::new()], index: HashMap::from([(Vec::new(), 0)]), mul_gen: Vec::new() };
        GradedQuotient { n, levels: vec![l0] }
    }

    /// Quotient by the ideal generated by quadratic relations.
    pub fn quadratic(n: usize, rel2: &[FinVector], max_degree: usize) -> GradedQuotient {
        GradedQuotient::with_relations(n, &[], rel2, max_degree)
    }

    /// Quotient by the ideal generated by linear relations `rel1` (vectors
    /// in V) and quadratic relations `rel2` (vectors in V⊗V).
    pub fn with_relations(n: usize, rel1: &[FinVector], rel2: &[FinVector], max_degree: usize) -> GradedQuotient {
        let mut q = GradedQuotient::new(n);
        for k in 1..=max_degree {
            let mut rels = Vec::new();
            for b in &q.levels[k - 1].basis {
                let base = undigits(b, n) * n;
                rels.extend(rel1.iter().map(|r| r.map_indices(|i| base + i)));
            }
            if k >= 2 {
                for b in &q.levels[k - 2].basis {
                    let base = undigits(b, n) * n * n;
                    rels.extend(rel2.iter().map(|r| r.map_indices(|i| base + i)));
                }
            }
            q.push_level(&rels);
        }
        q
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, |l| l.basis.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.basis.len()).collect()
    }

    pub fn word(&self, k: usize, i: usize) -> &[usize] {
        &self.levels[k].basis[i]
    }

    pub fn basis(&self, k: usize) -> &[Vec<usize>] {
        &self.levels[k].basis
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.levels.get(w.len()).and_then(|l| l.index.get(w).copied())
    }

    /// Adds the next level; `relations` are tensors in V^{⊗k} (base-n digit
    /// indices) spanning the ideal slice modulo the previous levels.
    pub fn push_level(&mut self, relations: &[FinVector]) {
        let k = self.levels.len();
        let n = self.n;
        let prev_dim = self.levels[k - 1].basis.len();
        let mut rs = RowSpace::leading();
        for r in relations {
            let mut acc = FinVector::zero();
            for (idx, c) in r.entries() {
                let ds = digits(*idx, n, k);
                let prefix = self.reduce_word(&ds[..k - 1]);
                acc = acc.add_scaled(c, &prefix.map_indices(|i| i * n + ds[k - 1]));
            }
            rs.insert(&acc);
        }
        let mut basis = Vec::new();
        let mut index = HashMap::new();
        let mut coord_to_basis = HashMap::new();
        for c in 0..prev_dim * n {
            if !rs.is_pivot(c) {
                let mut w = self.levels[k - 1].basis[c / n].clone();
                w.push(c % n);
                coord_to_basis.insert(c, basis.len());
                index.insert(w.clone(), basis.len());
                basis.push(w);
            }
        }
        let mul_gen = (0..prev_dim * n)
            .map(|c| match coord_to_basis.get(&c) {
                Some(&b) => FinVector::unit(b),
                None => rs.reduce(&FinVector::unit(c)).map_indices(|i| coord_to_basis[&i]),
            })
            .collect();
        self.levels.push(Level { basis, index, mul_gen });
    }

    /// x · θ_g for x in level k.
    pub fn mul_gen(&self, k: usize, x: &FinVector, g: usize) -> FinVector {
        let lvl = &self.levels[k + 1];
        let mut acc = FinVector::zero();
        for (i, c) in x.entries() {
            acc = acc.add_scaled(c, &lvl.mul_gen[i * self.n + g]);
        }
        acc
    }

    /// Class of the tensor word θ_{w1}…θ_{wk}.
    pub fn reduce_word(&self, w: &[usize]) -> FinVector {
        let mut acc = FinVector::unit(0);
        for (k, &g) in w.iter().enumerate() {
            acc = self.mul_gen(k, &acc, g);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Class of a tensor in V^{⊗k}.
    pub fn reduce_tensor(&self, v: &FinVector, k: usize) -> FinVector {
        let mut acc = FinVector::zero();
        for (idx, c) in v.entries() {
            acc = acc.add_scaled(c, &self.reduce_word(&digits(*idx, self.n, k)));
        }
        acc
    }

    /// Representative tensor of a quotient element (basis words).
    pub fn lift(&self, v: &FinVector, k: usize) -> FinVector {
        v.map_indices(|i| undigits(&self.levels[k].basis[i], self.n))
    }

    /// Product of x in level p and y in level q.
    pub fn mul(&self, x: &FinVector, p: usize, y: &FinVector, q: usize) -> FinVector {
        let mut acc = FinVector::zero();
        for (j, c) in y.entries() {
            let mut part = x.clone();
            for (s, &g) in self.levels[q].basis[*j].iter().enumerate() {
                part = self.mul_gen(p + s, &part, g);
            }
            acc = acc.add_scaled(c, &part);
        }
        acc
    }
}

/// Differential graded model of Γ_inv^∧ or Γ^∨ over the invariant forms.
#[derive(Clone, Debug)]
pub struct GradedModel {
    pub kind: CalculusKind,
    pub quotient: GradedQuotient,
    /// `d[k]` maps level k to level k+1, for k < max degree.
    pub d: Vec<LinearMap>,
}

impl GradedModel {
    pub fn dims(&self) -> Vec<usize> {
        self.quotient.dims()
    }

    pub fn max_degree(&self) -> usize {
        self.quotient.max_degree()
    }

    pub fn apply_d(&self, x: &FinVector, k: usize) -> FinVector {
        self.d[k].apply(x)
    }
}

/// d on the tensor word θ_{w1}…θ_{wk} as an antiderivation with values
/// `d1[g]` (tensors in V^{⊗2}), then reduced.
fn d_word(q: &GradedQuotient, d1: &[FinVector], w: &[usize]) -> FinVector {
    let n = q.ngens();
    let k = w.len();
    let mut acc = FinVector::zero();
    for i in 0..k {
        let left = undigits(&w[..i], n);
        let right = undigits(&w[i + 1..], n);
        let tail = n.pow((k - i - 1) as u32);
        let sign = if i % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
        let t = d1[w[i]].map_indices(|j| (left * n * n + j) * tail + right);
        acc = acc.add_scaled(&sign, &q.reduce_tensor(&t, k + 1));
    }
    acc
}

fn build_d(q: &GradedQuotient, d1: &[FinVector]) -> Vec<LinearMap> {
    (0..q.max_degree())
        .map(|k| {
            let cols = q.basis(k).iter().map(|w| d_word(q, d1, w)).collect();
            LinearMap::from_columns(q.dim(k), q.dim(k + 1), cols)
        })
        .collect()
}

/// Γ_inv^∧ = Γ_inv^⊗ / ⟨S^∧2⟩ with d π(a) = -π(a^(1)) π(a^(2)).
pub fn envelope_model(calc: &Calculus, max_degree: usize) -> GradedModel {
    let n = calc.dim();
    let q = GradedQuotient::quadratic(n, calc.s_wedge2().rows(), max_degree);
    let d1: Vec<FinVector> = (0..n).map(|i| calc.delta0(i)).collect();
    let d = build_d(&q, &d1);
    GradedModel { kind: CalculusKind::Wedge, quotient: q, d }
}

/// Γ^∨ with Γ^{∨k} = Γ^{⊗k} / ker A_k.
pub fn vee_model(calc: &Calculus, max_degree: usize) -> GradedModel {
    let n = calc.dim();
    let mut q = GradedQuotient::new(n);
    for k in 1..=max_degree {
        let rels = if k < 2 { Vec::new() } else { antisymmetrizer(calc.sigma(), n, k).kernel_basis() };
        q.push_level(&rels);
    }
    let d1: Vec<FinVector> = (0..n).map(|i| calc.delta0(i)).collect();
    let d = build_d(&q, &d1);
    GradedModel { kind: CalculusKind::Vee, quotient: q, d }
}

pub fn model(calc: &Calculus, kind: CalculusKind, max_degree: usize) -> GradedModel {
    match kind {
        CalculusKind::Wedge => envelope_model(calc, max_degree),
        CalculusKind::Vee => vee_model(calc, max_degree),
    }
}

/// dim Γ^{∨k} = rank A_k for k ≤ max_degree.
pub fn exterior_dims(calc: &Calculus, max_degree: usize) -> Vec<usize> {
    let n = calc.dim();
    (0..=max_degree)
        .map(|k| if k == 0 { 1 } else { antisymmetrizer(calc.sigma(), n, k).rank() })
        .collect()
}

/// dim H^k of the model for k < max degree (the top level has no outgoing
/// differential in the model and is omitted).
pub fn group_cohomology(model: &GradedModel) -> Result<Vec<usize>> {
    let top = model.max_degree();
    if top == 0 {
        return Err(Error::Compute("model needs degree at least 1".into()));
    }
    (0..top)
        .map(|k| {
            let d_in = if k == 0 { LinearMap::zero(0, model.quotient.dim(0)) } else { model.d[k - 1].clone() };
            cohomology_rank(&d_in, &model.d[k])
        })
        .collect()
}

/// Checks d∘d = 0 on every stored degree.
pub fn d_squared_zero(model: &GradedModel) -> bool {
    model.d.windows(2).all(|w| w[1].compose(&w[0]).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use std::sync::Arc;

    fn sumu2() -> Arc<Calculus> {
        presets::load_unchecked("sumu2-4d").unwrap().calc
    }

    fn u1() -> Arc<Calculus> {
        presets::load_unchecked("u1").unwrap().calc
    }

    #[test]
    fn reduced_words_have_inversion_length() {
        assert_eq!(reduced_word(&[0, 1, 2]), Vec::<usize>::new());
        assert_eq!(reduced_word(&[1, 0]), vec![0]);
        assert_eq!(reduced_word(&[2, 1, 0]).len(), 3);
    }

    #[test]
    fn low_antisymmetrizers() {
        let c = sumu2();
        let n = c.dim();
        assert_eq!(antisymmetrizer(c.sigma(), n, 1), LinearMap::identity(n));
        let a2 = LinearMap::identity(n * n).sub(c.sigma());
        assert_eq!(antisymmetrizer(c.sigma(), n, 2), a2);
        let u = u1();
        assert!(antisymmetrizer(u.sigma(), 1, 2).is_zero());
    }

    #[test]
    fn braid_lift_is_independent_of_reduced_word() {
        let c = sumu2();
        let n = c.dim();
        let s1 = braid_at(c.sigma(), n, 3, 0);
        let s2 = braid_at(c.sigma(), n, 3, 1);
        assert_eq!(s1.compose(&s2).compose(&s1), s2.compose(&s1).compose(&s2));
    }

    #[test]
    fn u1_models() {
        let c = u1();
        assert_eq!(exterior_dims(&c, 4), vec![1, 1, 0, 0, 0]);
        let m = envelope_model(&c, 4);
        assert_eq!(m.dims(), vec![1, 1, 0, 0, 0]);
        assert!(m.d[1].is_zero());
        assert_eq!(group_cohomology(&m).unwrap(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn sumu2_envelope_is_a_complex() {
        let c = sumu2();
        let m = envelope_model(&c, 3);
        assert_eq!(m.dims()[1], 4);
        assert!(d_squared_zero(&m));
    }

    #[test]
    fn kernels_of_antisymmetrizers_form_an_ideal() {
        let c = sumu2();
        let n = c.dim();
        let a2 = antisymmetrizer(c.sigma(), n, 2);
        let a3 = antisymmetrizer(c.sigma(), n, 3);
        for v in a2.kernel_basis() {
            for g in 0..n {
                let right = crate::calculus::outer(&v, &FinVector::unit(g), n);
                let left = crate::calculus::outer(&FinVector::unit(g), &v, n * n);
                assert!(a3.apply(&right).is_zero());
                assert!(a3.apply(&left).is_zero());
            }
        }
    }
}
