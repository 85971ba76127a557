use crate::calculus::Calculus;
use crate::exterior::GradedQuotient;
use crate::gla::{FinVector, LinearMap, RowSpace};
use crate::hopf::{Element, Tensor, Word};
use crate::report::Report;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Ad-coaction images keyed by (degree, basis index).
type CoactionCache = HashMap<(usize, usize), Arc<Vec<Element>>>;

/// Σ = Γ_inv^⊗ / J_σ, J_σ generated by im(I - σ). Generators of Σ stand
/// for the curvature values R(θ_i) and are even.
pub struct SigmaAlgebra {
    calc: Arc<Calculus>,
    q: GradedQuotient,
    coaction_cache: RwLock<CoactionCache>,
}

impl std::fmt::Debug for SigmaAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SigmaAlgebra").field("dims", &self.q.dims()).finish()
    }
}

/// Rows spanning im(I - σ).
pub fn sigma_relations(calc: &Calculus) -> Vec<FinVector> {
    let n = calc.dim();
    let m = LinearMap::identity(n * n).sub(calc.sigma());
    RowSpace::from_vectors(m.columns()).rows().to_vec()
}

impl SigmaAlgebra {
    pub fn new(calc: Arc<Calculus>, max_degree: usize) -> SigmaAlgebra {
        let rel2 = sigma_relations(&calc);
        let q = GradedQuotient::quadratic(calc.dim(), &rel2, max_degree);
        SigmaAlgebra { calc, q, coaction_cache: RwLock::new(HashMap::new()) }
    }

    /// Σ divided further by the ideal generated by the given basis elements.
    pub fn factor(calc: Arc<Calculus>, killed: &[usize], max_degree: usize) -> SigmaAlgebra {
        let rel2 = sigma_relations(&calc);
        let rel1: Vec<FinVector> = killed.iter().map(|&i| FinVector::unit(i)).collect();
        let q = GradedQuotient::with_relations(calc.dim(), &rel1, &rel2, max_degree);
        SigmaAlgebra { calc, q, coaction_cache: RwLock::new(HashMap::new()) }
    }

    pub fn calc(&self) -> &Calculus {
        &self.calc
    }

    pub fn quotient(&self) -> &GradedQuotient {
        &self.q
    }

    pub fn max_degree(&self) -> usize {
        self.q.max_degree()
    }

    pub fn dim(&self, s: usize) -> usize {
        self.q.dim(s)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.q.dims()
    }

    pub fn reduce_tensor(&self, v: &FinVector, k: usize) -> FinVector {
        self.q.reduce_tensor(v, k)
    }

    pub fn reduce_word(&self, w: &[usize]) -> FinVector {
        self.q.reduce_word(w)
    }

    pub fn mul(&self, x: &FinVector, p: usize, y: &FinVector, q: usize) -> FinVector {
        self.q.mul(x, p, y, q)
    }

    /// ϖ_Σ of the s-th level basis element i: `Σ_k e_k ⊗ out[k]`.
    pub fn coaction(&self, s: usize, i: usize) -> Arc<Vec<Element>> {
        if let Some(v) = self.coaction_cache.read().expect("lock").get(&(s, i)) {
            return v.clone();
        }
        let n = self.calc.dim();
        let alg = self.calc.alg();
        let mut state = vec![Element::one()];
        for (j, &y) in self.q.word(s, i).iter().enumerate() {
            let mut next = vec![Element::zero(); self.q.dim(j + 1)];
            for (b, eb) in state.iter().enumerate() {
                if eb.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let c = self.calc.coeff(k, y);
                    if c.is_zero() {
                        continue;
                    }
                    let prod = alg.mul(eb, c);
                    for (t, x) in self.q.mul_gen(j, &FinVector::unit(b), k).entries() {
                        next[*t].add_scaled(x, &prod);
                    }
                }
            }
            state = next;
        }
        let out = Arc::new(state);
        self.coaction_cache.write().expect("lock").insert((s, i), out.clone());
        out
    }

    pub fn coaction_of(&self, x: &FinVector, s: usize) -> Vec<Element> {
        let mut out = vec![Element::zero(); self.dim(s)];
        for (i, c) in x.entries() {
            for (k, e) in self.coaction(s, *i).iter().enumerate() {
                out[k].add_scaled(c, e);
            }
        }
        out
    }

    /// ϖ_Σ(x) - x ⊗ 1 as a vector over (basis, word) pairs.
    fn invariance_map(&self, s: usize) -> LinearMap {
        let mut index: HashMap<(usize, Word), usize> = HashMap::new();
        let mut cols = Vec::new();
        for i in 0..self.dim(s) {
            let mut coaction = (*self.coaction(s, i)).clone();
            coaction[i].add_term(Vec::new(), &crate::scalar::Scalar::int(-1));
            let mut pairs = Vec::new();
            for (k, e) in coaction.iter().enumerate() {
                for (w, c) in e.terms() {
                    let next = index.len();
                    let idx = *index.entry((k, w.clone())).or_insert(next);
                    pairs.push((idx, c.clone()));
                }
            }
            cols.push(FinVector::from_pairs(pairs));
        }
        LinearMap::from_columns(self.dim(s), index.len(), cols)
    }

    /// Basis of I(Σ) in degree s.
    pub fn invariants(&self, s: usize) -> Vec<FinVector> {
        self.invariance_map(s).kernel_basis()
    }

    pub fn is_invariant(&self, x: &FinVector, s: usize) -> bool {
        let c = self.coaction_of(x, s);
        c.iter().enumerate().all(|(k, e)| {
            let mut e = e.clone();
            e.add_term(Vec::new(), &x.get(k).neg());
            e.is_zero()
        })
    }

    /// Σ c · π(w_1) ⋯ π(w_k) over the terms of a k-legged tensor, in Σ_k.
    pub fn pi_legs(&self, t: &Tensor) -> FinVector {
        let n = self.calc.dim();
        let mut out = FinVector::zero();
        for (legs, c) in t.terms() {
            let mut acc = FinVector::unit(0);
            for (j, w) in legs.iter().enumerate() {
                let p = self.calc.pi_word(w);
                if p.is_zero() {
                    acc = FinVector::zero();
                    break;
                }
                let mut next = FinVector::zero();
                for g in 0..n {
                    let x = p.get(g);
                    if !x.is_zero() {
                        next = next.add_scaled(&x, &self.q.mul_gen(j, &acc, g));
                    }
                }
                acc = next;
            }
            out = out.add_scaled(c, &acc);
        }
        out
    }

    /// Star of Σ: generators are even, so products reverse without sign.
    pub fn star(&self, x: &FinVector, s: usize) -> FinVector {
        let n = self.calc.dim();
        let sm = self.calc.star_matrix();
        let mut out = FinVector::zero();
        for (i, c) in x.entries() {
            let mut acc = FinVector::single(0, c.conj());
            for (j, &g) in self.q.word(s, *i).iter().rev().enumerate() {
                let row = sm.row(g);
                let mut next = FinVector::zero();
                for (h, y) in row.entries() {
                    next = next.add_scaled(y, &self.q.mul_gen(j, &acc, *h));
                }
                acc = next;
            }
            out = out.add(&acc);
        }
        debug_assert!(n > 0);
        out
    }

    /// Every I(Σ) basis element of degree ≤ max_inv commutes with every Σ
    /// basis element of degree ≤ max_any; Σ must be built to the sum.
    pub fn centrality(&self, max_inv: usize, max_any: usize) -> Report {
        let mut rep = Report::new();
        if max_inv + max_any > self.max_degree() {
            rep.record(
                "centrality",
                false,
                format!("Σ is built to degree {}, products need {}", self.max_degree(), max_inv + max_any),
            );
            return rep;
        }
        let mut fail = None;
        let mut pairs = 0usize;
        'outer: for s in 0..=max_inv {
            for x in self.invariants(s) {
                for t in 0..=max_any {
                    for j in 0..self.dim(t) {
                        let v = FinVector::unit(j);
                        pairs += 1;
                        if self.mul(&x, s, &v, t) != self.mul(&v, t, &x, s) {
                            fail = Some(format!(
                                "{} does not commute with {}",
                                self.format(&x, s),
                                self.format(&v, t)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        rep.record_first_failure("centrality", fail, format!("{pairs} pairs commute"));
        rep
    }

    pub fn format(&self, x: &FinVector, s: usize) -> String {
        let names = self.calc.basis_names();
        crate::scalar::format_combination(x.entries().iter().map(|(i, c)| {
            let w: Vec<&str> = self.q.word(s, *i).iter().map(|&g| names[g].as_str()).collect();
            (w.join("*"), c)
        }))
    }
}
