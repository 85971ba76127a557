//! The universal algebras: the free differential envelope Ω of Γ_inv^⊗,
//! its extended coaction ãd and invariants ℸ, the braided polynomial
//! algebra Σ with its invariant part I(Σ), and Ω_* ≅ Σ ⊗ Γ_inv^∧.

mod adtilde;
mod omega_star;
mod sigma;

pub use adtilde::{AdTilde, DalethDegree, Mixed, MixedKey};
pub use omega_star::{OmegaStar, OsKey, OsElem};
pub use sigma::{sigma_relations, SigmaAlgebra};

use crate::calculus::Calculus;
use crate::error::Result;
use crate::exterior::GradedQuotient;
use crate::hopf::Element;
use crate::gla::{cohomology_rank, FinVector, LinearMap};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, HashMap};

/// Element of Ω: words over θ_0..θ_{n-1} (letters 0..n) and
/// Θ_i = dθ_i (letters n..2n).
pub type OmegaElem = BTreeMap<Vec<usize>, Scalar>;

pub fn add_term<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match m.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        Entry::Occupied(mut e) => {
            let s = e.get().add(c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

pub fn add_scaled<K: Ord + Clone>(m: &mut BTreeMap<K, Scalar>, c: &Scalar, other: &BTreeMap<K, Scalar>) {
    for (k, x) in other {
        add_term(m, k.clone(), &c.mul(x));
    }
}

pub(crate) fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

/// ϑ ↦ ϑ∘a on every level of a graded quotient of Γ_inv^⊗ (Γ^∧ or Γ^∨).
#[derive(Clone, Debug)]
pub struct RightAction {
    /// `mats[g][x]` acts by the generator x on level g.
    mats: Vec<Vec<LinearMap>>,
}

impl RightAction {
    /// Built level by level from (ϑθ)∘x = Σ (ϑ∘x^(1))(θ∘x^(2)).
    pub fn new(calc: &Calculus, q: &GradedQuotient) -> RightAction {
        let alg = calc.alg();
        let ng = alg.ngens() as u8;
        let mut mats: Vec<Vec<LinearMap>> = vec![(0..ng)
            .map(|x| LinearMap::from_columns(1, 1, vec![FinVector::single(0, alg.counit_word(&[x]))]))
            .collect()];
        for g in 1..=q.max_degree() {
            let mut per = Vec::new();
            for x in 0..ng {
                let cols = (0..q.dim(g))
                    .map(|j| {
                        let w = q.word(g, j);
                        let prefix = FinVector::unit(q.index_of(&w[..g - 1]).expect("prefix is a basis word"));
                        let mut acc = FinVector::zero();
                        for (legs, c) in alg.coproduct_word(&[x], 2).terms() {
                            let mut head = prefix.clone();
                            for &l in &legs[0] {
                                head = mats[g - 1][l as usize].apply(&head);
                            }
                            if head.is_zero() {
                                continue;
                            }
                            let tail = q.reduce_tensor(&calc.circ_word(&FinVector::unit(w[g - 1]), &legs[1]), 1);
                            acc = acc.add_scaled(c, &q.mul(&head, g - 1, &tail, 1));
                        }
                        acc
                    })
                    .collect();
                per.push(LinearMap::from_columns(q.dim(g), q.dim(g), cols));
            }
            mats.push(per);
        }
        RightAction { mats }
    }

    pub fn apply_word(&self, x: &FinVector, g: usize, w: &[u8]) -> FinVector {
        let mut v = x.clone();
        for &l in w {
            if v.is_zero() {
                break;
            }
            v = self.mats[g][l as usize].apply(&v);
        }
        v
    }

    pub fn apply(&self, x: &FinVector, g: usize, a: &Element) -> FinVector {
        let mut acc = FinVector::zero();
        for (w, c) in a.terms() {
            acc = acc.add_scaled(c, &self.apply_word(x, g, w));
        }
        acc
    }
}

/// The free graded-differential algebra on n degree-one generators.
#[derive(Clone, Debug)]
pub struct Omega {
    n: usize,
}

impl Omega {
    pub fn new(n: usize) -> Omega {
        Omega { n }
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn letter_degree(&self, l: usize) -> usize {
        if l < self.n {
            1
        } else {
            2
        }
    }

    pub fn degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&l| self.letter_degree(l)).sum()
    }

    /// Words of total degree `deg`, in lexicographic order.
    pub fn basis(&self, deg: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.fill(deg, &mut cur, &mut out);
        out
    }

    fn fill(&self, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for l in 0..2 * self.n {
            let dl = self.letter_degree(l);
            if dl <= left {
                cur.push(l);
                self.fill(left - dl, cur, out);
                cur.pop();
            }
        }
    }

    pub fn index(&self, deg: usize) -> HashMap<Vec<usize>, usize> {
        self.basis(deg).into_iter().enumerate().map(|(i, w)| (w, i)).collect()
    }

    /// d(θ_i) = Θ_i, d(Θ_i) = 0, graded Leibniz rule.
    pub fn d_word(&self, w: &[usize]) -> OmegaElem {
        let mut out = OmegaElem::new();
        let mut deg = 0;
        for (i, &l) in w.iter().enumerate() {
            if l < self.n {
                let mut v = w.to_vec();
                v[i] = l + self.n;
                add_term(&mut out, v, &sign(deg % 2 == 1));
            }
            deg += self.letter_degree(l);
        }
        out
    }

    pub fn d(&self, x: &OmegaElem) -> OmegaElem {
        let mut out = OmegaElem::new();
        for (w, c) in x {
            add_scaled(&mut out, c, &self.d_word(w));
        }
        out
    }

    pub fn mul(&self, x: &OmegaElem, y: &OmegaElem) -> OmegaElem {
        let mut out = OmegaElem::new();
        for (a, c) in x {
            for (b, e) in y {
                let mut w = a.clone();
                w.extend_from_slice(b);
                add_term(&mut out, w, &c.mul(e));
            }
        }
        out
    }

    pub fn to_vector(&self, x: &OmegaElem, index: &HashMap<Vec<usize>, usize>) -> FinVector {
        FinVector::from_pairs(x.iter().map(|(w, c)| (index[w], c.clone())))
    }

    /// Matrix of d: Ω^deg → Ω^{deg+1}.
    pub fn d_matrix(&self, deg: usize) -> LinearMap {
        let src = self.basis(deg);
        let idx = self.index(deg + 1);
        let cols = src.iter().map(|w| self.to_vector(&self.d_word(w), &idx)).collect();
        LinearMap::from_columns(src.len(), idx.len(), cols)
    }

    /// dim H^k(Ω) for k ≤ max.
    pub fn cohomology(&self, max: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut d_in = LinearMap::zero(0, 1);
        for k in 0..=max {
            let d_out = self.d_matrix(k);
            out.push(cohomology_rank(&d_in, &d_out)?);
            d_in = d_out;
        }
        Ok(out)
    }

    /// The tensor θ_{i1}…θ_{ik} (base-n digits) as an element of Ω.
    pub fn from_tensor(&self, v: &FinVector, k: usize) -> OmegaElem {
        let mut out = OmegaElem::new();
        for (idx, c) in v.entries() {
            add_term(&mut out, crate::calculus::digits(*idx, self.n, k), c);
        }
        out
    }

    pub fn format(&self, x: &OmegaElem, basis: &[String]) -> String {
        let items = x.iter().map(|(w, c)| {
            let names: Vec<String> = w
                .iter()
                .map(|&l| if l < self.n { basis[l].clone() } else { format!("d{}", basis[l - self.n]) })
                .collect();
            (names.join("*"), c)
        });
        crate::scalar::format_combination(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_dims_and_differential() {
        let om = Omega::new(4);
        let dims: Vec<usize> = (0..=5).map(|k| om.basis(k).len()).collect();
        assert_eq!(dims, vec![1, 4, 20, 96, 464, 2240]);
        let fib: Vec<usize> = (0..=6).map(|k| Omega::new(1).basis(k).len()).collect();
        assert_eq!(fib, vec![1, 1, 2, 3, 5, 8, 13]);
        // d(θ0 θ1) = Θ0 θ1 - θ0 Θ1, d(Θ0) = 0
        let d = om.d_word(&[0, 1]);
        assert_eq!(d.get(&vec![4, 1]), Some(&Scalar::one()));
        assert_eq!(d.get(&vec![0, 5]), Some(&Scalar::int(-1)));
        assert!(om.d_word(&[4]).is_empty());
        assert_eq!(om.d_word(&[0]).get(&vec![4]), Some(&Scalar::one()));
    }

    #[test]
    fn omega_is_acyclic() {
        assert_eq!(Omega::new(1).cohomology(5).unwrap(), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(Omega::new(2).cohomology(3).unwrap(), vec![1, 0, 0, 0]);
    }
}
