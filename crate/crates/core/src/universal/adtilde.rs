use super::{add_scaled, add_term, sign, Omega, OmegaElem, RightAction};
use crate::calculus::Calculus;
use crate::exterior::GradedModel;
use crate::gla::{FinVector, LinearMap, RowSpace};
use crate::hopf::{Element, Tensor, Word};
use crate::presets::CalculusKind;
use crate::report::Report;
use crate::scalar::Scalar;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Basis key of Ω ⊗ Γ^∧: (Ω word, 𝒜 word, Γ_inv^∧ level, basis index);
/// the Γ^∧ leg is the left-𝒜 multiple a·ϑ.
pub type MixedKey = (Vec<usize>, Word, usize, usize);
pub type Mixed = BTreeMap<MixedKey, Scalar>;

/// ℸ^k with the cohomology of d restricted to it.
#[derive(Clone, Debug)]
pub struct DalethDegree {
    pub degree: usize,
    pub dim: usize,
    pub cohomology: usize,
    /// Cocycles spanning H^k(ℸ), as elements of Ω.
    pub representatives: Vec<OmegaElem>,
}

/// The extended adjoint coaction ãd: Ω → Ω ⊗̂ Γ^∧.
pub struct AdTilde {
    calc: Arc<Calculus>,
    model: GradedModel,
    action: RightAction,
    om: Omega,
    letters: Vec<Mixed>,
    coproducts: RwLock<HashMap<Word, Tensor>>,
}

impl std::fmt::Debug for AdTilde {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdTilde").field("model", &self.model.kind).finish()
    }
}

impl AdTilde {
    /// Target Γ_inv^∧ or Γ^∨ per `kind`; exact on Ω degrees ≤ `max_degree`.
    pub fn new(calc: Arc<Calculus>, kind: CalculusKind, max_degree: usize) -> AdTilde {
        let n = calc.dim();
        let model = crate::exterior::model(&calc, kind, max_degree.max(2));
        let action = RightAction::new(&calc, &model.quotient);
        let mut ad = AdTilde {
            calc,
            model,
            action,
            om: Omega::new(n),
            letters: Vec::new(),
            coproducts: RwLock::new(HashMap::new()),
        };
        let mut letters: Vec<Mixed> = (0..n).map(|i| ad.theta_image(i)).collect();
        letters.extend((0..n).map(|i| ad.big_theta_image(i)));
        ad.letters = letters;
        ad
    }

    pub fn omega(&self) -> &Omega {
        &self.om
    }

    pub fn model(&self) -> &GradedModel {
        &self.model
    }

    fn level1(&self, p: &FinVector) -> FinVector {
        self.model.quotient.reduce_tensor(p, 1)
    }

    fn push_form(&self, out: &mut Mixed, w: &[usize], a: &Element, form: &FinVector, g: usize, c: &Scalar) {
        for (aw, x) in a.terms() {
            for (j, y) in form.entries() {
                add_term(out, (w.to_vec(), aw.clone(), g, *j), &c.mul(x).mul(y));
            }
        }
    }

    /// ãd(θ_i) = Σ_k θ_k ⊗ c_ki + 1 ⊗ θ_i.
    fn theta_image(&self, i: usize) -> Mixed {
        let n = self.calc.dim();
        let mut out = Mixed::new();
        for k in 0..n {
            for (w, c) in self.calc.coeff(k, i).terms() {
                add_term(&mut out, (vec![k], w.clone(), 0, 0), c);
            }
        }
        let unit = self.level1(&FinVector::unit(i));
        self.push_form(&mut out, &[], &Element::one(), &unit, 1, &Scalar::one());
        out
    }

    /// ãd(dθ_i) = Σ_k dθ_k ⊗ c_ki - Σ_k θ_k ⊗ dc_ki + 1 ⊗ d^∧θ_i with
    /// da = a^(1)π(a^(2)).
    fn big_theta_image(&self, i: usize) -> Mixed {
        let n = self.calc.dim();
        let alg = self.calc.alg();
        let mut out = Mixed::new();
        for k in 0..n {
            let c = self.calc.coeff(k, i);
            for (w, x) in c.terms() {
                add_term(&mut out, (vec![n + k], w.clone(), 0, 0), x);
            }
            for (legs, x) in alg.coproduct(c).terms() {
                let form = self.level1(&self.calc.pi_word(&legs[1]));
                self.push_form(&mut out, &[k], &Element::word(legs[0].clone()), &form, 1, &x.neg());
            }
        }
        if self.model.max_degree() >= 2 {
            let d = self.model.apply_d(&self.level1(&FinVector::unit(i)), 1);
            self.push_form(&mut out, &[], &Element::one(), &d, 2, &Scalar::one());
        }
        out
    }

    fn coproduct(&self, w: &Word) -> Tensor {
        if let Some(t) = self.coproducts.read().expect("lock").get(w) {
            return t.clone();
        }
        let t = self.calc.alg().coproduct(&Element::word(w.clone()));
        self.coproducts.write().expect("lock").insert(w.clone(), t.clone());
        t
    }

    /// (aϑ)(bη) = a b^(1) (ϑ∘b^(2)) η in Γ^∧.
    fn mul_gamma(&self, a: &Word, g1: usize, j1: usize, b: &Word, g2: usize, j2: usize) -> Vec<(Element, FinVector)> {
        let alg = self.calc.alg();
        let q = &self.model.quotient;
        if g1 + g2 > q.max_degree() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (legs, c) in self.coproduct(b).terms() {
            let th = self.action.apply_word(&FinVector::unit(j1), g1, &legs[1]);
            if th.is_zero() {
                continue;
            }
            let form = q.mul(&th, g1, &FinVector::unit(j2), g2);
            if form.is_zero() {
                continue;
            }
            let mut coef = alg.normal_word(&[a.as_slice(), legs[0].as_slice()].concat());
            coef = coef.scale(c);
            out.push((coef, form));
        }
        out
    }

    /// (w1 ⊗ γ1)(w2 ⊗ γ2) = (-1)^{∂γ1 ∂w2} w1w2 ⊗ γ1γ2.
    pub fn mul(&self, x: &Mixed, y: &Mixed) -> Mixed {
        let mut out = Mixed::new();
        for ((w1, a1, g1, j1), c1) in x {
            for ((w2, a2, g2, j2), c2) in y {
                let s = sign(g1 * self.om.degree(w2) % 2 == 1);
                let c = c1.mul(c2).mul(&s);
                let w = [w1.as_slice(), w2.as_slice()].concat();
                for (coef, form) in self.mul_gamma(a1, *g1, *j1, a2, *g2, *j2) {
                    self.push_form(&mut out, &w, &coef, &form, g1 + g2, &c);
                }
            }
        }
        out
    }

    pub fn apply_word(&self, w: &[usize]) -> Mixed {
        let mut acc = Mixed::new();
        add_term(&mut acc, (Vec::new(), Vec::new(), 0, 0), &Scalar::one());
        for &l in w {
            acc = self.mul(&acc, &self.letters[l]);
        }
        acc
    }

    /// ãd on Ω.
    pub fn apply(&self, x: &OmegaElem) -> Mixed {
        let mut out = Mixed::new();
        for (w, c) in x {
            add_scaled(&mut out, c, &self.apply_word(w));
        }
        out
    }

    /// d(w ⊗ aϑ) = dw ⊗ aϑ + (-1)^{∂w} w ⊗ (a^(1)π(a^(2))ϑ + a d^∧ϑ).
    pub fn d_total(&self, x: &Mixed) -> Mixed {
        let q = &self.model.quotient;
        let mut out = Mixed::new();
        for ((w, a, g, j), c) in x {
            for (dw, e) in self.om.d_word(w) {
                add_term(&mut out, (dw, a.clone(), *g, *j), &c.mul(&e));
            }
            let c = c.mul(&sign(self.om.degree(w) % 2 == 1));
            if g + 1 > q.max_degree() {
                continue;
            }
            for (legs, x) in self.coproduct(a).terms() {
                let p = self.level1(&self.calc.pi_word(&legs[1]));
                if p.is_zero() {
                    continue;
                }
                let form = q.mul(&p, 1, &FinVector::unit(*j), *g);
                self.push_form(&mut out, w, &Element::word(legs[0].clone()), &form, g + 1, &c.mul(x));
            }
            let d = self.model.apply_d(&FinVector::unit(*j), *g);
            self.push_form(&mut out, w, &Element::word(a.clone()), &d, g + 1, &c);
        }
        out
    }

    fn column_map<F: Fn(&[usize]) -> Vec<(MixedKey, Scalar)>>(&self, deg: usize, f: F) -> LinearMap {
        let words = self.om.basis(deg);
        let mut index: HashMap<MixedKey, usize> = HashMap::new();
        let mut cols = Vec::new();
        for w in &words {
            let mut pairs = Vec::new();
            for (k, c) in f(w) {
                let next = index.len();
                pairs.push((*index.entry(k).or_insert(next), c));
            }
            cols.push(FinVector::from_pairs(pairs));
        }
        LinearMap::from_columns(words.len(), index.len(), cols)
    }

    /// Basis of ℸ^deg = {w : ãd(w) = w ⊗ 1}, as vectors over `omega().basis(deg)`.
    pub fn daleth_basis(&self, deg: usize) -> Vec<FinVector> {
        self.column_map(deg, |w| {
            let mut img = self.apply_word(w);
            add_term(&mut img, (w.to_vec(), Vec::new(), 0, 0), &Scalar::int(-1));
            img.into_iter().collect()
        })
        .kernel_basis()
    }

    /// Basis of h(Ω)^deg = ãd⁻¹(Ω ⊗ 𝒜).
    pub fn horizontal_basis(&self, deg: usize) -> Vec<FinVector> {
        self.column_map(deg, |w| self.apply_word(w).into_iter().filter(|(k, _)| k.2 > 0).collect()).kernel_basis()
    }

    /// ⊔: the Γ_inv component of ãd, with the 𝒜 coefficient evaluated by ε.
    pub fn contraction_word(&self, w: &[usize]) -> Vec<(MixedKey, Scalar)> {
        let alg = self.calc.alg();
        let mut out = Mixed::new();
        for ((v, a, g, j), c) in self.apply_word(w) {
            if g == 1 {
                add_term(&mut out, (v, Vec::new(), 1, j), &c.mul(&alg.counit_word(&a)));
            }
        }
        out.into_iter().collect()
    }

    pub fn contraction_kernel(&self, deg: usize) -> Vec<FinVector> {
        self.column_map(deg, |w| self.contraction_word(w)).kernel_basis()
    }

    /// ad_∧: the 𝒜 (Γ^∧ degree 0) part of ãd, keyed by (Ω word, 𝒜 word).
    pub fn ad_wedge_word(&self, w: &[usize]) -> BTreeMap<(Vec<usize>, Word), Scalar> {
        let mut out = BTreeMap::new();
        for ((v, a, g, _), c) in self.apply_word(w) {
            if g == 0 {
                add_term(&mut out, (v, a), &c);
            }
        }
        out
    }

    pub fn to_omega(&self, v: &FinVector, deg: usize) -> OmegaElem {
        let words = self.om.basis(deg);
        let mut out = OmegaElem::new();
        for (i, c) in v.entries() {
            add_term(&mut out, words[*i].clone(), c);
        }
        out
    }

    /// ℸ^k and H^k(ℸ) for k ≤ max; ℸ^{max+1} is built for the last rank.
    pub fn daleth_cohomology(&self, max: usize) -> Vec<DalethDegree> {
        let bases: Vec<Vec<FinVector>> = (0..=max + 1).map(|k| self.daleth_basis(k)).collect();
        let images: Vec<Vec<FinVector>> = (0..=max)
            .map(|k| {
                let idx = self.om.index(k + 1);
                bases[k].iter().map(|v| self.om.to_vector(&self.om.d(&self.to_omega(v, k)), &idx)).collect()
            })
            .collect();
        let mut out = Vec::new();
        for k in 0..=max {
            let dim = bases[k].len();
            let next_dim = self.om.basis(k + 1).len();
            let dmap = LinearMap::from_columns(dim, next_dim, images[k].clone());
            let cocycles: Vec<FinVector> = dmap
                .kernel_basis()
                .iter()
                .map(|comb| {
                    let mut acc = FinVector::zero();
                    for (i, c) in comb.entries() {
                        acc = acc.add_scaled(c, &bases[k][*i]);
                    }
                    acc
                })
                .collect();
            let mut span = if k == 0 { RowSpace::new() } else { RowSpace::from_vectors(&images[k - 1]) };
            let mut reps = Vec::new();
            for z in &cocycles {
                if span.insert(z) {
                    reps.push(self.to_omega(z, k));
                }
            }
            out.push(DalethDegree { degree: k, dim, cohomology: reps.len(), representatives: reps });
        }
        out
    }

    /// Structural checks up to Ω degree `max`: ãd d = d ãd, the ad_∧
    /// coaction law, ℸ closed under d and products, and h(Ω) = ker ⊔ for Γ^∨.
    pub fn check(&self, max: usize) -> Report {
        let mut rep = Report::new();
        let alg = self.calc.alg();
        let words: Vec<Vec<usize>> = (0..=max).flat_map(|k| self.om.basis(k)).collect();

        let fail = words.iter().find_map(|w| {
            let lhs = self.apply(&self.om.d_word(w));
            let rhs = self.d_total(&self.apply_word(w));
            (lhs != rhs).then(|| format!("on {}", self.om.format(&word(w), self.calc.basis_names())))
        });
        rep.record_first_failure("adtilde-differential", fail, format!("{} words", words.len()));

        let fail = words.iter().find_map(|w| {
            let ad = self.ad_wedge_word(w);
            let mut left: BTreeMap<(Vec<usize>, Word, Word), Scalar> = BTreeMap::new();
            for ((v, a), c) in &ad {
                for ((v2, b), e) in self.ad_wedge_word(v) {
                    add_term(&mut left, (v2, b, a.clone()), &c.mul(&e));
                }
            }
            let mut right = BTreeMap::new();
            for ((v, a), c) in &ad {
                for (legs, e) in alg.coproduct(&Element::word(a.clone())).terms() {
                    add_term(&mut right, (v.clone(), legs[0].clone(), legs[1].clone()), &c.mul(e));
                }
            }
            (left != right).then(|| format!("on {}", self.om.format(&word(w), self.calc.basis_names())))
        });
        rep.record_first_failure("ad-wedge-coaction", fail, format!("{} words", words.len()));

        let bases: Vec<Vec<OmegaElem>> =
            (0..=max).map(|k| self.daleth_basis(k).iter().map(|v| self.to_omega(v, k)).collect()).collect();
        let invariant = |x: &OmegaElem| {
            let mut img = self.apply(x);
            for (w, c) in x {
                add_term(&mut img, (w.clone(), Vec::new(), 0, 0), &c.neg());
            }
            img.is_empty()
        };
        let mut fail = None;
        for (k, b) in bases.iter().enumerate().take(max) {
            if let Some(x) = b.iter().find(|x| !invariant(&self.om.d(x))) {
                fail = Some(format!("d leaves ℸ on {} in degree {k}", self.om.format(x, self.calc.basis_names())));
                break;
            }
        }
        'outer: for (p, bp) in bases.iter().enumerate() {
            for (q, bq) in bases.iter().enumerate() {
                if p + q > max || fail.is_some() {
                    continue;
                }
                for x in bp {
                    for y in bq {
                        if !invariant(&self.om.mul(x, y)) {
                            fail = Some(format!("product of degrees {p} and {q} leaves ℸ"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        rep.record_first_failure("daleth-subalgebra", fail, format!("dim ℸ = {dims:?}"));

        if self.model.kind == CalculusKind::Vee {
            let fail = (0..=max).find_map(|k| {
                let h = RowSpace::from_vectors(&self.horizontal_basis(k));
                let c = RowSpace::from_vectors(&self.contraction_kernel(k));
                let same = h.rank() == c.rank() && h.rows().iter().all(|v| c.contains(v));
                (!same).then(|| format!("degree {k}: dim h = {}, dim ker ⊔ = {}", h.rank(), c.rank()))
            });
            rep.record_first_failure("horizontal-is-ker-contraction", fail, format!("degrees ≤ {max}"));
        }
        rep
    }

    pub fn format(&self, x: &Mixed) -> String {
        let names = self.calc.basis_names();
        let alg = self.calc.alg();
        let q = &self.model.quotient;
        crate::scalar::format_combination(x.iter().map(|((w, a, g, j), c)| {
            let left = if w.is_empty() { "1".to_string() } else { self.om.format(&word(w), names) };
            let mut right: Vec<String> = Vec::new();
            if !a.is_empty() {
                right.push(alg.format_word(a));
            }
            right.extend(q.word(*g, *j).iter().map(|&l| names[l].clone()));
            let right = if right.is_empty() { "1".to_string() } else { right.join("*") };
            (format!("{left}@{right}"), c)
        }))
    }
}

fn word(w: &[usize]) -> OmegaElem {
    let mut m = OmegaElem::new();
    add_term(&mut m, w.to_vec(), &Scalar::one());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn u1() -> AdTilde {
        let calc = presets::load_unchecked("u1").unwrap().calc;
        AdTilde::new(calc, CalculusKind::Wedge, 6)
    }

    #[test]
    fn u1_images() {
        let ad = u1();
        // ãd(ζ) = ζ⊗1 + 1⊗ζ, ãd(dζ) = dζ⊗1
        let z = ad.apply_word(&[0]);
        assert_eq!(z.len(), 2);
        assert_eq!(z.get(&(vec![0], vec![], 0, 0)), Some(&Scalar::one()));
        assert_eq!(z.get(&(vec![], vec![], 1, 0)), Some(&Scalar::one()));
        let dz = ad.apply_word(&[1]);
        assert_eq!(dz.len(), 1);
        assert_eq!(dz.get(&(vec![1], vec![], 0, 0)), Some(&Scalar::one()));
        assert_eq!(ad.daleth_basis(0).len(), 1);
        assert!(ad.daleth_basis(1).is_empty());
    }

    #[test]
    fn u1_daleth_cohomology() {
        let ad = u1();
        let h: Vec<usize> = ad.daleth_cohomology(5).iter().map(|d| d.cohomology).collect();
        assert_eq!(h, vec![1, 0, 1, 0, 1, 0]);
        assert!(ad.check(4).passed());
    }
}
