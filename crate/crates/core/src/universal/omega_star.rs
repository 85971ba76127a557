use super::{add_scaled, add_term, sign, Omega, OmegaElem, RightAction, SigmaAlgebra};
use crate::calculus::Calculus;
use crate::error::{Error, Result};
use crate::exterior::{envelope_model, GradedModel};
use crate::gla::{cohomology_rank, FinVector, LinearMap, RowSpace};
use crate::hopf::Element;
use crate::report::Report;
use crate::scalar::Scalar;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Basis element R(σ_i) ⊗ ϑ_j of Ω_* ≅ Σ ⊗ Γ_inv^∧: (Σ degree s, Σ basis
/// index i, Γ^∧ degree g, Γ^∧ basis index j). Total degree 2s + g.
pub type OsKey = (usize, usize, usize, usize);
pub type OsElem = BTreeMap<OsKey, Scalar>;

fn single(k: OsKey, c: Scalar) -> OsElem {
    let mut m = OsElem::new();
    add_term(&mut m, k, &c);
    m
}

/// Ω_* = Ω/𝒦 realised on Σ ⊗ Γ_inv^∧, built for total degree ≤ `bound`.
pub struct OmegaStar {
    calc: Arc<Calculus>,
    sigma: SigmaAlgebra,
    env: GradedModel,
    bound: usize,
    circ: RightAction,
    /// d R(θ_i), obtained by projecting -dδ(θ_i) from Ω.
    dr: Vec<OsElem>,
    mul_cache: RwLock<HashMap<(OsKey, OsKey), OsElem>>,
}

impl std::fmt::Debug for OmegaStar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OmegaStar").field("bound", &self.bound).finish()
    }
}

impl OmegaStar {
    pub fn new(calc: Arc<Calculus>, bound: usize) -> OmegaStar {
        let sigma = SigmaAlgebra::new(calc.clone(), bound / 2);
        let env = envelope_model(&calc, bound);
        let n = calc.dim();
        let q = &env.quotient;
        let circ = RightAction::new(&calc, q);
        let mut os = OmegaStar {
            calc,
            sigma,
            env,
            bound,
            circ,
            dr: Vec::new(),
            mul_cache: RwLock::new(HashMap::new()),
        };
        if bound >= 3 {
            os.dr = (0..n).map(|i| os.dr_from_omega(i)).collect();
        }
        os
    }

    pub fn calc(&self) -> &Calculus {
        &self.calc
    }

    pub fn sigma(&self) -> &SigmaAlgebra {
        &self.sigma
    }

    pub fn envelope(&self) -> &GradedModel {
        &self.env
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn degree_of_key(k: &OsKey) -> usize {
        2 * k.0 + k.2
    }

    pub fn degree(x: &OsElem) -> usize {
        x.keys().map(Self::degree_of_key).max().unwrap_or(0)
    }

    fn ensure(&self, deg: usize) -> Result<()> {
        if deg > self.bound {
            Err(Error::Compute(format!("degree {deg} exceeds the built Ω_* bound {}", self.bound)))
        } else {
            Ok(())
        }
    }

    /// Basis keys of total degree n.
    pub fn basis(&self, n: usize) -> Vec<OsKey> {
        let mut out = Vec::new();
        for s in 0..=n / 2 {
            let g = n - 2 * s;
            for i in 0..self.sigma.dim(s) {
                for j in 0..self.env.quotient.dim(g) {
                    out.push((s, i, g, j));
                }
            }
        }
        out
    }

    pub fn dim(&self, n: usize) -> usize {
        self.basis(n).len()
    }

    pub fn dims_upto(&self, max: usize) -> Vec<usize> {
        (0..=max).map(|n| self.dim(n)).collect()
    }

    pub fn one() -> OsElem {
        single((0, 0, 0, 0), Scalar::one())
    }

    fn form_key(&self, i: usize) -> OsKey {
        (0, 0, 1, self.env.quotient.index_of(&[i]).expect("degree-one basis"))
    }

    /// θ_i as an element of Ω_*.
    pub fn theta(&self, i: usize) -> OsElem {
        single(self.form_key(i), Scalar::one())
    }

    /// The universal curvature R(θ_i).
    pub fn curvature(&self, i: usize) -> OsElem {
        single((1, self.sigma.quotient().index_of(&[i]).expect("degree-one basis"), 0, 0), Scalar::one())
    }

    pub fn from_sigma(&self, x: &FinVector, s: usize) -> OsElem {
        x.entries().iter().map(|(i, c)| ((s, *i, 0, 0), c.clone())).collect()
    }

    pub fn from_envelope(&self, x: &FinVector, g: usize) -> OsElem {
        x.entries().iter().map(|(j, c)| ((0, 0, g, *j), c.clone())).collect()
    }

    /// Class in Γ^∧ of a tensor of V^{⊗g}.
    pub fn from_tensor(&self, v: &FinVector, g: usize) -> OsElem {
        self.from_envelope(&self.env.quotient.reduce_tensor(v, g), g)
    }

    /// ϑ∘a on Γ^∧_g.
    pub fn circ_envelope(&self, x: &FinVector, g: usize, a: &Element) -> FinVector {
        self.circ.apply(x, g, a)
    }

    /// (R(σ1)ϑ1)(R(σ2)ϑ2) = Σ_k R(σ1 σ2_k) (ϑ1∘c_k) ϑ2, ϖ_Σ(σ2) = Σ σ2_k ⊗ c_k.
    fn mul_keys(&self, a: OsKey, b: OsKey) -> OsElem {
        if let Some(v) = self.mul_cache.read().expect("lock").get(&(a, b)) {
            return v.clone();
        }
        let (s1, i1, g1, j1) = a;
        let (s2, i2, g2, j2) = b;
        let q = &self.env.quotient;
        let mut out = OsElem::new();
        let coaction = self.sigma.coaction(s2, i2);
        for (k, c) in coaction.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let th = self.circ_envelope(&FinVector::unit(j1), g1, c);
            if th.is_zero() {
                continue;
            }
            let th = q.mul(&th, g1, &FinVector::unit(j2), g2);
            let sg = self.sigma.mul(&FinVector::unit(i1), s1, &FinVector::unit(k), s2);
            for (p, x) in sg.entries() {
                for (r, y) in th.entries() {
                    add_term(&mut out, (s1 + s2, *p, g1 + g2, *r), &x.mul(y));
                }
            }
        }
        self.mul_cache.write().expect("lock").insert((a, b), out.clone());
        out
    }

    fn mul_raw(&self, x: &OsElem, y: &OsElem) -> OsElem {
        let mut out = OsElem::new();
        for (a, c) in x {
            for (b, e) in y {
                add_scaled(&mut out, &c.mul(e), &self.mul_keys(*a, *b));
            }
        }
        out
    }

    pub fn mul(&self, x: &OsElem, y: &OsElem) -> Result<OsElem> {
        if x.is_empty() || y.is_empty() {
            return Ok(OsElem::new());
        }
        self.ensure(Self::degree(x) + Self::degree(y))?;
        Ok(self.mul_raw(x, y))
    }

    fn prod(&self, parts: &[&OsElem]) -> OsElem {
        let mut acc = Self::one();
        for p in parts {
            acc = self.mul_raw(&acc, p);
        }
        acc
    }

    /// Prefix ϑ_{w<t}, letter θ_{w_t} and suffix ϑ_{w>t} of a Γ^∧ basis word.
    fn split_form(&self, g: usize, j: usize, t: usize) -> (OsElem, usize, OsElem) {
        let q = &self.env.quotient;
        let w = q.word(g, j);
        let pre = self.from_envelope(&q.reduce_word(&w[..t]), t);
        let suf = self.from_envelope(&q.reduce_word(&w[t + 1..]), g - t - 1);
        (pre, w[t], suf)
    }

    fn split_sigma(&self, s: usize, i: usize, t: usize) -> (OsElem, usize, OsElem) {
        let q = self.sigma.quotient();
        let w = q.word(s, i);
        let pre = self.from_sigma(&q.reduce_word(&w[..t]), t);
        let suf = self.from_sigma(&q.reduce_word(&w[t + 1..]), s - t - 1);
        (pre, w[t], suf)
    }

    /// Antiderivation of Ω_* with values on θ_i and R(θ_i).
    fn antiderivation<F, G>(&self, x: &OsElem, on_theta: F, on_curv: G) -> OsElem
    where
        F: Fn(usize) -> OsElem,
        G: Fn(usize) -> OsElem,
    {
        let mut out = OsElem::new();
        for (&(s, i, g, j), c) in x {
            let form = single((0, 0, g, j), Scalar::one());
            for t in 0..s {
                let (pre, l, suf) = self.split_sigma(s, i, t);
                let v = self.prod(&[&pre, &on_curv(l), &suf, &form]);
                add_scaled(&mut out, c, &v);
            }
            let head = single((s, i, 0, 0), Scalar::one());
            for t in 0..g {
                let (pre, l, suf) = self.split_form(g, j, t);
                let v = self.prod(&[&head, &pre, &on_theta(l), &suf]);
                add_scaled(&mut out, &c.mul(&sign(t % 2 == 1)), &v);
            }
        }
        out
    }

    /// d(θ_i) = R(θ_i) + [δ(θ_i)].
    fn d_theta(&self, i: usize) -> OsElem {
        let mut v = self.curvature(i);
        add_scaled(&mut v, &Scalar::one(), &self.from_tensor(&self.calc.delta().delta[i], 2));
        v
    }

    /// Projection of a letter of Ω: θ_i ↦ θ_i, Θ_i ↦ d(θ_i).
    fn p_letter(&self, l: usize) -> OsElem {
        let n = self.calc.dim();
        if l < n {
            self.theta(l)
        } else {
            self.d_theta(l - n)
        }
    }

    /// The factor map p_K: Ω → Ω_*.
    pub fn p_k(&self, x: &OmegaElem) -> Result<OsElem> {
        let om = Omega::new(self.calc.dim());
        let mut out = OsElem::new();
        for (w, c) in x {
            self.ensure(om.degree(w))?;
            let letters: Vec<OsElem> = w.iter().map(|&l| self.p_letter(l)).collect();
            let refs: Vec<&OsElem> = letters.iter().collect();
            add_scaled(&mut out, c, &self.prod(&refs));
        }
        Ok(out)
    }

    fn dr_from_omega(&self, i: usize) -> OsElem {
        let n = self.calc.dim();
        let om = Omega::new(n);
        let delta = om.from_tensor(&self.calc.delta().delta[i], 2);
        let mut minus = OmegaElem::new();
        add_scaled(&mut minus, &Scalar::int(-1), &om.d(&delta));
        self.p_k(&minus).expect("degree 3 within bound")
    }

    /// d R(θ_i) as projected from Ω.
    pub fn curvature_differential(&self, i: usize) -> &OsElem {
        &self.dr[i]
    }

    /// Total differential of Ω_*.
    pub fn d(&self, x: &OsElem) -> Result<OsElem> {
        if x.is_empty() {
            return Ok(OsElem::new());
        }
        self.ensure(Self::degree(x) + 1)?;
        Ok(self.antiderivation(x, |i| self.d_theta(i), |i| self.dr[i].clone()))
    }

    /// Universal covariant derivative: Dθ = R(θ), DR(θ) = 0.
    pub fn covariant(&self, x: &OsElem) -> Result<OsElem> {
        if x.is_empty() {
            return Ok(OsElem::new());
        }
        self.ensure(Self::degree(x) + 1)?;
        Ok(self.antiderivation(x, |i| self.curvature(i), |_| OsElem::new()))
    }

    /// d_vh(φ ⊗ ϑ) = Σ φ_k ⊗ π(c_k)ϑ + φ ⊗ d^∧ϑ.
    pub fn vertical(&self, x: &OsElem) -> Result<OsElem> {
        if x.is_empty() {
            return Ok(OsElem::new());
        }
        self.ensure(Self::degree(x) + 1)?;
        let q = &self.env.quotient;
        let mut out = OsElem::new();
        for (&(s, i, g, j), c) in x {
            for (k, e) in self.sigma.coaction(s, i).iter().enumerate() {
                let p = self.calc.pi(e);
                if p.is_zero() {
                    continue;
                }
                let p1 = q.reduce_tensor(&p, 1);
                for (r, y) in q.mul(&p1, 1, &FinVector::unit(j), g).entries() {
                    add_term(&mut out, (s, k, g + 1, *r), &c.mul(y));
                }
            }
            if g < self.env.max_degree() {
                for (r, y) in self.env.apply_d(&FinVector::unit(j), g).entries() {
                    add_term(&mut out, (s, i, g + 1, *r), &c.mul(y));
                }
            }
        }
        Ok(out)
    }

    /// Σ φ_k π(c_k) for φ in Σ_s, the expected dφ of a horizontal element.
    pub fn horizontal_differential(&self, x: &FinVector, s: usize) -> OsElem {
        let mut out = OsElem::new();
        let coaction = self.sigma.coaction_of(x, s);
        for (k, e) in coaction.iter().enumerate() {
            let p = self.calc.pi(e);
            for (r, y) in self.env.quotient.reduce_tensor(&p, 1).entries() {
                add_term(&mut out, (s, k, 1, *r), y);
            }
        }
        out
    }

    pub fn to_vector(&self, x: &OsElem, index: &HashMap<OsKey, usize>) -> FinVector {
        FinVector::from_pairs(x.iter().map(|(k, c)| (index[k], c.clone())))
    }

    fn index(&self, n: usize) -> HashMap<OsKey, usize> {
        self.basis(n).into_iter().enumerate().map(|(i, k)| (k, i)).collect()
    }

    pub fn d_matrix(&self, n: usize) -> Result<LinearMap> {
        self.ensure(n + 1)?;
        let src = self.basis(n);
        let idx = self.index(n + 1);
        let mut cols = Vec::new();
        for k in &src {
            cols.push(self.to_vector(&self.d(&single(*k, Scalar::one()))?, &idx));
        }
        Ok(LinearMap::from_columns(src.len(), idx.len(), cols))
    }

    /// dim H^k(Ω_*) for k ≤ max.
    pub fn cohomology(&self, max: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut d_in = LinearMap::zero(0, 1);
        for k in 0..=max {
            let d_out = self.d_matrix(k)?;
            out.push(cohomology_rank(&d_in, &d_out)?);
            d_in = d_out;
        }
        Ok(out)
    }

    /// D² = 0, d_vh² = 0, D d_vh + d_vh D = 0, D + d_vh = d, d² = 0 on every
    /// basis element of degree ≤ max, together with d R(θ) = Σ R(θ_k)π(c_k)
    /// and dφ = Σ φ_k π(c_k) on Σ.
    pub fn check_identities(&self, max: usize) -> Result<Report> {
        self.ensure(max + 2)?;
        let mut rep = Report::new();
        let mut fails: BTreeMap<&str, Option<String>> = BTreeMap::new();
        let names = ["D-squared", "dvh-squared", "D-dvh-anticommute", "D-plus-dvh", "d-squared"];
        for n in names {
            fails.insert(n, None);
        }
        let mut count = 0usize;
        for deg in 0..=max {
            for k in self.basis(deg) {
                count += 1;
                let x = single(k, Scalar::one());
                let dx = self.covariant(&x)?;
                let vx = self.vertical(&x)?;
                let tx = self.d(&x)?;
                let label = || self.format(&x);
                let mut note = |name: &'static str, bad: bool| {
                    let slot = fails.get_mut(name).expect("known check");
                    if bad && slot.is_none() {
                        *slot = Some(format!("fails on {}", label()));
                    }
                };
                note("D-squared", !self.covariant(&dx)?.is_empty());
                note("dvh-squared", !self.vertical(&vx)?.is_empty());
                let mut anti = self.covariant(&vx)?;
                add_scaled(&mut anti, &Scalar::one(), &self.vertical(&dx)?);
                note("D-dvh-anticommute", !anti.is_empty());
                let mut sum = dx.clone();
                add_scaled(&mut sum, &Scalar::one(), &vx);
                add_scaled(&mut sum, &Scalar::int(-1), &tx);
                note("D-plus-dvh", !sum.is_empty());
                note("d-squared", !self.d(&tx)?.is_empty());
            }
        }
        for n in names {
            rep.record_first_failure(n, fails[n].clone(), format!("{count} basis elements to degree {max}"));
        }

        let n = self.calc.dim();
        let fail = (0..n).find_map(|i| {
            let mut expect = OsElem::new();
            for k in 0..n {
                let p = self.calc.pi(self.calc.coeff(k, i));
                let pk = self.from_tensor(&p, 1);
                add_scaled(&mut expect, &Scalar::one(), &self.mul_raw(&self.curvature(k), &pk));
            }
            (expect != self.dr[i]).then(|| format!("on R({})", self.calc.basis_names()[i]))
        });
        rep.record_first_failure("curvature-differential", fail, "dR(θ) = Σ R(θ_k)π(c_k)");

        let mut fail = None;
        'outer: for s in 0..=(max.saturating_sub(1)) / 2 {
            for i in 0..self.sigma.dim(s) {
                let x = FinVector::unit(i);
                if self.d(&self.from_sigma(&x, s))? != self.horizontal_differential(&x, s) {
                    fail = Some(format!("on R({})", self.sigma.format(&x, s)));
                    break 'outer;
                }
            }
        }
        rep.record_first_failure("horizontal-differential", fail, "dφ = Σ φ_k π(c_k) on Σ");
        Ok(rep)
    }

    /// j3(η, ϑ) = η R(ϑ) - Σ R(ϑ_k)(η∘c_k) in Ω, with R(θ) = dθ - δ(θ).
    pub fn j3(&self, a: usize, b: usize) -> OmegaElem {
        let n = self.calc.dim();
        let om = Omega::new(n);
        let mut out = om.mul(&theta_word(a), &self.omega_curvature(b));
        for k in 0..n {
            let c = self.calc.coeff(k, b);
            if c.is_zero() {
                continue;
            }
            let eta = om.from_tensor(&self.calc.circ(&FinVector::unit(a), c), 1);
            add_scaled(&mut out, &Scalar::int(-1), &om.mul(&self.omega_curvature(k), &eta));
        }
        out
    }

    /// j4(η, ϑ) = R(η)R(ϑ) - Σ R(ϑ_k)R(η∘c_k) in Ω.
    pub fn j4(&self, a: usize, b: usize) -> OmegaElem {
        let n = self.calc.dim();
        let om = Omega::new(n);
        let mut out = om.mul(&self.omega_curvature(a), &self.omega_curvature(b));
        for k in 0..n {
            let c = self.calc.coeff(k, b);
            if c.is_zero() {
                continue;
            }
            let eta = self.calc.circ(&FinVector::unit(a), c);
            let mut r_eta = OmegaElem::new();
            for (m, x) in eta.entries() {
                add_scaled(&mut r_eta, x, &self.omega_curvature(*m));
            }
            add_scaled(&mut out, &Scalar::int(-1), &om.mul(&self.omega_curvature(k), &r_eta));
        }
        out
    }

    /// R(θ_i) = Θ_i - δ(θ_i) in Ω.
    pub fn omega_curvature(&self, i: usize) -> OmegaElem {
        let n = self.calc.dim();
        let om = Omega::new(n);
        let mut out = OmegaElem::new();
        add_term(&mut out, vec![n + i], &Scalar::one());
        add_scaled(&mut out, &Scalar::int(-1), &om.from_tensor(&self.calc.delta().delta[i], 2));
        out
    }

    /// Spanning set of the degree-`deg` slice of 𝒦.
    pub fn k_slice(&self, deg: usize) -> Vec<OmegaElem> {
        let n = self.calc.dim();
        let om = Omega::new(n);
        let mut gens: Vec<(usize, OmegaElem)> = Vec::new();
        for r in self.calc.s_wedge2().rows() {
            gens.push((2, om.from_tensor(r, 2)));
        }
        for a in 0..n {
            for b in 0..n {
                gens.push((3, self.j3(a, b)));
                gens.push((4, self.j4(a, b)));
            }
        }
        let mut out = Vec::new();
        for (e, gen) in &gens {
            if *e > deg {
                continue;
            }
            for left in 0..=deg - e {
                for u in om.basis(left) {
                    for v in om.basis(deg - e - left) {
                        let x = om.mul(&om.mul(&word_elem(&u), gen), &word_elem(&v));
                        if !x.is_empty() {
                            out.push(x);
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix of p_K: Ω^deg → Ω_*^deg.
    pub fn p_k_matrix(&self, deg: usize) -> Result<LinearMap> {
        let om = Omega::new(self.calc.dim());
        let idx = self.index(deg);
        let words = om.basis(deg);
        let mut cols = Vec::new();
        for w in &words {
            cols.push(self.to_vector(&self.p_k(&word_elem(w))?, &idx));
        }
        Ok(LinearMap::from_columns(words.len(), idx.len(), cols))
    }

    /// Per degree ≤ max: 𝒦 is exactly the kernel of p_K, p_K is onto,
    /// d(𝒦) ⊆ 𝒦; then H(Ω_*) over the same range.
    pub fn k_ideal_check(&self, max: usize) -> Result<(Report, Vec<usize>)> {
        self.ensure(max + 1)?;
        let om = Omega::new(self.calc.dim());
        let mut rep = Report::new();
        let mut fail_kernel = None;
        let mut fail_dims = None;
        let mut fail_d = None;
        let mut rows = Vec::new();
        let mut next = self.p_k_matrix(0)?;
        for deg in 0..=max {
            let pk = next;
            next = self.p_k_matrix(deg + 1)?;
            let idx = om.index(deg);
            let idx1 = om.index(deg + 1);
            let mut span = RowSpace::leading();
            for k in self.k_slice(deg) {
                let v = om.to_vector(&k, &idx);
                if fail_kernel.is_none() && !pk.apply(&v).is_zero() {
                    fail_kernel = Some(format!("p_K does not kill a degree-{deg} generator"));
                }
                if fail_d.is_none() && !next.apply(&om.to_vector(&om.d(&k), &idx1)).is_zero() {
                    fail_d = Some(format!("d leaves 𝒦 in degree {}", deg + 1));
                }
                span.insert(&v);
            }
            let omega_dim = idx.len();
            let star_dim = self.dim(deg);
            let rank = pk.rank();
            if fail_dims.is_none() && (span.rank() + star_dim != omega_dim || rank != star_dim) {
                fail_dims = Some(format!(
                    "degree {deg}: dim Ω = {omega_dim}, dim 𝒦 = {}, dim Ω_* = {star_dim}, rank p_K = {rank}",
                    span.rank()
                ));
            }
            rows.push(format!("{deg}:{omega_dim}={}+{star_dim}", span.rank()));
        }
        rep.record_first_failure("k-in-kernel", fail_kernel, "p_K vanishes on 𝒦");
        rep.record_first_failure("k-dimensions", fail_dims, rows.join(" "));
        rep.record_first_failure("k-d-invariant", fail_d, "p_K(d𝒦) = 0");
        let h = self.cohomology(max)?;
        let trivial = h.iter().enumerate().all(|(k, &d)| d == usize::from(k == 0));
        rep.record(
            "omega-star-cohomology",
            true,
            format!("H = {h:?}; H(Ω_*) = C in range: {}", if trivial { "yes" } else { "no" }),
        );
        Ok((rep, h))
    }

    pub fn format(&self, x: &OsElem) -> String {
        let names = self.calc.basis_names();
        let q = &self.env.quotient;
        crate::scalar::format_combination(x.iter().map(|(&(s, i, g, j), c)| {
            let mut parts = Vec::new();
            if s > 0 {
                let w: Vec<&str> = self.sigma.quotient().word(s, i).iter().map(|&l| names[l].as_str()).collect();
                parts.push(format!("R({})", w.join("*")));
            }
            parts.extend(q.word(g, j).iter().map(|&l| names[l].clone()));
            (parts.join("*"), c)
        }))
    }
}

fn word_elem(w: &[usize]) -> OmegaElem {
    let mut m = OmegaElem::new();
    add_term(&mut m, w.to_vec(), &Scalar::one());
    m
}

fn theta_word(i: usize) -> OmegaElem {
    word_elem(&[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn u1_curvature_and_vertical() {
        let calc = presets::load_unchecked("u1").unwrap().calc;
        let os = OmegaStar::new(calc, 4);
        // δ = 0, so d ζ = R(ζ) and d_vh ζ = 0
        assert_eq!(os.d(&os.theta(0)).unwrap(), os.curvature(0));
        assert!(os.vertical(&os.theta(0)).unwrap().is_empty());
        assert!(os.covariant(&os.curvature(0)).unwrap().is_empty());
        assert_eq!(os.dims_upto(4), vec![1, 1, 1, 1, 1]);
        assert!(os.check_identities(2).unwrap().passed());
    }

    #[test]
    fn degree_guard() {
        let calc = presets::load_unchecked("u1").unwrap().calc;
        let os = OmegaStar::new(calc, 2);
        let r = os.curvature(0);
        assert!(os.d(&r).is_err());
    }
}
