//! First-order bicovariant *-calculus given by structure tables: the
//! quantum germs map π, the right ∘-action, the adjoint coaction ϖ, the
//! star, c^⊤, the braiding σ and the embedded differential δ.

mod validate;

pub use validate::validate_calculus;

use crate::error::{Error, Result};
use crate::gla::{self, FinVector, LinearMap, Mat, RowSpace};
use crate::hopf::{Element, HopfAlgebra, Tensor, Word};
use crate::scalar::{format_combination, Param, Scalar};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Raw calculus data from a preset.
#[derive(Clone, Debug)]
pub struct CalculusTables {
    pub basis: Vec<String>,
    /// π of each Hopf generator.
    pub pi: Vec<FinVector>,
    /// Row convention: `e_i ∘ g = Σ_j circ[g][i][j] e_j`.
    pub circ: Vec<Mat>,
    /// `representatives[i]` is mapped by π onto the i-th basis element.
    pub representatives: Vec<Element>,
    pub delta: Option<Vec<FinVector>>,
    pub r_generators: Vec<Element>,
    pub s_wedge2: Option<Vec<FinVector>>,
}

/// Coefficient vector over the basis with entries in the Hopf algebra:
/// `Σ_k θ_k ⊗ a_k`.
pub type FormWithCoeffs = Vec<Element>;

/// Outcome of solving for δ.
#[derive(Clone, Debug)]
pub struct DeltaSolution {
    pub delta: Vec<FinVector>,
    pub solution_dim: usize,
    pub from_preset: bool,
    /// Set when no admissible δ was found; validation reports it.
    pub error: Option<String>,
}

pub struct Calculus {
    alg: Arc<HopfAlgebra>,
    tables: CalculusTables,
    n: usize,
    /// ϖ(θ_i) = Σ_k θ_k ⊗ coeffs[k][i]
    coeffs: Vec<Vec<Element>>,
    star_mat: Mat,
    sigma: LinearMap,
    s_wedge2: RowSpace,
    delta: DeltaSolution,
    pi_cache: RwLock<HashMap<Word, FinVector>>,
}

impl std::fmt::Debug for Calculus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Calculus").field("basis", &self.tables.basis).finish()
    }
}

/// Row vector times matrix.
pub fn row_times(v: &FinVector, m: &Mat) -> FinVector {
    let mut pairs = Vec::new();
    for (i, c) in v.entries() {
        for j in 0..m.m {
            let x = m.get(*i, j);
            if !x.is_zero() {
                pairs.push((j, c.mul(x)));
            }
        }
    }
    FinVector::from_pairs(pairs)
}

/// `a ⊗ b` on Γ^{⊗p} × Γ^{⊗q}; indices are base-n digit strings.
pub fn outer(a: &FinVector, b: &FinVector, dim_b: usize) -> FinVector {
    let mut pairs = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.entries() {
        for (j, y) in b.entries() {
            pairs.push((i * dim_b + j, x.mul(y)));
        }
    }
    FinVector::from_pairs(pairs)
}

pub fn digits(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

pub fn undigits(ds: &[usize], n: usize) -> usize {
    ds.iter().fold(0, |acc, d| acc * n + d)
}

impl Calculus {
    pub fn new(alg: Arc<HopfAlgebra>, tables: CalculusTables) -> Result<Calculus> {
        let n = tables.basis.len();
        let ng = alg.ngens();
        if n == 0 {
            return Err(Error::Validation("empty calculus basis".into()));
        }
        if tables.pi.len() != ng || tables.circ.len() != ng {
            return Err(Error::Validation("pi and circ are needed for every generator".into()));
        }
        if tables.circ.iter().any(|m| m.n != n || m.m != n) {
            return Err(Error::Validation("circ matrices must be square of the basis size".into()));
        }
        if tables.representatives.len() != n {
            return Err(Error::Validation("one representative per basis element".into()));
        }
        let mut calc = Calculus {
            alg,
            tables,
            n,
            coeffs: Vec::new(),
            star_mat: Mat::identity(n),
            sigma: LinearMap::identity(n * n),
            s_wedge2: RowSpace::new(),
            delta: DeltaSolution { delta: Vec::new(), solution_dim: 0, from_preset: false, error: None },
            pi_cache: RwLock::new(HashMap::new()),
        };
        for (i, a) in calc.tables.representatives.iter().enumerate() {
            if calc.pi(a) != FinVector::unit(i) {
                return Err(Error::Validation(format!(
                    "representative of {} is not mapped onto it by pi",
                    calc.tables.basis[i]
                )));
            }
        }
        calc.coeffs = calc.compute_coeffs();
        calc.star_mat = calc.compute_star();
        calc.sigma = calc.compute_sigma();
        calc.s_wedge2 = calc.compute_s_wedge2(3);
        calc.delta = calc.solve_delta().unwrap_or_else(|e| DeltaSolution {
            delta: vec![FinVector::zero(); n],
            solution_dim: 0,
            from_preset: false,
            error: Some(e.to_string()),
        });
        Ok(calc)
    }

    pub fn alg(&self) -> &HopfAlgebra {
        &self.alg
    }

    pub fn alg_arc(&self) -> Arc<HopfAlgebra> {
        self.alg.clone()
    }

    pub fn tables(&self) -> &CalculusTables {
        &self.tables
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn basis_names(&self) -> &[String] {
        &self.tables.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.tables.basis.iter().position(|b| b == name)
    }

    /// π(w) for a (possibly non-normal) word, via
    /// π(w'g) = ε(w')π(g) + π(w')∘g.
    pub fn pi_word(&self, w: &[u8]) -> FinVector {
        if w.is_empty() {
            return FinVector::zero();
        }
        if let Some(v) = self.pi_cache.read().expect("cache lock").get(w) {
            return v.clone();
        }
        let (prefix, last) = w.split_at(w.len() - 1);
        let g = last[0] as usize;
        let eps = self.alg.counit_word(prefix);
        let head = self.pi_word(prefix);
        let v = self.tables.pi[g].scale(&eps).add(&row_times(&head, &self.tables.circ[g]));
        self.pi_cache.write().expect("cache lock").insert(w.to_vec(), v.clone());
        v
    }

    pub fn pi(&self, a: &Element) -> FinVector {
        let mut acc = FinVector::zero();
        for (w, c) in a.terms() {
            acc = acc.add_scaled(c, &self.pi_word(w));
        }
        acc
    }

    pub fn circ_word(&self, theta: &FinVector, w: &[u8]) -> FinVector {
        let mut v = theta.clone();
        for &g in w {
            v = row_times(&v, &self.tables.circ[g as usize]);
        }
        v
    }

    pub fn circ(&self, theta: &FinVector, a: &Element) -> FinVector {
        let mut acc = FinVector::zero();
        for (w, c) in a.terms() {
            acc = acc.add_scaled(c, &self.circ_word(theta, w));
        }
        acc
    }

    /// Matrix of ∘ by a word (row convention).
    pub fn rho_word(&self, w: &[u8]) -> Mat {
        let mut m = Mat::identity(self.n);
        for &g in w {
            m = m.mul(&self.tables.circ[g as usize]);
        }
        m
    }

    fn compute_coeffs(&self) -> Vec<Vec<Element>> {
        let n = self.n;
        let mut coeffs = vec![vec![Element::zero(); n]; n];
        for (i, a) in self.tables.representatives.iter().enumerate() {
            let col = self.varpi_of_pi(a);
            for (k, e) in col.into_iter().enumerate() {
                coeffs[k][i] = e;
            }
        }
        coeffs
    }

    /// (π⊗id)ad(a), as coefficients over the basis.
    pub fn varpi_of_pi(&self, a: &Element) -> FormWithCoeffs {
        let ad = self.alg.adjoint(a);
        let mut out = vec![Element::zero(); self.n];
        for (key, c) in ad.terms() {
            let p = self.pi_word(&key[0]);
            for (k, x) in p.entries() {
                out[*k].add_term(key[1].clone(), &c.mul(x));
            }
        }
        out
    }

    /// c_{ki} with ϖ(θ_i) = Σ_k θ_k ⊗ c_{ki}.
    pub fn coeff(&self, k: usize, i: usize) -> &Element {
        &self.coeffs[k][i]
    }

    pub fn varpi(&self, theta: &FinVector) -> FormWithCoeffs {
        let mut out = vec![Element::zero(); self.n];
        for (i, c) in theta.entries() {
            for (k, slot) in out.iter_mut().enumerate() {
                slot.add_scaled(c, &self.coeffs[k][*i]);
            }
        }
        out
    }

    fn compute_star(&self) -> Mat {
        let n = self.n;
        let mut m = Mat::zeros(n, n);
        for (i, a) in self.tables.representatives.iter().enumerate() {
            let k = self.alg.antipode(a);
            let v = self.pi(&self.alg.star(&k)).neg();
            for (j, c) in v.entries() {
                m.set(i, *j, c.clone());
            }
        }
        m
    }

    /// θ_i* = Σ_j S_ij θ_j.
    pub fn star_matrix(&self) -> &Mat {
        &self.star_mat
    }

    pub fn star_form(&self, theta: &FinVector) -> FinVector {
        row_times(&theta.conj(), &self.star_mat)
    }

    /// Star on Γ^{⊗k}: reverse the factors, star each and multiply by
    /// (-1)^{k(k-1)/2}.
    pub fn star_tensor(&self, v: &FinVector, k: usize) -> FinVector {
        let n = self.n;
        let sign = if (k * k.saturating_sub(1) / 2) % 2 == 1 { Scalar::int(-1) } else { Scalar::one() };
        let mut acc = FinVector::zero();
        for (idx, c) in v.entries() {
            let ds = digits(*idx, n, k);
            let mut part = FinVector::single(0, c.conj().mul(&sign));
            for &d in ds.iter().rev() {
                part = outer(&part, &self.star_mat.row(d), n);
            }
            acc = acc.add(&part);
        }
        acc
    }

    pub fn c_top(&self, theta: &FinVector) -> FinVector {
        let n = self.n;
        let phi = self.varpi(theta);
        let mut acc = FinVector::zero();
        for (k, e) in phi.iter().enumerate() {
            acc = acc.add(&outer(&FinVector::unit(k), &self.pi(e), n));
        }
        acc
    }

    fn compute_sigma(&self) -> LinearMap {
        let n = self.n;
        let mut cols = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FinVector::zero();
                for k in 0..n {
                    let right = self.circ(&FinVector::unit(i), &self.coeffs[k][j]);
                    acc = acc.add(&outer(&FinVector::unit(k), &right, n));
                }
                cols.push(acc);
            }
        }
        LinearMap::from_columns(n * n, n * n, cols)
    }

    /// σ(η⊗ϑ) = Σ_k ϑ_k ⊗ (η∘c_k)
    pub fn sigma(&self) -> &LinearMap {
        &self.sigma
    }

    /// σ acting on slots (i, i+1) of Γ^{⊗k}.
    pub fn sigma_at(&self, k: usize, i: usize) -> LinearMap {
        let n = self.n;
        let left = n.pow(i as u32);
        let right = n.pow((k - i - 2) as u32);
        LinearMap::identity(left).kron(&self.sigma).kron(&LinearMap::identity(right))
    }

    /// q(a) = π(a^(1)) ⊗ π(a^(2))
    pub fn q(&self, a: &Element) -> FinVector {
        let t = self.alg.coproduct(a);
        self.pi_pi(&t)
    }

    pub fn pi_pi(&self, t: &Tensor) -> FinVector {
        let n = self.n;
        let mut acc = FinVector::zero();
        for (key, c) in t.terms() {
            let a = self.pi_word(&key[0]);
            if a.is_zero() {
                continue;
            }
            let b = self.pi_word(&key[1]);
            acc = acc.add_scaled(c, &outer(&a, &b, n));
        }
        acc
    }

    /// Basis of ℛ ∩ 𝒜_{≤d} = ker π ∩ ker ε on normal words of degree ≤ d.
    pub fn r_ideal(&self, d: usize) -> Vec<Element> {
        let words: Vec<Word> = self.alg.normal_words(d).into_iter().flatten().collect();
        let n = self.n;
        let cols: Vec<FinVector> = words
            .iter()
            .map(|w| {
                let p = self.pi_word(w);
                p.add(&FinVector::single(n, self.alg.counit_word(w)))
            })
            .collect();
        let map = LinearMap::from_columns(words.len(), n + 1, cols);
        map.kernel_basis()
            .into_iter()
            .map(|v| {
                let mut e = Element::zero();
                for (j, c) in v.entries() {
                    e.add_term(words[*j].clone(), c);
                }
                e
            })
            .collect()
    }

    fn compute_s_wedge2(&self, d: usize) -> RowSpace {
        let mut rs = RowSpace::new();
        for r in self.r_ideal(d) {
            rs.insert(&self.q(&r));
        }
        if let Some(extra) = &self.tables.s_wedge2 {
            for v in extra {
                rs.insert(v);
            }
        }
        rs
    }

    /// Rank of q(ℛ ∩ 𝒜_{≤d}); used to confirm the span has stabilized.
    pub fn s_wedge2_rank_at(&self, d: usize) -> usize {
        let mut rs = RowSpace::new();
        for r in self.r_ideal(d) {
            rs.insert(&self.q(&r));
        }
        rs.rank()
    }

    pub fn s_wedge2(&self) -> &RowSpace {
        &self.s_wedge2
    }

    /// δ0(θ_i) = -π(a^(1)) ⊗ π(a^(2)) for the stored representative.
    pub fn delta0(&self, i: usize) -> FinVector {
        self.q(&self.tables.representatives[i]).neg()
    }

    pub fn delta(&self) -> &DeltaSolution {
        &self.delta
    }

    pub fn delta_of(&self, theta: &FinVector) -> FinVector {
        let mut acc = FinVector::zero();
        for (i, c) in theta.entries() {
            acc = acc.add_scaled(c, &self.delta.delta[*i]);
        }
        acc
    }

    /// ϖ⊗ϖ on Γ⊗Γ, as coefficients over basis pairs.
    pub fn varpi2(&self, v: &FinVector) -> FormWithCoeffs {
        let n = self.n;
        let mut out = vec![Element::zero(); n * n];
        for (idx, c) in v.entries() {
            let (a, b) = (idx / n, idx % n);
            for ci in 0..n {
                if self.coeffs[ci][a].is_zero() {
                    continue;
                }
                for di in 0..n {
                    if self.coeffs[di][b].is_zero() {
                        continue;
                    }
                    let prod = self.alg.mul(&self.coeffs[ci][a], &self.coeffs[di][b]);
                    out[ci * n + di].add_scaled(c, &prod);
                }
            }
        }
        out
    }

    /// Residual of the intertwining law for a candidate δ, flattened.
    fn intertwining_residual(&self, delta: &[FinVector], i: usize) -> FormWithCoeffs {
        let n = self.n;
        let mut lhs = self.varpi2(&delta[i]);
        for (k, dk) in delta.iter().enumerate() {
            let c = &self.coeffs[k][i];
            if c.is_zero() {
                continue;
            }
            for (p, x) in dk.entries() {
                lhs[*p].add_scaled(&x.neg(), c);
            }
        }
        debug_assert_eq!(lhs.len(), n * n);
        lhs
    }

    fn hermitian_residual(&self, delta: &[FinVector], i: usize) -> FinVector {
        let mut lhs = FinVector::zero();
        for (k, s) in self.star_mat.row(i).entries() {
            lhs = lhs.add_scaled(s, &delta[*k]);
        }
        lhs.sub(&self.star_tensor(&delta[i], 2))
    }

    /// Checks of a candidate δ: σδ = δ + c^⊤, δ ≡ δ0 mod S^∧2, ϖ-intertwining,
    /// hermiticity. Returns the first failure.
    pub fn check_delta(&self, delta: &[FinVector]) -> Option<String> {
        let n = self.n;
        for i in 0..n {
            let e = FinVector::unit(i);
            let lhs = self.sigma.apply(&delta[i]);
            let rhs = delta[i].add(&self.c_top(&e));
            if lhs != rhs {
                return Some(format!("sigma delta != delta + c_top on {}", self.tables.basis[i]));
            }
            if !self.s_wedge2.contains(&delta[i].sub(&self.delta0(i))) {
                return Some(format!("delta - delta0 not in S^2 on {}", self.tables.basis[i]));
            }
            if self.intertwining_residual(delta, i).iter().any(|e| !e.is_zero()) {
                return Some(format!("delta does not intertwine varpi on {}", self.tables.basis[i]));
            }
            if !self.hermitian_residual(delta, i).is_zero() {
                return Some(format!("delta is not hermitian on {}", self.tables.basis[i]));
            }
        }
        None
    }

    /// δ = r0 + s with r0 the reduction of δ0 modulo S^∧2 and s(θ_i) in
    /// S^∧2, solved for intertwining and hermiticity with ν-free
    /// coefficients. Free parameters are set to zero.
    fn solve_delta(&self) -> Result<DeltaSolution> {
        let n = self.n;
        if let Some(d) = &self.tables.delta {
            if d.len() != n {
                return Err(Error::Validation("delta needs one entry per basis element".into()));
            }
            return Ok(DeltaSolution { delta: d.clone(), solution_dim: 0, from_preset: true, error: None });
        }
        let r0: Vec<FinVector> = (0..n).map(|i| self.s_wedge2.reduce(&self.delta0(i))).collect();
        let s_basis: Vec<FinVector> = self.s_wedge2.rows().to_vec();
        let m = s_basis.len();
        if m == 0 {
            return Ok(DeltaSolution { delta: r0, solution_dim: 0, from_preset: false, error: None });
        }

        // Equations are indexed by (kind, i, slot, word); kind 0 is
        // intertwining, kind 1 is hermiticity.
        let mut eq_index: HashMap<(u8, usize, usize, Word), usize> = HashMap::new();
        let mut index_of = |key: (u8, usize, usize, Word)| -> usize {
            let next = eq_index.len();
            *eq_index.entry(key).or_insert(next)
        };
        let mut columns: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * m];
        let mut rhs: Vec<(usize, Scalar)> = Vec::new();

        for i in 0..n {
            for (p, e) in self.intertwining_residual(&r0, i).into_iter().enumerate() {
                for (w, c) in e.terms() {
                    rhs.push((index_of((0, i, p, w.clone())), c.neg()));
                }
            }
            for (p, c) in self.hermitian_residual(&r0, i).entries() {
                rhs.push((index_of((1, i, *p, Vec::new())), c.neg()));
            }
        }
        for k in 0..n {
            for (l, s) in s_basis.iter().enumerate() {
                let col = k * m + l;
                let mut trial = vec![FinVector::zero(); n];
                trial[k] = s.clone();
                for i in 0..n {
                    for (p, e) in self.intertwining_residual(&trial, i).into_iter().enumerate() {
                        for (w, c) in e.terms() {
                            columns[col].push((index_of((0, i, p, w.clone())), c.clone()));
                        }
                    }
                    // ν-free coefficients are fixed by conjugation, so the
                    // hermiticity residual is linear in them.
                    for (p, c) in self.hermitian_residual(&trial, i).entries() {
                        columns[col].push((index_of((1, i, *p, Vec::new())), c.clone()));
                    }
                }
            }
        }
        let neq = eq_index.len();
        let a = LinearMap::from_columns(n * m, neq, columns.into_iter().map(FinVector::from_pairs).collect());
        let b = FinVector::from_pairs(rhs);
        let (x, kernel) = gla::solve(&a, &b)
            .ok_or_else(|| Error::Compute("no hermitian intertwining delta exists".into()))?;
        if x.entries().iter().any(|(_, c)| c.uses(Param::Nu)) {
            return Err(Error::Compute("delta solution is not real".into()));
        }
        let mut delta = r0;
        for (col, c) in x.entries() {
            let (k, l) = (col / m, col % m);
            delta[k] = delta[k].add_scaled(c, &s_basis[l]);
        }
        Ok(DeltaSolution { delta, solution_dim: kernel.len(), from_preset: false, error: None })
    }

    pub fn format_form(&self, v: &FinVector) -> String {
        format_combination(v.entries().iter().map(|(i, c)| (self.tables.basis[*i].clone(), c)))
    }

    /// Renders an element of Γ^{⊗k} with `@` between factors.
    pub fn format_tensor(&self, v: &FinVector, k: usize) -> String {
        let n = self.n;
        format_combination(v.entries().iter().map(|(i, c)| {
            let names: Vec<&str> = digits(*i, n, k).into_iter().map(|d| self.tables.basis[d].as_str()).collect();
            (if k == 0 { String::new() } else { names.join("@") }, c)
        }))
    }

    pub fn format_coeffs(&self, f: &FormWithCoeffs) -> String {
        let parts: Vec<String> = f
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, e)| format!("{}@({})", self.tables.basis[k], self.alg.format(e)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Parses a form in Γ^{⊗k}: basis names, scalars, `@` between factors.
    pub fn parse_tensor(&self, src: &str) -> Result<(FinVector, usize)> {
        parse_form(&self.tables.basis, src)
    }
}

/// Parses an element of Γ^{⊗k} over the named basis; returns the vector and
/// its degree (0 for scalars).
pub fn parse_form(basis: &[String], src: &str) -> Result<(FinVector, usize)> {
    let e = crate::expr::parse(src)?;
    let v = crate::expr::Evaluator::eval(&FormEval { basis }, &e)?;
    Ok((v.vec, v.degree.unwrap_or(0)))
}

/// Graded value used by the form parser.
#[derive(Clone)]
pub struct GradedValue {
    pub vec: FinVector,
    /// `None` for pure scalars (degree 0, can scale anything).
    pub degree: Option<usize>,
}

struct FormEval<'a> {
    basis: &'a [String],
}

impl<'a> FormEval<'a> {
    fn scalar_value(v: &GradedValue) -> Option<Scalar> {
        if v.degree.is_none() {
            Some(v.vec.get(0))
        } else {
            None
        }
    }
}

impl<'a> crate::expr::Evaluator for FormEval<'a> {
    type Value = GradedValue;

    fn number(&self, n: &num_bigint::BigInt) -> Result<GradedValue> {
        Ok(GradedValue { vec: FinVector::single(0, Scalar::from_bigint(n.clone())), degree: None })
    }

    fn name(&self, s: &str) -> Result<GradedValue> {
        if let Some(p) = Param::from_name(s) {
            return Ok(GradedValue { vec: FinVector::single(0, Scalar::param(p)), degree: None });
        }
        match self.basis.iter().position(|b| b == s) {
            Some(i) => Ok(GradedValue { vec: FinVector::unit(i), degree: Some(1) }),
            None => Err(Error::Parse(format!("unknown name {s:?}"))),
        }
    }

    fn add(&self, a: GradedValue, b: GradedValue) -> Result<GradedValue> {
        if a.vec.is_zero() {
            return Ok(b);
        }
        if b.vec.is_zero() {
            return Ok(a);
        }
        if a.degree != b.degree {
            return Err(Error::Parse("sum of forms of different degree".into()));
        }
        Ok(GradedValue { vec: a.vec.add(&b.vec), degree: a.degree })
    }

    fn neg(&self, a: GradedValue) -> Result<GradedValue> {
        Ok(GradedValue { vec: a.vec.neg(), degree: a.degree })
    }

    fn mul(&self, a: GradedValue, b: GradedValue) -> Result<GradedValue> {
        match (FormEval::scalar_value(&a), FormEval::scalar_value(&b)) {
            (Some(x), _) => Ok(GradedValue { vec: b.vec.scale(&x), degree: b.degree }),
            (_, Some(y)) => Ok(GradedValue { vec: a.vec.scale(&y), degree: a.degree }),
            _ => self.tensor(a, b),
        }
    }

    fn div(&self, a: GradedValue, b: GradedValue) -> Result<GradedValue> {
        let y = FormEval::scalar_value(&b).ok_or_else(|| Error::Parse("division by a form".into()))?;
        Ok(GradedValue { vec: a.vec.scale(&y.inv()?), degree: a.degree })
    }

    fn tensor(&self, a: GradedValue, b: GradedValue) -> Result<GradedValue> {
        let n = self.basis.len();
        let (da, db) = (a.degree.unwrap_or(0), b.degree.unwrap_or(0));
        Ok(GradedValue { vec: outer(&a.vec, &b.vec, n.pow(db as u32)), degree: Some(da + db) })
    }

    fn pow(&self, a: GradedValue, k: i64) -> Result<GradedValue> {
        if let Some(x) = FormEval::scalar_value(&a) {
            return Ok(GradedValue { vec: FinVector::single(0, x.pow(k)?), degree: None });
        }
        if k < 1 {
            return Err(Error::Parse("forms only take positive powers".into()));
        }
        let mut acc = a.clone();
        for _ in 1..k {
            acc = self.tensor(acc, a.clone())?;
        }
        Ok(acc)
    }
}
