//! Sparse multivariate polynomials with integer coefficients in the three
//! formal parameters (mu, lambda, nu).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub const NVARS: usize = 3;

/// Exponent vector; compared lexicographically (mu > lambda > nu).
pub type Exp = [u32; NVARS];

fn exp_add(a: &Exp, b: &Exp) -> Exp {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn exp_divides(d: &Exp, e: &Exp) -> bool {
    d.iter().zip(e.iter()).all(|(x, y)| x <= y)
}

fn exp_sub(a: &Exp, b: &Exp) -> Exp {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Terms are kept sorted by strictly decreasing exponent, without zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Exp, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![([0; NVARS], c)] }
        }
    }

    pub fn var(i: usize) -> Poly {
        let mut e = [0; NVARS];
        e[i] = 1;
        Poly { terms: vec![(e, BigInt::one())] }
    }

    pub fn monomial(e: Exp, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(e, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(mut terms: Vec<(Exp, BigInt)>) -> Poly {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Exp, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Exp, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == [0; NVARS])
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0; NVARS] && self.terms[0].1.is_one()
    }

    pub fn leading(&self) -> Option<&(Exp, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff_sign_negative(&self) -> bool {
        self.terms.first().map(|t| t.1.is_negative()).unwrap_or(false)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] > 0)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: Vec<(Exp, BigInt)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc.push((exp_add(ea, eb), ca * cb));
            }
        }
        Poly::from_terms(acc)
    }

    pub fn mul_term(&self, e: &Exp, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(x, d)| (exp_add(x, e), d * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(e, d)| (*e, d * c)).collect() }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(e, d)| (*e, d / c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Positive gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division in Z[mu, lambda, nu]; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.is_constant() {
            let c = &d.terms[0].1;
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, x) in &self.terms {
                let (q, r) = x.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push((*e, q));
            }
            return Some(Poly { terms: out });
        }
        let (de, dc) = d.terms[0].clone();
        let mut r = self.clone();
        let mut q: Vec<(Exp, BigInt)> = Vec::new();
        while let Some((re, rc)) = r.terms.first().cloned() {
            if !exp_divides(&de, &re) {
                return None;
            }
            let (qc, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let qe = exp_sub(&re, &de);
            r = r.sub(&d.mul_term(&qe, &qc));
            q.push((qe, qc));
        }
        Some(Poly { terms: q })
    }

    /// Coefficients with respect to variable `v`, indexed by degree.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exp, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[v] as usize;
            e2[v] = 0;
            buckets[k].push((e2, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    fn lead_coeff_in(&self, v: usize) -> Poly {
        let deg = self.degree_in(v);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] == deg)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[v] = 0;
                (e2, c.clone())
            })
            .collect();
        Poly::from_terms(terms)
    }

    fn mul_var_pow(&self, v: usize, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        let mut e = [0; NVARS];
        e[v] = k;
        self.mul_term(&e, &BigInt::one())
    }

    fn with_positive_lead(self) -> Poly {
        if self.leading_coeff_sign_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// gcd of the coefficients of `self` viewed as a polynomial in `v`.
    fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v).into_iter().rev() {
            if c.is_zero() {
                continue;
            }
            g = Poly::gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> Poly {
        let c = self.content_in(v);
        if c.is_zero() {
            return Poly::zero();
        }
        self.div_exact(&c).expect("content divides").with_positive_lead()
    }

    fn prem(f: &Poly, g: &Poly, v: usize) -> Poly {
        let dg = g.degree_in(v);
        let lcg = g.lead_coeff_in(v);
        let mut r = f.clone();
        while !r.is_zero() && r.uses_var(v) && r.degree_in(v) >= dg {
            let dr = r.degree_in(v);
            let lcr = r.lead_coeff_in(v);
            r = lcg.mul(&r).sub(&lcr.mul(g).mul_var_pow(v, dr - dg));
        }
        if dg == 0 {
            return Poly::zero();
        }
        r
    }

    /// Greatest common divisor in Z[mu, lambda, nu], normalised to a positive
    /// leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.clone().with_positive_lead();
        }
        if b.is_zero() {
            return a.clone().with_positive_lead();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::constant(a.content().gcd(&b.content()));
        }
        if a == b {
            return a.clone().with_positive_lead();
        }
        // A variable present in only one argument cannot occur in the gcd.
        if let Some(v) = (0..NVARS).find(|&v| a.uses_var(v) != b.uses_var(v)) {
            return if a.uses_var(v) { Self::gcd_with_coeffs(b, a, v) } else { Self::gcd_with_coeffs(a, b, v) };
        }
        if let Some((h, _, _)) = Self::heu_gcd(a, b) {
            return h.with_positive_lead();
        }
        let v = (0..NVARS).find(|&v| a.uses_var(v)).expect("non-constant");
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let g0 = Poly::gcd(&ca, &cb);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
        loop {
            let r = Poly::prem(&f, &g, v);
            if r.is_zero() {
                break;
            }
            if !r.uses_var(v) {
                g = Poly::one();
                break;
            }
            f = g;
            g = r.primitive_in(v);
        }
        let pg = if g.uses_var(v) { g.primitive_in(v) } else { Poly::one() };
        g0.mul(&pg).with_positive_lead()
    }

    fn max_norm(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Substitutes the integer `x` for variable `v`.
    fn eval_var(&self, v: usize, x: &BigInt) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[v] = 0;
                (e2, c * num_traits::pow(x.clone(), e[v] as usize))
            })
            .collect();
        Poly::from_terms(terms)
    }

    /// Reads the integer coefficients of `h` as balanced base-`x` digits,
    /// the i-th digit becoming the coefficient of `v^i`.
    fn interpolate(h: &Poly, v: usize, x: &BigInt) -> Poly {
        let half = x / 2;
        let mut h = h.clone();
        let mut out = Poly::zero();
        let mut i = 0;
        while !h.is_zero() {
            let digit = Poly::from_terms(
                h.terms
                    .iter()
                    .map(|(e, c)| {
                        let r = c.mod_floor(x);
                        (*e, if r > half { r - x } else { r })
                    })
                    .collect(),
            );
            out = out.add(&digit.mul_var_pow(v, i));
            h = h.sub(&digit).div_scalar_exact(x);
            i += 1;
        }
        out.with_positive_lead()
    }

    /// Heuristic gcd: evaluate one variable at a large integer, recurse, and
    /// lift the image gcd back by base-`x` expansion. A lift is accepted only
    /// if it divides both inputs. Returns gcd and both cofactors.
    fn heu_gcd(f: &Poly, g: &Poly) -> Option<(Poly, Poly, Poly)> {
        if f.is_zero() || g.is_zero() {
            return None;
        }
        if f.is_constant() || g.is_constant() {
            let h = Poly::constant(f.content().gcd(&g.content()));
            return Some((h.clone(), f.div_exact(&h)?, g.div_exact(&h)?));
        }
        let v = (0..NVARS).find(|&v| f.uses_var(v) || g.uses_var(v))?;
        let c = f.content().gcd(&g.content());
        let (f, g) = (f.div_scalar_exact(&c), g.div_scalar_exact(&c));
        let (nf, ng) = (f.max_norm(), g.max_norm());
        let b: BigInt = BigInt::from(2) * (&nf).min(&ng) + 29;
        let lf = &nf / f.terms[0].1.abs();
        let lg = &ng / g.terms[0].1.abs();
        let floor = BigInt::from(2) * lf.min(lg) + 4;
        let mut x: BigInt = b.clone().min(BigInt::from(99) * b.sqrt()).max(floor);
        let accept = |h: Poly| -> Option<(Poly, Poly, Poly)> {
            if h.is_zero() {
                return None;
            }
            let h = h.div_scalar_exact(&h.content()).with_positive_lead();
            let cf = f.div_exact(&h)?;
            let cg = g.div_exact(&h)?;
            Some((h.scale(&c), cf, cg))
        };
        for _ in 0..6 {
            let (ff, gg) = (f.eval_var(v, &x), g.eval_var(v, &x));
            if !ff.is_zero() && !gg.is_zero() {
                if let Some((h, cff, cfg)) = Self::heu_gcd(&ff, &gg) {
                    if let Some(r) = accept(Self::interpolate(&h, v, &x)) {
                        return Some(r);
                    }
                    for (cof, p) in [(cff, &f), (cfg, &g)] {
                        let cof = Self::interpolate(&cof, v, &x);
                        if cof.is_zero() {
                            continue;
                        }
                        if let Some(r) = p.div_exact(&cof).and_then(&accept) {
                            return Some(r);
                        }
                    }
                }
            }
            x = BigInt::from(73794) * &x * x.sqrt().sqrt() / 27011;
        }
        None
    }

    /// gcd(a, b) where `a` does not involve `v`: fold over the coefficients of b.
    fn gcd_with_coeffs(a: &Poly, b: &Poly, v: usize) -> Poly {
        let mut g = a.clone();
        for c in b.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = Poly::gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g.with_positive_lead()
    }

    /// Applies `nu -> -nu`.
    pub fn conj(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| if e[2] % 2 == 1 { (*e, -c) } else { (*e, c.clone()) })
                .collect(),
        }
    }

    /// Substitutes `v = p/q` (q > 0) and returns `(P, D)` with
    /// `self|_{v=p/q} = P / q^D`.
    pub fn subst_rational(&self, v: usize, p: &BigInt, q: &BigInt) -> (Poly, u32) {
        let d = self.degree_in(v);
        let mut acc = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let k = e[v];
            let mut e2 = *e;
            e2[v] = 0;
            let factor = num_traits::pow(p.clone(), k as usize) * num_traits::pow(q.clone(), (d - k) as usize);
            acc.push((e2, c * factor));
        }
        (Poly::from_terms(acc), d)
    }

    /// Evaluates at rational points for every variable; returns numerator and
    /// denominator of the exact value.
    pub fn eval(&self, point: &[(BigInt, BigInt); NVARS]) -> (BigInt, BigInt) {
        let degs: Vec<u32> = (0..NVARS).map(|v| self.degree_in(v)).collect();
        let mut num = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..NVARS {
                let (p, q) = &point[v];
                t *= num_traits::pow(p.clone(), e[v] as usize);
                t *= num_traits::pow(q.clone(), (degs[v] - e[v]) as usize);
            }
            num += t;
        }
        let mut den = BigInt::one();
        for v in 0..NVARS {
            den *= num_traits::pow(point[v].1.clone(), degs[v] as usize);
        }
        (num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(BigInt::from(n))
    }

    #[test]
    fn arithmetic_cancels() {
        let p = x().add(&y());
        assert!(p.sub(&p).is_zero());
        assert_eq!(x().mul(&x()), x().pow(2));
    }

    #[test]
    fn exact_division() {
        let a = x().add(&c(1));
        let b = x().sub(&y());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(x().div_exact(&y()), None);
    }

    #[test]
    fn gcd_univariate() {
        let a = x().pow(2).sub(&c(1));
        let b = x().sub(&c(1)).mul(&c(6));
        assert_eq!(Poly::gcd(&a, &b), x().sub(&c(1)));
    }

    #[test]
    fn gcd_bivariate() {
        let common = x().mul(&y()).add(&c(2));
        let a = common.mul(&x().sub(&y()));
        let b = common.mul(&x().add(&c(3))).mul(&c(4));
        assert_eq!(Poly::gcd(&a, &b), common);
    }

    #[test]
    fn gcd_trivariate_shared_variables() {
        let z = Poly::var(2);
        let common = x().add(&y()).mul(&c(3));
        let a = common.mul(&y().mul(&z).add(&c(1))).mul(&x().sub(&c(2)));
        let b = common.mul(&x().pow(2).add(&z)).mul(&c(2));
        assert_eq!(Poly::gcd(&a, &b), common);
        let p = x().sub(&y().pow(2));
        let q = x().mul(&z).add(&y()).add(&c(1));
        assert_eq!(Poly::gcd(&p.pow(2).mul(&q), &p.mul(&q.pow(3))), p.mul(&q));
        assert!(Poly::gcd(&p, &q).is_one());
    }

    #[test]
    fn heuristic_and_prs_agree() {
        let z = Poly::var(2);
        let g = x().mul(&y()).sub(&z.pow(2)).add(&c(5));
        let a = g.mul(&x().add(&z).pow(2));
        let b = g.mul(&y().sub(&c(7)));
        let (h, ca, cb) = Poly::heu_gcd(&a, &b).unwrap();
        assert_eq!(h, g);
        assert_eq!(h.mul(&ca), a);
        assert_eq!(h.mul(&cb), b);
    }

    #[test]
    fn gcd_with_integer_content() {
        assert_eq!(Poly::gcd(&c(4), &x().mul(&c(6))), c(2));
    }
}
