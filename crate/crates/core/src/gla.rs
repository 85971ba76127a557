//! Exact linear algebra over `Scalar`: sparse vectors, an incremental
//! fraction-free Gauss-Jordan row space, kernels, linear maps and two-term
//! cohomology ranks.

use crate::error::{Error, Result};
use crate::scalar::{Poly, Scalar};
use std::collections::HashMap;
use std::fmt;

/// Sparse vector over a finite basis; indices ascending, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FinVector {
    entries: Vec<(usize, Scalar)>,
}

impl FinVector {
    pub fn zero() -> FinVector {
        FinVector { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> FinVector {
        FinVector { entries: vec![(i, Scalar::one())] }
    }

    pub fn single(i: usize, c: Scalar) -> FinVector {
        if c.is_zero() {
            FinVector::zero()
        } else {
            FinVector { entries: vec![(i, c)] }
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> FinVector {
        let mut map: std::collections::BTreeMap<usize, Scalar> = Default::default();
        for (i, c) in pairs {
            let e = map.entry(i).or_insert_with(Scalar::zero);
            *e = e.add(&c);
        }
        FinVector { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_dense(v: &[Scalar]) -> FinVector {
        FinVector {
            entries: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    fn get_ref(&self, i: usize) -> Option<&Scalar> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Scalar, other: &FinVector) -> FinVector {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c.mul(&b[j].1)));
                j += 1;
            } else {
                let s = a[i].1.add(&c.mul(&b[j].1));
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        FinVector { entries: out }
    }

    pub fn add(&self, other: &FinVector) -> FinVector {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &FinVector) -> FinVector {
        self.add_scaled(&Scalar::int(-1), other)
    }

    pub fn scale(&self, c: &Scalar) -> FinVector {
        if c.is_zero() {
            return FinVector::zero();
        }
        FinVector { entries: self.entries.iter().map(|(i, x)| (*i, x.mul(c))).collect() }
    }

    pub fn neg(&self) -> FinVector {
        FinVector { entries: self.entries.iter().map(|(i, x)| (*i, x.neg())).collect() }
    }

    pub fn map_indices<F: Fn(usize) -> usize>(&self, f: F) -> FinVector {
        FinVector::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    pub fn conj(&self) -> FinVector {
        FinVector { entries: self.entries.iter().map(|(i, c)| (*i, c.conj())).collect() }
    }

    /// Clears denominators and divides out the common polynomial factor, so
    /// every entry is a polynomial and the entries share no factor.
    fn primitive(&self) -> FinVector {
        if self.entries.is_empty() {
            return self.clone();
        }
        let mut l = Poly::one();
        for (_, c) in &self.entries {
            let d = c.denom();
            if !d.is_one() {
                let g = Poly::gcd(&l, d);
                l = l.mul(&d.div_exact(&g).expect("gcd divides"));
            }
        }
        let scaled: Vec<(usize, Poly)> = self
            .entries
            .iter()
            .map(|(i, c)| {
                let f = l.div_exact(c.denom()).expect("lcm divisible");
                (*i, c.numer().mul(&f))
            })
            .collect();
        let mut g = Poly::zero();
        for (_, p) in &scaled {
            g = Poly::gcd(&g, p);
            if g.is_one() {
                break;
            }
        }
        FinVector {
            entries: scaled
                .into_iter()
                .map(|(i, p)| {
                    let q = if g.is_one() { p } else { p.div_exact(&g).expect("gcd divides") };
                    (i, Scalar::from_poly(q))
                })
                .collect(),
        }
    }
}

impl fmt::Debug for FinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, c)| (i, c))).finish()
    }
}

/// Picks the pivot: smallest weight, ties broken by smallest column.
fn choose_pivot(v: &FinVector, leading: bool) -> Option<usize> {
    if leading {
        v.entries.last().map(|e| e.0)
    } else {
        v.entries.iter().min_by_key(|(i, c)| (c.weight(), *i)).map(|e| e.0)
    }
}

/// Incrementally maintained reduced echelon basis of a span. Rows are
/// primitive polynomial vectors and each row vanishes at every other row's
/// pivot column.
#[derive(Clone, Default)]
pub struct RowSpace {
    rows: Vec<FinVector>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
    leading: bool,
}

impl RowSpace {
    pub fn new() -> RowSpace {
        RowSpace::default()
    }

    /// Pivots on the largest column index of each row, so the pivots are
    /// leading terms for the column order.
    pub fn leading() -> RowSpace {
        RowSpace { leading: true, ..RowSpace::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[FinVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn row_for_pivot(&self, col: usize) -> Option<&FinVector> {
        self.pivot_row.get(&col).map(|&r| &self.rows[r])
    }

    /// Remainder of `v` modulo the span; supported on non-pivot columns only.
    pub fn reduce(&self, v: &FinVector) -> FinVector {
        let mut v = v.clone();
        let hits: Vec<(usize, Scalar)> = v
            .entries
            .iter()
            .filter_map(|(i, c)| self.pivot_row.get(i).map(|&r| (r, c.clone())))
            .collect();
        for (r, c) in hits {
            let row = &self.rows[r];
            let p = row.get_ref(self.pivots[r]).expect("pivot entry");
            let f = c.div(p).expect("pivot non-zero").neg();
            v = v.add_scaled(&f, row);
        }
        v
    }

    /// Fraction-free reduction used on insertion.
    fn reduce_ff(&self, v: &FinVector) -> FinVector {
        let mut v = v.primitive();
        loop {
            let hit = v.entries.iter().find_map(|(i, c)| self.pivot_row.get(i).map(|&r| (r, c.clone())));
            let Some((r, c)) = hit else { break };
            let row = &self.rows[r];
            let p = row.get(self.pivots[r]);
            v = v.scale(&p).add_scaled(&c.neg(), row).primitive();
        }
        v
    }

    pub fn contains(&self, v: &FinVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns true when the rank grew.
    pub fn insert(&mut self, v: &FinVector) -> bool {
        let r = self.reduce_ff(v);
        let Some(p) = choose_pivot(&r, self.leading) else { return false };
        let pc = r.get(p);
        let r = if pc.numer().leading_coeff_sign_negative() { r.neg() } else { r };
        let pc = r.get(p);
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                *row = row.scale(&pc).add_scaled(&c.neg(), &r).primitive();
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(r);
        true
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a FinVector>>(vs: I) -> RowSpace {
        let mut rs = RowSpace::new();
        for v in vs {
            rs.insert(v);
        }
        rs
    }

    /// Null space of the rows, as vectors over `ncols` columns.
    pub fn null_space(&self, ncols: usize) -> Vec<FinVector> {
        let mut out = Vec::new();
        for j in 0..ncols {
            if self.is_pivot(j) {
                continue;
            }
            let mut pairs = vec![(j, Scalar::one())];
            for (r, row) in self.rows.iter().enumerate() {
                let c = row.get(j);
                if !c.is_zero() {
                    let p = self.pivots[r];
                    pairs.push((p, c.div(&row.get(p)).expect("pivot non-zero").neg()));
                }
            }
            out.push(FinVector::from_pairs(pairs));
        }
        out
    }
}

/// Echelon basis and rank of the span of `vectors`.
pub fn row_reduce(vectors: &[FinVector]) -> (Vec<FinVector>, usize) {
    let rs = RowSpace::from_vectors(vectors);
    let rank = rs.rank();
    (rs.rows, rank)
}

/// Linear map stored by the images of the domain basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub domain: usize,
    pub codomain: usize,
    columns: Vec<FinVector>,
}

impl LinearMap {
    pub fn from_columns(domain: usize, codomain: usize, columns: Vec<FinVector>) -> LinearMap {
        assert_eq!(columns.len(), domain, "one column per domain basis vector");
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < codomain)));
        LinearMap { domain, codomain, columns }
    }

    pub fn zero(domain: usize, codomain: usize) -> LinearMap {
        LinearMap { domain, codomain, columns: vec![FinVector::zero(); domain] }
    }

    pub fn identity(n: usize) -> LinearMap {
        LinearMap { domain: n, codomain: n, columns: (0..n).map(FinVector::unit).collect() }
    }

    pub fn column(&self, j: usize) -> &FinVector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[FinVector] {
        &self.columns
    }

    pub fn apply(&self, v: &FinVector) -> FinVector {
        let mut acc = FinVector::zero();
        for (j, c) in v.entries() {
            acc = acc.add_scaled(c, &self.columns[*j]);
        }
        acc
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(other.codomain, self.domain);
        LinearMap {
            domain: other.domain,
            codomain: self.codomain,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.domain, self.codomain), (other.domain, other.codomain));
        LinearMap {
            domain: self.domain,
            codomain: self.codomain,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            domain: self.domain,
            codomain: self.codomain,
            columns: self.columns.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn rank(&self) -> usize {
        RowSpace::from_vectors(&self.columns).rank()
    }

    pub fn image(&self) -> RowSpace {
        RowSpace::from_vectors(&self.columns)
    }

    pub fn transpose(&self) -> LinearMap {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.codomain];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.entries() {
                cols[*i].push((j, c.clone()));
            }
        }
        LinearMap {
            domain: self.codomain,
            codomain: self.domain,
            columns: cols.into_iter().map(|v| FinVector { entries: v }).collect(),
        }
    }

    pub fn kernel_basis(&self) -> Vec<FinVector> {
        let rows = self.transpose();
        RowSpace::from_vectors(&rows.columns).null_space(self.domain)
    }

    /// Tensor (Kronecker) product; basis index of `i⊗j` is `i*n2 + j`.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        let mut columns = Vec::with_capacity(self.domain * other.domain);
        for a in &self.columns {
            for b in &other.columns {
                let mut pairs = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a.entries() {
                    for (j, y) in b.entries() {
                        pairs.push((i * other.codomain + j, x.mul(y)));
                    }
                }
                columns.push(FinVector::from_pairs(pairs));
            }
        }
        LinearMap { domain: self.domain * other.domain, codomain: self.codomain * other.codomain, columns }
    }
}

/// Kernel of a map given explicitly.
pub fn kernel_basis(f: &LinearMap) -> Vec<FinVector> {
    f.kernel_basis()
}

/// dim ker(d_out) - rank(d_in), after checking d_out ∘ d_in = 0.
pub fn cohomology_rank(d_in: &LinearMap, d_out: &LinearMap) -> Result<usize> {
    if d_in.codomain != d_out.domain {
        return Err(Error::Compute("cohomology: mismatched dimensions".into()));
    }
    if !d_out.compose(d_in).is_zero() {
        return Err(Error::NotAComplex);
    }
    let n = d_out.domain;
    Ok(n - d_out.rank() - d_in.rank())
}

/// Solves `A x = b`; returns a particular solution and a kernel basis of A,
/// or `None` when inconsistent.
///
/// Pivots are chosen by weight, so the right-hand side column may become a
/// pivot even for consistent systems; the solution is read off the kernel of
/// `[A | -b]` instead.
pub fn solve(a: &LinearMap, b: &FinVector) -> Option<(FinVector, Vec<FinVector>)> {
    let n = a.domain;
    let mut aug_cols = a.columns.clone();
    aug_cols.push(b.neg());
    let aug = LinearMap { domain: n + 1, codomain: a.codomain, columns: aug_cols };
    let ext = aug.kernel_basis();
    let lift = ext.iter().filter(|v| !v.get(n).is_zero()).min_by_key(|v| v.len())?;
    let scale = lift.get(n).inv().expect("nonzero");
    let particular = FinVector::from_pairs(
        lift.entries().iter().filter(|(i, _)| *i < n).map(|(i, c)| (*i, c.mul(&scale))),
    );
    Some((particular, a.kernel_basis()))
}

/// Small dense matrix, used for structure tables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub n: usize,
    pub m: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(n: usize, m: usize) -> Mat {
        Mat { n, m, data: vec![Scalar::zero(); n * m] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            a.set(i, i, Scalar::one());
        }
        a
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        Ok(Mat { n, m, data: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.m + j] = v;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.m, other.n);
        let mut out = Mat::zeros(self.n, other.m);
        for i in 0..self.n {
            for k in 0..self.m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.m {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        Mat { n: self.n, m: self.m, data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat { n: self.n, m: self.m, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.m, self.n);
        for i in 0..self.n {
            for j in 0..self.m {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n.min(self.m)).fold(Scalar::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn row(&self, i: usize) -> FinVector {
        FinVector::from_dense(&self.data[i * self.m..(i + 1) * self.m])
    }

    /// Inverse by Gauss-Jordan over the field.
    pub fn inverse(&self) -> Result<Mat> {
        if self.n != self.m {
            return Err(Error::Compute("inverse of a non-square matrix".into()));
        }
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| (a.get(r, col).weight(), r))
                .ok_or(Error::DivisionByZero)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inv()?;
            for j in 0..n {
                let x = a.get(col, j).mul(&p);
                a.set(col, j, x);
                let y = inv.get(col, j).mul(&p);
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, x);
                    let y = inv.get(r, j).sub(&f.mul(inv.get(col, j)));
                    inv.set(r, j, y);
                }
            }
        }
        Ok(inv)
    }

    pub fn to_linear_map(&self) -> LinearMap {
        // columns of the matrix are the images of basis vectors
        let cols = (0..self.m)
            .map(|j| FinVector::from_pairs((0..self.n).map(|i| (i, self.get(i, j).clone()))))
            .collect();
        LinearMap::from_columns(self.m, self.n, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[&str]) -> FinVector {
        FinVector::from_dense(&xs.iter().map(|s| Scalar::parse(s).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn ranks() {
        assert_eq!(row_reduce(&[]).1, 0);
        assert_eq!(row_reduce(&[v(&["1", "0"]), v(&["0", "1"]), v(&["1", "1"])]).1, 2);
        assert_eq!(row_reduce(&[v(&["1", "lambda"]), v(&["lambda", "lambda^2"])]).1, 1);
    }

    #[test]
    fn kernels() {
        assert_eq!(LinearMap::zero(3, 2).kernel_basis().len(), 3);
        assert!(LinearMap::identity(3).kernel_basis().is_empty());
        let f = LinearMap::from_columns(2, 1, vec![v(&["1"]), v(&["lambda"])]);
        let k = f.kernel_basis();
        assert_eq!(k.len(), 1);
        let expected = v(&["-lambda", "1"]);
        let ratio = k[0].get(1);
        assert_eq!(k[0], expected.scale(&ratio));
    }

    #[test]
    fn cohomology() {
        assert_eq!(cohomology_rank(&LinearMap::zero(0, 2), &LinearMap::zero(2, 0)).unwrap(), 2);
        assert_eq!(cohomology_rank(&LinearMap::identity(2), &LinearMap::zero(2, 0)).unwrap(), 0);
        let d_in = LinearMap::from_columns(1, 2, vec![v(&["1", "0"])]);
        let d_out = LinearMap::from_columns(2, 1, vec![v(&["0"]), v(&["1"])]);
        assert_eq!(cohomology_rank(&d_in, &d_out).unwrap(), 0);
        let bad = LinearMap::from_columns(2, 1, vec![v(&["1"]), v(&["0"])]);
        assert_eq!(cohomology_rank(&d_in, &bad), Err(Error::NotAComplex));
    }

    #[test]
    fn solving() {
        let a = LinearMap::from_columns(2, 2, vec![v(&["1", "mu"]), v(&["mu", "mu^2"])]);
        let (x, k) = solve(&a, &v(&["2", "2*mu"])).unwrap();
        assert_eq!(a.apply(&x), v(&["2", "2*mu"]));
        assert_eq!(k.len(), 1);
        assert!(solve(&a, &v(&["1", "0"])).is_none());
    }

    #[test]
    fn matrix_inverse() {
        let m = Mat::from_rows(vec![
            vec![Scalar::parse("mu").unwrap(), Scalar::one()],
            vec![Scalar::zero(), Scalar::parse("1/mu").unwrap()],
        ])
        .unwrap();
        assert_eq!(m.mul(&m.inverse().unwrap()), Mat::identity(2));
    }

    #[test]
    fn reduce_lands_off_pivots() {
        let rs = RowSpace::from_vectors(&[v(&["1", "mu", "0"]), v(&["0", "1", "lambda"])]);
        let r = rs.reduce(&v(&["1", "1", "1"]));
        for p in rs.pivots() {
            assert!(r.get(*p).is_zero());
        }
        assert!(rs.contains(&v(&["1", "mu+1", "lambda"])));
    }
}
