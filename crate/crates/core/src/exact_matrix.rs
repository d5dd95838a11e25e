//! Dense exact matrices: nonnegative integer matrices for inclusion data and
//! matrices over [`Cyclotomic`] for module actions, plus exact row reduction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};
use crate::scalars::Cyclotomic;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigUint>;
pub type ScalarMatrix = Matrix<Cyclotomic>;

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(DepthError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(DepthError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, T::zero())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Positions holding an exact zero.
    pub fn zero_pattern(&self) -> ZeroPattern {
        ZeroPattern {
            rows: self.rows,
            cols: self.cols,
            zeros: self.data.iter().map(Zero::is_zero).collect(),
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    /// Exact product; fails on a dimension mismatch.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(DepthError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(DepthError::DimensionMismatch("matrix sum".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x * s)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *o = &*o + &(a * b);
                }
            }
        }
        out
    }
}

impl<T: Clone + Zero + One> Matrix<T>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    pub fn pow(&self, e: u32) -> Result<Self> {
        if self.rows != self.cols {
            return Err(DepthError::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Exact zero positions of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeroPattern {
    rows: usize,
    cols: usize,
    zeros: Vec<bool>,
}

impl ZeroPattern {
    pub fn count(&self) -> usize {
        self.zeros.iter().filter(|z| **z).count()
    }

    pub fn is_zero(&self, i: usize, j: usize) -> bool {
        self.zeros[i * self.cols + j]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Every zero of `self` is also a zero of `other`.
    pub fn is_subset_of(&self, other: &ZeroPattern) -> bool {
        self.shape() == other.shape()
            && self.zeros.iter().zip(&other.zeros).all(|(a, b)| !*a || *b)
    }

    /// Pattern of a product of nonnegative matrices, computed by Boolean
    /// reachability (entry is zero iff no connecting index).
    pub fn boolean_product(&self, other: &ZeroPattern) -> Result<ZeroPattern> {
        if self.cols != other.rows {
            return Err(DepthError::DimensionMismatch("pattern product".into()));
        }
        let mut zeros = vec![true; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.is_zero(i, k) {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.is_zero(k, j) {
                        zeros[i * other.cols + j] = false;
                    }
                }
            }
        }
        Ok(ZeroPattern {
            rows: self.rows,
            cols: other.cols,
            zeros,
        })
    }
}

// ---------------------------------------------------------------------------
// JSON matrix format

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Num(u64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntMatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<JsonInt>>,
}

impl IntMatrix {
    pub fn from_u64_rows(rows: &[&[u64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| BigUint::from(*x)).collect())
                .collect(),
        )
    }

    /// Parse `{"rows": r, "cols": c, "entries": [[...], ...]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: IntMatrixJson = serde_json::from_str(text).map_err(|e| DepthError::Parse {
            position: e.column(),
            message: format!("line {}: {}", e.line(), e),
        })?;
        if raw.rows == 0 || raw.cols == 0 {
            return Err(DepthError::invalid("matrix must have positive dimensions"));
        }
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(DepthError::DimensionMismatch(format!(
                "entries do not form a {}x{} array",
                raw.rows, raw.cols
            )));
        }
        let mut data = Vec::with_capacity(raw.rows * raw.cols);
        for row in raw.entries {
            for e in row {
                data.push(match e {
                    JsonInt::Num(n) => BigUint::from(n),
                    JsonInt::Text(s) => s.trim().parse::<BigUint>().map_err(|_| {
                        DepthError::invalid(format!("entry {s:?} is not a nonnegative integer"))
                    })?,
                });
            }
        }
        Self::new(raw.rows, raw.cols, data)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let entries: Vec<Vec<serde_json::Value>> = self
            .to_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| match u64::try_from(&x) {
                        Ok(v) => serde_json::Value::from(v),
                        Err(_) => serde_json::Value::from(x.to_string()),
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }
}

// ---------------------------------------------------------------------------
// Row reduction over the cyclotomic field

/// Echelon form from fraction-free (Bareiss) elimination. Pivots are chosen
/// deterministically: the first nonzero entry, scanning columns left to
/// right and rows top to bottom.
pub fn bareiss_echelon(a: &ScalarMatrix) -> (ScalarMatrix, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut prev = Cyclotomic::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let pivot = m.get(r, c).clone();
        let prev_inv = prev.inv().expect("Bareiss pivot is nonzero");
        for i in r + 1..rows {
            let factor = m.get(i, c).clone();
            for j in c + 1..cols {
                let v = &(&pivot * m.get(i, j)) - &(&factor * m.get(r, j));
                m.set(i, j, &v * &prev_inv);
            }
            m.set(i, c, Cyclotomic::zero());
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &ScalarMatrix) -> (ScalarMatrix, Vec<usize>) {
    let (mut m, pivots) = bareiss_echelon(a);
    let cols = m.cols;
    for (r, &c) in pivots.iter().enumerate() {
        let inv = m.get(r, c).inv().expect("pivot is nonzero");
        for j in c..cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
    }
    for (r, &c) in pivots.iter().enumerate().rev() {
        for i in 0..r {
            let factor = m.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = m.get(i, j) - &(&factor * m.get(r, j));
                m.set(i, j, v);
            }
        }
    }
    (m, pivots)
}

pub fn rank(a: &ScalarMatrix) -> usize {
    bareiss_echelon(a).1.len()
}

/// Basis of the right null space `{x : A x = 0}`, one vector per free column.
pub fn kernel(a: &ScalarMatrix) -> Vec<Vec<Cyclotomic>> {
    let (r, pivots) = rref(a);
    let cols = a.cols;
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let mut basis = Vec::new();
    for f in 0..cols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![Cyclotomic::zero(); cols];
        v[f] = Cyclotomic::one();
        for (row, &c) in pivots.iter().enumerate() {
            let e = r.get(row, f);
            if !e.is_zero() {
                v[c] = -e;
            }
        }
        basis.push(v);
    }
    basis
}

/// Basis of `{y : y A = 0}` (row vectors).
pub fn left_kernel(a: &ScalarMatrix) -> Vec<Vec<Cyclotomic>> {
    kernel(&a.transpose())
}

/// One solution of `A x = b`, if any.
pub fn solve(a: &ScalarMatrix, b: &[Cyclotomic]) -> Result<Option<Vec<Cyclotomic>>> {
    if b.len() != a.rows {
        return Err(DepthError::DimensionMismatch("right-hand side length".into()));
    }
    let mut aug = ScalarMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![Cyclotomic::zero(); a.cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = r.get(row, a.cols).clone();
    }
    Ok(Some(x))
}

pub fn inverse(a: &ScalarMatrix) -> Result<ScalarMatrix> {
    let n = a.rows;
    if a.cols != n {
        return Err(DepthError::DimensionMismatch("inverse of non-square matrix".into()));
    }
    let mut aug = ScalarMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n + i, Cyclotomic::one());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(DepthError::DivisionByZero);
    }
    let mut out = ScalarMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, r.get(i, n + j).clone());
        }
    }
    Ok(out)
}

/// Matrix whose rows are the given vectors.
pub fn rows_matrix(vectors: &[Vec<Cyclotomic>], width: usize) -> ScalarMatrix {
    let mut data = Vec::with_capacity(vectors.len() * width);
    for v in vectors {
        assert_eq!(v.len(), width);
        data.extend(v.iter().cloned());
    }
    ScalarMatrix::new(vectors.len(), width, data).expect("row lengths checked")
}

/// Dimension of the span of the given vectors.
pub fn span_dim(vectors: &[Vec<Cyclotomic>], width: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&rows_matrix(vectors, width))
}

/// Equality of the spans of two vector families.
pub fn same_span(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>], width: usize) -> bool {
    let da = span_dim(a, width);
    let db = span_dim(b, width);
    if da != db {
        return false;
    }
    let both: Vec<Vec<Cyclotomic>> = a.iter().chain(b.iter()).cloned().collect();
    span_dim(&both, width) == da
}

pub type SparseVec = BTreeMap<usize, Cyclotomic>;

pub fn sparse_axpy(target: &mut SparseVec, coeff: &Cyclotomic, v: &SparseVec) {
    for (k, x) in v {
        let add = coeff * x;
        match target.get_mut(k) {
            Some(t) => {
                *t += &add;
                if t.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    target.insert(*k, add);
                }
            }
        }
    }
}

/// Incrementally maintained echelon basis of a subspace, stored sparsely.
/// Rows are normalised so their pivot coefficient is one.
#[derive(Clone, Debug, Default)]
pub struct SparseSpan {
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Unique representative of `v` modulo the span, supported off the pivots.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        v.retain(|_, x| !x.is_zero());
        let mut cursor = 0;
        loop {
            let next = v
                .range(cursor..)
                .map(|(k, _)| *k)
                .find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let c = v.remove(&k).expect("present");
            let row = &self.rows[&k];
            let neg = -&c;
            for (j, x) in row.range(k + 1..) {
                let add = &neg * x;
                match v.get_mut(j) {
                    Some(t) => {
                        *t += &add;
                        if t.is_zero() {
                            v.remove(j);
                        }
                    }
                    None => {
                        if !add.is_zero() {
                            v.insert(*j, add);
                        }
                    }
                }
            }
            cursor = k + 1;
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Treats the rows as homogeneous equations in `width` unknowns and
    /// returns one solution per free column, equal to 1 there and 0 on the
    /// other free columns. Also returns the free columns.
    pub fn solution_basis(&self, width: usize) -> (Vec<usize>, Vec<SparseVec>) {
        let free: Vec<usize> = (0..width).filter(|c| !self.rows.contains_key(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = SparseVec::from([(f, Cyclotomic::one())]);
            for (p, row) in self.rows.iter().rev() {
                let mut s = Cyclotomic::zero();
                for (j, a) in row.range(p + 1..) {
                    if let Some(v) = x.get(j) {
                        s += &(a * v);
                    }
                }
                if !s.is_zero() {
                    x.insert(*p, -s);
                }
            }
            out.push(x);
        }
        (free, out)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        let normalised: SparseVec = r.iter().map(|(k, x)| (*k, x * &inv)).collect();
        self.rows.insert(p, normalised);
        true
    }
}

pub fn dense_to_sparse(v: &[Cyclotomic]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, width: usize) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero(); width];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

/// A quotient `ambient / W` with a canonical basis of representatives.
///
/// Representatives are the basis vectors `e_i` chosen greedily in
/// increasing `i` among those independent of `W` and the earlier choices.
/// The subspace is eliminated from the highest index down, so reducing any
/// vector leaves it supported exactly on the representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: usize,
    span: SparseSpan,
    reps: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new<I: IntoIterator<Item = SparseVec>>(ambient: usize, relations: I) -> Self {
        let mut span = SparseSpan::new();
        for v in relations {
            span.insert(Self::flip(ambient, &v));
        }
        let pivots: std::collections::BTreeSet<usize> = span.pivots().map(|p| ambient - 1 - p).collect();
        let reps: Vec<usize> = (0..ambient).filter(|i| !pivots.contains(i)).collect();
        let mut position = vec![None; ambient];
        for (k, &r) in reps.iter().enumerate() {
            position[r] = Some(k);
        }
        Self {
            ambient,
            span,
            reps,
            position,
        }
    }

    fn flip(ambient: usize, v: &SparseVec) -> SparseVec {
        v.iter().map(|(k, x)| (ambient - 1 - k, x.clone())).collect()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Dimension of the subspace being factored out.
    pub fn relation_dim(&self) -> usize {
        self.span.dim()
    }

    /// Ambient indices of the representative basis vectors.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn project_sparse(&self, v: &SparseVec) -> SparseVec {
        let r = self.span.reduce(Self::flip(self.ambient, v));
        r.into_iter()
            .map(|(k, x)| {
                let i = self.ambient - 1 - k;
                (self.position[i].expect("reduced vectors live on representatives"), x)
            })
            .collect()
    }

    pub fn project(&self, v: &SparseVec) -> Vec<Cyclotomic> {
        sparse_to_dense(&self.project_sparse(v), self.dim())
    }

    pub fn is_zero_class(&self, v: &SparseVec) -> bool {
        self.span.contains(Self::flip(self.ambient, v))
    }
}

/// Coordinates with respect to a linearly independent family of vectors.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
    /// Inverse of the basis restricted to the pivot columns.
    inverse: ScalarMatrix,
}

impl CoordinateMap {
    pub fn new(basis: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let Some(width) = basis.first().map(Vec::len) else {
            return Ok(Self {
                basis: vec![],
                pivots: vec![],
                inverse: ScalarMatrix::zeros(0, 0),
            });
        };
        let m = rows_matrix(&basis, width);
        let (_, pivots) = rref(&m);
        if pivots.len() != basis.len() {
            return Err(DepthError::invalid("basis vectors are linearly dependent"));
        }
        let k = basis.len();
        let mut sub = ScalarMatrix::zeros(k, k);
        for i in 0..k {
            for (j, &p) in pivots.iter().enumerate() {
                sub.set(i, j, m.get(i, p).clone());
            }
        }
        Ok(Self {
            basis: basis.iter().map(|v| dense_to_sparse(v)).collect(),
            pivots,
            inverse: inverse(&sub)?,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Linear left inverse of the embedding, defined on the whole ambient space.
    pub fn coords_unchecked(&self, v: &SparseVec) -> Vec<Cyclotomic> {
        let k = self.basis.len();
        let mut out = vec![Cyclotomic::zero(); k];
        for (j, &p) in self.pivots.iter().enumerate() {
            if let Some(x) = v.get(&p) {
                for (i, o) in out.iter_mut().enumerate() {
                    let a = self.inverse.get(j, i);
                    if !a.is_zero() {
                        *o += &(x * a);
                    }
                }
            }
        }
        out
    }

    pub fn combine(&self, coords: &[Cyclotomic]) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                sparse_axpy(&mut out, c, b);
            }
        }
        out
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<Cyclotomic>> {
        let c = self.coords_unchecked(v);
        let mut back = self.combine(&c);
        back.retain(|_, x| !x.is_zero());
        let mut orig = v.clone();
        orig.retain(|_, x| !x.is_zero());
        (back == orig).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[u64]]) -> IntMatrix {
        IntMatrix::from_u64_rows(rows).unwrap()
    }

    fn sc(rows: &[&[i64]]) -> ScalarMatrix {
        ScalarMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| Cyclotomic::from_int(*x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn products() {
        let m = int(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(IntMatrix::identity(2).mul(&m).unwrap(), m);
        assert_eq!(m.mul(&m.transpose()).unwrap(), int(&[&[2, 1], &[1, 2]]));
        let z = IntMatrix::zeros(3, 2);
        assert!(m.mul(&z).unwrap().is_zero_matrix());
        assert!(matches!(m.mul(&m), Err(DepthError::DimensionMismatch(_))));
    }

    #[test]
    fn zero_patterns() {
        assert_eq!(IntMatrix::identity(3).zero_pattern().count(), 6);
        assert_eq!(int(&[&[2, 1], &[1, 2]]).zero_pattern().count(), 0);
        assert_eq!(IntMatrix::zeros(2, 3).zero_pattern().count(), 6);
    }

    #[test]
    fn kernels() {
        assert!(kernel(&ScalarMatrix::identity(3)).is_empty());
        assert_eq!(kernel(&ScalarMatrix::zeros(4, 4)).len(), 4);
        let k = kernel(&sc(&[&[1, 1]]));
        assert_eq!(k, vec![vec![Cyclotomic::from_int(-1), Cyclotomic::one()]]);
    }

    #[test]
    fn solve_and_inverse() {
        let a = sc(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ScalarMatrix::identity(2));
        let x = solve(&a, &[Cyclotomic::from_int(3), Cyclotomic::from_int(2)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![Cyclotomic::one(), Cyclotomic::one()]);
        let singular = sc(&[&[1, 1], &[1, 1]]);
        assert!(inverse(&singular).is_err());
        assert!(solve(&singular, &[Cyclotomic::one(), Cyclotomic::zero()])
            .unwrap()
            .is_none());
    }

    #[test]
    fn cyclotomic_kernel() {
        // [[1, i], [i, -1]] has rank 1 over Q(i)
        let i = Cyclotomic::root(4);
        let a = ScalarMatrix::from_rows(vec![
            vec![Cyclotomic::one(), i.clone()],
            vec![i.clone(), Cyclotomic::from_int(-1)],
        ])
        .unwrap();
        assert_eq!(rank(&a), 1);
        let k = kernel(&a);
        assert_eq!(k.len(), 1);
        let col = ScalarMatrix::new(2, 1, k[0].clone()).unwrap();
        assert!(a.mul(&col).unwrap().is_zero_matrix());
    }

    #[test]
    fn sparse_span_normal_form() {
        let mut s = SparseSpan::new();
        let v = |pairs: &[(usize, i64)]| -> SparseVec {
            pairs.iter().map(|(k, x)| (*k, Cyclotomic::from_int(*x))).collect()
        };
        assert!(s.insert(v(&[(0, 1), (2, -1)])));
        assert!(s.insert(v(&[(1, 2), (2, 2)])));
        assert!(!s.insert(v(&[(0, 1), (1, 1)])));
        assert_eq!(s.dim(), 2);
        let r = s.reduce(v(&[(0, 3)]));
        assert_eq!(r, v(&[(2, 3)]));
    }

    #[test]
    fn quotient_representatives() {
        // W spanned by e2 - e0 and e3 - e1 leaves e0, e1 as representatives.
        let w = |pairs: &[(usize, i64)]| -> SparseVec {
            pairs.iter().map(|(k, x)| (*k, Cyclotomic::from_int(*x))).collect()
        };
        let q = Quotient::new(4, [w(&[(2, 1), (0, -1)]), w(&[(3, 1), (1, -1)])]);
        assert_eq!(q.reps(), &[0, 1]);
        assert_eq!(q.project(&w(&[(2, 5), (1, 1)])), vec![Cyclotomic::from_int(5), Cyclotomic::one()]);
        assert!(q.is_zero_class(&w(&[(3, 2), (1, -2)])));
        let c = CoordinateMap::new(vec![
            vec![Cyclotomic::one(), Cyclotomic::one(), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::one(), Cyclotomic::one()],
        ])
        .unwrap();
        assert_eq!(c.coords(&w(&[(0, 2), (1, 5), (2, 3)])), Some(vec![Cyclotomic::from_int(2), Cyclotomic::from_int(3)]));
        assert_eq!(c.coords(&w(&[(0, 1)])), None);
    }

    #[test]
    fn json_roundtrip() {
        let m = int(&[&[1, 0], &[3, 7]]);
        let text = m.to_json_value().to_string();
        assert_eq!(IntMatrix::from_json_str(&text).unwrap(), m);
        let big = r#"{"rows":1,"cols":1,"entries":[["123456789012345678901234567890"]]}"#;
        assert!(IntMatrix::from_json_str(big).is_ok());
        assert!(IntMatrix::from_json_str(r#"{"rows":1,"cols":2,"entries":[[1]]}"#).is_err());
        assert!(IntMatrix::from_json_str(r#"{"rows":1,"cols":1,"entries":[[-1]]}"#).is_err());
    }
}
