//! Depth of semisimple pairs read off their inclusion matrix.
//!
//! Rows of the inclusion matrix `M` index the simples of the subalgebra `B`,
//! columns the simples of `A`. Odd depth comes from the zero pattern of the
//! powers of `S = M M^t`, h-depth from `T = M^t M`, and the module depth of
//! the generalized permutation module over `A` from the supports of
//! `v T^n` where `v` is the row of the trivial representation of `B`.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{DepthError, Result};
use crate::exact_matrix::{IntMatrix, ZeroPattern};
use crate::report::{DepthReport, Quantity};
use crate::scalars::Rational;

/// Largest `n` accepted by [`branch_matrix`].
pub const MAX_BRANCH_N: usize = 8;

/// A validated inclusion matrix with optional side data.
#[derive(Clone, Debug, PartialEq)]
pub struct InclusionData {
    matrix: IntMatrix,
    triv_row: Option<usize>,
    dim_vector: Option<Vec<BigUint>>,
    index: Option<Rational>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl InclusionData {
    /// Rejects matrices with an all-zero row or column.
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r == 0 || c == 0 {
            return Err(DepthError::invalid("inclusion matrix must be nonempty"));
        }
        for i in 0..r {
            if matrix.row(i).iter().all(Zero::is_zero) {
                return Err(DepthError::invalid(format!("row {i} of the inclusion matrix is zero")));
            }
        }
        for j in 0..c {
            if (0..r).all(|i| matrix.get(i, j).is_zero()) {
                return Err(DepthError::invalid(format!(
                    "column {j} of the inclusion matrix is zero"
                )));
            }
        }
        Ok(Self {
            matrix,
            triv_row: None,
            dim_vector: None,
            index: None,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn with_triv_row(mut self, row: usize) -> Result<Self> {
        if row >= self.matrix.rows() {
            return Err(DepthError::invalid(format!(
                "trivial row {row} out of range for {} rows",
                self.matrix.rows()
            )));
        }
        self.triv_row = Some(row);
        Ok(self)
    }

    pub fn with_dims(mut self, dims: Vec<BigUint>, index: Rational) -> Result<Self> {
        if dims.len() != self.matrix.rows() {
            return Err(DepthError::DimensionMismatch(format!(
                "dimension vector has {} entries for {} rows",
                dims.len(),
                self.matrix.rows()
            )));
        }
        if dims.iter().any(Zero::is_zero) {
            return Err(DepthError::invalid("dimensions must be positive"));
        }
        if index <= Rational::zero() {
            return Err(DepthError::invalid("index must be positive"));
        }
        self.dim_vector = Some(dims);
        self.index = Some(index);
        Ok(self)
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        if rows.len() != self.matrix.rows() || cols.len() != self.matrix.cols() {
            return Err(DepthError::DimensionMismatch("label counts".into()));
        }
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        Ok(self)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn triv_row(&self) -> Option<usize> {
        self.triv_row
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    /// `S = M M^t`, indexed by simples of the subalgebra.
    pub fn s_matrix(&self) -> IntMatrix {
        self.matrix.mul(&self.matrix.transpose()).expect("shapes agree")
    }

    /// `T = M^t M`, indexed by simples of the overalgebra.
    pub fn t_matrix(&self) -> IntMatrix {
        self.matrix.transpose().mul(&self.matrix).expect("shapes agree")
    }

    /// Inclusion matrix of the tensor product pair `B1 (x) B2 in A1 (x) A2`.
    pub fn tensor(&self, other: &InclusionData) -> Result<InclusionData> {
        let mut out = InclusionData::new(self.matrix.kron(&other.matrix))?;
        if let (Some(a), Some(b)) = (self.triv_row, other.triv_row) {
            out = out.with_triv_row(a * other.matrix.rows() + b)?;
        }
        Ok(out)
    }
}

/// Zero-pattern history of `P^0 = I, P^1, P^2, ...` until two consecutive
/// patterns agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilization {
    /// Least `n` with `pattern(P^n) == pattern(P^(n+1))`.
    pub step: usize,
    /// Zero counts of `P^0 ..= P^(step+1)`.
    pub zero_counts: Vec<usize>,
}

/// Finds the first power at which the zero pattern repeats. The matrix must
/// be square with a positive diagonal, so patterns shrink monotonically and
/// the loop ends within `r^2` steps.
pub fn pattern_stabilization(p: &IntMatrix) -> Result<Stabilization> {
    let r = p.rows();
    if p.cols() != r {
        return Err(DepthError::DimensionMismatch("stabilization needs a square matrix".into()));
    }
    let limit = r * r + 1;
    let mut power = IntMatrix::identity(r);
    let mut pattern = power.zero_pattern();
    let mut counts = vec![pattern.count()];
    for n in 0..=limit {
        let next = power.mul(p)?;
        let next_pattern = next.zero_pattern();
        counts.push(next_pattern.count());
        if next_pattern == pattern {
            return Ok(Stabilization {
                step: n,
                zero_counts: counts,
            });
        }
        power = next;
        pattern = next_pattern;
    }
    Err(DepthError::cap("zero-pattern stabilization steps", limit))
}

/// Minimum odd depth `2n+1` from the powers of `S = M M^t`.
pub fn min_odd_depth(data: &InclusionData) -> Result<DepthReport> {
    let st = pattern_stabilization(&data.s_matrix())?;
    let depth = 2 * st.step as u64 + 1;
    Ok(DepthReport::single(
        Quantity::OddDepth,
        depth,
        true,
        st.step as u64,
        format!(
            "zero pattern of S^n = (M M^t)^n stabilizes at n = {} (zero counts {:?}); minimum depth may be {}",
            st.step,
            st.zero_counts,
            depth.saturating_sub(1).max(1)
        ),
    ))
}

/// Minimum h-depth `2n+1` from the powers of `T = M^t M`, starting at
/// `T^0 = I` (so a pair with diagonal `T`, e.g. `B = A`, has h-depth 1).
pub fn min_h_depth(data: &InclusionData) -> Result<DepthReport> {
    let st = pattern_stabilization(&data.t_matrix())?;
    Ok(DepthReport::single(
        Quantity::HDepth,
        2 * st.step as u64 + 1,
        true,
        st.step as u64,
        format!(
            "zero pattern of T^n = (M^t M)^n stabilizes at n = {} (zero counts {:?})",
            st.step, st.zero_counts
        ),
    ))
}

fn support(v: &[BigUint]) -> BTreeSet<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

fn row_times(v: &[BigUint], m: &IntMatrix) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); m.cols()];
    for (i, a) in v.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let b = m.get(i, j);
            if !b.is_zero() {
                *o += a * b;
            }
        }
    }
    out
}

/// Depth of the permutation module `V` over the overalgebra.
///
/// With `v` the trivial row of `M` (the character of `V`), the character of
/// `V^(n+1)` is `v T^n`. Depth is 0 when `v` is supported on one simple;
/// otherwise `1 + min{n : supp(v T^n) = supp(v T^(n+1))}`.
pub fn module_depth_h(data: &InclusionData) -> Result<DepthReport> {
    let triv = data.triv_row.ok_or(DepthError::MissingField("triv_row"))?;
    let t = data.t_matrix();
    let v: Vec<BigUint> = data.matrix.row(triv).to_vec();
    let mut supports = vec![support(&v)];
    if supports[0].len() == 1 {
        return Ok(DepthReport::single(
            Quantity::ModuleDepthH,
            0,
            true,
            0,
            "character of V is a multiple of a single simple",
        ));
    }
    let limit = t.rows() + 1;
    let mut cur = v;
    for n in 0..=limit {
        let next = row_times(&cur, &t);
        let s = support(&next);
        let stable = s == supports[n];
        supports.push(s);
        if stable {
            let sizes: Vec<usize> = supports.iter().map(BTreeSet::len).collect();
            return Ok(DepthReport::single(
                Quantity::ModuleDepthH,
                1 + n as u64,
                true,
                n as u64,
                format!("support of chi_V^(k+1) = v T^k stabilizes at k = {n} (support sizes {sizes:?})"),
            ));
        }
        cur = next;
    }
    Err(DepthError::cap("character support iterations", limit))
}

fn bfs(adj: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("visited");
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// `1 +` the largest distance between two row vertices ("black dots") in
/// the bipartite graph of `M`.
pub fn bipartite_odd_depth(data: &InclusionData) -> Result<DepthReport> {
    let (r, c) = data.matrix.shape();
    let mut adj = vec![Vec::new(); r + c];
    for i in 0..r {
        for j in 0..c {
            if !data.matrix.get(i, j).is_zero() {
                adj[i].push(r + j);
                adj[r + j].push(i);
            }
        }
    }
    let mut diameter = 0;
    let mut components = 0;
    let mut seen = vec![false; r + c];
    for v in 0..r + c {
        if !seen[v] {
            components += 1;
            for (u, d) in bfs(&adj, v).iter().enumerate() {
                if d.is_some() {
                    seen[u] = true;
                }
            }
        }
    }
    if components > 1 {
        return Err(DepthError::Disconnected { components });
    }
    for i in 0..r {
        let dist = bfs(&adj, i);
        for d in dist.iter().take(r).flatten() {
            diameter = diameter.max(*d);
        }
    }
    Ok(DepthReport::single(
        Quantity::OddDepth,
        1 + diameter as u64,
        true,
        (diameter / 2) as u64,
        format!("row-vertex diameter {diameter} of the bipartite graph"),
    ))
}

/// Checks that the dimension vector of the subalgebra's simples is an
/// eigenvector of `S` with eigenvalue the index.
pub fn check_perron(data: &InclusionData) -> Result<bool> {
    let dims = data.dim_vector.as_ref().ok_or(DepthError::MissingField("dim_vector"))?;
    let index = data.index.as_ref().ok_or(DepthError::MissingField("index"))?;
    let s = data.s_matrix();
    for i in 0..s.rows() {
        let mut acc = BigUint::zero();
        for (j, d) in dims.iter().enumerate() {
            acc += s.get(i, j) * d;
        }
        let lhs = Rational::from_integer(acc.into());
        let rhs = index * Rational::from_integer(dims[i].clone().into());
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partitions of `n` in reverse lexicographic order, largest first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            rec(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn add_box(p: &[usize], row: usize) -> Option<Vec<usize>> {
    if row > p.len() {
        return None;
    }
    if row > 0 && row < p.len() && p[row - 1] == p[row] {
        return None;
    }
    let mut q = p.to_vec();
    if row == p.len() {
        q.push(1);
    } else {
        q[row] += 1;
    }
    Some(q)
}

pub fn partition_label(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Branching matrix of `C S_n` in `C S_(n+1)`: entry 1 when the column
/// partition arises from the row partition by adding one box.
pub fn branch_matrix(n: usize) -> Result<InclusionData> {
    if !(1..=MAX_BRANCH_N).contains(&n) {
        return Err(DepthError::invalid(format!(
            "branch_matrix needs 1 <= n <= {MAX_BRANCH_N}, got {n}"
        )));
    }
    let rows = partitions(n);
    let cols = partitions(n + 1);
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for p in &rows {
        let grown: Vec<Vec<usize>> = (0..=p.len()).filter_map(|r| add_box(p, r)).collect();
        for q in &cols {
            data.push(if grown.contains(q) { BigUint::one() } else { BigUint::zero() });
        }
    }
    let m = IntMatrix::new(rows.len(), cols.len(), data)?;
    InclusionData::new(m)?
        .with_triv_row(0)?
        .with_labels(
            rows.iter().map(|p| partition_label(p)).collect(),
            cols.iter().map(|p| partition_label(p)).collect(),
        )
}

/// Zero pattern of `P^(k)` for `k = 0..=n`, computed by Boolean products.
pub fn boolean_pattern_powers(p: &IntMatrix, n: usize) -> Result<Vec<ZeroPattern>> {
    let base = p.zero_pattern();
    let mut cur = IntMatrix::identity(p.rows()).zero_pattern();
    let mut out = vec![cur.clone()];
    for _ in 0..n {
        cur = cur.boolean_product(&base)?;
        out.push(cur.clone());
    }
    Ok(out)
}
