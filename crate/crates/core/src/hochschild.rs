//! The relative Hochschild complex of a Hopf subalgebra pair rewritten on
//! tensor powers of `V = H / R^+ H`.
//!
//! Degree-`n` cochains are the maps `V^(x (n+1)) -> M` that are right
//! `H`-linear for the diagonal action on the source and the adjoint action
//! `m . h = S(h_(1)) m h_(2)` on `M`. In degree 0 this is `M^R`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{DepthError, Result};
use crate::exact_matrix::{rank, sparse_axpy, ScalarMatrix, SparseSpan, SparseVec};
use crate::hopf::{quotient_module_v, tensor_power, HopfAlgebra, HopfSubalgebra, QuotientModule};
use crate::perm_group::PermGroup;
use crate::scalars::Cyclotomic;

/// Largest number of unknowns in one equivariance system.
pub const MAX_UNKNOWNS: usize = 4096;
pub const MAX_DEGREE: usize = 3;

/// An `H`-`H`-bimodule given by left and right action matrices of the basis,
/// both in the row convention (`m -> b m` is `m L_b`).
#[derive(Clone, Debug)]
pub struct Bimodule {
    dim: usize,
    left: Vec<ScalarMatrix>,
    right: Vec<ScalarMatrix>,
}

impl Bimodule {
    pub fn new(alg: &HopfAlgebra, left: Vec<ScalarMatrix>, right: Vec<ScalarMatrix>) -> Result<Self> {
        let dim = left.first().map_or(0, |a| a.rows());
        if left.len() != alg.dim()
            || right.len() != alg.dim()
            || left.iter().chain(&right).any(|a| a.shape() != (dim, dim))
        {
            return Err(DepthError::DimensionMismatch("bimodule action matrices".into()));
        }
        Ok(Self { dim, left, right })
    }

    /// `H` with left and right multiplication.
    pub fn regular(alg: &HopfAlgebra) -> Self {
        let basis = |i| crate::exact_matrix::SparseVec::from([(i, Cyclotomic::one())]);
        Self {
            dim: alg.dim(),
            left: (0..alg.dim()).map(|i| alg.left_mult_matrix(&basis(i))).collect(),
            right: (0..alg.dim()).map(|i| alg.right_mult_matrix(&basis(i))).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn combine(mats: &[ScalarMatrix], v: &SparseVec, dim: usize) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(dim, dim);
        for (i, c) in v {
            out = out.add(&mats[*i].scale(c)).expect("square");
        }
        out
    }

    pub fn left_elem(&self, v: &SparseVec) -> ScalarMatrix {
        Self::combine(&self.left, v, self.dim)
    }

    pub fn right_elem(&self, v: &SparseVec) -> ScalarMatrix {
        Self::combine(&self.right, v, self.dim)
    }

    /// Right adjoint action of basis element `i`.
    pub fn adjoint(&self, alg: &HopfAlgebra, i: usize) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(self.dim, self.dim);
        for ((a, b), c) in alg.delta_basis(i) {
            let s = alg.antipode_basis(*a);
            let term = self
                .left_elem(s)
                .mul(&self.right[*b])
                .expect("square")
                .scale(c);
            out = out.add(&term).expect("square");
        }
        out
    }
}

/// Equivariant maps `V^(x (degree+1)) -> M`, each stored as the row-major
/// entries of a `(dim V)^(degree+1) x dim M` matrix.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// Unknown positions that parametrise the space; a cochain's coordinates
    /// are its entries there.
    pub free: Vec<usize>,
    pub basis: Vec<SparseVec>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, f: &SparseVec) -> Vec<Cyclotomic> {
        self.free
            .iter()
            .map(|c| f.get(c).cloned().unwrap_or_else(Cyclotomic::zero))
            .collect()
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

    pub fn contains(&self, f: &SparseVec) -> bool {
        let mut back = self.combine(&self.coordinates(f));
        back.retain(|_, x| !x.is_zero());
        let mut f = f.clone();
        f.retain(|_, x| !x.is_zero());
        back == f
    }
}

/// The complex for one pair and bimodule.
pub struct Complex<'a> {
    h: &'a HopfAlgebra,
    v: QuotientModule,
    m: &'a Bimodule,
    ad: Vec<ScalarMatrix>,
    eps_v: Vec<Cyclotomic>,
}

impl<'a> Complex<'a> {
    pub fn new(h: &'a HopfAlgebra, r: &HopfSubalgebra, m: &'a Bimodule) -> Result<Self> {
        if m.left.len() != h.dim() {
            return Err(DepthError::DimensionMismatch("bimodule is over a different algebra".into()));
        }
        let v = quotient_module_v(h, r)?;
        let ad = h.generators().iter().map(|&g| m.adjoint(h, g)).collect();
        let eps_v = v.reps().iter().map(|&i| h.counit_basis(i).clone()).collect();
        Ok(Self { h, v, m, ad, eps_v })
    }

    pub fn dim_v(&self) -> usize {
        self.v.module.dim()
    }

    /// Equivariant maps in degree `n`, solved from `A_h F = F Ad_h` for the
    /// algebra generators `h`.
    pub fn cochain_space(&self, degree: usize) -> Result<CochainSpace> {
        if degree > MAX_DEGREE {
            return Err(DepthError::cap("cochain degree", MAX_DEGREE));
        }
        let k = degree + 1;
        let rows = self
            .dim_v()
            .checked_pow(k as u32)
            .ok_or_else(|| DepthError::cap("cochain unknowns", MAX_UNKNOWNS))?;
        let cols = self.m.dim();
        if rows.saturating_mul(cols) > MAX_UNKNOWNS {
            return Err(DepthError::cap("cochain unknowns", MAX_UNKNOWNS));
        }
        let power = tensor_power(self.h, &self.v.module, k);
        let mut eqs = SparseSpan::new();
        for (gi, &g) in self.h.generators().iter().enumerate() {
            let a = power.action(g);
            let b = &self.ad[gi];
            // (A F - F B)_{ij} = sum_l A_il F_lj - sum_l F_il B_lj.
            for i in 0..rows {
                for j in 0..cols {
                    let mut eq = SparseVec::new();
                    for l in 0..rows {
                        let x = a.get(i, l);
                        if !x.is_zero() {
                            sparse_axpy(&mut eq, x, &SparseVec::from([(l * cols + j, Cyclotomic::one())]));
                        }
                    }
                    for l in 0..cols {
                        let x = b.get(l, j);
                        if !x.is_zero() {
                            sparse_axpy(&mut eq, &-x, &SparseVec::from([(i * cols + l, Cyclotomic::one())]));
                        }
                    }
                    if !eq.is_empty() {
                        eqs.insert(eq);
                    }
                }
            }
        }
        let (free, basis) = eqs.solution_basis(rows * cols);
        Ok(CochainSpace {
            degree,
            rows,
            cols,
            free,
            basis,
        })
    }

    /// `(d f)(v_1, ..., v_(k+1)) = sum_i (-1)^(i+1) eps(v_i) f(..., v_i deleted, ...)`
    /// on a raw map from `V^(x k)`.
    pub fn differential_raw(&self, k: usize, f: &SparseVec) -> SparseVec {
        let dv = self.dim_v();
        let cols = self.m.dim();
        let mut out = SparseVec::new();
        let target_rows = dv.pow(k as u32 + 1);
        for t in 0..target_rows {
            let digits = decode(t, dv, k + 1);
            for i in 0..=k {
                let e = &self.eps_v[digits[i]];
                if e.is_zero() {
                    continue;
                }
                let coef = if i % 2 == 0 { e.clone() } else { -e };
                let mut rest = digits.clone();
                rest.remove(i);
                let src = encode(&rest, dv);
                for (idx, x) in f.range(src * cols..(src + 1) * cols) {
                    crate::hopf::add_term(&mut out, t * cols + idx % cols, &coef * x);
                }
            }
        }
        out
    }

    /// Matrix of the differential from degree `n` to `n + 1` in the solved
    /// bases, row convention; fails if an image leaves the equivariant space.
    pub fn differential(&self, from: &CochainSpace, to: &CochainSpace) -> Result<ScalarMatrix> {
        let mut d = ScalarMatrix::zeros(from.dim(), to.dim());
        for (i, f) in from.basis.iter().enumerate() {
            let image = self.differential_raw(from.degree + 1, f);
            if !to.contains(&image) {
                return Err(DepthError::AxiomViolation(format!(
                    "differential leaves the equivariant cochains in degree {}",
                    to.degree
                )));
            }
            for (j, x) in to.coordinates(&image).into_iter().enumerate() {
                d.set(i, j, x);
            }
        }
        Ok(d)
    }

    /// `M^R = { m : r m = m r }` solved directly.
    pub fn invariants_dim(&self, r: &HopfSubalgebra) -> usize {
        let d = self.m.dim();
        let mut eqs = SparseSpan::new();
        for rb in r.embedding() {
            let diff = self
                .m
                .left_elem(rb)
                .add(&self.m.right_elem(rb).scale(&-Cyclotomic::one()))
                .expect("square");
            // Column j of m (L - R) = 0 for every j.
            for j in 0..d {
                let eq: SparseVec = (0..d)
                    .filter(|&i| !diff.get(i, j).is_zero())
                    .map(|i| (i, diff.get(i, j).clone()))
                    .collect();
                if !eq.is_empty() {
                    eqs.insert(eq);
                }
            }
        }
        d - eqs.dim()
    }

    /// Pulls each degree-0 cochain `f` back along the bar isomorphism and
    /// compares `y -> y_(1) (d f)(y_(2) bar, 1 bar)` with `y m - m y`, where
    /// `m = f(1 bar)`.
    pub fn degree_one_pullback_holds(&self, c0: &CochainSpace) -> bool {
        let cols = self.m.dim();
        let dv = self.dim_v();
        let one_bar = self.v.quotient.project_sparse(self.h.unit());
        c0.basis.iter().all(|f| {
            let g = self.differential_raw(1, f);
            let mut m = SparseVec::new();
            for (k, x) in &one_bar {
                for (idx, y) in f.range(k * cols..(k + 1) * cols) {
                    crate::hopf::add_term(&mut m, idx % cols, x * y);
                }
            }
            // Evaluate g on (u bar, 1 bar) for a vector u in V coordinates.
            let eval = |u: &SparseVec| {
                let mut out = SparseVec::new();
                for (a, x) in u {
                    for (b, y) in &one_bar {
                        let row = a * dv + b;
                        for (idx, z) in g.range(row * cols..(row + 1) * cols) {
                            crate::hopf::add_term(&mut out, idx % cols, &(x * y) * z);
                        }
                    }
                }
                out
            };
            (0..self.h.dim()).all(|y| {
                let mut lhs = SparseVec::new();
                for ((a, b), c) in self.h.delta_basis(y) {
                    let yb = self.v.quotient.project_sparse(&crate::exact_matrix::SparseVec::from([(
                        *b,
                        Cyclotomic::one(),
                    )]));
                    let val = eval(&yb);
                    let acted = apply_sparse(&self.m.left[*a], &val);
                    sparse_axpy(&mut lhs, c, &acted);
                }
                let ym = apply_sparse(&self.m.left[y], &m);
                let my = apply_sparse(&self.m.right[y], &m);
                let mut rhs = ym;
                sparse_axpy(&mut rhs, &-Cyclotomic::one(), &my);
                lhs == rhs
            })
        })
    }
}

fn apply_sparse(a: &ScalarMatrix, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, x) in v {
        for j in 0..a.cols() {
            let y = a.get(*i, j);
            if !y.is_zero() {
                crate::hopf::add_term(&mut out, j, x * y);
            }
        }
    }
    out
}

fn encode(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, d| acc * base + d)
}

fn decode(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

/// Dimensions, ranks and cohomology of the complex up to `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub dim_v: usize,
    pub cochain_dims: Vec<usize>,
    /// Rank of the differential out of each degree below the top.
    pub ranks: Vec<usize>,
    /// Nonzero entries of each composite of consecutive differentials.
    pub square_residuals: Vec<usize>,
    /// Cohomology dimensions in the degrees where both neighbours are known.
    pub cohomology_dims: Vec<usize>,
    pub invariants_dim: usize,
    pub degree_zero_matches_invariants: bool,
    pub degree_one_pullback_holds: bool,
}

impl ComplexReport {
    pub fn square_is_zero(&self) -> bool {
        self.square_residuals.iter().all(|&r| r == 0)
    }
}

pub fn check_complex(
    h: &HopfAlgebra,
    r: &HopfSubalgebra,
    m: &Bimodule,
    max_degree: usize,
) -> Result<ComplexReport> {
    if max_degree > MAX_DEGREE {
        return Err(DepthError::cap("cochain degree", MAX_DEGREE));
    }
    let cx = Complex::new(h, r, m)?;
    let spaces = (0..=max_degree)
        .map(|n| cx.cochain_space(n))
        .collect::<Result<Vec<_>>>()?;
    let diffs = spaces
        .windows(2)
        .map(|w| cx.differential(&w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    let ranks: Vec<usize> = diffs.iter().map(rank).collect();
    let square_residuals = diffs
        .windows(2)
        .map(|w| {
            let p = w[0].mul(&w[1]).expect("composable");
            p.entries().iter().filter(|x| !x.is_zero()).count()
        })
        .collect();
    // H^n = ker d_n / im d_(n-1), known for n < max_degree.
    let cohomology_dims = (0..max_degree)
        .map(|n| {
            let incoming = if n == 0 { 0 } else { ranks[n - 1] };
            spaces[n].dim() - ranks[n] - incoming
        })
        .collect();
    let invariants_dim = cx.invariants_dim(r);
    Ok(ComplexReport {
        dim_v: cx.dim_v(),
        cochain_dims: spaces.iter().map(CochainSpace::dim).collect(),
        ranks,
        square_residuals,
        cohomology_dims,
        invariants_dim,
        degree_zero_matches_invariants: spaces[0].dim() == invariants_dim,
        degree_one_pullback_holds: cx.degree_one_pullback_holds(&spaces[0]),
    })
}

/// Formal sums of bar tuples of group element indices.
pub type Chain = BTreeMap<Vec<usize>, i64>;

fn add_chain(c: &mut Chain, k: Vec<usize>, x: i64) {
    let e = c.entry(k).or_insert(0);
    *e += x;
    if *e == 0 {
        c.retain(|_, v| *v != 0);
    }
}

/// `[g_1 | ... | g_n] -> [g_1...g_n | g_2...g_n | ... | g_n]`.
pub fn homogenize(g: &PermGroup, t: &[usize]) -> Vec<usize> {
    let mut out = vec![0; t.len()];
    let mut acc = 0;
    for i in (0..t.len()).rev() {
        acc = g.mul_index(t[i], acc);
        out[i] = acc;
    }
    out
}

/// `[h_1 | ... | h_n] -> [h_1 h_2^-1 | ... | h_(n-1) h_n^-1 | h_n]`.
pub fn dehomogenize(g: &PermGroup, t: &[usize]) -> Vec<usize> {
    (0..t.len())
        .map(|i| {
            if i + 1 < t.len() {
                g.mul_index(t[i], g.inverse_index(t[i + 1]))
            } else {
                t[i]
            }
        })
        .collect()
}

/// Bar differential `sum_(i<n) (-1)^(i+1) [.. | h_i h_(i+1) | ..]`.
pub fn bar_differential(g: &PermGroup, t: &[usize]) -> Chain {
    let mut out = Chain::new();
    for i in 0..t.len().saturating_sub(1) {
        let mut s = t[..i].to_vec();
        s.push(g.mul_index(t[i], t[i + 1]));
        s.extend_from_slice(&t[i + 2..]);
        add_chain(&mut out, s, if i % 2 == 0 { 1 } else { -1 });
    }
    out
}

/// `[h | v_1 | ... | v_(n-1)] -> sum_i (-1)^(i+1) [h | .. v_i deleted ..]`
/// with every group element having counit 1.
pub fn homogeneous_differential(t: &[usize]) -> Chain {
    let mut out = Chain::new();
    for i in 1..t.len() {
        let mut s = t.to_vec();
        s.remove(i);
        add_chain(&mut out, s, if i % 2 == 1 { 1 } else { -1 });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupChainReport {
    pub n: usize,
    pub tuples: usize,
    pub roundtrip_forward: bool,
    pub roundtrip_inverse: bool,
    pub chain_map: bool,
}

impl GroupChainReport {
    pub fn holds(&self) -> bool {
        self.roundtrip_forward && self.roundtrip_inverse && self.chain_map
    }
}

pub fn group_chain_iso(g: &PermGroup, n: usize) -> Result<GroupChainReport> {
    if !(1..=4).contains(&n) {
        return Err(DepthError::invalid(format!("chain length {n} outside 1..=4")));
    }
    if g.order() > 24 {
        return Err(DepthError::cap("group order for chain isomorphism", 24));
    }
    let o = g.order();
    let tuples = o.pow(n as u32);
    let mut roundtrip_forward = true;
    let mut roundtrip_inverse = true;
    let mut chain_map = true;
    for t in 0..tuples {
        let tuple = decode(t, o, n);
        roundtrip_forward &= dehomogenize(g, &homogenize(g, &tuple)) == tuple;
        roundtrip_inverse &= homogenize(g, &dehomogenize(g, &tuple)) == tuple;
        let mut lhs = Chain::new();
        for (s, c) in bar_differential(g, &tuple) {
            add_chain(&mut lhs, homogenize(g, &s), c);
        }
        chain_map &= lhs == homogeneous_differential(&homogenize(g, &tuple));
    }
    Ok(GroupChainReport {
        n,
        tuples,
        roundtrip_forward,
        roundtrip_inverse,
        chain_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::taft;
    use crate::perm_group::fixtures;

    #[test]
    fn taft_adjoint_complex() {
        let (h, r) = taft(2).unwrap();
        let m = Bimodule::regular(&h);
        let rep = check_complex(&h, &r, &m, 3).unwrap();
        assert_eq!(rep.cochain_dims.len(), 4);
        assert!(rep.square_is_zero());
        assert!(rep.degree_zero_matches_invariants);
        assert!(rep.degree_one_pullback_holds);
    }

    #[test]
    fn whole_algebra_complex_alternates() {
        let (h, _) = taft(2).unwrap();
        let whole = HopfSubalgebra::whole(&h).unwrap();
        let m = Bimodule::regular(&h);
        let rep = check_complex(&h, &whole, &m, 3).unwrap();
        let c = rep.cochain_dims[0];
        assert!(rep.cochain_dims.iter().all(|&d| d == c));
        assert_eq!(rep.ranks, vec![0, c, 0]);
    }

    #[test]
    fn solver_is_deterministic() {
        let (h, r) = taft(3).unwrap();
        let m = Bimodule::regular(&h);
        let a = check_complex(&h, &r, &m, 1).unwrap();
        let b = check_complex(&h, &r, &m, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn group_chains() {
        let s3 = fixtures::symmetric(3);
        let rep = group_chain_iso(&s3, 2).unwrap();
        assert_eq!(rep.tuples, 36);
        assert!(rep.holds());
        let z2 = fixtures::cyclic(2);
        let rep = group_chain_iso(&z2, 2).unwrap();
        assert_eq!(rep.tuples, 4);
        assert!(rep.holds());
        assert_eq!(homogenize(&s3, &[3]), vec![3]);
    }
}
