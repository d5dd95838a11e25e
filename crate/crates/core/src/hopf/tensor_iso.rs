use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::algebra::{add_term, basis_elem, Elem, HopfAlgebra, HopfSubalgebra};
use super::module::{augmentation_ideal, quotient_module_v};
use crate::error::{DepthError, Result};
use crate::exact_matrix::{sparse_axpy, Quotient, SparseVec};
use crate::scalars::Cyclotomic;

/// Largest `(dim H)^m` for which the balanced tensor power is built.
pub const MAX_TENSOR_ISO_DIM: usize = 4096;

type TensorN = BTreeMap<Vec<usize>, Cyclotomic>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorIsoReport {
    pub m: usize,
    pub dim_balanced: usize,
    pub expected_dim: usize,
    pub forward_well_defined: bool,
    pub inverse_well_defined: bool,
    pub forward_then_inverse_is_identity: bool,
    pub inverse_then_forward_is_identity: bool,
}

impl TensorIsoReport {
    pub fn holds(&self) -> bool {
        self.dim_balanced == self.expected_dim
            && self.forward_well_defined
            && self.inverse_well_defined
            && self.forward_then_inverse_is_identity
            && self.inverse_then_forward_is_identity
    }
}

/// `D^(k-1)(b_i)` as a sum of `k`-fold tensors.
fn iterated_delta(h: &HopfAlgebra, i: usize, k: usize) -> TensorN {
    let mut out = TensorN::from([(vec![i], Cyclotomic::one())]);
    for _ in 1..k {
        let mut next = TensorN::new();
        for (word, c) in &out {
            let last = *word.last().expect("nonempty");
            for ((a, b), x) in h.delta_basis(last) {
                let mut w = word[..word.len() - 1].to_vec();
                w.push(*a);
                w.push(*b);
                add_term(&mut next, w, c * x);
            }
        }
        out = next;
    }
    out
}

fn product(h: &HopfAlgebra, factors: impl IntoIterator<Item = Elem>) -> Elem {
    factors
        .into_iter()
        .fold(h.unit().clone(), |acc, f| h.mul(&acc, &f))
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

/// Sparse outer product of per-slot sparse vectors, flattened with `widths`.
fn outer(slots: &[SparseVec], widths: &[usize], coef: &Cyclotomic, out: &mut SparseVec) {
    let mut acc: Vec<(usize, Cyclotomic)> = vec![(0, coef.clone())];
    for (slot, w) in slots.iter().zip(widths) {
        let mut next = Vec::with_capacity(acc.len() * slot.len());
        for (idx, c) in &acc {
            for (k, x) in slot {
                next.push((idx * w + k, c * x));
            }
        }
        acc = next;
    }
    for (idx, c) in acc {
        add_term(out, idx, c);
    }
}

struct Setup<'a> {
    h: &'a HopfAlgebra,
    m: usize,
    d: usize,
    v: Quotient,
    deltas: Vec<Vec<TensorN>>,
}

impl Setup<'_> {
    fn widths(&self) -> Vec<usize> {
        let mut w = vec![self.d];
        w.extend(std::iter::repeat_n(self.v.dim(), self.m - 1));
        w
    }

    /// Forward map on a basis tensor `b_x1 (x) ... (x) b_xm`.
    fn forward_basis(&self, xs: &[usize]) -> SparseVec {
        let m = self.m;
        let mut out = SparseVec::new();
        // Choose one term of the iterated coproduct of each x_j, j >= 2.
        let choices: Vec<Vec<(&Vec<usize>, &Cyclotomic)>> = (1..m)
            .map(|j| self.deltas[j + 1][xs[j]].iter().collect())
            .collect();
        let widths = self.widths();
        let mut pick = vec![0usize; m.saturating_sub(1)];
        loop {
            let mut coef = Cyclotomic::one();
            for (j, &p) in pick.iter().enumerate() {
                coef = &coef * choices[j][p].1;
            }
            // Piece s of x_j (0-based j) goes into slot s.
            let piece = |j: usize, s: usize| basis_elem(choices[j - 1][pick[j - 1]].0[s]);
            let first = product(
                self.h,
                std::iter::once(basis_elem(xs[0])).chain((1..m).map(|j| piece(j, 0))),
            );
            let mut slots = vec![first];
            for s in 1..m {
                let p = product(self.h, (s..m).map(|j| piece(j, s)));
                slots.push(self.v.project_sparse(&p));
            }
            if slots.iter().all(|s| !s.is_empty()) {
                outer(&slots, &widths, &coef, &mut out);
            }
            // Advance the mixed-radix counter.
            let mut k = 0;
            loop {
                if k == pick.len() {
                    return out;
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }

    fn forward(&self, cache: &[SparseVec], v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            sparse_axpy(&mut out, c, &cache[*i]);
        }
        out
    }

    /// Inverse map `u S(v1_(1)) (x) v1_(2) S(v2_(1)) (x) ... (x) v_(m-1)(2)`
    /// on a tensor with `u` and every `v_i` arbitrary elements of `H`.
    fn inverse(&self, u: &Elem, vs: &[Elem]) -> SparseVec {
        // Running list of (slot contents so far, pending right factor).
        let mut partial: Vec<(Vec<Elem>, Elem, Cyclotomic)> = vec![(vec![], u.clone(), Cyclotomic::one())];
        for v in vs {
            let mut next = Vec::new();
            for (slots, pending, c) in &partial {
                let dv = self.h.delta(v);
                for ((a, b), x) in &dv {
                    let left = self.h.mul(pending, &self.h.antipode(&basis_elem(*a)));
                    if left.is_empty() {
                        continue;
                    }
                    let mut s = slots.clone();
                    s.push(left);
                    next.push((s, basis_elem(*b), c * x));
                }
            }
            partial = next;
        }
        let widths = vec![self.d; self.m];
        let mut out = SparseVec::new();
        for (mut slots, last, c) in partial {
            slots.push(last);
            outer(&slots, &widths, &c, &mut out);
        }
        out
    }
}

/// Builds `H^(x_R m)` as a quotient of `H^(x m)` by the balancing relations
/// and checks the isomorphism with `H (x) V^(x (m-1))` in both directions.
pub fn tensor_over_r_iso(h: &HopfAlgebra, r: &HopfSubalgebra, m: usize) -> Result<TensorIsoReport> {
    if !(1..=3).contains(&m) {
        return Err(DepthError::invalid(format!("tensor degree {m} outside 1..=3")));
    }
    let d = h.dim();
    let ambient = d
        .checked_pow(m as u32)
        .filter(|&n| n <= MAX_TENSOR_ISO_DIM)
        .ok_or_else(|| DepthError::cap("balanced tensor power dimension", MAX_TENSOR_ISO_DIM))?;
    let v = quotient_module_v(h, r)?.quotient;
    let vd = v.dim();

    let mut relations = Vec::new();
    for t in 0..ambient {
        let xs = decode(t, d, m);
        for s in 0..m.saturating_sub(1) {
            for rb in r.embedding() {
                let left = h.mul(&basis_elem(xs[s]), rb);
                let right = h.mul(rb, &basis_elem(xs[s + 1]));
                let mut rel = SparseVec::new();
                for (k, c) in &left {
                    let mut ys = xs.clone();
                    ys[s] = *k;
                    add_term(&mut rel, encode(&ys, d), c.clone());
                }
                for (k, c) in &right {
                    let mut ys = xs.clone();
                    ys[s + 1] = *k;
                    add_term(&mut rel, encode(&ys, d), -c);
                }
                if !rel.is_empty() {
                    relations.push(rel);
                }
            }
        }
    }
    let balanced = Quotient::new(ambient, relations.iter().cloned());

    let deltas = (0..=m)
        .map(|k| (0..d).map(|i| iterated_delta(h, i, k.max(1))).collect())
        .collect();
    let setup = Setup { h, m, d, v, deltas };
    let cache: Vec<SparseVec> = (0..ambient).map(|t| setup.forward_basis(&decode(t, d, m))).collect();

    let forward_well_defined = relations.iter().all(|rel| setup.forward(&cache, rel).is_empty());

    let reps: Vec<Elem> = setup.v.reps().iter().map(|&i| basis_elem(i)).collect();
    let ideal = augmentation_ideal(h, r);
    let target_dim = d * vd.pow(m as u32 - 1);
    let rep_tuple = |t: usize| -> (Elem, Vec<Elem>) {
        let digits = decode(t, vd, m - 1);
        let u = basis_elem(t / vd.pow(m as u32 - 1));
        (u, digits.iter().map(|&k| reps[k].clone()).collect())
    };

    let mut inverse_well_defined = true;
    'outer: for t in 0..target_dim {
        let (u, vs) = rep_tuple(t);
        for slot in 0..vs.len() {
            for rel in &ideal {
                let mut ws = vs.clone();
                ws[slot] = rel.clone();
                if !balanced.is_zero_class(&setup.inverse(&u, &ws)) {
                    inverse_well_defined = false;
                    break 'outer;
                }
            }
        }
    }

    let inverse_then_forward_is_identity = (0..target_dim).all(|t| {
        let (u, vs) = rep_tuple(t);
        setup.forward(&cache, &setup.inverse(&u, &vs)) == SparseVec::from([(t, Cyclotomic::one())])
    });

    let forward_then_inverse_is_identity = balanced.reps().iter().all(|&t| {
        let image = &cache[t];
        let mut back = SparseVec::new();
        for (k, c) in image {
            let (u, vs) = rep_tuple(*k);
            sparse_axpy(&mut back, c, &setup.inverse(&u, &vs));
        }
        let mut diff = back;
        sparse_axpy(&mut diff, &-Cyclotomic::one(), &SparseVec::from([(t, Cyclotomic::one())]));
        diff.retain(|_, x| !x.is_zero());
        balanced.is_zero_class(&diff)
    });

    Ok(TensorIsoReport {
        m,
        dim_balanced: balanced.dim(),
        expected_dim: target_dim,
        forward_well_defined,
        inverse_well_defined,
        forward_then_inverse_is_identity,
        inverse_then_forward_is_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::families::taft;

    #[test]
    fn taft_two_square() {
        let (h, r) = taft(2).unwrap();
        let rep = tensor_over_r_iso(&h, &r, 2).unwrap();
        assert_eq!(rep.dim_balanced, 8);
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn degenerate_and_whole() {
        let (h, r) = taft(2).unwrap();
        let rep = tensor_over_r_iso(&h, &r, 1).unwrap();
        assert_eq!(rep.dim_balanced, 4);
        assert!(rep.holds());
        let whole = HopfSubalgebra::whole(&h).unwrap();
        let rep = tensor_over_r_iso(&h, &whole, 2).unwrap();
        assert_eq!(rep.dim_balanced, 4);
        assert!(rep.holds());
    }

    #[test]
    fn taft_cube() {
        let (h, r) = taft(2).unwrap();
        let rep = tensor_over_r_iso(&h, &r, 3).unwrap();
        assert_eq!(rep.dim_balanced, 16);
        assert!(rep.holds(), "{rep:?}");
    }
}
