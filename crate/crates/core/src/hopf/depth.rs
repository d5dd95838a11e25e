use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::algebra::{basis_elem, Elem, HopfAlgebra, HopfSubalgebra};
use super::module::{quotient_module_v, tensor_module, ModuleRep};
use super::structure::{radical_and_chevalley, RadicalReport};
use crate::error::{DepthError, Result};
use crate::exact_matrix::{inverse, left_kernel, rows_matrix, CoordinateMap, ScalarMatrix};
use crate::report::{DepthReport, Quantity};
use crate::scalars::Cyclotomic;

/// Largest tensor-power dimension built explicitly.
pub const MAX_TENSOR_DIM: usize = 4096;

/// A weight: exponents `e_i` with `g_i` acting by `z^e_i`, one per
/// generator of the grouplike group, `z` the primitive root of the conductor.
pub type Weight = Vec<u32>;

/// Simultaneous eigenbasis of the grouplike generators.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    /// Grouplike basis indices generating the grouplike group.
    pub generators: Vec<usize>,
    /// Weight vectors grouped by weight, in increasing weight order.
    pub spaces: BTreeMap<Weight, Vec<Vec<Cyclotomic>>>,
}

impl WeightDecomposition {
    pub fn multiplicities(&self) -> BTreeMap<Weight, usize> {
        self.spaces.iter().map(|(w, b)| (w.clone(), b.len())).collect()
    }

    pub fn weights(&self) -> BTreeSet<Weight> {
        self.spaces.keys().cloned().collect()
    }

    /// All weight vectors stacked in weight order.
    pub fn basis(&self) -> Vec<Vec<Cyclotomic>> {
        self.spaces.values().flatten().cloned().collect()
    }
}

fn closure(alg: &HopfAlgebra, gens: &[usize]) -> Vec<Elem> {
    let mut elems = vec![alg.unit().clone()];
    let mut frontier = elems.clone();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = alg.mul(&x, &basis_elem(*g));
            if !elems.contains(&y) {
                elems.push(y.clone());
                frontier.push(y);
            }
        }
    }
    elems
}

/// A generating set of the grouplike group, chosen greedily in basis order.
pub fn grouplike_generators(alg: &HopfAlgebra, grouplikes: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = closure(alg, &gens);
    for &g in grouplikes {
        if !reached.contains(&basis_elem(g)) {
            gens.push(g);
            reached = closure(alg, &gens);
        }
    }
    gens
}

fn annihilated(m: &ModuleRep, radical: &[Elem]) -> bool {
    radical.iter().all(|j| m.act_elem(j).is_zero_matrix())
}

/// Splits `m` into one-dimensional weight spaces.
///
/// Fails with `Unsupported` unless `R/J` is split commutative and `m` is
/// annihilated by the radical.
pub fn weight_decomposition(
    alg: &HopfAlgebra,
    rad: &RadicalReport,
    m: &ModuleRep,
) -> Result<WeightDecomposition> {
    if !rad.split_commutative {
        return Err(DepthError::Unsupported(
            "quotient by the radical is not split commutative".into(),
        ));
    }
    if !annihilated(m, &rad.radical) {
        return Err(DepthError::Unsupported("module is not annihilated by the radical".into()));
    }
    let n = alg.conductor();
    let generators = grouplike_generators(alg, &rad.grouplikes);
    let dim = m.dim();
    let identity: Vec<Vec<Cyclotomic>> = ScalarMatrix::identity(dim).to_rows();
    let mut spaces: Vec<(Weight, Vec<Vec<Cyclotomic>>)> = vec![(vec![], identity)];
    for &g in &generators {
        let a = m.action(g);
        let mut next = Vec::new();
        for (w, basis) in spaces {
            let k = basis.len();
            let coords = CoordinateMap::new(basis.clone())?;
            // Restriction of the action to the invariant subspace.
            let mut c = ScalarMatrix::zeros(k, k);
            for (i, row) in basis.iter().enumerate() {
                let image = crate::exact_matrix::dense_to_sparse(&a.left_apply(row));
                let y = coords
                    .coords(&image)
                    .ok_or_else(|| DepthError::AxiomViolation("weight space not invariant".into()))?;
                for (j, x) in y.into_iter().enumerate() {
                    c.set(i, j, x);
                }
            }
            let mut found = 0;
            for e in 0..n {
                let lambda = Cyclotomic::root_power(n, e as i64);
                let mut shifted = c.clone();
                for i in 0..k {
                    let x = shifted.get(i, i) - &lambda;
                    shifted.set(i, i, x);
                }
                let ker = left_kernel(&shifted);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let rows = ker
                    .iter()
                    .map(|y| {
                        let mut v = vec![Cyclotomic::zero(); dim];
                        for (coef, b) in y.iter().zip(&basis) {
                            if !coef.is_zero() {
                                for (t, x) in v.iter_mut().zip(b) {
                                    *t += &(coef * x);
                                }
                            }
                        }
                        v
                    })
                    .collect();
                let mut w2 = w.clone();
                w2.push(e);
                next.push((w2, rows));
            }
            if found != k {
                return Err(DepthError::Unsupported(
                    "grouplike action is not diagonalizable over the working field".into(),
                ));
            }
        }
        spaces = next;
    }
    Ok(WeightDecomposition {
        generators,
        spaces: spaces.into_iter().collect(),
    })
}

fn add_weights(a: &Weight, b: &Weight, n: u32) -> Weight {
    a.iter().zip(b).map(|(x, y)| (x + y) % n).collect()
}

fn sumset(a: &BTreeSet<Weight>, b: &BTreeSet<Weight>, n: u32) -> BTreeSet<Weight> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| add_weights(x, y, n)))
        .collect()
}

/// Both variants of module depth, with the constituent sets seen.
#[derive(Clone, Debug)]
pub struct ModuleDepthDetail {
    /// Least `n` with `cons(V^(n+1))` inside `cons(T_n(V))`.
    pub full: usize,
    /// Least `n` with `cons(V^(n+1))` inside `cons(V^n)`.
    pub coalgebra: usize,
    pub weights: BTreeMap<Weight, usize>,
    /// `cons(V^k)` for `k = 0..=max(full, coalgebra) + 1`.
    pub powers: Vec<BTreeSet<Weight>>,
}

/// Module depth of `m` in the category of `alg`-modules via weights.
pub fn module_depth_detail(alg: &HopfAlgebra, m: &ModuleRep) -> Result<ModuleDepthDetail> {
    let rad = radical_and_chevalley(alg)?;
    let dec = weight_decomposition(alg, &rad, m)?;
    let n = alg.conductor();
    let s = dec.generators.len();
    let zero: Weight = vec![0; s];
    let base = dec.weights();
    // Every strict step adds a character, so the search ends within this.
    let cap = (n as usize).saturating_pow(s as u32) + 2;

    let mut powers = vec![BTreeSet::from([zero]), base.clone()];
    let mut running: BTreeSet<Weight> = powers[0].clone();
    let mut full = None;
    let mut coalgebra = None;
    let mut explicit = (!rad.is_hopf_ideal).then(|| m.clone());
    for k in 0..cap {
        if powers.len() < k + 2 {
            let next = sumset(&powers[k], &base, n);
            powers.push(next);
        }
        if let Some(t) = explicit.as_mut() {
            // J is not a coideal, so annihilation is checked power by power.
            if t.dim() * m.dim() > MAX_TENSOR_DIM {
                return Err(DepthError::cap("tensor power dimension", MAX_TENSOR_DIM));
            }
            *t = tensor_module(alg, t, m);
            if !annihilated(t, &rad.radical) {
                return Err(DepthError::Unsupported(format!(
                    "tensor power {} is not annihilated by the radical",
                    k + 2
                )));
            }
        }
        if full.is_none() && powers[k + 1].is_subset(&running) {
            full = Some(k);
        }
        if coalgebra.is_none() && powers[k + 1].is_subset(&powers[k]) {
            coalgebra = Some(k);
        }
        if let (Some(f), Some(c)) = (full, coalgebra) {
            powers.truncate(f.max(c) + 2);
            return Ok(ModuleDepthDetail {
                full: f,
                coalgebra: c,
                weights: dec.multiplicities(),
                powers,
            });
        }
        running.extend(powers[k + 1].iter().cloned());
    }
    Err(DepthError::cap("module depth search", cap))
}

/// Exact module depth as a report; the module-coalgebra comparison is used
/// when `m` is flagged as one, and must then agree with the full one.
pub fn module_depth(alg: &HopfAlgebra, m: &ModuleRep, quantity: Quantity) -> Result<DepthReport> {
    let detail = module_depth_detail(alg, m)?;
    if m.is_module_coalgebra() {
        if detail.coalgebra != detail.full {
            return Err(DepthError::AxiomViolation(format!(
                "module coalgebra depths disagree: {} vs {}",
                detail.coalgebra, detail.full
            )));
        }
        Ok(DepthReport::single(
            quantity,
            detail.coalgebra as u64,
            true,
            detail.coalgebra as u64,
            "weight decomposition, module coalgebra",
        ))
    } else {
        Ok(DepthReport::single(
            quantity,
            detail.full as u64,
            true,
            detail.full as u64,
            "weight decomposition, truncated tensor algebra",
        ))
    }
}

/// `d(V, M_R)` for `V = H / R^+ H`.
pub fn module_depth_over_r(h: &HopfAlgebra, r: &HopfSubalgebra) -> Result<DepthReport> {
    let v = quotient_module_v(h, r)?;
    module_depth(r.algebra(), &v.module.restrict(r), Quantity::ModuleDepthR)
}

/// `d(V, M_H)` for `V = H / R^+ H`.
pub fn module_depth_over_h(h: &HopfAlgebra, r: &HopfSubalgebra) -> Result<DepthReport> {
    let v = quotient_module_v(h, r)?;
    module_depth(h, &v.module, Quantity::ModuleDepthH)
}

/// The interval `[2d + 1, 2d + 2]` with `d = d(V, M_R)`, which contains the
/// minimum depth of `R` in `H`.
pub fn depth_interval(h: &HopfAlgebra, r: &HopfSubalgebra) -> Result<DepthReport> {
    let d = module_depth_over_r(h, r)?;
    let v = d.value();
    DepthReport::interval(
        2 * v + 1,
        2 * v + 2,
        d.stabilization_step,
        "even depth 2d(V,R)+2 from the module depth of V over R",
    )
}

/// Outcome of comparing module depth over `R` and over `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCheck {
    pub over_r: u64,
    /// `None` when the decomposition over `H` is unsupported.
    pub over_h: Option<u64>,
    /// `d_R <= d_H <= d_R + 1`, vacuously true when skipped.
    pub holds: bool,
}

/// Checks `d(V_R, M_R) <= d(V, M_H) <= d(V_R, M_R) + 1` for an `H`-module `v`.
pub fn restriction_monotonicity(h: &HopfAlgebra, r: &HopfSubalgebra, v: &ModuleRep) -> Result<LadderCheck> {
    let over_r = module_depth(r.algebra(), &v.restrict(r), Quantity::ModuleDepthR)?.value();
    let over_h = match module_depth(h, v, Quantity::ModuleDepthH) {
        Ok(rep) => Some(rep.value()),
        Err(DepthError::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let holds = over_h.is_none_or(|dh| over_r <= dh && dh <= over_r + 1);
    Ok(LadderCheck { over_r, over_h, holds })
}

/// An explicit isomorphism `U -> W` matching weight vectors, verified to be
/// invertible and to intertwine every basis element's action.
pub fn weight_isomorphism(alg: &HopfAlgebra, u: &ModuleRep, w: &ModuleRep) -> Result<ScalarMatrix> {
    let rad = radical_and_chevalley(alg)?;
    let du = weight_decomposition(alg, &rad, u)?;
    let dw = weight_decomposition(alg, &rad, w)?;
    if du.multiplicities() != dw.multiplicities() {
        return Err(DepthError::invalid("modules have different weight multiplicities"));
    }
    let bu = rows_matrix(&du.basis(), u.dim());
    let bw = rows_matrix(&dw.basis(), w.dim());
    let p = inverse(&bu)?.mul(&bw)?;
    for i in 0..alg.dim() {
        if u.action(i).mul(&p)? != p.mul(w.action(i))? {
            return Err(DepthError::AxiomViolation(format!(
                "weight matching does not intertwine {}",
                alg.labels()[i]
            )));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::families::{group_algebra, group_subalgebra, small_quantum, taft};
    use crate::perm_group::fixtures;

    #[test]
    fn taft_module_depth_is_one() {
        for n in 2..=4 {
            let (h, r) = taft(n).unwrap();
            let rep = module_depth_over_r(&h, &r).unwrap();
            assert_eq!(rep.value(), 1);
            assert!(rep.exact);
            let interval = depth_interval(&h, &r).unwrap();
            assert_eq!((interval.value.lo(), interval.value.hi()), (3, 4));
        }
    }

    #[test]
    fn taft_over_h_is_unsupported() {
        let (h, r) = taft(2).unwrap();
        assert!(matches!(module_depth_over_h(&h, &r), Err(DepthError::Unsupported(_))));
        let v = quotient_module_v(&h, &r).unwrap().module;
        let ladder = restriction_monotonicity(&h, &r, &v).unwrap();
        assert_eq!(ladder.over_h, None);
        assert!(ladder.holds);
    }

    #[test]
    fn trivial_module_has_depth_zero() {
        let (h, _) = taft(3).unwrap();
        let whole = HopfSubalgebra::whole(&h).unwrap();
        assert_eq!(module_depth_over_r(&h, &whole).unwrap().value(), 0);
        let i = depth_interval(&h, &whole).unwrap();
        assert_eq!((i.value.lo(), i.value.hi()), (1, 2));
    }

    #[test]
    fn small_quantum_two() {
        let (h, r) = small_quantum(2).unwrap();
        let d = module_depth_over_r(&h, &r).unwrap();
        assert!(d.value() <= 2);
        assert_eq!(d.value(), 1);
        assert!(depth_interval(&h, &r).unwrap().value.hi() <= 6);
    }

    #[test]
    fn small_quantum_three_is_unsupported() {
        let (h, r) = small_quantum(3).unwrap();
        assert!(matches!(module_depth_over_r(&h, &r), Err(DepthError::Unsupported(_))));
    }

    #[test]
    fn taft_square_is_n_copies() {
        for n in 2..=4 {
            let (h, r) = taft(n).unwrap();
            let v = quotient_module_v(&h, &r).unwrap().module.restrict(&r);
            let vv = tensor_module(r.algebra(), &v, &v);
            let p = weight_isomorphism(r.algebra(), &vv, &v.multiple(n)).unwrap();
            assert_eq!(p.rows(), n * n);
        }
    }

    #[test]
    fn group_ladder() {
        let z4 = fixtures::cyclic(4);
        let c = &z4.generators()[0];
        let kg = group_algebra(&z4, 4).unwrap();
        let trivial = z4.trivial_subgroup();
        let half = z4.subgroup(&[c * c]).unwrap();
        for sub in [&trivial, &half, &z4] {
            let r = group_subalgebra(&kg, &z4, sub).unwrap();
            let v = quotient_module_v(&kg, &r).unwrap().module;
            let ladder = restriction_monotonicity(&kg, &r, &v).unwrap();
            assert!(ladder.over_h.is_some());
            assert!(ladder.holds, "{ladder:?}");
        }
    }
}
