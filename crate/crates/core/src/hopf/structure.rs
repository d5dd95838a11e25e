use num_traits::{One, Zero};

use super::algebra::{basis_elem, Elem, HopfAlgebra, HopfSubalgebra};
use super::module::augmentation_ideal;
use crate::error::{DepthError, Result};
use crate::exact_matrix::{
    dense_to_sparse, kernel, left_kernel, rank, sparse_to_dense, span_dim, Quotient, ScalarMatrix,
};
use crate::scalars::Cyclotomic;

/// A right integral `t` of `R`, normalised so its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Integral {
    /// Coordinates in the subalgebra's own basis.
    pub sub: Elem,
    /// The same element in the parent algebra.
    pub element: Elem,
}

/// Right integral of a Hopf algebra: `t r = eps(r) t` for every basis `r`.
pub fn right_integral(alg: &HopfAlgebra) -> Result<Elem> {
    let d = alg.dim();
    let mut stacked = ScalarMatrix::zeros(d, d * d);
    for j in 0..d {
        let m = alg.right_mult_matrix(&basis_elem(j));
        let eps = alg.counit_basis(j);
        for row in 0..d {
            for col in 0..d {
                let mut x = m.get(row, col).clone();
                if row == col {
                    x -= eps;
                }
                stacked.set(row, j * d + col, x);
            }
        }
    }
    let ker = left_kernel(&stacked);
    if ker.len() != 1 {
        return Err(DepthError::AxiomViolation(format!(
            "space of right integrals has dimension {}",
            ker.len()
        )));
    }
    let mut t = dense_to_sparse(&ker[0]);
    let lead = t.values().next().expect("nonzero kernel vector").inv()?;
    for x in t.values_mut() {
        *x *= &lead;
    }
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct IntegralReport {
    pub integral: Integral,
    /// `t H = H t` as subspaces.
    pub is_normal: bool,
    /// `h bar -> t h` is a well-defined bijection `V -> t H`.
    pub v_iso_check: bool,
    /// `eps(t) != 0`, equivalently `R` semisimple.
    pub r_semisimple: bool,
}

pub fn integral_and_normality(h: &HopfAlgebra, r: &HopfSubalgebra) -> Result<IntegralReport> {
    let sub = right_integral(r.algebra())?;
    let t = r.embed(&sub);
    let d = h.dim();
    let th: Vec<Vec<Cyclotomic>> = (0..d)
        .map(|j| sparse_to_dense(&h.mul(&t, &basis_elem(j)), d))
        .collect();
    let ht: Vec<Vec<Cyclotomic>> = (0..d)
        .map(|j| sparse_to_dense(&h.mul(&basis_elem(j), &t), d))
        .collect();
    let is_normal = crate::exact_matrix::same_span(&th, &ht, d);

    let ideal = augmentation_ideal(h, r);
    let kills_ideal = ideal.iter().all(|v| h.mul(&t, v).is_empty());
    let quotient = Quotient::new(d, ideal);
    let images: Vec<Vec<Cyclotomic>> = quotient
        .reps()
        .iter()
        .map(|&i| sparse_to_dense(&h.mul(&t, &basis_elem(i)), d))
        .collect();
    let v_iso_check = kills_ideal
        && span_dim(&images, d) == quotient.dim()
        && span_dim(&th, d) == quotient.dim();
    let r_semisimple = !h.eps(&t).is_zero();
    Ok(IntegralReport {
        integral: Integral { sub, element: t },
        is_normal,
        v_iso_check,
        r_semisimple,
    })
}

/// Jacobson radical data for an algebra in characteristic zero.
#[derive(Clone, Debug)]
pub struct RadicalReport {
    /// Basis of `J` in the algebra's coordinates.
    pub radical: Vec<Elem>,
    pub is_hopf_ideal: bool,
    /// `R/J` is commutative and spanned by the images of grouplike basis
    /// elements whose orders divide the conductor.
    pub split_commutative: bool,
    /// Grouplike basis indices, in basis order.
    pub grouplikes: Vec<usize>,
}

/// `J` as the kernel of the trace form `(a, b) -> tr(L_ab)`.
pub fn radical(alg: &HopfAlgebra) -> Vec<Elem> {
    let d = alg.dim();
    let traces: Vec<Cyclotomic> = (0..d)
        .map(|k| {
            let mut t = Cyclotomic::zero();
            for m in 0..d {
                if let Some(x) = alg.mul_basis(k, m).get(&m) {
                    t += x;
                }
            }
            t
        })
        .collect();
    let mut form = ScalarMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut s = Cyclotomic::zero();
            for (k, x) in alg.mul_basis(i, j) {
                s += &(x * &traces[*k]);
            }
            form.set(i, j, s);
        }
    }
    kernel(&form).iter().map(|v| dense_to_sparse(v)).collect()
}

pub fn radical_and_chevalley(alg: &HopfAlgebra) -> Result<RadicalReport> {
    let d = alg.dim();
    let j = radical(alg);
    let quotient = Quotient::new(d, j.iter().cloned());

    let eps_zero = j.iter().all(|v| alg.eps(v).is_zero());
    let s_closed = j.iter().all(|v| quotient.is_zero_class(&alg.antipode(v)));
    let delta_closed = j.iter().all(|v| {
        let mut image = std::collections::BTreeMap::<(usize, usize), Cyclotomic>::new();
        for ((a, b), c) in alg.delta(v) {
            let pa = quotient.project_sparse(&basis_elem(a));
            let pb = quotient.project_sparse(&basis_elem(b));
            for (i, x) in &pa {
                for (k, y) in &pb {
                    super::algebra::add_term(&mut image, (*i, *k), &(&c * x) * y);
                }
            }
        }
        image.is_empty()
    });
    let is_hopf_ideal = eps_zero && s_closed && delta_closed;

    let commutative = (0..d).all(|a| {
        (a..d).all(|b| {
            let mut diff = alg.mul_basis(a, b).clone();
            crate::exact_matrix::sparse_axpy(&mut diff, &-Cyclotomic::one(), alg.mul_basis(b, a));
            quotient.is_zero_class(&diff)
        })
    });
    let grouplikes: Vec<usize> = (0..d).filter(|&i| alg.is_grouplike(i)).collect();
    let projected: Vec<Vec<Cyclotomic>> = grouplikes
        .iter()
        .map(|&g| quotient.project(&basis_elem(g)))
        .collect();
    let spans = quotient.dim() == 0
        || rank(&crate::exact_matrix::rows_matrix(&projected, quotient.dim())) == quotient.dim();
    let orders_ok = grouplikes.iter().all(|&g| {
        alg.order_of(g)
            .is_some_and(|o| (alg.conductor() as usize).is_multiple_of(o))
    });
    Ok(RadicalReport {
        radical: j,
        is_hopf_ideal,
        split_commutative: commutative && spans && orders_ok,
        grouplikes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::families::{group_algebra, group_subalgebra, small_quantum, taft};
    use crate::perm_group::fixtures;

    #[test]
    fn taft_integral_is_not_normal() {
        let (h, r) = taft(2).unwrap();
        let rep = integral_and_normality(&h, &r).unwrap();
        let one = Cyclotomic::one();
        assert_eq!(rep.integral.element, Elem::from([(0, one.clone()), (2, one)]));
        assert!(!rep.is_normal);
        assert!(rep.v_iso_check);
        assert!(rep.r_semisimple);
    }

    #[test]
    fn whole_algebra_integral_is_normal() {
        let (h, _) = taft(2).unwrap();
        let whole = HopfSubalgebra::whole(&h).unwrap();
        let rep = integral_and_normality(&h, &whole).unwrap();
        assert!(rep.is_normal);
        assert!(rep.v_iso_check);
        assert!(!rep.r_semisimple);
    }

    #[test]
    fn normal_subgroup_integral() {
        let z4 = fixtures::cyclic(4);
        let c = &z4.generators()[0];
        let half = z4.subgroup(&[c * c]).unwrap();
        let kg = group_algebra(&z4, 4).unwrap();
        let r = group_subalgebra(&kg, &z4, &half).unwrap();
        assert_eq!(r.dim(), 2);
        let rep = integral_and_normality(&kg, &r).unwrap();
        assert!(rep.is_normal);
        assert!(rep.v_iso_check);
    }

    #[test]
    fn radicals() {
        let (h, r) = taft(2).unwrap();
        let rr = radical_and_chevalley(r.algebra()).unwrap();
        assert!(rr.radical.is_empty());
        assert!(rr.split_commutative);
        let rh = radical_and_chevalley(&h).unwrap();
        let dense: Vec<Vec<Cyclotomic>> = rh.radical.iter().map(|v| sparse_to_dense(v, 4)).collect();
        let expected = vec![sparse_to_dense(&basis_elem(1), 4), sparse_to_dense(&basis_elem(3), 4)];
        assert!(crate::exact_matrix::same_span(&dense, &expected, 4));
        assert!(rh.is_hopf_ideal);
        assert!(rh.split_commutative);

        let (_, r) = small_quantum(2).unwrap();
        let rq = radical_and_chevalley(r.algebra()).unwrap();
        // Sub-basis F^a K^b at index 2a + b: F = 2, FK = 3.
        let dense: Vec<Vec<Cyclotomic>> = rq.radical.iter().map(|v| sparse_to_dense(v, 4)).collect();
        let expected = vec![sparse_to_dense(&basis_elem(2), 4), sparse_to_dense(&basis_elem(3), 4)];
        assert!(crate::exact_matrix::same_span(&dense, &expected, 4));
        assert!(rq.is_hopf_ideal);
        assert!(rq.split_commutative);
    }
}
