use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::algebra::{add_term, basis_elem, Elem, HopfAlgebra, HopfParts, HopfSubalgebra, Tensor2};
use crate::error::{DepthError, Result};
use crate::perm_group::PermGroup;
use crate::scalars::Cyclotomic;

/// Generator data from which the full coproduct, counit and antipode are
/// extended along PBW words.
struct WordData {
    words: Vec<Vec<usize>>,
    delta: BTreeMap<usize, Tensor2>,
    eps: BTreeMap<usize, Cyclotomic>,
    antipode: BTreeMap<usize, Elem>,
}

fn assemble(
    conductor: u32,
    labels: Vec<String>,
    mult: Vec<Elem>,
    unit: usize,
    data: WordData,
    generators: Vec<usize>,
) -> Result<HopfAlgebra> {
    let d = labels.len();
    let tmp = HopfAlgebra::unchecked(HopfParts {
        conductor,
        labels: labels.clone(),
        mult: mult.clone(),
        unit: basis_elem(unit),
        coproduct: vec![Tensor2::new(); d],
        counit: vec![Cyclotomic::zero(); d],
        antipode: vec![Elem::new(); d],
        generators: vec![],
    })?;
    let mut coproduct = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    let mut antipode = Vec::with_capacity(d);
    for word in &data.words {
        let mut delta = Tensor2::from([((unit, unit), Cyclotomic::one())]);
        let mut eps = Cyclotomic::one();
        let mut s = basis_elem(unit);
        for g in word {
            delta = tmp.mul_tensor(&delta, &data.delta[g]);
            eps = &eps * &data.eps[g];
            s = tmp.mul(&data.antipode[g], &s);
        }
        coproduct.push(delta);
        counit.push(eps);
        antipode.push(s);
    }
    HopfAlgebra::new(HopfParts {
        conductor,
        labels,
        mult,
        unit: basis_elem(unit),
        coproduct,
        counit,
        antipode,
        generators,
    })
}

fn monomial(parts: &[(&str, usize)]) -> String {
    let s: Vec<String> = parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s.join("")
    }
}

/// The Taft algebra `H_n = <g, x | g^n = 1, x^n = 0, g x g^-1 = q x>` over
/// `Q(z_n)` with `q = z_n`, together with the group subalgebra `k<g>`.
///
/// Basis element `g^i x^j` sits at index `i * n + j`.
pub fn taft(n: usize) -> Result<(HopfAlgebra, HopfSubalgebra)> {
    if !(2..=6).contains(&n) {
        return Err(DepthError::invalid(format!("Taft order {n} outside 2..=6")));
    }
    let cond = n as u32;
    let idx = |i: usize, j: usize| i * n + j;
    let mut labels = Vec::with_capacity(n * n);
    let mut words = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            labels.push(monomial(&[("g", i), ("x", j)]));
            let mut w = vec![idx(1, 0); i];
            w.extend(std::iter::repeat_n(idx(0, 1), j));
            words.push(w);
        }
    }
    let mut mult = Vec::with_capacity(n.pow(4));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    let mut v = Elem::new();
                    if b + e < n {
                        let coef = Cyclotomic::root_power(cond, -((b * c) as i64));
                        v.insert(idx((a + c) % n, b + e), coef);
                    }
                    mult.push(v);
                }
            }
        }
    }
    let g = idx(1, 0);
    let x = idx(0, 1);
    let one = Cyclotomic::one();
    let data = WordData {
        words,
        delta: BTreeMap::from([
            (g, Tensor2::from([((g, g), one.clone())])),
            (x, Tensor2::from([((x, 0), one.clone()), ((g, x), one.clone())])),
        ]),
        eps: BTreeMap::from([(g, one.clone()), (x, Cyclotomic::zero())]),
        antipode: BTreeMap::from([
            (g, basis_elem(idx(n - 1, 0))),
            (x, Elem::from([(idx(n - 1, 1), -&one)])),
        ]),
    };
    let h = assemble(cond, labels, mult, 0, data, vec![g, x])?;
    let r_basis = (0..n).map(|i| basis_elem(idx(i, 0))).collect();
    let r_labels = (0..n).map(|i| monomial(&[("g", i)])).collect();
    let r = HopfSubalgebra::new(&h, r_basis, Some(r_labels))?;
    Ok((h, r))
}

/// Small quantum group `u_q(sl_2)` of dimension `d^3` with `q = z_{2d}`,
/// so that `q^2` is a primitive `d`-th root of unity, together with the
/// Borel-type subalgebra generated by `K` and `F`.
///
/// Relations: `K^d = 1`, `E^d = F^d = 0`, `K E K^-1 = q^2 E`,
/// `K F K^-1 = q^-2 F`, `EF - FE = (K - K^-1)/(q - q^-1)`. Coproduct
/// `D K = K (x) K`, `D E = E (x) 1 + K (x) E`, `D F = F (x) K^-1 + 1 (x) F`.
/// Basis element `F^a K^b E^c` sits at index `a d^2 + b d + c`.
pub fn small_quantum(d: usize) -> Result<(HopfAlgebra, HopfSubalgebra)> {
    if !(2..=4).contains(&d) {
        return Err(DepthError::invalid(format!("small quantum parameter {d} outside 2..=4")));
    }
    let cond = (2 * d) as u32;
    let qp = |k: i64| Cyclotomic::root_power(cond, k);
    let idx = |a: usize, b: usize, c: usize| a * d * d + b * d + c;
    let split = |i: usize| (i / (d * d), (i / d) % d, i % d);
    let dim = d * d * d;

    let right_e = |v: &Elem| -> Elem {
        let mut out = Elem::new();
        for (i, x) in v {
            let (a, b, c) = split(*i);
            if c + 1 < d {
                add_term(&mut out, idx(a, b, c + 1), x.clone());
            }
        }
        out
    };
    let right_k = |v: &Elem| -> Elem {
        let mut out = Elem::new();
        for (i, x) in v {
            let (a, b, c) = split(*i);
            add_term(&mut out, idx(a, (b + 1) % d, c), x * &qp(-2 * c as i64));
        }
        out
    };
    // E^c F written in the PBW basis.
    let h_inv = (qp(1) - qp(-1)).inv()?;
    let mut ecf: Vec<Elem> = vec![basis_elem(idx(1, 0, 0))];
    for c in 1..d {
        let mut next = right_e(&ecf[c - 1]);
        let e = (c - 1) as i64;
        add_term(&mut next, idx(0, 1, c - 1), &qp(-2 * e) * &h_inv);
        add_term(&mut next, idx(0, d - 1, c - 1), -(&qp(2 * e) * &h_inv));
        ecf.push(next);
    }
    let right_f = |v: &Elem| -> Elem {
        let mut out = Elem::new();
        for (i, x) in v {
            let (a, b, c) = split(*i);
            for (j, y) in &ecf[c] {
                let (al, be, ga) = split(*j);
                if a + al < d {
                    let coef = &(x * y) * &qp(-2 * (b * al) as i64);
                    add_term(&mut out, idx(a + al, (b + be) % d, ga), coef);
                }
            }
        }
        out
    };

    let mut labels = Vec::with_capacity(dim);
    let mut words = Vec::with_capacity(dim);
    let (ki, ei, fi) = (idx(0, 1, 0), idx(0, 0, 1), idx(1, 0, 0));
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                labels.push(monomial(&[("F", a), ("K", b), ("E", c)]));
                let mut w = vec![fi; a];
                w.extend(std::iter::repeat_n(ki, b));
                w.extend(std::iter::repeat_n(ei, c));
                words.push(w);
            }
        }
    }
    let mut mult = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for word in &words {
            let mut v = basis_elem(i);
            for g in word {
                v = if *g == ei {
                    right_e(&v)
                } else if *g == ki {
                    right_k(&v)
                } else {
                    right_f(&v)
                };
            }
            mult.push(v);
        }
    }
    let one = Cyclotomic::one();
    let k_inv = idx(0, d - 1, 0);
    let data = WordData {
        words,
        delta: BTreeMap::from([
            (ki, Tensor2::from([((ki, ki), one.clone())])),
            (ei, Tensor2::from([((ei, 0), one.clone()), ((ki, ei), one.clone())])),
            (fi, Tensor2::from([((fi, k_inv), one.clone()), ((0, fi), one.clone())])),
        ]),
        eps: BTreeMap::from([(ki, one.clone()), (ei, Cyclotomic::zero()), (fi, Cyclotomic::zero())]),
        antipode: BTreeMap::from([
            (ki, basis_elem(k_inv)),
            // -K^-1 E and -F K, already in PBW order.
            (ei, Elem::from([(idx(0, d - 1, 1), -&one)])),
            (fi, Elem::from([(idx(1, 1, 0), -&one)])),
        ]),
    };
    let h = assemble(cond, labels, mult, 0, data, vec![ki, ei, fi])?;
    let mut r_basis = Vec::with_capacity(d * d);
    let mut r_labels = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            r_basis.push(basis_elem(idx(a, b, 0)));
            r_labels.push(monomial(&[("F", a), ("K", b)]));
        }
    }
    let r = HopfSubalgebra::new(&h, r_basis, Some(r_labels))?;
    Ok((h, r))
}

/// The group algebra `kG` over `Q(z_conductor)`, basis in the group's
/// element order (identity first).
pub fn group_algebra(g: &PermGroup, conductor: u32) -> Result<HopfAlgebra> {
    let n = g.order();
    let mut mult = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mult.push(basis_elem(g.mul_index(i, j)));
        }
    }
    let gens = g
        .generators()
        .iter()
        .filter_map(|p| g.index_of(p))
        .collect();
    HopfAlgebra::new(HopfParts {
        conductor,
        labels: g.elements().iter().map(|p| p.to_string()).collect(),
        mult,
        unit: basis_elem(0),
        coproduct: (0..n).map(|i| Tensor2::from([((i, i), Cyclotomic::one())])).collect(),
        counit: vec![Cyclotomic::one(); n],
        antipode: (0..n).map(|i| basis_elem(g.inverse_index(i))).collect(),
        generators: gens,
    })
}

/// `kH` inside `kG` for a subgroup `H <= G`.
pub fn group_subalgebra(kg: &HopfAlgebra, g: &PermGroup, h: &PermGroup) -> Result<HopfSubalgebra> {
    let basis = h
        .elements()
        .iter()
        .map(|p| {
            g.index_of(p)
                .map(basis_elem)
                .ok_or_else(|| DepthError::invalid("subgroup element not in the group"))
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = h.elements().iter().map(|p| p.to_string()).collect();
    HopfSubalgebra::new(kg, basis, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_group::fixtures;

    #[test]
    fn taft_shape() {
        for n in 2..=4 {
            let (h, r) = taft(n).unwrap();
            assert_eq!(h.dim(), n * n);
            assert_eq!(r.dim(), n);
            assert!(h.counit_basis(n).is_one());
            assert!(h.counit_basis(1).is_zero());
            assert!(h.is_grouplike(n));
        }
        assert!(taft(7).is_err());
    }

    #[test]
    fn sweedler_relations() {
        let (h, _) = taft(2).unwrap();
        // x g = -g x and x^2 = 0.
        let minus_one = Cyclotomic::from_int(-1);
        assert_eq!(h.mul_basis(1, 2), &Elem::from([(3, minus_one.lift(2).unwrap())]));
        assert!(h.mul_basis(1, 1).is_empty());
    }

    #[test]
    fn small_quantum_eight_dim() {
        let (h, r) = small_quantum(2).unwrap();
        assert_eq!(h.dim(), 8);
        assert_eq!(r.dim(), 4);
        // EF = FE when q = i.
        let (e, f) = (1, 4);
        assert_eq!(h.mul_basis(e, f), h.mul_basis(f, e));
        // K^2 = 1.
        assert_eq!(h.mul_basis(2, 2), &basis_elem(0));
    }

    #[test]
    fn small_quantum_larger_validates() {
        let (h, r) = small_quantum(3).unwrap();
        assert_eq!((h.dim(), r.dim()), (27, 9));
    }

    #[test]
    fn group_algebras() {
        let s3 = fixtures::symmetric(3);
        let kg = group_algebra(&s3, 1).unwrap();
        assert_eq!(kg.dim(), 6);
        let a3 = fixtures::alternating(3);
        let r = group_subalgebra(&kg, &s3, &a3).unwrap();
        assert_eq!(r.dim(), 3);
    }
}
