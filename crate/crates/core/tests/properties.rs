use depthlab::burnside::{burnside_chain, Over};
use depthlab::cli::sequence::{interleaved, sequence_depth, SequenceDepth};
use depthlab::exact_matrix::IntMatrix;
use depthlab::matrix_depth::{
    bipartite_odd_depth, boolean_pattern_powers, branch_matrix, min_h_depth, min_odd_depth, module_depth_h,
    InclusionData,
};
use depthlab::perm_group::fixtures::{cyclic, direct_product, symmetric, symmetric_in};
use depthlab::perm_group::PermGroup;
use depthlab::DepthError;
use proptest::prelude::*;

mod common;
use common::exact_min_depth;

/// Random nonnegative matrices with no zero row or column.
fn inclusion_matrix() -> impl Strategy<Value = InclusionData> {
    (1usize..5, 1usize..5)
        .prop_flat_map(|(r, c)| proptest::collection::vec(0u64..3, r * c).prop_map(move |v| (r, c, v)))
        .prop_map(|(r, c, mut v)| {
            for i in 0..r {
                if (0..c).all(|j| v[i * c + j] == 0) {
                    v[i * c + i % c] = 1;
                }
            }
            for j in 0..c {
                if (0..r).all(|i| v[i * c + j] == 0) {
                    v[(j % r) * c + j] = 1;
                }
            }
            let m = IntMatrix::new(r, c, v.into_iter().map(Into::into).collect()).unwrap();
            InclusionData::new(m).unwrap()
        })
}

fn chain_bound(g: &PermGroup, h: &PermGroup) -> usize {
    burnside_chain(g, h, Over::Big, 32).unwrap().bound
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

proptest! {
    #[test]
    fn zero_patterns_shrink(d in inclusion_matrix()) {
        for p in [d.s_matrix(), d.t_matrix()] {
            let powers = boolean_pattern_powers(&p, 8).unwrap();
            for w in powers.windows(2) {
                prop_assert!(w[1].is_subset_of(&w[0]));
            }
        }
    }

    #[test]
    fn boolean_powers_match_integer_powers(d in inclusion_matrix(), k in 0u32..5) {
        let s = d.s_matrix();
        let powers = boolean_pattern_powers(&s, k as usize).unwrap();
        prop_assert_eq!(&powers[k as usize], &s.pow(k).unwrap().zero_pattern());
    }

    #[test]
    fn h_depth_within_two_of_min_depth(d in inclusion_matrix()) {
        let odd = min_odd_depth(&d).unwrap().value();
        let h = min_h_depth(&d).unwrap().value();
        let min = exact_min_depth(&d);
        prop_assert!(min <= odd && odd <= min + 1);
        prop_assert!(min <= h + 1 && h <= min + 2, "min {} h {}", min, h);
        prop_assert!(h <= odd + 2);
        prop_assert_eq!(h % 2, 1);
    }

    #[test]
    fn bipartite_diameter_matches_powers(d in inclusion_matrix()) {
        let odd = min_odd_depth(&d).unwrap().value();
        match bipartite_odd_depth(&d) {
            Ok(b) => prop_assert_eq!(b.value(), odd),
            Err(DepthError::Disconnected { components }) => prop_assert!(components >= 2),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn h_depth_is_twice_module_depth_on_products(a in 1usize..5, b in 1usize..4) {
        let d = branch_matrix(a).unwrap().tensor(&branch_matrix(b).unwrap()).unwrap();
        let h = min_h_depth(&d).unwrap().value();
        let m = module_depth_h(&d).unwrap().value();
        prop_assert_eq!(h, 2 * m + 1);
    }

    #[test]
    fn interleaved_primes_have_depth_equal_to_period(m in 1usize..5, reps in 3usize..5) {
        let u = &PRIMES[..m];
        let a = interleaved(u, m * reps);
        prop_assert_eq!(sequence_depth(&a, m).unwrap(), SequenceDepth::Depth(m));
    }
}

/// `C + C` in `M_2(C)`: the overalgebra is simple, so h-depth is 1 while the
/// minimum depth is 2 and the odd depth 3.
#[test]
fn h_depth_can_undercut_odd_depth() {
    let d = InclusionData::new(IntMatrix::from_u64_rows(&[&[1], &[1]]).unwrap()).unwrap();
    assert_eq!(exact_min_depth(&d), 2);
    assert_eq!(min_odd_depth(&d).unwrap().value(), 3);
    assert_eq!(min_h_depth(&d).unwrap().value(), 1);
    let d = d.with_triv_row(0).unwrap();
    assert_eq!(module_depth_h(&d).unwrap().value(), 0);
}

#[test]
fn symmetric_ladder_matrix_values() {
    for n in 1..=7 {
        let d = branch_matrix(n).unwrap();
        assert_eq!(min_odd_depth(&d).unwrap().value(), 2 * n as u64 - 1);
        assert_eq!(min_h_depth(&d).unwrap().value(), 2 * n as u64 + 1);
        assert_eq!(module_depth_h(&d).unwrap().value(), n as u64);
    }
}

#[test]
fn direct_product_chain_is_max() {
    let pairs = [
        (symmetric(3), symmetric_in(2, 3)),
        (symmetric(3), symmetric(3).trivial_subgroup()),
        (cyclic(2), cyclic(2).trivial_subgroup()),
        (cyclic(3), cyclic(3)),
    ];
    for (g1, h1) in &pairs {
        for (g2, h2) in &pairs {
            let g = direct_product(g1, g2);
            let h = direct_product(h1, h2);
            let expected = chain_bound(g1, h1).max(chain_bound(g2, h2));
            assert_eq!(chain_bound(&g, &h), expected, "{} x {}", g1.order(), g2.order());
        }
    }
}
