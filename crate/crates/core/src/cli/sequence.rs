use num_integer::Integer;
use serde::Serialize;

use crate::error::{DepthError, Result};

/// Outcome of the divisibility-depth search on a finite prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceDepth {
    Depth(usize),
    /// No `m` with `m + probe <= len` passed every tested `j`.
    ExceedsProbe { largest_m_tested: usize },
}

/// Whether `x` divides some power of `a_1 ... a_k`, i.e. every prime of `x`
/// divides one of the factors.
pub fn divides_power_of_product(mut x: u64, factors: &[u64]) -> bool {
    for &a in factors {
        loop {
            let g = x.gcd(&a);
            if g <= 1 {
                break;
            }
            while x.is_multiple_of(g) {
                x /= g;
            }
        }
        if x == 1 {
            return true;
        }
    }
    x == 1
}

/// Least `m` such that `a_(m+1+j)` divides a power of `a_1 ... a_(m+j)` for
/// every `j < probe` (1-based indices).
pub fn sequence_depth(a: &[u64], probe: usize) -> Result<SequenceDepth> {
    if a.is_empty() {
        return Err(DepthError::invalid("sequence is empty"));
    }
    if probe == 0 {
        return Err(DepthError::invalid("probe window must be positive"));
    }
    if a.contains(&0) {
        return Err(DepthError::invalid("sequence terms must be positive"));
    }
    if probe > a.len() {
        return Err(DepthError::invalid(format!(
            "probe {probe} longer than the prefix of length {}",
            a.len()
        )));
    }
    let last = a.len() - probe;
    for m in 0..=last {
        if (0..probe).all(|j| divides_power_of_product(a[m + j], &a[..m + j])) {
            return Ok(SequenceDepth::Depth(m));
        }
    }
    Ok(SequenceDepth::ExceedsProbe { largest_m_tested: last })
}

/// `a_n = u_r^(q+1)` for `n = m q + r`, `1 <= r <= m`.
pub fn interleaved(u: &[u64], len: usize) -> Vec<u64> {
    let m = u.len();
    (1..=len)
        .map(|n| {
            let q = (n - 1) / m;
            let r = (n - 1) % m;
            u[r].pow(q as u32 + 1)
        })
        .collect()
}

pub fn fibonacci(len: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(len);
    for i in 0..len {
        let next = if i < 2 { 1 } else { out[i - 1] + out[i - 2] };
        out.push(next);
    }
    out
}

pub fn geometric(base: u64, len: usize) -> Vec<u64> {
    (1..=len as u32).map(|n| base.pow(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn named_sequences() {
        assert_eq!(sequence_depth(&geometric(2, 12), 6).unwrap(), SequenceDepth::Depth(1));
        assert_eq!(
            sequence_depth(&fibonacci(30), 20).unwrap(),
            SequenceDepth::ExceedsProbe { largest_m_tested: 10 }
        );
        assert_eq!(sequence_depth(&interleaved(&[2, 3], 12), 6).unwrap(), SequenceDepth::Depth(2));
        assert_eq!(interleaved(&[2, 3], 4), vec![2, 3, 4, 9]);
        assert!(sequence_depth(&[], 1).is_err());
    }

    #[test]
    fn prime_support() {
        assert!(divides_power_of_product(8, &[2]));
        assert!(divides_power_of_product(12, &[2, 9]));
        assert!(!divides_power_of_product(5, &[2, 3]));
        assert!(divides_power_of_product(1, &[]));
    }

    proptest! {
        #[test]
        fn support_test_matches_bounded_powers(x in 1u64..500, y in 1u64..60) {
            // Oracle: x | y^e for some e <= 9, enough for x < 2^9.
            let mut p: u128 = 1;
            let mut found = false;
            for _ in 0..10 {
                if p.is_multiple_of(x as u128) {
                    found = true;
                    break;
                }
                p *= y as u128;
            }
            prop_assert_eq!(divides_power_of_product(x, &[y]), found);
        }
    }
}
