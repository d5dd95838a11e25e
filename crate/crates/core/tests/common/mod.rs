//! Oracles shared by the integration tests.

use depthlab::exact_matrix::IntMatrix;
use depthlab::matrix_depth::InclusionData;

/// Minimum depth from the alternating products `M, M M^t M, ...`: depth
/// `2n` when `(M M^t)^n M` has no new nonzeros over `(M M^t)^(n-1) M`, and
/// depth `2n+1` when `(M M^t)^(n+1)` has none over `(M M^t)^n`.
pub fn exact_min_depth(d: &InclusionData) -> u64 {
    let m = d.matrix();
    let s = m.mul(&m.transpose()).unwrap();
    // prev = (M M^t)^(n-1), cur = (M M^t)^n.
    let mut prev = IntMatrix::identity(m.rows());
    let mut cur = s.clone();
    if cur.zero_pattern() == prev.zero_pattern() {
        return 1;
    }
    for n in 1..64u64 {
        if cur.mul(m).unwrap().zero_pattern() == prev.mul(m).unwrap().zero_pattern() {
            return 2 * n;
        }
        let next = cur.mul(&s).unwrap();
        if next.zero_pattern() == cur.zero_pattern() {
            return 2 * n + 1;
        }
        prev = cur;
        cur = next;
    }
    unreachable!("zero patterns stabilize")
}
