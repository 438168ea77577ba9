//! Deterministic pairwise summation.
//!
//! Every accumulation over image pixels goes through [`tree_sum`], so the
//! summation order is a fixed function of the element count alone.

const LEAF: usize = 64;

/// Sums `term(k)` for `k` in `0..len` with a fixed pairwise tree: ranges of at
/// most [`LEAF`] terms are summed left to right, larger ranges are split at
/// their midpoint.
pub(crate) fn tree_sum<F>(len: usize, term: &F) -> f64
where
    F: Fn(usize) -> f64,
{
    tree(0, len, term)
}

fn tree<F>(start: usize, end: usize, term: &F) -> f64
where
    F: Fn(usize) -> f64,
{
    if end - start <= LEAF {
        let mut acc = 0.0;
        for k in start..end {
            acc += term(k);
        }
        acc
    } else {
        let mid = start + (end - start) / 2;
        tree(start, mid, term) + tree(mid, end, term)
    }
}
