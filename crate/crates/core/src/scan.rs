use std::ops::Range;

use rayon::prelude::*;

const CHUNK: u64 = 1 << 12;

/// Folds over `0..total` in parallel chunks. `merge` must be associative and
/// order-insensitive so the result does not depend on the partition.
pub(crate) fn par_fold<A, I, F, M>(total: u64, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, Range<u64>) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            fold(&mut acc, c * CHUNK..((c + 1) * CHUNK).min(total));
            acc
        })
        .reduce(&init, &merge)
}
