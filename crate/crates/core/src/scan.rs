use rayon::prelude::*;

/// Maps `f` over `items` on the rayon pool, one chunk at a time, and feeds
/// the results to `sink` in input order. Output order never depends on the
/// number of workers, and results surface as each chunk completes.
pub(crate) fn ordered_par_map<T, R>(items: &[T], f: impl Fn(&T) -> R + Sync, mut sink: impl FnMut(&T, R))
where
    T: Sync,
    R: Send,
{
    let chunk = (rayon::current_num_threads() * 4).max(1);
    for block in items.chunks(chunk) {
        let results: Vec<R> = block.par_iter().map(&f).collect();
        for (item, r) in block.iter().zip(results) {
            sink(item, r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let mut seen = Vec::new();
        ordered_par_map(&items, |&x| x * x, |&x, sq| seen.push((x, sq)));
        assert_eq!(seen, items.iter().map(|&x| (x, x * x)).collect::<Vec<_>>());
    }
}
