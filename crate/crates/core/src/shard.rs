//! Contiguous partitioning of an index range across scoped threads.

use std::ops::Range;
use std::thread;

use crate::error::Result;

/// Default worker count: the machine's available parallelism.
pub fn default_workers() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Splits `0..total` into at most `workers` contiguous nonempty ranges.
pub(crate) fn ranges(total: u64, workers: usize) -> Vec<Range<u64>> {
    let w = (workers.max(1) as u64).min(total.max(1));
    let base = total / w;
    let extra = total % w;
    let mut out = Vec::with_capacity(w as usize);
    let mut start = 0;
    for i in 0..w {
        let len = base + u64::from(i < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Runs `job` on every range, one scoped thread each, and returns the
/// results in range order. The first error wins.
pub(crate) fn run<S, J>(total: u64, workers: usize, job: J) -> Result<Vec<S>>
where
    S: Send,
    J: Fn(Range<u64>) -> Result<S> + Sync,
{
    let parts = ranges(total, workers);
    if parts.len() == 1 {
        return Ok(vec![job(parts[0].clone())?]);
    }
    thread::scope(|scope| {
        let handles: Vec<_> = parts
            .into_iter()
            .map(|r| {
                let job = &job;
                scope.spawn(move || job(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_exactly() {
        for total in [0u64, 1, 5, 16, 100] {
            for w in [1, 3, 4, 16, 200] {
                let rs = ranges(total, w);
                assert!(rs.len() <= w.max(1));
                let mut next = 0;
                for r in &rs {
                    assert_eq!(r.start, next);
                    next = r.end;
                }
                assert_eq!(next, total);
            }
        }
    }

    #[test]
    fn run_preserves_order() {
        let out = run(10, 4, |r| Ok(r.start)).unwrap();
        assert_eq!(out, vec![0, 3, 6, 8]);
    }
}
