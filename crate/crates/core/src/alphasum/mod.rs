//! Sums over everywhere-nonzero weight vectors alpha in (F_q^*)^E of
//! `g(q, r*) * sign`, where each alpha contributes a corank `r*` and a
//! quadratic-character sign. Each evaluator returns the exact rational value
//! together with the tally of `(r*, sign)` pairs it was assembled from.

mod laplace;
mod search;

pub use laplace::{cancellation_check, eval_main3, term_main3, term_main3_subset, Main3Method};
pub use search::{
    eval_main1, eval_main2, eval_main2_contraction, main1_maximizers, term_main1, term_main1_restricted,
    term_main2, term_main2_restricted, SearchMode, SubsetSearch,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{check_budget, Result};
use crate::gf::{g_const, FieldCtx, FqElem};
use crate::shard;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Contribution of one weight vector: corank `r_star` and the character of
/// the defining basis sum (0 only if that sum vanished).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphaTerm {
    pub r_star: usize,
    pub sign: i8,
}

/// Histogram of terms by `(r*, sign)`. Odd `r*` has coefficient zero and is
/// only counted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermTally {
    pub counts: BTreeMap<(usize, i8), u64>,
    pub skipped_odd: u64,
}

impl TermTally {
    pub fn record(&mut self, t: AlphaTerm) {
        if t.r_star % 2 == 1 {
            self.skipped_odd += 1;
        } else {
            *self.counts.entry((t.r_star, t.sign)).or_insert(0) += 1;
        }
    }

    pub fn merge(&mut self, other: &TermTally) {
        for (&k, &v) in &other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.skipped_odd += other.skipped_odd;
    }

    pub fn count(&self, r: usize, sign: i8) -> u64 {
        self.counts.get(&(r, sign)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum::<u64>() + self.skipped_odd
    }

    /// `sum counts[(r, s)] * s * g(q, r)`.
    pub fn value(&self, q: u64) -> Ratio<i128> {
        self.counts
            .iter()
            .map(|(&(r, s), &c)| g_const(q, r as u32) * Ratio::from_integer(c as i128 * s as i128))
            .fold(Ratio::from_integer(0), |a, b| a + b)
    }
}

/// Worker count and term budget for an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub workers: usize,
    pub budget: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { workers: shard::default_workers(), budget: DEFAULT_BUDGET }
    }
}

impl EnumOptions {
    pub fn with_workers(workers: usize) -> Self {
        EnumOptions { workers, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSum {
    pub q: u64,
    pub tally: TermTally,
    pub value: Ratio<i128>,
}

impl AlphaSum {
    fn new(q: u64, tally: TermTally) -> Self {
        let value = tally.value(q);
        AlphaSum { q, tally, value }
    }
}

/// Number of weight vectors, refused above the budget.
pub(crate) fn alpha_count(field: &FieldCtx, n: usize, budget: u64) -> Result<u64> {
    let total = ((field.q() - 1) as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_budget(total, budget)?;
    Ok(total as u64)
}

/// Visits every alpha in (F_q^*)^n, odometer order with the first
/// coordinate fastest, split into contiguous shards. Returns the per-shard
/// states in shard order.
pub(crate) fn fold_alphas<S, I, V>(
    field: &Arc<FieldCtx>,
    n: usize,
    opts: &EnumOptions,
    init: I,
    visit: V,
) -> Result<Vec<S>>
where
    S: Send,
    I: Fn() -> S + Sync,
    V: Fn(&mut S, &[FqElem]) -> Result<()> + Sync,
{
    let total = alpha_count(field, n, opts.budget)?;
    let q = field.q();
    shard::run(total, opts.workers, |range| {
        let mut state = init();
        let mut alpha = decode(range.start, n, q);
        for _ in range {
            visit(&mut state, &alpha)?;
            for a in alpha.iter_mut() {
                if a.index() + 1 < q {
                    *a = FqElem(a.index() + 1);
                    break;
                }
                *a = FqElem::ONE;
            }
        }
        Ok(state)
    })
}

fn decode(mut index: u64, n: usize, q: u32) -> Vec<FqElem> {
    let base = (q - 1) as u64;
    (0..n)
        .map(|_| {
            let d = index % base;
            index /= base;
            FqElem(d as u32 + 1)
        })
        .collect()
}

/// Tallies `term(alpha)` over all alpha. `make` builds per-worker scratch
/// state.
pub(crate) fn tally_alphas<W, M, T>(field: &Arc<FieldCtx>, n: usize, opts: &EnumOptions, make: M, term: T) -> Result<TermTally>
where
    W: Send,
    M: Fn() -> W + Sync,
    T: Fn(&mut W, &[FqElem]) -> Result<AlphaTerm> + Sync,
{
    let parts = fold_alphas(
        field,
        n,
        opts,
        || (make(), TermTally::default()),
        |(scratch, tally), alpha| {
            tally.record(term(scratch, alpha)?);
            Ok(())
        },
    )?;
    let mut out = TermTally::default();
    for (_, t) in &parts {
        out.merge(t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_visits_each_alpha_once() {
        let f = Arc::new(FieldCtx::new(5, 1).unwrap());
        for workers in [1, 3, 7] {
            let parts = fold_alphas(&f, 3, &EnumOptions::with_workers(workers), Vec::new, |seen, a| {
                seen.push(a.iter().map(|e| e.index()).collect::<Vec<_>>());
                Ok(())
            })
            .unwrap();
            let all: Vec<_> = parts.into_iter().flatten().collect();
            assert_eq!(all.len(), 64);
            assert_eq!(all[0], vec![1, 1, 1]);
            assert_eq!(all[1], vec![2, 1, 1]);
            let set: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), 64);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = Arc::new(FieldCtx::new(3, 1).unwrap());
        let opts = EnumOptions { workers: 1, budget: 511 };
        let err = fold_alphas(&f, 9, &opts, || (), |_, _| Ok(())).unwrap_err();
        assert!(matches!(err, crate::Error::Budget { required: 512, budget: 511 }));
    }

    #[test]
    fn tally_value_and_merge() {
        let mut t = TermTally::default();
        for (r, s, c) in [(4, 1, 186), (4, -1, 162), (2, 1, 6), (2, -1, 10)] {
            for _ in 0..c {
                t.record(AlphaTerm { r_star: r, sign: s });
            }
        }
        t.record(AlphaTerm { r_star: 3, sign: 1 });
        assert_eq!(t.value(3), Ratio::from_integer(4));
        assert_eq!(t.total(), 365);
        let mut u = t.clone();
        u.merge(&t);
        assert_eq!(u.count(4, 1), 372);
        assert_eq!(u.skipped_odd, 2);
    }
}
