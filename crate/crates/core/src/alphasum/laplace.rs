//! Terms read off the weighted Laplace-Kirchhoff matrix `L = M diag(alpha) M^T`
//! of a representation, and the row-deletion search they replace.

use itertools::Itertools;

use super::{fold_alphas, tally_alphas, AlphaSum, AlphaTerm, EnumOptions};
use crate::error::{check_budget, Error, Result};
use crate::fqlin::{gauss_sum_direct, laplacian_into, rank_sign_in_place, FqMatrix};
use crate::gf::{CyclotomicInt, FieldCtx, FqElem};
use crate::matroid::{AlphaVector, RepresentedMatroid};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Main3Method {
    /// Rank and character of `L` by symmetric elimination.
    #[default]
    Laplacian,
    /// Minimum row-deletion set `W*` with `s'(M/W) != 0`.
    SubsetSearch,
    /// Both, failing on the first disagreement.
    CrossCheck,
}

fn check_alpha(m: &RepresentedMatroid, alpha: &AlphaVector) -> Result<()> {
    if alpha.len() != m.len() {
        return Err(Error::Dimension(format!("{} weights for {} elements", alpha.len(), m.len())));
    }
    if **alpha.field() != **m.field() {
        return Err(Error::Contract("weights and representation over different fields".into()));
    }
    Ok(())
}

fn laplacian_term(f: &FieldCtx, m: &FqMatrix, alpha: &[FqElem], buf: &mut Vec<FqElem>) -> AlphaTerm {
    let r = m.rows();
    buf.clear();
    buf.resize(r * r, FqElem::ZERO);
    laplacian_into(f, m.data(), r, m.cols(), alpha, buf);
    let rs = rank_sign_in_place(f, buf, r);
    AlphaTerm { r_star: rs.rank, sign: rs.sign }
}

/// `(rank L, eta of a maximal nonzero principal minor of L)`.
pub fn term_main3(m: &RepresentedMatroid, alpha: &AlphaVector) -> Result<AlphaTerm> {
    check_alpha(m, alpha)?;
    Ok(laplacian_term(m.field(), m.matrix(), alpha.values(), &mut Vec::new()))
}

/// `s'` of the matrix made of `rows`: sum over column sets with nonzero
/// determinant of `det^2 * prod alpha`.
fn s_prime_rows(f: &FieldCtx, m: &FqMatrix, rows: &[usize], alpha: &[FqElem]) -> Result<FqElem> {
    if rows.is_empty() {
        return Ok(FqElem::ONE);
    }
    let sub = m.select_rows(rows);
    let mut acc = FqElem::ZERO;
    for cols in (0..m.cols()).combinations(rows.len()) {
        let det = sub.select_columns(&cols).det()?;
        if !det.is_zero() {
            let w = cols.iter().fold(f.mul(det, det), |p, &e| f.mul(p, alpha[e]));
            acc = f.add(acc, w);
        }
    }
    Ok(acc)
}

fn subset_term(f: &FieldCtx, m: &FqMatrix, alpha: &[FqElem]) -> Result<AlphaTerm> {
    let v = m.rows();
    for k in 0..=v {
        for w in (0..v).combinations(k) {
            let keep: Vec<usize> = (0..v).filter(|i| !w.contains(i)).collect();
            let s = s_prime_rows(f, m, &keep, alpha)?;
            if !s.is_zero() {
                return Ok(AlphaTerm { r_star: v - k, sign: f.quad_char(s) });
            }
        }
    }
    unreachable!("deleting every row leaves s' = 1")
}

/// The defining search: `W*` is the lexicographically first minimum set of
/// rows whose deletion leaves `s' != 0`; `r* = |V| - |W*|`.
pub fn term_main3_subset(m: &RepresentedMatroid, alpha: &AlphaVector) -> Result<AlphaTerm> {
    check_alpha(m, alpha)?;
    subset_term(m.field(), m.matrix(), alpha.values())
}

/// `sum_alpha g(q, r*) * sign` over (F_q^*)^E with q the field of the
/// representation; equals `chi_{M^perp}(q)`, the number of nowhere-zero
/// vectors in the kernel of the matrix.
pub fn eval_main3(m: &RepresentedMatroid, method: Main3Method, opts: &EnumOptions) -> Result<AlphaSum> {
    let f = m.field();
    let mat = m.matrix();
    let tally = tally_alphas(f, m.len(), opts, Vec::new, |buf, alpha| match method {
        Main3Method::Laplacian => Ok(laplacian_term(f, mat, alpha, buf)),
        Main3Method::SubsetSearch => subset_term(f, mat, alpha),
        Main3Method::CrossCheck => {
            let fast = laplacian_term(f, mat, alpha, buf);
            let slow = subset_term(f, mat, alpha)?;
            if fast != slow {
                let idx: Vec<u32> = alpha.iter().map(|a| a.index()).collect();
                return Err(Error::Contract(format!(
                    "alpha {idx:?}: Laplacian term {fast:?} but subset term {slow:?}"
                )));
            }
            Ok(fast)
        }
    })?;
    Ok(AlphaSum::new(f.q() as u64, tally))
}

/// Sum of the direct Gauss sums of `L(M; alpha)` over every alpha for which
/// `L` has odd rank. Always zero: scaling alpha by a non-residue flips each
/// such sum.
pub fn cancellation_check(m: &RepresentedMatroid, opts: &EnumOptions) -> Result<CyclotomicInt> {
    let f = m.field();
    let r = m.rank();
    let n = m.len();
    let outer = ((f.q() - 1) as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let inner = (f.q() as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    check_budget(outer.saturating_mul(inner), opts.budget)?;
    let mat = m.matrix();
    let parts = fold_alphas(
        f,
        n,
        opts,
        || (Vec::new(), CyclotomicInt::zero(f.p())),
        |(buf, acc), alpha| {
            let t = laplacian_term(f, mat, alpha, buf);
            if t.r_star % 2 == 1 {
                let l = crate::fqlin::laplacian(mat, alpha)?;
                *acc += &gauss_sum_direct(&l, u64::MAX)?;
            }
            Ok(())
        },
    )?;
    Ok(parts.into_iter().fold(CyclotomicInt::zero(f.p()), |a, (_, s)| a + s))
}
