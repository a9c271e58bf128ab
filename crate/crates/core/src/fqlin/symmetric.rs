//! Congruent diagonalization of symmetric matrices and the rank/character
//! signature of a quadratic form.

use itertools::Itertools;

use super::FqMatrix;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};

#[derive(Clone, Debug)]
pub struct SymDiagResult {
    pub rank: usize,
    /// Nonzero diagonal values `d_1..d_r` of `P C P^T`.
    pub diag: Vec<FqElem>,
    /// Invertible `P` with `P C P^T = diag(d_1, .., d_r, 0, .., 0)`.
    pub transform: FqMatrix,
}

/// Rank of a symmetric matrix together with the quadratic character of any
/// of its nonzero principal minors of maximal order (+1 for the zero matrix).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RankSign {
    pub rank: usize,
    pub sign: i8,
}

fn require_symmetric(c: &FqMatrix) -> Result<()> {
    if !c.is_symmetric() {
        return Err(Error::Contract("matrix is not symmetric".into()));
    }
    Ok(())
}

/// Symmetric Gaussian elimination. Pivots on the first nonzero diagonal
/// entry of the remaining block; if the whole remaining diagonal is zero but
/// the block is not, the first nonzero off-diagonal `(i, j)` is folded into
/// the diagonal by adding row/column `j` to row/column `i`, which leaves
/// `2 c_ij` there.
pub fn sym_diagonalize(c: &FqMatrix) -> Result<SymDiagResult> {
    require_symmetric(c)?;
    let f = c.field().clone();
    let n = c.rows();
    let mut a = c.data().to_vec();
    let mut p = FqMatrix::identity(f.clone(), n).data().to_vec();
    let mut diag = Vec::new();
    for k in 0..n {
        if !select_pivot(&f, &mut a, Some(p.as_mut_slice()), n, k) {
            break;
        }
        diag.push(a[k * n + k]);
        eliminate(&f, &mut a, Some(p.as_mut_slice()), n, k);
    }
    Ok(SymDiagResult {
        rank: diag.len(),
        diag,
        transform: FqMatrix::from_vec(f, n, n, p)?,
    })
}

fn swap_sym(a: &mut [FqElem], p: Option<&mut [FqElem]>, n: usize, i: usize, k: usize) {
    if i == k {
        return;
    }
    for j in 0..n {
        a.swap(i * n + j, k * n + j);
    }
    for j in 0..n {
        a.swap(j * n + i, j * n + k);
    }
    if let Some(p) = p {
        for j in 0..n {
            p.swap(i * n + j, k * n + j);
        }
    }
}

/// Moves a nonzero pivot to `(k, k)`; false when the remaining block is zero.
fn select_pivot(f: &FieldCtx, a: &mut [FqElem], mut p: Option<&mut [FqElem]>, n: usize, k: usize) -> bool {
    if let Some(i) = (k..n).find(|&i| !a[i * n + i].is_zero()) {
        swap_sym(a, p, n, i, k);
        return true;
    }
    let off = (k..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !a[i * n + j].is_zero());
    let Some((i, j)) = off else {
        return false;
    };
    // row_i += row_j, then col_i += col_j
    for t in 0..n {
        a[i * n + t] = f.add(a[i * n + t], a[j * n + t]);
    }
    for t in 0..n {
        a[t * n + i] = f.add(a[t * n + i], a[t * n + j]);
    }
    if let Some(p) = p.as_deref_mut() {
        for t in 0..n {
            p[i * n + t] = f.add(p[i * n + t], p[j * n + t]);
        }
    }
    debug_assert!(!a[i * n + i].is_zero());
    swap_sym(a, p, n, i, k);
    true
}

fn eliminate(f: &FieldCtx, a: &mut [FqElem], mut p: Option<&mut [FqElem]>, n: usize, k: usize) {
    let inv = f.inv(a[k * n + k]).expect("pivot is nonzero");
    for l in k + 1..n {
        let alk = a[l * n + k];
        if alk.is_zero() {
            continue;
        }
        let factor = f.mul(alk, inv);
        for t in 0..n {
            a[l * n + t] = f.sub(a[l * n + t], f.mul(factor, a[k * n + t]));
        }
        for t in 0..n {
            a[t * n + l] = f.sub(a[t * n + l], f.mul(factor, a[t * n + k]));
        }
        if let Some(p) = p.as_deref_mut() {
            for t in 0..n {
                p[l * n + t] = f.sub(p[l * n + t], f.mul(factor, p[k * n + t]));
            }
        }
    }
}

/// Same elimination without the transform; destroys `a`.
pub(crate) fn rank_sign_in_place(f: &FieldCtx, a: &mut [FqElem], n: usize) -> RankSign {
    let mut prod = FqElem::ONE;
    let mut rank = 0;
    for k in 0..n {
        if !select_pivot(f, a, None, n, k) {
            break;
        }
        prod = f.mul(prod, a[k * n + k]);
        rank += 1;
        eliminate(f, a, None, n, k);
    }
    RankSign { rank, sign: f.quad_char(prod) }
}

pub fn eta_rank_signature(c: &FqMatrix) -> Result<RankSign> {
    require_symmetric(c)?;
    let mut a = c.data().to_vec();
    Ok(rank_sign_in_place(c.field(), &mut a, c.rows()))
}

/// Independent route: the lexicographically first index set of size
/// `rank(C)` with a nonzero principal minor, and the character of that minor.
pub fn principal_minor_sign_oracle(c: &FqMatrix) -> Result<(RankSign, Vec<usize>)> {
    require_symmetric(c)?;
    let r = c.rank();
    if r == 0 {
        return Ok((RankSign { rank: 0, sign: 1 }, Vec::new()));
    }
    for subset in (0..c.rows()).combinations(r) {
        let det = c.principal(&subset).det()?;
        if !det.is_zero() {
            let sign = c.field().quad_char(det);
            return Ok((RankSign { rank: r, sign }, subset));
        }
    }
    unreachable!("a symmetric matrix of rank r has a nonzero principal r-minor")
}
