//! Brute-force references: full rank tables, the characteristic polynomial
//! from the Whitney corank expansion, and nowhere-zero flow counts.

use super::{full_mask, ElementMask, RepresentedMatroid};
use crate::error::{check_budget, Error, Result};
use crate::fqlin::Echelon;
use crate::gf::FqElem;

/// Largest ground set for which `chi_whitney` will enumerate all subsets.
pub const MAX_WHITNEY_ELEMENTS: usize = 20;

const MAX_TABLE_ELEMENTS: usize = 24;

/// `r(A)` for every subset `A`, indexed by bitmask.
#[derive(Clone, Debug)]
pub struct RankTable {
    n: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    pub fn build(m: &RepresentedMatroid) -> Result<Self> {
        let n = m.len();
        if n > MAX_TABLE_ELEMENTS {
            return Err(Error::Budget { required: 1u128 << n, budget: 1u64 << MAX_TABLE_ELEMENTS });
        }
        let cols: Vec<Vec<FqElem>> = (0..n).map(|e| m.matrix().column(e)).collect();
        let mut ranks = vec![0u8; 1 << n];
        let ech = Echelon::new(m.field().clone(), m.rank());
        fill(&cols, 0, 0, 0, &ech, &mut ranks);
        Ok(RankTable { n, ranks })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rank(&self, mask: ElementMask) -> usize {
        self.ranks[mask as usize] as usize
    }

    pub fn full_rank(&self) -> usize {
        self.rank(full_mask(self.n))
    }
}

// Elements are decided in order; the echelon form carries the span of the
// chosen ones so each node costs a single insertion.
fn fill(cols: &[Vec<FqElem>], e: usize, mask: usize, r: u8, ech: &Echelon, out: &mut [u8]) {
    if e == cols.len() {
        out[mask] = r;
        return;
    }
    fill(cols, e + 1, mask, r, ech, out);
    let mut next = ech.clone();
    if next.insert(&cols[e]) {
        fill(cols, e + 1, mask | 1 << e, r + 1, &next, out);
    } else {
        fill(cols, e + 1, mask | 1 << e, r, ech, out);
    }
}

/// `chi_M(x) = sum_A (-1)^|A| x^{r(E) - r(A)}`.
pub fn chi_whitney(m: &RepresentedMatroid, x: i64) -> Result<i128> {
    if m.len() > MAX_WHITNEY_ELEMENTS {
        return Err(Error::Budget { required: 1u128 << m.len(), budget: 1u64 << MAX_WHITNEY_ELEMENTS });
    }
    let table = RankTable::build(m)?;
    let r = table.full_rank();
    let powers: Vec<i128> = (0..=r as u32).map(|k| (x as i128).pow(k)).collect();
    let mut acc = 0i128;
    for a in 0..=full_mask(m.len()) {
        let term = powers[r - table.rank(a)];
        if a.count_ones() % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Number of nowhere-zero vectors in the kernel of the representation, over
/// the field it is given in. The kernel is parametrized by a null-space
/// basis, so the work is `q^{|E| - r}` vectors.
pub fn flow_count(m: &RepresentedMatroid, budget: u64) -> Result<u64> {
    let f = m.field();
    let basis = m.matrix().nullspace();
    let k = basis.rows();
    let n = m.len();
    check_budget((f.q() as u128).checked_pow(k as u32).unwrap_or(u128::MAX), budget)?;
    let mut y = vec![FqElem::ZERO; k];
    let mut x = vec![FqElem::ZERO; n];
    let mut count = 0u64;
    loop {
        x.iter_mut().for_each(|v| *v = FqElem::ZERO);
        for (i, &c) in y.iter().enumerate() {
            if !c.is_zero() {
                for (xe, &b) in x.iter_mut().zip(basis.row(i)) {
                    *xe = f.add(*xe, f.mul(c, b));
                }
            }
        }
        if x.iter().all(|v| !v.is_zero()) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(count);
            }
            let next = y[i].index() + 1;
            if next < f.q() {
                y[i] = FqElem(next);
                break;
            }
            y[i] = FqElem::ZERO;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlin::FqMatrix;
    use crate::gf::FieldCtx;
    use crate::instances;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn field(p: u32, d: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, d).unwrap())
    }

    #[test]
    fn table_matches_direct_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = field(3, 1);
        let m = RepresentedMatroid::from_matrix_unlabeled(FqMatrix::random(f, 3, 7, &mut rng)).unwrap();
        let t = RankTable::build(&m).unwrap();
        for a in 0..128u64 {
            assert_eq!(t.rank(a), m.rank_mask(a));
        }
    }

    #[test]
    fn u24_characteristic_polynomial() {
        let m = instances::u24(field(5, 1));
        for x in -3..10i64 {
            assert_eq!(chi_whitney(&m, x).unwrap(), ((x - 1) * (x - 3)) as i128);
        }
    }

    #[test]
    fn graph_chromatic_polynomials() {
        let f = field(3, 1);
        // chi of a graph matroid is P_G(x) / x for a connected graph
        let tri = RepresentedMatroid::from_graph(f.clone(), 3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        for x in 0..8i64 {
            assert_eq!(chi_whitney(&tri, x).unwrap(), ((x - 1) * (x - 2)) as i128);
        }
        let prism = instances::prism_matroid(f.clone());
        assert_eq!(chi_whitney(&prism, 3).unwrap(), 4);
        let looped = RepresentedMatroid::from_graph(f, 2, &[(1, 2), (1, 1)]).unwrap();
        assert_eq!(chi_whitney(&looped, 5).unwrap(), 0);
    }

    #[test]
    fn flows_against_dual_chi() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (p, d) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = field(p, d);
            for (rows, cols) in [(2, 5), (3, 6), (1, 4)] {
                let m = RepresentedMatroid::from_matrix_unlabeled(FqMatrix::random(f.clone(), rows, cols, &mut rng))
                    .unwrap();
                let q = f.q() as i64;
                assert_eq!(flow_count(&m, 1 << 20).unwrap() as i128, chi_whitney(&m.dual(), q).unwrap());
            }
        }
        let tri = RepresentedMatroid::from_graph(field(5, 1), 3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(flow_count(&tri, 100).unwrap(), 4);
        assert!(matches!(flow_count(&tri, 4), Err(Error::Budget { required: 5, budget: 4 })));
    }
}
