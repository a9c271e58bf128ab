//! Multidimensional quadratic Gauss sums `sum_x h(x C x^T)` and the
//! weighted Laplace-Kirchhoff matrix `M diag(alpha) M^T`.

use num_rational::Ratio;

use super::{eta_rank_signature, FqMatrix, RankSign};
use crate::error::{check_budget, Error, Result};
use crate::gf::{g1, g_const, CyclotomicInt, FieldCtx, FqElem, QuadGaussSum};

/// `M diag(alpha) M^T`.
pub fn laplacian(m: &FqMatrix, alpha: &[FqElem]) -> Result<FqMatrix> {
    if alpha.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "{} weights for {} columns",
            alpha.len(),
            m.cols()
        )));
    }
    if alpha.iter().any(|a| a.is_zero()) {
        return Err(Error::Contract("weights must be nonzero".into()));
    }
    let mut out = vec![FqElem::ZERO; m.rows() * m.rows()];
    laplacian_into(m.field(), m.data(), m.rows(), m.cols(), alpha, &mut out);
    FqMatrix::from_vec(m.field().clone(), m.rows(), m.rows(), out)
}

pub(crate) fn laplacian_into(
    f: &FieldCtx,
    m: &[FqElem],
    rows: usize,
    cols: usize,
    alpha: &[FqElem],
    out: &mut [FqElem],
) {
    for i in 0..rows {
        for j in i..rows {
            let mut acc = FqElem::ZERO;
            for e in 0..cols {
                let (a, b) = (m[i * cols + e], m[j * cols + e]);
                if !a.is_zero() && !b.is_zero() {
                    acc = f.add(acc, f.mul(f.mul(a, b), alpha[e]));
                }
            }
            out[i * rows + j] = acc;
            out[j * rows + i] = acc;
        }
    }
}

/// Evaluates `x C x^T` for a symmetric `C` stored row-major.
pub(crate) fn quadratic_form(f: &FieldCtx, c: &[FqElem], n: usize, x: &[FqElem]) -> FqElem {
    let two = f.from_int(2);
    let mut acc = FqElem::ZERO;
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        let mut row = f.mul(c[i * n + i], x[i]);
        for j in i + 1..n {
            if !x[j].is_zero() {
                row = f.add(row, f.mul(two, f.mul(c[i * n + j], x[j])));
            }
        }
        acc = f.add(acc, f.mul(row, x[i]));
    }
    acc
}

/// Direct summation over all `x` in F_q^n; refuses when `q^n > budget`.
pub fn gauss_sum_direct(c: &FqMatrix, budget: u64) -> Result<CyclotomicInt> {
    if !c.is_symmetric() {
        return Err(Error::Contract("matrix is not symmetric".into()));
    }
    let f = c.field();
    let n = c.rows();
    let total = (f.q() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_budget(total, budget)?;
    let mut counts = vec![0i64; f.p() as usize];
    let mut x = vec![FqElem::ZERO; n];
    let q = f.q();
    loop {
        let v = quadratic_form(f, c.data(), n, &x);
        counts[f.trace(v) as usize] += 1;
        // odometer, first coordinate fastest
        let mut i = 0;
        loop {
            if i == n {
                return Ok(CyclotomicInt::from_coeffs(counts));
            }
            let next = x[i].index() + 1;
            if next < q {
                x[i] = FqElem(next);
                break;
            }
            x[i] = FqElem::ZERO;
            i += 1;
        }
    }
}

/// `Gau_q(C) = q^n * eta(det C_r) * (g1(q)/q)^r`, with `r = rank C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussSumClosed {
    pub n: usize,
    pub signature: RankSign,
    pub g1: QuadGaussSum,
}

impl GaussSumClosed {
    pub fn rank(&self) -> usize {
        self.signature.rank
    }

    pub fn sign(&self) -> i8 {
        self.signature.sign
    }

    /// Exact value `sign * q^{n-r} * g1^r` in Z[zeta_p].
    pub fn value(&self) -> CyclotomicInt {
        let p = self.g1.p;
        let q = self.g1.q() as i64;
        let r = self.rank();
        let g = self.g1.to_cyclotomic();
        let mut acc = CyclotomicInt::from_int(p, self.sign() as i64 * q.pow((self.n - r) as u32));
        for _ in 0..r {
            acc = &acc * &g;
        }
        acc
    }

    /// `Gau_q(C) / q^n` as a rational, available for even rank only.
    pub fn normalized(&self) -> Option<Ratio<i128>> {
        self.rank().is_multiple_of(2)
            .then(|| g_const(self.g1.q(), self.rank() as u32) * Ratio::from_integer(self.sign() as i128))
    }
}

pub fn gauss_sum_closed(c: &FqMatrix) -> Result<GaussSumClosed> {
    let signature = eta_rank_signature(c)?;
    Ok(GaussSumClosed { n: c.rows(), signature, g1: g1(c.field()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlin::sym_diagonalize;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn field(p: u32, d: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, d).unwrap())
    }

    #[test]
    fn laplacian_examples() {
        let f = field(5, 1);
        let alpha = [f.from_int(2), f.from_int(3), f.from_int(4)];
        let id = FqMatrix::identity(f.clone(), 3);
        assert_eq!(laplacian(&id, &alpha).unwrap(), FqMatrix::diag(f.clone(), &alpha));
        let m = FqMatrix::from_int_rows(f.clone(), &[vec![1, 0, 1, 1], vec![0, 1, 1, -1]]).unwrap();
        let l = laplacian(&m, &[FqElem::ONE; 4]).unwrap();
        assert_eq!(l, FqMatrix::from_int_rows(f.clone(), &[vec![3, 0], vec![0, 3]]).unwrap());
        assert!(matches!(laplacian(&m, &[FqElem::ONE; 3]), Err(Error::Dimension(_))));
        let bad = [FqElem::ONE, FqElem::ZERO, FqElem::ONE, FqElem::ONE];
        assert!(matches!(laplacian(&m, &bad), Err(Error::Contract(_))));
    }

    #[test]
    fn direct_sum_examples() {
        let f3 = field(3, 1);
        let one = FqMatrix::identity(f3.clone(), 1);
        assert_eq!(gauss_sum_direct(&one, 100).unwrap(), CyclotomicInt::from_coeffs(vec![1, 2, 0]));
        let z = FqMatrix::zeros(f3.clone(), 3, 3);
        assert_eq!(gauss_sum_direct(&z, 100).unwrap(), CyclotomicInt::from_int(3, 27));
        assert!(matches!(gauss_sum_direct(&z, 26), Err(Error::Budget { required: 27, budget: 26 })));
    }

    #[test]
    fn closed_form_examples() {
        let f5 = field(5, 1);
        let c = gauss_sum_closed(&FqMatrix::identity(f5.clone(), 1)).unwrap();
        assert_eq!(c.g1.axis, crate::gf::Axis::Real);
        assert_eq!((c.rank(), c.sign()), (1, 1));
        assert_eq!(c.value(), crate::gf::g1(&f5).to_cyclotomic());
        let z = gauss_sum_closed(&FqMatrix::zeros(f5.clone(), 2, 2)).unwrap();
        assert_eq!(z.value().as_integer(), Some(25));
        assert_eq!(z.normalized(), Some(Ratio::from_integer(1)));
    }

    #[test]
    fn congruent_matrices_have_equal_direct_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, d) in [(3, 1), (5, 1), (3, 2)] {
            let f = field(p, d);
            for _ in 0..10 {
                let c = FqMatrix::random_symmetric(f.clone(), 3, &mut rng);
                let pm = FqMatrix::random_invertible(f.clone(), 3, &mut rng);
                let a = gauss_sum_direct(&c, 1 << 20).unwrap();
                let b = gauss_sum_direct(&c.congruent(&pm).unwrap(), 1 << 20).unwrap();
                assert_eq!(a, b);
                // diagonal form too
                let diag = sym_diagonalize(&c).unwrap();
                let dm = c.congruent(&diag.transform).unwrap();
                assert_eq!(gauss_sum_direct(&dm, 1 << 20).unwrap(), a);
            }
        }
    }
}
