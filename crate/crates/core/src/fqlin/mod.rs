//! Dense linear algebra over F_q.

mod gauss;
mod symmetric;

pub use gauss::{gauss_sum_closed, gauss_sum_direct, laplacian, GaussSumClosed};
pub use symmetric::{
    eta_rank_signature, principal_minor_sign_oracle, sym_diagonalize, RankSign, SymDiagResult,
};
pub(crate) use symmetric::rank_sign_in_place;
pub(crate) use gauss::laplacian_into;

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};

#[derive(Clone)]
pub struct FqMatrix {
    field: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for FqMatrix {}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix over F_{} ({}x{})", self.field.spec_string(), self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<u32> = self.row(i).iter().map(|e| e.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zeros(field: Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        FqMatrix { field, rows, cols, data: vec![FqElem::ZERO; rows * cols] }
    }

    pub fn identity(field: Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FqElem::ONE;
        }
        m
    }

    pub fn diag(field: Arc<FieldCtx>, values: &[FqElem]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    /// Builds a matrix from row-major storage.
    pub fn from_vec(field: Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<FqElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(FqMatrix { field, rows, cols, data })
    }

    pub fn from_rows(field: Arc<FieldCtx>, rows: Vec<Vec<FqElem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        let n = rows.len();
        Ok(FqMatrix { field, rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries reduced into the prime subfield.
    pub fn from_int_rows(field: Arc<FieldCtx>, rows: &[Vec<i64>]) -> Result<Self> {
        let conv = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Self::from_rows(field, conv)
    }

    pub fn random<R: Rng + ?Sized>(field: Arc<FieldCtx>, rows: usize, cols: usize, rng: &mut R) -> Self {
        let q = field.q();
        let data = (0..rows * cols).map(|_| FqElem(rng.gen_range(0..q))).collect();
        FqMatrix { field, rows, cols, data }
    }

    pub fn random_symmetric<R: Rng + ?Sized>(field: Arc<FieldCtx>, n: usize, rng: &mut R) -> Self {
        let q = field.q();
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            for j in i..n {
                let v = FqElem(rng.gen_range(0..q));
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }

    /// Uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(field: Arc<FieldCtx>, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field.clone(), n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FqElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FqElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[FqElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::Contract("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let f = &self.field;
        FqMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    /// `P * self * P^T`.
    pub fn congruent(&self, p: &Self) -> Result<Self> {
        p.mul(self)?.mul(&p.transpose())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.field.clone(), self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let data = rows.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        FqMatrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    /// Principal submatrix on the index set `idx`.
    pub fn principal(&self, idx: &[usize]) -> Self {
        self.select_rows(idx).select_columns(idx)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        rank_in_place(&self.field, &mut work, self.rows, self.cols)
    }

    pub fn det(&self) -> Result<FqElem> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut work = self.data.clone();
        Ok(det_in_place(&self.field, &mut work, self.rows))
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            swap_rows(&mut m, cols, r, piv);
            let inv = f.inv(m[r * cols + c]).expect("pivot is nonzero");
            for j in 0..cols {
                m[r * cols + j] = f.mul(inv, m[r * cols + j]);
            }
            for i in 0..rows {
                if i != r && !m[i * cols + c].is_zero() {
                    let factor = m[i * cols + c];
                    for j in 0..cols {
                        let t = f.mul(factor, m[r * cols + j]);
                        m[i * cols + j] = f.sub(m[i * cols + j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (FqMatrix { field: self.field.clone(), rows, cols, data: m }, pivots)
    }

    /// A basis of `{x : self * x^T = 0}`, one vector per row.
    pub fn nullspace(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.field.clone(), free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, FqElem::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Indices of the earliest maximal linearly independent set of rows.
    pub fn row_basis(&self) -> Vec<usize> {
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        (0..self.rows).filter(|&i| ech.insert(self.row(i))).collect()
    }

    /// Integer rows for prime fields, coefficient lists otherwise.
    pub fn to_coeff_rows(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&e| self.field.coeffs(e)).collect())
            .collect()
    }
}

fn swap_rows(m: &mut [FqElem], cols: usize, a: usize, b: usize) {
    if a != b {
        for j in 0..cols {
            m.swap(a * cols + j, b * cols + j);
        }
    }
}

pub(crate) fn rank_in_place(f: &FieldCtx, m: &mut [FqElem], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        swap_rows(m, cols, r, piv);
        let inv = f.inv(m[r * cols + c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            if m[i * cols + c].is_zero() {
                continue;
            }
            let factor = f.mul(m[i * cols + c], inv);
            for j in c..cols {
                let t = f.mul(factor, m[r * cols + j]);
                m[i * cols + j] = f.sub(m[i * cols + j], t);
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn det_in_place(f: &FieldCtx, m: &mut [FqElem], n: usize) -> FqElem {
    let mut det = FqElem::ONE;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !m[i * n + c].is_zero()) else {
            return FqElem::ZERO;
        };
        if piv != c {
            swap_rows(m, n, c, piv);
            det = f.neg(det);
        }
        let pv = m[c * n + c];
        det = f.mul(det, pv);
        let inv = f.inv(pv).expect("pivot is nonzero");
        for i in c + 1..n {
            if m[i * n + c].is_zero() {
                continue;
            }
            let factor = f.mul(m[i * n + c], inv);
            for j in c..n {
                let t = f.mul(factor, m[c * n + j]);
                m[i * n + j] = f.sub(m[i * n + j], t);
            }
        }
    }
    det
}

/// Incrementally maintained reduced basis of a subspace of F_q^len.
#[derive(Clone)]
pub(crate) struct Echelon {
    field: Arc<FieldCtx>,
    len: usize,
    basis: Vec<(usize, Vec<FqElem>)>,
}

impl Echelon {
    pub(crate) fn new(field: Arc<FieldCtx>, len: usize) -> Self {
        Echelon { field, len, basis: Vec::new() }
    }

    /// Adds `v` if it lies outside the current span; returns whether it did.
    pub(crate) fn insert(&mut self, v: &[FqElem]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let f = &self.field;
        let mut w = v.to_vec();
        for (piv, b) in &self.basis {
            let c = w[*piv];
            if !c.is_zero() {
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let Some(piv) = w.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = f.inv(w[piv]).expect("pivot is nonzero");
        w.iter_mut().for_each(|x| *x = f.mul(inv, *x));
        // keep existing vectors reduced at the new pivot
        for (_, b) in self.basis.iter_mut() {
            let c = b[piv];
            if !c.is_zero() {
                for (x, &y) in b.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.basis.push((piv, w));
        true
    }
}
