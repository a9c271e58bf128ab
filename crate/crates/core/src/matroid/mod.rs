//! Matroids given by a representation matrix over F_q.

mod oracle;

pub use oracle::{chi_whitney, flow_count, RankTable, MAX_WHITNEY_ELEMENTS};

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fqlin::{laplacian, Echelon, FqMatrix};
use crate::gf::{FieldCtx, FqElem};

/// Ground sets are handled as bitmasks.
pub const MAX_ELEMENTS: usize = 64;

/// Subset of the ground set, bit `e` set iff element `e` is in the subset.
pub type ElementMask = u64;

pub(crate) fn mask_of(elems: &[usize]) -> ElementMask {
    elems.iter().fold(0, |m, &e| m | (1 << e))
}

pub(crate) fn elems_of(mask: ElementMask) -> Vec<usize> {
    (0..64).filter(|e| mask >> e & 1 == 1).collect()
}

pub(crate) fn full_mask(n: usize) -> ElementMask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// One nonzero weight per ground element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector {
    field: Arc<FieldCtx>,
    values: Vec<FqElem>,
}

impl AlphaVector {
    pub fn new(field: Arc<FieldCtx>, values: Vec<FqElem>) -> Result<Self> {
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::Contract("weights must be nonzero".into()));
        }
        if values.iter().any(|v| v.index() >= field.q()) {
            return Err(Error::Contract("weight outside the field".into()));
        }
        Ok(AlphaVector { field, values })
    }

    pub fn from_ints(field: Arc<FieldCtx>, values: &[i64]) -> Result<Self> {
        let v = values.iter().map(|&x| field.from_int(x)).collect();
        Self::new(field, v)
    }

    pub fn constant(field: Arc<FieldCtx>, len: usize, value: FqElem) -> Result<Self> {
        Self::new(field, vec![value; len])
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn values(&self) -> &[FqElem] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entrywise inverse.
    pub fn inverse(&self) -> Self {
        let f = &self.field;
        AlphaVector {
            field: f.clone(),
            values: self.values.iter().map(|&a| f.inv(a).expect("weights are nonzero")).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentedMatroid {
    matrix: FqMatrix,
    labels: Vec<String>,
}

impl RepresentedMatroid {
    /// Keeps the earliest maximal independent set of rows, so the row count
    /// equals the rank.
    pub fn from_matrix(raw: FqMatrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != raw.cols() {
            return Err(Error::Dimension(format!(
                "{} labels for {} columns",
                labels.len(),
                raw.cols()
            )));
        }
        if raw.cols() > MAX_ELEMENTS {
            return Err(Error::Contract(format!("more than {MAX_ELEMENTS} ground elements")));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Contract(format!("duplicate label `{dup}`")));
        }
        let keep = raw.row_basis();
        let matrix = if keep.len() == raw.rows() { raw } else { raw.select_rows(&keep) };
        Ok(RepresentedMatroid { matrix, labels })
    }

    /// Columns labelled `1..=n`.
    pub fn from_matrix_unlabeled(raw: FqMatrix) -> Result<Self> {
        let labels = (1..=raw.cols()).map(|i| i.to_string()).collect();
        Self::from_matrix(raw, labels)
    }

    /// Cycle matroid of a graph on vertices `1..=n_vertices`, represented by
    /// the signed incidence matrix (+1 at the smaller endpoint, -1 at the
    /// larger). Self-loops become zero columns. Edge labels are `"u-v"`.
    pub fn from_graph(field: Arc<FieldCtx>, n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut raw = FqMatrix::zeros(field.clone(), n_vertices, edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w == 0 || w > n_vertices {
                    return Err(Error::Contract(format!(
                        "edge ({u},{v}) uses a vertex outside 1..={n_vertices}"
                    )));
                }
            }
            if u != v {
                let (lo, hi) = (u.min(v), u.max(v));
                raw.set(lo - 1, e, FqElem::ONE);
                raw.set(hi - 1, e, field.from_int(-1));
            }
        }
        let mut labels: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        // parallel edges need distinct labels
        let mut seen = std::collections::HashMap::<String, usize>::new();
        for l in labels.iter_mut() {
            let k = seen.entry(l.clone()).or_insert(0);
            *k += 1;
            if *k > 1 {
                *l = format!("{l}#{k}");
            }
        }
        Self::from_matrix(raw, labels)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Size of the ground set.
    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    fn check_indices(&self, elems: &[usize]) -> Result<()> {
        match elems.iter().find(|&&e| e >= self.len()) {
            Some(e) => Err(Error::UnknownLabel(format!("#{e}"))),
            None => Ok(()),
        }
    }

    pub fn rank_mask(&self, mask: ElementMask) -> usize {
        let cols = elems_of(mask);
        if cols.is_empty() {
            return 0;
        }
        self.matrix.select_columns(&cols).rank()
    }

    pub fn rank_subset(&self, elems: &[usize]) -> Result<usize> {
        self.check_indices(elems)?;
        Ok(self.rank_mask(mask_of(elems)))
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.matrix.column(e).iter().all(|x| x.is_zero())).collect()
    }

    /// Elements contained in every base.
    pub fn coloops(&self) -> Vec<usize> {
        let full = full_mask(self.len());
        (0..self.len())
            .filter(|&e| self.rank_mask(full & !(1 << e)) < self.rank())
            .collect()
    }

    /// Representation of the dual matroid: a basis of the null space of the
    /// matrix, i.e. of the orthogonal complement of its row space.
    pub fn dual(&self) -> Self {
        RepresentedMatroid { matrix: self.matrix.nullspace(), labels: self.labels.clone() }
    }

    /// `M|A`, ground set `A` in the given order.
    pub fn restrict(&self, elems: &[usize]) -> Result<Self> {
        self.check_indices(elems)?;
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        Self::from_matrix(self.matrix.select_columns(elems), labels)
    }

    /// `M.A = M/(E - A)`. Pivots on a basis of the complement so those
    /// columns become unit vectors, then deletes their pivot rows together
    /// with every complement column.
    pub fn contract(&self, elems: &[usize]) -> Result<Self> {
        self.check_indices(elems)?;
        let f = self.field().clone();
        let keep = mask_of(elems);
        let (rows, cols) = (self.rank(), self.len());
        let mut m: Vec<Vec<FqElem>> = (0..rows).map(|i| self.matrix.row(i).to_vec()).collect();
        let mut pivot_rows = Vec::new();
        for c in (0..cols).filter(|c| keep >> c & 1 == 0) {
            let Some(r) = (0..rows).find(|r| !pivot_rows.contains(r) && !m[*r][c].is_zero()) else {
                continue;
            };
            let inv = f.inv(m[r][c])?;
            m[r].iter_mut().for_each(|x| *x = f.mul(inv, *x));
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c];
                    for j in 0..cols {
                        let t = f.mul(factor, m[r][j]);
                        m[i][j] = f.sub(m[i][j], t);
                    }
                }
            }
            pivot_rows.push(r);
        }
        let rest: Vec<Vec<FqElem>> = (0..rows)
            .filter(|r| !pivot_rows.contains(r))
            .map(|r| elems.iter().map(|&c| m[r][c]).collect())
            .collect();
        let raw = if rest.is_empty() {
            FqMatrix::zeros(f, 0, elems.len())
        } else {
            FqMatrix::from_rows(f, rest)?
        };
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        Self::from_matrix(raw, labels)
    }

    /// Same matroid, representation `P * M` for an invertible `P`.
    pub fn transformed(&self, p: &FqMatrix) -> Result<Self> {
        if p.rows() != self.rank() || p.rank() != self.rank() {
            return Err(Error::Contract("transform must be invertible of order rank(M)".into()));
        }
        Self::from_matrix(p.mul(&self.matrix)?, self.labels.clone())
    }

    /// All bases in lexicographic order. Depth-first over columns with an
    /// incremental echelon form, pruning as soon as a column is dependent.
    pub fn bases(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let cols: Vec<Vec<FqElem>> = (0..self.len()).map(|e| self.matrix.column(e)).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(r);
        let ech = Echelon::new(self.field().clone(), r);
        bases_dfs(&cols, r, 0, &mut chosen, &ech, &mut out);
        out
    }

    pub fn bases_masks(&self) -> Vec<ElementMask> {
        self.bases().iter().map(|b| mask_of(b)).collect()
    }

    fn check_alpha(&self, alpha: &AlphaVector) -> Result<()> {
        if alpha.len() != self.len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} elements",
                alpha.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `sum_B prod_{e in B} alpha_e`.
    pub fn s_poly(&self, alpha: &AlphaVector) -> Result<FqElem> {
        self.check_alpha(alpha)?;
        let f = alpha.field();
        Ok(self.bases().iter().fold(FqElem::ZERO, |acc, b| {
            f.add(acc, b.iter().fold(FqElem::ONE, |p, &e| f.mul(p, alpha.values[e])))
        }))
    }

    /// `sum_B prod_{e not in B} alpha_e`.
    pub fn s_bar(&self, alpha: &AlphaVector) -> Result<FqElem> {
        self.check_alpha(alpha)?;
        let f = alpha.field();
        let n = self.len();
        Ok(self.bases_masks().iter().fold(FqElem::ZERO, |acc, &b| {
            let prod = (0..n)
                .filter(|e| b >> e & 1 == 0)
                .fold(FqElem::ONE, |p, e| f.mul(p, alpha.values[e]));
            f.add(acc, prod)
        }))
    }

    /// `sum_B det(M|_B)^2 prod_{e in B} alpha_e`; the weights must live in
    /// the field of the representation.
    pub fn s_prime(&self, alpha: &AlphaVector) -> Result<FqElem> {
        self.check_alpha(alpha)?;
        if **alpha.field() != **self.field() {
            return Err(Error::Contract("weights and representation over different fields".into()));
        }
        let f = alpha.field();
        let mut acc = FqElem::ZERO;
        for b in self.bases() {
            let det = self.matrix.select_columns(&b).det()?;
            let w = b.iter().fold(f.mul(det, det), |p, &e| f.mul(p, alpha.values[e]));
            acc = f.add(acc, w);
        }
        Ok(acc)
    }

    /// `M diag(alpha) M^T`.
    pub fn laplacian(&self, alpha: &AlphaVector) -> Result<FqMatrix> {
        self.check_alpha(alpha)?;
        if **alpha.field() != **self.field() {
            return Err(Error::Contract("weights and representation over different fields".into()));
        }
        laplacian(&self.matrix, alpha.values())
    }

    /// True when every base determinant is +1 or -1. A necessary condition
    /// for the representation to be totally unimodular, offered as a
    /// diagnostic only.
    pub fn base_dets_are_units(&self) -> bool {
        let f = self.field();
        let minus_one = f.from_int(-1);
        self.bases().iter().all(|b| {
            let d = self.matrix.select_columns(b).det().expect("square");
            d == FqElem::ONE || d == minus_one
        })
    }
}

fn bases_dfs(
    cols: &[Vec<FqElem>],
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    ech: &Echelon,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == r {
        out.push(chosen.clone());
        return;
    }
    let need = r - chosen.len();
    for e in start..cols.len() {
        if cols.len() - e < need {
            break;
        }
        let mut next = ech.clone();
        if next.insert(&cols[e]) {
            chosen.push(e);
            bases_dfs(cols, r, e + 1, chosen, &next, out);
            chosen.pop();
        }
    }
}
