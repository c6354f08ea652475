//! Exact linear algebra over Q(ζ₈): dense matrices and a sparse row-echelon
//! eliminator used for ranks, null spaces and linear solves.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycQ8;

/// Sparse vector as `(index, value)` pairs sorted by index, no explicit zeros.
pub type SparseVec = Vec<(usize, CycQ8)>;

pub fn to_sparse(v: &[CycQ8]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<CycQ8> {
    let mut out = vec![CycQ8::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a − f·b` on sorted sparse rows.
fn axpy_sub(a: &SparseVec, f: &CycQ8, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row-echelon form. Each stored row is normalized so that its
/// leading entry is 1 and sits in its pivot column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `row` against the stored pivots; returns the residue.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut start = 0;
        loop {
            let next = row.iter().position(|(c, _)| *c >= start && self.pivots.contains_key(c));
            let Some(pos) = next else { return row };
            let (c, f) = row[pos].clone();
            row = axpy_sub(&row, &f, &self.pivots[&c]);
            start = c + 1;
        }
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let r = self.reduce(row);
        let Some((lead, lv)) = r.first().cloned() else { return false };
        let inv = lv.inv().expect("nonzero leading entry");
        let r: SparseVec = r.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.pivots.insert(lead, r);
        true
    }

    pub fn contains(&self, row: SparseVec) -> bool {
        self.reduce(row).is_empty()
    }

    fn pivot_cols_desc(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        cols
    }

    /// Solve with the given values for the free columns (others computed).
    fn back_substitute(&self, nvars: usize, free_values: &HashMap<usize, CycQ8>, rhs_col: Option<usize>) -> Vec<CycQ8> {
        let mut x = vec![CycQ8::zero(); nvars];
        for (c, v) in free_values {
            x[*c] = v.clone();
        }
        for p in self.pivot_cols_desc() {
            if p >= nvars {
                continue;
            }
            let row = &self.pivots[&p];
            let mut acc = CycQ8::zero();
            for (c, v) in row.iter().skip(1) {
                if Some(*c) == rhs_col {
                    acc += v;
                } else if *c < nvars && !x[*c].is_zero() {
                    acc -= &(v * &x[*c]);
                }
            }
            x[p] = acc;
        }
        x
    }

    /// Basis of the null space of the first `nvars` columns, assuming the
    /// stored rows only involve those columns.
    pub fn null_space(&self, nvars: usize) -> Vec<Vec<CycQ8>> {
        let free: Vec<usize> = (0..nvars).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut fv = HashMap::new();
                fv.insert(f, CycQ8::one());
                self.back_substitute(nvars, &fv, None)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
}

/// Solution of `A x = b`: one particular solution plus a null-space basis.
#[derive(Debug, Clone)]
pub struct Solution {
    pub particular: Vec<CycQ8>,
    pub kernel: Vec<Vec<CycQ8>>,
}

/// Solve a sparse system given as rows `(coefficients, rhs)` in `nvars` unknowns.
pub fn solve_sparse(nvars: usize, rows: impl IntoIterator<Item = (SparseVec, CycQ8)>) -> Result<Solution, LinalgError> {
    let mut ech = Echelon::new(nvars + 1);
    for (mut coeffs, rhs) in rows {
        if !rhs.is_zero() {
            coeffs.push((nvars, rhs));
        }
        ech.insert(coeffs);
    }
    if ech.pivots.contains_key(&nvars) {
        return Err(LinalgError::Inconsistent);
    }
    let particular = ech.back_substitute(nvars, &HashMap::new(), Some(nvars));
    let kernel = ech.null_space(nvars);
    Ok(Solution { particular, kernel })
}

/// Rank of a set of sparse vectors.
pub fn sparse_rank(ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Dense row-major matrix over Q(ζ₈).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycQ8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![CycQ8::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycQ8::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycQ8>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(rows: usize, cols: &[Vec<CycQ8>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| CycQ8::from_int(x)).collect()).collect())
            .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycQ8 {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycQ8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &CycQ8) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[CycQ8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CycQ8> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .filter_map(|i| {
                let v = self.get(i, j);
                (!v.is_zero()).then(|| (i, v.clone()))
            })
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<CycQ8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycQ8::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycQ8]) -> Result<Vec<CycQ8>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!("{}x{} * vec {}", self.rows, self.cols, v.len())));
        }
        let mut out = vec![CycQ8::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &CycQ8) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(CycQ8::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        self.transpose().conj()
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> CycQ8 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_unitary(&self) -> bool {
        self.rows == self.cols
            && self.adjoint().mul(self).map(|p| p == Matrix::identity(self.rows)).unwrap_or(false)
            && self.mul(&self.adjoint()).map(|p| p == Matrix::identity(self.rows)).unwrap_or(false)
    }

    pub fn rank(&self) -> usize {
        sparse_rank(self.cols, (0..self.rows).map(|i| to_sparse(self.row(i))))
    }

    /// Basis of `{x : A x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<CycQ8>> {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert(to_sparse(self.row(i)));
        }
        ech.null_space(self.cols)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        let mut ech = Echelon::new(n);
        for i in 0..n {
            ech.insert(to_sparse(self.row(i)));
        }
        if ech.rank() < n {
            return Err(LinalgError::Singular);
        }
        for j in 0..n {
            let rows = (0..n).map(|i| (to_sparse(self.row(i)), if i == j { CycQ8::one() } else { CycQ8::zero() }));
            let s = solve_sparse(n, rows)?;
            cols.push(s.particular);
        }
        Ok(Matrix::from_columns(n, &cols))
    }

    pub fn to_complex_string(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("[{}]\n", r.join(", ")));
        }
        s
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<CycQ8>> = Deserialize::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycQ8 {
        CycQ8::from_int(n)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(CycQ8::is_zero));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let rows = vec![(vec![(0, c(1)), (1, c(1))], c(3)), (vec![(0, c(1)), (1, c(-1))], c(1))];
        let s = solve_sparse(2, rows).unwrap();
        assert_eq!(s.particular, vec![c(2), c(1)]);
        assert!(s.kernel.is_empty());
        let bad = vec![(vec![(0, c(1))], c(1)), (vec![(0, c(2))], c(3))];
        assert!(matches!(solve_sparse(1, bad), Err(LinalgError::Inconsistent)));
    }

    #[test]
    fn inverse_with_cyclotomic_entries() {
        let h = Matrix::from_rows(vec![
            vec![CycQ8::inv_sqrt2(), CycQ8::inv_sqrt2()],
            vec![CycQ8::inv_sqrt2(), -CycQ8::inv_sqrt2()],
        ])
        .unwrap();
        assert_eq!(h.inverse().unwrap(), h);
        assert!(h.is_unitary());
        assert!(matches!(Matrix::from_ints(&[&[1, 1], &[1, 1]]).inverse(), Err(LinalgError::Singular)));
    }

    #[test]
    fn kron_shape() {
        let a = Matrix::from_ints(&[&[1, 2]]);
        let b = Matrix::from_ints(&[&[0], &[1]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, Matrix::from_ints(&[&[0, 0], &[1, 2]]));
    }
}
