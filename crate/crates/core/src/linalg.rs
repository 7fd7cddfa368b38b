//! Exact linear algebra over a [`Field`].
//!
//! Matrices are stored densely or as sorted sparse rows; the constructors pick
//! the sparse layout when at most [`DEFAULT_DENSE_PERCENT`] percent of the
//! entries are nonzero. Dense matrices are reduced by Gauss–Jordan
//! elimination, sparse ones by the incremental [`Echelon`].

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::field::Field;

/// Sorted `(column, value)` pairs with no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Matrices with at most this percentage of nonzero entries are stored sparsely.
pub const DEFAULT_DENSE_PERCENT: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage<E> {
    Dense(Vec<E>),
    Sparse(Vec<SparseVec<E>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    storage: Storage<E>,
}

/// Sort, merge duplicates and drop zeros.
pub fn normalize_sparse<F: Field>(field: &F, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx = field.add(lx, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

pub fn sparse_from_dense<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse<F: Field>(field: &F, len: usize, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

impl<E: Clone> Matrix<E> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, storage: Storage::Sparse(vec![Vec::new(); rows]) }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, field.one())]).collect();
        Self::from_sparse_rows(field, n, n, rows)
    }

    /// Row-major dense entries.
    pub fn from_dense<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize, entries: Vec<E>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows x cols");
        let nnz = entries.iter().filter(|x| !field.is_zero(x)).count();
        if is_dense_enough(nnz, rows, cols, DEFAULT_DENSE_PERCENT) {
            Matrix { rows, cols, storage: Storage::Dense(entries) }
        } else {
            let sparse = if cols == 0 {
                vec![Vec::new(); rows]
            } else {
                entries.chunks(cols).map(|r| sparse_from_dense(field, r)).collect()
            };
            Matrix { rows, cols, storage: Storage::Sparse(sparse) }
        }
    }

    pub fn from_fn<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> E,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::from_dense(field, rows, cols, entries)
    }

    pub fn from_sparse_rows<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        data: Vec<SparseVec<E>>,
    ) -> Self {
        Self::from_sparse_rows_with(field, rows, cols, data, DEFAULT_DENSE_PERCENT)
    }

    /// Like [`Matrix::from_sparse_rows`] with an explicit density threshold in percent.
    pub fn from_sparse_rows_with<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        data: Vec<SparseVec<E>>,
        dense_percent: usize,
    ) -> Self {
        assert_eq!(data.len(), rows);
        let data: Vec<_> = data.into_iter().map(|r| normalize_sparse(field, r)).collect();
        debug_assert!(data.iter().all(|r| r.last().map_or(true, |e| e.0 < cols)));
        let nnz: usize = data.iter().map(|r| r.len()).sum();
        if is_dense_enough(nnz, rows, cols, dense_percent) {
            let mut entries = vec![field.zero(); rows * cols];
            for (i, r) in data.into_iter().enumerate() {
                for (j, x) in r {
                    entries[i * cols + j] = x;
                }
            }
            Matrix { rows, cols, storage: Storage::Dense(entries) }
        } else {
            Matrix { rows, cols, storage: Storage::Sparse(data) }
        }
    }

    /// Columns given as sparse vectors of length `rows`.
    pub fn from_sparse_cols<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        data: Vec<SparseVec<E>>,
    ) -> Self {
        assert_eq!(data.len(), cols);
        let mut r: Vec<SparseVec<E>> = vec![Vec::new(); rows];
        for (j, col) in data.into_iter().enumerate() {
            for (i, x) in col {
                r[i].push((j, x));
            }
        }
        Self::from_sparse_rows(field, rows, cols, r)
    }

    pub fn entry<F: Field<Elem = E>>(&self, field: &F, i: usize, j: usize) -> E {
        match &self.storage {
            Storage::Dense(v) => v[i * self.cols + j].clone(),
            Storage::Sparse(r) => match r[i].binary_search_by_key(&j, |e| e.0) {
                Ok(k) => r[i][k].1.clone(),
                Err(_) => field.zero(),
            },
        }
    }

    pub fn row<F: Field<Elem = E>>(&self, field: &F, i: usize) -> SparseVec<E> {
        match &self.storage {
            Storage::Dense(v) => sparse_from_dense(field, &v[i * self.cols..(i + 1) * self.cols]),
            Storage::Sparse(r) => r[i].clone(),
        }
    }

    pub fn to_rows<F: Field<Elem = E>>(&self, field: &F) -> Vec<SparseVec<E>> {
        (0..self.rows).map(|i| self.row(field, i)).collect()
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<E> {
        match &self.storage {
            Storage::Dense(v) => v.clone(),
            Storage::Sparse(r) => {
                let mut out = vec![field.zero(); self.rows * self.cols];
                for (i, row) in r.iter().enumerate() {
                    for (j, x) in row {
                        out[i * self.cols + j] = x.clone();
                    }
                }
                out
            }
        }
    }

    pub fn nnz<F: Field<Elem = E>>(&self, field: &F) -> usize {
        match &self.storage {
            Storage::Dense(v) => v.iter().filter(|x| !field.is_zero(x)).count(),
            Storage::Sparse(r) => r.iter().map(|x| x.len()).sum(),
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.nnz(field) == 0
    }

    pub fn transpose<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let mut cols: Vec<SparseVec<E>> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, x) in self.row(field, i) {
                cols[j].push((i, x));
            }
        }
        Self::from_sparse_rows(field, self.cols, self.rows, cols)
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for (j, x) in self.row(field, i) {
                    field.add_mul_assign(&mut acc, &x, &v[j]);
                }
                acc
            })
            .collect()
    }

    /// `self * other`
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let other_rows = other.to_rows(field);
        let mut acc = vec![field.zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; other.cols];
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            for (k, a) in self.row(field, i) {
                for (j, b) in &other_rows[k] {
                    if !mark[*j] {
                        mark[*j] = true;
                        touched.push(*j);
                    }
                    field.add_mul_assign(&mut acc[*j], &a, b);
                }
            }
            touched.sort_unstable();
            let mut row = Vec::new();
            for &j in &touched {
                let x = core::mem::replace(&mut acc[j], field.zero());
                mark[j] = false;
                if !field.is_zero(&x) {
                    row.push((j, x));
                }
            }
            touched.clear();
            out.push(row);
        }
        Matrix::from_sparse_rows(field, self.rows, other.cols, out)
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(field, i);
                r.extend(other.row(field, i));
                r
            })
            .collect();
        Matrix::from_sparse_rows(field, self.rows, self.cols, rows)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Matrix<E> {
        let rows = (0..self.rows)
            .map(|i| self.row(field, i).into_iter().map(|(j, x)| (j, field.mul(c, &x))).collect())
            .collect();
        Matrix::from_sparse_rows(field, self.rows, self.cols, rows)
    }

    pub fn eq_exact<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| self.row(field, i) == other.row(field, i))
    }
}

fn is_dense_enough(nnz: usize, rows: usize, cols: usize, percent: usize) -> bool {
    let total = rows * cols;
    total > 0 && nnz * 100 > total * percent
}

struct Pivot<E> {
    col: usize,
    row: SparseVec<E>,
}

/// Incrementally built row echelon form.
///
/// Pivot rows are normalized (pivot entry one) and contain no pivot column of
/// any earlier pivot, so reducing a vector pivot by pivot in insertion order
/// terminates and back substitution runs in reverse insertion order.
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    pivot_limit: usize,
    pivots: Vec<Pivot<F::Elem>>,
    pivot_of_col: Vec<usize>,
    col_weight: Option<Vec<usize>>,
    acc: Vec<F::Elem>,
    mark: Vec<bool>,
    touched: Vec<usize>,
}

const NO_PIVOT: usize = usize::MAX;

/// Outcome of [`Echelon::insert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    /// The row was already in the span.
    Dependent,
    /// A new pivot was created.
    Pivot(usize),
    /// The residual is nonzero only in columns that may not hold pivots.
    Inconsistent,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self::with_pivot_limit(field, ncols, ncols)
    }

    /// Only columns `< pivot_limit` may become pivots; the remaining columns
    /// carry right-hand sides.
    pub fn with_pivot_limit(field: F, ncols: usize, pivot_limit: usize) -> Self {
        let zero = field.zero();
        Echelon {
            field,
            ncols,
            pivot_limit,
            pivots: Vec::new(),
            pivot_of_col: vec![NO_PIVOT; ncols],
            col_weight: None,
            acc: vec![zero; ncols],
            mark: vec![false; ncols],
            touched: Vec::new(),
        }
    }

    /// Prefer pivot columns of small weight (e.g. column nonzero counts).
    pub fn set_column_weights(&mut self, w: Vec<usize>) {
        assert_eq!(w.len(), self.ncols);
        self.col_weight = Some(w);
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.iter().map(|p| p.col)
    }

    pub fn is_pivot_col(&self, c: usize) -> bool {
        self.pivot_of_col[c] != NO_PIVOT
    }

    /// Residual of `row` after elimination against every pivot.
    pub fn reduce(&mut self, row: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
        for (c, x) in row {
            if !self.mark[*c] {
                self.mark[*c] = true;
                self.touched.push(*c);
            }
            self.acc[*c] = self.field.add(&self.acc[*c], x);
            if self.pivot_of_col[*c] != NO_PIVOT {
                heap.push(Reverse(self.pivot_of_col[*c]));
            }
        }
        while let Some(Reverse(j)) = heap.pop() {
            let pc = self.pivots[j].col;
            if self.field.is_zero(&self.acc[pc]) {
                continue;
            }
            let coef = core::mem::replace(&mut self.acc[pc], self.field.zero());
            for (k, v) in &self.pivots[j].row {
                if *k == pc {
                    continue;
                }
                if !self.mark[*k] {
                    self.mark[*k] = true;
                    self.touched.push(*k);
                }
                self.field.sub_mul_assign(&mut self.acc[*k], &coef, v);
                let pk = self.pivot_of_col[*k];
                if pk != NO_PIVOT && !self.field.is_zero(&self.acc[*k]) {
                    heap.push(Reverse(pk));
                }
            }
        }
        self.touched.sort_unstable();
        let mut out = Vec::new();
        for &c in &self.touched {
            self.mark[c] = false;
            let x = core::mem::replace(&mut self.acc[c], self.field.zero());
            if !self.field.is_zero(&x) {
                out.push((c, x));
            }
        }
        self.touched.clear();
        out
    }

    pub fn contains(&mut self, row: &[(usize, F::Elem)]) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn insert(&mut self, row: &[(usize, F::Elem)]) -> Insert {
        let residual = self.reduce(row);
        if residual.is_empty() {
            return Insert::Dependent;
        }
        let limit = self.pivot_limit;
        let candidates = residual.iter().filter(|(c, _)| *c < limit);
        let chosen = match &self.col_weight {
            Some(w) => candidates.min_by_key(|(c, _)| (w[*c], *c)).map(|e| e.0),
            None => candidates.map(|e| e.0).next(),
        };
        let Some(col) = chosen else {
            return Insert::Inconsistent;
        };
        let lead = residual.iter().find(|e| e.0 == col).unwrap().1.clone();
        let inv = self.field.inv(&lead).expect("nonzero pivot");
        let row = residual.into_iter().map(|(c, x)| (c, self.field.mul(&x, &inv))).collect();
        let idx = self.pivots.len();
        self.pivots.push(Pivot { col, row });
        self.pivot_of_col[col] = idx;
        Insert::Pivot(idx)
    }

    /// Solves the inserted system for the columns below the pivot limit.
    ///
    /// Non-pivot columns take `free(col)`; `rhs_col` names the column holding
    /// the right-hand side (absent means a homogeneous system).
    pub fn back_substitute(
        &self,
        mut free: impl FnMut(usize) -> F::Elem,
        rhs_col: Option<usize>,
    ) -> Vec<F::Elem> {
        let f = &self.field;
        let mut x: Vec<F::Elem> = (0..self.pivot_limit)
            .map(|c| if self.pivot_of_col[c] == NO_PIVOT { free(c) } else { f.zero() })
            .collect();
        for p in self.pivots.iter().rev() {
            let mut v = f.zero();
            for (c, a) in &p.row {
                if *c == p.col {
                    continue;
                }
                if Some(*c) == rhs_col {
                    v = f.add(&v, a);
                } else if *c < self.pivot_limit {
                    f.sub_mul_assign(&mut v, a, &x[*c]);
                }
            }
            x[p.col] = v;
        }
        x
    }

    /// Basis of the solutions of the homogeneous system, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        (0..self.pivot_limit)
            .filter(|c| self.pivot_of_col[*c] == NO_PIVOT)
            .map(|fc| self.back_substitute(|c| if c == fc { f.one() } else { f.zero() }, None))
            .collect()
    }
}

/// Column nonzero counts, used as pivot weights.
fn column_counts<E>(rows: &[SparseVec<E>], ncols: usize) -> Vec<usize> {
    let mut w = vec![0usize; ncols];
    for r in rows {
        for (c, _) in r {
            w[*c] += 1;
        }
    }
    w
}

/// Echelon form of the rows of `m`, rows fed in order of increasing nonzero count.
pub fn row_echelon<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Echelon<F> {
    let mut rows = m.to_rows(field);
    rows.sort_by_key(|r| r.len());
    let mut e = Echelon::new(field.clone(), m.cols());
    e.set_column_weights(column_counts(&rows, m.cols()));
    for r in &rows {
        e.insert(r);
    }
    e
}

/// Gauss–Jordan reduction of a dense matrix; returns the reduced rows and the pivot columns.
fn dense_rref<F: Field>(field: &F, rows: usize, cols: usize, mut a: Vec<F::Elem>, pivot_limit: usize) -> (Vec<F::Elem>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit {
        if r == rows {
            break;
        }
        // fewest nonzeros among candidate pivot rows
        let best = (r..rows)
            .filter(|&i| !field.is_zero(&a[i * cols + c]))
            .min_by_key(|&i| (a[i * cols..(i + 1) * cols].iter().filter(|x| !field.is_zero(x)).count(), i));
        let Some(p) = best else { continue };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(&a[r * cols + c]).unwrap();
        for j in 0..cols {
            a[r * cols + j] = field.mul(&a[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r || field.is_zero(&a[i * cols + c]) {
                continue;
            }
            let coef = a[i * cols + c].clone();
            for j in 0..cols {
                let v = a[r * cols + j].clone();
                field.sub_mul_assign(&mut a[i * cols + j], &coef, &v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    match &m.storage {
        Storage::Dense(v) => dense_rref(field, m.rows, m.cols, v.clone(), m.cols).1.len(),
        Storage::Sparse(_) => row_echelon(field, m).rank(),
    }
}

/// Rank together with a basis of the null space `{x : m x = 0}`.
pub fn rank_and_kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (usize, Vec<Vec<F::Elem>>) {
    match &m.storage {
        Storage::Dense(v) => {
            let (r, pivots) = dense_rref(field, m.rows, m.cols, v.clone(), m.cols);
            let mut is_pivot = vec![None; m.cols];
            for (i, &c) in pivots.iter().enumerate() {
                is_pivot[c] = Some(i);
            }
            let kernel = (0..m.cols)
                .filter(|c| is_pivot[*c].is_none())
                .map(|fc| {
                    let mut x = vec![field.zero(); m.cols];
                    x[fc] = field.one();
                    for (i, &pc) in pivots.iter().enumerate() {
                        x[pc] = field.neg(&r[i * m.cols + fc]);
                    }
                    x
                })
                .collect();
            (pivots.len(), kernel)
        }
        Storage::Sparse(_) => {
            let e = row_echelon(field, m);
            (e.rank(), e.kernel_basis())
        }
    }
}

pub fn cokernel_dim<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    m.rows() - rank(field, m)
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    b: &[F::Elem],
) -> Result<Option<Vec<F::Elem>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), got: b.len() });
    }
    let n = m.cols();
    match &m.storage {
        Storage::Dense(v) => {
            let w = n + 1;
            let mut a = Vec::with_capacity(m.rows() * w);
            for i in 0..m.rows() {
                a.extend_from_slice(&v[i * n..(i + 1) * n]);
                a.push(b[i].clone());
            }
            let (r, pivots) = dense_rref(field, m.rows(), w, a, n);
            for i in pivots.len()..m.rows() {
                if !field.is_zero(&r[i * w + n]) {
                    return Ok(None);
                }
            }
            let mut x = vec![field.zero(); n];
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = r[i * w + n].clone();
            }
            Ok(Some(x))
        }
        Storage::Sparse(_) => {
            let mut rows: Vec<SparseVec<F::Elem>> = m
                .to_rows(field)
                .into_iter()
                .zip(b)
                .map(|(mut r, bi)| {
                    if !field.is_zero(bi) {
                        r.push((n, bi.clone()));
                    }
                    r
                })
                .collect();
            rows.sort_by_key(|r| r.len());
            let mut e = Echelon::with_pivot_limit(field.clone(), n + 1, n);
            e.set_column_weights(column_counts(&rows, n + 1));
            for r in &rows {
                if e.insert(r) == Insert::Inconsistent {
                    return Ok(None);
                }
            }
            Ok(Some(e.back_substitute(|_| field.zero(), Some(n))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mat(rows: usize, cols: usize, v: &[i64]) -> Matrix<Rational> {
        Matrix::from_dense(&Rationals, rows, cols, v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn identity_and_zero() {
        let id = Matrix::identity(&Rationals, 2);
        assert_eq!(rank_and_kernel(&Rationals, &id), (2, vec![]));
        let z = Matrix::<Rational>::zeros(2, 2);
        let (r, k) = rank_and_kernel(&Rationals, &z);
        assert_eq!((r, k.len()), (0, 2));
    }

    #[test]
    fn rank_one_kernel_direction() {
        let m = mat(2, 2, &[1, 2, 2, 4]);
        let (r, k) = rank_and_kernel(&Rationals, &m);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        let v = &k[0];
        assert_eq!(&v[0] * &q(-1), &v[1] * &q(2));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn solve_cases() {
        let id = Matrix::identity(&Rationals, 2);
        assert_eq!(solve(&Rationals, &id, &[q(3), q(5)]).unwrap(), Some(vec![q(3), q(5)]));
        let z = Matrix::<Rational>::zeros(2, 2);
        assert_eq!(solve(&Rationals, &z, &[q(1), q(0)]).unwrap(), None);
        let m = mat(2, 2, &[1, 1, 0, 0]);
        let x = solve(&Rationals, &m, &[q(2), q(0)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], q(2));
        assert!(matches!(
            solve(&Rationals, &m, &[q(1)]),
            Err(LinalgError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn cokernel_cases() {
        assert_eq!(cokernel_dim(&Rationals, &Matrix::identity(&Rationals, 3)), 0);
        assert_eq!(cokernel_dim(&Rationals, &Matrix::<Rational>::zeros(3, 2)), 3);
        assert_eq!(cokernel_dim(&Rationals, &mat(2, 2, &[2, 0, 0, 0])), 1);
    }

    #[test]
    fn storage_selection_follows_density() {
        let sparse = Matrix::from_dense(&Rationals, 4, 4, (0..16).map(|i| q((i == 0) as i64)).collect());
        assert!(sparse.is_sparse());
        assert!(!mat(2, 2, &[1, 2, 3, 4]).is_sparse());
        let always_dense = Matrix::from_sparse_rows_with(&Rationals, 4, 4, vec![vec![(0, q(1))], vec![], vec![], vec![]], 0);
        assert!(!always_dense.is_sparse());
    }

    #[test]
    fn sparse_solve_inconsistent_and_prime_field() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_sparse_rows(&f, 3, 3, vec![vec![(0, 1)], vec![(0, 2)], vec![]]);
        assert!(m.is_sparse());
        assert_eq!(solve(&f, &m, &[1, 3, 0]).unwrap(), None);
        assert_eq!(solve(&f, &m, &[1, 2, 0]).unwrap().map(|x| x[0]), Some(1));
    }

    #[test]
    fn empty_columns_keep_their_rows() {
        let m = Matrix::from_dense(&Rationals, 3, 0, Vec::new());
        assert_eq!(m.to_rows(&Rationals).len(), 3);
        assert_eq!(m.transpose(&Rationals).rows(), 0);
    }

    #[test]
    fn multiply_and_transpose() {
        let a = mat(2, 3, &[1, 2, 0, 0, 1, 1]);
        let b = mat(3, 1, &[1, 1, 1]);
        let c = a.mul(&Rationals, &b);
        assert_eq!(c.to_dense(&Rationals), vec![q(3), q(2)]);
        assert!(a.transpose(&Rationals).transpose(&Rationals).eq_exact(&Rationals, &a));
    }
}
