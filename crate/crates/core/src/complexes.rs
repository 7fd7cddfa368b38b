//! Bounded cochain complexes of finite-dimensional vector spaces.
//!
//! A differential `d^i : C^i -> C^{i+1}` is a `dim C^{i+1} x dim C^i` matrix
//! acting on column vectors. Suspension follows `(Σ^n C)^i = C^{i+n}` with
//! differential multiplied by `(-1)^n`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FinDimAlgebra;
use crate::field::Field;
use crate::linalg::{self, Matrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("differential in degree {degree} has shape {got:?}, expected {expected:?}")]
    Shape { degree: i64, expected: (usize, usize), got: (usize, usize) },
    #[error("d∘d is nonzero starting in degree {degree}")]
    NotComplex { degree: i64 },
    #[error("map does not commute with the differentials in degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("the Koszul complex needs a commutative algebra")]
    NotCommutative,
    #[error("expected a complex supported in two adjacent degrees")]
    NotTwoTerm,
    #[error("element vector has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Keep degrees `<= q`.
    Le,
    /// Keep degrees `> q`.
    Gt,
}

fn sign<F: Field>(field: &F, n: i64) -> F::Elem {
    if n.rem_euclid(2) == 0 {
        field.one()
    } else {
        field.from_i64(-1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex<F: Field> {
    field: F,
    lo: i64,
    dims: Vec<usize>,
    // diffs[k] : C^{lo+k} -> C^{lo+k+1}, for k + 1 < dims.len()
    diffs: Vec<Matrix<F::Elem>>,
}

impl<F: Field> CochainComplex<F> {
    /// Components `C^lo, ..., C^{lo+dims.len()-1}`; `diffs` has one fewer entry.
    pub fn new(field: F, lo: i64, dims: Vec<usize>, diffs: Vec<Matrix<F::Elem>>) -> Result<Self, ComplexError> {
        let c = Self::new_unchecked(field, lo, dims, diffs)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Shape checks only; the caller vouches for `d∘d = 0`.
    pub fn new_unchecked(
        field: F,
        lo: i64,
        dims: Vec<usize>,
        diffs: Vec<Matrix<F::Elem>>,
    ) -> Result<Self, ComplexError> {
        let expected_len = dims.len().saturating_sub(1);
        if diffs.len() != expected_len {
            return Err(ComplexError::Shape { degree: lo, expected: (expected_len, 0), got: (diffs.len(), 0) });
        }
        for (k, m) in diffs.iter().enumerate() {
            let expected = (dims[k + 1], dims[k]);
            if (m.rows(), m.cols()) != expected {
                return Err(ComplexError::Shape { degree: lo + k as i64, expected, got: (m.rows(), m.cols()) });
            }
        }
        Ok(CochainComplex { field, lo, dims, diffs })
    }

    pub fn zero(field: F) -> Self {
        CochainComplex { field, lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    /// A single space placed in degree `deg`.
    pub fn concentrated(field: F, deg: i64, dim: usize) -> Self {
        CochainComplex { field, lo: deg, dims: vec![dim], diffs: Vec::new() }
    }

    pub fn check_square_zero(&self) -> Result<(), ComplexError> {
        for k in 1..self.diffs.len() {
            if !self.diffs[k].mul(&self.field, &self.diffs[k - 1]).is_zero(&self.field) {
                return Err(ComplexError::NotComplex { degree: self.lo + k as i64 - 1 });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|d| *d == 0)
    }

    /// Lowest stored degree (may carry a zero space).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest stored degree; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    /// Degrees with a nonzero component, as `(min, max)`.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = self.degrees().filter(|d| self.dim(*d) > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, deg: i64) -> usize {
        if deg < self.lo || deg > self.hi() {
            0
        } else {
            self.dims[(deg - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d^deg`, or `None` where it is a map between zero-extended spaces.
    pub fn diff_ref(&self, deg: i64) -> Option<&Matrix<F::Elem>> {
        if deg < self.lo || deg >= self.hi() {
            None
        } else {
            Some(&self.diffs[(deg - self.lo) as usize])
        }
    }

    pub fn diff(&self, deg: i64) -> Matrix<F::Elem> {
        match self.diff_ref(deg) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(deg + 1), self.dim(deg)),
        }
    }

    pub fn rank_of_diff(&self, deg: i64) -> usize {
        self.diff_ref(deg).map_or(0, |m| linalg::rank(&self.field, m))
    }

    /// `dim ker d^deg - rank d^{deg-1}` for every stored degree.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let ranks: BTreeMap<i64, usize> = (self.lo - 1..=self.hi()).map(|d| (d, self.rank_of_diff(d))).collect();
        self.degrees().map(|d| (d, self.dim(d) - ranks[&d] - ranks[&(d - 1)])).collect()
    }

    pub fn homology_dim(&self, deg: i64) -> usize {
        self.dim(deg) - self.rank_of_diff(deg) - self.rank_of_diff(deg - 1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|d| if d.rem_euclid(2) == 0 { self.dim(d) as i64 } else { -(self.dim(d) as i64) }).sum()
    }

    /// Brutal truncation; the kept components and differentials are verbatim.
    pub fn truncate(&self, q: i64, side: Side) -> Self {
        let (a, b) = match side {
            Side::Le => (self.lo, q.min(self.hi())),
            Side::Gt => ((q + 1).max(self.lo), self.hi()),
        };
        if a > b {
            return Self::zero(self.field.clone());
        }
        let dims = (a..=b).map(|d| self.dim(d)).collect();
        let diffs = (a..b).map(|d| self.diff(d)).collect();
        CochainComplex { field: self.field.clone(), lo: a, dims, diffs }
    }

    /// `Σ^n C`.
    pub fn shift(&self, n: i64) -> Self {
        let s = sign(&self.field, n);
        CochainComplex {
            field: self.field.clone(),
            lo: self.lo - n,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|m| m.scale(&self.field, &s)).collect(),
        }
    }

    /// Restricts or zero-extends the stored range to `[lo, hi]`, which must
    /// contain the support.
    pub fn with_range(&self, lo: i64, hi: i64) -> Self {
        if let Some((a, b)) = self.support() {
            assert!(lo <= a && b <= hi, "range must contain the support");
        }
        if lo > hi {
            return Self::zero(self.field.clone());
        }
        let dims = (lo..=hi).map(|d| self.dim(d)).collect();
        let diffs = (lo..hi).map(|d| self.diff(d)).collect();
        CochainComplex { field: self.field.clone(), lo, dims, diffs }
    }

    /// `Hom(self, other)` with `Hom^n = Π_i Hom(C^i, D^{i+n})` and
    /// `d f = d_D f - (-1)^n f d_C`. A map `C^i -> D^j` is flattened row-major.
    pub fn hom_complex(&self, other: &Self) -> Self {
        let field = &self.field;
        let layout = HomLayout::new(self, other);
        let mut diffs = Vec::new();
        for n in layout.lo..layout.hi {
            let rows_dim = layout.dim(n + 1);
            let cols_dim = layout.dim(n);
            let s = sign(field, n);
            let mut cols: Vec<SparseVec<F::Elem>> = Vec::with_capacity(cols_dim);
            for (i, r, c) in layout.entries(n) {
                // image of the elementary map E_{r,c}: C^i -> D^{i+n}
                let mut col: SparseVec<F::Elem> = Vec::new();
                // d_D ∘ E: C^i -> D^{i+n+1}
                if let Some(dd) = other.diff_ref(i + n) {
                    let base = layout.offset(n + 1, i);
                    let ncols = self.dim(i);
                    for rr in 0..dd.rows() {
                        let x = dd.entry(field, rr, r);
                        if !field.is_zero(&x) {
                            col.push((base + rr * ncols + c, x));
                        }
                    }
                }
                // -(-1)^n E ∘ d_C: C^{i-1} -> D^{i+n}
                if let Some(dc) = self.diff_ref(i - 1) {
                    let base = layout.offset(n + 1, i - 1);
                    let ncols = self.dim(i - 1);
                    for cc in 0..dc.cols() {
                        let x = dc.entry(field, c, cc);
                        if !field.is_zero(&x) {
                            col.push((base + r * ncols + cc, field.neg(&field.mul(&s, &x))));
                        }
                    }
                }
                cols.push(col);
            }
            diffs.push(Matrix::from_sparse_cols(field, rows_dim, cols_dim, cols));
        }
        let dims = (layout.lo..=layout.hi).map(|n| layout.dim(n)).collect();
        CochainComplex { field: field.clone(), lo: layout.lo, dims, diffs }
    }

    /// Splits a vector of `Hom(self, other)^n` into its matrices `C^i -> D^{i+n}`.
    pub fn hom_vector_to_maps(&self, other: &Self, n: i64, v: &[F::Elem]) -> BTreeMap<i64, Matrix<F::Elem>> {
        let layout = HomLayout::new(self, other);
        let mut out = BTreeMap::new();
        for i in self.degrees() {
            let (r, c) = (other.dim(i + n), self.dim(i));
            let base = layout.offset(n, i);
            out.insert(i, Matrix::from_dense(&self.field, r, c, v[base..base + r * c].to_vec()));
        }
        out
    }

    /// Degree-`n` vector of `Hom(self, other)` for the given component matrices.
    pub fn maps_to_hom_vector(&self, other: &Self, n: i64, maps: &BTreeMap<i64, Matrix<F::Elem>>) -> Vec<F::Elem> {
        let layout = HomLayout::new(self, other);
        let mut v = vec![self.field.zero(); layout.dim(n)];
        for (i, m) in maps {
            if self.dim(*i) == 0 || other.dim(i + n) == 0 {
                continue;
            }
            let base = layout.offset(n, *i);
            for (k, x) in m.to_dense(&self.field).into_iter().enumerate() {
                v[base + k] = x;
            }
        }
        v
    }
}

struct HomLayout {
    lo: i64,
    hi: i64,
    src_lo: i64,
    src_hi: i64,
    // offsets[(n, i)] = start of Hom(C^i, D^{i+n}) inside Hom^n
    offsets: BTreeMap<(i64, i64), usize>,
    dims: BTreeMap<i64, usize>,
    blocks: BTreeMap<(i64, i64), (usize, usize)>,
}

impl HomLayout {
    fn new<F: Field>(c: &CochainComplex<F>, d: &CochainComplex<F>) -> Self {
        let lo = d.lo - c.hi();
        let hi = d.hi() - c.lo;
        let (lo, hi) = if c.dims.is_empty() || d.dims.is_empty() { (0, -1) } else { (lo, hi) };
        let mut offsets = BTreeMap::new();
        let mut dims = BTreeMap::new();
        let mut blocks = BTreeMap::new();
        for n in lo - 1..=hi + 1 {
            let mut off = 0;
            for i in c.lo - 1..=c.hi() + 1 {
                offsets.insert((n, i), off);
                let (r, k) = (d.dim(i + n), c.dim(i));
                blocks.insert((n, i), (r, k));
                off += r * k;
            }
            dims.insert(n, off);
        }
        HomLayout { lo, hi, src_lo: c.lo, src_hi: c.hi(), offsets, dims, blocks }
    }

    fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    fn offset(&self, n: i64, i: i64) -> usize {
        self.offsets[&(n, i)]
    }

    /// `(i, row, col)` for each basis element of `Hom^n`, in index order.
    fn entries(&self, n: i64) -> Vec<(i64, usize, usize)> {
        let mut out = Vec::with_capacity(self.dim(n));
        for i in self.src_lo..=self.src_hi {
            let (r, k) = self.blocks[&(n, i)];
            for rr in 0..r {
                for cc in 0..k {
                    out.push((i, rr, cc));
                }
            }
        }
        out
    }
}

/// A degree-zero chain map, one matrix per source degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F: Field> {
    source: CochainComplex<F>,
    target: CochainComplex<F>,
    maps: BTreeMap<i64, Matrix<F::Elem>>,
}

impl<F: Field> ChainMap<F> {
    /// Missing degrees are zero maps. Checks shapes and `d f = f d`.
    pub fn new(
        source: CochainComplex<F>,
        target: CochainComplex<F>,
        maps: BTreeMap<i64, Matrix<F::Elem>>,
    ) -> Result<Self, ComplexError> {
        let mut full = BTreeMap::new();
        for i in source.degrees() {
            let m = maps.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(target.dim(i), source.dim(i)));
            let expected = (target.dim(i), source.dim(i));
            if (m.rows(), m.cols()) != expected {
                return Err(ComplexError::Shape { degree: i, expected, got: (m.rows(), m.cols()) });
            }
            full.insert(i, m);
        }
        let f = ChainMap { source, target, maps: full };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), ComplexError> {
        let field = self.source.field();
        for i in self.source.lo - 1..=self.source.hi() {
            let a = self.target.diff(i).mul(field, &self.map(i));
            let b = self.map(i + 1).mul(field, &self.source.diff(i));
            if !a.eq_exact(field, &b) {
                return Err(ComplexError::NotChainMap { degree: i });
            }
        }
        Ok(())
    }

    pub fn identity(c: &CochainComplex<F>) -> Self {
        let maps = c.degrees().map(|i| (i, Matrix::identity(c.field(), c.dim(i)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn source(&self) -> &CochainComplex<F> {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex<F> {
        &self.target
    }

    pub fn map(&self, i: i64) -> Matrix<F::Elem> {
        self.maps.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(self.target.dim(i), self.source.dim(i)))
    }

    pub fn maps(&self) -> &BTreeMap<i64, Matrix<F::Elem>> {
        &self.maps
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap<F>) -> Result<ChainMap<F>, ComplexError> {
        let field = self.source.field();
        let maps = self.source.degrees().map(|i| (i, other.map(i).mul(field, &self.map(i)))).collect();
        ChainMap::new(self.source.clone(), other.target.clone(), maps)
    }

    pub fn eq_exact(&self, other: &ChainMap<F>) -> bool {
        let field = self.source.field();
        let lo = self.source.lo.min(other.source.lo);
        let hi = self.source.hi().max(other.source.hi());
        (lo..=hi).all(|i| self.map(i).eq_exact(field, &other.map(i)))
    }

    /// The mapping cone: `Cone^i = X^{i+1} ⊕ Y^i`, `d = [[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self) -> CochainComplex<F> {
        let field = self.source.field().clone();
        let (x, y) = (&self.source, &self.target);
        let lo = (x.lo - 1).min(y.lo);
        let hi = (x.hi() - 1).max(y.hi());
        if x.dims.is_empty() && y.dims.is_empty() {
            return CochainComplex::zero(field);
        }
        let dim = |i: i64| x.dim(i + 1) + y.dim(i);
        let mut diffs = Vec::new();
        let minus = field.from_i64(-1);
        for i in lo..hi {
            let (xa, ya, xb) = (x.dim(i + 1), y.dim(i), x.dim(i + 2));
            let dx = x.diff(i + 1).to_rows(&field);
            let f = self.map(i + 1).to_rows(&field);
            let dy = y.diff(i).to_rows(&field);
            let mut rows: Vec<SparseVec<F::Elem>> = Vec::with_capacity(dim(i + 1));
            for r in dx.into_iter().take(xb) {
                rows.push(r.into_iter().map(|(c, v)| (c, field.mul(&v, &minus))).collect());
            }
            for (fr, yr) in f.into_iter().zip(dy) {
                let mut row = fr;
                row.extend(yr.into_iter().map(|(c, v)| (c + xa, v)));
                rows.push(row);
            }
            diffs.push(Matrix::from_sparse_rows(&field, dim(i + 1), xa + ya, rows));
        }
        let dims = (lo..=hi).map(dim).collect();
        CochainComplex { field, lo, dims, diffs }
    }
}

/// The quotient `σ≤q C -> σ≤{q-1} C`: identity below `q`, zero in degree `q`.
pub fn truncation_quotient_map<F: Field>(c: &CochainComplex<F>, q: i64) -> ChainMap<F> {
    let src = c.truncate(q, Side::Le);
    let tgt = c.truncate(q - 1, Side::Le);
    let maps = src
        .degrees()
        .map(|i| {
            let m = if i < q { Matrix::identity(c.field(), c.dim(i)) } else { Matrix::zeros(tgt.dim(i), src.dim(i)) };
            (i, m)
        })
        .collect();
    ChainMap::new(src, tgt, maps).expect("the truncation quotient is a chain map")
}

/// Dimension of chain maps `C -> D` modulo null-homotopic ones, found by
/// solving the defining linear conditions directly.
pub fn chain_maps_modulo_homotopy_dim<F: Field>(c: &CochainComplex<F>, d: &CochainComplex<F>) -> usize {
    let field = c.field();
    // unknowns: f_i entries, indexed block by block
    let degs: Vec<i64> = c.degrees().collect();
    let mut fblock = BTreeMap::new();
    let mut nf = 0;
    for &i in &degs {
        fblock.insert(i, nf);
        nf += d.dim(i) * c.dim(i);
    }
    // equations: (d_D f_i - f_{i+1} d_C)[r][s] = 0 for C^i -> D^{i+1}
    let mut eqs: Vec<SparseVec<F::Elem>> = Vec::new();
    for i in c.lo - 1..=c.hi() {
        let ddi = d.diff(i);
        let dci = c.diff(i);
        for r in 0..d.dim(i + 1) {
            for s in 0..c.dim(i) {
                let mut row = Vec::new();
                for k in 0..d.dim(i) {
                    let x = ddi.entry(field, r, k);
                    if !field.is_zero(&x) {
                        row.push((fblock[&i] + k * c.dim(i) + s, x));
                    }
                }
                for k in 0..c.dim(i + 1) {
                    let x = dci.entry(field, k, s);
                    if !field.is_zero(&x) {
                        row.push((fblock[&(i + 1)] + r * c.dim(i + 1) + k, field.neg(&x)));
                    }
                }
                if !row.is_empty() {
                    eqs.push(row);
                }
            }
        }
    }
    let cycles = nf - linalg::rank(field, &Matrix::from_sparse_rows(field, eqs.len(), nf, eqs));
    // homotopies h_i : C^i -> D^{i-1}; f_i = d_D h_i + h_{i+1} d_C
    let mut hcols: Vec<SparseVec<F::Elem>> = Vec::new();
    for i in c.lo..=c.hi() + 1 {
        for r in 0..d.dim(i - 1) {
            for s in 0..c.dim(i) {
                let mut col = Vec::new();
                // contributes to f_{i} via d_D^{i-1} h_i
                if fblock.contains_key(&i) {
                    let dd = d.diff(i - 1);
                    for k in 0..d.dim(i) {
                        let x = dd.entry(field, k, r);
                        if !field.is_zero(&x) {
                            col.push((fblock[&i] + k * c.dim(i) + s, x));
                        }
                    }
                }
                // and to f_{i-1} via h_i d_C^{i-1}
                if fblock.contains_key(&(i - 1)) {
                    let dc = c.diff(i - 1);
                    for k in 0..c.dim(i - 1) {
                        let x = dc.entry(field, s, k);
                        if !field.is_zero(&x) {
                            col.push((fblock[&(i - 1)] + r * c.dim(i - 1) + k, x));
                        }
                    }
                }
                hcols.push(col);
            }
        }
    }
    let nh = hcols.len();
    let boundaries = linalg::rank(field, &Matrix::from_sparse_cols(field, nf, nh, hcols));
    cycles - boundaries
}

/// `K(B; f_1, ..., f_r)`: component `B ⊗ Λ^j` in degree `-j`, basis ordered
/// by subset (as a bitmask, ascending) then by basis of `B`. The differential
/// contracts `e_{i_1} ∧ ... ∧ e_{i_j}` to `Σ_t (-1)^{t+1} f_{i_t} (... ê_{i_t} ...)`.
pub fn koszul<F: Field>(b: &FinDimAlgebra<F>, elems: &[Vec<F::Elem>]) -> Result<CochainComplex<F>, ComplexError> {
    if !b.is_commutative() {
        return Err(ComplexError::NotCommutative);
    }
    for e in elems {
        if e.len() != b.dim() {
            return Err(ComplexError::Length { expected: b.dim(), got: e.len() });
        }
    }
    let field = b.field();
    let r = elems.len();
    let d = b.dim();
    let subsets_of = |j: usize| -> Vec<u32> { (0u32..(1 << r)).filter(|m| m.count_ones() as usize == j).collect() };
    let mult: Vec<Matrix<F::Elem>> = elems.iter().map(|f| b.left_mult_matrix(f)).collect();
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for j in (0..=r).rev() {
        dims.push(binomial(r, j) * d);
    }
    // degree -j -> -j+1
    for j in (1..=r).rev() {
        let src = subsets_of(j);
        let tgt = subsets_of(j - 1);
        let tindex: BTreeMap<u32, usize> = tgt.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); tgt.len() * d];
        for (si, &s) in src.iter().enumerate() {
            let mut t = 0;
            for i in 0..r {
                if s & (1 << i) == 0 {
                    continue;
                }
                t += 1;
                let sg = if t % 2 == 1 { field.one() } else { field.from_i64(-1) };
                let ti = tindex[&(s & !(1 << i))];
                for (rr, row) in mult[i].to_rows(field).into_iter().enumerate() {
                    for (cc, x) in row {
                        rows[ti * d + rr].push((si * d + cc, field.mul(&sg, &x)));
                    }
                }
            }
        }
        diffs.push(Matrix::from_sparse_rows(field, tgt.len() * d, src.len() * d, rows));
    }
    CochainComplex::new(field.clone(), -(r as i64), dims, diffs)
}

fn binomial(n: usize, k: usize) -> usize {
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Homology of the 2-periodic complex `k[u] ⊗ C`, `|u| = 2`, for a complex
/// supported in degrees `a, a+1`: degrees of the parity of `a+1` carry the
/// cokernel of the differential, the others its kernel.
pub fn periodic_unfold<F: Field>(c: &CochainComplex<F>, window: (i64, i64)) -> Result<BTreeMap<i64, usize>, ComplexError> {
    if c.dims.len() != 2 {
        return Err(ComplexError::NotTwoTerm);
    }
    let top = c.hi();
    let rk = c.rank_of_diff(c.lo);
    let coker = c.dim(top) - rk;
    let ker = c.dim(c.lo) - rk;
    Ok((window.0..=window.1).map(|n| (n, if (n - top).rem_euclid(2) == 0 { coker } else { ker })).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, Rationals};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mat(rows: usize, cols: usize, v: &[i64]) -> Matrix<Rational> {
        Matrix::from_dense(&Rationals, rows, cols, v.iter().map(|x| q(*x)).collect())
    }

    fn two_term(m: Matrix<Rational>) -> CochainComplex<Rationals> {
        CochainComplex::new(Rationals, 0, vec![m.cols(), m.rows()], vec![m]).unwrap()
    }

    #[test]
    fn identity_and_zero_two_term() {
        let c = two_term(mat(1, 1, &[1]));
        assert!(c.homology_dims().values().all(|h| *h == 0));
        let z = two_term(mat(1, 1, &[0]));
        assert_eq!(z.homology_dims().values().copied().collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn rejects_nonzero_square() {
        let m = mat(1, 1, &[1]);
        let r = CochainComplex::new(Rationals, 0, vec![1, 1, 1], vec![m.clone(), m]);
        assert_eq!(r.unwrap_err(), ComplexError::NotComplex { degree: 0 });
        let bad = CochainComplex::new(Rationals, 0, vec![2, 1], vec![mat(1, 1, &[1])]);
        assert!(matches!(bad, Err(ComplexError::Shape { .. })));
    }

    #[test]
    fn nilpotent_koszul_on_truncated_cubic() {
        let b = FinDimAlgebra::truncated_polynomial(Rationals, 3);
        let x = b.basis_vector(1);
        let k = koszul(&b, &[x]).unwrap();
        // multiplication by x on k[x]/(x^3) has rank 2
        assert_eq!(k.homology_dims(), BTreeMap::from([(-1, 1), (0, 1)]));
        let k0 = koszul(&b, &[]).unwrap();
        assert_eq!(k0.homology_dims(), BTreeMap::from([(0, 3)]));
    }

    #[test]
    fn koszul_two_elements_is_complex() {
        let b = FinDimAlgebra::truncated_polynomial(Rationals, 4);
        let x = b.basis_vector(1);
        let x2 = b.basis_vector(2);
        let k = koszul(&b, &[x, x2]).unwrap();
        assert_eq!((k.lo(), k.hi()), (-2, 0));
        assert_eq!(k.euler_characteristic(), 4 - 8 + 4);
    }

    #[test]
    fn truncations_account_for_dimensions() {
        let d0 = mat(2, 1, &[1, 0]);
        let d1 = mat(1, 2, &[0, 1]);
        let c = CochainComplex::new(Rationals, -1, vec![1, 2, 1], vec![d0, d1]).unwrap();
        let le = c.truncate(0, Side::Le);
        let gt = c.truncate(0, Side::Gt);
        for d in -2..=2 {
            assert_eq!(c.dim(d), le.dim(d) + gt.dim(d));
        }
        assert_eq!(c.euler_characteristic(), le.euler_characteristic() + gt.euler_characteristic());
        assert_eq!(c.truncate(5, Side::Le), c);
        assert!(c.truncate(-3, Side::Le).is_empty());
    }

    #[test]
    fn quotient_maps_compose() {
        let d0 = mat(2, 1, &[1, 0]);
        let d1 = mat(1, 2, &[0, 1]);
        let c = CochainComplex::new(Rationals, -1, vec![1, 2, 1], vec![d0, d1]).unwrap();
        let id = truncation_quotient_map(&c, 4);
        assert!(id.eq_exact(&ChainMap::identity(&c)));
        let a = truncation_quotient_map(&c, 1);
        let b = truncation_quotient_map(&c, 0);
        let ab = a.then(&b).unwrap();
        assert_eq!(ab.target().hi(), -1);
        assert!(ab.map(-1).eq_exact(&Rationals, &Matrix::identity(&Rationals, 1)));
        assert_eq!(ab.map(0).rows(), 0);
    }

    #[test]
    fn hom_complex_examples() {
        let k = CochainComplex::concentrated(Rationals, 0, 1);
        assert_eq!(k.hom_complex(&k).homology_dims(), BTreeMap::from([(0, 1)]));
        let c = two_term(mat(1, 1, &[1]));
        let cone = ChainMap::identity(&c).cone();
        assert!(cone.homology_dims().values().all(|h| *h == 0));
        assert!(cone.hom_complex(&cone).homology_dims().values().all(|h| *h == 0));
        // zero differentials: Hom^n dims are sums of products of component dims
        let a = two_term(Matrix::zeros(3, 2));
        let b = two_term(Matrix::zeros(1, 2));
        let h = a.hom_complex(&b);
        assert_eq!(h.dim(-1), 3 * 2);
        assert_eq!(h.dim(0), 2 * 2 + 3 * 1);
        assert_eq!(h.dim(1), 2 * 1);
        assert!(h.degrees().all(|n| h.rank_of_diff(n) == 0));
    }

    #[test]
    fn hom_h0_matches_direct_solver() {
        let d0 = mat(2, 1, &[1, 1]);
        let d1 = mat(1, 2, &[1, -1]);
        let c = CochainComplex::new(Rationals, -1, vec![1, 2, 1], vec![d0, d1]).unwrap();
        let e = two_term(mat(2, 2, &[0, 1, 0, 0]));
        for (x, y) in [(&c, &e), (&e, &c), (&c, &c), (&e, &e)] {
            let h = x.hom_complex(y);
            assert_eq!(h.homology_dim(0), chain_maps_modulo_homotopy_dim(x, y));
        }
    }

    #[test]
    fn shift_negates_odd() {
        let c = two_term(mat(1, 1, &[2]));
        let s = c.shift(1);
        assert_eq!(s.lo(), -1);
        assert_eq!(s.diff(-1).entry(&Rationals, 0, 0), q(-2));
        assert_eq!(c.shift(2).diff(-2).entry(&Rationals, 0, 0), q(2));
    }

    #[test]
    fn unfolding() {
        let z = CochainComplex::new(Rationals, -1, vec![3, 5], vec![Matrix::zeros(5, 3)]).unwrap();
        let u = periodic_unfold(&z, (0, 3)).unwrap();
        assert_eq!(u.values().copied().collect::<Vec<_>>(), vec![5, 3, 5, 3]);
        let id = CochainComplex::new(Rationals, -1, vec![2, 2], vec![Matrix::identity(&Rationals, 2)]).unwrap();
        assert!(periodic_unfold(&id, (-4, 4)).unwrap().values().all(|d| *d == 0));
        assert_eq!(periodic_unfold(&CochainComplex::concentrated(Rationals, 0, 1), (0, 1)), Err(ComplexError::NotTwoTerm));
    }
}
