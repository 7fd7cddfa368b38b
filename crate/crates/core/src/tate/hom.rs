//! `B`-linear Hom complexes from a window of `P` into `Σ^n σ_{≤-depth} P`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{FreeResolution, TateError};
use crate::field::Field;
use crate::linalg::{self, normalize_sparse, Echelon, Insert, Matrix, SparseVec};

/// Per source degree `i`, the images of the generators of `P^i` in `P^{i+n}`.
pub(crate) type Blocks<E> = BTreeMap<i64, Vec<Vec<E>>>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Block {
    /// source degree
    pub i: i64,
    /// `P^i = P^{-s}`
    pub s: usize,
    /// target `P^{-t}`
    pub t: usize,
    pub offset: usize,
}

/// `Hom_B(P^{[lo, hi]}, Σ^n σ_{≤-depth} P)` with the differential
/// `d f = d_T f - (-1)^k f ∂`, `d_T = (-1)^n ∂`.
pub(crate) struct Window<'a, F: Field> {
    pub res: &'a FreeResolution<F>,
    pub n: i64,
    pub depth: usize,
    pub lo: i64,
    pub hi: i64,
}

fn sign<F: Field>(f: &F, e: i64) -> F::Elem {
    if e.rem_euclid(2) == 0 {
        f.one()
    } else {
        f.neg(&f.one())
    }
}

impl<'a, F: Field> Window<'a, F> {
    pub fn new(res: &'a FreeResolution<F>, n: i64, depth: usize, lo: i64, hi: i64) -> Result<Self, TateError> {
        let w = Window { res, n, depth, lo, hi };
        let have = res.length();
        for i in lo..=hi {
            let s = (-i) as usize;
            if s > have {
                return Err(TateError::ResolutionTooShort { needed: s, have });
            }
            for k in -1..=1 {
                if let Some(t) = w.target(i + k + n) {
                    if t > have {
                        return Err(TateError::ResolutionTooShort { needed: t, have });
                    }
                }
            }
        }
        for k in -1..=1 {
            let dim = w.dim(k);
            if dim > res.budget() {
                return Err(TateError::Budget { dim, budget: res.budget() });
            }
        }
        Ok(w)
    }

    /// `P^j` as a component of the target, if present.
    pub fn target(&self, j: i64) -> Option<usize> {
        (j <= -(self.depth as i64) && j <= 0).then_some((-j) as usize)
    }

    pub fn layout(&self, k: i64) -> Vec<Block> {
        let mut out = Vec::new();
        let mut offset = 0;
        for i in self.lo..=self.hi {
            if let Some(t) = self.target(i + k + self.n) {
                let s = (-i) as usize;
                out.push(Block { i, s, t, offset });
                offset += self.res.rank(s) * self.res.dim(t);
            }
        }
        out
    }

    pub fn dim(&self, k: i64) -> usize {
        self.layout(k).iter().map(|b| self.res.rank(b.s) * self.res.dim(b.t)).sum()
    }

    /// Columns of `d^k : Hom^k → Hom^{k+1}`.
    pub fn differential(&self, k: i64) -> Vec<SparseVec<F::Elem>> {
        let res = self.res;
        let f = res.field();
        let d = res.ring().dim();
        let next = self.layout(k + 1);
        let find = |i: i64| next.iter().find(|b| b.i == i).copied();
        let sn = sign(f, self.n);
        let sk = f.neg(&sign(f, k));
        let mut cols = Vec::with_capacity(self.dim(k));
        for b in self.layout(k) {
            let up = find(b.i).filter(|_| b.t >= 1);
            let left = if b.i > self.lo { find(b.i - 1) } else { None };
            // adjacency[g] = (g', coefficient of e_g in ∂ e_{g'}) for g' generating P^{i-1}
            let mut adjacency: Vec<Vec<(usize, SparseVec<F::Elem>)>> = vec![Vec::new(); res.rank(b.s)];
            if left.is_some() {
                for gp in 0..res.rank(b.s + 1) {
                    let mut per: BTreeMap<usize, SparseVec<F::Elem>> = BTreeMap::new();
                    for (idx, x) in res.image(b.s + 1, gp) {
                        per.entry(idx / d).or_default().push((idx % d, x.clone()));
                    }
                    for (g, c) in per {
                        adjacency[g].push((gp, c));
                    }
                }
            }
            let tdim = res.dim(b.t);
            for g in 0..res.rank(b.s) {
                for c in 0..tdim {
                    let mut col = Vec::new();
                    if let Some(u) = up {
                        let rows = res.dim(b.t - 1);
                        for (r, x) in &res.diff_columns(b.t)[c] {
                            col.push((u.offset + g * rows + r, f.mul(&sn, x)));
                        }
                    }
                    if let Some(l) = left {
                        let (h, beta) = (c / d, c % d);
                        for (gp, coef) in &adjacency[g] {
                            for (gamma, y) in coef {
                                let sy = f.mul(&sk, y);
                                for (delta, m) in res.basis_mult(*gamma, beta) {
                                    col.push((l.offset + gp * tdim + h * d + delta, f.mul(&sy, m)));
                                }
                            }
                        }
                    }
                    cols.push(normalize_sparse(f, col));
                }
            }
        }
        cols
    }

    /// Degree-0 cochain with the given blocks; blocks outside the layout are dropped.
    pub fn flatten(&self, blocks: &Blocks<F::Elem>) -> SparseVec<F::Elem> {
        let f = self.res.field();
        let mut out = Vec::new();
        for b in self.layout(0) {
            let Some(imgs) = blocks.get(&b.i) else { continue };
            let tdim = self.res.dim(b.t);
            for (g, v) in imgs.iter().enumerate() {
                for (c, x) in v.iter().enumerate() {
                    if !f.is_zero(x) {
                        out.push((b.offset + g * tdim + c, x.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn unflatten(&self, v: &[(usize, F::Elem)]) -> Blocks<F::Elem> {
        let f = self.res.field();
        let layout = self.layout(0);
        let mut out: Blocks<F::Elem> = BTreeMap::new();
        for b in &layout {
            out.insert(b.i, vec![vec![f.zero(); self.res.dim(b.t)]; self.res.rank(b.s)]);
        }
        for (idx, x) in v {
            let b = layout.iter().rev().find(|b| b.offset <= *idx).expect("index inside the layout");
            let tdim = self.res.dim(b.t);
            let r = idx - b.offset;
            out.get_mut(&b.i).unwrap()[r / tdim][r % tdim] = x.clone();
        }
        out
    }
}

/// `H^0` of a window, with cocycle representatives of a basis.
///
/// A cocycle is determined by its coordinates at the non-pivot columns of the
/// echelon form of `d^0`, so `H^0` is that coordinate space modulo the
/// projected boundaries. Classes are read off there.
pub(crate) struct H0<F: Field> {
    /// `free_index[c]` is the position of column `c` among the free columns.
    free_index: Vec<Option<usize>>,
    nfree: usize,
    /// Projected boundaries.
    boundary: Echelon<F>,
    /// Free position of the unit vector behind each representative.
    rep_free: Vec<usize>,
    pub reps: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> H0<F> {
    pub fn compute(w: &Window<'_, F>) -> Self {
        let f = w.res.field().clone();
        let dim0 = w.dim(0);
        let dim1 = w.dim(1);
        let d0 = Matrix::from_sparse_cols(&f, dim1, dim0, w.differential(0));
        let kernel = linalg::row_echelon(&f, &d0);
        let mut free_index = vec![None; dim0];
        let mut free_cols = Vec::new();
        for (c, slot) in free_index.iter_mut().enumerate() {
            if !kernel.is_pivot_col(c) {
                *slot = Some(free_cols.len());
                free_cols.push(c);
            }
        }
        let nfree = free_cols.len();
        let mut h = H0 { free_index, nfree, boundary: Echelon::new(f.clone(), nfree), rep_free: Vec::new(), reps: Vec::new() };
        let mut bcols: Vec<SparseVec<F::Elem>> = w.differential(-1).iter().map(|c| h.project(c)).collect();
        bcols.sort_by_key(|c| c.len());
        for c in &bcols {
            h.boundary.insert(c);
        }
        for (k, &fc) in free_cols.iter().enumerate() {
            if h.boundary.is_pivot_col(k) {
                continue;
            }
            let v = kernel.back_substitute(|c| if c == fc { f.one() } else { f.zero() }, None);
            h.reps.push(linalg::sparse_from_dense(&f, &v));
            h.rep_free.push(k);
        }
        h
    }

    fn project(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        v.iter().filter_map(|(c, x)| self.free_index[*c].map(|k| (k, x.clone()))).collect()
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Cohomology coordinates of a cocycle.
    pub fn coordinates(&mut self, v: &[(usize, F::Elem)]) -> Option<Vec<F::Elem>> {
        let f = self.boundary.field().clone();
        let r = self.boundary.reduce(&self.project(v));
        let mut out = vec![f.zero(); self.dim()];
        for (k, x) in r {
            let slot = self.rep_free.binary_search(&k).ok()?;
            out[slot] = x;
        }
        Some(out)
    }

    /// Rank of the span of the given cocycles modulo boundaries.
    pub fn rank_modulo_boundaries(&mut self, vs: &[SparseVec<F::Elem>]) -> usize {
        let f = self.boundary.field().clone();
        let mut e = Echelon::new(f, self.nfree);
        for v in vs {
            let r = self.boundary.reduce(&self.project(v));
            e.insert(&r);
        }
        e.rank()
    }
}

/// Solves `A x_k = b_k` for all `k`, `A` given by sparse columns with `nrows` rows.
pub(crate) fn solve_many<F: Field>(
    field: &F,
    nrows: usize,
    cols: &[SparseVec<F::Elem>],
    rhs: &[SparseVec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>, usize> {
    let ncols = cols.len();
    let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c {
            rows[*i].push((j, x.clone()));
        }
    }
    for (k, b) in rhs.iter().enumerate() {
        for (i, x) in b {
            rows[*i].push((ncols + k, x.clone()));
        }
    }
    let mut e = Echelon::with_pivot_limit(field.clone(), ncols + rhs.len(), ncols);
    let mut inconsistent = 0;
    rows.sort_by_key(|r| r.len());
    for r in &rows {
        if e.insert(r) == Insert::Inconsistent {
            inconsistent += 1;
        }
    }
    if inconsistent > 0 {
        return Err(inconsistent);
    }
    Ok((0..rhs.len()).map(|k| e.back_substitute(|_| field.zero(), Some(ncols + k))).collect())
}

/// Extends a cocycle `f` defined on source degrees `≥ from` down to degree `to`,
/// solving `(-1)^n ∂ f_i = f_{i+1} ∂` one degree at a time.
pub(crate) fn extend_down<F: Field>(
    res: &FreeResolution<F>,
    n: i64,
    depth: usize,
    blocks: &mut Blocks<F::Elem>,
    from: i64,
    to: i64,
) -> Result<(), TateError> {
    let f = res.field();
    let d = res.ring().dim();
    let w = Window { res, n, depth, lo: to, hi: from };
    let have = res.length();
    let sn = sign(f, n);
    for i in (to..from).rev() {
        blocks.remove(&i);
        let s = (-i) as usize;
        if s > have {
            return Err(TateError::ResolutionTooShort { needed: s, have });
        }
        let Some(t) = w.target(i + n) else { continue };
        if t > have {
            return Err(TateError::ResolutionTooShort { needed: t, have });
        }
        if w.target(i + n + 1).is_none() || t == 0 {
            continue;
        }
        let Some(above) = blocks.get(&(i + 1)) else { continue };
        let above: Vec<SparseVec<F::Elem>> = above.iter().map(|v| linalg::sparse_from_dense(f, v)).collect();
        let mut rhs = Vec::with_capacity(res.rank(s));
        for g in 0..res.rank(s) {
            let mut acc = Vec::new();
            for (idx, x) in res.image(s, g) {
                let sx = f.mul(&sn, x);
                for (c, y) in res.left_basis_act(idx % d, &above[idx / d]) {
                    acc.push((c, f.mul(&sx, &y)));
                }
            }
            rhs.push(normalize_sparse(f, acc));
        }
        let sol = solve_many(f, res.dim(t - 1), res.diff_columns(t), &rhs).map_err(|_| TateError::NotChainMap { degree: i })?;
        blocks.insert(i, sol);
    }
    Ok(())
}
