use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::hom::{extend_down, solve_many, Blocks, Window, H0};
use super::stable::{depth_h0, window_lo};
use super::{FreeResolution, TateError};
use crate::algebra::FinDimAlgebra;
use crate::field::Field;
use crate::linalg::{self, Matrix, SparseVec};

/// A chain map `P → Σ^n σ_{≤-depth} P`, stored on source degrees `lo..=0`.
///
/// Components below `lo` are determined up to homotopy by the stored ones.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularClass<F: Field> {
    n: i64,
    depth: usize,
    lo: i64,
    blocks: Blocks<F::Elem>,
}

impl<F: Field> SingularClass<F> {
    /// Validates the chain-map equations on the stored window.
    pub fn new(
        res: &FreeResolution<F>,
        n: i64,
        depth: usize,
        lo: i64,
        blocks: Blocks<F::Elem>,
    ) -> Result<Self, TateError> {
        let w = Window::new(res, n, depth, lo, 0)?;
        let layout = w.layout(0);
        for (i, imgs) in &blocks {
            let Some(b) = layout.iter().find(|b| b.i == *i) else {
                if imgs.iter().flatten().any(|x| !res.field().is_zero(x)) {
                    return Err(TateError::NotChainMap { degree: *i });
                }
                continue;
            };
            if imgs.len() != res.rank(b.s) || imgs.iter().any(|v| v.len() != res.dim(b.t)) {
                return Err(TateError::NotChainMap { degree: *i });
            }
        }
        let v = w.flatten(&blocks);
        let dv = apply_columns(res.field(), &w.differential(0), &v);
        if let Some((idx, _)) = dv.first() {
            let next = w.layout(1);
            let b = next.iter().rev().find(|b| b.offset <= *idx).unwrap();
            return Err(TateError::NotChainMap { degree: b.i });
        }
        let blocks = w.unflatten(&v);
        Ok(SingularClass { n, depth, lo, blocks })
    }

    /// The identity of `P`: the unit of the degree-0 part.
    pub fn unit(res: &FreeResolution<F>) -> Result<Self, TateError> {
        let f = res.field();
        let d = res.ring().dim();
        let lo = window_lo(0, 0);
        let mut blocks = Blocks::new();
        for i in lo..=0 {
            let s = (-i) as usize;
            if s > res.length() {
                return Err(TateError::ResolutionTooShort { needed: s, have: res.length() });
            }
            let imgs = (0..res.rank(s))
                .map(|g| {
                    let mut v = vec![f.zero(); res.dim(s)];
                    v[g * d..(g + 1) * d].clone_from_slice(res.ring().unit());
                    v
                })
                .collect();
            blocks.insert(i, imgs);
        }
        Self::new(res, 0, 0, lo, blocks)
    }

    pub fn degree(&self) -> i64 {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Generator images of the component `P^i → P^{i+n}` (absent means zero).
    pub fn component(&self, i: i64) -> Option<&[Vec<F::Elem>]> {
        self.blocks.get(&i).map(|v| v.as_slice())
    }

    /// The component `P^i → P^{i+n}` as a matrix over the ground field.
    pub fn component_matrix(&self, res: &FreeResolution<F>, i: i64) -> Matrix<F::Elem> {
        let f = res.field();
        let d = res.ring().dim();
        let s = (-i) as usize;
        let t = (-(i + self.n)) as usize;
        let rows = if i + self.n <= 0 { res.dim(t) } else { 0 };
        let cols = res.dim(s);
        let Some(imgs) = self.blocks.get(&i) else {
            return Matrix::zeros(rows, cols);
        };
        let mut out = Vec::with_capacity(cols);
        for v in imgs {
            let sv = linalg::sparse_from_dense(f, v);
            for b in 0..d {
                out.push(res.left_basis_act(b, &sv));
            }
        }
        Matrix::from_sparse_cols(f, rows, cols, out)
    }

    /// The image under `σ_{≤-depth} → σ_{≤-target}`, re-windowed to start at `lo`.
    pub fn at(&self, res: &FreeResolution<F>, target: usize, lo: i64) -> Result<Self, TateError> {
        if target < self.depth {
            return Err(TateError::Depth { depth: self.depth, target });
        }
        let mut blocks = self.blocks.clone();
        if lo < self.lo {
            extend_down(res, self.n, self.depth, &mut blocks, self.lo, lo)?;
        }
        blocks.retain(|i, _| *i + self.n <= -(target as i64) && *i >= lo);
        Ok(SingularClass { n: self.n, depth: target, lo, blocks })
    }
}

fn apply_columns<F: Field>(f: &F, cols: &[SparseVec<F::Elem>], v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::new();
    for (j, x) in v {
        for (i, y) in &cols[*j] {
            out.push((*i, f.mul(x, y)));
        }
    }
    linalg::normalize_sparse(f, out)
}

/// `Hom_D(M, Σ^n σ_{≤-depth} P)` with a fixed basis of classes.
pub struct ClassSpace<F: Field> {
    n: i64,
    depth: usize,
    lo: i64,
    h0: H0<F>,
    basis: Vec<SingularClass<F>>,
}

impl<F: Field> ClassSpace<F> {
    pub fn new(res: &FreeResolution<F>, n: i64, depth: usize) -> Result<Self, TateError> {
        let (w, h0) = depth_h0(res, n, depth)?;
        let basis = h0
            .reps
            .iter()
            .map(|r| SingularClass { n, depth, lo: w.lo, blocks: w.unflatten(r) })
            .collect();
        Ok(ClassSpace { n, depth, lo: w.lo, h0, basis })
    }

    pub fn degree(&self) -> i64 {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SingularClass<F>] {
        &self.basis
    }

    /// Coordinates of the image of `class` at this depth.
    pub fn coordinates(&mut self, res: &FreeResolution<F>, class: &SingularClass<F>) -> Result<Vec<F::Elem>, TateError> {
        if class.n != self.n {
            return Err(TateError::Degree { expected: self.n, got: class.n });
        }
        let moved = class.at(res, self.depth, self.lo)?;
        let w = Window::new(res, self.n, self.depth, self.lo, 0)?;
        let v = w.flatten(&moved.blocks);
        self.h0.coordinates(&v).ok_or(TateError::NotChainMap { degree: self.lo })
    }

    /// Whether `class` maps to zero at this depth.
    pub fn is_zero(&mut self, res: &FreeResolution<F>, class: &SingularClass<F>) -> Result<bool, TateError> {
        let f = res.field().clone();
        Ok(self.coordinates(res, class)?.iter().all(|x| f.is_zero(x)))
    }
}

/// Composite `(Σ^m f̃) ∘ g` where `f̃` is given on source degrees `≤ -g.depth`.
fn compose<F: Field>(
    res: &FreeResolution<F>,
    n: i64,
    r: usize,
    ftilde: &Blocks<F::Elem>,
    g: &SingularClass<F>,
) -> Result<SingularClass<F>, TateError> {
    let f = res.field();
    let d = res.ring().dim();
    let m = g.n;
    let total = n + m;
    let lo = window_lo(total, r);
    let g = g.at(res, g.depth, lo.min(g.lo))?;
    let mut blocks = Blocks::new();
    for i in lo..=0 {
        if i + total > -(r as i64) {
            continue;
        }
        let (Some(gi), Some(fi)) = (g.blocks.get(&i), ftilde.get(&(i + m))) else { continue };
        let tdim = res.dim((-(i + total)) as usize);
        let comp = gi
            .iter()
            .map(|v| {
                let mut acc = vec![f.zero(); tdim];
                for (h, fh) in fi.iter().enumerate() {
                    let c = &v[h * d..(h + 1) * d];
                    if c.iter().all(|x| f.is_zero(x)) {
                        continue;
                    }
                    for (a, x) in acc.iter_mut().zip(res.act_dense(c, fh)) {
                        *a = f.add(a, &x);
                    }
                }
                acc
            })
            .collect();
        blocks.insert(i, comp);
    }
    SingularClass::new(res, total, r, lo, blocks)
}

/// The composition product `f · g` of classes of degrees `n = deg f` and `m = deg g`.
///
/// The depth `r` of the result runs upward from `deg f`'s depth. At `r` with
/// `r ≥ depth(g) - n` the truncated `f` is itself a chain map out of
/// `σ_{≤-depth(g)} P`; below that a factorization is solved for.
pub fn hhsg_product<F: Field>(
    res: &FreeResolution<F>,
    f: &SingularClass<F>,
    g: &SingularClass<F>,
    depth_cap: usize,
) -> Result<SingularClass<F>, TateError> {
    let n = f.n;
    let strict = (g.depth as i64 - n).max(0) as usize;
    let mut obstruction = 0;
    for r in f.depth..=depth_cap {
        if r >= strict {
            let lo = window_lo(n, r).min(window_lo(n + g.n, r) + g.n).min(f.lo);
            let ext = f.at(res, r, lo)?;
            return compose(res, n, r, &ext.blocks, g);
        }
        match hhsg_product_by_lifting(res, f, g, r)? {
            Ok(c) => return Ok(c),
            Err(k) => obstruction = k,
        }
    }
    Err(TateError::DepthCapExhausted { cap: depth_cap, obstruction })
}

/// The product at depth `r` through an explicit solve for the factorization of
/// `σ_{≤-r} f` through `σ_{≤-depth(g)} P` up to homotopy.
///
/// `Ok(Err(k))` reports an inconsistent system with `k` obstructed equations.
pub fn hhsg_product_by_lifting<F: Field>(
    res: &FreeResolution<F>,
    f: &SingularClass<F>,
    g: &SingularClass<F>,
    r: usize,
) -> Result<Result<SingularClass<F>, usize>, TateError> {
    let field = res.field();
    let n = f.n;
    let top = -(g.depth as i64);
    // one degree below the top of σ_{≤-depth(g)} P is needed to see its Hom classes
    let lo = window_lo(n, r).min(window_lo(n + g.n, r) + g.n).min(top - 1);
    let fr = f.at(res, r, lo.min(f.lo))?;
    let full = Window::new(res, n, r, lo, 0)?;
    let quotient = Window::new(res, n, r, lo, top)?;
    let qlayout = quotient.layout(0);
    let flayout = full.layout(0);
    let (q0, q1) = (quotient.dim(0), quotient.dim(1));
    let (f0, fm1) = (full.dim(0), full.dim(-1));
    // unknowns: f̃ ∈ Hom^0(quotient), h ∈ Hom^{-1}(full); equations: d f̃ = 0, f̃ - d h = σ f
    let mut cols: Vec<SparseVec<F::Elem>> = Vec::with_capacity(q0 + fm1);
    let dq = quotient.differential(0);
    for b in &qlayout {
        let fb = flayout.iter().find(|x| x.i == b.i).expect("quotient blocks are full blocks");
        let size = res.rank(b.s) * res.dim(b.t);
        for k in 0..size {
            let mut c = dq[b.offset + k].clone();
            c.push((q1 + fb.offset + k, field.one()));
            cols.push(c);
        }
    }
    for c in full.differential(-1) {
        cols.push(c.into_iter().map(|(i, x)| (q1 + i, field.neg(&x))).collect());
    }
    let rhs: SparseVec<F::Elem> = full.flatten(&fr.blocks).into_iter().map(|(i, x)| (q1 + i, x)).collect();
    match solve_many(field, q1 + f0, &cols, &[rhs]) {
        Err(k) => Ok(Err(k)),
        Ok(sol) => {
            let ft = linalg::sparse_from_dense(field, &sol[0][..q0]);
            let ftilde = quotient.unflatten(&ft);
            compose(res, n, r, &ftilde, g).map(Ok)
        }
    }
}

/// `HH_sg^0` read at depth `depth` as an algebra under the composition product,
/// with the class basis used for its structure constants.
pub fn degree_zero_algebra<F: Field>(
    res: &FreeResolution<F>,
    depth: usize,
    depth_cap: usize,
) -> Result<(FinDimAlgebra<F>, ClassSpace<F>), TateError> {
    let f = res.field().clone();
    let mut space = ClassSpace::new(res, 0, depth)?;
    let h = space.dim();
    let basis = space.basis().to_vec();
    let mut structure = Vec::with_capacity(h * h * h);
    for a in &basis {
        for b in &basis {
            let p = hhsg_product(res, a, b, depth_cap)?;
            structure.extend(space.coordinates(res, &p)?);
        }
    }
    let unit = SingularClass::unit(res)?;
    let unit = space.coordinates(res, &unit)?;
    let labels = (0..h).map(|i| format!("t{}", i)).collect();
    let alg = FinDimAlgebra::new(f, labels, structure, unit)?;
    Ok((alg, space))
}
