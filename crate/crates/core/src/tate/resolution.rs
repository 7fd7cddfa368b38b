use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{enveloping, TateError};
use crate::algebra::{FinDimAlgebra, FinDimModule};
use crate::complexes::CochainComplex;
use crate::field::{Field, PrimeField};
use crate::hochschild::DEFAULT_BUDGET;
use crate::linalg::{self, normalize_sparse, Echelon, Matrix, SparseVec};

/// Prime used for the modular exactness certificate.
pub const CERTIFICATE_PRIME: u64 = 4_294_967_291;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Bar,
    NormalizedBar,
    UserSupplied,
    PeriodicExtended,
    Computed,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Bar => "bar",
            Provenance::NormalizedBar => "normalized-bar",
            Provenance::UserSupplied => "user-supplied",
            Provenance::PeriodicExtended => "periodic-extended",
            Provenance::Computed => "computed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error("shape: {0}")]
    Shape(String),
    #[error("d∘d is nonzero at degree {degree}")]
    NotComplex { degree: i64 },
    #[error("augmentation does not vanish on the image of the first differential")]
    AugmentationNotChainMap,
    #[error("augmentation is not surjective")]
    AugmentationNotSurjective,
    #[error("augmented complex has homology in degree {degree}")]
    NotExact { degree: i64 },
}

/// Every invariant violation found while validating a resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionErrors(pub Vec<ResolutionError>);

impl fmt::Display for ResolutionErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", e)?;
        }
        Ok(())
    }
}

impl core::error::Error for ResolutionErrors {}

/// A free resolution `P^{-L} → … → P^0 → M` of a module over a finite-dimensional algebra `B`.
///
/// `P^{-t}` is `B^{r_t}`; the element `b_β e_g` has coordinate `g * dim B + β`.
/// Differentials are given by the images of the free generators.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    ring: FinDimAlgebra<F>,
    module: FinDimModule<F>,
    ranks: Vec<usize>,
    // images[t - 1][g] = ∂(e_g) for e_g a generator of P^{-t}
    images: Vec<Vec<SparseVec<F::Elem>>>,
    augmentation: Vec<Vec<F::Elem>>,
    provenance: Provenance,
    /// Largest Hom window built over this resolution, in coordinates.
    budget: usize,
    // mult[β * D + γ] = b_β b_γ
    mult: Vec<SparseVec<F::Elem>>,
    // cols[t - 1][g * D + β] = ∂(b_β e_g)
    cols: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> FreeResolution<F> {
    /// Builds and validates a resolution; every failed invariant is reported.
    pub fn new(
        ring: FinDimAlgebra<F>,
        module: FinDimModule<F>,
        ranks: Vec<usize>,
        images: Vec<Vec<SparseVec<F::Elem>>>,
        augmentation: Vec<Vec<F::Elem>>,
        provenance: Provenance,
    ) -> Result<Self, ResolutionErrors> {
        let res = Self::new_unchecked(ring, module, ranks, images, augmentation, provenance)
            .map_err(|e| ResolutionErrors(vec![e]))?;
        let errs = res.check();
        if errs.is_empty() {
            Ok(res)
        } else {
            Err(ResolutionErrors(errs))
        }
    }

    /// Shape checks only.
    pub fn new_unchecked(
        ring: FinDimAlgebra<F>,
        module: FinDimModule<F>,
        ranks: Vec<usize>,
        images: Vec<Vec<SparseVec<F::Elem>>>,
        augmentation: Vec<Vec<F::Elem>>,
        provenance: Provenance,
    ) -> Result<Self, ResolutionError> {
        let f = ring.field().clone();
        let d = ring.dim();
        if ranks.is_empty() {
            return Err(ResolutionError::Shape(String::from("no components")));
        }
        if images.len() + 1 != ranks.len() {
            return Err(ResolutionError::Shape(format!(
                "{} components need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                images.len()
            )));
        }
        if augmentation.len() != ranks[0] || augmentation.iter().any(|v| v.len() != module.dim()) {
            return Err(ResolutionError::Shape(format!(
                "augmentation needs {} vectors of length {}",
                ranks[0],
                module.dim()
            )));
        }
        let mut clean = Vec::with_capacity(images.len());
        for (k, imgs) in images.into_iter().enumerate() {
            let t = k + 1;
            if imgs.len() != ranks[t] {
                return Err(ResolutionError::Shape(format!(
                    "degree -{}: rank {} but {} generator images",
                    t,
                    ranks[t],
                    imgs.len()
                )));
            }
            let len = ranks[t - 1] * d;
            let mut out = Vec::with_capacity(imgs.len());
            for v in imgs {
                let v = normalize_sparse(&f, v);
                if v.last().is_some_and(|e| e.0 >= len) {
                    return Err(ResolutionError::Shape(format!(
                        "degree -{}: image coordinate outside a space of dimension {}",
                        t, len
                    )));
                }
                out.push(v);
            }
            clean.push(out);
        }
        let mult: Vec<SparseVec<F::Elem>> = (0..d * d)
            .map(|k| linalg::sparse_from_dense(&f, ring.basis_product(k / d, k % d)))
            .collect();
        let mut res = FreeResolution {
            ring,
            module,
            ranks,
            images: clean,
            augmentation,
            provenance,
            budget: DEFAULT_BUDGET,
            mult,
            cols: Vec::new(),
        };
        res.cols = (0..res.images.len())
            .map(|k| {
                let imgs = &res.images[k];
                let mut cols = Vec::with_capacity(imgs.len() * d);
                for img in imgs {
                    for b in 0..d {
                        cols.push(res.left_basis_act(b, img));
                    }
                }
                cols
            })
            .collect();
        Ok(res)
    }

    pub fn ring(&self) -> &FinDimAlgebra<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn module(&self) -> &FinDimModule<F> {
        &self.module
    }

    /// `L`: the lowest component is `P^{-L}`.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, t: usize) -> usize {
        self.ranks[t]
    }

    /// Dimension of `P^{-t}` over the ground field.
    pub fn dim(&self, t: usize) -> usize {
        self.ranks[t] * self.ring.dim()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Caps the dimension of the Hom windows built over this resolution.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// `∂(e_g)` for the generator `e_g` of `P^{-t}`, `t ≥ 1`.
    pub fn image(&self, t: usize, g: usize) -> &SparseVec<F::Elem> {
        &self.images[t - 1][g]
    }

    pub fn augmentation(&self) -> &[Vec<F::Elem>] {
        &self.augmentation
    }

    /// Ground-field columns of `∂_t : P^{-t} → P^{-t+1}`.
    pub fn diff_columns(&self, t: usize) -> &[SparseVec<F::Elem>] {
        &self.cols[t - 1]
    }

    pub fn diff_matrix(&self, t: usize) -> Matrix<F::Elem> {
        Matrix::from_sparse_cols(self.field(), self.dim(t - 1), self.dim(t), self.cols[t - 1].clone())
    }

    /// Ground-field columns of the augmentation `P^0 → M`.
    pub fn augmentation_columns(&self) -> Vec<SparseVec<F::Elem>> {
        let f = self.field();
        let d = self.ring.dim();
        let mut out = Vec::with_capacity(self.dim(0));
        for v in &self.augmentation {
            for b in 0..d {
                out.push(linalg::sparse_from_dense(f, &self.module.action(b).mul_vec(f, v)));
            }
        }
        out
    }

    /// The underlying complex of vector spaces, in degrees `-L..=0`.
    pub fn to_complex(&self) -> CochainComplex<F> {
        let l = self.length();
        let dims = (0..=l).rev().map(|t| self.dim(t)).collect();
        let diffs = (1..=l).rev().map(|t| self.diff_matrix(t)).collect();
        CochainComplex::new_unchecked(self.field().clone(), -(l as i64), dims, diffs).expect("shapes agree")
    }

    /// `b_β · v` for `v` in a free module.
    pub(crate) fn left_basis_act(&self, beta: usize, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.field();
        let d = self.ring.dim();
        let mut out = Vec::new();
        for (idx, x) in v {
            let (h, g) = (idx / d, idx % d);
            for (k, c) in &self.mult[beta * d + g] {
                out.push((h * d + k, f.mul(x, c)));
            }
        }
        normalize_sparse(f, out)
    }

    /// `c · v` for `c ∈ B` (dense) and `v` a dense vector of a free module.
    pub(crate) fn act_dense(&self, c: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let d = self.ring.dim();
        let mut out = vec![f.zero(); v.len()];
        for (beta, cb) in c.iter().enumerate() {
            if f.is_zero(cb) {
                continue;
            }
            for (idx, x) in v.iter().enumerate() {
                if f.is_zero(x) {
                    continue;
                }
                let cx = f.mul(cb, x);
                let h = idx / d;
                for (k, m) in &self.mult[beta * d + idx % d] {
                    f.add_mul_assign(&mut out[h * d + k], &cx, m);
                }
            }
        }
        out
    }

    /// `b_β b_γ`.
    pub(crate) fn basis_mult(&self, beta: usize, gamma: usize) -> &SparseVec<F::Elem> {
        &self.mult[beta * self.ring.dim() + gamma]
    }

    /// `∂_t` applied to a sparse vector of `P^{-t}`.
    pub(crate) fn apply_diff(&self, t: usize, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.field();
        let mut out = Vec::new();
        for (idx, x) in v {
            for (k, y) in &self.cols[t - 1][*idx] {
                out.push((*k, f.mul(x, y)));
            }
        }
        normalize_sparse(f, out)
    }

    /// Re-checks `∂∘∂ = 0`, `ε∘∂ = 0` and exactness of the augmented complex in degrees `> -L`.
    pub fn check(&self) -> Vec<ResolutionError> {
        let f = self.field();
        let l = self.length();
        let mut errs = Vec::new();
        let eps = self.augmentation_columns();
        let mut complex_ok = true;
        if l >= 1 {
            for img in &self.images[0] {
                let mut acc = vec![f.zero(); self.module.dim()];
                for (idx, x) in img {
                    for (k, y) in &eps[*idx] {
                        f.add_mul_assign(&mut acc[*k], x, y);
                    }
                }
                if acc.iter().any(|x| !f.is_zero(x)) {
                    errs.push(ResolutionError::AugmentationNotChainMap);
                    complex_ok = false;
                    break;
                }
            }
        }
        for t in 1..l {
            if self.images[t].iter().any(|img| !self.apply_diff(t, img).is_empty()) {
                errs.push(ResolutionError::NotComplex { degree: -(t as i64) });
                complex_ok = false;
            }
        }
        if !complex_ok {
            return errs;
        }
        let mut ranks = RankCache::new(f.clone());
        let eps_rank = |r: &mut RankCache<F>, exact: bool| r.rank(usize::MAX, self.module.dim(), &eps, exact);
        if !ranks.certified(self.module.dim(), |r, exact| eps_rank(r, exact)) {
            errs.push(ResolutionError::AugmentationNotSurjective);
        }
        for t in 0..l {
            let dim = self.dim(t);
            let ok = ranks.certified(dim, |r, exact| {
                let below = if t == 0 { eps_rank(r, exact) } else { r.rank(t, self.dim(t - 1), &self.cols[t - 1], exact) };
                below + r.rank(t + 1, dim, &self.cols[t], exact)
            });
            if !ok {
                errs.push(ResolutionError::NotExact { degree: -(t as i64) });
            }
        }
        errs
    }

    /// Continues the differentials periodically: `∂_t = ∂_{t - period}` for `t` beyond the stored ones.
    pub fn extend_periodic(&self, period: usize, len: usize) -> Result<Self, ResolutionErrors> {
        let l = self.length();
        let shape = |m: String| ResolutionErrors(vec![ResolutionError::Shape(m)]);
        if period == 0 || l < period + 1 {
            return Err(shape(format!("period {} needs at least {} stored differentials", period, period + 1)));
        }
        if self.ranks[l] != self.ranks[l - period] {
            return Err(shape(format!("ranks are not {}-periodic", period)));
        }
        let mut ranks = self.ranks.clone();
        let mut images = self.images.clone();
        for t in l + 1..=len {
            ranks.push(ranks[t - period]);
            images.push(images[t - 1 - period].clone());
        }
        FreeResolution::new(
            self.ring.clone(),
            self.module.clone(),
            ranks,
            images,
            self.augmentation.clone(),
            Provenance::PeriodicExtended,
        )
        .map(|r| r.with_budget(self.budget))
    }
}

/// Ranks of maps, first modulo [`CERTIFICATE_PRIME`] and exactly only when needed.
struct RankCache<F: Field> {
    field: F,
    modular: Vec<(usize, Option<usize>)>,
    exact: Vec<(usize, usize)>,
    prime: PrimeField,
}

impl<F: Field> RankCache<F> {
    fn new(field: F) -> Self {
        RankCache { field, modular: Vec::new(), exact: Vec::new(), prime: PrimeField::new(CERTIFICATE_PRIME).unwrap() }
    }

    fn rank(&mut self, key: usize, nrows: usize, cols: &[SparseVec<F::Elem>], exact: bool) -> usize {
        if !exact {
            if let Some((_, r)) = self.modular.iter().find(|e| e.0 == key) {
                if let Some(r) = r {
                    return *r;
                }
            } else {
                let r = modular_rank(&self.field, &self.prime, nrows, cols);
                self.modular.push((key, r));
                if let Some(r) = r {
                    return r;
                }
            }
        }
        if let Some((_, r)) = self.exact.iter().find(|e| e.0 == key) {
            return *r;
        }
        let r = column_rank(&self.field, nrows, cols);
        self.exact.push((key, r));
        r
    }

    /// `value(exact) == target`, trying the modular ranks first.
    ///
    /// Modular ranks never exceed exact ones and the sums involved are bounded
    /// by `target`, so a modular match certifies the exact one.
    fn certified(&mut self, target: usize, mut value: impl FnMut(&mut Self, bool) -> usize) -> bool {
        value(self, false) == target || value(self, true) == target
    }
}

/// Rank of the matrix with the given columns.
pub(crate) fn column_rank<F: Field>(field: &F, nrows: usize, cols: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field.clone(), nrows);
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&i| cols[i].len());
    for i in order {
        e.insert(&cols[i]);
    }
    e.rank()
}

fn modular_rank<F: Field>(field: &F, p: &PrimeField, nrows: usize, cols: &[SparseVec<F::Elem>]) -> Option<usize> {
    let mut reduced = Vec::with_capacity(cols.len());
    for c in cols {
        let mut v = Vec::with_capacity(c.len());
        for (i, x) in c {
            let y = field.reduce_mod(x, p)?;
            if y != 0 {
                v.push((*i, y));
            }
        }
        reduced.push(v);
    }
    Some(column_rank(p, nrows, &reduced))
}

/// `A^e` and `A` as a left `A^e`-module.
pub fn bimodule_data<F: Field>(a: &FinDimAlgebra<F>) -> Result<(FinDimAlgebra<F>, FinDimModule<F>), TateError> {
    Ok((enveloping(a)?, FinDimModule::diagonal_bimodule(a)))
}

/// The bar resolution `A ⊗ A^{⊗t} ⊗ A` of `A` over `A^e`, through degree `-len`.
pub fn bar_resolution<F: Field>(a: &FinDimAlgebra<F>, len: usize, budget: usize) -> Result<FreeResolution<F>, TateError> {
    bar_like(a, len, budget, false)
}

/// The normalized bar resolution `A ⊗ Ā^{⊗t} ⊗ A` with `Ā = A / k·1`.
///
/// The unit must be the first basis vector.
pub fn normalized_bar_resolution<F: Field>(
    a: &FinDimAlgebra<F>,
    len: usize,
    budget: usize,
) -> Result<FreeResolution<F>, TateError> {
    if a.dim() > 0 && a.unit_index() != Some(0) {
        return Err(TateError::UnitNotFirst);
    }
    bar_like(a, len, budget, true)
}

fn bar_like<F: Field>(a: &FinDimAlgebra<F>, len: usize, budget: usize, normalized: bool) -> Result<FreeResolution<F>, TateError> {
    let f = a.field().clone();
    let d = a.dim();
    let dd = d * d;
    let letters: Vec<usize> = if normalized { (1..d).collect() } else { (0..d).collect() };
    let base = letters.len();
    let mut letter_of = vec![usize::MAX; d];
    for (l, &b) in letters.iter().enumerate() {
        letter_of[b] = l;
    }
    let mut ranks = Vec::with_capacity(len + 1);
    let mut r = 1usize;
    for t in 0..=len {
        if t > 0 {
            r = r.checked_mul(base).ok_or(TateError::Budget { dim: usize::MAX, budget })?;
        }
        let dim = r.checked_mul(dd).ok_or(TateError::Budget { dim: usize::MAX, budget })?;
        if dim > budget {
            return Err(TateError::Budget { dim, budget });
        }
        ranks.push(r);
    }
    let (ring, module) = bimodule_data(a)?;
    let u = a.unit();
    let unit_pairs: Vec<(usize, usize, F::Elem)> = (0..d)
        .flat_map(|x| (0..d).map(move |y| (x, y)))
        .filter(|(x, y)| !f.is_zero(&u[*x]) && !f.is_zero(&u[*y]))
        .map(|(x, y)| (x, y, f.mul(&u[x], &u[y])))
        .collect();
    let mut images = Vec::with_capacity(len);
    for t in 1..=len {
        let mut imgs = Vec::with_capacity(ranks[t]);
        let mut word = vec![0usize; t];
        for g in 0..ranks[t] {
            // digits of g, most significant first
            let mut rest = g;
            for k in (0..t).rev() {
                word[k] = rest % base;
                rest /= base;
            }
            let index = |w: &[usize]| w.iter().fold(0usize, |acc, l| acc * base + l);
            let mut v: SparseVec<F::Elem> = Vec::new();
            let first = letters[word[0]];
            let tail = index(&word[1..]);
            for (y, uy) in u.iter().enumerate() {
                if !f.is_zero(uy) {
                    v.push((tail * dd + first * d + y, uy.clone()));
                }
            }
            let mut merged = word.clone();
            for i in 1..t {
                let sign = if i % 2 == 1 { f.neg(&f.one()) } else { f.one() };
                let prod = a.basis_product(letters[word[i - 1]], letters[word[i]]);
                for (k, c) in prod.iter().enumerate() {
                    if f.is_zero(c) || letter_of[k] == usize::MAX {
                        continue;
                    }
                    merged.clear();
                    merged.extend_from_slice(&word[..i - 1]);
                    merged.push(letter_of[k]);
                    merged.extend_from_slice(&word[i + 1..]);
                    let gen = index(&merged);
                    let sc = f.mul(&sign, c);
                    for (x, y, uxy) in &unit_pairs {
                        v.push((gen * dd + x * d + y, f.mul(&sc, uxy)));
                    }
                }
            }
            let last = letters[word[t - 1]];
            let head = index(&word[..t - 1]);
            let sign = if t % 2 == 1 { f.neg(&f.one()) } else { f.one() };
            for (x, ux) in u.iter().enumerate() {
                if !f.is_zero(ux) {
                    v.push((head * dd + x * d + last, f.mul(&sign, ux)));
                }
            }
            imgs.push(normalize_sparse(&f, v));
        }
        images.push(imgs);
    }
    let provenance = if normalized { Provenance::NormalizedBar } else { Provenance::Bar };
    let res = FreeResolution::new(ring, module, ranks, images, vec![u.to_vec()], provenance)
        .unwrap_or_else(|e| panic!("bar construction failed validation: {}", e));
    Ok(res.with_budget(budget))
}

/// A free resolution of `module` over `ring` whose generators are chosen greedily
/// from bases of the successive kernels.
pub fn resolve_module<F: Field>(
    ring: &FinDimAlgebra<F>,
    module: &FinDimModule<F>,
    len: usize,
) -> Result<FreeResolution<F>, ResolutionErrors> {
    let f = ring.field().clone();
    let d = ring.dim();
    let submodule_gens = |candidates: Vec<Vec<F::Elem>>, ambient: usize, act: &dyn Fn(usize, &[F::Elem]) -> Vec<F::Elem>| {
        let mut span = Echelon::new(f.clone(), ambient);
        let mut gens = Vec::new();
        for v in candidates {
            if span.contains(&linalg::sparse_from_dense(&f, &v)) {
                continue;
            }
            for b in 0..d {
                span.insert(&linalg::sparse_from_dense(&f, &act(b, &v)));
            }
            gens.push(v);
        }
        gens
    };
    let unit_basis: Vec<Vec<F::Elem>> = (0..module.dim()).map(|i| linalg::dense_from_sparse(&f, module.dim(), &[(i, f.one())])).collect();
    let augmentation = submodule_gens(unit_basis, module.dim(), &|b, v| module.action(b).mul_vec(&f, v));
    let mut ranks = vec![augmentation.len()];
    let mut images: Vec<Vec<SparseVec<F::Elem>>> = Vec::new();
    let mut partial =
        FreeResolution::new_unchecked(ring.clone(), module.clone(), ranks.clone(), Vec::new(), augmentation.clone(), Provenance::Computed)
            .map_err(|e| ResolutionErrors(vec![e]))?;
    for t in 1..=len {
        let prev = t - 1;
        let ncols = partial.dim(prev);
        let (nrows, cols) = if prev == 0 {
            (module.dim(), partial.augmentation_columns())
        } else {
            (partial.dim(prev - 1), partial.diff_columns(prev).to_vec())
        };
        let m = Matrix::from_sparse_cols(&f, nrows, ncols, cols);
        let (_, kernel) = linalg::rank_and_kernel(&f, &m);
        let gens = submodule_gens(kernel, ncols, &|b, v| {
            let s = partial.left_basis_act(b, &linalg::sparse_from_dense(&f, v));
            linalg::dense_from_sparse(&f, ncols, &s)
        });
        ranks.push(gens.len());
        images.push(gens.iter().map(|v| linalg::sparse_from_dense(&f, v)).collect());
        partial = FreeResolution::new_unchecked(
            ring.clone(),
            module.clone(),
            ranks.clone(),
            images.clone(),
            augmentation.clone(),
            Provenance::Computed,
        )
        .map_err(|e| ResolutionErrors(vec![e]))?;
    }
    FreeResolution::new(ring.clone(), module.clone(), ranks, images, augmentation, Provenance::Computed)
}
