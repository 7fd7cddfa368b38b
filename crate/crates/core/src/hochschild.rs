//! Hochschild cohomology of a finite-dimensional algebra through the full
//! (unnormalized) bar cochain complex `C^n = Hom(A^{⊗n}, A)`.
//!
//! A cochain of degree `n` is stored as a vector of length `d^{n+1}`; the
//! coordinate of `b_k` in `f(b_{i_1}, ..., b_{i_n})` sits at index
//! `(i_1 d^{n-1} + ... + i_n) d + k`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FinDimAlgebra;
use crate::complexes::CochainComplex;
use crate::field::Field;
use crate::linalg::{self, Echelon, Insert, Matrix, SparseVec};

/// Largest cochain-space dimension built without an explicit override.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HochschildError {
    #[error("cochain space in degree {degree} has dimension {dim}, above the budget {budget}")]
    Budget { degree: usize, dim: usize, budget: usize },
    #[error("cochain has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("cochain of degree {degree} is not a cocycle")]
    NotCocycle { degree: usize },
}

fn cochain_dim(d: usize, n: usize, budget: usize) -> Result<usize, HochschildError> {
    let mut acc: usize = d;
    for _ in 0..n {
        acc = acc.checked_mul(d).filter(|x| *x <= budget).ok_or(HochschildError::Budget {
            degree: n,
            dim: d.checked_pow(n as u32 + 1).unwrap_or(usize::MAX),
            budget,
        })?;
    }
    if acc > budget {
        return Err(HochschildError::Budget { degree: n, dim: acc, budget });
    }
    Ok(acc)
}

// nonzero structure constants per (i, j)
fn products<F: Field>(a: &FinDimAlgebra<F>) -> Vec<Vec<(usize, F::Elem)>> {
    let f = a.field();
    let d = a.dim();
    (0..d * d)
        .map(|ij| linalg::sparse_from_dense(f, a.basis_product(ij / d, ij % d)))
        .collect()
}

/// `δ^n : C^n -> C^{n+1}`,
/// `(δf)(a_1..a_{n+1}) = a_1 f(a_2..) + Σ (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{n+1} f(..a_n) a_{n+1}`.
pub fn hochschild_differential<F: Field>(
    a: &FinDimAlgebra<F>,
    n: usize,
    budget: usize,
) -> Result<Matrix<F::Elem>, HochschildError> {
    let f = a.field();
    let d = a.dim();
    let src = cochain_dim(d, n, budget)?;
    let tgt = cochain_dim(d, n + 1, budget)?;
    let prod = products(a);
    let tuples = tgt / d.max(1);
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::with_capacity(tgt);
    let mut s = vec![0usize; n + 1];
    let minus = f.from_i64(-1);
    for tix in 0..tuples {
        decode(tix, d, &mut s);
        let mut row_terms: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); d];
        // a_1 f(a_2, ..., a_{n+1})
        let tail = encode(&s[1..], d);
        for k in 0..d {
            for (l, c) in &prod[s[0] * d + k] {
                row_terms[*l].push((tail * d + k, c.clone()));
            }
        }
        // (-1)^i f(.., a_i a_{i+1}, ..)
        for i in 0..n {
            let sg = if (i + 1) % 2 == 0 { f.one() } else { minus.clone() };
            for (m, c) in &prod[s[i] * d + s[i + 1]] {
                let mut t: Vec<usize> = Vec::with_capacity(n);
                t.extend_from_slice(&s[..i]);
                t.push(*m);
                t.extend_from_slice(&s[i + 2..]);
                let base = encode(&t, d) * d;
                let v = f.mul(&sg, c);
                for (l, terms) in row_terms.iter_mut().enumerate() {
                    terms.push((base + l, v.clone()));
                }
            }
        }
        // (-1)^{n+1} f(a_1..a_n) a_{n+1}
        let sg = if (n + 1) % 2 == 0 { f.one() } else { minus.clone() };
        let head = encode(&s[..n], d);
        for k in 0..d {
            for (l, c) in &prod[k * d + s[n]] {
                row_terms[*l].push((head * d + k, f.mul(&sg, c)));
            }
        }
        rows.extend(row_terms);
    }
    Ok(Matrix::from_sparse_rows(f, tgt, src, rows))
}

fn decode(mut ix: usize, d: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = ix % d;
        ix /= d;
    }
}

fn encode(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, x| acc * d + x)
}

/// The bar cochain complex in degrees `0..=n_max`.
pub fn bar_cochain_complex<F: Field>(
    a: &FinDimAlgebra<F>,
    n_max: usize,
    budget: usize,
) -> Result<CochainComplex<F>, HochschildError> {
    let d = a.dim();
    let dims = (0..=n_max).map(|n| cochain_dim(d, n, budget)).collect::<Result<Vec<_>, _>>()?;
    let diffs = (0..n_max).map(|n| hochschild_differential(a, n, budget)).collect::<Result<Vec<_>, _>>()?;
    Ok(CochainComplex::new(a.field().clone(), 0, dims, diffs).expect("the Hochschild differential squares to zero"))
}

/// `dim HH^n(A, A)` for `n = 0..=n_max`.
pub fn hh_dims<F: Field>(a: &FinDimAlgebra<F>, n_max: usize, budget: usize) -> Result<BTreeMap<i64, usize>, HochschildError> {
    let c = bar_cochain_complex(a, n_max + 1, budget)?;
    Ok(c.homology_dims().into_iter().filter(|(n, _)| *n <= n_max as i64).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct HochschildClass<F: Field> {
    degree: usize,
    cochain: Vec<F::Elem>,
}

impl<F: Field> HochschildClass<F> {
    /// Checks the cocycle condition exactly.
    pub fn new(a: &FinDimAlgebra<F>, degree: usize, cochain: Vec<F::Elem>, budget: usize) -> Result<Self, HochschildError> {
        let expected = cochain_dim(a.dim(), degree, budget)?;
        if cochain.len() != expected {
            return Err(HochschildError::Length { expected, got: cochain.len() });
        }
        let dm = hochschild_differential(a, degree, budget)?;
        if !dm.mul_vec(a.field(), &cochain).iter().all(|x| a.field().is_zero(x)) {
            return Err(HochschildError::NotCocycle { degree });
        }
        Ok(HochschildClass { degree, cochain })
    }

    /// The degree-0 class of the unit.
    pub fn unit(a: &FinDimAlgebra<F>) -> Self {
        HochschildClass { degree: 0, cochain: a.unit().to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cochain(&self) -> &[F::Elem] {
        &self.cochain
    }
}

/// `(f ⌣ g)(a_1..a_{m+n}) = f(a_1..a_m) g(a_{m+1}..a_{m+n})` on cochains.
pub fn cup_cochains<F: Field>(a: &FinDimAlgebra<F>, m: usize, f: &[F::Elem], n: usize, g: &[F::Elem], budget: usize) -> Result<Vec<F::Elem>, HochschildError> {
    let field = a.field();
    let d = a.dim();
    let out_dim = cochain_dim(d, m + n, budget)?;
    let prod = products(a);
    let mut out = vec![field.zero(); out_dim];
    let (fm, gn) = (f.len() / d.max(1), g.len() / d.max(1));
    for s in 0..fm {
        for k in 0..d {
            let x = &f[s * d + k];
            if field.is_zero(x) {
                continue;
            }
            for t in 0..gn {
                for k2 in 0..d {
                    let y = &g[t * d + k2];
                    if field.is_zero(y) {
                        continue;
                    }
                    let xy = field.mul(x, y);
                    let base = (s * gn + t) * d;
                    for (l, c) in &prod[k * d + k2] {
                        field.add_mul_assign(&mut out[base + l], &xy, c);
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn cup_product<F: Field>(
    a: &FinDimAlgebra<F>,
    f: &HochschildClass<F>,
    g: &HochschildClass<F>,
    budget: usize,
) -> Result<HochschildClass<F>, HochschildError> {
    let c = cup_cochains(a, f.degree, &f.cochain, g.degree, &g.cochain, budget)?;
    HochschildClass::new(a, f.degree + g.degree, c, budget)
}

/// A cochain `h` of degree `n - 1` with `δh = v`, if one exists.
pub fn coboundary_preimage<F: Field>(
    a: &FinDimAlgebra<F>,
    n: usize,
    v: &[F::Elem],
    budget: usize,
) -> Result<Option<Vec<F::Elem>>, HochschildError> {
    if n == 0 {
        return Ok(if v.iter().all(|x| a.field().is_zero(x)) { Some(Vec::new()) } else { None });
    }
    let dm = hochschild_differential(a, n - 1, budget)?;
    linalg::solve(a.field(), &dm, v).map_err(|_| HochschildError::Length { expected: dm.rows(), got: v.len() })
}

pub fn is_coboundary<F: Field>(a: &FinDimAlgebra<F>, n: usize, v: &[F::Elem], budget: usize) -> Result<bool, HochschildError> {
    Ok(coboundary_preimage(a, n, v, budget)?.is_some())
}

/// Cocycles of degree `n` whose classes form a basis of `HH^n`.
pub fn cohomology_representatives<F: Field>(
    a: &FinDimAlgebra<F>,
    n: usize,
    budget: usize,
) -> Result<Vec<HochschildClass<F>>, HochschildError> {
    let f = a.field();
    let dn = hochschild_differential(a, n, budget)?;
    let (_, kernel) = linalg::rank_and_kernel(f, &dn);
    let len = dn.cols();
    let mut ech = Echelon::new(f.clone(), len);
    if n > 0 {
        let prev = hochschild_differential(a, n - 1, budget)?;
        for col in prev.transpose(f).to_rows(f) {
            ech.insert(&col);
        }
    }
    let mut out = Vec::new();
    for z in kernel {
        if let Insert::Pivot(_) = ech.insert(&linalg::sparse_from_dense(f, &z)) {
            out.push(HochschildClass { degree: n, cochain: z });
        }
    }
    Ok(out)
}

/// Dimension of the space of derivations `D(xy) = x D(y) + D(x) y`, solved
/// directly on the `d x d` matrix of `D`.
pub fn derivations_dim<F: Field>(a: &FinDimAlgebra<F>) -> usize {
    let f = a.field();
    let d = a.dim();
    // unknown D[k][i] = coordinate of b_k in D(b_i), index k * d + i
    let prod = products(a);
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut eq: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); d];
            // D(b_i b_j)
            for (m, c) in &prod[i * d + j] {
                for (l, e) in eq.iter_mut().enumerate() {
                    e.push((l * d + m, c.clone()));
                }
            }
            // - b_i D(b_j) - D(b_i) b_j
            for k in 0..d {
                for (l, c) in &prod[i * d + k] {
                    eq[*l].push((k * d + j, f.neg(c)));
                }
                for (l, c) in &prod[k * d + j] {
                    eq[*l].push((k * d + i, f.neg(c)));
                }
            }
            rows.extend(eq);
        }
    }
    let m = Matrix::from_sparse_rows(f, rows.len(), d * d, rows);
    d * d - linalg::rank(f, &m)
}
