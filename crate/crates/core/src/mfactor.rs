//! Matrix factorizations of a polynomial and the cohomology of their
//! 2-periodic morphism complexes.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraError, FinDimAlgebra, FinDimModule};
use crate::field::Field;
use crate::hypersurface::{tyurina_algebra, HypersurfaceError};
use crate::linalg::Matrix;
use crate::polyring::{
    groebner, module_groebner, quotient_algebra, Exponent, ModuleBasis, ModuleVector, MonomialOrder, MultiPoly,
    OrderKind, PolyError, PolyRing, QuotientError,
};

/// Largest quotient the multivariate route enumerates before giving up.
pub const DEFAULT_MONOMIAL_LIMIT: usize = 100_000;

pub type PolyMatrix<E> = Vec<Vec<MultiPoly<E>>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MfError {
    #[error("{name} is not a square {size}x{size} matrix")]
    Shape { name: &'static str, size: usize },
    #[error("entry ({row}, {col}) of {product} is not {expected}")]
    NotFactorization { product: &'static str, row: usize, col: usize, expected: &'static str },
    #[error("factorizations have different potentials")]
    PotentialMismatch,
    #[error("potential fails the isolated-singularity check: {0}")]
    NotIsolated(#[from] HypersurfaceError),
    #[error("cohomology is infinite-dimensional")]
    InfiniteDimensional,
    #[error("more than {limit} monomials in the quotient")]
    TooLarge { limit: usize },
    #[error("cokernel modules are only built for one variable")]
    NotUnivariate,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A pair `(φ, ψ)` of `r×r` polynomial matrices with `φψ = ψφ = Q·Id`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFactorization<F: Field> {
    ring: PolyRing<F>,
    q: MultiPoly<F::Elem>,
    phi: PolyMatrix<F::Elem>,
    psi: PolyMatrix<F::Elem>,
}

fn mat_mul<F: Field>(ring: &PolyRing<F>, a: &PolyMatrix<F::Elem>, b: &PolyMatrix<F::Elem>) -> PolyMatrix<F::Elem> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = ring.zero();
                    for (k, row) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !row[j].is_zero() {
                            acc = ring.add(&acc, &ring.mul(&a[i][k], &row[j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Validates `(φ, ψ)` as a factorization of `q`.
pub fn make_mf<F: Field>(
    ring: &PolyRing<F>,
    phi: PolyMatrix<F::Elem>,
    psi: PolyMatrix<F::Elem>,
    q: MultiPoly<F::Elem>,
) -> Result<MatrixFactorization<F>, MfError> {
    let r = phi.len();
    for (name, m) in [("phi", &phi), ("psi", &psi)] {
        if m.len() != r || m.iter().any(|row| row.len() != r) {
            return Err(MfError::Shape { name, size: r });
        }
        for p in m.iter().flatten() {
            if p.nvars() != ring.nvars() {
                return Err(PolyError::VariableMismatch { expected: ring.nvars(), got: p.nvars() }.into());
            }
        }
    }
    if q.nvars() != ring.nvars() {
        return Err(PolyError::VariableMismatch { expected: ring.nvars(), got: q.nvars() }.into());
    }
    for (product, m) in [("phi*psi", mat_mul(ring, &phi, &psi)), ("psi*phi", mat_mul(ring, &psi, &phi))] {
        for (i, row) in m.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let ok = if i == j { *p == q } else { p.is_zero() };
                if !ok {
                    let expected = if i == j { "Q" } else { "0" };
                    return Err(MfError::NotFactorization { product, row: i, col: j, expected });
                }
            }
        }
    }
    Ok(MatrixFactorization { ring: ring.clone(), q, phi, psi })
}

impl<F: Field> MatrixFactorization<F> {
    /// `(1, Q)`, isomorphic to zero in the homotopy category.
    pub fn trivial(ring: &PolyRing<F>, q: MultiPoly<F::Elem>) -> Self {
        MatrixFactorization { ring: ring.clone(), phi: vec![vec![ring.one()]], psi: vec![vec![q.clone()]], q }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.phi.len()
    }

    pub fn potential(&self) -> &MultiPoly<F::Elem> {
        &self.q
    }

    pub fn phi(&self) -> &PolyMatrix<F::Elem> {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix<F::Elem> {
        &self.psi
    }

    /// `E[1] = (ψ, φ)`.
    pub fn shift(&self) -> Self {
        MatrixFactorization { ring: self.ring.clone(), q: self.q.clone(), phi: self.psi.clone(), psi: self.phi.clone() }
    }
}

/// The two differentials of `Hom(E, F)` as square matrices over `P` of size
/// `2 r_E r_F`. Coordinates: block 0 holds the map out of `E_0`, block 1 the
/// map out of `E_1`, each an `r_F × r_E` matrix stored row-major. With
/// `d = (φ: X_1 → X_0, ψ: X_0 → X_1)`, an even map `(f_0, f_1)` goes to
/// `(ψ_F f_0 - f_1 ψ_E, φ_F f_1 - f_0 φ_E)` and an odd map `(g_0, g_1)` to
/// `(φ_F g_0 + g_1 ψ_E, ψ_F g_1 + g_0 φ_E)`.
pub fn hom_differentials<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
) -> (PolyMatrix<F::Elem>, PolyMatrix<F::Elem>) {
    let ring = &e.ring;
    let (r, s) = (e.size(), f.size());
    let n = 2 * r * s;
    let idx = |block: usize, i: usize, j: usize| block * r * s + i * r + j;
    let mut d0 = vec![vec![ring.zero(); n]; n];
    let mut d1 = vec![vec![ring.zero(); n]; n];
    let put = |m: &mut PolyMatrix<F::Elem>, row: usize, col: usize, p: &MultiPoly<F::Elem>, sign: bool| {
        let p = if sign { p.clone() } else { ring.neg(p) };
        m[row][col] = ring.add(&m[row][col], &p);
    };
    // elementary map with 1 at (i, j) in block b
    for b in 0..2 {
        for i in 0..s {
            for j in 0..r {
                let col = idx(b, i, j);
                // left compositions: X_F · E_ij has column j equal to column i of X_F
                let (left0, left1) = if b == 0 { (&f.psi, &f.phi) } else { (&f.phi, &f.psi) };
                for a in 0..s {
                    put(&mut d0, idx(b, a, j), col, &left0[a][i], true);
                    put(&mut d1, idx(b, a, j), col, &left1[a][i], true);
                }
                // right compositions: E_ij · Y_E has row i equal to row j of Y_E
                for c in 0..r {
                    if b == 0 {
                        // f_0 φ_E lands in block 1 of the odd part; g_0 φ_E in block 1 of the even part
                        put(&mut d0, idx(1, i, c), col, &e.phi[j][c], false);
                        put(&mut d1, idx(1, i, c), col, &e.phi[j][c], true);
                    } else {
                        put(&mut d0, idx(0, i, c), col, &e.psi[j][c], false);
                        put(&mut d1, idx(0, i, c), col, &e.psi[j][c], true);
                    }
                }
            }
        }
    }
    (d0, d1)
}

/// `(dim H^0, dim H^1)` of `Hom(E, F)`.
pub fn mf_hom_cohomology<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
) -> Result<(usize, usize), MfError> {
    if e.q != f.q || e.ring != f.ring {
        return Err(MfError::PotentialMismatch);
    }
    let ring = &e.ring;
    tyurina_algebra(ring, &e.q, &MonomialOrder::grevlex(ring.nvars()))?;
    if ring.nvars() == 1 {
        univariate_cohomology(e, f)
    } else {
        module_cohomology(e, f, DEFAULT_MONOMIAL_LIMIT)
    }
}

// ---- univariate route: diagonalization over k[x]

type Upoly<E> = Vec<E>;

fn to_upoly<F: Field>(field: &F, p: &MultiPoly<F::Elem>) -> Upoly<F::Elem> {
    let mut out = Vec::new();
    for (e, c) in p.terms() {
        let d = e[0] as usize;
        if out.len() <= d {
            out.resize(d + 1, field.zero());
        }
        out[d] = c.clone();
    }
    out
}

fn trim<F: Field>(field: &F, p: &mut Upoly<F::Elem>) {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
}

/// `a - c x^s b`
fn sub_shifted<F: Field>(field: &F, a: &mut Upoly<F::Elem>, c: &F::Elem, s: usize, b: &[F::Elem]) {
    if a.len() < b.len() + s {
        a.resize(b.len() + s, field.zero());
    }
    for (i, x) in b.iter().enumerate() {
        field.sub_mul_assign(&mut a[i + s], c, x);
    }
    trim(field, a);
}

fn divmod<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Upoly<F::Elem>, Upoly<F::Elem>) {
    let lead = field.inv(b.last().expect("nonzero divisor")).expect("field");
    let mut r = a.to_vec();
    let mut quo = Vec::new();
    while r.len() >= b.len() {
        let s = r.len() - b.len();
        let c = field.mul(r.last().expect("nonempty"), &lead);
        if quo.len() <= s {
            quo.resize(s + 1, field.zero());
        }
        quo[s] = c.clone();
        sub_shifted(field, &mut r, &c, s, b);
    }
    (quo, r)
}

/// Diagonal entries of a diagonal form of `m` reached by unimodular row and
/// column operations over `k[x]`; zero diagonal entries are dropped.
pub(crate) fn diagonal_form<F: Field>(field: &F, m: &PolyMatrix<F::Elem>) -> Vec<Upoly<F::Elem>> {
    let mut a: Vec<Vec<Upoly<F::Elem>>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    let mut u = to_upoly(field, p);
                    trim(field, &mut u);
                    u
                })
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest-degree nonzero entry of the remaining block
        let pick = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_empty())
            .min_by_key(|&(i, j)| (a[i][j].len(), i, j));
        let Some((pi, pj)) = pick else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_empty() {
                continue;
            }
            let (quo, rem) = divmod(field, &a[i][t], &a[t][t]);
            let pivot_row = a[t].clone();
            for (j, p) in pivot_row.iter().enumerate().skip(t) {
                let prod = umul(field, &quo, p);
                sub_shifted(field, &mut a[i][j], &field.one(), 0, &prod);
            }
            debug_assert_eq!(a[i][t], rem);
            clean &= rem.is_empty();
        }
        for j in t + 1..cols {
            if a[t][j].is_empty() {
                continue;
            }
            let (quo, rem) = divmod(field, &a[t][j], &a[t][t]);
            for i in t..rows {
                let prod = umul(field, &quo, &a[i][t]);
                sub_shifted(field, &mut a[i][j], &field.one(), 0, &prod);
            }
            clean &= rem.is_empty();
        }
        if clean {
            diag.push(a[t][t].clone());
            t += 1;
        }
    }
    diag
}

fn umul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Upoly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            field.add_mul_assign(&mut out[i + j], x, y);
        }
    }
    out
}

/// Over a principal ideal domain `ker D^0 / im D^1` is the torsion of
/// `coker D^1` once the ranks add up, and the torsion has dimension the sum of
/// the degrees of the diagonal entries.
fn univariate_cohomology<F: Field>(e: &MatrixFactorization<F>, f: &MatrixFactorization<F>) -> Result<(usize, usize), MfError> {
    let field = e.ring.field();
    let (d0, d1) = hom_differentials(e, f);
    let n = d0.len();
    let diag0 = diagonal_form(field, &d0);
    let diag1 = diagonal_form(field, &d1);
    if diag0.len() + diag1.len() != n {
        return Err(MfError::InfiniteDimensional);
    }
    let torsion = |d: &[Upoly<F::Elem>]| d.iter().map(|p| p.len() - 1).sum::<usize>();
    Ok((torsion(&diag1), torsion(&diag0)))
}

// ---- multivariate route: module Gröbner bases

fn columns<E: Clone>(m: &PolyMatrix<E>) -> Vec<ModuleVector<E>> {
    let n = m.first().map_or(0, |r| r.len());
    (0..n).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

fn pot_order(nvars: usize) -> MonomialOrder {
    MonomialOrder::new(OrderKind::Grevlex, nvars)
}

/// Gröbner basis of `ker m` for a square matrix `m`, from a basis of the
/// graph `{(m v, v)}` with the image part in the more significant positions.
fn kernel_basis<F: Field>(ring: &PolyRing<F>, m: &PolyMatrix<F::Elem>) -> Result<ModuleBasis<F>, MfError> {
    let n = m.len();
    let order = pot_order(ring.nvars());
    let gens: Vec<ModuleVector<F::Elem>> = columns(m)
        .into_iter()
        .enumerate()
        .map(|(j, mut col)| {
            col.extend((0..n).map(|i| if i == j { ring.one() } else { ring.zero() }));
            col
        })
        .collect();
    let graph = module_groebner(ring, 2 * n, &gens, &order)?;
    let kernel: Vec<ModuleVector<F::Elem>> = graph
        .generators()
        .iter()
        .filter(|g| g[..n].iter().all(|p| p.is_zero()))
        .map(|g| g[n..].to_vec())
        .collect();
    Ok(module_groebner(ring, n, &kernel, &order)?)
}

/// `dim_k (sub / inner)` for `inner ⊆ sub`, counting the module monomials led
/// by `sub` but not by `inner`.
fn quotient_dim<F: Field>(sub: &ModuleBasis<F>, inner: &ModuleBasis<F>, limit: usize) -> Result<usize, MfError> {
    let nvars = sub.nvars();
    let mut seen: BTreeSet<(usize, Exponent)> = BTreeSet::new();
    let mut queue: VecDeque<(usize, Exponent)> = VecDeque::new();
    for lt in sub.leading_terms() {
        if !inner.is_leading(lt.0, &lt.1) && seen.insert(lt.clone()) {
            queue.push_back(lt);
        }
    }
    while let Some((pos, e)) = queue.pop_front() {
        if seen.len() > limit {
            return Err(MfError::InfiniteDimensional);
        }
        for v in 0..nvars {
            let mut f = e.clone();
            f[v] += 1;
            if !inner.is_leading(pos, &f) && seen.insert((pos, f.clone())) {
                queue.push_back((pos, f));
            }
        }
    }
    Ok(seen.len())
}

fn module_cohomology<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
    limit: usize,
) -> Result<(usize, usize), MfError> {
    let ring = &e.ring;
    let (d0, d1) = hom_differentials(e, f);
    let n = d0.len();
    let order = pot_order(ring.nvars());
    let k0 = kernel_basis(ring, &d0)?;
    let k1 = kernel_basis(ring, &d1)?;
    let im0 = module_groebner(ring, n, &columns(&d0), &order)?;
    let im1 = module_groebner(ring, n, &columns(&d1), &order)?;
    Ok((quotient_dim(&k0, &im1, limit)?, quotient_dim(&k1, &im0, limit)?))
}

/// The multivariate route applied to any number of variables, with an explicit
/// enumeration limit.
pub fn mf_hom_cohomology_by_modules<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
    limit: usize,
) -> Result<(usize, usize), MfError> {
    if e.q != f.q || e.ring != f.ring {
        return Err(MfError::PotentialMismatch);
    }
    module_cohomology(e, f, limit)
}

/// `coker φ` as a module over `k[x]/(Q)`, for a factorization in one variable.
pub fn cokernel_module<F: Field>(mf: &MatrixFactorization<F>) -> Result<(FinDimAlgebra<F>, FinDimModule<F>), MfError> {
    let ring = &mf.ring;
    if ring.nvars() != 1 {
        return Err(MfError::NotUnivariate);
    }
    let field = ring.field();
    let gb = groebner(ring, core::slice::from_ref(&mf.q), &MonomialOrder::grevlex(1))?;
    let b = quotient_algebra(ring, &gb).map_err(|e| match e {
        QuotientError::InfiniteDimension { .. } => MfError::InfiniteDimensional,
        QuotientError::TooLarge { limit } => MfError::TooLarge { limit },
    })?;
    // coker φ is the direct sum of k[x]/(d) over the diagonal entries d
    let blocks: Vec<Upoly<F::Elem>> = diagonal_form(field, &mf.phi).into_iter().filter(|d| d.len() > 1).collect();
    let dim: usize = blocks.iter().map(|d| d.len() - 1).sum();
    let mut x = Matrix::zeros(dim, dim);
    let mut entries = vec![field.zero(); dim * dim];
    let mut off = 0;
    for d in &blocks {
        let k = d.len() - 1;
        let lead = field.inv(&d[k]).expect("nonzero");
        // companion matrix: x · x^i = x^{i+1}, x · x^{k-1} = -(d_0 + ... + d_{k-1} x^{k-1}) / d_k
        for i in 0..k {
            if i + 1 < k {
                entries[(off + i + 1) * dim + off + i] = field.one();
            } else {
                for (r, c) in d[..k].iter().enumerate() {
                    entries[(off + r) * dim + off + i] = field.neg(&field.mul(c, &lead));
                }
            }
        }
        off += k;
    }
    if dim > 0 {
        x = Matrix::from_dense(field, dim, dim, entries);
    }
    let action = b
        .monomial_basis()
        .iter()
        .map(|e| {
            let mut m = Matrix::identity(field, dim);
            for _ in 0..e[0] {
                m = x.mul(field, &m);
            }
            m
        })
        .collect();
    let alg = b.into_algebra();
    let module = FinDimModule::new(&alg, dim, action)?;
    Ok((alg, module))
}
