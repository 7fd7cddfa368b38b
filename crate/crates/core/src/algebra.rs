//! Finite-dimensional associative unital algebras given by structure
//! constants, and finite-dimensional left modules over them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::linalg::{self, Echelon, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("structure constants have {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit does not act as identity on basis element {0}")]
    Unit(usize),
    #[error("algebra is not commutative: b{0} b{1} != b{1} b{0}")]
    NotCommutative(usize, usize),
    #[error("module action is invalid: {0}")]
    Module(String),
}

/// `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinDimAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    structure: Vec<F::Elem>,
    unit: Vec<F::Elem>,
}

impl<F: Field> FinDimAlgebra<F> {
    /// Validates associativity on all basis triples and the two-sided unit law.
    pub fn new(
        field: F,
        labels: Vec<String>,
        structure: Vec<F::Elem>,
        unit: Vec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::new_unchecked(field, labels, structure, unit)?;
        alg.check_unit()?;
        alg.check_associative()?;
        Ok(alg)
    }

    /// Shape checks only.
    pub fn new_unchecked(
        field: F,
        labels: Vec<String>,
        structure: Vec<F::Elem>,
        unit: Vec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        let d = labels.len();
        if structure.len() != d * d * d {
            return Err(AlgebraError::Shape { expected: d * d * d, got: structure.len() });
        }
        if unit.len() != d {
            return Err(AlgebraError::Shape { expected: d, got: unit.len() });
        }
        Ok(FinDimAlgebra { field, labels, structure, unit })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: F) -> Self {
        let one = field.one();
        FinDimAlgebra { labels: vec![String::from("1")], structure: vec![one.clone()], unit: vec![one], field }
    }

    /// `k[x]/(x^m)` with basis `1, x, ..., x^{m-1}`.
    pub fn truncated_polynomial(field: F, m: usize) -> Self {
        assert!(m >= 1);
        let mut c = vec![field.zero(); m * m * m];
        for i in 0..m {
            for j in 0..m {
                if i + j < m {
                    c[(i * m + j) * m + i + j] = field.one();
                }
            }
        }
        let labels = (0..m)
            .map(|i| match i {
                0 => String::from("1"),
                1 => String::from("x"),
                _ => format!("x^{}", i),
            })
            .collect();
        let mut unit = vec![field.zero(); m];
        unit[0] = field.one();
        FinDimAlgebra { field, labels, structure: c, unit }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn structure(&self) -> &[F::Elem] {
        &self.structure
    }

    /// Coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[F::Elem] {
        let d = self.dim();
        &self.structure[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_elem(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        let mut out = vec![f.zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let ab = f.mul(ai, bj);
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !f.is_zero(c) {
                        f.add_mul_assign(&mut out[k], &ab, c);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn is_zero_elem(&self, a: &[F::Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    pub fn pow(&self, a: &[F::Elem], e: usize) -> Vec<F::Elem> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Matrix of `x -> a x` in the basis.
    pub fn left_mult_matrix(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let d = self.dim();
        let cols: Vec<Vec<F::Elem>> = (0..d).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_fn(&self.field, d, d, |i, j| cols[j][i].clone())
    }

    /// Matrix of `x -> x a` in the basis.
    pub fn right_mult_matrix(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let d = self.dim();
        let cols: Vec<Vec<F::Elem>> = (0..d).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_fn(&self.field, d, d, |i, j| cols[j][i].clone())
    }

    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let jk = self.basis_product(j, k).to_vec();
                    let right = self.mul(&self.basis_vector(i), &jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(AlgebraError::Unit(i));
            }
        }
        Ok(())
    }

    pub fn check_commutative(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        self.check_commutative().is_ok()
    }

    /// Opposite algebra: `b_i * b_j := b_j b_i`.
    pub fn opposite(&self) -> Self {
        let d = self.dim();
        let mut c = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                c.extend_from_slice(self.basis_product(j, i));
            }
        }
        FinDimAlgebra { field: self.field.clone(), labels: self.labels.clone(), structure: c, unit: self.unit.clone() }
    }

    /// `self ⊗ other` with basis `a_i ⊗ b_j` at index `i * dim(other) + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let f = &self.field;
        let (d, e) = (self.dim(), other.dim());
        let n = d * e;
        let mut c = vec![f.zero(); n * n * n];
        for i in 0..d {
            for j in 0..e {
                for k in 0..d {
                    for l in 0..e {
                        let left = self.basis_product(i, k);
                        let right = other.basis_product(j, l);
                        let row = ((i * e + j) * n + (k * e + l)) * n;
                        for (a, x) in left.iter().enumerate() {
                            if f.is_zero(x) {
                                continue;
                            }
                            for (b, y) in right.iter().enumerate() {
                                if !f.is_zero(y) {
                                    c[row + a * e + b] = f.mul(x, y);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![f.zero(); n];
        for (a, x) in self.unit.iter().enumerate() {
            for (b, y) in other.unit.iter().enumerate() {
                unit[a * e + b] = f.mul(x, y);
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{}⊗{}", a, b)))
            .collect();
        FinDimAlgebra { field: f.clone(), labels, structure: c, unit }
    }

    /// Index of the basis element equal to the unit, if any.
    pub fn unit_index(&self) -> Option<usize> {
        let f = &self.field;
        let nz: Vec<usize> = (0..self.dim()).filter(|&i| !f.is_zero(&self.unit[i])).collect();
        match nz.as_slice() {
            [i] if f.is_one(&self.unit[*i]) => Some(*i),
            _ => None,
        }
    }

    /// An isomorphic algebra whose first basis vector is the unit.
    ///
    /// The new basis is the unit followed by the old basis vectors it does not
    /// make redundant, in order.
    pub fn with_unit_first(&self) -> Self {
        let f = &self.field;
        let d = self.dim();
        if d == 0 || self.unit_index() == Some(0) {
            return self.clone();
        }
        let mut ech = Echelon::new(f.clone(), d);
        let mut basis: Vec<Vec<F::Elem>> = Vec::new();
        let mut labels = Vec::new();
        ech.insert(&linalg::sparse_from_dense(f, &self.unit));
        basis.push(self.unit.clone());
        labels.push(String::from("1"));
        for i in 0..d {
            let v = self.basis_vector(i);
            if let linalg::Insert::Pivot(_) = ech.insert(&linalg::sparse_from_dense(f, &v)) {
                basis.push(v);
                labels.push(self.labels[i].clone());
            }
        }
        // change of basis: columns are new basis vectors in old coordinates
        let p = Matrix::from_fn(f, d, d, |i, j| basis[j][i].clone());
        let mut c = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&basis[i], &basis[j]);
                let coords = linalg::solve(f, &p, &prod).unwrap().expect("basis spans");
                c.extend(coords);
            }
        }
        let mut unit = vec![f.zero(); d];
        unit[0] = f.one();
        FinDimAlgebra { field: f.clone(), labels, structure: c, unit }
    }

    /// Basis of the subspace spanned by `vectors`.
    pub fn span_basis(&self, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut ech = Echelon::new(f.clone(), self.dim());
        let mut out = Vec::new();
        for v in vectors {
            if let linalg::Insert::Pivot(_) = ech.insert(&linalg::sparse_from_dense(f, &v)) {
                out.push(v);
            }
        }
        out
    }

    /// Basis of the two-sided ideal generated by `gens`.
    pub fn ideal_basis(&self, gens: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let d = self.dim();
        let mut vs = Vec::new();
        for g in gens {
            for i in 0..d {
                let left = self.mul(&self.basis_vector(i), g);
                for j in 0..d {
                    vs.push(self.mul(&left, &self.basis_vector(j)));
                }
            }
        }
        self.span_basis(vs)
    }

    /// Basis of the span of all products `x y` with `x` in `a`, `y` in `b`.
    pub fn product_span(&self, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let mut vs = Vec::new();
        for x in a {
            for y in b {
                vs.push(self.mul(x, y));
            }
        }
        self.span_basis(vs)
    }

    /// Jacobson radical of a commutative algebra.
    ///
    /// In characteristic 0 this is the kernel of the trace form
    /// `(a, b) -> tr(L_{ab})`; over `F_p` it is the kernel of a power of the
    /// Frobenius `a -> a^p`, which is linear there.
    pub fn radical(&self) -> Result<Vec<Vec<F::Elem>>, AlgebraError> {
        self.check_commutative()?;
        let f = &self.field;
        let d = self.dim();
        let p = f.characteristic();
        if p == 0 {
            let traces: Vec<F::Elem> = (0..d).map(|i| trace(f, &self.left_mult_matrix(&self.basis_vector(i)))).collect();
            // T[i][j] = tr(L_{b_i b_j}) = sum_k c_ij^k tr(L_{b_k})
            let m = Matrix::from_fn(f, d, d, |i, j| {
                let mut acc = f.zero();
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    f.add_mul_assign(&mut acc, c, &traces[k]);
                }
                acc
            });
            Ok(linalg::rank_and_kernel(f, &m).1)
        } else {
            let mut e = 1usize;
            let mut q = p as usize;
            while q < d.max(1) {
                q = q.saturating_mul(p as usize);
                e += 1;
            }
            let images: Vec<Vec<F::Elem>> = (0..d)
                .map(|i| {
                    let mut v = self.basis_vector(i);
                    for _ in 0..e {
                        v = self.pow(&v, p as usize);
                    }
                    v
                })
                .collect();
            let m = Matrix::from_fn(f, d, d, |i, j| images[j][i].clone());
            Ok(linalg::rank_and_kernel(f, &m).1)
        }
    }

    /// Dimensions of `I, I^2, I^3, ...` until the powers stabilize.
    pub fn ideal_power_dims(&self, gens: &[Vec<F::Elem>]) -> Vec<usize> {
        let ideal = self.ideal_basis(gens);
        let mut dims = Vec::new();
        let mut cur = ideal.clone();
        loop {
            dims.push(cur.len());
            if cur.is_empty() {
                break;
            }
            let next = self.product_span(&cur, &ideal);
            if next.len() == cur.len() {
                break;
            }
            cur = next;
        }
        dims
    }

    /// Dimension of `{a : a x = 0 for all x in ideal}`.
    pub fn annihilator_dim(&self, ideal: &[Vec<F::Elem>]) -> usize {
        let f = &self.field;
        let d = self.dim();
        let mut rows: Vec<Vec<(usize, F::Elem)>> = Vec::new();
        for x in ideal {
            let r = self.right_mult_matrix(x);
            rows.extend(r.to_rows(f));
        }
        let m = Matrix::from_sparse_rows(f, rows.len(), d, rows);
        d - linalg::rank(f, &m)
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let d = self.dim();
        // a in center iff a b_j - b_j a = 0 for all j
        let mut rows = Vec::new();
        for j in 0..d {
            let l = self.right_mult_matrix(&self.basis_vector(j));
            let r = self.left_mult_matrix(&self.basis_vector(j));
            rows.extend(l.add(f, &r.scale(f, &f.from_i64(-1))).to_rows(f));
        }
        let m = Matrix::from_sparse_rows(f, rows.len(), d, rows);
        linalg::rank_and_kernel(f, &m).1
    }
}

fn trace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let mut t = f.zero();
    for i in 0..m.rows() {
        t = f.add(&t, &m.entry(f, i, i));
    }
    t
}

/// A finite-dimensional left module: one action matrix per basis element of the algebra.
#[derive(Clone, Debug)]
pub struct FinDimModule<F: Field> {
    dim: usize,
    action: Vec<Matrix<F::Elem>>,
}

impl<F: Field> FinDimModule<F> {
    pub fn new(alg: &FinDimAlgebra<F>, dim: usize, action: Vec<Matrix<F::Elem>>) -> Result<Self, AlgebraError> {
        let f = alg.field();
        if action.len() != alg.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(AlgebraError::Module(format!("need {} action matrices of size {}x{}", alg.dim(), dim, dim)));
        }
        let module = FinDimModule { dim, action };
        if !module.act_by(alg, alg.unit()).eq_exact(f, &Matrix::identity(f, dim)) {
            return Err(AlgebraError::Module(String::from("unit does not act as identity")));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = module.action[i].mul(f, &module.action[j]);
                let rhs = module.act_by(alg, alg.basis_product(i, j));
                if !lhs.eq_exact(f, &rhs) {
                    return Err(AlgebraError::Module(format!("b{} (b{} m) != (b{} b{}) m", i, j, i, j)));
                }
            }
        }
        Ok(module)
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(alg: &FinDimAlgebra<F>) -> Self {
        let action = (0..alg.dim()).map(|i| alg.left_mult_matrix(&alg.basis_vector(i))).collect();
        FinDimModule { dim: alg.dim(), action }
    }

    /// An algebra `A` as a left module over `A ⊗ A^op`: `(a ⊗ b) · x = a x b`.
    pub fn diagonal_bimodule(alg: &FinDimAlgebra<F>) -> Self {
        let f = alg.field();
        let d = alg.dim();
        let mut action = Vec::with_capacity(d * d);
        for a in 0..d {
            let l = alg.left_mult_matrix(&alg.basis_vector(a));
            for b in 0..d {
                let r = alg.right_mult_matrix(&alg.basis_vector(b));
                action.push(l.mul(f, &r));
            }
        }
        FinDimModule { dim: d, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix<F::Elem> {
        &self.action[i]
    }

    /// Matrix of the action of an arbitrary algebra element.
    pub fn act_by(&self, alg: &FinDimAlgebra<F>, a: &[F::Elem]) -> Matrix<F::Elem> {
        let f = alg.field();
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                m = m.add(f, &self.action[i].scale(f, c));
            }
        }
        m
    }

    pub fn act(&self, alg: &FinDimAlgebra<F>, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = alg.field();
        let mut out = vec![f.zero(); self.dim];
        for (i, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let w = self.action[i].mul_vec(f, v);
            for (o, x) in out.iter_mut().zip(&w) {
                f.add_mul_assign(o, c, x);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn ground_field_and_dual_numbers_validate() {
        let k = FinDimAlgebra::ground(Rationals);
        assert!(FinDimAlgebra::new(Rationals, k.labels().to_vec(), k.structure().to_vec(), k.unit().to_vec()).is_ok());
        let a = FinDimAlgebra::truncated_polynomial(Rationals, 2);
        assert!(FinDimAlgebra::new(Rationals, a.labels().to_vec(), a.structure().to_vec(), a.unit().to_vec()).is_ok());
    }

    #[test]
    fn non_associative_table_names_triple() {
        // basis {1, a, b}: aa = b, ab = ba = a, bb = 0
        let d = 3;
        let mut c = vec![q(0); 27];
        let set = |c: &mut Vec<Rational>, i: usize, j: usize, k: usize| c[(i * d + j) * d + k] = q(1);
        for i in 0..3 {
            set(&mut c, 0, i, i);
            set(&mut c, i, 0, i);
        }
        set(&mut c, 1, 1, 2);
        set(&mut c, 1, 2, 1);
        set(&mut c, 2, 1, 1);
        // (aa)a = ba = a = ab = a(aa), but (aa)b = bb = 0 while a(ab) = aa = b
        let labels = ["1", "a", "b"].iter().map(|s| String::from(*s)).collect();
        let err = FinDimAlgebra::new(Rationals, labels, c, vec![q(1), q(0), q(0)]).unwrap_err();
        assert_eq!(err, AlgebraError::NotAssociative(1, 1, 2));
    }

    #[test]
    fn radical_of_truncated_polynomials() {
        for m in 1..5 {
            let a = FinDimAlgebra::truncated_polynomial(Rationals, m);
            assert_eq!(a.radical().unwrap().len(), m - 1);
            let b = FinDimAlgebra::truncated_polynomial(PrimeField::new(2).unwrap(), m);
            assert_eq!(b.radical().unwrap().len(), m - 1);
        }
    }

    #[test]
    fn unit_first_rebasing() {
        // k x k with idempotent basis e1, e2; unit = e1 + e2
        let mut c = vec![q(0); 8];
        c[0] = q(1);
        c[7] = q(1);
        let a = FinDimAlgebra::new(Rationals, vec!["e1".into(), "e2".into()], c, vec![q(1), q(1)]).unwrap();
        assert_eq!(a.unit_index(), None);
        let b = a.with_unit_first();
        assert_eq!(b.unit_index(), Some(0));
        b.check_associative().unwrap();
        assert_eq!(b.radical().unwrap().len(), 0);
    }

    #[test]
    fn diagonal_bimodule_is_a_module_over_the_enveloping_algebra() {
        let a = FinDimAlgebra::truncated_polynomial(Rationals, 3);
        let env = a.tensor(&a.opposite());
        let m = FinDimModule::diagonal_bimodule(&a);
        let checked = FinDimModule::new(&env, 3, (0..9).map(|i| m.action(i).clone()).collect());
        assert!(checked.is_ok());
    }
}
